use super::lower_bounds::build;
use super::{push_nonempty, BoxPartition, Hyperbox};
use crate::pareto::{ParetoApprox, RefPoint};

/// General-dimension partition built from the local lower bounds.
///
/// The orthants `[L, inf)` cover the non-dominated space but overlap. Each `L`
/// is given the part of its orthant not claimed by bounds that are better in a
/// higher coordinate: coordinate `j` of the box ends where the defining point of
/// some later coordinate `k > j` begins, `U_j = min_{k > j} def_k(L)_j`, and the
/// last coordinate is unbounded. This yields one box per lower bound point.
///
/// `r` may contain `-inf` entries. Callers are responsible for checking `r`
/// against `p`.
pub fn partition_dd(p: &ParetoApprox, r: &RefPoint) -> BoxPartition {
    let d = p.dim();
    let lb = build(p, r);
    let mut boxes: Vec<Hyperbox> = Vec::with_capacity(lb.len());
    for i in 0..lb.len() {
        let lower = lb.point(i).to_vec();
        let mut upper = vec![f64::INFINITY; d];
        for (j, u) in upper.iter_mut().enumerate().take(d - 1) {
            for k in j + 1..d {
                *u = u.min(lb.def_coord(i, k, j));
            }
        }
        push_nonempty(&mut boxes, lower, upper);
    }
    BoxPartition::from_boxes(d, p.len(), boxes)
}
