use std::collections::BTreeMap;
use std::ops::Bound;

use super::{check_inputs, push_nonempty, BoxPartition, Hyperbox};
use crate::error::{Error, Result};
use crate::key::Key;
use crate::pareto::{ParetoApprox, RefPoint};

/// Plane sweep in descending `y3` over a `y1 -> y2` staircase in a balanced tree.
///
/// Inserting a point covers a strip of the plane that was previously free; each
/// piece of that strip between consecutive removed stairs becomes a slice
/// `[.., p3] x [p3, inf)`. A closing sentinel at `r3` emits the region no point
/// ever covered. General position yields exactly `2n + 1` slices. Equal `y3`
/// values are processed in ascending `y1`; zero-width slices are dropped.
pub fn partition_3d(p: &ParetoApprox, r: &RefPoint) -> Result<BoxPartition> {
    if p.dim() != 3 {
        return Err(Error::WrongDimension {
            required: 3,
            got: p.dim(),
        });
    }
    check_inputs(p, r)?;
    let inf = f64::INFINITY;
    let rc = r.coords();
    let mut order: Vec<&Vec<f64>> = p.points().iter().collect();
    order.sort_by(|a, b| b[2].total_cmp(&a[2]).then(a[0].total_cmp(&b[0])));

    let mut stairs: BTreeMap<Key, f64> = BTreeMap::new();
    stairs.insert(Key(rc[0]), inf);
    stairs.insert(Key(inf), rc[1]);

    let mut boxes: Vec<Hyperbox> = Vec::with_capacity(2 * p.len() + 1);
    let mut covered: Vec<(f64, f64)> = Vec::new();
    for q in order {
        let (p1, p2, p3) = (q[0], q[1], q[2]);
        let right2 = *stairs
            .range((Bound::Excluded(Key(p1)), Bound::Unbounded))
            .next()
            .expect("right sentinel")
            .1;
        covered.clear();
        let mut left1 = rc[0];
        for (k, &v) in stairs.range(..=Key(p1)).rev() {
            if v <= p2 {
                covered.push((k.0, v));
            } else {
                left1 = k.0;
                break;
            }
        }
        covered.reverse();
        emit_strip(&mut boxes, left1, &covered, (p1, p2), right2, p3, inf);
        for &(k, _) in &covered {
            stairs.remove(&Key(k));
        }
        stairs.insert(Key(p1), p2);
    }

    // closing sentinel (inf, inf, r3): everything still uncovered
    covered.clear();
    covered.extend(
        stairs
            .iter()
            .filter(|(k, _)| k.0 != rc[0] && k.0 != inf)
            .map(|(k, &v)| (k.0, v)),
    );
    emit_strip(&mut boxes, rc[0], &covered, (inf, inf), rc[1], rc[2], inf);
    Ok(BoxPartition::from_boxes(3, p.len(), boxes))
}

/// Slices between `left1` and `top.0` under the height `top.1`, stepping over
/// the removed stairs `covered` (ascending `y1`).
fn emit_strip(
    boxes: &mut Vec<Hyperbox>,
    left1: f64,
    covered: &[(f64, f64)],
    top: (f64, f64),
    right2: f64,
    level: f64,
    u3: f64,
) {
    let mut x0 = left1;
    for &(x, y) in covered {
        push_nonempty(boxes, vec![x0, y, level], vec![x, top.1, u3]);
        x0 = x;
    }
    push_nonempty(boxes, vec![x0, right2, level], vec![top.0, top.1, u3]);
}
