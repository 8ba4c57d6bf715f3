use super::{check_inputs, BoxPartition, Hyperbox};
use crate::error::{Error, Result};
use crate::pareto::{ParetoApprox, RefPoint};

/// Splits the non-dominated space of a bi-objective front into `n + 1` vertical
/// slices. With points ordered by ascending `y1` and sentinels `(r1, inf)` and
/// `(inf, r2)`, slice `i` spans `[y1(i-1), y1(i)] x [y2(i), inf]`.
pub fn partition_2d(p: &ParetoApprox, r: &RefPoint) -> Result<BoxPartition> {
    if p.dim() != 2 {
        return Err(Error::WrongDimension {
            required: 2,
            got: p.dim(),
        });
    }
    check_inputs(p, r)?;
    let mut pts: Vec<(f64, f64)> = p.points().iter().map(|y| (y[0], y[1])).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let rc = r.coords();
    let mut boxes = Vec::with_capacity(pts.len() + 1);
    let mut prev_x = rc[0];
    for &(x, y) in &pts {
        boxes.push(Hyperbox {
            lower: vec![prev_x, y],
            upper: vec![x, f64::INFINITY],
        });
        prev_x = x;
    }
    boxes.push(Hyperbox {
        lower: vec![prev_x, rc[1]],
        upper: vec![f64::INFINITY, f64::INFINITY],
    });
    Ok(BoxPartition::from_boxes(2, p.len(), boxes))
}
