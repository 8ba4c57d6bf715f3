//! Partitions of the non-dominated space into disjoint axis-parallel boxes.
//!
//! Two objectives use `n + 1` vertical slices, three objectives a plane sweep
//! producing `2n + 1` slices in general position, and any dimension the local
//! lower bound construction with one box per lower bound point.

mod boxes_dd;
mod lower_bounds;
mod slices2d;
mod sweep3d;

pub use boxes_dd::partition_dd;
pub use lower_bounds::{local_lower_bounds, LocalLowerBounds};
pub use slices2d::partition_2d;
pub use sweep3d::partition_3d;

use crate::error::{Error, Result};
use crate::pareto::{ParetoApprox, RefPoint};

/// Axis-parallel box `[lower, upper]`. Upper bounds may be `+inf`, lower bounds
/// may be `-inf` when the reference point is.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperbox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Hyperbox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(Error::InvalidArgument(
                "box lower bound must be strictly below upper bound".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Closed-box membership.
    pub fn contains(&self, z: &[f64]) -> bool {
        z.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| l <= x && x <= u)
    }

    /// Open-box membership.
    pub fn contains_interior(&self, z: &[f64]) -> bool {
        z.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| l < x && x < u)
    }

    /// Volume after clipping every upper bound at `ceiling`.
    pub fn clipped_volume(&self, ceiling: &[f64]) -> f64 {
        let mut v = 1.0;
        for k in 0..self.dim() {
            let side = self.upper[k].min(ceiling[k]) - self.lower[k];
            if side <= 0.0 {
                return 0.0;
            }
            v *= side;
        }
        v
    }
}

/// Disjoint boxes whose union is the non-dominated space of a front above `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxPartition {
    dim: usize,
    source_front_size: usize,
    boxes: Vec<Hyperbox>,
}

impl BoxPartition {
    pub(crate) fn from_boxes(dim: usize, source_front_size: usize, boxes: Vec<Hyperbox>) -> Self {
        Self {
            dim,
            source_front_size,
            boxes,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source_front_size(&self) -> usize {
        self.source_front_size
    }

    pub fn boxes(&self) -> &[Hyperbox] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn into_boxes(self) -> Vec<Hyperbox> {
        self.boxes
    }

    /// Sum of box volumes with infinite extents clipped at `ceiling`.
    pub fn clipped_volume(&self, ceiling: &[f64]) -> f64 {
        let s: crate::sum::Neumaier = self.boxes.iter().map(|b| b.clipped_volume(ceiling)).collect();
        s.value()
    }
}

/// Dedicated partitioner for `d = 2, 3`, the general one otherwise.
pub fn partition(p: &ParetoApprox, r: &RefPoint) -> Result<BoxPartition> {
    match p.dim() {
        2 => partition_2d(p, r),
        3 => partition_3d(p, r),
        _ => {
            check_inputs(p, r)?;
            Ok(partition_dd(p, r))
        }
    }
}

pub(crate) fn check_inputs(p: &ParetoApprox, r: &RefPoint) -> Result<()> {
    p.check_reference(r)
}

/// Pushes `[lower, upper]` unless it has zero width in some coordinate.
pub(crate) fn push_nonempty(boxes: &mut Vec<Hyperbox>, lower: Vec<f64>, upper: Vec<f64>) {
    if lower.iter().zip(&upper).all(|(l, u)| l < u) {
        boxes.push(Hyperbox { lower, upper });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_rejects_empty_extent() {
        assert!(Hyperbox::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        let b = Hyperbox::new(vec![0.0, 1.0], vec![1.0, f64::INFINITY]).unwrap();
        assert!(b.contains(&[0.0, 5.0]));
        assert!(!b.contains_interior(&[0.0, 5.0]));
        assert_eq!(b.clipped_volume(&[10.0, 3.0]), 2.0);
    }
}
