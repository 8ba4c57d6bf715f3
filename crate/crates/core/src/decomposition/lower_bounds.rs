use crate::pareto::{ParetoApprox, RefPoint};

/// Sentinel defining-point index standing for the dummy point of a coordinate.
const DUMMY: u32 = u32::MAX;

/// Local lower bound points of the non-dominated space: the minimal points `L`
/// such that the non-dominated space is the union of the orthants `[L, inf)`.
///
/// Each point carries its defining points. For coordinate `k`, `def_k(L)` is a
/// front member with `def_k(L)_k == L_k` and all other coordinates above `L`, or
/// the dummy `(+inf, .., r_k, .., +inf)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalLowerBounds {
    dim: usize,
    coords: Vec<f64>,
    defs: Vec<u32>,
    front: Vec<Vec<f64>>,
}

impl LocalLowerBounds {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i).to_vec()).collect()
    }

    /// Coordinate `j` of the defining point for coordinate `k` of bound `i`.
    pub(crate) fn def_coord(&self, i: usize, k: usize, j: usize) -> f64 {
        match self.defs[i * self.dim + k] {
            DUMMY => {
                if j == k {
                    self.coords[i * self.dim + k]
                } else {
                    f64::INFINITY
                }
            }
            idx => self.front[idx as usize][j],
        }
    }
}

/// Incremental construction: start from `{r}` and, for every front point `y`,
/// replace each bound strictly below `y` by its `d` projections onto `y`,
/// keeping a projection only when every other coordinate still has a defining
/// point beyond it.
///
/// Equal coordinate values are ordered by front index (reference and dummies
/// first). This is a symbolic perturbation into general position: the boxes
/// built on top stay disjoint and covering, some merely collapse to zero width.
/// The returned set drops bounds made redundant by such ties.
pub fn local_lower_bounds(p: &ParetoApprox, r: &RefPoint) -> LocalLowerBounds {
    let raw = build(p, r);
    if general_position(p) {
        return raw;
    }
    let d = raw.dim;
    let n = raw.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && keep[j] {
                let (a, b) = (raw.point(i), raw.point(j));
                // orthant of i inside orthant of j; exact duplicates keep the first
                if a.iter().zip(b).all(|(x, y)| x >= y) && (a != b || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let mut coords = Vec::new();
    let mut defs = Vec::new();
    for i in (0..n).filter(|&i| keep[i]) {
        coords.extend_from_slice(raw.point(i));
        defs.extend_from_slice(&raw.defs[i * d..(i + 1) * d]);
    }
    LocalLowerBounds {
        dim: d,
        coords,
        defs,
        front: raw.front,
    }
}

fn general_position(p: &ParetoApprox) -> bool {
    (0..p.dim()).all(|j| {
        let mut col: Vec<f64> = p.points().iter().map(|y| y[j]).collect();
        col.sort_by(f64::total_cmp);
        col.windows(2).all(|w| w[0] != w[1])
    })
}

/// Unfiltered construction, used directly by the box partition.
pub(crate) fn build(p: &ParetoApprox, r: &RefPoint) -> LocalLowerBounds {
    let d = p.dim();
    let mut coords: Vec<f64> = r.coords().to_vec();
    let mut defs: Vec<u32> = vec![DUMMY; d];
    let front: Vec<Vec<f64>> = p.points().to_vec();

    let mut next_coords: Vec<f64> = Vec::new();
    let mut next_defs: Vec<u32> = Vec::new();
    let mut min_other: Vec<(f64, u32)> = vec![(0.0, 0); d];
    for (yi, y) in front.iter().enumerate() {
        let yi = yi as u32;
        next_coords.clear();
        next_defs.clear();
        let count = coords.len() / d;
        for i in 0..count {
            let l = &coords[i * d..(i + 1) * d];
            let ld = &defs[i * d..(i + 1) * d];
            if !(0..d).all(|j| less((l[j], ld[j]), (y[j], yi))) {
                next_coords.extend_from_slice(l);
                next_defs.extend_from_slice(ld);
                continue;
            }
            // min_other[j] = min over k != j of def_k(l)_j
            for j in 0..d {
                let mut m = (f64::INFINITY, DUMMY);
                for k in 0..d {
                    if k != j && ld[k] != DUMMY {
                        let c = (front[ld[k] as usize][j], ld[k]);
                        if less(c, m) {
                            m = c;
                        }
                    }
                }
                min_other[j] = m;
            }
            for j in 0..d {
                if less((y[j], yi), min_other[j]) {
                    let start = next_coords.len();
                    next_coords.extend_from_slice(l);
                    next_coords[start + j] = y[j];
                    next_defs.extend_from_slice(ld);
                    next_defs[start + j] = yi;
                }
            }
        }
        std::mem::swap(&mut coords, &mut next_coords);
        std::mem::swap(&mut defs, &mut next_defs);
    }
    LocalLowerBounds {
        dim: d,
        coords,
        defs,
        front,
    }
}

/// Strict order on (value, owner) pairs; the dummy owner sorts first on ties.
#[inline]
fn less(a: (f64, u32), b: (f64, u32)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && rank(a.1) < rank(b.1))
}

#[inline]
fn rank(owner: u32) -> i64 {
    if owner == DUMMY {
        -1
    } else {
        owner as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn worked_example() {
        let p = ParetoApprox::new(vec![vec![1.0, 2.5], vec![2.0, 1.5], vec![3.0, 1.0]]).unwrap();
        let l = local_lower_bounds(&p, &RefPoint::zeros(2));
        assert_eq!(
            sorted(l.points()),
            vec![vec![0.0, 2.5], vec![1.0, 1.5], vec![2.0, 1.0], vec![3.0, 0.0]]
        );
    }

    #[test]
    fn single_point() {
        let p = ParetoApprox::new(vec![vec![2.0, 5.0]]).unwrap();
        let l = local_lower_bounds(&p, &RefPoint::zeros(2));
        assert_eq!(sorted(l.points()), vec![vec![0.0, 5.0], vec![2.0, 0.0]]);
    }

    #[test]
    fn empty_front_is_reference() {
        let p = ParetoApprox::empty(4).unwrap();
        let l = local_lower_bounds(&p, &RefPoint::zeros(4));
        assert_eq!(l.points(), vec![vec![0.0; 4]]);
    }

    #[test]
    fn three_d_general_position_count() {
        let p = ParetoApprox::new(vec![
            vec![1.0, 3.0, 4.0],
            vec![4.0, 2.0, 3.0],
            vec![2.0, 4.0, 2.0],
            vec![3.0, 5.0, 1.0],
        ])
        .unwrap();
        assert_eq!(local_lower_bounds(&p, &RefPoint::zeros(3)).len(), 9);
    }

    #[test]
    fn ties_leave_no_redundant_bounds() {
        let p = ParetoApprox::new(vec![vec![1.0, 2.0, 2.0], vec![2.0, 1.0, 2.0], vec![2.0, 2.0, 1.0]])
            .unwrap();
        let l = local_lower_bounds(&p, &RefPoint::zeros(3)).points();
        for (i, a) in l.iter().enumerate() {
            for (j, b) in l.iter().enumerate() {
                if i != j {
                    assert!(!a.iter().zip(b).all(|(x, y)| x >= y), "{a:?} {b:?}");
                }
            }
        }
    }
}
