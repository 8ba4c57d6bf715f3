//! Objective-space geometry under the maximization convention: dominance,
//! non-dominated filtering, exact hypervolume and hypervolume improvement.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::decomposition;
use crate::error::{Error, Result};
use crate::key::Key;

/// An objective vector. Larger is better in every coordinate.
pub type ObjVec = Vec<f64>;

/// `true` iff `a` dominates `b`: no worse anywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

/// `a >= b` componentwise (equality included).
#[inline]
pub(crate) fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// `a > b` in every coordinate.
#[inline]
pub(crate) fn strictly_greater(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x > y)
}

/// A set of mutually non-dominated, pairwise distinct objective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoApprox {
    dim: usize,
    points: Vec<ObjVec>,
}

impl ParetoApprox {
    /// Wraps points that are already mutually non-dominated. Fails if they are not.
    pub fn new(points: Vec<ObjVec>) -> Result<Self> {
        let dim = validate_points(&points)?;
        for i in 0..points.len() {
            for j in 0..points.len() {
                if i != j && weakly_dominates(&points[j], &points[i]) {
                    return Err(Error::InvalidArgument(format!(
                        "point {i} is dominated by or equal to point {j}"
                    )));
                }
            }
        }
        Ok(Self { dim, points })
    }

    /// The empty approximation in `dim` objectives.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        Ok(Self {
            dim,
            points: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ObjVec] {
        &self.points
    }

    pub fn into_points(self) -> Vec<ObjVec> {
        self.points
    }

    /// Adds `y` if no member weakly dominates it, evicting members it dominates.
    /// Returns whether the front changed.
    pub fn insert(&mut self, y: ObjVec) -> Result<bool> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                point: self.points.len(),
                index: y.iter().position(|v| !v.is_finite()).unwrap_or(0),
            });
        }
        if self.points.iter().any(|p| weakly_dominates(p, &y)) {
            return Ok(false);
        }
        self.points.retain(|p| !dominates_unchecked(&y, p));
        self.points.push(y);
        Ok(true)
    }

    /// Members that strictly dominate `r` in every coordinate. Members outside the
    /// reference box contribute nothing to hypervolume-based quantities.
    pub fn restrict_to(&self, r: &RefPoint) -> ParetoApprox {
        ParetoApprox {
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|p| strictly_greater(p, r.coords()))
                .cloned()
                .collect(),
        }
    }

    /// Fails unless every member strictly dominates `r` coordinatewise.
    pub fn check_reference(&self, r: &RefPoint) -> Result<()> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: r.dim(),
            });
        }
        match self
            .points
            .iter()
            .position(|p| !strictly_greater(p, r.coords()))
        {
            Some(i) => Err(Error::ReferenceNotDominated(i)),
            None => Ok(()),
        }
    }
}

fn validate_points(points: &[ObjVec]) -> Result<usize> {
    let first = points.first().ok_or(Error::Empty)?;
    let dim = first.len();
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        if let Some(index) = p.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { point: i, index });
        }
    }
    Ok(dim)
}

/// Lower corner of the hypervolume region. Entries may be `-inf` (used by PoI).
#[derive(Debug, Clone, PartialEq)]
pub struct RefPoint(Vec<f64>);

impl RefPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if let Some(index) = coords
            .iter()
            .position(|v| v.is_nan() || *v == f64::INFINITY)
        {
            return Err(Error::NonFinite { point: 0, index });
        }
        Ok(Self(coords))
    }

    /// `(-inf, ..., -inf)`.
    pub fn neg_infinity(dim: usize) -> Self {
        Self(vec![f64::NEG_INFINITY; dim])
    }

    /// Origin reference.
    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

/// Non-dominated subset of `ys`, duplicates removed. Kept points retain their
/// input order.
pub fn nd_filter(ys: &[ObjVec]) -> Result<ParetoApprox> {
    let dim = validate_points(ys)?;
    // In lexicographically descending order a dominator always precedes the
    // points it dominates, so one pass against the kept set suffices.
    let mut order: Vec<usize> = (0..ys.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&ys[b], &ys[a]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        if !kept.iter().any(|&k| weakly_dominates(&ys[k], &ys[i])) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    Ok(ParetoApprox {
        dim,
        points: kept.into_iter().map(|i| ys[i].clone()).collect(),
    })
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Lebesgue measure of the region dominated by `p` and bounded below by `r`.
///
/// Two objectives use a staircase sum and three a plane sweep over a balanced
/// tree. Four or more go through the non-dominated space box decomposition:
/// the bounding box `[r, max(p)]` minus the clipped non-dominated boxes.
pub fn hypervolume(p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    p.check_reference(r)?;
    if !r.is_finite() {
        return Err(Error::InvalidArgument(
            "hypervolume needs a finite reference point".into(),
        ));
    }
    if p.is_empty() {
        return Ok(0.0);
    }
    Ok(match p.dim() {
        2 => hv2d(p.points(), r.coords()),
        3 => hv3d(p.points(), r.coords()),
        _ => hv_by_decomposition(p, r),
    })
}

fn hv_by_decomposition(p: &ParetoApprox, r: &RefPoint) -> f64 {
    let d = p.dim();
    let mut ideal = r.coords().to_vec();
    for q in p.points() {
        for k in 0..d {
            ideal[k] = ideal[k].max(q[k]);
        }
    }
    let total: f64 = (0..d).map(|k| ideal[k] - r.coords()[k]).product();
    let part = decomposition::partition_dd(p, r);
    let mut free = crate::sum::Neumaier::default();
    for b in part.boxes() {
        let mut v = 1.0;
        for k in 0..d {
            let hi = b.upper[k].min(ideal[k]);
            let side = hi - b.lower[k];
            if side <= 0.0 {
                v = 0.0;
                break;
            }
            v *= side;
        }
        free.add(v);
    }
    (total - free.value()).max(0.0)
}

/// Hypervolume by recursive slicing along the last objective. Accepts dominated
/// points. Independent of the decomposition code and used to cross-check it.
pub fn hypervolume_slicing(points: &[ObjVec], r: &[f64]) -> f64 {
    let pts: Vec<ObjVec> = points
        .iter()
        .filter(|p| strictly_greater(p, r))
        .cloned()
        .collect();
    hv_points(pts, r)
}

/// Hypervolume of arbitrary points that all strictly dominate `r`.
fn hv_points(mut pts: Vec<ObjVec>, r: &[f64]) -> f64 {
    let d = r.len();
    match pts.len() {
        0 => return 0.0,
        1 => return (0..d).map(|k| pts[0][k] - r[k]).product(),
        _ => {}
    }
    match d {
        2 => hv2d(&pts, r),
        3 => hv3d(&pts, r),
        _ => {
            let last = d - 1;
            pts.sort_by(|a, b| b[last].total_cmp(&a[last]));
            let mut acc = 0.0;
            let mut slab: Vec<ObjVec> = Vec::with_capacity(pts.len());
            for i in 0..pts.len() {
                let proj = &pts[i][..last];
                if !slab.iter().any(|q| weakly_dominates(q, proj)) {
                    slab.retain(|q| !weakly_dominates(proj, q));
                    slab.push(proj.to_vec());
                }
                let floor = if i + 1 < pts.len() {
                    pts[i + 1][last]
                } else {
                    r[last]
                };
                let h = pts[i][last] - floor;
                if h > 0.0 {
                    acc += h * hv_points(slab.clone(), &r[..last]);
                }
            }
            acc
        }
    }
}

/// Staircase sum; tolerates dominated points.
fn hv2d(points: &[ObjVec], r: &[f64]) -> f64 {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[b][0].total_cmp(&points[a][0]));
    let mut acc = 0.0;
    let mut best_y2 = r[1];
    for (j, &i) in idx.iter().enumerate() {
        best_y2 = best_y2.max(points[i][1]);
        let next_x = idx.get(j + 1).map_or(r[0], |&n| points[n][0]);
        acc += (points[i][0] - next_x) * (best_y2 - r[1]);
    }
    acc
}

/// Sweep in descending third objective keeping the dominated area of the
/// y1-y2 staircase up to date.
fn hv3d(points: &[ObjVec], r: &[f64]) -> f64 {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[b][2].total_cmp(&points[a][2]));
    let mut stairs: BTreeMap<Key, f64> = BTreeMap::new();
    let mut area = 0.0;
    let mut acc = 0.0;
    for (j, &i) in idx.iter().enumerate() {
        let (a, b) = (points[i][0], points[i][1]);
        area += insert_stair(&mut stairs, a, b, r);
        let next_z = idx.get(j + 1).map_or(r[2], |&n| points[n][2]);
        acc += area * (points[i][2] - next_z);
    }
    acc
}

/// Inserts `(a, b)` into a staircase (keys ascending y1, values descending y2)
/// and returns the newly dominated area above `r`.
fn insert_stair(stairs: &mut BTreeMap<Key, f64>, a: f64, b: f64, r: &[f64]) -> f64 {
    if let Some((_, &v)) = stairs.range(Key(a)..).next() {
        if v >= b {
            return 0.0;
        }
    }
    let right_y2 = stairs
        .range((std::ops::Bound::Excluded(Key(a)), std::ops::Bound::Unbounded))
        .next()
        .map_or(r[1], |(_, &v)| v);
    let mut gone: Vec<(f64, f64)> = Vec::new();
    let mut left_x = r[0];
    for (k, &v) in stairs.range(..=Key(a)).rev() {
        if v <= b {
            gone.push((k.0, v));
        } else {
            left_x = k.0;
            break;
        }
    }
    gone.reverse();
    let mut added = 0.0;
    let mut x0 = left_x;
    for &(x, y) in &gone {
        added += (x - x0) * (b - y);
        x0 = x;
        stairs.remove(&Key(x));
    }
    added += (a - x0) * (b - right_y2);
    stairs.insert(Key(a), b);
    added
}

/// Hypervolume gained by adding `y` to `p`. Zero when `y` is weakly dominated by
/// a member or does not strictly dominate `r`.
///
/// Two and three objectives use the exclusive volume
/// `vol([r, y]) - HV({min(q, y)})`, which avoids the cancellation of
/// `HV(p + y) - HV(p)`. Four or more sum `vol(B & [r, y])` over the
/// non-dominated space boxes `B`.
pub fn hvi(y: &[f64], p: &ParetoApprox, r: &RefPoint) -> Result<f64> {
    HviEvaluator::new(p, r)?.eval(y)
}

/// Hypervolume improvement queries against a fixed front and reference.
#[derive(Debug, Clone)]
pub struct HviEvaluator {
    points: Vec<ObjVec>,
    r: Vec<f64>,
    /// Flattened `(lower, upper)` box corners, used for `d >= 4`.
    boxes: Option<(Vec<f64>, Vec<f64>)>,
}

impl HviEvaluator {
    pub fn new(p: &ParetoApprox, r: &RefPoint) -> Result<Self> {
        p.check_reference(r)?;
        if !r.is_finite() {
            return Err(Error::InvalidArgument(
                "hypervolume improvement needs a finite reference point".into(),
            ));
        }
        let boxes = (p.dim() >= 4).then(|| {
            let part = decomposition::partition_dd(p, r);
            let mut lo = Vec::with_capacity(part.len() * p.dim());
            let mut hi = Vec::with_capacity(part.len() * p.dim());
            for b in part.boxes() {
                lo.extend_from_slice(&b.lower);
                hi.extend_from_slice(&b.upper);
            }
            (lo, hi)
        });
        Ok(Self {
            points: p.points().to_vec(),
            r: r.coords().to_vec(),
            boxes,
        })
    }

    pub fn eval(&self, y: &[f64]) -> Result<f64> {
        if y.len() != self.r.len() {
            return Err(Error::DimensionMismatch {
                expected: self.r.len(),
                got: y.len(),
            });
        }
        Ok(self.eval_unchecked(y))
    }

    pub(crate) fn eval_unchecked(&self, y: &[f64]) -> f64 {
        if !strictly_greater(y, &self.r) || self.points.iter().any(|q| weakly_dominates(q, y)) {
            return 0.0;
        }
        match &self.boxes {
            None => hvi_exclusive(y, &self.points, &self.r),
            Some((lo, hi)) => boxes_hvi(lo, hi, y),
        }
    }
}

/// `sum_B vol(B & [-inf, y])` over flattened boxes.
pub(crate) fn boxes_hvi(lo: &[f64], hi: &[f64], y: &[f64]) -> f64 {
    let d = y.len();
    let mut acc = crate::sum::Neumaier::default();
    'boxes: for (l, u) in lo.chunks_exact(d).zip(hi.chunks_exact(d)) {
        let mut v = 1.0;
        for k in 0..d {
            let side = u[k].min(y[k]) - l[k];
            if side <= 0.0 {
                continue 'boxes;
            }
            v *= side;
        }
        acc.add(v);
    }
    acc.value()
}

/// Exclusive-volume improvement of `y`; accepts any point set strictly above `r`.
pub(crate) fn hvi_exclusive(y: &[f64], points: &[ObjVec], r: &[f64]) -> f64 {
    if !strictly_greater(y, r) {
        return 0.0;
    }
    if points.iter().any(|q| weakly_dominates(q, y)) {
        return 0.0;
    }
    let d = y.len();
    let own: f64 = (0..d).map(|k| y[k] - r[k]).product();
    let mut clipped: Vec<ObjVec> = Vec::new();
    for q in points {
        let c: ObjVec = q.iter().zip(y).map(|(a, b)| a.min(*b)).collect();
        if !clipped.iter().any(|k| weakly_dominates(k, &c)) {
            clipped.retain(|k| !weakly_dominates(&c, k));
            clipped.push(c);
        }
    }
    (own - hv_points(clipped, r)).max(0.0)
}
