#![allow(dead_code)]

use boxehvi::{Hyperbox, ParetoApprox};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random mutually non-dominated front of at most `n` points in `(0, 10)^d`
/// on a jittered concave shell.
pub fn random_front(rng: &mut ChaCha8Rng, d: usize, n: usize) -> ParetoApprox {
    let mut pts: Vec<Vec<f64>> = Vec::new();
    while pts.len() < n {
        let g: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = 8.0 + rng.random::<f64>() * 0.5;
        pts.push(g.iter().map(|x| x / norm * scale).collect());
    }
    boxehvi::nd_filter(&pts).unwrap()
}

/// Front with coordinates restricted to a small integer grid, producing many ties.
pub fn tied_front(rng: &mut ChaCha8Rng, d: usize, n: usize, levels: u32) -> ParetoApprox {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| (rng.random_range(1..=levels)) as f64).collect())
        .collect();
    boxehvi::nd_filter(&pts).unwrap()
}

/// `true` iff `z > r` strictly and no front member weakly dominates `z`.
pub fn nondominated(z: &[f64], p: &ParetoApprox, r: &[f64]) -> bool {
    z.iter().zip(r).all(|(a, b)| a > b)
        && !p
            .points()
            .iter()
            .any(|q| q.iter().zip(z).all(|(a, b)| a >= b))
}

/// Uniform grid over the first two coordinates mapping cells to candidate boxes.
pub struct BoxGrid<'a> {
    boxes: &'a [Hyperbox],
    lo: [f64; 2],
    hi: [f64; 2],
    cells: usize,
    buckets: Vec<Vec<u32>>,
}

impl<'a> BoxGrid<'a> {
    pub fn new(boxes: &'a [Hyperbox], lo: [f64; 2], hi: [f64; 2], cells: usize) -> Self {
        let mut buckets = vec![Vec::new(); cells * cells];
        for (i, b) in boxes.iter().enumerate() {
            let (a0, a1) = Self::span(b.lower[0], b.upper[0], lo[0], hi[0], cells);
            let (c0, c1) = Self::span(b.lower[1], b.upper[1], lo[1], hi[1], cells);
            for x in a0..=a1 {
                for y in c0..=c1 {
                    buckets[x * cells + y].push(i as u32);
                }
            }
        }
        Self { boxes, lo, hi, cells, buckets }
    }

    fn cell(v: f64, lo: f64, hi: f64, cells: usize) -> usize {
        let t = ((v - lo) / (hi - lo) * cells as f64).floor();
        t.clamp(0.0, (cells - 1) as f64) as usize
    }

    fn span(l: f64, u: f64, lo: f64, hi: f64, cells: usize) -> (usize, usize) {
        (Self::cell(l, lo, hi, cells), Self::cell(u, lo, hi, cells))
    }

    /// Number of boxes whose closed extent contains `z`, and whose interior does.
    pub fn count(&self, z: &[f64]) -> (usize, usize) {
        let x = Self::cell(z[0], self.lo[0], self.hi[0], self.cells);
        let y = Self::cell(z[1], self.lo[1], self.hi[1], self.cells);
        let mut closed = 0;
        let mut open = 0;
        for &i in &self.buckets[x * self.cells + y] {
            let b = &self.boxes[i as usize];
            if b.contains(z) {
                closed += 1;
                if b.contains_interior(z) {
                    open += 1;
                }
            }
        }
        (closed, open)
    }
}
