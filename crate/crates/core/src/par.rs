//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature, work is spread over the rayon pool. Results are
//! always collected in index order, so the choice never changes an output.

/// How independent work items are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool; same as `Sequential` when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `(0..n).map(f)` collected in order.
pub fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// `items.iter().map(f)` collected in order.
pub fn map_slice<S, T, F>(items: &[S], exec: Execution, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let a = map_indexed(1000, Execution::Parallel, |i| i * i);
        let b = map_indexed(1000, Execution::Sequential, |i| i * i);
        assert_eq!(a, b);
        assert_eq!(map_slice(&[1, 2, 3], Execution::Parallel, |x| x + 1), vec![2, 3, 4]);
    }
}
