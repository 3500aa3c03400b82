//! Execution strategy for batch sweeps.
//!
//! Sweeps over parameter grids (stability profiles, obstruction systems,
//! catalog goals, randomized recursion checks) are embarrassingly parallel.
//! With the `parallel` feature they run on rayon's pool; without it, or when
//! [`Exec::Sequential`] is requested, they run in order on the calling thread.
//! Results are always returned in input order, so output never depends on the
//! schedule.

/// How a batch of independent tasks is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// One task after another on the calling thread.
    Sequential,
    /// Data-parallel on the rayon pool (falls back to sequential when the
    /// `parallel` feature is disabled).
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    /// True when tasks actually run concurrently in this build.
    pub fn is_concurrent(self) -> bool {
        self == Exec::Parallel && cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_preserve_order() {
        let xs: Vec<u64> = (0..200).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        let par = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[13], 169);
    }
}
