//! Execution strategy for the data-parallel scans.
//!
//! Every scan in the crate goes through [`Exec`], so the same code path runs
//! either on the rayon pool or on the calling thread. Results never depend on
//! the strategy: searches return the first hit in the fixed scan order and
//! maps preserve input order. Without the `parallel` feature,
//! [`Exec::Parallel`] runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// First `Some` produced over `range`, in increasing order.
    pub fn find_map_first<R, F>(self, range: Range<i64>, f: F) -> Option<R>
    where
        F: Fn(i64) -> Option<R> + Sync + Send,
        R: Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().find_map_first(f)
            }
            _ => range.into_iter().find_map(f),
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = exec.find_map_first(0..10_000, |i| (i % 97 == 96).then_some(i));
            assert_eq!(hit, Some(96));
            let v: Vec<i64> = (0..100).collect();
            assert_eq!(exec.map(&v, |x| x * x)[99], 9801);
        }
    }
}
