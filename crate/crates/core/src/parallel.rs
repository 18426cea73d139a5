//! Sequential / data-parallel execution switch.
//!
//! With the `parallel` feature (default) `Execution::Parallel` runs on the
//! rayon pool; without it every strategy runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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

impl Execution {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Folds chunks of `items` into accumulators and merges them. The result
    /// must not depend on how `items` is split.
    pub fn fold_reduce<T, A, Id, Fo, Re>(self, items: &[T], identity: Id, fold: Fo, reduce: Re) -> A
    where
        T: Sync,
        A: Send,
        Id: Fn() -> A + Sync + Send,
        Fo: Fn(A, &T) -> A + Sync + Send,
        Re: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .fold(&identity, &fold)
                    .reduce(&identity, &reduce)
            }
            _ => {
                let _ = reduce;
                items.iter().fold(identity(), fold)
            }
        }
    }
}
