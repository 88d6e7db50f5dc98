//! Sequential or rayon-backed execution of data-parallel loops.
//!
//! Results always come back in input order, so callers get identical output
//! from either mode.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses the rayon global pool; falls back to sequential without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    /// Whether loops actually run on the thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Keeps the items satisfying `pred`, preserving order.
    pub fn filter<T, F>(self, items: &[T], pred: F) -> Vec<T>
    where
        T: Sync + Send + Clone,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().filter(|t| pred(t)).cloned().collect();
        }
        items.iter().filter(|t| pred(t)).cloned().collect()
    }
}
