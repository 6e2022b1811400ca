//! Comparison-addition cost model.
//!
//! Solvers touch weights only through [`Meter::add`] and [`Meter::cmp`].
//! [`CostMeter`] counts each call; [`NoMeter`] compiles down to the bare
//! arithmetic. The Unreached sentinel (`f64::INFINITY`) lies outside the
//! model: comparisons involving it are control flow and are not counted.

use std::cell::Cell;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub trait Meter {
    fn add(&self, a: f64, b: f64) -> f64;

    /// Total order on finite weights plus `+inf` as the greatest element.
    fn cmp(&self, a: f64, b: f64) -> Ordering;

    #[inline]
    fn less(&self, a: f64, b: f64) -> bool {
        self.cmp(a, b) == Ordering::Less
    }
}

#[inline]
fn raw_cmp(a: f64, b: f64) -> Ordering {
    debug_assert!(!a.is_nan() && !b.is_nan());
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Unmetered arithmetic.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoMeter;

impl Meter for NoMeter {
    #[inline]
    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    #[inline]
    fn cmp(&self, a: f64, b: f64) -> Ordering {
        raw_cmp(a, b)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostSnapshot {
    pub comparisons: u64,
    pub additions: u64,
}

impl CostSnapshot {
    pub fn total(&self) -> u64 {
        self.comparisons + self.additions
    }
}

/// Counts weight comparisons and additions of one run.
#[derive(Debug, Default)]
pub struct CostMeter {
    comparisons: Cell<u64>,
    additions: Cell<u64>,
}

impl CostMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> CostSnapshot {
        CostSnapshot {
            comparisons: self.comparisons.get(),
            additions: self.additions.get(),
        }
    }

    pub fn reset(&self) {
        self.comparisons.set(0);
        self.additions.set(0);
    }
}

impl Meter for CostMeter {
    #[inline]
    fn add(&self, a: f64, b: f64) -> f64 {
        debug_assert!(
            a.is_finite() && b.is_finite(),
            "additions are on weights only"
        );
        self.additions.set(self.additions.get() + 1);
        a + b
    }

    #[inline]
    fn cmp(&self, a: f64, b: f64) -> Ordering {
        if a.is_finite() && b.is_finite() {
            self.comparisons.set(self.comparisons.get() + 1);
        }
        raw_cmp(a, b)
    }
}

impl<M: Meter + ?Sized> Meter for &M {
    #[inline]
    fn add(&self, a: f64, b: f64) -> f64 {
        (**self).add(a, b)
    }

    #[inline]
    fn cmp(&self, a: f64, b: f64) -> Ordering {
        (**self).cmp(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additions_are_counted() {
        let m = CostMeter::new();
        assert_eq!(m.add(0.0, 0.0), 0.0);
        assert_eq!(m.snapshot().additions, 1);
        assert_eq!(m.add(1.5, 2.25), 3.75);
        for _ in 0..10 {
            m.add(1.0, 1.0);
        }
        assert_eq!(
            m.snapshot(),
            CostSnapshot {
                comparisons: 0,
                additions: 12
            }
        );
    }

    #[test]
    fn sentinel_comparisons_are_free() {
        let m = CostMeter::new();
        assert_eq!(m.cmp(1.0, 2.0), Ordering::Less);
        assert_eq!(m.snapshot().comparisons, 1);
        assert_eq!(m.cmp(f64::INFINITY, 5.0), Ordering::Greater);
        assert_eq!(m.cmp(5.0, f64::INFINITY), Ordering::Less);
        assert_eq!(m.cmp(f64::INFINITY, f64::INFINITY), Ordering::Equal);
        assert_eq!(m.snapshot().comparisons, 1);
    }

    #[test]
    fn snapshot_and_reset() {
        let m = CostMeter::new();
        assert_eq!(m.snapshot(), CostSnapshot::default());
        m.add(1.0, 2.0);
        m.cmp(1.0, 2.0);
        assert_eq!(m.snapshot(), m.snapshot());
        m.reset();
        assert_eq!(m.snapshot(), CostSnapshot::default());
    }

    #[test]
    fn unmetered_matches_metered() {
        let m = CostMeter::new();
        for (a, b) in [(0.1, 0.2), (1e300, 1e300), (0.0, 3.5)] {
            assert_eq!(NoMeter.add(a, b).to_bits(), m.add(a, b).to_bits());
            assert_eq!(NoMeter.cmp(a, b), m.cmp(a, b));
        }
    }
}
