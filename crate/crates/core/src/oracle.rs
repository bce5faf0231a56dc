//! Structure-free classification from the eventually periodic sequence of
//! Boolean powers `M^(1), M^(2), ...`.
//!
//! Nothing here consults SCCs or loop numbers, so the results can be used to
//! check the categorizer.

use std::collections::HashMap;

use num_integer::Integer;

use crate::bitmatrix::{bool_pow, BoolMatrix};
use crate::categorizer::{Category, CategoryMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 256;

/// Powers `M^(1) .. M^(t+p-1)` with `M^(k+p) = M^(k)` for all `k >= t`.
#[derive(Debug, Clone)]
pub struct PowerTrace {
    transient: usize,
    period: usize,
    snapshots: Vec<BoolMatrix>,
}

impl PowerTrace {
    /// First index `t` of the periodic part (1-based power).
    pub fn transient(&self) -> usize {
        self.transient
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn snapshots(&self) -> &[BoolMatrix] {
        &self.snapshots
    }

    /// `M^(k)` for any `k >= 1`, folded into the stored window.
    pub fn power(&self, k: usize) -> &BoolMatrix {
        assert!(k >= 1, "powers start at 1");
        let idx = if k < self.transient + self.period {
            k
        } else {
            self.transient + (k - self.transient) % self.period
        };
        &self.snapshots[idx - 1]
    }

    /// Category of the pair `source -> target` from the stored window.
    pub fn entry_category(&self, target: usize, source: usize) -> Category {
        let hit = |k: usize| self.snapshots[k - 1].get(target, source);
        let window = self.transient..self.transient + self.period;
        let in_tail = window.clone().filter(|&k| hit(k)).count();
        if in_tail == self.period {
            Category::Primitive
        } else if in_tail > 0 {
            Category::Imprimitive
        } else if (1..self.transient).any(hit) {
            Category::Transient
        } else {
            Category::Unreachable
        }
    }
}

/// Power trace of a square matrix of order at most [`DEFAULT_ORACLE_CAP`].
pub fn power_trace(m: &BoolMatrix) -> Result<PowerTrace> {
    power_trace_capped(m, DEFAULT_ORACLE_CAP)
}

/// Finds the minimal `(t, p)` by hashing successive powers until one repeats.
pub fn power_trace_capped(m: &BoolMatrix, cap: usize) -> Result<PowerTrace> {
    let n = m.require_square()?;
    if n > cap {
        return Err(Error::OracleCap { order: n, cap });
    }
    let mut seen: HashMap<BoolMatrix, usize> = HashMap::new();
    let mut snapshots: Vec<BoolMatrix> = Vec::new();
    let mut current = m.clone();
    let mut k = 1usize;
    loop {
        if let Some(&t) = seen.get(&current) {
            return Ok(PowerTrace {
                transient: t,
                period: k - t,
                snapshots,
            });
        }
        seen.insert(current.clone(), k);
        let next = current.bool_mul(m);
        snapshots.push(current);
        current = next;
        k += 1;
    }
}

pub fn classify_by_powers(trace: &PowerTrace) -> CategoryMatrix {
    let n = trace.snapshots[0].rows();
    let mut out = CategoryMatrix::filled(n, Category::Unreachable);
    for j in 0..n {
        for i in 0..n {
            out.set(j, i, trace.entry_category(j, i));
        }
    }
    out
}

/// Whether every pair is reachable in exactly `k` steps.
pub fn k_fixed_time_controllable(m: &BoolMatrix, k: u64) -> Result<bool> {
    Ok(bool_pow(m, k)?.is_all_ones())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeStepSets {
    pub source: usize,
    pub target: usize,
    pub k_max: usize,
    /// `k <= k_max` with `M^(k)[target][source] = 1`.
    pub rho_prefix: Vec<usize>,
    /// The complement of `rho_prefix` in `[1, k_max]`.
    pub sigma_prefix: Vec<usize>,
    /// Category from the full periodic trace.
    pub tail: Category,
}

/// Reachable and unreachable step counts up to `k_max` for `source -> target` (0-based).
pub fn time_step_sets(
    m: &BoolMatrix,
    source: usize,
    target: usize,
    k_max: usize,
    cap: usize,
) -> Result<TimeStepSets> {
    if k_max == 0 {
        return Err(Error::ZeroExponent);
    }
    let n = m.require_square()?;
    for (what, idx) in [("source", source), ("target", target)] {
        if idx >= n {
            return Err(Error::IndexOutOfRange {
                what,
                index: idx + 1,
                max: n,
            });
        }
    }
    let trace = power_trace_capped(m, cap)?;
    let (rho_prefix, sigma_prefix) =
        (1..=k_max).partition(|&k| trace.power(k).get(target, source));
    Ok(TimeStepSets {
        source,
        target,
        k_max,
        rho_prefix,
        sigma_prefix,
        tail: trace.entry_category(target, source),
    })
}

/// Frobenius–Schur index of a set of positive lengths: the least `φ >= 1`
/// such that `n·η` is a nonnegative combination of the lengths for every
/// `n >= φ`, where `η` is their gcd.
pub fn frobenius_schur_index(lengths: &[usize]) -> Result<usize> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::InvalidLengths);
    }
    let eta = lengths.iter().fold(0usize, |g, &l| g.gcd(&l));
    let mut reduced: Vec<usize> = lengths.iter().map(|&l| l / eta).collect();
    reduced.sort_unstable();
    reduced.dedup();
    let (lo, hi) = (reduced[0], *reduced.last().expect("nonempty"));
    // The Frobenius number of a gcd-1 set is below lo·hi.
    let bound = lo * hi + hi;
    let mut representable = vec![false; bound + 1];
    representable[0] = true;
    for v in 1..=bound {
        representable[v] = reduced.iter().any(|&l| l <= v && representable[v - l]);
    }
    let largest_gap = (1..=bound).rev().find(|&v| !representable[v]);
    Ok(largest_gap.map_or(1, |g| g + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> BoolMatrix {
        // M[j][i] = 1 for i -> j
        BoolMatrix::from_edges(n, (0..n).map(|i| ((i + 1) % n, i)))
    }

    #[test]
    fn cycle_trace() {
        let t = power_trace(&cycle(3)).unwrap();
        assert_eq!((t.transient(), t.period()), (1, 3));
        assert_eq!(t.snapshots().len(), 3);
    }

    #[test]
    fn all_ones_trace() {
        let t = power_trace(&BoolMatrix::ones(4, 4)).unwrap();
        assert_eq!((t.transient(), t.period()), (1, 1));
        assert_eq!(
            classify_by_powers(&t),
            CategoryMatrix::filled(4, Category::Primitive)
        );
    }

    #[test]
    fn identity_classification() {
        let t = power_trace(&BoolMatrix::identity(3)).unwrap();
        let c = classify_by_powers(&t);
        for j in 0..3 {
            for i in 0..3 {
                let want = if i == j {
                    Category::Primitive
                } else {
                    Category::Unreachable
                };
                assert_eq!(c.get(j, i), want);
            }
        }
    }

    #[test]
    fn single_edge_is_transient() {
        let m = BoolMatrix::from_edges(2, [(1, 0)]);
        let c = classify_by_powers(&power_trace(&m).unwrap());
        assert_eq!(c.codes(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn zero_matrix_trace() {
        let t = power_trace(&BoolMatrix::zeros(3, 3)).unwrap();
        assert_eq!((t.transient(), t.period()), (1, 1));
        assert_eq!(
            classify_by_powers(&t),
            CategoryMatrix::filled(3, Category::Unreachable)
        );
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            power_trace_capped(&BoolMatrix::identity(5), 4).unwrap_err(),
            Error::OracleCap { order: 5, cap: 4 }
        );
    }

    #[test]
    fn fixed_time_small_cases() {
        assert!(k_fixed_time_controllable(&BoolMatrix::ones(3, 3), 1).unwrap());
        assert!(!k_fixed_time_controllable(&cycle(3), 3).unwrap());
        assert_eq!(
            k_fixed_time_controllable(&cycle(3), 0),
            Err(Error::ZeroExponent)
        );
    }

    #[test]
    fn time_steps_on_cycle() {
        let s = time_step_sets(&cycle(3), 0, 0, 9, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(s.rho_prefix, vec![3, 6, 9]);
        assert_eq!(s.sigma_prefix, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(s.tail, Category::Imprimitive);
        let s = time_step_sets(&BoolMatrix::zeros(2, 2), 1, 1, 5, DEFAULT_ORACLE_CAP).unwrap();
        assert!(s.rho_prefix.is_empty());
        assert!(time_step_sets(&cycle(3), 3, 0, 5, DEFAULT_ORACLE_CAP).is_err());
    }

    #[test]
    fn schur_index_examples() {
        assert_eq!(frobenius_schur_index(&[3, 5]), Ok(8));
        assert_eq!(frobenius_schur_index(&[4, 6]), Ok(2));
        assert_eq!(frobenius_schur_index(&[7]), Ok(1));
        assert_eq!(frobenius_schur_index(&[1, 9]), Ok(1));
        assert_eq!(frobenius_schur_index(&[]), Err(Error::InvalidLengths));
        assert_eq!(frobenius_schur_index(&[3, 0]), Err(Error::InvalidLengths));
    }
}
