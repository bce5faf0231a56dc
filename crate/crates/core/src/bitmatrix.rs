//! Dense bit-packed Boolean matrices.
//!
//! Rows are packed into `u64` words. Bits past `cols` in the last word of a
//! row are always zero, so derived `Eq` and `Hash` compare matrices by value.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD_BITS);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Any nonzero entry counts as 1.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Adjacency matrix of an edge list on `n` nodes (`(from, to)` sets entry `[from][to]`).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(n, n);
        for (a, b) in edges {
            m.set(a, b, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols);
        let word = &mut self.words[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.words[row * self.stride..(row + 1) * self.stride]
    }

    /// Column indices of the set bits in `row`, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(row)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter(word).map(move |b| w * WORD_BITS + b))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.rows * self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Boolean product: `(A ×_B B)[r][c] = OR_k A[r][k] AND B[k][c]`.
    ///
    /// Each output row is the OR of the rows of `other` selected by the set
    /// bits of the corresponding row of `self`.
    pub fn bool_mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(
            self.cols, other.rows,
            "Boolean product dimension mismatch: {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        let stride = out.stride;
        for r in 0..self.rows {
            let dst = &mut out.words[r * stride..(r + 1) * stride];
            for k in self.row_ones(r) {
                for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                    *d |= *s;
                }
            }
        }
        out
    }

    /// Boolean sum (entrywise OR).
    pub fn bool_add(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = self.clone();
        out.bool_add_assign(other);
        out
    }

    pub fn bool_add_assign(&mut self, other: &BoolMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "Boolean sum dimension mismatch"
        );
        for (d, s) in self.words.iter_mut().zip(&other.words) {
            *d |= *s;
        }
    }

    /// Rows as vectors of 0/1.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// `k`-fold Boolean product of a square matrix, `k >= 1`.
///
/// Uses binary exponentiation; Boolean powers compose (`A^(a+b) = A^(a) ×_B A^(b)`),
/// so squaring yields exactly the `k`-step relation.
pub fn bool_pow(m: &BoolMatrix, k: u64) -> Result<BoolMatrix> {
    m.require_square()?;
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut base = m.clone();
    let mut acc: Option<BoolMatrix> = None;
    let mut e = k;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.bool_mul(&base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.bool_mul(&base);
    }
    Ok(acc.expect("k >= 1"))
}

/// Controllability matrix `F = Σ_B M^(i)`, `i = 1..N`.
///
/// Evaluated as `M ×_B (I + M)^(N-1)`, whose expansion is exactly the
/// Boolean sum of powers 1 through N, in `O(log N)` products.
pub fn compute_f(m: &BoolMatrix) -> Result<BoolMatrix> {
    let n = m.require_square()?;
    if n <= 1 {
        return Ok(m.clone());
    }
    let lifted = m.bool_add(&BoolMatrix::identity(n));
    let partial = bool_pow(&lifted, (n - 1) as u64)?;
    Ok(m.bool_mul(&partial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> BoolMatrix {
        BoolMatrix::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn arb_square(max: usize) -> impl Strategy<Value = BoolMatrix> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n)
                .prop_map(move |bits| BoolMatrix::from_fn(n, n, |r, c| bits[r * n + c]))
        })
    }

    fn naive_mul(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
        BoolMatrix::from_fn(a.rows(), b.cols(), |r, c| {
            (0..a.cols()).any(|k| a.get(r, k) && b.get(k, c))
        })
    }

    #[test]
    fn cycle_power_returns_identity() {
        let c = cycle(3);
        assert_eq!(bool_pow(&c, 3).unwrap(), BoolMatrix::identity(3));
        assert_eq!(bool_pow(&c, 1).unwrap(), c);
    }

    #[test]
    fn zero_exponent_rejected() {
        assert_eq!(bool_pow(&cycle(3), 0), Err(Error::ZeroExponent));
    }

    #[test]
    fn non_square_rejected() {
        let m = BoolMatrix::zeros(2, 3);
        assert!(matches!(bool_pow(&m, 2), Err(Error::NotSquare { .. })));
        assert!(matches!(compute_f(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn identity_closure_is_identity() {
        for n in [1, 2, 5, 70] {
            let i = BoolMatrix::identity(n);
            assert_eq!(compute_f(&i).unwrap(), i);
        }
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 130;
        let c = cycle(n);
        assert_eq!(bool_pow(&c, n as u64).unwrap(), BoolMatrix::identity(n));
        assert!(compute_f(&c).unwrap().is_all_ones());
        assert_eq!(c.transpose().transpose(), c);
        assert_eq!(c.row_ones(129).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn all_ones_detection() {
        assert!(BoolMatrix::ones(3, 67).is_all_ones());
        let mut m = BoolMatrix::ones(3, 67);
        m.set(2, 66, false);
        assert!(!m.is_all_ones());
    }

    proptest! {
        #[test]
        fn product_matches_definition(a in arb_square(9), seed in any::<u64>()) {
            let n = a.rows();
            let b = BoolMatrix::from_fn(n, n, |r, c| (seed >> ((r * 7 + c) % 64)) & 1 == 1);
            prop_assert_eq!(a.bool_mul(&b), naive_mul(&a, &b));
        }

        #[test]
        fn powers_compose(m in arb_square(8), a in 1u64..12, b in 1u64..12) {
            let lhs = bool_pow(&m, a + b).unwrap();
            let rhs = bool_pow(&m, a).unwrap().bool_mul(&bool_pow(&m, b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn closure_stabilizes_by_n_terms(m in arb_square(8)) {
            let n = m.rows();
            let mut power = m.clone();
            let mut sum_n = m.clone();
            for _ in 2..=n {
                power = power.bool_mul(&m);
                sum_n.bool_add_assign(&power);
            }
            let mut sum_2n = sum_n.clone();
            for _ in n + 1..=2 * n {
                power = power.bool_mul(&m);
                sum_2n.bool_add_assign(&power);
            }
            prop_assert_eq!(&sum_n, &sum_2n);
            prop_assert_eq!(compute_f(&m).unwrap(), sum_n);
        }
    }
}
