//! Algebraic form of a Boolean control network.
//!
//! Logical values use vector form: `δ_2^1` is true and `δ_2^2` is false.
//! State and control indices in this module are 1-based delta indices.

use num_integer::Integer;

use crate::bitmatrix::BoolMatrix;
use crate::error::{Error, Result};

pub const MAX_STATE_VARS: usize = 16;
pub const MAX_INPUT_VARS: usize = 16;

/// Dense integer matrix, used for semi-tensor products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Column vector `δ_k^i` (1-based `i`).
    pub fn delta(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "δ_{k}^{i} out of range");
        let mut m = Self::zeros(k, 1);
        m.data[i - 1] = 1;
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend_from_slice(row);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = DenseMatrix::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    /// Returns `Some(i)` when this is the 1-based basis vector `δ_rows^i`.
    pub fn as_delta(&self) -> Option<usize> {
        if self.cols != 1 {
            return None;
        }
        let mut hit = None;
        for (idx, &v) in self.data.iter().enumerate() {
            match v {
                0 => {}
                1 if hit.is_none() => hit = Some(idx + 1),
                _ => return None,
            }
        }
        hit
    }
}

/// Semi-tensor product `A ⋉ B = (A ⊗ I_{t/q})(B ⊗ I_{t/r})`, `t = lcm(q, r)`.
pub fn stp(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let q = a.cols;
    let r = b.rows;
    let t = q.lcm(&r);
    let left = a.kron(&DenseMatrix::identity(t / q));
    let right = b.kron(&DenseMatrix::identity(t / r));
    left.matmul(&right)
}

/// A logical matrix `δ_rows[i_1, ..., i_k]`, stored by its column indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicalMatrix {
    rows: usize,
    cols: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, cols: Vec<usize>) -> Result<Self> {
        for (position, &index) in cols.iter().enumerate() {
            if index == 0 || index > rows {
                return Err(Error::ColumnOutOfRange {
                    position: position + 1,
                    index,
                    rows,
                });
            }
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols.len());
        for (c, &r) in self.cols.iter().enumerate() {
            m.set(r - 1, c, 1);
        }
        m
    }
}

/// Boolean control network in algebraic form `x(t+1) = L ⋉ u(t) ⋉ x(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bcn {
    state_vars: usize,
    input_vars: usize,
    l: LogicalMatrix,
}

impl Bcn {
    /// Wraps a transition matrix given as 1-based column indices.
    ///
    /// `columns` must have `2^(n+m)` entries, each in `[1, 2^n]`.
    pub fn from_delta(state_vars: usize, input_vars: usize, columns: Vec<usize>) -> Result<Self> {
        check_var_counts(state_vars, input_vars)?;
        let states = 1usize << state_vars;
        let expected = states << input_vars;
        if columns.len() != expected {
            return Err(Error::ColumnCount {
                expected,
                actual: columns.len(),
            });
        }
        let l = LogicalMatrix::new(states, columns)?;
        Ok(Self {
            state_vars,
            input_vars,
            l,
        })
    }

    pub fn state_vars(&self) -> usize {
        self.state_vars
    }

    pub fn input_vars(&self) -> usize {
        self.input_vars
    }

    /// `N = 2^n`.
    pub fn state_count(&self) -> usize {
        1 << self.state_vars
    }

    /// `2^m`.
    pub fn control_count(&self) -> usize {
        1 << self.input_vars
    }

    pub fn transition_matrix(&self) -> &LogicalMatrix {
        &self.l
    }

    /// Successor of state `x` under control `u` (both 1-based).
    pub fn evaluate(&self, x: usize, u: usize) -> Result<usize> {
        let n = self.state_count();
        let controls = self.control_count();
        if x == 0 || x > n {
            return Err(Error::IndexOutOfRange {
                what: "state",
                index: x,
                max: n,
            });
        }
        if u == 0 || u > controls {
            return Err(Error::IndexOutOfRange {
                what: "control",
                index: u,
                max: controls,
            });
        }
        Ok(self.l.cols[(u - 1) * n + (x - 1)])
    }

    /// One-step matrix `M`: `M[j][i] = 1` iff some control drives state `i` to `j`
    /// (0-based entry positions).
    pub fn one_step_matrix(&self) -> BoolMatrix {
        let n = self.state_count();
        let mut m = BoolMatrix::zeros(n, n);
        for (c, &target) in self.l.cols.iter().enumerate() {
            m.set(target - 1, c % n, true);
        }
        m
    }
}

fn check_var_counts(state_vars: usize, input_vars: usize) -> Result<()> {
    if !(1..=MAX_STATE_VARS).contains(&state_vars) {
        return Err(Error::VariableCount {
            what: "n",
            value: state_vars,
            min: 1,
            max: MAX_STATE_VARS,
        });
    }
    if input_vars > MAX_INPUT_VARS {
        return Err(Error::VariableCount {
            what: "m",
            value: input_vars,
            min: 0,
            max: MAX_INPUT_VARS,
        });
    }
    Ok(())
}

/// Logical form: one truth table per state variable.
///
/// Table entry `t` holds `f_i` evaluated at the assignment whose bits, read as
/// a binary number with `u_1` most significant, are `(u_1, ..., u_m, x_1, ..., x_n)`.
/// Entry 0 is therefore the all-false assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTableSystem {
    state_vars: usize,
    input_vars: usize,
    tables: Vec<Vec<bool>>,
}

impl TruthTableSystem {
    pub fn new(state_vars: usize, input_vars: usize, tables: Vec<Vec<bool>>) -> Result<Self> {
        check_var_counts(state_vars, input_vars)?;
        if tables.len() != state_vars {
            return Err(Error::TableCount {
                expected: state_vars,
                actual: tables.len(),
            });
        }
        let expected = 1usize << (state_vars + input_vars);
        for (table, t) in tables.iter().enumerate() {
            if t.len() != expected {
                return Err(Error::TableLength {
                    table: table + 1,
                    expected,
                    actual: t.len(),
                });
            }
        }
        Ok(Self {
            state_vars,
            input_vars,
            tables,
        })
    }

    pub fn state_vars(&self) -> usize {
        self.state_vars
    }

    pub fn input_vars(&self) -> usize {
        self.input_vars
    }

    pub fn tables(&self) -> &[Vec<bool>] {
        &self.tables
    }

    /// Evaluates every `f_i` at the given assignment.
    pub fn step(&self, controls: &[bool], state: &[bool]) -> Vec<bool> {
        assert_eq!(controls.len(), self.input_vars);
        assert_eq!(state.len(), self.state_vars);
        let row = controls
            .iter()
            .chain(state)
            .fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.tables.iter().map(|t| t[row]).collect()
    }
}

/// Packs Boolean values into the 1-based index of `⋉ δ(v_i)`, `v_1` most significant.
pub fn pack_delta(values: &[bool]) -> usize {
    1 + values
        .iter()
        .fold(0usize, |acc, &v| (acc << 1) | (!v) as usize)
}

/// Inverse of [`pack_delta`] for `width` variables.
pub fn unpack_delta(index: usize, width: usize) -> Vec<bool> {
    let offset = index - 1;
    (0..width)
        .map(|k| (offset >> (width - 1 - k)) & 1 == 0)
        .collect()
}

/// Converts the logical form into the algebraic form.
///
/// Column `(a-1)·2^n + b` of `L` is the packed successor of state `b` under control `a`.
pub fn build_l(system: &TruthTableSystem) -> Bcn {
    let n = system.state_vars;
    let m = system.input_vars;
    let states = 1usize << n;
    let controls = 1usize << m;
    let mut columns = Vec::with_capacity(states * controls);
    for a in 1..=controls {
        let u = unpack_delta(a, m);
        for b in 1..=states {
            let x = unpack_delta(b, n);
            columns.push(pack_delta(&system.step(&u, &x)));
        }
    }
    Bcn::from_delta(n, m, columns).expect("truth-table system is well formed")
}

/// One-step matrix `M` of a BCN.
pub fn compute_m(bcn: &Bcn) -> BoolMatrix {
    bcn.one_step_matrix()
}
