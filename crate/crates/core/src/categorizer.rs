//! Per-pair controllability categories from condensation-path residue analysis.
//!
//! For an ordered state pair `(i, j)` every walk `i -> j` projects onto a path
//! of the condensation digraph. Each condensation path contributes a modulus
//! (the gcd of the loop numbers of its T2 components) and the set of walk
//! lengths mod that modulus. Lifting every set to the lcm of the moduli and
//! taking the union decides whether the reachable and unreachable step sets
//! are finite.
//!
//! States are 0-based; SCC indices follow [`SccDecomposition`] order.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::algebra::{compute_m, Bcn};
use crate::bitmatrix::{compute_f, BoolMatrix};
use crate::digraph::{
    build_digraph, condense, scc_decompose, Condensation, SccDecomposition, SccType,
    TransitionDigraph,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Category {
    /// `ρ` empty.
    Unreachable = 0,
    /// `ρ` finite and nonempty.
    Transient = 1,
    /// `σ` finite.
    Primitive = 2,
    /// Both `ρ` and `σ` infinite.
    Imprimitive = 3,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::Unreachable,
        Category::Transient,
        Category::Primitive,
        Category::Imprimitive,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Unreachable => "unreachable",
            Category::Transient => "transient",
            Category::Primitive => "primitive",
            Category::Imprimitive => "imprimitive",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Residues modulo `modulus`; always empty when the modulus is 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResidueSet {
    pub modulus: usize,
    pub residues: BTreeSet<usize>,
}

impl ResidueSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_complete(&self) -> bool {
        self.modulus > 0 && self.residues.len() == self.modulus
    }

    /// Lifts to a multiple `target` of the modulus: `{a + b·η : b < target/η}`.
    pub fn lift(&self, target: usize) -> BTreeSet<usize> {
        if self.modulus == 0 {
            return BTreeSet::new();
        }
        assert_eq!(target % self.modulus, 0, "lift target must be a multiple");
        let copies = target / self.modulus;
        self.residues
            .iter()
            .flat_map(|&a| (0..copies).map(move |b| a + b * self.modulus))
            .collect()
    }
}

/// Immutable context shared by all categorization queries.
#[derive(Debug, Clone)]
pub struct Analysis {
    one_step: BoolMatrix,
    controllability: BoolMatrix,
    digraph: TransitionDigraph,
    sccs: SccDecomposition,
    condensation: Condensation,
}

impl Analysis {
    /// Builds the context from a one-step matrix `M` (`M[j][i]` = edge `i -> j`).
    pub fn new(one_step: BoolMatrix) -> Result<Self> {
        let controllability = compute_f(&one_step)?;
        let digraph = build_digraph(&one_step)?;
        let sccs = scc_decompose(&digraph);
        let condensation = condense(&digraph, &sccs);
        Ok(Self {
            one_step,
            controllability,
            digraph,
            sccs,
            condensation,
        })
    }

    pub fn from_bcn(bcn: &Bcn) -> Self {
        Self::new(compute_m(bcn)).expect("one-step matrix of a BCN is square")
    }

    pub fn order(&self) -> usize {
        self.digraph.order()
    }

    pub fn one_step(&self) -> &BoolMatrix {
        &self.one_step
    }

    pub fn controllability(&self) -> &BoolMatrix {
        &self.controllability
    }

    pub fn digraph(&self) -> &TransitionDigraph {
        &self.digraph
    }

    pub fn sccs(&self) -> &SccDecomposition {
        &self.sccs
    }

    pub fn condensation(&self) -> &Condensation {
        &self.condensation
    }

    /// `F[j][i]`: whether `j` is reachable from `i` in at least one step.
    pub fn reachable(&self, i: usize, j: usize) -> bool {
        self.controllability.get(j, i)
    }
}

/// All directed paths `a -> ... -> b` in the condensation, including `[a]` when `a == b`.
pub fn enumerate_condensation_paths(cond: &Condensation, a: usize, b: usize) -> Vec<Vec<usize>> {
    let s = cond.order();
    // Condensation edges only go to higher indices, so one backward sweep
    // finds every node that can still reach `b`.
    let mut reaches = vec![false; s];
    if a <= b {
        reaches[b] = true;
        for c in (a..b).rev() {
            reaches[c] = cond.successors(c).iter().any(|&d| d <= b && reaches[d]);
        }
    }
    let mut out = Vec::new();
    if !reaches[a] {
        return out;
    }
    let mut path = vec![a];
    extend_paths(cond, b, &reaches, &mut path, &mut out);
    out
}

fn extend_paths(
    cond: &Condensation,
    target: usize,
    reaches: &[bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("nonempty path");
    if last == target {
        out.push(path.clone());
        return;
    }
    for &next in cond.successors(last) {
        if reaches[next] {
            path.push(next);
            extend_paths(cond, target, reaches, path, out);
            path.pop();
        }
    }
}

/// gcd of the loop numbers of the T2 components on `path`; 0 if there are none.
pub fn eta_for_path(path: &[usize], sccs: &SccDecomposition) -> usize {
    path.iter()
        .filter(|&&c| sccs.scc_type(c) == SccType::T2)
        .fold(0, |acc, &c| acc.gcd(&sccs.loop_number(c)))
}

/// Residues mod `eta` of the lengths of walks `i -> j` whose condensation
/// projection is exactly `path`.
///
/// Fixed point over `(position on path, node, residue)`. Every cycle lies in
/// one component and has length divisible by `eta`, so the walk residues
/// coincide with the residues of the simple paths.
pub fn residues_for_path(
    g: &TransitionDigraph,
    sccs: &SccDecomposition,
    path: &[usize],
    i: usize,
    j: usize,
    eta: usize,
) -> Result<ResidueSet> {
    if eta == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = g.order();
    let len = path.len();
    let mut residues = BTreeSet::new();
    if len == 0 || sccs.component_of(i) != path[0] || sccs.component_of(j) != path[len - 1] {
        return Ok(ResidueSet {
            modulus: eta,
            residues,
        });
    }
    let key = |pos: usize, node: usize, r: usize| (pos * n + node) * eta + r;
    let mut seen = vec![false; len * n * eta];
    let mut stack = vec![(0usize, i, 0usize)];
    seen[key(0, i, 0)] = true;
    while let Some((pos, u, r)) = stack.pop() {
        if pos + 1 == len && u == j {
            residues.insert(r);
        }
        let r_next = (r + 1) % eta;
        for &v in g.successors(u) {
            let cv = sccs.component_of(v);
            let pos_next = if cv == path[pos] {
                pos
            } else if pos + 1 < len && cv == path[pos + 1] {
                pos + 1
            } else {
                continue;
            };
            let k = key(pos_next, v, r_next);
            if !seen[k] {
                seen[k] = true;
                stack.push((pos_next, v, r_next));
            }
        }
    }
    Ok(ResidueSet {
        modulus: eta,
        residues,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAnalysis {
    /// Condensation path, SCC indices.
    pub path: Vec<usize>,
    pub eta: usize,
    pub residues: ResidueSet,
    /// Residues lifted to the pair's common modulus.
    pub lifted: BTreeSet<usize>,
    /// For paths through T1 components only: the single walk length they admit.
    pub fixed_length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<PathAnalysis>,
    /// lcm of the nonzero per-path moduli, 0 when all are zero.
    pub common_modulus: usize,
    /// Union of the lifted residue sets.
    pub residues: BTreeSet<usize>,
    pub category: Category,
}

/// Categorizes the ordered pair `(i, j)`, i.e. the entry `C[j][i]`.
pub fn categorize_pair(ctx: &Analysis, i: usize, j: usize) -> PairAnalysis {
    let sccs = ctx.sccs();
    let (a, b) = (sccs.component_of(i), sccs.component_of(j));
    let mut paths: Vec<PathAnalysis> = enumerate_condensation_paths(ctx.condensation(), a, b)
        .into_iter()
        .map(|path| {
            let eta = eta_for_path(&path, sccs);
            let residues = if eta > 0 {
                residues_for_path(ctx.digraph(), sccs, &path, i, j, eta)
                    .expect("positive modulus")
            } else {
                ResidueSet::empty()
            };
            let fixed_length = (eta == 0 && path.len() > 1).then(|| path.len() - 1);
            PathAnalysis {
                path,
                eta,
                residues,
                lifted: BTreeSet::new(),
                fixed_length,
            }
        })
        .collect();

    let common_modulus = paths
        .iter()
        .filter(|p| p.eta > 0)
        .fold(0usize, |acc, p| if acc == 0 { p.eta } else { acc.lcm(&p.eta) });
    let mut union = BTreeSet::new();
    for p in &mut paths {
        if p.eta > 0 {
            p.lifted = p.residues.lift(common_modulus);
            union.extend(p.lifted.iter().copied());
        }
    }

    let category = if !ctx.reachable(i, j) {
        Category::Unreachable
    } else if union.is_empty() {
        Category::Transient
    } else if union.len() == common_modulus {
        Category::Primitive
    } else {
        Category::Imprimitive
    };

    PairAnalysis {
        source: i,
        target: j,
        paths,
        common_modulus,
        residues: union,
        category,
    }
}

/// Square matrix of category codes; entry `(row, col)` is the category of the
/// pair with source `col` and target `row`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CategoryMatrix {
    dim: usize,
    entries: Vec<Category>,
}

impl CategoryMatrix {
    pub fn filled(dim: usize, value: Category) -> Self {
        Self {
            dim,
            entries: vec![value; dim * dim],
        }
    }

    pub fn from_codes(rows: &[Vec<u8>]) -> Option<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return None;
            }
            for &c in row {
                entries.push(Category::from_code(c)?);
            }
        }
        Some(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Category of the pair `source -> target`.
    pub fn get(&self, target: usize, source: usize) -> Category {
        self.entries[target * self.dim + source]
    }

    pub fn set(&mut self, target: usize, source: usize, value: Category) {
        self.entries[target * self.dim + source] = value;
    }

    pub fn codes(&self) -> Vec<Vec<u8>> {
        self.entries
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().map(|c| c.code()).collect())
            .collect()
    }

    /// Boolean support: entry is 1 iff the category is not unreachable.
    pub fn support(&self) -> BoolMatrix {
        BoolMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.get(r, c) != Category::Unreachable
        })
    }

    /// Entries where `self` and `other` differ, as `(target, source, self, other)`.
    pub fn differences(&self, other: &CategoryMatrix) -> Vec<(usize, usize, Category, Category)> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Vec::new();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let (x, y) = (self.get(r, c), other.get(r, c));
                if x != y {
                    out.push((r, c, x, y));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategorizeOptions {
    /// Compute one representative pair per ordered SCC pair and copy it across the block.
    pub broadcast: bool,
    /// Return a constant matrix directly when `M` is irreducible.
    pub irreducible_shortcut: bool,
}

impl Default for CategorizeOptions {
    fn default() -> Self {
        Self {
            broadcast: true,
            irreducible_shortcut: true,
        }
    }
}

impl CategorizeOptions {
    pub fn exhaustive() -> Self {
        Self {
            broadcast: false,
            irreducible_shortcut: false,
        }
    }
}

/// Irreducible case: one T2 component covering every state.
fn irreducible_category(ctx: &Analysis) -> Option<Category> {
    let sccs = ctx.sccs();
    if sccs.component_count() == 1 && sccs.scc_type(0) == SccType::T2 {
        Some(if sccs.loop_number(0) == 1 {
            Category::Primitive
        } else {
            Category::Imprimitive
        })
    } else {
        None
    }
}

/// Full `N×N` categorization matrix.
pub fn categorize_all(ctx: &Analysis, options: CategorizeOptions) -> CategoryMatrix {
    let n = ctx.order();
    if options.irreducible_shortcut {
        if let Some(c) = irreducible_category(ctx) {
            return CategoryMatrix::filled(n, c);
        }
    }
    let mut out = CategoryMatrix::filled(n, Category::Unreachable);
    if options.broadcast {
        let reduced = condensation_category_matrix(ctx);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (ctx.sccs().component_of(i), ctx.sccs().component_of(j));
                out.set(j, i, reduced.get(b, a));
            }
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, categorize_pair(ctx, i, j).category);
            }
        }
    }
    out
}

/// `S×S` matrix over SCC indices; entry `(β, α)` is the category of any pair
/// with source in component `α` and target in component `β`.
pub fn condensation_category_matrix(ctx: &Analysis) -> CategoryMatrix {
    let sccs = ctx.sccs();
    let s = sccs.component_count();
    let mut out = CategoryMatrix::filled(s, Category::Unreachable);
    for a in 0..s {
        let i = sccs.members(a)[0];
        for b in a..s {
            let j = sccs.members(b)[0];
            if ctx.reachable(i, j) {
                out.set(b, a, categorize_pair(ctx, i, j).category);
            }
        }
    }
    out
}
