//! State transition digraphs and their strongly connected structure.
//!
//! Nodes are 0-based here. A digraph is built from an adjacency matrix `A`
//! with an edge `i -> j` iff `A[i][j] = 1`; the state transition digraph of a
//! BCN uses `A = M^T`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::Range;

use num_integer::Integer;

use crate::bitmatrix::BoolMatrix;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDigraph {
    adjacency: BoolMatrix,
    successors: Vec<Vec<usize>>,
}

impl TransitionDigraph {
    /// Digraph whose adjacency matrix is `adjacency` (edge `i -> j` iff entry `[i][j]`).
    pub fn from_adjacency(adjacency: BoolMatrix) -> Result<Self> {
        let n = adjacency.require_square()?;
        let successors = (0..n).map(|i| adjacency.row_ones(i).collect()).collect();
        Ok(Self {
            adjacency,
            successors,
        })
    }

    pub fn order(&self) -> usize {
        self.successors.len()
    }

    pub fn adjacency(&self) -> &BoolMatrix {
        &self.adjacency
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.successors[node]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency.get(from, to)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }
}

/// State transition digraph of a one-step matrix `M` (adjacency `M^T`).
pub fn build_digraph(m: &BoolMatrix) -> Result<TransitionDigraph> {
    m.require_square()?;
    TransitionDigraph::from_adjacency(m.transpose())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SccType {
    /// Single node without a self-loop.
    T1,
    T2,
}

/// SCC partition in Frobenius order: every edge between distinct components
/// goes from a lower index to a higher one.
///
/// Among the valid orders, the one chosen repeatedly emits the available
/// component with the smallest member, so the result is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    types: Vec<SccType>,
    loop_numbers: Vec<usize>,
}

impl SccDecomposition {
    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    /// Members of component `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn scc_type(&self, c: usize) -> SccType {
        self.types[c]
    }

    /// Index of imprimitivity of component `c`; 0 for a T1 component.
    pub fn loop_number(&self, c: usize) -> usize {
        self.loop_numbers[c]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], SccType, usize)> {
        self.members
            .iter()
            .zip(&self.types)
            .zip(&self.loop_numbers)
            .map(|((m, &t), &l)| (m.as_slice(), t, l))
    }
}

/// Iterative Tarjan. Components come out in reverse topological order.
fn tarjan(g: &TransitionDigraph) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = g.order();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0;
    // (node, position in successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = g.successors(v).get(top.1) {
                top.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

pub fn scc_decompose(g: &TransitionDigraph) -> SccDecomposition {
    let raw = tarjan(g);
    let n = g.order();
    let s = raw.len();
    let mut raw_of = vec![0; n];
    for (c, members) in raw.iter().enumerate() {
        for &v in members {
            raw_of[v] = c;
        }
    }

    // Kahn's algorithm on the component DAG, smallest member first.
    let mut indegree = vec![0usize; s];
    let mut comp_succ: Vec<Vec<usize>> = vec![Vec::new(); s];
    for (u, v) in g.edges() {
        let (a, b) = (raw_of[u], raw_of[v]);
        if a != b {
            comp_succ[a].push(b);
        }
    }
    for succ in &mut comp_succ {
        succ.sort_unstable();
        succ.dedup();
        for &b in succ.iter() {
            indegree[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..s)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((raw[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(s);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(c);
        for &b in &comp_succ[c] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(Reverse((raw[b][0], b)));
            }
        }
    }
    debug_assert_eq!(order.len(), s);

    let mut component_of = vec![0; n];
    let mut members = Vec::with_capacity(s);
    let mut types = Vec::with_capacity(s);
    let mut loop_numbers = Vec::with_capacity(s);
    for (new_idx, &c) in order.iter().enumerate() {
        for &v in &raw[c] {
            component_of[v] = new_idx;
        }
        let comp = raw[c].clone();
        let t = if comp.len() == 1 && !g.has_edge(comp[0], comp[0]) {
            SccType::T1
        } else {
            SccType::T2
        };
        loop_numbers.push(loop_number(g, &comp));
        types.push(t);
        members.push(comp);
    }
    SccDecomposition {
        component_of,
        members,
        types,
        loop_numbers,
    }
}

/// Index of imprimitivity (loop number) of one SCC: the gcd of its cycle lengths.
///
/// BFS-levels the component from its first member, then takes the gcd of
/// `level(u) + 1 - level(v)` over intra-component edges. Returns 0 for a
/// single node without a self-loop.
pub fn loop_number(g: &TransitionDigraph, members: &[usize]) -> usize {
    let Some(&root) = members.first() else {
        return 0;
    };
    let mut inside = vec![false; g.order()];
    for &v in members {
        inside[v] = true;
    }
    let mut level = vec![usize::MAX; g.order()];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in g.successors(u) {
            if inside[v] && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut eta = 0usize;
    for &u in members {
        for &v in g.successors(u) {
            if inside[v] {
                let diff = (level[u] + 1).abs_diff(level[v]);
                eta = eta.gcd(&diff);
            }
        }
    }
    eta
}

/// Condensation digraph over SCC indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    adjacency: BoolMatrix,
    successors: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn order(&self) -> usize {
        self.successors.len()
    }

    pub fn adjacency(&self) -> &BoolMatrix {
        &self.adjacency
    }

    pub fn successors(&self, c: usize) -> &[usize] {
        &self.successors[c]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a, b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// True when no edge points from a higher index to a lower or equal one,
    /// which for this ordering certifies that there are no closed walks.
    pub fn is_acyclic(&self) -> bool {
        self.edges().all(|(a, b)| a < b)
    }
}

pub fn condense(g: &TransitionDigraph, sccs: &SccDecomposition) -> Condensation {
    let s = sccs.component_count();
    let mut adjacency = BoolMatrix::zeros(s, s);
    for (u, v) in g.edges() {
        let (a, b) = (sccs.component_of(u), sccs.component_of(v));
        if a != b {
            adjacency.set(a, b, true);
        }
    }
    let successors = (0..s).map(|a| adjacency.row_ones(a).collect()).collect();
    Condensation {
        adjacency,
        successors,
    }
}

/// Whether the digraph of `a` is strongly connected.
///
/// A single node counts as strongly connected only with a self-loop, so the
/// 1×1 zero matrix is reported as reducible.
pub fn is_irreducible(a: &BoolMatrix) -> Result<bool> {
    let g = TransitionDigraph::from_adjacency(a.clone())?;
    let sccs = scc_decompose(&g);
    Ok(sccs.component_count() == 1 && sccs.scc_type(0) == SccType::T2)
}

/// Structural primitivity test: irreducible with loop number 1.
pub fn is_primitive(a: &BoolMatrix) -> Result<bool> {
    let g = TransitionDigraph::from_adjacency(a.clone())?;
    let sccs = scc_decompose(&g);
    Ok(sccs.component_count() == 1 && sccs.scc_type(0) == SccType::T2 && sccs.loop_number(0) == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Smallest `k` with `A^(k)` all ones.
    pub exponent: Option<usize>,
}

/// Primitivity plus the exponent, found by iterating Boolean powers up to
/// the bound `(n-1)^2 + 1`.
pub fn primitivity(a: &BoolMatrix) -> Result<Primitivity> {
    if !is_primitive(a)? {
        return Ok(Primitivity {
            primitive: false,
            exponent: None,
        });
    }
    let n = a.rows();
    let bound = (n - 1) * (n - 1) + 1;
    let mut power = a.clone();
    for k in 1..=bound {
        if power.is_all_ones() {
            return Ok(Primitivity {
                primitive: true,
                exponent: Some(k),
            });
        }
        power = power.bool_mul(a);
    }
    unreachable!("primitive matrix of order {n} not positive by power {bound}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    /// `permutation[k]` is the original index placed at position `k`.
    pub permutation: Vec<usize>,
    /// Diagonal block ranges over permuted positions, one per SCC.
    pub blocks: Vec<Range<usize>>,
}

impl FrobeniusForm {
    pub fn apply(&self, a: &BoolMatrix) -> BoolMatrix {
        let p = &self.permutation;
        BoolMatrix::from_fn(p.len(), p.len(), |r, c| a.get(p[r], p[c]))
    }
}

/// Permutation bringing adjacency matrix `a` to block upper-triangular form
/// with SCC adjacency blocks on the diagonal.
pub fn frobenius_normal_form(a: &BoolMatrix) -> Result<FrobeniusForm> {
    let g = TransitionDigraph::from_adjacency(a.clone())?;
    let sccs = scc_decompose(&g);
    let mut permutation = Vec::with_capacity(g.order());
    let mut blocks = Vec::with_capacity(sccs.component_count());
    for (members, _, _) in sccs.iter() {
        let start = permutation.len();
        permutation.extend_from_slice(members);
        blocks.push(start..permutation.len());
    }
    Ok(FrobeniusForm {
        permutation,
        blocks,
    })
}
