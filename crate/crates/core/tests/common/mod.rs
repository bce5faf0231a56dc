//! Independent brute-force helpers shared by the integration tests.
//!
//! None of these call into the categorizer or the SCC code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use bcncat_core::{Bcn, BoolMatrix};
use rand::Rng;

pub const EXAMPLE7_L: [usize; 16] = [2, 5, 3, 5, 6, 4, 8, 7, 4, 5, 4, 5, 6, 7, 8, 7];

pub fn example7() -> Bcn {
    Bcn::from_delta(3, 1, EXAMPLE7_L.to_vec()).unwrap()
}

pub fn random_bcn<R: Rng>(rng: &mut R, n: usize, m: usize) -> Bcn {
    let states = 1usize << n;
    let cols = (0..states << m).map(|_| rng.gen_range(1..=states)).collect();
    Bcn::from_delta(n, m, cols).unwrap()
}

/// Random adjacency list with edge probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Vec<usize>> {
    (0..n)
        .map(|_| (0..n).filter(|_| rng.gen_bool(p)).collect())
        .collect()
}

/// Random strongly connected digraph: a Hamiltonian cycle over a random
/// permutation plus random extra edges.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut adj = random_digraph(rng, n, p);
    for k in 0..n {
        let (a, b) = (perm[k], perm[(k + 1) % n]);
        if !adj[a].contains(&b) {
            adj[a].push(b);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// One-step matrix `M` of an adjacency list (`M[j][i]` for edge `i -> j`).
pub fn one_step_of(adj: &[Vec<usize>]) -> BoolMatrix {
    let n = adj.len();
    BoolMatrix::from_edges(
        n,
        adj.iter()
            .enumerate()
            .flat_map(|(i, vs)| vs.iter().map(move |&j| (j, i))),
    )
}

/// Adjacency list of the state transition digraph of `M`.
pub fn adjacency_of(m: &BoolMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    (0..n)
        .map(|i| (0..n).filter(|&j| m.get(j, i)).collect())
        .collect()
}

/// Lengths of all simple cycles, found by rooted DFS from each smallest node.
pub fn simple_cycle_lengths(adj: &[Vec<usize>]) -> Vec<usize> {
    fn dfs(adj: &[Vec<usize>], root: usize, u: usize, depth: usize, on: &mut [bool], out: &mut Vec<usize>) {
        for &v in &adj[u] {
            if v == root {
                out.push(depth + 1);
            } else if v > root && !on[v] {
                on[v] = true;
                dfs(adj, root, v, depth + 1, on, out);
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; adj.len()];
    for root in 0..adj.len() {
        on[root] = true;
        dfs(adj, root, root, 0, &mut on, &mut out);
        on[root] = false;
    }
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All simple paths `i -> j` as node sequences (the trivial path when `i == j`).
pub fn simple_paths(adj: &[Vec<usize>], i: usize, j: usize) -> Vec<Vec<usize>> {
    fn dfs(adj: &[Vec<usize>], j: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == j {
            out.push(path.clone());
            return;
        }
        for &v in &adj[u] {
            if !on[v] {
                on[v] = true;
                path.push(v);
                dfs(adj, j, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; adj.len()];
    on[i] = true;
    dfs(adj, j, &mut vec![i], &mut on, &mut out);
    out
}

/// Reachability in at least one step, by BFS from each source.
pub fn closure_by_bfs(adj: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut reach = vec![vec![false; n]; n];
    for s in 0..n {
        let mut queue: VecDeque<usize> = adj[s].iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            if !reach[s][u] {
                reach[s][u] = true;
                queue.extend(adj[u].iter().copied());
            }
        }
    }
    reach
}

/// `walks[k][i]` = set of nodes reachable from `i` by a walk of exactly `k` edges.
pub fn exact_length_reach(adj: &[Vec<usize>], k_max: usize) -> Vec<Vec<BTreeSet<usize>>> {
    let n = adj.len();
    let mut layers = vec![(0..n).map(|i| BTreeSet::from([i])).collect::<Vec<_>>()];
    for _ in 0..k_max {
        let prev = layers.last().unwrap();
        let next = prev
            .iter()
            .map(|set| set.iter().flat_map(|&u| adj[u].iter().copied()).collect())
            .collect();
        layers.push(next);
    }
    layers
}

/// Lengths of the simple paths `i -> j`, grouped by the
/// condensation projection of each path. `component_of` maps nodes to SCCs.
pub fn simple_path_lengths_by_projection(
    adj: &[Vec<usize>],
    component_of: &dyn Fn(usize) -> usize,
    i: usize,
    j: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for path in simple_paths(adj, i, j) {
        let mut proj: Vec<usize> = path.iter().map(|&v| component_of(v)).collect();
        proj.dedup();
        let len = path.len() - 1;
        match groups.iter_mut().find(|(p, _)| *p == proj) {
            Some((_, lens)) => lens.push(len),
            None => groups.push((proj, vec![len])),
        }
    }
    groups
}
