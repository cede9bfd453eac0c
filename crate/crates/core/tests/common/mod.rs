//! Reference implementations used to cross-check the library. They share no
//! code with it beyond the `Graph` container: plain backtracking over proper
//! colorings, spectra recomputed from scratch.

#![allow(dead_code)]

use std::collections::BTreeSet;

use spectra_core::graph::{Graph, GraphLike};

/// A graph given as its vertex count and edge list.
pub type RawGraph = (usize, Vec<(usize, usize)>);

/// Number of vertices whose color set is a run of consecutive integers.
pub fn f_of(n: usize, edges: &[(usize, usize)], colors: &[u32]) -> usize {
    interval_set(n, edges, colors).len()
}

pub fn interval_set(n: usize, edges: &[(usize, usize)], colors: &[u32]) -> BTreeSet<usize> {
    let mut seen: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (&(u, v), &c) in edges.iter().zip(colors) {
        seen[u].push(c);
        seen[v].push(c);
    }
    (0..n)
        .filter(|&v| {
            let s = &seen[v];
            !s.is_empty() && (s.iter().max().unwrap() - s.iter().min().unwrap()) as usize + 1 == s.len()
        })
        .collect()
}

/// Calls `visit` on every proper coloring with colors in `1..=t` that uses
/// every color. Returns false if `visit` asked to stop.
pub fn for_each_coloring(g: &Graph, t: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    let edges = g.edges().to_vec();
    let mut colors = vec![0u32; edges.len()];
    fn go(
        edges: &[(usize, usize)],
        t: u32,
        k: usize,
        colors: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if k == edges.len() {
            let used: BTreeSet<u32> = colors.iter().copied().collect();
            if used.len() == t as usize {
                return visit(colors);
            }
            return true;
        }
        let (u, v) = edges[k];
        for c in 1..=t {
            let clash = (0..k).any(|i| {
                colors[i] == c && {
                    let (a, b) = edges[i];
                    a == u || a == v || b == u || b == v
                }
            });
            if clash {
                continue;
            }
            colors[k] = c;
            if !go(edges, t, k + 1, colors, visit) {
                return false;
            }
        }
        colors[k] = 0;
        true
    }
    go(&edges, t, 0, &mut colors, visit)
}

/// `(min f, max f)` over proper `t`-colorings, `None` if there are none.
pub fn brute_mu(g: &Graph, t: u32) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    let edges = g.edges().to_vec();
    let mut best: Option<(usize, usize)> = None;
    for_each_coloring(g, t, &mut |c| {
        let f = f_of(n, &edges, c);
        best = Some(match best {
            None => (f, f),
            Some((lo, hi)) => (lo.min(f), hi.max(f)),
        });
        true
    });
    best
}

/// Whether some proper `t`-coloring is interval at every vertex of `r`.
pub fn brute_feasible_on(g: &Graph, r: &BTreeSet<usize>, t: u32) -> bool {
    let n = g.vertex_count();
    let edges = g.edges().to_vec();
    let mut found = false;
    for_each_coloring(g, t, &mut |c| {
        found = interval_set(n, &edges, c).is_superset(r);
        !found
    });
    found
}

/// Component scan: every component is a path (or a single vertex).
pub fn linear_forest_oracle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let (mut verts, mut degree_sum) = (0usize, 0usize);
        while let Some(x) = stack.pop() {
            verts += 1;
            degree_sum += adj[x].len();
            if adj[x].len() > 2 {
                return false;
            }
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        // a tree has exactly verts - 1 edges
        if degree_sum / 2 != verts - 1 {
            return false;
        }
    }
    true
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every connected simple graph with `1..=max_edges` edges, one per
/// isomorphism class, as `(vertex_count, edges)`.
pub fn connected_graphs(max_edges: usize) -> Vec<RawGraph> {
    let mut layer = vec![(2usize, vec![(0usize, 1usize)])];
    let mut classes: BTreeSet<RawGraph> = layer.iter().cloned().collect();
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &layer {
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            let mut grow = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    if !present.contains(&(u, v)) {
                        grow.push((*n, (u, v)));
                    }
                }
                grow.push((n + 1, (u, *n)));
            }
            for (m, e) in grow {
                let mut es = edges.clone();
                es.push(e);
                next.insert((m, canonical(m, &es)));
            }
        }
        layer = next.iter().cloned().collect();
        classes.extend(next);
    }
    classes.into_iter().collect()
}

pub fn graph_of(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.to_vec(), None).expect("generated graphs are valid")
}
