//! Explicit colorings of complete bipartite graphs and the collapse sequence
//! of a harmonic coloring.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{self, ColoringError, EdgeColoring};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("expected m >= n >= 1, got m={m}, n={n}")]
    BadOrientation { m: usize, n: usize },
    #[error("group count q={q} outside [{lo}, {hi}]")]
    GroupCountOutOfRange { q: usize, lo: usize, hi: usize },
    #[error("coloring is not harmonic")]
    NotHarmonic,
    #[error("coloring already uses only {0} colors (the maximum degree); the sequence is complete")]
    SequenceComplete(u32),
    #[error("{k} collapse steps requested, at most {max} possible")]
    StepsOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_orientation(m: usize, n: usize) -> Result<(), ConstructionError> {
    if n == 0 || m < n {
        return Err(ConstructionError::BadOrientation { m, n });
    }
    Ok(())
}

/// The coloring `(x_i, y_j) -> i + j - 1` of `K_{m,n}` with `t = m + n - 1`.
/// Interval at every vertex and harmonic.
pub fn staircase_coloring(m: usize, n: usize) -> Result<EdgeColoring, ConstructionError> {
    check_orientation(m, n)?;
    let colors = (1..=n).flat_map(|i| (1..=m).map(move |j| (i + j - 1) as u32)).collect();
    Ok(EdgeColoring::new((m + n - 1) as u32, colors)?)
}

/// One collapse step: the edges of the current maximum color `M` move to
/// `M - Δ`. Returns the new coloring and the moved edges.
pub fn collapse_step_traced(g: &Graph, c: &EdgeColoring) -> Result<(EdgeColoring, Vec<usize>), ConstructionError> {
    if !coloring::is_harmonic(g, c)? {
        return Err(ConstructionError::NotHarmonic);
    }
    let delta = g.max_degree() as u32;
    let top = c.max_color();
    if top <= delta {
        return Err(ConstructionError::SequenceComplete(top));
    }
    let moved = coloring::color_class(c, top)?;
    let colors = c
        .colors()
        .iter()
        .map(|&k| if k == top { top - delta } else { k })
        .collect();
    Ok((EdgeColoring::new(top - 1, colors)?, moved))
}

pub fn collapse_step(g: &Graph, c: &EdgeColoring) -> Result<EdgeColoring, ConstructionError> {
    collapse_step_traced(g, c).map(|(next, _)| next)
}

/// Stages `ξ*_0 .. ξ*_k` of the collapse sequence with the edges moved at
/// each stage (empty for stage 0) and the interval count of every stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseTrace {
    pub stages: Vec<EdgeColoring>,
    pub moved: Vec<Vec<usize>>,
    pub f_values: Vec<usize>,
}

pub fn collapse_sequence(g: &Graph, c: &EdgeColoring, k: usize) -> Result<CollapseTrace, ConstructionError> {
    let delta = g.max_degree();
    let max = (c.t() as usize).saturating_sub(delta);
    if k > max {
        return Err(ConstructionError::StepsOutOfRange { k, max });
    }
    if !coloring::is_harmonic(g, c)? {
        return Err(ConstructionError::NotHarmonic);
    }
    let mut trace = CollapseTrace {
        stages: vec![c.clone()],
        moved: vec![Vec::new()],
        f_values: vec![coloring::interval_count(g, c)?],
    };
    for _ in 0..k {
        let (next, moved) = collapse_step_traced(g, trace.stages.last().expect("nonempty"))?;
        trace.f_values.push(coloring::interval_count(g, &next)?);
        trace.moved.push(moved);
        trace.stages.push(next);
    }
    Ok(trace)
}

/// Sizes of `q` groups covering `m` vertices, each of size in `1..=n`,
/// filled greedily from the front.
fn group_sizes(m: usize, n: usize, q: usize) -> Vec<usize> {
    let mut left = m;
    (0..q)
        .map(|g| {
            let after = q - g - 1;
            let size = n.min(left - after);
            left -= size;
            size
        })
        .collect()
}

/// A `K_{m,n}` coloring with `t = n*q` interval on `Y`: `Y` splits into `q`
/// groups of at most `n` vertices, group `l` owns colors
/// `(l-1)n+1 ..= l*n`, and inside it `(x_i, y)` with `y` the `r`-th member
/// gets `(l-1)n + 1 + ((i + r) mod n)`.
pub fn block_interval_on_y(m: usize, n: usize, q: usize) -> Result<EdgeColoring, ConstructionError> {
    check_orientation(m, n)?;
    let lo = m.div_ceil(n);
    if q < lo || q > m {
        return Err(ConstructionError::GroupCountOutOfRange { q, lo, hi: m });
    }
    let mut colors = vec![0u32; m * n];
    let mut j = 1;
    for (l, size) in group_sizes(m, n, q).into_iter().enumerate() {
        for r in 1..=size {
            for i in 1..=n {
                colors[(i - 1) * m + (j - 1)] = (l * n + 1 + (i + r) % n) as u32;
            }
            j += 1;
        }
    }
    Ok(EdgeColoring::new((n * q) as u32, colors)?)
}
