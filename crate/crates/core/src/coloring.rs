//! Edge colorings, vertex spectra and the interval predicates.
//!
//! Colors are 1-based: a `t`-coloring uses exactly the colors `1..=t`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ChromaticIndex, Graph, GraphLike};
use crate::search::SearchBudget;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} colors but the graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("t must be at least 1")]
    ZeroColors,
    #[error("edge {edge} has color {color} outside [1,{t}]")]
    OutOfRange { edge: usize, color: u32, t: u32 },
    #[error("not a proper edge coloring: {0}")]
    Invalid(ViolationReport),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("the empty set is not an interval candidate")]
    EmptySpectrum,
    #[error("color {color} outside [1,{t}]")]
    NoSuchColor { color: u32, t: u32 },
    #[error("harmonic colorings need chromatic index = max degree, got {0:?}")]
    NotClassOne(ChromaticIndex),
}

/// A color assignment to edge indices together with its declared `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct EdgeColoring {
    t: u32,
    colors: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringJson {
    t: u32,
    colors: Vec<u32>,
}

impl TryFrom<ColoringJson> for EdgeColoring {
    type Error = ColoringError;
    fn try_from(raw: ColoringJson) -> Result<Self, ColoringError> {
        EdgeColoring::new(raw.t, raw.colors)
    }
}

impl From<EdgeColoring> for ColoringJson {
    fn from(c: EdgeColoring) -> Self {
        ColoringJson {
            t: c.t,
            colors: c.colors,
        }
    }
}

impl EdgeColoring {
    /// Checks only that every color lies in `[1, t]`; see [`validate`] for
    /// properness and surjectivity.
    pub fn new(t: u32, colors: Vec<u32>) -> Result<Self, ColoringError> {
        if t == 0 {
            return Err(ColoringError::ZeroColors);
        }
        if let Some((edge, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > t) {
            return Err(ColoringError::OutOfRange { edge, color, t });
        }
        Ok(EdgeColoring { t, colors })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> u32 {
        self.colors[edge]
    }

    /// Largest color actually present.
    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// The coloring `j -> t + 1 - j`.
    pub fn reversed(&self) -> EdgeColoring {
        EdgeColoring {
            t: self.t,
            colors: self.colors.iter().map(|&c| self.t + 1 - c).collect(),
        }
    }
}

/// What is wrong with a candidate coloring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    /// Adjacent edge pairs `(e1, e2)` with `e1 < e2` sharing a color.
    pub clashes: Vec<(usize, usize)>,
    pub unused_colors: Vec<u32>,
    /// `(edge, color)` with color outside `[1, t]`.
    pub out_of_range: Vec<(usize, u32)>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.clashes.is_empty() && self.unused_colors.is_empty() && self.out_of_range.is_empty()
    }
}

impl std::fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.clashes.is_empty() {
            parts.push(format!("adjacent edges share a color: {:?}", self.clashes));
        }
        if !self.unused_colors.is_empty() {
            parts.push(format!("unused colors: {:?}", self.unused_colors));
        }
        if !self.out_of_range.is_empty() {
            parts.push(format!("out-of-range colors: {:?}", self.out_of_range));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks properness and surjectivity onto `[1, t]`.
pub fn validate(g: &Graph, c: &EdgeColoring) -> Result<(), ColoringError> {
    if c.colors.len() != g.edge_count() {
        return Err(ColoringError::LengthMismatch {
            expected: g.edge_count(),
            got: c.colors.len(),
        });
    }
    let mut report = ViolationReport::default();
    for (e, &color) in c.colors.iter().enumerate() {
        if color == 0 || color > c.t {
            report.out_of_range.push((e, color));
        }
    }
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (a, &e1) in inc.iter().enumerate() {
            for &e2 in &inc[a + 1..] {
                if c.colors[e1] == c.colors[e2] {
                    report.clashes.push((e1.min(e2), e1.max(e2)));
                }
            }
        }
    }
    report.clashes.sort_unstable();
    report.clashes.dedup();
    let used: BTreeSet<u32> = c.colors.iter().copied().collect();
    report.unused_colors = (1..=c.t).filter(|k| !used.contains(k)).collect();
    if report.is_empty() {
        Ok(())
    } else {
        Err(ColoringError::Invalid(report))
    }
}

/// Sorted colors on the edges at `x`.
pub fn spectrum(g: &Graph, c: &EdgeColoring, x: usize) -> Result<Vec<u32>, ColoringError> {
    if x >= g.vertex_count() {
        return Err(ColoringError::NoSuchVertex(x));
    }
    let mut s: Vec<u32> = g.incident(x).iter().map(|&e| c.colors[e]).collect();
    s.sort_unstable();
    Ok(s)
}

/// True iff the set is a run of consecutive integers. Input must be sorted
/// and duplicate-free.
pub fn is_interval(s: &[u32]) -> Result<bool, ColoringError> {
    match (s.first(), s.last()) {
        (Some(&lo), Some(&hi)) => Ok((hi - lo) as usize + 1 == s.len()),
        _ => Err(ColoringError::EmptySpectrum),
    }
}

/// Per-vertex spectra, interval flags, `V_int` and `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub spectra: Vec<Vec<u32>>,
    pub interval: Vec<bool>,
    pub interval_vertices: BTreeSet<usize>,
    pub f: usize,
}

pub fn summarize(g: &Graph, c: &EdgeColoring) -> Result<SpectrumSummary, ColoringError> {
    validate(g, c)?;
    let spectra: Vec<Vec<u32>> = (0..g.vertex_count())
        .map(|v| spectrum(g, c, v))
        .collect::<Result<_, _>>()?;
    // every vertex has degree >= 1 in a connected graph with an edge
    let interval: Vec<bool> = spectra.iter().map(|s| is_interval(s)).collect::<Result<_, _>>()?;
    let interval_vertices: BTreeSet<usize> = (0..interval.len()).filter(|&v| interval[v]).collect();
    Ok(SpectrumSummary {
        f: interval_vertices.len(),
        spectra,
        interval,
        interval_vertices,
    })
}

/// `f_G(φ)`: the number of vertices with an interval spectrum.
pub fn interval_count(g: &Graph, c: &EdgeColoring) -> Result<usize, ColoringError> {
    summarize(g, c).map(|s| s.f)
}

pub fn is_interval_on(g: &Graph, c: &EdgeColoring, r: &BTreeSet<usize>) -> Result<bool, ColoringError> {
    if let Some(&v) = r.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(ColoringError::NoSuchVertex(v));
    }
    let s = summarize(g, c)?;
    Ok(r.is_subset(&s.interval_vertices))
}

/// Edges carrying color `j`.
pub fn color_class(c: &EdgeColoring, j: u32) -> Result<Vec<usize>, ColoringError> {
    if j == 0 || j > c.t {
        return Err(ColoringError::NoSuchColor { color: j, t: c.t });
    }
    Ok((0..c.colors.len()).filter(|&e| c.colors[e] == j).collect())
}

/// True iff the edges are pairwise non-adjacent.
pub fn is_matching(g: &Graph, edges: &[usize]) -> bool {
    let mut touched = vec![false; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if touched[u] || touched[v] {
            return false;
        }
        touched[u] = true;
        touched[v] = true;
    }
    true
}

/// Checks the residue-class condition: for each `i` in `1..=Δ`, the union of
/// color classes `j ≡ i (mod Δ)` is a matching.
pub fn residue_classes_are_matchings(g: &Graph, c: &EdgeColoring) -> bool {
    let delta = g.max_degree() as u32;
    (1..=delta).all(|i| {
        let edges: Vec<usize> = (0..c.colors.len())
            .filter(|&e| c.colors[e] % delta == i % delta)
            .collect();
        is_matching(g, &edges)
    })
}

/// Harmonic-coloring predicate. Defined only for graphs whose chromatic
/// index equals their maximum degree; a `true` answer certifies that
/// condition by itself, so the chromatic index is only consulted when the
/// residue check fails.
pub fn is_harmonic(g: &Graph, c: &EdgeColoring) -> Result<bool, ColoringError> {
    validate(g, c)?;
    if residue_classes_are_matchings(g, c) {
        return Ok(true);
    }
    match g.chromatic_index(&SearchBudget::default()) {
        ChromaticIndex::Exact(k) if k == g.max_degree() => Ok(false),
        other => Err(ColoringError::NotClassOne(other)),
    }
}

/// Graphviz rendering: colors as edge labels, interval vertices filled and
/// tagged `interval=true`.
pub fn to_dot(g: &Graph, c: &EdgeColoring) -> Result<String, ColoringError> {
    let s = summarize(g, c)?;
    let mut out = String::new();
    writeln!(out, "graph coloring {{").unwrap();
    writeln!(out, "  // t = {}, f = {}", c.t, s.f).unwrap();
    for v in 0..g.vertex_count() {
        let name = g.vertex_name(v);
        if s.interval[v] {
            writeln!(
                out,
                "  {v} [label=\"{name}\", interval=true, style=filled, fillcolor=lightblue];"
            )
            .unwrap();
        } else {
            writeln!(out, "  {v} [label=\"{name}\", interval=false];").unwrap();
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "  {u} -- {v} [label=\"{}\"];", c.colors[e]).unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4(colors: &[u32], t: u32) -> (Graph, EdgeColoring) {
        (Graph::cycle(4).unwrap(), EdgeColoring::new(t, colors.to_vec()).unwrap())
    }

    fn staircase_k(m: usize, n: usize) -> (Graph, EdgeColoring) {
        let g = Graph::complete_bipartite(m, n).unwrap();
        let mut colors = Vec::new();
        for i in 1..=n {
            for j in 1..=m {
                colors.push((i + j - 1) as u32);
            }
        }
        (g, EdgeColoring::new((m + n - 1) as u32, colors).unwrap())
    }

    #[test]
    fn validate_examples() {
        let (g, c) = c4(&[1, 2, 1, 2], 2);
        assert_eq!(validate(&g, &c), Ok(()));
        let (g, c) = c4(&[1, 2, 1, 2], 3);
        match validate(&g, &c) {
            Err(ColoringError::Invalid(r)) => {
                assert_eq!(r.unused_colors, vec![3]);
                assert!(r.clashes.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let k11 = Graph::complete_bipartite(1, 1).unwrap();
        assert_eq!(validate(&k11, &EdgeColoring::new(1, vec![1]).unwrap()), Ok(()));
    }

    #[test]
    fn validate_reports_clash_and_length() {
        let (g, c) = c4(&[1, 1, 2, 2], 2);
        match validate(&g, &c) {
            Err(ColoringError::Invalid(r)) => assert_eq!(r.clashes, vec![(0, 1), (2, 3)]),
            other => panic!("{other:?}"),
        }
        let (g, c) = c4(&[1, 2, 1], 2);
        assert!(matches!(validate(&g, &c), Err(ColoringError::LengthMismatch { .. })));
        assert!(EdgeColoring::new(2, vec![1, 3]).is_err());
    }

    #[test]
    fn staircase_spectra() {
        let (g, c) = staircase_k(3, 2);
        assert_eq!(spectrum(&g, &c, g.y_vertex(2).unwrap()).unwrap(), vec![2, 3]);
        assert_eq!(spectrum(&g, &c, g.x_vertex(1).unwrap()).unwrap(), vec![1, 2, 3]);
        assert!(spectrum(&g, &c, 99).is_err());
    }

    #[test]
    fn degree_one_vertex_has_singleton_spectrum() {
        let g = Graph::path(3).unwrap();
        let c = EdgeColoring::new(2, vec![2, 1]).unwrap();
        assert_eq!(spectrum(&g, &c, 0).unwrap(), vec![2]);
    }

    #[test]
    fn interval_examples() {
        assert_eq!(is_interval(&[3]), Ok(true));
        assert_eq!(is_interval(&[2, 3, 4]), Ok(true));
        assert_eq!(is_interval(&[1, 3]), Ok(false));
        assert_eq!(is_interval(&[]), Err(ColoringError::EmptySpectrum));
    }

    #[test]
    fn summarize_examples() {
        let (g, c) = staircase_k(3, 2);
        assert_eq!(summarize(&g, &c).unwrap().f, 5);
        let (g, c) = c4(&[1, 2, 3, 4], 4);
        assert_eq!(summarize(&g, &c).unwrap().f, 3);
        let (g, c) = c4(&[1, 2, 1, 2], 2);
        assert_eq!(summarize(&g, &c).unwrap().f, 4);
    }

    #[test]
    fn interval_on_examples() {
        let (g, c) = staircase_k(3, 2);
        let y: BTreeSet<usize> = g.part_vertices(crate::graph::Part::Y).into_iter().collect();
        assert_eq!(is_interval_on(&g, &c, &y), Ok(true));
        let (g, c) = c4(&[1, 2, 1, 3], 3);
        assert_eq!(is_interval_on(&g, &c, &(0..4).collect()), Ok(false));
        assert_eq!(is_interval_on(&g, &c, &BTreeSet::new()), Ok(true));
    }

    #[test]
    fn color_class_examples() {
        let (g, c) = staircase_k(3, 2);
        assert_eq!(color_class(&c, 1).unwrap(), vec![g.bipartite_edge(1, 1).unwrap()]);
        assert_eq!(
            color_class(&c, 3).unwrap(),
            vec![g.bipartite_edge(1, 3).unwrap(), g.bipartite_edge(2, 2).unwrap()]
        );
        assert!(color_class(&c, 5).is_err());
        let (_, c) = c4(&[4, 2, 3, 1], 4);
        for j in 1..=4 {
            assert_eq!(color_class(&c, j).unwrap().len(), 1);
        }
    }

    #[test]
    fn harmonic_examples() {
        let (g, c) = staircase_k(3, 2);
        assert_eq!(is_harmonic(&g, &c), Ok(true));
        let (g, c) = staircase_k(2, 2);
        assert_eq!(is_harmonic(&g, &c), Ok(true));
        let (g, c) = c4(&[1, 2, 1, 2], 2);
        assert_eq!(is_harmonic(&g, &c), Ok(true));
        // 1 and 3 share residue mod 2 on adjacent edges
        let (g, c) = c4(&[1, 3, 2, 4], 4);
        assert_eq!(is_harmonic(&g, &c), Ok(false));
    }

    #[test]
    fn harmonic_rejects_class_two() {
        let g = Graph::cycle(5).unwrap();
        let c = EdgeColoring::new(3, vec![1, 2, 1, 2, 3]).unwrap();
        assert!(matches!(is_harmonic(&g, &c), Err(ColoringError::NotClassOne(_))));
    }

    #[test]
    fn coloring_json_round_trip() {
        let c = EdgeColoring::new(3, vec![1, 2, 3, 2]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"t":3,"colors":[1,2,3,2]}"#);
        assert_eq!(serde_json::from_str::<EdgeColoring>(&text).unwrap(), c);
        assert!(serde_json::from_str::<EdgeColoring>(r#"{"t":2,"colors":[3]}"#).is_err());
    }

    #[test]
    fn dot_marks_interval_vertices() {
        let (g, c) = c4(&[1, 2, 1, 3], 3);
        let dot = to_dot(&g, &c).unwrap();
        assert_eq!(dot.matches("interval=true").count(), 2);
        assert!(dot.contains("0 -- 1 [label=\"1\"]"));
    }
}
