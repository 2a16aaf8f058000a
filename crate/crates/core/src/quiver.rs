//! Quivers and the doubling, tripling, framing and very-symmetric companion constructions.

use std::collections::BTreeSet;

use crate::error::{invalid, precondition, Result};

/// Reserved id of the framing vertex.
pub const FRAMING: &str = "∞";

/// Provenance marker of an edge in a constructed quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    Original,
    Opposite,
    Omega,
    AddedPair,
    Framing,
}

impl EdgeTag {
    pub fn name(self) -> &'static str {
        match self {
            EdgeTag::Original => "original",
            EdgeTag::Opposite => "opposite",
            EdgeTag::Omega => "omega",
            EdgeTag::AddedPair => "added-pair",
            EdgeTag::Framing => "framing",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Ok(match s {
            "original" => EdgeTag::Original,
            "opposite" => EdgeTag::Opposite,
            "omega" => EdgeTag::Omega,
            "added-pair" => EdgeTag::AddedPair,
            "framing" => EdgeTag::Framing,
            other => return invalid(format!("unknown edge tag {other:?}")),
        })
    }
}

/// Directed multigraph with ordered vertices.
///
/// Edges are stored as `(source, target)` vertex indices. The framing vertex,
/// when present, is the last vertex; all other vertices are gauge vertices and
/// index dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    tags: Option<Vec<EdgeTag>>,
}

/// Half of the edges added by the very-symmetric companion construction.
///
/// For each loop pair one loop is listed, for each cross pair the edge `a → b`
/// with `a < b` in vertex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct USpec {
    pub edges: Vec<(usize, usize)>,
}

/// Structural predicates of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionFlags {
    pub symmetric: bool,
    pub same_parity_loops: bool,
    pub assum1: bool,
    pub assum11: bool,
    /// Constant edge count when every ordered pair of vertices has the same count.
    pub very_symmetric: Option<usize>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and edges given by ids.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if v == FRAMING {
                return invalid(format!("vertex id {FRAMING:?} is reserved"));
            }
            if !seen.insert(v.as_str()) {
                return invalid(format!("duplicate vertex id {v:?}"));
            }
        }
        let mut q = Self {
            vertices,
            edges: Vec::new(),
            tags: None,
        };
        for (s, t) in edges {
            let e = (q.index(s.as_ref())?, q.index(t.as_ref())?);
            q.edges.push(e);
        }
        Ok(q)
    }

    /// Builds a quiver with explicit tags; the framing vertex is accepted here.
    pub fn with_tags(vertices: Vec<String>, edges: Vec<(usize, usize)>, tags: Option<Vec<EdgeTag>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if v == FRAMING && i + 1 != vertices.len() {
                return invalid("the framing vertex must be the last vertex");
            }
            if !seen.insert(v.as_str()) {
                return invalid(format!("duplicate vertex id {v:?}"));
            }
        }
        if edges.iter().any(|&(s, t)| s >= vertices.len() || t >= vertices.len()) {
            return invalid("edge endpoint out of range");
        }
        if let Some(t) = &tags {
            if t.len() != edges.len() {
                return invalid("tag list length differs from edge list length");
            }
        }
        let q = Self { vertices, edges, tags };
        if let Some(f) = q.framing() {
            if q.edges.iter().any(|&(s, t)| t == f || (s == f && t == f)) {
                return invalid("edges may only leave the framing vertex");
            }
        }
        Ok(q)
    }

    /// The one-vertex quiver with `g` loops.
    pub fn loops(g: usize) -> Self {
        Self {
            vertices: vec!["0".into()],
            edges: vec![(0, 0); g],
            tags: None,
        }
    }

    /// The quiver `0 → 1`.
    pub fn a2() -> Self {
        Self {
            vertices: vec!["0".into(), "1".into()],
            edges: vec![(0, 1)],
            tags: None,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn tags(&self) -> Option<&[EdgeTag]> {
        self.tags.as_deref()
    }

    /// Index of the framing vertex, if any.
    pub fn framing(&self) -> Option<usize> {
        (self.vertices.last().map(String::as_str) == Some(FRAMING)).then(|| self.vertices.len() - 1)
    }

    /// Number of gauge (non-framing) vertices.
    pub fn gauge_count(&self) -> usize {
        self.vertices.len() - usize::from(self.framing().is_some())
    }

    /// Index of a vertex id.
    pub fn index(&self, id: &str) -> Result<usize> {
        match self.vertices.iter().position(|v| v == id) {
            Some(i) => Ok(i),
            None => invalid(format!("unknown vertex id {id:?}")),
        }
    }

    /// Number of edges `a → b` (by index).
    pub fn count(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|&&e| e == (a, b)).count()
    }

    /// `#(a→b) + #(b→a) − 2δ_ab` for vertex ids.
    pub fn alpha(&self, a: &str, b: &str) -> Result<i64> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.alpha_idx(i, j))
    }

    pub(crate) fn alpha_idx(&self, a: usize, b: usize) -> i64 {
        let c = (self.count(a, b) + self.count(b, a)) as i64;
        if a == b {
            c - 2
        } else {
            c
        }
    }

    /// Minimum of `alpha` over all pairs of gauge vertices.
    pub fn alpha_min(&self) -> Option<i64> {
        let n = self.gauge_count();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.alpha_idx(a, b)).min()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.count(a, b) == self.count(b, a)))
    }

    /// Loop counts at gauge vertices all have the same parity.
    pub fn same_parity_loops(&self) -> bool {
        let n = self.gauge_count();
        let parities: BTreeSet<usize> = (0..n).map(|a| self.count(a, a) % 2).collect();
        parities.len() <= 1
    }

    /// Common loop parity, when it exists.
    pub fn loop_parity(&self) -> Option<usize> {
        let n = self.gauge_count();
        if n == 0 || !self.same_parity_loops() {
            return None;
        }
        Some(self.count(0, 0) % 2)
    }

    /// Every `alpha(a, b)` is even.
    pub fn assum1(&self) -> bool {
        let n = self.gauge_count();
        (0..n).all(|a| (0..n).all(|b| self.alpha_idx(a, b) % 2 == 0))
    }

    /// Symmetric, even cross-edge counts and odd loop counts.
    pub fn assum11(&self) -> bool {
        let n = self.gauge_count();
        self.is_symmetric()
            && (0..n).all(|a| (0..n).all(|b| if a == b { self.count(a, a) % 2 == 1 } else { self.count(a, b).is_multiple_of(2) }))
    }

    /// The constant `A` if every ordered pair of gauge vertices has exactly `A` edges.
    pub fn very_symmetric(&self) -> Option<usize> {
        let n = self.gauge_count();
        if n == 0 || self.framing().is_some() {
            return None;
        }
        let a = self.count(0, 0);
        (0..n).all(|x| (0..n).all(|y| self.count(x, y) == a)).then_some(a)
    }

    pub fn flags(&self) -> AssumptionFlags {
        AssumptionFlags {
            symmetric: self.is_symmetric(),
            same_parity_loops: self.same_parity_loops(),
            assum1: self.assum1(),
            assum11: self.assum11(),
            very_symmetric: self.very_symmetric(),
        }
    }

    fn tag_list(&self) -> Vec<EdgeTag> {
        self.tags.clone().unwrap_or_else(|| vec![EdgeTag::Original; self.edges.len()])
    }

    /// Adds the opposite of every edge.
    pub fn double(&self) -> Quiver {
        let mut edges = self.edges.clone();
        let mut tags = self.tag_list();
        for &(s, t) in &self.edges {
            edges.push((t, s));
            tags.push(EdgeTag::Opposite);
        }
        Quiver {
            vertices: self.vertices.clone(),
            edges,
            tags: Some(tags),
        }
    }

    /// Doubled quiver plus one loop `ω_a` at every gauge vertex.
    pub fn triple(&self) -> Quiver {
        let mut q = self.double();
        let tags = q.tags.as_mut().unwrap();
        for a in 0..self.gauge_count() {
            q.edges.push((a, a));
            tags.push(EdgeTag::Omega);
        }
        q
    }

    /// Adds the framing vertex with `alpha` edges to every gauge vertex.
    pub fn frame(&self, alpha: i64) -> Result<Quiver> {
        if alpha <= 0 {
            return invalid(format!("framing multiplicity must be positive, got {alpha}"));
        }
        if self.framing().is_some() {
            return invalid("quiver is already framed");
        }
        let mut vertices = self.vertices.clone();
        vertices.push(FRAMING.to_string());
        let f = vertices.len() - 1;
        let mut edges = self.edges.clone();
        let mut tags = self.tag_list();
        for a in 0..self.vertices.len() {
            for _ in 0..alpha {
                edges.push((f, a));
                tags.push(EdgeTag::Framing);
            }
        }
        Ok(Quiver {
            vertices,
            edges,
            tags: Some(tags),
        })
    }

    /// Very-symmetric companion with `a_const` edges between every ordered pair.
    ///
    /// Without `a_const` the smallest admissible constant is used.
    pub fn very_symmetric_companion(&self, a_const: Option<usize>) -> Result<(Quiver, USpec)> {
        if self.framing().is_some() {
            return precondition("companion of a framed quiver");
        }
        if !self.is_symmetric() {
            return precondition("companion requires a symmetric quiver");
        }
        let Some(eps) = self.loop_parity() else {
            return precondition("companion requires loop counts of equal parity");
        };
        let n = self.gauge_count();
        let max_e = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.count(a, b)).max().unwrap_or(0);
        let a_const = match a_const {
            Some(a) => {
                if a < max_e {
                    return precondition(format!("A = {a} is below the maximal edge count {max_e}"));
                }
                if a % 2 != eps {
                    return precondition(format!("A = {a} has parity different from the loop parity {eps}"));
                }
                a
            }
            None => {
                if max_e % 2 == eps {
                    max_e
                } else {
                    max_e + 1
                }
            }
        };
        let mut edges = self.edges.clone();
        let mut tags = self.tag_list();
        let mut u = USpec::default();
        for a in 0..n {
            let c = (a_const - self.count(a, a)) / 2;
            for _ in 0..c {
                edges.push((a, a));
                edges.push((a, a));
                tags.push(EdgeTag::AddedPair);
                tags.push(EdgeTag::AddedPair);
                u.edges.push((a, a));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let c = a_const - self.count(a, b);
                for _ in 0..c {
                    edges.push((a, b));
                    edges.push((b, a));
                    tags.push(EdgeTag::AddedPair);
                    tags.push(EdgeTag::AddedPair);
                    u.edges.push((a, b));
                }
            }
        }
        let q = Quiver {
            vertices: self.vertices.clone(),
            edges,
            tags: Some(tags),
        };
        debug_assert_eq!(q.very_symmetric(), Some(a_const));
        Ok((q, u))
    }
}
