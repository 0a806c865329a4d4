//! Finite quivers: paths, opposites, and the rootedness fixpoint sequences.
//!
//! Vertex and arrow ids are opaque strings so quivers round-trip through
//! JSON unchanged. Parallel arrows and loops are allowed everywhere; only
//! the path-indexed constructions require the quiver to be locally
//! path-finite (equivalently here: acyclic).

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<&str> for ArrowId {
    fn from(s: &str) -> Self {
        ArrowId(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("infinite path set from `{from}` to `{to}` (oriented cycle on a route)")]
    PathSetInfinite { from: String, to: String },
    #[error("quiver is not locally path-finite (it has an oriented cycle)")]
    NotPathFinite,
    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
}

/// A finite directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Self {
        let q = Quiver { vertices, arrows };
        q.validate().expect("invalid quiver");
        q
    }

    /// Convenience constructor from string literals: `(id, source, target)`.
    pub fn from_ids(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        Self::new(
            vertices.iter().map(|&v| v.into()).collect(),
            arrows
                .iter()
                .map(|&(id, s, t)| Arrow { id: id.into(), source: s.into(), target: t.into() })
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateId { kind: "vertex", id: v.0.clone() });
            }
        }
        let mut seen_arrows = BTreeSet::new();
        for a in &self.arrows {
            if !seen_arrows.insert(a.id.clone()) {
                return Err(QuiverError::DuplicateId { kind: "arrow", id: a.id.0.clone() });
            }
            for v in [&a.source, &a.target] {
                if !self.vertices.contains(v) {
                    return Err(QuiverError::DanglingArrow {
                        arrow: a.id.0.clone(),
                        vertex: v.0.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_index(&self, v: &VertexId) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| QuiverError::UnknownVertex(v.0.clone()))
    }

    pub fn arrow(&self, id: &ArrowId) -> Option<&Arrow> {
        self.arrows.iter().find(|a| &a.id == id)
    }

    /// Arrows with target `i`, in declaration order.
    pub fn arrows_into(&self, i: &VertexId) -> Result<Vec<&Arrow>, QuiverError> {
        self.vertex_index(i)?;
        Ok(self.arrows.iter().filter(|a| &a.target == i).collect())
    }

    /// Arrows with source `i`, in declaration order.
    pub fn arrows_out(&self, i: &VertexId) -> Result<Vec<&Arrow>, QuiverError> {
        self.vertex_index(i)?;
        Ok(self.arrows.iter().filter(|a| &a.source == i).collect())
    }

    /// Same vertices, all arrows reversed. Involutive.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target.clone(),
                    target: a.source.clone(),
                })
                .collect(),
        }
    }

    /// For a finite quiver: locally path-finite ⟺ no oriented cycle.
    pub fn is_locally_path_finite(&self) -> bool {
        // DFS three-color cycle detection
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let n = self.vertices.len();
        let mut color = vec![Color::White; n];
        let out: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                self.arrows
                    .iter()
                    .filter(|a| &a.source == v)
                    .map(|a| self.vertex_index(&a.target).unwrap())
                    .collect()
            })
            .collect();
        for start in 0..n {
            if color[start] != Color::White {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = Color::Gray;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < out[v].len() {
                    let w = out[v][*next];
                    *next += 1;
                    match color[w] {
                        Color::Gray => return false,
                        Color::White => {
                            color[w] = Color::Gray;
                            stack.push((w, 0));
                        }
                        Color::Black => {}
                    }
                } else {
                    color[v] = Color::Black;
                    stack.pop();
                }
            }
        }
        true
    }

    fn reachable_from(&self, start: &VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start.clone()];
        while let Some(v) = frontier.pop() {
            for a in &self.arrows {
                if a.source == v && seen.insert(a.target.clone()) {
                    frontier.push(a.target.clone());
                }
            }
        }
        seen
    }
}

/// A path: a start vertex and a composable arrow sequence (empty = the
/// trivial path `e_i`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    pub start: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(start: VertexId) -> Self {
        Path { start, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> VertexId {
        match self.arrows.last() {
            None => self.start.clone(),
            Some(id) => q.arrow(id).expect("path arrow not in quiver").target.clone(),
        }
    }

    /// Append an arrow at the end (target side).
    pub fn extend(&self, a: &Arrow) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a.id.clone());
        Path { start: self.start.clone(), arrows }
    }

    /// Prepend an arrow at the start (source side).
    pub fn precompose(&self, a: &Arrow) -> Path {
        let mut arrows = vec![a.id.clone()];
        arrows.extend(self.arrows.iter().cloned());
        Path { start: a.source.clone(), arrows }
    }

    /// Stable textual key, used for block bookkeeping.
    pub fn key(&self) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", self.start)
        } else {
            self.arrows.iter().map(|a| a.0.clone()).collect::<Vec<_>>().join(".")
        }
    }
}

/// All paths starting at `i`, discovered by forward BFS: by length, then by
/// extension of earlier paths with arrows in declaration order. Requires a
/// locally path-finite quiver.
pub fn paths_from(q: &Quiver, i: &VertexId) -> Result<Vec<Path>, QuiverError> {
    q.vertex_index(i)?;
    if !q.is_locally_path_finite() {
        return Err(QuiverError::NotPathFinite);
    }
    let mut all = vec![Path::trivial(i.clone())];
    let mut layer = vec![Path::trivial(i.clone())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.end(q);
            for a in q.arrows.iter().filter(|a| a.source == end) {
                next.push(p.extend(a));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

/// All paths ending at `i`, discovered by backward BFS: by length, then by
/// precomposition of earlier paths with arrows in declaration order. This
/// order mirrors [`paths_from`] on the opposite quiver under path reversal.
pub fn paths_into(q: &Quiver, i: &VertexId) -> Result<Vec<Path>, QuiverError> {
    q.vertex_index(i)?;
    if !q.is_locally_path_finite() {
        return Err(QuiverError::NotPathFinite);
    }
    let mut all = vec![Path::trivial(i.clone())];
    let mut layer = vec![Path::trivial(i.clone())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            for a in q.arrows.iter().filter(|a| a.target == p.start) {
                next.push(p.precompose(a));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

/// The complete finite path set `Q(i, j)`, or an error when an oriented
/// cycle lies on some route from `i` to `j`.
pub fn paths_between(q: &Quiver, i: &VertexId, j: &VertexId) -> Result<Vec<Path>, QuiverError> {
    q.vertex_index(i)?;
    q.vertex_index(j)?;
    let desc = q.reachable_from(i);
    let anc = q.opposite().reachable_from(j);
    let corridor: BTreeSet<VertexId> = desc.intersection(&anc).cloned().collect();
    // a cycle through any corridor vertex makes Q(i,j) infinite
    let sub = Quiver {
        vertices: corridor.iter().cloned().collect(),
        arrows: q
            .arrows
            .iter()
            .filter(|a| corridor.contains(&a.source) && corridor.contains(&a.target))
            .cloned()
            .collect(),
    };
    if !sub.is_locally_path_finite() {
        return Err(QuiverError::PathSetInfinite { from: i.0.clone(), to: j.0.clone() });
    }
    let (paths, complete) = enumerate_paths(q, i, j, corridor.len().max(1));
    debug_assert!(complete);
    Ok(paths)
}

/// All paths from `i` to `j` of length at most `max_len`, BFS order; the
/// flag reports whether this is the complete path set.
pub fn enumerate_paths(
    q: &Quiver,
    i: &VertexId,
    j: &VertexId,
    max_len: usize,
) -> (Vec<Path>, bool) {
    let mut found = Vec::new();
    let mut layer = vec![Path::trivial(i.clone())];
    if i == j {
        found.push(Path::trivial(i.clone()));
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.end(q);
            for a in q.arrows.iter().filter(|a| a.source == end) {
                let ext = p.extend(a);
                if ext.end(q) == *j {
                    found.push(ext.clone());
                }
                next.push(ext);
            }
        }
        layer = next;
    }
    // complete unless a surviving length-max_len stub extends to a longer
    // path that still reaches j
    let anc_j = q.opposite().reachable_from(j);
    let truncated = layer.iter().any(|p| {
        let end = p.end(q);
        q.arrows.iter().any(|a| a.source == end && anc_j.contains(&a.target))
    });
    (found, !truncated)
}

/// The stages of a rootedness fixpoint sequence: `V_0 = ∅ ⊆ V_1 ⊆ …`,
/// recorded up to (and including) the first fixpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSequence {
    pub stages: Vec<BTreeSet<VertexId>>,
    /// Whether the fixpoint is the whole vertex set.
    pub stabilized: bool,
}

/// `V_{k+1} = { i : every arrow into i has its source in V_k }`, from
/// `V_0 = ∅`; ascending, and the fixpoint is reached within `|Q_0|` steps.
pub fn left_root_sequence(q: &Quiver) -> RootSequence {
    root_sequence(q, true)
}

/// The dual sequence, using arrows out of `i`.
pub fn right_root_sequence(q: &Quiver) -> RootSequence {
    root_sequence(q, false)
}

fn root_sequence(q: &Quiver, left: bool) -> RootSequence {
    let mut stages: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new()];
    loop {
        let last = stages.last().unwrap();
        let next: BTreeSet<VertexId> = q
            .vertices
            .iter()
            .filter(|&v| {
                q.arrows.iter().all(|a| {
                    let (this_end, other_end) =
                        if left { (&a.target, &a.source) } else { (&a.source, &a.target) };
                    *this_end != *v || last.contains(other_end)
                })
            })
            .cloned()
            .collect();
        if next == *last {
            break;
        }
        stages.push(next);
    }
    let stabilized = stages.last().unwrap().len() == q.vertices.len();
    RootSequence { stages, stabilized }
}

pub fn is_left_rooted(q: &Quiver) -> bool {
    left_root_sequence(q).stabilized
}

pub fn is_right_rooted(q: &Quiver) -> bool {
    right_root_sequence(q).stabilized
}
