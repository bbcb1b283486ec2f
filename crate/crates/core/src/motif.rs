//! Ordered temporal motifs.
//!
//! A motif is a sequence of directed pattern edges over labels `0..k`. The
//! sequence position is the required temporal order of the matched graph
//! edges. Positions are zero-based throughout the crate.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Motif {
    k: usize,
    edges: Vec<(Label, Label)>,
}

/// Built-in motif names, in presentation order.
pub const BUILTIN_MOTIFS: &[&str] = &[
    "triangle-cyclic",
    "triangle-cw",
    "star-out3",
    "star-mixed",
    "cycle4",
    "wedge-out",
];

impl Motif {
    pub fn new(edges: Vec<(Label, Label)>) -> Result<Self> {
        validate(&edges, None)?;
        let k = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Ok(Self { k, edges })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let edges = match name {
            "triangle-cyclic" => vec![(0, 1), (1, 2), (2, 0)],
            "triangle-cw" => vec![(0, 1), (2, 1), (2, 0)],
            "star-out3" => vec![(0, 1), (0, 2), (0, 1)],
            "star-mixed" => vec![(0, 1), (2, 0), (0, 1)],
            "cycle4" => vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            "wedge-out" => vec![(0, 1), (0, 2)],
            _ => return Err(Error::UnknownMotif(name.to_owned())),
        };
        Self::new(edges)
    }

    /// Parses one `u v` pair per line, in temporal order. Labels are arbitrary
    /// tokens numbered by first appearance; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ids: HashMap<&str, Label> = HashMap::new();
        let mut edges = Vec::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(Error::InvalidMotif {
                    line: Some(i + 1),
                    reason: format!("expected 2 labels, found {}", fields.len()),
                });
            }
            let mut id = |s| {
                let next = ids.len();
                *ids.entry(s).or_insert(next)
            };
            let a = id(fields[0]);
            let b = id(fields[1]);
            edges.push((a, b));
            lines.push(i + 1);
        }
        validate(&edges, Some(&lines))?;
        Ok(Self { k: ids.len(), edges })
    }

    /// Vertex count `k`.
    pub fn num_vertices(&self) -> usize {
        self.k
    }

    /// Edge count `l`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    pub fn edge(&self, pos: usize) -> (Label, Label) {
        self.edges[pos]
    }

    fn shares_label(&self, a: usize, b: usize) -> bool {
        let (x, y) = self.edges[a];
        let (u, v) = self.edges[b];
        x == u || x == v || y == u || y == v
    }

    pub fn classify(&self) -> MotifClass {
        if self.k != 3 || self.edges.len() != 3 {
            return MotifClass::General;
        }
        let pair = |(a, b): (Label, Label)| (a.min(b), a.max(b));
        let p: Vec<_> = self.edges.iter().map(|&e| pair(e)).collect();
        if p[0] != p[1] && p[1] != p[2] && p[0] != p[2] {
            return MotifClass::Triangle33;
        }
        let center = (0..3)
            .find(|&c| self.edges.iter().all(|&(a, b)| a == c || b == c))
            .expect("connected 3-vertex motif with a repeated pair is a star");
        MotifClass::Star33 { center }
    }

    /// One matching order per anchor position, anchor `j` first.
    ///
    /// Each subsequent position must share a label with an already ordered
    /// edge. Among eligible positions, the first or last unmatched position
    /// in temporal order is preferred, picking the one that widens the span
    /// of already ordered positions most (smaller position on a tie); if
    /// neither boundary is eligible, the smallest eligible position is taken.
    pub fn matching_orders(&self) -> Vec<MatchingOrder> {
        (0..self.len()).map(|j| self.matching_order(j)).collect()
    }

    pub fn matching_order(&self, anchor: usize) -> MatchingOrder {
        let l = self.len();
        let mut order = vec![anchor];
        let mut matched = vec![false; l];
        matched[anchor] = true;
        let (mut lo, mut hi) = (anchor, anchor);
        while order.len() < l {
            let eligible = |p: usize| !matched[p] && order.iter().any(|&o| self.shares_label(o, p));
            let first = (0..l).find(|&p| !matched[p]).unwrap();
            let last = (0..l).rev().find(|&p| !matched[p]).unwrap();
            let widen = |p: usize| lo.saturating_sub(p).max(p.saturating_sub(hi));
            let boundary = [first, last]
                .into_iter()
                .filter(|&p| eligible(p))
                .max_by(|&a, &b| widen(a).cmp(&widen(b)).then(b.cmp(&a)));
            let next = boundary
                .or_else(|| (0..l).find(|&p| eligible(p)))
                .expect("connected motif always has an adjacent unmatched edge");
            matched[next] = true;
            lo = lo.min(next);
            hi = hi.max(next);
            order.push(next);
        }
        MatchingOrder { anchor, order }
    }

    /// Wedge plan for anchor position `anchor`.
    ///
    /// For stars the center is the star center and `center_choice` is
    /// ignored. For triangles `center_choice` must name one endpoint label of
    /// the anchor edge.
    pub fn wedge_plan(&self, anchor: usize, center_choice: Option<Label>) -> Result<WedgePlan> {
        if anchor >= self.len() {
            return Err(Error::InvalidOrder(format!("anchor {anchor} out of range")));
        }
        match self.classify() {
            MotifClass::Star33 { center } => {
                let partner = (0..3)
                    .filter(|&p| p != anchor)
                    .find(|&p| spans(self, anchor, p))
                    .expect("a star always has a spanning partner for every anchor");
                WedgePlan::with_partner(self, anchor, partner, center)
            }
            MotifClass::Triangle33 => {
                let (a, b) = self.edges[anchor];
                let center = match center_choice {
                    Some(c) if c == a || c == b => c,
                    other => {
                        return Err(Error::InvalidOrder(format!(
                            "triangle wedge center {other:?} is not an endpoint of anchor {anchor}"
                        )))
                    }
                };
                let partner = (0..3)
                    .filter(|&p| p != anchor)
                    .find(|&p| {
                        let (x, y) = self.edges[p];
                        x == center || y == center
                    })
                    .unwrap();
                WedgePlan::with_partner(self, anchor, partner, center)
            }
            MotifClass::General => Err(Error::UnsupportedMotif {
                algorithm: "edge-wedge sampling",
                reason: "motif is neither a (3,3)-star nor a triangle".into(),
            }),
        }
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

fn spans(m: &Motif, a: usize, b: usize) -> bool {
    let (x, y) = m.edges[a];
    let (u, v) = m.edges[b];
    let mut labels = [x, y, u, v];
    labels.sort_unstable();
    let mut distinct = 1;
    for w in labels.windows(2) {
        if w[0] != w[1] {
            distinct += 1;
        }
    }
    distinct == 3
}

fn validate(edges: &[(Label, Label)], lines: Option<&[usize]>) -> Result<()> {
    let line_of = |i: usize| lines.map(|l| l[i]).or(Some(i + 1));
    if edges.is_empty() {
        return Err(Error::InvalidMotif {
            line: None,
            reason: "motif has no edges".into(),
        });
    }
    if let Some(i) = edges.iter().position(|&(a, b)| a == b) {
        return Err(Error::InvalidMotif {
            line: line_of(i),
            reason: "self-loop".into(),
        });
    }
    let k = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap();
    let mut present = vec![false; k];
    for &(a, b) in edges {
        present[a] = true;
        present[b] = true;
    }
    if let Some(missing) = present.iter().position(|p| !p) {
        return Err(Error::InvalidMotif {
            line: None,
            reason: format!("label {missing} is not used by any edge"),
        });
    }
    // Grow the component of the first edge until stable.
    let mut reached = vec![false; k];
    reached[edges[0].0] = true;
    reached[edges[0].1] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            if reached[a] != reached[b] {
                reached[a] = true;
                reached[b] = true;
                changed = true;
            }
        }
    }
    if let Some(i) = edges.iter().position(|&(a, _)| !reached[a]) {
        return Err(Error::InvalidMotif {
            line: line_of(i),
            reason: "pattern is disconnected".into(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotifClass {
    /// 3 vertices, 3 edges, all incident to `center`.
    Star33 { center: Label },
    /// 3 vertices, 3 edges on 3 distinct vertex pairs.
    Triangle33,
    General,
}

/// Permutation of motif positions followed by the backtracking search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchingOrder {
    anchor: usize,
    order: Vec<usize>,
}

impl MatchingOrder {
    /// Validates a caller-supplied order against `motif`.
    pub fn new(motif: &Motif, order: Vec<usize>) -> Result<Self> {
        let l = motif.len();
        let mut seen = vec![false; l];
        if order.len() != l || order.iter().any(|&p| p >= l || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidOrder(format!("{order:?} is not a permutation of 0..{l}")));
        }
        let o = Self {
            anchor: order[0],
            order,
        };
        if !o.is_connected(motif) {
            return Err(Error::InvalidOrder(format!(
                "{:?} breaks connectivity",
                o.order
            )));
        }
        Ok(o)
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn positions(&self) -> &[usize] {
        &self.order
    }

    /// Every position after the first shares a label with an earlier one.
    pub fn is_connected(&self, motif: &Motif) -> bool {
        (1..self.order.len()).all(|i| {
            self.order[..i]
                .iter()
                .any(|&o| motif.shares_label(o, self.order[i]))
        })
    }
}

/// How a 3-edge motif anchored at one position is split into a wedge and a
/// closing edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WedgePlan {
    pub anchor: usize,
    pub partner: usize,
    pub center: Label,
    pub third: usize,
    /// Endpoint labels of the closing edge.
    pub third_edge: (Label, Label),
}

impl WedgePlan {
    /// Builds a plan with an explicit partner position; the wedge must span
    /// all three labels and `center` must be shared by anchor and partner.
    pub fn with_partner(motif: &Motif, anchor: usize, partner: usize, center: Label) -> Result<Self> {
        if motif.len() != 3 || motif.num_vertices() != 3 || anchor >= 3 || partner >= 3 || anchor == partner {
            return Err(Error::InvalidOrder(format!(
                "positions {anchor}/{partner} do not form a wedge of a 3-edge motif"
            )));
        }
        let (a, b) = motif.edges[anchor];
        let (x, y) = motif.edges[partner];
        if !spans(motif, anchor, partner) || !((a == center || b == center) && (x == center || y == center)) {
            return Err(Error::InvalidOrder(format!(
                "positions {anchor}/{partner} with center {center} do not form a spanning wedge"
            )));
        }
        let third = 3 - anchor - partner;
        Ok(Self {
            anchor,
            partner,
            center,
            third,
            third_edge: motif.edges[third],
        })
    }
}
