//! Temporal graph storage and time-windowed queries.
//!
//! A [`TemporalGraph`] is an immutable list of timestamped directed edges
//! sorted by `(t, seq)`, with per-vertex out/in adjacency (also sorted) and an
//! index from ordered vertex pairs to their sorted edge keys. All queries run
//! by binary search over those sorted runs.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::ops::{Bound, Range};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type Timestamp = i64;

/// Maximal time span of a motif instance. Always positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Delta(i64);

impl Delta {
    pub fn new(d: i64) -> Result<Self> {
        if d > 0 {
            Ok(Self(d))
        } else {
            Err(Error::InvalidDelta(d))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// Position of an edge in the global total order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey {
    pub t: Timestamp,
    pub seq: u64,
}

impl EdgeKey {
    /// Smallest key carrying timestamp `t`.
    pub const fn floor(t: Timestamp) -> Self {
        Self { t, seq: 0 }
    }

    /// Largest key carrying timestamp `t`.
    pub const fn ceil(t: Timestamp) -> Self {
        Self { t, seq: u64::MAX }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
    /// Input ordinal; unique within a graph and used to break timestamp ties.
    pub seq: u64,
}

impl TemporalEdge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            t: self.t,
            seq: self.seq,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Anything stored in a run sorted by [`EdgeKey`].
pub trait Keyed {
    fn key(&self) -> EdgeKey;
}

impl Keyed for TemporalEdge {
    fn key(&self) -> EdgeKey {
        TemporalEdge::key(self)
    }
}

impl Keyed for EdgeKey {
    fn key(&self) -> EdgeKey {
        *self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
    Both,
}

/// Interval over the `(t, seq)` order with independent bound kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyRange {
    pub lo: Bound<EdgeKey>,
    pub hi: Bound<EdgeKey>,
}

impl KeyRange {
    pub const ALL: Self = Self {
        lo: Bound::Unbounded,
        hi: Bound::Unbounded,
    };

    /// All edges with `lo <= t <= hi`.
    pub fn closed_time(lo: Timestamp, hi: Timestamp) -> Self {
        Self {
            lo: Bound::Included(EdgeKey::floor(lo)),
            hi: Bound::Included(EdgeKey::ceil(hi)),
        }
    }

    /// Timestamp interval with open/closed endpoints. An open endpoint
    /// excludes every edge carrying that timestamp.
    pub fn time(lo: Timestamp, lo_open: bool, hi: Timestamp, hi_open: bool) -> Self {
        Self {
            lo: if lo_open {
                Bound::Excluded(EdgeKey::ceil(lo))
            } else {
                Bound::Included(EdgeKey::floor(lo))
            },
            hi: if hi_open {
                Bound::Excluded(EdgeKey::floor(hi))
            } else {
                Bound::Included(EdgeKey::ceil(hi))
            },
        }
    }

    /// Intersects the lower bound with `b`.
    pub fn raise_lo(&mut self, b: Bound<EdgeKey>) {
        self.lo = tighter_lower(self.lo, b);
    }

    /// Intersects the upper bound with `b`.
    pub fn lower_hi(&mut self, b: Bound<EdgeKey>) {
        self.hi = tighter_upper(self.hi, b);
    }

    pub fn contains(&self, k: EdgeKey) -> bool {
        let lo_ok = match self.lo {
            Bound::Included(b) => k >= b,
            Bound::Excluded(b) => k > b,
            Bound::Unbounded => true,
        };
        let hi_ok = match self.hi {
            Bound::Included(b) => k <= b,
            Bound::Excluded(b) => k < b,
            Bound::Unbounded => true,
        };
        lo_ok && hi_ok
    }

    /// Index range of the elements of a key-sorted slice that fall inside.
    pub fn locate<T: Keyed>(&self, sorted: &[T]) -> Range<usize> {
        let start = match self.lo {
            Bound::Included(b) => sorted.partition_point(|x| x.key() < b),
            Bound::Excluded(b) => sorted.partition_point(|x| x.key() <= b),
            Bound::Unbounded => 0,
        };
        let end = match self.hi {
            Bound::Included(b) => sorted.partition_point(|x| x.key() <= b),
            Bound::Excluded(b) => sorted.partition_point(|x| x.key() < b),
            Bound::Unbounded => sorted.len(),
        };
        start..end.max(start)
    }

    pub fn slice<'a, T: Keyed>(&self, sorted: &'a [T]) -> &'a [T] {
        &sorted[self.locate(sorted)]
    }
}

fn tighter_lower(a: Bound<EdgeKey>, b: Bound<EdgeKey>) -> Bound<EdgeKey> {
    use Bound::*;
    match (a, b) {
        (Unbounded, x) | (x, Unbounded) => x,
        (Included(x), Included(y)) => Included(x.max(y)),
        (Excluded(x), Excluded(y)) => Excluded(x.max(y)),
        (Included(i), Excluded(e)) | (Excluded(e), Included(i)) => {
            if i > e {
                Included(i)
            } else {
                Excluded(e)
            }
        }
    }
}

fn tighter_upper(a: Bound<EdgeKey>, b: Bound<EdgeKey>) -> Bound<EdgeKey> {
    use Bound::*;
    match (a, b) {
        (Unbounded, x) | (x, Unbounded) => x,
        (Included(x), Included(y)) => Included(x.min(y)),
        (Excluded(x), Excluded(y)) => Excluded(x.min(y)),
        (Included(i), Excluded(e)) | (Excluded(e), Included(i)) => {
            if i < e {
                Included(i)
            } else {
                Excluded(e)
            }
        }
    }
}

/// Read access shared by the batch graph and the streaming window.
///
/// Every returned slice is sorted by [`EdgeKey`].
pub trait TemporalIndex {
    fn out_edges(&self, v: VertexId) -> &[TemporalEdge];
    fn in_edges(&self, v: VertexId) -> &[TemporalEdge];
    fn pair_keys(&self, src: VertexId, dst: VertexId) -> &[EdgeKey];

    fn edges_towards(&self, v: VertexId, dir: Direction, range: KeyRange) -> Incident<'_> {
        let (out, inn) = match dir {
            Direction::Out => (range.slice(self.out_edges(v)), &[][..]),
            Direction::In => (&[][..], range.slice(self.in_edges(v))),
            Direction::Both => (range.slice(self.out_edges(v)), range.slice(self.in_edges(v))),
        };
        Incident { out, inn }
    }

    fn pair_count(&self, src: VertexId, dst: VertexId, range: KeyRange) -> usize {
        range.locate(self.pair_keys(src, dst)).len()
    }

    /// Number of edges touching `v` (in + out) with `lo <= t <= hi`.
    fn window_degree(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> usize {
        let r = KeyRange::closed_time(lo, hi);
        r.locate(self.out_edges(v)).len() + r.locate(self.in_edges(v)).len()
    }
}

/// Time-ordered merge of an out-run and an in-run.
///
/// A self-loop shows up in both runs and is yielded once.
#[derive(Debug, Clone)]
pub struct Incident<'a> {
    out: &'a [TemporalEdge],
    inn: &'a [TemporalEdge],
}

impl<'a> Iterator for Incident<'a> {
    type Item = TemporalEdge;

    fn next(&mut self) -> Option<TemporalEdge> {
        match (self.out.first(), self.inn.first()) {
            (None, None) => None,
            (Some(&a), None) => {
                self.out = &self.out[1..];
                Some(a)
            }
            (None, Some(&b)) => {
                self.inn = &self.inn[1..];
                Some(b)
            }
            (Some(&a), Some(&b)) => {
                if a.key() == b.key() {
                    self.out = &self.out[1..];
                    self.inn = &self.inn[1..];
                    Some(a)
                } else if a.key() < b.key() {
                    self.out = &self.out[1..];
                    Some(a)
                } else {
                    self.inn = &self.inn[1..];
                    Some(b)
                }
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.out.len() + self.inn.len();
        (n.min(1).max(n / 2), Some(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Most edges incident to a single vertex within any window `[t, t + delta]`.
    pub d_delta: usize,
    /// Most edges between a single ordered vertex pair.
    pub h: usize,
    pub time_span: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// Fields separated by whitespace, commas, or a mix of both.
    #[default]
    Auto,
    Whitespace,
    Comma,
}

impl EdgeListFormat {
    fn split(self, line: &str) -> Vec<&str> {
        match self {
            Self::Auto => line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect(),
            Self::Whitespace => line.split_whitespace().collect(),
            Self::Comma => line.split(',').map(str::trim).collect(),
        }
    }
}

/// Assigns dense ids to vertex labels in first-appearance order.
#[derive(Debug, Clone, Default)]
pub struct Interner {
    ids: HashMap<String, VertexId>,
    labels: Vec<String>,
}

impl Interner {
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len() as VertexId;
        self.ids.insert(label.to_owned(), id);
        self.labels.push(label.to_owned());
        id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn into_labels(self) -> Vec<String> {
        self.labels
    }
}

/// One parsed edge-list record with densified endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
}

/// Incremental edge-list parser, shared by batch loading and streaming.
pub struct RecordReader<R> {
    input: R,
    format: EdgeListFormat,
    interner: Interner,
    line_no: usize,
    seen_data: bool,
    buf: String,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(input: R, format: EdgeListFormat) -> Self {
        Self {
            input,
            format,
            interner: Interner::default(),
            line_no: 0,
            seen_data: false,
            buf: String::new(),
        }
    }

    pub fn interner(&self) -> &Interner {
        &self.interner
    }

    pub fn into_interner(self) -> Interner {
        self.interner
    }

    pub fn next_record(&mut self) -> Result<Option<Record>> {
        loop {
            self.buf.clear();
            if self.input.read_line(&mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let line = self.buf.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let fields = self.format.split(line);
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: self.line_no,
                    message: format!("expected 3 fields (src dst t), found {}", fields.len()),
                });
            }
            let t = match fields[2].parse::<Timestamp>() {
                Ok(t) => t,
                // A leading non-numeric line is a header such as "src dst t".
                Err(_) if !self.seen_data && fields[2].parse::<f64>().is_err() => {
                    self.seen_data = true;
                    continue;
                }
                Err(_) => {
                    return Err(Error::Parse {
                        line: self.line_no,
                        message: format!("timestamp `{}` is not an integer", fields[2]),
                    })
                }
            };
            self.seen_data = true;
            let src = self.interner.intern(fields[0]);
            let dst = self.interner.intern(fields[1]);
            return Ok(Some(Record {
                line: self.line_no,
                src,
                dst,
                t,
            }));
        }
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = Result<Record>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_record().transpose()
    }
}

/// Opens a file for reading, transparently decompressing `.gz`.
pub fn open_input(path: &Path) -> io::Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    let reader: Box<dyn Read> = if path.extension().is_some_and(|e| e == "gz") {
        Box::new(MultiGzDecoder::new(file))
    } else {
        Box::new(file)
    };
    Ok(Box::new(BufReader::with_capacity(1 << 16, reader)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    edges: Vec<TemporalEdge>,
    n: usize,
    out_offsets: Vec<usize>,
    out_adj: Vec<TemporalEdge>,
    in_offsets: Vec<usize>,
    in_adj: Vec<TemporalEdge>,
    pair_index: HashMap<(VertexId, VertexId), Vec<EdgeKey>>,
    degree: Vec<u32>,
    labels: Vec<String>,
}

impl TemporalGraph {
    /// Builds a graph from `(src, dst, t)` triples; `seq` is the position in
    /// the iterator. Vertex ids are used as given and labelled by their
    /// decimal value.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId, Timestamp)>,
    {
        let edges: Vec<TemporalEdge> = edges
            .into_iter()
            .enumerate()
            .map(|(seq, (src, dst, t))| TemporalEdge {
                src,
                dst,
                t,
                seq: seq as u64,
            })
            .collect();
        let n = edges
            .iter()
            .map(|e| e.src.max(e.dst) as usize + 1)
            .max()
            .unwrap_or(0);
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::build(edges, labels)
    }

    fn build(mut edges: Vec<TemporalEdge>, labels: Vec<String>) -> Self {
        let n = labels.len();
        edges.sort_unstable_by_key(TemporalEdge::key);

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for e in &edges {
            out_offsets[e.src as usize + 1] += 1;
            in_offsets[e.dst as usize + 1] += 1;
        }
        for v in 0..n {
            out_offsets[v + 1] += out_offsets[v];
            in_offsets[v + 1] += in_offsets[v];
        }
        let placeholder = TemporalEdge {
            src: 0,
            dst: 0,
            t: 0,
            seq: 0,
        };
        let mut out_adj = vec![placeholder; edges.len()];
        let mut in_adj = vec![placeholder; edges.len()];
        let mut out_fill = out_offsets.clone();
        let mut in_fill = in_offsets.clone();
        let mut pair_index: HashMap<(VertexId, VertexId), Vec<EdgeKey>> = HashMap::new();
        for e in &edges {
            out_adj[out_fill[e.src as usize]] = *e;
            out_fill[e.src as usize] += 1;
            in_adj[in_fill[e.dst as usize]] = *e;
            in_fill[e.dst as usize] += 1;
            pair_index.entry((e.src, e.dst)).or_default().push(e.key());
        }
        let degree = (0..n)
            .map(|v| {
                ((out_offsets[v + 1] - out_offsets[v]) + (in_offsets[v + 1] - in_offsets[v])) as u32
            })
            .collect();

        Self {
            edges,
            n,
            out_offsets,
            out_adj,
            in_offsets,
            in_adj,
            pair_index,
            degree,
            labels,
        }
    }

    pub fn parse_edge_list<R: BufRead>(source: R, format: EdgeListFormat) -> Result<Self> {
        let mut reader = RecordReader::new(source, format);
        let mut edges = Vec::new();
        while let Some(r) = reader.next_record()? {
            edges.push(TemporalEdge {
                src: r.src,
                dst: r.dst,
                t: r.t,
                seq: edges.len() as u64,
            });
        }
        Ok(Self::build(edges, reader.into_interner().into_labels()))
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse_edge_list(text.as_bytes(), EdgeListFormat::Auto)
    }

    pub fn read_path(path: &Path) -> Result<Self> {
        Self::parse_edge_list(open_input(path)?, EdgeListFormat::Auto)
    }

    /// Writes `src dst t` lines using the original vertex labels, in `(t, seq)` order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for e in &self.edges {
            writeln!(
                out,
                "{} {} {}",
                self.labels[e.src as usize], self.labels[e.dst as usize], e.t
            )?;
        }
        Ok(())
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Total in + out temporal degree.
    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree[v as usize]
    }

    pub fn pair_index(&self) -> &HashMap<(VertexId, VertexId), Vec<EdgeKey>> {
        &self.pair_index
    }

    /// Contiguous run of edges with `lo <= t <= hi`.
    pub fn time_slice(&self, lo: Timestamp, hi: Timestamp) -> &[TemporalEdge] {
        &self.edges[self.time_slice_range(lo, hi)]
    }

    pub fn time_slice_range(&self, lo: Timestamp, hi: Timestamp) -> Range<usize> {
        let start = self.edges.partition_point(|e| e.t < lo);
        let end = self.edges.partition_point(|e| e.t <= hi);
        start..end.max(start)
    }

    /// Edges `src -> dst` whose timestamp lies in the given interval.
    pub fn count_pair_edges(
        &self,
        src: VertexId,
        dst: VertexId,
        lo: Timestamp,
        hi: Timestamp,
        lo_open: bool,
        hi_open: bool,
    ) -> usize {
        self.pair_count(src, dst, KeyRange::time(lo, lo_open, hi, hi_open))
    }

    pub fn incident_edges(
        &self,
        v: VertexId,
        lo: Timestamp,
        hi: Timestamp,
        dir: Direction,
    ) -> Incident<'_> {
        self.edges_towards(v, dir, KeyRange::closed_time(lo, hi))
    }

    pub fn stats(&self, delta: Delta) -> GraphStats {
        let m = self.edges.len();
        if m == 0 {
            return GraphStats {
                n: self.n,
                m: 0,
                d_delta: 0,
                h: 0,
                time_span: 0,
            };
        }
        let h = self.pair_index.values().map(Vec::len).max().unwrap_or(0);
        let time_span = self.edges[m - 1].t - self.edges[0].t;
        let mut d_delta = 0;
        let mut times = Vec::new();
        for v in 0..self.n as VertexId {
            times.clear();
            times.extend(self.edges_towards(v, Direction::Both, KeyRange::ALL).map(|e| e.t));
            let mut hi = 0;
            for lo in 0..times.len() {
                let limit = times[lo].saturating_add(delta.get());
                while hi < times.len() && times[hi] <= limit {
                    hi += 1;
                }
                d_delta = d_delta.max(hi - lo);
            }
        }
        GraphStats {
            n: self.n,
            m,
            d_delta,
            h,
            time_span,
        }
    }
}

impl TemporalIndex for TemporalGraph {
    fn out_edges(&self, v: VertexId) -> &[TemporalEdge] {
        let v = v as usize;
        &self.out_adj[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    fn in_edges(&self, v: VertexId) -> &[TemporalEdge] {
        let v = v as usize;
        &self.in_adj[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    fn pair_keys(&self, src: VertexId, dst: VertexId) -> &[EdgeKey] {
        self.pair_index
            .get(&(src, dst))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(g: &TemporalGraph) -> Vec<(VertexId, VertexId, Timestamp)> {
        g.edges().iter().map(|e| (e.src, e.dst, e.t)).collect()
    }

    #[test]
    fn parses_simple_list() {
        let g = TemporalGraph::parse_str("0 1 5\n1 2 7\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(triples(&g), vec![(0, 1, 5), (1, 2, 7)]);
    }

    #[test]
    fn sorts_unsorted_input() {
        let g = TemporalGraph::parse_str("1 2 7\n0 1 5\n").unwrap();
        let labelled: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (g.label(e.src), g.label(e.dst), e.t))
            .collect();
        assert_eq!(labelled, vec![("0", "1", 5), ("1", "2", 7)]);
    }

    #[test]
    fn duplicate_timestamps_keep_input_order() {
        let g = TemporalGraph::parse_str("0 1 5\n0 1 5\n").unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.edges()[0].seq, 0);
        assert_eq!(g.edges()[1].seq, 1);
    }

    #[test]
    fn comments_header_and_commas() {
        let text = "src,dst,t\n# comment\n% another\nalice,bob,10\nbob carol 3\n\n";
        let g = TemporalGraph::parse_str(text).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.labels(), &["alice", "bob", "carol"]);
        assert_eq!(g.edges()[0].t, 3);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        match TemporalGraph::parse_str("0 1 5\n0 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match TemporalGraph::parse_str("0 1 5\n0 1 abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        // Fractional timestamps are not integers.
        assert!(TemporalGraph::parse_str("0 1 2.5\n").is_err());
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let g = TemporalGraph::parse_str("").unwrap();
        assert!(g.is_empty());
        assert_eq!(g.num_vertices(), 0);
        let s = g.stats(Delta::new(5).unwrap());
        assert_eq!((s.d_delta, s.h, s.n, s.m, s.time_span), (0, 0, 0, 0, 0));
    }

    #[test]
    fn time_slice_examples() {
        let g = TemporalGraph::from_edges([(0, 1, 1), (1, 2, 2), (2, 0, 4)]);
        assert_eq!(triples(&g)[..2], g.time_slice(1, 2).iter().map(|e| (e.src, e.dst, e.t)).collect::<Vec<_>>()[..]);
        assert!(g.time_slice(5, 9).is_empty());
        assert_eq!(g.time_slice(i64::MIN, i64::MAX).len(), 3);
    }

    #[test]
    fn pair_count_examples() {
        let g = TemporalGraph::from_edges([(0, 1, 3), (0, 1, 5), (1, 0, 6), (0, 1, 9)]);
        assert_eq!(g.count_pair_edges(0, 1, 3, 9, true, false), 2);
        assert_eq!(g.count_pair_edges(0, 1, 0, 2, false, false), 0);
        assert_eq!(g.count_pair_edges(0, 1, 3, 3, false, false), 1);
        assert_eq!(g.count_pair_edges(1, 2, 0, 100, false, false), 0);
    }

    #[test]
    fn incident_examples() {
        let g = TemporalGraph::from_edges([(0, 1, 1), (0, 2, 2), (0, 3, 3), (4, 0, 2)]);
        assert_eq!(g.incident_edges(0, 2, 3, Direction::Out).count(), 2);
        let both: Vec<_> = g.incident_edges(0, 2, 2, Direction::Both).collect();
        assert_eq!(both.len(), 2);
        assert!(both[0].key() < both[1].key());
        assert_eq!(g.incident_edges(0, 10, 20, Direction::Both).count(), 0);
    }

    #[test]
    fn self_loop_is_yielded_once() {
        let g = TemporalGraph::from_edges([(0, 0, 1), (0, 1, 2)]);
        assert_eq!(g.incident_edges(0, 0, 5, Direction::Both).count(), 2);
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn stats_examples() {
        let d1 = Delta::new(1).unwrap();
        let s = TemporalGraph::from_edges([(0, 1, 1)]).stats(d1);
        assert_eq!((s.d_delta, s.h), (1, 1));

        let s = TemporalGraph::from_edges([(0, 1, 1), (0, 1, 2), (0, 1, 3)]).stats(d1);
        assert_eq!((s.h, s.d_delta, s.time_span), (3, 2, 2));

        let s = TemporalGraph::from_edges([(0, 1, 1), (2, 3, 1000)]).stats(d1);
        assert_eq!(s.d_delta, 1);
    }

    #[test]
    fn key_range_bound_tightening() {
        let k = |t, seq| EdgeKey { t, seq };
        let mut r = KeyRange::closed_time(0, 10);
        r.raise_lo(Bound::Excluded(k(0, 0)));
        r.lower_hi(Bound::Excluded(k(10, 3)));
        assert!(!r.contains(k(0, 0)));
        assert!(r.contains(k(0, 1)));
        assert!(r.contains(k(10, 2)));
        assert!(!r.contains(k(10, 3)));
        r.raise_lo(Bound::Included(k(-5, 0)));
        assert!(r.contains(k(0, 1)));
    }

    #[test]
    fn rejects_non_positive_delta() {
        assert!(Delta::new(0).is_err());
        assert!(Delta::new(-3).is_err());
    }
}
