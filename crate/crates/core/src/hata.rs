//! Piece-intersection graphs and the Hata connectivity criterion: an IFS
//! attractor is connected iff the graph whose edges join pieces that meet
//! is connected.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

/// What is known about a nonempty intersection of two pieces.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeTag {
    Point,
    Segment,
    /// Nonempty, proven by a witness point rather than by computing the
    /// intersection.
    UnknownNonempty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub tag: EdgeTag,
}

/// Nodes are stored in insertion order; edges refer to node positions.
#[derive(Clone, Debug)]
pub struct PieceGraph<N> {
    nodes: Vec<N>,
    edges: Vec<Edge>,
}

/// A predicate failure, carrying the offending pair.
#[derive(Debug)]
pub struct GraphError<N, E> {
    pub a: N,
    pub b: N,
    pub source: E,
}

impl<N: Debug, E: std::fmt::Display> std::fmt::Display for GraphError<N, E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "intersection predicate failed on {:?} / {:?}: {}",
            self.a, self.b, self.source
        )
    }
}

impl<N: Debug, E: std::error::Error + 'static> std::error::Error for GraphError<N, E> {}

/// One node per piece; an edge wherever `intersects` reports a nonempty
/// intersection. The predicate is called once per unordered pair.
pub fn build_graph<N, E, F>(
    pieces: Vec<N>,
    mut intersects: F,
) -> Result<PieceGraph<N>, GraphError<N, E>>
where
    N: Clone,
    F: FnMut(&N, &N) -> Result<Option<EdgeTag>, E>,
{
    let mut edges = Vec::new();
    for a in 0..pieces.len() {
        for b in a + 1..pieces.len() {
            match intersects(&pieces[a], &pieces[b]) {
                Ok(Some(tag)) => edges.push(Edge { a, b, tag }),
                Ok(None) => {}
                Err(source) => {
                    return Err(GraphError {
                        a: pieces[a].clone(),
                        b: pieces[b].clone(),
                        source,
                    })
                }
            }
        }
    }
    Ok(PieceGraph {
        nodes: pieces,
        edges,
    })
}

impl<N> PieceGraph<N> {
    pub fn new(nodes: Vec<N>) -> Self {
        PieceGraph {
            nodes,
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Adds an edge between two node positions; self-loops are dropped.
    pub fn add_edge(&mut self, a: usize, b: usize, tag: EdgeTag) {
        assert!(
            a < self.nodes.len() && b < self.nodes.len(),
            "edge endpoint out of range"
        );
        if a != b {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            self.edges.push(Edge { a, b, tag });
        }
    }

    pub fn position(&self, node: &N) -> Option<usize>
    where
        N: PartialEq,
    {
        self.nodes.iter().position(|n| n == node)
    }

    /// Component count and the partition as lists of node positions,
    /// ordered by smallest member.
    pub fn components(&self) -> (usize, Vec<Vec<usize>>) {
        self.components_where(|_| true)
    }

    /// Components using only the edges accepted by `keep`.
    pub fn components_where(&self, keep: impl Fn(&Edge) -> bool) -> (usize, Vec<Vec<usize>>) {
        let mut dsu = Dsu::new(self.nodes.len());
        for e in self.edges.iter().filter(|e| keep(e)) {
            dsu.union(e.a, e.b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.nodes.len() {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
        parts.sort_by_key(|g| g[0]);
        (parts.len(), parts)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    /// An empty graph counts as connected.
    pub fn is_connected_hata(&self) -> bool {
        self.component_count() <= 1
    }

    /// Adjacency list keyed by node label, for debugging dumps.
    pub fn adjacency_json(&self, label: impl Fn(&N) -> String) -> serde_json::Value {
        let mut adj: BTreeMap<usize, Vec<serde_json::Value>> = BTreeMap::new();
        for e in &self.edges {
            for (from, to) in [(e.a, e.b), (e.b, e.a)] {
                adj.entry(from).or_default().push(serde_json::json!({
                    "node": label(&self.nodes[to]),
                    "tag": e.tag,
                }));
            }
        }
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                serde_json::json!({
                    "node": label(n),
                    "neighbors": adj.remove(&i).unwrap_or_default(),
                })
            })
            .collect();
        serde_json::Value::Array(nodes)
    }
}

struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
