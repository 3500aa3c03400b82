//! Dual graphs of prestable curves.
//!
//! A [`PrestableGraph`] records vertices (irreducible components, with their
//! geometric genus), half-edges, edges (nodes, as unordered pairs of
//! half-edges) and legs (markings). Ids are dense: vertex ids are `0..V`,
//! half-edge ids are `0..H`, and edge ids are positions in the edge list.
//!
//! The constructions used by the stability and pushforward code are the vine
//! graphs of [`make_vine`], [`subdivide`] and [`contract`]. Isomorphism and
//! automorphism tests are brute force; they are meant for the small graphs
//! (at most a handful of vertices) that occur here.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A component of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub id: usize,
    pub genus: u32,
}

/// A branch of a node or a marking, attached to a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub id: usize,
    pub vertex: usize,
}

/// Decorated dual graph of a prestable curve of declared arithmetic genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrestableGraph {
    genus: u32,
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    edges: Vec<(usize, usize)>,
    legs: BTreeMap<u32, usize>,
}

impl PrestableGraph {
    /// Builds and validates a graph.
    ///
    /// `vertex_genera[v]` is the genus of vertex `v`, `half_edge_vertex[h]` the
    /// vertex carrying half-edge `h`. Every half-edge must occur in exactly one
    /// edge or one leg, the graph must be connected and the recomputed genus
    /// must equal `genus`.
    pub fn new(
        genus: u32,
        vertex_genera: Vec<u32>,
        half_edge_vertex: Vec<usize>,
        edges: Vec<(usize, usize)>,
        legs: BTreeMap<u32, usize>,
    ) -> Result<Self> {
        let vertices: Vec<Vertex> =
            vertex_genera.into_iter().enumerate().map(|(id, genus)| Vertex { id, genus }).collect();
        let half_edges: Vec<HalfEdge> =
            half_edge_vertex.into_iter().enumerate().map(|(id, vertex)| HalfEdge { id, vertex }).collect();
        let graph = PrestableGraph { genus, vertices, half_edges, edges, legs };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        if self.vertices.is_empty() {
            return bad("no vertices".into());
        }
        if let Some(h) = self.half_edges.iter().find(|h| h.vertex >= self.vertices.len()) {
            return bad(format!("half-edge {} on missing vertex {}", h.id, h.vertex));
        }
        let mut uses = vec![0usize; self.half_edges.len()];
        for &(a, b) in &self.edges {
            for h in [a, b] {
                if h >= uses.len() {
                    return bad(format!("edge uses missing half-edge {h}"));
                }
                uses[h] += 1;
            }
        }
        for &h in self.legs.values() {
            if h >= uses.len() {
                return bad(format!("leg uses missing half-edge {h}"));
            }
            uses[h] += 1;
        }
        if let Some(h) = uses.iter().position(|&u| u != 1) {
            return bad(format!("half-edge {h} used {} times", uses[h]));
        }
        if !self.is_connected() {
            return bad("graph is disconnected".into());
        }
        if self.computed_genus() != self.genus {
            return bad(format!("declared genus {} but recomputed genus {}", self.genus, self.computed_genus()));
        }
        Ok(())
    }

    /// Declared ambient genus.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &BTreeMap<u32, usize> {
        &self.legs
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex carrying half-edge `h`.
    pub fn vertex_of(&self, h: usize) -> usize {
        self.half_edges[h].vertex
    }

    /// Endpoints of edge `e` (possibly equal, for a self-loop).
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (self.vertex_of(a), self.vertex_of(b))
    }

    /// Vertex carrying marking `label`, if present.
    pub fn leg_vertex(&self, label: u32) -> Option<usize> {
        self.legs.get(&label).map(|&h| self.vertex_of(h))
    }

    /// Marking labels carried by vertex `v`, sorted.
    pub fn legs_at(&self, v: usize) -> Vec<u32> {
        self.legs.iter().filter(|(_, &h)| self.vertex_of(h) == v).map(|(&l, _)| l).collect()
    }

    /// Number of half-edges (node branches and legs) at `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.half_edges.iter().filter(|h| h.vertex == v).count()
    }

    /// Number of edges joining `a` and `b` (self-loops when `a == b`).
    pub fn edges_between(&self, a: usize, b: usize) -> usize {
        (0..self.edges.len())
            .filter(|&e| {
                let (x, y) = self.endpoints(e);
                (x == a && y == b) || (x == b && y == a)
            })
            .count()
    }

    /// First Betti number `E − V + 1` of the (connected) graph.
    pub fn betti(&self) -> u32 {
        (self.edges.len() + 1 - self.vertices.len()) as u32
    }

    /// `Σ genus(v) + b₁`.
    pub fn computed_genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.betti()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in 0..self.edges.len() {
                let (a, b) = self.endpoints(e);
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `2g(v) − 2 + valence(v) > 0`.
    pub fn is_stable_vertex(&self, v: usize) -> bool {
        2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64 > 0
    }

    /// Exceptional component: genus 0, exactly two node branches, no legs.
    pub fn is_unstable_vertex(&self, v: usize) -> bool {
        self.vertices[v].genus == 0 && self.valence(v) == 2 && self.legs_at(v).is_empty()
    }

    /// Quasistable: every vertex is stable or exceptional, and no two
    /// exceptional vertices are adjacent.
    pub fn is_quasistable(&self) -> bool {
        let n = self.vertices.len();
        if (0..n).any(|v| !self.is_stable_vertex(v) && !self.is_unstable_vertex(v)) {
            return false;
        }
        (0..self.edges.len()).all(|e| {
            let (a, b) = self.endpoints(e);
            !(self.is_unstable_vertex(a) && self.is_unstable_vertex(b))
        })
    }

    /// Number of stable vertices.
    pub fn stable_vertex_count(&self) -> usize {
        (0..self.vertices.len()).filter(|&v| self.is_stable_vertex(v)).count()
    }

    /// JSON form `{genus, vertices:[{id,genus}], half_edges:[{id,vertex}],
    /// edges:[[h,h']], legs:{"1":h}}`.
    pub fn to_json(&self) -> Value {
        let legs: serde_json::Map<String, Value> = self.legs.iter().map(|(l, h)| (l.to_string(), json!(h))).collect();
        json!({
            "genus": self.genus,
            "vertices": self.vertices.iter().map(|v| json!({"id": v.id, "genus": v.genus})).collect::<Vec<_>>(),
            "half_edges": self.half_edges.iter().map(|h| json!({"id": h.id, "vertex": h.vertex})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "legs": legs,
        })
    }

    /// Inverse of [`PrestableGraph::to_json`].
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("graph json: {m}"));
        let genus = value["genus"].as_u64().ok_or_else(|| bad("genus"))? as u32;
        let mut vertices: Vec<(usize, u32)> = value["vertices"]
            .as_array()
            .ok_or_else(|| bad("vertices"))?
            .iter()
            .map(|v| Some((v["id"].as_u64()? as usize, v["genus"].as_u64()? as u32)))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("vertex entry"))?;
        vertices.sort();
        if vertices.iter().enumerate().any(|(i, &(id, _))| i != id) {
            return Err(bad("vertex ids must be dense"));
        }
        let mut halves: Vec<(usize, usize)> = value["half_edges"]
            .as_array()
            .ok_or_else(|| bad("half_edges"))?
            .iter()
            .map(|h| Some((h["id"].as_u64()? as usize, h["vertex"].as_u64()? as usize)))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("half-edge entry"))?;
        halves.sort();
        if halves.iter().enumerate().any(|(i, &(id, _))| i != id) {
            return Err(bad("half-edge ids must be dense"));
        }
        let edges: Vec<(usize, usize)> = value["edges"]
            .as_array()
            .ok_or_else(|| bad("edges"))?
            .iter()
            .map(|e| Some((e[0].as_u64()? as usize, e[1].as_u64()? as usize)))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("edge entry"))?;
        let legs: BTreeMap<u32, usize> = value["legs"]
            .as_object()
            .ok_or_else(|| bad("legs"))?
            .iter()
            .map(|(k, h)| Some((k.parse().ok()?, h.as_u64()? as usize)))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("leg entry"))?;
        PrestableGraph::new(
            genus,
            vertices.into_iter().map(|(_, g)| g).collect(),
            halves.into_iter().map(|(_, v)| v).collect(),
            edges,
            legs,
        )
    }
}

/// Two-vertex vine graph parameters: `w` has genus `g1`, `v` has genus `g2`
/// and carries leg 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VineGraph {
    pub g1: u32,
    pub g2: u32,
    pub edge_count: u32,
}

impl VineGraph {
    /// Ambient genus `g1 + g2 + edge_count − 1`.
    pub fn genus(&self) -> u32 {
        self.g1 + self.g2 + self.edge_count - 1
    }
}

/// Vertex id of `v` (genus `g2`, carrying leg 1) in every vine graph built here.
pub const VINE_V: usize = 0;
/// Vertex id of `w` (genus `g1`) in every vine graph built here.
pub const VINE_W: usize = 1;

/// The vine graph of ambient genus `g` whose leg-free vertex `w` has genus
/// `g1`, joined to `v` by `edges ∈ {1, 2}` edges.
///
/// Vertex 0 is `v`, vertex 1 is `w`; half-edge 0 is the leg, and edge `k`
/// joins half-edge `2k + 1` (at `v`) to `2k + 2` (at `w`).
pub fn make_vine(g: u32, g1: u32, edges: u32) -> Result<PrestableGraph> {
    if !(1..=2).contains(&edges) {
        return Err(Error::OutOfRange(format!("edge count {edges} not in {{1, 2}}")));
    }
    if g < 2 || g1 < 1 || g1 > g - 1 {
        return Err(Error::OutOfRange(format!("g1 = {g1} outside 1..={} for g = {g}", g.saturating_sub(1))));
    }
    let g2 = g + 1 - edges - g1;
    let mut half_edge_vertex = vec![VINE_V];
    let mut edge_list = Vec::new();
    for k in 0..edges as usize {
        half_edge_vertex.push(VINE_V);
        half_edge_vertex.push(VINE_W);
        edge_list.push((2 * k + 1, 2 * k + 2));
    }
    PrestableGraph::new(g, vec![g2, g1], half_edge_vertex, edge_list, BTreeMap::from([(1, 0)]))
}

/// Inserts a genus-0 vertex in the middle of edge `edge`.
///
/// The new vertex gets the next vertex id and two new half-edges `a`, `b`;
/// edge `edge = (h, h')` becomes `(h, a)` and a new last edge `(b, h')` is
/// appended.
pub fn subdivide(graph: &PrestableGraph, edge: usize) -> Result<PrestableGraph> {
    if edge >= graph.edges.len() {
        return Err(Error::UnknownEdge(edge));
    }
    let mut out = graph.clone();
    let u = out.vertices.len();
    out.vertices.push(Vertex { id: u, genus: 0 });
    let a = out.half_edges.len();
    out.half_edges.push(HalfEdge { id: a, vertex: u });
    out.half_edges.push(HalfEdge { id: a + 1, vertex: u });
    let (h, h2) = out.edges[edge];
    out.edges[edge] = (h, a);
    out.edges.push((a + 1, h2));
    out.validate()?;
    Ok(out)
}

/// Contracts edge `edge`.
///
/// Distinct endpoints merge into the lower-numbered vertex with the genera
/// added; a self-loop raises its vertex's genus by one. Ids are renumbered to
/// stay dense; edges after `edge` shift down by one, earlier edges keep
/// their ids.
pub fn contract(graph: &PrestableGraph, edge: usize) -> Result<PrestableGraph> {
    if edge >= graph.edges.len() {
        return Err(Error::UnknownEdge(edge));
    }
    let (ha, hb) = graph.edges[edge];
    let (va, vb) = (graph.vertex_of(ha), graph.vertex_of(hb));
    let mut genera: Vec<u32> = graph.vertices.iter().map(|v| v.genus).collect();
    let (keep, gone) = (va.min(vb), va.max(vb));
    if va == vb {
        genera[va] += 1;
    } else {
        genera[keep] += genera[gone];
        genera.remove(gone);
    }
    let renumber_vertex = |v: usize| {
        let v = if va != vb && v == gone { keep } else { v };
        if va != vb && v > gone {
            v - 1
        } else {
            v
        }
    };
    let surviving: Vec<usize> = (0..graph.half_edges.len()).filter(|&h| h != ha && h != hb).collect();
    let mut new_id = vec![usize::MAX; graph.half_edges.len()];
    for (i, &h) in surviving.iter().enumerate() {
        new_id[h] = i;
    }
    let half_edge_vertex = surviving.iter().map(|&h| renumber_vertex(graph.vertex_of(h))).collect();
    let edges =
        graph.edges.iter().enumerate().filter(|&(e, _)| e != edge).map(|(_, &(a, b))| (new_id[a], new_id[b])).collect();
    let legs = graph.legs.iter().map(|(&l, &h)| (l, new_id[h])).collect();
    PrestableGraph::new(graph.genus, genera, half_edge_vertex, edges, legs)
}

/// Contracts every edge in `edges` (ids refer to the input graph).
pub fn contract_all(graph: &PrestableGraph, edges: &[usize]) -> Result<PrestableGraph> {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = graph.clone();
    // Contracting from the highest id down keeps the remaining ids valid.
    for &e in sorted.iter().rev() {
        out = contract(&out, e)?;
    }
    Ok(out)
}

/// The cycle `u₀ — u₁ — ⋯ — u_{g−1} — u₀` with `u₀` of genus 0 carrying leg 1
/// and every other `u_k` of genus 1; edge `k` joins `u_k` to `u_{k+1 mod g}`.
pub fn chain_graph(g: u32) -> Result<PrestableGraph> {
    if g < 3 {
        return Err(Error::OutOfRange(format!("chain graph needs g >= 3, got {g}")));
    }
    let n = g as usize;
    let mut genera = vec![1u32; n];
    genera[0] = 0;
    let mut half_edge_vertex = vec![0usize];
    let mut edges = Vec::new();
    for k in 0..n {
        let h = half_edge_vertex.len();
        half_edge_vertex.push(k);
        half_edge_vertex.push((k + 1) % n);
        edges.push((h, h + 1));
    }
    PrestableGraph::new(g, genera, half_edge_vertex, edges, BTreeMap::from([(1, 0)]))
}

/// Contraction of [`chain_graph`] collapsing every `u_k` with `k ∉ {i, i+1}`
/// onto `u₀`; `1 ≤ i ≤ g − 2`.
pub fn chain_contraction(g: u32, i: u32) -> Result<PrestableGraph> {
    if i < 1 || i + 2 > g {
        return Err(Error::OutOfRange(format!("i = {i} outside 1..={} for g = {g}", g.saturating_sub(2))));
    }
    let chain = chain_graph(g)?;
    let n = g as usize;
    let (i, j) = (i as usize, i as usize + 1);
    let doomed: Vec<usize> = (0..n).filter(|&k| ![i - 1, i, j].contains(&k)).collect();
    contract_all(&chain, &doomed)
}

fn vertex_signature(graph: &PrestableGraph, v: usize) -> (u32, Vec<u32>, usize) {
    (graph.vertices[v].genus, graph.legs_at(v), graph.valence(v))
}

/// Calls `visit` on every bijection of vertices preserving genus, legs and
/// valence. Stops early when `visit` returns `true`.
fn for_each_vertex_bijection(a: &PrestableGraph, b: &PrestableGraph, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        a: &PrestableGraph,
        b: &PrestableGraph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = image.len();
        if v == a.vertices.len() {
            return visit(image);
        }
        let sig = vertex_signature(a, v);
        for w in 0..b.vertices.len() {
            if used[w] || vertex_signature(b, w) != sig {
                continue;
            }
            // Edge multiplicities to already-placed vertices must agree.
            if (0..=v).any(|u| {
                let wu = if u == v { w } else { image[u] };
                a.edges_between(v, u) != b.edges_between(w, wu)
            }) {
                continue;
            }
            used[w] = true;
            image.push(w);
            if rec(a, b, image, used, visit) {
                return true;
            }
            image.pop();
            used[w] = false;
        }
        false
    }
    if a.vertices.len() != b.vertices.len() {
        return false;
    }
    rec(a, b, &mut Vec::new(), &mut vec![false; b.vertices.len()], visit)
}

/// Isomorphism of decorated graphs (genus, legs and edge multiplicities).
pub fn is_isomorphic(a: &PrestableGraph, b: &PrestableGraph) -> bool {
    a.genus == b.genus
        && a.edges.len() == b.edges.len()
        && a.legs.keys().eq(b.legs.keys())
        && for_each_vertex_bijection(a, b, &mut |_| true)
}

/// Number of half-edge permutations compatible with the vertex map `tau`,
/// fixing legs and mapping edges to edges.
fn half_edge_lifts(graph: &PrestableGraph, tau: &[usize]) -> u64 {
    fn rec(graph: &PrestableGraph, tau: &[usize], e: usize, used: &mut Vec<bool>) -> u64 {
        if e == graph.edges.len() {
            return 1;
        }
        let (x, y) = graph.endpoints(e);
        let (tx, ty) = (tau[x], tau[y]);
        let mut total = 0;
        for f in 0..graph.edges.len() {
            if used[f] {
                continue;
            }
            let (p, q) = graph.endpoints(f);
            // Both orientations of the image edge; a self-loop admits both.
            let orientations = [(p, q), (q, p)];
            let matches = orientations.iter().filter(|&&(s, t)| s == tx && t == ty).count() as u64;
            let matches = if p == q { matches } else { matches.min(1) };
            if matches > 0 {
                used[f] = true;
                total += matches * rec(graph, tau, e + 1, used);
                used[f] = false;
            }
        }
        total
    }
    rec(graph, tau, 0, &mut vec![false; graph.edges.len()])
}

/// Order of the group of automorphisms (vertex and half-edge permutations)
/// fixing every leg, for any graph.
pub fn automorphism_order(graph: &PrestableGraph) -> u64 {
    let mut total = 0;
    for_each_vertex_bijection(graph, graph, &mut |tau| {
        total += half_edge_lifts(graph, tau);
        false
    });
    total
}

/// [`automorphism_order`] restricted to graphs with at most two stable
/// vertices (vine graphs and their subdivisions).
pub fn automorphism_count(graph: &PrestableGraph) -> Result<u64> {
    if graph.stable_vertex_count() > 2 {
        return Err(Error::Unsupported(format!(
            "automorphism count for a graph with {} stable vertices",
            graph.stable_vertex_count()
        )));
    }
    Ok(automorphism_order(graph))
}

/// True if some leg-fixing automorphism exchanges vertices `a` and `b`.
pub fn has_vertex_swap(graph: &PrestableGraph, a: usize, b: usize) -> bool {
    for_each_vertex_bijection(graph, graph, &mut |tau| tau[a] == b && tau[b] == a && half_edge_lifts(graph, tau) > 0)
}

/// Integer degree assignment on the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree {
    pub values: BTreeMap<usize, i64>,
    pub total: i64,
}

impl Multidegree {
    pub fn new(values: BTreeMap<usize, i64>) -> Self {
        let total = values.values().sum();
        Multidegree { values, total }
    }

    /// Degree at vertex `v` (0 if unassigned).
    pub fn at(&self, v: usize) -> i64 {
        self.values.get(&v).copied().unwrap_or(0)
    }

    /// Checks totals, vertex coverage, and degree 1 on exceptional vertices
    /// of a quasistable graph.
    pub fn validate_on(&self, graph: &PrestableGraph) -> Result<()> {
        if self.values.len() != graph.vertex_count() || self.values.keys().any(|&v| v >= graph.vertex_count()) {
            return Err(Error::InvalidInput("multidegree must assign every vertex".into()));
        }
        if self.values.values().sum::<i64>() != self.total {
            return Err(Error::InvalidInput("multidegree total mismatch".into()));
        }
        if graph.is_quasistable() {
            if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.is_unstable_vertex(v) && self.at(v) != 1) {
                return Err(Error::InvalidInput(format!("exceptional vertex {v} must have degree 1")));
            }
        }
        Ok(())
    }

    /// Transports the assignment along a vertex relabelling `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Multidegree {
        Multidegree::new(self.values.iter().map(|(&v, &d)| (perm[v], d)).collect())
    }
}

/// Shapes of graph understood by the stability module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VineShape {
    /// Two edges between `v` and `w`, `w` of genus `g1`.
    TwoEdge { g1: u32 },
    /// One separating edge, `w` of genus `g1`.
    OneEdge { g1: u32 },
    /// A two-edge vine with one edge subdivided by an exceptional vertex.
    Subdivided { g1: u32 },
}

/// Vertex roles of a recognised vine graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VineRoles {
    pub shape: VineShape,
    pub v: usize,
    pub w: usize,
    pub u: Option<usize>,
}

/// Recognises one- and two-edge vines (with stable vertices) and two-edge
/// vines with exactly one subdivided edge.
pub fn classify_vine(graph: &PrestableGraph) -> Result<VineRoles> {
    let unsupported = || Error::Unsupported("graph is not a vine graph or its subdivision".into());
    if graph.legs.keys().ne([1u32].iter()) {
        return Err(unsupported());
    }
    let v = graph.leg_vertex(1).ok_or_else(unsupported)?;
    if (0..graph.edge_count()).any(|e| {
        let (a, b) = graph.endpoints(e);
        a == b
    }) {
        return Err(unsupported());
    }
    match graph.vertex_count() {
        2 => {
            let w = 1 - v;
            let g1 = graph.vertices[w].genus;
            let g2 = graph.vertices[v].genus;
            match graph.edge_count() {
                2 if g1 >= 1 => Ok(VineRoles { shape: VineShape::TwoEdge { g1 }, v, w, u: None }),
                1 if g1 >= 1 && g2 >= 1 => Ok(VineRoles { shape: VineShape::OneEdge { g1 }, v, w, u: None }),
                _ => Err(unsupported()),
            }
        }
        3 => {
            let u = (0..3).find(|&x| graph.is_unstable_vertex(x)).ok_or_else(unsupported)?;
            let w = (0..3).find(|&x| x != u && x != v).ok_or_else(unsupported)?;
            let g1 = graph.vertices[w].genus;
            let ok = graph.edge_count() == 3
                && graph.edges_between(v, w) == 1
                && graph.edges_between(v, u) == 1
                && graph.edges_between(u, w) == 1
                && g1 >= 1;
            if ok {
                Ok(VineRoles { shape: VineShape::Subdivided { g1 }, v, w, u: Some(u) })
            } else {
                Err(unsupported())
            }
        }
        _ => Err(unsupported()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vine_with_two_edges_has_expected_genera() {
        let g = make_vine(4, 2, 2).unwrap();
        assert_eq!(g.vertices()[VINE_V].genus, 1);
        assert_eq!(g.vertices()[VINE_W].genus, 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.leg_vertex(1), Some(VINE_V));
        assert_eq!(g.computed_genus(), 4);
    }

    #[test]
    fn genus_one_vine_has_genus_zero_legged_vertex() {
        let g = make_vine(2, 1, 2).unwrap();
        assert_eq!((g.vertices()[0].genus, g.vertices()[1].genus), (0, 1));
        assert_eq!(g.computed_genus(), 2);
    }

    #[test]
    fn vine_bounds_are_enforced() {
        assert!(matches!(make_vine(4, 4, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(make_vine(4, 0, 1), Err(Error::OutOfRange(_))));
        assert!(matches!(make_vine(4, 2, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn subdivision_adds_one_exceptional_vertex() {
        let g = make_vine(4, 2, 2).unwrap();
        let s = subdivide(&g, 0).unwrap();
        assert!(s.is_quasistable());
        assert_eq!(s.vertex_count(), 3);
        assert!(s.is_unstable_vertex(2));
        assert_eq!(s.computed_genus(), 4);
        assert!(matches!(subdivide(&g, 7), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn subdividing_both_edges_gives_non_adjacent_exceptional_vertices() {
        let g = make_vine(5, 2, 2).unwrap();
        let s = subdivide(&subdivide(&g, 0).unwrap(), 1).unwrap();
        assert!(s.is_quasistable());
        assert_eq!((0..s.vertex_count()).filter(|&v| s.is_unstable_vertex(v)).count(), 2);
    }

    #[test]
    fn contracting_a_vine_edge_gives_a_self_loop() {
        let g = make_vine(5, 2, 2).unwrap();
        let c = contract(&g, 0).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.vertices()[0].genus, 4);
        assert_eq!(c.edges_between(0, 0), 1);
        let cc = contract(&c, 0).unwrap();
        assert_eq!(cc.vertices()[0].genus, 5);
        assert_eq!(cc.edge_count(), 0);
    }

    #[test]
    fn contracting_a_one_edge_vine_gives_a_smooth_graph() {
        let c = contract(&make_vine(3, 1, 1).unwrap(), 0).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.vertices()[0].genus), (1, 0, 3));
    }

    #[test]
    fn subdivide_then_contract_is_isomorphic() {
        for (g, g1, e) in [(4, 2, 2), (4, 1, 1), (6, 3, 2)] {
            let base = make_vine(g, g1, e).unwrap();
            let s = subdivide(&base, 0).unwrap();
            let back = contract(&s, s.edge_count() - 1).unwrap();
            assert!(is_isomorphic(&base, &back));
        }
    }

    #[test]
    fn automorphism_counts_of_vines() {
        assert_eq!(automorphism_count(&make_vine(4, 2, 2).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&make_vine(5, 2, 2).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&make_vine(4, 1, 1).unwrap()).unwrap(), 1);
        let sub = subdivide(&make_vine(4, 2, 2).unwrap(), 0).unwrap();
        assert_eq!(automorphism_count(&sub).unwrap(), 1);
        assert!(automorphism_count(&chain_graph(5).unwrap()).is_err());
    }

    #[test]
    fn chain_contraction_has_the_expected_symmetry() {
        for g in 3..=7 {
            for i in 1..=g - 2 {
                let c = chain_contraction(g, i).unwrap();
                assert_eq!(c.vertex_count(), 3);
                assert_eq!(c.computed_genus(), g);
                let legged = c.leg_vertex(1).unwrap();
                let others: Vec<usize> = (0..3).filter(|&v| v != legged).collect();
                assert!(others.iter().all(|&v| c.vertices()[v].genus == 1));
                assert!(has_vertex_swap(&c, others[0], others[1]));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = subdivide(&make_vine(4, 2, 2).unwrap(), 1).unwrap();
        let back = PrestableGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn classification() {
        let two = make_vine(4, 2, 2).unwrap();
        assert_eq!(classify_vine(&two).unwrap().shape, VineShape::TwoEdge { g1: 2 });
        let one = make_vine(4, 3, 1).unwrap();
        assert_eq!(classify_vine(&one).unwrap().shape, VineShape::OneEdge { g1: 3 });
        let sub = subdivide(&two, 0).unwrap();
        let roles = classify_vine(&sub).unwrap();
        assert_eq!(roles.shape, VineShape::Subdivided { g1: 2 });
        assert_eq!(roles.u, Some(2));
        assert!(classify_vine(&chain_graph(4).unwrap()).is_err());
    }
}
