//! Ribbon-graph skeletons with linearly ordered half-edges and per-edge
//! rotation numbers. The surface is the fattening of the skeleton; marked
//! points are the vertices, sitting on the boundary in the gap before the
//! first half-edge of each vertex.

mod io;
mod moves;
pub mod standard;

pub use io::{parse_skeleton, SkeletonFile};
pub use moves::{fuse, fuse_disjoint, reverse_edge, slide, SkeletonMoveMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loops::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

/// A half-edge is an end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: End,
}

impl HalfEdge {
    pub fn tail(edge: usize) -> Self {
        HalfEdge { edge, end: End::Tail }
    }

    pub fn head(edge: usize) -> Self {
        HalfEdge { edge, end: End::Head }
    }

    pub fn partner(self) -> Self {
        HalfEdge { edge: self.edge, end: self.end.other() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub halfedges: Vec<HalfEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail_name: String,
    pub head_name: String,
    /// Twice the rotation number.
    pub rot2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// (vertex, position) of the tail and head of every edge
    location: Vec<[(usize, usize); 2]>,
}

/// Topological summary of the fattening.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonInfo {
    pub vertices: usize,
    pub edges: usize,
    pub boundary_components: usize,
    pub genus: usize,
    pub rank_h1: usize,
}

fn end_index(end: End) -> usize {
    match end {
        End::Tail => 0,
        End::Head => 1,
    }
}

impl Skeleton {
    /// Builds and validates a skeleton.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut location = vec![[(usize::MAX, usize::MAX); 2]; edges.len()];
        for (v, vert) in vertices.iter().enumerate() {
            for (pos, he) in vert.halfedges.iter().enumerate() {
                let slot = location
                    .get_mut(he.edge)
                    .ok_or_else(|| Error::MalformedSkeleton(format!("vertex {} names unknown edge {}", vert.id, he.edge)))?;
                let cell = &mut slot[end_index(he.end)];
                if cell.0 != usize::MAX {
                    return Err(Error::MalformedSkeleton(format!(
                        "half-edge {:?} of edge {} appears twice",
                        he.end, edges[he.edge].id
                    )));
                }
                *cell = (v, pos);
            }
        }
        for (e, loc) in location.iter().enumerate() {
            for (k, end) in ["tail", "head"].iter().enumerate() {
                if loc[k].0 == usize::MAX {
                    return Err(Error::MalformedSkeleton(format!(
                        "the {end} half-edge of edge {} is not attached to any vertex",
                        edges[e].id
                    )));
                }
            }
        }
        if vertices.is_empty() {
            return Err(Error::MalformedSkeleton("no vertices".into()));
        }
        let sk = Skeleton { vertices, edges, location };
        if !sk.is_connected() {
            return Err(Error::MalformedSkeleton("underlying graph is not connected".into()));
        }
        sk.info()?;
        Ok(sk)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for he in &self.vertices[v].halfedges {
                let w = self.vertex_of(he.partner());
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == name).ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v.id == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn rot2(&self, e: usize) -> i64 {
        self.edges[e].rot2
    }

    pub fn with_rot2(&self, rot2: &[i64]) -> Self {
        let mut sk = self.clone();
        for (e, r) in sk.edges.iter_mut().zip(rot2) {
            e.rot2 = *r;
        }
        sk
    }

    pub fn vertex_of(&self, he: HalfEdge) -> usize {
        self.location[he.edge][end_index(he.end)].0
    }

    /// Index of a half-edge in its vertex's linear order.
    pub fn position(&self, he: HalfEdge) -> usize {
        self.location[he.edge][end_index(he.end)].1
    }

    pub fn tail_vertex(&self, e: usize) -> usize {
        self.vertex_of(HalfEdge::tail(e))
    }

    pub fn head_vertex(&self, e: usize) -> usize {
        self.vertex_of(HalfEdge::head(e))
    }

    pub fn halfedges_at(&self, v: usize) -> &[HalfEdge] {
        &self.vertices[v].halfedges
    }

    pub fn halfedge_name(&self, he: HalfEdge) -> &str {
        let e = &self.edges[he.edge];
        match he.end {
            End::Tail => &e.tail_name,
            End::Head => &e.head_name,
        }
    }

    /// Face tracing: the boundary cycles of the fattening are the orbits of
    /// h ↦ σ(partner(h)), σ = cyclic successor at the vertex.
    pub fn boundary_cycles(&self) -> Vec<Vec<HalfEdge>> {
        let all: Vec<HalfEdge> = (0..self.edges.len()).flat_map(|e| [HalfEdge::tail(e), HalfEdge::head(e)]).collect();
        let mut seen = std::collections::HashSet::new();
        let mut cycles = Vec::new();
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while seen.insert(h) {
                cycle.push(h);
                let p = h.partner();
                let v = self.vertex_of(p);
                let list = &self.vertices[v].halfedges;
                h = list[(self.position(p) + 1) % list.len()];
            }
            cycles.push(cycle);
        }
        // isolated vertices without edges are a disk each
        cycles
    }

    pub fn info(&self) -> Result<SkeletonInfo> {
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        let f = if e == 0 { 1 } else { self.boundary_cycles().len() as i64 };
        let two_g = 2 - v + e - f;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::MalformedSkeleton(format!("inconsistent Euler characteristic V−E+F = {}", v - e + f)));
        }
        Ok(SkeletonInfo {
            vertices: v as usize,
            edges: e as usize,
            boundary_components: f as usize,
            genus: (two_g / 2) as usize,
            rank_h1: (e - v + 1) as usize,
        })
    }

    /// Twice the rotation number of an edge path: Σ ±rot2 over letters plus a
    /// signed unit (= half turn) for each interior vertex passage; `closed`
    /// also counts the passage through the base point.
    pub fn path_rotation2(&self, w: &[Letter], closed: bool) -> Result<i64> {
        crate::loops::word::check_composable(self, w)?;
        if closed {
            if let (Some(f), Some(l)) = (w.first(), w.last()) {
                if l.end(self) != f.start(self) {
                    return Err(Error::NonComposablePath("closed rotation of an open path".into()));
                }
            }
        }
        let mut total: i64 = w.iter().map(|l| if l.inv { -self.rot2(l.edge) } else { self.rot2(l.edge) }).sum();
        let n = w.len();
        let passages: Vec<(Letter, Letter)> = if closed && n > 0 {
            (0..n).map(|k| (w[(k + n - 1) % n], w[k])).collect()
        } else {
            w.windows(2).map(|p| (p[0], p[1])).collect()
        };
        for (inc, out) in passages {
            total += self.passage_turn2(inc.arriving(), out.leaving());
        }
        Ok(total)
    }

    /// Half-turn (in units of 1/2) of a path entering a vertex through `arrive`
    /// and leaving through `leave`.
    pub fn passage_turn2(&self, arrive: HalfEdge, leave: HalfEdge) -> i64 {
        if self.position(arrive) < self.position(leave) {
            1
        } else {
            -1
        }
    }

    /// Spanning tree (BFS from vertex 0): `tree[e]` marks tree edges.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut tree = vec![false; self.edges.len()];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for he in &self.vertices[v].halfedges {
                let w = self.vertex_of(he.partner());
                if !seen[w] {
                    seen[w] = true;
                    tree[he.edge] = true;
                    queue.push_back(w);
                }
            }
        }
        tree
    }

    /// Tree path (letters) from vertex `from` to vertex `to`.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<Letter> {
        let tree = self.spanning_tree();
        let n = self.vertices.len();
        let mut prev: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for he in &self.vertices[v].halfedges {
                if !tree[he.edge] {
                    continue;
                }
                let w = self.vertex_of(he.partner());
                if !seen[w] {
                    seen[w] = true;
                    let l = Letter::new(he.edge, he.end == End::Head);
                    prev[w] = Some((v, l));
                    queue.push_back(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, l) = prev[cur].expect("tree spans the graph");
            path.push(l);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Edges not in the spanning tree index a basis of H₁.
    pub fn h1_basis_edges(&self) -> Vec<usize> {
        let tree = self.spanning_tree();
        (0..self.edges.len()).filter(|&e| !tree[e]).collect()
    }

    /// Closed representative of the k-th H₁ basis class: tree path to the
    /// tail of the non-tree edge, the edge, tree path back.
    pub fn h1_representative(&self, k: usize) -> Vec<Letter> {
        let e = self.h1_basis_edges()[k];
        let mut w = self.tree_path(0, self.tail_vertex(e));
        w.push(Letter::fwd(e));
        w.extend(self.tree_path(self.head_vertex(e), 0));
        crate::loops::word::reduce(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_and_pants_topology() {
        let t = standard::torus().info().unwrap();
        assert_eq!((t.boundary_components, t.genus), (1, 1));
        let p = standard::pants().info().unwrap();
        assert_eq!((p.boundary_components, p.genus), (3, 0));
        let g2 = standard::genus2().info().unwrap();
        assert_eq!((g2.boundary_components, g2.genus), (1, 2));
        let th = standard::theta().info().unwrap();
        assert_eq!((th.boundary_components, th.genus), (3, 0));
        let path = standard::path().info().unwrap();
        assert_eq!((path.boundary_components, path.genus), (1, 0));
    }

    #[test]
    fn missing_halfedge_is_malformed() {
        let v = Vertex { id: "v".into(), halfedges: vec![HalfEdge::tail(0)] };
        let e = Edge { id: "a".into(), tail_name: "a+".into(), head_name: "a-".into(), rot2: 0 };
        assert!(matches!(Skeleton::new(vec![v], vec![e]), Err(Error::MalformedSkeleton(_))));
    }

    #[test]
    fn rotation_of_inverse_is_negated() {
        let sk = standard::torus().with_rot2(&[3, -1]);
        let w = vec![Letter::fwd(0), Letter::fwd(1), Letter::new(0, true)];
        let r = sk.path_rotation2(&w, false).unwrap();
        let ri = sk.path_rotation2(&crate::loops::word::inverse_word(&w), false).unwrap();
        assert_eq!(r, -ri);
        assert_eq!(sk.path_rotation2(&[Letter::fwd(0)], false).unwrap(), 3);
    }

    #[test]
    fn h1_representatives_close_up() {
        let sk = standard::theta();
        assert_eq!(sk.h1_basis_edges().len(), 2);
        for k in 0..2 {
            let w = sk.h1_representative(k);
            assert_eq!(w.last().unwrap().end(&sk), w[0].start(&sk));
        }
    }
}
