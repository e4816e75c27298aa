//! Skeleton moves: edge reversal, half-edge slides and fusion of vertices.
//! Each move returns the new skeleton with the induced isomorphism of
//! fundamental groupoids, given on generators.

use super::{Edge, End, HalfEdge, Skeleton, Vertex};
use crate::error::{Error, Result};
use crate::loops::word::{reduce, CyclicWord, Letter, PathWord};

/// Groupoid isomorphism between the path groupoids of two skeletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonMoveMap {
    pub source: Skeleton,
    pub target: Skeleton,
    /// source edge ↦ word in target edges
    pub forward: Vec<Vec<Letter>>,
    /// target edge ↦ word in source edges
    pub backward: Vec<Vec<Letter>>,
    /// source vertex ↦ target vertex
    pub vertex_map: Vec<usize>,
}

fn substitute(images: &[Vec<Letter>], w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in w {
        let img = &images[l.edge];
        if l.inv {
            out.extend(img.iter().rev().map(|x| x.inverse()));
        } else {
            out.extend_from_slice(img);
        }
    }
    reduce(&out)
}

impl SkeletonMoveMap {
    pub fn identity(sk: &Skeleton) -> Self {
        let id: Vec<Vec<Letter>> = (0..sk.num_edges()).map(|e| vec![Letter::fwd(e)]).collect();
        SkeletonMoveMap {
            source: sk.clone(),
            target: sk.clone(),
            forward: id.clone(),
            backward: id,
            vertex_map: (0..sk.num_vertices()).collect(),
        }
    }

    pub fn transport_letters(&self, w: &[Letter]) -> Vec<Letter> {
        substitute(&self.forward, w)
    }

    pub fn transport_back_letters(&self, w: &[Letter]) -> Vec<Letter> {
        substitute(&self.backward, w)
    }

    pub fn transport_path(&self, w: &PathWord) -> PathWord {
        PathWord { letters: self.transport_letters(&w.letters), start: self.vertex_map[w.start] }
    }

    pub fn transport_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::canonical(&self.transport_letters(w.letters()))
    }

    pub fn transport_back_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::canonical(&self.transport_back_letters(w.letters()))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SkeletonMoveMap) -> SkeletonMoveMap {
        SkeletonMoveMap {
            source: self.source.clone(),
            target: next.target.clone(),
            forward: self.forward.iter().map(|w| next.transport_letters(w)).collect(),
            backward: next.backward.iter().map(|w| self.transport_back_letters(w)).collect(),
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
        }
    }

    pub fn inverse(&self) -> SkeletonMoveMap {
        let mut vmap = vec![0; self.target.num_vertices()];
        for (s, &t) in self.vertex_map.iter().enumerate() {
            vmap[t] = s;
        }
        SkeletonMoveMap {
            source: self.target.clone(),
            target: self.source.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            vertex_map: vmap,
        }
    }
}

fn rebuild(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Skeleton> {
    Skeleton::new(vertices, edges)
}

/// Reverses edge `e`: e ↦ e'⁻¹ and rot ↦ −rot.
pub fn reverse_edge(sk: &Skeleton, e: usize) -> Result<(Skeleton, SkeletonMoveMap)> {
    if e >= sk.num_edges() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    let vertices = sk
        .vertices()
        .iter()
        .map(|v| Vertex {
            id: v.id.clone(),
            halfedges: v.halfedges.iter().map(|h| if h.edge == e { h.partner() } else { *h }).collect(),
        })
        .collect();
    let mut edges = sk.edges().to_vec();
    let old = &sk.edges()[e];
    edges[e] = Edge { id: old.id.clone(), tail_name: old.head_name.clone(), head_name: old.tail_name.clone(), rot2: -old.rot2 };
    let target = rebuild(vertices, edges)?;
    let mut map = SkeletonMoveMap::identity(sk);
    map.target = target.clone();
    map.forward[e] = vec![Letter::new(e, true)];
    map.backward[e] = vec![Letter::new(e, true)];
    Ok((target, map))
}

/// Slides the half-edge `moving` along the edge `along`, whose half-edge `c`
/// must be adjacent to `moving` at their common vertex. The moved half-edge
/// is reattached next to the partner of `c` on the mirrored side, so the
/// slid edge runs parallel to `along` through the band.
pub fn slide(sk: &Skeleton, moving: HalfEdge, along: usize) -> Result<(Skeleton, SkeletonMoveMap)> {
    if moving.edge >= sk.num_edges() || along >= sk.num_edges() {
        return Err(Error::UnknownEdge(format!("#{}", moving.edge.max(along))));
    }
    if moving.edge == along {
        return Err(Error::IllegalSlide("cannot slide an edge along itself".into()));
    }
    let p = sk.vertex_of(moving);
    let list = sk.halfedges_at(p);
    let pos = sk.position(moving);
    let before = pos.checked_sub(1).map(|i| list[i]).filter(|h| h.edge == along);
    let after = list.get(pos + 1).copied().filter(|h| h.edge == along);
    let (c, h_after_c) = match (before, after) {
        (Some(c), _) => (c, true),
        (None, Some(c)) => (c, false),
        _ => {
            return Err(Error::IllegalSlide(format!(
                "half-edge {} is not adjacent to edge {} at vertex {}",
                sk.halfedge_name(moving),
                sk.edge_name(along),
                sk.vertex_name(p)
            )))
        }
    };
    let cbar = c.partner();
    let q = sk.vertex_of(cbar);

    let mut lists: Vec<Vec<HalfEdge>> = sk.vertices().iter().map(|v| v.halfedges.clone()).collect();
    lists[p].retain(|h| *h != moving);
    let idx = lists[q].iter().position(|h| *h == cbar).expect("partner present");
    let insert_at = if h_after_c { idx } else { idx + 1 };
    lists[q].insert(insert_at, moving);

    // l_pq: the path along `along` from p to q
    let l_pq = Letter::new(along, c.end == End::Head);
    let l_qp = l_pq.inverse();
    let e2 = moving.edge;
    let (fwd, bwd) = match moving.end {
        End::Tail => (vec![l_pq, Letter::fwd(e2)], vec![l_qp, Letter::fwd(e2)]),
        End::Head => (vec![Letter::fwd(e2), l_qp], vec![Letter::fwd(e2), l_pq]),
    };
    let rot2 = sk.path_rotation2(&bwd, false)?;

    let vertices = sk.vertices().iter().zip(lists).map(|(v, hs)| Vertex { id: v.id.clone(), halfedges: hs }).collect();
    let mut edges = sk.edges().to_vec();
    edges[e2].rot2 = rot2;
    let target = rebuild(vertices, edges)?;
    let mut map = SkeletonMoveMap::identity(sk);
    map.target = target.clone();
    map.forward[e2] = fwd;
    map.backward[e2] = bwd;
    Ok((target, map))
}

/// Fuses two distinct vertices of one skeleton: the new vertex carries the
/// half-edges of `p1` followed by those of `p2`; rotations are unchanged.
pub fn fuse(sk: &Skeleton, p1: usize, p2: usize) -> Result<(Skeleton, SkeletonMoveMap)> {
    if p1 == p2 {
        return Err(Error::SameVertex);
    }
    let n = sk.num_vertices();
    if p1 >= n || p2 >= n {
        return Err(Error::UnknownVertex(format!("#{}", p1.max(p2))));
    }
    let mut vertices = Vec::with_capacity(n - 1);
    let mut vertex_map = vec![0; n];
    for (v, vert) in sk.vertices().iter().enumerate() {
        if v == p2 {
            continue;
        }
        if v == p1 {
            let mut hs = vert.halfedges.clone();
            hs.extend_from_slice(&sk.vertices()[p2].halfedges);
            vertices.push(Vertex { id: vert.id.clone(), halfedges: hs });
        } else {
            vertices.push(vert.clone());
        }
        vertex_map[v] = vertices.len() - 1;
    }
    vertex_map[p2] = vertex_map[p1];
    let target = rebuild(vertices, sk.edges().to_vec())?;
    let mut map = SkeletonMoveMap::identity(sk);
    map.target = target.clone();
    map.vertex_map = vertex_map;
    Ok((target, map))
}

/// Fuses vertex `p1` of `sk1` with vertex `p2` of a disjoint skeleton `sk2`.
/// Edges of `sk2` are appended after those of `sk1` (offset returned);
/// colliding names are suffixed with `_2`.
pub fn fuse_disjoint(sk1: &Skeleton, p1: usize, sk2: &Skeleton, p2: usize) -> Result<(Skeleton, usize)> {
    if p1 >= sk1.num_vertices() || p2 >= sk2.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{}", p1.max(p2))));
    }
    let off = sk1.num_edges();
    let taken = |s: &str| sk1.edges().iter().any(|e| e.id == s || e.tail_name == s || e.head_name == s);
    let rename = |s: &str| if taken(s) { format!("{s}_2") } else { s.to_string() };
    let shift = |h: &HalfEdge| HalfEdge { edge: h.edge + off, end: h.end };
    let mut edges = sk1.edges().to_vec();
    edges.extend(sk2.edges().iter().map(|e| Edge {
        id: rename(&e.id),
        tail_name: rename(&e.tail_name),
        head_name: rename(&e.head_name),
        rot2: e.rot2,
    }));
    let mut vertices = sk1.vertices().to_vec();
    vertices[p1].halfedges.extend(sk2.vertices()[p2].halfedges.iter().map(shift));
    let vnames: Vec<String> = vertices.iter().map(|v| v.id.clone()).collect();
    for (v, vert) in sk2.vertices().iter().enumerate() {
        if v != p2 {
            let id = if vnames.contains(&vert.id) { format!("{}_2", vert.id) } else { vert.id.clone() };
            vertices.push(Vertex { id, halfedges: vert.halfedges.iter().map(shift).collect() });
        }
    }
    Ok((rebuild(vertices, edges)?, off))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    #[test]
    fn double_reversal_is_identity() {
        let sk = standard::torus().with_rot2(&[3, 0]);
        let (s1, m1) = reverse_edge(&sk, 0).unwrap();
        assert_eq!(s1.rot2(0), -3);
        let (s2, m2) = reverse_edge(&s1, 0).unwrap();
        assert_eq!(s2, sk);
        let w = vec![Letter::fwd(0), Letter::fwd(1)];
        assert_eq!(m1.then(&m2).transport_letters(&w), w);
    }

    #[test]
    fn slide_preserves_topology_and_inverts() {
        for sk in [standard::torus(), standard::pants(), standard::theta()] {
            let info = sk.info().unwrap();
            for v in 0..sk.num_vertices() {
                let hs = sk.halfedges_at(v).to_vec();
                for w in hs.windows(2) {
                    for (mv, al) in [(w[1], w[0].edge), (w[0], w[1].edge)] {
                        let Ok((t, m)) = slide(&sk, mv, al) else { continue };
                        assert_eq!(t.info().unwrap(), info);
                        for e in 0..sk.num_edges() {
                            let back = m.transport_back_letters(&m.transport_letters(&[Letter::fwd(e)]));
                            assert_eq!(back, vec![Letter::fwd(e)]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_adjacent_slide_rejected() {
        let sk = standard::genus2();
        let mv = sk.halfedges_at(0)[4];
        assert!(matches!(slide(&sk, mv, 0), Err(Error::IllegalSlide(_))));
    }

    #[test]
    fn fusing_two_loops() {
        let one = Skeleton::new(
            vec![Vertex { id: "v".into(), halfedges: vec![HalfEdge::tail(0), HalfEdge::head(0)] }],
            vec![Edge { id: "a".into(), tail_name: "a+".into(), head_name: "a-".into(), rot2: 0 }],
        )
        .unwrap();
        let (f, off) = fuse_disjoint(&one, 0, &one, 0).unwrap();
        assert_eq!(off, 1);
        assert_eq!(f.halfedges_at(0).len(), 4);
        assert_eq!(f.edge_name(1), "a_2");
        assert_eq!(f.info().unwrap().boundary_components, 3);
        assert!(matches!(fuse(&standard::path(), 0, 0), Err(Error::SameVertex)));
        let (g, _) = fuse(&standard::path(), 0, 1).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.info().unwrap().boundary_components, 2);
    }
}
