//! Graphs with a distinguished boundary, and trees whose boundary is their leaf set.
//!
//! Vertices are dense indices `0..n`. Edges are stored normalized as `(u, v)`
//! with `u < v` and kept sorted; neighbor lists are sorted as well, so every
//! traversal below is deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("a tree with leaf boundary needs at least two vertices")]
    TooSmall,
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cycle detected: edge {0}-{1} closes a cycle")]
    CycleDetected(usize, usize),
    #[error("boundary is empty")]
    EmptyBoundary,
    #[error("vertex sequence is not a diametral path")]
    NotDiametral,
    #[error("diameter {0} is odd")]
    OddDiameter(usize),
    #[error("vertex subset does not induce a connected subgraph")]
    SubsetDisconnected,
}

/// A simple connected graph with a nonempty boundary vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWithBoundary {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    boundary: Vec<usize>,
    is_boundary: Vec<bool>,
}

impl GraphWithBoundary {
    pub fn new(
        order: usize,
        edges: &[(usize, usize)],
        boundary: &[usize],
    ) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::Empty);
        }
        let (adjacency, edges) = build_adjacency(order, edges)?;
        if !is_connected(&adjacency) {
            return Err(GraphError::Disconnected);
        }
        let mut boundary = boundary.to_vec();
        boundary.sort_unstable();
        boundary.dedup();
        if boundary.is_empty() {
            return Err(GraphError::EmptyBoundary);
        }
        let mut is_boundary = vec![false; order];
        for &v in &boundary {
            if v >= order {
                return Err(GraphError::VertexOutOfRange { vertex: v, order });
            }
            is_boundary[v] = true;
        }
        Ok(Self {
            adjacency,
            edges,
            boundary,
            is_boundary,
        })
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Boundary vertices in increasing order. Boundary-indexed vectors
    /// throughout the crate follow this order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.is_boundary[v]
    }

    /// Interior vertices `V \ B` in increasing order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&v| !self.is_boundary[v])
            .collect()
    }

    /// True when no edge joins two boundary vertices.
    pub fn boundary_is_independent(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| !(self.is_boundary[u] && self.is_boundary[v]))
    }

    /// Breadth-first distances from `source`; every vertex is reachable.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        bfs(&self.adjacency, source).0
    }
}

fn build_adjacency(
    order: usize,
    edges: &[(usize, usize)],
) -> Result<(Vec<Vec<usize>>, Vec<(usize, usize)>), GraphError> {
    let mut normalized = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        normalized.push((u.min(v), u.max(v)));
    }
    normalized.sort_unstable();
    if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
    }
    let mut adjacency = vec![Vec::new(); order];
    for &(u, v) in &normalized {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok((adjacency, normalized))
}

/// Returns (distance, parent) arrays; unreachable vertices get `usize::MAX`.
fn bfs(adjacency: &[Vec<usize>], source: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        for &y in &adjacency[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    (dist, parent)
}

fn is_connected(adjacency: &[Vec<usize>]) -> bool {
    adjacency.is_empty() || bfs(adjacency, 0).0.iter().all(|&d| d != usize::MAX)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A tree whose boundary is exactly its set of leaves (degree-1 vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    graph: GraphWithBoundary,
}

impl Tree {
    /// Builds a tree from an edge list over `0..n`, with `n` one more than the
    /// largest vertex mentioned.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let order = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::with_order(order, edges)
    }

    /// Builds a tree on exactly `order` vertices.
    pub fn with_order(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::Empty);
        }
        if order == 1 {
            return Err(GraphError::TooSmall);
        }
        let (adjacency, normalized) = build_adjacency(order, edges)?;
        let mut roots: Vec<usize> = (0..order).collect();
        for &(u, v) in &normalized {
            let (ru, rv) = (find(&mut roots, u), find(&mut roots, v));
            if ru == rv {
                return Err(GraphError::CycleDetected(u, v));
            }
            roots[ru] = rv;
        }
        if normalized.len() != order - 1 {
            return Err(GraphError::Disconnected);
        }
        let leaves: Vec<usize> = (0..order).filter(|&v| adjacency[v].len() == 1).collect();
        let graph = GraphWithBoundary::new(order, &normalized, &leaves)?;
        Ok(Self { graph })
    }

    pub fn graph(&self) -> &GraphWithBoundary {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn leaves(&self) -> &[usize] {
        self.graph.boundary()
    }

    pub fn leaf_count(&self) -> usize {
        self.graph.boundary().len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }

    /// Maximum pairwise distance, by two breadth-first sweeps.
    pub fn diameter(&self) -> usize {
        let first = self.graph.distances_from(0);
        let far = argmax(&first);
        let second = self.graph.distances_from(far);
        second[argmax(&second)]
    }

    /// Every path of maximal length, once each, oriented from the smaller
    /// endpoint and listed in lexicographic order.
    pub fn all_diametral_paths(&self) -> Vec<Vec<usize>> {
        let diameter = self.diameter();
        let leaves = self.leaves();
        let mut paths = Vec::new();
        for (i, &u) in leaves.iter().enumerate() {
            let (dist, parent) = bfs(&self.graph.adjacency, u);
            for &v in &leaves[i + 1..] {
                if dist[v] != diameter {
                    continue;
                }
                let mut path = Vec::with_capacity(diameter + 1);
                let mut x = v;
                while x != u {
                    path.push(x);
                    x = parent[x];
                }
                path.push(u);
                path.reverse();
                paths.push(path);
            }
        }
        paths.sort();
        paths
    }

    /// Splits the off-path vertices into the branches hanging at each
    /// interior path vertex.
    pub fn branch_decomposition(&self, path: &[usize]) -> Result<BranchDecomposition, GraphError> {
        let n = self.order();
        let diameter = self.diameter();
        if path.len() != diameter + 1 {
            return Err(GraphError::NotDiametral);
        }
        let mut on_path = vec![false; n];
        for &v in path {
            if v >= n || on_path[v] {
                return Err(GraphError::NotDiametral);
            }
            on_path[v] = true;
        }
        if path
            .windows(2)
            .any(|w| self.neighbors(w[0]).binary_search(&w[1]).is_err())
        {
            return Err(GraphError::NotDiametral);
        }

        let mut components = vec![Vec::new(); path.len()];
        for i in 1..diameter {
            let mut seen = vec![false; n];
            let mut stack = vec![path[i]];
            seen[path[i]] = true;
            let component = &mut components[i];
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if !on_path[y] && !seen[y] {
                        seen[y] = true;
                        component.push(y);
                        stack.push(y);
                    }
                }
            }
            component.sort_unstable();
        }
        Ok(BranchDecomposition {
            path: path.to_vec(),
            components,
        })
    }

    /// Largest distance from `root` to a vertex of `restrict`, moving only
    /// through `restrict`.
    pub fn rooted_depth(&self, root: usize, restrict: &[usize]) -> Result<usize, GraphError> {
        let n = self.order();
        let mut allowed = vec![false; n];
        for &v in restrict.iter().chain(core::iter::once(&root)) {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            allowed[v] = true;
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if allowed[y] && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        restrict.iter().try_fold(0, |depth, &v| match dist[v] {
            usize::MAX => Err(GraphError::SubsetDisconnected),
            d => Ok(depth.max(d)),
        })
    }

    /// For even diameter `2r`: whether some diametral path has every branch
    /// empty except the middle one, and the middle branch has depth at most `r`.
    pub fn attains_even_diameter_bound(&self) -> Result<bool, GraphError> {
        Ok(self.even_bound_witnesses()?.iter().any(|(_, ok)| *ok))
    }

    /// Per-path answers behind [`Tree::attains_even_diameter_bound`].
    pub fn even_bound_witnesses(&self) -> Result<Vec<(Vec<usize>, bool)>, GraphError> {
        let diameter = self.diameter();
        if diameter % 2 == 1 {
            return Err(GraphError::OddDiameter(diameter));
        }
        let half = diameter / 2;
        self.all_diametral_paths()
            .into_iter()
            .map(|path| {
                let split = self.branch_decomposition(&path)?;
                let side_branches_empty =
                    (1..diameter).all(|i| i == half || split.component(i).is_empty());
                let ok = side_branches_empty
                    && self.rooted_depth(path[half], split.component(half))? <= half;
                Ok((path, ok))
            })
            .collect()
    }

    /// Induced subtree on `subset`, relabeled in increasing order of the
    /// original indices. Returns the subtree and the new-to-old index map.
    pub fn subtree(&self, subset: &[usize]) -> Result<(Tree, Vec<usize>), GraphError> {
        let n = self.order();
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: n,
            });
        }
        if keep.is_empty() {
            return Err(GraphError::Empty);
        }
        if keep.len() < 2 {
            return Err(GraphError::TooSmall);
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .filter(|&&(u, v)| new_index[u] != usize::MAX && new_index[v] != usize::MAX)
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        if edges.len() != keep.len() - 1 {
            return Err(GraphError::SubsetDisconnected);
        }
        let tree = Tree::with_order(keep.len(), &edges).map_err(|e| match e {
            GraphError::Disconnected => GraphError::SubsetDisconnected,
            other => other,
        })?;
        Ok((tree, keep))
    }
}

fn argmax(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &d) in values.iter().enumerate() {
        if d > values[best] {
            best = i;
        }
    }
    best
}

/// A diametral path `v_0 .. v_D` together with, for each `0 < i < D`, the
/// vertices hanging off `v_i` once both path edges at `v_i` are removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    path: Vec<usize>,
    // Indexed by path position; the two endpoint slots are always empty.
    components: Vec<Vec<usize>>,
}

impl BranchDecomposition {
    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn diameter(&self) -> usize {
        self.path.len() - 1
    }

    /// Off-path vertices attached at `v_i`, excluding `v_i` itself.
    pub fn component(&self, i: usize) -> &[usize] {
        &self.components[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(&edges).unwrap()
    }

    fn star(leaves: usize) -> Tree {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Tree::from_edges(&edges).unwrap()
    }

    /// Midpoint of P_{2r+1} is vertex r; pendants are appended after the path.
    fn ruler(r: usize, pendants: usize) -> Tree {
        let mut edges: Vec<_> = (1..=2 * r).map(|i| (i - 1, i)).collect();
        for k in 0..pendants {
            edges.push((r, 2 * r + 1 + k));
        }
        Tree::from_edges(&edges).unwrap()
    }

    #[test]
    fn builds_small_path_and_star() {
        let p3 = path(3);
        assert_eq!(p3.leaves(), &[0, 2]);
        assert_eq!(star(3).leaves(), &[1, 2, 3]);
    }

    #[test]
    fn reports_each_construction_error_distinctly() {
        assert_eq!(
            Tree::from_edges(&[(0, 1), (1, 2), (2, 0)]),
            Err(GraphError::CycleDetected(1, 2))
        );
        assert_eq!(
            Tree::with_order(4, &[(0, 1), (2, 3)]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            Tree::from_edges(&[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Tree::from_edges(&[(0, 1), (1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(Tree::from_edges(&[]), Err(GraphError::Empty));
        assert_eq!(Tree::with_order(1, &[]), Err(GraphError::TooSmall));
        assert_eq!(
            Tree::with_order(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 2,
                order: 2
            })
        );
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            GraphWithBoundary::new(3, &[(0, 1), (1, 2)], &[]),
            Err(GraphError::EmptyBoundary)
        );
        assert_eq!(
            GraphWithBoundary::new(3, &[(0, 1)], &[0]),
            Err(GraphError::Disconnected)
        );
        let g = GraphWithBoundary::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)], &[3, 0]).unwrap();
        assert_eq!(g.boundary(), &[0, 3]);
        assert_eq!(g.interior(), vec![1, 2]);
        assert!(g.boundary_is_independent());
        let h = GraphWithBoundary::new(2, &[(0, 1)], &[0, 1]).unwrap();
        assert!(!h.boundary_is_independent());
    }

    #[test]
    fn diameters() {
        for n in 2..10 {
            assert_eq!(path(n).diameter(), n - 1);
        }
        assert_eq!(star(3).diameter(), 2);
    }

    #[test]
    fn diametral_paths_of_path_and_star() {
        assert_eq!(path(4).all_diametral_paths(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            star(3).all_diametral_paths(),
            vec![vec![1, 0, 2], vec![1, 0, 3], vec![2, 0, 3]]
        );
    }

    #[test]
    fn branch_decomposition_of_path_is_empty() {
        let t = path(5);
        let split = t.branch_decomposition(&[0, 1, 2, 3, 4]).unwrap();
        assert!((1..4).all(|i| split.component(i).is_empty()));
        assert_eq!(
            t.branch_decomposition(&[0, 1, 2, 3]),
            Err(GraphError::NotDiametral)
        );
        assert_eq!(
            t.branch_decomposition(&[0, 1, 2, 1, 0]),
            Err(GraphError::NotDiametral)
        );
    }

    #[test]
    fn ruler_branches_sit_at_midpoint() {
        let t = ruler(3, 2);
        let split = t.branch_decomposition(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
        for i in 1..6 {
            if i == 3 {
                assert_eq!(split.component(i), &[7, 8]);
            } else {
                assert!(split.component(i).is_empty());
            }
        }
        assert_eq!(t.rooted_depth(3, split.component(3)), Ok(1));
        assert_eq!(t.attains_even_diameter_bound(), Ok(true));
    }

    #[test]
    fn rooted_depth_edge_cases() {
        let t = path(5);
        assert_eq!(t.rooted_depth(2, &[]), Ok(0));
        assert_eq!(t.rooted_depth(0, &[1, 2, 3]), Ok(3));
        assert_eq!(t.rooted_depth(0, &[2]), Err(GraphError::SubsetDisconnected));
    }

    #[test]
    fn even_bound_predicate() {
        assert_eq!(path(5).attains_even_diameter_bound(), Ok(true));
        assert_eq!(
            path(4).attains_even_diameter_bound(),
            Err(GraphError::OddDiameter(3))
        );
        // P5 plus a pendant at v1: diameter stays 4 but the branch is off-centre.
        let t = Tree::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        assert_eq!(t.diameter(), 4);
        assert_eq!(t.attains_even_diameter_bound(), Ok(false));
        let per_path = t.even_bound_witnesses().unwrap();
        assert_eq!(per_path.len(), 2);
        assert!(per_path.iter().all(|(_, ok)| !ok));
    }

    #[test]
    fn subtrees() {
        let t = path(5);
        let (same, map) = t.subtree(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(same, t);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
        let (p4, _) = t.subtree(&[1, 2, 3, 4]).unwrap();
        assert_eq!(p4, path(4));
        assert_eq!(
            t.subtree(&[0, 2]).unwrap_err(),
            GraphError::SubsetDisconnected
        );
        assert_eq!(t.subtree(&[]).unwrap_err(), GraphError::Empty);
        assert_eq!(t.subtree(&[3]).unwrap_err(), GraphError::TooSmall);
    }
}
