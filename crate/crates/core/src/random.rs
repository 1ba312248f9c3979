//! Random trees, subtrees and boundary graphs for the property suites.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{GraphWithBoundary, Tree};

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into tree edges.
pub fn prufer_edges(n: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    assert!(
        n >= 2 && sequence.len() == n - 2,
        "Prüfer sequence must have length n - 2"
    );
    let mut degree = vec![1usize; n];
    for &x in sequence {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in sequence {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Uniformly random labeled tree on `n >= 2` vertices.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    let sequence: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    Tree::with_order(n, &prufer_edges(n, &sequence)).expect("Prüfer sequences decode to trees")
}

/// Vertex set of a random connected subtree with at least two vertices,
/// obtained by pruning a random number of leaves one at a time.
pub fn random_subtree_vertices<R: Rng + ?Sized>(tree: &Tree, rng: &mut R) -> Vec<usize> {
    let n = tree.order();
    let prunes = rng.gen_range(0..=n - 2);
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| tree.neighbors(v).len()).collect();
    for _ in 0..prunes {
        let leaves: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] == 1).collect();
        let &leaf = leaves
            .choose(rng)
            .expect("a tree with two or more vertices has leaves");
        alive[leaf] = false;
        for &y in tree.neighbors(leaf) {
            if alive[y] {
                degree[y] -= 1;
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// Random connected graph on `n >= 2` vertices: a random spanning tree plus
/// each remaining pair with probability `extra_edge_prob`, and a random
/// nonempty independent boundary.
pub fn random_graph_with_independent_boundary<R: Rng + ?Sized>(
    n: usize,
    extra_edge_prob: f64,
    rng: &mut R,
) -> GraphWithBoundary {
    let tree_edges = random_tree(n, rng).edges().to_vec();
    let mut edges = tree_edges.clone();
    for u in 0..n {
        for v in u + 1..n {
            if tree_edges.binary_search(&(u, v)).is_err() && rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    let mut adjacent = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adjacent[u].push(v);
        adjacent[v].push(u);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut in_boundary = vec![false; n];
    for (i, &v) in order.iter().enumerate() {
        let free = adjacent[v].iter().all(|&y| !in_boundary[y]);
        if free && (i == 0 || rng.gen_bool(0.5)) {
            in_boundary[v] = true;
        }
    }
    let boundary: Vec<usize> = (0..n).filter(|&v| in_boundary[v]).collect();
    GraphWithBoundary::new(n, &edges, &boundary).expect("construction is connected with a boundary")
}
