//! Brute-force oracles for enumeration, canonical codes, metrics and the
//! two routes to the Dirichlet-to-Neumann matrix.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steklov::enumeration::enumerate_trees;
use steklov::random::{prufer_edges, random_graph_with_independent_boundary};
use steklov::spectral::{dtn_matrix, dtn_matrix_from_extensions};
use steklov::{canonical_code, steklov_spectrum, GraphWithBoundary, Tree};

// Free trees on n = 0..=18 vertices.
const FREE_TREES: [usize; 19] = [
    1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867,
];

fn all_prufer_trees(n: usize) -> Vec<Tree> {
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            Tree::with_order(n, &prufer_edges(n, &seq)).unwrap()
        })
        .collect()
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn isomorphic(a: &Tree, b: &Tree) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let adj_b = adjacency(n, b.edges());
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().iter().all(|&(u, v)| adj_b[perm[u]][perm[v]]) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn relabel(tree: &Tree, rng: &mut ChaCha8Rng) -> Tree {
    let mut perm: Vec<usize> = (0..tree.order()).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = tree
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u], perm[v]))
        .collect();
    Tree::with_order(tree.order(), &edges).unwrap()
}

fn bfs(n: usize, edges: &[(usize, usize)], s: usize) -> Vec<usize> {
    let a = adjacency(n, edges);
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in 0..n {
            if a[x][y] && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

#[test]
fn enumeration_matches_prufer_dedup() {
    for n in 3..=8 {
        let labeled: BTreeSet<_> = all_prufer_trees(n).iter().map(canonical_code).collect();
        let free: BTreeSet<_> = enumerate_trees(n)
            .unwrap()
            .map(|t| canonical_code(&t))
            .collect();
        assert_eq!(labeled.len(), FREE_TREES[n], "n = {n}");
        assert_eq!(labeled, free, "n = {n}");
    }
}

#[test]
fn enumeration_counts_to_eighteen() {
    for n in 2..=18 {
        let mut count = 0;
        for t in enumerate_trees(n).unwrap() {
            assert_eq!(t.edges().len(), n - 1);
            count += 1;
        }
        assert_eq!(count, FREE_TREES[n], "n = {n}");
    }
}

#[test]
fn enumeration_is_isomorphism_free_to_twelve() {
    for n in 9..=12 {
        let codes: BTreeSet<_> = enumerate_trees(n)
            .unwrap()
            .map(|t| canonical_code(&t))
            .collect();
        assert_eq!(codes.len(), FREE_TREES[n]);
    }
}

#[test]
fn canonical_code_agrees_with_brute_force_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=8 {
        let trees: Vec<Tree> = enumerate_trees(n)
            .unwrap()
            .map(|t| relabel(&t, &mut rng))
            .collect();
        let codes: Vec<_> = trees.iter().map(canonical_code).collect();
        // Every pair for n <= 7; at n = 8, each tree against a relabeled copy
        // of itself and against its neighbours in the list.
        for i in 0..trees.len() {
            let partners: Vec<usize> = if n <= 7 {
                (0..trees.len()).collect()
            } else {
                vec![i, (i + 1) % trees.len(), (i + 7) % trees.len()]
            };
            for j in partners {
                let other = if i == j {
                    relabel(&trees[j], &mut rng)
                } else {
                    trees[j].clone()
                };
                assert_eq!(
                    isomorphic(&trees[i], &other),
                    codes[i] == canonical_code(&other),
                    "n = {n}, {:?} vs {:?}",
                    trees[i].edges(),
                    other.edges()
                );
            }
        }
    }
}

#[test]
fn diameter_and_paths_against_all_pairs_bfs() {
    for n in 2..=10 {
        for t in enumerate_trees(n).unwrap() {
            let dists: Vec<Vec<usize>> = (0..n).map(|s| bfs(n, t.edges(), s)).collect();
            let brute = dists.iter().flatten().copied().max().unwrap();
            assert_eq!(t.diameter(), brute);
            let adj = adjacency(n, t.edges());
            let paths = t.all_diametral_paths();
            let expected = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| dists[u][v] == brute)
                .count();
            assert_eq!(paths.len(), expected);
            for p in &paths {
                assert_eq!(p.len(), brute + 1);
                assert!(p.windows(2).all(|w| adj[w[0]][w[1]]));
                let d = t.branch_decomposition(p).unwrap();
                let mut seen: Vec<usize> = p.clone();
                for i in 0..=brute {
                    seen.extend_from_slice(d.component(i));
                }
                seen.sort_unstable();
                assert_eq!(seen, (0..n).collect::<Vec<_>>());
            }
        }
    }
}

fn assert_routes_agree(g: &GraphWithBoundary) {
    let schur = dtn_matrix(g).unwrap();
    let columns = dtn_matrix_from_extensions(g).unwrap();
    let b = g.boundary().len();
    for j in 0..b {
        for i in 0..b {
            assert!((schur.get(i, j) - columns[j][i]).abs() < 1e-10);
            assert!((schur.get(i, j) - schur.get(j, i)).abs() < 1e-14);
        }
        let row_sum: f64 = schur.row(j).iter().sum();
        assert!(row_sum.abs() < 1e-12 * g.order() as f64);
    }
    let spectrum = steklov_spectrum(g).unwrap();
    assert!(spectrum.values()[0] >= -1e-10);
}

#[test]
fn schur_complement_matches_extension_route() {
    for n in 3..=10 {
        for t in enumerate_trees(n).unwrap() {
            assert_routes_agree(t.graph());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let g = random_graph_with_independent_boundary(9, 0.3, &mut rng);
        assert_routes_agree(&g);
    }
}

#[test]
fn closed_spectra_of_paths_and_stars() {
    for n in 2..=12 {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let s = steklov_spectrum(Tree::from_edges(&edges).unwrap().graph()).unwrap();
        // n = 2 has no interior and reports the Laplacian itself.
        let top = if n == 2 { 2.0 } else { 2.0 / (n - 1) as f64 };
        assert!(s.matches(&[0.0, top]), "P{n}: {:?}", s.values());
    }
    for m in 2..=10 {
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        let s = steklov_spectrum(Tree::from_edges(&edges).unwrap().graph()).unwrap();
        let mut expected = vec![1.0; m];
        expected[0] = 0.0;
        assert!(s.matches(&expected), "star {m}: {:?}", s.values());
    }
}

#[test]
fn tree_spectra_lie_in_unit_interval() {
    for n in 3..=11 {
        for t in enumerate_trees(n).unwrap() {
            let s = steklov_spectrum(t.graph()).unwrap();
            assert_eq!(s.len(), t.leaf_count());
            assert!(s
                .values()
                .iter()
                .all(|&x| (-1e-9..=1.0 + 1e-9).contains(&x)));
        }
    }
}
