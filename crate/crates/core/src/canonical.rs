//! Isomorphism-invariant tree codes.
//!
//! The tree is rooted at its center and encoded bottom-up as a balanced
//! parenthesis string whose children are sorted; a bicentral tree takes the
//! smaller of its two center-rooted strings. The string is packed one bit
//! per parenthesis behind a varint vertex count.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Tree;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        use core::fmt::Write;
        let mut out = String::with_capacity(2 * self.0.len());
        for b in &self.0 {
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    let parens = tree_centers(tree)
        .into_iter()
        .map(|c| rooted_parens(tree, c))
        .min()
        .expect("a tree has one or two centers");

    let mut bytes = Vec::with_capacity(4 + parens.len() / 8 + 1);
    let mut n = tree.order();
    loop {
        let low = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            bytes.push(low);
            break;
        }
        bytes.push(low | 0x80);
    }
    for chunk in parens.chunks(8) {
        let mut byte = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            byte |= bit << (7 - i);
        }
        bytes.push(byte);
    }
    CanonicalCode(bytes)
}

/// The middle vertex, or the two middle vertices, of a diametral path.
pub fn tree_centers(tree: &Tree) -> Vec<usize> {
    let g = tree.graph();
    let first = g.distances_from(0);
    let a = (0..first.len())
        .max_by_key(|&v| (first[v], usize::MAX - v))
        .unwrap();
    // Walk back from the far end along decreasing distance to `a`.
    let dist = g.distances_from(a);
    let b = (0..dist.len())
        .max_by_key(|&v| (dist[v], usize::MAX - v))
        .unwrap();
    let diameter = dist[b];
    let mut path = vec![b];
    let mut x = b;
    while dist[x] > 0 {
        x = *g
            .neighbors(x)
            .iter()
            .find(|&&y| dist[y] + 1 == dist[x])
            .expect("predecessor on a shortest path");
        path.push(x);
    }
    if diameter % 2 == 0 {
        vec![path[diameter / 2]]
    } else {
        vec![path[diameter / 2], path[diameter / 2 + 1]]
    }
}

/// Sorted-children parenthesis string of the tree rooted at `root`; `1`
/// opens a vertex and `0` closes it.
fn rooted_parens(tree: &Tree, root: usize) -> Vec<u8> {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in tree.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = tree
            .neighbors(x)
            .iter()
            .filter(|&&y| parent[y] == x && y != root)
            .map(|&y| core::mem::take(&mut codes[y]))
            .collect();
        children.sort_unstable();
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(1);
        for child in children {
            code.extend_from_slice(&child);
        }
        code.push(0);
        codes[x] = code;
    }
    core::mem::take(&mut codes[root])
}
