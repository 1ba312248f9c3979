//! Isomorphism-free tree enumeration and exhaustive extremal search.
//!
//! Free trees are generated as canonical level sequences rooted at a
//! center (Wright, Richmond, Odlyzko and McKay), one per isomorphism class.

use alloc::vec;
use alloc::vec::Vec;

use libm::fabs;
use thiserror::Error;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::families::{ClosedFormValue, Rational};
use crate::graph::Tree;
use crate::spectral::{steklov_spectrum, SpectralError, SymmetricSpectrum};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 18;

/// Number of free trees on `n` vertices, `n = 1..=18`.
pub const FREE_TREE_COUNTS: [usize; 18] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867,
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerationError {
    #[error("order {n} outside the supported range {MIN_ORDER}..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

fn check_order(n: usize, max: usize) -> Result<(), EnumerationError> {
    if (MIN_ORDER..=max).contains(&n) {
        Ok(())
    } else {
        Err(EnumerationError::OrderOutOfRange { n, max })
    }
}

/// Streams one tree per isomorphism class on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<FreeTrees, EnumerationError> {
    check_order(n, MAX_ORDER)?;
    let layout = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    Ok(FreeTrees { next: Some(layout) })
}

#[derive(Debug, Clone)]
pub struct FreeTrees {
    next: Option<Vec<usize>>,
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let mut layout = self.next.take()?;
        while !is_free_canonical(&layout) {
            layout = jump(&layout)?;
        }
        self.next = next_rooted(&layout, None);
        Some(level_sequence_tree(&layout))
    }
}

/// Successor of a rooted level sequence; `p` overrides the position that
/// is incremented.
fn next_rooted(levels: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = levels.len() - 1;
            while levels[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while levels[q] + 1 != levels[p] {
        q -= 1;
    }
    let mut next = levels.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Splits off the first subtree of the root: its levels shifted down by
/// one, and the remaining tree with the root kept.
fn split(levels: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let second_one = levels
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(levels.len(), |(i, _)| i);
    let left = levels[1..second_one].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&levels[second_one..]);
    (left, rest)
}

fn is_free_canonical(levels: &[usize]) -> bool {
    let (left, rest) = split(levels);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    if rest_height != left_height {
        return rest_height > left_height;
    }
    left.len() < rest.len() || (left.len() == rest.len() && left <= rest)
}

fn jump(levels: &[usize]) -> Option<Vec<usize>> {
    let (left, _) = split(levels);
    let p = left.len();
    let mut next = next_rooted(levels, Some(p))?;
    if levels[p] > 2 {
        let (new_left, _) = split(&next);
        let height = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - height - 1..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

/// Vertex `i` hangs off the most recent vertex one level up.
fn level_sequence_tree(levels: &[usize]) -> Tree {
    let mut last_at_level: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(levels.len() - 1);
    for (v, &level) in levels.iter().enumerate() {
        if level > 0 {
            edges.push((last_at_level[level - 1], v));
        }
        last_at_level.truncate(level);
        last_at_level.push(v);
    }
    Tree::with_order(levels.len(), &edges).expect("level sequences describe trees")
}

/// A tree with the invariants the extremal searches filter and rank on.
#[derive(Debug, Clone)]
pub struct TreeRecord {
    pub tree: Tree,
    pub code: CanonicalCode,
    pub leaf_count: usize,
    pub diameter: usize,
    pub spectrum: SymmetricSpectrum,
}

impl TreeRecord {
    pub fn new(tree: Tree) -> Result<Self, EnumerationError> {
        let spectrum = steklov_spectrum(tree.graph())?;
        Ok(Self {
            code: canonical_code(&tree),
            leaf_count: tree.leaf_count(),
            diameter: tree.diameter(),
            spectrum,
            tree,
        })
    }
}

/// Every tree on `n` vertices with its spectrum, sorted by canonical code.
#[derive(Debug, Clone)]
pub struct Catalog {
    order: usize,
    records: Vec<TreeRecord>,
}

impl Catalog {
    pub fn build(n: usize) -> Result<Self, EnumerationError> {
        let mut records = enumerate_trees(n)?
            .map(TreeRecord::new)
            .collect::<Result<Vec<_>, _>>()?;
        records.sort_by(|a, b| a.code.cmp(&b.code));
        Ok(Self { order: n, records })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn records(&self) -> &[TreeRecord] {
        &self.records
    }

    pub fn search(
        &self,
        query: &ExtremalQuery,
        tol: f64,
    ) -> Result<SearchOutcome, EnumerationError> {
        query.validate()?;
        if query.n != self.order {
            return Err(EnumerationError::InvalidQuery(
                "query order differs from catalog order",
            ));
        }
        let class: Vec<&TreeRecord> = self.records.iter().filter(|r| query.admits(r)).collect();
        let value = class
            .iter()
            .filter_map(|r| r.spectrum.sigma(query.k))
            .fold(f64::NEG_INFINITY, f64::max);
        if class.is_empty() || !value.is_finite() {
            return Ok(SearchOutcome::EmptyClass(*query));
        }
        let winners: Vec<&TreeRecord> = class
            .into_iter()
            .filter(|r| r.spectrum.sigma(query.k).is_some_and(|s| value - s <= tol))
            .collect();
        Ok(SearchOutcome::Found(ExtremalRecord {
            query: *query,
            value,
            attainers: winners.iter().map(|r| r.code.clone()).collect(),
            attainer_trees: winners.iter().map(|r| r.tree.clone()).collect(),
            predicted: predicted_maximum(query),
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryMode {
    /// Trees with exactly `b` leaves.
    ByLeaves { b: usize },
    /// Trees with diameter exactly `d`.
    ByDiameter { d: usize },
}

/// Maximize `sigma_k` over all trees on `n` vertices in the chosen class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremalQuery {
    pub mode: QueryMode,
    pub k: usize,
    pub n: usize,
}

impl ExtremalQuery {
    pub fn by_leaves(b: usize, n: usize, k: usize) -> Self {
        Self {
            mode: QueryMode::ByLeaves { b },
            k,
            n,
        }
    }

    pub fn by_diameter(d: usize, n: usize, k: usize) -> Self {
        Self {
            mode: QueryMode::ByDiameter { d },
            k,
            n,
        }
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.k < 1 {
            return Err(EnumerationError::InvalidQuery("k must be at least 1"));
        }
        match self.mode {
            QueryMode::ByLeaves { b } => {
                if b < 2 || b + 1 > self.n {
                    return Err(EnumerationError::InvalidQuery("need 2 <= b <= n - 1"));
                }
                if self.k > b {
                    return Err(EnumerationError::InvalidQuery("need k <= b"));
                }
            }
            QueryMode::ByDiameter { d } => {
                if d < 1 || d + 1 > self.n {
                    return Err(EnumerationError::InvalidQuery("need 1 <= D <= n - 1"));
                }
            }
        }
        Ok(())
    }

    fn admits(&self, record: &TreeRecord) -> bool {
        match self.mode {
            QueryMode::ByLeaves { b } => record.leaf_count == b,
            QueryMode::ByDiameter { d } => record.diameter == d,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremalRecord {
    pub query: ExtremalQuery,
    pub value: f64,
    /// Canonical codes of every tree within tolerance of `value`, ascending.
    pub attainers: Vec<CanonicalCode>,
    pub attainer_trees: Vec<Tree>,
    /// The closed-form maximum where one is known.
    pub predicted: Option<ClosedFormValue>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    EmptyClass(ExtremalQuery),
    Found(ExtremalRecord),
}

impl SearchOutcome {
    pub fn record(&self) -> Option<&ExtremalRecord> {
        match self {
            Self::Found(r) => Some(r),
            Self::EmptyClass(_) => None,
        }
    }
}

/// Exhaustive maximum of `sigma_k` over the query's class.
pub fn extremal_search(query: &ExtremalQuery, tol: f64) -> Result<SearchOutcome, EnumerationError> {
    query.validate()?;
    Catalog::build(query.n)?.search(query, tol)
}

fn rational(n: usize, d: usize) -> ClosedFormValue {
    ClosedFormValue::Rational(Rational::new(n as i64, d as i64))
}

/// Maximal `sigma_2` over trees with `b` leaves and `n` vertices, from the
/// piecewise closed form.
pub fn sigma2_max_by_leaves(b: usize, n: usize) -> Option<ClosedFormValue> {
    if b < 2 || n < b + 1 {
        return None;
    }
    if b == 2 {
        return Some(rational(2, n - 1));
    }
    if (n - 2) % b == 0 {
        return Some(rational(b, n - 2 + b - 1));
    }
    // n = br + m with 3 - b <= m <= 1, i.e. r = ceil((n - 1) / b).
    Some(rational(1, (n - 1).div_ceil(b)))
}

/// Maximal `sigma_2` over trees of diameter `d` on `n` vertices, where known.
pub fn sigma2_max_by_diameter(d: usize, n: usize) -> Option<ClosedFormValue> {
    if d < 2 || n < d + 1 {
        return None;
    }
    if d % 2 == 0 {
        Some(rational(2, d))
    } else if d == 3 {
        Some(rational(n - 2, 2 * n - 5))
    } else {
        None
    }
}

pub fn predicted_maximum(query: &ExtremalQuery) -> Option<ClosedFormValue> {
    match (query.mode, query.k) {
        (_, 1) => Some(rational(0, 1)),
        (QueryMode::ByLeaves { b }, 2) => sigma2_max_by_leaves(b, query.n),
        (QueryMode::ByLeaves { b }, k) if k >= 3 && k <= b => Some(rational(1, 1)),
        (QueryMode::ByDiameter { d }, 2) => sigma2_max_by_diameter(d, query.n),
        _ => None,
    }
}

/// Whether `value` agrees with a closed form within `tol`.
pub fn agrees(value: f64, predicted: &ClosedFormValue, tol: f64) -> bool {
    fabs(value - predicted.to_f64()) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilyDescriptor};
    use crate::EIGEN_TOL;
    use alloc::string::ToString;

    #[test]
    fn counts_match_free_tree_sequence() {
        for n in 2..=12 {
            assert_eq!(
                enumerate_trees(n).unwrap().count(),
                FREE_TREE_COUNTS[n - 1],
                "n = {n}"
            );
        }
    }

    #[test]
    fn rejects_orders_out_of_range() {
        assert!(enumerate_trees(1).is_err());
        assert!(enumerate_trees(19).is_err());
    }

    #[test]
    fn small_orders() {
        let p2: Vec<_> = enumerate_trees(2).unwrap().collect();
        assert_eq!(p2.len(), 1);
        assert_eq!(p2[0].edges(), &[(0, 1)]);
        let four: Vec<_> = enumerate_trees(4).unwrap().map(|t| t.diameter()).collect();
        let mut sorted = four.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 3]);
    }

    #[test]
    fn query_validation() {
        assert!(ExtremalQuery::by_leaves(1, 5, 1).validate().is_err());
        assert!(ExtremalQuery::by_leaves(5, 5, 2).validate().is_err());
        assert!(ExtremalQuery::by_leaves(3, 5, 4).validate().is_err());
        assert!(ExtremalQuery::by_leaves(3, 5, 0).validate().is_err());
        assert!(ExtremalQuery::by_diameter(5, 5, 2).validate().is_err());
        assert!(ExtremalQuery::by_diameter(4, 5, 2).validate().is_ok());
    }

    #[test]
    fn searches() {
        let rec = extremal_search(&ExtremalQuery::by_leaves(2, 6, 2), EIGEN_TOL).unwrap();
        let rec = rec.record().unwrap();
        assert!((rec.value - 0.4).abs() < 1e-12);
        assert_eq!(rec.attainers.len(), 1);
        assert_eq!(rec.predicted.unwrap().to_string(), "2/5");

        let rec = extremal_search(&ExtremalQuery::by_leaves(3, 8, 2), EIGEN_TOL).unwrap();
        let rec = rec.record().unwrap();
        assert!((rec.value - 3.0 / 8.0).abs() < 1e-12);
        let af = make_family(&FamilyDescriptor::AlmostFork { b: 3, r: 2 }).unwrap();
        assert_eq!(rec.attainers, vec![canonical_code(&af.tree)]);

        let rec = extremal_search(&ExtremalQuery::by_diameter(3, 6, 2), EIGEN_TOL).unwrap();
        let rec = rec.record().unwrap();
        assert!((rec.value - 4.0 / 7.0).abs() < 1e-12);
        let bar = make_family(&FamilyDescriptor::Barbell { p: 1, q: 3, d: 3 }).unwrap();
        assert_eq!(rec.attainers, vec![canonical_code(&bar.tree)]);
    }

    #[test]
    fn empty_class_is_an_outcome() {
        // Diameter 5 on six vertices is P6 alone, which has no sigma_3.
        let catalog = Catalog::build(6).unwrap();
        let q = ExtremalQuery::by_diameter(5, 6, 3);
        assert!(matches!(
            catalog.search(&q, EIGEN_TOL).unwrap(),
            SearchOutcome::EmptyClass(_)
        ));
    }

    #[test]
    fn piecewise_predictions() {
        assert_eq!(sigma2_max_by_leaves(3, 7).unwrap().to_string(), "1/2");
        assert_eq!(sigma2_max_by_leaves(4, 6).unwrap().to_string(), "4/7");
        assert_eq!(sigma2_max_by_leaves(2, 5).unwrap().to_string(), "1/2");
        assert_eq!(sigma2_max_by_leaves(3, 8).unwrap().to_string(), "3/8");
        assert_eq!(sigma2_max_by_diameter(3, 5).unwrap().to_string(), "3/5");
        assert_eq!(sigma2_max_by_diameter(4, 7).unwrap().to_string(), "1/2");
        assert_eq!(sigma2_max_by_diameter(2, 5).unwrap().to_string(), "1/1");
        assert!(sigma2_max_by_diameter(5, 8).is_none());
    }
}
