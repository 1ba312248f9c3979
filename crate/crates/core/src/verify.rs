//! Exhaustive theorem checks, the conjecture explorer and randomized
//! property suites.
//!
//! Theorem checks produce one [`CheckRow`] per parameter tuple; a report
//! fails only on rows marked [`RowStatus::Mismatch`]. Rows that record
//! evidence without asserting anything are [`RowStatus::Reported`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use libm::fabs;
use rand::Rng;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::enumeration::{
    agrees, enumerate_trees, sigma2_max_by_diameter, sigma2_max_by_leaves, Catalog,
    EnumerationError, ExtremalQuery, ExtremalRecord, SearchOutcome, MAX_ORDER, MIN_ORDER,
};
use crate::families::{
    make_family, predicted_spectrum, ClosedFormValue, FamilyDescriptor, FamilyError, Rational,
};
use crate::graph::Tree;
use crate::random::{random_graph_with_independent_boundary, random_subtree_vertices, random_tree};
use crate::spectral::{
    deformed_spectrum, degree_bound_excess, steklov_spectrum, verify_eigenpair, SpectralError,
};

/// Largest order accepted by the `k >= 3`, diameter and conjecture checks.
pub const MAX_ORDER_SECONDARY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    /// Evidence only; never fails a report.
    Reported,
    /// Known definitional discrepancy, excluded from verification.
    Flagged,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Match => "true",
            Self::Mismatch => "false",
            Self::Reported => "reported",
            Self::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    /// `leaves`, `diameter` or `conjecture`.
    pub mode: &'static str,
    /// `b` for leaf queries, `D` otherwise.
    pub param: usize,
    pub n: usize,
    pub k: usize,
    pub max_value: Option<f64>,
    pub predicted: Option<ClosedFormValue>,
    pub status: RowStatus,
    pub attainers: Vec<CanonicalCode>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub name: &'static str,
    pub rows: Vec<CheckRow>,
    /// Observations that do not fail the report.
    pub findings: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Mismatch)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Mismatch)
    }
}

/// Catalogs for every order `2..=n_max`, shared between checks.
#[derive(Debug, Clone)]
pub struct CatalogSet {
    catalogs: Vec<Catalog>,
}

impl CatalogSet {
    pub fn build(n_max: usize) -> Result<Self, EnumerationError> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&n_max) {
            return Err(EnumerationError::OrderOutOfRange {
                n: n_max,
                max: MAX_ORDER,
            });
        }
        let catalogs = (MIN_ORDER..=n_max)
            .map(Catalog::build)
            .collect::<Result<_, _>>()?;
        Ok(Self { catalogs })
    }

    pub fn n_max(&self) -> usize {
        MIN_ORDER + self.catalogs.len() - 1
    }

    pub fn get(&self, n: usize) -> &Catalog {
        &self.catalogs[n - MIN_ORDER]
    }

    fn require(&self, n_max: usize, limit: usize) -> Result<(), EnumerationError> {
        if n_max > limit || n_max > self.n_max() || n_max < MIN_ORDER {
            Err(EnumerationError::OrderOutOfRange {
                n: n_max,
                max: limit.min(self.n_max()),
            })
        } else {
            Ok(())
        }
    }
}

fn found(outcome: SearchOutcome) -> Result<ExtremalRecord, EnumerationError> {
    match outcome {
        SearchOutcome::Found(r) => Ok(r),
        SearchOutcome::EmptyClass(_) => {
            Err(EnumerationError::InvalidQuery("unexpected empty class"))
        }
    }
}

fn family_code(descriptor: FamilyDescriptor) -> CanonicalCode {
    canonical_code(
        &make_family(&descriptor)
            .expect("valid family parameters")
            .tree,
    )
}

fn rational(n: usize, d: usize) -> ClosedFormValue {
    ClosedFormValue::Rational(Rational::new(n as i64, d as i64))
}

/// Maximal `sigma_2` by leaf count against the piecewise closed form, with
/// the uniqueness and structure claims about its attainers.
pub fn verify_sigma2max_theorem(n_max: usize, tol: f64) -> Result<TheoremReport, EnumerationError> {
    check_sigma2max(&CatalogSet::build(n_max)?, n_max, tol)
}

pub fn check_sigma2max(
    catalogs: &CatalogSet,
    n_max: usize,
    tol: f64,
) -> Result<TheoremReport, EnumerationError> {
    catalogs.require(n_max, MAX_ORDER)?;
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let catalog = catalogs.get(n);
        for b in 2..n {
            let rec = found(catalog.search(&ExtremalQuery::by_leaves(b, n, 2), tol)?)?;
            let predicted = sigma2_max_by_leaves(b, n).expect("valid (b, n)");
            let mut ok = agrees(rec.value, &predicted, tol);
            let mut note = String::new();
            if b == 2 {
                let class = catalog
                    .records()
                    .iter()
                    .filter(|r| r.leaf_count == 2)
                    .count();
                if class != 1 {
                    ok = false;
                    note = format!("expected only the path, found {class} trees");
                }
            } else if (n - 2) % b == 0 {
                let r = (n - 2) / b;
                let af = family_code(FamilyDescriptor::AlmostFork { b, r });
                if rec.attainers != [af] {
                    ok = false;
                    note = format!("expected unique attainer AF({b},{r})");
                } else {
                    note = format!("unique attainer AF({b},{r})");
                }
            } else {
                let failing = rec
                    .attainer_trees
                    .iter()
                    .filter(|t| t.attains_even_diameter_bound() != Ok(true))
                    .count();
                if failing > 0 {
                    ok = false;
                    note = format!("{failing} attainers lack the midpoint-branch structure");
                } else {
                    note = format!(
                        "{} attainers, all midpoint-branch trees",
                        rec.attainers.len()
                    );
                }
            }
            rows.push(CheckRow {
                mode: "leaves",
                param: b,
                n,
                k: 2,
                max_value: Some(rec.value),
                predicted: Some(predicted),
                status: if ok {
                    RowStatus::Match
                } else {
                    RowStatus::Mismatch
                },
                attainers: rec.attainers,
                note,
            });
        }
    }
    Ok(TheoremReport {
        name: "sigma2-max-by-leaves",
        rows,
        findings: Vec::new(),
    })
}

/// `sigma_k` maximum equals 1 for `3 <= k <= b`, attained by `B(b-1, 1, n-b+1)`.
pub fn verify_sigmakmax_theorem(n_max: usize, tol: f64) -> Result<TheoremReport, EnumerationError> {
    if n_max > MAX_ORDER_SECONDARY {
        return Err(EnumerationError::OrderOutOfRange {
            n: n_max,
            max: MAX_ORDER_SECONDARY,
        });
    }
    check_sigmakmax(&CatalogSet::build(n_max)?, n_max, tol)
}

pub fn check_sigmakmax(
    catalogs: &CatalogSet,
    n_max: usize,
    tol: f64,
) -> Result<TheoremReport, EnumerationError> {
    catalogs.require(n_max, MAX_ORDER_SECONDARY)?;
    let mut rows = Vec::new();
    for n in 4..=n_max {
        let catalog = catalogs.get(n);
        for b in 3..n {
            let barbell = family_code(FamilyDescriptor::Barbell {
                p: b - 1,
                q: 1,
                d: n - b + 1,
            });
            for k in 3..=b {
                let rec = found(catalog.search(&ExtremalQuery::by_leaves(b, n, k), tol)?)?;
                let predicted = rational(1, 1);
                let value_ok = agrees(rec.value, &predicted, tol);
                let has_barbell = rec.attainers.contains(&barbell);
                let note = if has_barbell {
                    format!("B({},1,{}) attains", b - 1, n - b + 1)
                } else {
                    format!("B({},1,{}) missing from attainers", b - 1, n - b + 1)
                };
                rows.push(CheckRow {
                    mode: "leaves",
                    param: b,
                    n,
                    k,
                    max_value: Some(rec.value),
                    predicted: Some(predicted),
                    status: if value_ok && has_barbell {
                        RowStatus::Match
                    } else {
                        RowStatus::Mismatch
                    },
                    attainers: rec.attainers,
                    note,
                });
            }
        }
    }
    Ok(TheoremReport {
        name: "sigmak-max-by-leaves",
        rows,
        findings: Vec::new(),
    })
}

/// Diameter bound `sigma_2 <= 2/D`, the even and `D = 3` maxima, and the
/// even-diameter attainer characterization.
pub fn verify_diameter_theorem(n_max: usize, tol: f64) -> Result<TheoremReport, EnumerationError> {
    if n_max > MAX_ORDER_SECONDARY {
        return Err(EnumerationError::OrderOutOfRange {
            n: n_max,
            max: MAX_ORDER_SECONDARY,
        });
    }
    check_diameter(&CatalogSet::build(n_max)?, n_max, tol)
}

pub fn check_diameter(
    catalogs: &CatalogSet,
    n_max: usize,
    tol: f64,
) -> Result<TheoremReport, EnumerationError> {
    catalogs.require(n_max, MAX_ORDER_SECONDARY)?;
    let mut rows = Vec::new();
    let mut findings = Vec::new();

    // P2 has empty interior, so the map is L(P2) with eigenvalues {0, 2}.
    let p2 = &catalogs.get(2).records()[0];
    rows.push(CheckRow {
        mode: "diameter",
        param: 1,
        n: 2,
        k: 2,
        max_value: p2.spectrum.sigma(2),
        predicted: Some(rational(1, 1)),
        status: RowStatus::Flagged,
        attainers: alloc::vec![p2.code.clone()],
        note: String::from(
            "definitional discrepancy: stated maximum 1, operator on P2 (no interior) gives 2; excluded",
        ),
    });

    for n in 3..=n_max {
        let catalog = catalogs.get(n);
        for d in 2..n {
            let rec = found(catalog.search(&ExtremalQuery::by_diameter(d, n, 2), tol)?)?;
            let bound = 2.0 / d as f64;
            let mut ok = rec.value <= bound + tol;
            let mut notes = Vec::new();
            if !ok {
                notes.push(format!("exceeds 2/D by {:.3e}", rec.value - bound));
            }
            let predicted = sigma2_max_by_diameter(d, n);
            let mut status_if_ok = RowStatus::Match;
            match predicted {
                Some(p) if d % 2 == 0 => {
                    ok &= agrees(rec.value, &p, tol);
                    let class: Vec<_> = catalog
                        .records()
                        .iter()
                        .filter(|r| r.diameter == d)
                        .collect();
                    let mut predicate_codes = Vec::new();
                    for r in &class {
                        if r.tree.attains_even_diameter_bound() == Ok(true) {
                            predicate_codes.push(r.code.clone());
                            let s2 = r.spectrum.sigma(2).unwrap_or(f64::NAN);
                            if !(fabs(s2 - p.to_f64()) <= tol) {
                                ok = false;
                                notes.push(format!(
                                    "predicate-true tree {} has sigma_2 {s2}",
                                    r.code
                                ));
                            }
                        }
                    }
                    if predicate_codes == rec.attainers {
                        notes.push(format!(
                            "attainers = predicate set ({})",
                            predicate_codes.len()
                        ));
                    } else {
                        let msg = format!(
                            "D={d}, n={n}: {} attainers vs {} predicate-true trees",
                            rec.attainers.len(),
                            predicate_codes.len()
                        );
                        notes.push(msg.clone());
                        findings.push(msg);
                    }
                }
                Some(p) => {
                    ok &= agrees(rec.value, &p, tol);
                    let barbell = family_code(FamilyDescriptor::Barbell {
                        p: 1,
                        q: n - 3,
                        d: 3,
                    });
                    if rec.attainers.contains(&barbell) {
                        notes.push(format!("B(1,{},3) attains", n - 3));
                    } else {
                        ok = false;
                        notes.push(format!("B(1,{},3) missing from attainers", n - 3));
                    }
                }
                None => {
                    status_if_ok = RowStatus::Reported;
                    notes.push(String::from("odd D >= 5: bound only"));
                }
            }
            rows.push(CheckRow {
                mode: "diameter",
                param: d,
                n,
                k: 2,
                max_value: Some(rec.value),
                predicted,
                status: if ok {
                    status_if_ok
                } else {
                    RowStatus::Mismatch
                },
                attainers: rec.attainers,
                note: notes.join("; "),
            });
        }
    }
    Ok(TheoremReport {
        name: "sigma2-max-by-diameter",
        rows,
        findings,
    })
}

#[derive(Debug, Clone)]
pub struct ConjectureRow {
    pub diameter: usize,
    pub n: usize,
    pub maximum: f64,
    /// `C^-(r, n - 2r - 2, 1)` when `n - 2r - 2 >= 2`.
    pub conjectured: Option<f64>,
    /// `C^-(r, n - 2r, 1)`: the seesaw with unit side arms on exactly `n` vertices.
    pub same_order_seesaw: f64,
    /// Whether `AS(r, n - 2r, 1)` is among the attainers.
    pub seesaw_attains: bool,
    pub attainers: Vec<CanonicalCode>,
    /// Every attainer's recomputed `sigma_2` reproduces `maximum`.
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.consistent)
    }

    pub fn to_check_rows(&self) -> Vec<CheckRow> {
        self.rows
            .iter()
            .map(|row| {
                let r = (row.diameter - 1) / 2;
                let predicted = (row.n >= 2 * r + 4).then_some(ClosedFormValue::SeesawMinus {
                    r,
                    b: row.n - 2 * r - 2,
                    c: 1,
                });
                let note = format!(
                    "{}; AS({r},{},1) value {:.12} attains: {}",
                    match row.conjectured {
                        Some(v) => format!("difference {:.3e}", row.maximum - v),
                        None => String::from("not applicable (n - 2r - 2 < 2)"),
                    },
                    row.n - 2 * r,
                    row.same_order_seesaw,
                    row.seesaw_attains
                );
                CheckRow {
                    mode: "conjecture",
                    param: row.diameter,
                    n: row.n,
                    k: 2,
                    max_value: Some(row.maximum),
                    predicted,
                    status: if row.consistent {
                        RowStatus::Reported
                    } else {
                        RowStatus::Mismatch
                    },
                    attainers: row.attainers.clone(),
                    note,
                }
            })
            .collect()
    }
}

/// Odd-diameter maxima next to the conjectured seesaw values. Never
/// asserts the conjecture; only attainer consistency can fail.
pub fn explore_conjecture(n_max: usize, tol: f64) -> Result<ConjectureReport, EnumerationError> {
    if n_max > MAX_ORDER_SECONDARY {
        return Err(EnumerationError::OrderOutOfRange {
            n: n_max,
            max: MAX_ORDER_SECONDARY,
        });
    }
    conjecture_rows(&CatalogSet::build(n_max)?, n_max, tol)
}

pub fn conjecture_rows(
    catalogs: &CatalogSet,
    n_max: usize,
    tol: f64,
) -> Result<ConjectureReport, EnumerationError> {
    catalogs.require(n_max, MAX_ORDER_SECONDARY)?;
    let mut rows = Vec::new();
    let mut d = 5;
    while d < n_max {
        let r = (d - 1) / 2;
        for n in d + 1..=n_max {
            let rec = found(
                catalogs
                    .get(n)
                    .search(&ExtremalQuery::by_diameter(d, n, 2), tol)?,
            )?;
            let consistent = rec.attainer_trees.iter().try_fold(true, |acc, t| {
                let s = steklov_spectrum(t.graph())?.sigma(2).unwrap_or(f64::NAN);
                Ok::<_, EnumerationError>(acc && fabs(s - rec.value) <= tol)
            })?;
            let literal_b = n - 2 * r - 2;
            let same_b = n - 2 * r;
            let seesaw = FamilyDescriptor::AlmostSeesaw { r, b: same_b, c: 1 };
            let same_order_seesaw = predicted_spectrum(&seesaw)
                .expect("valid seesaw")
                .sigma(2)
                .expect("two leaves at least")
                .to_f64();
            rows.push(ConjectureRow {
                diameter: d,
                n,
                maximum: rec.value,
                conjectured: (literal_b >= 2)
                    .then(|| crate::families::seesaw_root(r, literal_b, 1, false)),
                same_order_seesaw,
                seesaw_attains: rec.attainers.contains(&family_code(seesaw)),
                attainers: rec.attainers,
                consistent,
            });
        }
        d += 2;
    }
    Ok(ConjectureReport { rows })
}

/// Outcome of a randomized or grid-driven property suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub comparisons: usize,
    pub violations: Vec<String>,
    /// Failures of checks that are reported but never gate.
    pub advisory: Vec<String>,
    /// Largest observed slack violation (negative when every check has room).
    pub max_excess: f64,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            comparisons: 0,
            violations: Vec::new(),
            advisory: Vec::new(),
            max_excess: f64::NEG_INFINITY,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `sigma_i(T) <= sigma_i(T')` for random trees `T` and random subtrees `T'`.
pub fn monotonicity_property_test<R: Rng + ?Sized>(
    trials: usize,
    n_max: usize,
    tol: f64,
    rng: &mut R,
) -> Result<SuiteReport, SpectralError> {
    let mut report = SuiteReport::new("subtree-monotonicity");
    for _ in 0..trials {
        let n = rng.gen_range(2..=n_max.max(2));
        let tree = random_tree(n, rng);
        let keep = random_subtree_vertices(&tree, rng);
        let (sub, _) = tree
            .subtree(&keep)
            .expect("pruning keeps a connected subtree");
        let big = steklov_spectrum(tree.graph())?;
        let small = steklov_spectrum(sub.graph())?;
        report.cases += 1;
        for i in 1..=small.len() {
            let excess = big.sigma(i).unwrap_or(f64::NAN) - small.sigma(i).unwrap_or(f64::NAN);
            report.comparisons += 1;
            report.max_excess = report.max_excess.max(excess);
            if !(excess <= tol) {
                report.violations.push(format!(
                    "tree {:?} subtree {:?}: sigma_{i} exceeds by {excess:e}",
                    tree.edges(),
                    keep
                ));
            }
        }
    }
    Ok(report)
}

/// `sigma_k <= d_k` on random connected graphs with independent boundary.
pub fn degree_bound_property_test<R: Rng + ?Sized>(
    trials: usize,
    n_max: usize,
    tol: f64,
    rng: &mut R,
) -> Result<SuiteReport, SpectralError> {
    let mut report = SuiteReport::new("boundary-degree-bound");
    for _ in 0..trials {
        let n = rng.gen_range(2..=n_max.max(2));
        let density = rng.gen_range(0.0..0.6);
        let graph = random_graph_with_independent_boundary(n, density, rng);
        let excess = degree_bound_excess(&graph)?;
        report.cases += 1;
        report.comparisons += graph.boundary().len();
        report.max_excess = report.max_excess.max(excess);
        if !(excess <= tol) {
            report.violations.push(format!(
                "graph {:?} boundary {:?}: sigma_k - d_k = {excess:e}",
                graph.edges(),
                graph.boundary()
            ));
        }
    }
    Ok(report)
}

/// Deformation parameters at which the limit behaviour is sampled.
pub const LIMIT_RADII: [f64; 3] = [10.0, 100.0, 1000.0];
/// Required accuracy of `mu_k` against `sigma_k` at the largest radius.
pub const LIMIT_ACCURACY: f64 = 1e-3;
/// `mu_{|B|+1}` must exceed this at the largest radius.
pub const LIMIT_DIVERGENCE_FLOOR: f64 = 100.0;
/// Errors below this are round-off; a later error may sit anywhere under it.
pub const LIMIT_NOISE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct LimitRow {
    pub code: CanonicalCode,
    /// `errors[k - 1][j]` is `|mu_k - sigma_k|` at `LIMIT_RADII[j]`.
    pub errors: Vec<[f64; 3]>,
    pub first_divergent: f64,
    pub passed: bool,
}

/// The first 20 trees of the enumeration, in order of vertex count.
pub fn limit_test_trees() -> Vec<Tree> {
    (3..=8)
        .flat_map(|n| enumerate_trees(n).expect("supported order"))
        .take(20)
        .collect()
}

/// Eigenvalues of `D L D` approach the Steklov eigenvalues as the interior
/// weight grows, and the remaining ones blow up.
pub fn deformation_limit_check(trees: &[Tree]) -> Result<Vec<LimitRow>, SpectralError> {
    trees
        .iter()
        .map(|tree| {
            let g = tree.graph();
            let sigma = steklov_spectrum(g)?;
            let b = sigma.len();
            let mut errors = alloc::vec![[0.0; 3]; b];
            let mut first_divergent = f64::INFINITY;
            for (j, &r) in LIMIT_RADII.iter().enumerate() {
                let mu = deformed_spectrum(g, r)?;
                for k in 0..b {
                    errors[k][j] = fabs(mu.values()[k] - sigma.values()[k]);
                }
                if j == LIMIT_RADII.len() - 1 {
                    first_divergent = mu.sigma(b + 1).unwrap_or(f64::INFINITY);
                }
            }
            let converging = errors.iter().all(|e| {
                e.windows(2)
                    .all(|w| w[1] <= w[0] || w[1] <= LIMIT_NOISE_FLOOR)
                    && e[2] < LIMIT_ACCURACY
            });
            Ok(LimitRow {
                code: canonical_code(tree),
                errors,
                first_divergent,
                passed: converging && first_divergent > LIMIT_DIVERGENCE_FLOOR,
            })
        })
        .collect()
}

/// The parameter grids the closed forms are checked on.
pub fn family_grid() -> Vec<FamilyDescriptor> {
    let mut grid = Vec::new();
    for b in 2..=8 {
        for r in 1..=8 {
            grid.push(FamilyDescriptor::AlmostFork { b, r });
        }
    }
    for b1 in 1..=5 {
        for b2 in 1..=5 {
            for r in 1..=6 {
                grid.push(FamilyDescriptor::Crab { b1, b2, r });
            }
        }
    }
    for p in 1..=6 {
        for q in 1..=6 {
            for d in 2..=10 {
                grid.push(FamilyDescriptor::Barbell { p, q, d });
            }
        }
    }
    for b in 2..=6 {
        for r in 1..=6 {
            for c in 1..=r {
                grid.push(FamilyDescriptor::AlmostSeesaw { r, b, c });
            }
        }
    }
    grid
}

/// Numeric spectra against closed forms, entrywise.
pub fn verify_family_spectra(
    grid: &[FamilyDescriptor],
    tol: f64,
) -> Result<SuiteReport, FamilyError> {
    let mut report = SuiteReport::new("family-spectra");
    for d in grid {
        let fam = make_family(d)?;
        let predicted = predicted_spectrum(d)?;
        let numeric =
            steklov_spectrum(fam.tree.graph()).map_err(|_| FamilyError::InvalidParameters {
                family: "grid",
                reason: "eigensolver failed",
            })?;
        report.cases += 1;
        report.comparisons += numeric.len();
        match numeric.max_deviation(&predicted.expanded()) {
            Some(dev) => {
                report.max_excess = report.max_excess.max(dev);
                if !(dev <= tol) {
                    report.violations.push(format!("{d}: deviation {dev:e}"));
                }
            }
            None => report.violations.push(format!(
                "{d}: {} eigenvalues, closed form has {}",
                numeric.len(),
                predicted.total_multiplicity()
            )),
        }
    }
    Ok(report)
}

/// Residuals of every explicit eigenfunction; advisory claims are listed
/// separately and never fail the suite.
pub fn verify_family_eigenfunctions(grid: &[FamilyDescriptor]) -> Result<SuiteReport, FamilyError> {
    let mut report = SuiteReport::new("family-eigenfunctions");
    for d in grid {
        let fam = make_family(d)?;
        report.cases += 1;
        for claim in fam.eigenfunctions() {
            let res = verify_eigenpair(fam.tree.graph(), &claim)
                .expect("claims are defined on every vertex");
            let rel = res.interior.max(res.boundary) / res.scale;
            let line = format!("{d} {}: relative residual {rel:e}", claim.label);
            if claim.advisory {
                if !res.verified() {
                    report.advisory.push(line);
                }
                continue;
            }
            report.comparisons += 1;
            report.max_excess = report.max_excess.max(rel);
            if !res.verified() {
                report.violations.push(line);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EIGEN_TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_theorem_runs_pass() {
        let set = CatalogSet::build(9).unwrap();
        let s2 = check_sigma2max(&set, 9, EIGEN_TOL).unwrap();
        assert!(s2.passed(), "{:?}", s2.mismatches().collect::<Vec<_>>());
        let sk = check_sigmakmax(&set, 9, EIGEN_TOL).unwrap();
        assert!(sk.passed());
        let dia = check_diameter(&set, 7, EIGEN_TOL).unwrap();
        assert!(dia.passed(), "{:?}", dia.mismatches().collect::<Vec<_>>());
        assert_eq!(dia.rows[0].status, RowStatus::Flagged);
    }

    #[test]
    fn midpoint_predicate_is_not_sufficient() {
        // Spider with legs 2, 2 and a cherry at distance one from the centre:
        // one diametral path sees all branching at its midpoint, sigma_2 = 2/5.
        let t =
            Tree::from_edges(&[(0, 1), (0, 4), (0, 6), (1, 2), (1, 3), (4, 5), (6, 7)]).unwrap();
        assert_eq!(t.diameter(), 4);
        assert_eq!(t.attains_even_diameter_bound(), Ok(true));
        let s2 = steklov_spectrum(t.graph()).unwrap().sigma(2).unwrap();
        assert!((s2 - 0.4).abs() < 1e-12);

        let set = CatalogSet::build(8).unwrap();
        let dia = check_diameter(&set, 8, EIGEN_TOL).unwrap();
        let bad: Vec<_> = dia.mismatches().map(|r| (r.param, r.n)).collect();
        assert_eq!(bad, [(4, 8)]);
    }

    #[test]
    fn theorem_rows_for_named_cases() {
        let set = CatalogSet::build(7).unwrap();
        let s2 = check_sigma2max(&set, 7, EIGEN_TOL).unwrap();
        let row = s2.rows.iter().find(|r| r.param == 3 && r.n == 7).unwrap();
        assert!((row.max_value.unwrap() - 0.5).abs() < 1e-12);
        let row = s2.rows.iter().find(|r| r.param == 4 && r.n == 6).unwrap();
        assert!((row.max_value.unwrap() - 4.0 / 7.0).abs() < 1e-12);
        let row = s2.rows.iter().find(|r| r.param == 2 && r.n == 5).unwrap();
        assert!((row.max_value.unwrap() - 0.5).abs() < 1e-12);

        let dia = check_diameter(&set, 7, EIGEN_TOL).unwrap();
        let get = |d: usize, n: usize| {
            dia.rows
                .iter()
                .find(|r| r.param == d && r.n == n)
                .unwrap()
                .max_value
                .unwrap()
        };
        assert!((get(4, 7) - 0.5).abs() < 1e-12);
        assert!((get(3, 5) - 0.6).abs() < 1e-12);
        assert!((get(2, 5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn range_checks() {
        assert!(verify_sigmakmax_theorem(17, EIGEN_TOL).is_err());
        assert!(CatalogSet::build(19).is_err());
        let set = CatalogSet::build(5).unwrap();
        assert!(check_sigma2max(&set, 6, EIGEN_TOL).is_err());
    }

    #[test]
    fn conjecture_rows_include_not_applicable() {
        let report = explore_conjecture(8, EIGEN_TOL).unwrap();
        assert!(report.consistent());
        let n6 = report
            .rows
            .iter()
            .find(|r| r.diameter == 5 && r.n == 6)
            .unwrap();
        assert!(n6.conjectured.is_none());
        let n8 = report
            .rows
            .iter()
            .find(|r| r.diameter == 5 && r.n == 8)
            .unwrap();
        let c = crate::families::seesaw_root(2, 2, 1, false);
        assert!((n8.conjectured.unwrap() - c).abs() < 1e-15);
        let n7 = report
            .rows
            .iter()
            .find(|r| r.diameter == 5 && r.n == 7)
            .unwrap();
        assert!((n7.same_order_seesaw - (12.0 - 12f64.sqrt()) / 22.0).abs() < 1e-12);
    }

    #[test]
    fn property_suites_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!(monotonicity_property_test(50, 8, EIGEN_TOL, &mut rng)
            .unwrap()
            .passed());
        assert!(degree_bound_property_test(50, 8, EIGEN_TOL, &mut rng)
            .unwrap()
            .passed());
    }

    #[test]
    fn limit_trees() {
        let trees = limit_test_trees();
        assert_eq!(trees.len(), 20);
        assert!(trees.iter().all(|t| t.order() <= 8));
        let rows = deformation_limit_check(&trees[..3]).unwrap();
        assert!(rows.iter().all(|r| r.passed));
    }
}
