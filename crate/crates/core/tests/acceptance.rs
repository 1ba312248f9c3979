//! Acceptance run: one line per criterion.
//!
//! Criterion 5 is a known failure (the midpoint-branch predicate is not
//! sufficient); it is reported as FAIL and must keep failing until the
//! predicate changes.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steklov::enumeration::{agrees, sigma2_max_by_leaves, ExtremalQuery, SearchOutcome};
use steklov::families::{make_family, ClosedFormValue, FamilyDescriptor, Rational};
use steklov::verify::{
    check_diameter, check_sigma2max, check_sigmakmax, conjecture_rows, deformation_limit_check,
    degree_bound_property_test, family_grid, limit_test_trees, monotonicity_property_test,
    verify_family_eigenfunctions, verify_family_spectra, CatalogSet, RowStatus,
};
use steklov::{canonical_code, steklov_spectrum};

const TOL: f64 = 1e-9;
const N_MAX: usize = 14;
const EXPECTED_FAILURES: &[usize] = &[5];

struct Outcome {
    id: usize,
    pass: bool,
    detail: String,
}

fn c1(grid: &[FamilyDescriptor]) -> Outcome {
    let r = verify_family_spectra(grid, TOL).expect("grid is valid");
    Outcome {
        id: 1,
        pass: r.passed(),
        detail: format!(
            "{} families, max deviation {:.2e}, {} violations",
            r.cases,
            r.max_excess,
            r.violations.len()
        ),
    }
}

fn c2(grid: &[FamilyDescriptor]) -> Outcome {
    let r = verify_family_eigenfunctions(grid).expect("grid is valid");
    Outcome {
        id: 2,
        pass: r.passed() && r.comparisons > 0,
        detail: format!(
            "{} eigenfunctions, max relative residual {:.2e}, {} violations, {} advisory failures (barbell f_2 as printed)",
            r.comparisons,
            r.max_excess,
            r.violations.len(),
            r.advisory.len()
        ),
    }
}

fn c3(set: &CatalogSet) -> Outcome {
    let r = check_sigma2max(set, N_MAX, TOL).unwrap();
    // Independent recomputation of the class maximum straight from the catalog.
    let mut direct_ok = true;
    for n in 3..=N_MAX {
        for b in 2..n {
            let max = set
                .get(n)
                .records()
                .iter()
                .filter(|t| t.leaf_count == b)
                .map(|t| t.spectrum.sigma(2).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            direct_ok &= agrees(max, &sigma2_max_by_leaves(b, n).unwrap(), TOL);
        }
    }
    let bad = r.mismatches().count();
    Outcome {
        id: 3,
        pass: r.passed() && direct_ok,
        detail: format!("{} (b, n) classes, {bad} mismatches", r.rows.len()),
    }
}

fn c4(set: &CatalogSet) -> Outcome {
    let r = check_sigmakmax(set, N_MAX, TOL).unwrap();
    Outcome {
        id: 4,
        pass: r.passed(),
        detail: format!(
            "{} (b, n, k) cases, {} mismatches",
            r.rows.len(),
            r.mismatches().count()
        ),
    }
}

fn c5(set: &CatalogSet) -> Outcome {
    let mut bound = 0usize;
    for n in 2..=N_MAX {
        for t in set.get(n).records() {
            if t.spectrum.sigma(2).unwrap() > 2.0 / t.diameter as f64 + TOL {
                bound += 1;
            }
        }
    }
    let mut even_value = 0usize;
    let mut d3 = 0usize;
    let mut insufficient = Vec::new();
    for n in 3..=N_MAX {
        let cat = set.get(n);
        for d in 2..n {
            let rec = match cat
                .search(&ExtremalQuery::by_diameter(d, n, 2), TOL)
                .unwrap()
            {
                SearchOutcome::Found(r) => r,
                SearchOutcome::EmptyClass(_) => continue,
            };
            if d % 2 == 0 {
                let target = ClosedFormValue::Rational(Rational::new(2, d as i64));
                even_value += usize::from(!agrees(rec.value, &target, TOL));
                for t in cat.records().iter().filter(|t| t.diameter == d) {
                    if t.tree.attains_even_diameter_bound() == Ok(true)
                        && !agrees(t.spectrum.sigma(2).unwrap(), &target, TOL)
                    {
                        insufficient.push((n, d, t.code.to_hex()));
                    }
                }
            } else if d == 3 {
                let target =
                    ClosedFormValue::Rational(Rational::new(n as i64 - 2, 2 * n as i64 - 5));
                let barbell = make_family(&FamilyDescriptor::Barbell {
                    p: 1,
                    q: n - 3,
                    d: 3,
                })
                .unwrap();
                if !agrees(rec.value, &target, TOL)
                    || !rec.attainers.contains(&canonical_code(&barbell.tree))
                {
                    d3 += 1;
                }
            }
        }
    }
    let report = check_diameter(set, N_MAX, TOL).unwrap();
    let first = insufficient
        .first()
        .map(|(n, d, c)| format!(", first n={n} D={d} tree {c}"))
        .unwrap_or_default();
    Outcome {
        id: 5,
        pass: bound == 0 && even_value == 0 && d3 == 0 && insufficient.is_empty(),
        detail: format!(
            "bound violations {bound}, even-D maximum mismatches {even_value}, D=3 mismatches {d3}, \
             attainer/predicate set findings {}, predicate-true trees below 1/r {}{first}",
            report.findings.len(),
            insufficient.len()
        ),
    }
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let r = monotonicity_property_test(1000, 12, TOL, &mut rng).unwrap();
    Outcome {
        id: 6,
        pass: r.passed() && r.cases == 1000,
        detail: format!(
            "{} pairs, {} comparisons, {} violations",
            r.cases,
            r.comparisons,
            r.violations.len()
        ),
    }
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let r = degree_bound_property_test(500, 12, TOL, &mut rng).unwrap();
    Outcome {
        id: 7,
        pass: r.passed() && r.cases == 500,
        detail: format!(
            "{} graphs, max sigma_k - d_k {:.3}, {} violations",
            r.cases,
            r.max_excess,
            r.violations.len()
        ),
    }
}

fn c8() -> Outcome {
    let trees = limit_test_trees();
    let rows = deformation_limit_check(&trees).unwrap();
    let worst = rows
        .iter()
        .flat_map(|r| r.errors.iter().map(|e| e[2]))
        .fold(0.0, f64::max);
    let min_div = rows
        .iter()
        .map(|r| r.first_divergent)
        .fold(f64::INFINITY, f64::min);
    Outcome {
        id: 8,
        pass: rows.len() == 20 && rows.iter().all(|r| r.passed),
        detail: format!(
            "{} trees, max error at r=1e3 {worst:.2e}, min mu_(|B|+1) {min_div:.1}, {} failing",
            rows.len(),
            rows.iter().filter(|r| !r.passed).count()
        ),
    }
}

fn c9(set: &CatalogSet) -> Outcome {
    let report = conjecture_rows(set, N_MAX, TOL).unwrap();
    let rows: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.diameter == 5 || r.diameter == 7)
        .collect();
    let applicable = rows.iter().filter(|r| r.conjectured.is_some()).count();
    let equal = rows
        .iter()
        .filter(|r| r.conjectured.is_some_and(|c| (c - r.maximum).abs() <= TOL))
        .count();
    let expected_rows = (6..=N_MAX).count() + (8..=N_MAX).count();
    Outcome {
        id: 9,
        pass: rows.len() == expected_rows && rows.iter().all(|r| r.consistent),
        detail: format!(
            "{} (D, n) rows, {applicable} with C-(r, n-2r-2, 1) defined, {equal} equal to the maximum (reported only), all attainers consistent: {}",
            rows.len(),
            rows.iter().all(|r| r.consistent)
        ),
    }
}

fn c10(set: &CatalogSet) -> Outcome {
    let report = check_diameter(set, N_MAX, TOL).unwrap();
    let flagged: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.status == RowStatus::Flagged)
        .collect();
    let ok = flagged.len() == 1
        && flagged[0].n == 2
        && flagged[0].param == 1
        && flagged[0].max_value.is_some_and(|v| (v - 2.0).abs() <= TOL)
        && flagged[0].predicted == Some(ClosedFormValue::Rational(Rational::new(1, 1)));
    Outcome {
        id: 10,
        pass: ok,
        detail: format!(
            "P2 row flagged: {}",
            flagged
                .first()
                .map(|r| r.note.as_str())
                .unwrap_or("missing")
        ),
    }
}

fn main() -> ExitCode {
    // The sanity check below keeps the harness honest about P2 itself.
    let p2 = steklov::Tree::from_edges(&[(0, 1)]).unwrap();
    assert_eq!(steklov_spectrum(p2.graph()).unwrap().values().len(), 2);

    let start = Instant::now();
    let grid = family_grid();
    let set = CatalogSet::build(N_MAX).expect("catalogs up to 14");
    let outcomes = vec![
        c1(&grid),
        c2(&grid),
        c3(&set),
        c4(&set),
        c5(&set),
        c6(),
        c7(),
        c8(),
        c9(&set),
        c10(&set),
    ];
    let mut unexpected = 0;
    for o in &outcomes {
        let expected_fail = EXPECTED_FAILURES.contains(&o.id);
        let tag = match (o.pass, expected_fail) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known, see notes)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected; update EXPECTED_FAILURES)",
        };
        if o.pass == expected_fail {
            unexpected += 1;
        }
        println!("criterion {:>2}: {tag}: {}", o.id, o.detail);
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
