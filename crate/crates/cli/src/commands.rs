use std::fs;
use std::path::Path;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use steklov::enumeration::{
    extremal_search, ExtremalQuery, ExtremalRecord, QueryMode, SearchOutcome, MAX_ORDER,
};
use steklov::families::{make_family, predicted_spectrum, FamilyDescriptor};
use steklov::spectral::{dtn_matrix, verify_eigenpair};
use steklov::verify::{
    check_diameter, check_sigma2max, check_sigmakmax, conjecture_rows, deformation_limit_check,
    degree_bound_property_test, family_grid, limit_test_trees, monotonicity_property_test,
    verify_family_eigenfunctions, verify_family_spectra, CatalogSet, CheckRow, SuiteReport,
    TheoremReport, MAX_ORDER_SECONDARY,
};
use steklov::{canonical_code, steklov_spectrum, SymmetricSpectrum, Tree};

use crate::edgelist::write_edge_list;
use crate::report::{closed_form_json, exact, num, num_json, Report, Table};
use crate::CliError;

/// Largest tree order accepted by the randomized suites.
pub const MAX_RANDOM_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    All,
    Sigma2,
    Sigmak,
    Diameter,
    Families,
}

fn edges_json(tree: &Tree) -> Value {
    json!(tree
        .edges()
        .iter()
        .map(|&(u, v)| [u, v])
        .collect::<Vec<_>>())
}

fn values_json(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|&x| num_json(x)).collect())
}

fn multiplicities_json(s: &SymmetricSpectrum) -> Value {
    Value::Array(
        s.multiplicities()
            .into_iter()
            .map(|(v, m)| json!({ "value": num_json(v), "multiplicity": m }))
            .collect(),
    )
}

pub fn spectrum(
    tree: &Tree,
    source: &str,
    tol: f64,
    verbose: bool,
    matrix: bool,
) -> Result<Report, CliError> {
    let g = tree.graph();
    let spectrum = steklov_spectrum(g).map_err(CliError::numeric)?;
    let spectrum = SymmetricSpectrum::new(spectrum.values().to_vec(), tol);
    let code = canonical_code(tree);
    let diameter = tree.diameter();

    let mut table = Table::new(vec!["k", "sigma_k"]);
    for (i, &x) in spectrum.values().iter().enumerate() {
        table.push(vec![(i + 1).to_string(), num(x)]);
    }
    let mut report = Report::new("spectrum", tol, table);
    report.set("input", json!(source));
    report.set("n", json!(tree.order()));
    report.set("b", json!(g.boundary().len()));
    report.set("boundary", json!(g.boundary()));
    report.set("diameter", json!(diameter));
    report.set("canonical_code", json!(code.to_hex()));
    report.set("eigenvalues", values_json(spectrum.values()));
    report.set("multiplicities", multiplicities_json(&spectrum));
    report.summary.push(format!(
        "n = {}, |B| = {}, diameter {diameter}, code {code}",
        tree.order(),
        g.boundary().len()
    ));

    if verbose {
        let paths = tree.all_diametral_paths();
        report.set("diametral_paths", json!(paths));
        report
            .summary
            .push(format!("{} diametral paths", paths.len()));
        if diameter % 2 == 0 {
            let witnesses = tree.even_bound_witnesses().map_err(CliError::numeric)?;
            let any = witnesses.iter().any(|(_, ok)| *ok);
            report.set(
                "even_bound_predicate",
                json!({
                    "exists": any,
                    "per_path": witnesses
                        .iter()
                        .map(|(p, ok)| json!({ "path": p, "holds": ok }))
                        .collect::<Vec<_>>(),
                }),
            );
            report.summary.push(format!(
                "midpoint-branch predicate: {any} ({} of {} paths)",
                witnesses.iter().filter(|(_, ok)| *ok).count(),
                witnesses.len()
            ));
        }
    }
    if matrix {
        let m = dtn_matrix(g).map_err(CliError::numeric)?;
        let rows: Vec<Value> = (0..m.dim()).map(|i| values_json(m.row(i))).collect();
        report.set("dtn_matrix", Value::Array(rows));
        report
            .summary
            .push(String::from("Dirichlet-to-Neumann matrix:"));
        report
            .summary
            .extend(m.to_text().lines().map(str::to_string));
    }
    Ok(report)
}

pub fn family(
    descriptor: &str,
    edges_out: Option<&Path>,
    tol: f64,
    verbose: bool,
) -> Result<Report, CliError> {
    let d: FamilyDescriptor = descriptor.trim().parse()?;
    let fam = make_family(&d)?;
    let predicted = predicted_spectrum(&d)?;
    let numeric = steklov_spectrum(fam.tree.graph()).map_err(CliError::numeric)?;
    let deviation = numeric.max_deviation(&predicted.expanded());
    let matches = deviation.is_some_and(|x| x <= tol);

    let mut table = Table::new(vec!["k", "numeric", "predicted", "exact", "match"]);
    let mut predicted_json = Vec::new();
    for (i, &x) in numeric.values().iter().enumerate() {
        let p = predicted.sigma(i + 1);
        let (pv, pe) = match &p {
            Some(v) => (num(v.to_f64()), exact(v).unwrap_or_else(|| v.to_string())),
            None => (String::new(), String::new()),
        };
        let ok = p.is_some_and(|v| (v.to_f64() - x).abs() <= tol);
        table.push(vec![(i + 1).to_string(), num(x), pv, pe, ok.to_string()]);
        if let Some(v) = &p {
            predicted_json.push(closed_form_json(v));
        }
    }

    let mut claims = Vec::new();
    let (mut gated, mut gated_ok, mut advisory_failed) = (0, 0, 0);
    for claim in fam.eigenfunctions() {
        let res = verify_eigenpair(fam.tree.graph(), &claim).map_err(CliError::numeric)?;
        let relative = res.interior.max(res.boundary) / res.scale;
        if claim.advisory {
            advisory_failed += usize::from(!res.verified());
        } else {
            gated += 1;
            gated_ok += usize::from(res.verified());
        }
        claims.push(json!({
            "label": claim.label,
            "sigma": num_json(claim.sigma),
            "interior_residual": res.interior,
            "boundary_residual": res.boundary,
            "relative_residual": relative,
            "verified": res.verified(),
            "advisory": claim.advisory,
        }));
    }

    let mut report = Report::new("family", tol, table);
    report.failed = !matches || gated_ok != gated;
    report.set("family", json!(d.to_string()));
    report.set("n", json!(fam.tree.order()));
    report.set("b", json!(fam.tree.leaf_count()));
    report.set("canonical_code", json!(canonical_code(&fam.tree).to_hex()));
    report.set("edges", edges_json(&fam.tree));
    report.set("eigenvalues", values_json(numeric.values()));
    report.set("predicted", Value::Array(predicted_json));
    report.set("max_deviation", json!(deviation));
    report.set("match", json!(matches));
    report.set(
        "eigenfunctions",
        json!({ "verified": gated_ok, "gated": gated, "advisory_failures": advisory_failed }),
    );
    if verbose {
        report.set("eigenfunction_residuals", Value::Array(claims));
    }
    report.summary.push(format!(
        "{d}: n = {}, |B| = {}, max deviation {}",
        fam.tree.order(),
        fam.tree.leaf_count(),
        deviation.map_or_else(|| String::from("n/a"), |x| format!("{x:.3e}"))
    ));
    report.summary.push(format!(
        "eigenfunctions verified {gated_ok}/{gated}{}",
        if advisory_failed > 0 {
            format!(", {advisory_failed} advisory claim(s) fail as printed")
        } else {
            String::new()
        }
    ));

    if let Some(path) = edges_out {
        fs::write(path, write_edge_list(&fam.tree)).map_err(|e| CliError::io(path, e))?;
    }
    Ok(report)
}

const ROW_HEADERS: [&str; 10] = [
    "mode",
    "b_or_D",
    "n",
    "k",
    "max_value",
    "predicted_value",
    "match",
    "attainer_codes",
    "predicted_exact",
    "note",
];

fn codes(list: &[steklov::CanonicalCode]) -> String {
    list.iter()
        .map(|c| c.to_hex())
        .collect::<Vec<_>>()
        .join(";")
}

fn row_cells(row: &CheckRow) -> Vec<String> {
    vec![
        row.mode.to_string(),
        row.param.to_string(),
        row.n.to_string(),
        row.k.to_string(),
        row.max_value.map(num).unwrap_or_default(),
        row.predicted
            .as_ref()
            .map(|p| num(p.to_f64()))
            .unwrap_or_default(),
        row.status.as_str().to_string(),
        codes(&row.attainers),
        row.predicted
            .as_ref()
            .map(|p| exact(p).unwrap_or_else(|| p.to_string()))
            .unwrap_or_default(),
        row.note.clone(),
    ]
}

fn row_json(row: &CheckRow) -> Value {
    json!({
        "mode": row.mode,
        "b_or_D": row.param,
        "n": row.n,
        "k": row.k,
        "max_value": row.max_value.map(num_json),
        "predicted": row.predicted.as_ref().map(closed_form_json),
        "match": row.status.as_str(),
        "attainer_codes": row.attainers.iter().map(|c| c.to_hex()).collect::<Vec<_>>(),
        "note": row.note,
    })
}

fn record_json(rec: &ExtremalRecord) -> Value {
    json!({
        "value": num_json(rec.value),
        "predicted": rec.predicted.as_ref().map(closed_form_json),
        "attainers": rec
            .attainers
            .iter()
            .zip(&rec.attainer_trees)
            .map(|(c, t)| json!({ "code": c.to_hex(), "edges": edges_json(t) }))
            .collect::<Vec<_>>(),
    })
}

pub fn search(
    leaves: Option<usize>,
    diameter: Option<usize>,
    n: usize,
    k: usize,
    tol: f64,
    _verbose: bool,
) -> Result<Report, CliError> {
    let query = match (leaves, diameter) {
        (Some(b), None) => ExtremalQuery::by_leaves(b, n, k),
        (None, Some(d)) => ExtremalQuery::by_diameter(d, n, k),
        _ => {
            return Err(CliError::Usage(String::from(
                "give exactly one of --leaves, --diameter",
            )))
        }
    };
    if n > MAX_ORDER {
        return Err(CliError::NMax(format!("n = {n} exceeds {MAX_ORDER}")));
    }
    let (mode, param) = match query.mode {
        QueryMode::ByLeaves { b } => ("leaves", b),
        QueryMode::ByDiameter { d } => ("diameter", d),
    };
    let outcome = extremal_search(&query, tol)?;
    let mut table = Table::new(ROW_HEADERS[..9].to_vec());
    let mut report_json = json!({ "mode": mode, "b_or_D": param, "n": n, "k": k });
    let mut summary = Vec::new();
    match &outcome {
        SearchOutcome::EmptyClass(_) => {
            report_json["empty_class"] = json!(true);
            summary.push(format!("no tree on {n} vertices with {mode} = {param}"));
        }
        SearchOutcome::Found(rec) => {
            let matches = rec
                .predicted
                .as_ref()
                .map(|p| steklov::enumeration::agrees(rec.value, p, tol));
            table.push(vec![
                mode.to_string(),
                param.to_string(),
                n.to_string(),
                k.to_string(),
                num(rec.value),
                rec.predicted
                    .as_ref()
                    .map(|p| num(p.to_f64()))
                    .unwrap_or_default(),
                matches.map(|m| m.to_string()).unwrap_or_default(),
                codes(&rec.attainers),
                rec.predicted
                    .as_ref()
                    .map(|p| exact(p).unwrap_or_else(|| p.to_string()))
                    .unwrap_or_default(),
            ]);
            report_json["empty_class"] = json!(false);
            report_json["record"] = record_json(rec);
            report_json["match"] = json!(matches);
            summary.push(format!(
                "max sigma_{k} = {} over {mode} = {param}, n = {n}; {} attainer(s)",
                num(rec.value),
                rec.attainers.len()
            ));
            if let Some(p) = &rec.predicted {
                summary.push(format!("closed form {p} = {}", num(p.to_f64())));
            }
        }
    }
    let mut report = Report::new("search", tol, table);
    report.set("query", report_json);
    report.summary = summary;
    Ok(report)
}

fn suite_json(s: &SuiteReport, verbose: bool) -> Value {
    let mut v = json!({
        "name": s.name,
        "cases": s.cases,
        "comparisons": s.comparisons,
        "max_excess": s.max_excess,
        "violations": s.violations.len(),
        "advisory_failures": s.advisory.len(),
        "passed": s.passed(),
    });
    if verbose {
        v["violation_detail"] = json!(s.violations);
        v["advisory_detail"] = json!(s.advisory);
    }
    v
}

fn suite_line(s: &SuiteReport) -> String {
    format!(
        "{}: {} cases, {} checks, max excess {:.3e}, {} violations{} -> {}",
        s.name,
        s.cases,
        s.comparisons,
        s.max_excess,
        s.violations.len(),
        if s.advisory.is_empty() {
            String::new()
        } else {
            format!(", {} advisory failures", s.advisory.len())
        },
        if s.passed() { "pass" } else { "FAIL" }
    )
}

pub fn verify(n_max: usize, theorem: Theorem, tol: f64, verbose: bool) -> Result<Report, CliError> {
    let limit = match theorem {
        Theorem::Sigma2 => MAX_ORDER,
        _ => MAX_ORDER_SECONDARY,
    };
    if !(2..=limit).contains(&n_max) {
        return Err(CliError::NMax(format!(
            "--n-max {n_max} outside 2..={limit}"
        )));
    }
    let mut reports: Vec<TheoremReport> = Vec::new();
    if theorem != Theorem::Families {
        let set = CatalogSet::build(n_max)?;
        if matches!(theorem, Theorem::All | Theorem::Sigma2) {
            reports.push(check_sigma2max(&set, n_max, tol)?);
        }
        if matches!(theorem, Theorem::All | Theorem::Sigmak) {
            reports.push(check_sigmakmax(&set, n_max, tol)?);
        }
        if matches!(theorem, Theorem::All | Theorem::Diameter) {
            reports.push(check_diameter(&set, n_max, tol)?);
        }
    }
    let mut suites = Vec::new();
    if matches!(theorem, Theorem::All | Theorem::Families) {
        let grid = family_grid();
        suites.push(verify_family_spectra(&grid, tol)?);
        suites.push(verify_family_eigenfunctions(&grid)?);
    }

    let mut table = Table::new(ROW_HEADERS.to_vec());
    let mut theorems_json = Vec::new();
    let mut summary = Vec::new();
    for r in &reports {
        for row in &r.rows {
            table.push(row_cells(row));
        }
        let bad = r.mismatches().count();
        summary.push(format!(
            "{}: {} rows, {bad} mismatches, {} findings -> {}",
            r.name,
            r.rows.len(),
            r.findings.len(),
            if r.passed() { "pass" } else { "FAIL" }
        ));
        for row in r.mismatches() {
            summary.push(format!(
                "  mismatch {} {}={} n={}: {}",
                row.mode,
                if row.mode == "leaves" { "b" } else { "D" },
                row.param,
                row.n,
                row.note
            ));
        }
        if verbose {
            summary.extend(r.findings.iter().map(|f| format!("  finding: {f}")));
        }
        for row in r
            .rows
            .iter()
            .filter(|row| row.status == steklov::verify::RowStatus::Flagged)
        {
            summary.push(format!(
                "  flagged {}={} n={}: {}",
                row.mode, row.param, row.n, row.note
            ));
        }
        theorems_json.push(json!({
            "name": r.name,
            "passed": r.passed(),
            "mismatches": bad,
            "findings": r.findings,
            "rows": r.rows.iter().map(row_json).collect::<Vec<_>>(),
        }));
    }
    summary.extend(suites.iter().map(suite_line));

    let mut report = Report::new("verify", tol, table);
    report.failed = reports.iter().any(|r| !r.passed()) || suites.iter().any(|s| !s.passed());
    report.set("n_max", json!(n_max));
    report.set("theorems", Value::Array(theorems_json));
    report.set(
        "suites",
        Value::Array(suites.iter().map(|s| suite_json(s, verbose)).collect()),
    );
    report.summary = summary;
    Ok(report)
}

pub fn conjecture(n_max: usize, tol: f64) -> Result<Report, CliError> {
    if !(2..=MAX_ORDER_SECONDARY).contains(&n_max) {
        return Err(CliError::NMax(format!(
            "--n-max {n_max} outside 2..={MAX_ORDER_SECONDARY}"
        )));
    }
    let set = CatalogSet::build(n_max)?;
    let explored = conjecture_rows(&set, n_max, tol)?;
    let mut table = Table::new(vec![
        "D",
        "n",
        "max_value",
        "conjectured",
        "difference",
        "same_order_seesaw",
        "seesaw_attains",
        "consistent",
        "attainer_codes",
    ]);
    let mut rows_json = Vec::new();
    for row in &explored.rows {
        table.push(vec![
            row.diameter.to_string(),
            row.n.to_string(),
            num(row.maximum),
            row.conjectured.map(num).unwrap_or_default(),
            row.conjectured
                .map(|c| num(row.maximum - c))
                .unwrap_or_default(),
            num(row.same_order_seesaw),
            row.seesaw_attains.to_string(),
            row.consistent.to_string(),
            codes(&row.attainers),
        ]);
        rows_json.push(json!({
            "D": row.diameter,
            "n": row.n,
            "max_value": num_json(row.maximum),
            "conjectured": row.conjectured.map(num_json),
            "same_order_seesaw": num_json(row.same_order_seesaw),
            "seesaw_attains": row.seesaw_attains,
            "consistent": row.consistent,
            "attainer_codes": row.attainers.iter().map(|c| c.to_hex()).collect::<Vec<_>>(),
        }));
    }
    let mut report = Report::new("conjecture", tol, table);
    report.failed = !explored.consistent();
    report.set("n_max", json!(n_max));
    report.set("rows", Value::Array(rows_json));
    report.summary.push(String::from(
        "conjectured = C-(r, n-2r-2, 1) (blank when n-2r-2 < 2); same_order_seesaw = C-(r, n-2r, 1)",
    ));
    report.summary.push(format!(
        "{} rows; attainer recomputation consistent: {}",
        explored.rows.len(),
        explored.consistent()
    ));
    Ok(report)
}

pub fn properties(
    trials: usize,
    n_max: usize,
    seed: u64,
    tol: f64,
    verbose: bool,
) -> Result<Report, CliError> {
    if !(2..=MAX_RANDOM_ORDER).contains(&n_max) {
        return Err(CliError::NMax(format!(
            "--n-max {n_max} outside 2..={MAX_RANDOM_ORDER}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = [
        monotonicity_property_test(trials, n_max, tol, &mut rng).map_err(CliError::numeric)?,
        degree_bound_property_test(trials, n_max, tol, &mut rng).map_err(CliError::numeric)?,
    ];
    let limit = deformation_limit_check(&limit_test_trees()).map_err(CliError::numeric)?;
    let limit_ok = limit.iter().all(|r| r.passed);

    let mut table = Table::new(vec![
        "suite",
        "cases",
        "checks",
        "max_excess",
        "violations",
        "passed",
    ]);
    for s in &suites {
        table.push(vec![
            s.name.to_string(),
            s.cases.to_string(),
            s.comparisons.to_string(),
            format!("{:.3e}", s.max_excess),
            s.violations.len().to_string(),
            s.passed().to_string(),
        ]);
    }
    let worst = limit
        .iter()
        .flat_map(|r| r.errors.iter().map(|e| e[2]))
        .fold(0.0, f64::max);
    table.push(vec![
        String::from("deformation-limit"),
        limit.len().to_string(),
        limit
            .iter()
            .map(|r| r.errors.len())
            .sum::<usize>()
            .to_string(),
        format!("{worst:.3e}"),
        limit.iter().filter(|r| !r.passed).count().to_string(),
        limit_ok.to_string(),
    ]);

    let mut report = Report::new("properties", tol, table);
    report.failed = !limit_ok || suites.iter().any(|s| !s.passed());
    report.set("seed", json!(seed));
    report.set("trials", json!(trials));
    report.set("n_max", json!(n_max));
    report.set(
        "suites",
        Value::Array(suites.iter().map(|s| suite_json(s, verbose)).collect()),
    );
    report.set(
        "deformation_limit",
        Value::Array(
            limit
                .iter()
                .map(|r| {
                    json!({
                        "code": r.code.to_hex(),
                        "errors": r.errors,
                        "first_divergent": r.first_divergent,
                        "passed": r.passed,
                    })
                })
                .collect(),
        ),
    );
    report.summary.extend(suites.iter().map(suite_line));
    if verbose {
        for s in &suites {
            report
                .summary
                .extend(s.violations.iter().map(|v| format!("  {v}")));
        }
    }
    Ok(report)
}
