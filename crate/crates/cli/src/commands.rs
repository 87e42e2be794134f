use std::path::Path;

use nnspectra::cover::{fractional_cover, tfold_cover, CoverOptions};
use nnspectra::linalg::rank;
use nnspectra::matching::{subrank, MatchingOptions};
use nnspectra::matrix::format_rational;
use nnspectra::nnrank::{nnrank_bounds, NnrankOptions};
use nnspectra::spectra::laws::LawReport;
use nnspectra::spectra::monomial::DEFAULT_SEARCH_BUDGET;
use nnspectra::spectra::triangular::triangular_certificate;
use nnspectra::spectra::{
    asymptotic_report, is_congruent, is_equivalent, spectral_point_check, strassen_axiom_check, Congruence,
    LawCheckOptions, ReportOptions, SpectralPoint,
};
use nnspectra::{MatrixFormat, NonnegativeMatrix};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::envelope::{self, Failure, Outcome, EXIT_BUDGET, EXIT_LAW_VIOLATION, EXIT_OK, EXIT_UNKNOWN};
use crate::{Cli, Command, PropPoint};

struct Input {
    bytes: Vec<u8>,
    matrix: NonnegativeMatrix,
}

fn read_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))?;
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => MatrixFormat::Json,
        _ => MatrixFormat::Csv,
    });
    let matrix = NonnegativeMatrix::parse(&text, format)?;
    Ok(Input { bytes, matrix })
}

fn format_name(cli: &Cli) -> Value {
    match cli.format {
        Some(crate::InputFormat::Json) => json!("json"),
        Some(crate::InputFormat::Csv) => json!("csv"),
        None => json!("auto"),
    }
}

struct Budgets {
    matching: MatchingOptions,
    cover: CoverOptions,
    search: u64,
}

fn budgets(cli: &Cli) -> Budgets {
    let mut b = Budgets {
        matching: MatchingOptions::default(),
        cover: CoverOptions::default(),
        search: DEFAULT_SEARCH_BUDGET,
    };
    if let Some(n) = cli.budget {
        b.matching.node_budget = n;
        b.cover.ilp_node_budget = n;
        b.search = n;
    }
    b
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format.map(MatrixFormat::from);
    let b = budgets(cli);
    let mut params = Map::new();
    params.insert("format".into(), format_name(cli));
    params.insert("seed".into(), json!(cli.seed));
    params.insert("budget".into(), json!(cli.budget));
    let mut warnings = Vec::new();
    let mut code = EXIT_OK;

    let (name, digest, results) = match &cli.command {
        Command::Param { file, tol, seeds } => {
            let input = read_matrix(file, format)?;
            params.insert("tol".into(), json!(tol));
            params.insert("seeds".into(), json!(seeds));
            let opts = NnrankOptions {
                tol: *tol,
                seeds: seeds.clone(),
                cover: b.cover,
                ..NnrankOptions::default()
            };
            let results = param(&input.matrix, &b, &opts, &mut warnings, &mut code)?;
            ("param", envelope::digest(&[&input.bytes]), results)
        }
        Command::Asymptotic { file, max_power } => {
            let input = read_matrix(file, format)?;
            params.insert("max_power".into(), json!(max_power));
            let opts = ReportOptions {
                matching: b.matching,
                cover: b.cover,
                nnrank: NnrankOptions {
                    cover: b.cover,
                    ..NnrankOptions::default()
                },
                ..ReportOptions::default()
            };
            // A budget-limited matching still gives a valid lower end, so it only warns.
            let sandwich = asymptotic_report(&input.matrix, *max_power, &opts)?;
            warnings.extend(sandwich.warnings.iter().cloned());
            ("asymptotic", envelope::digest(&[&input.bytes]), sandwich.to_json())
        }
        Command::Congruent { file_a, file_b } | Command::Equivalent { file_a, file_b } => {
            let equivalence = matches!(cli.command, Command::Equivalent { .. });
            let (a, c) = (read_matrix(file_a, format)?, read_matrix(file_b, format)?);
            let outcome = if equivalence {
                is_equivalent(&a.matrix, &c.matrix, b.search)
            } else {
                is_congruent(&a.matrix, &c.matrix, b.search)
            };
            let key = if equivalence { "equivalent" } else { "congruent" };
            let verdict = match &outcome {
                Congruence::Congruent { .. } => json!(true),
                Congruence::NotCongruent => json!(false),
                Congruence::Unknown => {
                    warnings.push("search budget exhausted".into());
                    code = EXIT_UNKNOWN;
                    Value::Null
                }
            };
            let witness = match &outcome {
                Congruence::Congruent { row, col } => json!({"row": row, "col": col}),
                _ => Value::Null,
            };
            let mut results = json!({ key: verdict, "witness": witness });
            if equivalence {
                results["witness_acts_on"] = json!("matrices with zero rows and columns removed");
            }
            (key, envelope::digest(&[&a.bytes, &c.bytes]), results)
        }
        Command::Cover { file, t } => {
            let input = read_matrix(file, format)?;
            params.insert("t".into(), json!(t));
            let results = match t {
                Some(t) => {
                    let sol = tfold_cover(&input.matrix, *t, b.cover)?;
                    json!({"t": t, "value": format_rational(&sol.value), "certificate": sol})
                }
                None => {
                    let sol = fractional_cover(&input.matrix, b.cover)?;
                    json!({"value": format_rational(&sol.value), "certificate": sol})
                }
            };
            ("cover", envelope::digest(&[&input.bytes]), results)
        }
        Command::Triangular { file, power } => {
            let input = read_matrix(file, format)?;
            params.insert("power".into(), json!(power));
            let cert = triangular_certificate(&input.matrix, *power)?;
            ("triangular", envelope::digest(&[&input.bytes]), json!(cert))
        }
        Command::Propcheck { point, trials, max_dim } => {
            if *trials == 0 || *max_dim == 0 {
                return Err(Failure::input("trials and max-dim must be positive".into()));
            }
            params.insert("point".into(), json!(point.to_possible_value().map(|v| v.get_name().to_string())));
            params.insert("trials".into(), json!(trials));
            params.insert("max_dim".into(), json!(max_dim));
            let opts = LawCheckOptions {
                trials: *trials,
                seed: cli.seed,
                max_dim: *max_dim,
                cover: b.cover,
                search_budget: b.search,
            };
            let reports = propcheck(*point, &opts);
            let ok = reports.iter().all(LawReport::ok);
            if !ok {
                code = EXIT_LAW_VIOLATION;
            }
            for r in &reports {
                for (law, n) in &r.skipped {
                    warnings.push(format!("{}: {n} {law} checks skipped after budget errors", r.harness));
                }
            }
            let results = json!({"pass": ok, "reports": reports});
            ("propcheck", envelope::digest(&[]), results)
        }
    };
    Ok(Outcome {
        envelope: envelope::envelope(name, digest, params, results, warnings),
        code,
    })
}

fn param(a: &NonnegativeMatrix, b: &Budgets, opts: &NnrankOptions, warnings: &mut Vec<String>, code: &mut u8) -> Result<Value, Failure> {
    let r = rank(a);
    let g = subrank(a, b.matching);
    if !g.exact {
        warnings.push("search budget exhausted: subrank is a lower bound".into());
        *code = EXIT_BUDGET;
    }
    let cover = fractional_cover(a, b.cover)?;
    let nn = nnrank_bounds(a, opts);
    if !nn.upper_certified {
        warnings.push(format!(
            "upper bound not certified: heuristic factorization gives {}, certified upper bound is {}",
            nn.upper, nn.certified_upper
        ));
    }
    if !nn.integer_cover_complete {
        warnings.push("search budget exhausted: integer cover bound skipped for some blocks".into());
    }
    Ok(json!({
        "shape": [a.rows(), a.cols()],
        "rank": r.rank,
        "rank_certificate": {"pivot_rows": r.pivot_rows, "pivot_cols": r.pivot_cols},
        "subrank": g.size,
        "subrank_exact": g.exact,
        "matching": g.matching,
        "F": format_rational(&cover.value),
        "F_certificate": cover,
        "nnrank": {
            "lower": nn.lower,
            "upper": nn.upper,
            "certified": nn.upper_certified,
            "certified_upper": nn.certified_upper,
            "lower_sources": nn.lower_sources,
            "factorization": nn.certificate,
            "residual": nn.factorization.as_ref().map(|f| f.residual),
        },
    }))
}

fn propcheck(point: PropPoint, opts: &LawCheckOptions) -> Vec<LawReport> {
    let mut out = Vec::new();
    if matches!(point, PropPoint::Rank | PropPoint::All) {
        out.push(spectral_point_check(SpectralPoint::Rank, opts));
    }
    if matches!(point, PropPoint::FractionalCover | PropPoint::All) {
        out.push(spectral_point_check(SpectralPoint::FractionalCover, opts));
    }
    if matches!(point, PropPoint::Axioms | PropPoint::All) {
        out.push(strassen_axiom_check(opts));
    }
    out
}
