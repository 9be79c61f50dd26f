use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use sharpmap_core::certify;
use sharpmap_core::family::{self, TensorOp};
use sharpmap_core::json;
use sharpmap_core::lp::{self, LpProblem};
use sharpmap_core::newton;
use sharpmap_core::scalar;
use sharpmap_core::search::{self, SearchReport};
use sharpmap_core::system::{self, Column, LinearSystem};
use sharpmap_core::{Error, Polynomial};

use crate::config::{self, Basis, Cli, Command, FamilyKind, Format, Kind, Op, Resolved};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded(_)) => 2,
            _ => 1,
        }
    }
}

/// A result in both output formats.
struct Output {
    json: Value,
    text: String,
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let resolved = config::resolve(&cli.global)?;
    let out = execute(&cli.command, &resolved)?;
    let rendered = match resolved.format {
        Format::Json => json::to_pretty(&out.json),
        Format::Text => out.text,
    };
    match &resolved.output {
        Some(path) => write_file(path, &rendered),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_polynomial(path: &Path) -> Result<Polynomial, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(json::parse_polynomial(&text)?)
}

fn build(n: usize, d: u32, kind: Kind, reduce: bool, constant: bool) -> Result<LinearSystem, CliError> {
    let sys = match kind {
        Kind::Homogenized => system::build_homogenized(n, d, constant)?,
        Kind::Eliminated => system::build_eliminated(n, d)?,
        Kind::Symmetric => system::build_symmetric(d)?,
    };
    if reduce {
        if kind != Kind::Homogenized || constant {
            return Err(CliError::Usage("--reduce applies to homogenized systems without --constant".into()));
        }
        return Ok(system::reduce_support(&sys)?);
    }
    Ok(sys)
}

fn polynomial_output(p: &Polynomial) -> Output {
    Output {
        json: json::polynomial_to_value(p),
        text: format!("{}\n", p.render()),
    }
}

fn report_text(report: &SearchReport) -> String {
    let mut text = match report.min_l0 {
        Some(k) => format!("min_l0 = {k}\n"),
        None => "no solution\n".to_string(),
    };
    for w in &report.witnesses {
        let _ = writeln!(text, "  {}    (l1 = {})", w.polynomial.render(), scalar::display(&w.l1));
    }
    let _ = writeln!(
        text,
        "supports explored: {}, pruned: {}",
        report.nodes_explored, report.prunes_by_certificate
    );
    text
}

fn execute(command: &Command, cfg: &Resolved) -> Result<Output, CliError> {
    match command {
        Command::System {
            n,
            d,
            kind,
            reduce,
            constant,
        } => {
            let sys = build(*n, *d, *kind, *reduce, *constant)?;
            let mut text = format!(
                "{} system: n={} d={}, {} equations, {} unknowns, rank {}\n",
                sys.kind.as_str(),
                sys.n,
                sys.d,
                sys.nrows(),
                sys.ncols(),
                sys.rank()
            );
            let header: Vec<String> = sys.columns.iter().map(Column::to_string).collect();
            let _ = writeln!(text, "columns: {}", header.join(" "));
            for (row, rhs) in sys.matrix.iter().zip(&sys.rhs) {
                let cells: Vec<String> = row.iter().map(scalar::display).collect();
                let _ = writeln!(text, "[{}] = {}", cells.join(" "), scalar::display(rhs));
            }
            Ok(Output {
                json: json::system_to_value(&sys),
                text,
            })
        }
        Command::Search {
            n,
            d,
            kind,
            all,
            unconstrained,
            reduce,
            json: json_path,
        } => {
            let sys = build(*n, *d, *kind, *reduce, false)?;
            let report = search::min_l0(&sys, !unconstrained, *all, &cfg.search)?;
            let value = json::search_report_to_value(&report);
            if let Some(path) = json_path {
                write_file(path, &json::to_pretty(&value))?;
            }
            Ok(Output {
                json: value,
                text: report_text(&report),
            })
        }
        Command::Uniqueness { d } => {
            let polys = search::uniqueness_test(*d, &cfg.search)?;
            let entries: Vec<Value> = polys
                .iter()
                .map(|p| {
                    json!({
                        "polynomial": json::polynomial_to_value(p),
                        "l1": scalar::to_fraction_string(&p.coeff_sum()),
                    })
                })
                .collect();
            let mut text = format!("{} sharp polynomials of degree {d}\n", polys.len());
            for p in &polys {
                let _ = writeln!(text, "  {}    (l1 = {})", p.render(), scalar::display(&p.coeff_sum()));
            }
            Ok(Output {
                json: json!({ "d": d, "count": polys.len(), "polynomials": entries }),
                text,
            })
        }
        Command::Symmetric { d } => {
            let (count, witnesses) = search::symmetric_min_terms(*d, &cfg.search)?;
            let bound = search::sharp_bound(2, *d);
            let mut text = format!("symmetric degree {d}: {count} terms (sharp bound {bound})\n");
            for w in &witnesses {
                let _ = writeln!(text, "  {}", w.polynomial.render());
            }
            Ok(Output {
                json: json!({
                    "d": d,
                    "min_terms": count,
                    "sharp_bound": bound,
                    "witnesses": witnesses.iter().map(json::solution_to_value).collect::<Vec<_>>(),
                }),
                text,
            })
        }
        Command::L1min {
            n,
            d,
            basis,
            pin_top,
            constant,
            enumerate,
        } => {
            let sys = match basis {
                Basis::Homogenized => system::build_homogenized(*n, *d, *constant)?,
                Basis::Symmetric => {
                    if *constant {
                        return Err(CliError::Usage("--constant needs --basis homogenized".into()));
                    }
                    system::build_symmetric(*d)?
                }
            };
            let mut problem = LpProblem::coefficient_sum(&sys);
            if *pin_top {
                for (j, col) in sys.columns.iter().enumerate() {
                    let top = match col {
                        Column::Monomial(m) => m.degree() == *d && m.is_pure_power(),
                        Column::Symmetric(e) => e.a == 0 && e.b == *d,
                    };
                    if top {
                        problem = problem.pin(j, scalar::int(1));
                    }
                }
            }
            let result = lp::minimize(&problem);
            let (Some(point), Some(value)) = (&result.point, &result.value) else {
                return Err(CliError::Core(Error::InvalidParameter(format!(
                    "linear program is {:?}",
                    result.status
                ))));
            };
            let poly = sys.assemble(point);
            let mut out = json!({
                "value": scalar::to_fraction_string(value),
                "polynomial": json::polynomial_to_value(&poly),
                "point": point.iter().map(scalar::to_fraction_string).collect::<Vec<_>>(),
            });
            let mut text = format!("minimum coefficient sum {}\n  {}\n", scalar::display(value), poly.render());
            if *enumerate {
                let vertices = lp::enumerate_vertex_optima(&problem);
                out["optimal_vertices"] = json!(vertices.len());
                out["unique"] = json!(vertices.len() == 1);
                let _ = writeln!(text, "optimal vertices: {}", vertices.len());
            }
            Ok(Output { json: out, text })
        }
        Command::Family {
            kind,
            n,
            d,
            m,
            a,
            b,
            c,
            op,
            poly,
        } => {
            let need = |v: &Option<u32>, name: &str| {
                v.ok_or_else(|| CliError::Usage(format!("--kind needs --{name}")))
            };
            let p = match kind {
                FamilyKind::Invariant => family::invariant_poly(need(d, "d")?),
                FamilyKind::Whitney => family::whitney_poly(*n, need(d, "d")?)?,
                FamilyKind::Substitute => {
                    let c = match c {
                        Some(text) => scalar::parse_fraction(text)?,
                        None => return Err(CliError::Usage("--kind substitute needs --c".into())),
                    };
                    let sub = family::substitute(need(d, "d")?, need(m, "m")?, need(a, "a")?, need(b, "b")?, &c)?;
                    if !sub.nonnegative {
                        eprintln!("warning: result has negative coefficients");
                    }
                    sub.polynomial
                }
                FamilyKind::Tensor => {
                    let start = match poly {
                        Some(path) => read_polynomial(path)?,
                        None => Polynomial::linear_sum(*n),
                    };
                    let op = match op {
                        Op::W => TensorOp::W,
                        Op::V => TensorOp::V,
                    };
                    match c {
                        Some(text) => family::tensor_op(&start, op, &scalar::parse_fraction(text)?, None)?,
                        None => family::tensor_on_top(&start, op)?,
                    }
                }
            };
            Ok(polynomial_output(&p))
        }
        Command::Graph { poly, dot } => {
            let p = read_polynomial(poly)?;
            let graph = newton::build_graph(&p)?;
            if let Some(path) = dot {
                write_file(path, &graph.to_dot())?;
            }
            let points = |set: &std::collections::BTreeSet<(u32, u32)>| -> Vec<Value> {
                set.iter().map(|&(a, b)| json!([a, b])).collect()
            };
            let labels: Vec<Value> = graph
                .labels
                .iter()
                .map(|(&(a, b), l)| json!({ "point": [a, b], "label": l.as_char().to_string() }))
                .collect();
            let arrows: Vec<Value> = graph
                .arrows
                .iter()
                .map(|((a, b), (c, d))| json!([[a, b], [c, d]]))
                .collect();
            let text = format!(
                "quotient: {}\nsinks: {:?}\nsources: {:?}\nterms: {} >= sinks: {}\n",
                graph.quotient.render(),
                graph.sinks,
                graph.sources,
                p.term_count(),
                graph.sinks.len()
            );
            Ok(Output {
                json: json!({
                    "quotient": json::polynomial_to_value(&graph.quotient),
                    "labels": labels,
                    "arrows": arrows,
                    "sinks": points(&graph.sinks),
                    "sources": points(&graph.sources),
                    "terms": p.term_count(),
                    "holds": p.term_count() >= graph.sinks.len(),
                }),
                text,
            })
        }
        Command::Verify { poly, n } => {
            let p = read_polynomial(poly)?;
            let cert = certify::verify_sharp(&p, *n);
            let mut text = String::new();
            for c in &cert.checks {
                let _ = writeln!(text, "[{}] {}: {}", if c.pass { "pass" } else { "fail" }, c.name, c.detail);
            }
            let _ = writeln!(text, "verdict: {}", cert.verdict_str());
            Ok(Output {
                json: json::certificate_to_value(&cert),
                text,
            })
        }
        Command::Census { n, max_n } => {
            let census = certify::target_minimal_census(*n, *max_n);
            let mut rows = Vec::new();
            let mut text = format!("n={n}, threshold {}\n", certify::census_threshold(*n));
            for (count, witness) in &census {
                let admissible = certify::gap_admissible(*n, *count);
                rows.push(json!({
                    "N": count,
                    "gap_admissible": admissible,
                    "witness": witness.as_ref().map(json::polynomial_to_value),
                }));
                let _ = writeln!(
                    text,
                    "N={count:<3} admissible={admissible:<5} {}",
                    witness.as_ref().map_or("-".to_string(), Polynomial::render)
                );
            }
            Ok(Output {
                json: json!({ "n": n, "threshold": certify::census_threshold(*n), "census": rows }),
                text,
            })
        }
    }
}
