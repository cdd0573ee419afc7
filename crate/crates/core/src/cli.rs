//! Command-line front end.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::amodel;
use crate::error::{Error, Result};
use crate::milnor;
use crate::mirror::{self, SearchStatus};
use crate::polycore::{self, Classification, Polynomial, WeightSystem};
use crate::rational::{self, Rational};
use crate::symmetry::{self, GroupElement, SymmetryGroup};

#[derive(Debug, Parser)]
#[command(
    name = "lgmk",
    version,
    about = "Landau-Ginzburg A- and B-model computations"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for search and amodel.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Denominator bound for tail enumeration.
    #[arg(long, global = true, default_value_t = 60)]
    pub bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weights, classification and nondegeneracy.
    Weights { poly: String },
    /// The maximal diagonal symmetry group.
    Gmax {
        poly: String,
        /// List every element.
        #[arg(long)]
        elements: bool,
    },
    /// A-model state space for a group: max, J, sl, 0 or "a/b,c/d;...".
    Amodel {
        poly: String,
        #[arg(default_value = "max")]
        group: String,
    },
    /// Unorbifolded B-model (graded Milnor ring).
    Bmodel { poly: String },
    /// Compare A(W, Gmax) with B(W^T, {0}).
    MirrorCheck { poly: String },
    /// Weight systems with a given dimension and top degree.
    Search {
        #[arg(long)]
        dim: String,
        #[arg(long)]
        top: String,
        #[arg(long)]
        vars: usize,
    },
    /// Dimension and nonexistence tables for the family x^n + y^n + x^(n-1)y.
    PaperTables,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub payload: Value,
    pub warnings: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::NotAdmissible(_) | Error::InfiniteGroup { .. } | Error::DegenerateRestriction(_) => {
            3
        }
        Error::GroupNotAdmissible | Error::GroupNotSymmetry(_) => 4,
        Error::NotInvertible { .. } => 5,
        Error::ResourceLimit(_) => 6,
        _ => 1,
    }
}

fn r(q: &Rational) -> Value {
    Value::String(rational::fmt(q))
}

fn phases(g: &GroupElement) -> Value {
    Value::Array(g.phases().iter().map(r).collect())
}

fn weights_value(q: &WeightSystem) -> Value {
    Value::Array(q.as_slice().iter().map(r).collect())
}

fn graded_value(g: &milnor::GradedDims) -> Value {
    Value::Array(
        g.iter()
            .map(|(d, n)| json!({"degree": rational::fmt(d), "dim": n}))
            .collect(),
    )
}

fn parse_rational(text: &str) -> Result<Rational> {
    rational::parse(text).ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("expected a rational p/q, got {:?}", text),
    })
}

/// `max`, `J`, `sl`, `0`, or semicolon-separated phase vectors.
pub fn parse_group(spec: &str, w: &Polynomial) -> Result<SymmetryGroup> {
    let n = w.nvars();
    match spec.trim() {
        "max" => symmetry::gmax(w),
        "J" => {
            let q = polycore::weights(w)?;
            symmetry::subgroup_generated(n, &[GroupElement::from_weights(&q)])
        }
        "sl" => Ok(symmetry::sl_subgroup(&symmetry::gmax(w)?)),
        "0" => Ok(SymmetryGroup::trivial(n)),
        list => {
            let mut gens = Vec::new();
            for vector in list.split(';').filter(|v| !v.trim().is_empty()) {
                let ph: Vec<Rational> = vector
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<_>>()?;
                if ph.len() != n {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!(
                            "group element {:?} has {} phases, expected {}",
                            vector,
                            ph.len(),
                            n
                        ),
                    });
                }
                gens.push(GroupElement::new(ph));
            }
            symmetry::subgroup_generated(n, &gens)
        }
    }
}

pub fn cmd_weights(poly: &str) -> Result<Report> {
    let w = polycore::parse_polynomial(poly)?;
    let weights = polycore::weights(&w).ok();
    let classification = polycore::classify(&w);
    let nondegenerate = milnor::is_nondegenerate(&w)?;
    let kind = match &classification {
        Classification::NotAdmissible(_) => "NotAdmissible",
        Classification::Invertible => "Invertible",
        Classification::Noninvertible => "Noninvertible",
    };
    Ok(Report {
        command: "weights".into(),
        inputs: json!({"poly": w.to_string()}),
        payload: json!({
            "weights": weights.as_ref().map(weights_value),
            "classification": kind,
            "detail": classification.to_string(),
            "nondegenerate": nondegenerate,
        }),
        warnings: Vec::new(),
    })
}

pub fn cmd_gmax(poly: &str, with_elements: bool) -> Result<Report> {
    let w = polycore::parse_polynomial(poly)?;
    polycore::admissible_weights(&w)?;
    let g = symmetry::gmax(&w)?;
    let mut payload = json!({
        "order": g.order(),
        "invariant_factors": g.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "generators": g.generators().iter().map(phases).collect::<Vec<_>>(),
    });
    if with_elements {
        payload["elements"] = Value::Array(g.elements().iter().map(phases).collect());
    }
    Ok(Report {
        command: "gmax".into(),
        inputs: json!({"poly": w.to_string()}),
        payload,
        warnings: Vec::new(),
    })
}

pub fn cmd_amodel(poly: &str, group_spec: &str, threads: usize) -> Result<Report> {
    let w = polycore::parse_polynomial(poly)?;
    let g = parse_group(group_spec, &w)?;
    let a = amodel::amodel_with_threads(&w, &g, threads)?;
    let basis: Vec<Value> = a
        .basis
        .iter()
        .map(|e| {
            json!({
                "element": e.label(w.variables()),
                "degree": rational::fmt(&e.adegree),
            })
        })
        .collect();
    let warnings = a
        .convention_disagreements
        .iter()
        .map(|g| {
            format!(
                "sector {} depends on the determinant convention (restricted determinant used)",
                g
            )
        })
        .collect();
    Ok(Report {
        command: "amodel".into(),
        inputs: json!({"poly": w.to_string(), "group": group_spec}),
        payload: json!({
            "weights": weights_value(&a.weights),
            "group_order": g.order(),
            "group_generators": g.generators().iter().map(phases).collect::<Vec<_>>(),
            "dimension": a.dimension(),
            "top_degree": a.top_degree().map(rational::fmt),
            "graded": graded_value(&a.graded),
            "basis": basis,
        }),
        warnings,
    })
}

pub fn cmd_bmodel(poly: &str) -> Result<Report> {
    let w = polycore::parse_polynomial(poly)?;
    polycore::admissible_weights(&w)?;
    let b = milnor::bmodel(&w)?;
    let basis: Vec<Value> = b
        .basis
        .iter()
        .map(|m| {
            json!({
                "monomial": polycore::format_monomial(w.variables(), m),
                "degree": rational::fmt(&polycore::monomial_bdegree(m, &b.weights)),
            })
        })
        .collect();
    Ok(Report {
        command: "bmodel".into(),
        inputs: json!({"poly": w.to_string()}),
        payload: json!({
            "weights": weights_value(&b.weights),
            "dimension": b.basis.len(),
            "dimension_formula": rational::fmt(&milnor::bdim_formula(&b.weights)),
            "top_degree": b.graded.top_degree().map(rational::fmt),
            "top_degree_formula": rational::fmt(&milnor::btop_formula(&b.weights)),
            "graded": graded_value(&b.graded),
            "basis": basis,
        }),
        warnings: Vec::new(),
    })
}

pub fn cmd_mirror_check(poly: &str) -> Result<Report> {
    let w = polycore::parse_polynomial(poly)?;
    polycore::admissible_weights(&w)?;
    let c = mirror::mirror_comparison(&w)?;
    Ok(Report {
        command: "mirror-check".into(),
        inputs: json!({"poly": w.to_string()}),
        payload: json!({
            "transpose": c.transpose.to_string(),
            "a_model": graded_value(&c.a_side),
            "b_model": graded_value(&c.b_side),
            "mirror": c.agrees(),
        }),
        warnings: Vec::new(),
    })
}

/// The family discriminant when `(d, delta) = (2n - 2, 2(2n - 4)/n)`,
/// otherwise the general pair discriminant.
fn pair_discriminant(d: &Rational, delta: &Rational) -> (Rational, &'static str) {
    let n = (d + rational::int(2)) / rational::int(2);
    if rational::is_integer(&n) && n >= rational::int(1) {
        let family = rational::int(2) * (rational::int(2) * &n - rational::int(4)) / &n;
        if family == *delta {
            use num_traits::ToPrimitive;
            if let Some(n) = n.to_integer().to_i64() {
                return (mirror::discriminant_2var(n), "family");
            }
        }
    }
    let s = (rational::int(4) - delta) / rational::int(4);
    (mirror::discriminant_general(d, &s), "general")
}

pub fn cmd_search(dim: &str, top: &str, vars: usize, bound: u64, threads: usize) -> Result<Report> {
    let d = parse_rational(dim)?;
    let delta = parse_rational(top)?;
    let report = mirror::search_weight_systems_with_threads(&d, &delta, vars, bound, threads)?;
    let mut payload = json!({ "search": report });
    if vars == 2 {
        let (disc, form) = pair_discriminant(&d, &delta);
        payload["discriminant"] = r(&disc);
        payload["discriminant_form"] = json!(form);
    }
    let mut warnings = Vec::new();
    if vars == 3 {
        let boundary = mirror::three_var_discriminant_boundary(&d, &delta, bound);
        payload["discriminant_boundary"] = boundary.as_ref().map_or(Value::Null, r);
    }
    if vars >= 3 && report.status == SearchStatus::NoneWithinBound {
        warnings.push(format!(
            "nonexistence is relative to tail denominators <= {}",
            bound
        ));
    }
    Ok(Report {
        command: "search".into(),
        inputs: json!({"dim": rational::fmt(&d), "top": rational::fmt(&delta), "vars": vars, "bound": bound}),
        payload,
        warnings,
    })
}

fn family(n: i64) -> Polynomial {
    polycore::parse_polynomial(&format!("x^{n} + y^{n} + x^{}*y", n - 1)).expect("well-formed")
}

pub fn cmd_paper_tables(bound: u64, threads: usize) -> Result<Report> {
    let mut dimensions = Vec::new();
    for n in 3..=12i64 {
        let w = family(n);
        let q = polycore::weights(&w)?;
        let j = symmetry::subgroup_generated(2, &[GroupElement::from_weights(&q)])?;
        let a = amodel::amodel_with_threads(&w, &j, threads)?;
        let top = rational::ratio(2 * (2 * n - 4), n);
        dimensions.push(json!({
            "n": n,
            "dim": a.dimension(),
            "top": a.top_degree().map(rational::fmt),
            "dim_formula": 2 * n - 2,
            "top_formula": rational::fmt(&top),
        }));
    }
    let mut conclusion = Vec::new();
    for n in 4..=12i64 {
        let d = rational::int(2 * n - 2);
        let delta = rational::ratio(2 * (2 * n - 4), n);
        let mut row = Map::new();
        row.insert("n".into(), json!(n));
        for m in 1..=3usize {
            let s = mirror::search_weight_systems_with_threads(&d, &delta, m, bound, threads)?;
            let mark = match s.status {
                SearchStatus::SolutionsFound => "",
                SearchStatus::NoneExact | SearchStatus::NoneWithinBound => "X",
            };
            row.insert(format!("m{m}"), json!(mark));
        }
        conclusion.push(Value::Object(row));
    }
    Ok(Report {
        command: "paper-tables".into(),
        inputs: json!({"bound": bound}),
        payload: json!({"dimensions": dimensions, "conclusion": conclusion}),
        warnings: vec![format!(
            "m = 3 marks are relative to tail denominators <= {}",
            bound
        )],
    })
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let threads = cli.threads.max(1);
    match &cli.command {
        Command::Weights { poly } => cmd_weights(poly),
        Command::Gmax { poly, elements } => cmd_gmax(poly, *elements),
        Command::Amodel { poly, group } => cmd_amodel(poly, group, threads),
        Command::Bmodel { poly } => cmd_bmodel(poly),
        Command::MirrorCheck { poly } => cmd_mirror_check(poly),
        Command::Search { dim, top, vars } => cmd_search(dim, top, *vars, cli.bound, threads),
        Command::PaperTables => cmd_paper_tables(cli.bound, threads),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("({})", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render_table(out: &mut String, rows: &[Value], indent: &str) {
    let Some(Value::Object(first)) = rows.first() else {
        return;
    };
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            keys.iter()
                .map(|k| row.get(k.as_str()).and_then(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|c| c[i].len())
                .max()
                .unwrap_or(0)
                .max(k.len())
        })
        .collect();
    let line = |vals: Vec<&str>| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{:<w$}", v, w = *w))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(
        out,
        "{}{}",
        indent,
        line(keys.iter().map(|k| k.as_str()).collect())
    );
    for c in &cells {
        let _ = writeln!(
            out,
            "{}{}",
            indent,
            line(c.iter().map(String::as_str).collect())
        );
    }
}

fn render_object(out: &mut String, obj: &Map<String, Value>, indent: &str) {
    for (k, v) in obj {
        if let Some(s) = scalar(v) {
            let _ = writeln!(out, "{indent}{k}: {s}");
            continue;
        }
        let _ = writeln!(out, "{indent}{k}:");
        let deeper = format!("{indent}  ");
        match v {
            Value::Object(inner) => render_object(out, inner, &deeper),
            Value::Array(rows) if rows.iter().all(Value::is_object) => {
                render_table(out, rows, &deeper)
            }
            Value::Array(rows) => {
                for row in rows {
                    match row {
                        Value::Object(inner) => render_object(out, inner, &deeper),
                        other => {
                            let _ = writeln!(out, "{deeper}{}", scalar(other).unwrap_or_default());
                        }
                    }
                }
            }
            _ => {}
        }
    }
}

/// Plain-text rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lgmk {}", report.command);
    if let Value::Object(inputs) = &report.inputs {
        render_object(&mut out, inputs, "  ");
    }
    if let Value::Object(payload) = &report.payload {
        render_object(&mut out, payload, "");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn render(report: &Report, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    } else {
        render_text(report)
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.json));
            0
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let v = json!({"error": e.to_string(), "exit_code": code});
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("error serializes")
                );
            }
            eprintln!("lgmk: {e}");
            code
        }
    }
}
