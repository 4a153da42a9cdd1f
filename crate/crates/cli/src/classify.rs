//! The `classify` subcommand: per-instance diagnostic reports. The payload
//! is JSON-shaped in every format; text mode adds the version header and
//! CSV mode flattens the object to key,value rows.

use clap::Subcommand;
use qhook_core::forests::{degenerate_diagnostics, elevations, ChainStrategy};
use qhook_core::serde_util::ExactValue;
use qhook_core::tableaux::{classify_ssyt, Partition};
use qhook_core::{Error, Result};
use serde::Serialize;

use crate::output::{header, print_json, Format, Table};
use crate::target::{build_forest, parse_box};

#[derive(Debug, Clone, Subcommand)]
pub enum ClassifyWhat {
    /// Shape diagnostics for an SSYT instance.
    Ssyt {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        m: u64,
    },
    /// Diagnostics for plane partitions in a box, via the rectangle shape.
    Pp {
        #[arg(long = "box", value_name = "A,B,C")]
        dims: String,
    },
    /// Degenerate-regime diagnostics for a rooted tree.
    Tree {
        /// Nested parentheses, one group per root: "((()()))".
        #[arg(long, conflicts_with = "h_tree")]
        tree: Option<String>,
        /// Extremal tree H_{n,r} given as "n,r".
        #[arg(long = "h-tree", value_name = "N,R")]
        h_tree: Option<String>,
    },
}

/// Fallback tree report when the full cumulant diagnostics do not apply
/// (the tree is not standardized). The elevation data alone still places
/// the instance on the degenerate/normal axis.
#[derive(Serialize)]
struct ElevationOnly {
    n: usize,
    r: u64,
    gap: u64,
    elevations: Vec<u64>,
    e_over_r_norm_sq: ExactValue,
    regime: String,
}

/// Candidate regime by gap growth; single instances never get a verdict,
/// only a side of the dichotomy that a sequence could live on.
fn regime_candidate(n: usize, gap: u64) -> String {
    let nf = n as f64;
    if (gap as f64) <= nf.sqrt() {
        "degenerate (n-r = o(sqrt(n))) candidate".into()
    } else if (gap as f64) >= nf.powf(11.0 / 12.0) {
        "normal (n-r >= n^(11/12)) candidate".into()
    } else {
        "open-gap (no verdict)".into()
    }
}

pub fn run(what: &ClassifyWhat, fmt: Format) -> Result<()> {
    let payload = match what {
        ClassifyWhat::Ssyt { shape, m } => {
            let lam = Partition::parse(shape)?;
            serde_json::to_value(classify_ssyt(&lam, *m)?)
        }
        ClassifyWhat::Pp { dims } => {
            let (a, b, c) = parse_box(dims)?;
            if a == 0 || b == 0 || c == 0 {
                return Err(Error::Domain("box sides must be positive".into()));
            }
            let shape = Partition::from_u64(&vec![b; a as usize])?;
            let report = classify_ssyt(&shape, a + c)?;
            serde_json::to_value(report)
        }
        ClassifyWhat::Tree { tree, h_tree } => {
            let (_, forest) = build_forest(tree, h_tree)?;
            match degenerate_diagnostics(&forest) {
                Ok(report) => serde_json::to_value(report),
                Err(Error::NotStandardized) => {
                    let elev = elevations(&forest, ChainStrategy::Leftmost)?;
                    let n = forest.n();
                    let r = elev.r();
                    let gap = n as u64 - r;
                    serde_json::to_value(ElevationOnly {
                        n,
                        r,
                        gap,
                        elevations: elev.elevations.clone(),
                        e_over_r_norm_sq: ExactValue::new(&elev.e_over_r_norm_sq()),
                        regime: regime_candidate(n, gap),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    .map_err(|e| Error::Domain(format!("cannot serialize report: {e}")))?;
    match fmt {
        Format::Json => print_json(&payload),
        Format::Text => {
            println!("{}", header());
            print_json(&payload)
        }
        Format::Csv => {
            println!("{}", header());
            let mut table = Table::new(&["key", "value"]);
            let mut cells = Vec::new();
            flatten("", &payload, &mut cells);
            for (k, v) in cells {
                table.push(vec![k, v]);
            }
            table.print_csv();
            Ok(())
        }
    }
}

/// Dotted-key flattening for CSV; arrays and exact strings stay as single
/// JSON-encoded cells so nothing is lost.
fn flatten(prefix: &str, value: &serde_json::Value, out: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        serde_json::Value::Null => out.push((prefix.to_string(), String::new())),
        serde_json::Value::Number(n) => {
            let cell = match n.as_f64() {
                Some(f) if n.is_f64() => crate::output::full_float(f),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), cell));
        }
        serde_json::Value::String(s) => out.push((prefix.to_string(), s.clone())),
        serde_json::Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        serde_json::Value::Array(_) => out.push((prefix.to_string(), value.to_string())),
    }
}
