//! The `gf` and `cumulants` subcommands: render one product-form
//! generating function, optionally expanded and cross-checked, or its
//! exact and standardized cumulant table.

use qhook_core::exactpoly::{standardized_cumulants, Cgf, CumulantReport, DensePoly};
use qhook_core::Result;
use serde::Serialize;

use crate::output::{full_float, header, print_json, Format, Table};
use crate::target::{oracle_check, resolve, OracleOutcome, Target};

#[derive(Serialize)]
struct GfPayload<'a> {
    target: &'a str,
    cgf: &'a Cgf,
    #[serde(skip_serializing_if = "Option::is_none")]
    expanded: Option<&'a DensePoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'a OracleOutcome>,
}

pub fn run_gf(target: &Target, expand: bool, oracle: bool, fmt: Format) -> Result<()> {
    let resolved = resolve(target)?;
    let expanded = if expand {
        Some(resolved.cgf.expand()?)
    } else {
        None
    };
    let oracle = if oracle {
        Some(oracle_check(&resolved)?)
    } else {
        None
    };
    match fmt {
        Format::Json => print_json(&GfPayload {
            target: &resolved.description,
            cgf: &resolved.cgf,
            expanded: expanded.as_ref(),
            oracle: oracle.as_ref(),
        }),
        Format::Text => {
            println!("{}", header());
            println!("target: {}", resolved.description);
            println!("product: {}", resolved.cgf);
            if let Some(p) = &expanded {
                println!("expanded: {p}");
                println!("mass: {}", p.mass());
                match p.degree() {
                    Some(d) => println!("degree: {d}"),
                    None => println!("degree: none"),
                }
            }
            print_oracle_line(&oracle);
            Ok(())
        }
        Format::Csv => {
            println!("{}", header());
            let mut table = match &expanded {
                Some(p) => {
                    let mut t = Table::new(&["exponent", "coefficient"]);
                    for (i, c) in p.coeffs().iter().enumerate() {
                        t.push(vec![(p.offset() + i as u64).to_string(), c.to_string()]);
                    }
                    t
                }
                None => {
                    let mut t = Table::new(&["part", "entry"]);
                    for (v, count) in resolved.cgf.num_grouped().iter().rev() {
                        for _ in 0..*count {
                            t.push(vec!["num".into(), v.to_string()]);
                        }
                    }
                    for (v, count) in resolved.cgf.den_grouped().iter().rev() {
                        for _ in 0..*count {
                            t.push(vec!["den".into(), v.to_string()]);
                        }
                    }
                    t.push(vec!["shift".into(), resolved.cgf.shift().to_string()]);
                    t
                }
            };
            if let Some(o) = &oracle {
                table.push(vec![
                    "oracle".into(),
                    match o {
                        OracleOutcome::Ok { objects } => format!("ok:{objects}"),
                        OracleOutcome::Skipped { reason } => format!("skipped:{reason}"),
                    },
                ]);
            }
            table.print_csv();
            Ok(())
        }
    }
}

fn print_oracle_line(oracle: &Option<OracleOutcome>) {
    match oracle {
        Some(OracleOutcome::Ok { objects }) => println!("oracle: ok ({objects} objects)"),
        Some(OracleOutcome::Skipped { reason }) => println!("oracle: skipped ({reason})"),
        None => {}
    }
}

#[derive(Serialize)]
struct CumulantsPayload<'a> {
    target: &'a str,
    upto: usize,
    cumulants: &'a CumulantReport,
}

pub fn run_cumulants(target: &Target, upto: usize, fmt: Format) -> Result<()> {
    if upto == 0 {
        return Err(qhook_core::Error::parse("--upto must be at least 1"));
    }
    let resolved = resolve(target)?;
    let report = standardized_cumulants(&resolved.cgf, upto)?;
    match fmt {
        Format::Json => print_json(&CumulantsPayload {
            target: &resolved.description,
            upto,
            cumulants: &report,
        }),
        Format::Text | Format::Csv => {
            println!("{}", header());
            let mut table = Table::new(&["d", "exact", "standardized"]);
            for d in 1..=upto {
                let std = report.standardized[d - 1];
                table.push(vec![
                    d.to_string(),
                    report.exact[d - 1].to_string(),
                    if fmt == Format::Csv {
                        full_float(std)
                    } else {
                        std.to_string()
                    },
                ]);
            }
            if fmt == Format::Csv {
                table.print_csv();
            } else {
                println!("target: {}", resolved.description);
                table.print_text();
            }
            Ok(())
        }
    }
}
