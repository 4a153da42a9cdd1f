//! The `dist` subcommand: evaluate the centered uniform-sum limit law
//! S_t (density, CDF, grids, characteristic function) and the cumulants
//! of S_t + N(0, sigma^2).

use clap::{Args, Subcommand};
use qhook_core::dustpan::{cdf, char_fn, density, dustpan_cumulant, DustpanParams, WeightMultiset};
use qhook_core::{Error, Result};
use serde::Serialize;

use crate::output::{full_float, header, print_json, write_xy, Format, Table};

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// Weight multiset, comma separated: "1,1/2,0.25".
    #[arg(long)]
    pub t: String,
    /// Evaluation points, comma separated.
    #[arg(long = "at", value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub at: Vec<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum DistWhat {
    /// Density of S_t at given points.
    Density(PointArgs),
    /// CDF of S_t at given points.
    Cdf(PointArgs),
    /// Evenly spaced x,pdf,cdf rows spanning the support.
    Grid {
        /// Weight multiset, comma separated.
        #[arg(long)]
        t: String,
        /// Number of rows; both support endpoints are included.
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Cumulant table of S_t + N(0, sigma^2), exact where possible.
    Cumulants {
        /// Weight multiset, comma separated.
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        /// Highest order; falls back to --upto, then 4.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Characteristic function on the real line.
    Char {
        /// Weight multiset, comma separated.
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        /// Sample points s, comma separated.
        #[arg(long = "at", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        at: Vec<f64>,
    },
}

#[derive(Serialize)]
struct ValueRow {
    x: f64,
    value: f64,
}

#[derive(Serialize)]
struct PointsPayload<'a> {
    t: &'a [f64],
    statistic: &'a str,
    points: &'a [ValueRow],
}

fn emit_points(
    t: &WeightMultiset,
    statistic: &str,
    rows: &[ValueRow],
    fmt: Format,
    gnuplot: Option<&std::path::Path>,
) -> Result<()> {
    if let Some(path) = gnuplot {
        let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.x, r.value)).collect();
        write_xy(path, &pairs)?;
    }
    match fmt {
        Format::Json => print_json(&PointsPayload {
            t: t.entries(),
            statistic,
            points: rows,
        }),
        Format::Text | Format::Csv => {
            println!("{}", header());
            let mut table = Table::new(&["x", statistic]);
            for r in rows {
                if fmt == Format::Csv {
                    table.push(vec![full_float(r.x), full_float(r.value)]);
                } else {
                    table.push(vec![r.x.to_string(), r.value.to_string()]);
                }
            }
            if fmt == Format::Csv {
                table.print_csv();
            } else {
                table.print_text();
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GridRow {
    x: f64,
    pdf: f64,
    cdf: f64,
}

#[derive(Serialize)]
struct GridPayload<'a> {
    t: &'a [f64],
    rows: &'a [GridRow],
}

#[derive(Serialize)]
struct CumulantRow {
    d: usize,
    value: f64,
    /// Exact rational when the weights and sigma allow one.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

#[derive(Serialize)]
struct CumulantsPayload<'a> {
    t: &'a [f64],
    sigma: f64,
    rows: &'a [CumulantRow],
}

#[derive(Serialize)]
struct CharRow {
    s: f64,
    real: f64,
    imag: f64,
    abs: f64,
}

#[derive(Serialize)]
struct CharPayload<'a> {
    t: &'a [f64],
    sigma: f64,
    rows: &'a [CharRow],
}

pub fn run(
    what: &DistWhat,
    upto: Option<usize>,
    fmt: Format,
    gnuplot: Option<&std::path::Path>,
) -> Result<()> {
    match what {
        DistWhat::Density(args) => {
            let t = WeightMultiset::parse(&args.t)?;
            let rows = args
                .at
                .iter()
                .map(|&x| Ok(ValueRow { x, value: density(&t, x)? }))
                .collect::<Result<Vec<_>>>()?;
            emit_points(&t, "pdf", &rows, fmt, gnuplot)
        }
        DistWhat::Cdf(args) => {
            let t = WeightMultiset::parse(&args.t)?;
            let rows = args
                .at
                .iter()
                .map(|&x| Ok(ValueRow { x, value: cdf(&t, x)? }))
                .collect::<Result<Vec<_>>>()?;
            emit_points(&t, "cdf", &rows, fmt, gnuplot)
        }
        DistWhat::Grid { t, points } => {
            let t = WeightMultiset::parse(t)?;
            if *points < 2 {
                return Err(Error::parse("a grid needs at least 2 points"));
            }
            let half = t.total_width() / 2.0;
            let n = *points;
            let mut rows = Vec::with_capacity(n);
            for j in 0..n {
                // Hit the endpoints exactly so the CDF column is pinned to 0 and 1.
                let x = if j == 0 {
                    -half
                } else if j == n - 1 {
                    half
                } else {
                    -half + (2.0 * half) * (j as f64) / ((n - 1) as f64)
                };
                rows.push(GridRow {
                    x,
                    pdf: density(&t, x)?,
                    cdf: cdf(&t, x)?,
                });
            }
            if let Some(path) = gnuplot {
                let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.x, r.pdf)).collect();
                write_xy(path, &pairs)?;
            }
            match fmt {
                Format::Json => print_json(&GridPayload {
                    t: t.entries(),
                    rows: &rows,
                }),
                Format::Text | Format::Csv => {
                    println!("{}", header());
                    let mut table = Table::new(&["x", "pdf", "cdf"]);
                    for r in &rows {
                        if fmt == Format::Csv {
                            table.push(vec![full_float(r.x), full_float(r.pdf), full_float(r.cdf)]);
                        } else {
                            table.push(vec![
                                r.x.to_string(),
                                r.pdf.to_string(),
                                r.cdf.to_string(),
                            ]);
                        }
                    }
                    if fmt == Format::Csv {
                        table.print_csv();
                    } else {
                        table.print_text();
                    }
                    Ok(())
                }
            }
        }
        DistWhat::Cumulants { t, sigma, d } => {
            let t = WeightMultiset::parse(t)?;
            let upto = d.or(upto).unwrap_or(4);
            if upto == 0 {
                return Err(Error::parse("cumulant order must be at least 1"));
            }
            let params = DustpanParams::new(t, *sigma, false)?;
            let mut rows = Vec::with_capacity(upto);
            // S_t and the normal term are both centered, so kappa_1 = 0 exactly.
            rows.push(CumulantRow {
                d: 1,
                value: 0.0,
                exact: Some("0".into()),
            });
            for d in 2..=upto {
                let (value, exact) = dustpan_cumulant(&params, d)?;
                rows.push(CumulantRow {
                    d,
                    value,
                    exact: exact.map(|r| r.to_string()),
                });
            }
            match fmt {
                Format::Json => print_json(&CumulantsPayload {
                    t: params.t.entries(),
                    sigma: *sigma,
                    rows: &rows,
                }),
                Format::Text | Format::Csv => {
                    println!("{}", header());
                    let mut table = Table::new(&["d", "value", "exact"]);
                    for r in &rows {
                        table.push(vec![
                            r.d.to_string(),
                            if fmt == Format::Csv {
                                full_float(r.value)
                            } else {
                                r.value.to_string()
                            },
                            r.exact.clone().unwrap_or_default(),
                        ]);
                    }
                    if fmt == Format::Csv {
                        table.print_csv();
                    } else {
                        table.print_text();
                    }
                    Ok(())
                }
            }
        }
        DistWhat::Char { t, sigma, at } => {
            let t = WeightMultiset::parse(t)?;
            let params = DustpanParams::new(t, *sigma, false)?;
            let rows: Vec<CharRow> = at
                .iter()
                .map(|&s| {
                    let phi = char_fn(&params, s);
                    CharRow {
                        s,
                        real: phi.re,
                        imag: phi.im,
                        abs: phi.norm(),
                    }
                })
                .collect();
            if let Some(path) = gnuplot {
                let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.s, r.real)).collect();
                write_xy(path, &pairs)?;
            }
            match fmt {
                Format::Json => print_json(&CharPayload {
                    t: params.t.entries(),
                    sigma: *sigma,
                    rows: &rows,
                }),
                Format::Text | Format::Csv => {
                    println!("{}", header());
                    let mut table = Table::new(&["s", "real", "imag", "abs"]);
                    for r in &rows {
                        let cells = if fmt == Format::Csv {
                            vec![
                                full_float(r.s),
                                full_float(r.real),
                                full_float(r.imag),
                                full_float(r.abs),
                            ]
                        } else {
                            vec![
                                r.s.to_string(),
                                r.real.to_string(),
                                r.imag.to_string(),
                                r.abs.to_string(),
                            ]
                        };
                        table.push(cells);
                    }
                    if fmt == Format::Csv {
                        table.print_csv();
                    } else {
                        table.print_text();
                    }
                    Ok(())
                }
            }
        }
    }
}
