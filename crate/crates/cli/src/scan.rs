//! The `scan` subcommand: sweep a one-parameter family of instances and
//! tabulate standardized cumulants, one row per parameter value.
//!
//! Rows are independent, so they are computed through the data-parallel
//! map and emitted in parameter order afterwards. All arithmetic stays
//! exact until the final float rendering, which is what keeps rows with
//! factors like 10^1000 both fast and reproducible.

use std::path::PathBuf;

use clap::Args;
use num_bigint::BigUint;
use qhook_core::exactpoly::standardized_cumulants;
use qhook_core::forests::{elevations, forest_cgf, h_tree, ChainStrategy};
use qhook_core::par::par_map;
use qhook_core::serde_util::ExactValue;
use qhook_core::tableaux::{
    classify_ssyt, distance_profile, pp_size_cgf, ssyt_rank_cgf_weyl, Partition,
};
use qhook_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::output::{full_float, header, print_json, write_xy, Format, Table};
use crate::target::{parse_scale, partition_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Fixed padding length m, rows scaled by the parameter itself.
    ScalePartition,
    /// Rows scaled by a rule of the parameter N while m grows as m0 + N.
    ScaleRows,
    /// Boxes a x b x c with fixed a, b and the parameter as c.
    PpBox,
    /// Extremal trees H_{n, n-gap} with the parameter as n.
    TreeFamily,
    /// Explicit instances; parameters are 1-based indices into the list.
    CustomList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FactorRule {
    /// Parameter N scales the rows by 10^N.
    #[default]
    Pow10,
    /// Parameter N scales the rows by N itself.
    Linear,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomInstance {
    pub shape: String,
    pub m: u64,
    #[serde(default)]
    pub scale: Option<String>,
}

/// A declarative sweep; accepted as JSON so jobs can be kept in files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub family: Family,
    /// Partition text for the scale families, "a,b" for pp-box.
    #[serde(default)]
    pub base: Option<String>,
    /// scale-partition: fixed m (default: number of parts).
    /// scale-rows: m0 in m = m0 + N (default: number of parts).
    #[serde(default)]
    pub m: Option<u64>,
    /// Strictly increasing and nonempty; custom-list fills 1..=len when omitted.
    #[serde(default)]
    pub params: Vec<u64>,
    /// Cumulant orders to standardize; default is the 4th.
    #[serde(default = "default_stats")]
    pub stats: Vec<usize>,
    /// Add shape or tree diagnostics columns to every row.
    #[serde(default)]
    pub diagnostics: bool,
    #[serde(default)]
    pub factor_rule: FactorRule,
    /// tree-family: r = n - gap.
    #[serde(default)]
    pub gap: Option<u64>,
    #[serde(default)]
    pub instances: Vec<CustomInstance>,
}

fn default_stats() -> Vec<usize> {
    vec![4]
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("inline").multiple(true)))]
pub struct ScanArgs {
    /// Inline ScanSpec JSON.
    #[arg(long, value_name = "JSON", conflicts_with_all = ["spec_file", "inline"])]
    spec: Option<String>,
    /// ScanSpec JSON read from a file.
    #[arg(long = "spec-file", value_name = "PATH", conflicts_with = "inline")]
    spec_file: Option<PathBuf>,
    /// Build the spec from flags instead of JSON.
    #[arg(long, value_enum, group = "inline")]
    family: Option<Family>,
    /// Base partition ("8,4,3,1,1") or box sides "a,b".
    #[arg(long, group = "inline")]
    base: Option<String>,
    /// Fixed m (scale-partition) or m0 (scale-rows).
    #[arg(long, group = "inline")]
    m: Option<u64>,
    /// Parameter values, comma separated, strictly increasing.
    #[arg(long, value_delimiter = ',', group = "inline")]
    params: Vec<u64>,
    /// Cumulant orders, comma separated (default 4).
    #[arg(long, value_delimiter = ',', group = "inline")]
    stats: Vec<usize>,
    /// Emit diagnostics columns.
    #[arg(long, group = "inline")]
    diagnostics: bool,
    /// How scale-rows turns a parameter into a factor.
    #[arg(long, value_enum, group = "inline")]
    factor_rule: Option<FactorRule>,
    /// tree-family: r = n - gap.
    #[arg(long, group = "inline")]
    gap: Option<u64>,
}

pub fn spec_from_args(args: &ScanArgs) -> Result<ScanSpec> {
    if let Some(json) = &args.spec {
        return serde_json::from_str(json)
            .map_err(|e| Error::parse(format!("bad scan spec JSON: {e}")));
    }
    if let Some(path) = &args.spec_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::parse(format!("bad scan spec in {}: {e}", path.display())));
    }
    match args.family {
        Some(family) => Ok(ScanSpec {
            family,
            base: args.base.clone(),
            m: args.m,
            params: args.params.clone(),
            stats: if args.stats.is_empty() {
                default_stats()
            } else {
                args.stats.clone()
            },
            diagnostics: args.diagnostics,
            factor_rule: args.factor_rule.unwrap_or_default(),
            gap: args.gap,
            instances: Vec::new(),
        }),
        None => Err(Error::parse(
            "scan needs --spec, --spec-file, or --family with inline flags",
        )),
    }
}

/// The spec with its inputs parsed once, shared across row workers.
enum Prepared {
    ScalePartition { base: Partition, text: String, m: u64 },
    ScaleRows {
        base: Partition,
        text: String,
        m0: u64,
        rule: FactorRule,
    },
    PpBox { a: u64, b: u64 },
    TreeFamily { gap: u64 },
    CustomList { instances: Vec<CustomInstance> },
}

fn require_base(spec: &ScanSpec) -> Result<&str> {
    spec.base
        .as_deref()
        .ok_or_else(|| Error::parse("this scan family needs --base"))
}

fn prepare(spec: &mut ScanSpec) -> Result<Prepared> {
    if spec.stats.is_empty() {
        return Err(Error::parse("scan needs at least one cumulant order"));
    }
    if spec.stats.iter().any(|&d| d == 0) {
        return Err(Error::parse("cumulant orders start at 1"));
    }
    let prepared = match spec.family {
        Family::ScalePartition => {
            let base = Partition::parse(require_base(spec)?)?;
            let text = partition_text(&base);
            let m = spec.m.unwrap_or(base.len() as u64);
            if spec.params.iter().any(|&p| p == 0) {
                return Err(Error::parse("scale factors must be positive"));
            }
            Prepared::ScalePartition { base, text, m }
        }
        Family::ScaleRows => {
            let base = Partition::parse(require_base(spec)?)?;
            let text = partition_text(&base);
            let m0 = spec.m.unwrap_or(base.len() as u64);
            match spec.factor_rule {
                FactorRule::Pow10 => {
                    if spec.params.iter().any(|&p| p > u32::MAX as u64) {
                        return Err(Error::parse("pow10 exponent does not fit u32"));
                    }
                }
                FactorRule::Linear => {
                    if spec.params.iter().any(|&p| p == 0) {
                        return Err(Error::parse("linear scale factors must be positive"));
                    }
                }
            }
            Prepared::ScaleRows {
                base,
                text,
                m0,
                rule: spec.factor_rule,
            }
        }
        Family::PpBox => {
            let (a, b) = match require_base(spec)?
                .split(',')
                .map(|tok| tok.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
            {
                Ok(sides) if sides.len() == 2 => (sides[0], sides[1]),
                _ => return Err(Error::parse("pp-box base must be \"a,b\"")),
            };
            if spec.params.iter().any(|&c| c == 0) {
                return Err(Error::parse("box sides must be positive"));
            }
            Prepared::PpBox { a, b }
        }
        Family::TreeFamily => {
            let gap = spec
                .gap
                .ok_or_else(|| Error::parse("tree-family needs --gap (r = n - gap)"))?;
            Prepared::TreeFamily { gap }
        }
        Family::CustomList => {
            if spec.instances.is_empty() {
                return Err(Error::parse("custom-list needs a nonempty instances array"));
            }
            if spec.params.is_empty() {
                spec.params = (1..=spec.instances.len() as u64).collect();
            }
            if spec
                .params
                .iter()
                .any(|&p| p == 0 || p > spec.instances.len() as u64)
            {
                return Err(Error::parse("custom-list parameters index instances from 1"));
            }
            Prepared::CustomList {
                instances: spec.instances.clone(),
            }
        }
    };
    if spec.params.is_empty() {
        return Err(Error::parse("parameter list must be nonempty"));
    }
    if spec.params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse("parameter list must be strictly increasing"));
    }
    Ok(prepared)
}

#[derive(Serialize)]
struct KappaCell {
    d: usize,
    standardized: f64,
}

#[derive(Serialize)]
struct ShapeDiag {
    #[serde(skip_serializing_if = "Option::is_none")]
    weft: Option<ExactValue>,
    top_over_m_cubed: ExactValue,
    size_over_m: ExactValue,
    levels: usize,
    second_multiplicity: u64,
    /// Stable 64-bit digest of the exact hat difference multiset; equal
    /// fingerprints across rows demonstrate a frozen limit profile.
    hat_fingerprint: String,
}

#[derive(Serialize)]
struct TreeDiag {
    n: usize,
    r: u64,
    gap: u64,
    gap_over_sqrt_n: f64,
    e_over_r_norm_sq: ExactValue,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Diag {
    Shape(ShapeDiag),
    Tree(TreeDiag),
}

#[derive(Serialize)]
struct ScanRow {
    param: u64,
    description: String,
    kappa: Vec<KappaCell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<Diag>,
}

fn fnv(acc: &mut u64, bytes: &[u8]) {
    for &b in bytes {
        *acc ^= b as u64;
        *acc = acc.wrapping_mul(0x100000001b3);
    }
}

/// FNV-1a over the exact sign-carrying text of the hat entries, so the
/// fingerprint is independent of float rounding.
fn hat_fingerprint(lam: &Partition, m: u64) -> Result<String> {
    let profile = distance_profile(lam, m)?;
    let mut acc: u64 = 0xcbf29ce484222325;
    match &profile.hat_delta {
        None => fnv(&mut acc, b"degenerate"),
        Some(hat) => match hat.exact() {
            Some(exact) => {
                for b in exact.base() {
                    fnv(&mut acc, b.to_string().as_bytes());
                    fnv(&mut acc, b";");
                }
                fnv(&mut acc, b"*");
                fnv(&mut acc, exact.factor().to_string().as_bytes());
            }
            None => {
                for e in hat.entries() {
                    fnv(&mut acc, &e.to_bits().to_le_bytes());
                }
            }
        },
    }
    Ok(format!("{acc:016x}"))
}

fn shape_diag(lam: &Partition, m: u64) -> Result<Diag> {
    let report = classify_ssyt(lam, m)?;
    Ok(Diag::Shape(ShapeDiag {
        weft: report.weft,
        top_over_m_cubed: report.top_over_m_cubed,
        size_over_m: report.size_over_m,
        levels: report.k,
        second_multiplicity: report.e2,
        hat_fingerprint: hat_fingerprint(lam, m)?,
    }))
}

fn kappa_cells(cgf: &qhook_core::exactpoly::Cgf, stats: &[usize]) -> Result<Vec<KappaCell>> {
    let upto = *stats.iter().max().expect("stats validated nonempty");
    let report = standardized_cumulants(cgf, upto)?;
    Ok(stats
        .iter()
        .map(|&d| KappaCell {
            d,
            standardized: report.standardized[d - 1],
        })
        .collect())
}

fn build_row(spec: &ScanSpec, prepared: &Prepared, param: u64) -> Result<ScanRow> {
    let (description, cgf, diag_input) = match prepared {
        Prepared::ScalePartition { base, text, m } => {
            let lam = base.scaled(&BigUint::from(param))?;
            (
                format!("{param}*({text}) m={m}"),
                ssyt_rank_cgf_weyl(&lam, *m)?,
                Some((lam, *m)),
            )
        }
        Prepared::ScaleRows {
            base,
            text,
            m0,
            rule,
        } => {
            let (factor, label) = match rule {
                FactorRule::Pow10 => (
                    BigUint::from(10u32).pow(param as u32),
                    format!("10^{param}*({text})"),
                ),
                FactorRule::Linear => (BigUint::from(param), format!("{param}*({text})")),
            };
            let m = m0 + param;
            let lam = base.scaled(&factor)?;
            (
                format!("{label} m={m}"),
                ssyt_rank_cgf_weyl(&lam, m)?,
                Some((lam, m)),
            )
        }
        Prepared::PpBox { a, b } => {
            let c = param;
            let shape = Partition::from_u64(&vec![*b; *a as usize])?;
            (
                format!("pp {a}x{b}x{c}"),
                pp_size_cgf(*a, *b, c)?,
                Some((shape, a + c)),
            )
        }
        Prepared::TreeFamily { gap } => {
            let n = param;
            let r = n
                .checked_sub(*gap)
                .ok_or_else(|| Error::parse("tree-family parameter is below the gap"))?;
            let tree = h_tree(n, r)?;
            let cgf = forest_cgf(&tree)?;
            let elev = elevations(&tree, ChainStrategy::Leftmost)?;
            let diag = Diag::Tree(TreeDiag {
                n: tree.n(),
                r: elev.r(),
                gap: n - r,
                gap_over_sqrt_n: (n - r) as f64 / (n as f64).sqrt(),
                e_over_r_norm_sq: ExactValue::new(&elev.e_over_r_norm_sq()),
            });
            let kappa = kappa_cells(&cgf, &spec.stats)?;
            return Ok(ScanRow {
                param,
                description: format!("H_{{{n},{r}}}"),
                kappa,
                diagnostics: spec.diagnostics.then_some(diag),
            });
        }
        Prepared::CustomList { instances } => {
            let inst = &instances[(param - 1) as usize];
            let base = Partition::parse(&inst.shape)?;
            let text = partition_text(&base);
            let lam = match &inst.scale {
                Some(s) => base.scaled(&parse_scale(s)?)?,
                None => base,
            };
            let label = match &inst.scale {
                Some(s) => format!("{}*({text}) m={}", s.trim(), inst.m),
                None => format!("({text}) m={}", inst.m),
            };
            (label, ssyt_rank_cgf_weyl(&lam, inst.m)?, Some((lam, inst.m)))
        }
    };
    let kappa = kappa_cells(&cgf, &spec.stats)?;
    let diagnostics = if spec.diagnostics {
        let (lam, m) = diag_input.expect("every shape family carries its partition");
        Some(shape_diag(&lam, m)?)
    } else {
        None
    };
    Ok(ScanRow {
        param,
        description,
        kappa,
        diagnostics,
    })
}

#[derive(Serialize)]
struct ScanPayload<'a> {
    spec: &'a ScanSpec,
    rows: &'a [ScanRow],
}

pub fn run(args: &ScanArgs, fmt: Format, gnuplot: Option<&std::path::Path>) -> Result<()> {
    let mut spec = spec_from_args(args)?;
    let prepared = prepare(&mut spec)?;
    let results = par_map(&spec.params, |&p| build_row(&spec, &prepared, p));
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    if let Some(path) = gnuplot {
        let pairs: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r.param as f64, r.kappa[0].standardized))
            .collect();
        write_xy(path, &pairs)?;
    }
    match fmt {
        Format::Json => print_json(&ScanPayload {
            spec: &spec,
            rows: &rows,
        }),
        Format::Text | Format::Csv => {
            println!("{}", header());
            let mut columns = vec!["param".to_string(), "description".to_string()];
            for d in &spec.stats {
                columns.push(format!("kappa{d}_star"));
            }
            if spec.diagnostics {
                match spec.family {
                    Family::TreeFamily => {
                        for c in ["n", "r", "gap", "gap_over_sqrt_n", "e_over_r_norm_sq"] {
                            columns.push(c.to_string());
                        }
                    }
                    _ => {
                        for c in [
                            "weft",
                            "top_over_m_cubed",
                            "size_over_m",
                            "levels",
                            "second_multiplicity",
                            "hat_fingerprint",
                        ] {
                            columns.push(c.to_string());
                        }
                    }
                }
            }
            let float = |x: f64| {
                if fmt == Format::Csv {
                    full_float(x)
                } else {
                    x.to_string()
                }
            };
            let mut table = Table {
                columns,
                rows: Vec::new(),
            };
            for row in &rows {
                let mut cells = vec![row.param.to_string(), row.description.clone()];
                for cell in &row.kappa {
                    cells.push(float(cell.standardized));
                }
                match &row.diagnostics {
                    None => {}
                    Some(Diag::Shape(d)) => {
                        cells.push(match &d.weft {
                            Some(w) => float(w.value),
                            None => "-".into(),
                        });
                        cells.push(float(d.top_over_m_cubed.value));
                        cells.push(float(d.size_over_m.value));
                        cells.push(d.levels.to_string());
                        cells.push(d.second_multiplicity.to_string());
                        cells.push(d.hat_fingerprint.clone());
                    }
                    Some(Diag::Tree(d)) => {
                        cells.push(d.n.to_string());
                        cells.push(d.r.to_string());
                        cells.push(d.gap.to_string());
                        cells.push(float(d.gap_over_sqrt_n));
                        cells.push(float(d.e_over_r_norm_sq.value));
                    }
                }
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
