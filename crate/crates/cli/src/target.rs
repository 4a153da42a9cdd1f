//! Discrete generating-function targets shared by `gf`, `cumulants`, and
//! `compare`: a tableau family instance or a rooted forest, resolved to a
//! product-form generating function plus enough context for cross-checks.

use clap::Subcommand;
use num_bigint::BigUint;
use num_traits::Zero;
use qhook_core::exactpoly::Cgf;
use qhook_core::forests::{
    forest_cgf, h_tree, linear_extensions, parse_forest, Labeling, RootedForest,
};
use qhook_core::tableaux::{
    enumerate_pp, enumerate_ssyt, enumerate_syt, gf_from_stats, pp_size_cgf,
    ssyt_rank_cgf_hookcontent, ssyt_rank_cgf_weyl, syt_maj_cgf, Partition,
};
use qhook_core::{Error, ErrorKind, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SsytForm {
    /// Ratio of q-integers built from shifted row differences.
    Weyl,
    /// Ratio built from cell hooks and contents.
    HookContent,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Target {
    /// Standard Young tableaux of a shape, counted by major index.
    Syt {
        /// Partition, comma separated weakly decreasing parts: "3,1".
        #[arg(long)]
        shape: String,
        /// Multiply every part by an integer factor: "1000" or "10^100".
        #[arg(long)]
        scale: Option<String>,
    },
    /// Semistandard Young tableaux with entries at most m, counted by rank.
    Ssyt {
        /// Partition, comma separated weakly decreasing parts.
        #[arg(long)]
        shape: String,
        /// Number of allowed entry values; at least the number of parts.
        #[arg(long)]
        m: u64,
        /// Multiply every part by an integer factor: "1000" or "10^100".
        #[arg(long)]
        scale: Option<String>,
        /// Which product form to build; both expand identically.
        #[arg(long, value_enum, default_value_t = SsytForm::Weyl)]
        form: SsytForm,
    },
    /// Plane partitions inside a box, counted by size.
    Pp {
        /// Box side lengths "a,b,c".
        #[arg(long = "box", value_name = "A,B,C")]
        dims: String,
    },
    /// Linear extensions of a rooted forest, counted by major index.
    Forest {
        /// Nested parentheses, one group per root: "((()()))".
        #[arg(long, conflicts_with = "h_tree")]
        tree: Option<String>,
        /// Extremal tree H_{n,r} given as "n,r".
        #[arg(long = "h-tree", value_name = "N,R")]
        h_tree: Option<String>,
    },
}

/// What a target resolved to, with exact objects kept around for oracle
/// cross-checks and profile-based comparisons.
pub enum ResolvedKind {
    Syt { lam: Partition },
    Ssyt { lam: Partition, m: u64 },
    Pp { a: u64, b: u64, c: u64 },
    Forest { forest: RootedForest },
}

pub struct Resolved {
    pub description: String,
    pub cgf: Cgf,
    pub kind: ResolvedKind,
}

/// Accepts a plain decimal or "B^E" power notation, so huge factors never
/// pass through a machine integer.
pub fn parse_scale(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: BigUint = base
                .trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad scale base {base:?}: {e}")))?;
            let exp: u32 = exp
                .trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad scale exponent {exp:?}: {e}")))?;
            base.pow(exp)
        }
        None => s
            .parse()
            .map_err(|e| Error::parse(format!("bad scale {s:?}: {e}")))?,
    };
    if value.is_zero() {
        return Err(Error::parse("scale must be positive"));
    }
    Ok(value)
}

pub fn parse_box(s: &str) -> Result<(u64, u64, u64)> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad box side {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Error::parse("a box needs exactly three sides: \"a,b,c\"")),
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(u64, u64)> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|e| Error::parse(format!("bad {what} component {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match parts[..] {
        [x, y] => Ok((x, y)),
        _ => Err(Error::parse(format!("{what} needs exactly two components"))),
    }
}

pub fn partition_text(lam: &Partition) -> String {
    lam.parts()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Shape description that keeps huge factors symbolic: "10^100*(8,4,3,1,1)".
fn shape_desc(lam: &Partition, scale: &Option<String>) -> String {
    match scale {
        Some(s) => format!("{}*({})", s.trim(), partition_text(lam)),
        None => partition_text(lam),
    }
}

fn scaled(lam: Partition, scale: &Option<String>) -> Result<Partition> {
    match scale {
        Some(s) => lam.scaled(&parse_scale(s)?),
        None => Ok(lam),
    }
}

pub fn build_forest(tree: &Option<String>, h_tree_arg: &Option<String>) -> Result<(String, RootedForest)> {
    match (tree, h_tree_arg) {
        (Some(text), None) => Ok((format!("forest {}", text.trim()), parse_forest(text)?)),
        (None, Some(nr)) => {
            let (n, r) = parse_pair(nr, "--h-tree")?;
            Ok((format!("H_{{{n},{r}}}"), h_tree(n, r)?))
        }
        _ => Err(Error::parse("pass exactly one of --tree or --h-tree")),
    }
}

pub fn resolve(target: &Target) -> Result<Resolved> {
    match target {
        Target::Syt { shape, scale } => {
            let base = Partition::parse(shape)?;
            let desc = format!("syt {}", shape_desc(&base, scale));
            let lam = scaled(base, scale)?;
            let cgf = syt_maj_cgf(&lam)?;
            Ok(Resolved {
                description: desc,
                cgf,
                kind: ResolvedKind::Syt { lam },
            })
        }
        Target::Ssyt {
            shape,
            m,
            scale,
            form,
        } => {
            let base = Partition::parse(shape)?;
            let desc = format!("ssyt {} m={m}", shape_desc(&base, scale));
            let lam = scaled(base, scale)?;
            let cgf = match form {
                SsytForm::Weyl => ssyt_rank_cgf_weyl(&lam, *m)?,
                SsytForm::HookContent => ssyt_rank_cgf_hookcontent(&lam, *m)?,
            };
            Ok(Resolved {
                description: desc,
                cgf,
                kind: ResolvedKind::Ssyt { lam, m: *m },
            })
        }
        Target::Pp { dims } => {
            let (a, b, c) = parse_box(dims)?;
            Ok(Resolved {
                description: format!("pp {a}x{b}x{c}"),
                cgf: pp_size_cgf(a, b, c)?,
                kind: ResolvedKind::Pp { a, b, c },
            })
        }
        Target::Forest { tree, h_tree } => {
            let (desc, forest) = build_forest(tree, h_tree)?;
            Ok(Resolved {
                description: desc,
                cgf: forest_cgf(&forest)?,
                kind: ResolvedKind::Forest { forest },
            })
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OracleOutcome {
    /// The brute-force generating function matched the expanded product.
    Ok { objects: u64 },
    /// The instance exceeds an enumeration guard; nothing was checked.
    Skipped { reason: String },
}

/// Cross-checks the expanded product against direct enumeration. Guard
/// errors downgrade to a skip; an actual mismatch is a hard error.
pub fn oracle_check(resolved: &Resolved) -> Result<OracleOutcome> {
    let enumerated = match &resolved.kind {
        ResolvedKind::Syt { lam } => {
            enumerate_syt(lam).map(|objs| gf_from_stats(&stats_of(&objs)))
        }
        ResolvedKind::Ssyt { lam, m } => {
            enumerate_ssyt(lam, *m).map(|objs| gf_from_stats(&stats_of(&objs)))
        }
        ResolvedKind::Pp { a, b, c } => {
            enumerate_pp(*a, *b, *c).map(|objs| gf_from_stats(&stats_of(&objs)))
        }
        ResolvedKind::Forest { forest } => {
            let natural = Labeling::natural(forest);
            linear_extensions(forest, &natural).map(|report| {
                let majs: Vec<u64> = report.extensions.iter().map(|e| e.maj).collect();
                // The natural labeling has maj statistic 0, so no shift is due.
                gf_from_stats(&majs)
            })
        }
    };
    let enumerated = match enumerated {
        Ok(gf) => gf,
        Err(e) if e.kind() == ErrorKind::Guard => {
            return Ok(OracleOutcome::Skipped {
                reason: e.to_string(),
            })
        }
        Err(e) => return Err(e),
    };
    let expanded = resolved.cgf.expand()?;
    if enumerated != expanded {
        return Err(Error::Domain(format!(
            "oracle mismatch for {}: enumeration gives {}, product expands to {}",
            resolved.description, enumerated, expanded
        )));
    }
    let objects = u64::try_from(expanded.mass().magnitude().clone()).unwrap_or(u64::MAX);
    Ok(OracleOutcome::Ok { objects })
}

fn stats_of<T>(objs: &[(T, u64)]) -> Vec<u64> {
    objs.iter().map(|(_, s)| *s).collect()
}
