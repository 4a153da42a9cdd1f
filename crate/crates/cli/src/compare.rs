//! The `compare` subcommand: numeric Kolmogorov and Levy distances
//! between a discrete generating-function distribution (standardized)
//! and a continuous limit law.

use clap::Args;
use qhook_core::dustpan::{
    discrete_vs_discrete_distance, discrete_vs_limit_distance, DistanceReport, DustpanParams,
    WeightMultiset,
};
use qhook_core::tableaux::{distance_profile, Partition};
use qhook_core::{Error, Result};
use serde::Serialize;

use crate::output::{full_float, header, print_json, Format, Table};
use crate::target::{resolve, Resolved, ResolvedKind, Target};

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(subcommand)]
    pub target: Target,
    /// Limit law: "profile" (hat difference multiset of the target shape),
    /// "ih:M" (standardized sum of M uniforms), "t:1,1/2" (explicit
    /// weights), or "self" (the target against its own step CDF).
    #[arg(long, global = true, value_name = "SPEC")]
    pub limit: Option<String>,
    /// Gaussian component for the "t:" form.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub sigma: f64,
    /// Assert the "t:" form is standardized (variance 1).
    #[arg(long, global = true)]
    pub standardized: bool,
}

enum LimitSpec {
    Profile,
    SelfSame,
    Ih(usize),
    Weights(String),
}

fn parse_limit(s: &str) -> Result<LimitSpec> {
    let s = s.trim();
    if s == "profile" {
        return Ok(LimitSpec::Profile);
    }
    if s == "self" {
        return Ok(LimitSpec::SelfSame);
    }
    if let Some(m) = s.strip_prefix("ih:") {
        let m: usize = m
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad ih order {m:?}: {e}")))?;
        if m == 0 {
            return Err(Error::parse("ih order must be at least 1"));
        }
        return Ok(LimitSpec::Ih(m));
    }
    if let Some(w) = s.strip_prefix("t:") {
        return Ok(LimitSpec::Weights(w.to_string()));
    }
    Err(Error::parse(
        "--limit must be one of: profile, self, ih:M, t:W",
    ))
}

/// The shape whose row-difference profile drives the "profile" limit.
fn profile_source(resolved: &Resolved) -> Result<(Partition, u64)> {
    match &resolved.kind {
        ResolvedKind::Ssyt { lam, m } => Ok((lam.clone(), *m)),
        ResolvedKind::Pp { a, b, c } => {
            Ok((Partition::from_u64(&vec![*b; *a as usize])?, a + c))
        }
        _ => Err(Error::Domain(
            "limit \"profile\" needs an ssyt or pp target".into(),
        )),
    }
}

#[derive(Serialize)]
struct ComparePayload<'a> {
    left: &'a str,
    right: &'a str,
    #[serde(flatten)]
    report: &'a DistanceReport,
}

pub fn run(args: &CompareArgs, fmt: Format) -> Result<()> {
    let limit = parse_limit(
        args.limit
            .as_deref()
            .ok_or_else(|| Error::parse("compare needs --limit"))?,
    )?;
    let resolved = resolve(&args.target)?;
    let poly = resolved.cgf.expand()?;
    let (right_desc, report) = match limit {
        LimitSpec::SelfSame => (
            "self".to_string(),
            discrete_vs_discrete_distance(&poly, &poly)?,
        ),
        LimitSpec::Profile => {
            let (lam, m) = profile_source(&resolved)?;
            let profile = distance_profile(&lam, m)?;
            let hat = profile.hat_delta.ok_or(Error::DegenerateDistribution)?;
            let params = DustpanParams::new(hat, 0.0, true)?;
            (
                "profile (standardized hat difference multiset)".to_string(),
                discrete_vs_limit_distance(&poly, &params)?,
            )
        }
        LimitSpec::Ih(m) => {
            // M uniforms stretched to total variance 1.
            let entry = (12.0 / m as f64).sqrt();
            let t = WeightMultiset::from_f64(vec![entry; m])?;
            let params = DustpanParams::new(t, 0.0, true)?;
            (
                format!("ih:{m} (standardized)"),
                discrete_vs_limit_distance(&poly, &params)?,
            )
        }
        LimitSpec::Weights(text) => {
            let t = WeightMultiset::parse(&text)?;
            let params = DustpanParams::new(t, args.sigma, args.standardized)?;
            let desc = format!("t:{} sigma={}", text.trim(), args.sigma);
            (desc, discrete_vs_limit_distance(&poly, &params)?)
        }
    };
    match fmt {
        Format::Json => print_json(&ComparePayload {
            left: &resolved.description,
            right: &right_desc,
            report: &report,
        }),
        Format::Text => {
            println!("{}", header());
            println!("left: {}", resolved.description);
            println!("right: {right_desc}");
            println!("kolmogorov: {}", report.kolmogorov);
            println!("levy: {}", report.levy);
            println!("levy_tolerance: {}", report.levy_tolerance);
            println!("jumps: {}", report.jumps);
            Ok(())
        }
        Format::Csv => {
            println!("{}", header());
            let mut table = Table::new(&["metric", "value"]);
            table.push(vec!["left".into(), resolved.description.clone()]);
            table.push(vec!["right".into(), right_desc]);
            table.push(vec!["kolmogorov".into(), full_float(report.kolmogorov)]);
            table.push(vec!["levy".into(), full_float(report.levy)]);
            table.push(vec![
                "levy_tolerance".into(),
                full_float(report.levy_tolerance),
            ]);
            table.push(vec!["jumps".into(), report.jumps.to_string()]);
            table.print_csv();
            Ok(())
        }
    }
}
