//! The `oracle` subcommand: small-instance equivalence suites. Each suite
//! compares a product formula against brute-force enumeration (or the
//! closed cumulant formula against the coefficient pipeline) on every
//! instance in a fixed small range, so a pass certifies the formulas on
//! the ranges a reviewer can still check by hand.

use qhook_core::exactpoly::{cgf_cumulant, cumulants_from_moments, moments_from_poly, Cgf};
use qhook_core::forests::{all_forests, all_trees, seeded_labelings, verify_bw, Labeling};
use qhook_core::tableaux::{
    enumerate_pp, enumerate_ssyt, enumerate_syt, gf_from_stats, pp_size_cgf,
    ssyt_rank_cgf_hookcontent, ssyt_rank_cgf_weyl, syt_maj_cgf, Partition,
};
use qhook_core::{Error, Result};
use serde::Serialize;

use crate::output::{header, print_json, Format, Table};

#[derive(Serialize)]
pub struct SuiteResult {
    suite: String,
    cases: usize,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn suite(name: &str, body: impl FnOnce() -> Result<usize>) -> SuiteResult {
    match body() {
        Ok(cases) => SuiteResult {
            suite: name.to_string(),
            cases,
            ok: true,
            detail: None,
        },
        Err(e) => SuiteResult {
            suite: name.to_string(),
            cases: 0,
            ok: false,
            detail: Some(e.to_string()),
        },
    }
}

fn partitions_of(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut tail in partitions_of(n - first, first) {
            let mut p = vec![first];
            p.append(&mut tail);
            out.push(p);
        }
    }
    out
}

fn partitions_up_to(total: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 1..=total {
        for parts in partitions_of(n, n) {
            out.push(Partition::from_u64(&parts).expect("generator emits valid partitions"));
        }
    }
    out
}

fn mismatch(what: impl std::fmt::Display) -> Error {
    Error::Domain(format!("oracle mismatch: {what}"))
}

pub fn run(seed: u64, fmt: Format) -> Result<()> {
    // Generating functions collected along the way feed the cumulant suite.
    let mut collected: Vec<Cgf> = Vec::new();

    let syt = suite("syt-maj", || {
        let mut cases = 0;
        for lam in partitions_up_to(7) {
            let cgf = syt_maj_cgf(&lam)?;
            let stats: Vec<u64> = enumerate_syt(&lam)?.iter().map(|(_, s)| *s).collect();
            if gf_from_stats(&stats) != cgf.expand()? {
                return Err(mismatch(format_args!("syt {lam:?}")));
            }
            collected.push(cgf);
            cases += 1;
        }
        Ok(cases)
    });

    let ssyt = suite("ssyt-rank", || {
        let mut cases = 0;
        for lam in partitions_up_to(5) {
            for m in lam.len() as u64..=4 {
                let weyl = ssyt_rank_cgf_weyl(&lam, m)?;
                let hook = ssyt_rank_cgf_hookcontent(&lam, m)?;
                let expanded = weyl.expand()?;
                if hook.expand()? != expanded {
                    return Err(mismatch(format_args!("ssyt forms {lam:?} m={m}")));
                }
                let stats: Vec<u64> =
                    enumerate_ssyt(&lam, m)?.iter().map(|(_, s)| *s).collect();
                if gf_from_stats(&stats) != expanded {
                    return Err(mismatch(format_args!("ssyt enumeration {lam:?} m={m}")));
                }
                collected.push(weyl);
                cases += 1;
            }
        }
        Ok(cases)
    });

    let pp = suite("pp-size", || {
        let mut cases = 0;
        for a in 1..=12u64 {
            for b in 1..=12 / a {
                for c in 1..=12 / (a * b) {
                    let cgf = pp_size_cgf(a, b, c)?;
                    let stats: Vec<u64> =
                        enumerate_pp(a, b, c)?.iter().map(|(_, s)| *s).collect();
                    if gf_from_stats(&stats) != cgf.expand()? {
                        return Err(mismatch(format_args!("pp {a}x{b}x{c}")));
                    }
                    collected.push(cgf);
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });

    let forests = suite("forest-maj", || {
        let mut cases = 0;
        let mut pool = Vec::new();
        for n in 1..=5 {
            pool.extend(all_forests(n));
        }
        pool.extend(all_trees(6));
        for forest in &pool {
            let natural = verify_bw(forest, &Labeling::natural(forest))?;
            if !natural.maj_ok || !natural.inv_ok {
                return Err(mismatch(format_args!(
                    "natural labeling on {}",
                    forest.to_text()
                )));
            }
            cases += 1;
        }
        // Sampled labeling sweep: the maj identity must hold for every
        // labeling, regular or not.
        for forest in &pool {
            let n = forest.n();
            if n < 4 {
                continue;
            }
            for w in seeded_labelings(n, 6, seed ^ (cases as u64)) {
                let report = verify_bw(forest, &w)?;
                if !report.maj_ok {
                    return Err(mismatch(format_args!(
                        "maj identity under labeling {:?} on {}",
                        w.images(),
                        forest.to_text()
                    )));
                }
                if report.regular && !report.inv_ok {
                    return Err(mismatch(format_args!(
                        "inv identity under regular labeling {:?} on {}",
                        w.images(),
                        forest.to_text()
                    )));
                }
                cases += 1;
            }
        }
        Ok(cases)
    });

    let cumulants = suite("cumulant-closed-form", || {
        let mut cases = 0;
        for cgf in &collected {
            let poly = cgf.expand()?;
            let mu = moments_from_poly(&poly, 4)?;
            let kappa = cumulants_from_moments(&mu);
            for d in 1..=4 {
                if cgf_cumulant(cgf, d)? != kappa[d - 1] {
                    return Err(mismatch(format_args!("cumulant d={d} for {cgf}")));
                }
                cases += 1;
            }
        }
        Ok(cases)
    });

    let suites = vec![syt, ssyt, pp, forests, cumulants];
    match fmt {
        Format::Json => print_json(&suites)?,
        Format::Text | Format::Csv => {
            println!("{}", header());
            let mut table = Table::new(&["suite", "cases", "status", "detail"]);
            for s in &suites {
                table.push(vec![
                    s.suite.clone(),
                    s.cases.to_string(),
                    if s.ok { "ok".into() } else { "failed".into() },
                    s.detail.clone().unwrap_or_default(),
                ]);
            }
            if fmt == Format::Csv {
                table.print_csv();
            } else {
                table.print_text();
            }
        }
    }
    if let Some(bad) = suites.iter().find(|s| !s.ok) {
        return Err(Error::Domain(format!(
            "oracle suite {} failed: {}",
            bad.suite,
            bad.detail.clone().unwrap_or_default()
        )));
    }
    Ok(())
}
