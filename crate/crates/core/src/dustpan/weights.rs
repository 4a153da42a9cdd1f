//! Weight multisets for generalized uniform sums: norms, the hat rescaling,
//! exact cumulants, distance multisets, and sequence-convergence diagnostics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{bernoulli, rational_to_f64};

/// Largest multiset size for which pairwise distance multisets are
/// materialized (C(m,2) entries).
pub const DISTANCE_MULTISET_GUARD: usize = 2000;

/// Largest padding block (m_N^2 copies) appended by [`WeightMultiset::padded_sequence`].
pub const PADDING_GUARD: u64 = 1_000_000;

/// Exact description of the entries as `base_k * sqrt(factor)`.
///
/// Rational multisets have `factor = 1`; the hat rescaling keeps the
/// original rational base and moves the irrational `sqrt(12)/|t|_2` into
/// `factor`, so even-order norms and cumulants stay exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactWeights {
    base: Vec<BigRational>,
    factor: BigRational,
}

impl ExactWeights {
    pub fn base(&self) -> &[BigRational] {
        &self.base
    }

    pub fn factor(&self) -> &BigRational {
        &self.factor
    }

    /// `sum_k entry_k^d = factor^{d/2} * sum_k base_k^d`, exact for even d.
    pub fn even_power_sum(&self, d: usize) -> Option<BigRational> {
        if d == 0 || d % 2 != 0 {
            return None;
        }
        let mut sum = BigRational::zero();
        for b in &self.base {
            sum += rat_pow(b, d);
        }
        Some(rat_pow(&self.factor, d / 2) * sum)
    }
}

fn rat_pow(r: &BigRational, n: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..n {
        out *= r;
    }
    out
}

/// A weakly decreasing multiset of nonnegative weights t, the finite
/// truncation of a point of the decreasing sequence space. Zero entries are
/// kept as given: they matter for multiset sizes (a distance multiset has
/// exactly C(m,2) entries). Operations that need positive weights, like the
/// density, trim trailing zeros themselves via `trimmed`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMultiset {
    entries: Vec<f64>,
    exact: Option<ExactWeights>,
}

fn validate_entries(entries: &[f64]) -> Result<()> {
    for &e in entries {
        if !e.is_finite() || e < 0.0 {
            return Err(Error::BadParameters(format!(
                "weight entries must be finite and nonnegative, got {e}"
            )));
        }
    }
    Ok(())
}

impl WeightMultiset {
    pub fn empty() -> Self {
        Self::from_sorted_scaled(Vec::new(), BigRational::one())
    }

    /// Float-only multiset; sorts decreasing, keeps zeros.
    pub fn from_f64(mut entries: Vec<f64>) -> Result<Self> {
        validate_entries(&entries)?;
        entries.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        Ok(WeightMultiset { entries, exact: None })
    }

    /// Exact rational multiset; sorts decreasing, keeps zeros.
    pub fn from_rationals(mut base: Vec<BigRational>) -> Result<Self> {
        if base.iter().any(|b| b.is_negative()) {
            return Err(Error::BadParameters(
                "weight entries must be nonnegative".into(),
            ));
        }
        base.sort_by(|a, b| b.cmp(a));
        Ok(Self::from_sorted_scaled(base, BigRational::one()))
    }

    /// Exact multiset with entries `base_k * sqrt(factor)`, `base` already
    /// sorted weakly decreasing. Zero entries are kept as given.
    pub(crate) fn from_sorted_scaled(base: Vec<BigRational>, factor: BigRational) -> Self {
        debug_assert!(base.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(factor.is_positive());
        let root = rational_to_f64(&factor).sqrt();
        let entries = base.iter().map(|b| rational_to_f64(b) * root).collect();
        WeightMultiset {
            entries,
            exact: Some(ExactWeights { base, factor }),
        }
    }

    /// Parses "1,1/2,0.25" (decimals or fractions, all exact). Empty input
    /// gives the empty multiset.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeightMultiset::empty());
        }
        let base = s
            .split(',')
            .map(|tok| parse_nonneg_rational(tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rationals(base)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exact(&self) -> Option<&ExactWeights> {
        self.exact.as_ref()
    }

    /// Entry at index i, zero beyond the stored length.
    pub fn entry(&self, i: usize) -> f64 {
        self.entries.get(i).copied().unwrap_or(0.0)
    }

    /// Total support width of S_t: sum of the entries.
    pub fn total_width(&self) -> f64 {
        self.entries.iter().sum()
    }

    /// Copy with trailing zeros removed.
    pub fn trimmed(&self) -> Self {
        let mut out = self.clone();
        while out.entries.last() == Some(&0.0) {
            out.entries.pop();
            if let Some(ex) = out.exact.as_mut() {
                ex.base.pop();
            }
        }
        out
    }

    /// `(sum t_k^p)^{1/p}`; the sup norm (p = infinity) is the first entry.
    pub fn p_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::BadP);
        }
        if p.is_infinite() {
            return Ok(self.entry(0));
        }
        Ok(self
            .entries
            .iter()
            .map(|t| t.powf(p))
            .sum::<f64>()
            .powf(1.0 / p))
    }

    /// `sum t_k^2` in floats.
    pub fn norm2_sq(&self) -> f64 {
        self.entries.iter().map(|t| t * t).sum()
    }

    /// `sum t_k^2` as an exact rational when available.
    pub fn norm2_sq_exact(&self) -> Option<BigRational> {
        self.exact.as_ref().and_then(|e| e.even_power_sum(2))
    }

    /// `sqrt(12) * t / |t|_2`, the rescaling with 2-norm-squared 12 (unit
    /// variance of S_t). Idempotent; exactness is preserved through the
    /// scale factor.
    pub fn hat(&self) -> Result<WeightMultiset> {
        let s2 = self.norm2_sq();
        if s2 <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        match &self.exact {
            Some(ex) => {
                let base_s2: BigRational =
                    ex.base.iter().map(|b| b * b).sum::<BigRational>();
                let factor = BigRational::from(BigInt::from(12)) / base_s2;
                Ok(Self::from_sorted_scaled(ex.base.clone(), factor))
            }
            None => {
                let scale = (12.0 / s2).sqrt();
                Ok(WeightMultiset {
                    entries: self.entries.iter().map(|t| t * scale).collect(),
                    exact: None,
                })
            }
        }
    }

    /// d-th cumulant of S_t: `(B_d/d) |t|_d^d`, as a float plus an exact
    /// rational when the entries are exact (odd d vanishes exactly).
    pub fn sum_cumulant(&self, d: usize) -> Result<(f64, Option<BigRational>)> {
        if d < 2 {
            return Err(Error::Domain("cumulant order must be at least 2".into()));
        }
        let b = bernoulli(d);
        if b.is_zero() || self.entries.is_empty() {
            return Ok((0.0, Some(BigRational::zero())));
        }
        let exact = self.exact.as_ref().and_then(|e| e.even_power_sum(d)).map(|s| {
            bernoulli(d) / BigRational::from(BigInt::from(d)) * s
        });
        let float = match &exact {
            Some(r) => rational_to_f64(r),
            None => {
                let pd: f64 = self.entries.iter().map(|t| t.powi(d as i32)).sum();
                rational_to_f64(&b) / d as f64 * pd
            }
        };
        Ok((float, exact))
    }

    /// All pairwise differences `t_i - t_j` (i < j), sorted decreasing.
    /// Zero differences are kept, so the result has exactly C(m,2) entries.
    pub fn distance_multiset(&self) -> Result<WeightMultiset> {
        let m = self.len();
        if m > DISTANCE_MULTISET_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "distance multiset of {m} entries has {} pairs (limit {})",
                m * (m - 1) / 2,
                DISTANCE_MULTISET_GUARD * (DISTANCE_MULTISET_GUARD - 1) / 2
            )));
        }
        match &self.exact {
            Some(ex) => {
                let mut base = Vec::with_capacity(m * (m - 1) / 2);
                for i in 0..m {
                    for j in i + 1..m {
                        base.push(&ex.base[i] - &ex.base[j]);
                    }
                }
                base.sort_by(|a, b| b.cmp(a));
                Ok(Self::from_sorted_scaled(base, ex.factor.clone()))
            }
            None => {
                let mut entries = Vec::with_capacity(m * (m - 1) / 2);
                for i in 0..m {
                    for j in i + 1..m {
                        entries.push((self.entries[i] - self.entries[j]).max(0.0));
                    }
                }
                entries.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
                Ok(WeightMultiset { entries, exact: None })
            }
        }
    }

    /// The 2-norm repair construction: keeps the first N entries, then
    /// appends `m_N^2` copies of `eps_N/m_N` with `eps_N = sqrt(M - sum of
    /// kept squares)` and `m_N` least with `eps_N/m_N <= 1/N`. The result
    /// has 2-norm-squared M while converging entrywise to t as N grows.
    pub fn padded_sequence(&self, m_target: f64, n: usize) -> Result<WeightMultiset> {
        if n == 0 {
            return Err(Error::BadParameters("N must be positive".into()));
        }
        let full = self.norm2_sq();
        if m_target < full - 1e-12 {
            return Err(Error::MTooSmall {
                m: m_target,
                norm2_sq: full,
            });
        }
        let kept: Vec<f64> = self.entries.iter().take(n).copied().collect();
        let kept_sq: f64 = kept.iter().map(|t| t * t).sum();
        let eps = (m_target - kept_sq).max(0.0).sqrt();
        if eps == 0.0 {
            return WeightMultiset::from_f64(kept);
        }
        let m_n = (eps * n as f64).ceil().max(1.0);
        if m_n * m_n > PADDING_GUARD as f64 {
            return Err(Error::InstanceTooLarge(format!(
                "padding block of {m_n}^2 entries exceeds {PADDING_GUARD}"
            )));
        }
        let m_n = m_n as u64;
        let mut entries = kept;
        entries.extend(std::iter::repeat(eps / m_n as f64).take((m_n * m_n) as usize));
        WeightMultiset::from_f64(entries)
    }
}

fn parse_nonneg_rational(tok: &str) -> Result<BigRational> {
    if tok.is_empty() {
        return Err(Error::parse("empty weight entry"));
    }
    if let Some((num, den)) = tok.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad fraction {tok:?}: {e}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad fraction {tok:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in {tok:?}")));
        }
        let r = BigRational::new(n, d);
        if r.is_negative() {
            return Err(Error::parse(format!("negative weight {tok:?}")));
        }
        return Ok(r);
    }
    let (int_part, frac_part) = match tok.split_once('.') {
        Some((i, f)) => (i, f),
        None => (tok, ""),
    };
    if int_part.starts_with('-') {
        return Err(Error::parse(format!("negative weight {tok:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits
        .parse()
        .map_err(|e| Error::parse(format!("bad decimal {tok:?}: {e}")))?;
    Ok(BigRational::new(n, BigInt::from(10).pow(frac_part.len() as u32)))
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(ex) if ex.factor.is_one() => {
                let parts: Vec<String> = ex.base.iter().map(|b| b.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            Some(ex) => {
                let parts: Vec<String> = ex.base.iter().map(|b| b.to_string()).collect();
                write!(f, "sqrt({})*({})", ex.factor, parts.join(","))
            }
            None => {
                let parts: Vec<String> = self.entries.iter().map(|e| format!("{e}")).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightItemWire {
    Number(f64),
    Exact(String),
}

#[derive(Serialize, Deserialize)]
struct ScaledWire {
    base: Vec<String>,
    factor: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightWire {
    List(Vec<WeightItemWire>),
    Scaled(ScaledWire),
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.exact {
            Some(ex) if !ex.factor.is_one() => ScaledWire {
                base: ex.base.iter().map(|b| b.to_string()).collect(),
                factor: ex.factor.to_string(),
            }
            .serialize(serializer),
            Some(ex) => {
                serializer.collect_seq(ex.base.iter().map(|b| WeightItemWire::Exact(b.to_string())))
            }
            None => serializer.collect_seq(self.entries.iter().map(|e| WeightItemWire::Number(*e))),
        }
    }
}

impl<'de> Deserialize<'de> for WeightMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = WeightWire::deserialize(deserializer)?;
        let built = match raw {
            WeightWire::List(items) => {
                // Numbers become their exact binary value, strings parse as
                // decimals or fractions, so exactness survives round-trips.
                let base = items
                    .into_iter()
                    .map(|item| match item {
                        WeightItemWire::Number(x) => BigRational::from_float(x).ok_or_else(|| {
                            D::Error::custom(format!("non-finite weight {x}"))
                        }),
                        WeightItemWire::Exact(s) => parse_nonneg_rational(s.trim())
                            .map_err(|e| D::Error::custom(e.to_string())),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                WeightMultiset::from_rationals(base).map_err(|e| D::Error::custom(e.to_string()))
            }
            WeightWire::Scaled(wire) => {
                let base = wire
                    .base
                    .iter()
                    .map(|s| {
                        s.trim()
                            .parse::<BigRational>()
                            .map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let factor = wire
                    .factor
                    .parse::<BigRational>()
                    .map_err(|e| D::Error::custom(format!("bad factor: {e}")))?;
                if !factor.is_positive() {
                    return Err(D::Error::custom("scale factor must be positive"));
                }
                let mut sorted = base;
                sorted.sort_by(|a, b| b.cmp(a));
                if sorted.iter().any(|b| b.is_negative()) {
                    return Err(D::Error::custom("weight entries must be nonnegative"));
                }
                Ok(WeightMultiset::from_sorted_scaled(sorted, factor))
            }
        };
        built
    }
}

/// Entrywise and even-norm trajectories across a sequence of multisets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub tol: f64,
    pub entries: Vec<EntryTrajectory>,
    pub norms: Vec<NormTrajectory>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryTrajectory {
    pub index: usize,
    pub values: Vec<f64>,
    /// True when the last three values (or all, if fewer) pairwise agree
    /// within tol.
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormTrajectory {
    pub p: usize,
    pub values: Vec<f64>,
}

/// Tracks each entry index and the even norms |.|_p, p = 2,4,6,8, across
/// `seq`; convergence here is a numeric diagnostic on the tail, not a proof.
pub fn pointwise_convergence_check(
    seq: &[WeightMultiset],
    tol: f64,
) -> Result<ConvergenceReport> {
    if seq.is_empty() {
        return Err(Error::BadParameters("empty sequence".into()));
    }
    let max_len = seq.iter().map(|t| t.len()).max().unwrap_or(0);
    let entries = (0..max_len)
        .map(|i| {
            let values: Vec<f64> = seq.iter().map(|t| t.entry(i)).collect();
            let tail = &values[values.len().saturating_sub(3)..];
            let converged = tail
                .iter()
                .flat_map(|a| tail.iter().map(move |b| (a - b).abs()))
                .all(|d| d <= tol);
            EntryTrajectory {
                index: i,
                values,
                converged,
            }
        })
        .collect();
    let norms = [2usize, 4, 6, 8]
        .iter()
        .map(|&p| {
            Ok(NormTrajectory {
                p,
                values: seq
                    .iter()
                    .map(|t| t.p_norm(p as f64))
                    .collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        tol,
        entries,
        norms,
    })
}
