//! Partition statistics feeding the SSYT limit-law classification:
//! exponential notation, weft, distance profiles, and the per-instance
//! criteria report.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dustpan::{WeightMultiset, DISTANCE_MULTISET_GUARD};
use crate::error::{Error, Result};
use crate::serde_util::ExactValue;
use crate::tableaux::partition::Partition;

/// Highest order of the exact standardized cumulants stored in a
/// [`DistanceProfile`].
pub const PROFILE_CUMULANT_ORDERS: usize = 8;

/// A partition in exponential notation: distinct row lengths ("levels")
/// with multiplicities, zero-padded so the multiplicities sum to `m`.
///
/// Levels are strictly decreasing and every multiplicity is positive; a
/// zero level is present exactly when the partition has fewer than `m`
/// parts (or is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpNotation {
    levels: Vec<(BigUint, u64)>,
}

impl ExpNotation {
    pub fn levels(&self) -> &[(BigUint, u64)] {
        &self.levels
    }

    /// Number of distinct levels, written k.
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// Total multiplicity, which equals the padding length m.
    pub fn m(&self) -> u64 {
        self.levels.iter().map(|(_, e)| e).sum()
    }

    /// Second-largest multiplicity e^[2]; 0 when there is a single level.
    pub fn e2(&self) -> u64 {
        if self.levels.len() < 2 {
            return 0;
        }
        let mut counts: Vec<u64> = self.levels.iter().map(|(_, e)| *e).collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        counts[1]
    }
}

/// Exponential notation of `lam` zero-padded to length `m`.
pub fn exp_notation(lam: &Partition, m: u64) -> Result<ExpNotation> {
    if m == 0 {
        return Err(Error::Domain("padding length m must be positive".into()));
    }
    let len = lam.len() as u64;
    if len > m {
        return Err(Error::LengthExceedsM { len: lam.len(), m });
    }
    let mut levels: Vec<(BigUint, u64)> = Vec::new();
    for p in lam.parts() {
        match levels.last_mut() {
            Some((v, e)) if *v == *p => *e += 1,
            _ => levels.push((p.clone(), 1)),
        }
    }
    if len < m {
        levels.push((BigUint::zero(), m - len));
    }
    Ok(ExpNotation { levels })
}

/// The weft statistic of `lam` padded to length `m`:
///
/// `sum_{a<b} (l_a - l_b) e_a e_b (l_a - l_b - 1 + e_a + ... + e_b)`
/// divided by `(l_1 - l_k - 1 + m)^2`, where the multiplicity sum is
/// inclusive of both endpoints and the zero level counts.
pub fn weft(lam: &Partition, m: u64) -> Result<BigRational> {
    let exp = exp_notation(lam, m)?;
    let k = exp.k();
    if k < 2 {
        return Err(Error::SingleLevel);
    }
    let lv: Vec<BigInt> = exp.levels().iter().map(|(v, _)| BigInt::from(v.clone())).collect();
    let e: Vec<BigInt> = exp.levels().iter().map(|(_, c)| BigInt::from(*c)).collect();
    // esum[i] = e_0 + ... + e_i
    let mut esum = Vec::with_capacity(k);
    let mut acc = BigInt::zero();
    for c in &e {
        acc += c;
        esum.push(acc.clone());
    }
    let mut num = BigInt::zero();
    for a in 0..k {
        for b in a + 1..k {
            let gap = &lv[a] - &lv[b];
            let window = &gap - 1 + &esum[b] - if a == 0 { BigInt::zero() } else { esum[a - 1].clone() };
            num += gap * &e[a] * &e[b] * window;
        }
    }
    let den_root = &lv[0] - &lv[k - 1] - 1 + BigInt::from(m);
    Ok(BigRational::new(num, &den_root * &den_root))
}

/// The scaled row multiset t(lam), its difference multiset, the hat
/// rescaling, and exact standardized cumulants of the associated uniform
/// sum limit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceProfile {
    /// t_k = lam_k / lam_1, zero-padded to length m (zeros kept).
    pub t: WeightMultiset,
    /// All pairwise differences t_i - t_j for i < j, size C(m, 2).
    pub delta: WeightMultiset,
    /// `delta` rescaled to squared 2-norm 12; None when all rows are equal.
    pub hat_delta: Option<WeightMultiset>,
    /// Standardized cumulants of S*_delta for d = 1..=8, exact; None when
    /// the difference multiset is identically zero.
    #[serde(with = "crate::serde_util::opt_rational_strings")]
    pub standardized: Option<Vec<BigRational>>,
}

/// Distance profile of `lam` padded to length `m`.
pub fn distance_profile(lam: &Partition, m: u64) -> Result<DistanceProfile> {
    if lam.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let len = lam.len() as u64;
    if len > m {
        return Err(Error::LengthExceedsM { len: lam.len(), m });
    }
    if m > DISTANCE_MULTISET_GUARD as u64 {
        return Err(Error::InstanceTooLarge(format!(
            "padding length {m} exceeds the distance-multiset bound {DISTANCE_MULTISET_GUARD}"
        )));
    }
    let lam1 = BigInt::from(lam.part(0));
    let base: Vec<BigRational> = (0..m as usize)
        .map(|i| BigRational::new(BigInt::from(lam.part(i)), lam1.clone()))
        .collect();
    let t = WeightMultiset::from_sorted_scaled(base, BigRational::one());
    let delta = t.distance_multiset()?;
    let hat_delta = match delta.hat() {
        Ok(h) => Some(h),
        Err(Error::ZeroNorm) => None,
        Err(e) => return Err(e),
    };
    let standardized = match &hat_delta {
        None => None,
        Some(h) => {
            let mut kappa = Vec::with_capacity(PROFILE_CUMULANT_ORDERS);
            kappa.push(BigRational::zero());
            for d in 2..=PROFILE_CUMULANT_ORDERS {
                let (_, exact) = h.sum_cumulant(d)?;
                kappa.push(exact.ok_or_else(|| {
                    Error::Domain("hat multiset lost its exact representation".into())
                })?);
            }
            Some(kappa)
        }
    };
    Ok(DistanceProfile {
        t,
        delta,
        hat_delta,
        standardized,
    })
}

/// Box dimensions reported when the instance is a rectangle inside a box:
/// lam = (b^a) with m = a + c, c >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleReport {
    pub a: u64,
    pub b: String,
    pub c: u64,
    /// median of {a, b, c}; bounded iff the instance family stays normal.
    pub median: String,
    pub ab: String,
}

/// Instance-level diagnostics consumed by the limit theorems. No verdict
/// is issued for a single instance: limits only make sense for sequences,
/// and the scan command assembles these values into trend tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub partition: String,
    pub m: u64,
    /// |lam| as a decimal string.
    pub n: String,
    /// Number of distinct levels after zero-padding.
    pub k: usize,
    /// Exponential notation: (level, multiplicity) pairs.
    pub levels: Vec<(String, u64)>,
    /// Second-largest multiplicity e^[2].
    pub e2: u64,
    /// aft = n - max(lam_1, ell(lam)); None for the empty partition.
    pub aft: Option<String>,
    /// n / m.
    pub size_over_m: ExactValue,
    /// lam_1 / m^3.
    pub top_over_m_cubed: ExactValue,
    /// weft, when at least two levels exist.
    pub weft: Option<ExactValue>,
    /// m^2 / (k * l_1 * (k + l_1)); None when lam is empty.
    pub window_ratio: Option<ExactValue>,
    /// e^[2] / (k * (l_1/m + 1)^2).
    pub multiplicity_ratio: ExactValue,
    /// l_1 * e_1 * e_k / (l_1 + m).
    pub corner_ratio: ExactValue,
    /// Present exactly when lam = (b^a) and c = m - a >= 1.
    pub rectangle: Option<RectangleReport>,
}

/// Diagnostic report for the SSYT instance (lam, m).
pub fn classify_ssyt(lam: &Partition, m: u64) -> Result<CriteriaReport> {
    let exp = exp_notation(lam, m)?;
    let k = exp.k();
    let ki = BigInt::from(k);
    let mi = BigInt::from(m);
    let l1 = BigInt::from(exp.levels()[0].0.clone());
    let e1 = BigInt::from(exp.levels()[0].1);
    let ek = BigInt::from(exp.levels()[k - 1].1);
    let e2 = exp.e2();

    let n = lam.size();
    let size_over_m = ExactValue::new(&BigRational::new(BigInt::from(n.clone()), mi.clone()));
    let top_over_m_cubed = ExactValue::new(&BigRational::new(
        l1.clone(),
        mi.pow(3),
    ));
    let weft_val = if k >= 2 {
        Some(ExactValue::new(&weft(lam, m)?))
    } else {
        None
    };
    let window_ratio = if l1.is_positive() {
        Some(ExactValue::new(&BigRational::new(
            &mi * &mi,
            &ki * &l1 * (&ki + &l1),
        )))
    } else {
        None
    };
    let l1_plus_m = &l1 + &mi;
    let multiplicity_ratio = ExactValue::new(&BigRational::new(
        BigInt::from(e2) * &mi * &mi,
        &ki * &l1_plus_m * &l1_plus_m,
    ));
    let corner_ratio = ExactValue::new(&BigRational::new(&l1 * &e1 * &ek, l1_plus_m));

    let aft = if lam.is_empty() {
        None
    } else {
        Some(lam.aft()?.to_string())
    };

    let rectangle = rectangle_report(lam, m);

    Ok(CriteriaReport {
        partition: lam.to_string(),
        m,
        n: n.to_string(),
        k,
        levels: exp
            .levels()
            .iter()
            .map(|(v, e)| (v.to_string(), *e))
            .collect(),
        e2,
        aft,
        size_over_m,
        top_over_m_cubed,
        weft: weft_val,
        window_ratio,
        multiplicity_ratio,
        corner_ratio,
        rectangle,
    })
}

fn rectangle_report(lam: &Partition, m: u64) -> Option<RectangleReport> {
    if lam.is_empty() {
        return None;
    }
    let b = lam.part(0);
    if !lam.parts().iter().all(|p| *p == b) {
        return None;
    }
    let a = lam.len() as u64;
    if m <= a {
        return None;
    }
    let c = m - a;
    let mut trio = vec![BigUint::from(a), b.clone(), BigUint::from(c)];
    trio.sort();
    Some(RectangleReport {
        a,
        b: b.to_string(),
        c,
        median: trio[1].to_string(),
        ab: (BigUint::from(a) * &b).to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn staircase(n: u64) -> Partition {
        Partition::new((1..n).rev().map(BigUint::from).collect()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exp_notation_groups_and_pads() {
        let exp = exp_notation(&part("8,4,3,1,1"), 7).unwrap();
        let want: Vec<(BigUint, u64)> = [(8u32, 1u64), (4, 1), (3, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(v, e)| (BigUint::from(v), e))
            .collect();
        assert_eq!(exp.levels(), &want[..]);
        assert_eq!(exp.k(), 5);
        assert_eq!(exp.e2(), 2);
        assert_eq!(exp.m(), 7);

        let rect = exp_notation(&part("3,3,3"), 7).unwrap();
        assert_eq!(rect.k(), 2);
        assert_eq!(rect.levels()[1], (BigUint::zero(), 4));

        let empty = exp_notation(&Partition::empty(), 3).unwrap();
        assert_eq!(empty.levels(), &[(BigUint::zero(), 3)]);
        assert_eq!(empty.k(), 1);
        assert_eq!(empty.e2(), 0);

        assert!(matches!(
            exp_notation(&part("1,1"), 1),
            Err(Error::LengthExceedsM { len: 2, m: 1 })
        ));
        assert!(exp_notation(&Partition::empty(), 0).is_err());
    }

    #[test]
    fn weft_matches_the_staircase_closed_form() {
        // N^2 (N+1) / (24 (N-1)) for the staircase with m = N. At N = 2 the
        // formula gives 1/2 from the single pair (1,1,window 2)/(2^2).
        for n in 2u64..=10 {
            let lam = staircase(n);
            let got = weft(&lam, n).unwrap();
            let want = rat((n * n * (n + 1)) as i64, (24 * (n - 1)) as i64);
            assert_eq!(got, want, "staircase N={n}");
        }
        assert_eq!(weft(&part("2,1"), 3).unwrap(), rat(3, 4));
        assert_eq!(weft(&staircase(10), 10).unwrap(), rat(275, 54));
    }

    #[test]
    fn weft_needs_two_levels_and_is_positive() {
        assert!(matches!(weft(&part("3,3"), 2), Err(Error::SingleLevel)));
        assert!(matches!(weft(&Partition::empty(), 4), Err(Error::SingleLevel)));
        assert!(weft(&part("8,4,3,1,1"), 7).unwrap().is_positive());
        assert!(weft(&part("3,3"), 5).unwrap().is_positive());
    }

    #[test]
    fn distance_profile_recovers_exact_kurtosis() {
        let prof = distance_profile(&part("8,4,3,1,1"), 7).unwrap();
        assert_eq!(prof.t.len(), 7);
        assert_eq!(prof.delta.len(), 21);
        // sum of squared differences of (8,4,3,1,1,0,0) is 348; scaled by 1/8.
        assert_eq!(
            prof.delta.norm2_sq_exact().unwrap(),
            rat(348, 64)
        );
        let hat = prof.hat_delta.as_ref().unwrap();
        assert_eq!(hat.norm2_sq_exact().unwrap(), rat(12, 1));
        let kappa = prof.standardized.as_ref().unwrap();
        assert_eq!(kappa[0], rat(0, 1));
        assert_eq!(kappa[1], rat(1, 1));
        assert_eq!(kappa[2], rat(0, 1));
        assert_eq!(kappa[3], rat(-1229, 8410));
    }

    #[test]
    fn distance_profile_handles_edge_instances() {
        // Single positive row against a zero row: delta = {1}, the single
        // uniform summand, whose standardized fourth cumulant is -6/5.
        let prof = distance_profile(&part("1"), 2).unwrap();
        assert_eq!(prof.delta.len(), 1);
        assert_eq!(prof.standardized.as_ref().unwrap()[3], rat(-6, 5));

        // Equal rows with no padding: all differences vanish.
        let flat = distance_profile(&part("5,5"), 2).unwrap();
        assert_eq!(flat.delta.len(), 1);
        assert!(flat.hat_delta.is_none());
        assert!(flat.standardized.is_none());

        assert!(matches!(
            distance_profile(&Partition::empty(), 3),
            Err(Error::EmptyPartition)
        ));
        assert!(matches!(
            distance_profile(&part("1"), 5000),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn classify_reports_the_diagnostics() {
        let rep = classify_ssyt(&part("8,4,3,1,1"), 7).unwrap();
        assert_eq!(rep.n, "17");
        assert_eq!(rep.k, 5);
        assert_eq!(rep.e2, 2);
        assert_eq!(rep.aft.as_deref(), Some("9"));
        assert_eq!(rep.top_over_m_cubed.exact, "8/343");
        assert_eq!(rep.size_over_m.exact, "17/7");
        assert!(rep.weft.is_some());
        // m^2/(k l1 (k+l1)) = 49/(5*8*13)
        assert_eq!(rep.window_ratio.as_ref().unwrap().exact, "49/520");
        // e2 m^2/(k (l1+m)^2) = 2*49/(5*225)
        assert_eq!(rep.multiplicity_ratio.exact, "98/1125");
        // l1 e1 ek/(l1+m) = 8*1*2/15
        assert_eq!(rep.corner_ratio.exact, "16/15");
        assert!(rep.rectangle.is_none());

        let rect = classify_ssyt(&part("3,3,3"), 7).unwrap();
        let boxed = rect.rectangle.unwrap();
        assert_eq!((boxed.a, boxed.c), (3, 4));
        assert_eq!(boxed.median, "3");
        assert_eq!(boxed.ab, "9");

        let stair = classify_ssyt(&staircase(10), 10).unwrap();
        assert_eq!(stair.weft.unwrap().exact, "275/54");

        let empty = classify_ssyt(&Partition::empty(), 3).unwrap();
        assert!(empty.aft.is_none());
        assert!(empty.weft.is_none());
        assert!(empty.window_ratio.is_none());
        assert_eq!(empty.multiplicity_ratio.value, 0.0);
        assert!(empty.rectangle.is_none());
    }

    #[test]
    fn classify_serializes_exact_strings() {
        let rep = classify_ssyt(&part("8,4,3,1,1"), 7).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"8/343\""));
        assert!(json.contains("\"partition\":\"8,4,3,1,1\""));
        let back: CriteriaReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.top_over_m_cubed.exact, rep.top_over_m_cubed.exact);
    }
}
