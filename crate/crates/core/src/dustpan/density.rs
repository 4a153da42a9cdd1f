//! Closed-form density, CDF, and characteristic function of the
//! generalized uniform sum S_t (sum of independent U[-t_k/2, t_k/2])
//! and of S_t plus an independent centered normal.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::params::DustpanParams;
use super::weights::WeightMultiset;

/// Largest weight count for which the 2^m signed sum is evaluated.
pub const SUMMAND_GUARD: usize = 20;

pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn sgn(z: f64) -> f64 {
    if z > 0.0 {
        1.0
    } else if z < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Sums in a balanced binary tree so that the grouping is mirror
/// symmetric; with the mirror-paired terms of the signed sums below this
/// makes f(-x) == f(x) hold to the last bit.
pub(crate) fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => {
            let (a, b) = v.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn trimmed_entries(t: &WeightMultiset) -> Result<Vec<f64>> {
    let kept = t.trimmed();
    let entries: Vec<f64> = kept.entries().to_vec();
    if entries.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if entries.len() > SUMMAND_GUARD {
        return Err(Error::TooManySummands { m: entries.len() });
    }
    if entries.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
        return Err(Error::BadParameters(
            "weights must be finite positive reals".into(),
        ));
    }
    Ok(entries)
}

/// c_eps = sum eps_k t_k / 2 as the half difference of the two partial
/// sums, each accumulated in index order. Complementary masks swap the
/// partial sums, so their offsets are exact negations of each other even
/// when the entries are not exactly representable sums; the bitwise
/// mirror symmetry of the density rests on this.
fn centered_offset(entries: &[f64], mask: usize) -> f64 {
    let mut set_sum = 0.0;
    let mut comp_sum = 0.0;
    for (k, &e) in entries.iter().enumerate() {
        if mask & (1 << k) != 0 {
            set_sum += e;
        } else {
            comp_sum += e;
        }
    }
    0.5 * (set_sum - comp_sum)
}

fn mask_sign(m: usize, mask: usize) -> f64 {
    if (m - (mask as u64).count_ones() as usize) % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Evaluates sum over sign vectors of (prod eps) (x + c_eps)^p sgn(x + c_eps)
/// via the full 2^m enumeration.
fn signed_sum(entries: &[f64], x: f64, p: i32) -> f64 {
    let m = entries.len();
    let mut terms = vec![0.0f64; 1usize << m];
    for (mask, slot) in terms.iter_mut().enumerate() {
        let z = x + centered_offset(entries, mask);
        *slot = mask_sign(m, mask) * z.powi(p) * sgn(z);
    }
    pairwise_sum(&terms)
}

/// Sum over sign vectors with x + c_eps > 0 of (prod eps) (x + c_eps)^m.
/// By the m-fold central difference identity (the alternating sum of
/// z^m over all sign vectors is m! prod t, independent of x) this equals
/// m! prod(t) times the CDF at x. In the left tail only the masks near
/// the edge contribute, so the cancellation noise scales with the tail
/// value instead of with the global term size.
fn positive_mask_sum(entries: &[f64], x: f64) -> f64 {
    let m = entries.len();
    let mut terms = vec![0.0f64; 1usize << m];
    for (mask, slot) in terms.iter_mut().enumerate() {
        let z = x + centered_offset(entries, mask);
        if z > 0.0 {
            *slot = mask_sign(m, mask) * z.powi(m as i32);
        }
    }
    pairwise_sum(&terms)
}

/// Density of S_t at x. Zero entries are trimmed first; the support is
/// [-sum(t)/2, sum(t)/2].
pub fn density(t: &WeightMultiset, x: f64) -> Result<f64> {
    let entries = trimmed_entries(t)?;
    let m = entries.len();
    let half_width: f64 = entries.iter().sum::<f64>() / 2.0;
    if x.abs() > half_width {
        return Ok(0.0);
    }
    let prod: f64 = entries.iter().product();
    let raw = signed_sum(&entries, x, (m - 1) as i32) / (2.0 * factorial_f64(m - 1) * prod);
    Ok(raw.max(0.0))
}

/// CDF of S_t at x, via the term-wise antiderivative of the density sum,
/// always evaluated from the nearer tail. Exactly 0 and 1 beyond the
/// support.
pub fn cdf(t: &WeightMultiset, x: f64) -> Result<f64> {
    let entries = trimmed_entries(t)?;
    let half_width: f64 = entries.iter().sum::<f64>() / 2.0;
    if x <= -half_width {
        return Ok(0.0);
    }
    if x >= half_width {
        return Ok(1.0);
    }
    let prod: f64 = entries.iter().product();
    let denom = factorial_f64(entries.len()) * prod;
    let raw = if x <= 0.0 {
        positive_mask_sum(&entries, x) / denom
    } else {
        1.0 - positive_mask_sum(&entries, -x) / denom
    };
    Ok(raw.clamp(0.0, 1.0))
}

fn sinc(y: f64) -> f64 {
    if y.abs() < 1e-8 {
        1.0 - y * y / 6.0
    } else {
        y.sin() / y
    }
}

fn sinc_complex(z: Complex64) -> Complex64 {
    if z.norm() < 1e-8 {
        Complex64::new(1.0, 0.0) - z * z / 6.0
    } else {
        z.sin() / z
    }
}

/// Characteristic function of S_t + N(0, sigma^2) at a real argument:
/// exp(-sigma^2 s^2 / 2) prod_k sinc(s t_k / 2). Real valued by symmetry.
pub fn char_fn(p: &DustpanParams, s: f64) -> Complex64 {
    let gauss = (-p.sigma * p.sigma * s * s / 2.0).exp();
    let prod: f64 = p.t.entries().iter().map(|&e| sinc(s * e / 2.0)).product();
    Complex64::new(gauss * prod, 0.0)
}

/// Analytic continuation of the characteristic function to complex
/// arguments, used to check entire-function growth bounds.
pub fn char_fn_complex(p: &DustpanParams, z: Complex64) -> Complex64 {
    let sig2 = Complex64::new(p.sigma * p.sigma, 0.0);
    let gauss = (-sig2 * z * z / 2.0).exp();
    p.t.entries()
        .iter()
        .map(|&e| sinc_complex(z * (e / 2.0)))
        .fold(gauss, |acc, f| acc * f)
}

/// Density at x of the sum of m independent U[0,1], by the classical
/// alternating binomial formula. Oracle for the equal-weights case.
pub fn unit_uniform_sum_density(m: usize, x: f64) -> f64 {
    if m == 0 || x < 0.0 || x > m as f64 {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut binom = 1.0f64;
    let mut k = 0usize;
    while k as f64 <= x {
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        acc += sign * binom * (x - k as f64).powi((m - 1) as i32);
        binom = binom * (m - k) as f64 / (k + 1) as f64;
        k += 1;
    }
    acc / factorial_f64(m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ones(m: usize) -> WeightMultiset {
        WeightMultiset::from_f64(vec![1.0; m]).unwrap()
    }

    #[test]
    fn single_uniform() {
        let t = WeightMultiset::parse("1").unwrap();
        assert_eq!(density(&t, 0.0).unwrap(), 1.0);
        assert_eq!(density(&t, 0.3).unwrap(), 1.0);
        assert_eq!(density(&t, 0.7).unwrap(), 0.0);
        assert_eq!(cdf(&t, 0.0).unwrap(), 0.5);
        assert!((cdf(&t, 0.25).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(cdf(&t, -0.5).unwrap(), 0.0);
        assert_eq!(cdf(&t, 0.5).unwrap(), 1.0);
        assert_eq!(cdf(&t, -7.0).unwrap(), 0.0);
        assert_eq!(cdf(&t, 7.0).unwrap(), 1.0);
    }

    #[test]
    fn zero_trimming_and_guards() {
        let t = WeightMultiset::parse("0,1,0").unwrap();
        assert_eq!(density(&t, 0.0).unwrap(), 1.0);
        let z = WeightMultiset::parse("0,0").unwrap();
        assert!(matches!(density(&z, 0.0), Err(Error::EmptyWeights)));
        let big = ones(21);
        assert!(matches!(
            density(&big, 0.0),
            Err(Error::TooManySummands { m: 21 })
        ));
        assert!(matches!(
            cdf(&big, 0.0),
            Err(Error::TooManySummands { m: 21 })
        ));
    }

    #[test]
    fn matches_unit_sum_closed_form() {
        // S_{(1,..,1)} is the centered sum of m U[0,1]
        for m in 2..=8 {
            let t = ones(m);
            let shift = m as f64 / 2.0;
            for i in 0..=40 {
                let x = -shift + m as f64 * i as f64 / 40.0;
                let lhs = density(&t, x).unwrap();
                let rhs = unit_uniform_sum_density(m, x + shift);
                assert!(
                    (lhs - rhs).abs() < 1e-10,
                    "m={m} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn cdf_matches_unit_sum_antiderivative() {
        // CDF of sum of m U[0,1]: (1/m!) sum (-1)^k C(m,k) (x-k)^m over k <= x
        fn unit_sum_cdf(m: usize, x: f64) -> f64 {
            if x <= 0.0 {
                return 0.0;
            }
            if x >= m as f64 {
                return 1.0;
            }
            let mut acc = 0.0;
            let mut binom = 1.0f64;
            let mut k = 0usize;
            while k as f64 <= x {
                let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
                acc += sign * binom * (x - k as f64).powi(m as i32);
                binom = binom * (m - k) as f64 / (k + 1) as f64;
                k += 1;
            }
            acc / factorial_f64(m)
        }
        for m in 1..=8 {
            let t = ones(m);
            let shift = m as f64 / 2.0;
            for i in 1..40 {
                let x = -shift + m as f64 * i as f64 / 40.0;
                let lhs = cdf(&t, x).unwrap();
                let rhs = unit_sum_cdf(m, x + shift);
                assert!(
                    (lhs - rhs).abs() < 1e-10,
                    "m={m} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn repeated_entries_need_no_special_case() {
        // S_{(2,2)} = 2 S_{(1,1)}, so densities scale by 1/2
        let t22 = WeightMultiset::parse("2,2").unwrap();
        let t11 = ones(2);
        for i in 0..=20 {
            let x = -2.0 + 4.0 * i as f64 / 20.0;
            let lhs = density(&t22, x).unwrap();
            let rhs = density(&t11, x / 2.0).unwrap() / 2.0;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn mirror_symmetry_is_exact() {
        let t = WeightMultiset::parse("1,1/2,3/8,1/8").unwrap();
        for i in 0..=25 {
            let x = 0.04 * i as f64;
            assert_eq!(density(&t, x).unwrap(), density(&t, -x).unwrap());
            let up = cdf(&t, x).unwrap();
            let down = cdf(&t, -x).unwrap();
            assert!((up + down - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn characteristic_function() {
        let p = DustpanParams::pure_sum(WeightMultiset::parse("1").unwrap());
        assert_eq!(char_fn(&p, 0.0), Complex64::new(1.0, 0.0));
        let s = 2.0;
        let expect = (s / 2.0f64).sin() / (s / 2.0);
        assert!((char_fn(&p, s).re - expect).abs() < 1e-15);
        assert_eq!(char_fn(&p, s).im, 0.0);

        let n = DustpanParams::standard_normal();
        assert!((char_fn(&n, 1.5).re - (-1.125f64).exp()).abs() < 1e-15);

        // complex continuation agrees on the real axis
        let mixed =
            DustpanParams::new(WeightMultiset::parse("1,1/2").unwrap(), 0.3, false).unwrap();
        for i in 0..10 {
            let s = -3.0 + 0.7 * i as f64;
            let a = char_fn(&mixed, s);
            let b = char_fn_complex(&mixed, Complex64::new(s, 0.0));
            assert!((a - b).norm() < 1e-12);
            assert!(a.norm() <= 1.0 + 1e-15);
        }
    }
}
