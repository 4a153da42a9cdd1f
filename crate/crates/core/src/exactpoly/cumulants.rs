//! Exact cumulants of CGF distributions, the moment oracle on expanded
//! polynomials, and float standardization.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::bernoulli::bernoulli;
use crate::exactpoly::{Cgf, DensePoly};

fn power_sum(entries: &[(BigUint, u64)], d: u32) -> BigInt {
    // sum of c*(v^d - 1); the -1 makes entries equal to 1 contribute nothing,
    // so the value is invariant under padding either multiset with 1's.
    let mut acc = BigInt::zero();
    for (v, c) in entries {
        acc += (BigInt::from(v.pow(d)) - 1) * BigInt::from(*c);
    }
    acc
}

/// The d-th cumulant of the distribution with probability generating
/// function `g`, computed from the q-integer entries without expanding.
///
/// `kappa_d = B_d/d * (sum_num (a^d - 1) - sum_den (b^d - 1))`, plus the
/// shift when d = 1 (with `B_1 = +1/2` this is the mean). When numerator
/// and denominator have equal cardinality the `-1` terms cancel and this is
/// the plain power-sum difference.
pub fn cgf_cumulant(g: &Cgf, d: usize) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::Domain("cumulant order must be at least 1".into()));
    }
    let b = bernoulli(d);
    if b.is_zero() {
        // odd d >= 3: exactly zero, skip the power sums
        return Ok(BigRational::zero());
    }
    let dd = u32::try_from(d)
        .map_err(|_| Error::Domain(format!("cumulant order {d} too large")))?;
    let diff = power_sum(g.num_grouped(), dd) - power_sum(g.den_grouped(), dd);
    let mut kappa = b / BigRational::from(BigInt::from(d)) * BigRational::from(diff);
    if d == 1 {
        kappa += BigRational::from(BigInt::from(g.shift().clone()));
    }
    Ok(kappa)
}

/// Raw moments `mu_d = sum_k (offset+k)^d c_k / sum_k c_k` for d = 1..=upto.
pub fn moments_from_poly(p: &DensePoly, upto: usize) -> Result<Vec<BigRational>> {
    let mass = p.mass();
    if mass.is_zero() {
        return Err(Error::ZeroMass);
    }
    let values: Vec<BigInt> = (0..p.len())
        .map(|k| BigInt::from(p.offset() + k as u64))
        .collect();
    let mut powers = vec![BigInt::one(); p.len()];
    let mut out = Vec::with_capacity(upto);
    for _ in 1..=upto {
        let mut num = BigInt::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            powers[k] *= &values[k];
            num += &powers[k] * c;
        }
        out.push(BigRational::new(num, mass.clone()));
    }
    Ok(out)
}

/// Inverts `mu_d = kappa_d + sum_{m=1}^{d-1} C(d-1, m-1) kappa_m mu_{d-m}`.
pub fn cumulants_from_moments(mu: &[BigRational]) -> Vec<BigRational> {
    let mut kappa: Vec<BigRational> = Vec::with_capacity(mu.len());
    for d in 1..=mu.len() {
        let mut acc = mu[d - 1].clone();
        let mut binom = BigInt::one(); // C(d-1, m-1) starting at m = 1
        for m in 1..d {
            acc -= BigRational::from(binom.clone()) * &kappa[m - 1] * &mu[d - m - 1];
            binom = binom * BigInt::from(d - m) / BigInt::from(m);
        }
        kappa.push(acc);
    }
    kappa
}

/// The same recurrence run forward.
pub fn moments_from_cumulants(kappa: &[BigRational]) -> Vec<BigRational> {
    let mut mu: Vec<BigRational> = Vec::with_capacity(kappa.len());
    for d in 1..=kappa.len() {
        let mut acc = kappa[d - 1].clone();
        let mut binom = BigInt::one();
        for m in 1..d {
            acc += BigRational::from(binom.clone()) * &kappa[m - 1] * &mu[d - m - 1];
            binom = binom * BigInt::from(d - m) / BigInt::from(m);
        }
        mu.push(acc);
    }
    mu
}

/// Converts an exact rational to the nearest double by way of a 40
/// significant digit decimal expansion, so that integer parts far beyond
/// 2^53 (scaled-partition cumulants reach thousands of digits) still round
/// correctly instead of overflowing intermediate floats.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    const DIGITS: i64 = 40;
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();
    let e10 = a.to_string().len() as i64 - b.to_string().len() as i64;
    let scaled = if DIGITS >= e10 {
        a * BigUint::from(10u32).pow((DIGITS - e10) as u32) / b
    } else {
        a / (b * BigUint::from(10u32).pow((e10 - DIGITS) as u32))
    };
    let v: f64 = format!("{}e{}", scaled, e10 - DIGITS)
        .parse()
        .expect("decimal float literal");
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Exact cumulants side by side with their standardized float values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantReport {
    /// kappa_d for d = 1..=upto as exact rationals ("p/q" strings in JSON).
    #[serde(with = "crate::serde_util::rational_strings")]
    pub exact: Vec<BigRational>,
    /// kappa_d / kappa_2^{d/2}; 0 at d = 1 and all odd d, 1 at d = 2.
    pub standardized: Vec<f64>,
}

/// Exact cumulants for d = 1..=upto together with the standardized values
/// `kappa_d / kappa_2^{d/2}` of the mean-zero variance-one rescaling.
pub fn standardized_cumulants(g: &Cgf, upto: usize) -> Result<CumulantReport> {
    if upto == 0 {
        return Err(Error::Domain("cumulant order must be at least 1".into()));
    }
    let exact: Vec<BigRational> = (1..=upto)
        .map(|d| cgf_cumulant(g, d))
        .collect::<Result<_>>()?;
    let kappa2 = if upto >= 2 {
        exact[1].clone()
    } else {
        cgf_cumulant(g, 2)?
    };
    if kappa2.is_zero() {
        return Err(Error::DegenerateDistribution);
    }
    if kappa2.is_negative() {
        return Err(Error::Domain(
            "negative variance: input is not a CGF distribution".into(),
        ));
    }
    let standardized = (1..=upto)
        .map(|d| {
            if d == 1 || d % 2 == 1 {
                0.0
            } else {
                let mut norm = BigRational::one();
                for _ in 0..d / 2 {
                    norm *= &kappa2;
                }
                rational_to_f64(&(&exact[d - 1] / norm))
            }
        })
        .collect();
    Ok(CumulantReport { exact, standardized })
}
