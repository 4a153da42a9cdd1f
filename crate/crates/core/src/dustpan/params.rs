//! Parameters of the continuous limit family: a generalized uniform sum
//! plus an independent centered normal.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::weights::WeightMultiset;

/// A limit distribution S_t + N(0, sigma^2). The standardized flag
/// asserts that the variance |t|_2^2/12 + sigma^2 equals 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DustpanParams {
    pub t: WeightMultiset,
    pub sigma: f64,
    #[serde(default)]
    pub standardized: bool,
}

impl DustpanParams {
    pub fn new(t: WeightMultiset, sigma: f64, standardized: bool) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::BadParameters(format!(
                "sigma must be a finite nonnegative real, got {sigma}"
            )));
        }
        let params = DustpanParams {
            t,
            sigma,
            standardized,
        };
        if standardized {
            let var = params.variance();
            if (var - 1.0).abs() > 1e-12 {
                return Err(Error::BadParameters(format!(
                    "standardized parameters need |t|_2^2/12 + sigma^2 = 1, got {var}"
                )));
            }
        }
        Ok(params)
    }

    /// Pure standard normal: empty t, sigma 1.
    pub fn standard_normal() -> Self {
        DustpanParams {
            t: WeightMultiset::empty(),
            sigma: 1.0,
            standardized: true,
        }
    }

    /// A pure uniform sum (sigma = 0) from the given weights.
    pub fn pure_sum(t: WeightMultiset) -> Self {
        DustpanParams {
            t,
            sigma: 0.0,
            standardized: false,
        }
    }

    pub fn variance(&self) -> f64 {
        self.t.norm2_sq() / 12.0 + self.sigma * self.sigma
    }

    /// Checks the standardization constraint after the fact.
    pub fn validate(&self) -> Result<()> {
        DustpanParams::new(self.t.clone(), self.sigma, self.standardized).map(|_| ())
    }
}

/// d-th cumulant of S_t + N(0, sigma^2): the normal only contributes at
/// d = 2, everything above comes from the uniform sum. The exact value
/// is available whenever the weights carry exact entries (and, at d = 2,
/// the normal part vanishes).
pub fn dustpan_cumulant(p: &DustpanParams, d: usize) -> Result<(f64, Option<BigRational>)> {
    if d < 2 {
        return Err(Error::Domain("cumulant order must be at least 2".into()));
    }
    let (sum_float, sum_exact) = p.t.sum_cumulant(d)?;
    if d == 2 {
        let float = sum_float + p.sigma * p.sigma;
        let exact = if p.sigma == 0.0 { sum_exact } else { None };
        Ok((float, exact))
    } else {
        Ok((sum_float, sum_exact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn validation() {
        let t = WeightMultiset::parse("1").unwrap();
        assert!(DustpanParams::new(t.clone(), -0.5, false).is_err());
        assert!(DustpanParams::new(t.clone(), 0.0, true).is_err());
        // |t|_2^2/12 = 1/12, sigma^2 = 11/12
        let sigma = (11.0f64 / 12.0).sqrt();
        assert!(DustpanParams::new(t.clone(), sigma, true).is_ok());
        assert!(DustpanParams::standard_normal().validate().is_ok());
        // hat weights alone are standardized
        let hat = WeightMultiset::parse("3,2,1").unwrap().hat().unwrap();
        assert!(DustpanParams::new(hat, 0.0, true).is_ok());
    }

    #[test]
    fn cumulants() {
        // pure normal: nothing above order 2
        let normal = DustpanParams::standard_normal();
        assert_eq!(dustpan_cumulant(&normal, 2).unwrap().0, 1.0);
        assert_eq!(dustpan_cumulant(&normal, 4).unwrap().0, 0.0);
        assert!(dustpan_cumulant(&normal, 1).is_err());

        // single uniform: kappa_2 = 1/12 exactly
        let p = DustpanParams::pure_sum(WeightMultiset::parse("1").unwrap());
        let (f, e) = dustpan_cumulant(&p, 2).unwrap();
        assert_eq!(e.unwrap(), rat(1, 12));
        assert!((f - 1.0 / 12.0).abs() < 1e-15);

        // sigma contributes only float variance at d = 2
        let p = DustpanParams::new(WeightMultiset::parse("1").unwrap(), 0.5, false).unwrap();
        let (f, e) = dustpan_cumulant(&p, 2).unwrap();
        assert!((f - (1.0 / 12.0 + 0.25)).abs() < 1e-15);
        assert!(e.is_none());
        // and not at d = 4: IH_m style m B_d / d
        let (f4, e4) = dustpan_cumulant(&p, 4).unwrap();
        assert_eq!(e4.unwrap(), rat(-1, 120));
        assert!((f4 + 1.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn standardized_profile_kernel() {
        // hat of the distance multiset of (8,4,3,1,1,0,0)/8: kappa_4
        // must be exactly -1229/8410
        let t = WeightMultiset::parse("1,1/2,3/8,1/8,1/8,0,0").unwrap();
        let hat = t.distance_multiset().unwrap().hat().unwrap();
        let p = DustpanParams::new(hat, 0.0, true).unwrap();
        let (_, exact) = dustpan_cumulant(&p, 4).unwrap();
        assert_eq!(exact.unwrap(), rat(-1229, 8410));
    }

    #[test]
    fn json_round_trip() {
        let p = DustpanParams::new(WeightMultiset::parse("1,1/2").unwrap(), 0.25, false).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: DustpanParams = serde_json::from_str(&text).unwrap();
        assert_eq!(back.sigma, 0.25);
        assert!(!back.standardized);
        assert_eq!(back.t.entries(), p.t.entries());
    }
}
