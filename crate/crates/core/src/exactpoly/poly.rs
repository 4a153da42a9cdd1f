//! Dense exact-coefficient polynomials with an exponent offset.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial `q^offset * (c_0 + c_1 q + ... + c_{L-1} q^{L-1})` with exact
/// big-integer coefficients.
///
/// Invariant: `coeffs` has no leading or trailing zeros; the zero polynomial
/// is stored as an empty vector with offset 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    offset: u64,
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    /// Builds a polynomial, trimming zero coefficients at both ends.
    pub fn new(offset: u64, coeffs: Vec<BigInt>) -> Self {
        let mut p = DensePoly { offset, coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: BigInt) -> Self {
        DensePoly::new(0, vec![c])
    }

    pub fn one() -> Self {
        DensePoly::constant(BigInt::from(1))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as u64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Coefficients starting at `offset`, dense, trimmed at both ends.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as u64 - 1)
        }
    }

    /// Coefficient of `q^exp` (absolute exponent).
    pub fn coeff_at(&self, exp: u64) -> BigInt {
        if exp < self.offset {
            return BigInt::zero();
        }
        let idx = (exp - self.offset) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients (the total mass of a distribution polynomial).
    pub fn mass(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn shifted(&self, extra_offset: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        DensePoly {
            offset: self.offset + extra_offset,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Exponent of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<u64> {
        self.coeffs
            .iter()
            .position(|c| c.is_negative())
            .map(|i| self.offset + i as u64)
    }

    /// Multiplies by `[n]_q = 1 + q + ... + q^{n-1}` using a sliding window,
    /// O(len + n) big-integer additions.
    pub fn mul_qint(&self, n: u64) -> Self {
        assert!(n >= 1, "q-integer index must be positive");
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let len = self.coeffs.len();
        let n = n as usize;
        let out_len = len + n - 1;
        let mut out = Vec::with_capacity(out_len);
        let mut window = BigInt::zero();
        for k in 0..out_len {
            if k < len {
                window += &self.coeffs[k];
            }
            if k >= n {
                window -= &self.coeffs[k - n];
            }
            out.push(window.clone());
        }
        DensePoly {
            offset: self.offset,
            coeffs: out,
        }
    }

    /// Exact division by `[n]_q`; fails with `NonPolynomial` when a remainder
    /// is left. Power-series division: the quotient coefficients satisfy
    /// `p_k = q_k + q_{k-1} + ... + q_{k-n+1}`, so the series terminates
    /// exactly when the last n-1 series coefficients vanish.
    pub fn div_qint(&self, n: u64) -> Result<Self> {
        assert!(n >= 1, "q-integer index must be positive");
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        let len = self.coeffs.len();
        let n_us = n as usize;
        if len < n_us {
            return Err(Error::NonPolynomial { divisor: n.into() });
        }
        let mut q: Vec<BigInt> = Vec::with_capacity(len);
        let mut window = BigInt::zero(); // q_{k-1} + ... + q_{k-n+1}
        for k in 0..len {
            let qk = &self.coeffs[k] - &window;
            window += &qk;
            if k + 1 >= n_us {
                window -= &q[k + 1 - n_us];
            }
            q.push(qk);
        }
        if q[len - n_us + 1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonPolynomial { divisor: n.into() });
        }
        q.truncate(len - n_us + 1);
        Ok(DensePoly::new(self.offset, q))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = self.offset + i as u64;
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let one = mag.to_string() == "1";
            match (exp, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{exp}")?,
                (_, false) => write!(f, "{mag}*q^{exp}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    offset: u64,
    coeffs: Vec<CoeffWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffWire {
    Small(i64),
    Big(String),
}

impl Serialize for DensePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = PolyWire {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| CoeffWire::Big(c.to_string())).collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(wire.coeffs.len());
        for c in wire.coeffs {
            coeffs.push(match c {
                CoeffWire::Small(v) => BigInt::from(v),
                CoeffWire::Big(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))?,
            });
        }
        Ok(DensePoly::new(wire.offset, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(offset: u64, coeffs: &[i64]) -> DensePoly {
        DensePoly::new(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn normalization_trims_and_relocates() {
        let p = DensePoly::new(2, vec![0.into(), 1.into(), 2.into(), 0.into()]);
        assert_eq!(p.offset(), 3);
        assert_eq!(p.coeffs(), &[BigInt::from(1), BigInt::from(2)]);
        assert_eq!(p.degree(), Some(4));
        assert!(DensePoly::new(5, vec![0.into()]).is_zero());
    }

    #[test]
    fn mul_qint_matches_convolution() {
        // (1 + q) * [3]_q = 1 + 2q + 2q^2 + q^3
        let p = poly(0, &[1, 1]).mul_qint(3);
        assert_eq!(p, poly(0, &[1, 2, 2, 1]));
        // [4]_q from 1
        assert_eq!(DensePoly::one().mul_qint(4), poly(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn div_qint_telescopes_four_over_two() {
        // [4]_q / [2]_q = 1 + q^2
        let p = DensePoly::one().mul_qint(4);
        assert_eq!(p.div_qint(2).unwrap(), poly(0, &[1, 0, 1]));
    }

    #[test]
    fn div_qint_detects_remainder() {
        // [3]_q / [2]_q is not a polynomial
        let p = DensePoly::one().mul_qint(3);
        match p.div_qint(2) {
            Err(Error::NonPolynomial { divisor }) => assert_eq!(divisor, 2u32.into()),
            other => panic!("expected NonPolynomial, got {other:?}"),
        }
    }

    #[test]
    fn div_undoes_mul() {
        let p = poly(3, &[1, 4, 2, 1, 7]);
        for n in 2..8 {
            assert_eq!(p.mul_qint(n).div_qint(n).unwrap(), p);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(0, &[1, 0, 1]).to_string(), "1 + q^2");
        assert_eq!(poly(1, &[2, 1]).to_string(), "2*q + q^2");
        assert_eq!(DensePoly::zero().to_string(), "0");
        assert_eq!(poly(0, &[1, -1]).to_string(), "1 - q");
    }

    #[test]
    fn serde_round_trips_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = DensePoly::new(7, vec![BigInt::from(1), big.clone()]);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"offset\":7"));
        assert!(json.contains("123456789012345678901234567890"));
        let back: DensePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        // numeric coefficients are accepted on input too
        let q: DensePoly = serde_json::from_str(r#"{"offset":0,"coeffs":[1,2,1]}"#).unwrap();
        assert_eq!(q, poly(0, &[1, 2, 1]));
    }

    #[test]
    fn mass_and_coeff_lookup() {
        let p = poly(2, &[1, 2, 4]);
        assert_eq!(p.mass(), BigInt::from(7));
        assert_eq!(p.coeff_at(3), BigInt::from(2));
        assert_eq!(p.coeff_at(0), BigInt::zero());
        assert_eq!(p.coeff_at(99), BigInt::zero());
    }
}
