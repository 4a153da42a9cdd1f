//! Cyclotomic generating functions: `q^shift * prod [a_k]_q / prod [b_k]_q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::DensePoly;

/// Expansion refuses to materialize polynomials beyond this degree.
pub const EXPAND_DEGREE_GUARD: u64 = 2_000_000;

/// A quotient of q-integer multisets with a q-power prefactor.
///
/// Entries are grouped as `(value, multiplicity)` and sorted by value, so
/// families with many repeated entries (scaled partitions with thousands of
/// rows) stay small in memory. The represented rational function need not be
/// a polynomial; that is only checked by [`Cgf::expand`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cgf {
    num: Vec<(BigUint, u64)>,
    den: Vec<(BigUint, u64)>,
    shift: BigUint,
}

fn group(entries: impl IntoIterator<Item = BigUint>) -> Result<Vec<(BigUint, u64)>> {
    let mut map: BTreeMap<BigUint, u64> = BTreeMap::new();
    for e in entries {
        if e.is_zero() {
            return Err(Error::Domain("q-integer entries must be positive".into()));
        }
        *map.entry(e).or_insert(0) += 1;
    }
    Ok(map.into_iter().collect())
}

fn regroup(entries: Vec<(BigUint, u64)>) -> Result<Vec<(BigUint, u64)>> {
    let mut map: BTreeMap<BigUint, u64> = BTreeMap::new();
    for (e, c) in entries {
        if e.is_zero() {
            return Err(Error::Domain("q-integer entries must be positive".into()));
        }
        if c > 0 {
            *map.entry(e).or_insert(0) += c;
        }
    }
    Ok(map.into_iter().collect())
}

impl Cgf {
    pub fn new(
        num: impl IntoIterator<Item = BigUint>,
        den: impl IntoIterator<Item = BigUint>,
        shift: BigUint,
    ) -> Result<Self> {
        Ok(Cgf {
            num: group(num)?,
            den: group(den)?,
            shift,
        })
    }

    /// Builds from pre-grouped `(value, multiplicity)` lists.
    pub fn from_grouped(
        num: Vec<(BigUint, u64)>,
        den: Vec<(BigUint, u64)>,
        shift: BigUint,
    ) -> Result<Self> {
        Ok(Cgf {
            num: regroup(num)?,
            den: regroup(den)?,
            shift,
        })
    }

    pub fn from_u64(num: &[u64], den: &[u64], shift: u64) -> Result<Self> {
        Cgf::new(
            num.iter().map(|&e| BigUint::from(e)),
            den.iter().map(|&e| BigUint::from(e)),
            BigUint::from(shift),
        )
    }

    /// Numerator as sorted `(value, multiplicity)` pairs.
    pub fn num_grouped(&self) -> &[(BigUint, u64)] {
        &self.num
    }

    pub fn den_grouped(&self) -> &[(BigUint, u64)] {
        &self.den
    }

    pub fn shift(&self) -> &BigUint {
        &self.shift
    }

    /// Total numerator cardinality (with multiplicity).
    pub fn num_len(&self) -> u64 {
        self.num.iter().map(|(_, c)| c).sum()
    }

    pub fn den_len(&self) -> u64 {
        self.den.iter().map(|(_, c)| c).sum()
    }

    /// Removes entries common to numerator and denominator (with
    /// multiplicity). The represented function is unchanged.
    pub fn cancelled(&self) -> Cgf {
        let mut num = Vec::new();
        let mut den = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.num.len() && j < self.den.len() {
            let (av, ac) = &self.num[i];
            let (bv, bc) = &self.den[j];
            match av.cmp(bv) {
                std::cmp::Ordering::Less => {
                    num.push((av.clone(), *ac));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    den.push((bv.clone(), *bc));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let common = (*ac).min(*bc);
                    if ac - common > 0 {
                        num.push((av.clone(), ac - common));
                    }
                    if bc - common > 0 {
                        den.push((bv.clone(), bc - common));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        num.extend_from_slice(&self.num[i..]);
        den.extend_from_slice(&self.den[j..]);
        Cgf {
            num,
            den,
            shift: self.shift.clone(),
        }
    }

    /// Degree of numerator-product minus denominator-product as a signed
    /// integer: `sum (a-1) - sum (b-1)` over all entries.
    fn net_degree(&self) -> BigInt {
        let mut d = BigInt::zero();
        for (v, c) in &self.num {
            d += BigInt::from(v - 1u32) * c;
        }
        for (v, c) in &self.den {
            d -= BigInt::from(v - 1u32) * c;
        }
        d
    }

    /// Expands to the exact polynomial `q^shift * prod [a]_q / prod [b]_q`.
    ///
    /// Cancels common entries first, multiplies out the remaining numerator,
    /// then divides by each remaining denominator entry with an exact
    /// remainder check. Succeeds only when the result is a polynomial with
    /// nonnegative coefficients.
    pub fn expand(&self) -> Result<DensePoly> {
        self.expand_with_guard(EXPAND_DEGREE_GUARD)
    }

    pub fn expand_with_guard(&self, guard: u64) -> Result<DensePoly> {
        let reduced = self.cancelled();

        // Intermediate degree after multiplying out the whole numerator.
        let mut inter = BigUint::zero();
        for (v, c) in &reduced.num {
            inter += (v - 1u32) * BigUint::from(*c);
        }
        if inter > BigUint::from(guard) || reduced.shift > BigUint::from(guard) {
            return Err(Error::Guard(format!(
                "expansion degree exceeds {guard} (intermediate degree {inter}, shift {})",
                reduced.shift
            )));
        }
        let offset = reduced
            .shift
            .to_u64()
            .expect("shift bounded by guard fits u64");

        let mut poly = DensePoly::one();
        for (v, c) in &reduced.num {
            let n = v.to_u64().expect("entry bounded by degree guard fits u64");
            for _ in 0..*c {
                poly = poly.mul_qint(n);
            }
        }
        for (v, c) in &reduced.den {
            // A divisor wider than the current polynomial cannot divide it.
            let n = match v.to_u64() {
                Some(n) if n as usize <= poly.len() => n,
                _ => return Err(Error::NonPolynomial { divisor: v.clone() }),
            };
            for _ in 0..*c {
                poly = poly.div_qint(n)?;
            }
        }
        if let Some(exp) = poly.first_negative() {
            return Err(Error::NegativeCoefficient {
                exponent: exp + offset,
            });
        }
        Ok(poly.shifted(offset))
    }
}

impl fmt::Display for Cgf {
    /// Grouped human-readable form, e.g. `q^17 * [11][9]...[2]^3 / [1]^4[3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, entries: &[(BigUint, u64)]) -> fmt::Result {
            if entries.is_empty() {
                return write!(f, "1");
            }
            // Display descending to match the multiset serialization order.
            for (v, c) in entries.iter().rev() {
                write!(f, "[{v}]")?;
                if *c > 1 {
                    write!(f, "^{c}")?;
                }
            }
            Ok(())
        }
        if !self.shift.is_zero() {
            write!(f, "q^{} * ", self.shift)?;
        }
        side(f, &self.num)?;
        write!(f, " / ")?;
        side(f, &self.den)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryWire {
    Small(u64),
    Big(String),
}

fn entries_to_wire(entries: &[(BigUint, u64)]) -> Vec<EntryWire> {
    let mut out = Vec::new();
    // Flat list, weakly decreasing, matching the multiset ordering convention.
    for (v, c) in entries.iter().rev() {
        let wire = match v.to_u64() {
            Some(small) => EntryWire::Small(small),
            None => EntryWire::Big(v.to_string()),
        };
        for _ in 0..*c {
            out.push(match &wire {
                EntryWire::Small(s) => EntryWire::Small(*s),
                EntryWire::Big(s) => EntryWire::Big(s.clone()),
            });
        }
    }
    out
}

fn wire_to_entries<E: serde::de::Error>(wire: Vec<EntryWire>) -> std::result::Result<Vec<BigUint>, E> {
    wire.into_iter()
        .map(|e| match e {
            EntryWire::Small(v) => Ok(BigUint::from(v)),
            EntryWire::Big(s) => s
                .trim()
                .parse::<BigUint>()
                .map_err(|err| E::custom(format!("bad q-integer entry {s:?}: {err}"))),
        })
        .collect()
}

impl Serialize for Cgf {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cgf", 3)?;
        st.serialize_field("num", &entries_to_wire(&self.num))?;
        st.serialize_field("den", &entries_to_wire(&self.den))?;
        match self.shift.to_u64() {
            Some(s) => st.serialize_field("shift", &EntryWire::Small(s))?,
            None => st.serialize_field("shift", &EntryWire::Big(self.shift.to_string()))?,
        }
        st.end()
    }
}

#[derive(Deserialize)]
struct CgfWire {
    num: Vec<EntryWire>,
    den: Vec<EntryWire>,
    #[serde(default)]
    shift: Option<EntryWire>,
}

impl<'de> Deserialize<'de> for Cgf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CgfWire::deserialize(deserializer)?;
        let num = wire_to_entries::<D::Error>(wire.num)?;
        let den = wire_to_entries::<D::Error>(wire.den)?;
        let shift = match wire.shift {
            None => BigUint::zero(),
            Some(EntryWire::Small(s)) => BigUint::from(s),
            Some(EntryWire::Big(s)) => s
                .trim()
                .parse::<BigUint>()
                .map_err(|err| D::Error::custom(format!("bad shift {s:?}: {err}")))?,
        };
        Cgf::new(num, den, shift).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn coeffs(p: &DensePoly) -> Vec<i64> {
        p.coeffs()
            .iter()
            .map(|c| i64::try_from(c).expect("small coefficient"))
            .collect()
    }

    #[test]
    fn expand_four_over_two() {
        let g = Cgf::from_u64(&[4], &[2], 0).unwrap();
        let p = g.expand().unwrap();
        assert_eq!(p.offset(), 0);
        assert_eq!(coeffs(&p), vec![1, 0, 1]);
    }

    #[test]
    fn expand_three_over_two_is_not_polynomial() {
        let g = Cgf::from_u64(&[3], &[2], 0).unwrap();
        assert!(matches!(g.expand(), Err(Error::NonPolynomial { .. })));
    }

    #[test]
    fn expand_detects_negative_coefficients() {
        // [15][1] / ([3][5]) is the 15th cyclotomic polynomial
        // q^8 - q^7 + q^5 - q^4 + q^3 - q + 1: exact division, negative entries.
        let g = Cgf::from_u64(&[15, 1], &[3, 5], 0).unwrap();
        match g.expand() {
            Err(Error::NegativeCoefficient { exponent }) => assert_eq!(exponent, 1),
            other => panic!("expected NegativeCoefficient, got {other:?}"),
        }
    }

    #[test]
    fn expand_is_invariant_under_padding_and_cancellation() {
        let g = Cgf::from_u64(&[2, 3, 4], &[2, 2], 7).unwrap();
        let padded = Cgf::from_u64(&[2, 3, 4, 1, 1, 1], &[2, 2, 1], 7).unwrap();
        let shared = Cgf::from_u64(&[2, 3, 4, 9], &[2, 2, 9], 7).unwrap();
        let base = g.expand().unwrap();
        assert_eq!(padded.expand().unwrap(), base);
        assert_eq!(shared.expand().unwrap(), base);
        assert_eq!(base.offset(), 7);
    }

    #[test]
    fn expand_point_mass() {
        let g = Cgf::from_u64(&[2, 3], &[3, 2], 4).unwrap();
        let p = g.expand().unwrap();
        assert_eq!(p.offset(), 4);
        assert_eq!(coeffs(&p), vec![1]);
    }

    #[test]
    fn oversized_divisor_is_rejected_as_nonpolynomial() {
        let g = Cgf::from_u64(&[2], &[100], 0).unwrap();
        assert!(matches!(g.expand(), Err(Error::NonPolynomial { .. })));
    }

    #[test]
    fn degree_guard_trips() {
        let g = Cgf::new(
            [BigUint::from(10u32).pow(9)],
            [BigUint::from(1u32)],
            BigUint::zero(),
        )
        .unwrap();
        assert!(matches!(g.expand(), Err(Error::Guard(_))));
    }

    #[test]
    fn grouping_and_cancellation() {
        let g = Cgf::from_u64(&[3, 3, 3, 5], &[3, 5, 5], 0).unwrap();
        assert_eq!(g.num_len(), 4);
        let c = g.cancelled();
        assert_eq!(c.num_grouped(), &[(BigUint::from(3u32), 2)]);
        assert_eq!(c.den_grouped(), &[(BigUint::from(5u32), 1)]);
    }

    #[test]
    fn zero_entries_are_rejected() {
        assert!(Cgf::from_u64(&[0], &[1], 0).is_err());
    }

    #[test]
    fn serde_round_trip_with_big_entries() {
        let big = BigUint::from(10u32).pow(30);
        let g = Cgf::new(
            [big.clone(), BigUint::from(4u32)],
            [BigUint::from(2u32)],
            big.clone(),
        )
        .unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: Cgf = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        // big entries travel as strings, small ones as numbers
        assert!(json.contains(&format!("\"{big}\"")));
        assert!(json.contains("4"));

        let parsed: Cgf =
            serde_json::from_str(r#"{"num":[4,"3"],"den":[2],"shift":1}"#).unwrap();
        assert_eq!(parsed, Cgf::from_u64(&[4, 3], &[2], 1).unwrap());
    }

    #[test]
    fn display_groups_entries() {
        let g = Cgf::from_u64(&[4, 2, 2], &[1, 1, 3], 2).unwrap();
        assert_eq!(g.to_string(), "q^2 * [4][2]^2 / [3][1]^2");
    }

    #[test]
    fn net_degree_matches_expansion() {
        let g = Cgf::from_u64(&[4, 6], &[2, 3], 5).unwrap();
        let p = g.expand().unwrap();
        let expected = BigInt::from(p.degree().unwrap() - p.offset());
        assert_eq!(g.net_degree(), expected);
    }
}
