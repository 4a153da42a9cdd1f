//! Coefficient-shape predicates on expanded polynomials.

use crate::exactpoly::DensePoly;

/// True when `c_k = c_{D-k}` over the support (palindromic coefficients).
pub fn check_symmetry(p: &DensePoly) -> bool {
    let c = p.coeffs();
    (0..c.len() / 2).all(|k| c[k] == c[c.len() - 1 - k])
}

/// True when coefficients weakly increase and then weakly decrease.
pub fn check_unimodal(p: &DensePoly) -> bool {
    let c = p.coeffs();
    let peak = (1..c.len()).position(|k| c[k] < c[k - 1]);
    match peak {
        None => true,
        Some(i) => (i + 1..c.len()).all(|k| c[k] <= c[k - 1]),
    }
}

/// True when `c_k^2 >= c_{k-1} c_{k+1}` for all interior k.
pub fn check_log_concave(p: &DensePoly) -> bool {
    let c = p.coeffs();
    (1..c.len().saturating_sub(1)).all(|k| &c[k] * &c[k] >= &c[k - 1] * &c[k + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(coeffs: &[i64]) -> DensePoly {
        DensePoly::new(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn one_plus_q_passes_all_three() {
        let p = poly(&[1, 1]);
        assert!(check_symmetry(&p));
        assert!(check_unimodal(&p));
        assert!(check_log_concave(&p));
    }

    #[test]
    fn rank_polynomial_with_a_flat_top_is_not_log_concave() {
        // 1 + 2q + 4q^2 + 5q^3 + 7q^4 + 7q^5 + 7q^6 + 5q^7 + 4q^8 + 2q^9 + q^10:
        // symmetric and unimodal, but 5^2 < 4*7 at the shoulder.
        let p = poly(&[1, 2, 4, 5, 7, 7, 7, 5, 4, 2, 1]);
        assert!(check_symmetry(&p));
        assert!(check_unimodal(&p));
        assert!(!check_log_concave(&p));
    }

    #[test]
    fn shape_counterexamples() {
        assert!(!check_symmetry(&poly(&[1, 2, 3])));
        assert!(!check_unimodal(&poly(&[2, 1, 2])));
        assert!(check_unimodal(&poly(&[1, 1, 2, 2, 1])));
        // offsets do not affect the shape predicates
        let shifted = DensePoly::new(9, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(check_symmetry(&shifted));
    }

    #[test]
    fn trivial_polys() {
        assert!(check_symmetry(&DensePoly::zero()));
        assert!(check_unimodal(&DensePoly::zero()));
        assert!(check_log_concave(&DensePoly::one()));
    }
}
