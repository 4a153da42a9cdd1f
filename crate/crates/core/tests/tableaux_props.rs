//! Exhaustive cross-checks for the tableau generating functions: the two
//! product forms against each other, product forms against brute-force
//! enumeration, the box/rectangle bijection accounting, and positivity of
//! the window statistic.

use num_rational::BigRational;
use num_traits::Zero;

use qhook_core::exactpoly::cgf_cumulant;
use qhook_core::tableaux::{
    distance_profile, enumerate_pp, enumerate_ssyt, enumerate_syt, exp_notation, gf_from_stats,
    pp_size_cgf, ssyt_rank_cgf_hookcontent, ssyt_rank_cgf_weyl, syt_maj_cgf, weft, Partition,
};

/// All partitions of `n` with parts at most `max`, weakly decreasing.
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

/// Nonempty partitions with |lam| <= 8.
fn small_partitions() -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 1..=8 {
        for parts in partitions_of(n, n) {
            out.push(Partition::from_u64(&parts).unwrap());
        }
    }
    out
}

#[test]
fn weyl_and_hook_content_forms_expand_identically() {
    for lam in small_partitions() {
        for m in lam.len() as u64..=5 {
            let weyl = ssyt_rank_cgf_weyl(&lam, m).unwrap().expand().unwrap();
            let hc = ssyt_rank_cgf_hookcontent(&lam, m)
                .unwrap()
                .expand()
                .unwrap();
            assert_eq!(weyl, hc, "shape {:?}, m = {}", lam.parts(), m);
        }
    }
}

#[test]
fn ssyt_enumeration_matches_product_form() {
    for lam in small_partitions() {
        for m in lam.len() as u64..=5 {
            let ranks: Vec<u64> = enumerate_ssyt(&lam, m)
                .unwrap()
                .into_iter()
                .map(|(_, r)| r)
                .collect();
            let product = ssyt_rank_cgf_hookcontent(&lam, m)
                .unwrap()
                .expand()
                .unwrap();
            assert_eq!(
                gf_from_stats(&ranks),
                product,
                "shape {:?}, m = {}",
                lam.parts(),
                m
            );
        }
    }
}

#[test]
fn syt_enumeration_matches_product_form() {
    for lam in small_partitions() {
        let majs: Vec<u64> = enumerate_syt(&lam)
            .unwrap()
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        let product = syt_maj_cgf(&lam).unwrap().expand().unwrap();
        assert_eq!(gf_from_stats(&majs), product, "shape {:?}", lam.parts());
    }
}

#[test]
fn pp_enumeration_matches_product_form() {
    for a in 1u64..=18 {
        for b in 1u64..=18 / a {
            for c in 1u64..=18 / (a * b) {
                let sizes: Vec<u64> = enumerate_pp(a, b, c)
                    .unwrap()
                    .into_iter()
                    .map(|(_, s)| s)
                    .collect();
                let product = pp_size_cgf(a, b, c).unwrap().expand().unwrap();
                assert_eq!(gf_from_stats(&sizes), product, "box {}x{}x{}", a, b, c);
            }
        }
    }
}

/// The two product forms carry the same exact cumulants at every order;
/// checked through order 6 without expanding.
#[test]
fn cumulant_sums_of_both_forms_agree_exactly() {
    for lam in small_partitions() {
        for m in lam.len() as u64..=5 {
            let weyl = ssyt_rank_cgf_weyl(&lam, m).unwrap();
            let hc = ssyt_rank_cgf_hookcontent(&lam, m).unwrap();
            for d in 2..=6usize {
                assert_eq!(
                    cgf_cumulant(&weyl, d).unwrap(),
                    cgf_cumulant(&hc, d).unwrap(),
                    "shape {:?}, m = {}, order {}",
                    lam.parts(),
                    m,
                    d
                );
            }
        }
    }
}

/// Boxed plane partitions of a x b x c biject with rectangle tableaux of
/// shape (b^a) filled from a + c letters; the map shifts the statistic by
/// a constant, so the masses agree and the maximal total entry sum is
/// abc + b * C(a+1, 2).
#[test]
fn box_and_rectangle_accounting() {
    for a in 1u64..=18 {
        for b in 1u64..=18 / a {
            for c in 1u64..=18 / (a * b) {
                let pp = pp_size_cgf(a, b, c).unwrap().expand().unwrap();
                let shape = Partition::from_u64(&vec![b; a as usize]).unwrap();
                let ssyt = ssyt_rank_cgf_hookcontent(&shape, a + c)
                    .unwrap()
                    .expand()
                    .unwrap();
                assert_eq!(pp.mass(), ssyt.mass(), "box {}x{}x{}", a, b, c);
                // rank = entry sum - cell count, so max entry sum is
                // degree + ab.
                let cells = a * b;
                assert_eq!(
                    ssyt.degree().unwrap() + cells,
                    a * b * c + b * (a * (a + 1) / 2),
                    "box {}x{}x{}",
                    a,
                    b,
                    c
                );
                assert_eq!(pp.degree().unwrap(), a * b * c, "box {}x{}x{}", a, b, c);
            }
        }
    }
}

/// With at least two distinct row lengths the window statistic is
/// strictly positive.
#[test]
fn weft_is_positive_with_two_or_more_levels() {
    let mut seen_multi_level = 0u32;
    for lam in small_partitions() {
        for m in lam.len() as u64..=5 {
            let notation = exp_notation(&lam, m).unwrap();
            if notation.k() >= 2 {
                seen_multi_level += 1;
                let w = weft(&lam, m).unwrap();
                assert!(
                    w > BigRational::zero(),
                    "weft of {:?} with m = {} is {}",
                    lam.parts(),
                    m,
                    w
                );
            }
        }
    }
    assert!(seen_multi_level > 100, "range should hit many k >= 2 cases");
}

/// The hat rescaling of a difference multiset has squared 2-norm 12.
#[test]
fn hat_rescaling_normalizes_to_twelve() {
    let mut seen = 0u32;
    for lam in small_partitions() {
        for m in lam.len() as u64..=5 {
            let profile = distance_profile(&lam, m).unwrap();
            if let Some(hat) = &profile.hat_delta {
                seen += 1;
                let norm_sq = hat.norm2_sq();
                assert!(
                    (norm_sq - 12.0).abs() <= 12.0 * 1e-12,
                    "shape {:?}, m = {}: |hat|^2 = {}",
                    lam.parts(),
                    m,
                    norm_sq
                );
            } else {
                // All rows equal: the difference multiset vanishes.
                assert!(profile.delta.entries().iter().all(|x| *x == 0.0));
            }
        }
    }
    assert!(seen > 100, "range should hit many nondegenerate cases");
}
