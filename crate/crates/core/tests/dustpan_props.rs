//! Analytic invariants of the uniform-sum limit laws: normalization and
//! second moment by panel-exact quadrature, mirror symmetry as computed,
//! CDF shape, norm comparisons on the weight multiset, and the
//! characteristic function bounds. The antidiagonal difference-sum
//! bounds are checked exactly and any counterexample is logged rather
//! than asserted away.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qhook_core::dustpan::{
    cdf, char_fn, char_fn_complex, density, DustpanParams, WeightMultiset,
};
use qhook_core::exactpoly::rational_to_f64;

mod common;
use common::density_moment;

fn random_weights(rng: &mut ChaCha8Rng, m: usize) -> WeightMultiset {
    let entries: Vec<f64> = (0..m).map(|_| 5.0 * (1.0 - rng.gen::<f64>())).collect();
    WeightMultiset::from_f64(entries).unwrap()
}

#[test]
fn density_integrates_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0_5E_ED);
    for case in 0..30 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        let mass = density_moment(&t, 0);
        assert!(
            (mass - 1.0).abs() <= 1e-8,
            "case {case}: mass {mass} for t = {:?}",
            t.entries()
        );
    }
}

#[test]
fn density_second_moment_matches_variance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EC0);
    for case in 0..30 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        let second = density_moment(&t, 2);
        let want = t.norm2_sq() / 12.0;
        assert!(
            (second - want).abs() <= 1e-7,
            "case {case}: got {second}, want {want} for t = {:?}",
            t.entries()
        );
    }
}

/// Reflection symmetry holds bit for bit, not merely approximately: the
/// summation groups mirror terms so rounding cancels identically.
#[test]
fn density_mirror_symmetry_is_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..20 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        let half = t.total_width() / 2.0;
        for j in 0..=40 {
            let x = half * (j as f64 / 40.0 * 2.2 - 1.1);
            let plus = density(&t, x).unwrap();
            let minus = density(&t, -x).unwrap();
            assert_eq!(
                plus.to_bits(),
                minus.to_bits(),
                "asymmetry at x = {x} for t = {:?}",
                t.entries()
            );
        }
    }
}

#[test]
fn cdf_is_monotone_and_pinned_at_support_ends() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..20 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        let half = t.total_width() / 2.0;
        assert_eq!(cdf(&t, -half).unwrap(), 0.0);
        assert_eq!(cdf(&t, half).unwrap(), 1.0);
        assert_eq!(cdf(&t, -half - 3.0).unwrap(), 0.0);
        assert_eq!(cdf(&t, half + 3.0).unwrap(), 1.0);
        let mut prev = 0.0;
        for j in 0..=200 {
            let x = half * (j as f64 / 100.0 - 1.0);
            let v = cdf(&t, x).unwrap();
            assert!(
                v >= prev,
                "case {case}: cdf not monotone at x = {x}: {v} < {prev}"
            );
            prev = v;
        }
        assert!(prev <= 1.0);
    }
}

#[test]
fn p_norms_decrease_in_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pairs = [(1.0, 2.0), (2.0, 4.0), (1.5, 3.0), (1.0, 8.0), (3.0, f64::INFINITY)];
    for case in 0..20 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        for (p, q) in pairs {
            let np = t.p_norm(p).unwrap();
            let nq = t.p_norm(q).unwrap();
            assert!(
                np >= nq - 1e-12 * np.max(1.0),
                "case {case}: |t|_{p} = {np} < |t|_{q} = {nq}"
            );
        }
    }
}

/// For up to four positive weights the even power sums through order 8
/// pin down the multiset, so distinct multisets are separated by at
/// least one of them.
#[test]
fn even_power_sums_separate_small_multisets() {
    // grid entries k/2 for k = 1..=5
    let mut multisets: Vec<Vec<BigRational>> = Vec::new();
    let grid: Vec<BigRational> = (1..=5)
        .map(|k| BigRational::new(BigInt::from(k), BigInt::from(2)))
        .collect();
    for m in 1..=4usize {
        let mut stack: Vec<(Vec<BigRational>, usize)> = vec![(Vec::new(), 0)];
        while let Some((cur, lo)) = stack.pop() {
            if cur.len() == m {
                multisets.push(cur);
                continue;
            }
            for (i, g) in grid.iter().enumerate().skip(lo) {
                let mut next = cur.clone();
                next.push(g.clone());
                stack.push((next, i));
            }
        }
    }
    let weights: Vec<WeightMultiset> = multisets
        .iter()
        .map(|m| WeightMultiset::from_rationals(m.clone()).unwrap())
        .collect();
    let mut compared = 0u64;
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            let a = weights[i].exact().unwrap();
            let b = weights[j].exact().unwrap();
            let same = {
                let mut x = multisets[i].clone();
                let mut y = multisets[j].clone();
                x.sort();
                y.sort();
                x == y
            };
            if same {
                continue;
            }
            compared += 1;
            let separated = [2usize, 4, 6, 8].iter().any(|&d| {
                let diff = a.even_power_sum(d).unwrap() - b.even_power_sum(d).unwrap();
                rational_to_f64(&diff).abs() > 1e-9
            });
            assert!(
                separated,
                "multisets {:?} and {:?} agree on all even power sums to order 8",
                multisets[i], multisets[j]
            );
        }
    }
    assert!(compared > 5000, "expected many distinct pairs, got {compared}");
}

/// Exact check of the antidiagonal bounds on pairwise difference sums.
/// Any violation is printed as a finding; the test does not assume the
/// inequality in either direction.
#[test]
fn antidiagonal_difference_bounds_logged() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut violations = 0u64;
    let mut checked = 0u64;
    for _case in 0..40 {
        let m = rng.gen_range(2..=8usize);
        let mut entries: Vec<BigRational> = (0..m)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=40i64)), BigInt::from(8)))
            .collect();
        entries.sort_by(|a, b| b.cmp(a));
        for d in 1..=4usize {
            checked += 1;
            let mut pair_sum = BigRational::zero();
            for i in 0..m {
                for j in i + 1..m {
                    pair_sum += pow_rat(&(&entries[i] - &entries[j]), d);
                }
            }
            let mut anti = BigRational::zero();
            for k in 1..=(m - 1).div_ceil(2) {
                let coeff = BigRational::from(BigInt::from((m - 2 * k + 1) as i64));
                anti += coeff * pow_rat(&(&entries[k - 1] - &entries[m - k]), d);
            }
            let lower = &anti / BigRational::from(BigInt::from(1i64 << (d - 1)));
            if pair_sum < lower {
                violations += 1;
                println!(
                    "FINDING: lower antidiagonal bound fails for t = {:?}, d = {d}: \
                     sum {} < bound {}",
                    entries, pair_sum, lower
                );
            }
            if pair_sum > anti {
                violations += 1;
                println!(
                    "FINDING: upper antidiagonal bound fails for t = {:?}, d = {d}: \
                     sum {} > bound {}",
                    entries, pair_sum, anti
                );
            }
        }
    }
    println!("antidiagonal bounds: {checked} cases checked, {violations} violations logged");
}

fn pow_rat(r: &BigRational, n: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..n {
        out *= r;
    }
    out
}

#[test]
fn characteristic_function_is_bounded_on_the_real_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for case in 0..10 {
        let m = case % 8 + 1;
        let sigma = if case % 3 == 0 { 0.7 } else { 0.0 };
        let p = DustpanParams::new(random_weights(&mut rng, m), sigma, false).unwrap();
        for j in -60..=60 {
            let s = j as f64 * 0.8;
            let v = char_fn(&p, s).norm();
            assert!(v <= 1.0 + 1e-12, "|phi({s})| = {v} for case {case}");
        }
    }
}

/// Inside the disk of radius 1/|t|_2 the analytic continuation stays
/// bounded by e.
#[test]
fn characteristic_function_growth_bound_inside_disk() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in 0..15 {
        let m = case % 8 + 1;
        let t = random_weights(&mut rng, m);
        let radius = 1.0 / t.norm2_sq().sqrt();
        let p = DustpanParams::pure_sum(t);
        for j in 0..24 {
            let angle = j as f64 * std::f64::consts::PI / 12.0;
            let r = radius * (0.05 + 0.94 * rng.gen::<f64>());
            let z = num_complex::Complex64::new(r * angle.cos(), r * angle.sin());
            let v = char_fn_complex(&p, z).norm();
            assert!(
                v <= std::f64::consts::E + 1e-9,
                "|phi({z})| = {v} exceeds e, case {case}"
            );
        }
    }
}
