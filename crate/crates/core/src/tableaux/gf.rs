//! Product-form generating functions: SYT by major index, SSYT by rank
//! (two equivalent products), and plane partitions in a box by size.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::Cgf;
use crate::tableaux::partition::{Partition, CELL_GUARD};
use crate::tableaux::stats::exp_notation;

/// `q^rank_min(lam) * [1][2]...[n] / prod [h_u]` over the cells of `lam`;
/// expands to the maj generating function over standard Young tableaux.
pub fn syt_maj_cgf(lam: &Partition) -> Result<Cgf> {
    if lam.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let hooks = lam.hooks()?;
    // hooks() bounds the cell count, so the size fits comfortably in u64.
    let n = u64::try_from(lam.size())
        .map_err(|_| Error::InstanceTooLarge("partition size exceeds u64".into()))?;
    Cgf::from_grouped(
        (1..=n).map(|v| (BigUint::from(v), 1)).collect(),
        group_u64(hooks),
        lam.rank_min(),
    )
}

/// q-Weyl product for the rank generating function of SSYT with entries
/// at most `m`: numerator `{lam_i - lam_j + j - i : i < j <= m}` (zero
/// padded), denominator `{j - i : i < j <= m}`, shift `rank_min(lam)`.
///
/// Both multisets are assembled per pair of levels of the exponential
/// notation, so the cost is near-linear in the number of distinct entries
/// rather than quadratic in `m`.
pub fn ssyt_rank_cgf_weyl(lam: &Partition, m: u64) -> Result<Cgf> {
    let exp = exp_notation(lam, m)?;
    let levels = exp.levels();
    let k = levels.len();
    if (k as u64).saturating_mul(m) > 10_000_000 {
        return Err(Error::InstanceTooLarge(format!(
            "q-Weyl product with {k} levels and m = {m} exceeds the entry budget"
        )));
    }

    let mut num: Vec<(BigUint, u64)> = Vec::new();
    // Within one level the difference lam_i - lam_j vanishes and j - i = d
    // occurs e - d times.
    for (_, e) in levels {
        for d in 1..*e {
            num.push((BigUint::from(d), e - d));
        }
    }
    // Across levels a < b the entry is (l_a - l_b) + (j - i). With g the
    // distance between block starts, j - i = d occurs for the overlap of
    // the two index ranges, a trapezoid in d.
    let starts: Vec<u64> = levels
        .iter()
        .scan(0u64, |acc, (_, e)| {
            let s = *acc;
            *acc += e;
            Some(s)
        })
        .collect();
    for a in 0..k {
        let (la, ea) = (&levels[a].0, levels[a].1);
        for b in a + 1..k {
            let (lb, eb) = (&levels[b].0, levels[b].1);
            let gap = la - lb;
            let g = starts[b] - starts[a];
            for d in (g - ea + 1)..=(g + eb - 1) {
                let count = ea
                    .min(eb)
                    .min(g + eb - d)
                    .min(d - (g - ea));
                num.push((&gap + BigUint::from(d), count));
            }
        }
    }

    let den: Vec<(BigUint, u64)> = (1..m).map(|d| (BigUint::from(d), m - d)).collect();
    Cgf::from_grouped(num, den, lam.rank_min())
}

/// q-hook-content product for the same rank generating function:
/// numerator `{m + c_u}`, denominator `{h_u}` over the cells of `lam`,
/// shift `rank_min(lam)`.
pub fn ssyt_rank_cgf_hookcontent(lam: &Partition, m: u64) -> Result<Cgf> {
    if m == 0 {
        return Err(Error::Domain("entry bound m must be positive".into()));
    }
    let len = lam.len() as u64;
    if len > m {
        return Err(Error::LengthExceedsM { len: lam.len(), m });
    }
    let contents = lam.contents()?;
    let hooks = lam.hooks()?;
    // c_u >= -(l(lam) - 1) >= -(m - 1), so every entry is positive.
    let num = contents
        .into_iter()
        .map(|c| BigUint::try_from(i128::from(m) + i128::from(c)).expect("m + content > 0"));
    Cgf::new(num, hooks.into_iter().map(BigUint::from), lam.rank_min())
}

/// MacMahon's product for plane partitions in an `a x b x c` box:
/// numerator `{i+j+k-1}`, denominator `{i+j+k-2}` over the box, shift 0.
/// The denominator's `i+j+k-2 = 1` cells are genuine `[1]_q` factors.
pub fn pp_size_cgf(a: u64, b: u64, c: u64) -> Result<Cgf> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Domain("box dimensions must be positive".into()));
    }
    let cells = a.checked_mul(b).and_then(|ab| ab.checked_mul(c));
    if cells.map_or(true, |n| n > CELL_GUARD) {
        return Err(Error::InstanceTooLarge(format!(
            "box {a}x{b}x{c} exceeds {CELL_GUARD} cells"
        )));
    }
    // cnt[s] = #{(i,j,k) in the box : i+j+k = s}, via a difference array
    // over i+j and a shared run in k.
    let top = (a + b + c) as usize;
    let mut diff = vec![0i64; top + 2];
    for i in 1..=a {
        for j in 1..=b {
            let lo = (i + j + 1) as usize;
            let hi = (i + j + c) as usize;
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut running = 0i64;
    for s in 3..=top {
        running += diff[s];
        if running > 0 {
            let count = running as u64;
            num.push((BigUint::from(s as u64 - 1), count));
            den.push((BigUint::from(s as u64 - 2), count));
        }
    }
    Cgf::from_grouped(num, den, BigUint::zero())
}

fn group_u64(mut values: Vec<u64>) -> Vec<(BigUint, u64)> {
    values.sort_unstable();
    let mut grouped: Vec<(BigUint, u64)> = Vec::new();
    for v in values {
        match grouped.last_mut() {
            Some((w, c)) if *w == BigUint::from(v) => *c += 1,
            _ => grouped.push((BigUint::from(v), 1)),
        }
    }
    grouped
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn coeffs(c: &Cgf) -> (u64, Vec<i64>) {
        let p = c.expand().unwrap();
        (
            p.offset(),
            p.coeffs().iter().map(|x| i64::try_from(x).unwrap()).collect(),
        )
    }

    #[test]
    fn syt_examples() {
        // (2,2): two tableaux with maj 2 and 4.
        assert_eq!(coeffs(&syt_maj_cgf(&part("2,2")).unwrap()), (2, vec![1, 0, 1]));
        // single row: unique tableau, maj 0.
        assert_eq!(coeffs(&syt_maj_cgf(&part("6")).unwrap()), (0, vec![1]));
        // (3,1): three tableaux with maj 1, 2, 3.
        assert_eq!(coeffs(&syt_maj_cgf(&part("3,1")).unwrap()), (1, vec![1, 1, 1]));
        assert!(matches!(
            syt_maj_cgf(&Partition::empty()),
            Err(Error::EmptyPartition)
        ));
    }

    #[test]
    fn weyl_matches_the_display_polynomial() {
        let g = ssyt_rank_cgf_weyl(&part("3,1"), 4).unwrap();
        assert_eq!(
            coeffs(&g),
            (1, vec![1, 2, 4, 5, 7, 7, 7, 5, 4, 2, 1])
        );
    }

    #[test]
    fn weyl_edge_cases() {
        for m in 1..=5 {
            assert_eq!(coeffs(&ssyt_rank_cgf_weyl(&Partition::empty(), m).unwrap()), (0, vec![1]));
        }
        assert_eq!(coeffs(&ssyt_rank_cgf_weyl(&part("2"), 2).unwrap()), (0, vec![1, 1, 1]));
        assert!(matches!(
            ssyt_rank_cgf_weyl(&part("1,1,1"), 2),
            Err(Error::LengthExceedsM { len: 3, m: 2 })
        ));
    }

    #[test]
    fn weyl_grouping_agrees_with_direct_pairs() {
        // Rebuild the numerator entry by entry from the padded partition
        // and compare multisets with the block construction.
        let lam = part("8,4,3,1,1");
        let m = 7u64;
        let g = ssyt_rank_cgf_weyl(&lam, m).unwrap();
        let mut direct: Vec<BigInt> = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let li = BigInt::from(lam.part(i as usize));
                let lj = BigInt::from(lam.part(j as usize));
                direct.push(li - lj + BigInt::from(j - i));
            }
        }
        let mut from_blocks: Vec<BigInt> = Vec::new();
        for (v, c) in g.num_grouped() {
            for _ in 0..*c {
                from_blocks.push(BigInt::from(v.clone()));
            }
        }
        direct.sort();
        from_blocks.sort();
        assert_eq!(direct, from_blocks);
        assert_eq!(g.den_len(), m * (m - 1) / 2);
    }

    #[test]
    fn hookcontent_matches_weyl() {
        for (lam, m) in [
            (part("3,1"), 4u64),
            (part("2,2"), 2),
            (part("8,4,3,1,1"), 7),
            (part("2,1"), 5),
        ] {
            let a = ssyt_rank_cgf_weyl(&lam, m).unwrap().expand().unwrap();
            let b = ssyt_rank_cgf_hookcontent(&lam, m).unwrap().expand().unwrap();
            assert_eq!(a, b, "shape {lam}, m = {m}");
        }
    }

    #[test]
    fn hookcontent_examples() {
        assert_eq!(
            coeffs(&ssyt_rank_cgf_hookcontent(&part("1"), 3).unwrap()),
            (0, vec![1, 1, 1])
        );
        // unique filling with rows 11/22, rank 2.
        assert_eq!(
            coeffs(&ssyt_rank_cgf_hookcontent(&part("2,2"), 2).unwrap()),
            (2, vec![1])
        );
        assert!(matches!(
            ssyt_rank_cgf_hookcontent(&part("1,1,1"), 2),
            Err(Error::LengthExceedsM { .. })
        ));
    }

    #[test]
    fn pp_box_examples() {
        assert_eq!(coeffs(&pp_size_cgf(1, 1, 1).unwrap()), (0, vec![1, 1]));
        let p222 = pp_size_cgf(2, 2, 2).unwrap().expand().unwrap();
        assert_eq!(u64::try_from(p222.mass()).unwrap(), 20);
        let reference = pp_size_cgf(2, 3, 4).unwrap().expand().unwrap();
        for (a, b, c) in [(2, 4, 3), (3, 2, 4), (3, 4, 2), (4, 2, 3), (4, 3, 2)] {
            assert_eq!(
                pp_size_cgf(a, b, c).unwrap().expand().unwrap(),
                reference,
                "box {a}x{b}x{c}"
            );
        }
        assert!(pp_size_cgf(0, 1, 1).is_err());
        assert!(matches!(
            pp_size_cgf(200, 200, 200),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn weyl_guard_trips_on_pathological_level_counts() {
        // 4000 distinct rows padded to m = 4000 would need ~16M numerator
        // slots; the k*m budget rejects it before any allocation.
        let lam = Partition::new((1..=4000u64).rev().map(BigUint::from).collect()).unwrap();
        assert!(matches!(
            ssyt_rank_cgf_weyl(&lam, 4000),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
