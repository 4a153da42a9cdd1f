//! Brute-force enumeration oracles. These generate every object
//! explicitly so the product formulas can be tested against something
//! that does not share their algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactpoly::DensePoly;
use crate::tableaux::partition::Partition;

/// Hard cap on |lam| for SYT enumeration.
pub const SYT_ENUM_GUARD: u64 = 10;
/// Hard cap on the number of SSYT generated before aborting.
pub const SSYT_ENUM_GUARD: usize = 1_000_000;
/// Hard cap on a*b*c for plane-partition enumeration.
pub const PP_ENUM_GUARD: u64 = 27;

/// All standard Young tableaux of shape `lam` with their major index
/// (the sum of k over descents: entries k whose successor sits in a
/// strictly lower row).
pub fn enumerate_syt(lam: &Partition) -> Result<Vec<(Vec<Vec<u64>>, u64)>> {
    let n = u64::try_from(lam.size())
        .ok()
        .filter(|&n| n <= SYT_ENUM_GUARD)
        .ok_or_else(|| {
            Error::InstanceTooLarge(format!("SYT enumeration limited to size {SYT_ENUM_GUARD}"))
        })?;
    let shape: Vec<usize> = lam
        .parts()
        .iter()
        .map(|p| usize::try_from(p).expect("size bound implies small parts"))
        .collect();
    let mut rows: Vec<Vec<u64>> = shape.iter().map(|&r| Vec::with_capacity(r)).collect();
    let mut row_of = vec![0usize; n as usize + 1];
    let mut out = Vec::new();
    fill_syt(&shape, &mut rows, &mut row_of, 1, n, &mut out);
    Ok(out)
}

fn fill_syt(
    shape: &[usize],
    rows: &mut Vec<Vec<u64>>,
    row_of: &mut [usize],
    next: u64,
    n: u64,
    out: &mut Vec<(Vec<Vec<u64>>, u64)>,
) {
    if next > n {
        let maj = (1..n)
            .filter(|&k| row_of[k as usize + 1] > row_of[k as usize])
            .sum();
        out.push((rows.clone(), maj));
        return;
    }
    for r in 0..shape.len() {
        let len = rows[r].len();
        // the new cell must extend this row and stay inside the shape of
        // the cells placed so far (column condition with the row above)
        if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
            rows[r].push(next);
            row_of[next as usize] = r;
            fill_syt(shape, rows, row_of, next + 1, n, out);
            rows[r].pop();
        }
    }
}

/// All semistandard Young tableaux of shape `lam` with entries at most
/// `m`, with their rank (sum of entries minus the number of cells).
/// Aborts once more than [`SSYT_ENUM_GUARD`] tableaux have been built.
pub fn enumerate_ssyt(lam: &Partition, m: u64) -> Result<Vec<(Vec<Vec<u64>>, u64)>> {
    if lam.len() as u64 > m {
        return Ok(Vec::new());
    }
    if u64::try_from(lam.size()).map_or(true, |n| n > SSYT_ENUM_GUARD as u64) {
        return Err(Error::InstanceTooLarge(
            "SSYT enumeration needs a small shape".into(),
        ));
    }
    let shape: Vec<usize> = lam
        .parts()
        .iter()
        .map(|p| usize::try_from(p).expect("cell bound implies small parts"))
        .collect();
    let mut rows: Vec<Vec<u64>> = shape.iter().map(|&r| Vec::with_capacity(r)).collect();
    let mut out = Vec::new();
    fill_ssyt(&shape, m, &mut rows, 0, 0, 0, &mut out)?;
    Ok(out)
}

fn fill_ssyt(
    shape: &[usize],
    m: u64,
    rows: &mut Vec<Vec<u64>>,
    r: usize,
    c: usize,
    rank: u64,
    out: &mut Vec<(Vec<Vec<u64>>, u64)>,
) -> Result<()> {
    if r == shape.len() {
        if out.len() >= SSYT_ENUM_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "more than {SSYT_ENUM_GUARD} semistandard tableaux"
            )));
        }
        out.push((rows.clone(), rank));
        return Ok(());
    }
    if c == shape[r] {
        return fill_ssyt(shape, m, rows, r + 1, 0, rank, out);
    }
    let lo = if c == 0 { 1 } else { rows[r][c - 1] }; // weakly increasing rows
    let lo = if r == 0 { lo } else { lo.max(rows[r - 1][c] + 1) }; // strictly increasing columns
    for v in lo..=m {
        rows[r].push(v);
        fill_ssyt(shape, m, rows, r, c + 1, rank + (v - 1), out)?;
        rows[r].pop();
    }
    Ok(())
}

/// All plane partitions in an `a x b x c` box (an `a x b` matrix of
/// stack heights at most `c`, weakly decreasing along rows and columns)
/// with their size.
pub fn enumerate_pp(a: u64, b: u64, c: u64) -> Result<Vec<(Vec<Vec<u64>>, u64)>> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Domain("box dimensions must be positive".into()));
    }
    let cells = a.checked_mul(b).and_then(|ab| ab.checked_mul(c));
    if cells.map_or(true, |n| n > PP_ENUM_GUARD) {
        return Err(Error::InstanceTooLarge(format!(
            "PP enumeration limited to boxes with at most {PP_ENUM_GUARD} cells"
        )));
    }
    let (a, b) = (a as usize, b as usize);
    let mut grid = vec![vec![0u64; b]; a];
    let mut out = Vec::new();
    fill_pp(&mut grid, c, 0, 0, 0, &mut out);
    Ok(out)
}

fn fill_pp(
    grid: &mut Vec<Vec<u64>>,
    c: u64,
    r: usize,
    col: usize,
    size: u64,
    out: &mut Vec<(Vec<Vec<u64>>, u64)>,
) {
    if r == grid.len() {
        out.push((grid.clone(), size));
        return;
    }
    if col == grid[r].len() {
        fill_pp(grid, c, r + 1, 0, size, out);
        return;
    }
    let cap_left = if col == 0 { c } else { grid[r][col - 1] };
    let cap_up = if r == 0 { c } else { grid[r - 1][col] };
    for v in 0..=cap_left.min(cap_up) {
        grid[r][col] = v;
        fill_pp(grid, c, r, col + 1, size + v, out);
    }
    grid[r][col] = 0;
}

/// Generating function of a statistic multiset: coefficient of q^s is
/// the number of occurrences of s.
pub fn gf_from_stats(stats: &[u64]) -> DensePoly {
    if stats.is_empty() {
        return DensePoly::zero();
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &s in stats {
        *counts.entry(s).or_insert(0) += 1;
    }
    let offset = *counts.keys().next().expect("nonempty");
    let top = *counts.keys().next_back().expect("nonempty");
    let mut coeffs = vec![BigInt::from(0); (top - offset + 1) as usize];
    for (s, c) in counts {
        coeffs[(s - offset) as usize] = BigInt::from(c);
    }
    DensePoly::new(offset, coeffs)
}
