//! Kolmogorov and Lévy distances between a discrete distribution given by
//! a nonnegative polynomial and a limit law S_t + N(0, sigma^2).
//!
//! The discrete side is standardized exactly (mean and variance as
//! rationals). The limit CDF is evaluated through one of three engines:
//! an exact lattice scheme when the weights are rational (the signed
//! measure conv_k(delta_{+t_k/2} - delta_{-t_k/2}) lives on a half-integer
//! lattice after clearing denominators, so CDF values and derivatives at
//! dyadic anchors are exact integers over a known denominator, and a short
//! Taylor step reaches arbitrary arguments), the direct 2^m signed sum for
//! float-only weights, and Gauss-Legendre convolution with the normal CDF
//! when sigma > 0.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::exactpoly::{rational_to_f64, DensePoly};

use super::density::cdf;
use super::params::DustpanParams;
use super::weights::WeightMultiset;

/// Absolute tolerance of the Lévy-distance bisection.
pub const LEVY_TOLERANCE: f64 = 1e-4;

/// Cap on (anchor count) x (lattice atoms) when building the exact table.
const LATTICE_WORK_GUARD: u64 = 20_000_000;

/// Cap on (jump count) x (per-evaluation cost) of the distance scan.
const DISTANCE_WORK_GUARD: u64 = 100_000_000;

/// Cap on the common denominator cleared out of rational weights.
const DENOMINATOR_GUARD: u64 = 1 << 40;

/// Cap on the integerized total width (the lattice diameter).
const WIDTH_GUARD: u64 = 2_000_000;

/// Weight count cap for the exact lattice engine (the direct engine has
/// its own 2^m cap).
const LATTICE_WEIGHT_GUARD: usize = 64;

fn ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    let nf = n.to_f64().unwrap_or(f64::NAN);
    let df = d.to_f64().unwrap_or(f64::NAN);
    if nf.is_finite() && df.is_finite() && df != 0.0 {
        nf / df
    } else {
        rational_to_f64(&BigRational::new(n.clone(), d.clone()))
    }
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn normal_pdf(z: f64) -> f64 {
    (-z * z / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1], by
/// Newton iteration on the Legendre polynomial.
struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_deriv(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    }

    fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mid = (a + b) / 2.0;
        let half = (b - a) / 2.0;
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Exact piecewise-polynomial CDF of S_a for integer weights a, tabulated
/// as cubic Taylor rows at dyadic anchors. Arguments are pre-scaled by
/// `scale_inv` so that callers work in the original weight units.
struct LatticeCdf {
    a_sum: u64,
    n_g: usize,
    inv_step: f64,
    step: f64,
    scale_inv: f64,
    table: Vec<[f64; 4]>,
}

impl LatticeCdf {
    fn build(a: &[u64], scale_inv: f64) -> Result<Self> {
        let m = a.len();
        debug_assert!(m > 0 && a.iter().all(|&x| x > 0));
        if m > LATTICE_WEIGHT_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "{m} positive weights exceed the exact-engine cap {LATTICE_WEIGHT_GUARD}"
            )));
        }
        let a_sum: u64 = a.iter().sum();
        if a_sum > WIDTH_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "integerized weight width {a_sum} exceeds {WIDTH_GUARD}"
            )));
        }

        // Signed atom weights of conv_k(delta_{+a_k/2} - delta_{-a_k/2}) on
        // doubled positions p = 2i - width, i = 0..=width.
        let mut w = vec![BigInt::one()];
        let mut width = 0u64;
        for &ak in a {
            let new_width = width + ak;
            let mut next = vec![BigInt::zero(); new_width as usize + 1];
            for (i, cur) in w.iter().enumerate() {
                if cur.is_zero() {
                    continue;
                }
                next[i + ak as usize] += cur;
                next[i] -= cur;
            }
            w = next;
            width = new_width;
        }
        let atoms: Vec<(i64, BigInt)> = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (2 * i as i64 - a_sum as i64, c))
            .collect();

        // Anchor grid: n_g = a_sum * 2^r so half-integer breakpoints in u
        // land exactly on anchors; then a floor anchor never has a
        // breakpoint strictly between itself and the evaluation point.
        let mut n_g = a_sum;
        let mut inv_step = 1.0;
        while n_g < 8192 || n_g == a_sum {
            n_g *= 2;
            inv_step *= 2.0;
        }
        let work = (n_g + 1) * atoms.len() as u64;
        if work > LATTICE_WORK_GUARD {
            return Err(Error::InstanceTooLarge(format!(
                "exact CDF table needs {work} lattice terms (limit {LATTICE_WORK_GUARD})"
            )));
        }

        let ord = m.min(3);
        let lp = (m - ord) as u32;
        let mut denom_base = BigInt::from(2u32);
        for k in 1..=m {
            denom_base *= BigInt::from(k);
        }
        for &ak in a {
            denom_base *= BigInt::from(ak);
        }
        let q = BigInt::from(2 * n_g);
        // binom[i] * S_i / (denom_base * q^(m-i)) is the i-th Taylor
        // coefficient; precompute the fixed parts.
        let mut denom_q = Vec::with_capacity(ord + 1);
        let mut binom = Vec::with_capacity(ord + 1);
        for i in 0..=ord {
            denom_q.push(&denom_base * q.pow((m - i) as u32));
            let mut b = BigInt::one();
            for j in 0..i {
                b = b * BigInt::from(m - j) / BigInt::from(j + 1);
            }
            binom.push(b);
        }

        let n_gi = n_g as i64;
        let a_i = a_sum as i64;
        let mut table = Vec::with_capacity(n_g as usize);
        for j in 0..n_gi {
            let mut sums = vec![BigInt::zero(); ord + 1];
            for (p, c) in &atoms {
                // u0 + o = z / (2 n_g) with integer z
                let z = a_i * (2 * j - n_gi) + n_gi * p;
                let mut zp = BigInt::from(z).pow(lp);
                let positive = z >= 0;
                for i in (0..=ord).rev() {
                    let term = c * &zp;
                    if positive {
                        sums[i] += term;
                    } else {
                        sums[i] -= term;
                    }
                    if i > 0 {
                        zp *= z;
                    }
                }
            }
            let mut row = [0.0f64; 4];
            row[0] = (0.5 + ratio_f64(&sums[0], &denom_q[0])).clamp(0.0, 1.0);
            for i in 1..=ord {
                row[i] = ratio_f64(&(&binom[i] * &sums[i]), &denom_q[i]);
            }
            table.push(row);
        }

        Ok(LatticeCdf {
            a_sum,
            n_g: n_g as usize,
            inv_step,
            step: 1.0 / inv_step,
            scale_inv,
            table,
        })
    }

    fn value(&self, x: f64) -> f64 {
        let u = x * self.scale_inv;
        let half = self.a_sum as f64 / 2.0;
        if u <= -half {
            return 0.0;
        }
        if u >= half {
            return 1.0;
        }
        let pos = (u + half) * self.inv_step;
        let j = (pos.floor() as usize).min(self.n_g - 1);
        let u0 = -half + j as f64 * self.step;
        let d = u - u0;
        let c = &self.table[j];
        (((c[3] * d + c[2]) * d + c[1]) * d + c[0]).clamp(0.0, 1.0)
    }
}

enum SumEngine {
    /// S_t is identically zero (no positive weights).
    Point,
    /// Exact lattice table from rational weights.
    Lattice(LatticeCdf),
    /// Direct 2^m signed sum on float weights.
    Direct(WeightMultiset),
}

/// Evaluator for the CDF of S_t + N(0, sigma^2).
pub struct LimitCdf {
    sum: SumEngine,
    sigma: f64,
    half_width: f64,
    gl: Option<GaussLegendre>,
}

impl LimitCdf {
    pub fn new(lim: &DustpanParams) -> Result<Self> {
        if !(lim.sigma >= 0.0 && lim.sigma.is_finite()) {
            return Err(Error::BadParameters(format!(
                "sigma must be a finite nonnegative real, got {}",
                lim.sigma
            )));
        }
        let t = lim.t.trimmed();
        if t.is_empty() && lim.sigma == 0.0 {
            return Err(Error::DegenerateDistribution);
        }
        let sum = if t.is_empty() {
            SumEngine::Point
        } else if let Some(ex) = t.exact() {
            // clear denominators: t = (sqrt(factor)/D) * a with integer a
            let mut d = BigInt::one();
            for b in ex.base() {
                d = d.lcm(b.denom());
            }
            if d > BigInt::from(DENOMINATOR_GUARD) {
                return Err(Error::InstanceTooLarge(format!(
                    "common weight denominator {d} exceeds {DENOMINATOR_GUARD}"
                )));
            }
            let mut a = Vec::with_capacity(ex.base().len());
            for b in ex.base() {
                let ai = (b * BigRational::from_integer(d.clone())).to_integer();
                a.push(ai.to_u64().ok_or_else(|| {
                    Error::InstanceTooLarge("integerized weight exceeds u64".into())
                })?);
            }
            let scale_inv = d.to_f64().expect("guarded denominator")
                / rational_to_f64(ex.factor()).sqrt();
            SumEngine::Lattice(LatticeCdf::build(&a, scale_inv)?)
        } else {
            if t.len() > super::density::SUMMAND_GUARD {
                return Err(Error::TooManySummands { m: t.len() });
            }
            SumEngine::Direct(t.clone())
        };
        let gl = if lim.sigma > 0.0 && !matches!(sum, SumEngine::Point) {
            Some(GaussLegendre::new(16))
        } else {
            None
        };
        Ok(LimitCdf {
            sum,
            sigma: lim.sigma,
            half_width: t.total_width() / 2.0,
            gl,
        })
    }

    fn sum_cdf(&self, x: f64) -> f64 {
        match &self.sum {
            SumEngine::Point => {
                if x < 0.0 {
                    0.0
                } else {
                    1.0
                }
            }
            SumEngine::Lattice(lat) => lat.value(x),
            SumEngine::Direct(t) => cdf(t, x).expect("validated weights"),
        }
    }

    /// CDF of the limit law at x.
    pub fn value(&self, x: f64) -> f64 {
        if self.sigma == 0.0 {
            return self.sum_cdf(x);
        }
        // integral by parts: G(x) = Phi((x-W)/sigma)
        //   + (1/sigma) int phi((x-y)/sigma) F_sum(y) dy over the support
        let w = self.half_width;
        let s = self.sigma;
        let mut g = normal_cdf((x - w) / s);
        let lo = (-w).max(x - 9.0 * s);
        let hi = w.min(x + 9.0 * s);
        if lo < hi {
            let gl = self.gl.as_ref().expect("rule built when sigma > 0");
            let panels = ((hi - lo) / (s / 2.0)).ceil().max(8.0) as usize;
            let width = (hi - lo) / panels as f64;
            for k in 0..panels {
                let a = lo + k as f64 * width;
                let b = a + width;
                g += gl.integrate(a, b, |y| {
                    normal_pdf((x - y) / s) / s * self.sum_cdf(y)
                });
            }
        }
        g.clamp(0.0, 1.0)
    }

    /// Relative cost of one `value` call, for work guards.
    fn eval_cost(&self) -> u64 {
        let base = match &self.sum {
            SumEngine::Point => 1,
            SumEngine::Lattice(_) => 1,
            SumEngine::Direct(t) => 1u64 << t.len(),
        };
        if self.sigma > 0.0 && !matches!(self.sum, SumEngine::Point) {
            base.saturating_mul(16 * 40)
        } else {
            base
        }
    }
}

/// Jump points and cumulative values of the standardized discrete CDF.
struct DiscreteSteps {
    xs: Vec<f64>,
    cum: Vec<f64>,
}

fn standardized_steps(p: &DensePoly) -> Result<DiscreteSteps> {
    if p.is_zero() {
        return Err(Error::ZeroMass);
    }
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::NegativeCoefficient {
                exponent: p.offset() + i as u64,
            });
        }
    }
    let jumps: Vec<(u64, &BigInt)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (p.offset() + i as u64, c))
        .collect();
    if jumps.len() < 2 {
        return Err(Error::DegenerateDistribution);
    }

    let mut mass = BigInt::zero();
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    for &(k, c) in &jumps {
        let kb = BigInt::from(k);
        mass += c;
        s1 += c * &kb;
        s2 += c * &kb * &kb;
    }
    let mu = ratio_f64(&s1, &mass);
    let var_num = &s2 * &mass - &s1 * &s1;
    let sd = ratio_f64(&var_num, &(&mass * &mass)).sqrt();
    if !(sd > 0.0) {
        return Err(Error::DegenerateDistribution);
    }

    // cumulative fractions via a fixed-point inverse of the total mass:
    // (c * inv) >> b approximates c/mass * 2^60 with error well below f64
    // resolution, and avoids a big division per jump
    let b = mass.bits();
    let inv = (BigInt::one() << (b + 60)) / &mass;
    let scale = (-60f64).exp2();
    let mut xs = Vec::with_capacity(jumps.len());
    let mut cum = Vec::with_capacity(jumps.len());
    let mut running = BigInt::zero();
    for &(k, c) in &jumps {
        running += c;
        let f = ((&running * &inv) >> b).to_f64().unwrap_or(f64::NAN) * scale;
        xs.push((k as f64 - mu) / sd);
        cum.push(f.min(1.0));
    }
    *cum.last_mut().expect("nonempty") = 1.0;
    Ok(DiscreteSteps { xs, cum })
}

/// Kolmogorov and Lévy distances between the standardized discrete
/// distribution and the limit law.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub kolmogorov: f64,
    pub levy: f64,
    pub levy_tolerance: f64,
    pub jumps: usize,
}

/// Builds the limit evaluator and measures both distances.
pub fn discrete_vs_limit_distance(p: &DensePoly, lim: &DustpanParams) -> Result<DistanceReport> {
    let g = LimitCdf::new(lim)?;
    discrete_vs_limit_with(p, &g)
}

/// Distance scan against a prebuilt limit evaluator (reusable across a
/// family of discrete instances with the same limit).
pub fn discrete_vs_limit_with(p: &DensePoly, g: &LimitCdf) -> Result<DistanceReport> {
    let steps = standardized_steps(p)?;
    let n = steps.xs.len();
    let work = (n as u64).saturating_mul(g.eval_cost());
    if work > DISTANCE_WORK_GUARD {
        return Err(Error::InstanceTooLarge(format!(
            "distance scan needs {work} limit-CDF work units (limit {DISTANCE_WORK_GUARD})"
        )));
    }

    // sup |F - G| is attained at a jump of F, approached from either side
    let mut kolmogorov = 0.0f64;
    for j in 0..n {
        let gv = g.value(steps.xs[j]);
        let lo = if j == 0 { 0.0 } else { steps.cum[j - 1] };
        kolmogorov = kolmogorov
            .max((steps.cum[j] - gv).abs())
            .max((lo - gv).abs());
    }

    // Levy distance by bisection on the feasibility predicate
    //   G(x_j + eps) >= F(x_j) - eps  and  G(x_j - eps) <= F(x_j^-) + eps
    let feasible = |eps: f64| -> bool {
        for j in 0..n {
            if g.value(steps.xs[j] + eps) < steps.cum[j] - eps {
                return false;
            }
            let lo = if j == 0 { 0.0 } else { steps.cum[j - 1] };
            if g.value(steps.xs[j] - eps) > lo + eps {
                return false;
            }
        }
        true
    };
    let mut lo = 0.0f64;
    let mut hi = kolmogorov; // Levy <= Kolmogorov, and K is feasible
    while hi - lo > LEVY_TOLERANCE {
        let mid = (lo + hi) / 2.0;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    Ok(DistanceReport {
        kolmogorov,
        levy: hi,
        levy_tolerance: LEVY_TOLERANCE,
        jumps: n,
    })
}

fn step_value(steps: &DiscreteSteps, x: f64) -> f64 {
    // value of the right-continuous step CDF at x
    let idx = steps.xs.partition_point(|&j| j <= x);
    if idx == 0 {
        0.0
    } else {
        steps.cum[idx - 1]
    }
}

/// Kolmogorov and Lévy distances between two standardized discrete
/// distributions. Identical inputs give exactly zero.
pub fn discrete_vs_discrete_distance(p: &DensePoly, q: &DensePoly) -> Result<DistanceReport> {
    let fp = standardized_steps(p)?;
    let fq = standardized_steps(q)?;

    // between merged jumps both CDFs are constant, so the sup is attained
    // at the right value of some jump of either side
    let mut kolmogorov = 0.0f64;
    for &x in fp.xs.iter().chain(&fq.xs) {
        kolmogorov = kolmogorov.max((step_value(&fp, x) - step_value(&fq, x)).abs());
    }

    // feasibility of eps: for every jump x of F, G(x + eps) >= F(x) - eps,
    // and symmetrically; this is exactly the Levy sandwich for step CDFs
    let feasible = |eps: f64| -> bool {
        for (j, &x) in fp.xs.iter().enumerate() {
            if step_value(&fq, x + eps) < fp.cum[j] - eps {
                return false;
            }
        }
        for (k, &y) in fq.xs.iter().enumerate() {
            if step_value(&fp, y + eps) < fq.cum[k] - eps {
                return false;
            }
        }
        true
    };
    let mut lo = 0.0f64;
    let mut hi = kolmogorov;
    while hi - lo > LEVY_TOLERANCE {
        let mid = (lo + hi) / 2.0;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    Ok(DistanceReport {
        kolmogorov,
        levy: hi,
        levy_tolerance: LEVY_TOLERANCE,
        jumps: fp.xs.len() + fq.xs.len(),
    })
}
