//! The tiling `T_eps + D_{eps,inf}` of the first family and its
//! quasi-periodicity.
//!
//! `D_{eps,k} = D + A D + ... + A^(k-1) D` consists of the points
//! `(m2 + hat(m1) eps, m1)` where `m1`, `m2` have at most `k` balanced digits
//! and `hat` replaces every balanced digit by its parity bit. The tiling is
//! quasi-periodic iff `eps` is rational.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{rpow, Point2, Rational};
use crate::shift::{build_shift_digits, covering_translates, ShiftParams};

/// Balanced base-`p` digits of an integer, least significant first. Empty
/// for zero; the last digit is never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedDigits {
    pub p: i64,
    pub digits: Vec<i64>,
}

impl BalancedDigits {
    pub fn value(&self) -> i128 {
        self.digits
            .iter()
            .rev()
            .fold(0i128, |acc, &d| acc * self.p as i128 + d as i128)
    }

    /// `sum [d_t odd] p^t`.
    pub fn hat(&self) -> i128 {
        self.digits
            .iter()
            .rev()
            .fold(0i128, |acc, &d| acc * self.p as i128 + (d & 1) as i128)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Splits into the value of the lowest `l` digits and the value of the rest,
    /// `n = low + p^l high`.
    pub fn split(&self, l: usize) -> (BalancedDigits, BalancedDigits) {
        let cut = l.min(self.digits.len());
        let mut low = self.digits[..cut].to_vec();
        while low.last() == Some(&0) {
            low.pop();
        }
        (
            BalancedDigits {
                p: self.p,
                digits: low,
            },
            BalancedDigits {
                p: self.p,
                digits: self.digits[cut..].to_vec(),
            },
        )
    }
}

pub fn balanced_digits(n: i128, p: i64) -> Result<BalancedDigits> {
    if p.abs() < 3 || p % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "balanced digits need odd |p| >= 3, got {p}"
        )));
    }
    let q = p.unsigned_abs() as i128;
    let m = (q - 1) / 2;
    let mut digits = Vec::new();
    let mut n = n;
    while n != 0 {
        let mut r = n.rem_euclid(q);
        if r > m {
            r -= q;
        }
        digits.push(r as i64);
        n = (n - r) / p as i128;
    }
    Ok(BalancedDigits { p, digits })
}

/// Parity lift of `m1`.
pub fn hat(m1: i128, p: i64) -> Result<i128> {
    Ok(balanced_digits(m1, p)?.hat())
}

/// Largest magnitude with at most `k` balanced digits: `(|p|^k - 1) / 2`.
fn radius(p: i64, k: u32) -> Result<i128> {
    (p.unsigned_abs() as i128)
        .checked_pow(k)
        .map(|v| (v - 1) / 2)
        .ok_or(Error::Resource {
            needed: u128::MAX,
            budget: i128::MAX as u128,
        })
}

/// The patch `D_{eps,k}` as an exact point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateSet {
    pub level: u32,
    pub points: BTreeSet<Point2>,
}

impl TranslateSet {
    /// One `"x_num/x_den y_num/y_den"` line per point, in point order.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for q in &self.points {
            out.push_str(&q.x.to_ratio_string());
            out.push(' ');
            out.push_str(&q.y.to_ratio_string());
            out.push('\n');
        }
        out
    }
}

pub const DEFAULT_PATCH_BUDGET: u128 = 1 << 20;

/// Builds `D_{eps,k}` by the recursion `D_{eps,k} = D + A D_{eps,k-1}`.
pub fn dset_k(params: &ShiftParams, k: u32, budget: u128) -> Result<TranslateSet> {
    if k == 0 {
        return Err(Error::Domain("patch level must be at least 1".into()));
    }
    let needed = (params.p().unsigned_abs() as u128)
        .checked_pow(2 * k)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Resource { needed, budget });
    }
    let digits = build_shift_digits(params).digits().to_vec();
    let p = Rational::from(params.p());
    let mut points: BTreeSet<Point2> = digits.iter().cloned().collect();
    for _ in 1..k {
        let prev: Vec<Point2> = points.into_iter().map(|t| t.scale(&p)).collect();
        points = prev
            .par_iter()
            .flat_map_iter(|at| digits.iter().map(move |d| at + d))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
    }
    Ok(TranslateSet { level: k, points })
}

/// Membership in `D_{eps,k}` by the closed form.
pub fn dset_contains(params: &ShiftParams, k: u32, x: &Point2) -> Result<bool> {
    let p = params.p();
    let Some(m1) = x.y.is_integer().then(|| x.y.to_i64()).flatten() else {
        return Ok(false);
    };
    let d1 = balanced_digits(m1 as i128, p)?;
    if d1.len() > k as usize {
        return Ok(false);
    }
    let rest = &x.x - &(params.eps() * &Rational::from(d1.hat() as i64));
    let Some(m2) = rest.is_integer().then(|| rest.to_i64()).flatten() else {
        return Ok(false);
    };
    Ok(balanced_digits(m2 as i128, p)?.len() <= k as usize)
}

/// `A t + D_eps` lies in `D_{eps,k+1}` for a `t` of `D_{eps,k}`.
pub fn self_replication_check(params: &ShiftParams, k: u32, t: &Point2) -> Result<bool> {
    if !dset_contains(params, k, t)? {
        return Err(Error::Domain(format!("{t} is not in the level-{k} patch")));
    }
    let at = t.scale(&Rational::from(params.p()));
    for d in build_shift_digits(params).digits() {
        if !dset_contains(params, k + 1, &(&at + d))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub c: Rational,
    pub k: u32,
    /// Distinct difference vectors `t - t'` of the patch with both
    /// coordinates at most `c` in absolute value.
    pub count: u64,
    /// `(2c+1) b (2c+1)` for `eps = a/b`, with `c` rounded down.
    pub bound: u64,
}

/// Counts the distinct short difference vectors of `D_{eps,k}`. Works on
/// the closed form, so the patch is never materialized: for rows `m1, n1`
/// the x-differences are `delta + (hat(m1) - hat(n1)) eps` over all integer
/// `delta` in `[-2M, 2M]`.
pub fn local_finiteness_census(params: &ShiftParams, c: &Rational, k: u32) -> Result<CensusReport> {
    if c.is_negative() {
        return Err(Error::InvalidParameter(
            "box side must be non-negative".into(),
        ));
    }
    let p = params.p();
    let big_m = radius(p, k)?;
    let eps = params.eps();
    let b: i128 = eps
        .denom()
        .try_into()
        .map_err(|_| Error::Domain("eps denominator too large".into()))?;
    let a: i128 = eps
        .numer()
        .try_into()
        .map_err(|_| Error::Domain("eps numerator too large".into()))?;
    let c_floor: i128 = (&c.floor())
        .try_into()
        .map_err(|_| Error::Domain("box side too large".into()))?;
    // x-differences are multiples of 1/b; |dx| <= c  <=>  |b dx| <= floor(b c)
    let bc: i128 = (&(c * &Rational::from(b as i64)).floor())
        .try_into()
        .expect("fits");
    let hats: Vec<i128> = (-big_m..=big_m).map(|m| hat(m, p)).collect::<Result<_>>()?;
    let rows: Vec<i128> = (-big_m..=big_m).collect();
    let classes: BTreeSet<(i128, i128)> = rows
        .par_iter()
        .map(|&m1| {
            let mut local = BTreeSet::new();
            for n1 in (m1 - c_floor).max(-big_m)..=(m1 + c_floor).min(big_m) {
                let h = hats[(m1 + big_m) as usize] - hats[(n1 + big_m) as usize];
                let ha = h * a;
                // |delta b + h a| <= bc
                let lo = (-bc - ha).div_euclid(b) + i128::from((-bc - ha).rem_euclid(b) != 0);
                let hi = (bc - ha).div_euclid(b);
                for delta in lo.max(-2 * big_m)..=hi.min(2 * big_m) {
                    local.insert((m1 - n1, delta * b + ha));
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        });
    let width = (2 * c_floor + 1) as u64;
    Ok(CensusReport {
        c: c.clone(),
        k,
        count: classes.len() as u64,
        bound: width * b as u64 * width,
    })
}

/// Brute-force census over the materialized patch.
pub fn census_by_enumeration(patch: &TranslateSet, c: &Rational) -> u64 {
    let pts: Vec<&Point2> = patch.points.iter().collect();
    let diffs: BTreeSet<Point2> = pts
        .par_iter()
        .flat_map_iter(|a| {
            pts.iter().filter_map(move |b| {
                let d = *a - *b;
                (d.x.abs() <= *c && d.y.abs() <= *c).then_some(d)
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    diffs.len() as u64
}

/// `eps` as an exact rational, or a float for the irrational demonstration.
#[derive(Clone, Debug, PartialEq)]
pub enum Eps {
    Exact(Rational),
    DemoFloat(f64),
}

/// One pair `(t_k, t_k')` of the non-finiteness argument.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessPair {
    pub k: u32,
    pub t: [f64; 2],
    pub t_prime: [f64; 2],
    pub distance: f64,
    /// `frac(eps p^k)`.
    pub dx: f64,
}

/// For each `k`, rows `m1 = (p^k-1)/2`, `n1 = (p^k+1)/2` and columns chosen
/// so the two points are within `sqrt 2`; their x-difference is
/// `frac(eps p^k)`.
pub fn irrational_witness_pairs(p: i64, m: i64, eps: f64, k_max: u32) -> Vec<WitnessPair> {
    (1..=k_max.min(30))
        .map(|k| {
            let pk = (p as f64).powi(k as i32);
            let m1 = (pk - 1.0) / 2.0;
            let n1 = (pk + 1.0) / 2.0;
            // hat(m1) is 0 or (1-p^k)/(1-p); it shifts both points equally
            let common = if m % 2 == 0 {
                0.0
            } else {
                eps * (1.0 - pk) / (1.0 - p as f64)
            };
            let n2 = 0.0;
            let m2 = (n2 + eps * pk).floor();
            let t = [m2 + common, m1];
            let t_prime = [n2 + eps * pk + common, n1];
            let dx = t_prime[0] - t[0];
            let distance = (dx * dx + (t_prime[1] - t[1]).powi(2)).sqrt();
            WitnessPair {
                k,
                t,
                t_prime,
                distance,
                dx,
            }
        })
        .collect()
}

/// Number of distinct values at resolution `res`.
pub fn distinct_classes(values: impl IntoIterator<Item = f64>, res: f64) -> usize {
    values
        .into_iter()
        .map(|v| (v / res).round() as i64)
        .collect::<BTreeSet<_>>()
        .len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuasiVerdict {
    QuasiPeriodic,
    NotQuasiPeriodic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuasiEvidence {
    Census(CensusReport),
    Witnesses {
        pairs: Vec<WitnessPair>,
        classes: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiReport {
    pub verdict: QuasiVerdict,
    /// False for float input: the verdict is a demonstration only.
    pub certified: bool,
    pub evidence: QuasiEvidence,
}

/// Exact `eps` is rational, hence quasi-periodic; the census is attached as
/// evidence. A float is read as a stand-in for an irrational and the
/// witness pairs are reported; it counts as non-quasi-periodic only if the
/// x-differences are pairwise distinct at `1e-9`.
pub fn is_quasi_periodic(p: i64, eps: &Eps) -> Result<QuasiReport> {
    match eps {
        Eps::Exact(e) => {
            let params = ShiftParams::new(p, e.clone())?;
            let census = local_finiteness_census(&params, &Rational::from(2), 3)?;
            if census.count > census.bound {
                return Err(Error::Inconsistent(format!(
                    "census {} above bound {}",
                    census.count, census.bound
                )));
            }
            Ok(QuasiReport {
                verdict: QuasiVerdict::QuasiPeriodic,
                certified: true,
                evidence: QuasiEvidence::Census(census),
            })
        }
        &Eps::DemoFloat(e) => {
            let params = ShiftParams::new(p, Rational::zero())?;
            let pairs = irrational_witness_pairs(p, params.m(), e, 10);
            let classes = distinct_classes(pairs.iter().map(|w| w.dx), 1e-9);
            let verdict = if classes == pairs.len() {
                QuasiVerdict::NotQuasiPeriodic
            } else {
                QuasiVerdict::QuasiPeriodic
            };
            Ok(QuasiReport {
                verdict,
                certified: false,
                evidence: QuasiEvidence::Witnesses { pairs, classes },
            })
        }
    }
}

/// Constructive local isomorphism: the tile containing `x` is `T + d_x`;
/// dropping the lowest `l` digits of `d_x` gives `d_x'` with
/// `d_x' + D_{eps,l}` inside the ball of radius `3R` about `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIsoWitness {
    pub x: Point2,
    pub level: u32,
    pub d_x: Point2,
    pub d_x_prime: Point2,
    /// Upper bound for `R^2 = diam(A^l T)^2`.
    pub radius_sq: Rational,
}

impl LocalIsoWitness {
    /// Every point of `d_x' + D_{eps,l}` lies within `3R` of `x`.
    pub fn verify(&self, params: &ShiftParams) -> Result<bool> {
        let patch = dset_k(params, self.level, DEFAULT_PATCH_BUDGET)?;
        let limit = &self.radius_sq * &Rational::from(9);
        Ok(patch
            .points
            .iter()
            .all(|d| (&self.d_x_prime + d).dist_sq(&self.x) <= limit))
    }
}

pub fn local_isomorphism_witness(
    params: &ShiftParams,
    level: u32,
    x: &Point2,
    depth_budget: usize,
) -> Result<LocalIsoWitness> {
    if level == 0 {
        return Err(Error::Domain("patch level must be at least 1".into()));
    }
    let p = params.p();
    let eps = params.eps().clone();
    let shear = move |s: &num_bigint::BigInt| {
        let s: i128 = s.try_into().expect("row index fits");
        &eps * &Rational::from(hat(s, p).expect("odd p") as i64)
    };
    let tiles = covering_translates(params, x, depth_budget, &shear).ok_or(Error::Resource {
        needed: depth_budget as u128 + 1,
        budget: depth_budget as u128,
    })?;
    let d_x = tiles
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistent(format!("{x} is not covered")))?;
    let m1: i128 = d_x.y.to_i64().expect("integer row") as i128;
    let m2 = &d_x.x - &(params.eps() * &Rational::from(hat(m1, p)? as i64));
    let m2: i128 = m2
        .to_i64()
        .ok_or_else(|| Error::Inconsistent("translate column is not an integer".into()))?
        as i128;
    let (_, h1) = balanced_digits(m1, p)?.split(level as usize);
    let (_, h2) = balanced_digits(m2, p)?.split(level as usize);
    let scale = rpow(p, level as i32);
    let high = Point2::new(
        Rational::from(h2.value() as i64) + params.eps() * &Rational::from(h1.hat() as i64),
        Rational::from(h1.value() as i64),
    );
    let (bx, by) = build_shift_digits(params).attractor_bounds();
    let radius_sq = (bx.width().pow(2) + by.width().pow(2)) * scale.pow(2);
    Ok(LocalIsoWitness {
        x: x.clone(),
        level,
        d_x,
        d_x_prime: high.scale(&scale),
        radius_sq,
    })
}
