//! Digit sets, the contractions `x -> (x + d) / p`, addresses and radix
//! evaluation.
//!
//! Every system here has matrix `A = pI`, so a map is determined by its base,
//! its level (how many contractions were composed) and an exact offset.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{rpow, Interval, Point2, Rational};

/// `x -> x / base^level + offset`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    base: i64,
    level: u32,
    offset: Point2,
}

impl AffineMap {
    pub fn new(base: i64, level: u32, offset: Point2) -> Result<Self> {
        if base.abs() < 2 {
            return Err(Error::InvalidParameter(format!(
                "|p| must be at least 2, got {base}"
            )));
        }
        Ok(AffineMap {
            base,
            level,
            offset,
        })
    }

    /// The first-level contraction for digit `d`: `x -> (x + d) / p`.
    pub fn for_digit(p: i64, d: &Point2) -> Result<Self> {
        AffineMap::new(p, 1, d.scale(&Rational::frac(1, p)))
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn offset(&self) -> &Point2 {
        &self.offset
    }

    pub fn scale_inv(&self) -> Rational {
        rpow(self.base, -(self.level as i32))
    }

    pub fn apply(&self, x: &Point2) -> Point2 {
        &x.scale(&self.scale_inv()) + &self.offset
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if self.base != inner.base {
            return Err(Error::InvalidParameter(format!(
                "cannot compose maps with bases {} and {}",
                self.base, inner.base
            )));
        }
        Ok(AffineMap {
            base: self.base,
            level: self.level + inner.level,
            offset: self.apply(&inner.offset),
        })
    }

    /// The unique fixed point `offset / (1 - p^-level)`.
    pub fn fixed_point(&self) -> Point2 {
        let denom = Rational::one() - self.scale_inv();
        self.offset.scale(&denom.recip())
    }
}

/// Exact structural equality of two maps.
pub fn map_equal(a: &AffineMap, b: &AffineMap) -> bool {
    a == b
}

/// A finite address: a sequence of digit indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

/// The `p^2` translation vectors of a planar system with `A = pI`.
///
/// Digits are kept together with the `(i, j)` labels the two families use
/// to name them, in lexicographic label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSet {
    p: i64,
    digits: Vec<Point2>,
    labels: Vec<(i64, i64)>,
}

impl DigitSet {
    pub fn new(p: i64, labelled: Vec<((i64, i64), Point2)>) -> Result<Self> {
        if p.abs() < 2 {
            return Err(Error::InvalidParameter(format!(
                "|p| must be at least 2, got {p}"
            )));
        }
        let expected = (p * p) as usize;
        if labelled.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "digit set needs {expected} digits, got {}",
                labelled.len()
            )));
        }
        let (labels, digits) = labelled.into_iter().unzip();
        Ok(DigitSet { p, digits, labels })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[Point2] {
        &self.digits
    }

    pub fn labels(&self) -> &[(i64, i64)] {
        &self.labels
    }

    pub fn digit(&self, index: usize) -> Result<&Point2> {
        self.digits.get(index).ok_or(Error::Address {
            index,
            size: self.len(),
        })
    }

    pub fn index_of(&self, label: (i64, i64)) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn map(&self, index: usize) -> Result<AffineMap> {
        AffineMap::for_digit(self.p, self.digit(index)?)
    }

    pub fn map_for(&self, label: (i64, i64)) -> Result<AffineMap> {
        let index = self
            .index_of(label)
            .ok_or_else(|| Error::Domain(format!("no digit labelled {label:?}")))?;
        self.map(index)
    }

    /// `sum_k p^-k d_{w_k}`, the radix value of a finite address.
    pub fn eval_word(&self, w: &Word) -> Result<Point2> {
        let p_inv = Rational::frac(1, self.p);
        let mut v = Point2::origin();
        for &letter in w.letters.iter().rev() {
            v = (&v + self.digit(letter)?).scale(&p_inv);
        }
        Ok(v)
    }

    /// Composition `f_{w_1} ∘ ... ∘ f_{w_n}`; `None` for the empty word.
    pub fn word_map(&self, w: &Word) -> Result<Option<AffineMap>> {
        let mut acc: Option<AffineMap> = None;
        for &letter in &w.letters {
            let m = self.map(letter)?;
            acc = Some(match acc {
                None => m,
                Some(a) => a.compose(&m)?,
            });
        }
        Ok(acc)
    }

    /// The digit set `D + A D` of the squared system, which has the same
    /// attractor with base `p^2`. Labels are `(outer index, inner index)`.
    pub fn squared(&self) -> Result<DigitSet> {
        let mut out = Vec::with_capacity(self.len() * self.len());
        let p = Rational::from(self.p);
        for (a, da) in self.digits.iter().enumerate() {
            for (b, db) in self.digits.iter().enumerate() {
                out.push(((a as i64, b as i64), db + &da.scale(&p)));
            }
        }
        DigitSet::new(self.p * self.p, out)
    }

    /// Exact axis-aligned bounds of the attractor.
    pub fn attractor_bounds(&self) -> (Interval, Interval) {
        let axis = |coord: fn(&Point2) -> &Rational| {
            let lo = self.digits.iter().map(coord).min().unwrap().clone();
            let hi = self.digits.iter().map(coord).max().unwrap().clone();
            if self.p > 0 {
                let k = Rational::frac(1, self.p - 1);
                Interval::hull(&lo * &k, &hi * &k)
            } else {
                let q = -self.p;
                let even = Rational::frac(1, q * q - 1);
                let odd = Rational::frac(q, q * q - 1);
                Interval::hull(&lo * &even - &hi * &odd, &hi * &even - &lo * &odd)
            }
        };
        (axis(|d| &d.x), axis(|d| &d.y))
    }

    /// Integer form of the digits over a common denominator, for fast exact
    /// enumeration of deep sample sets.
    pub fn lattice(&self) -> Result<LatticeDigits> {
        let denom = Rational::lcm_denom(self.digits.iter().flat_map(|d| [&d.x, &d.y]));
        let to_i64 = |r: &Rational| -> Result<i64> {
            let scaled = r * &Rational::from_big(denom.clone());
            scaled
                .numer()
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter("digit numerators overflow i64".into()))
        };
        let digits = self
            .digits
            .iter()
            .map(|d| Ok((to_i64(&d.x)?, to_i64(&d.y)?)))
            .collect::<Result<Vec<_>>>()?;
        let denom = denom
            .to_i64()
            .ok_or_else(|| Error::InvalidParameter("digit denominator overflows i64".into()))?;
        Ok(LatticeDigits {
            p: self.p,
            denom,
            digits,
        })
    }
}

/// Digits `(x, y) / denom` with integer numerators.
#[derive(Clone, Debug)]
pub struct LatticeDigits {
    pub p: i64,
    pub denom: i64,
    pub digits: Vec<(i64, i64)>,
}

impl LatticeDigits {
    /// Common denominator of every sample at `depth`: `denom * p^depth`
    /// (sign included, so numerators are Horner sums).
    pub fn sample_denom(&self, depth: u32) -> i128 {
        self.denom as i128 * (self.p as i128).pow(depth)
    }

    /// Folds over the numerators `sum_k d_{w_k} p^(depth-k)` of all words
    /// of length `depth`. Work is split over the leading two letters and
    /// merged in word order, so the result is deterministic.
    pub fn fold_samples<A, I, V, M>(&self, depth: u32, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, i64, i64) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let n = self.digits.len();
        let split = depth.min(2);
        let prefixes: Vec<(i64, i64)> = (0..n.pow(split))
            .map(|mut code| {
                let mut letters = Vec::with_capacity(split as usize);
                for _ in 0..split {
                    letters.push(code % n);
                    code /= n;
                }
                letters.reverse();
                letters.iter().fold((0i64, 0i64), |(x, y), &l| {
                    (x * self.p + self.digits[l].0, y * self.p + self.digits[l].1)
                })
            })
            .collect();
        let rest = depth - split;
        prefixes
            .par_iter()
            .map(|&(x, y)| {
                let mut acc = init();
                self.walk(x, y, rest, &mut acc, &visit);
                acc
            })
            .collect::<Vec<_>>()
            .into_iter()
            .reduce(&merge)
            .unwrap_or_else(init)
    }

    fn walk<A, V: Fn(&mut A, i64, i64)>(&self, x: i64, y: i64, left: u32, acc: &mut A, visit: &V) {
        if left == 0 {
            visit(acc, x, y);
            return;
        }
        for &(dx, dy) in &self.digits {
            self.walk(x * self.p + dx, y * self.p + dy, left - 1, acc, visit);
        }
    }
}

/// Default cap on the number of exact sample points.
pub const DEFAULT_SAMPLE_BUDGET: u128 = 1 << 22;

/// `{eval_word(w) : |w| = depth}`, the level-`depth` approximation net of the
/// attractor.
pub fn sample_attractor(ds: &DigitSet, depth: u32, budget: u128) -> Result<BTreeSet<Point2>> {
    if depth == 0 {
        return Err(Error::InvalidParameter(
            "sampling depth must be at least 1".into(),
        ));
    }
    let needed = (ds.len() as u128).checked_pow(depth).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Resource { needed, budget });
    }
    let lattice = ds.lattice()?;
    let denom = Rational::from_big(BigInt::from(lattice.sample_denom(depth)));
    let numerators = lattice.fold_samples(
        depth,
        Vec::new,
        |acc: &mut Vec<(i64, i64)>, x, y| acc.push((x, y)),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(numerators
        .into_iter()
        .map(|(x, y)| Point2::new(Rational::from(x) / &denom, Rational::from(y) / &denom))
        .collect())
}
