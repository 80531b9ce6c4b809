//! Exact scalars, intervals, points and segments.

mod rational;

pub use rational::{rpow, Rational};

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::error::Error;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "empty interval [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Interval spanning both endpoints in whichever order they come.
    pub fn hull(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// `[center - half, center + half]`; `half` must be non-negative.
    pub fn centered(center: &Rational, half: &Rational) -> Self {
        assert!(!half.is_negative());
        Interval {
            lo: center - half,
            hi: center + half,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strictly inside, endpoints excluded.
    pub fn contains_open(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn translate(&self, by: &Rational) -> Self {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// How two closed intervals meet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Overlap {
    Empty,
    Point(Rational),
    Segment(Interval),
}

/// Exact trichotomy for two closed intervals. Symmetric in its arguments.
pub fn classify_overlap(a: &Interval, b: &Interval) -> Overlap {
    let lo = a.lo.clone().max(b.lo.clone());
    let hi = a.hi.clone().min(b.hi.clone());
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => Overlap::Empty,
        std::cmp::Ordering::Equal => Overlap::Point(lo),
        std::cmp::Ordering::Less => Overlap::Segment(Interval { lo, hi }),
    }
}

/// Exact point of the plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        Point2::default()
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2 {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    /// Reflection across the line `y = x`.
    pub fn transpose(&self) -> Point2 {
        Point2 {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y
    }

    pub fn dist_sq(&self, other: &Point2) -> Rational {
        (self - other).norm_sq()
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Serialized as a two-element array of `"a/b"` strings.
impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.x, &self.y].serialize(s)
    }
}

impl Add<&Point2> for &Point2 {
    type Output = Point2;
    fn add(self, rhs: &Point2) -> Point2 {
        Point2 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        &self + &rhs
    }
}

impl Sub<&Point2> for &Point2 {
    type Output = Point2;
    fn sub(self, rhs: &Point2) -> Point2 {
        Point2 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        &self - &rhs
    }
}

impl Mul<&Rational> for &Point2 {
    type Output = Point2;
    fn mul(self, k: &Rational) -> Point2 {
        self.scale(k)
    }
}

/// Closed straight segment between two points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Exact point-on-segment test: collinear and inside the bounding box.
    pub fn contains(&self, q: &Point2) -> bool {
        let d = &self.b - &self.a;
        let e = q - &self.a;
        let cross = &d.x * &e.y - &d.y * &e.x;
        if !cross.is_zero() {
            return false;
        }
        Interval::hull(self.a.x.clone(), self.b.x.clone()).contains(&q.x)
            && Interval::hull(self.a.y.clone(), self.b.y.clone()).contains(&q.y)
    }

    pub fn map(&self, f: impl Fn(&Point2) -> Point2) -> Segment {
        Segment {
            a: f(&self.a),
            b: f(&self.b),
        }
    }
}

/// A line `y = x + offset`; the diagonal family used by the second family's
/// separation argument.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalLine {
    pub offset: Rational,
}

impl DiagonalLine {
    pub fn contains(&self, q: &Point2) -> bool {
        &q.y - &q.x == self.offset
    }
}

/// `sum_{t = n+2}^{inf} eps / p^t = eps / (p^(n+1) (p - 1))`.
pub fn geo_tail(eps: &Rational, p: i64, n: u32) -> Result<Rational, Error> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!(
            "geo_tail needs p >= 2, got {p}"
        )));
    }
    let denom = rpow(p, n as i32 + 1) * (p - 1);
    Ok(eps / &denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    /// Finite partial sum, the closed form's oracle.
    fn partial_tail(eps: &Rational, p: i64, n: u32, terms: u32) -> Rational {
        (n + 2..n + 2 + terms)
            .map(|t| eps / &rpow(p, t as i32))
            .sum()
    }

    #[test]
    fn geo_tail_matches_partial_sums() {
        for (eps, p, n, want) in [
            (q(2, 1), 3, 0, q(1, 3)),
            (q(0, 1), 3, 5, q(0, 1)),
            (q(9, 1), 3, 1, q(1, 2)),
        ] {
            let closed = geo_tail(&eps, p, n).unwrap();
            assert_eq!(closed, want);
            let partial = partial_tail(&eps, p, n, 40);
            // remainder after 40 terms is exactly closed / p^40
            assert_eq!(&closed - &partial, &closed / &rpow(p, 40));
        }
    }

    #[test]
    fn geo_tail_rejects_small_base() {
        assert!(geo_tail(&q(1, 1), 1, 0).is_err());
        assert!(geo_tail(&q(1, 1), -3, 0).is_err());
    }

    #[test]
    fn overlap_examples() {
        let unit = iv(q(0, 1), q(1, 1));
        assert_eq!(
            classify_overlap(&unit, &iv(q(1, 1), q(2, 1))),
            Overlap::Point(q(1, 1))
        );
        assert_eq!(
            classify_overlap(&unit, &iv(q(1, 2), q(3, 2))),
            Overlap::Segment(iv(q(1, 2), q(1, 1)))
        );
        assert_eq!(
            classify_overlap(&unit, &iv(q(3, 2), q(2, 1))),
            Overlap::Empty
        );
    }

    #[test]
    fn interval_rejects_reversed() {
        assert!(Interval::new(q(1, 1), q(0, 1)).is_err());
    }

    #[test]
    fn segment_contains() {
        let s = Segment::new(Point2::from_ints(0, 0), Point2::from_ints(2, 2));
        assert!(s.contains(&Point2::new(q(1, 3), q(1, 3))));
        assert!(s.contains(&Point2::from_ints(2, 2)));
        assert!(!s.contains(&Point2::from_ints(3, 3)));
        assert!(!s.contains(&Point2::new(q(1, 3), q(1, 2))));
    }

    fn arb_q() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..40).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn geo_tail_inverts(eps in arb_q(), p in 2i64..9, n in 0u32..6) {
            let t = geo_tail(&eps, p, n).unwrap();
            prop_assert_eq!(t * rpow(p, n as i32 + 1) * (p - 1), eps);
        }

        #[test]
        fn overlap_is_symmetric(a in arb_q(), w1 in 0i64..5, b in arb_q(), w2 in 0i64..5) {
            let i1 = iv(a.clone(), &a + w1);
            let i2 = iv(b.clone(), &b + w2);
            prop_assert_eq!(classify_overlap(&i1, &i2), classify_overlap(&i2, &i1));
        }

        #[test]
        fn decimal_strings_round_trip(n in -10_000_000i64..10_000_000, scale in 0u32..6) {
            let den = 10i64.pow(scale);
            let lit = format!("{}{}.{:0width$}", if n < 0 { "-" } else { "" }, n.abs() / den, n.abs() % den, width = scale as usize);
            let parsed: Rational = lit.parse().unwrap();
            prop_assert_eq!(parsed, Rational::frac(n, den));
        }
    }
}
