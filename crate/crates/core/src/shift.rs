//! First family: tiles whose digits on odd rows are shifted horizontally
//! by `eps`.
//!
//! With `|p| = 2m + 1` the digit set is `{(i + b_j, j)}`, `i, j` in
//! `{-m, ..., m}`, and `b_j = eps` for odd `j`, `0` otherwise. Every point of
//! the tile is `(p(i) + b(j), p(j))` for two balanced radix expansions, so the
//! tile is a stack of horizontal strips `G_{j_1...j_n}` that are translates of
//! one another. Everything about its topology reduces to how neighboring
//! strips meet along their shared ordinate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hata::{build_graph, EdgeTag, PieceGraph};
use crate::ifs::DigitSet;
use crate::numeric::{
    classify_overlap, geo_tail, rpow, Interval, Overlap, Point2, Rational, Segment,
};

/// Largest strip graph built when cross-checking a component count.
pub const GRAPH_NODE_BUDGET: usize = 729;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftParams {
    p: i64,
    m: i64,
    eps: Rational,
}

impl ShiftParams {
    pub fn new(p: i64, eps: Rational) -> Result<Self> {
        if p.abs() < 3 || p % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "p must be odd with |p| >= 3, got {p}"
            )));
        }
        Ok(ShiftParams {
            p,
            m: (p.abs() - 1) / 2,
            eps,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// Horizontal shift of row `j`: `eps` when `j` is odd.
    pub fn b(&self, j: i64) -> Rational {
        if j % 2 != 0 {
            self.eps.clone()
        } else {
            Rational::zero()
        }
    }

    pub fn system(&self) -> ShiftSystem {
        ShiftSystem::new(
            self.p,
            self.m,
            (-self.m..=self.m).map(|j| self.b(j)).collect(),
        )
    }
}

/// A planar system `{(i + b_j, j)}` over balanced digits with an arbitrary
/// row shift `b`. The parity shift is one instance; the squared system of a
/// negative base is another.
#[derive(Clone, Debug)]
pub struct ShiftSystem {
    base: i64,
    max_digit: i64,
    shifts: Vec<Rational>,
}

impl ShiftSystem {
    fn new(base: i64, max_digit: i64, shifts: Vec<Rational>) -> Self {
        debug_assert_eq!(shifts.len() as i64, 2 * max_digit + 1);
        debug_assert_eq!(base.abs(), 2 * max_digit + 1);
        ShiftSystem {
            base,
            max_digit,
            shifts,
        }
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn max_digit(&self) -> i64 {
        self.max_digit
    }

    pub fn b(&self, j: i64) -> &Rational {
        &self.shifts[(j + self.max_digit) as usize]
    }

    pub fn digits(&self) -> impl Iterator<Item = i64> {
        -self.max_digit..=self.max_digit
    }

    pub fn digit_set(&self) -> DigitSet {
        let mut v = Vec::with_capacity(self.shifts.len().pow(2));
        for i in self.digits() {
            for j in self.digits() {
                v.push(((i, j), Point2::new(self.b(j) + i, j.into())));
            }
        }
        DigitSet::new(self.base, v).expect("balanced digit set has base^2 digits")
    }

    /// `sum_t b_{c_t} base^-t` for the tail `c` whose radix value is `sign/2`:
    /// all `sign*m` for a positive base, alternating for a negative one.
    fn extreme_tail_shift(&self, sign: i32) -> Rational {
        let top = sign as i64 * self.max_digit;
        if self.base > 0 {
            self.b(top) / (self.base - 1)
        } else {
            let q = -self.base;
            let even = Rational::frac(1, q * q - 1);
            let odd = Rational::frac(q, q * q - 1);
            self.b(top) * &even - self.b(-top) * &odd
        }
    }

    fn radix(&self, address: &[i64]) -> Rational {
        address
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, &j| (acc + j) / self.base)
    }

    fn shift_sum(&self, address: &[i64]) -> Rational {
        address
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, &j| (acc + self.b(j)) / self.base)
    }

    fn cell(&self, address: &[i64]) -> StripCell {
        let n = address.len() as i32;
        let half = rpow(self.base.abs(), -n) / 2;
        StripCell {
            address: address.to_vec(),
            y_range: Interval::centered(&self.radix(address), &half),
            x_offset: self.shift_sum(address),
        }
    }

    /// Horizontal cross-section of `G_address` along its top (`upper`) or
    /// bottom edge.
    fn edge_section(&self, cell: &StripCell, upper: bool) -> (Rational, Interval) {
        let n = cell.address.len() as i32;
        let scale = rpow(self.base, -n);
        let orientation = if scale.is_negative() { -1 } else { 1 };
        let sign = if upper { orientation } else { -orientation };
        let center = &cell.x_offset + &(scale * self.extreme_tail_shift(sign));
        let y = if upper {
            cell.y_range.hi().clone()
        } else {
            cell.y_range.lo().clone()
        };
        (y, Interval::centered(&center, &Rational::frac(1, 2)))
    }
}

/// A horizontal strip `G_{j_1...j_n}` of the tile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripCell {
    pub address: Vec<i64>,
    pub y_range: Interval,
    /// `b(j_1...j_n)`, the strip's horizontal offset against `G_{0...0}`.
    pub x_offset: Rational,
}

/// Cross-sections of `G_{0..00}` and `G_{0..01}` where they meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPair {
    pub i1: Interval,
    pub i2: Interval,
    pub y_meet: Rational,
}

/// Intersection of two neighboring strips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripMeet {
    Empty,
    Point(Point2),
    Segment(Segment),
}

impl StripMeet {
    fn from_overlap(o: Overlap, y: &Rational) -> Self {
        match o {
            Overlap::Empty => StripMeet::Empty,
            Overlap::Point(x) => StripMeet::Point(Point2::new(x, y.clone())),
            Overlap::Segment(iv) => StripMeet::Segment(Segment::new(
                Point2::new(iv.lo().clone(), y.clone()),
                Point2::new(iv.hi().clone(), y.clone()),
            )),
        }
    }

    pub fn tag(&self) -> Option<EdgeTag> {
        match self {
            StripMeet::Empty => None,
            StripMeet::Point(_) => Some(EdgeTag::Point),
            StripMeet::Segment(_) => Some(EdgeTag::Segment),
        }
    }
}

pub fn build_shift_digits(params: &ShiftParams) -> DigitSet {
    params.system().digit_set()
}

/// Rewrites a negative base as the equivalent system with base `p^2` and
/// digit set `D + A D`: rows `j = p k + t` shifted by `b'_j = p b_k + b_t`.
/// A positive base is returned unchanged.
pub fn normalize_negative(params: &ShiftParams) -> ShiftSystem {
    let sys = params.system();
    if params.p > 0 {
        return sys;
    }
    let p = params.p;
    let big_m = 2 * params.m * params.m + 2 * params.m;
    let mut shifts = vec![Rational::zero(); (2 * big_m + 1) as usize];
    for k in sys.digits() {
        for t in sys.digits() {
            let j = p * k + t;
            shifts[(j + big_m) as usize] = sys.b(k) * p + sys.b(t);
        }
    }
    ShiftSystem::new(p * p, big_m, shifts)
}

pub fn strip_cell(params: &ShiftParams, address: &[i64]) -> Result<StripCell> {
    check_address(params, address)?;
    Ok(params.system().cell(address))
}

/// `(b(j0), p(j0))`: `G_{j0} = G_{0...0} + strip_translation(j0)`.
pub fn strip_translation(params: &ShiftParams, j0: &[i64]) -> Result<Point2> {
    check_address(params, j0)?;
    let sys = params.system();
    Ok(Point2::new(sys.shift_sum(j0), sys.radix(j0)))
}

fn check_address(params: &ShiftParams, address: &[i64]) -> Result<()> {
    match address.iter().find(|j| j.abs() > params.m) {
        Some(&j) => Err(Error::Domain(format!(
            "strip letter {j} outside -{0}..={0}",
            params.m
        ))),
        None => Ok(()),
    }
}

/// The x-intervals of `G_{0^n 0}` and `G_{0^n 1}` on the ordinate
/// `1/(2p^(n+1))` where they meet.
pub fn strip_interval_pair(params: &ShiftParams, n: u32) -> IntervalPair {
    let p = params.p;
    let half = Rational::frac(1, 2);
    let y_meet = rpow(p, -(n as i32 + 1)) / 2;
    if p < 0 {
        // no parity shortcut: read the edges off the extreme expansions
        let sys = params.system();
        let mut lower = vec![0; n as usize + 1];
        let mut upper = lower.clone();
        upper[n as usize] = 1;
        let (c0, c1) = (sys.cell(&lower), sys.cell(&upper));
        let one_is_above = c1.y_range.lo() >= c0.y_range.lo();
        if !one_is_above {
            std::mem::swap(&mut lower, &mut upper);
        }
        let (_, i1) = sys.edge_section(&c0, one_is_above);
        let (_, i2) = sys.edge_section(&c1, !one_is_above);
        return IntervalPair { i1, i2, y_meet };
    }
    let step = &params.eps / &rpow(p, n as i32 + 1);
    let alpha = if params.m % 2 == 0 {
        -half.clone()
    } else {
        geo_tail(&params.eps, p, n).expect("p >= 3") - &half
    };
    let beta = if params.m % 2 == 0 {
        &step - &half
    } else {
        &alpha + &step
    };
    IntervalPair {
        i1: Interval::centered(&(&alpha + &half), &half),
        i2: Interval::centered(&(&beta + &half), &half),
        y_meet,
    }
}

/// Segment iff `|eps| < |p|^(n+1)`, point iff equal, empty otherwise.
pub fn classify_strip_intersection(params: &ShiftParams, n: u32) -> StripMeet {
    let pair = strip_interval_pair(params, n);
    StripMeet::from_overlap(classify_overlap(&pair.i1, &pair.i2), &pair.y_meet)
}

/// Intersection of the sibling strips `G_{j0 k}` and `G_{j0 l}`, computed
/// from their edge cross-sections.
pub fn sibling_intersection(params: &ShiftParams, j0: &[i64], k: i64, l: i64) -> Result<StripMeet> {
    let sys = params.system();
    let mut a = j0.to_vec();
    a.push(k);
    let mut b = j0.to_vec();
    b.push(l);
    check_address(params, &a)?;
    check_address(params, &b)?;
    cell_intersection(&sys, &sys.cell(&a), &sys.cell(&b))
}

fn cell_intersection(sys: &ShiftSystem, a: &StripCell, b: &StripCell) -> Result<StripMeet> {
    let (lower, upper) = if a.y_range.lo() <= b.y_range.lo() {
        (a, b)
    } else {
        (b, a)
    };
    if lower.y_range.hi() < upper.y_range.lo() {
        return Ok(StripMeet::Empty);
    }
    if lower.y_range.hi() != upper.y_range.lo() {
        return Err(Error::Inconsistent(format!(
            "strips {:?} and {:?} overlap in height",
            a.address, b.address
        )));
    }
    let (y, top) = sys.edge_section(lower, true);
    let (_, bottom) = sys.edge_section(upper, false);
    Ok(StripMeet::from_overlap(classify_overlap(&top, &bottom), &y))
}

/// True iff the height ranges of `G_{j0 k}` and `G_{j0 l}` are disjoint.
pub fn nonadjacent_strips_disjoint(
    params: &ShiftParams,
    j0: &[i64],
    k: i64,
    l: i64,
) -> Result<bool> {
    let mut a = j0.to_vec();
    a.push(k);
    let mut b = j0.to_vec();
    b.push(l);
    let ca = strip_cell(params, &a)?;
    let cb = strip_cell(params, &b)?;
    Ok(ca.y_range.is_disjoint(&cb.y_range))
}

/// Every address of length `n` over `{-m, ..., m}`, lexicographic.
pub fn addresses(m: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (-m..=m).map(move |j| {
                    let mut w = w.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

/// All level-`n` strips with an edge wherever two of them meet, tagged
/// with the shape of the intersection.
pub fn strip_graph(params: &ShiftParams, n: usize) -> Result<PieceGraph<Vec<i64>>> {
    let count = (params.p.unsigned_abs() as usize)
        .checked_pow(n as u32)
        .unwrap_or(usize::MAX);
    if count > GRAPH_NODE_BUDGET {
        return Err(Error::Resource {
            needed: count as u128,
            budget: GRAPH_NODE_BUDGET as u128,
        });
    }
    let sys = params.system();
    let cells: Vec<StripCell> = addresses(params.m, n).iter().map(|w| sys.cell(w)).collect();
    let g = build_graph((0..cells.len()).collect(), |&a: &usize, &b: &usize| {
        cell_intersection(&sys, &cells[a], &cells[b]).map(|meet| meet.tag())
    })
    .map_err(|e| e.source)?;
    let mut out = PieceGraph::new(cells.into_iter().map(|c| c.address).collect());
    for e in g.edges() {
        out.add_edge(e.a, e.b, e.tag);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub p: i64,
    pub eps: Rational,
    pub is_tile: bool,
    /// Cell level: the `n` with `|p|^n <= |eps| < |p|^(n+1)` (`0` below `|p|`).
    pub n: u32,
    /// Number of components of the interior.
    pub components: BigInt,
    pub cells_disklike: bool,
    pub global_disklike: bool,
    /// Whether the strip-graph cross-check ran (it is skipped above
    /// [`GRAPH_NODE_BUDGET`] strips).
    pub graph_checked: bool,
}

impl Serialize for TopologyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TopologyReport", 6)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("eps", &self.eps)?;
        st.serialize_field("n", &self.n)?;
        match u64::try_from(&self.components) {
            Ok(c) => st.serialize_field("components", &c)?,
            Err(_) => st.serialize_field("components", &self.components.to_string())?,
        }
        st.serialize_field("cells_disklike", &self.cells_disklike)?;
        st.serialize_field("global_disklike", &self.global_disklike)?;
        st.end()
    }
}

/// The unique `n >= 0` with `|eps| < |p|^(n+1)` and (`n = 0` or
/// `|p|^n <= |eps|`).
pub fn cell_level(params: &ShiftParams) -> u32 {
    let abs = params.eps.abs();
    let q = Rational::from(params.p.abs());
    let mut n = 0u32;
    let mut next = q.clone();
    while abs >= next {
        n += 1;
        next = &next * &q;
    }
    n
}

/// Interior component count and disk-likeness. When the level-`n` strip
/// graph is small enough it is built and its segment-connected components
/// must agree with `|p|^n`.
pub fn component_count(params: &ShiftParams) -> Result<TopologyReport> {
    let n = cell_level(params);
    let components = num_traits::pow(BigInt::from(params.p.abs()), n as usize);
    let cells_disklike = params.eps.abs() < rpow(params.p.abs(), n as i32 + 1);
    let mut graph_checked = false;
    match strip_graph(params, n as usize) {
        Ok(g) => {
            // point contacts do not join interiors
            let (found, _) = g.components_where(|e| e.tag == EdgeTag::Segment);
            if BigInt::from(found) != components {
                return Err(Error::Inconsistent(format!(
                    "strip graph has {found} interior components, closed form {components}"
                )));
            }
            graph_checked = true;
        }
        Err(Error::Resource { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(TopologyReport {
        p: params.p,
        eps: params.eps.clone(),
        is_tile: true,
        n,
        global_disklike: components.is_one() && cells_disklike,
        components,
        cells_disklike,
        graph_checked,
    })
}

/// Outcome of locating a point in the tiling `T + {(n + l_s, s)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Covered by exactly this translate.
    Inside(Point2),
    /// Covered by more than one translate.
    Boundary,
    /// The ordinate's expansion did not repeat within the step budget.
    Unresolved,
}

/// Eventually periodic balanced expansion: `pre` then `period` repeated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub pre: Vec<i64>,
    pub period: Vec<i64>,
}

impl Expansion {
    /// Exact `sum_t f(j_t) base^-t` over the infinite digit string.
    fn sum_with(&self, base: i64, f: impl Fn(i64) -> Rational) -> Rational {
        let head = self
            .pre
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, &j| (acc + f(j)) / base);
        let cycle = self
            .period
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, &j| (acc + f(j)) / base);
        let len = self.period.len() as i32;
        let repeat = cycle / (Rational::one() - rpow(base, -len));
        head + repeat * rpow(base, -(self.pre.len() as i32))
    }
}

/// All balanced base-`base` expansions of `r` in `[-1/2, 1/2]` (one, or two
/// when a digit choice ties). `None` if the remainders do not cycle within
/// `budget` steps.
fn balanced_expansions(sys: &ShiftSystem, r: &Rational, budget: usize) -> Option<Vec<Expansion>> {
    debug_assert!(sys.base > 0);
    let mut out = Vec::new();
    let mut stack = vec![(
        r.clone(),
        Vec::<i64>::new(),
        HashMap::<Rational, usize>::new(),
    )];
    while let Some((mut rem, mut digits, mut seen)) = stack.pop() {
        loop {
            if let Some(&start) = seen.get(&rem) {
                out.push(Expansion {
                    pre: digits[..start].to_vec(),
                    period: digits[start..].to_vec(),
                });
                break;
            }
            if digits.len() >= budget {
                return None;
            }
            seen.insert(rem.clone(), digits.len());
            let v = &rem * sys.base;
            let choices = digit_choices(sys, &v);
            let j = choices[0];
            if let Some(&alt) = choices.get(1) {
                let mut d = digits.clone();
                d.push(alt);
                stack.push((&v - alt, d, seen.clone()));
            }
            digits.push(j);
            rem = &v - j;
        }
    }
    Some(out)
}

/// Nearest admissible digits to `v`; two on a tie.
fn digit_choices(sys: &ShiftSystem, v: &Rational) -> Vec<i64> {
    let lo = v.floor();
    let frac = v - &Rational::from_big(lo.clone());
    let lo: i64 = (&lo).try_into().expect("digit fits i64");
    let half = Rational::frac(1, 2);
    let mut choices: Vec<i64> = match frac.cmp(&half) {
        std::cmp::Ordering::Equal => vec![lo, lo + 1],
        std::cmp::Ordering::Less => vec![lo],
        std::cmp::Ordering::Greater => vec![lo + 1],
    };
    choices.retain(|j| j.abs() <= sys.max_digit);
    choices
}

/// Horizontal sections of the level-`depth` approximation of `T` at height
/// `y`: `[b - 1/2, b + 1/2]` for each expansion of `y` cut after `depth`
/// digits (of the squared system when `p < 0`). Exact for heights with at
/// most `depth` digits.
pub fn row_sections(params: &ShiftParams, y: &Rational, depth: usize) -> Vec<Interval> {
    let sys = normalize_negative(params);
    let half = Rational::frac(1, 2);
    if y.abs() > half {
        return Vec::new();
    }
    let mut out: Vec<Interval> = Vec::new();
    let mut stack = vec![(y.clone(), Rational::zero(), Rational::one(), 0usize)];
    while let Some((mut rem, mut b, mut scale, mut step)) = stack.pop() {
        while step < depth && !rem.is_zero() {
            let v = &rem * sys.base;
            scale = scale / sys.base;
            let choices = digit_choices(&sys, &v);
            if let Some(&alt) = choices.get(1) {
                stack.push((
                    &v - alt,
                    &b + &(sys.b(alt) * &scale),
                    scale.clone(),
                    step + 1,
                ));
            }
            let j = choices[0];
            b += &(sys.b(j) * &scale);
            rem = &v - j;
            step += 1;
        }
        let iv = Interval::centered(&b, &half);
        if !out.contains(&iv) {
            out.push(iv);
        }
    }
    out
}

/// Every translate `(n + shear(s), s)` whose tile contains `x`, following
/// the constructive covering argument: pick `s` with `y - s` in
/// `[-1/2, 1/2]`, expand it, and read off `n` from the horizontal residual.
pub fn covering_translates(
    params: &ShiftParams,
    x: &Point2,
    depth_budget: usize,
    shear: &dyn Fn(&BigInt) -> Rational,
) -> Option<Vec<Point2>> {
    let sys = normalize_negative(params);
    let half = Rational::frac(1, 2);
    let mut out: Vec<Point2> = Vec::new();
    let s_lo = (&x.y - &half).ceil();
    let s_hi = (&x.y + &half).floor();
    let mut s = s_lo;
    while s <= s_hi {
        let r = &x.y - &Rational::from_big(s.clone());
        let shift = shear(&s);
        for e in balanced_expansions(&sys, &r, depth_budget)? {
            let b = e.sum_with(sys.base, |j| sys.b(j).clone());
            let u = &x.x - &b - &shift;
            let n_lo = (&u - &half).ceil();
            let n_hi = (&u + &half).floor();
            let mut n = n_lo;
            while n <= n_hi {
                let t = Point2::new(
                    Rational::from_big(n.clone()) + &shift,
                    Rational::from_big(s.clone()),
                );
                if !out.contains(&t) {
                    out.push(t);
                }
                n += 1;
            }
        }
        s += 1;
    }
    Some(out)
}

/// Locates `x` in the tiling with `l_s = 0`.
pub fn tiling_membership(params: &ShiftParams, x: &Point2, depth_budget: usize) -> Membership {
    tiling_membership_with(params, x, depth_budget, &|_| Rational::zero())
}

pub fn tiling_membership_with(
    params: &ShiftParams,
    x: &Point2,
    depth_budget: usize,
    shear: &dyn Fn(&BigInt) -> Rational,
) -> Membership {
    match covering_translates(params, x, depth_budget, shear) {
        None => Membership::Unresolved,
        Some(ts) if ts.len() == 1 => Membership::Inside(ts.into_iter().next().unwrap()),
        Some(ts) => {
            debug_assert!(!ts.is_empty(), "translates must cover the plane");
            Membership::Boundary
        }
    }
}

/// Exact test `x ∈ T`.
pub fn tile_contains(params: &ShiftParams, x: &Point2, depth_budget: usize) -> Option<bool> {
    let ts = covering_translates(params, x, depth_budget, &|_| Rational::zero())?;
    Some(ts.contains(&Point2::origin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn params(p: i64, eps: Rational) -> ShiftParams {
        ShiftParams::new(p, eps).unwrap()
    }

    #[test]
    fn rejects_even_or_small_p() {
        for p in [2, 4, -6, 1, -1, 0] {
            assert!(ShiftParams::new(p, q(1, 1)).is_err(), "{p}");
        }
    }

    #[test]
    fn digits_follow_parity() {
        let ds = build_shift_digits(&params(3, q(2, 1)));
        assert_eq!(ds.len(), 9);
        assert_eq!(
            ds.digit(ds.index_of((1, 1)).unwrap()).unwrap(),
            &Point2::from_ints(3, 1)
        );
        let plain = build_shift_digits(&params(3, q(0, 1)));
        assert!(plain
            .labels()
            .iter()
            .zip(plain.digits())
            .all(|(&(i, j), d)| *d == Point2::from_ints(i, j)));
        let ds5 = build_shift_digits(&params(5, q(1, 1)));
        assert_eq!(
            ds5.digit(ds5.index_of((0, -1)).unwrap()).unwrap(),
            &Point2::from_ints(1, -1)
        );
        // lexicographic label order
        assert_eq!(ds.labels()[0], (-1, -1));
        assert_eq!(ds.labels()[1], (-1, 0));
        assert_eq!(ds.labels()[8], (1, 1));
    }

    #[test]
    fn interval_pair_examples() {
        let pair = strip_interval_pair(&params(3, q(9, 1)), 1);
        assert_eq!(pair.i1, Interval::new(q(0, 1), q(1, 1)).unwrap());
        assert_eq!(pair.i2, Interval::new(q(1, 1), q(2, 1)).unwrap());
        assert_eq!(pair.y_meet, q(1, 18));

        for n in 0..4 {
            let pair = strip_interval_pair(&params(3, q(0, 1)), n);
            assert_eq!(pair.i1, Interval::new(q(-1, 2), q(1, 2)).unwrap());
            assert_eq!(pair.i2, pair.i1);
        }

        let pair = strip_interval_pair(&params(5, q(2, 1)), 0);
        assert_eq!(pair.i1, Interval::new(q(-1, 2), q(1, 2)).unwrap());
        assert_eq!(pair.i2, Interval::new(q(-1, 10), q(9, 10)).unwrap());
    }

    #[test]
    fn trichotomy_examples() {
        assert!(matches!(
            classify_strip_intersection(&params(3, q(8, 1)), 1),
            StripMeet::Segment(_)
        ));
        assert_eq!(
            classify_strip_intersection(&params(3, q(9, 1)), 1),
            StripMeet::Point(Point2::new(q(1, 1), q(1, 18)))
        );
        assert_eq!(
            classify_strip_intersection(&params(3, q(10, 1)), 1),
            StripMeet::Empty
        );
    }

    #[test]
    fn closed_form_matches_edge_sections() {
        for p in [3i64, 5, 7, -3, -5] {
            for eps in [q(0, 1), q(2, 1), q(-7, 3), q(26, 1), q(125, 2)] {
                let pr = params(p, eps.clone());
                for n in 0..4u32 {
                    let zeros = vec![0; n as usize];
                    let meet = sibling_intersection(&pr, &zeros, 0, 1).unwrap();
                    assert_eq!(
                        meet,
                        classify_strip_intersection(&pr, n),
                        "p={p} eps={eps:?} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn negative_base_thresholds_use_abs_p() {
        let pr = params(-3, q(9, 1));
        assert!(matches!(
            classify_strip_intersection(&pr, 1),
            StripMeet::Point(_)
        ));
        assert!(matches!(
            classify_strip_intersection(&params(-3, q(8, 1)), 1),
            StripMeet::Segment(_)
        ));
        assert_eq!(
            classify_strip_intersection(&params(-3, q(10, 1)), 1),
            StripMeet::Empty
        );
    }

    #[test]
    fn mirror_pair_matches() {
        for eps in [q(2, 1), q(3, 1), q(9, 1), q(11, 2)] {
            let pr = params(3, eps);
            for n in 0..3usize {
                let zeros = vec![0; n];
                let up = sibling_intersection(&pr, &zeros, 0, 1).unwrap();
                let down = sibling_intersection(&pr, &zeros, 0, -1).unwrap();
                assert_eq!(up.tag(), down.tag());
            }
        }
    }

    #[test]
    fn nonadjacent_examples() {
        for eps in [q(0, 1), q(2, 1), q(50, 1)] {
            assert!(nonadjacent_strips_disjoint(&params(3, eps.clone()), &[], -1, 1).unwrap());
            assert!(!nonadjacent_strips_disjoint(&params(3, eps), &[], 0, 1).unwrap());
        }
        assert!(nonadjacent_strips_disjoint(&params(3, q(2, 1)), &[0], -1, 1).unwrap());
        for k in -2..=2 {
            for l in -2..=2 {
                if (k - l).abs() >= 2 {
                    assert!(
                        nonadjacent_strips_disjoint(&params(5, q(3, 1)), &[1, -2], k, l).unwrap()
                    );
                }
            }
        }
        assert!(nonadjacent_strips_disjoint(&params(3, q(1, 1)), &[], 0, 2).is_err());
    }

    #[test]
    fn translation_examples() {
        let pr = params(3, q(2, 1));
        assert_eq!(
            strip_translation(&pr, &[1]).unwrap(),
            Point2::new(q(2, 3), q(1, 3))
        );
        assert_eq!(strip_translation(&pr, &[0, 0]).unwrap(), Point2::origin());
        assert_eq!(
            strip_translation(&pr, &[1, -1]).unwrap(),
            Point2::new(q(8, 9), q(2, 9))
        );
    }

    #[test]
    fn strip_cells_have_exact_height() {
        let pr = params(5, q(7, 2));
        for w in addresses(2, 2) {
            let c = strip_cell(&pr, &w).unwrap();
            assert_eq!(c.y_range.width(), q(1, 25));
        }
    }

    #[test]
    fn component_examples() {
        let r = component_count(&params(3, q(2, 1))).unwrap();
        assert_eq!((r.n, r.components.clone()), (0, BigInt::from(1)));
        assert!(r.global_disklike && r.cells_disklike && r.graph_checked);
        let r = component_count(&params(3, q(9, 1))).unwrap();
        assert_eq!(r.components, BigInt::from(9));
        assert!(!r.global_disklike);
        let r = component_count(&params(3, q(0, 1))).unwrap();
        assert_eq!(r.components, BigInt::from(1));
        let r = component_count(&params(-3, q(-10, 1))).unwrap();
        assert_eq!((r.n, r.components), (2, BigInt::from(9)));
    }

    #[test]
    fn huge_eps_skips_graph() {
        let r = component_count(&params(3, q(1_000_000_000, 1))).unwrap();
        assert_eq!(r.n, 18);
        assert_eq!(r.components, BigInt::from(3i64.pow(18)));
        assert!(!r.graph_checked);
    }

    #[test]
    fn report_json_keys() {
        let r = component_count(&params(3, q(9, 1))).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "p": 3, "eps": "9/1", "n": 2, "components": 9,
                "cells_disklike": true, "global_disklike": false
            })
        );
    }

    #[test]
    fn strip_graph_shapes() {
        let g = strip_graph(&params(3, q(2, 1)), 1).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert!(g.edges().iter().all(|e| e.tag == EdgeTag::Segment));
        assert!(g.is_connected_hata());
        let g = strip_graph(&params(3, q(4, 1)), 1).unwrap();
        assert_eq!(g.component_count(), 3);
        // point contacts are edges of the set graph but not of the interior
        let g = strip_graph(&params(3, q(3, 1)), 1).unwrap();
        assert!(g.edges().iter().all(|e| e.tag == EdgeTag::Point));
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn membership_examples() {
        let pr = params(3, q(2, 1));
        assert_eq!(
            tiling_membership(&pr, &Point2::origin(), 64),
            Membership::Inside(Point2::origin())
        );
        assert_eq!(
            tiling_membership(&pr, &Point2::new(q(0, 1), q(1, 2)), 64),
            Membership::Boundary
        );
        assert_eq!(
            tiling_membership(&pr, &Point2::new(q(1, 2), q(1, 3)), 64),
            Membership::Inside(Point2::origin())
        );
    }

    #[test]
    fn membership_budget() {
        let pr = params(3, q(2, 1));
        // 1/7 has period 6 in base 3
        let x = Point2::new(q(0, 1), q(1, 7));
        assert_eq!(tiling_membership(&pr, &x, 3), Membership::Unresolved);
        assert!(matches!(
            tiling_membership(&pr, &x, 20),
            Membership::Inside(_)
        ));
    }

    #[test]
    fn expansion_sums_are_exact() {
        let sys = params(3, q(1, 1)).system();
        for (num, den) in [(1, 7), (-3, 10), (5, 13), (1, 4), (0, 1)] {
            let r = q(num, den);
            let es = balanced_expansions(&sys, &r, 100).unwrap();
            for e in es {
                assert_eq!(e.sum_with(3, Rational::from), r);
            }
        }
        // 1/6 = 0.0111.. = 0.1(-1)(-1)..: two expansions
        assert_eq!(balanced_expansions(&sys, &q(1, 6), 100).unwrap().len(), 2);
    }

    #[test]
    fn row_sections_match_membership() {
        let pr = params(3, q(3, 1));
        // 40/243 = 0.01111 in base 3
        let secs = row_sections(&pr, &q(40, 243), 7);
        assert_eq!(secs, vec![Interval::centered(&q(120, 243), &q(1, 2))]);
        assert_eq!(row_sections(&pr, &q(1, 2), 7).len(), 1);
        assert!(row_sections(&pr, &q(3, 5), 7).is_empty());
        // two expansions of 1/6 give the two strips meeting there
        assert_eq!(row_sections(&pr, &q(1, 6), 30).len(), 2);
        for (yn, yd) in [(1, 9), (-2, 27), (13, 81)] {
            let y = q(yn, yd);
            for s in row_sections(&pr, &y, 10) {
                let mid = Point2::new(s.lo() + &q(1, 2), y.clone());
                assert_eq!(tile_contains(&pr, &mid, 64), Some(true));
            }
        }
    }

    #[test]
    fn negative_base_normalization() {
        let pr = params(-3, q(2, 1));
        let sys = normalize_negative(&pr);
        assert_eq!((sys.base(), sys.max_digit()), (9, 4));
        // same digit set as D + A D
        let mut a: Vec<Point2> = sys.digit_set().digits().to_vec();
        let mut b: Vec<Point2> = build_shift_digits(&pr).squared().unwrap().digits().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
