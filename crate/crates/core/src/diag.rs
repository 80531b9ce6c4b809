//! Second family: the product digit set `{0..p-1}^2` with the diagonal
//! digits pushed along `y = x` by `eps`.
//!
//! `T_eps` is connected iff `|eps| <= (|p|-1)^2 / (|p|-2)`. For `p > 0` the
//! decision comes with a certificate: a contact point between the diagonal
//! pieces `V2` and the upper pieces `V1`, or a strict separation of the two
//! along the line `y = x + 1/p`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hata::{EdgeTag, PieceGraph};
use crate::ifs::{map_equal, AffineMap, DigitSet};
use crate::numeric::{DiagonalLine, Point2, Rational, Segment};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagParams {
    p: i64,
    eps: Rational,
}

impl DiagParams {
    pub fn new(p: i64, eps: Rational) -> Result<Self> {
        if p.abs() < 3 {
            return Err(Error::InvalidParameter(format!(
                "|p| must be at least 3, got {p}"
            )));
        }
        Ok(DiagParams { p, eps })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// Number of digit values per axis.
    pub fn q(&self) -> i64 {
        self.p.abs()
    }

    pub fn digit(&self, i: i64, j: i64) -> Point2 {
        let a = if i == j {
            self.eps.clone()
        } else {
            Rational::zero()
        };
        Point2::new(&a + i, &a + j)
    }

    pub fn map(&self, i: i64, j: i64) -> AffineMap {
        AffineMap::for_digit(self.p, &self.digit(i, j)).expect("|p| >= 3")
    }

    /// Fixed point `t_{i,j} = d_{i,j} / (p - 1)`.
    pub fn fixed_point(&self, i: i64, j: i64) -> Point2 {
        self.digit(i, j).scale(&Rational::frac(1, self.p - 1))
    }

    fn with_eps(&self, eps: Rational) -> DiagParams {
        DiagParams { p: self.p, eps }
    }

    fn valid(&self, (i, j): (i64, i64)) -> bool {
        (0..self.q()).contains(&i) && (0..self.q()).contains(&j)
    }
}

/// Digits `(i + a_ij, j + a_ij)`, labels in `i`-major order.
pub fn build_diag_digits(params: &DiagParams) -> DigitSet {
    let q = params.q();
    let mut v = Vec::with_capacity((q * q) as usize);
    for i in 0..q {
        for j in 0..q {
            v.push(((i, j), params.digit(i, j)));
        }
    }
    DigitSet::new(params.p, v).expect("q^2 digits")
}

/// The fixed points the adjacency and connectivity arguments are built on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointTable {
    pub t00: Point2,
    pub t10: Point2,
    pub t01: Point2,
    pub t1_last: Point2,
    pub t0_last: Point2,
    pub t_last0: Point2,
    pub t_last1: Point2,
    pub t_last_last: Point2,
}

impl FixedPointTable {
    pub fn new(params: &DiagParams) -> Self {
        let l = params.q() - 1;
        let t = |i, j| params.fixed_point(i, j);
        FixedPointTable {
            t00: t(0, 0),
            t10: t(1, 0),
            t01: t(0, 1),
            t1_last: t(1, l),
            t0_last: t(0, l),
            t_last0: t(l, 0),
            t_last1: t(l, 1),
            t_last_last: t(l, l),
        }
    }
}

/// A common point of the pieces `(i,j)` and `(i',j')` for the four
/// neighbor patterns that always touch: horizontal and vertical neighbors
/// off the diagonal, anti-diagonal swaps, and consecutive diagonal pieces.
/// The point is recomputed under the second map and returned only if both
/// agree exactly.
pub fn adjacency_witness(params: &DiagParams, a: (i64, i64), b: (i64, i64)) -> Option<Point2> {
    if !params.valid(a) || !params.valid(b) {
        return None;
    }
    let l = params.q() - 1;
    let t = |i, j| params.fixed_point(i, j);
    let f = |(i, j): (i64, i64), x: &Point2| params.map(i, j).apply(x);
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let ((i, j), (i2, j2)) = (a, b);
    let (first, second) = if i2 == i + 1 && j2 == j && i != j && i + 1 != j {
        (f(a, &t(l, 1)), f(b, &t(0, 1)))
    } else if i2 == i && j2 == j + 1 && j != i && j + 1 != i {
        (f(a, &t(1, l)), f(b, &t(1, 0)))
    } else if j == i + 1 && i2 == i + 1 && j2 == i {
        // a = (i, i+1), b = (i+1, i)
        (f(b, &t(0, l)), f(a, &t(l, 0)))
    } else if i == j && i2 == i + 1 && j2 == i + 1 {
        (f(a, &t(l, l)), f(b, &t(0, 0)))
    } else {
        return None;
    };
    (first == second).then_some(first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Connected,
    Disconnected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    I,
    II,
    III,
    IV,
}

/// Lines of slope one used by the argument: `y = x` (L5), `y = x + 1/p`
/// (L3), `y = x + 1/p - 1/p^2` (L6), and their images under the point
/// reflection used for negative `eps` (L4 is the image of L3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLine {
    pub name: &'static str,
    pub line: DiagonalLine,
}

impl Serialize for NamedLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name)
    }
}

#[derive(Clone, Debug)]
pub struct ConnectivityCertificate {
    pub p: i64,
    pub eps: Rational,
    pub verdict: Verdict,
    pub case: Case,
    /// Contact point of the diagonal pieces with an upper piece.
    pub witness: Option<Point2>,
    /// The segment of `V1` carrying the witness.
    pub segment: Option<Segment>,
    pub line: NamedLine,
    /// `(max x of V1 on the line, min x of V2 on the line)`, strictly ordered.
    pub separation: Option<(Rational, Rational)>,
    /// Piece graph with an edge for every adjacency witness and for the
    /// contact point; connected iff the verdict is.
    pub chain: PieceGraph<(i64, i64)>,
    /// Produced from the certificate for `-eps` by the point reflection
    /// `x -> (1,1) - x`.
    pub mirrored: bool,
}

impl Serialize for ConnectivityCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("verdict", &self.verdict)?;
        m.serialize_entry("case", &self.case)?;
        m.serialize_entry("witness", &self.witness)?;
        m.serialize_entry("line", &self.line)?;
        m.serialize_entry("chain_length", &self.chain.edges().len())?;
        if let Some((lo, hi)) = &self.separation {
            m.serialize_entry("separation", &[lo, hi])?;
        }
        m.serialize_entry("mirrored", &self.mirrored)?;
        m.end()
    }
}

impl ConnectivityCertificate {
    /// Re-checks every claim exactly.
    pub fn verify(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::Inconsistent(format!(
                "{msg} (p={}, eps={})",
                self.p, self.eps
            )))
        };
        let on = |x: &Point2| self.line.line.contains(x);
        match self.verdict {
            Verdict::Connected => {
                let (Some(w), Some(seg)) = (&self.witness, &self.segment) else {
                    return bad("connected certificate without witness");
                };
                if !seg.contains(w) {
                    return bad("witness not on segment");
                }
                if !(on(w) && on(&seg.a) && on(&seg.b)) {
                    return bad("witness or segment off the stated line");
                }
                if !self.chain.is_connected_hata() {
                    return bad("piece chain is not connected");
                }
            }
            Verdict::Disconnected => {
                match &self.separation {
                    Some((lo, hi)) if lo < hi => {}
                    _ => return bad("separation is not strict"),
                }
                if self.chain.is_connected_hata() {
                    return bad("disconnected verdict with a connected chain");
                }
            }
        }
        Ok(())
    }
}

fn threshold(q: i64) -> Rational {
    Rational::frac((q - 1) * (q - 1), q - 2)
}

/// Closed form: `|eps| <= (|p|-1)^2 / (|p|-2)`.
pub fn connected_closed_form(params: &DiagParams) -> bool {
    params.eps.abs() <= threshold(params.q())
}

/// Graph whose edges are the adjacency witnesses among all `p^2` pieces.
fn adjacency_graph(params: &DiagParams) -> PieceGraph<(i64, i64)> {
    let q = params.q();
    let labels: Vec<(i64, i64)> = (0..q).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
    let mut g = PieceGraph::new(labels.clone());
    for (a, &la) in labels.iter().enumerate() {
        for (b, &lb) in labels.iter().enumerate().skip(a + 1) {
            if adjacency_witness(params, la, lb).is_some() {
                g.add_edge(a, b, EdgeTag::UnknownNonempty);
            }
        }
    }
    g
}

/// Decides connectivity for `p >= 3` by the case ladder, taking the
/// earliest case that applies.
pub fn connectivity_certificate(params: &DiagParams) -> Result<ConnectivityCertificate> {
    if params.p < 0 {
        return Err(Error::Domain(
            "certificates are only constructed for positive p".into(),
        ));
    }
    if params.eps.is_negative() {
        let mut cert = positive_certificate(&params.with_eps(-params.eps.clone()));
        mirror(&mut cert, params);
        cert.verify()?;
        return Ok(cert);
    }
    let cert = positive_certificate(params);
    cert.verify()?;
    Ok(cert)
}

fn positive_certificate(params: &DiagParams) -> ConnectivityCertificate {
    let p = params.p;
    let eps = &params.eps;
    let f = |i, j| params.map(i, j);
    let t = |i, j| params.fixed_point(i, j);
    let pi = Segment::new(t(0, 0), t(p - 1, p - 1));
    let inv_p = Rational::frac(1, p);
    let l3 = NamedLine {
        name: "L3",
        line: DiagonalLine {
            offset: inv_p.clone(),
        },
    };
    let mut chain = adjacency_graph(params);
    let upper = chain.position(&(p - 2, p - 1)).expect("piece exists");

    let (case, witness, segment, line, diag_piece) = if eps <= &Rational::frac((p - 1) * (p - 1), p)
    {
        let w = f(p - 2, p - 1).apply(&t(p - 1, 0));
        let k = diagonal_piece_at(params, &w);
        let line = NamedLine {
            name: "L5",
            line: DiagonalLine {
                offset: Rational::zero(),
            },
        };
        (Case::I, w, pi, line, k)
    } else if eps <= &Rational::from(p - 1) {
        let w = f(0, 0)
            .compose(&f(1, p - 1))
            .expect("same base")
            .apply(&t(0, p - 1));
        let pieces: Vec<Segment> = (0..p - 1)
            .map(|i| {
                let m = f(p - 2, p - 1).compose(&f(i + 1, i)).expect("same base");
                pi.map(|x| m.apply(x))
            })
            .collect();
        let pi1 = chain_segments(&pieces).expect("sub-segments chain end to end");
        let line = NamedLine {
            name: "L6",
            line: DiagonalLine {
                offset: &inv_p - &inv_p.pow(2),
            },
        };
        (Case::II, w, pi1, line, 0)
    } else if eps <= &threshold(p) {
        let w = f(0, 0).apply(&t(0, p - 1));
        let pi2 = pi.map(|x| f(p - 2, p - 1).apply(x));
        (Case::III, w, pi2, l3, 0)
    } else {
        let right = eps / &Rational::from(p * (p - 1)) + Rational::frac(p - 1, p);
        let left_v2 = eps / &Rational::from(p);
        return ConnectivityCertificate {
            p,
            eps: eps.clone(),
            verdict: Verdict::Disconnected,
            case: Case::IV,
            witness: None,
            segment: None,
            line: l3,
            separation: Some((right, left_v2)),
            chain,
            mirrored: false,
        };
    };
    let d = chain
        .position(&(diag_piece, diag_piece))
        .expect("piece exists");
    let lower = chain.position(&(p - 1, p - 2)).expect("piece exists");
    chain.add_edge(d, upper, EdgeTag::Point);
    // the transposed contact, by symmetry in y = x
    chain.add_edge(d, lower, EdgeTag::Point);
    ConnectivityCertificate {
        p,
        eps: eps.clone(),
        verdict: Verdict::Connected,
        case,
        witness: Some(witness),
        segment: Some(segment),
        line,
        separation: None,
        chain,
        mirrored: false,
    }
}

/// Index `k` of a diagonal piece `f_{k,k}(pi)` containing the point `w` of `pi`.
fn diagonal_piece_at(params: &DiagParams, w: &Point2) -> i64 {
    let p = params.p;
    let start = params.fixed_point(0, 0).x;
    // f_{k,k}(pi) spans x in [start + k/p, start + (k+1)/p]
    let k = ((&w.x - &start) * p).floor();
    let k: i64 = (&k).try_into().expect("small index");
    k.clamp(0, p - 1)
}

/// Merges segments whose consecutive endpoints coincide exactly.
fn chain_segments(parts: &[Segment]) -> Option<Segment> {
    let first = parts.first()?;
    for pair in parts.windows(2) {
        if pair[0].b != pair[1].a {
            return None;
        }
    }
    Some(Segment::new(first.a.clone(), parts.last()?.b.clone()))
}

fn mirror(cert: &mut ConnectivityCertificate, params: &DiagParams) {
    let one = Point2::from_ints(1, 1);
    let reflect = |x: &Point2| &one - x;
    let q = params.q();
    cert.eps = params.eps.clone();
    cert.witness = cert.witness.as_ref().map(reflect);
    cert.segment = cert.segment.as_ref().map(|s| s.map(reflect));
    let name = match cert.line.name {
        "L3" => "L4",
        "L6" => "L6'",
        other => other,
    };
    cert.line = NamedLine {
        name,
        line: DiagonalLine {
            offset: -cert.line.line.offset.clone(),
        },
    };
    cert.separation = cert
        .separation
        .take()
        .map(|(a, b)| (Rational::one() - b, Rational::one() - a));
    let relabel: Vec<(i64, i64)> = cert
        .chain
        .nodes()
        .iter()
        .map(|&(i, j)| (q - 1 - i, q - 1 - j))
        .collect();
    let mut g = PieceGraph::new(relabel);
    for e in cert.chain.edges() {
        g.add_edge(e.a, e.b, e.tag);
    }
    cert.chain = g;
    cert.mirrored = true;
}

/// Closed-form decision; for `p > 0` the certificate is built and must
/// agree.
pub fn is_connected(params: &DiagParams) -> Result<bool> {
    let closed = connected_closed_form(params);
    if params.p > 0 {
        let cert = connectivity_certificate(params)?;
        if (cert.verdict == Verdict::Connected) != closed {
            return Err(Error::Inconsistent(format!(
                "certificate case {:?} disagrees with the threshold at eps={}",
                cert.case, params.eps
            )));
        }
    }
    Ok(closed)
}

/// Float verdict for irrational `eps`; `None` when `eps` is within `tol`
/// of the threshold.
pub fn is_connected_approx(p: i64, eps: f64, tol: f64) -> Option<bool> {
    let q = p.unsigned_abs() as f64;
    let th = (q - 1.0).powi(2) / (q - 2.0);
    let gap = th - eps.abs();
    (gap.abs() > tol).then_some(gap > 0.0)
}

/// Two equal compositions of pieces, so the pieces overlap on a whole copy
/// of the attractor and the open set condition fails.
#[derive(Clone, Debug)]
pub struct OscFailure {
    pub l: i64,
    pub k: i64,
    /// `(f_{0,0} o f_{0,p-1}, f_{l,l+1} o f_{k,k-1})`
    pub pair: (AffineMap, AffineMap),
    /// `(f_{0,0} o f_{p-1,0}, f_{l+1,l} o f_{k-1,k})`
    pub mirror_pair: (AffineMap, AffineMap),
}

/// Detects `eps = l + k/p` with `l` in `0..=p-2`, `k` in `1..=p-1`, and
/// confirms the map identities exactly.
pub fn osc_failure_witness(params: &DiagParams) -> Option<OscFailure> {
    let p = params.p;
    let q = params.q();
    let scaled = &params.eps * p;
    if !scaled.is_integer() {
        return None;
    }
    let n = scaled.to_i64()?;
    let (l, k) = (n.div_euclid(p), n.rem_euclid(p));
    if !(0..=q - 2).contains(&l) || !(1..=q - 1).contains(&k) {
        return None;
    }
    let f = |i, j| params.map(i, j);
    let c = |a: AffineMap, b: AffineMap| a.compose(&b).expect("same base");
    let pair = (c(f(0, 0), f(0, q - 1)), c(f(l, l + 1), f(k, k - 1)));
    let mirror_pair = (c(f(0, 0), f(q - 1, 0)), c(f(l + 1, l), f(k - 1, k)));
    (map_equal(&pair.0, &pair.1) && map_equal(&mirror_pair.0, &mirror_pair.1)).then_some(
        OscFailure {
            l,
            k,
            pair,
            mirror_pair,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn params(p: i64, eps: Rational) -> DiagParams {
        DiagParams::new(p, eps).unwrap()
    }

    #[test]
    fn digit_examples() {
        let ds = build_diag_digits(&params(3, q(3, 1)));
        assert_eq!(
            ds.digit(ds.index_of((1, 1)).unwrap()).unwrap(),
            &Point2::from_ints(4, 4)
        );
        assert_eq!(
            ds.digit(ds.index_of((1, 2)).unwrap()).unwrap(),
            &Point2::from_ints(1, 2)
        );
        let ds = build_diag_digits(&params(4, q(9, 2)));
        assert_eq!(
            ds.digit(ds.index_of((3, 3)).unwrap()).unwrap(),
            &Point2::new(q(15, 2), q(15, 2))
        );
        assert!(DiagParams::new(2, q(0, 1)).is_err());
        assert!(DiagParams::new(-2, q(0, 1)).is_err());
    }

    #[test]
    fn fixed_points() {
        let pr = params(3, q(3, 1));
        let t = FixedPointTable::new(&pr);
        assert_eq!(t.t00, Point2::new(q(3, 2), q(3, 2)));
        assert_eq!(t.t0_last, Point2::new(q(0, 1), q(1, 1)));
        for (i, j) in [(0, 0), (1, 2), (2, 2)] {
            let tij = pr.fixed_point(i, j);
            assert_eq!(pr.map(i, j).apply(&tij), tij);
        }
    }

    #[test]
    fn adjacency_examples() {
        let pr = params(3, q(3, 1));
        assert_eq!(adjacency_witness(&pr, (0, 1), (1, 1)), None);
        assert_eq!(
            adjacency_witness(&pr, (1, 0), (0, 1)),
            Some(Point2::new(q(1, 3), q(1, 3)))
        );
        assert_eq!(
            adjacency_witness(&pr, (2, 1), (1, 2)),
            Some(Point2::new(q(2, 3), q(2, 3)))
        );
        assert_eq!(
            adjacency_witness(&pr, (0, 0), (1, 1)),
            Some(Point2::new(q(11, 6), q(11, 6)))
        );
        assert_eq!(
            adjacency_witness(&pr, (1, 0), (2, 0)),
            Some(Point2::new(q(2, 3), q(1, 6)))
        );
        assert_eq!(adjacency_witness(&pr, (0, 0), (2, 2)), None);
        assert_eq!(adjacency_witness(&pr, (0, 3), (1, 3)), None);
    }

    #[test]
    fn off_diagonal_pieces_are_chained() {
        for p in [3, 4, 5, 7] {
            let pr = params(p, q(100, 1));
            let g = adjacency_graph(&pr);
            let (_, parts) = g.components();
            let off: Vec<usize> = g
                .nodes()
                .iter()
                .enumerate()
                .filter(|(_, (i, j))| i != j)
                .map(|(k, _)| k)
                .collect();
            assert!(
                parts
                    .iter()
                    .any(|part| off.iter().all(|k| part.contains(k))),
                "p={p}"
            );
        }
    }

    #[test]
    fn certificate_examples() {
        let c = connectivity_certificate(&params(3, q(3, 1))).unwrap();
        assert_eq!((c.verdict, c.case), (Verdict::Connected, Case::III));
        assert_eq!(c.witness, Some(Point2::new(q(1, 1), q(4, 3))));

        let c = connectivity_certificate(&params(3, q(5, 1))).unwrap();
        assert_eq!((c.verdict, c.case), (Verdict::Disconnected, Case::IV));
        assert_eq!(c.separation, Some((q(3, 2), q(5, 3))));

        let c = connectivity_certificate(&params(3, q(0, 1))).unwrap();
        assert_eq!((c.verdict, c.case), (Verdict::Connected, Case::I));
        assert_eq!(c.witness, Some(Point2::new(q(2, 3), q(2, 3))));

        let c = connectivity_certificate(&params(3, q(2, 1))).unwrap();
        assert_eq!(c.case, Case::II);
        assert_eq!(c.witness, Some(Point2::new(q(7, 9), q(1, 1))));
    }

    #[test]
    fn certificate_json() {
        let c = connectivity_certificate(&params(3, q(5, 1))).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "Disconnected");
        assert_eq!(v["case"], "IV");
        assert_eq!(v["line"], "L3");
        assert_eq!(v["separation"], serde_json::json!(["3/2", "5/3"]));
        let c = connectivity_certificate(&params(3, q(3, 1))).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["witness"], serde_json::json!(["1/1", "4/3"]));
        assert!(v.get("separation").is_none());
    }

    #[test]
    fn certificates_agree_with_threshold() {
        for p in [3, 4, 5, 7] {
            for den in 1..=12 {
                for num in 0..=(p + 2) * den {
                    let pr = params(p, q(num, den));
                    let c = connectivity_certificate(&pr).unwrap();
                    assert_eq!(
                        c.verdict == Verdict::Connected,
                        connected_closed_form(&pr),
                        "p={p} eps={num}/{den}"
                    );
                    assert!(is_connected(&pr).is_ok());
                }
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert!(is_connected(&params(3, q(4, 1))).unwrap());
        assert!(!is_connected(&params(3, q(5, 1))).unwrap());
        assert!(is_connected(&params(4, q(9, 2))).unwrap());
        assert!(!is_connected(&params(4, q(23, 5))).unwrap());
        assert!(is_connected(&params(-3, q(4, 1))).unwrap());
        assert!(connectivity_certificate(&params(-3, q(4, 1))).is_err());
    }

    #[test]
    fn negative_eps_mirrors() {
        for (num, den) in [(1, 2), (3, 1), (4, 1), (9, 2), (5, 1), (2, 1)] {
            let pos = connectivity_certificate(&params(3, q(num, den))).unwrap();
            let neg = connectivity_certificate(&params(3, q(-num, den))).unwrap();
            assert!(neg.mirrored);
            assert_eq!(pos.verdict, neg.verdict);
            assert_eq!(pos.case, neg.case);
        }
        let neg = connectivity_certificate(&params(3, q(-3, 1))).unwrap();
        assert_eq!(neg.witness, Some(Point2::new(q(0, 1), q(-1, 3))));
        assert_eq!(neg.line.name, "L4");
    }

    #[test]
    fn pi_is_invariant_under_diagonal_maps() {
        let pr = params(5, q(7, 3));
        let pi = Segment::new(pr.fixed_point(0, 0), pr.fixed_point(4, 4));
        for i in 0..5 {
            let img = pi.map(|x| pr.map(i, i).apply(x));
            assert!(pi.contains(&img.a) && pi.contains(&img.b));
        }
    }

    #[test]
    fn case_two_chain_matches_closed_segment() {
        let pr = params(3, q(2, 1));
        let c = connectivity_certificate(&pr).unwrap();
        let seg = c.segment.unwrap();
        let e = q(2, 18);
        assert_eq!(seg.a, Point2::new(&e + q(4, 9), &e + q(2, 3)));
        assert_eq!(seg.b, Point2::new(&e + q(2, 3), &e + q(8, 9)));
    }

    #[test]
    fn osc_examples() {
        let w = osc_failure_witness(&params(3, q(1, 3))).unwrap();
        assert_eq!((w.l, w.k), (0, 1));
        let want = AffineMap::new(3, 2, Point2::new(q(1, 9), q(1, 3))).unwrap();
        assert!(map_equal(&w.pair.0, &want));
        assert!(osc_failure_witness(&params(3, q(7, 3))).is_none());
        assert!(osc_failure_witness(&params(3, q(1, 2))).is_none());
        assert!(osc_failure_witness(&params(3, q(1, 1))).is_none());
        for p in [3, 4, 5] {
            for l in 0..=p - 2 {
                for k in 1..p {
                    assert!(osc_failure_witness(&params(p, q(l * p + k, p))).is_some());
                }
            }
        }
    }

    #[test]
    fn approx_mode() {
        assert_eq!(
            is_connected_approx(3, std::f64::consts::PI, 1e-9),
            Some(true)
        );
        assert_eq!(is_connected_approx(3, 4.0 + 1e-12, 1e-9), None);
        assert_eq!(
            is_connected_approx(3, -std::f64::consts::E * 2.0, 1e-9),
            Some(false)
        );
    }
}
