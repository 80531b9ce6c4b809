//! Rasterization to binary PPM and a 4-connected flood-fill component count.
//!
//! Every pixel decision is exact: sample points and pixel centers are
//! compared in rational or integer arithmetic, so images are byte-stable.

use rayon::prelude::*;

use crate::diag::{build_diag_digits, DiagParams};
use crate::error::{Error, Result};
use crate::ifs::DigitSet;
use crate::numeric::{Interval, Point2, Rational};
use crate::shift::{build_shift_digits, row_sections, ShiftParams};

/// Row-major RGB image, white background.
#[derive(Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl std::fmt::Debug for RasterImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RasterImage({}x{}, {} black)",
            self.width,
            self.height,
            self.black_count()
        )
    }
}

impl RasterImage {
    pub fn blank(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "image size {width}x{height}"
            )));
        }
        Ok(RasterImage {
            width,
            height,
            pixels: vec![255; 3 * width * height],
        })
    }

    fn from_mask(width: usize, height: usize, mask: &[bool]) -> Self {
        let pixels = mask
            .iter()
            .flat_map(|&b| if b { [0u8; 3] } else { [255u8; 3] })
            .collect();
        RasterImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Row 0 is the top of the image.
    pub fn is_black(&self, col: usize, row: usize) -> bool {
        let i = 3 * (row * self.width + col);
        self.pixels[i..i + 3] == [0, 0, 0]
    }

    pub fn set_black(&mut self, col: usize, row: usize) {
        let i = 3 * (row * self.width + col);
        self.pixels[i..i + 3].fill(0);
    }

    pub fn black_count(&self) -> usize {
        self.pixels
            .chunks_exact(3)
            .filter(|c| *c == [0, 0, 0])
            .count()
    }

    /// `(min col, min row, max col, max row)` of the black pixels.
    pub fn black_bounds(&self) -> Option<(usize, usize, usize, usize)> {
        let mut out: Option<(usize, usize, usize, usize)> = None;
        for row in 0..self.height {
            for col in 0..self.width {
                if self.is_black(col, row) {
                    out = Some(match out {
                        None => (col, row, col, row),
                        Some((a, b, c, d)) => (a.min(col), b.min(row), c.max(col), d.max(row)),
                    });
                }
            }
        }
        out
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    /// Reads back the exact layout written by [`RasterImage::to_ppm`].
    pub fn from_ppm(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::Parse("not a P6 image with maxval 255".into());
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad());
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad())?);
        }
        pos += 1;
        let dims: Vec<usize> = fields[1..]
            .iter()
            .map(|f| f.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if fields[0] != "P6"
            || dims[2] != 255
            || bytes.len() < pos
            || bytes.len() - pos != 3 * dims[0] * dims[1]
        {
            return Err(bad());
        }
        let img = RasterImage {
            width: dims[0],
            height: dims[1],
            pixels: bytes[pos..].to_vec(),
        };
        if img.width == 0 || img.height == 0 {
            return Err(bad());
        }
        Ok(img)
    }
}

/// A closed rational viewing box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct View {
    pub x: Interval,
    pub y: Interval,
}

impl View {
    pub fn new(x: Interval, y: Interval) -> Result<Self> {
        if x.width().is_zero() || y.width().is_zero() {
            return Err(Error::InvalidParameter("degenerate view box".into()));
        }
        Ok(View { x, y })
    }

    /// Smallest square box with the same center containing `self`.
    pub fn squared(&self) -> View {
        let side = self.x.width().max(self.y.width());
        let half = &side / &Rational::from(2);
        let cx = (self.x.lo() + self.x.hi()) / Rational::from(2);
        let cy = (self.y.lo() + self.y.hi()) / Rational::from(2);
        View {
            x: Interval::centered(&cx, &half),
            y: Interval::centered(&cy, &half),
        }
    }

    /// Center of pixel `(col, row)`, row 0 at the top.
    pub fn pixel_center(&self, col: usize, row: usize, w: usize, h: usize) -> Point2 {
        let fx = Rational::new(2 * col as i64 + 1, 2 * w as i64).expect("w > 0");
        let fy = Rational::new(2 * (h - 1 - row) as i64 + 1, 2 * h as i64).expect("h > 0");
        Point2::new(
            self.x.lo() + &(fx * self.x.width()),
            self.y.lo() + &(fy * self.y.width()),
        )
    }
}

/// Maps one coordinate to a pixel index; the closed upper edge goes to the
/// last pixel.
fn bucket(v: &Rational, axis: &Interval, n: usize) -> Option<usize> {
    if !axis.contains(v) {
        return None;
    }
    let t = ((v - axis.lo()) * n as i64 / axis.width()).floor();
    let t: i64 = (&t).try_into().ok()?;
    Some((t as usize).min(n - 1))
}

/// Marks the pixel `floor((x - x0) w / W)` of every point inside the view.
pub fn rasterize<'a>(
    points: impl IntoIterator<Item = &'a Point2>,
    view: &View,
    w: usize,
    h: usize,
) -> Result<RasterImage> {
    let mut img = RasterImage::blank(w, h)?;
    for q in points {
        if let (Some(c), Some(r)) = (bucket(&q.x, &view.x, w), bucket(&q.y, &view.y, h)) {
            img.set_black(c, h - 1 - r);
        }
    }
    Ok(img)
}

/// Integer form of `floor((N/D - a/b) n / (c/e))` for numerators `N` over
/// a fixed denominator `D > 0`:
/// `floor((N b - a D) n e / (b D c))`.
struct AxisMap {
    b: i128,
    a_d: i128,
    mul: i128,
    div: i128,
    n: i128,
}

impl AxisMap {
    fn new(axis: &Interval, d: i128, n: usize) -> Result<Self> {
        let overflow = || Error::Resource {
            needed: u128::MAX,
            budget: i128::MAX as u128,
        };
        let big = |v: &num_bigint::BigInt| -> Result<i128> { v.try_into().map_err(|_| overflow()) };
        let (a, b) = (big(axis.lo().numer())?, big(axis.lo().denom())?);
        let width = axis.width();
        let (c, e) = (big(width.numer())?, big(width.denom())?);
        let a_d = a.checked_mul(d).ok_or_else(overflow)?;
        let div = b
            .checked_mul(d)
            .and_then(|v| v.checked_mul(c))
            .ok_or_else(overflow)?;
        let mul = e.checked_mul(n as i128).ok_or_else(overflow)?;
        Ok(AxisMap {
            b,
            a_d,
            mul,
            div,
            n: n as i128,
        })
    }

    fn index(&self, num: i128) -> Option<usize> {
        let t = (num * self.b - self.a_d) * self.mul;
        if t < 0 || t > self.n * self.div {
            return None;
        }
        Some((t / self.div).min(self.n - 1) as usize)
    }
}

/// Hit raster of the level-`depth` sample net of an attractor, computed on
/// integer numerators. Work is split over word prefixes; partial masks are
/// OR-ed together.
pub fn rasterize_samples(
    ds: &DigitSet,
    depth: u32,
    view: &View,
    w: usize,
    h: usize,
    budget: u128,
) -> Result<RasterImage> {
    RasterImage::blank(w, h)?;
    let needed = (ds.len() as u128).checked_pow(depth).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Resource { needed, budget });
    }
    let lattice = ds.lattice()?;
    let d = lattice.sample_denom(depth);
    let sign = d.signum();
    let (mx, my) = (
        AxisMap::new(&view.x, d.abs(), w)?,
        AxisMap::new(&view.y, d.abs(), h)?,
    );
    let mask = lattice.fold_samples(
        depth,
        || vec![false; w * h],
        |mask: &mut Vec<bool>, x, y| {
            if let (Some(c), Some(r)) = (mx.index(sign * x as i128), my.index(sign * y as i128)) {
                mask[(h - 1 - r) * w + c] = true;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
            a
        },
    );
    Ok(RasterImage::from_mask(w, h, &mask))
}

/// Section raster of a first-family tile: a pixel is black iff its center
/// lies in one of the horizontal sections of the level-`depth` approximation
/// at the center's height. Unlike a hit raster this keeps strips that meet
/// in a single point apart whenever the contact height is a row boundary.
pub fn rasterize_sections(
    params: &ShiftParams,
    depth: usize,
    view: &View,
    w: usize,
    h: usize,
) -> Result<RasterImage> {
    RasterImage::blank(w, h)?;
    let rows: Vec<Vec<bool>> = (0..h)
        .into_par_iter()
        .map(|row| {
            let y = view.pixel_center(0, row, w, h).y;
            let secs = row_sections(params, &y, depth);
            (0..w)
                .map(|col| {
                    let x = view.pixel_center(col, row, w, h).x;
                    secs.iter().any(|s| s.contains(&x))
                })
                .collect()
        })
        .collect();
    Ok(RasterImage::from_mask(w, h, &rows.concat()))
}

/// Number of 4-connected components of black pixels.
pub fn flood_components(img: &RasterImage) -> usize {
    let (w, h) = (img.width, img.height);
    let mut seen = vec![false; w * h];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..w * h {
        if seen[start] || !img.is_black(start % w, start / w) {
            continue;
        }
        count += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (c, r) = (i % w, i / w);
            let mut visit = |j: usize| {
                if !seen[j] && img.is_black(j % w, j / w) {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if c > 0 {
                visit(i - 1);
            }
            if c + 1 < w {
                visit(i + 1);
            }
            if r > 0 {
                visit(i - w);
            }
            if r + 1 < h {
                visit(i + w);
            }
        }
    }
    count
}

/// Budget for sample rasters: `9^8` points.
pub const RENDER_SAMPLE_BUDGET: u128 = 43_046_721;

/// First-family figure: the tile's exact bounding box, section raster.
pub fn shift_figure(params: &ShiftParams, depth: u32, w: usize, h: usize) -> Result<RasterImage> {
    let (x, y) = build_shift_digits(params).attractor_bounds();
    rasterize_sections(params, depth as usize, &View::new(x, y)?, w, h)
}

/// Second-family figure: square view around the attractor, sample raster.
pub fn diag_figure(params: &DiagParams, depth: u32, w: usize, h: usize) -> Result<RasterImage> {
    let ds = build_diag_digits(params);
    let (x, y) = ds.attractor_bounds();
    rasterize_samples(
        &ds,
        depth,
        &View::new(x, y)?.squared(),
        w,
        h,
        RENDER_SAMPLE_BUDGET,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::sample_attractor;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn view(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> View {
        View::new(
            Interval::new(x0, x1).unwrap(),
            Interval::new(y0, y1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn center_point() {
        let v = view(q(0, 1), q(1, 1), q(0, 1), q(1, 1));
        let img = rasterize([&Point2::new(q(1, 2), q(1, 2))], &v, 3, 3).unwrap();
        assert!(img.is_black(1, 1));
        assert_eq!(img.black_count(), 1);
    }

    #[test]
    fn empty_and_degenerate() {
        let v = view(q(0, 1), q(1, 1), q(0, 1), q(1, 1));
        let img = rasterize(std::iter::empty(), &v, 4, 4).unwrap();
        assert_eq!(img.black_count(), 0);
        assert_eq!(flood_components(&img), 0);
        assert!(View::new(
            Interval::new(q(1, 1), q(1, 1)).unwrap(),
            Interval::new(q(0, 1), q(1, 1)).unwrap()
        )
        .is_err());
        assert!(RasterImage::blank(0, 3).is_err());
    }

    #[test]
    fn orientation_and_edges() {
        let v = view(q(0, 1), q(1, 1), q(0, 1), q(1, 1));
        let img = rasterize(
            [
                &Point2::new(q(0, 1), q(1, 1)),
                &Point2::new(q(1, 1), q(0, 1)),
            ],
            &v,
            4,
            4,
        )
        .unwrap();
        assert!(img.is_black(0, 0));
        assert!(img.is_black(3, 3));
        let img = rasterize([&Point2::new(q(2, 1), q(0, 1))], &v, 4, 4).unwrap();
        assert_eq!(img.black_count(), 0);
    }

    #[test]
    fn flood_examples() {
        let mut img = RasterImage::blank(10, 5).unwrap();
        for (c, r) in [(0, 0), (1, 0), (0, 1), (1, 1), (5, 2), (6, 2), (5, 3)] {
            img.set_black(c, r);
        }
        assert_eq!(flood_components(&img), 2);
        // diagonal neighbours stay apart
        img.set_black(7, 4);
        assert_eq!(flood_components(&img), 3);
    }

    #[test]
    fn ppm_layout() {
        let mut img = RasterImage::blank(2, 1).unwrap();
        img.set_black(1, 0);
        let bytes = img.to_ppm();
        assert_eq!(&bytes[..11], b"P6\n2 1\n255\n");
        assert_eq!(&bytes[11..], &[255, 255, 255, 0, 0, 0]);
        assert_eq!(RasterImage::from_ppm(&bytes).unwrap(), img);
        assert!(RasterImage::from_ppm(b"P5\n2 1\n255\n\0\0").is_err());
    }

    #[test]
    fn integer_raster_matches_exact_raster() {
        let pr = ShiftParams::new(3, q(2, 1)).unwrap();
        let ds = build_shift_digits(&pr);
        let v = view(q(-3, 2), q(3, 2), q(-3, 2), q(3, 2));
        let pts = sample_attractor(&ds, 3, 1 << 20).unwrap();
        let exact = rasterize(&pts, &v, 61, 47).unwrap();
        let fast = rasterize_samples(&ds, 3, &v, 61, 47, 1 << 20).unwrap();
        assert_eq!(exact, fast);
        let neg = ShiftParams::new(-3, q(1, 3)).unwrap();
        let ds = build_shift_digits(&neg);
        let pts = sample_attractor(&ds, 3, 1 << 20).unwrap();
        assert_eq!(
            rasterize(&pts, &v, 40, 40).unwrap(),
            rasterize_samples(&ds, 3, &v, 40, 40, 1 << 20).unwrap()
        );
    }

    #[test]
    fn sample_bounds_match_attractor() {
        let pr = ShiftParams::new(3, q(2, 1)).unwrap();
        let ds = build_shift_digits(&pr);
        let (w, h) = (300usize, 300usize);
        let v = view(q(-3, 2), q(3, 2), q(-3, 2), q(3, 2));
        let img = rasterize_samples(&ds, 7, &v, w, h, RENDER_SAMPLE_BUDGET).unwrap();
        let (c0, r0, c1, r1) = img.black_bounds().unwrap();
        // x in [-1/2, 3/2], y in [-1/2, 1/2] on a 1/100 grid
        let near = |got: usize, want: usize| got.abs_diff(want) <= 1;
        assert!(
            near(c0, 100) && near(c1, 300 - 1) && near(r0, 100) && near(r1, 199),
            "{c0} {r0} {c1} {r1}"
        );
    }

    #[test]
    fn section_raster_components() {
        for (eps, want) in [(2, 1), (3, 3), (10, 9)] {
            let pr = ShiftParams::new(3, q(eps, 1)).unwrap();
            let img = shift_figure(&pr, 7, 243, 81).unwrap();
            assert_eq!(flood_components(&img), want, "eps={eps}");
        }
    }
}
