//! Command-line front end. Reports go to stdout as one JSON line; failures
//! go to stderr as `{"error": {"kind", "message"}}` with exit code 2.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diag::{self, DiagParams, Verdict};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::quasi::{self, Eps, QuasiVerdict};
use crate::render::{self, RasterImage};
use crate::shift::{self, ShiftParams, StripMeet};

#[derive(Parser, Debug)]
#[command(
    name = "fractopo",
    version,
    about = "Exact topology of two families of planar self-affine sets"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interior components and disk-likeness of a shifted-row tile.
    ShiftAnalyze {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Render a shifted-row tile to PPM.
    ShiftRender {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 7)]
        depth: u32,
        #[arg(long, default_value = "729x243")]
        size: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connectivity certificate of a diagonal-shift attractor.
    DiagAnalyze {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Render a diagonal-shift attractor to PPM.
    DiagRender {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 7)]
        depth: u32,
        #[arg(long, default_value = "729x729")]
        size: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quasi-periodicity of the induced tiling.
    QpCheck {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Read eps as a float standing in for an irrational (uncertified).
        #[arg(long)]
        demo_float: bool,
    },
    /// Write the level-k patch of tile translates, one point per line.
    QpPatch {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a cross-check suite; exit 0 iff every check passes.
    Oracle {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Strips,
    Components,
    Diag,
    Census,
}

/// Runs the command line, writing reports to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = writeln!(
                err,
                "{}",
                json!({"error": {"kind": "usage", "message": e.to_string().trim_end()}})
            );
            return 2;
        }
    };
    match execute(&config.command) {
        Ok((report, code)) => {
            let _ = writeln!(out, "{report}");
            code
        }
        Err(e) => {
            let _ = writeln!(
                err,
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            2
        }
    }
}

fn parse_eps(s: &str) -> Result<Rational> {
    s.parse()
}

fn parse_size(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("size must look like 729x243, got {s:?}"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (w, h): (usize, usize) = (w.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?);
    if w == 0 || h == 0 || w * h > 1 << 26 {
        return Err(Error::InvalidParameter(format!(
            "image size {w}x{h} out of range"
        )));
    }
    Ok((w, h))
}

/// Writes `bytes` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(result?)
}

fn image_report(path: &Path, img: &RasterImage) -> Value {
    json!({
        "out": path.display().to_string(),
        "width": img.width(),
        "height": img.height(),
        "black_pixels": img.black_count(),
        "flood_components": render::flood_components(img),
    })
}

fn execute(cmd: &Command) -> Result<(Value, i32)> {
    match cmd {
        Command::ShiftAnalyze { p, eps } => {
            let params = ShiftParams::new(*p, parse_eps(eps)?)?;
            Ok((
                serde_json::to_value(shift::component_count(&params)?).expect("serializable"),
                0,
            ))
        }
        Command::ShiftRender {
            p,
            eps,
            depth,
            size,
            out,
        } => {
            let params = ShiftParams::new(*p, parse_eps(eps)?)?;
            let (w, h) = parse_size(size)?;
            let img = render::shift_figure(&params, *depth, w, h)?;
            write_atomic(out, &img.to_ppm())?;
            Ok((image_report(out, &img), 0))
        }
        Command::DiagAnalyze { p, eps } => {
            let params = DiagParams::new(*p, parse_eps(eps)?)?;
            if *p < 0 {
                let connected = diag::is_connected(&params)?;
                let verdict = if connected {
                    Verdict::Connected
                } else {
                    Verdict::Disconnected
                };
                return Ok((json!({"verdict": verdict, "certificate": null}), 0));
            }
            let cert = diag::connectivity_certificate(&params)?;
            if (cert.verdict == Verdict::Connected) != diag::connected_closed_form(&params) {
                return Err(Error::Inconsistent(
                    "certificate disagrees with the threshold".into(),
                ));
            }
            Ok((serde_json::to_value(&cert).expect("serializable"), 0))
        }
        Command::DiagRender {
            p,
            eps,
            depth,
            size,
            out,
        } => {
            let params = DiagParams::new(*p, parse_eps(eps)?)?;
            let (w, h) = parse_size(size)?;
            let img = render::diag_figure(&params, *depth, w, h)?;
            write_atomic(out, &img.to_ppm())?;
            Ok((image_report(out, &img), 0))
        }
        Command::QpCheck { p, eps, demo_float } => {
            let e = if *demo_float {
                let v: f64 = eps
                    .parse()
                    .map_err(|_| Error::Parse(format!("not a float: {eps:?}")))?;
                if !v.is_finite() {
                    return Err(Error::InvalidParameter("eps must be finite".into()));
                }
                Eps::DemoFloat(v)
            } else {
                Eps::Exact(parse_eps(eps)?)
            };
            let report = quasi::is_quasi_periodic(*p, &e)?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["quasi_periodic"] = json!(report.verdict == QuasiVerdict::QuasiPeriodic);
            Ok((v, 0))
        }
        Command::QpPatch { p, eps, k, out } => {
            let params = ShiftParams::new(*p, parse_eps(eps)?)?;
            let patch = quasi::dset_k(&params, *k, quasi::DEFAULT_PATCH_BUDGET)?;
            write_atomic(out, patch.export().as_bytes())?;
            Ok((
                json!({"out": out.display().to_string(), "k": k, "points": patch.points.len()}),
                0,
            ))
        }
        Command::Oracle { suite } => {
            let report = run_suite(*suite)?;
            let code = i32::from(report.failures > 0);
            Ok((serde_json::to_value(&report).expect("serializable"), code))
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleReport {
    pub suite: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// First few failing cases.
    pub examples: Vec<String>,
}

impl OracleReport {
    fn new(suite: &'static str) -> Self {
        OracleReport {
            suite,
            checks: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 10 {
                self.examples.push(what());
            }
        }
    }
}

/// Deterministic grid of `count` rationals in `[lo, hi]` with denominators
/// cycling through 1..=12.
pub fn rational_grid(lo: i64, hi: i64, count: usize) -> Vec<Rational> {
    let span = Rational::from(hi - lo);
    (0..count)
        .map(|i| {
            let den = (i % 12) as i64 + 1;
            let t = Rational::frac(i as i64, count.max(2) as i64 - 1);
            let raw = Rational::from(lo) + t * &span;
            // snap to the grid of the chosen denominator
            let snapped =
                Rational::from_big((&raw * &Rational::from(den)).floor()) / Rational::from(den);
            snapped.max(Rational::from(lo))
        })
        .collect()
}

pub fn run_suite(suite: Suite) -> Result<OracleReport> {
    match suite {
        Suite::Strips => {
            let mut r = OracleReport::new("strips");
            for p in [3i64, 5, 7, -3, -5] {
                for eps in rational_grid(-60, 60, 50) {
                    let params = ShiftParams::new(p, eps.clone())?;
                    for n in 0..4u32 {
                        let closed = shift::classify_strip_intersection(&params, n);
                        let edges =
                            shift::sibling_intersection(&params, &vec![0; n as usize], 0, 1)?;
                        r.check(closed == edges, || {
                            format!("p={p} eps={eps} n={n}: {closed:?} vs {edges:?}")
                        });
                        let bound = Rational::from(p.abs()).pow(n as i32 + 1);
                        let want = match eps.abs().cmp(&bound) {
                            std::cmp::Ordering::Less => matches!(closed, StripMeet::Segment(_)),
                            std::cmp::Ordering::Equal => matches!(closed, StripMeet::Point(_)),
                            std::cmp::Ordering::Greater => closed == StripMeet::Empty,
                        };
                        r.check(want, || format!("p={p} eps={eps} n={n}: trichotomy"));
                    }
                }
            }
            Ok(r)
        }
        Suite::Components => {
            let mut r = OracleReport::new("components");
            for eps in rational_grid(0, 80, 200) {
                let params = ShiftParams::new(3, eps.clone())?;
                match shift::component_count(&params) {
                    Ok(rep) => r.check(rep.graph_checked, || format!("eps={eps}: graph not built")),
                    Err(e) => r.check(false, || format!("eps={eps}: {e}")),
                }
            }
            Ok(r)
        }
        Suite::Diag => {
            let mut r = OracleReport::new("diag");
            for p in [3i64, 4, 5, 7] {
                for eps in rational_grid(-(p + 2), p + 2, 75) {
                    let params = DiagParams::new(p, eps.clone())?;
                    match diag::connectivity_certificate(&params) {
                        Ok(c) => r.check(
                            (c.verdict == Verdict::Connected)
                                == diag::connected_closed_form(&params),
                            || format!("p={p} eps={eps}: verdict"),
                        ),
                        Err(e) => r.check(false, || format!("p={p} eps={eps}: {e}")),
                    }
                }
                let params = DiagParams::new(p, Rational::frac(7, 3))?;
                let pieces: Vec<(i64, i64)> =
                    (0..p).flat_map(|i| (0..p).map(move |j| (i, j))).collect();
                let mut found = 0;
                for a in &pieces {
                    for b in &pieces {
                        found += usize::from(
                            a < b && diag::adjacency_witness(&params, *a, *b).is_some(),
                        );
                    }
                }
                // horizontal + vertical + anti-diagonal + diagonal patterns
                let q = p as usize;
                let want = 2 * ((q - 1) * q - 2 * (q - 1)) + 2 * (q - 1);
                r.check(found == want, || {
                    format!("p={p}: {found} adjacency witnesses, expected {want}")
                });
            }
            Ok(r)
        }
        Suite::Census => {
            let mut r = OracleReport::new("census");
            for eps in [Rational::one(), Rational::frac(1, 2), Rational::frac(2, 7)] {
                let params = ShiftParams::new(3, eps.clone())?;
                for c in [1i64, 2] {
                    let c = Rational::from(c);
                    let rep = quasi::local_finiteness_census(&params, &c, 4)?;
                    r.check(rep.count <= rep.bound, || {
                        format!("eps={eps} c={c}: {} > {}", rep.count, rep.bound)
                    });
                    let patch = quasi::dset_k(&params, 2, quasi::DEFAULT_PATCH_BUDGET)?;
                    let fast = quasi::local_finiteness_census(&params, &c, 2)?.count;
                    let slow = quasi::census_by_enumeration(&patch, &c);
                    r.check(fast == slow, || {
                        format!("eps={eps} c={c}: census {fast} vs enumeration {slow}")
                    });
                }
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["fractopo"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn size_parsing() {
        assert_eq!(parse_size("729x243").unwrap(), (729, 243));
        assert!(parse_size("729").is_err());
        assert!(parse_size("0x3").is_err());
    }

    #[test]
    fn grid_is_in_range() {
        let g = rational_grid(0, 80, 200);
        assert_eq!(g.len(), 200);
        assert!(g
            .iter()
            .all(|e| *e >= Rational::zero() && *e <= Rational::from(80)));
        assert!(g.iter().any(|e| !e.is_integer()));
    }

    #[test]
    fn shift_analyze_report() {
        let (code, out, _) = call(&["shift-analyze", "--p", "3", "--eps", "9"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["components"], 9);
    }

    #[test]
    fn negative_values_parse() {
        let (code, out, _) = call(&["shift-analyze", "--p", "-3", "--eps", "-10"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["components"], 9);
    }

    #[test]
    fn error_json() {
        let (code, out, err) = call(&["shift-analyze", "--p", "4", "--eps", "1"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["kind"], "invalid_parameter");
        let (code, _, err) = call(&["shift-analyze", "--p", "3", "--eps", "1/0"]);
        assert_eq!(code, 2);
        assert!(serde_json::from_str::<Value>(&err).is_ok());
        let (code, _, err) = call(&["no-such-command"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
