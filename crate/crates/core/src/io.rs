//! Plain-text zero caches.
//!
//! ```text
//! a,t_min,t_max,step
//! 3,0.001,100,0.01
//! j,t_j,branch,residual
//! 1,0.9478863402470747,0,-2.1316282072803006e-14
//! ```
//!
//! Floats use the shortest representation that parses back to the same
//! double, so a written cache re-reads bit for bit.

use crate::error::{Error, Result};
use crate::scattering::ConstantTermZero;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_VAR: &str = "THETA_SPECTRUM_CACHE";

const HEADER: &str = "a,t_min,t_max,step";
const COLUMNS: &str = "j,t_j,branch,residual";

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCache {
    pub a: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    pub zeros: Vec<ConstantTermZero>,
}

impl ZeroCache {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        writeln!(
            out,
            "{},{},{},{}",
            float(self.a),
            float(self.t_min),
            float(self.t_max),
            float(self.step)
        )
        .unwrap();
        writeln!(out, "{COLUMNS}").unwrap();
        for z in &self.zeros {
            writeln!(out, "{},{},{},{}", z.index, float(z.t), z.branch, float(z.residual)).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let perr = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let mut expect = |what: &str| -> Result<(usize, String)> {
            let (i, l) = lines.next().ok_or_else(|| perr(0, format!("missing {what}")))?;
            Ok((i, l.trim().to_string()))
        };
        let (i, h) = expect("header")?;
        if h != HEADER {
            return Err(perr(i, format!("expected header {HEADER:?}, got {h:?}")));
        }
        let (i, v) = expect("parameter line")?;
        let vals = parse_floats(&v).map_err(|m| perr(i, m))?;
        if vals.len() != 4 {
            return Err(perr(i, format!("expected 4 parameters, got {}", vals.len())));
        }
        let (i, c) = expect("column header")?;
        if c != COLUMNS {
            return Err(perr(i, format!("expected columns {COLUMNS:?}, got {c:?}")));
        }
        let mut zeros = Vec::new();
        for (i, l) in lines {
            let f: Vec<&str> = l.trim().split(',').collect();
            if f.len() != 4 {
                return Err(perr(i, format!("expected 4 fields, got {}", f.len())));
            }
            let bad = |what: &str| perr(i, format!("bad {what}"));
            zeros.push(ConstantTermZero {
                index: f[0].parse().map_err(|_| bad("index"))?,
                t: f[1].parse().map_err(|_| bad("t_j"))?,
                branch: f[2].parse().map_err(|_| bad("branch"))?,
                residual: f[3].parse().map_err(|_| bad("residual"))?,
            });
        }
        Ok(ZeroCache {
            a: vals[0],
            t_min: vals[1],
            t_max: vals[2],
            step: vals[3],
            zeros,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_csv(&text)
    }

    /// File name keyed by the parameters, e.g. `zeros_a3_t100_h0.01.csv`.
    pub fn file_name(a: f64, t_max: f64, step: f64) -> String {
        format!("zeros_a{a}_t{t_max}_h{step}.csv")
    }
}

/// Shortest round-trip text of `x`, in exponent form when `|x|` is tiny or huge.
pub fn float(x: f64) -> String {
    let m = x.abs();
    if m != 0.0 && !(1e-4..1e16).contains(&m) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn parse_floats(line: &str) -> std::result::Result<Vec<f64>, String> {
    line.split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|_| format!("bad number {f:?}")))
        .collect()
}

/// The cache directory from [`CACHE_DIR_VAR`], if set.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_VAR)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let cache = ZeroCache {
            a: 3.0,
            t_min: 1e-3,
            t_max: 100.0,
            step: 0.01,
            zeros: vec![
                ConstantTermZero {
                    index: 1,
                    t: 0.947_886_340_247_074_7,
                    branch: 0,
                    residual: -2.131_628_207_280_300_6e-14,
                },
                ConstantTermZero {
                    index: 2,
                    t: 0.1 + 0.2,
                    branch: 1,
                    residual: f64::MIN_POSITIVE,
                },
            ],
        };
        let text = cache.to_csv();
        assert_eq!(ZeroCache::from_csv(&text).unwrap(), cache);
        assert!(text.starts_with("a,t_min,t_max,step\n3,0.001,100,0.01\n"));
        assert!(text.contains("1,0.9478863402470747,0,-2.1316282072803006e-14\n"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "a,t_min,t_max,step\n3,0.001,100,0.01\nj,t_j,branch,residual\n1,x,0,0\n";
        match ZeroCache::from_csv(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(ZeroCache::from_csv("nope").is_err());
        assert!(ZeroCache::from_csv("").is_err());
    }
}
