//! One configuration layer shared by every subcommand. The serialized form is
//! printed into the header of every table and report.

use std::path::Path;

use conifold_hk::conformal::RhConfig;
use conifold_hk::hk::{HkConfig, OV_CUTOFF};
use conifold_hk::twistor::TwistorConfig;
use conifold_hk::{Budget, Complex64, Error};
use serde::{Deserialize, Serialize};

/// Environment variable naming a JSON settings file.
pub const CONFIG_ENV: &str = "CONIFOLD_HK_CONFIG";

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Settings {
    pub budget: Budget,
    pub hk: HkConfig,
    pub twistor: TwistorConfig,
    pub rh: RhConfig,
    pub seed: u64,
    /// Cutoff of the Ooguri–Vafa comparison; fixed, recorded for reference.
    #[serde(skip_deserializing)]
    pub ov_cutoff: [f64; 2],
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            budget: Budget::default(),
            hk: HkConfig::new(),
            twistor: TwistorConfig::new(),
            rh: RhConfig::default(),
            seed: DEFAULT_SEED,
            ov_cutoff: [OV_CUTOFF.re, OV_CUTOFF.im],
        }
    }
}

impl Settings {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("bad settings: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Single-line JSON, stable field order.
    pub fn header_json(&self) -> String {
        serde_json::to_string(self).expect("settings serialize")
    }
}

/// Parses `a+bi`, `a-bi`, `bi`, `a`, `i`, `-i` or `a,b`.
pub fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let bad = || Error::Domain(format!("cannot read '{s}' as a complex number"));
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((a, b)) = s.split_once(',') {
        let re = a.parse::<f64>().map_err(|_| bad())?;
        let im = b.parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = 0;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = k;
            break;
        }
    }
    let (re, im) = body.split_at(split);
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    Ok(Complex64::new(re, im))
}

/// A rectangular grid `re0:re1:n,im0:im1:m`, row-major in Im then Re.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub re: (f64, f64, usize),
    pub im: (f64, f64, usize),
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = || Error::Domain(format!("grid '{s}' is not re0:re1:n,im0:im1:m"));
        let axis = |a: &str| -> Result<(f64, f64, usize), Error> {
            let p: Vec<&str> = a.split(':').collect();
            if p.len() != 3 {
                return Err(bad());
            }
            let lo = p[0].trim().parse::<f64>().map_err(|_| bad())?;
            let hi = p[1].trim().parse::<f64>().map_err(|_| bad())?;
            let n = p[2].trim().parse::<usize>().map_err(|_| bad())?;
            if n == 0 || !lo.is_finite() || !hi.is_finite() {
                return Err(bad());
            }
            Ok((lo, hi, n))
        };
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(Grid { re: axis(a)?, im: axis(b)? })
    }

    pub fn points(&self) -> Vec<Complex64> {
        let coord = |(lo, hi, n): (f64, f64, usize), k: usize| {
            if n == 1 || k == 0 {
                lo
            } else if k == n - 1 {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.re.2 * self.im.2);
        for j in 0..self.im.2 {
            for i in 0..self.re.2 {
                out.push(Complex64::new(coord(self.re, i), coord(self.im, j)));
            }
        }
        out
    }
}
