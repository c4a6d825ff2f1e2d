use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::trig::{cos_frac, inv_sin_frac, sin_frac};
use crate::exactnum::CycloReal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("need 0 < n < m, got n = {n}, m = {m}")]
    OutOfRange { n: u64, m: u64 },
    #[error("n and m must be coprime (gcd({n}, {m}) = {gcd})")]
    NotCoprime { n: u64, m: u64, gcd: u64 },
}

/// `n` odd: `2m` sheets and two solution series. `n` even: `m` sheets, one series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
        })
    }
}

/// The angle `θ = nπ/m` with `0 < n < m` coprime.
///
/// All θ-dependent values for one parameter live in `ℚ(ζ_{4m})`, since every
/// angle that occurs is an integer multiple of `θ/2 = nπ/(2m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParam", into = "RawParam")]
pub struct ThetaParam {
    // field order gives the (m, n) sort used everywhere
    m: u64,
    n: u64,
}

#[derive(Serialize, Deserialize)]
struct RawParam {
    n: u64,
    m: u64,
}

impl TryFrom<RawParam> for ThetaParam {
    type Error = ParamError;
    fn try_from(r: RawParam) -> Result<Self, ParamError> {
        ThetaParam::new(r.n, r.m)
    }
}

impl From<ThetaParam> for RawParam {
    fn from(p: ThetaParam) -> Self {
        RawParam { n: p.n, m: p.m }
    }
}

impl ThetaParam {
    pub fn new(n: u64, m: u64) -> Result<Self, ParamError> {
        if n == 0 || n >= m {
            return Err(ParamError::OutOfRange { n, m });
        }
        let gcd = n.gcd(&m);
        if gcd != 1 {
            return Err(ParamError::NotCoprime { n, m, gcd });
        }
        Ok(ThetaParam { m, n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn case(&self) -> CaseTag {
        if self.n % 2 == 1 {
            CaseTag::Case1
        } else {
            CaseTag::Case2
        }
    }

    /// Cyclotomic order `4m` of the working field.
    pub fn order(&self) -> u64 {
        4 * self.m
    }

    /// Number of sheets of a finite-sheeted function: `2m` or `m`.
    pub fn sheet_count(&self) -> u64 {
        match self.case() {
            CaseTag::Case1 => 2 * self.m,
            CaseTag::Case2 => self.m,
        }
    }

    pub fn theta(&self) -> f64 {
        self.n as f64 * std::f64::consts::PI / self.m as f64
    }

    /// `sin(jθ/2)`.
    pub fn sin_half(&self, j: i64) -> CycloReal {
        sin_frac(j * self.n as i64, self.m)
    }

    /// `cos(jθ/2)`.
    pub fn cos_half(&self, j: i64) -> CycloReal {
        cos_frac(j * self.n as i64, self.m)
    }

    /// `1 / sin(jθ/2)`, `None` when the sine vanishes.
    pub fn inv_sin_half(&self, j: i64) -> Option<CycloReal> {
        inv_sin_frac(j * self.n as i64, self.m)
    }

    /// `sin(kθ)`.
    pub fn sin(&self, k: i64) -> CycloReal {
        self.sin_half(2 * k)
    }

    /// `q = 2(1 + cos θ)`.
    pub fn q(&self) -> CycloReal {
        let two = CycloReal::from_integer(self.order(), 2);
        &two + &self.cos_half(2).scale_int(2)
    }

    /// `q` as a float, without going through the exact value.
    pub fn q_f64(&self) -> f64 {
        2.0 * (1.0 + self.theta().cos())
    }
}

impl fmt::Display for ThetaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.n, self.m)
    }
}

/// All coprime `(n, m)` with `0 < n < m <= max_m`, sorted by `(m, n)`.
pub fn coprime_params(max_m: u64) -> Vec<ThetaParam> {
    (2..=max_m)
        .flat_map(|m| (1..m).filter_map(move |n| ThetaParam::new(n, m).ok()))
        .collect()
}
