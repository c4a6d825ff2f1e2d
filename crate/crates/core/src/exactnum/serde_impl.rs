//! JSON shape: `{"order": N, "coeffs": ["a/b", ...], "approx_re": x, "approx_im": y}`.
//! Floats are rounded to 12 significant digits; the coefficients are authoritative.

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycloNumber, CycloReal, ExactError};

/// Round to 12 significant digits (and squash `-0.0`).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    order: u64,
    coeffs: Vec<String>,
    approx_re: f64,
    approx_im: f64,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let z = self.to_complex();
        // imaginary parts below the float noise floor are reported as 0
        let im = if z.im.abs() < 1e-13 { 0.0 } else { z.im };
        Wire {
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
            approx_re: round_sig12(z.re),
            approx_im: round_sig12(im),
        }
        .serialize(s)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    s.parse::<BigRational>()
        .map_err(|_| ExactError::BadCoefficient(s.to_string()))
}

/// `#[serde(with = "rational_string")]` for `BigRational` fields as `"a/b"`.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_rational(&raw).map_err(D::Error::custom)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycloNumber::from_coeffs(w.order, &coeffs).map_err(D::Error::custom)
    }
}

impl Serialize for CycloReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_cyclo().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        CycloReal::new(CycloNumber::deserialize(d)?).map_err(D::Error::custom)
    }
}
