//! Double-double evaluation of cyclotomic numbers.
//!
//! Reduced coefficients can be large while the value is small, so plain
//! `f64` sums lose `Σ|c_k|·ε`. Roots of unity are refined to ~1e-30 by one
//! Newton step on `z^N = 1`, and sums run in double-double; only the final
//! result is rounded to `f64`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn from_i64(c: i64) -> Self {
        let hi = c as f64;
        // |c - hi| < 2^11, exact in f64
        let lo = (c as i128 - hi as i128) as f64;
        quick_two_sum(hi, lo)
    }

    pub(crate) fn from_bigint(c: &BigInt) -> Self {
        let hi = c.to_f64().unwrap_or(0.0);
        if !hi.is_finite() {
            return Dd::new(hi);
        }
        let rest = BigInt::from_f64(hi).map_or(0.0, |h| (c - h).to_f64().unwrap_or(0.0));
        quick_two_sum(hi, rest)
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::new(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::new(q2)).neg());
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::new(q3))
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    pub(crate) const ZERO: DdComplex = DdComplex { re: Dd::ZERO, im: Dd::ZERO };

    fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn powu(self, mut e: u64) -> DdComplex {
        let mut base = self;
        let mut acc = DdComplex { re: Dd::new(1.0), im: Dd::ZERO };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// `self + c·z`.
    pub(crate) fn add_scaled(self, c: Dd, z: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(c.mul(z.re)),
            im: self.im.add(c.mul(z.im)),
        }
    }

    pub(crate) fn div_real(self, d: Dd) -> DdComplex {
        DdComplex { re: self.re.div(d), im: self.im.div(d) }
    }

    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// `exp(2πik/n)` to double-double accuracy.
pub(crate) fn root_of_unity_dd(k: u64, n: u64) -> DdComplex {
    let angle = std::f64::consts::TAU * (k % n) as f64 / n as f64;
    let z0 = DdComplex { re: Dd::new(angle.cos()), im: Dd::new(angle.sin()) };
    // Newton on z^n - 1: z1 = z0 - (z0^n - 1) / (n z0^{n-1}), and
    // z0^{-(n-1)} ≈ z0 to f64 accuracy, which suffices for the tiny step
    let r = z0.powu(n);
    let (rr, ri) = (r.re.add(Dd::new(-1.0)).to_f64(), r.im.to_f64());
    let (zr, zi) = (z0.re.hi, z0.im.hi);
    let step_re = (rr * zr - ri * zi) / n as f64;
    let step_im = (rr * zi + ri * zr) / n as f64;
    DdComplex {
        re: z0.re.add(Dd::new(-step_re)),
        im: z0.im.add(Dd::new(-step_im)),
    }
}
