//! Complex numbers as pairs of integers scaled by `2^prec`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Fx {
    pub re: BigInt,
    pub im: BigInt,
}

pub(crate) fn f64_to_fixed(x: f64, prec: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let mant = if exp == 0 { frac << 1 } else { frac | (1 << 52) };
    let shift = exp - 1075 + prec as i64;
    let m = BigInt::from(mant);
    let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// `v * 2^-prec`, rounded to nearest in the leading 64 bits.
pub(crate) fn fixed_to_f64(v: &BigInt, prec: u32) -> f64 {
    scaled_to_f64(v, -(prec as i64))
}

/// `v * 2^e` as `f64`.
pub(crate) fn scaled_to_f64(v: &BigInt, e: i64) -> f64 {
    let b = v.bits() as i64;
    let (top, e) = if b > 64 {
        (v >> (b - 64) as usize, e + b - 64)
    } else {
        (v.clone(), e)
    };
    ldexp(top.to_f64().unwrap_or(0.0), e)
}

pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Fx {
    pub fn zero() -> Self {
        Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        Fx {
            re: f64_to_fixed(z.re, prec),
            im: f64_to_fixed(z.im, prec),
        }
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Fx {
            re: v << prec as usize,
            im: BigInt::zero(),
        }
    }

    pub fn to_c64(&self, prec: u32) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, prec), fixed_to_f64(&self.im, prec))
    }

    /// Same value at a higher scale.
    pub fn rescale(&self, from: u32, to: u32) -> Self {
        let k = (to - from) as usize;
        Fx {
            re: &self.re << k,
            im: &self.im << k,
        }
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Unscaled product (the scale of the result is the sum of scales).
    pub fn mul_exact(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn mul(&self, o: &Fx, prec: u32) -> Fx {
        let p = self.mul_exact(o);
        Fx {
            re: p.re >> prec as usize,
            im: p.im >> prec as usize,
        }
    }

    pub fn div(&self, o: &Fx, prec: u32) -> Option<Fx> {
        let den = o.norm2();
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << prec as usize;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec as usize;
        Some(Fx {
            re: re / &den,
            im: im / &den,
        })
    }

    pub fn norm2(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Bit length of the larger component.
    pub fn mag_bits(&self) -> u64 {
        self.re.abs().bits().max(self.im.abs().bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [1.5, -0.1, 3.0e-12, 123456.789, -2.0f64.powi(-60)] {
            assert_eq!(fixed_to_f64(&f64_to_fixed(x, 200), 200), x);
        }
        assert_eq!(fixed_to_f64(&(BigInt::from(3) << 5000usize), 5000), 3.0);
    }

    #[test]
    fn division_inverts_multiplication() {
        let p = 100;
        let a = Fx::from_c64(Complex64::new(1.25, -3.0), p);
        let b = Fx::from_c64(Complex64::new(-0.5, 2.0), p);
        let q = a.mul(&b, p).div(&b, p).unwrap();
        let d = q.sub(&a);
        assert!(d.mag_bits() < 8);
    }
}
