//! Simultaneous root refinement (Aberth) with a posteriori inclusion disks.
//!
//! Disks use the Weierstrass corrections
//! `W_i = f(z_i) / (a_n prod_{j != i} (z_i - z_j))`: every connected union of
//! `k` disks `D(z_i, n |W_i|)` holds exactly `k` roots, so pairwise disjoint
//! disks isolate the roots one by one.

use super::fixed::{f64_to_fixed, fixed_to_f64, scaled_to_f64, Fx};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::TAU;

const U: f64 = f64::EPSILON / 2.0;
pub(crate) const START_BITS: u32 = 128;
pub(crate) const MAX_BITS: u32 = 16384;
/// Scale used when an `f64` approximation is stored as a [`ComplexApprox`].
const F64_SCALE: u32 = 1100;

/// A root `re + i im` known to lie within `radius` of the stored center.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    re: BigInt,
    im: BigInt,
    scale: u32,
    pub radius: f64,
}

impl ComplexApprox {
    pub fn re(&self) -> f64 {
        fixed_to_f64(&self.re, self.scale)
    }

    pub fn im(&self) -> f64 {
        fixed_to_f64(&self.im, self.scale)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re(), self.im())
    }

    /// Exact center as scaled integers `(re, im, k)` meaning `(re + i im) / 2^k`.
    pub fn exact_center(&self) -> (&BigInt, &BigInt, u32) {
        (&self.re, &self.im, self.scale)
    }

    pub fn abs(&self) -> f64 {
        self.center().norm()
    }

    /// Argument in `[0, 2pi)`.
    pub fn arg(&self) -> f64 {
        let a = self.im().atan2(self.re());
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }
}

pub(crate) fn coeffs_f64(f: &IntPoly) -> Option<Vec<f64>> {
    f.coeffs()
        .iter()
        .map(|c| {
            let v = c.to_i64()?;
            (v.unsigned_abs() < 1 << 53).then_some(v as f64)
        })
        .collect()
}

/// Starting points on a circle whose radius is the geometric mean of the
/// root moduli, rotated off the real axis.
fn initial_points(a: &[f64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let r = (a[0].abs() / a[n].abs()).powf(1.0 / n as f64);
    let r = if r.is_finite() && r > 0.0 { r } else { 1.0 };
    (0..n)
        .map(|k| Complex64::from_polar(r, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

fn horner_c64(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let n = a.len() - 1;
    let mut p = Complex64::new(a[n], 0.0);
    let mut dp = Complex64::zero();
    for k in (0..n).rev() {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    (p, dp)
}

/// Plain `f64` Aberth iteration; `None` if it does not settle.
pub(crate) fn aberth_f64(a: &[f64]) -> Option<Vec<Complex64>> {
    let n = a.len() - 1;
    let mut z = initial_points(a);
    if n == 1 {
        return Some(vec![Complex64::new(-a[0] / a[1], 0.0)]);
    }
    let mut settled = vec![false; n];
    for _ in 0..500 {
        let mut all = true;
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (p, dp) = horner_c64(a, z[i]);
            if p == Complex64::zero() {
                settled[i] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                settled[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Some(z);
        }
    }
    None
}

/// Inclusion radii for `f64` centers, with rounding errors of the `f64`
/// evaluation bounded explicitly; `None` when the disks overlap.
pub(crate) fn certify_f64(a: &[f64], z: &[Complex64]) -> Option<Vec<f64>> {
    let n = a.len() - 1;
    let gamma = {
        let k = (8 * n + 8) as f64 * U;
        k / (1.0 - k)
    };
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z[i];
        let za = zi.norm();
        let mut p = Complex64::new(a[n], 0.0);
        let mut abs_acc = a[n].abs();
        for k in (0..n).rev() {
            p = p * zi + a[k];
            abs_acc = abs_acc * za + a[k].abs();
        }
        let p_up = (p.norm() + gamma * abs_acc * (1.0 + gamma)) * (1.0 + 4.0 * U);
        let mut q = Complex64::new(1.0, 0.0);
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                q *= zi - zj;
            }
        }
        let q_low = q.norm() * (1.0 - gamma);
        if !(q_low > 0.0) || !p_up.is_finite() {
            return None;
        }
        radii.push(n as f64 * p_up / (a[n].abs() * q_low) * (1.0 + gamma));
    }
    disjoint_f64(z, &radii).then_some(radii)
}

fn disjoint_f64(z: &[Complex64], r: &[f64]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() * (1.0 - 8.0 * U) <= (r[i] + r[j]) * (1.0 + 8.0 * U) {
                return false;
            }
        }
    }
    r.iter().all(|x| x.is_finite())
}

/// `num / den` rounded up (`up = true`) or down, as `f64`.
fn ratio_f64(num: &BigInt, den: &BigInt, up: bool) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let k = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if k >= 0 {
        (num << k as usize) / den
    } else {
        num / (den << (-k) as usize)
    };
    let slack = if up { 1.0 + 4.0 * U } else { 1.0 - 4.0 * U };
    let q = if up { q + 1 } else { q };
    let v = scaled_to_f64(&q, -k) * slack;
    if up && v == 0.0 {
        // below the f64 range; any positive number is a valid upper bound here
        return f64::MIN_POSITIVE;
    }
    v
}

/// Exact inclusion radii for dyadic centers `z_i / 2^prec`.
pub(crate) fn certify_exact(a: &[BigInt], z: &[Fx], prec: u32) -> Option<Vec<f64>> {
    let n = a.len() - 1;
    let pk = prec as usize;
    let scale2 = BigInt::from(1) << (2 * pk);
    let mut radii = Vec::with_capacity(n);
    let nn = BigInt::from((n * n) as u64);
    let an2 = &a[n] * &a[n];
    for i in 0..n {
        // f(z) * 2^(prec n)
        let mut s = Fx::from_int(&a[n], 0);
        for m in (0..n).rev() {
            s = s.mul_exact(&z[i]);
            s.re += &a[m] << (pk * (n - m));
        }
        let mut q = Fx::from_int(&BigInt::from(1), 0);
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                q = q.mul_exact(&z[i].sub(zj));
            }
        }
        if q.is_zero() {
            return None;
        }
        let num = &nn * s.norm2();
        let den = &an2 * q.norm2() * &scale2;
        radii.push(ratio_f64(&num, &den, true).sqrt() * (1.0 + 4.0 * U));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = z[i].sub(&z[j]).norm2();
            let dist = ratio_f64(&d2, &scale2, false).sqrt() * (1.0 - 4.0 * U);
            if dist <= (radii[i] + radii[j]) * (1.0 + 4.0 * U) {
                return None;
            }
        }
    }
    Some(radii)
}

fn horner_fx(a: &[Fx], z: &Fx, prec: u32) -> (Fx, Fx) {
    let n = a.len() - 1;
    let mut p = a[n].clone();
    let mut dp = Fx::zero();
    for k in (0..n).rev() {
        dp = dp.mul(z, prec).add(&p);
        p = p.mul(z, prec).add(&a[k]);
    }
    (p, dp)
}

/// Aberth iteration in fixed point at `prec` bits, in place.
pub(crate) fn aberth_fixed(coeffs: &[BigInt], z: &mut [Fx], prec: u32) {
    let n = coeffs.len() - 1;
    let a: Vec<Fx> = coeffs.iter().map(|c| Fx::from_int(c, prec)).collect();
    let one = Fx::from_int(&BigInt::from(1), prec);
    // corrections below 2^-(prec - 16) count as converged
    let done_bits = 16u64;
    let mut settled = vec![false; n];
    for _ in 0..100 + prec as usize / 32 {
        let mut all = true;
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (p, dp) = horner_fx(&a, &z[i], prec);
            if p.is_zero() {
                settled[i] = true;
                continue;
            }
            let Some(ratio) = p.div(&dp, prec) else {
                // stationary point: nudge and retry
                z[i].re += BigInt::from(1) << (prec as usize / 2);
                all = false;
                continue;
            };
            let mut s = Fx::zero();
            for j in 0..n {
                if j != i {
                    if let Some(t) = one.div(&z[i].sub(&z[j]), prec) {
                        s = s.add(&t);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, prec));
            let w = ratio.div(&den, prec).unwrap_or(ratio);
            z[i] = z[i].sub(&w);
            if w.mag_bits() <= done_bits {
                settled[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return;
        }
    }
}

/// Certified roots of a squarefree polynomial at working precision `prec`,
/// refining `z` in place; `None` if the disks do not separate.
pub(crate) fn refine_at(coeffs: &[BigInt], z: &mut [Fx], prec: u32) -> Option<Vec<f64>> {
    aberth_fixed(coeffs, z, prec);
    certify_exact(coeffs, z, prec)
}

/// Fixed-point starting points, nudged apart so that no two coincide.
pub(crate) fn fixed_start(f: &IntPoly, prec: u32) -> Vec<Fx> {
    starting_points(f)
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let nudge = Complex64::from_polar(1e-9 * (1.0 + c.norm()), 1.0 + i as f64);
            Fx::from_c64(c + nudge, prec)
        })
        .collect()
}

pub(crate) fn starting_points(f: &IntPoly) -> Vec<Complex64> {
    let a: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| scaled_to_f64(c, 0))
        .collect();
    aberth_f64(&a).unwrap_or_else(|| initial_points(&a))
}

/// Escalating multiprecision refinement until every radius is at most `tol`.
pub(crate) fn roots_multiprecision(
    f: &IntPoly,
    tol: f64,
    start_bits: u32,
) -> Result<(Vec<Fx>, Vec<f64>, u32)> {
    let mut prec = start_bits;
    let mut z = fixed_start(f, prec);
    loop {
        if let Some(r) = refine_at(f.coeffs(), &mut z, prec) {
            if r.iter().all(|&x| x <= tol) {
                return Ok((z, r, prec));
            }
        }
        if prec >= MAX_BITS {
            return Err(Error::PrecisionExhausted {
                bits: prec as u64,
                detail: format!("root disks of {f} not certified below {tol:e}"),
            });
        }
        let next = prec * 2;
        z = z.iter().map(|w| w.rescale(prec, next)).collect();
        prec = next;
    }
}

pub fn complex_roots(f: &IntPoly, tolerance: f64) -> Result<Vec<ComplexApprox>> {
    if f.deg() == 0 {
        return invalid("roots of a constant polynomial");
    }
    if !(tolerance > 0.0) {
        return invalid("tolerance must be positive");
    }
    if !f.is_squarefree() {
        return invalid("polynomial is not squarefree");
    }
    if let Some(a) = coeffs_f64(f) {
        if let Some(z) = aberth_f64(&a) {
            if let Some(r) = certify_f64(&a, &z) {
                // conversion to the stored scale is exact for these magnitudes
                if r.iter().all(|&x| x <= tolerance) {
                    return Ok(z
                        .iter()
                        .zip(r)
                        .map(|(c, radius)| ComplexApprox {
                            re: f64_to_fixed(c.re, F64_SCALE),
                            im: f64_to_fixed(c.im, F64_SCALE),
                            scale: F64_SCALE,
                            radius,
                        })
                        .collect());
                }
            }
        }
    }
    let (z, r, prec) = roots_multiprecision(f, tolerance, START_BITS)?;
    Ok(z.into_iter()
        .zip(r)
        .map(|(c, radius)| ComplexApprox {
            re: c.re,
            im: c.im,
            scale: prec,
            radius,
        })
        .collect())
}

pub(crate) fn abs_bigint_f64(v: &BigInt) -> f64 {
    scaled_to_f64(&v.abs(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<ComplexApprox>) -> Vec<ComplexApprox> {
        v.sort_by(|a, b| (a.re(), a.im()).partial_cmp(&(b.re(), b.im())).unwrap());
        v
    }

    #[test]
    fn i_and_minus_i_to_high_precision() {
        let r = sorted(complex_roots(&IntPoly::from_i64s(&[1, 0, 1]), 1e-30).unwrap());
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|z| z.radius <= 1e-30));
        assert!((r[0].im() + 1.0).abs() < 1e-15 && (r[1].im() - 1.0).abs() < 1e-15);
        assert!(r[0].re().abs() < 1e-15);
    }

    #[test]
    fn golden_ratio_roots() {
        let r = sorted(complex_roots(&IntPoly::from_i64s(&[-1, -1, 1]), 1e-12).unwrap());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r[1].re() - phi).abs() < 1e-12);
        assert!((r[0].re() + 1.0 / phi).abs() < 1e-12);
    }

    #[test]
    fn clustered_roots_escalate() {
        // roots 1 and 1 + 2^-40
        let a = IntPoly::from_i64s(&[-1, 1]);
        let b = IntPoly::new(vec![-(BigInt::from(1u64 << 40) + 1u32), BigInt::from(1u64 << 40)]);
        let f = &a * &b;
        let r = sorted(complex_roots(&f, 1e-20).unwrap());
        assert!(r[0].radius <= 1e-20);
        assert!(r[1].re() > r[0].re());
    }

    #[test]
    fn rejects_repeated_roots() {
        assert!(complex_roots(&IntPoly::from_i64s(&[1, 2, 1]), 1e-9).is_err());
    }

    #[test]
    fn every_root_makes_the_value_small() {
        for c in [[3i64, -1, 0, 2, 1, -5, 1], [1, 1, 1, 1, 1, 1, 1], [-2, 0, 0, 0, 0, 0, 1]] {
            let f = IntPoly::from_i64s(&c);
            for z in complex_roots(&f, 1e-12).unwrap() {
                let a: Vec<f64> = c.iter().map(|&x| x as f64).collect();
                let (p, _) = horner_c64(&a, z.center());
                assert!(p.norm() < 1e-9, "{f}: {p}");
            }
        }
    }
}
