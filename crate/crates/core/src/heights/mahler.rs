use super::roots::{abs_bigint_f64, aberth_f64, certify_f64, coeffs_f64, fixed_start, refine_at, roots_multiprecision, START_BITS};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPoly;
use num_complex::Complex64;

/// Default absolute tolerance on the height.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const U: f64 = f64::EPSILON / 2.0;

/// Mahler measure and Weil height with absolute error bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightEstimate {
    pub degree: usize,
    pub log_mahler: f64,
    pub log_mahler_error: f64,
    pub mahler: f64,
    pub mahler_error: f64,
    pub height: f64,
    pub height_error: f64,
}

impl HeightEstimate {
    fn from_log(degree: usize, log_m: f64, err: f64) -> Self {
        let mahler = log_m.exp();
        Self {
            degree,
            log_mahler: log_m,
            log_mahler_error: err,
            mahler,
            mahler_error: mahler * err.exp_m1() + 2.0 * U * mahler,
            height: log_m / degree as f64,
            height_error: err / degree as f64 + 2.0 * U * log_m.abs(),
        }
    }

    /// Interval `[lo, hi]` guaranteed to contain `log M`.
    pub fn log_mahler_bounds(&self) -> (f64, f64) {
        (self.log_mahler - self.log_mahler_error, self.log_mahler + self.log_mahler_error)
    }

    pub fn height_bounds(&self) -> (f64, f64) {
        (self.height - self.height_error, self.height + self.height_error)
    }
}

/// `sum log max(1, |alpha_i|)` over disks `(z_i, r_i)`, as (midpoint, half-width).
fn log_outside(z: &[Complex64], r: &[f64]) -> (f64, f64) {
    let (mut lo, mut hi) = (0.0, 0.0);
    for (c, &rad) in z.iter().zip(r) {
        let a = c.norm();
        let w = rad + 4.0 * U * a;
        lo += (a - w).max(1.0).ln();
        hi += (a + w).max(1.0).ln();
    }
    let slack = 4.0 * (z.len() + 2) as f64 * U * (hi + 1.0);
    ((lo + hi) / 2.0, (hi - lo) / 2.0 + slack)
}

/// `log M` of a squarefree polynomial, with its error bound.
fn log_mahler_squarefree(f: &IntPoly, tol: f64) -> Result<(f64, f64)> {
    let lead = abs_bigint_f64(&f.leading()).ln();
    if f.deg() == 1 {
        let m = abs_bigint_f64(&f.coeff(0)).max(abs_bigint_f64(&f.coeff(1)));
        return Ok((m.ln(), 4.0 * U * m.ln().abs()));
    }
    if let Some(a) = coeffs_f64(f) {
        if let Some(z) = aberth_f64(&a) {
            if let Some(r) = certify_f64(&a, &z) {
                let (mid, err) = log_outside(&z, &r);
                if err <= tol {
                    return Ok((lead + mid, err + 4.0 * U * lead));
                }
            }
        }
    }
    // radius tolerance chosen so that the log error lands below tol
    let mut radius_tol = tol / (4.0 * f.deg() as f64);
    loop {
        let (z, r, prec) = roots_multiprecision(f, radius_tol, START_BITS)?;
        let centers: Vec<Complex64> = z.iter().map(|w| w.to_c64(prec)).collect();
        let (mid, err) = log_outside(&centers, &r);
        if err <= tol {
            return Ok((lead + mid, err + 4.0 * U * lead));
        }
        if radius_tol < 1e-300 {
            return Err(Error::PrecisionExhausted {
                bits: prec as u64,
                detail: format!("Mahler measure of {f} not resolved to {tol:e}"),
            });
        }
        radius_tol /= 1024.0;
    }
}

/// `log M` for any nonzero polynomial, splitting off repeated factors.
fn log_mahler(f: &IntPoly, tol: f64) -> Result<(f64, f64)> {
    let g = f.strip_zero_roots();
    if g.deg() == 0 {
        return Ok((abs_bigint_f64(&g.leading()).ln(), 0.0));
    }
    let common = g.gcd(&g.derivative());
    if common.deg() == 0 {
        return log_mahler_squarefree(&g, tol);
    }
    // roots of g are those of g/common together with those of common
    let sq = g
        .primitive_part()
        .div_exact(&common)
        .ok_or_else(|| Error::Internal("gcd does not divide".into()))?;
    let (a, ea) = log_mahler_squarefree(&sq, tol / 2.0)?;
    let (b, eb) = log_mahler(&common, tol / 2.0)?;
    let lc = |h: &IntPoly| abs_bigint_f64(&h.leading()).ln();
    Ok((lc(&g) + (a - lc(&sq)) + (b - lc(&common)), ea + eb))
}

pub fn mahler_height(f: &IntPoly) -> Result<HeightEstimate> {
    mahler_height_tol(f, DEFAULT_TOLERANCE)
}

/// As [`mahler_height`], with `tolerance` bounding the error of `h`.
pub fn mahler_height_tol(f: &IntPoly, tolerance: f64) -> Result<HeightEstimate> {
    if f.deg() == 0 {
        return invalid("height of a constant polynomial");
    }
    if !(tolerance > 0.0) {
        return invalid("tolerance must be positive");
    }
    let d = f.deg();
    let (lm, err) = log_mahler(f, tolerance * d as f64)?;
    Ok(HeightEstimate::from_log(d, lm, err))
}

/// Mahler measure from a single multiprecision pass at `bits` of working
/// precision, with no escalation. Used to audit the reported error bounds.
pub fn mahler_height_at_precision(f: &IntPoly, bits: u32) -> Result<HeightEstimate> {
    let g = f.strip_zero_roots();
    if g.deg() < 1 || !g.is_squarefree() {
        return invalid("fixed-precision evaluation needs a squarefree polynomial of degree >= 1");
    }
    let mut z = fixed_start(&g, bits);
    let r = refine_at(g.coeffs(), &mut z, bits).ok_or(Error::PrecisionExhausted {
        bits: bits as u64,
        detail: "root disks overlap".into(),
    })?;
    let centers: Vec<Complex64> = z.iter().map(|w| w.to_c64(bits)).collect();
    let (mid, err) = log_outside(&centers, &r);
    let lead = abs_bigint_f64(&g.leading()).ln();
    Ok(HeightEstimate::from_log(f.deg(), lead + mid, err + 4.0 * U * lead))
}

/// Fast `log M` for scans: the certified `f64` path only, `None` if it does
/// not certify. Zero roots are ignored; the input must be squarefree.
pub fn log_mahler_fast(coeffs: &[i64]) -> Option<(f64, f64)> {
    let k = coeffs.iter().take_while(|&&c| c == 0).count();
    let a: Vec<f64> = coeffs[k..].iter().map(|&c| c as f64).collect();
    let n = a.len().checked_sub(1)?;
    let lead = a[n].abs().ln();
    if n == 0 {
        return Some((lead, 0.0));
    }
    if n == 1 {
        let m = a[0].abs().max(a[1].abs());
        return Some((m.ln(), 4.0 * U * m.ln()));
    }
    let z = aberth_f64(&a)?;
    let r = certify_f64(&a, &z)?;
    let (mid, err) = log_outside(&z, &r);
    Some((lead + mid, err + 4.0 * U * lead))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(c: &[i64]) -> HeightEstimate {
        mahler_height(&IntPoly::from_i64s(c)).unwrap()
    }

    #[test]
    fn examples() {
        let e = h(&[-2, 1]);
        assert!((e.mahler - 2.0).abs() < 1e-12 && (e.height - 2f64.ln()).abs() < 1e-12);
        for d in 1..=20 {
            let mut c = vec![0i64; d + 1];
            c[0] = -2;
            c[d] = 1;
            let e = h(&c);
            assert!((e.height - 2f64.ln() / d as f64).abs() < 1e-9, "d = {d}");
            assert!(e.height_error <= DEFAULT_TOLERANCE);
        }
        assert!(h(&[1, 1, 1]).height.abs() < 1e-12);
        let schinzel = 0.240605912529801723748879456712;
        assert!((h(&[-1, -1, 1]).height - schinzel).abs() < 1e-12);
    }

    #[test]
    fn lehmer_polynomial() {
        let e = h(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!((e.mahler - 1.176280818259917506544070338474035050693).abs() < 1e-12);
        assert!((e.height - 0.01623576120077381394321988035549658077079).abs() < 1e-12);
    }

    #[test]
    fn repeated_and_zero_roots() {
        // M((x^2 - x - 1)^2 x) = M(x^2 - x - 1)^2
        let g = IntPoly::from_i64s(&[-1, -1, 1]);
        let f = &(&g * &g) * &IntPoly::from_i64s(&[0, 1]);
        let e = mahler_height(&f).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e.mahler - phi * phi).abs() < 1e-10);
    }

    #[test]
    fn fast_path_matches() {
        let (lm, err) = log_mahler_fast(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).unwrap();
        assert!((lm - 1.176280818259917506544070338474035050693f64.ln()).abs() <= err + 1e-15);
        assert!(err < 1e-12);
    }

    #[test]
    fn fixed_precision_agrees_with_default() {
        let f = IntPoly::from_i64s(&[3, -1, 4, 1, -5, 9, 2]);
        let a = mahler_height_at_precision(&f, 128).unwrap();
        let b = mahler_height(&f).unwrap();
        assert!((a.mahler - b.mahler).abs() <= a.mahler_error + b.mahler_error);
    }
}
