use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed};

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Every `N` with `phi(N) = d`. Since `phi(N) >= sqrt(N / 2)`, `N <= 2 d^2`.
pub fn totient_preimages(d: u64) -> Vec<u64> {
    (1..=2 * d * d).filter(|&n| euler_phi(n) == d).collect()
}

/// `x^e mod f` for monic `f`.
fn x_pow_mod(e: u64, f: &IntPoly) -> IntPoly {
    let mut acc = IntPoly::one();
    let mut base = IntPoly::monomial(1).divrem_monic(f).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &base).divrem_monic(f).1;
        }
        base = (&base * &base).divrem_monic(f).1;
        e >>= 1;
    }
    acc
}

/// Whether the roots of the irreducible `f` are roots of unity, decided by
/// exact divisibility `f | x^N - 1` over `phi(N) = deg f`.
pub fn is_torsion(f: &IntPoly) -> bool {
    let d = f.deg();
    if d == 0 {
        return false;
    }
    let f = if f.leading().is_negative() { -f } else { f.clone() };
    if !f.is_monic() || f.constant_term().abs() != BigInt::one() {
        return false;
    }
    totient_preimages(d as u64)
        .into_iter()
        .any(|n| x_pow_mod(n, &f) == IntPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(is_torsion(&IntPoly::from_i64s(&[1, 1, 1])));
        assert!(!is_torsion(&IntPoly::from_i64s(&[-1, -1, 1])));
        assert!(is_torsion(&IntPoly::from_i64s(&[-1, 1])));
        assert!(is_torsion(&IntPoly::from_i64s(&[1, 1])));
        // Phi_12 = x^4 - x^2 + 1
        assert!(is_torsion(&IntPoly::from_i64s(&[1, 0, -1, 0, 1])));
        assert!(!is_torsion(&IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])));
    }

    #[test]
    fn totients() {
        assert_eq!(totient_preimages(1), vec![1, 2]);
        assert_eq!(totient_preimages(4), vec![5, 8, 10, 12]);
        assert!(totient_preimages(3).is_empty());
    }
}
