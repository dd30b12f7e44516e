//! Dense integer polynomials in one variable, stored low degree first.
//! These are the numerators of [`crate::scalars::qfunc::QFunc`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn is_zero(p: &[BigInt]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut r: ZPoly = long.to_vec();
    for (x, y) in r.iter_mut().zip(short) {
        *x += y;
    }
    trim(&mut r);
    r
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.to_vec();
    if r.len() < b.len() {
        r.resize(b.len(), BigInt::zero());
    }
    for (x, y) in r.iter_mut().zip(b) {
        *x -= y;
    }
    trim(&mut r);
    r
}

pub fn neg(a: &[BigInt]) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

pub fn scale(a: &[BigInt], k: &BigInt) -> ZPoly {
    if k.is_zero() {
        return vec![];
    }
    a.iter().map(|c| c * k).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[i + j] += x * y;
            }
        }
    }
    trim(&mut r);
    r
}

/// Multiply by a polynomial with machine-size coefficients.
pub fn mul_small(a: &[BigInt], b: &[i64]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                r[i + j] += x * y;
            }
        }
    }
    trim(&mut r);
    r
}

/// Multiply by `x^k`.
pub fn shift(a: &[BigInt], k: usize) -> ZPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); k];
    r.extend_from_slice(a);
    r
}

/// Exact division by a monic polynomial with small coefficients.
/// Returns `None` when the remainder is nonzero.
pub fn div_exact_monic(a: &[BigInt], m: &[i64]) -> Option<ZPoly> {
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() <= dm {
        return None;
    }
    let mut rem: ZPoly = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - dm];
    for k in (0..quo.len()).rev() {
        let c = std::mem::take(&mut rem[k + dm]);
        if c.is_zero() {
            continue;
        }
        for (j, &mj) in m[..dm].iter().enumerate() {
            if mj != 0 {
                rem[k + j] -= &c * mj;
            }
        }
        quo[k] = c;
    }
    if rem[..dm].iter().all(|c| c.is_zero()) {
        trim(&mut quo);
        Some(quo)
    } else {
        None
    }
}

/// Nonnegative gcd of all coefficients (zero for the zero polynomial).
pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

pub fn div_scalar_exact(a: &[BigInt], k: &BigInt) -> ZPoly {
    a.iter().map(|c| c / k).collect()
}

pub fn eval_mod(a: &[BigInt], x: u64, p: u64) -> u64 {
    use super::modp::{add_mod, bigint_mod, mul_mod};
    let mut r = 0u64;
    for c in a.iter().rev() {
        r = add_mod(mul_mod(r, x, p), bigint_mod(c, p), p);
    }
    r
}

pub fn eval_big(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut r = BigInt::zero();
    for c in a.iter().rev() {
        r = r * x + c;
    }
    r
}

/// Largest absolute coefficient bit length (0 for zero).
pub fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        assert_eq!(div_exact_monic(&z(&[-1, 0, 1]), &[-1, 1]), Some(z(&[1, 1])));
        assert_eq!(div_exact_monic(&z(&[1, 0, 1]), &[-1, 1]), None);
    }

    #[test]
    fn products() {
        assert_eq!(mul(&z(&[1, 1]), &z(&[-1, 1])), z(&[-1, 0, 1]));
        assert_eq!(content(&z(&[4, 6, -8])), BigInt::from(2));
        assert_eq!(eval_big(&z(&[1, 2, 3]), &BigInt::from(2)), BigInt::from(17));
    }
}
