//! Dense univariate polynomials over `F_p`: interpolation, Euclidean
//! remainder sequences and rational-function reconstruction.  These are the
//! workhorses of the multimodular determinant and kernel computations.

use super::modp::{add_mod, inv_mod, mul_mod, sub_mod};

/// Coefficients low degree first; no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut r = 0u64;
    for &c in a.iter().rev() {
        r = add_mod(mul_mod(r, x, p), c, p);
    }
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut r: PolyP = (0..n)
        .map(|i| sub_mod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p))
        .collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add_mod(r[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut r);
    r
}

pub fn scale(a: &[u64], k: u64, p: u64) -> PolyP {
    let mut r: PolyP = a.iter().map(|&c| mul_mod(c, k, p)).collect();
    trim(&mut r);
    r
}

/// Quotient and remainder; `b` nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r: PolyP = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut qt = vec![0u64; r.len() - db];
    for k in (0..qt.len()).rev() {
        let c = mul_mod(r[k + db], lead_inv, p);
        qt[k] = c;
        if c != 0 {
            for j in 0..=db {
                r[k + j] = sub_mod(r[k + j], mul_mod(c, b[j], p), p);
            }
        }
    }
    trim(&mut r);
    trim(&mut qt);
    (qt, r)
}

/// Newton interpolation through `(xs[i], ys[i])`, returned in monomial
/// form.  The `xs` must be pairwise distinct modulo `p`.
pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> PolyP {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = sub_mod(c[i], c[i - 1], p);
            let den = sub_mod(xs[i], xs[i - j], p);
            c[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut poly: PolyP = vec![0u64; n.max(1)];
    for k in (0..n).rev() {
        // poly <- poly · (x - xs[k]) + c[k]
        let mut np = vec![0u64; n.max(1)];
        for i in 0..n.saturating_sub(1) {
            np[i + 1] = add_mod(np[i + 1], poly[i], p);
            np[i] = sub_mod(np[i], mul_mod(poly[i], xs[k], p), p);
        }
        np[0] = add_mod(np[0], c[k], p);
        poly = np;
    }
    trim(&mut poly);
    poly
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    match degree(&x) {
        Some(d) => scale(&x, inv_mod(x[d], p), p),
        None => x,
    }
}

/// Monic least common multiple of two nonzero polynomials.
pub fn lcm(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let g = gcd(a, b, p);
    let (q, _) = div_rem(&mul(a, b, p), &g, p);
    let d = degree(&q).expect("lcm of zero polynomial");
    scale(&q, inv_mod(q[d], p), p)
}

/// `Π (x - xs[i])`.
pub fn from_roots(xs: &[u64], p: u64) -> PolyP {
    let mut r: PolyP = vec![1];
    for &x in xs {
        r = mul(&r, &[sub_mod(0, x, p), 1], p);
    }
    r
}

/// Rational reconstruction: given `f mod m` find `n / d` with
/// `deg n < num_bound`, `deg d ≤ deg m - num_bound`, `d` monic and
/// `n ≡ d·f (mod m)`.  Returns `None` when no such pair exists or the
/// resulting `d` is not invertible modulo `m`.
pub fn rational_reconstruct(f: &[u64], m: &[u64], num_bound: usize, p: u64) -> Option<(PolyP, PolyP)> {
    let (mut r0, mut r1): (PolyP, PolyP) = (m.to_vec(), f.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut t0, mut t1): (PolyP, PolyP) = (vec![], vec![1]);
    while degree(&r1).map(|d| d + 1).unwrap_or(0) > num_bound {
        if r1.is_empty() {
            break;
        }
        let (qt, r) = div_rem(&r0, &r1, p);
        let t = sub(&t0, &mul(&qt, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let dm = degree(m)?;
    let dt = degree(&t1)?;
    if dt + num_bound > dm {
        return None;
    }
    // gcd(t, m) must be 1 for the reconstruction to be valid
    let mut a = m.to_vec();
    let mut b = t1.clone();
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    if degree(&a) != Some(0) {
        return None;
    }
    let li = inv_mod(t1[dt], p);
    Some((scale(&r1, li, p), scale(&t1, li, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_000_007;

    #[test]
    fn interpolation_round_trip() {
        let f: PolyP = vec![3, 0, 5, 7];
        let xs: Vec<u64> = (2..8).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| eval(&f, x, P)).collect();
        assert_eq!(interpolate(&xs, &ys, P), f);
    }

    #[test]
    fn division() {
        let a = mul(&[1, 2, 3], &[5, 1], P);
        let (q, r) = div_rem(&a, &[5, 1], P);
        assert_eq!(q, vec![1, 2, 3]);
        assert!(r.is_empty());
    }

    #[test]
    fn reconstructs_rational_function() {
        // (x^2 + 3) / (x - 1)(x + 2)
        let n: PolyP = vec![3, 0, 1];
        let d: PolyP = mul(&[P - 1, 1], &[2, 1], P);
        let xs: Vec<u64> = (3..13).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| mul_mod(eval(&n, x, P), inv_mod(eval(&d, x, P), P), P))
            .collect();
        let f = interpolate(&xs, &ys, P);
        let m = from_roots(&xs, P);
        let (rn, rd) = rational_reconstruct(&f, &m, 5, P).unwrap();
        assert_eq!(rd, d);
        assert_eq!(rn, n);
    }
}
