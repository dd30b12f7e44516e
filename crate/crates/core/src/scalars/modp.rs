//! Word-size modular arithmetic used for fast filters and for numeric
//! rank computations at specialised values of `q`.

/// `a * b mod p` without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero modulo {p}");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `k` largest primes below `2^62`, in decreasing order.  Used as the
/// default moduli for numeric checks.
pub fn large_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c: u64 = (1u64 << 62) - 1;
    while out.len() < k {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Reduce a big integer modulo `p`.
pub fn bigint_mod(x: &num_bigint::BigInt, p: u64) -> u64 {
    use num_bigint::Sign;
    let (sign, mag) = x.to_u64_digits();
    let mut r: u64 = 0;
    for &d in mag.iter().rev() {
        r = ((((r as u128) << 64) + d as u128) % p as u128) as u64;
    }
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Rank of a dense matrix over `F_p` (rows are consumed).
pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    rank_and_pivots_mod(&mut m, p).0
}

/// Row-reduces in place; returns the rank, the pivot columns in order, and
/// for each pivot the index of the original row that supplied it.
pub fn rank_and_pivots_mod(m: &mut [Vec<u64>], p: u64) -> (usize, Vec<usize>, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (0, vec![], vec![]);
    }
    let cols = m[0].len();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        order.swap(r, piv);
        let iv = inv_mod(m[r][c], p);
        for x in m[r][c..].iter_mut() {
            *x = mul_mod(*x, iv, p);
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row[c..].iter_mut().zip(prow[c..].iter()) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        pivot_rows.push(order[r]);
        r += 1;
    }
    (r, pivots, pivot_rows)
}

/// Determinant of a square matrix over `F_p`.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = sub_mod(0, det, p);
        }
        det = mul_mod(det, m[c][c], p);
        let iv = inv_mod(m[c][c], p);
        for i in c + 1..n {
            let f = mul_mod(m[i][c], iv, p);
            if f != 0 {
                for j in c..n {
                    let t = mul_mod(f, m[c][j], p);
                    m[i][j] = sub_mod(m[i][j], t, p);
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        let ps = large_primes(3);
        assert!(ps.iter().all(|&p| is_prime_u64(p)));
        assert!(ps[0] > ps[1]);
        let p = ps[0];
        assert_eq!(mul_mod(inv_mod(12345, p), 12345, p), 1);
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn small_rank_and_det() {
        let p = 101;
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(det_mod(vec![vec![0, 1], vec![1, 0]], p), 100);
        assert_eq!(bigint_mod(&num_bigint::BigInt::from(-3), p), 98);
    }
}
