//! Cyclotomic polynomials and fast modular divisibility filters.
//!
//! Every denominator met while expanding intertwining operators is a
//! product of a power of `q` and values `q^k - 1`, i.e. of cyclotomic
//! polynomials `Φ_d(q)`.  Keeping denominators in this factored form
//! avoids general polynomial gcds.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::modp::{is_prime_u64, pow_mod};

#[derive(Debug)]
pub struct CycloData {
    /// Coefficients of `Φ_d`, low degree first.
    pub coeffs: Vec<i64>,
    /// A prime `p ≡ 1 (mod d)` and a primitive `d`-th root of unity mod `p`;
    /// `Φ_d | f` implies `f(root) ≡ 0 (mod p)`.
    pub prime: u64,
    pub root: u64,
}

fn table() -> &'static RwLock<HashMap<u32, &'static CycloData>> {
    static T: OnceLock<RwLock<HashMap<u32, &'static CycloData>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

fn divisors(d: u32) -> Vec<u32> {
    (1..=d).filter(|k| d % k == 0).collect()
}

/// Divisors of `d` in increasing order; used to factor `q^d - 1`.
pub fn divisors_of(d: u32) -> Vec<u32> {
    divisors(d)
}

fn compute(d: u32) -> CycloData {
    // Φ_d = (x^d - 1) / Π_{k | d, k < d} Φ_k
    let mut num: Vec<i64> = vec![0; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for k in divisors(d) {
        if k == d {
            continue;
        }
        let den = &get(k).coeffs;
        num = div_monic_i64(&num, den);
    }
    let (prime, root) = root_data(d);
    CycloData { coeffs: num, prime, root }
}

fn div_monic_i64(a: &[i64], m: &[i64]) -> Vec<i64> {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    let mut quo = vec![0i64; a.len() - dm];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dm];
        rem[k + dm] = 0;
        for j in 0..dm {
            rem[k + j] -= c * m[j];
        }
        quo[k] = c;
    }
    assert!(rem.iter().all(|&c| c == 0), "cyclotomic division not exact");
    quo
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn root_data(d: u32) -> (u64, u64) {
    let d64 = d as u64;
    let mut k = ((1u64 << 61) / d64) as u64;
    loop {
        let p = k * d64 + 1;
        if is_prime_u64(p) {
            let pf = prime_factors(p - 1);
            // primitive root g, then g^((p-1)/d) has order exactly d
            let g = (2..)
                .find(|&g| pf.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
                .unwrap();
            return (p, pow_mod(g, (p - 1) / d64, p));
        }
        k -= 1;
    }
}

/// Cached data for `Φ_d`.
pub fn get(d: u32) -> &'static CycloData {
    assert!(d >= 1);
    if let Some(c) = table().read().unwrap().get(&d) {
        return c;
    }
    let data: &'static CycloData = Box::leak(Box::new(compute(d)));
    let mut w = table().write().unwrap();
    *w.entry(d).or_insert(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(get(1).coeffs, vec![-1, 1]);
        assert_eq!(get(2).coeffs, vec![1, 1]);
        assert_eq!(get(3).coeffs, vec![1, 1, 1]);
        assert_eq!(get(4).coeffs, vec![1, 0, 1]);
        assert_eq!(get(6).coeffs, vec![1, -1, 1]);
        assert_eq!(get(12).coeffs, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_has_exact_order() {
        for d in [1u32, 2, 5, 12] {
            let c = get(d);
            assert_eq!(pow_mod(c.root, d as u64, c.prime), 1);
            for k in 1..d as u64 {
                if (d as u64) % k == 0 {
                    assert_ne!(pow_mod(c.root, k, c.prime), 1);
                }
            }
        }
    }
}
