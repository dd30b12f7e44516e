//! Integer factorisation for the prime-power divisor search of the
//! non-vanishing test: trial division followed by Pollard–Brent rho.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::modp::is_prime_u64;

const SMALL_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin.  Deterministic below `3.3·10^24` (fixed bases up to 41);
/// above that, 32 additional seeded random bases are used.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    for b in SMALL_BASES {
        if (n % b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            return true;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == nm1 {
                return true;
            }
        }
        false
    };
    for b in SMALL_BASES {
        if !witness(&BigUint::from(b)) {
            return false;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..32 {
        let a = rng.gen_biguint_range(&BigUint::from(2u32), &nm1);
        if !witness(&a) {
            return false;
        }
    }
    true
}

fn rho(n: &BigUint, seed: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut rng = StdRng::seed_from_u64(seed);
    let c = rng.gen_biguint_range(&one, n);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = rng.gen_biguint_range(&one, n);
    let m = 128u32;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut qacc = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min((r - k) as u32) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                qacc = (qacc * diff) % n;
            }
            g = qacc.gcd(n);
            k += m as u64;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    for seed in 1.. {
        if let Some(d) = rho(&n, seed) {
            let e = &n / &d;
            split(d, out);
            split(e, out);
            return;
        }
    }
}

/// Prime factorisation of `|n|` as sorted `(prime, exponent)` pairs.
/// `n = 0` yields an empty list.
pub fn factor(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = vec![];
    if m.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p < 1 << 16 {
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.push((BigUint::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
        if BigUint::from(p) * BigUint::from(p) > m {
            break;
        }
    }
    let mut rest = vec![];
    if m > BigUint::one() {
        split(m, &mut rest);
    }
    rest.sort();
    for f in rest {
        match out.last_mut() {
            Some((q, e)) if *q == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out.sort();
    out
}

/// All prime powers `ℓ^k ≥ 2` dividing `n`, in increasing order.
pub fn prime_power_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![];
    for (p, e) in factor(n) {
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            out.push(BigInt::from(pk.clone()));
        }
    }
    out.sort();
    out
}

/// Prime powers `2 ≤ ℓ^k ≤ bound` dividing `n`, in increasing order.
///
/// Trial division covers every prime below `2^16`; the remaining cofactor
/// only has prime factors above `2^16`, so it is split by Pollard rho only
/// when `bound` reaches that range.
pub fn prime_power_divisors_upto(n: &BigInt, bound: &BigUint) -> Vec<BigInt> {
    let mut m = n.magnitude().clone();
    let mut out = vec![];
    if m.is_zero() {
        return out;
    }
    let push_powers = |p: &BigUint, e: u32, out: &mut Vec<BigInt>| {
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= p;
            if &pk > bound {
                break;
            }
            out.push(BigInt::from(pk.clone()));
        }
    };
    let mut p = 2u32;
    while p < 1 << 16 && !m.is_one() {
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            push_powers(&BigUint::from(p), e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() && *bound >= BigUint::from(1u32 << 16) {
        let mut rest = vec![];
        split(m, &mut rest);
        rest.sort();
        let mut i = 0;
        while i < rest.len() {
            let mut j = i;
            while j < rest.len() && rest[j] == rest[i] {
                j += 1;
            }
            push_powers(&rest[i], (j - i) as u32, &mut out);
            i = j;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_and_large() {
        let f = factor(&BigInt::from(-360));
        assert_eq!(
            f,
            vec![(BigUint::from(2u32), 3), (BigUint::from(3u32), 2), (BigUint::from(5u32), 1)]
        );
        // product of two ~40-bit primes
        let next_prime = |mut n: u64| {
            while !is_prime_u64(n) {
                n += 1;
            }
            n
        };
        let a = BigUint::from(next_prime(1 << 40));
        let b = BigUint::from(next_prime((1 << 40) + 1000));
        assert!(is_probable_prime(&a) && is_probable_prime(&b));
        let f = factor(&BigInt::from(&a * &b));
        assert_eq!(f, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn prime_power_list() {
        let d: Vec<i64> = prime_power_divisors(&BigInt::from(72)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 3, 4, 8, 9]);
        assert!(prime_power_divisors(&BigInt::from(1)).is_empty());
        let d: Vec<i64> = prime_power_divisors_upto(&BigInt::from(72), &BigUint::from(8u32))
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![2, 3, 4, 8]);
    }
}
