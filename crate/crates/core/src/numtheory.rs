//! Small integer helpers: divisors, Euler phi, Moebius, multiplicative order.

use num_integer::Integer;

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Divisors of `n` in decreasing order (the order used for d-vectors).
pub fn divisors_desc(n: u64) -> Vec<u64> {
    let mut v = divisors(n);
    v.reverse();
    v
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n > 0);
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).len() == 1 && factor(n)[0].1 == 1
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `k mod n` for signed `k`, in `0..n`.
pub fn modn(k: i64, n: u64) -> u64 {
    k.rem_euclid(n as i64) as u64
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(n as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(modn(e.x, n))
}

/// Order of `k` in the additive group Z/n, i.e. n / gcd(n, k).
pub fn additive_order(k: u64, n: u64) -> u64 {
    n / gcd(k % n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_divisors() {
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(divisors_desc(22), vec![22, 11, 2, 1]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn test_phi_mu() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(66), 20);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(22), 1);
    }

    #[test]
    fn test_inv_mod() {
        assert_eq!(inv_mod(3, 5), Some(2));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(7, 16), Some(7));
    }
}
