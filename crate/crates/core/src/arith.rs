//! Integer and multiplicative groundwork: sieve of the von Mangoldt function,
//! Moebius mu, Euler totient phi, and trial-division factorization.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Von Mangoldt values for 2 <= n <= bound, stored sparsely: only prime powers
/// appear, as `(n, log p)`. `Lambda(p^m)` reuses the identical stored `log p`
/// of the base prime, so equal values compare bitwise equal.
#[derive(Debug, Clone)]
pub struct PrimePowerTable {
    bound: u64,
    entries: Vec<(u64, f64)>,
}

impl PrimePowerTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Sparse entries `(n, Lambda(n))` in ascending n.
    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    /// Lambda(n); zero off prime powers or out of range.
    pub fn lambda(&self, n: u64) -> f64 {
        match self.entries.binary_search_by_key(&n, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }

    /// Entries with n <= x.
    pub fn up_to(&self, x: f64) -> &[(u64, f64)] {
        let cut = self.entries.partition_point(|e| (e.0 as f64) <= x);
        &self.entries[..cut]
    }
}

/// Sieve Lambda(n) for all n <= bound.
pub fn sieve_lambda(bound: u64) -> Result<PrimePowerTable> {
    if bound < 2 {
        return Err(Error::domain(format!("sieve bound {bound} < 2")));
    }
    let primes = sieve_primes(bound);
    let mut entries = Vec::new();
    for &p in &primes {
        let logp = (p as f64).ln();
        let mut pk = p;
        loop {
            entries.push((pk, logp));
            match pk.checked_mul(p) {
                Some(next) if next <= bound => pk = next,
                _ => break,
            }
        }
    }
    entries.sort_unstable_by_key(|e| e.0);
    Ok(PrimePowerTable { bound, entries })
}

/// Primes up to `bound` by a plain sieve of Eratosthenes.
pub fn sieve_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    // covers trial division of any n <= 2^32; larger n fall through to the wheel
    PRIMES.get_or_init(|| sieve_primes(1 << 16))
}

/// An integer with its prime factorization, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }
}

/// Factor n >= 1 by trial division over a precomputed prime list.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::domain("factorize(0)"));
    }
    let mut rem = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        if p * p > rem {
            break;
        }
        if rem % p == 0 {
            let mut e = 0u32;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // beyond the table: 6k+-1 wheel (needed only for n > 2^32)
    let mut p = {
        let last = *small_primes().last().unwrap();
        last - last % 6 + 1
    };
    while p * p <= rem {
        for q in [p, p + 4] {
            if q * q > rem {
                break;
            }
            if rem % q == 0 {
                let mut e = 0u32;
                while rem % q == 0 {
                    rem /= q;
                    e += 1;
                }
                factors.push((q, e));
            }
        }
        p += 6;
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    factors.sort_unstable();
    Ok(FactoredInteger { n, factors })
}

/// Moebius function.
pub fn mobius(q: u64) -> Result<i32> {
    if q == 0 {
        return Err(Error::domain("mobius(0)"));
    }
    let f = factorize(q)?;
    if f.factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Euler totient.
pub fn totient(q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::domain("totient(0)"));
    }
    let f = factorize(q)?;
    let mut phi = q;
    for &(p, _) in &f.factors {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_small() {
        let t = sieve_lambda(10).unwrap();
        let pp: Vec<u64> = t.entries().iter().map(|e| e.0).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(t.lambda(8), 2f64.ln());
        assert_eq!(t.lambda(6), 0.0);
        // p^m stores bitwise the same log p as p
        assert_eq!(t.lambda(4).to_bits(), t.lambda(2).to_bits());
        assert_eq!(t.lambda(9).to_bits(), t.lambda(3).to_bits());
    }

    #[test]
    fn lambda_smallest() {
        let t = sieve_lambda(2).unwrap();
        assert_eq!(t.entries(), &[(2, 2f64.ln())]);
        assert!(sieve_lambda(1).is_err());
    }

    #[test]
    fn lambda_count_vs_trial_division() {
        // independent oracle: trial-division prime-power test
        let bound = 1_000_000u64;
        let t = sieve_lambda(bound).unwrap();
        let mut count = 0usize;
        for n in 2..=bound {
            let f = factorize(n).unwrap();
            if f.factors.len() == 1 {
                count += 1;
            }
        }
        assert_eq!(t.entries().len(), count);
    }

    #[test]
    fn lambda_matches_factorization() {
        let t = sieve_lambda(100_000).unwrap();
        for n in 2..=100_000u64 {
            let f = factorize(n).unwrap();
            let expect = if f.factors.len() == 1 {
                (f.factors[0].0 as f64).ln()
            } else {
                0.0
            };
            assert_eq!(t.lambda(n), expect, "n={n}");
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(5).unwrap(), 4);
        // brute-force oracle for phi(100)
        let brute = (1..=100).filter(|&a| gcd(a, 100) == 1).count() as u64;
        assert_eq!(totient(100).unwrap(), brute);
        assert_eq!(brute, 40);
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(9991).unwrap().factors, vec![(97, 1), (103, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn divisor_sum_identities() {
        // sum_{d|q} mu(d) = [q=1]; sum_{d|q} phi(d) = q
        for q in 1..=10_000u64 {
            let mut mu_sum = 0i64;
            let mut phi_sum = 0u64;
            let mut d = 1;
            while d * d <= q {
                if q % d == 0 {
                    mu_sum += mobius(d).unwrap() as i64;
                    phi_sum += totient(d).unwrap();
                    let e = q / d;
                    if e != d {
                        mu_sum += mobius(e).unwrap() as i64;
                        phi_sum += totient(e).unwrap();
                    }
                }
                d += 1;
            }
            assert_eq!(mu_sum, if q == 1 { 1 } else { 0 }, "q={q}");
            assert_eq!(phi_sum, q, "q={q}");
        }
    }
}
