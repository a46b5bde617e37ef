//! Elementary arithmetic functions: factorization, divisors, `σ` and `d`.

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A divisor together with its divisor count and divisor sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorInfo {
    pub value: u64,
    pub count: u64,
    pub sigma: u64,
}

/// All divisors of `n` with `d(l)` and `σ(l)` computed multiplicatively from
/// the factorization of `n`. Unordered.
pub fn divisors_with_info(n: u64) -> Vec<DivisorInfo> {
    let mut out = vec![DivisorInfo {
        value: 1,
        count: 1,
        sigma: 1,
    }];
    for (p, e) in factorize(n) {
        let base = out.len();
        let mut pk = 1u64;
        let mut sigma_pk = 1u64;
        for k in 1..=e {
            pk *= p;
            sigma_pk += pk;
            for idx in 0..base {
                let d = out[idx];
                out.push(DivisorInfo {
                    value: d.value * pk,
                    count: d.count * (k as u64 + 1),
                    sigma: d.sigma * sigma_pk,
                });
            }
        }
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = divisors_with_info(n).into_iter().map(|d| d.value).collect();
    ds.sort_unstable();
    ds
}

/// Sum of the positive divisors of `n`.
pub fn divisor_sigma(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (0..=e).map(|k| p.pow(k)).sum::<u64>())
        .product()
}

/// Number of positive divisors of `n`.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(_, e)| e as u64 + 1)
        .product()
}

/// `σ(n)` for all `0 ≤ n ≤ limit` (entry 0 is unused and zero).
pub fn sigma_sieve(limit: usize) -> Vec<u64> {
    let mut s = vec![0u64; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            s[m] += d as u64;
        }
    }
    s
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u64);
            for m in (n * n..=limit).step_by(n) {
                composite[m] = true;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sigma(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    fn naive_count(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).count() as u64
    }

    #[test]
    fn sigma_and_count_examples() {
        assert_eq!(divisor_sigma(1), 1);
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_sigma(6), 12);
        assert_eq!(divisor_count(12), 6);
        for p in [2u64, 3, 5, 7, 97, 7919] {
            assert_eq!(divisor_sigma(p), p + 1);
        }
    }

    #[test]
    fn agrees_with_naive() {
        let sieve = sigma_sieve(2000);
        for n in 1..=2000u64 {
            assert_eq!(divisor_sigma(n), naive_sigma(n));
            assert_eq!(divisor_count(n), naive_count(n));
            assert_eq!(sieve[n as usize], naive_sigma(n));
            let mut info = divisors_with_info(n);
            info.sort_by_key(|d| d.value);
            assert_eq!(info.len() as u64, naive_count(n));
            for d in info {
                assert_eq!(n % d.value, 0);
                assert_eq!(d.sigma, naive_sigma(d.value));
                assert_eq!(d.count, naive_count(d.value));
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert!(is_prime(4999));
        assert!(!is_prime(4997));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
