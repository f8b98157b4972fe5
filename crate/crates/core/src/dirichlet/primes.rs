//! Sieve, prime counting and trial-division factorization.

/// Primes `≤ limit` by the sieve of Eratosthenes (odd numbers only).
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // index i represents 2i + 1
    let half = (limit - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u64];
    out.extend((1..half).filter(|i| !composite[*i]).map(|i| (2 * i + 1) as u64));
    out
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    // p_k < k (ln k + ln ln k) for k >= 6
    let kf = k.max(6) as f64;
    let bound = (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 10;
    let mut ps = sieve(bound);
    ps.truncate(k);
    ps
}

const SIEVE_PI_LIMIT: u64 = 1 << 24;

/// `π(x)`, the number of primes `≤ x`.
///
/// Small arguments are counted by sieving; larger ones use the
/// Lucy–Hedgehog recursion over the values `⌊x/k⌋`, `O(x^{3/4})` time.
pub fn prime_pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    if x <= SIEVE_PI_LIMIT {
        return sieve(x).len() as u64;
    }
    let r = isqrt(x);
    // values x/1, x/2, ..., x/r followed by r-1 ... 1 (descending)
    let mut vals: Vec<u64> = (1..=r).map(|k| x / k).collect();
    let last = *vals.last().unwrap();
    vals.extend((1..last).rev());
    let idx = |v: u64| -> usize {
        if v <= r && v < last {
            vals_len_minus(v, &vals)
        } else {
            (x / v - 1) as usize
        }
    };
    let mut s: Vec<i64> = vals.iter().map(|v| *v as i64 - 1).collect();
    for p in 2..=r {
        let ip = idx(p);
        let ip1 = idx(p - 1);
        if s[ip] > s[ip1] {
            let sp = s[ip1];
            let p2 = p * p;
            for i in 0..vals.len() {
                let v = vals[i];
                if v < p2 {
                    break;
                }
                let j = idx(v / p);
                s[i] -= s[j] - sp;
            }
        }
    }
    s[0] as u64
}

fn vals_len_minus(v: u64, vals: &[u64]) -> usize {
    // small values are stored descending at the tail: vals[len - v] == v
    vals.len() - v as usize
}

pub(crate) fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Prime factorization `[(p, e)]` with ascending primes, by trial division
/// against `small` (which must contain every prime up to `√n`).
pub fn factorize(mut n: u64, small: &[u64]) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in small {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
