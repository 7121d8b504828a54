//! Small number-theory helpers.

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization with primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn next_prime_at_least(n: usize) -> usize {
    (n.max(2)..).find(|&k| is_prime(k)).unwrap()
}

/// True if every prime factor of `n` lies in `primes`.
pub fn is_pi_number(n: usize, primes: &[usize]) -> bool {
    factorize(n).iter().all(|(p, _)| primes.contains(p))
}

/// Smallest `k` with `p^k >= n`.
pub fn ceil_log(n: usize, p: usize) -> usize {
    let mut k = 0;
    let mut v = 1usize;
    while v < n {
        v = v.saturating_mul(p);
        k += 1;
    }
    k
}

/// The threshold `L / log2 L` with `L = log2 n`, and 2
/// whenever `L <= 2`.
pub fn alpha(n: usize) -> f64 {
    let l = (n as f64).log2();
    if l <= 2.0 {
        2.0
    } else {
        (l / l.log2()).max(2.0)
    }
}
