//! Binomial-coefficient arithmetic shared across modules: exact values in
//! u128 where they fit, log-space evaluation where they don't (stable for
//! n up to 10⁶ and any k).

/// Exact C(n, k), or `None` on overflow of the intermediate product.
pub(crate) fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 1..=k {
        // r·(n−k+i) is always divisible by i at this point.
        r = r.checked_mul((n - k + i) as u128)? / i as u128;
    }
    Some(r)
}

/// ln C(n, k); −∞ when k > n (C = 0).
pub(crate) fn ln_binom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k).map(|i| (((n - k + i) as f64) / i as f64).ln()).sum()
}

/// C(n, k) as a float: exact through u128 when possible, else exp(ln C).
pub(crate) fn binom_f64(n: u64, k: u64) -> f64 {
    match binom_u128(n, k) {
        Some(c) if c <= (1u128 << 100) => c as f64,
        _ => ln_binom(n, k).exp(),
    }
}
