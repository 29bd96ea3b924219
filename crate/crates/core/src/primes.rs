//! Primality for the parameter ranges the CLI accepts (all of `u64`).

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the witness set is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// Primes `p` in `[lo, hi]` with `p ≡ -1 (mod q)`, ascending.
pub fn primes_minus_one_mod(q: u64, lo: u64, hi: u64) -> Vec<u64> {
    if lo > hi || q == 0 {
        return Vec::new();
    }
    // first candidate >= lo congruent to q - 1
    let Some(mut p) = lo.checked_add(q - 1 - lo % q) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    while p <= hi {
        if is_prime(p) {
            out.push(p);
        }
        match p.checked_add(q) {
            Some(next) => p = next,
            None => break,
        }
    }
    out
}
