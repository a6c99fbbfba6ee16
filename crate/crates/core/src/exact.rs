//! Floors and ceilings of `(a ± √m) / c` without floating point.

/// `⌊√m⌋`.
pub fn isqrt(m: u64) -> u64 {
    if m < 2 {
        return m;
    }
    let mut r = (m as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > m) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= m) {
        r += 1;
    }
    r
}

/// `t <= sign * √m`, exactly.
fn le_signed_sqrt(t: i128, sign: i8, m: u64) -> bool {
    let m = m as i128;
    if sign >= 0 {
        t <= 0 || t * t <= m
    } else {
        t <= 0 && t * t >= m
    }
}

/// `t >= sign * √m`, exactly.
fn ge_signed_sqrt(t: i128, sign: i8, m: u64) -> bool {
    let m = m as i128;
    if sign >= 0 {
        t >= 0 && t * t >= m
    } else {
        t >= 0 || t * t <= m
    }
}

fn estimate(a: i64, sign: i8, m: u64, c: i64) -> i64 {
    let root = (m as f64).sqrt();
    let v = (a as f64 + if sign >= 0 { root } else { -root }) / c as f64;
    v.floor() as i64
}

/// `⌊(a + sign·√m) / c⌋` for `c > 0`.
pub fn floor_affine_sqrt(a: i64, sign: i8, m: u64, c: i64) -> i64 {
    assert!(c > 0);
    let fits = |q: i64| le_signed_sqrt(c as i128 * q as i128 - a as i128, sign, m);
    let mut q = estimate(a, sign, m, c);
    while !fits(q) {
        q -= 1;
    }
    while fits(q + 1) {
        q += 1;
    }
    q
}

/// `⌈(a + sign·√m) / c⌉` for `c > 0`.
pub fn ceil_affine_sqrt(a: i64, sign: i8, m: u64, c: i64) -> i64 {
    assert!(c > 0);
    let fits = |q: i64| ge_signed_sqrt(c as i128 * q as i128 - a as i128, sign, m);
    let mut q = estimate(a, sign, m, c) + 1;
    while !fits(q) {
        q += 1;
    }
    while fits(q - 1) {
        q -= 1;
    }
    q
}
