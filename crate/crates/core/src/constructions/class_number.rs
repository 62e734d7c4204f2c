use crate::error::{Error, Result};

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    let squarefree = |m: i64| {
        let m = m.unsigned_abs();
        (2..)
            .take_while(|q: &u64| q * q <= m)
            .all(|q| !m.is_multiple_of(q * q))
    };
    match d.rem_euclid(4) {
        1 => d != 1 && squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

/// Number of reduced positive definite forms `ax^2 + bxy + cy^2` with
/// `b^2 - 4ac = d`: `|b| ≤ a ≤ c`, and `b ≥ 0` when `|b| = a` or `a = c`.
pub fn class_number_imag_quadratic(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(Error::NotNegative(d));
    }
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let mut h = 0;
    let mut a = 1i64;
    // reduced forms have a ≤ sqrt(|d|/3)
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    Ok(h)
}
