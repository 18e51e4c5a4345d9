use num_bigint::BigInt;
use num_traits::One;
use series_core::{fmt_rat, Rational, Series2};

/// Integers `j` with `f(j) <= bound`, for `f` convex on ℤ.
pub(crate) fn convex_window(f: impl Fn(i64) -> Rational, bound: &Rational) -> Vec<i64> {
    let mut out = Vec::new();
    for dir in [1i64, -1] {
        let mut j = if dir == 1 { 0 } else { -1 };
        loop {
            let v = f(j);
            if &v <= bound {
                out.push(j);
            } else if f(j - dir) < v {
                break;
            }
            j += dir;
        }
    }
    out.sort_unstable();
    out
}

/// `s * z^z q^q`.
pub(crate) fn shift(s: &Series2, z: &Rational, q: &Rational) -> Series2 {
    s.mul_monomial(&BigInt::one(), z, q)
}

/// JSON record of the first coefficient at which `a` and `b` differ.
pub(crate) fn discrepancy(a: &Series2, b: &Series2, n: &Rational) -> Option<serde_json::Value> {
    Series2::first_difference(a, b, n).map(|(q, z, ca, cb)| {
        serde_json::json!({
            "q": fmt_rat(&q),
            "z": fmt_rat(&z),
            "lhs": ca.to_string(),
            "rhs": cb.to_string(),
        })
    })
}
