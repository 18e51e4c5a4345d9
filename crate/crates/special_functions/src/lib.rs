//! Named q-series: eta, Jacobi thetas, the φ_ℓ kernel, Appell-Lerch sums and
//! Virasoro minimal-model characters, all as exact [`Series2`] values.
//!
//! Theta conventions are the sum forms
//! ϑ₃ = Σ zⁿ q^{n²/2}, ϑ₄ = Σ (−1)ⁿ zⁿ q^{n²/2}, ϑ₂ = Σ_{n∈ℤ+½} zⁿ q^{n²/2},
//! and iϑ₁ = Σ_{n∈ℤ+½} (−1)^{n−½} zⁿ q^{n²/2}. ϑ₁ is only ever exposed as iϑ₁.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use series_core::rational::{ceil_i64, floor_i64, to_f64};
use series_core::{int, rat, Monomial, Rational, Series2};

/// Errors raised by the special-function constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecialError {
    #[error("Appell-Lerch expansion does not terminate: {0}")]
    NonTerminating(String),
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
}

/// Which Jacobi theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaIndex {
    /// Returned as iϑ₁.
    One,
    Two,
    Three,
    Four,
}

impl ThetaIndex {
    pub fn from_index(i: u8) -> Option<ThetaIndex> {
        match i {
            1 => Some(ThetaIndex::One),
            2 => Some(ThetaIndex::Two),
            3 => Some(ThetaIndex::Three),
            4 => Some(ThetaIndex::Four),
            _ => None,
        }
    }

    pub fn all() -> [ThetaIndex; 4] {
        [ThetaIndex::One, ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four]
    }
}

/// Integers `n` (or half-integers when `half`) with `n²/2 <= bound`.
fn theta_indices(bound: &Rational, half: bool) -> Vec<Rational> {
    if bound < &Rational::zero() {
        return Vec::new();
    }
    let m = (2.0 * to_f64(bound)).sqrt().ceil() as i64 + 2;
    let mut out = Vec::new();
    for k in -m..=m {
        let n = if half { rat(2 * k + 1, 2) } else { int(k) };
        if &n * &n / int(2) <= *bound {
            out.push(n);
        }
    }
    out
}

/// Euler product Π_{i≥1}(1 − qⁱ) to order `n`.
pub fn euler_product(n: &Rational) -> Series2 {
    let mut s = Series2::one(n.clone());
    let mut i = 1;
    while int(i) <= *n {
        s = mul_one_plus(&s, -1, &Rational::zero(), &int(i));
        i += 1;
    }
    s
}

/// Π(1 − qⁱ)^{−k} to order `n`, for `k >= 1`.
pub fn euler_inv_pow(k: u32, n: &Rational) -> Series2 {
    let inv = euler_product(n).mul_inverse().expect("euler product has unit leading term");
    let mut out = Series2::one(n.clone());
    for _ in 0..k {
        out = out.mul(&inv);
    }
    out
}

/// η(q) = q^{1/24} Π(1 − qⁱ) to order `n`.
pub fn eta(n: &Rational) -> Series2 {
    let shift = rat(1, 24);
    euler_product(&(n - &shift)).mul_monomial(&BigInt::one(), &Rational::zero(), &shift)
}

/// 1/η(q) = q^{−1/24} Σ p(n) qⁿ to order `n`.
pub fn eta_inv(n: &Rational) -> Series2 {
    let shift = rat(1, 24);
    euler_product(&(n + &shift))
        .mul_inverse()
        .expect("euler product has unit leading term")
        .mul_monomial(&BigInt::one(), &Rational::zero(), &-shift)
}

/// `s * (1 + c z^z q^q)`, exact in the binomial, keeping the order of `s`.
pub fn mul_one_plus(s: &Series2, c: i64, z: &Rational, q: &Rational) -> Series2 {
    let shifted = s.mul_monomial(&BigInt::from(c), z, q);
    s.add(&shifted.with_order(s.q_order().clone()))
}

/// Sum-form theta series to order `n`; `ThetaIndex::One` yields iϑ₁.
pub fn theta(i: ThetaIndex, n: &Rational) -> Series2 {
    let half = matches!(i, ThetaIndex::One | ThetaIndex::Two);
    let ms = theta_indices(n, half).into_iter().map(|k| {
        let sign: i64 = match i {
            ThetaIndex::Three | ThetaIndex::Two => 1,
            ThetaIndex::Four => {
                if k.to_integer().is_even() {
                    1
                } else {
                    -1
                }
            }
            ThetaIndex::One => {
                let e = (&k - rat(1, 2)).to_integer();
                if e.is_even() {
                    1
                } else {
                    -1
                }
            }
        };
        let q = &k * &k / int(2);
        Monomial::new(sign, k, q)
    });
    Series2::from_monomials(ms, n.clone())
}

/// Prefactor and binomial factors `1 + m` of the triple-product form, to order `n`.
///
/// The factors listed are exactly those whose q-exponent does not exceed `n`
/// once the prefactor is accounted for.
pub fn theta_factors(i: ThetaIndex, n: &Rational) -> (Monomial, Vec<Monomial>) {
    let mut fs = Vec::new();
    let one = Rational::one();
    let zero = Rational::zero();
    match i {
        ThetaIndex::Three | ThetaIndex::Four => {
            let sg = if i == ThetaIndex::Three { 1 } else { -1 };
            let mut m = 1;
            while rat(2 * m - 1, 2) <= *n {
                let e = rat(2 * m - 1, 2);
                fs.push(Monomial::new(sg, one.clone(), e.clone()));
                fs.push(Monomial::new(sg, -one.clone(), e));
                if int(m) <= *n {
                    fs.push(Monomial::new(-1, zero.clone(), int(m)));
                }
                m += 1;
            }
            (Monomial::new(1, zero.clone(), zero), fs)
        }
        ThetaIndex::Two => {
            let pre = Monomial::new(1, rat(1, 2), rat(1, 8));
            let rest = n - rat(1, 8);
            fs.push(Monomial::new(1, -one.clone(), zero));
            let mut m = 1;
            while int(m) <= rest {
                fs.push(Monomial::new(-1, Rational::zero(), int(m)));
                fs.push(Monomial::new(1, one.clone(), int(m)));
                fs.push(Monomial::new(1, -one.clone(), int(m)));
                m += 1;
            }
            (pre, fs)
        }
        ThetaIndex::One => {
            let pre = Monomial::new(1, rat(1, 2), rat(1, 8));
            let rest = n - rat(1, 8);
            fs.push(Monomial::new(-1, -one.clone(), zero));
            let mut m = 1;
            while int(m) <= rest {
                fs.push(Monomial::new(-1, Rational::zero(), int(m)));
                fs.push(Monomial::new(-1, one.clone(), int(m)));
                fs.push(Monomial::new(-1, -one.clone(), int(m)));
                m += 1;
            }
            (pre, fs)
        }
    }
}

/// Expands `prefactor * Π (1 + f)` to order `n`.
pub fn expand_product(pre: &Monomial, factors: &[Monomial], n: &Rational) -> Series2 {
    let inner_order = n - &pre.q_exp;
    let mut s = Series2::one(inner_order);
    for f in factors {
        let c: i64 = (&f.coeff).try_into().expect("unit factor coefficient");
        s = mul_one_plus(&s, c, &f.z_exp, &f.q_exp);
    }
    s.mul_monomial(&pre.coeff, &pre.z_exp, &pre.q_exp)
}

/// Triple-product form of the theta series, to order `n`.
pub fn theta_product(i: ThetaIndex, n: &Rational) -> Series2 {
    let (pre, fs) = theta_factors(i, n);
    expand_product(&pre, &fs, n)
}

/// φ_ℓ(q) = Σ_{s≥0} (−1)^s q^{ℓs + s(s+1)/2} to order `n`.
pub fn phi_ell(ell: i64, n: &Rational) -> Series2 {
    let mut ms = Vec::new();
    let mut s: i64 = 0;
    loop {
        let e = ell * s + s * (s + 1) / 2;
        let past_vertex = s >= -ell;
        if past_vertex && int(e) > *n {
            break;
        }
        if int(e) <= *n {
            ms.push(Monomial::new(if s % 2 == 0 { 1 } else { -1 }, Rational::zero(), int(e)));
        }
        s += 1;
    }
    Series2::from_monomials(ms, n.clone())
}

/// q^{1/12} η^{−2} Σ_ℓ φ_ℓ w^{2ℓ}, with w in the z slot and `|2ℓ| <= w_window`.
///
/// The full kernel has infinitely many w-powers at every q-level, so only a
/// window of them is materialized; each retained coefficient is exact.
pub fn eg_kernel(n: &Rational, w_window: i64) -> Series2 {
    let g = euler_inv_pow(2, n);
    let mut out = Series2::zero(n.clone());
    for ell in -(w_window / 2)..=(w_window / 2) {
        let term = g.mul(&phi_ell(ell, n)).mul_monomial(&BigInt::one(), &int(2 * ell), &Rational::zero());
        out = out.add(&term.truncate(n));
    }
    out
}

/// Π_{i≥1}(1 − w²q^{i−1})(1 − w^{−2}qⁱ) expanded to order `n`.
pub fn eg_product(n: &Rational) -> Series2 {
    let mut s = Series2::one(n.clone());
    let mut i = 1;
    while int(i - 1) <= *n {
        s = mul_one_plus(&s, -1, &int(2), &int(i - 1));
        if int(i) <= *n {
            s = mul_one_plus(&s, -1, &int(-2), &int(i));
        }
        i += 1;
    }
    s
}

/// Arguments of AL_n(x, y; Q) with Q = q^base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellArgs {
    pub level: u32,
    /// Coefficient must be ±1.
    pub x: Monomial,
    /// Coefficient must be ±1.
    pub y: Monomial,
    /// Exponent of q in the base Q; strictly positive.
    pub base: Rational,
}

fn unit_sign(m: &Monomial) -> i64 {
    (&m.coeff).try_into().expect("unit coefficient")
}

/// [Σ_{i,j≥0} − Σ_{i,j≤−1}] x^{i+nj} y^i Q^{ij + nj²/2} to order `n`.
///
/// Finitely many terms lie below any bound iff 0 < β_x + β_y < base, where
/// β are the q-exponents; otherwise `NonTerminating` is returned.
pub fn appell_lerch(args: &AppellArgs, n: &Rational) -> Result<Series2, SpecialError> {
    let lvl = int(args.level as i64);
    let b = &args.base;
    let bx = &args.x.q_exp;
    let by = &args.y.q_exp;
    let slope = bx + by;
    if b <= &Rational::zero() || slope <= Rational::zero() || &slope >= b {
        return Err(SpecialError::NonTerminating(format!(
            "q-exponent of xy is {slope}, outside (0, {b})"
        )));
    }
    let sx = unit_sign(&args.x);
    let sy = unit_sign(&args.y);
    let exp_q = |i: i64, j: i64| -> Rational {
        int(i + args.level as i64 * j) * bx + int(i) * by + b * (int(i * j) + &lvl * int(j * j) / int(2))
    };
    let mut ms = Vec::new();
    let push = |i: i64, j: i64, sign: i64, ms: &mut Vec<Monomial>| {
        let e = exp_q(i, j);
        if e <= *n {
            let p = i + args.level as i64 * j;
            let c = sign * sx.pow((p.rem_euclid(2)) as u32) * sy.pow((i.rem_euclid(2)) as u32);
            let z = int(p) * &args.x.z_exp + int(i) * &args.y.z_exp;
            ms.push(Monomial::new(c, z, e));
        }
    };
    // i, j >= 0: exp_q grows in i (slope + bj > 0) and is convex in j.
    let mut j = 0;
    loop {
        if exp_q(0, j) > *n && j > 0 && exp_q(0, j) > exp_q(0, j - 1) {
            break;
        }
        let mut i = 0;
        while exp_q(i, j) <= *n {
            push(i, j, 1, &mut ms);
            i += 1;
        }
        j += 1;
    }
    // i, j <= -1: exp_q grows as i decreases (b|j| - slope > 0).
    let mut j = -1;
    loop {
        if exp_q(-1, j) > *n && j < -1 && exp_q(-1, j) > exp_q(-1, j + 1) {
            break;
        }
        let mut i = -1;
        while exp_q(i, j) <= *n {
            push(i, j, -1, &mut ms);
            i -= 1;
        }
        j -= 1;
    }
    Ok(Series2::from_monomials(ms, n.clone()))
}

/// Virasoro character χ_{r,s} of the (u, v) minimal model to order `n`.
pub fn vir_char(u: i64, v: i64, r: i64, s: i64, n: &Rational) -> Result<Series2, SpecialError> {
    if u < 2 || v < 2 || u.gcd(&v) != 1 || !(1..u).contains(&r) || !(1..v).contains(&s) {
        return Err(SpecialError::LabelOutOfRange(format!("(u,v,r,s) = ({u},{v},{r},{s})")));
    }
    let four_uv = int(4 * u * v);
    let top = n + rat(1, 24);
    let m = ((to_f64(&top) * 4.0 * (u * v) as f64).max(0.0).sqrt() / (2 * u * v) as f64).ceil() as i64 + 2;
    let mut ms = Vec::new();
    for k in -m..=m {
        for (sign, shift) in [(1, v * r - u * s), (-1, v * r + u * s)] {
            let a = 2 * u * v * k + shift;
            let e = int(a * a) / &four_uv;
            if e <= top {
                ms.push(Monomial::new(sign, Rational::zero(), e));
            }
        }
    }
    let sum = Series2::from_monomials(ms, top);
    let off = sum.q_offset();
    let inv = eta_inv(&(n - &off + rat(1, 24)));
    Ok(sum.mul(&inv).truncate(n))
}

/// Leading exponent Δ^Vir_{r,s} − c^Vir/24 of χ_{r,s}.
pub fn vir_leading_exponent(u: i64, v: i64, r: i64, s: i64) -> Rational {
    let a = v * r - u * s;
    let dvir = int(a * a - (v - u) * (v - u)) / int(4 * u * v);
    let cvir = int(1) - int(6 * (u - v) * (u - v)) / int(u * v);
    dvir - cvir / int(24)
}

/// Smallest integer `k` with `k >= x`, re-exported for callers building ranges.
pub fn ceil(x: &Rational) -> i64 {
    ceil_i64(x)
}

/// Largest integer `k` with `k <= x`.
pub fn floor(x: &Rational) -> i64 {
    floor_i64(x)
}
