//! N=2 characters along five routes, plus ghost and Heisenberg characters.
//!
//! Conventions: z tracks the U(1) charge J₀, so every module's z-exponents lie
//! in j + ℤ with j the highest-weight charge. Each route returns the ordinary
//! character; supercharacters are derived by [`supercharacter`] except where a
//! route carries its own (the residue route and the typical closed form).

use std::collections::BTreeMap;

use catalog::{groth_decompose, hw_data, Family, MinimalModel, ModuleLabel};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use series_core::rational::{floor_i64, to_f64};
use series_core::{fmt_rat, int, rat, Monomial, Rational, Series2};
use special_functions::{
    euler_inv_pow, eta_inv, expand_product, theta, theta_factors, vir_char, vir_leading_exponent,
    ThetaIndex,
};

use crate::sl2::Sl2Engine;
use crate::util::{convex_window, shift};
use crate::{AnnulusRegime, CharError};

/// Derivation route for [`char_n2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Residue of the coset trace with the φ_ℓ kernel; for v = 1 the p = 0 closed
    /// form with omitted theta factors, transported by spectral flow.
    ResidueEG,
    /// Appell-Lerch closed forms for L and D±, summed over composition factors
    /// for the reducible E± and staggered families.
    AppellLerch,
    /// Euler-Poincaré sum over a resolution by relaxed modules; needs k < 0.
    Resolution,
    /// Closed form of the relaxed (E-type) characters.
    Typical,
    /// Appell-Lerch character of a flowed source with |p| ≤ 1/2, transported.
    SpectralFlowTransport,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "residue-eg" | "ResidueEG" => Ok(Method::ResidueEG),
            "appell-lerch" | "AppellLerch" => Ok(Method::AppellLerch),
            "resolution" | "Resolution" => Ok(Method::Resolution),
            "typical" | "Typical" => Ok(Method::Typical),
            "sflow" | "SpectralFlowTransport" => Ok(Method::SpectralFlowTransport),
            _ => Err(format!("unknown method {s}")),
        }
    }
}

/// Theta numerator of the ghost sector: ϑ₃/ϑ₂ for characters, ±ϑ₄/±iϑ₁ for
/// supercharacters with the sign reversed for i ∈ {2, 3}.
pub(crate) fn ghost_theta(i: i64, sup: bool, n: &Rational) -> Series2 {
    let i = i.rem_euclid(4);
    let idx = match (sup, i % 2) {
        (false, 0) => ThetaIndex::Three,
        (false, _) => ThetaIndex::Two,
        (true, 0) => ThetaIndex::Four,
        (true, _) => ThetaIndex::One,
    };
    let th = theta(idx, n);
    if sup && i >= 2 {
        th.neg()
    } else {
        th
    }
}

/// Sign s_b of the z^b term of [`ghost_theta`].
pub(crate) fn ghost_sign(i: i64, sup: bool, b: &Rational) -> i64 {
    if !sup {
        return 1;
    }
    let i = i.rem_euclid(4);
    let e = if i % 2 == 0 { b.clone() } else { b - rat(1, 2) };
    let s = if (e.to_integer() % BigInt::from(2)).is_zero() { 1 } else { -1 };
    if i >= 2 {
        -s
    } else {
        s
    }
}

/// Ghost character (or supercharacter) Θ/η of sector `i`.
pub fn char_ghost(i: i64, sup: bool, n: &Rational) -> Series2 {
    let m = n + int(1);
    ghost_theta(i, sup, &m).mul(&eta_inv(&m)).truncate(n)
}

/// Fock character y^p q^{p²/4t}/η, with y in the z slot.
pub fn char_fock(p: &Rational, t: &Rational, n: &Rational) -> Series2 {
    let e = p * p / (int(4) * t);
    shift(&eta_inv(&(n - &e)), p, &e)
}

/// z^{cℓ/3} q^{cℓ²/6} ch(z q^ℓ) with ℓ = ell_half/2, truncated at `n`.
///
/// Exact to `n` provided `ch` is exact to the order given by
/// [`transport_source_order`].
pub fn sflow_transform(ch: &Series2, c: &Rational, ell_half: i64, n: &Rational) -> Result<Series2, CharError> {
    let l = rat(ell_half, 2);
    let s = ch.substitute(false, &l, false)?;
    Ok(shift(&s, &(c * &l / int(3)), &(c * &l * &l / int(6))).truncate(n))
}

/// Order to which a highest-weight source character must be known so that its
/// transport by ℓ = ell_half/2 is exact to `n`.
///
/// Uses that at q-level e the charges of a highest-weight module with top
/// charge `j0` and top level `e0` obey |charge − j0| ≤ 2 + √(2(e − e0)).
pub fn transport_source_order(n: &Rational, c: &Rational, ell_half: i64, j0: &Rational, e0: &Rational) -> Rational {
    let a = (ell_half as f64 / 2.0).abs();
    let j = to_f64(j0).abs();
    let e0f = to_f64(e0);
    let cl = to_f64(c) * (ell_half * ell_half) as f64 / 24.0;
    let target = to_f64(n);
    let g = |e: f64| e - a * (j + 2.0 + (2.0 * (e - e0f).max(0.0)).sqrt()) + cl;
    let mut e = target.max(e0f);
    while !(g(e) > target + 1e-9 && e - e0f >= a * a / 2.0) {
        e += 0.5;
    }
    int(e.ceil() as i64 + 1)
}

/// ε z^j (ch with z → −z after removing z^j), for the highest-weight data (ε, j) of `label`.
pub fn supercharacter(m: &MinimalModel, label: &ModuleLabel, ch: &Series2) -> Result<Series2, CharError> {
    let hw = hw_data(m, label)?;
    let zero = Rational::zero();
    let bare = shift(ch, &-hw.j.clone(), &zero).substitute(true, &zero, false)?;
    Ok(bare.mul_monomial(&BigInt::from(hw.parity.sign()), &hw.j, &zero))
}

/// Character (or supercharacter) of an N=2 label by the chosen route.
pub fn char_n2(
    m: &MinimalModel,
    label: &ModuleLabel,
    method: Method,
    sup: bool,
    n: &Rational,
) -> Result<Series2, CharError> {
    label.validate(m)?;
    match method {
        Method::Typical => typical_label(m, label, sup, n),
        Method::AppellLerch if matches!(label.family, Family::Eplus | Family::Eminus | Family::Staggered) => {
            let g = groth_decompose(m, label)?;
            let mut out = Series2::zero(n.clone());
            for (l, k) in &g.terms {
                let c = char_n2(m, l, Method::AppellLerch, sup, n)?;
                out = out.add(&c.scale(&BigInt::from(*k)));
            }
            Ok(out)
        }
        Method::ResidueEG if m.v >= 2 => {
            let (sl2, i, p) = sl2_source(m, label)?;
            residue_char(m, &sl2, i, &p, sup, n)
        }
        _ => {
            if !matches!(label.family, Family::L | Family::Dplus | Family::Dminus) {
                return Err(CharError::RegimeMismatch(format!("{method:?} does not apply to {label}")));
            }
            let ch = match method {
                Method::AppellLerch => appell_lerch_char(m, label, n)?,
                Method::ResidueEG => residue_unitary(m, label, n)?,
                Method::Resolution => resolution_char(m, label, n)?,
                Method::SpectralFlowTransport => transported_char(m, label, n)?,
                Method::Typical => unreachable!(),
            };
            if sup {
                supercharacter(m, label, &ch)
            } else {
                Ok(ch)
            }
        }
    }
}

/// The sl2 label, ghost sector and momentum whose residue gives `label`.
fn sl2_source(m: &MinimalModel, label: &ModuleLabel) -> Result<(ModuleLabel, i64, Rational), CharError> {
    let s = if label.family == Family::L { 0 } else { label.s };
    match label.family {
        Family::L | Family::Dplus | Family::Dminus => {
            let sl2 = ModuleLabel::sl2(m, label.family, label.r, s, Rational::zero(), 0)?;
            Ok((sl2, label.i, label.p.clone()))
        }
        _ => Err(CharError::RegimeMismatch(format!("no residue route for {label}"))),
    }
}

pub(crate) fn regime_for(family: Family) -> AnnulusRegime {
    match family {
        Family::Dplus => AnnulusRegime::OuterAnnulus,
        _ => AnnulusRegime::InnerAnnulus,
    }
}

/// Residue of ch[sl2](y z^{1/t}) · ch-or-sch[ghost](y² z^{−k/t}) at y^p, over the Fock character:
/// q^{−p²/4t} z^{p/t} Σ_b s_b q^{b²/2} z^{−b} A_{p−2b}(q).
pub(crate) fn residue_char(
    m: &MinimalModel,
    sl2: &ModuleLabel,
    i: i64,
    p: &Rational,
    sup: bool,
    n: &Rational,
) -> Result<Series2, CharError> {
    let eng = Sl2Engine::new(m, sl2, regime_for(sl2.family))?;
    residue_with(m, &eng, i, p, sup, n)
}

pub(crate) fn residue_with(
    m: &MinimalModel,
    eng: &Sl2Engine,
    i: i64,
    p: &Rational,
    sup: bool,
    n: &Rational,
) -> Result<Series2, CharError> {
    let t = m.t();
    let fock = p * p / (int(4) * &t);
    let b0 = if i.rem_euclid(2) == 0 { Rational::zero() } else { rat(1, 2) };
    let bat = |k: i64| &b0 + int(k);
    let lowest = |k: i64| {
        let b = bat(k);
        &b * &b / int(2) + eng.min_exponent(&(p - int(2) * &b))
    };
    let bound = n + &fock;
    let mut out = Series2::zero(n.clone());
    for k in convex_window(lowest, &bound) {
        let b = bat(k);
        let qb = &b * &b / int(2);
        let a = p - int(2) * &b;
        let coeff = eng.coeff(&a, &(&bound - &qb));
        let sign = BigInt::from(ghost_sign(i, sup, &b));
        let term = coeff.mul_monomial(&sign, &(p / &t - &b), &(&qb - &fock));
        out = out.add(&term);
    }
    Ok(out.truncate(n))
}

/// Θ/(1 − X) for a q-free monomial X = σ z^e, by exact division level by level.
fn divide_one_minus(th: &Series2, x: &Monomial) -> Result<Series2, CharError> {
    let sigma: i64 = (&x.coeff).try_into().map_err(|_| CharError::RegimeMismatch("non-unit X".into()))?;
    let e = x.z_exp.clone();
    if e.is_zero() {
        return Err(CharError::RegimeMismatch("pole at X = 1".into()));
    }
    if e < Rational::zero() {
        // 1/(1 − σz^e) = −σ z^{−e}/(1 − σ z^{−e})
        let flipped = Monomial::new(sigma, -e.clone(), Rational::zero());
        let d = divide_one_minus(th, &flipped)?;
        return Ok(d.mul_monomial(&BigInt::from(-sigma), &-e, &Rational::zero()));
    }
    let mut levels: BTreeMap<Rational, BTreeMap<Rational, BigInt>> = BTreeMap::new();
    for (q, z, c) in th.terms() {
        levels.entry(q).or_default().insert(z, c.clone());
    }
    let mut ms = Vec::new();
    for (q, poly) in levels {
        let mut quot: BTreeMap<Rational, BigInt> = BTreeMap::new();
        let mut rem = poly.clone();
        // long division from the lowest power: Q[z] = P[z] + σ Q[z − e]
        while let Some((z, c)) = rem.iter().next().map(|(z, c)| (z.clone(), c.clone())) {
            if c.is_zero() {
                rem.remove(&z);
                continue;
            }
            quot.insert(z.clone(), c.clone());
            rem.remove(&z);
            let up = &z + &e;
            let v = rem.entry(up.clone()).or_insert_with(BigInt::zero);
            *v += &c * BigInt::from(sigma);
            if v.is_zero() {
                rem.remove(&up);
            }
            let top = poly.keys().next_back().cloned().unwrap_or_default();
            if rem.keys().next().is_some_and(|k| k > &top) {
                return Err(CharError::RegimeMismatch(format!(
                    "theta level q^{q} not divisible by 1 − X"
                )));
            }
        }
        for (z, c) in quot {
            ms.push(Monomial::new(c, z, q.clone()));
        }
    }
    Ok(Series2::from_monomials(ms, th.q_order().clone()))
}

/// Θ · AL_level(x, y; q^base) to order `n`, where each 1/(1 − X_j) is expanded
/// on the side where it is a factor of Θ: geometrically in X_j when X_j has
/// positive q-exponent, in 1/X_j when negative, and by exact division when X_j
/// is q-free.
fn theta_al(
    th_idx: ThetaIndex,
    level: i64,
    x: &Monomial,
    y: &Monomial,
    base: &Rational,
    n: &Rational,
) -> Result<Series2, CharError> {
    let sx: i64 = (&x.coeff).try_into().expect("unit x");
    let sy: i64 = (&y.coeff).try_into().expect("unit y");
    let cq = |j: i64| int(level * j) * &x.q_exp + base * int(level * j * j) / int(2);
    let js = convex_window(cq, n);
    let max_budget = js.iter().map(|&j| n - cq(j)).max().unwrap_or_else(Rational::zero);
    let th_full = theta(th_idx, &max_budget);
    let mut out = Series2::zero(n.clone());
    for j in js {
        let budget = n - cq(j);
        let th = th_full.truncate(&budget);
        let xq = &x.q_exp + &y.q_exp + base * int(j);
        let xz = &x.z_exp + &y.z_exp;
        let xs = sx * sy;
        let term = if xq.is_zero() {
            divide_one_minus(&th, &Monomial::new(xs, xz, Rational::zero()))?
        } else {
            let positive = xq > Rational::zero();
            let step = xq.abs();
            let mut ms = Vec::new();
            let (first, sgn_all) = if positive { (0, 1) } else { (1, -1) };
            let mut s = first;
            while int(s) * &step <= budget {
                let (zs, sgn) = if positive {
                    (int(s) * &xz, xs.pow((s % 2) as u32))
                } else {
                    (-(int(s) * &xz), xs.pow((s % 2) as u32))
                };
                ms.push(Monomial::new(sgn_all * sgn, zs, int(s) * &step));
                s += 1;
            }
            th.mul(&Series2::from_monomials(ms, budget.clone()))
        };
        let coef = BigInt::from(sx.pow((level * j).rem_euclid(2) as u32));
        out = out.add(&term.mul_monomial(&coef, &(int(level * j) * &x.z_exp), &cq(j)));
    }
    Ok(out.truncate(n))
}

fn sector_theta(i: i64) -> ThetaIndex {
    if i.rem_euclid(2) == 0 {
        ThetaIndex::Three
    } else {
        ThetaIndex::Two
    }
}

/// Θ[AL_{2v}(q^{r/2}, −z^{−1}q^{p/2}; q^u) − z q^{(r−p)/2} AL_{2v}(q^{(r+t)/2}, −z q^{−(p+t)/2}; q^u)].
fn l_bracket(m: &MinimalModel, i: i64, p: &Rational, r: i64, n: &Rational) -> Result<Series2, CharError> {
    let t = m.t();
    let th = sector_theta(i);
    let lvl = 2 * m.v;
    let base = int(m.u);
    let zero = Rational::zero();
    let a1 = theta_al(
        th,
        lvl,
        &Monomial::new(1, zero.clone(), rat(r, 2)),
        &Monomial::new(-1, int(-1), p / int(2)),
        &base,
        n,
    )?;
    let sh = (int(r) - p) / int(2);
    let a2 = theta_al(
        th,
        lvl,
        &Monomial::new(1, zero.clone(), (int(r) + &t) / int(2)),
        &Monomial::new(-1, int(1), -(p + &t) / int(2)),
        &base,
        &(n - &sh),
    )?;
    Ok(a1.sub(&shift(&a2, &int(1), &sh)).truncate(n))
}

/// Common prefactor z^{p/t} q^{h − c/24} P^{−3} applied to a bracket known to order `n − (h − c/24)`.
fn dress(m: &MinimalModel, p: &Rational, h: &Rational, bracket: &Series2, n: &Rational) -> Series2 {
    let e = h - m.c() / int(24);
    let inner = n - &e;
    let out = euler_inv_pow(3, &inner).mul(bracket);
    shift(&out, &(p / m.t()), &e).truncate(n)
}

fn l_char(m: &MinimalModel, i: i64, p: &Rational, r: i64, n: &Rational) -> Result<Series2, CharError> {
    let h = m.h(p, r, 0);
    let e = &h - m.c() / int(24);
    let br = l_bracket(m, i, p, r, &(n - &e))?;
    Ok(dress(m, p, &h, &br, n))
}

/// The L-character from the conjugate-region identity: the bracket at −p with z inverted.
pub fn l_char_primed(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Series2, CharError> {
    if label.family != Family::L {
        return Err(CharError::RegimeMismatch(format!("{label} is not an L label")));
    }
    let h = m.h(&label.p, label.r, 0);
    let e = &h - m.c() / int(24);
    let br = l_bracket(m, label.i, &-label.p.clone(), label.r, &(n - &e))?;
    let br = br.substitute(false, &Rational::zero(), true)?;
    Ok(dress(m, &label.p, &h, &br, n))
}

/// D+ character: Θ[AL_{2v}(q^{(r−ts)/2}, −z q^{−p/2}; q^u) − q^{rs} AL_{2v}(q^{−(r+ts)/2}, −z q^{−p/2}; q^u)].
fn dplus_char(m: &MinimalModel, i: i64, p: &Rational, r: i64, s: i64, n: &Rational) -> Result<Series2, CharError> {
    let t = m.t();
    let h = m.h(p, r, s);
    let e = &h - m.c() / int(24);
    let inner = n - &e;
    let th = sector_theta(i);
    let lvl = 2 * m.v;
    let base = int(m.u);
    let y = Monomial::new(-1, int(1), -p / int(2));
    let ts = &t * int(s);
    let a1 = theta_al(th, lvl, &Monomial::new(1, Rational::zero(), (int(r) - &ts) / int(2)), &y, &base, &inner)?;
    let rs = int(r * s);
    let a2 = theta_al(
        th,
        lvl,
        &Monomial::new(1, Rational::zero(), -(int(r) + &ts) / int(2)),
        &y,
        &base,
        &(&inner - &rs),
    )?;
    let br = a1.sub(&shift(&a2, &Rational::zero(), &rs)).truncate(&inner);
    Ok(dress(m, p, &h, &br, n))
}

fn invert(ch: &Series2) -> Result<Series2, CharError> {
    Ok(ch.substitute(false, &Rational::zero(), true)?)
}

/// The D+ label whose conjugate is the given D− label.
fn dminus_partner(m: &MinimalModel, label: &ModuleLabel) -> Result<ModuleLabel, CharError> {
    Ok(ModuleLabel::n2(m, Family::Dplus, -label.i, -label.p.clone(), label.r, label.s)?)
}

fn appell_lerch_char(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Series2, CharError> {
    match label.family {
        Family::L => l_char(m, label.i, &label.p, label.r, n),
        Family::Dplus => dplus_char(m, label.i, &label.p, label.r, label.s, n),
        Family::Dminus => {
            let d = dminus_partner(m, label)?;
            invert(&dplus_char(m, d.i, &d.p, d.r, d.s, n)?)
        }
        _ => Err(CharError::RegimeMismatch(format!("no Appell-Lerch form for {label}"))),
    }
}

/// z^{p/t} q^{−p²/4t} Θ(z⁻¹) χ_{r,s}/η², Θ the ghost numerator of sector i.
pub(crate) fn typical_series(
    m: &MinimalModel,
    i: i64,
    p: &Rational,
    r: i64,
    s: i64,
    sup: bool,
    n: &Rational,
) -> Result<Series2, CharError> {
    let t = m.t();
    let e = -(p * p) / (int(4) * &t);
    let lead = vir_leading_exponent(m.u, m.v, r, s) - rat(1, 12);
    let inner = n - &e;
    let th_order = &inner - &lead;
    if th_order < Rational::zero() {
        return Ok(Series2::zero(n.clone()));
    }
    let vo = &inner + int(1);
    let chi = vir_char(m.u, m.v, r, s, &vo)?.mul(&eta_inv(&vo)).mul(&eta_inv(&vo));
    // The residue produces Θ(z⁻¹); only iϑ₁ is odd under z → z⁻¹.
    let th = ghost_theta(i, sup, &th_order).substitute(false, &Rational::zero(), true)?;
    let prod = th.mul(&chi).truncate(&inner);
    Ok(shift(&prod, &(p / &t), &e).truncate(n))
}

fn typical_label(m: &MinimalModel, label: &ModuleLabel, sup: bool, n: &Rational) -> Result<Series2, CharError> {
    if !matches!(label.family, Family::ETypical | Family::Eplus | Family::Eminus) {
        return Err(CharError::RegimeMismatch(format!("the relaxed closed form does not apply to {label}")));
    }
    typical_series(m, label.i, &label.p, label.r, label.s, sup, n)
}

/// Window of charges |α − j| ≤ 3 + √(2(n − e)) that can carry terms up to order n.
fn charge_window(j: &Rational, e: &Rational, n: &Rational) -> Vec<Rational> {
    let w = 3 + (2.0 * to_f64(&(n - e)).max(0.0)).sqrt().ceil() as i64;
    (-w..=w).map(|k| j + int(k)).collect()
}

/// Resolution form of the L character restricted to the charges `alphas`.
fn resolution_l(
    m: &MinimalModel,
    i: i64,
    p: &Rational,
    r: i64,
    n: &Rational,
    alphas: &[Rational],
) -> Result<Series2, CharError> {
    let (u, v) = (m.u, m.v);
    let t = m.t();
    let half = i.rem_euclid(2) == 1;
    let on_lattice = |x: &Rational| if half { (x - rat(1, 2)).is_integer() } else { x.is_integer() };
    let mut out = Series2::zero(n.clone());
    for s in 1..v {
        let lead = vir_leading_exponent(u, v, r, s) - rat(1, 12);
        let bound = n - &lead;
        let mut ms = Vec::new();
        for alpha in alphas {
            let f = |mm: i64| -> Option<Rational> {
                let nn = alpha - p / &t + int(mm);
                if !on_lattice(&nn) {
                    return None;
                }
                let big_p = p - int(mm) * &t;
                Some(&nn * &nn / int(2) - &big_p * &big_p / (int(4) * &t))
            };
            for (sign, mseq) in [(1i64, 0i64), (-1, 1)] {
                let mut prev: Option<Rational> = None;
                let mut ell = 0i64;
                loop {
                    let mm = if mseq == 0 { 2 * v * ell + s } else { 2 * v * (ell + 1) - s };
                    let Some(val) = f(mm) else { break };
                    if val > bound && prev.as_ref().is_some_and(|pv| &val > pv) {
                        break;
                    }
                    if val <= bound {
                        ms.push(Monomial::new(sign, alpha.clone(), val.clone()));
                    }
                    prev = Some(val);
                    ell += 1;
                    if ell > 100_000 {
                        return Err(CharError::DivergentResolution("resolution sum does not settle".into()));
                    }
                }
            }
        }
        let comb = Series2::from_monomials(ms, bound.clone());
        let low = comb.q_offset().min(bound.clone());
        let vo = n - &low + int(1);
        let chi = vir_char(u, v, r, s, &vo)?.mul(&eta_inv(&vo)).mul(&eta_inv(&vo));
        let term = comb.mul(&chi).truncate(n);
        let sg = if s % 2 == 1 { 1 } else { -1 };
        out = out.add(&term.scale(&BigInt::from(sg)));
    }
    Ok(out.truncate(n))
}

fn resolution_char(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Series2, CharError> {
    if m.k() >= Rational::zero() {
        let why = if m.k() > Rational::zero() { "divergent for k>0" } else { "needs k<0" };
        return Err(CharError::DivergentResolution(format!("{why}: k = {}", fmt_rat(&m.k()))));
    }
    let hw = hw_data(m, label)?;
    let e0 = &hw.delta - m.c() / int(24);
    let alphas = charge_window(&hw.j, &e0, n);
    let (lo, hi) = (alphas[0].clone(), alphas[alphas.len() - 1].clone());
    let keep = |s: &Series2| s.filter_z(|z| z >= &lo && z <= &hi);
    match label.family {
        Family::L => resolution_l(m, label.i, &label.p, label.r, n, &alphas),
        Family::Dplus => {
            let (u, v) = (m.u, m.v);
            let t = m.t();
            let (r, s) = (label.r, label.s);
            let pl = &label.p - int(v - s) * &t;
            let sg = if (v - 1 - s) % 2 == 0 { 1 } else { -1 };
            let mut out = resolution_l(m, label.i, &pl, u - r, n, &alphas)?.scale(&BigInt::from(sg));
            for sp in 1..(v - s) {
                let ty = typical_series(m, label.i, &(&label.p - &t * int(sp)), r, s + sp, false, n)?;
                let sg = if sp % 2 == 1 { 1 } else { -1 };
                out = out.add(&keep(&ty).scale(&BigInt::from(sg)));
            }
            Ok(out)
        }
        Family::Dminus => {
            let d = dminus_partner(m, label)?;
            invert(&resolution_char(m, &d, n)?)
        }
        _ => Err(CharError::RegimeMismatch(format!("no resolution for {label}"))),
    }
}

/// Equivalent unitary label (i, p, r) with the smallest |p|, under p → p ± 2u
/// and (i, p, r) → (i + 2, p ± u, u − r).
fn smallest_momentum(u: i64, i: i64, p: i64, r: i64) -> (i64, i64, i64) {
    let mut best = (i, p, r);
    for (di, dp, flip) in [(0, 0, false), (0, 2 * u, false), (0, -2 * u, false), (2, u, true), (2, -u, true)] {
        let cand = ((i + di).rem_euclid(4), p + dp, if flip { u - r } else { r });
        if cand.1.abs() < best.1.abs() {
            best = cand;
        }
    }
    best
}

/// p = 0 character with each denominator removed as a factor of Θ, to order `n`.
fn unicharsimp(m: &MinimalModel, i: i64, r: i64, n: &Rational) -> Result<Series2, CharError> {
    let u = m.u;
    let h = m.h(&Rational::zero(), r, 0);
    let e = &h - m.c() / int(24);
    let inner = n - &e;
    let idx = sector_theta(i);
    let omit = |alpha: Rational, order: &Rational| -> Series2 {
        // Θ/(1 + z^{−1} q^α)
        let (extra_z, extra_q, factor) = if alpha >= Rational::zero() {
            (Rational::zero(), Rational::zero(), Monomial::new(1, int(-1), alpha))
        } else {
            (int(1), -alpha.clone(), Monomial::new(1, int(1), -alpha))
        };
        let o = order - &extra_q;
        let (pre, mut fs) = theta_factors(idx, &o);
        if let Some(pos) = fs.iter().position(|f| f == &factor) {
            fs.remove(pos);
        }
        let prod = expand_product(&pre, &fs, &o);
        shift(&prod, &extra_z, &extra_q)
    };
    let f = |j: i64| int(j * (u * j + r));
    let mut sum = Series2::zero(inner.clone());
    for j in convex_window(f, &inner) {
        let budget = &inner - f(j);
        let a = omit(rat(2 * u * j + r, 2), &budget);
        let b = omit(-rat(2 * u * j + r, 2), &budget);
        sum = sum.add(&shift(&a.sub(&b), &Rational::zero(), &f(j)).with_order(inner.clone()));
    }
    let out = euler_inv_pow(3, &inner).mul(&sum);
    Ok(shift(&out, &Rational::zero(), &e).truncate(n))
}

/// v = 1: p = 0 closed form of the flow-equivalent source, transported by ℓ = −p/2.
fn residue_unitary(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Series2, CharError> {
    if label.family != Family::L || !label.p.is_integer() {
        return Err(CharError::RegimeMismatch(format!("no unitary residue form for {label}")));
    }
    let p0: i64 = label.p.to_integer().try_into().expect("small momentum");
    let (i, p, r) = smallest_momentum(m.u, label.i, p0, label.r);
    let src = ModuleLabel::n2_l(m, i - p, Rational::zero(), r)?;
    let hw = hw_data(m, &src)?;
    let e0 = &hw.delta - m.c() / int(24);
    let no = transport_source_order(n, &m.c(), -p, &hw.j, &e0);
    let ch = unicharsimp(m, src.i, r, &no)?;
    sflow_transform(&ch, &m.c(), -p, n)
}

/// Appell-Lerch character of C^{[i−h]}_{p−h} with h the integer nearest p,
/// transported by ℓ = −h/2.
fn transported_char(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Series2, CharError> {
    let h = floor_i64(&(&label.p + rat(1, 2)));
    let src = ModuleLabel::n2(m, label.family, label.i - h, &label.p - int(h), label.r, label.s)?;
    let hw = hw_data(m, &src)?;
    let e0 = &hw.delta - m.c() / int(24);
    let no = transport_source_order(n, &m.c(), -h, &hw.j, &e0);
    let ch = appell_lerch_char(m, &src, &no)?;
    sflow_transform(&ch, &m.c(), -h, n)
}
