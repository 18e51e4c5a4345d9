//! sl2 characters at fractional level k = t − 2.
//!
//! The reciprocal 1/iϑ₁(w²) is never formed as a series in w. In the inner
//! annulus its w^{2ℓ+1} coefficient is −q^{−1/8} P^{−3} φ_ℓ(q), in the outer
//! annulus its w^{−2ℓ−1} coefficient is +q^{−1/8} P^{−3} φ_ℓ(q), where
//! P = Π(1 − qⁿ). Each w-weight space is therefore an exact q-series.

use std::sync::Mutex;

use catalog::{Algebra, Family, MinimalModel, ModuleLabel};
use num_bigint::BigInt;
use num_traits::Zero;
use series_core::{int, DeltaChar, Monomial, Rational, Series2};
use special_functions::{euler_inv_pow, eta_inv, phi_ell, theta, vir_char, ThetaIndex};

use crate::util::{convex_window, shift};
use crate::{AnnulusRegime, CharError, CharKind};

/// Weight-space generator for an L or D± sl2 module, possibly spectrally flowed.
///
/// `coeff(a, n)` is the exact q-series multiplying w^a, known to order `n`.
pub struct Sl2Engine {
    m: MinimalModel,
    family: Family,
    r: i64,
    s: i64,
    flow: i64,
    regime: AnnulusRegime,
    /// P^{−3}, grown on demand.
    pinv3: Mutex<Series2>,
}

impl Sl2Engine {
    pub fn new(m: &MinimalModel, label: &ModuleLabel, regime: AnnulusRegime) -> Result<Self, CharError> {
        if label.algebra != Algebra::SL2 {
            return Err(CharError::RegimeMismatch(format!("{label} is not an sl2 label")));
        }
        let need = match label.family {
            Family::L | Family::Dminus => AnnulusRegime::InnerAnnulus,
            Family::Dplus => AnnulusRegime::OuterAnnulus,
            _ => return Err(CharError::RegimeMismatch(format!("{label} has no series character"))),
        };
        if regime != need {
            return Err(CharError::RegimeMismatch(format!("{label} requires {need:?}")));
        }
        Ok(Sl2Engine {
            m: *m,
            family: label.family,
            r: label.r,
            s: label.s,
            flow: label.flow,
            regime,
            pinv3: Mutex::new(euler_inv_pow(3, &int(0))),
        })
    }

    fn pinv3(&self, n: &Rational) -> Series2 {
        let mut cached = self.pinv3.lock().expect("cache lock");
        if cached.q_order() < n {
            *cached = euler_inv_pow(3, &(n + int(4)));
        }
        cached.truncate(n)
    }

    /// Prefactor exponent Δ − c/24 of the unflowed module (after the q^{−1/8} of the kernel).
    fn e0(&self) -> Rational {
        let s = if self.family == Family::L { 0 } else { self.s };
        self.m.delta(self.r, s) - self.m.c() / int(24)
    }

    /// Extra q-exponent carried by weight `a` under the flow σ^ℓ.
    fn flow_shift(&self, a: &Rational) -> Rational {
        let l = int(self.flow);
        let k = self.m.k();
        &l * (a - &l * &k) / int(2) + &l * &l * k / int(4)
    }

    /// Lower bound on every exponent occurring in `coeff(a, _)`.
    pub fn min_exponent(&self, a: &Rational) -> Rational {
        self.e0() + self.flow_shift(a)
    }

    /// Weight class mod 2 of the flowed module.
    pub fn weight_class(&self) -> Rational {
        let lam = match self.family {
            Family::L => self.m.lambda(self.r, 0),
            Family::Dplus => self.m.lambda(self.r, self.s),
            _ => -self.m.lambda(self.r, self.s),
        };
        lam + int(self.flow) * self.m.k()
    }

    /// Coefficient of w^a, exact to order `n`.
    pub fn coeff(&self, a: &Rational, n: &Rational) -> Series2 {
        let sh = self.flow_shift(a);
        let base = &(a - int(self.flow) * self.m.k());
        let inner_n = n - &sh;
        let c = match self.family {
            // D− is the conjugate of D+: w → w⁻¹ swaps the annuli.
            Family::Dminus => self.base_coeff(&-base, &inner_n, AnnulusRegime::OuterAnnulus),
            _ => self.base_coeff(base, &inner_n, self.regime),
        };
        shift(&c, &Rational::zero(), &sh)
    }

    /// Unflowed L or D+ weight space.
    fn base_coeff(&self, a: &Rational, n: &Rational, regime: AnnulusRegime) -> Series2 {
        let (u, v, r, s) = (self.m.u, self.m.v, self.r, self.s);
        let e0 = self.e0();
        let budget = n - &e0;
        if budget < Rational::zero() {
            return Series2::zero(n.clone());
        }
        let (wshift, terms): (Rational, Vec<(i64, Box<dyn Fn(i64) -> (i64, i64)>)>) = match self.family {
            Family::L => (
                Rational::zero(),
                vec![
                    (1, Box::new(move |j| (2 * u * j + r, v * j * (u * j + r)))),
                    (-1, Box::new(move |j| (-2 * u * j - r, v * j * (u * j + r)))),
                ],
            ),
            _ => (
                self.m.lambda(r, s) + int(1),
                vec![
                    (1, Box::new(move |j| (2 * u * j, j * (u * v * j + v * r - u * s)))),
                    (-1, Box::new(move |j| (2 * (u * j - r), (u * j - r) * (v * j - s)))),
                ],
            ),
        };
        let ap = a - wshift;
        let mut inner = Series2::zero(budget.clone());
        if !ap.is_integer() {
            return Series2::zero(n.clone());
        }
        let ap = ap.to_integer();
        let kappa: i64 = match regime {
            AnnulusRegime::InnerAnnulus => -1,
            AnnulusRegime::OuterAnnulus => 1,
        };
        for (sign, t) in &terms {
            for j in convex_window(|j| int(t(j).1), &budget) {
                let (e, f) = t(j);
                let mk = &ap - BigInt::from(e);
                let odd: i64 = match i64::try_from(mk) {
                    Ok(x) if x.rem_euclid(2) == 1 => x,
                    _ => continue,
                };
                let ell = match regime {
                    AnnulusRegime::InnerAnnulus => (odd - 1) / 2,
                    AnnulusRegime::OuterAnnulus => (-odd - 1) / 2,
                };
                let phi = phi_ell(ell, &(&budget - int(f)));
                let term = phi.mul_monomial(&BigInt::from(sign * kappa), &Rational::zero(), &int(f));
                inner = inner.add(&term.with_order(budget.clone()));
            }
        }
        let out = self.pinv3(&budget).mul(&inner);
        shift(&out, &Rational::zero(), &e0).truncate(n)
    }
}

/// sl2 character to order `n` on the default weight window.
///
/// Weight spaces of L are finite, so the default window holds all of them; D±
/// weight spaces extend to infinity on one side and are cut at `4 + 2⌈n − Δ + c/24⌉`
/// steps from the extremal weight.
pub fn char_sl2(
    m: &MinimalModel,
    label: &ModuleLabel,
    regime: AnnulusRegime,
    n: &Rational,
) -> Result<CharKind, CharError> {
    if matches!(label.family, Family::ETypical | Family::Eplus | Family::Eminus) {
        return e_char(m, label, n);
    }
    let eng = Sl2Engine::new(m, label, regime)?;
    let grades = series_core::rational::ceil_i64(&(n - eng.e0())).max(0);
    let width = 2 * grades + 4 + 2 * (label.flow * m.u).abs();
    let centre = eng.weight_class();
    let (lo, hi) = (&centre - int(width + label.r), &centre + int(width + label.r));
    char_sl2_window(m, label, regime, n, &lo, &hi).map(CharKind::OrdinarySeries)
}

/// Weight spaces a ∈ [lo, hi] on the module's weight lattice.
pub fn char_sl2_window(
    m: &MinimalModel,
    label: &ModuleLabel,
    regime: AnnulusRegime,
    n: &Rational,
    lo: &Rational,
    hi: &Rational,
) -> Result<Series2, CharError> {
    let eng = Sl2Engine::new(m, label, regime)?;
    let cls = eng.weight_class();
    let start = series_core::rational::ceil_i64(&((lo - &cls) / int(2)));
    let mut out = Series2::zero(n.clone());
    let mut k = start;
    loop {
        let a = &cls + int(2 * k);
        if &a > hi {
            break;
        }
        let c = eng.coeff(&a, n);
        out = out.add(&shift(&c, &a, &Rational::zero()));
        k += 1;
    }
    Ok(out)
}

/// w^λ χ_{r,s} η^{−2} δ(w²) for the relaxed families.
fn e_char(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<CharKind, CharError> {
    if label.flow != 0 {
        return Err(CharError::RegimeMismatch(format!("{label}: flowed relaxed modules have no delta form")));
    }
    let chi = vir_char(m.u, m.v, label.r, label.s, &(n + int(1)))?;
    let q = chi.mul(&eta_inv(&(n + int(1)))).mul(&eta_inv(&(n + int(1)))).truncate(n);
    Ok(CharKind::DeltaDistribution(DeltaChar {
        z_coset_base: label.lambda.clone(),
        z_coset_step: int(2),
        qseries: q,
        z_prefactor_exp: Rational::zero(),
    }))
}

/// Multiplies the windowed kernel back by iϑ₁(w²) and checks that the result is 1
/// on the weights where the window does not interfere.
pub fn kernel_inverse_check(regime: AnnulusRegime, n: &Rational, w_window: i64) -> bool {
    let budget = n + Rational::new(1.into(), 8.into());
    let pinv = euler_inv_pow(3, &budget);
    let mut ms = Vec::new();
    let mut k = Series2::zero(budget.clone());
    for odd in (-w_window..=w_window).filter(|x| x.rem_euclid(2) == 1) {
        let (ell, sign) = match regime {
            AnnulusRegime::InnerAnnulus => ((odd - 1) / 2, -1),
            AnnulusRegime::OuterAnnulus => ((-odd - 1) / 2, 1),
        };
        let t = pinv.mul(&phi_ell(ell, &budget));
        k = k.add(&t.mul_monomial(&BigInt::from(sign), &int(odd), &Rational::new((-1).into(), 8.into())));
    }
    ms.push(Monomial::new(1, int(0), int(0)));
    let th = theta(ThetaIndex::One, &(n + int(1)));
    // iϑ₁(w²): double the z-exponents
    let th2 = Series2::from_monomials(
        th.monomials().into_iter().map(|mo| Monomial::new(mo.coeff, mo.z_exp * int(2), mo.q_exp)),
        th.q_order().clone(),
    );
    let prod = k.mul(&th2).truncate(n);
    let reach = 2 * ((2.0 * series_core::rational::to_f64(n) + 1.0).sqrt().ceil() as i64 + 1);
    let safe = w_window - reach;
    let got = prod.filter_z(|z| series_core::rational::abs(z) <= int(safe));
    let want = Series2::from_monomials(ms, n.clone());
    Series2::equal_to_order(&got, &want, n)
}
