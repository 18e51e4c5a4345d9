//! Floating-point check of the theta-quotient identities behind the
//! Appell-Lerch character forms. This is the only numerical code in the crate.

use catalog::Report;
use num_complex::Complex64;

use crate::CharError;

/// Which identity a sample exercises. With F(x) = Π(1 − xqᵐ)(1 − x⁻¹qᵐ⁻¹) and P = Π(1 − qᵐ):
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagicIdentity {
    /// ϑ₁(ab)η³/(ϑ₁(a)ϑ₁(b)) = −i Σ aᵐ/(1 − bqᵐ), for |q| < |a| < 1.
    Magic,
    /// Same left side = −i Σ aᵐ b qᵐ/(1 − bqᵐ), for 1 < |a| < |q|⁻¹.
    MagicPrimed,
    /// ϑ₂(ab)/iϑ₁(a) = −ϑ₂(b)/η³ Σ aᵐ/(1 + bqᵐ), for |q| < |a| < 1.
    AlIdR,
    /// ϑ₃(ab)/iϑ₁(a) = −ϑ₃(b)/η³ Σ a^{m+½}/(1 + bq^{m+½}), for |q| < |a| < 1.
    AlIdNs,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagicSample {
    pub q: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub identity: MagicIdentity,
}

impl MagicSample {
    pub fn new(q: f64, a: f64, b: f64, identity: MagicIdentity) -> Self {
        MagicSample { q: q.into(), a: a.into(), b: b.into(), identity }
    }
}

const POLE_EPS: f64 = 1e-12;

fn prod(terms: usize, f: impl Fn(i32) -> Complex64) -> Complex64 {
    (1..=terms as i32).map(f).product()
}

/// Both sides with the common half-integer powers of a, b and q^{1/8} cancelled.
fn sides(s: &MagicSample, t: usize) -> Result<(Complex64, Complex64), CharError> {
    let (q, a, b) = (s.q, s.a, s.b);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let f = |x: Complex64| prod(t, |m| (one - x * q.powi(m)) * (one - q.powi(m - 1) / x));
    let p = prod(t, |m| one - q.powi(m));
    let tt = t as i32;
    let guard = |d: Complex64| {
        if d.norm() < POLE_EPS {
            Err(CharError::RegimeViolation(format!("b = {b} sits on a pole")))
        } else {
            Ok(d)
        }
    };
    match s.identity {
        MagicIdentity::Magic | MagicIdentity::MagicPrimed => {
            let lhs = i * p * p * f(a * b) / (f(a) * f(b));
            let mut sum = Complex64::new(0.0, 0.0);
            for m in -tt..=tt {
                let d = guard(one - b * q.powi(m))?;
                let num = if s.identity == MagicIdentity::Magic { a.powi(m) } else { a.powi(m) * b * q.powi(m) };
                sum += num / d;
            }
            Ok((lhs, -i * sum))
        }
        MagicIdentity::AlIdR => {
            let g2 = |x: Complex64| prod(t, |m| (one + x * q.powi(m)) * (one + q.powi(m - 1) / x));
            let lhs = g2(a * b) / f(a);
            let mut sum = Complex64::new(0.0, 0.0);
            for m in -tt..=tt {
                sum += a.powi(m) / guard(one + b * q.powi(m))?;
            }
            Ok((lhs, -g2(b) / (p * p) * sum))
        }
        MagicIdentity::AlIdNs => {
            let qh = q.sqrt();
            let g3 = |x: Complex64| {
                prod(t, |m| (one + x * q.powi(m - 1) * qh) * (one + q.powi(m - 1) * qh / x))
            };
            let lhs = g3(a * b) / f(a);
            let mut sum = Complex64::new(0.0, 0.0);
            for m in -tt..=tt {
                sum += a.powi(m + 1) / guard(one + b * q.powi(m) * qh)?;
            }
            Ok((lhs, -g3(b) / (p * p) * sum))
        }
    }
}

fn check_region(s: &MagicSample) -> Result<(), CharError> {
    let (q, a) = (s.q.norm(), s.a.norm());
    let ok = match s.identity {
        MagicIdentity::MagicPrimed => 1.0 < a && a < 1.0 / q,
        _ => q < a && a < 1.0,
    };
    if !(0.0 < q && q < 1.0) || !ok {
        return Err(CharError::RegimeViolation(format!(
            "{:?} needs its annulus; got |q| = {q}, |a| = {a}",
            s.identity
        )));
    }
    Ok(())
}

/// Evaluates both sides of each sample with products and sums cut at `truncation`;
/// passes iff the largest absolute deviation is below `tol`.
pub fn magic_check(samples: &[MagicSample], truncation: usize, tol: f64) -> Result<Report, CharError> {
    let mut worst = 0.0f64;
    let mut first = None;
    for (k, s) in samples.iter().enumerate() {
        check_region(s)?;
        let (l, r) = sides(s, truncation)?;
        let dev = (l - r).norm();
        worst = worst.max(dev);
        if dev >= tol && first.is_none() {
            first = Some(serde_json::json!({
                "sample": k,
                "identity": format!("{:?}", s.identity),
                "lhs": format!("{l}"),
                "rhs": format!("{r}"),
                "deviation": dev,
            }));
        }
    }
    let labels = vec![format!("max_abs_deviation={worst:e}")];
    Ok(Report::new("magic", labels, truncation.to_string(), first))
}
