use series_core::{fmt_rat, int, rat, Rational};

use crate::{Algebra, CatalogError, Family, MinimalModel, ModuleLabel, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    NS,
    R,
}

/// Highest-weight data of an irreducible N=2 module: parity of the highest-weight
/// vector, its charge `j` and conformal dimension `delta`.
///
/// In the Ramond sector the highest-weight vector is the ground state of
/// largest charge; its partner (when present) has charge `j − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeightData {
    pub parity: Parity,
    pub j: Rational,
    pub delta: Rational,
    pub sector: Sector,
}

impl HighestWeightData {
    fn new(parity: Parity, j: Rational, delta: Rational, sector: Sector) -> Self {
        HighestWeightData { parity, j, delta, sector }
    }

    fn reversed(mut self, reverse: bool) -> Self {
        if reverse {
            self.parity = self.parity.flip();
        }
        self
    }

    /// Data of the conjugate module.
    pub fn conjugate(&self, m: &MinimalModel) -> HighestWeightData {
        let mut out = self.clone();
        out.j = -&self.j;
        if self.sector == Sector::R && self.delta != m.c() / int(24) {
            out.parity = self.parity.flip();
            out.j += int(1);
        }
        out
    }

    /// Data of the spectral flow by σ^{1/2}.
    pub fn half_flow(&self, m: &MinimalModel) -> HighestWeightData {
        let c6 = m.c() / int(6);
        let c24 = m.c() / int(24);
        match self.sector {
            Sector::NS => HighestWeightData::new(
                self.parity,
                &self.j + &c6,
                &self.delta + &self.j / int(2) + &c24,
                Sector::R,
            ),
            Sector::R if self.delta == c24 => {
                let j = &self.j + &c6;
                let d = &j / int(2);
                HighestWeightData::new(self.parity, j, d, Sector::NS)
            }
            Sector::R => HighestWeightData::new(
                self.parity.flip(),
                &self.j - int(1) + &c6,
                &self.delta + (&self.j - int(1)) / int(2) + &c24,
                Sector::NS,
            ),
        }
    }

    /// Table-cell text `±;j;Δ`.
    pub fn cell(&self) -> String {
        let f = |x: &Rational| {
            if x.is_integer() {
                x.to_integer().to_string()
            } else {
                fmt_rat(x)
            }
        };
        format!("{};{};{}", self.parity.symbol(), f(&self.j), f(&self.delta))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "parity": self.parity.symbol(),
            "j": fmt_rat(&self.j),
            "delta": fmt_rat(&self.delta),
            "sector": format!("{:?}", self.sector),
        })
    }
}

/// `(λ_{r,s}, Δ_{r,s}, h_{p;r,s})`.
pub fn weights(
    m: &MinimalModel,
    r: i64,
    s: i64,
    p: &Rational,
) -> Result<(Rational, Rational, Rational), CatalogError> {
    if r < 1 || r > m.u - 1 || s < 0 || s > m.v - 1 {
        return Err(CatalogError::LabelOutOfRange(format!(
            "(r, s) = ({r}, {s}) outside 1..{} x 0..{}",
            m.u - 1,
            m.v - 1
        )));
    }
    Ok((m.lambda(r, s), m.delta(r, s), m.h(p, r, s)))
}

/// Unitary dictionary for the coset label (i, p, r) of M(u, 1).
pub fn dictionary_unitary(
    m: &MinimalModel,
    i: i64,
    p: i64,
    r: i64,
) -> Result<HighestWeightData, CatalogError> {
    if m.v != 1 {
        return Err(CatalogError::Unsupported("unitary dictionary needs v = 1".into()));
    }
    let u = m.u;
    if r < 1 || r > u - 1 {
        return Err(CatalogError::LabelOutOfRange(format!("r = {r} outside 1..{}", u - 1)));
    }
    if (p - i - r + 1).rem_euclid(2) != 0 {
        return Err(CatalogError::ParityMismatch(format!(
            "(i, p, r) = ({i}, {p}, {r}) needs p = i + r - 1 mod 2"
        )));
    }
    let i = i.rem_euclid(4);
    // Fundamental window p in [-r, 2u - r - 1].
    let p = (p + r).rem_euclid(2 * u) - r;
    let pr = int(p);
    let h = m.h(&pr, r, 0);
    let pu = rat(p, u);
    let half = |x: i64| rat(x, 2);
    let data = if i % 2 == 0 {
        if p <= r - 1 {
            HighestWeightData::new(Parity::Even, pu, h, Sector::NS)
        } else {
            HighestWeightData::new(Parity::Odd, pu - int(1), h + half(p - r), Sector::NS)
        }
    } else if p <= r - 2 {
        HighestWeightData::new(Parity::Odd, pu + rat(1, 2), h + rat(1, 8), Sector::R)
    } else {
        HighestWeightData::new(
            Parity::Even,
            pu - rat(1, 2),
            h + rat(1, 8) + half(p - r),
            Sector::R,
        )
    };
    Ok(data.reversed(i >= 2))
}

/// Dictionary for irreducible coset labels of M(u, v): families L, D±, E.
///
/// The D-branch formulas apply for s ≤ v−2; D+_{r,v−1} goes through its L-type
/// isomorphism representative.
///
/// The L-family formulas are also valid for v = 1, where they agree with the
/// unitary dictionary on every label.
pub fn dictionary_nonunitary(
    m: &MinimalModel,
    label: &ModuleLabel,
) -> Result<HighestWeightData, CatalogError> {
    if label.algebra != Algebra::N2 || !label.is_irreducible() {
        return Err(CatalogError::Unsupported(format!("no dictionary for {label}")));
    }
    let i = label.i.rem_euclid(4);
    if label.family == Family::Dminus {
        // D−^{[i]}_{p;r,s} is the conjugate of D+^{[−i]}_{−p;r,s}.
        let plus = ModuleLabel::n2(m, Family::Dplus, -i, -&label.p, label.r, label.s)?;
        return Ok(dictionary_nonunitary(m, &plus)?.conjugate(m));
    }
    if label.family == Family::Dplus && label.s == m.v - 1 {
        // D+_{r,v−1} is a spectral flow of an L-type sl2 module; its coset
        // modules are identified through the L dictionary.
        return dictionary_nonunitary(m, &crate::iso_rep(m, label)?);
    }
    let t = m.t();
    let (p, r) = (&label.p, label.r);
    let h = m.h(p, r, label.s);
    let pt = p / &t;
    let ramond = i % 2 == 1;
    let (plus, minus) = (Parity::Even, Parity::Odd);
    let ns = |par, j, d| HighestWeightData::new(par, j, d, Sector::NS);
    let rr = |par, j, d| HighestWeightData::new(par, j, d, Sector::R);
    let eighth = rat(1, 8);
    let data = match label.family {
        Family::L => {
            let (pr, rr_) = (p.clone(), int(r));
            if !ramond {
                if pr <= int(-r - 1) {
                    ns(minus, pt + int(1), h - (&pr + &rr_) / int(2))
                } else if pr <= int(r - 1) {
                    ns(plus, pt, h)
                } else {
                    ns(minus, pt - int(1), h + (&pr - &rr_) / int(2))
                }
            } else if pr <= int(-r - 2) {
                rr(plus, pt + rat(3, 2), h + eighth - (&pr + &rr_) / int(2))
            } else if pr <= int(r - 2) {
                rr(minus, pt + rat(1, 2), h + eighth)
            } else {
                rr(plus, pt - rat(1, 2), h + eighth + (&pr - &rr_) / int(2))
            }
        }
        Family::Dplus => {
            let lam = m.lambda(r, label.s);
            if !ramond {
                if *p <= lam {
                    ns(plus, pt, h)
                } else {
                    ns(minus, pt - int(1), h + (p - &lam - int(1)) / int(2))
                }
            } else if *p <= &lam - int(1) {
                rr(minus, pt + rat(1, 2), h + eighth)
            } else {
                rr(plus, pt - rat(1, 2), h + eighth + (p - &lam - int(1)) / int(2))
            }
        }
        Family::ETypical => {
            if !ramond {
                ns(plus, pt, h)
            } else {
                rr(minus, pt + rat(1, 2), h + eighth)
            }
        }
        _ => unreachable!("irreducible families handled above"),
    };
    Ok(data.reversed(i >= 2))
}

/// Dictionary dispatch: unitary for v = 1, non-unitary otherwise.
pub fn hw_data(m: &MinimalModel, label: &ModuleLabel) -> Result<HighestWeightData, CatalogError> {
    if m.v == 1 && label.family == Family::L && label.algebra == Algebra::N2 {
        let p = &label.p;
        if !p.is_integer() {
            return Err(CatalogError::ParityMismatch(format!("{label}: p must be an integer")));
        }
        let p = i64::try_from(p.to_integer())
            .map_err(|_| CatalogError::LabelOutOfRange(format!("{label}: p too large")))?;
        return dictionary_unitary(m, label.i, p, label.r);
    }
    dictionary_nonunitary(m, label)
}

