use std::fmt;

use num_traits::Zero;
use series_core::{fmt_rat, int, parse_rat, Rational};

use crate::{dictionary, CatalogError, MinimalModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algebra {
    N2,
    SL2,
    Ghost,
    Fock,
    Virasoro,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    L,
    Dplus,
    Dminus,
    ETypical,
    Eplus,
    Eminus,
    Staggered,
    GhostSector,
    FockMomentum,
    VirKac,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// +1 for even, −1 for odd.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Even => "+",
            Parity::Odd => "-",
        }
    }
}

/// One module of one algebra.
///
/// Fields not used by a family are zero. For N=2 labels `i` lives in 0..4 and
/// `lambda` is `(p − i) mod 2` in [0, 2); `parity` is the dictionary parity for
/// irreducibles and `Even` for composite families. SL2 labels use `r, s,
/// lambda, flow`; Ghost uses `i`; Fock uses `p`; Virasoro uses `r, s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleLabel {
    pub algebra: Algebra,
    pub family: Family,
    pub i: i64,
    pub p: Rational,
    pub r: i64,
    pub s: i64,
    pub lambda: Rational,
    pub flow: i64,
    pub parity: Parity,
}

/// `x mod 2` in [0, 2).
pub(crate) fn mod2(x: &Rational) -> Rational {
    let two = int(2);
    let q = (x / &two).floor();
    x - q * two
}

/// Whether `a − b ∈ 2ℤ`.
pub(crate) fn congruent2(a: &Rational, b: &Rational) -> bool {
    mod2(&(a - b)).is_zero()
}

impl ModuleLabel {
    fn blank(algebra: Algebra, family: Family) -> ModuleLabel {
        ModuleLabel {
            algebra,
            family,
            i: 0,
            p: int(0),
            r: 0,
            s: 0,
            lambda: int(0),
            flow: 0,
            parity: Parity::Even,
        }
    }

    /// Coset label C^{[i]}_{p} of the given N=2 family, validated and with the
    /// dictionary parity filled in.
    pub fn n2(
        m: &MinimalModel,
        family: Family,
        i: i64,
        p: Rational,
        r: i64,
        s: i64,
    ) -> Result<ModuleLabel, CatalogError> {
        let mut l = ModuleLabel::blank(Algebra::N2, family);
        l.i = i.rem_euclid(4);
        l.lambda = mod2(&(&p - int(l.i)));
        l.p = p;
        l.r = r;
        l.s = s;
        l.validate(m)?;
        if l.is_irreducible() {
            l.parity = dictionary::hw_data(m, &l)?.parity;
        }
        Ok(l)
    }

    pub fn n2_l(m: &MinimalModel, i: i64, p: Rational, r: i64) -> Result<ModuleLabel, CatalogError> {
        ModuleLabel::n2(m, Family::L, i, p, r, 0)
    }

    pub fn sl2(
        m: &MinimalModel,
        family: Family,
        r: i64,
        s: i64,
        lambda: Rational,
        flow: i64,
    ) -> Result<ModuleLabel, CatalogError> {
        let mut l = ModuleLabel::blank(Algebra::SL2, family);
        l.r = r;
        l.s = s;
        l.flow = flow;
        l.lambda = match family {
            Family::ETypical => mod2(&lambda),
            Family::Dminus => -m.lambda(r, s),
            Family::Eminus => m.lambda(m.u - r, m.v - s),
            _ => m.lambda(r, s),
        };
        l.validate(m)?;
        Ok(l)
    }

    pub fn ghost(i: i64) -> ModuleLabel {
        let mut l = ModuleLabel::blank(Algebra::Ghost, Family::GhostSector);
        l.i = i.rem_euclid(4);
        l
    }

    pub fn fock(p: Rational) -> ModuleLabel {
        let mut l = ModuleLabel::blank(Algebra::Fock, Family::FockMomentum);
        l.p = p;
        l
    }

    pub fn virasoro(m: &MinimalModel, r: i64, s: i64) -> Result<ModuleLabel, CatalogError> {
        let mut l = ModuleLabel::blank(Algebra::Virasoro, Family::VirKac);
        l.r = r;
        l.s = s;
        l.validate(m)?;
        Ok(l)
    }

    /// Irreducible N=2 families: those with a highest-weight dictionary.
    pub fn is_irreducible(&self) -> bool {
        matches!(
            self.family,
            Family::L | Family::Dplus | Family::Dminus | Family::ETypical
        )
    }

    /// Whether the module is Ramond (odd ghost sector).
    pub fn is_ramond(&self) -> bool {
        self.i % 2 == 1
    }

    fn range(&self, m: &MinimalModel, smin: i64) -> Result<(), CatalogError> {
        if self.r < 1 || self.r > m.u - 1 || self.s < smin || self.s > m.v - 1 {
            return Err(CatalogError::LabelOutOfRange(format!(
                "{self}: need 1 <= r <= {}, {smin} <= s <= {}",
                m.u - 1,
                m.v - 1
            )));
        }
        Ok(())
    }

    /// The sl2 weight class that `p − i` must lie in, or `None` for typicals.
    pub fn lattice_weight(&self, m: &MinimalModel) -> Option<Rational> {
        match self.family {
            Family::L | Family::Dplus | Family::Eplus | Family::Staggered => {
                Some(m.lambda(self.r, self.s))
            }
            Family::Dminus => Some(-m.lambda(self.r, self.s)),
            Family::Eminus => Some(m.lambda(m.u - self.r, m.v - self.s)),
            _ => None,
        }
    }

    /// Checks ranges and the momentum lattice.
    pub fn validate(&self, m: &MinimalModel) -> Result<(), CatalogError> {
        let bad = |msg: &str| Err(CatalogError::LabelOutOfRange(format!("{self}: {msg}")));
        match self.algebra {
            Algebra::Ghost | Algebra::Fock => Ok(()),
            Algebra::Virasoro => {
                if self.r < 1 || self.r > m.u - 1 || self.s < 1 || self.s > 2 * m.v - 1 {
                    return bad("Virasoro Kac label out of range");
                }
                Ok(())
            }
            Algebra::N2 | Algebra::SL2 => {
                let n2 = self.algebra == Algebra::N2;
                match self.family {
                    Family::L => {
                        if self.s != 0 {
                            return bad("L-family needs s = 0");
                        }
                        self.range(m, 0)?;
                    }
                    Family::Staggered => self.range(m, 0)?,
                    Family::Dplus | Family::Dminus | Family::Eplus | Family::Eminus => {
                        if m.v == 1 {
                            return bad("only the L-family exists for v = 1");
                        }
                        self.range(m, 1)?;
                    }
                    Family::ETypical => {
                        if m.v == 1 {
                            return bad("only the L-family exists for v = 1");
                        }
                        self.range(m, 1)?;
                        let a = m.lambda(self.r, self.s);
                        let b = m.lambda(m.u - self.r, m.v - self.s);
                        if congruent2(&self.lambda, &a) || congruent2(&self.lambda, &b) {
                            return bad("typical weight lies on an atypical class");
                        }
                    }
                    _ => return bad("family does not belong to this algebra"),
                }
                if n2 {
                    if let Some(w) = self.lattice_weight(m) {
                        if !congruent2(&(&self.p - int(self.i)), &w) {
                            return Err(CatalogError::ParityMismatch(format!(
                                "{self}: p - i must lie in {} + 2Z",
                                fmt_rat(&w)
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": format!("{:?}", self.algebra),
            "family": self.family_tag(),
            "i": self.i,
            "p": fmt_rat(&self.p),
            "r": self.r,
            "s": self.s,
            "lambda": fmt_rat(&self.lambda),
            "flow": self.flow,
            "parity": match self.parity { Parity::Even => "even", Parity::Odd => "odd" },
            "text": self.to_string(),
        })
    }

    /// Short family tag used in text and JSON.
    pub fn family_tag(&self) -> &'static str {
        match self.family {
            Family::L => "L",
            Family::Dplus => "D+",
            Family::Dminus => "D-",
            Family::ETypical => "E",
            Family::Eplus => "E+",
            Family::Eminus => "E-",
            Family::Staggered => "S",
            Family::GhostSector => "GH",
            Family::FockMomentum => "FOCK",
            Family::VirKac => "VIR",
        }
    }

    /// Parses the text form written by `Display`, e.g. `N2:D+[i=0,p=1/2,r=1,s=1]`.
    pub fn parse(m: &MinimalModel, text: &str) -> Result<ModuleLabel, CatalogError> {
        let bad = |msg: &str| CatalogError::LabelOutOfRange(format!("cannot parse {text:?}: {msg}"));
        let text = text.trim();
        let (alg, rest) = text.split_once(':').ok_or_else(|| bad("missing algebra prefix"))?;
        let num = |s: &str| parse_rat(s).map_err(|e| bad(&e.to_string()));
        let integer = |s: &str| -> Result<i64, CatalogError> {
            let x = num(s)?;
            if !x.is_integer() {
                return Err(bad("expected an integer"));
            }
            i64::try_from(x.to_integer()).map_err(|_| bad("integer too large"))
        };
        match alg.trim().to_ascii_uppercase().as_str() {
            "GH" => return Ok(ModuleLabel::ghost(integer(rest)?)),
            "FOCK" => return Ok(ModuleLabel::fock(num(rest)?)),
            _ => {}
        }
        let (fam, args) = rest.split_once('[').ok_or_else(|| bad("missing '['"))?;
        let args = args.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
        let mut kv = std::collections::BTreeMap::new();
        for part in args.split(',').filter(|x| !x.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            kv.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        let get = |k: &str| kv.get(k).map(String::as_str);
        let geti = |k: &str, d: i64| get(k).map(integer).unwrap_or(Ok(d));
        let family = match fam.trim().to_ascii_uppercase().as_str() {
            "L" => Family::L,
            "D+" => Family::Dplus,
            "D-" => Family::Dminus,
            "E" => Family::ETypical,
            "E+" => Family::Eplus,
            "E-" => Family::Eminus,
            "S" => Family::Staggered,
            "" | "VIR" => Family::VirKac,
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        match alg.trim().to_ascii_uppercase().as_str() {
            "N2" => {
                let p = num(get("p").ok_or_else(|| bad("missing p"))?)?;
                let (i, r, s) = (geti("i", 0)?, geti("r", 1)?, geti("s", 0)?);
                if family == Family::ETypical {
                    // `E` names the relaxed module at p, whichever class p lands in.
                    return crate::e_class(m, i, p, r, s);
                }
                ModuleLabel::n2(m, family, i, p, r, s)
            }
            "SL2" => {
                let lambda = match get("lambda") {
                    Some(x) => num(x)?,
                    None => int(0),
                };
                ModuleLabel::sl2(m, family, geti("r", 1)?, geti("s", 0)?, lambda, geti("flow", 0)?)
            }
            "VIR" => ModuleLabel::virasoro(m, geti("r", 1)?, geti("s", 1)?),
            other => Err(bad(&format!("unknown algebra {other:?}"))),
        }
    }
}

fn short(x: &Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        fmt_rat(x)
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.family_tag();
        match self.algebra {
            Algebra::Ghost => write!(f, "GH:{}", self.i),
            Algebra::Fock => write!(f, "FOCK:{}", short(&self.p)),
            Algebra::Virasoro => write!(f, "VIR:[r={},s={}]", self.r, self.s),
            Algebra::N2 => {
                write!(f, "N2:{tag}[i={},p={},r={}", self.i, short(&self.p), self.r)?;
                if self.family != Family::L {
                    write!(f, ",s={}", self.s)?;
                }
                write!(f, "]")
            }
            Algebra::SL2 => {
                write!(f, "SL2:{tag}[r={}", self.r)?;
                if self.family != Family::L {
                    write!(f, ",s={}", self.s)?;
                }
                if self.family == Family::ETypical {
                    write!(f, ",lambda={}", short(&self.lambda))?;
                }
                if self.flow != 0 {
                    write!(f, ",flow={}", self.flow)?;
                }
                write!(f, "]")
            }
        }
    }
}
