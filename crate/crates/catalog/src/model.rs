use num_integer::Integer;
use series_core::{int, Rational};

use crate::CatalogError;

/// The N=2 minimal model M(u, v), with t = u/v, k = t − 2 and c = 3 − 6/t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinimalModel {
    pub u: i64,
    pub v: i64,
}

impl MinimalModel {
    pub fn new(u: i64, v: i64) -> Result<Self, CatalogError> {
        if u < 2 || v < 1 || u.gcd(&v) != 1 {
            return Err(CatalogError::InvalidModel(format!(
                "need u >= 2, v >= 1, gcd(u, v) = 1; got ({u}, {v})"
            )));
        }
        Ok(MinimalModel { u, v })
    }

    pub fn is_unitary(&self) -> bool {
        self.v == 1
    }

    pub fn t(&self) -> Rational {
        Rational::new(self.u.into(), self.v.into())
    }

    pub fn k(&self) -> Rational {
        self.t() - int(2)
    }

    /// Central charge, shared by the N=2 algebra and the sl2 model.
    pub fn c(&self) -> Rational {
        int(3) - int(6) / self.t()
    }

    /// λ_{r,s} = r − 1 − ts, for any integers r, s.
    pub fn lambda(&self, r: i64, s: i64) -> Rational {
        int(r - 1) - self.t() * int(s)
    }

    /// Δ_{r,s} = ((r − ts)² − 1)/4t.
    pub fn delta(&self, r: i64, s: i64) -> Rational {
        let a = int(r) - self.t() * int(s);
        (&a * &a - int(1)) / (int(4) * self.t())
    }

    /// h_{p;r,s} = Δ_{r,s} − p²/4t.
    pub fn h(&self, p: &Rational, r: i64, s: i64) -> Rational {
        self.delta(r, s) - p * p / (int(4) * self.t())
    }
}
