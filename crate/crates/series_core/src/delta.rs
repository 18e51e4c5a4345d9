//! Distribution-valued characters: a uniform comb over a z-coset times a q-series.

use crate::rational::Rational;
use crate::series::Series2;

/// `z^prefactor * sum_n z^(base + n*step) * qseries`, every comb tooth carrying `qseries`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaChar {
    pub z_coset_base: Rational,
    pub z_coset_step: Rational,
    /// Univariate in q.
    pub qseries: Series2,
    pub z_prefactor_exp: Rational,
}

impl DeltaChar {
    /// Coefficient of `z^alpha`: `qseries` on the coset, zero off it.
    pub fn coeff_z(&self, alpha: &Rational) -> Series2 {
        let off = alpha - &self.z_prefactor_exp - &self.z_coset_base;
        let n = off / &self.z_coset_step;
        if n.is_integer() {
            self.qseries.clone()
        } else {
            Series2::zero(self.qseries.q_order().clone())
        }
    }

    /// Whether `alpha` lies on the comb.
    pub fn on_coset(&self, alpha: &Rational) -> bool {
        let off = alpha - &self.z_prefactor_exp - &self.z_coset_base;
        (off / &self.z_coset_step).is_integer()
    }
}
