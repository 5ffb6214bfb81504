//! Grothendieck-level shadows: classes of Rouquier complexes, the classes
//! `(rho T_1)^r (T_1^-1 rho)^s`, and graded ranks computed by the form.

use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::kl::{kl_to_std, KLLabel};
use crate::laurent::LaurentPoly;

/// A graded rank, with a flag recording whether all coefficients are
/// nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRank {
    pub poly: LaurentPoly,
    pub nonnegative: bool,
}

impl GradedRank {
    pub fn new(poly: LaurentPoly) -> Self {
        let nonnegative = poly.all_nonnegative();
        Self { poly, nonnegative }
    }
}

impl fmt::Display for GradedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Product of `b_i - q` (positive letters) and `b_i - q^-1` (negative
/// letters), i.e. of `T_i` and `T_i^-1`.
pub fn rouquier_class(n: usize, word: &[(usize, bool)]) -> Result<HeckeElt> {
    let mut acc = HeckeElt::one(n);
    for &(i, positive) in word {
        let shift = if positive { LaurentPoly::q() } else { LaurentPoly::q_pow(-1) };
        let factor = &HeckeElt::b(n, i)? - &HeckeElt::scalar(n, shift);
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// `(rho T_1)^r (T_1^-1 rho)^s` in rank 2; negative exponents use inverses.
pub fn y_class(r: i64, s: i64) -> HeckeElt {
    let rho = |m| HeckeElt::rho(2, m);
    let t1 = HeckeElt::t(2, 1).expect("rank 2");
    let t1i = HeckeElt::t_inv(2, 1).expect("rank 2");
    let a = if r >= 0 { &rho(1) * &t1 } else { &t1i * &rho(-1) };
    let b = if s >= 0 { &t1i * &rho(1) } else { &rho(-1) * &t1 };
    &a.pow(r.unsigned_abs() as u32) * &b.pow(s.unsigned_abs() as u32)
}

/// `(rho^{u.m} b_u, rho^{v.m} b_v)` as a graded rank.
pub fn graded_hom_rank(u: &KLLabel, v: &KLLabel) -> GradedRank {
    let x = kl_to_std(u);
    let y = kl_to_std(v);
    GradedRank::new(x.form(&y).expect("both rank 2"))
}

pub fn euler_pair(x: &HeckeElt, y: &HeckeElt) -> Result<LaurentPoly> {
    if x.n() != y.n() {
        return Err(Error::RankMismatch { left: x.n(), right: y.n() });
    }
    x.form(y)
}
