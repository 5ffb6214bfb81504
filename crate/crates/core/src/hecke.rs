//! Elements of the extended affine Hecke algebra in the standard basis
//! `{rho^m T_w}`.
//!
//! Basis keys are full extended elements: the key `x = rho^m w` stands for
//! `rho^m T_w`. The quadratic relation is `(T_i + q)(T_i - q^-1) = 0`, so
//! `T_i^2 = (q^-1 - q) T_i + 1` and `T_i^-1 = T_i + q - q^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::weyl::AffinePerm;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    n: usize,
    terms: BTreeMap<AffinePerm, LaurentPoly>,
}

/// Generators of the standard presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T(usize),
    TInv(usize),
    Rho(i64),
    /// Kazhdan-Lusztig generator `b_i = T_i + q`.
    B(usize),
}

impl HeckeElt {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(AffinePerm::identity(n))
    }

    pub fn basis(w: AffinePerm) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: AffinePerm, c: LaurentPoly) -> Self {
        let mut out = Self::zero(w.n());
        out.add_term(w, c);
        out
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Self {
        Self::term(AffinePerm::identity(n), c)
    }

    pub fn generator(n: usize, g: Generator) -> Result<Self> {
        match g {
            Generator::T(i) => Ok(Self::basis(AffinePerm::simple(n, i)?)),
            Generator::TInv(i) => {
                let t = Self::basis(AffinePerm::simple(n, i)?);
                Ok(&t + &Self::scalar(n, LaurentPoly::q_minus_qinv()))
            }
            Generator::Rho(m) => Ok(Self::basis(AffinePerm::rho(n, m))),
            Generator::B(i) => {
                let t = Self::basis(AffinePerm::simple(n, i)?);
                Ok(&t + &Self::scalar(n, LaurentPoly::q()))
            }
        }
    }

    pub fn t(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, Generator::T(i))
    }

    pub fn t_inv(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, Generator::TInv(i))
    }

    pub fn rho(n: usize, m: i64) -> Self {
        Self::basis(AffinePerm::rho(n, m))
    }

    pub fn b(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, Generator::B(i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffinePerm, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AffinePerm) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in display order: rho-power, then length, then canonical rex.
    pub fn sorted_terms(&self) -> Vec<(&AffinePerm, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(w, _)| {
            let r = w.to_rex();
            (r.rho_power, r.word.len(), r.word)
        });
        v
    }

    pub fn add_term(&mut self, w: AffinePerm, c: LaurentPoly) {
        assert_eq!(w.n(), self.n, "basis element rank does not match element rank");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &HeckeElt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = Self::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Right multiplication by `T_i`.
    pub fn mul_t(&self, i: usize) -> HeckeElt {
        let corr = LaurentPoly::q_minus_qinv().bar();
        let mut out = Self::zero(self.n);
        for (g, c) in &self.terms {
            let gs = g.mul_simple(i);
            if gs.length() > g.length() {
                out.add_term(gs, c.clone());
            } else {
                out.add_term(gs, c.clone());
                out.add_term(g.clone(), c * &corr);
            }
        }
        out
    }

    /// Right multiplication by `T_i^-1 = T_i + (q - q^-1)`.
    pub fn mul_t_inv(&self, i: usize) -> HeckeElt {
        let mut out = self.mul_t(i);
        for (g, c) in &self.terms {
            out.add_term(g.clone(), c * &LaurentPoly::q_minus_qinv());
        }
        out
    }

    /// Right multiplication by `rho^m`; a relabelling since `T_g rho = T_{g rho}`.
    pub fn mul_rho(&self, m: i64) -> HeckeElt {
        HeckeElt {
            n: self.n,
            terms: self.terms.iter().map(|(g, c)| (g.mul_rho(m), c.clone())).collect(),
        }
    }

    /// Left multiplication by `rho^m`.
    pub fn rho_mul(&self, m: i64) -> HeckeElt {
        HeckeElt {
            n: self.n,
            terms: self.terms.iter().map(|(g, c)| (g.rho_mul(m), c.clone())).collect(),
        }
    }

    /// Right multiplication by a basis element, folding along its canonical rex.
    pub fn mul_basis(&self, w: &AffinePerm) -> HeckeElt {
        let rex = w.to_rex();
        let mut acc = self.mul_rho(rex.rho_power);
        for &i in &rex.word {
            acc = acc.mul_t(i);
        }
        acc
    }

    pub fn try_mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.n);
        for (w, c) in &other.terms {
            for (g, x) in self.mul_basis(w).terms {
                out.add_term(g, &x * c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> HeckeElt {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `T_w^-1` for a single basis element: `T_{i_l}^-1 ... T_{i_1}^-1 rho^-m`.
    pub fn basis_inverse(w: &AffinePerm) -> HeckeElt {
        let rex = w.to_rex();
        let mut acc = Self::one(w.n());
        for &i in rex.word.iter().rev() {
            acc = acc.mul_t_inv(i);
        }
        acc.mul_rho(-rex.rho_power)
    }

    /// Inverse of `c T_w` when `c` is a unit `±q^e`.
    pub fn try_inverse(&self) -> Result<HeckeElt> {
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if let Some(ci) = c.unit_inverse() {
                return Ok(Self::basis_inverse(w).scale(&ci));
            }
        }
        Err(Error::NotInvertible(self.to_string()))
    }

    /// The q-antilinear antiinvolution with `omega(rho) = rho^-1`, `omega(T_w) = T_w^-1`.
    pub fn omega(&self) -> HeckeElt {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let cb = c.bar();
            for (g, x) in Self::basis_inverse(w).terms {
                out.add_term(g, &x * &cb);
            }
        }
        out
    }

    /// Standard trace: coefficient of `rho^0 T_e`.
    pub fn trace(&self) -> LaurentPoly {
        self.coeff(&AffinePerm::identity(self.n))
    }

    /// The q-sesquilinear form `(x, y) = trace(omega(x) y)`.
    pub fn form(&self, other: &HeckeElt) -> Result<LaurentPoly> {
        Ok(self.omega().try_mul(other)?.trace())
    }

    /// Imposes `rho^period = 1`; `period` must be a multiple of `n` so that
    /// `rho^period` is central.
    pub fn reduce_rho_power(&self, period: i64) -> Result<HeckeElt> {
        if period <= 0 || period % self.n as i64 != 0 {
            return Err(Error::RankUnsupported { n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let s = w.shift();
            let target = s.rem_euclid(period);
            out.add_term(w.rho_mul(target - s), c.clone());
        }
        Ok(out)
    }

    /// Supported on shift-0 finite permutations (the finite Hecke algebra).
    pub fn is_finite(&self) -> bool {
        self.terms.keys().all(|w| w.is_finite())
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::hecke_text(self))
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElt[n={}]({})", self.n, self)
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        self.try_add(rhs).expect("rank mismatch in Hecke addition")
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self.try_sub(rhs).expect("rank mismatch in Hecke subtraction")
    }
}

impl Mul for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        self.try_mul(rhs).expect("rank mismatch in Hecke multiplication")
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        HeckeElt {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// Product of a list of elements, left to right.
pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a HeckeElt>) -> HeckeElt {
    factors.into_iter().fold(HeckeElt::one(n), |acc, x| &acc * x)
}
