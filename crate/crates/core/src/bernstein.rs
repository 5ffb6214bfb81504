//! Bernstein normal form `sum c T_w y^lambda` with all `T`'s left of all `y`'s.
//!
//! Straightening uses, with `c = q - q^-1`,
//!
//! ```text
//! y^lambda T_i = T_i y^{s_i lambda} - c * y_i (y^lambda - y^{s_i lambda}) / (y_i - y_{i+1})
//! ```
//!
//! which at `lambda = e_i` is `T_i^-1 y_i T_i^-1 = y_{i+1}` rearranged.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::parabolic::{bernstein_y, bernstein_y_inv};
use crate::weyl::AffinePerm;

type Key = (AffinePerm, Vec<i64>);

#[derive(Clone, PartialEq, Eq)]
pub struct BernsteinElt {
    n: usize,
    terms: BTreeMap<Key, LaurentPoly>,
}

impl BernsteinElt {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::term(AffinePerm::identity(n), vec![0; n], LaurentPoly::one()).expect("identity is finite")
    }

    pub fn term(w: AffinePerm, lambda: Vec<i64>, c: LaurentPoly) -> Result<Self> {
        let n = w.n();
        if !w.is_finite() || w.shift() != 0 {
            return Err(Error::InvalidWindow(w.window().to_vec()));
        }
        if lambda.len() != n {
            return Err(Error::RankMismatch { left: lambda.len(), right: n });
        }
        let mut out = Self::zero(n);
        out.add_term(w, lambda, c);
        Ok(out)
    }

    /// The monomial `y^lambda`.
    pub fn y(lambda: Vec<i64>) -> Self {
        let n = lambda.len();
        Self::term(AffinePerm::identity(n), lambda, LaurentPoly::one()).expect("identity is finite")
    }

    /// Finite-Hecke part: `T_w` for a finite permutation `w`.
    pub fn t_w(w: AffinePerm) -> Result<Self> {
        let n = w.n();
        Self::term(w, vec![0; n], LaurentPoly::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&AffinePerm, &[i64], &LaurentPoly)> {
        self.terms.iter().map(|((w, l), c)| (w, l.as_slice(), c))
    }

    pub fn add_term(&mut self, w: AffinePerm, lambda: Vec<i64>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (w, lambda);
        let e = self.terms.entry(key.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &BernsteinElt) -> Result<BernsteinElt> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for ((w, l), c) in &other.terms {
            out.add_term(w.clone(), l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> BernsteinElt {
        let mut out = Self::zero(self.n);
        for ((w, l), x) in &self.terms {
            out.add_term(w.clone(), l.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &BernsteinElt) -> Result<BernsteinElt> {
        bernstein_mul(self, other)
    }

    /// Terms sorted by length of `w`, then window, then exponent.
    pub fn sorted_terms(&self) -> Vec<(&AffinePerm, &[i64], &LaurentPoly)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(w, l, _)| (w.length(), w.window().to_vec(), l.to_vec()));
        v
    }
}

impl fmt::Display for BernsteinElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::bernstein_text(self))
    }
}

impl fmt::Debug for BernsteinElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BernsteinElt[n={}]({})", self.n, self)
    }
}

fn swapped(lambda: &[i64], i: usize) -> Vec<i64> {
    let mut out = lambda.to_vec();
    out.swap(i - 1, i);
    out
}

/// The y-polynomial `y_i (y^lambda - y^{s_i lambda}) / (y_i - y_{i+1})` as
/// a list of exponent vectors with coefficients.
pub fn correction(i: usize, lambda: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
    let n = lambda.len();
    if i == 0 || i >= n {
        return Err(Error::BadIndex { index: i as i64, n });
    }
    let (a, b) = (lambda[i - 1], lambda[i]);
    let (lo, d, sign) = if a >= b { (b, a - b, 1) } else { (a, b - a, -1) };
    let mut quotient = Vec::new();
    for t in 0..d {
        let mut mu = lambda.to_vec();
        mu[i - 1] = lo + d - 1 - t;
        mu[i] = lo + t;
        quotient.push((mu, sign));
    }
    // Multiply back by (y_i - y_{i+1}) to certify the division.
    let mut check: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (mu, c) in &quotient {
        let mut up = mu.clone();
        up[i - 1] += 1;
        *check.entry(up).or_default() += c;
        let mut down = mu.clone();
        down[i] += 1;
        *check.entry(down).or_default() -= c;
    }
    let mut target: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    *target.entry(lambda.to_vec()).or_default() += 1;
    *target.entry(swapped(lambda, i)).or_default() -= 1;
    check.retain(|_, c| *c != 0);
    target.retain(|_, c| *c != 0);
    if check != target {
        return Err(Error::NonIntegralCorrection { i, lambda: lambda.to_vec() });
    }
    Ok(quotient
        .into_iter()
        .map(|(mut mu, c)| {
            mu[i - 1] += 1;
            (mu, c)
        })
        .collect())
}

/// Normal form of `y^lambda T_i`.
pub fn bl_commute(i: usize, lambda: &[i64]) -> Result<BernsteinElt> {
    let n = lambda.len();
    let corr = correction(i, lambda)?;
    let mut out = BernsteinElt::t_w(AffinePerm::simple(n, i)?)?;
    out = BernsteinElt { n, terms: out.terms.into_iter().map(|((w, _), c)| ((w, swapped(lambda, i)), c)).collect() };
    let c = LaurentPoly::q_minus_qinv();
    let e = AffinePerm::identity(n);
    for (mu, k) in corr {
        out.add_term(e.clone(), mu, &c * &LaurentPoly::constant(-k));
    }
    Ok(out)
}

/// Normal form of `y^lambda T_v` for a finite permutation `v`.
fn y_times_t(lambda: &[i64], v: &AffinePerm) -> Result<BernsteinElt> {
    let n = lambda.len();
    let mut acc = BernsteinElt::y(lambda.to_vec());
    for &i in &v.to_rex().word {
        let mut next = BernsteinElt::zero(n);
        for ((w, l), c) in &acc.terms {
            let moved = bl_commute(i, l)?;
            for ((u, mu), d) in moved.terms {
                let prod = HeckeElt::basis(w.clone()).mul_basis(&u);
                for (x, e) in prod.terms() {
                    next.add_term(x.clone(), mu.clone(), &(c * &d) * e);
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

pub fn bernstein_mul(a: &BernsteinElt, b: &BernsteinElt) -> Result<BernsteinElt> {
    if a.n != b.n {
        return Err(Error::RankMismatch { left: a.n, right: b.n });
    }
    let n = a.n;
    let mut out = BernsteinElt::zero(n);
    let mut cache: BTreeMap<(Vec<i64>, AffinePerm), BernsteinElt> = BTreeMap::new();
    for ((w, l), c) in &a.terms {
        for ((v, mu), d) in &b.terms {
            let key = (l.clone(), v.clone());
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), y_times_t(l, v)?);
            }
            let cd = c * d;
            for ((u, nu), e) in &cache[&key].terms {
                let lam: Vec<i64> = nu.iter().zip(mu).map(|(x, y)| x + y).collect();
                let prod = HeckeElt::basis(w.clone()).mul_basis(u);
                for (x, f) in prod.terms() {
                    out.add_term(x.clone(), lam.clone(), &(&cd * e) * f);
                }
            }
        }
    }
    Ok(out)
}

/// Bernstein forms of `rho`, `rho^-1` and `T_0`..`T_{n-1}` in rank `n`.
struct GeneratorImages {
    rho: BernsteinElt,
    rho_inv: BernsteinElt,
    t: Vec<BernsteinElt>,
}

fn finite_t_inv(n: usize, i: usize) -> Result<BernsteinElt> {
    let mut out = BernsteinElt::t_w(AffinePerm::simple(n, i)?)?;
    out.add_term(AffinePerm::identity(n), vec![0; n], LaurentPoly::q_minus_qinv());
    Ok(out)
}

fn generator_images(n: usize) -> Result<GeneratorImages> {
    let mut e1 = vec![0; n];
    e1[0] = 1;
    // rho = y_1 T_1^-1 ... T_{n-1}^-1
    let mut rho = BernsteinElt::y(e1.clone());
    for i in 1..n {
        rho = bernstein_mul(&rho, &finite_t_inv(n, i)?)?;
    }
    // rho^-1 = T_{n-1} ... T_1 y_1^-1
    let mut rho_inv = BernsteinElt::one(n);
    for i in (1..n).rev() {
        rho_inv = bernstein_mul(&rho_inv, &BernsteinElt::t_w(AffinePerm::simple(n, i)?)?)?;
    }
    rho_inv = bernstein_mul(&rho_inv, &BernsteinElt::y(e1.iter().map(|x| -x).collect()))?;
    let mut t = Vec::new();
    if n >= 2 {
        t.push(BernsteinElt::zero(n));
        for i in 1..n {
            t.push(BernsteinElt::t_w(AffinePerm::simple(n, i)?)?);
        }
        t[0] = bernstein_mul(&bernstein_mul(&rho, &t[n - 1])?, &rho_inv)?;
    }
    Ok(GeneratorImages { rho, rho_inv, t })
}

pub fn to_bernstein(a: &HeckeElt) -> Result<BernsteinElt> {
    let n = a.n();
    let g = generator_images(n)?;
    let mut out = BernsteinElt::zero(n);
    for (w, c) in a.terms() {
        let rex = w.to_rex();
        let r = if rex.rho_power >= 0 { &g.rho } else { &g.rho_inv };
        let mut acc = BernsteinElt::one(n);
        for _ in 0..rex.rho_power.unsigned_abs() {
            acc = bernstein_mul(&acc, r)?;
        }
        for &i in &rex.word {
            acc = bernstein_mul(&acc, &g.t[i])?;
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// Standard-basis image of `y^lambda`.
pub fn y_monomial(lambda: &[i64]) -> Result<HeckeElt> {
    let n = lambda.len();
    let mut acc = HeckeElt::one(n);
    for (i, &k) in lambda.iter().enumerate() {
        let y = if k >= 0 { bernstein_y(n, i + 1)? } else { bernstein_y_inv(n, i + 1)? };
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &y;
        }
    }
    Ok(acc)
}

pub fn from_bernstein(b: &BernsteinElt) -> Result<HeckeElt> {
    let n = b.n;
    let mut out = HeckeElt::zero(n);
    let mut cache: BTreeMap<Vec<i64>, HeckeElt> = BTreeMap::new();
    for ((w, l), c) in &b.terms {
        if !cache.contains_key(l) {
            cache.insert(l.clone(), y_monomial(l)?);
        }
        let term = &HeckeElt::basis(w.clone()) * &cache[l];
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// Checks `bl_commute` against the standard-basis product `y^lambda T_i`
/// for every `i` and every `lambda` with entries in `-r..=r`.
/// Returns the first failing `(i, lambda)`.
pub fn verify_commutation_rule(n: usize, r: i64) -> Result<Option<(usize, Vec<i64>)>> {
    let mut lambdas: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        lambdas = lambdas
            .into_iter()
            .flat_map(|l| {
                (-r..=r).map(move |x| {
                    let mut l = l.clone();
                    l.push(x);
                    l
                })
            })
            .collect();
    }
    for i in 1..n {
        let t = HeckeElt::t(n, i)?;
        for l in &lambdas {
            let lhs = &y_monomial(l)? * &t;
            if from_bernstein(&bl_commute(i, l)?)? != lhs {
                return Ok(Some((i, l.clone())));
            }
        }
    }
    Ok(None)
}
