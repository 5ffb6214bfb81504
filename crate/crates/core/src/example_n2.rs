//! The rank-2 module `U = H_2 / I`, `I` the left ideal generated by
//! `rho^2 - 1` and `b_1 rho - q^-1 b_1`, truncated at degree `N`, and its
//! projection onto `W`.
//!
//! `u_k` is the image of `b_w` with `w` of length `k` ending in 1 (the empty
//! word for `k = 0`) and `u'_k = rho u_k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::{Generator, HeckeElt};
use crate::kl::{kl_to_std, std_to_kl, KLLabel};
use crate::laurent::LaurentPoly;
use crate::modules::{module_w, Matrix};

pub const DEFAULT_BOUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UBasis {
    U(usize),
    UPrime(usize),
}

impl UBasis {
    pub fn degree(self) -> usize {
        match self {
            UBasis::U(k) | UBasis::UPrime(k) => k,
        }
    }

    pub fn is_prime(self) -> bool {
        matches!(self, UBasis::UPrime(_))
    }

    pub fn swap(self) -> UBasis {
        match self {
            UBasis::U(k) => UBasis::UPrime(k),
            UBasis::UPrime(k) => UBasis::U(k),
        }
    }

    /// All basis vectors of degree at most `max`.
    pub fn all_up_to(max: usize) -> Vec<UBasis> {
        (0..=max).flat_map(|k| [UBasis::U(k), UBasis::UPrime(k)]).collect()
    }

    /// A Hecke element projecting onto this basis vector.
    pub fn lift(self) -> HeckeElt {
        let b = kl_to_std(&KLLabel::ending(self.degree(), 1));
        if self.is_prime() {
            b.rho_mul(1)
        } else {
            b
        }
    }
}

impl fmt::Display for UBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UBasis::U(k) => write!(f, "u{k}"),
            UBasis::UPrime(k) => write!(f, "u'{k}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct UVec {
    bound: usize,
    coeffs: BTreeMap<UBasis, LaurentPoly>,
}

fn check_degree(k: usize, bound: usize) -> Result<()> {
    if k > bound {
        return Err(Error::TruncationExceeded { bound, needed: k });
    }
    Ok(())
}

impl UVec {
    pub fn zero(bound: usize) -> Self {
        Self { bound, coeffs: BTreeMap::new() }
    }

    pub fn basis(b: UBasis, bound: usize) -> Result<Self> {
        let mut out = Self::zero(bound);
        out.add_term(b, LaurentPoly::one())?;
        Ok(out)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(&self, bound: usize) -> Result<Self> {
        let mut out = Self::zero(bound);
        for (b, c) in &self.coeffs {
            out.add_term(*b, c.clone())?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, b: UBasis, c: LaurentPoly) -> Result<()> {
        check_degree(b.degree(), self.bound)?;
        if c.is_zero() {
            return Ok(());
        }
        let e = self.coeffs.entry(b).or_default();
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&b);
        }
        Ok(())
    }

    pub fn coeff(&self, b: UBasis) -> LaurentPoly {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (UBasis, &LaurentPoly)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(|b| b.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &LaurentPoly) -> UVec {
        let mut out = Self::zero(self.bound);
        for (b, x) in &self.coeffs {
            out.add_term(*b, x * c).expect("same bound");
        }
        out
    }

    /// Sum; the bound of the result is the larger of the two.
    pub fn add(&self, other: &UVec) -> UVec {
        let mut out = self.with_bound(self.bound.max(other.bound)).expect("bound only grows");
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone()).expect("bound only grows");
        }
        out
    }

    pub fn sub(&self, other: &UVec) -> UVec {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn lift(&self) -> HeckeElt {
        let mut out = HeckeElt::zero(2);
        for (b, c) in &self.coeffs {
            out = &out + &b.lift().scale(c);
        }
        out
    }
}

impl fmt::Display for UVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::uvec_text(self))
    }
}

impl fmt::Debug for UVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UVec[N={}]({})", self.bound, self)
    }
}

/// Image of a KL label in `U`.
fn reduce_label(l: &KLLabel) -> (UBasis, LaurentPoly) {
    let k = l.len();
    let odd = l.m.rem_euclid(2) == 1;
    let ends_in_zero = l.last() == Some(0);
    let b = if odd ^ ends_in_zero { UBasis::UPrime(k) } else { UBasis::U(k) };
    let c = if ends_in_zero { LaurentPoly::q_pow(-1) } else { LaurentPoly::one() };
    (b, c)
}

/// Projection `H_2 -> U` followed by truncation at `bound`.
pub fn u_reduce(a: &HeckeElt, bound: usize) -> Result<UVec> {
    if a.n() != 2 {
        return Err(Error::RankUnsupported { n: a.n() });
    }
    let mut out = UVec::zero(bound);
    for (l, c) in std_to_kl(a)?.terms() {
        let (b, x) = reduce_label(l);
        out.add_term(b, &x * c)?;
    }
    Ok(out)
}

/// `b_i` acting on a basis vector, following the closed table.
fn b_on_basis(i: usize, v: UBasis, bound: usize) -> Result<UVec> {
    let two = LaurentPoly::quantum_two();
    let qi = LaurentPoly::q_pow(-1);
    let one = LaurentPoly::one();
    let k = v.degree();
    let even = k.is_multiple_of(2);
    let same = |j: usize| -> UBasis {
        if v.is_prime() {
            UBasis::UPrime(j)
        } else {
            UBasis::U(j)
        }
    };
    // Which colour absorbs: for u_k it is b_1 on odd k, b_0 on even k > 0;
    // for u'_k the roles of 0 and 1 are exchanged.
    let absorbing = (i == 1) ^ v.is_prime() ^ even;
    let mut terms: Vec<(UBasis, LaurentPoly)> = Vec::new();
    if k == 0 {
        match (i, v.is_prime()) {
            (1, false) | (0, true) => terms.push((same(1), one)),
            (0, false) => terms.push((UBasis::UPrime(1), qi)),
            _ => terms.push((UBasis::U(1), qi)),
        }
    } else if absorbing {
        terms.push((v, two));
    } else {
        terms.push((same(k + 1), one.clone()));
        if k >= 2 {
            terms.push((same(k - 1), one));
        }
    }
    let mut out = UVec::zero(bound);
    for (b, c) in terms {
        out.add_term(b, c)?;
    }
    Ok(out)
}

fn gen_on_basis(g: Generator, v: UBasis, bound: usize) -> Result<UVec> {
    match g {
        Generator::Rho(m) => UVec::basis(if m.rem_euclid(2) == 1 { v.swap() } else { v }, bound),
        Generator::B(i) if i <= 1 => b_on_basis(i, v, bound),
        Generator::T(i) if i <= 1 => {
            Ok(b_on_basis(i, v, bound)?.sub(&UVec::basis(v, bound)?.scale(&LaurentPoly::q())))
        }
        Generator::TInv(i) if i <= 1 => {
            Ok(b_on_basis(i, v, bound)?.sub(&UVec::basis(v, bound)?.scale(&LaurentPoly::q_pow(-1))))
        }
        Generator::B(i) | Generator::T(i) | Generator::TInv(i) => Err(Error::BadIndex { index: i as i64, n: 2 }),
    }
}

/// Generator action through the closed table.
pub fn u_act_closed(g: Generator, x: &UVec) -> Result<UVec> {
    let mut out = UVec::zero(x.bound);
    for (b, c) in x.terms() {
        out = out.add(&gen_on_basis(g, b, x.bound)?.scale(c));
    }
    Ok(out)
}

/// Generator action by lifting to `H_2`, multiplying, and reducing.
pub fn u_act_multiply(g: Generator, x: &UVec) -> Result<UVec> {
    u_act_elt_multiply(&HeckeElt::generator(2, g)?, x)
}

/// Action of an arbitrary element, via lift, multiply and reduce.
pub fn u_act_elt_multiply(a: &HeckeElt, x: &UVec) -> Result<UVec> {
    if a.n() != 2 {
        return Err(Error::RankUnsupported { n: a.n() });
    }
    u_reduce(&(a * &x.lift()), x.bound)
}

/// Action of an arbitrary element by applying the closed table letter by
/// letter along each canonical rex.
pub fn u_act_elt_closed(a: &HeckeElt, x: &UVec) -> Result<UVec> {
    if a.n() != 2 {
        return Err(Error::RankUnsupported { n: a.n() });
    }
    let mut out = UVec::zero(x.bound);
    for (w, c) in a.terms() {
        let rex = w.to_rex();
        let mut v = x.clone();
        for &i in rex.word.iter().rev() {
            v = u_act_closed(Generator::T(i), &v)?;
        }
        v = u_act_closed(Generator::Rho(rex.rho_power), &v)?;
        out = out.add(&v.scale(c));
    }
    Ok(out)
}

fn e0() -> Vec<LaurentPoly> {
    vec![LaurentPoly::one(), LaurentPoly::zero()]
}

/// `pi(u_k) = [b_w]_W w` and `pi(u'_k) = [rho]_W pi(u_k)`, in the basis `{w, w'}`.
pub fn pi_uw_basis(b: UBasis) -> Result<Vec<LaurentPoly>> {
    let w = module_w();
    let bw = w.matrix_of(&kl_to_std(&KLLabel::ending(b.degree(), 1)))?;
    let v = bw.apply(&e0());
    Ok(if b.is_prime() { w.rho().apply(&v) } else { v })
}

pub fn pi_uw(x: &UVec) -> Result<Vec<LaurentPoly>> {
    let mut out = vec![LaurentPoly::zero(), LaurentPoly::zero()];
    for (b, c) in x.terms() {
        let v = pi_uw_basis(b)?;
        for (o, y) in out.iter_mut().zip(v) {
            *o += &(&y * c);
        }
    }
    Ok(out)
}

/// Images of `u_k` and `u'_k` in `U/J`, coordinates w.r.t. `{bar u_0, bar u'_0}`,
/// from the spanning recursion:
/// `u_1 = u'_0 + q u_0`, `u_2 = b_0 u_1`, and for `k > 2`
/// `u_k = b_1 u_{k-1} - u_{k-2}` (odd `k`), `u_k = b_0 u_{k-1} - u_{k-2}` (even `k`),
/// with `b_1 u_0 = u'_0 + q u_0`, `b_1 u'_0 = q^-1 u'_0 + u_0`,
/// `b_0 u_0 = q^-1 u_0 + u'_0`, `b_0 u'_0 = u_0 + q u'_0` and `rho` swapping.
pub fn quotient_recursion(max: usize) -> Vec<(Vec<LaurentPoly>, Vec<LaurentPoly>)> {
    let q = LaurentPoly::q;
    let qi = || LaurentPoly::q_pow(-1);
    let one = LaurentPoly::one;
    let b1 = Matrix::from_rows(vec![vec![q(), one()], vec![one(), qi()]]).unwrap();
    let b0 = Matrix::from_rows(vec![vec![qi(), one()], vec![one(), q()]]).unwrap();
    let swap = |v: &Vec<LaurentPoly>| vec![v[1].clone(), v[0].clone()];
    let sub = |a: &Vec<LaurentPoly>, b: &Vec<LaurentPoly>| -> Vec<LaurentPoly> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let mut u: Vec<Vec<LaurentPoly>> = vec![e0()];
    if max >= 1 {
        u.push(vec![q(), one()]);
    }
    if max >= 2 {
        u.push(b0.apply(&u[1]));
    }
    for k in 3..=max {
        let b = if k % 2 == 1 { &b1 } else { &b0 };
        let next = sub(&b.apply(&u[k - 1]), &u[k - 2]);
        u.push(next);
    }
    u.into_iter()
        .map(|v| {
            let p = swap(&v);
            (v, p)
        })
        .collect()
}

/// Left ideal generators `rho^2 - 1` and `b_1 rho - q^-1 b_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealGen {
    RhoSquaredMinusOne,
    B1RhoMinusB1,
}

impl IdealGen {
    pub fn element(self) -> HeckeElt {
        match self {
            IdealGen::RhoSquaredMinusOne => &HeckeElt::rho(2, 2) - &HeckeElt::one(2),
            IdealGen::B1RhoMinusB1 => {
                let b1 = HeckeElt::b(2, 1).expect("rank 2");
                &b1.mul_rho(1) - &b1.scale(&LaurentPoly::q_pow(-1))
            }
        }
    }
}

/// `u_reduce(x g)`; zero for every `x`.
pub fn left_ideal_probe(g: IdealGen, x: &HeckeElt, bound: usize) -> Result<UVec> {
    u_reduce(&(x * &g.element()), bound)
}

/// The generator `T_1 u_0 - rho u_0` of `J`.
pub fn j_generator(bound: usize) -> Result<UVec> {
    let u0 = UVec::basis(UBasis::U(0), bound)?;
    Ok(u_act_closed(Generator::T(1), &u0)?.sub(&u_act_closed(Generator::Rho(1), &u0)?))
}
