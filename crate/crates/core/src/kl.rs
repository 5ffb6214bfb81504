//! Kazhdan-Lusztig basis `{rho^m b_w}` in rank 2.
//!
//! Every element of the affine Weyl group of rank 2 has a unique reduced
//! expression, an alternating word in `{0, 1}`. Bruhat order is "shorter or
//! equal", so
//!
//! ```text
//! b_w = sum_{u <= w} q^{l(w) - l(u)} T_u,      T_w = sum_{u <= w} (-q)^{l(w) - l(u)} b_u.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::weyl::{AffinePerm, ReducedExpr};

/// Label of the basis element `rho^m b_w`, `w` given by its alternating rex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KLLabel {
    pub m: i64,
    word: Vec<usize>,
}

impl KLLabel {
    pub fn new(m: i64, word: Vec<usize>) -> Result<Self> {
        if word.iter().any(|&i| i > 1) {
            let bad = word.iter().copied().find(|&i| i > 1).unwrap();
            return Err(Error::BadIndex { index: bad as i64, n: 2 });
        }
        if word.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::NotAlternating(word));
        }
        Ok(Self { m, word })
    }

    pub fn identity() -> Self {
        Self { m: 0, word: Vec::new() }
    }

    /// Alternating word of length `len` starting with `start`.
    pub fn starting(len: usize, start: usize) -> Self {
        Self { m: 0, word: (0..len).map(|t| (start + t) % 2).collect() }
    }

    /// Alternating word of length `len` ending with `end`.
    pub fn ending(len: usize, end: usize) -> Self {
        Self { m: 0, word: (0..len).map(|t| (end + len - 1 - t) % 2).collect() }
    }

    pub fn with_rho(mut self, m: i64) -> Self {
        self.m = m;
        self
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.word.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.word.last().copied()
    }

    /// Swap the colours `0 <-> 1`; `rho b_w rho^-1 = b_{flip(w)}`.
    pub fn flip(&self) -> Self {
        Self { m: self.m, word: self.word.iter().map(|i| 1 - i).collect() }
    }

    pub fn perm(&self) -> AffinePerm {
        AffinePerm::from_rex(&ReducedExpr { rho_power: self.m, word: self.word.clone() }, 2)
            .expect("alternating rank-2 words are valid")
    }

    pub fn from_perm(w: &AffinePerm) -> Result<Self> {
        if w.n() != 2 {
            return Err(Error::RankUnsupported { n: w.n() });
        }
        let rex = w.to_rex();
        Ok(Self { m: rex.rho_power, word: rex.word })
    }

    /// All labels with rho-power 0 and length at most `max_len`.
    pub fn all_up_to(max_len: usize) -> Vec<KLLabel> {
        let mut out = vec![KLLabel::identity()];
        for len in 1..=max_len {
            out.push(KLLabel::starting(len, 0));
            out.push(KLLabel::starting(len, 1));
        }
        out
    }
}

impl fmt::Display for KLLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: String = self.word.iter().map(|i| i.to_string()).collect();
        match (self.m, w.is_empty()) {
            (0, true) => write!(f, "b_e"),
            (0, false) => write!(f, "b{w}"),
            (m, true) => write!(f, "rho^{m}"),
            (m, false) => write!(f, "rho^{m}*b{w}"),
        }
    }
}

/// A finite combination of KL basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KlElt {
    terms: BTreeMap<KLLabel, LaurentPoly>,
}

impl KlElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(l: KLLabel) -> Self {
        let mut out = Self::zero();
        out.add_term(l, LaurentPoly::one());
        out
    }

    pub fn add_term(&mut self, l: KLLabel, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&mut self, other: &KlElt) {
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> KlElt {
        let mut out = Self::zero();
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x * c);
        }
        out
    }

    pub fn coeff(&self, l: &KLLabel) -> LaurentPoly {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KLLabel, &LaurentPoly)> {
        self.terms.iter()
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

    pub fn to_std(&self) -> HeckeElt {
        let mut out = HeckeElt::zero(2);
        for (l, c) in &self.terms {
            for (w, x) in kl_to_std(l).terms() {
                out.add_term(w.clone(), x * c);
            }
        }
        out
    }
}

impl fmt::Display for KlElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::kl_text(self))
    }
}

fn lower_interval(w: &AffinePerm) -> Vec<AffinePerm> {
    KLLabel::all_up_to(w.length())
        .into_iter()
        .map(|l| l.perm())
        .filter(|u| u.bruhat_leq(w).expect("shift-0 rank-2 elements"))
        .collect()
}

/// Standard-basis expansion of `rho^m b_w`.
pub fn kl_to_std(l: &KLLabel) -> HeckeElt {
    let w = KLLabel { m: 0, word: l.word.clone() }.perm();
    let lw = w.length() as i64;
    let mut out = HeckeElt::zero(2);
    for u in lower_interval(&w) {
        let c = LaurentPoly::q_pow(lw - u.length() as i64);
        out.add_term(u.rho_mul(l.m), c);
    }
    out
}

/// KL-basis coordinates of a rank-2 element.
pub fn std_to_kl(a: &HeckeElt) -> Result<KlElt> {
    if a.n() != 2 {
        return Err(Error::RankUnsupported { n: a.n() });
    }
    let mut out = KlElt::zero();
    for (x, c) in a.terms() {
        let m = x.shift();
        let w = x.rho_mul(-m);
        let lw = w.length() as i64;
        for u in lower_interval(&w) {
            let d = lw - u.length() as i64;
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let coeff = LaurentPoly::monomial(sign, d);
            let label = KLLabel::from_perm(&u)?.with_rho(m);
            out.add_term(label, &coeff * c);
        }
    }
    Ok(out)
}

/// The multiplication families of the closed KL product rule, indexed by
/// the colours `(first of u, last of u, first of v, last of v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultFamily {
    /// 1..=8 in the order `11·11, 01·11, 11·10, 10·01, 11·01, 10·11, 01·01, 11·00`.
    pub line: u8,
    /// Whether the colours are swapped relative to the listed pattern.
    pub swapped: bool,
}

/// Family of the product `b_u b_v` for nonempty `u, v`.
pub fn mult_family(u: &KLLabel, v: &KLLabel) -> Option<MultFamily> {
    let (i, j) = (u.first()?, u.last()?);
    let (k, l) = (v.first()?, v.last()?);
    let pattern = [i, j, k, l];
    const LINES: [[usize; 4]; 8] = [
        [1, 1, 1, 1],
        [0, 1, 1, 1],
        [1, 1, 1, 0],
        [1, 0, 0, 1],
        [1, 1, 0, 1],
        [1, 0, 1, 1],
        [0, 1, 0, 1],
        [1, 1, 0, 0],
    ];
    for (idx, p) in LINES.iter().enumerate() {
        if *p == pattern {
            return Some(MultFamily { line: idx as u8 + 1, swapped: false });
        }
        let sw = p.map(|c| 1 - c);
        if sw == pattern {
            return Some(MultFamily { line: idx as u8 + 1, swapped: true });
        }
    }
    None
}

/// Closed-form product `(rho^a b_u)(rho^c b_v)`.
///
/// Moving `rho^c` left flips the colours of `u` `c` times. For nonempty
/// words meeting in the same colour the product is `[2]` times a
/// Clebsch-Gordan string of lengths `m+n-1, m+n-3, ..., |m-n|+1`; otherwise
/// it is the string `m+n, m+n-2, ..., |m-n|` with interior coefficients 2,
/// where a length-0 end term exists only if `u` starts and `v` ends in the
/// same colour.
pub fn kl_mul_closed(a: &KLLabel, b: &KLLabel) -> KlElt {
    let u = if b.m.rem_euclid(2) == 1 { a.flip() } else { a.clone() };
    let m_total = a.m + b.m;
    let v = b;
    let (m, n) = (u.len(), v.len());
    if m == 0 {
        return KlElt::basis(KLLabel { m: m_total, word: v.word.clone() });
    }
    if n == 0 {
        return KlElt::basis(KLLabel { m: m_total, word: u.word.clone() });
    }
    let start = u.first().unwrap();
    let end = v.last().unwrap();
    let mut out = KlElt::zero();
    let lo = m.min(n);
    if u.last() == v.first() {
        let two = LaurentPoly::quantum_two();
        for t in 0..lo {
            let len = m + n - 1 - 2 * t;
            out.add_term(KLLabel::starting(len, start).with_rho(m_total), two.clone());
        }
    } else {
        for t in 0..=lo {
            let len = m + n - 2 * t;
            if len == 0 && start != end {
                continue;
            }
            let c = if t == 0 || t == lo { 1 } else { 2 };
            out.add_term(KLLabel::starting(len, start).with_rho(m_total), LaurentPoly::constant(c));
        }
    }
    out
}

/// Product of two KL elements through the closed form.
pub fn kl_elt_mul(x: &KlElt, y: &KlElt) -> KlElt {
    let mut out = KlElt::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.add(&kl_mul_closed(a, b).scale(&(ca * cb)));
        }
    }
    out
}
