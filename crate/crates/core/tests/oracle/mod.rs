//! A small standalone model of the extended affine Hecke algebra, used to
//! cross-check the library. Elements are maps from windows to coefficients;
//! multiplication only uses the descent test `w(i) > w(i+1)`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use affine_hecke::{HeckeElt, KLLabel, LaurentPoly as P};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Perm(pub Vec<i64>);

impl Perm {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        self.0[(i - 1).rem_euclid(n) as usize] + (i - 1).div_euclid(n) * n
    }

    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as i64).collect())
    }

    pub fn rho(n: usize, m: i64) -> Perm {
        Perm((1..=n as i64).map(|i| i + m).collect())
    }

    /// `s_i` swaps `i` and `i+1` modulo `n`.
    pub fn s(n: usize, i: usize) -> Perm {
        let n = n as i64;
        let i = i as i64;
        Perm(
            (1..=n)
                .map(|j| {
                    if (j - i).rem_euclid(n) == 0 {
                        j + 1
                    } else if (j - i - 1).rem_euclid(n) == 0 {
                        j - 1
                    } else {
                        j
                    }
                })
                .collect(),
        )
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm((1..=self.n() as i64).map(|i| self.at(other.at(i))).collect())
    }

    pub fn descent(&self, i: usize) -> bool {
        self.at(i as i64) > self.at(i as i64 + 1)
    }

    /// `(m, word)` with `self = rho^m s_word`, word reduced.
    pub fn rex(&self) -> (i64, Vec<usize>) {
        let n = self.n();
        let mut g = self.clone();
        let mut rev = Vec::new();
        if n >= 2 {
            while let Some(i) = (0..n).find(|&i| g.descent(i)) {
                rev.push(i);
                g = g.compose(&Perm::s(n, i));
            }
        }
        rev.reverse();
        (g.0[0] - 1, rev)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt {
    pub n: usize,
    pub terms: BTreeMap<Perm, P>,
}

fn q() -> P {
    P::q()
}

fn qi() -> P {
    P::q_pow(-1)
}

impl Elt {
    pub fn zero(n: usize) -> Elt {
        Elt { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Elt {
        Elt::term(Perm::identity(n), P::one())
    }

    pub fn scalar(n: usize, c: P) -> Elt {
        Elt::term(Perm::identity(n), c)
    }

    pub fn term(g: Perm, c: P) -> Elt {
        let mut e = Elt::zero(g.n());
        e.add_term(g, c);
        e
    }

    pub fn add_term(&mut self, g: Perm, c: P) {
        let v = self.terms.get(&g).cloned().unwrap_or_else(P::zero);
        let s = &v + &c;
        if s.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Elt) -> Elt {
        let mut r = self.clone();
        for (g, c) in &o.terms {
            r.add_term(g.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &P) -> Elt {
        let mut r = Elt::zero(self.n);
        for (g, x) in &self.terms {
            r.add_term(g.clone(), x * c);
        }
        r
    }

    pub fn sub(&self, o: &Elt) -> Elt {
        self.add(&o.scale(&-P::one()))
    }

    pub fn mul_t(&self, i: usize) -> Elt {
        let s = Perm::s(self.n, i);
        let mut r = Elt::zero(self.n);
        for (g, c) in &self.terms {
            let gs = g.compose(&s);
            if g.descent(i) {
                r.add_term(g.clone(), &(&qi() - &q()) * c);
            }
            r.add_term(gs, c.clone());
        }
        r
    }

    pub fn mul_t_inv(&self, i: usize) -> Elt {
        self.mul_t(i).add(&self.scale(&(&q() - &qi())))
    }

    pub fn mul_rho(&self, m: i64) -> Elt {
        let r = Perm::rho(self.n, m);
        let mut out = Elt::zero(self.n);
        for (g, c) in &self.terms {
            out.add_term(g.compose(&r), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Elt) -> Elt {
        assert_eq!(self.n, o.n);
        let mut out = Elt::zero(self.n);
        for (g, c) in &o.terms {
            let (m, w) = g.rex();
            let mut acc = self.mul_rho(m);
            for i in w {
                acc = acc.mul_t(i);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Elt {
        (0..k).fold(Elt::one(self.n), |a, _| a.mul(self))
    }

    pub fn omega(&self) -> Elt {
        let mut out = Elt::zero(self.n);
        for (g, c) in &self.terms {
            let (m, w) = g.rex();
            let mut acc = Elt::one(self.n);
            for &i in w.iter().rev() {
                acc = acc.mul_t_inv(i);
            }
            out = out.add(&acc.mul_rho(-m).scale(&c.bar()));
        }
        out
    }

    pub fn trace(&self) -> P {
        self.terms.get(&Perm::identity(self.n)).cloned().unwrap_or_else(P::zero)
    }

    pub fn form(&self, o: &Elt) -> P {
        self.omega().mul(o).trace()
    }
}

pub fn t(n: usize, i: usize) -> Elt {
    Elt::one(n).mul_t(i)
}

pub fn t_inv(n: usize, i: usize) -> Elt {
    Elt::one(n).mul_t_inv(i)
}

pub fn rho(n: usize, m: i64) -> Elt {
    Elt::one(n).mul_rho(m)
}

pub fn b(n: usize, i: usize) -> Elt {
    t(n, i).add(&Elt::scalar(n, q()))
}

/// The library element, rebuilt here generator by generator.
pub fn from_lib(h: &HeckeElt) -> Elt {
    let mut out = Elt::zero(h.n());
    for (w, c) in h.terms() {
        let rex = w.to_rex();
        let mut acc = rho(h.n(), rex.rho_power);
        for &i in &rex.word {
            acc = acc.mul_t(i);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `b_w` in rank 2 from `b_{ws} = b_w b_s - b_{w minus its last letter}`.
pub fn kl_word(word: &[usize]) -> Elt {
    if word.is_empty() {
        return Elt::one(2);
    }
    let mut prev = Elt::one(2);
    let mut cur = b(2, word[0]);
    for (k, &i) in word.iter().enumerate().skip(1) {
        let mut next = cur.mul(&b(2, i));
        if k >= 2 {
            next = next.sub(&prev);
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub fn kl(l: &KLLabel) -> Elt {
    rho(2, l.m).mul(&kl_word(l.word()))
}

/// Image of an arbitrary element under the algebra map determined by
/// `rho -> r`, `rho^-1 -> ri`, `T_i -> ts[i]`.
pub fn fold(a: &Elt, n: usize, r: &Elt, ri: &Elt, ts: &[Elt]) -> Elt {
    let mut out = Elt::zero(n);
    for (g, c) in &a.terms {
        let (m, w) = g.rex();
        let base = if m >= 0 { r } else { ri };
        let mut acc = Elt::one(n);
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(base);
        }
        for i in w {
            acc = acc.mul(&ts[i]);
        }
        out = out.add(&acc.scale(c));
    }
    out
}
