//! The extended affine symmetric group in window notation.
//!
//! An element `w` is a bijection of `Z` with `w(i + n) = w(i) + n`, stored as
//! its window `[w(1), ..., w(n)]`. The rho-power of `w` is
//! `(sum_i w(i) - i) / n`; `rho` itself is `i -> i + 1`. Composition is
//! `(uv)(i) = u(v(i))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffinePerm {
    window: Vec<i64>,
}

/// `w = rho^rho_power * s_{word[0]} ... s_{word[last]}` with `word` reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedExpr {
    pub rho_power: i64,
    pub word: Vec<usize>,
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::InvalidWindow(window));
        }
        let mut seen = vec![false; n as usize];
        for &v in &window {
            let r = v.rem_euclid(n) as usize;
            if seen[r] {
                return Err(Error::InvalidWindow(window));
            }
            seen[r] = true;
        }
        let total: i64 = window.iter().enumerate().map(|(i, v)| v - (i as i64 + 1)).sum();
        if total % n != 0 {
            return Err(Error::InvalidWindow(window));
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i64).collect() }
    }

    /// The simple reflection `s_i`; `s_0` swaps `0` and `1` (hence `n` and `n+1`).
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if n < 2 || i >= n {
            return Err(Error::BadIndex { index: i as i64, n });
        }
        Ok(Self::identity(n).mul_simple(i))
    }

    pub fn rho(n: usize, m: i64) -> Self {
        Self { window: (1..=n as i64).map(|i| i + m).collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// Evaluates the bijection at an arbitrary integer.
    pub fn apply(&self, j: i64) -> i64 {
        let n = self.n() as i64;
        let r = (j - 1).rem_euclid(n);
        let k = (j - 1).div_euclid(n);
        self.window[r as usize] + k * n
    }

    pub fn shift(&self) -> i64 {
        let n = self.n() as i64;
        let total: i64 = self.window.iter().enumerate().map(|(i, v)| v - (i as i64 + 1)).sum();
        total / n
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, v)| *v == i as i64 + 1)
    }

    /// Shift 0 and window a permutation of `1..=n`.
    pub fn is_finite(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().all(|v| (1..=n).contains(v))
    }

    pub fn compose(&self, other: &AffinePerm) -> Result<AffinePerm> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(AffinePerm { window: other.window.iter().map(|v| self.apply(*v)).collect() })
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.n() as i64;
        let mut window = vec![0; self.n()];
        for (idx, v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let k = (v - 1).div_euclid(n);
            window[r as usize] = idx as i64 + 1 - k * n;
        }
        AffinePerm { window }
    }

    /// `w * s_i`.
    pub fn mul_simple(&self, i: usize) -> AffinePerm {
        let n = self.n();
        let mut window = self.window.clone();
        if i == 0 {
            let first = window[0];
            window[0] = window[n - 1] - n as i64;
            window[n - 1] = first + n as i64;
        } else {
            window.swap(i - 1, i);
        }
        AffinePerm { window }
    }

    /// `s_i * w`.
    pub fn simple_mul(&self, i: usize) -> AffinePerm {
        let n = self.n() as i64;
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = v.rem_euclid(n);
                if r == i.rem_euclid(n) {
                    v + 1
                } else if r == (i + 1).rem_euclid(n) {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        AffinePerm { window }
    }

    /// `w * rho^m`.
    pub fn mul_rho(&self, m: i64) -> AffinePerm {
        let n = self.n() as i64;
        AffinePerm { window: (1..=n).map(|j| self.apply(j + m)).collect() }
    }

    /// `rho^m * w`.
    pub fn rho_mul(&self, m: i64) -> AffinePerm {
        AffinePerm { window: self.window.iter().map(|v| v + m).collect() }
    }

    /// `rho^m w rho^-m`.
    pub fn rho_conjugate(&self, m: i64) -> AffinePerm {
        self.rho_mul(m).mul_rho(-m)
    }

    /// Coxeter length of the non-extended part:
    /// `sum_{i<j} |floor((w(j) - w(i)) / n)|`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let mut total = 0i64;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                total += (self.window[j] - self.window[i]).div_euclid(n).abs();
            }
        }
        total as usize
    }

    pub fn is_right_descent(&self, i: usize) -> bool {
        let n = self.n();
        if n < 2 {
            return false;
        }
        if i == 0 {
            self.window[n - 1] - n as i64 > self.window[0]
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    pub fn right_descents(&self) -> Vec<usize> {
        if self.n() < 2 {
            return Vec::new();
        }
        (0..self.n()).filter(|&i| self.is_right_descent(i)).collect()
    }

    /// Canonical rex: repeatedly strip the smallest right descent.
    pub fn to_rex(&self) -> ReducedExpr {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(&i) = w.right_descents().first() {
            rev.push(i);
            w = w.mul_simple(i);
        }
        rev.reverse();
        ReducedExpr { rho_power: w.shift(), word: rev }
    }

    /// Group element of `rho^m s_{word...}`; the word need not be reduced.
    pub fn from_rex(rex: &ReducedExpr, n: usize) -> Result<AffinePerm> {
        if n == 0 {
            return Err(Error::BadIndex { index: 0, n });
        }
        let mut w = AffinePerm::rho(n, rex.rho_power);
        for &i in &rex.word {
            if n < 2 || i >= n {
                return Err(Error::BadIndex { index: i as i64, n });
            }
            w = w.mul_simple(i);
        }
        Ok(w)
    }

    /// Bruhat order on the shift-zero part.
    pub fn bruhat_leq(&self, other: &AffinePerm) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        for w in [self, other] {
            if w.shift() != 0 {
                return Err(Error::ShiftNonzero { shift: w.shift() });
            }
        }
        Ok(bruhat_rec(self.clone(), other.clone()))
    }
}

fn bruhat_rec(mut u: AffinePerm, mut w: AffinePerm) -> bool {
    loop {
        let (lu, lw) = (u.length(), w.length());
        if lu > lw {
            return false;
        }
        if lw == 0 {
            return u.is_identity();
        }
        if lu == lw {
            return u == w;
        }
        let s = w.right_descents()[0];
        if u.is_right_descent(s) {
            u = u.mul_simple(s);
        }
        w = w.mul_simple(s);
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePerm{:?}", self.window)
    }
}

impl fmt::Display for ReducedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.word.iter().map(|i| format!("s_{i}")).collect();
        match (self.rho_power, word.is_empty()) {
            (0, true) => write!(f, "e"),
            (0, false) => write!(f, "{}", word.join(" ")),
            (m, true) => write!(f, "rho^{m}"),
            (m, false) => write!(f, "rho^{m} * {}", word.join(" ")),
        }
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rex())
    }
}

#[derive(Deserialize)]
struct AffinePermJson {
    n: usize,
    window: Vec<i64>,
}

impl<'de> Deserialize<'de> for AffinePerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = AffinePermJson::deserialize(d)?;
        if raw.window.len() != raw.n {
            return Err(D::Error::custom("window length does not match n"));
        }
        AffinePerm::new(raw.window).map_err(D::Error::custom)
    }
}

impl AffinePerm {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n(), "window": self.window })
    }
}
