//! Parabolic embeddings `psi_L`, `psi_R`, `psi_{k,n-k}`, the Bernstein
//! elements `y_i` in the standard presentation, and minimal coset
//! representatives for `S_k x S_{n-k}` in `S_n`.

use crate::error::{Error, Result};
use crate::hecke::{Generator, HeckeElt};
use crate::weyl::AffinePerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParabolicContext {
    n: usize,
    k: usize,
}

/// A generator of a source algebra `H_k` or `H_{n-k}`.
///
/// Rank-1 sources are group algebras of `<rho>`, so only `Rho`/`RhoInv` are
/// valid there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceGen {
    T(usize),
    TInv(usize),
    Rho,
    RhoInv,
}

impl SourceGen {
    /// All generators of a source algebra of rank `r`.
    pub fn all(r: usize) -> Vec<SourceGen> {
        let mut out = vec![SourceGen::Rho, SourceGen::RhoInv];
        if r >= 2 {
            for i in 0..r {
                out.push(SourceGen::T(i));
                out.push(SourceGen::TInv(i));
            }
        }
        out
    }

    pub fn element(self, r: usize) -> Result<HeckeElt> {
        match self {
            SourceGen::T(i) => HeckeElt::t(r, i),
            SourceGen::TInv(i) => HeckeElt::t_inv(r, i),
            SourceGen::Rho => Ok(HeckeElt::rho(r, 1)),
            SourceGen::RhoInv => Ok(HeckeElt::rho(r, -1)),
        }
    }
}

fn prod(n: usize, gens: &[Generator]) -> HeckeElt {
    let mut acc = HeckeElt::one(n);
    for g in gens {
        acc = match *g {
            Generator::T(i) => acc.mul_t(i),
            Generator::TInv(i) => acc.mul_t_inv(i),
            Generator::Rho(m) => acc.mul_rho(m),
            Generator::B(i) => &acc * &HeckeElt::b(n, i).expect("index checked"),
        };
    }
    acc
}

fn invert_word(gens: &[Generator]) -> Vec<Generator> {
    gens.iter()
        .rev()
        .map(|g| match *g {
            Generator::T(i) => Generator::TInv(i),
            Generator::TInv(i) => Generator::T(i),
            Generator::Rho(m) => Generator::Rho(-m),
            Generator::B(_) => panic!("b_i is not invertible"),
        })
        .collect()
}

fn check_source(gen: SourceGen, r: usize) -> Result<()> {
    match gen {
        SourceGen::T(i) | SourceGen::TInv(i) if r < 2 || i >= r => {
            Err(Error::BadIndex { index: i as i64, n: r })
        }
        _ => Ok(()),
    }
}

impl ParabolicContext {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k == 0 || k >= n {
            return Err(Error::BadIndex { index: k as i64, n });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Generator word of `psi_L(g)` in `H_n`.
    pub fn psi_l_word(&self, g: SourceGen) -> Result<Vec<Generator>> {
        check_source(g, self.k)?;
        let (n, k) = (self.n, self.k);
        // rho T_{n-1} ... T_k
        let rho_l: Vec<Generator> =
            std::iter::once(Generator::Rho(1)).chain((k..n).rev().map(Generator::T)).collect();
        // T_k^-1 ... T_{n-1}^-1 T_0 T_{n-1} ... T_k
        let t0 = |inner: Generator| -> Vec<Generator> {
            (k..n)
                .map(Generator::TInv)
                .chain(std::iter::once(inner))
                .chain((k..n).rev().map(Generator::T))
                .collect()
        };
        Ok(match g {
            SourceGen::Rho => rho_l,
            SourceGen::RhoInv => invert_word(&rho_l),
            SourceGen::T(0) => t0(Generator::T(0)),
            SourceGen::TInv(0) => t0(Generator::TInv(0)),
            SourceGen::T(i) => vec![Generator::T(i)],
            SourceGen::TInv(i) => vec![Generator::TInv(i)],
        })
    }

    /// Generator word of `psi_R(g)` in `H_n`.
    pub fn psi_r_word(&self, g: SourceGen) -> Result<Vec<Generator>> {
        check_source(g, self.n - self.k)?;
        let k = self.k;
        // T_k^-1 ... T_1^-1 rho
        let rho_r: Vec<Generator> =
            (1..=k).rev().map(Generator::TInv).chain(std::iter::once(Generator::Rho(1))).collect();
        // T_0 ... T_{k-1} T_k T_{k-1}^-1 ... T_0^-1
        let t0 = |inner: Generator| -> Vec<Generator> {
            (0..k)
                .map(Generator::T)
                .chain(std::iter::once(inner))
                .chain((0..k).rev().map(Generator::TInv))
                .collect()
        };
        Ok(match g {
            SourceGen::Rho => rho_r,
            SourceGen::RhoInv => invert_word(&rho_r),
            SourceGen::T(0) => t0(Generator::T(k)),
            SourceGen::TInv(0) => t0(Generator::TInv(k)),
            SourceGen::T(j) => vec![Generator::T(k + j)],
            SourceGen::TInv(j) => vec![Generator::TInv(k + j)],
        })
    }

    pub fn psi_l_gen(&self, g: SourceGen) -> Result<HeckeElt> {
        Ok(prod(self.n, &self.psi_l_word(g)?))
    }

    pub fn psi_r_gen(&self, g: SourceGen) -> Result<HeckeElt> {
        Ok(prod(self.n, &self.psi_r_word(g)?))
    }

    /// Image of an arbitrary element of `H_k`.
    pub fn psi_l(&self, a: &HeckeElt) -> Result<HeckeElt> {
        if a.n() != self.k {
            return Err(Error::RankMismatch { left: a.n(), right: self.k });
        }
        self.fold(a, |g| self.psi_l_gen(g))
    }

    /// Image of an arbitrary element of `H_{n-k}`.
    pub fn psi_r(&self, b: &HeckeElt) -> Result<HeckeElt> {
        if b.n() != self.n - self.k {
            return Err(Error::RankMismatch { left: b.n(), right: self.n - self.k });
        }
        self.fold(b, |g| self.psi_r_gen(g))
    }

    /// `psi_{k,n-k}(a (x) b) = psi_L(a) psi_R(b)`.
    pub fn psi(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        Ok(&self.psi_l(a)? * &self.psi_r(b)?)
    }

    fn fold(&self, a: &HeckeElt, image: impl Fn(SourceGen) -> Result<HeckeElt>) -> Result<HeckeElt> {
        let rho = image(SourceGen::Rho)?;
        let rho_inv = image(SourceGen::RhoInv)?;
        let mut out = HeckeElt::zero(self.n);
        for (w, c) in a.terms() {
            let rex = w.to_rex();
            let r = if rex.rho_power >= 0 { &rho } else { &rho_inv };
            let mut acc = HeckeElt::one(self.n);
            for _ in 0..rex.rho_power.unsigned_abs() {
                acc = &acc * r;
            }
            for &i in &rex.word {
                acc = &acc * &image(SourceGen::T(i))?;
            }
            out = &out + &acc.scale(c);
        }
        Ok(out)
    }
}

/// Factor word of `y_i = T_{i-1}^-1 ... T_1^-1 rho T_{n-1} ... T_i`.
pub fn bernstein_y_word(n: usize, i: usize) -> Result<Vec<Generator>> {
    if i == 0 || i > n {
        return Err(Error::BadIndex { index: i as i64, n });
    }
    Ok((1..i)
        .rev()
        .map(Generator::TInv)
        .chain(std::iter::once(Generator::Rho(1)))
        .chain((i..n).rev().map(Generator::T))
        .collect())
}

pub fn bernstein_y(n: usize, i: usize) -> Result<HeckeElt> {
    Ok(prod(n, &bernstein_y_word(n, i)?))
}

pub fn bernstein_y_inv_word(n: usize, i: usize) -> Result<Vec<Generator>> {
    Ok(invert_word(&bernstein_y_word(n, i)?))
}

pub fn bernstein_y_inv(n: usize, i: usize) -> Result<HeckeElt> {
    Ok(prod(n, &bernstein_y_inv_word(n, i)?))
}

/// Product of a generator word in `H_n`.
pub fn word_product(n: usize, gens: &[Generator]) -> HeckeElt {
    prod(n, gens)
}

/// Inverse of a word of invertible generators.
pub fn inverse_word(gens: &[Generator]) -> Vec<Generator> {
    invert_word(gens)
}

fn permutations(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n as i64);
            out.push(q);
        }
    }
    out
}

/// Minimal-length representatives of `w (S_k x S_{n-k})` in `S_n`, ordered
/// by length and then by window.
pub fn min_coset_reps(n: usize, k: usize) -> Result<Vec<AffinePerm>> {
    if k > n {
        return Err(Error::BadIndex { index: k as i64, n });
    }
    let mut reps: Vec<AffinePerm> = permutations(n)
        .into_iter()
        .filter(|w| w[..k].windows(2).all(|p| p[0] < p[1]) && w[k..].windows(2).all(|p| p[0] < p[1]))
        .map(|w| AffinePerm::new(w).expect("permutation window"))
        .collect();
    reps.sort_by_cached_key(|x| (x.length(), x.window().to_vec()));
    Ok(reps)
}

/// `w = x u` with `x` a minimal representative and `u` in `S_k x S_{n-k}`.
pub fn coset_decompose(w: &AffinePerm, k: usize) -> Result<(AffinePerm, AffinePerm)> {
    let s = w.shift();
    if s != 0 {
        return Err(Error::ShiftNonzero { shift: s });
    }
    if !w.is_finite() {
        return Err(Error::InvalidWindow(w.window().to_vec()));
    }
    if k > w.n() {
        return Err(Error::BadIndex { index: k as i64, n: w.n() });
    }
    let mut win = w.window().to_vec();
    win[..k].sort_unstable();
    win[k..].sort_unstable();
    let x = AffinePerm::new(win)?;
    let u = x.inverse().compose(w)?;
    Ok((x, u))
}

/// Split `u` in `S_k x S_{n-k}` into its two factors, of ranks `k` and `n-k`.
pub fn split_parabolic(u: &AffinePerm, k: usize) -> Result<(AffinePerm, AffinePerm)> {
    let win = u.window();
    let k64 = k as i64;
    if win[..k].iter().any(|&v| v < 1 || v > k64) || !u.is_finite() {
        return Err(Error::InvalidWindow(win.to_vec()));
    }
    let left = AffinePerm::new(win[..k].to_vec())?;
    let right = AffinePerm::new(win[k..].iter().map(|v| v - k64).collect())?;
    Ok((left, right))
}
