//! Finite-dimensional modules given by generator matrices over `Z[q, q^-1]`,
//! induction along `psi_{k,n-k}`, and rational specialization.
//!
//! Matrices act on column vectors and `[xy] = [x][y]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bernstein::to_bernstein;
use crate::error::{Error, Result};
use crate::hecke::{Generator, HeckeElt};
use crate::laurent::{LaurentPoly, Rational};
use crate::parabolic::{bernstein_y_inv_word, bernstein_y_word, coset_decompose, min_coset_reps, split_parabolic};
use crate::weyl::AffinePerm;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, LaurentPoly::one())
    }

    pub fn scalar(d: usize, c: LaurentPoly) -> Self {
        let mut m = Self::zero(d, d);
        for i in 0..d {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Module("ragged matrix".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: LaurentPoly) {
        self.data[i * self.cols + j] = c;
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, x) in v.iter().enumerate() {
                    acc += &(self.get(i, j) * x);
                }
                acc
            })
            .collect()
    }

    pub fn specialize(&self, q0: &Rational) -> Result<RatMatrix> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in self.to_rows() {
            rows.push(r.iter().map(|c| c.eval(q0)).collect::<Result<Vec<_>>>()?);
        }
        Ok(RatMatrix { rows })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rational matrix, the target of specialization at `q = q0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: Vec<Vec<Rational>>,
}

impl RatMatrix {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let d = other.rows.first().map_or(0, |r| r.len());
        let rows = self
            .rows
            .iter()
            .map(|r| (0..d).map(|j| r.iter().zip(&other.rows).map(|(a, row)| a * &row[j]).sum()).collect())
            .collect();
        RatMatrix { rows }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        RatMatrix { rows }
    }

    pub fn det2(&self) -> Result<Rational> {
        if self.dim() != 2 {
            return Err(Error::DimUnsupported { dim: self.dim() });
        }
        let r = &self.rows;
        Ok(&r[0][0] * &r[1][1] - &r[0][1] * &r[1][0])
    }
}

/// A finite-dimensional module over the extended affine Hecke algebra of
/// rank `n`, given by `[rho]`, `[rho^-1]` and `[T_1]`..`[T_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimModule {
    n: usize,
    dim: usize,
    rho: Matrix,
    rho_inv: Matrix,
    t: Vec<Matrix>,
}

/// Outcome of checking every defining relation on a module.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub entries: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect()
    }

    fn push(&mut self, name: String, ok: bool) {
        self.entries.push((name, ok));
    }
}

impl FinDimModule {
    /// `t[i - 1]` is `[T_i]`.
    pub fn new(n: usize, rho: Matrix, rho_inv: Matrix, t: Vec<Matrix>) -> Result<Self> {
        let dim = rho.rows();
        if n == 0 || t.len() != n - 1 {
            return Err(Error::Module(format!("expected {} T-matrices, got {}", n.saturating_sub(1), t.len())));
        }
        let square = |m: &Matrix| m.rows() == dim && m.cols() == dim;
        if !square(&rho) || !square(&rho_inv) || !t.iter().all(square) {
            return Err(Error::Module("generator matrices must be square of equal size".into()));
        }
        Ok(Self { n, dim, rho, rho_inv, t })
    }

    /// Builds the module from `[rho]` alone when `rho` has finite order at
    /// most 12, so that `[rho^-1]` is a power of `[rho]`.
    pub fn with_finite_order_rho(n: usize, rho: Matrix, t: Vec<Matrix>) -> Result<Self> {
        let id = Matrix::identity(rho.rows());
        let mut p = rho.clone();
        for k in 1..=12u32 {
            if p == id {
                let inv = rho.pow(k - 1);
                return Self::new(n, rho, inv, t);
            }
            p = p.mul(&rho);
        }
        Err(Error::Module("rho_inv missing and rho has no finite order <= 12".into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn rho_inv(&self) -> &Matrix {
        &self.rho_inv
    }

    /// `[T_i]` for `i` in `0..n`; `T_0 = rho T_{n-1} rho^-1`.
    pub fn t(&self, i: usize) -> Result<Matrix> {
        if self.n < 2 || i >= self.n {
            return Err(Error::BadIndex { index: i as i64, n: self.n });
        }
        if i == 0 {
            return Ok(self.rho.mul(&self.t[self.n - 2]).mul(&self.rho_inv));
        }
        Ok(self.t[i - 1].clone())
    }

    pub fn t_inv(&self, i: usize) -> Result<Matrix> {
        Ok(self.t(i)?.add(&Matrix::scalar(self.dim, LaurentPoly::q_minus_qinv())))
    }

    pub fn generator(&self, g: Generator) -> Result<Matrix> {
        Ok(match g {
            Generator::T(i) => self.t(i)?,
            Generator::TInv(i) => self.t_inv(i)?,
            Generator::B(i) => self.t(i)?.add(&Matrix::scalar(self.dim, LaurentPoly::q())),
            Generator::Rho(m) => {
                let base = if m >= 0 { &self.rho } else { &self.rho_inv };
                base.pow(m.unsigned_abs() as u32)
            }
        })
    }

    fn word(&self, gens: &[Generator]) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.dim);
        for g in gens {
            acc = acc.mul(&self.generator(*g)?);
        }
        Ok(acc)
    }

    /// `[T_w]` for a single basis element `rho^m T_w`.
    pub fn basis_matrix(&self, w: &AffinePerm) -> Result<Matrix> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { left: w.n(), right: self.n });
        }
        let rex = w.to_rex();
        let mut acc = self.generator(Generator::Rho(rex.rho_power))?;
        for &i in &rex.word {
            acc = acc.mul(&self.t(i)?);
        }
        Ok(acc)
    }

    pub fn matrix_of(&self, a: &HeckeElt) -> Result<Matrix> {
        if a.n() != self.n {
            return Err(Error::RankMismatch { left: a.n(), right: self.n });
        }
        let mut out = Matrix::zero(self.dim, self.dim);
        for (w, c) in a.terms() {
            out = out.add(&self.basis_matrix(w)?.scale(c));
        }
        Ok(out)
    }

    pub fn y(&self, i: usize) -> Result<Matrix> {
        self.word(&bernstein_y_word(self.n, i)?)
    }

    pub fn y_inv(&self, i: usize) -> Result<Matrix> {
        self.word(&bernstein_y_inv_word(self.n, i)?)
    }

    /// `[y^lambda]`.
    pub fn y_monomial(&self, lambda: &[i64]) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.dim);
        for (i, &k) in lambda.iter().enumerate() {
            let y = if k >= 0 { self.y(i + 1)? } else { self.y_inv(i + 1)? };
            acc = acc.mul(&y.pow(k.unsigned_abs() as u32));
        }
        Ok(acc)
    }

    pub fn check_relations(&self) -> RelationReport {
        let mut report = RelationReport::default();
        let id = Matrix::identity(self.dim);
        report.push("rho rho^-1 = 1".into(), self.rho.mul(&self.rho_inv) == id);
        report.push("rho^-1 rho = 1".into(), self.rho_inv.mul(&self.rho) == id);
        if self.n < 2 {
            return report;
        }
        let n = self.n;
        let t: Vec<Matrix> = (0..n).map(|i| self.t(i).expect("index in range")).collect();
        let c = LaurentPoly::q_minus_qinv();
        for (i, ti) in t.iter().enumerate() {
            let lhs = ti.add(&Matrix::scalar(self.dim, LaurentPoly::q()))
                .mul(&ti.sub(&Matrix::scalar(self.dim, LaurentPoly::q_pow(-1))));
            report.push(format!("(T{i} + q)(T{i} - q^-1) = 0"), lhs.is_zero());
            let inv = ti.add(&Matrix::scalar(self.dim, c.clone()));
            report.push(format!("T{i} T{i}^-1 = 1"), ti.mul(&inv) == id);
            let next = &t[(i + 1) % n];
            report.push(format!("rho T{i} rho^-1 = T{}", (i + 1) % n), &self.rho.mul(ti).mul(&self.rho_inv) == next);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (j - i).min(n + i - j);
                let (a, b) = (&t[i], &t[j]);
                if gap == 1 && n >= 3 {
                    let ok = a.mul(b).mul(a) == b.mul(a).mul(b);
                    report.push(format!("T{i} T{j} T{i} = T{j} T{i} T{j}"), ok);
                } else if gap >= 2 {
                    report.push(format!("T{i} T{j} = T{j} T{i}"), a.mul(b) == b.mul(a));
                }
            }
        }
        report
    }

    pub fn specialize(&self, q0: &Rational) -> Result<SpecializedModule> {
        let mut gens = vec![self.rho.specialize(q0)?];
        if self.n >= 2 {
            for i in 0..self.n {
                gens.push(self.t(i)?.specialize(q0)?);
            }
        }
        Ok(SpecializedModule { dim: self.dim, gens })
    }
}

/// The trivial module of rank 1: `[rho] = (1)`.
pub fn trivial_v() -> FinDimModule {
    one_dim(1, LaurentPoly::q_pow(-1), LaurentPoly::one())
}

/// One-dimensional module of rank `n` with `T_i -> t` and `rho -> r`, `r` a unit.
pub fn one_dim(n: usize, t: LaurentPoly, r: LaurentPoly) -> FinDimModule {
    let ri = r.unit_inverse().expect("rho must act by a unit");
    let m = |c: &LaurentPoly| Matrix::scalar(1, c.clone());
    FinDimModule::new(n, m(&r), m(&ri), (1..n).map(|_| m(&t)).collect()).expect("well-shaped")
}

/// Trivial (`T_i -> q^-1`) and sign (`T_i -> -q`) one-dimensional modules.
pub fn trivial_module(n: usize) -> FinDimModule {
    one_dim(n, LaurentPoly::q_pow(-1), LaurentPoly::one())
}

pub fn sign_module(n: usize) -> FinDimModule {
    one_dim(n, LaurentPoly::monomial(-1, 1), LaurentPoly::one())
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, c)))
}

/// The rank-2 module `W` in the basis `{w, w'}`.
pub fn module_w() -> FinDimModule {
    let rho = Matrix::from_rows(vec![vec![lp(&[]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[])]]).unwrap();
    let t1 = Matrix::from_rows(vec![vec![lp(&[]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[(-1, 1), (1, -1)])]]).unwrap();
    FinDimModule::new(2, rho.clone(), rho, vec![t1]).unwrap()
}

/// Induction along `psi_{k,n-k}`: basis `T_x (x) m1 (x) m2` with `x` running
/// over minimal coset representatives, index `x * d1 * d2 + i1 * d2 + i2`.
pub fn induce(m1: &FinDimModule, m2: &FinDimModule) -> Result<FinDimModule> {
    let k = m1.n;
    let n = m1.n + m2.n;
    let reps = min_coset_reps(n, k)?;
    let (d1, d2) = (m1.dim, m2.dim);
    let block = d1 * d2;
    let dim = reps.len() * block;
    let index: BTreeMap<AffinePerm, usize> = reps.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();

    let action = |g: &HeckeElt| -> Result<Matrix> {
        let mut out = Matrix::zero(dim, dim);
        for (xi, x) in reps.iter().enumerate() {
            let b = to_bernstein(&(g * &HeckeElt::basis(x.clone())))?;
            for (w, lambda, c) in b.terms() {
                let (xp, u) = coset_decompose(w, k)?;
                let (ul, ur) = split_parabolic(&u, k)?;
                let left = m1.basis_matrix(&ul)?.mul(&m1.y_monomial(&lambda[..k])?);
                let right = m2.basis_matrix(&ur)?.mul(&m2.y_monomial(&lambda[k..])?);
                let local = left.kron(&right).scale(c);
                let xo = index[&xp];
                for r in 0..block {
                    for s in 0..block {
                        let v = local.get(r, s);
                        if !v.is_zero() {
                            let cur = out.get(xo * block + r, xi * block + s) + v;
                            out.set(xo * block + r, xi * block + s, cur);
                        }
                    }
                }
            }
        }
        Ok(out)
    };

    let rho = action(&HeckeElt::rho(n, 1))?;
    let rho_inv = action(&HeckeElt::rho(n, -1))?;
    let mut t = Vec::new();
    for i in 1..n {
        t.push(action(&HeckeElt::t(n, i)?)?);
    }
    FinDimModule::new(n, rho, rho_inv, t)
}

/// Generator matrices at `q = q0`: `[rho]` followed by `[T_0]`..`[T_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedModule {
    pub dim: usize,
    pub gens: Vec<RatMatrix>,
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

enum Eigen {
    Whole,
    Lines(Vec<Vec<Rational>>),
}

/// Rational eigenlines of a 2x2 matrix, or `Whole` if it is scalar.
fn eigenlines(a: &RatMatrix) -> Eigen {
    let r = &a.rows;
    let (p, b, c, d) = (&r[0][0], &r[0][1], &r[1][0], &r[1][1]);
    if b.is_zero() && c.is_zero() && p == d {
        return Eigen::Whole;
    }
    let tr = p + d;
    let det = p * d - b * c;
    let disc = &tr * &tr - Rational::from_integer(4.into()) * det;
    let Some(s) = rational_sqrt(&disc) else {
        return Eigen::Lines(Vec::new());
    };
    let two = Rational::from_integer(2.into());
    let mut roots = vec![(&tr + &s) / &two];
    if !s.is_zero() {
        roots.push((&tr - &s) / &two);
    }
    let lines = roots
        .into_iter()
        .map(|l| {
            // kernel of [[p - l, b], [c, d - l]]
            if !b.is_zero() {
                vec![b.clone(), &l - p]
            } else if !c.is_zero() {
                vec![&l - d, c.clone()]
            } else if &l == p {
                vec![Rational::one(), Rational::zero()]
            } else {
                vec![Rational::zero(), Rational::one()]
            }
        })
        .collect();
    Eigen::Lines(lines)
}

fn is_eigvec(a: &RatMatrix, v: &[Rational]) -> bool {
    let w = a.apply(v);
    (&v[0] * &w[1] - &v[1] * &w[0]).is_zero()
}

impl SpecializedModule {
    /// Whether all generators share a rational eigenvector (dimension 2).
    pub fn common_eigvec_test(&self) -> Result<bool> {
        if self.dim != 2 {
            return Err(Error::DimUnsupported { dim: self.dim });
        }
        let mut cand = Eigen::Whole;
        for a in &self.gens {
            cand = match cand {
                Eigen::Whole => eigenlines(a),
                Eigen::Lines(ls) => Eigen::Lines(ls.into_iter().filter(|v| is_eigvec(a, v)).collect()),
            };
        }
        Ok(match cand {
            Eigen::Whole => true,
            Eigen::Lines(ls) => !ls.is_empty(),
        })
    }

    /// `det([rho, T_1])`; nonzero rules out a common eigenvector over any field extension.
    pub fn commutator_det(&self) -> Result<Rational> {
        if self.dim != 2 || self.gens.len() < 3 {
            return Err(Error::DimUnsupported { dim: self.dim });
        }
        let (a, b) = (&self.gens[0], &self.gens[2]);
        a.mul(b).sub(&b.mul(a)).det2()
    }
}
