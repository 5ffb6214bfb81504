//! The invariant suite behind `hecke check`: one function per criterion,
//! each timed against a fixed limit.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bernstein::{from_bernstein, to_bernstein, verify_commutation_rule};
use crate::error::{Error, Result};
use crate::example_n2::{
    left_ideal_probe, pi_uw, pi_uw_basis, quotient_recursion, u_act_closed, u_act_multiply, IdealGen, UBasis, UVec,
    DEFAULT_BOUND,
};
use crate::hecke::{Generator, HeckeElt};
use crate::kl::{kl_mul_closed, kl_to_std, mult_family, std_to_kl, KLLabel, KlElt};
use crate::laurent::{LaurentPoly, Rational};
use crate::modules::{induce, module_w, trivial_v, FinDimModule, Matrix};
use crate::pairing::{euler_pair, y_class};
use crate::parabolic::{bernstein_y, ParabolicContext, SourceGen};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn over_time(&self) -> bool {
        self.limit.is_some_and(|l| self.elapsed > l)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {} ({} cases, {:.3}s", self.id, self.name, self.cases, self.elapsed.as_secs_f64())?;
        if let Some(l) = self.limit {
            write!(f, ", limit {}s", l.as_secs_f64())?;
        }
        write!(f, ")")?;
        if self.over_time() {
            write!(f, " over time limit")?;
        }
        for n in &self.notes {
            write!(f, "\n       note: {n}")?;
        }
        for x in self.failures.iter().take(5) {
            write!(f, "\n       fail: {x}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n       ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

/// Collects case outcomes for one criterion.
#[derive(Default)]
pub struct Checker {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    pub fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn eq<T: PartialEq + fmt::Display>(&mut self, label: impl fmt::Display, got: &T, want: &T) {
        self.ensure(got == want, || format!("{label}: got {got}, want {want}"));
    }

    /// Records an error from the library as a failed case.
    pub fn ok<T>(&mut self, label: impl fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{label}: {e}"));
                None
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Option<Duration>,
    pub run: fn(&mut Checker),
}

impl Criterion {
    pub fn execute(&self) -> CriterionResult {
        let mut c = Checker::default();
        let start = Instant::now();
        (self.run)(&mut c);
        let elapsed = start.elapsed();
        let mut r = CriterionResult {
            id: self.id,
            name: self.name,
            passed: false,
            cases: c.cases,
            failures: c.failures,
            notes: c.notes,
            elapsed,
            limit: self.limit,
        };
        r.passed = r.failures.is_empty() && !r.over_time();
        r
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "induce(V,V) = W", limit: secs(1), run: induced_w },
        Criterion { id: 2, name: "KL <-> standard round trip", limit: secs(1), run: kl_round_trip },
        Criterion { id: 3, name: "KL closed products vs standard basis", limit: secs(10), run: closed_products },
        Criterion { id: 4, name: "form values and orthogonality", limit: secs(5), run: form_values },
        Criterion { id: 5, name: "trace of KL elements", limit: None, run: kl_trace },
        Criterion { id: 6, name: "parabolic embeddings", limit: secs(30), run: psi_suite },
        Criterion { id: 7, name: "associativity at n=3", limit: None, run: associativity },
        Criterion { id: 8, name: "Bernstein presentation", limit: secs(30), run: bernstein_suite },
        Criterion { id: 9, name: "module U and projection to W", limit: secs(30), run: module_u },
        Criterion { id: 10, name: "simplicity of W at sample q", limit: secs(1), run: simplicity },
        Criterion { id: 11, name: "Euler pairings", limit: secs(10), run: euler_pairings },
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::execute).collect()
}

pub fn run_one(id: u8) -> Option<CriterionResult> {
    criteria().iter().find(|c| c.id == id).map(Criterion::execute)
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn mat(rows: [[&[(i64, i64)]; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|e| lp(e)).collect()).collect()).expect("square")
}

const ONE: &[(i64, i64)] = &[(0, 1)];
const NIL: &[(i64, i64)] = &[];
const QI_MINUS_Q: &[(i64, i64)] = &[(-1, 1), (1, -1)];

fn induced_w(c: &mut Checker) {
    let Some(m) = c.ok("induce", induce(&trivial_v(), &trivial_v())) else { return };
    c.eq("dim", &m.dim(), &2);
    let expected = [
        ("[rho]", Generator::Rho(1), mat([[NIL, ONE], [ONE, NIL]])),
        ("[T1]", Generator::T(1), mat([[NIL, ONE], [ONE, QI_MINUS_Q]])),
        ("[T0]", Generator::T(0), mat([[QI_MINUS_Q, ONE], [ONE, NIL]])),
        ("[b1]", Generator::B(1), mat([[&[(1, 1)], ONE], [ONE, &[(-1, 1)]]])),
        ("[b0]", Generator::B(0), mat([[&[(-1, 1)], ONE], [ONE, &[(1, 1)]]])),
    ];
    for (name, g, want) in expected {
        if let Some(got) = c.ok(name, m.generator(g)) {
            c.eq(name, &got, &want);
        }
    }
    let t0 = m.matrix_of(&(&(&HeckeElt::rho(2, 1) * &HeckeElt::t(2, 1).unwrap()) * &HeckeElt::rho(2, -1)));
    if let (Some(a), Ok(b)) = (c.ok("rho T1 rho^-1", t0), m.t(0)) {
        c.eq("[T0] = [rho T1 rho^-1]", &a, &b);
    }
    let report = m.check_relations();
    c.ensure(report.all_pass(), || format!("relations: {:?}", report.failures()));
}

fn labels_with_rho(max_len: usize, rho: impl IntoIterator<Item = i64> + Clone) -> Vec<KLLabel> {
    KLLabel::all_up_to(max_len)
        .into_iter()
        .flat_map(|l| rho.clone().into_iter().map(move |m| l.clone().with_rho(m)))
        .collect()
}

fn kl_round_trip(c: &mut Checker) {
    for l in labels_with_rho(12, -2..=2) {
        let s = kl_to_std(&l);
        if let Some(back) = c.ok(&l, std_to_kl(&s)) {
            c.eq(&l, &back, &KlElt::basis(l.clone()));
        }
        let t = HeckeElt::basis(l.perm());
        if let Some(k) = c.ok(&l, std_to_kl(&t)) {
            c.ensure(k.to_std() == t, || format!("T_{l} does not survive std -> KL -> std"));
        }
    }
}

fn closed_products(c: &mut Checker) {
    let labels = labels_with_rho(8, 0..=1);
    let std: Vec<HeckeElt> = labels.iter().map(kl_to_std).collect();
    let mut seen = BTreeSet::new();
    for (a, sa) in labels.iter().zip(&std) {
        for (b, sb) in labels.iter().zip(&std) {
            let closed = kl_mul_closed(a, b);
            if let Some(brute) = c.ok(format!("{a} * {b}"), std_to_kl(&(sa * sb))) {
                c.ensure(closed == brute, || format!("{a} * {b}: closed {closed}, brute force {brute}"));
            }
            if let Some(f) = mult_family(a, b) {
                seen.insert((f.line, f.swapped));
            }
        }
    }
    c.ensure(seen.len() == 16, || format!("only {} of 16 product families exercised", seen.len()));
}

fn min_term(p: &LaurentPoly) -> Option<(i64, i64)> {
    p.lowest_term().map(|(d, x)| (d, i64::try_from(x).unwrap_or(i64::MAX)))
}

fn form_values(c: &mut Checker) {
    let b = |len: usize, start: usize| kl_to_std(&KLLabel::starting(len, start));
    let pairs = [
        ("(b1,b1)", b(1, 1), b(1, 1), lp(&[(0, 1), (2, 1)])),
        ("(b01,b01)", b(2, 0), b(2, 0), lp(&[(0, 1), (2, 2), (4, 1)])),
        ("(b01,b10)", b(2, 0), b(2, 1), lp(&[(2, 2), (4, 1)])),
    ];
    for (name, x, y, want) in pairs {
        if let Some(got) = c.ok(name, x.form(&y)) {
            c.eq(name, &got, &want);
        }
    }

    let labels = KLLabel::all_up_to(8);
    let std: Vec<HeckeElt> = labels.iter().map(kl_to_std).collect();
    for (u, su) in labels.iter().zip(&std) {
        for (v, sv) in labels.iter().zip(&std) {
            let Some(f) = c.ok(format!("({u},{v})"), su.form(sv)) else { continue };
            let (m, n) = (u.len(), v.len());
            let cross = m == n && m > 0 && u.first() != v.first() && u.last() != v.last();
            let got = min_term(&f);
            let nonneg = f.all_nonnegative();
            if cross && m == 1 {
                c.ensure(got == Some((2, 1)) && nonneg, || format!("({u},{v}) = {f}, want q^2"));
            } else if cross {
                c.ensure(got == Some((2, 2)) && nonneg, || format!("({u},{v}) = {f}, want 2q^2 + higher"));
            } else {
                let d = (m as i64 - n as i64).abs();
                c.ensure(got == Some((d, 1)) && nonneg, || format!("({u},{v}) = {f}, want q^{d} + higher"));
            }
        }
    }
    c.note("(b0,b1) = q^2: at m = n = 1 the minimal coefficient is 1, not 2");

    let shifts: Vec<HeckeElt> = KLLabel::all_up_to(6).iter().map(kl_to_std).collect();
    for x in &shifts {
        for y in &shifts {
            let base = x.form(y).ok();
            for k in -2..=2i64 {
                for l in -2..=2i64 {
                    let f = x.rho_mul(k).form(&y.rho_mul(l)).ok();
                    let want = if k == l { base.clone() } else { Some(LaurentPoly::zero()) };
                    c.ensure(f == want, || format!("shift orthogonality fails at k={k}, l={l} for {x} and {y}"));
                }
            }
        }
    }
}

fn kl_trace(c: &mut Checker) {
    for l in KLLabel::all_up_to(12) {
        c.eq(format!("eps({l})"), &kl_to_std(&l).trace(), &LaurentPoly::q_pow(l.len() as i64));
    }
}

type Images<'a> = &'a dyn Fn(SourceGen) -> Result<HeckeElt>;

/// Defining relations of the source algebra of rank `r`, each evaluated
/// through `img` in an algebra of rank `n`. Every entry should be zero.
fn source_relations(r: usize, n: usize, img: Images) -> Result<Vec<(String, HeckeElt)>> {
    use SourceGen::*;
    let one = HeckeElt::one(n);
    let mut out = Vec::new();
    let p = |gs: &[SourceGen]| -> Result<HeckeElt> {
        let mut acc = HeckeElt::one(n);
        for &g in gs {
            acc = &acc * &img(g)?;
        }
        Ok(acc)
    };
    out.push(("rho rho^-1 = 1".to_string(), &p(&[Rho, RhoInv])? - &one));
    out.push(("rho^-1 rho = 1".to_string(), &p(&[RhoInv, Rho])? - &one));
    if r < 2 {
        return Ok(out);
    }
    let quad = LaurentPoly::q_minus_qinv();
    for i in 0..r {
        let j = (i + 1) % r;
        out.push((format!("T{i} T{i}^-1 = 1"), &p(&[T(i), TInv(i)])? - &one));
        out.push((format!("T{i}^-1 T{i} = 1"), &p(&[TInv(i), T(i)])? - &one));
        let t = img(T(i))?;
        out.push((format!("quadratic T{i}"), &(&(&t * &t) + &t.scale(&quad)) - &one));
        out.push((format!("rho T{i} rho^-1 = T{j}"), &p(&[Rho, T(i), RhoInv])? - &img(T(j))?));
        if r >= 3 {
            out.push((format!("braid T{i} T{j}"), &p(&[T(i), T(j), T(i)])? - &p(&[T(j), T(i), T(j)])?));
        }
        for k in i + 1..r {
            let d = (k - i).min(r - (k - i));
            if d >= 2 {
                out.push((format!("T{i} T{k} = T{k} T{i}"), &p(&[T(i), T(k)])? - &p(&[T(k), T(i)])?));
            }
        }
    }
    Ok(out)
}

fn psi_suite(c: &mut Checker) {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let ctx = ParabolicContext::new(n, k).expect("valid pair");
        for (side, r) in [("L", k), ("R", n - k)] {
            let src = |g: SourceGen| g.element(r);
            if let Some(rels) = c.ok(format!("({n},{k}) source {side}"), source_relations(r, r, &src)) {
                for (name, e) in rels {
                    c.ensure(e.is_zero(), || format!("source relation {name} in rank {r} is {e}"));
                }
            }
            let imgs = |g: SourceGen| if side == "L" { ctx.psi_l_gen(g) } else { ctx.psi_r_gen(g) };
            if let Some(rels) = c.ok(format!("({n},{k}) psi_{side}"), source_relations(r, n, &imgs)) {
                for (name, e) in rels {
                    c.ensure(e.is_zero(), || format!("({n},{k}) psi_{side}({name}) leaves {e}"));
                }
            }
        }
        for a in SourceGen::all(k) {
            for b in SourceGen::all(n - k) {
                let (Ok(x), Ok(y)) = (ctx.psi_l_gen(a), ctx.psi_r_gen(b)) else {
                    c.ensure(false, || format!("({n},{k}) images of {a:?}, {b:?}"));
                    continue;
                };
                c.ensure(&x * &y == &y * &x, || format!("({n},{k}) psi_L({a:?}) and psi_R({b:?}) do not commute"));
            }
        }
        let rl = ctx.psi_l_gen(SourceGen::Rho).unwrap();
        let rr = ctx.psi_r_gen(SourceGen::Rho).unwrap();
        let lhs = &rl * &rr;
        let mut rhs = HeckeElt::rho(n, 1);
        for i in (k + 1..n).rev() {
            rhs = rhs.mul_t(i);
        }
        for i in (1..k).rev() {
            rhs = rhs.mul_t_inv(i);
        }
        rhs = rhs.mul_rho(1);
        c.ensure(lhs == rhs, || format!("({n},{k}) psi(rho_L, rho_R) = {lhs}, want {rhs}"));
        c.ensure(&rr * &rl == rhs, || format!("({n},{k}) psi_R(rho_R) psi_L(rho_L) differs"));
    }
}

fn associativity(c: &mut Checker) {
    let p11 = ParabolicContext::new(2, 1).unwrap();
    let p21 = ParabolicContext::new(3, 2).unwrap();
    let p12 = ParabolicContext::new(3, 1).unwrap();
    let gens = [HeckeElt::one(1), HeckeElt::rho(1, 1), HeckeElt::rho(1, -1)];
    for a in &gens {
        for b in &gens {
            for d in &gens {
                let lhs = p11.psi(a, b).and_then(|ab| p21.psi(&ab, d));
                let rhs = p11.psi(b, d).and_then(|bd| p12.psi(a, &bd));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => c.ensure(l == r, || format!("({a}) (x) ({b}) (x) ({d}): {l} vs {r}")),
                    (l, r) => c.ensure(false, || format!("({a}) (x) ({b}) (x) ({d}): {:?} / {:?}", l.err(), r.err())),
                }
            }
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> HeckeElt {
    let mut acc = HeckeElt::one(n);
    for _ in 0..len {
        acc = match rng.gen_range(0..4) {
            0 if n >= 2 => acc.mul_t(rng.gen_range(0..n)),
            1 if n >= 2 => acc.mul_t_inv(rng.gen_range(0..n)),
            0 | 2 => acc.mul_rho(1),
            _ => acc.mul_rho(-1),
        };
    }
    acc
}

fn bernstein_suite(c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6265726e);
    for s in 0..200 {
        let n = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=6);
        let w = random_word(&mut rng, n, len);
        let back = to_bernstein(&w).and_then(|b| from_bernstein(&b));
        if let Err(Error::NonIntegralCorrection { .. }) = back {
            c.note(format!("sample {s}: non-integral correction"));
        }
        if let Some(b) = c.ok(format!("sample {s} ({w})"), back) {
            c.ensure(b == w, || format!("sample {s}: {w} round trips to {b}"));
        }
    }
    for n in 2..=4 {
        let ys: Vec<HeckeElt> = (1..=n).map(|i| bernstein_y(n, i).unwrap()).collect();
        for i in 0..n {
            for j in i + 1..n {
                c.ensure(&ys[i] * &ys[j] == &ys[j] * &ys[i], || format!("n={n}: y{} y{} do not commute", i + 1, j + 1));
            }
        }
        for i in 1..n {
            let ti = HeckeElt::t_inv(n, i).unwrap();
            let lhs = &(&ti * &ys[i - 1]) * &ti;
            c.ensure(lhs == ys[i], || format!("n={n}: T{i}^-1 y{i} T{i}^-1 != y{}", i + 1));
        }
    }
    for (n, r) in [(2, 3), (3, 2)] {
        if let Some(bad) = c.ok(format!("commutation rule n={n}"), verify_commutation_rule(n, r)) {
            c.ensure(bad.is_none(), || format!("commutation rule fails at {bad:?}"));
        }
    }
}

fn module_u(c: &mut Checker) {
    let bound = DEFAULT_BOUND;
    let w = module_w();
    let gens = [
        Generator::Rho(1),
        Generator::Rho(-1),
        Generator::T(0),
        Generator::T(1),
        Generator::TInv(0),
        Generator::TInv(1),
        Generator::B(0),
        Generator::B(1),
    ];
    for v in UBasis::all_up_to(bound - 2) {
        let x = UVec::basis(v, bound).unwrap();
        let Some(px) = c.ok(format!("pi({v})"), pi_uw(&x)) else { continue };
        for g in gens {
            let closed = u_act_closed(g, &x);
            let mult = u_act_multiply(g, &x);
            let (Some(a), Some(b)) = (c.ok(format!("{g:?} {v} closed"), closed), c.ok(format!("{g:?} {v}"), mult)) else {
                continue;
            };
            c.ensure(a == b, || format!("{g:?} on {v}: closed {a}, multiply {b}"));
            let gw = w.generator(g).unwrap();
            if let Some(pa) = c.ok(format!("pi({g:?} {v})"), pi_uw(&a)) {
                c.ensure(pa == gw.apply(&px), || format!("pi does not intertwine {g:?} on {v}"));
            }
        }
    }
    let q = LaurentPoly::q;
    let one = LaurentPoly::one;
    let expected = [
        (UBasis::U(0), vec![one(), LaurentPoly::zero()]),
        (UBasis::UPrime(0), vec![LaurentPoly::zero(), one()]),
        (UBasis::U(1), vec![q(), one()]),
        (UBasis::U(2), vec![LaurentPoly::constant(2), LaurentPoly::monomial(2, 1)]),
    ];
    for (b, want) in expected {
        if let Some(got) = c.ok(format!("pi({b})"), pi_uw_basis(b)) {
            c.ensure(got == want, || format!("pi({b}) = {got:?}, want {want:?}"));
        }
    }
    for (k, (uk, upk)) in quotient_recursion(bound).into_iter().enumerate() {
        let a = pi_uw_basis(UBasis::U(k)).ok();
        let b = pi_uw_basis(UBasis::UPrime(k)).ok();
        c.ensure(a.as_ref() == Some(&uk) && b.as_ref() == Some(&upk), || format!("quotient recursion differs at k={k}"));
    }
    let mut xs = Vec::new();
    for l in KLLabel::all_up_to(10) {
        for m in -1..=1 {
            xs.push(HeckeElt::basis(l.perm().rho_mul(m)));
        }
    }
    for x in &xs {
        for g in [IdealGen::RhoSquaredMinusOne, IdealGen::B1RhoMinusB1] {
            if let Some(r) = c.ok(format!("{x} * {g:?}"), left_ideal_probe(g, x, bound)) {
                c.ensure(r.is_zero(), || format!("{x} * {g:?} reduces to {r}"));
            }
        }
    }
}

/// `rho = 1`, `T1 = diag(q^-1, -q)`: a direct sum of two characters.
pub fn reducible_control() -> FinDimModule {
    let id = Matrix::identity(2);
    let t1 = mat([[&[(-1, 1)], NIL], [NIL, &[(1, -1)]]]);
    FinDimModule::new(2, id.clone(), id, vec![t1]).expect("well-shaped")
}

fn simplicity(c: &mut Checker) {
    let samples = [(2, 1), (3, 1), (5, 7)];
    let w = module_w();
    let control = reducible_control();
    let report = control.check_relations();
    c.ensure(report.all_pass(), || format!("control relations: {:?}", report.failures()));
    for (a, b) in samples {
        let q0 = Rational::new(a.into(), b.into());
        if let Some(s) = c.ok(format!("W at q={q0}"), w.specialize(&q0)) {
            c.ensure(s.common_eigvec_test() == Ok(false), || format!("W at q={q0} has a common eigenvector"));
        }
        if let Some(s) = c.ok(format!("control at q={q0}"), control.specialize(&q0)) {
            c.ensure(s.common_eigvec_test() == Ok(true), || format!("control at q={q0} not detected as reducible"));
        }
    }
}

fn euler_pairings(c: &mut Checker) {
    let labels: Vec<HeckeElt> = KLLabel::all_up_to(6).iter().map(kl_to_std).collect();
    let mut ys = Vec::new();
    for r in -3..=3i64 {
        for s in -3..=3i64 {
            ys.push((r, s, y_class(r, s)));
        }
    }
    let mut nonzero = 0usize;
    for k in -2..=2i64 {
        for x in &labels {
            let xk = x.rho_mul(k);
            for (r, s, y) in &ys {
                let Some(p) = c.ok("euler_pair", euler_pair(&xk, y)) else { continue };
                if r + s != k {
                    c.ensure(p.is_zero(), || format!("(rho^{k} {x}, Y^({r},{s})) = {p}"));
                } else if !p.is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    c.note(format!("{nonzero} pairings with r+s = k are nonzero"));
    for s in 1..=4usize {
        for n in (1..=9usize).step_by(2) {
            let u = KLLabel::starting(n, 1);
            let v = KLLabel::starting(2 * s, 0);
            let Some(p) = c.ok("laurentpol", kl_to_std(&u).form(&kl_to_std(&v))) else { continue };
            let d = (n as i64 - 2 * s as i64).abs();
            c.ensure(min_term(&p) == Some((d, 1)) && p.all_nonnegative(), || format!("({u},{v}) = {p}, want q^{d} + higher"));
        }
    }
}
