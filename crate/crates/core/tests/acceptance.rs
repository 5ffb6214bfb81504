//! Acceptance suite: twelve criteria, one line each. Library results are
//! compared against the standalone model in `oracle` and against fixed
//! matrices and values.

mod oracle;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use affine_hecke::bernstein::{bernstein_mul, from_bernstein, to_bernstein, BernsteinElt};
use affine_hecke::example_n2::{
    left_ideal_probe, pi_uw, pi_uw_basis, u_act_closed, u_act_multiply, u_reduce, IdealGen, UBasis, UVec,
};
use affine_hecke::expr::{eval, parse, random_expr, EvalContext};
use affine_hecke::format;
use affine_hecke::kl::{kl_mul_closed, kl_to_std, mult_family, std_to_kl};
use affine_hecke::modules::{induce, module_w, sign_module, trivial_module, trivial_v, FinDimModule, Matrix};
use affine_hecke::pairing::{euler_pair, y_class};
use affine_hecke::parabolic::{bernstein_y, ParabolicContext, SourceGen};
use affine_hecke::{Error, Generator, HeckeElt, KLLabel, KlElt, LaurentPoly as P, Rational};

use oracle::Elt;

#[derive(Default)]
struct Fails {
    fails: Vec<String>,
    notes: Vec<String>,
}

impl Fails {
    fn push(&mut self, s: String) {
        self.fails.push(s);
    }
}

fn lp(terms: &[(i64, i64)]) -> P {
    P::from_terms(terms.iter().copied())
}

fn m2(a: &[(i64, i64)], b: &[(i64, i64)], c: &[(i64, i64)], d: &[(i64, i64)]) -> Matrix {
    Matrix::from_rows(vec![vec![lp(a), lp(b)], vec![lp(c), lp(d)]]).unwrap()
}

fn check(f: &mut Fails, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        f.push(msg());
    }
}

fn labels(max_len: usize, rhos: &[i64]) -> Vec<KLLabel> {
    KLLabel::all_up_to(max_len).into_iter().flat_map(|l| rhos.iter().map(move |&m| l.clone().with_rho(m))).collect()
}

fn kl_elt_oracle(x: &KlElt) -> Elt {
    let mut out = Elt::zero(2);
    for (l, c) in x.terms() {
        out = out.add(&oracle::kl(l).scale(c));
    }
    out
}

// 1 ---------------------------------------------------------------------

fn c1(f: &mut Fails) {
    let m = induce(&trivial_v(), &trivial_v()).expect("induce");
    let one = &[(0, 1)][..];
    let nil = &[][..];
    let a = &[(-1, 1), (1, -1)][..];
    let rho = m2(nil, one, one, nil);
    let t1 = m2(nil, one, one, a);
    let t0 = m2(a, one, one, nil);
    let b1 = m2(&[(1, 1)], one, one, &[(-1, 1)]);
    let b0 = m2(&[(-1, 1)], one, one, &[(1, 1)]);
    check(f, m.rho() == &rho, || format!("[rho] = {}", m.rho()));
    check(f, m.t(1).unwrap() == t1, || format!("[T1] = {}", m.t(1).unwrap()));
    check(f, m.t(0).unwrap() == t0, || format!("[T0] = {}", m.t(0).unwrap()));
    let qi2 = Matrix::scalar(2, P::q());
    check(f, m.t(1).unwrap().add(&qi2) == b1, || "[b1]".into());
    check(f, m.t(0).unwrap().add(&qi2) == b0, || "[b0]".into());
    check(f, m.generator(Generator::B(1)).unwrap() == b1, || "[b1] via generator".into());
    check(f, m.generator(Generator::B(0)).unwrap() == b0, || "[b0] via generator".into());
    check(f, rho.mul(&t1).mul(&rho) == t0, || "[rho][T1][rho]^-1 != [T0]".into());
    let quad = t1.mul(&t1).sub(&t1.scale(&lp(a)));
    check(f, quad == Matrix::identity(2), || "[T1] quadratic relation".into());
}

// 2 ---------------------------------------------------------------------

fn c2(f: &mut Fails) {
    for l in labels(12, &[-2, -1, 0, 1, 2]) {
        let s = kl_to_std(&l);
        check(f, oracle::from_lib(&s) == oracle::kl(&l), || format!("b for {l} differs from the recursion"));
        match std_to_kl(&s) {
            Ok(k) => check(f, k == KlElt::basis(l.clone()), || format!("{l} round trips to {k}")),
            Err(e) => f.push(format!("{l}: {e}")),
        }
        let tw = HeckeElt::basis(l.perm());
        match std_to_kl(&tw) {
            Ok(k) => check(f, kl_elt_oracle(&k) == oracle::from_lib(&tw), || format!("T for {l} round trip")),
            Err(e) => f.push(format!("T for {l}: {e}")),
        }
    }
}

// 3 ---------------------------------------------------------------------

fn c3(f: &mut Fails) {
    let ls = labels(8, &[0, 1]);
    let ors: Vec<Elt> = ls.iter().map(oracle::kl).collect();
    let mut families = BTreeSet::new();
    for (a, oa) in ls.iter().zip(&ors) {
        for (b, ob) in ls.iter().zip(&ors) {
            let closed = kl_mul_closed(a, b);
            check(f, kl_elt_oracle(&closed) == oa.mul(ob), || format!("{a} * {b} = {closed} disagrees with the model"));
            if let Some(fam) = mult_family(a, b) {
                families.insert((fam.line, fam.swapped));
            }
        }
    }
    check(f, families.len() == 16, || format!("{} of 16 families covered", families.len()));
}

// 4 ---------------------------------------------------------------------

fn low(p: &P) -> Option<(i64, String)> {
    p.lowest_term().map(|(d, c)| (d, c.to_string()))
}

fn c4(f: &mut Fails) {
    let b = |len, start| KLLabel::starting(len, start);
    let cases = [
        (b(1, 1), b(1, 1), lp(&[(0, 1), (2, 1)])),
        (b(2, 0), b(2, 0), lp(&[(0, 1), (2, 2), (4, 1)])),
        (b(2, 0), b(2, 1), lp(&[(2, 2), (4, 1)])),
    ];
    for (u, v, want) in cases {
        let o = oracle::kl(&u).form(&oracle::kl(&v));
        let l = kl_to_std(&u).form(&kl_to_std(&v)).unwrap();
        check(f, o == want && l == want, || format!("({u},{v}): model {o}, library {l}, want {want}"));
    }

    let ls = KLLabel::all_up_to(8);
    let ors: Vec<Elt> = ls.iter().map(oracle::kl).collect();
    for (u, ou) in ls.iter().zip(&ors) {
        for (v, ov) in ls.iter().zip(&ors) {
            let p = ou.form(ov);
            let lib = kl_to_std(u).form(&kl_to_std(v)).unwrap();
            check(f, p == lib, || format!("({u},{v}): library {lib}, model {p}"));
            let (m, n) = (u.len(), v.len());
            let cross = m == n && m > 0 && u.first() != v.first() && u.last() != v.last();
            let want = if cross && m == 1 {
                (2, "1".to_string())
            } else if cross {
                (2, "2".to_string())
            } else {
                ((m as i64 - n as i64).abs(), "1".to_string())
            };
            check(f, low(&p) == Some(want.clone()) && p.all_nonnegative(), || {
                format!("({u},{v}) = {p}, want lowest term {}*q^{}", want.1, want.0)
            });
        }
    }

    let small: Vec<Elt> = KLLabel::all_up_to(6).iter().map(oracle::kl).collect();
    for x in &small {
        for y in &small {
            let base = x.form(y);
            for k in -2..=2 {
                for l in -2..=2 {
                    let p = oracle::rho(2, k).mul(x).form(&oracle::rho(2, l).mul(y));
                    let want = if k == l { base.clone() } else { P::zero() };
                    check(f, p == want, || format!("shift ({k},{l}) gives {p}"));
                }
            }
        }
    }
    let boundary = oracle::kl(&b(1, 0)).form(&oracle::kl(&b(1, 1)));
    check(f, boundary == lp(&[(2, 1)]), || format!("(b0,b1) = {boundary}"));
    f.notes.push(format!("(b0,b1) = {boundary}; at m = n = 1 the lowest coefficient is 1, not 2"));
}

// 5 ---------------------------------------------------------------------

fn c5(f: &mut Fails) {
    for l in KLLabel::all_up_to(12) {
        let want = P::q_pow(l.len() as i64);
        let o = oracle::kl(&l).trace();
        let t = kl_to_std(&l).trace();
        check(f, o == want && t == want, || format!("eps({l}): model {o}, library {t}"));
    }
}

// 6 ---------------------------------------------------------------------

/// Generators of a source algebra, as images in some target.
struct Images {
    rho: Elt,
    rho_inv: Elt,
    t: Vec<Elt>,
    t_inv: Vec<Elt>,
}

impl Images {
    fn source(r: usize) -> Images {
        let (t, t_inv) = if r >= 2 {
            ((0..r).map(|i| oracle::t(r, i)).collect(), (0..r).map(|i| oracle::t_inv(r, i)).collect())
        } else {
            (Vec::new(), Vec::new())
        };
        Images { rho: oracle::rho(r, 1), rho_inv: oracle::rho(r, -1), t, t_inv }
    }

    fn get(&self, g: SourceGen) -> &Elt {
        match g {
            SourceGen::Rho => &self.rho,
            SourceGen::RhoInv => &self.rho_inv,
            SourceGen::T(i) => &self.t[i],
            SourceGen::TInv(i) => &self.t_inv[i],
        }
    }
}

fn word(n: usize, letters: &[(usize, bool)]) -> Elt {
    letters.iter().fold(Elt::one(n), |a, &(i, inv)| if inv { a.mul_t_inv(i) } else { a.mul_t(i) })
}

/// Images of the source generators of `H_k` and `H_{n-k}` inside `H_n`.
fn psi_images(n: usize, k: usize) -> (Images, Images) {
    let r = n - k;
    // rho_L -> rho T_{n-1} ... T_k
    let rl = oracle::rho(n, 1).mul(&word(n, &(k..n).rev().map(|i| (i, false)).collect::<Vec<_>>()));
    let rli = word(n, &(k..n).map(|i| (i, true)).collect::<Vec<_>>()).mul(&oracle::rho(n, -1));
    // rho_R -> T_k^-1 ... T_1^-1 rho
    let rr = word(n, &(1..=k).rev().map(|i| (i, true)).collect::<Vec<_>>()).mul(&oracle::rho(n, 1));
    let rri = oracle::rho(n, -1).mul(&word(n, &(1..=k).map(|i| (i, false)).collect::<Vec<_>>()));
    let mut lt = Vec::new();
    let mut lti = Vec::new();
    if k >= 2 {
        let outer: Vec<(usize, bool)> = (k..n).map(|i| (i, true)).collect();
        let back: Vec<(usize, bool)> = (k..n).rev().map(|i| (i, false)).collect();
        for inner in [false, true] {
            let mut w = outer.clone();
            w.push((0, inner));
            w.extend(&back);
            if inner {
                lti.push(word(n, &w));
            } else {
                lt.push(word(n, &w));
            }
        }
        for i in 1..k {
            lt.push(oracle::t(n, i));
            lti.push(oracle::t_inv(n, i));
        }
    }
    let mut rt = Vec::new();
    let mut rti = Vec::new();
    if r >= 2 {
        let front: Vec<(usize, bool)> = (0..k).map(|i| (i, false)).collect();
        let back: Vec<(usize, bool)> = (0..k).rev().map(|i| (i, true)).collect();
        for inner in [false, true] {
            let mut w = front.clone();
            w.push((k, inner));
            w.extend(&back);
            if inner {
                rti.push(word(n, &w));
            } else {
                rt.push(word(n, &w));
            }
        }
        for j in 1..r {
            rt.push(oracle::t(n, k + j));
            rti.push(oracle::t_inv(n, k + j));
        }
    }
    (Images { rho: rl, rho_inv: rli, t: lt, t_inv: lti }, Images { rho: rr, rho_inv: rri, t: rt, t_inv: rti })
}

fn relations(r: usize, n: usize, im: &Images) -> Vec<(String, Elt)> {
    let one = Elt::one(n);
    let mut out = vec![
        ("rho rho^-1".to_string(), im.rho.mul(&im.rho_inv).sub(&one)),
        ("rho^-1 rho".to_string(), im.rho_inv.mul(&im.rho).sub(&one)),
    ];
    if r < 2 {
        return out;
    }
    let a = &P::q_pow(-1) - &P::q();
    for i in 0..r {
        let j = (i + 1) % r;
        let ti = &im.t[i];
        out.push((format!("T{i} inverse"), ti.mul(&im.t_inv[i]).sub(&one)));
        out.push((format!("T{i} quadratic"), ti.mul(ti).sub(&ti.scale(&a)).sub(&one)));
        out.push((format!("rho T{i} rho^-1"), im.rho.mul(ti).mul(&im.rho_inv).sub(&im.t[j])));
        if r >= 3 {
            let tj = &im.t[j];
            out.push((format!("braid {i},{j}"), ti.mul(tj).mul(ti).sub(&tj.mul(ti).mul(tj))));
        }
        for l in i + 1..r {
            if (l - i).min(r - (l - i)) >= 2 {
                out.push((format!("T{i} T{l} commute"), ti.mul(&im.t[l]).sub(&im.t[l].mul(ti))));
            }
        }
    }
    out
}

fn c6(f: &mut Fails) {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let ctx = ParabolicContext::new(n, k).unwrap();
        let (il, ir) = psi_images(n, k);
        for (side, r, im) in [("L", k, &il), ("R", n - k, &ir)] {
            for (name, e) in relations(r, r, &Images::source(r)) {
                check(f, e.is_zero(), || format!("rank {r}: {name} fails in the source"));
            }
            for (name, e) in relations(r, n, im) {
                check(f, e.is_zero(), || format!("({n},{k}) psi_{side}: {name} leaves {} terms", e.terms.len()));
            }
            for g in SourceGen::all(r) {
                let lib = if side == "L" { ctx.psi_l_gen(g) } else { ctx.psi_r_gen(g) }.unwrap();
                check(f, oracle::from_lib(&lib) == *im.get(g), || format!("({n},{k}) psi_{side}({g:?}) = {lib}"));
            }
        }
        for a in SourceGen::all(k) {
            for b in SourceGen::all(n - k) {
                let (x, y) = (il.get(a), ir.get(b));
                check(f, x.mul(y) == y.mul(x), || format!("({n},{k}): {a:?} and {b:?} do not commute"));
            }
        }
        // rho T_{n-1} ... T_{k+1} T_{k-1}^-1 ... T_1^-1 rho
        let mut letters: Vec<(usize, bool)> = (k + 1..n).rev().map(|i| (i, false)).collect();
        letters.extend((1..k).rev().map(|i| (i, true)));
        let want = oracle::rho(n, 1).mul(&word(n, &letters)).mul(&oracle::rho(n, 1));
        check(f, il.rho.mul(&ir.rho) == want, || format!("({n},{k}): psi(rho_L, rho_R)"));
        check(f, ir.rho.mul(&il.rho) == want, || format!("({n},{k}): psi_R(rho_R) psi_L(rho_L)"));
        let lib = ctx.psi(&HeckeElt::rho(k, 1), &HeckeElt::rho(n - k, 1)).unwrap();
        check(f, oracle::from_lib(&lib) == want, || format!("({n},{k}): library psi(rho_L, rho_R) = {lib}"));
    }
}

// 7 ---------------------------------------------------------------------

fn tensor_image(a: &Elt, b: &Elt, n: usize, k: usize) -> Elt {
    let (il, ir) = psi_images(n, k);
    let left = oracle::fold(a, n, &il.rho, &il.rho_inv, &il.t);
    let right = oracle::fold(b, n, &ir.rho, &ir.rho_inv, &ir.t);
    left.mul(&right)
}

fn c7(f: &mut Fails) {
    let gens = [Elt::one(1), oracle::rho(1, 1), oracle::rho(1, -1)];
    let lib_gens = [HeckeElt::one(1), HeckeElt::rho(1, 1), HeckeElt::rho(1, -1)];
    let (p11, p21, p12) =
        (ParabolicContext::new(2, 1).unwrap(), ParabolicContext::new(3, 2).unwrap(), ParabolicContext::new(3, 1).unwrap());
    for (ia, a) in gens.iter().enumerate() {
        for (ib, b) in gens.iter().enumerate() {
            for (ic, c) in gens.iter().enumerate() {
                let lhs = tensor_image(&tensor_image(a, b, 2, 1), c, 3, 2);
                let rhs = tensor_image(a, &tensor_image(b, c, 2, 1), 3, 1);
                check(f, lhs == rhs, || format!("model: associativity fails at ({ia},{ib},{ic})"));
                let (la, lb, lc) = (&lib_gens[ia], &lib_gens[ib], &lib_gens[ic]);
                let l1 = p21.psi(&p11.psi(la, lb).unwrap(), lc).unwrap();
                let l2 = p12.psi(la, &p11.psi(lb, lc).unwrap()).unwrap();
                check(f, l1 == l2 && oracle::from_lib(&l1) == lhs, || format!("library: ({ia},{ib},{ic}) gives {l1} and {l2}"));
            }
        }
    }
}

// 8 ---------------------------------------------------------------------

fn oracle_y(n: usize, i: usize) -> Elt {
    // T_{i-1}^-1 ... T_1^-1 rho T_{n-1} ... T_i
    let pre: Vec<(usize, bool)> = (1..i).rev().map(|j| (j, true)).collect();
    let post: Vec<(usize, bool)> = (i..n).rev().map(|j| (j, false)).collect();
    word(n, &pre).mul(&oracle::rho(n, 1)).mul(&word(n, &post))
}

fn oracle_y_inv(n: usize, i: usize) -> Elt {
    let pre: Vec<(usize, bool)> = (i..n).map(|j| (j, true)).collect();
    let post: Vec<(usize, bool)> = (1..i).map(|j| (j, false)).collect();
    word(n, &pre).mul(&oracle::rho(n, -1)).mul(&word(n, &post))
}

fn bernstein_in_model(b: &BernsteinElt) -> Elt {
    let n = b.n();
    let mut out = Elt::zero(n);
    for (w, lambda, c) in b.terms() {
        let mut acc = oracle::from_lib(&HeckeElt::basis(w.clone()));
        for (i, &e) in lambda.iter().enumerate() {
            let y = if e >= 0 { oracle_y(n, i + 1) } else { oracle_y_inv(n, i + 1) };
            acc = acc.mul(&y.pow(e.unsigned_abs() as u32));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> HeckeElt {
    let mut acc = HeckeElt::one(n);
    for _ in 0..len {
        let r = rng.gen_range(0..4);
        acc = match r {
            0 | 1 if n >= 2 => {
                let i = rng.gen_range(0..n);
                if r == 0 {
                    acc.mul_t(i)
                } else {
                    acc.mul_t_inv(i)
                }
            }
            0 | 2 => acc.mul_rho(1),
            _ => acc.mul_rho(-1),
        };
    }
    acc
}

fn c8(f: &mut Fails) {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for s in 0..200 {
        let n = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=6);
        let w = random_word(&mut rng, n, len);
        match to_bernstein(&w) {
            Err(e @ Error::NonIntegralCorrection { .. }) => f.push(format!("sample {s}: {e}")),
            Err(e) => f.push(format!("sample {s}: {e}")),
            Ok(b) => {
                check(f, bernstein_in_model(&b) == oracle::from_lib(&w), || format!("sample {s}: {w} -> {b}"));
                match from_bernstein(&b) {
                    Ok(back) => check(f, back == w, || format!("sample {s}: {w} comes back as {back}")),
                    Err(e) => f.push(format!("sample {s}: {e}")),
                }
            }
        }
    }
    for n in 2..=4 {
        let ys: Vec<Elt> = (1..=n).map(|i| oracle_y(n, i)).collect();
        for i in 0..n {
            check(f, oracle::from_lib(&bernstein_y(n, i + 1).unwrap()) == ys[i], || format!("n={n}: y{}", i + 1));
            check(f, ys[i].mul(&oracle_y_inv(n, i + 1)) == Elt::one(n), || format!("n={n}: y{} inverse", i + 1));
            for j in i + 1..n {
                check(f, ys[i].mul(&ys[j]) == ys[j].mul(&ys[i]), || format!("n={n}: y{} y{j}", i + 1));
            }
        }
        for i in 1..n {
            let ti = oracle::t_inv(n, i);
            check(f, ti.mul(&ys[i - 1]).mul(&ti) == ys[i], || format!("n={n}: T{i}^-1 y{i} T{i}^-1"));
            let mut ei = vec![0; n];
            ei[i - 1] = 1;
            let mut ej = vec![0; n];
            ej[i] = 1;
            let bt = to_bernstein(&HeckeElt::t_inv(n, i).unwrap()).unwrap();
            let lhs = bernstein_mul(&bernstein_mul(&bt, &BernsteinElt::y(ei)).unwrap(), &bt).unwrap();
            check(f, lhs == BernsteinElt::y(ej), || format!("n={n}: normal form of T{i}^-1 y{i} T{i}^-1 is {lhs}"));
        }
    }
}

// 9 ---------------------------------------------------------------------

/// `pi(u_k)` from `[b_{k}] = [b_{k-1}][b_i] - [b_{k-2}]` on `W`.
fn pi_model(bound: usize) -> Vec<(Vec<P>, Vec<P>)> {
    let w = module_w();
    let b = |i| w.generator(Generator::B(i)).unwrap();
    let e0 = vec![P::one(), P::zero()];
    // words ending in 1: ...0 1, read left to right
    let mut mats: Vec<Matrix> = vec![Matrix::identity(2), b(1)];
    for k in 2..=bound {
        let first = if k % 2 == 1 { 1 } else { 0 };
        // word of length k ending in 1 starts with `first`; extend on the left
        let next = if k == 2 { b(0).mul(&b(1)) } else { b(first).mul(&mats[k - 1]).sub(&mats[k - 2]) };
        mats.push(next);
    }
    mats.into_iter()
        .map(|m| {
            let v = m.apply(&e0);
            let p = w.rho().apply(&v);
            (v, p)
        })
        .collect()
}

fn c9(f: &mut Fails) {
    let bound = 20;
    let w = module_w();
    let model = pi_model(bound);
    for (k, (v, p)) in model.iter().enumerate() {
        check(f, pi_uw_basis(UBasis::U(k)).ok().as_ref() == Some(v), || format!("pi(u{k})"));
        check(f, pi_uw_basis(UBasis::UPrime(k)).ok().as_ref() == Some(p), || format!("pi(u'{k})"));
    }
    check(f, model[1].0 == vec![P::q(), P::one()], || format!("pi(u1) = {:?}", model[1].0));
    check(f, model[2].0 == vec![P::constant(2), P::monomial(2, 1)], || format!("pi(u2) = {:?}", model[2].0));
    check(f, model[0].1 == vec![P::zero(), P::one()], || "pi(u'0) != w'".into());
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
        let px = if v.is_prime() { &model[v.degree()].1 } else { &model[v.degree()].0 };
        for g in gens {
            let a = u_act_closed(g, &x).unwrap();
            let b = u_act_multiply(g, &x).unwrap();
            check(f, a == b, || format!("{g:?} on {v}: {a} vs {b}"));
            let pa = pi_uw(&a).unwrap();
            check(f, pa == w.generator(g).unwrap().apply(px), || format!("pi({g:?} {v}) = {pa:?}"));
        }
    }
    let mut probes = 0;
    for l in KLLabel::all_up_to(10) {
        for m in -1..=1 {
            let x = HeckeElt::basis(l.perm().rho_mul(m));
            for g in [IdealGen::RhoSquaredMinusOne, IdealGen::B1RhoMinusB1] {
                probes += 1;
                let r = left_ideal_probe(g, &x, bound).unwrap();
                check(f, r.is_zero(), || format!("{x} * {g:?} -> {r}"));
                let direct = u_reduce(&(&x * &g.element()), bound).unwrap();
                check(f, direct.is_zero(), || format!("u_reduce({x} * {g:?}) = {direct}"));
            }
        }
    }
    check(f, probes == 21 * 3 * 2, || format!("{probes} probes"));
}

// 10 --------------------------------------------------------------------

/// `rho` acts by the swap on `W`, so a common eigenvector must be `(1, 1)` or
/// `(1, -1)`; test whether `[T1]` preserves either line.
fn w_has_common_line(q0: &Rational) -> bool {
    let t = module_w().t(1).unwrap().specialize(q0).unwrap();
    [(1, 1), (1, -1)].iter().any(|&(a, b)| {
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let x = &t.rows[0][0] * &a + &t.rows[0][1] * &b;
        let y = &t.rows[1][0] * &a + &t.rows[1][1] * &b;
        (&x * &b - &y * &a) == Rational::from_integer(0.into())
    })
}

fn c10(f: &mut Fails) {
    let id = Matrix::identity(2);
    let control = FinDimModule::new(2, id.clone(), id, vec![m2(&[(-1, 1)], &[], &[], &[(1, -1)])]).unwrap();
    check(f, control.check_relations().all_pass(), || "control module relations".into());
    for (a, b) in [(2, 1), (3, 1), (5, 7)] {
        let q0 = Rational::new(a.into(), b.into());
        check(f, !w_has_common_line(&q0), || format!("W at {q0}: model finds a common eigenvector"));
        let s = module_w().specialize(&q0).unwrap();
        check(f, s.common_eigvec_test() == Ok(false), || format!("W at {q0}: library finds a common eigenvector"));
        let c = control.specialize(&q0).unwrap();
        check(f, c.common_eigvec_test() == Ok(true), || format!("control at {q0} not flagged"));
    }
}

// 11 --------------------------------------------------------------------

fn oracle_y_class(r: i64, s: i64) -> Elt {
    let a = if r >= 0 { oracle::rho(2, 1).mul(&oracle::t(2, 1)) } else { oracle::t_inv(2, 1).mul(&oracle::rho(2, -1)) };
    let b = if s >= 0 { oracle::t_inv(2, 1).mul(&oracle::rho(2, 1)) } else { oracle::rho(2, -1).mul(&oracle::t(2, 1)) };
    a.pow(r.unsigned_abs() as u32).mul(&b.pow(s.unsigned_abs() as u32))
}

fn c11(f: &mut Fails) {
    let us = KLLabel::all_up_to(6);
    let mut ys = Vec::new();
    for r in -3..=3 {
        for s in -3..=3 {
            let o = oracle_y_class(r, s);
            check(f, oracle::from_lib(&y_class(r, s)) == o, || format!("Y^({r},{s})"));
            ys.push((r, s, o, y_class(r, s)));
        }
    }
    for k in -2..=2i64 {
        for u in &us {
            let x = oracle::kl(&u.clone().with_rho(k));
            let lx = kl_to_std(u).rho_mul(k);
            for (r, s, y, ly) in &ys {
                if r + s == k {
                    continue;
                }
                let p = x.form(y);
                let lp = euler_pair(&lx, ly).unwrap();
                check(f, p.is_zero() && lp.is_zero(), || format!("(rho^{k} {u}, Y^({r},{s})): model {p}, library {lp}"));
            }
        }
    }
    for s in 1..=4usize {
        for n in (1..=9usize).step_by(2) {
            let (u, v) = (KLLabel::starting(n, 1), KLLabel::starting(2 * s, 0));
            let p = oracle::kl(&u).form(&oracle::kl(&v));
            let d = (n as i64 - 2 * s as i64).abs();
            check(f, low(&p) == Some((d, "1".into())) && p.all_nonnegative(), || format!("({u},{v}) = {p}, want q^{d} + ..."));
        }
    }
}

// 12 --------------------------------------------------------------------

fn c12(f: &mut Fails) {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for s in 0..500 {
        let n = rng.gen_range(1..=3);
        let depth = rng.gen_range(0..=5);
        let e = random_expr(&mut rng, n, depth);
        let text = e.to_string();
        let ctx = EvalContext::new(n);
        let a = eval(&ctx, &e);
        match parse(&text) {
            Ok(e2) => check(f, eval(&ctx, &e2) == a, || format!("sample {s}: {text} changes value")),
            Err(err) => f.push(format!("sample {s}: {text}: {err}")),
        }
        if let Ok(v) = a {
            let printed = v.to_string();
            let again = affine_hecke::expr::eval_str(&ctx, &printed);
            check(f, again.as_ref() == Ok(&v), || format!("sample {s}: value {printed} does not reparse"));
            if let Ok(h) = v.into_hecke(n) {
                let j = format::hecke_to_json(&h);
                check(f, format::hecke_from_json(&j).ok() == Some(h.clone()), || format!("sample {s}: hecke json"));
                if let Ok(b) = to_bernstein(&h) {
                    let j = format::bernstein_to_json(&b);
                    check(f, format::bernstein_from_json(&j).ok() == Some(b), || format!("sample {s}: bernstein json"));
                }
                if n == 2 {
                    let k = std_to_kl(&h).unwrap();
                    let j = format::kl_to_json(&k);
                    check(f, format::kl_from_json(&j).ok() == Some(k.clone()), || format!("sample {s}: kl json"));
                    check(f, format::hecke_from_json(&j).ok() == Some(h.clone()), || format!("sample {s}: kl json as hecke"));
                }
            }
        }
    }
    let modules = [
        module_w(),
        induce(&trivial_v(), &trivial_v()).unwrap(),
        induce(&trivial_v(), &sign_module(2)).unwrap(),
        induce(&trivial_module(2), &trivial_v()).unwrap(),
    ];
    for m in &modules {
        let j = format::module_to_json(m);
        check(f, format::module_from_json(&j).ok().as_ref() == Some(m), || format!("module json {j}"));
        let mj = format::matrix_to_json(m.rho());
        check(f, format::matrix_from_json(&mj).ok().as_ref() == Some(m.rho()), || "matrix json".into());
    }
    let mut u = UVec::zero(20);
    u.add_term(UBasis::U(3), P::one()).unwrap();
    u.add_term(UBasis::UPrime(0), P::q_pow(-1)).unwrap();
    let uj = format::uvec_to_json(&u);
    check(f, uj == serde_json::json!({"N": 20, "coeffs": {"u3": {"0": 1}, "u'0": {"-1": 1}}}), || format!("uvec json {uj}"));
    check(f, format::uvec_from_json(&uj).ok() == Some(u), || "uvec json round trip".into());
    let p = lp(&[(-1, 1), (0, 2), (3, -5)]);
    let pj = serde_json::to_string(&p).unwrap();
    check(f, serde_json::from_str::<P>(&pj).ok() == Some(p), || format!("laurent json {pj}"));
    let zero = format::hecke_to_json(&HeckeElt::zero(2));
    check(f, zero["terms"] == serde_json::json!([]), || format!("zero json {zero}"));

    let out = Command::new(env!("CARGO_BIN_EXE_hecke")).arg("check").output().expect("run hecke check");
    check(f, out.status.code() == Some(0), || {
        format!("hecke check exited {:?}:\n{}", out.status.code(), String::from_utf8_lossy(&out.stdout))
    });
}

struct Crit {
    id: u8,
    name: &'static str,
    limit: Option<u64>,
    run: fn(&mut Fails),
}

fn main() -> ExitCode {
    let crits = [
        Crit { id: 1, name: "induce(V,V) reproduces the matrices of W", limit: Some(1), run: c1 },
        Crit { id: 2, name: "KL <-> standard round trip, |m| <= 2, l <= 12", limit: Some(1), run: c2 },
        Crit { id: 3, name: "closed KL products vs model, l <= 8, 16 families", limit: Some(10), run: c3 },
        Crit { id: 4, name: "form values, lowest terms, shift orthogonality", limit: Some(5), run: c4 },
        Crit { id: 5, name: "eps(b_w) = q^l(w), l <= 12", limit: None, run: c5 },
        Crit { id: 6, name: "psi relations, commuting pairs, psi(rho_L, rho_R)", limit: Some(30), run: c6 },
        Crit { id: 7, name: "associativity of psi at n = 3", limit: None, run: c7 },
        Crit { id: 8, name: "Bernstein round trip and relations", limit: Some(30), run: c8 },
        Crit { id: 9, name: "module U at N = 20 and projection to W", limit: Some(30), run: c9 },
        Crit { id: 10, name: "W has no common eigenvector at q = 2, 3, 5/7", limit: Some(1), run: c10 },
        Crit { id: 11, name: "Euler pairings vanish off r + s = k; lowest terms", limit: Some(10), run: c11 },
        Crit { id: 12, name: "parser and JSON round trips; hecke check", limit: None, run: c12 },
    ];
    let mut failed = 0;
    for c in &crits {
        let mut report = Fails::default();
        let start = Instant::now();
        (c.run)(&mut report);
        let fails = report.fails;
        let el = start.elapsed();
        let slow = c.limit.is_some_and(|l| el > Duration::from_secs(l));
        let ok = fails.is_empty() && !slow;
        if !ok {
            failed += 1;
        }
        let limit = c.limit.map(|l| format!(", limit {l}s")).unwrap_or_default();
        println!("criterion {:>2}: {} {} ({:.3}s{limit})", c.id, if ok { "PASS" } else { "FAIL" }, c.name, el.as_secs_f64());
        if slow {
            println!("    over time limit");
        }
        for n in &report.notes {
            println!("    note: {n}");
        }
        for x in fails.iter().take(8) {
            println!("    {x}");
        }
        if fails.len() > 8 {
            println!("    ... {} more", fails.len() - 8);
        }
    }
    println!("{} of {} criteria passed", crits.len() - failed, crits.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
