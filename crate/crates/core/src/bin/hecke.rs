use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use affine_hecke::bernstein::to_bernstein;
use affine_hecke::example_n2::{pi_uw, u_act_elt_multiply, u_reduce, UVec, DEFAULT_BOUND};
use affine_hecke::expr::{eval_str, EvalContext, Value};
use affine_hecke::format;
use affine_hecke::kl::std_to_kl;
use affine_hecke::modules::{induce, one_dim, FinDimModule};
use affine_hecke::pairing::{graded_hom_rank, y_class};
use affine_hecke::parabolic::ParabolicContext;
use affine_hecke::verify;
use affine_hecke::{Error, HeckeElt, KLLabel, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Std,
    Kl,
    Bernstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    L,
    R,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModuleName {
    U,
}

/// Exact computations in extended affine Hecke algebras of type A.
#[derive(Parser, Debug)]
#[command(name = "hecke", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "HECKE_FORMAT")]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an expression.
    Eval {
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Apply rho^2 -> 1 afterwards (n = 1 or 2 only).
        #[arg(long)]
        mod_rho2: bool,
        /// Basis for the printed result.
        #[arg(long, value_enum, default_value = "std")]
        basis: Basis,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        expr: String,
    },
    /// The form (x, y) = eps(omega(x) y).
    Pair {
        #[arg(short = 'n', long = "n")]
        n: usize,
        x: String,
        y: String,
    },
    /// Images under psi_L, psi_R or psi_{k,n-k}.
    Psi {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'k', long = "k")]
        k: usize,
        #[arg(long, value_enum, ignore_case = true)]
        side: Side,
        /// One expression for L or R; two (left, right) for both.
        #[arg(required = true, num_args = 1..=2)]
        exprs: Vec<String>,
    },
    /// Induce M1 (x) M2 along psi_{k,n-k}.
    Induce {
        /// trivial:K, sign:K or json:PATH
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(short = 'n', long = "n")]
        n: Option<usize>,
        #[arg(short = 'k', long = "k")]
        k: Option<usize>,
        /// Also check the defining relations on the result.
        #[arg(long)]
        check: bool,
    },
    /// Act on a vector of U.
    Act {
        #[arg(long, value_enum, default_value = "u", ignore_case = true)]
        module: ModuleName,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        expr: String,
        /// An expression in u_k, u'_k or UVec JSON.
        vec: String,
    },
    /// Image of an algebra element in U.
    ReduceU {
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        expr: String,
    },
    /// Projection U -> W, in the basis {w, w'}.
    PiUw {
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        vec: String,
    },
    /// (rho T1)^r (T1^-1 rho)^s in rank 2.
    Yclass {
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
    /// (x, y) for two rank-2 KL basis elements such as b01 or rho*b10.
    Gradedrank { u: String, v: String },
    /// Run the invariant suite.
    Check {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// Exit code for an error.
fn code(e: &Error) -> u8 {
    match e {
        Error::TruncationExceeded { .. }
        | Error::RankUnsupported { .. }
        | Error::RankMismatch { .. }
        | Error::BadIndex { .. }
        | Error::ShiftNonzero { .. }
        | Error::DimUnsupported { .. } => 3,
        Error::NonIntegralCorrection { .. } => 1,
        _ => 2,
    }
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(code(&e), e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn ctx(n: usize) -> EvalContext {
    EvalContext::new(n)
}

fn hecke(n: usize, src: &str) -> Result<HeckeElt, Failure> {
    Ok(eval_str(&ctx(n), src)?.into_hecke(n)?)
}

fn render_value(v: &Value, f: Format) -> String {
    match f {
        Format::Text => v.to_string(),
        Format::Json => format::value_to_json(v).to_string(),
        Format::Latex => format::value_latex(v),
    }
}

fn render_poly(p: &LaurentPoly, f: Format) -> String {
    match f {
        Format::Text => p.to_string(),
        Format::Json => serde_json::to_string(p).expect("serializable"),
        Format::Latex => p.to_latex(),
    }
}

fn render_hecke(h: &HeckeElt, f: Format) -> String {
    render_value(&Value::Hecke(h.clone()), f)
}

fn render_coords(v: &[LaurentPoly], f: Format) -> String {
    match f {
        Format::Json => json!({"w": v[0], "w'": v[1]}).to_string(),
        Format::Latex => format!("\\begin{{pmatrix}} {} \\\\ {} \\end{{pmatrix}}", v[0].to_latex(), v[1].to_latex()),
        Format::Text => {
            let part = |c: &LaurentPoly, s: &str| {
                if c.is_one() {
                    s.to_string()
                } else if c.num_terms() == 1 {
                    format!("{c}*{s}")
                } else {
                    format!("({c})*{s}")
                }
            };
            let parts: Vec<String> =
                [(&v[0], "w"), (&v[1], "w'")].iter().filter(|(c, _)| !c.is_zero()).map(|(c, s)| part(c, s)).collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
    }
}

fn parse_uvec(src: &str, bound: usize) -> Result<UVec, Failure> {
    if src.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(src).map_err(Error::from)?;
        return Ok(format::uvec_from_json(&v)?.with_bound(bound)?);
    }
    let c = EvalContext { bound, ..ctx(2) };
    Ok(eval_str(&c, src)?.into_uvec()?.with_bound(bound)?)
}

fn parse_label(src: &str) -> Result<KLLabel, Failure> {
    let k = std_to_kl(&hecke(2, src)?)?;
    let mut it = k.terms();
    match (it.next(), it.next()) {
        (Some((l, c)), None) if c.is_one() => Ok(l.clone()),
        _ => Err(usage(format!("{src:?} is not a single KL basis element"))),
    }
}

fn module_arg(desc: &str) -> Result<FinDimModule, Failure> {
    let (kind, arg) = desc.split_once(':').ok_or_else(|| usage(format!("bad module {desc:?}")))?;
    let rank = || -> Result<usize, Failure> {
        arg.parse().ok().filter(|&r| r >= 1).ok_or_else(|| usage(format!("bad rank in {desc:?}")))
    };
    match kind {
        "trivial" => Ok(one_dim(rank()?, LaurentPoly::q_pow(-1), LaurentPoly::one())),
        "sign" => Ok(one_dim(rank()?, LaurentPoly::monomial(-1, 1), LaurentPoly::one())),
        "json" => {
            let text = fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
            Ok(format::module_from_json(&v)?)
        }
        _ => Err(usage(format!("unknown module kind {kind:?}"))),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match cli.cmd {
        Cmd::Eval { n, mod_rho2, basis, bound, expr } => {
            if mod_rho2 && n > 2 {
                return Err(usage("--mod-rho2 needs n = 1 or 2"));
            }
            let c = EvalContext { n, bound, mod_rho2 };
            let v = eval_str(&c, &expr)?;
            let f = fmt(Format::Text);
            match (basis, v) {
                (Basis::Std, Value::Scalar(c)) if f == Format::Json => {
                    Ok(format::hecke_to_json(&HeckeElt::scalar(n, c)).to_string())
                }
                (Basis::Std, v) | (_, v @ Value::U(_)) => Ok(render_value(&v, f)),
                (Basis::Kl, v) => {
                    if n != 2 {
                        return Err(Error::RankUnsupported { n }.into());
                    }
                    let k = std_to_kl(&v.into_hecke(n)?)?;
                    Ok(match f {
                        Format::Text => format::kl_text(&k),
                        Format::Json => format::kl_to_json(&k).to_string(),
                        Format::Latex => format::kl_latex(&k),
                    })
                }
                (Basis::Bernstein, v) => {
                    let b = to_bernstein(&v.into_hecke(n)?)?;
                    Ok(match f {
                        Format::Text => format::bernstein_text(&b),
                        Format::Json => format::bernstein_to_json(&b).to_string(),
                        Format::Latex => format::bernstein_latex(&b),
                    })
                }
            }
        }
        Cmd::Pair { n, x, y } => {
            let p = hecke(n, &x)?.form(&hecke(n, &y)?)?;
            Ok(render_poly(&p, fmt(Format::Text)))
        }
        Cmd::Psi { n, k, side, exprs } => {
            let p = ParabolicContext::new(n, k)?;
            let want = if side == Side::Both { 2 } else { 1 };
            if exprs.len() != want {
                return Err(usage(format!("--side {side:?} takes {want} expression(s)")));
            }
            let img = match side {
                Side::L => p.psi_l(&hecke(k, &exprs[0])?)?,
                Side::R => p.psi_r(&hecke(n - k, &exprs[0])?)?,
                Side::Both => p.psi(&hecke(k, &exprs[0])?, &hecke(n - k, &exprs[1])?)?,
            };
            Ok(render_hecke(&img, fmt(Format::Text)))
        }
        Cmd::Induce { left, right, n, k, check } => {
            let (a, b) = (module_arg(&left)?, module_arg(&right)?);
            if let Some(n) = n {
                if n != a.n() + b.n() {
                    return Err(usage(format!("ranks {} + {} do not add up to {n}", a.n(), b.n())));
                }
            }
            if let Some(k) = k {
                if k != a.n() {
                    return Err(usage(format!("left module has rank {}, not {k}", a.n())));
                }
            }
            let m = induce(&a, &b)?;
            if check {
                let r = m.check_relations();
                if !r.all_pass() {
                    return Err(Failure(1, format!("relations fail: {:?}", r.failures())));
                }
            }
            Ok(match fmt(Format::Json) {
                Format::Json => format::module_to_json(&m).to_string(),
                Format::Latex => format::module_latex(&m),
                Format::Text => format::module_text(&m),
            })
        }
        Cmd::Act { module: ModuleName::U, bound, expr, vec } => {
            let x = parse_uvec(&vec, bound)?;
            let a = hecke(2, &expr)?;
            Ok(render_value(&Value::U(u_act_elt_multiply(&a, &x)?), fmt(Format::Text)))
        }
        Cmd::ReduceU { bound, expr } => {
            let v = u_reduce(&hecke(2, &expr)?, bound)?;
            Ok(render_value(&Value::U(v), fmt(Format::Text)))
        }
        Cmd::PiUw { bound, vec } => Ok(render_coords(&pi_uw(&parse_uvec(&vec, bound)?)?, fmt(Format::Text))),
        Cmd::Yclass { r, s } => Ok(render_hecke(&y_class(r, s), fmt(Format::Text))),
        Cmd::Gradedrank { u, v } => {
            let g = graded_hom_rank(&parse_label(&u)?, &parse_label(&v)?);
            let f = fmt(Format::Text);
            Ok(match f {
                Format::Json => json!({"rank": g.poly, "nonnegative": g.nonnegative}).to_string(),
                _ if g.nonnegative => render_poly(&g.poly, f),
                _ => format!("{} (negative coefficients)", render_poly(&g.poly, f)),
            })
        }
        Cmd::Check { only } => {
            let results: Vec<verify::CriterionResult> = if only.is_empty() {
                verify::run_all()
            } else {
                let mut out = Vec::new();
                for id in only {
                    out.push(verify::run_one(id).ok_or_else(|| usage(format!("no criterion {id}")))?);
                }
                out
            };
            let mut lines: Vec<String> = results.iter().map(|r| r.to_string()).collect();
            let failed = results.iter().filter(|r| !r.passed).count();
            lines.push(format!("{} passed, {failed} failed", results.len() - failed));
            let text = lines.join("\n");
            if failed > 0 {
                return Err(Failure(1, text));
            }
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure(c, msg)) => {
            if c == 1 {
                println!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(c)
        }
    }
}
