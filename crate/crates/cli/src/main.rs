use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;
use thompson_core::gram::gram_psd_check;
use thompson_core::haagerup::{farley_compare, farley_phi, phi_polynomial, sweep, vanishing_scan};
use thompson_core::kazhdan::{almost_invariance, c_constant, kn_coefficient, zeta};
use thompson_core::oracles::{
    check_cyclic_forest_lemma, check_reduction_soundness, check_term_parity,
    check_word_injectivity, Report,
};
use thompson_core::{Error, Limits, VElement};

mod input;

/// Exact computations in Thompson's groups F ⊂ T ⊂ V.
#[derive(Parser)]
#[command(name = "thompson", version)]
struct Cli {
    /// Print rationals as decimals instead of p/q.
    #[arg(long, global = true)]
    float: bool,
    /// Override the largest leaf count for exhaustive enumeration.
    #[arg(long, global = true, value_name = "N")]
    leaf_bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group arithmetic on elements.
    #[command(subcommand)]
    Element(ElementCmd),
    /// φ_α(g) as a polynomial in α or at a rational α.
    Phi {
        #[arg(long)]
        element: String,
        #[arg(long, conflicts_with = "symbolic")]
        alpha: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// φ_α over every reduced affine pair, compared with α^(2n−2).
    ScanVanishing {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        max_leaves: usize,
        #[arg(long, value_name = "PATH")]
        csv: Option<String>,
    },
    /// Exact positive-semidefiniteness of [φ_α(g_i⁻¹ g_j)].
    Gram {
        #[arg(long, value_name = "PATH")]
        elements: String,
        #[arg(long)]
        alpha: String,
    },
    /// ‖c(g)‖² = 2n − 2 and whether φ_α(g) = α^‖c(g)‖².
    Farley {
        #[arg(long)]
        element: String,
        /// Also print exp(−β‖c(g)‖²).
        #[arg(long)]
        beta: Option<String>,
    },
    /// Shift-representation coefficients.
    #[command(subcommand)]
    Kazhdan(KazhdanCmd),
    /// Exhaustive and randomized structural checks.
    Oracle(OracleArgs),
    /// α ↦ φ_α(g) at the given points.
    Sweep {
        #[arg(long)]
        element: String,
        #[arg(long, value_name = "A1,A2,...")]
        alphas: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<String>,
    },
}

#[derive(Subcommand)]
enum ElementCmd {
    /// Canonical form.
    Reduce {
        element: String,
    },
    /// Product of the elements, applied right to left.
    Multiply {
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    Inverse {
        element: String,
    },
    /// F, T_only or V_only.
    Classify {
        element: String,
    },
    /// Image of a dyadic point under the piecewise-linear action.
    Eval {
        element: String,
        #[arg(long, value_name = "K/2^E")]
        at: String,
    },
}

#[derive(Subcommand)]
enum KazhdanCmd {
    /// ⟨π(k_n)ξ, ξ⟩ with every component ζ_m, against C^(2^n).
    Kn {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// ⟨π(g)ξ_m, ξ_m⟩ for m = 1..=M against (1 − 8^−m)^(4^m).
    AlmostInvariant {
        #[arg(long)]
        element: String,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    check: OracleKind,
    /// Leaf bound, or sample count for `reduction`.
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OracleKind {
    WordInjectivity,
    CyclicForest,
    Parity,
    Reduction,
}

struct Ctx {
    float: bool,
    limits: Limits,
}

impl Ctx {
    fn num(&self, x: &BigRational) -> String {
        if self.float {
            format!("{}", x.to_f64().unwrap_or(f64::NAN))
        } else {
            x.to_string()
        }
    }

    fn element(&self, arg: &str) -> Result<VElement> {
        input::element(arg, self.limits.max_inflation_level)
    }
}

#[derive(Serialize)]
struct CsvRow {
    element_id: String,
    n_leaves: usize,
    alpha_num: String,
    alpha_den: String,
    phi_num: String,
    phi_den: String,
}

impl CsvRow {
    fn new(g: &VElement, alpha: &BigRational, phi: &BigRational) -> CsvRow {
        CsvRow {
            element_id: g.to_literal(),
            n_leaves: g.leaf_count(),
            alpha_num: alpha.numer().to_string(),
            alpha_den: alpha.denom().to_string(),
            phi_num: phi.numer().to_string(),
            phi_den: phi.denom().to_string(),
        }
    }
}

fn write_csv(path: &str, rows: impl IntoIterator<Item = CsvRow>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {path}"))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `Ok(false)` means the computation finished but reported a violated
/// contract (exit status 1).
fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    let mut limits = Limits::default();
    if let Some(b) = cli.leaf_bound {
        limits.max_leaves = b;
    }
    let ctx = Ctx {
        float: cli.float,
        limits,
    };
    match cli.command {
        Command::Element(cmd) => match cmd {
            ElementCmd::Reduce { element } => {
                writeln!(out, "{}", ctx.element(&element)?.to_literal())?;
            }
            ElementCmd::Multiply { elements } => {
                let gs = elements
                    .iter()
                    .map(|e| ctx.element(e))
                    .collect::<Result<Vec<_>>>()?;
                writeln!(out, "{}", VElement::product(&gs).to_literal())?;
            }
            ElementCmd::Inverse { element } => {
                writeln!(out, "{}", ctx.element(&element)?.inverse().to_literal())?;
            }
            ElementCmd::Classify { element } => {
                writeln!(out, "{}", ctx.element(&element)?.classify())?;
            }
            ElementCmd::Eval { element, at } => {
                let g = ctx.element(&element)?;
                let y = g.eval(&input::dyadic(&at)?)?;
                if ctx.float {
                    writeln!(out, "{}", y.to_f64())?;
                } else {
                    writeln!(out, "{y}")?;
                }
            }
        },
        Command::Phi {
            element,
            alpha,
            symbolic,
        } => {
            let g = ctx.element(&element)?;
            let poly = phi_polynomial(&g)?;
            match alpha {
                Some(a) if !symbolic => {
                    let a = input::rational(&a)?;
                    let v = thompson_core::haagerup::phi_alpha_eval(&g, &a)?;
                    writeln!(out, "{}", ctx.num(&v))?;
                }
                _ => {
                    writeln!(out, "{poly}")?;
                    writeln!(out, "coefficients: {}", serde_json::to_string(&poly)?)?;
                }
            }
        }
        Command::ScanVanishing {
            alpha,
            max_leaves,
            csv,
        } => {
            let a = input::rational(&alpha)?;
            let scan = vanishing_scan(&a, max_leaves, &ctx.limits)?;
            writeln!(out, "n,count,phi,max_deviation,polynomial_mismatches")?;
            let mut clean = true;
            for r in &scan.rows {
                clean &=
                    r.polynomial_mismatches == 0 && num_traits::Zero::is_zero(&r.max_deviation);
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.leaves,
                    r.count,
                    ctx.num(&r.expected),
                    ctx.num(&r.max_deviation),
                    r.polynomial_mismatches
                )?;
            }
            if let Some(path) = csv {
                write_csv(
                    &path,
                    scan.entries
                        .iter()
                        .map(|e| CsvRow::new(&e.element, &a, &e.phi)),
                )?;
            }
            return Ok(clean);
        }
        Command::Gram { elements, alpha } => {
            let gs = input::element_list(&elements, ctx.limits.max_inflation_level)?;
            let a = input::rational(&alpha)?;
            let report = gram_psd_check(&gs, &a)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            return Ok(report.ldl.is_psd);
        }
        Command::Farley { element, beta } => {
            let g = ctx.element(&element)?;
            let cmp = farley_compare(&g)?;
            writeln!(out, "norm: {}", cmp.norm)?;
            writeln!(out, "phi: {}", cmp.phi)?;
            writeln!(out, "alpha^norm: {}", cmp.farley)?;
            writeln!(out, "agrees: {}", cmp.agrees)?;
            if let Some(b) = beta {
                let v = farley_phi(&g, &input::rational(&b)?)?;
                writeln!(out, "exp(-{}*{}) = {}", v.beta, v.exponent, v.to_f64())?;
            }
        }
        Command::Kazhdan(cmd) => match cmd {
            KazhdanCmd::Kn { n, m } => {
                let z = zeta(m, &ctx.limits)?;
                let xi = vec![z.clone(); 1usize << n.min(16)];
                let v = kn_coefficient(n, &xi, &z, &ctx.limits)?;
                let c = c_constant(&z)?;
                let expected = Pow::pow(&c, 1u32 << n);
                let verdict = if v == expected {
                    "exact-match"
                } else {
                    "mismatch"
                };
                writeln!(out, "n,m,coefficient,C,bound")?;
                writeln!(out, "{n},{m},{},{},{verdict}", ctx.num(&v), ctx.num(&c))?;
                return Ok(v == expected);
            }
            KazhdanCmd::AlmostInvariant { element, m } => {
                let g = ctx.element(&element)?;
                writeln!(out, "m,coefficient,bound,satisfied,bound_applies")?;
                let mut ok = true;
                for k in 1..=m {
                    let r = almost_invariance(&g, k, &ctx.limits)?;
                    ok &= r.satisfied || !r.bound_applies();
                    writeln!(
                        out,
                        "{k},{},{},{},{}",
                        ctx.num(&r.value),
                        ctx.num(&r.bound),
                        r.satisfied,
                        r.bound_applies()
                    )?;
                }
                return Ok(ok);
            }
        },
        Command::Oracle(args) => {
            let report: Report = match args.check {
                OracleKind::WordInjectivity => {
                    check_word_injectivity(args.bound.unwrap_or(8) as usize, &ctx.limits)?
                }
                OracleKind::CyclicForest => {
                    check_cyclic_forest_lemma(args.bound.unwrap_or(6) as usize, &ctx.limits)?
                }
                OracleKind::Parity => {
                    check_term_parity(args.bound.unwrap_or(5) as usize, &ctx.limits)?
                }
                OracleKind::Reduction => {
                    check_reduction_soundness(args.bound.unwrap_or(500) as usize, args.seed)
                }
            };
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            return Ok(report.passed());
        }
        Command::Sweep {
            element,
            alphas,
            csv,
        } => {
            let g = ctx.element(&element)?;
            let points = sweep(&g, &input::rationals(&alphas)?)?;
            writeln!(out, "alpha,phi")?;
            for (a, v) in &points {
                writeln!(out, "{},{}", ctx.num(a), ctx.num(v))?;
            }
            if let Some(path) = csv {
                write_csv(&path, points.iter().map(|(a, v)| CsvRow::new(&g, a, v)))?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            drop(out);
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_parse_error() => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
