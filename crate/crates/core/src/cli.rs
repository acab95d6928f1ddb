//! The `weylpoly` command line.
//!
//! Exit codes: 0 success, 1 verification failure (or a polytope sum that
//! differs from the dominance oracle), 2 usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::brion::{brion_oracle, polytope_sum, Method};
use crate::demazure::{character_demazure, parse_operator_expression};
use crate::error::Error;
use crate::expansion::{character_weyl_division, polytope_expansion};
use crate::formal_sum::{bigint_to_number, FormalSum};
use crate::root_system::{AlgebraId, RootSystem, Weight};
use crate::verify::{run_sweep, Sweep, SweepReport};
use crate::weyl::enumeration_cap;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "weylpoly",
    version,
    about = "Weyl polytope sums, Demazure operators and Lie characters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character of an irreducible module.
    Char(CharArgs),
    /// Weyl polytope sum B_λ.
    PolytopeSum(PolytopeSumArgs),
    /// Expansion of ch_λ in polytope sums.
    Expand(WeightArgs),
    /// Apply an operator word in r<i>, D<i>, d<i> to e^μ.
    Apply(ApplyArgs),
    /// Run a verification sweep.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharMethod {
    Demazure,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SumMethod {
    Dominance,
    Cones,
    Demazure,
}

impl From<SumMethod> for Method {
    fn from(m: SumMethod) -> Method {
        match m {
            SumMethod::Dominance => Method::Dominance,
            SumMethod::Cones => Method::BrionCones,
            SumMethod::Demazure => Method::DemazureProduct,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Theorem,
    Lemma,
    Rank2,
    Braid,
    Cones,
    Characters,
    Expansion,
    All,
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    /// A1..A9, C2 or G2.
    #[arg(long)]
    pub algebra: AlgebraId,
    /// Comma-separated Dynkin labels.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Weight,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[command(flatten)]
    pub common: WeightArgs,
    #[arg(long, value_enum, default_value_t = CharMethod::Demazure)]
    pub method: CharMethod,
}

#[derive(Args, Debug)]
pub struct PolytopeSumArgs {
    #[command(flatten)]
    pub common: WeightArgs,
    #[arg(long, value_enum, default_value_t = SumMethod::Dominance)]
    pub method: SumMethod,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub common: WeightArgs,
    /// Operator word such as "D1 D2 D1"; the rightmost atom acts first.
    #[arg(long)]
    pub expr: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub sweep: SweepArg,
    /// Restrict the sweep to one algebra.
    #[arg(long)]
    pub algebra: Option<AlgebraId>,
    /// Largest level Σλ_i of the swept dominant weights.
    #[arg(long, default_value_t = 4)]
    pub max_level: i64,
    /// Largest rank of A_n swept when no algebra is named.
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

struct Usage(String);

impl Usage {
    fn flag(flag: &str, err: Error) -> Usage {
        Usage(format!("invalid value for {flag}: {err}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Char(a) => cmd_char(a, out),
        Command::PolytopeSum(a) => cmd_polytope_sum(a, out),
        Command::Expand(a) => cmd_expand(a, out),
        Command::Apply(a) => cmd_apply(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn root_system_and_weight(a: &WeightArgs, dominant: bool) -> Result<(RootSystem, Weight), Usage> {
    let rs = RootSystem::new(a.algebra);
    let check = if dominant {
        rs.check_dominant(&a.weight)
    } else {
        rs.check_weight(&a.weight)
    };
    check.map_err(|e| Usage::flag("--weight", e))?;
    Ok((rs, a.weight.clone()))
}

fn computation(err: Error) -> Usage {
    Usage(err.to_string())
}

fn emit(out: &mut dyn Write, text: String) {
    let _ = out.write_all(text.as_bytes());
}

fn cmd_char(a: &CharArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (rs, lambda) = root_system_and_weight(&a.common, true)?;
    let (ch, method) = match a.method {
        CharMethod::Demazure => (character_demazure(&rs, &lambda), "demazure"),
        CharMethod::Weyl => (character_weyl_division(&rs, &lambda), "weyl"),
    };
    let ch = ch.map_err(computation)?;
    let dimension = ch.coefficient_sum();
    match a.common.format {
        Format::Json => {
            let mut v = ch.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("algebra".into(), rs.algebra().to_string().into());
            obj.insert("lambda".into(), json!(lambda.labels()));
            obj.insert("method".into(), method.into());
            obj.insert("dimension".into(), bigint_to_number(&dimension).into());
            obj.insert("support_size".into(), ch.len().into());
            emit(out, format!("{v}\n"));
        }
        Format::Text => emit(
            out,
            format!(
                "ch{lambda} of {} via {method}\n{ch}\nterms: {}\ndimension: {dimension}\n",
                rs.algebra(),
                ch.len()
            ),
        ),
    }
    Ok(EXIT_OK)
}

fn cmd_polytope_sum(a: &PolytopeSumArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (rs, lambda) = root_system_and_weight(&a.common, true)?;
    let method = Method::from(a.method);
    let report = polytope_sum(&rs, &lambda, method).map_err(computation)?;
    let agrees = if method == Method::Dominance {
        None
    } else {
        Some(report.sum == brion_oracle(&rs, &lambda).map_err(computation)?)
    };
    match a.common.format {
        Format::Json => {
            let mut v = report.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("algebra".into(), rs.algebra().to_string().into());
            obj.insert("lambda".into(), json!(lambda.labels()));
            if let Some(ok) = agrees {
                obj.insert("agrees".into(), ok.into());
            }
            emit(out, format!("{v}\n"));
        }
        Format::Text => {
            let mut text = format!(
                "B{lambda} of {} via {method}\n{}\nterms: {}\n",
                rs.algebra(),
                report.sum,
                report.term_count
            );
            if let Some(ok) = agrees {
                text.push_str(if ok {
                    "AGREES with dominance oracle\n"
                } else {
                    "DIFFERS from dominance oracle\n"
                });
            }
            emit(out, text);
        }
    }
    Ok(if agrees == Some(false) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn cmd_expand(a: &WeightArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (rs, lambda) = root_system_and_weight(a, true)?;
    let exp = polytope_expansion(&rs, &lambda).map_err(computation)?;
    match a.format {
        Format::Json => emit(out, format!("{}\n", exp.to_json())),
        Format::Text => {
            let mut text = format!("ch{lambda} of {} = sum of A[mu] B_mu\n", rs.algebra());
            for (mu, c) in exp.coefficients.iter().rev() {
                text.push_str(&format!("A[{mu}] = {c}\n"));
            }
            emit(out, text);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_apply(a: &ApplyArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (rs, mu) = root_system_and_weight(&a.common, false)?;
    let word = parse_operator_expression(&rs, &a.expr).map_err(|e| Usage::flag("--expr", e))?;
    let result = word
        .apply(&rs, &FormalSum::monomial(mu.clone()))
        .map_err(computation)?;
    match a.common.format {
        Format::Json => {
            let mut v = result.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("expr".into(), word.to_string().into());
            obj.insert("weight".into(), json!(mu.labels()));
            emit(out, format!("{v}\n"));
        }
        Format::Text => emit(
            out,
            format!("{word} e^{mu} =\n{result}\nterms: {}\n", result.len()),
        ),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    if a.max_level < 0 {
        return Err(Usage(
            "invalid value for --max-level: must be nonnegative".into(),
        ));
    }
    let cap = enumeration_cap();
    if a.max_rank == 0 || a.max_rank > cap {
        return Err(Usage(format!(
            "invalid value for --max-rank: must be in 1..={cap} (raise the cap with WEYLPOLY_MAX_RANK)"
        )));
    }
    let sweeps: Vec<Sweep> = match a.sweep {
        SweepArg::Theorem => vec![Sweep::Theorem],
        SweepArg::Lemma => vec![Sweep::Lemma],
        SweepArg::Rank2 => vec![Sweep::Rank2],
        SweepArg::Braid => vec![Sweep::Braid],
        SweepArg::Cones => vec![Sweep::Cones],
        SweepArg::Characters => vec![Sweep::Characters],
        SweepArg::Expansion => vec![Sweep::Expansion],
        SweepArg::All => Sweep::ALL.to_vec(),
    };
    let mut reports: Vec<SweepReport> = Vec::new();
    for sweep in sweeps {
        let algebras = match a.algebra {
            Some(alg) if sweep.supports(alg) => vec![alg],
            Some(alg) if a.sweep != SweepArg::All => {
                return Err(Usage::flag(
                    "--algebra",
                    Error::UnsupportedAlgebra {
                        operation: sweep.name(),
                        algebra: alg,
                    },
                ))
            }
            Some(_) => continue,
            None => sweep.default_algebras(a.max_rank),
        };
        let report = run_sweep(sweep, &algebras, a.max_level, a.seed).map_err(computation)?;
        reports.push(report);
    }
    let all_passed = reports.iter().all(SweepReport::all_passed);
    match a.format {
        Format::Json => {
            let v = json!({
                "seed": a.seed,
                "max_level": a.max_level,
                "reports": reports.iter().map(SweepReport::to_json).collect::<Vec<_>>(),
                "status": if all_passed { "PASS" } else { "FAIL" },
            });
            emit(out, format!("{v}\n"));
        }
        Format::Text => {
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_text());
            }
            text.push_str(if all_passed {
                "ALL PASS\n"
            } else {
                "SOME FAILED\n"
            });
            emit(out, text);
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_FAILURE })
}
