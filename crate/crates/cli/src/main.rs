mod algebra;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;
use weil_core::expr::parse_polynomials;
use weil_core::weil::weil_tensor;
use weil_core::{
    eval_expr, lift_weil, parse_expr, weil_test, Error, Ideal, Scalar, Symbolic, WeilElement,
    WeilSettings, WeilTest,
};

use algebra::{split_names, AlgebraSpec};
use error::CliError;
use render::Coefficient;

#[derive(Parser)]
#[command(
    name = "weil",
    version,
    about = "Weil algebras and higher-order automatic differentiation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Mode {
    #[default]
    Float,
    Rational,
    Symbolic,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether R[vars]/<polys> is a Weil algebra and print its settings
    Check {
        /// Comma-separated generators, e.g. "x^2 - y^3, y^4"
        ideal: String,
        /// Comma-separated variable names, in order
        #[arg(long)]
        vars: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate an expression in a Weil algebra; d0, d1, ... are its generators
    Eval {
        expr: String,
        /// Algebra: D1, DOrder m, ideal(<polys>; vars=<names>), or A * B
        #[arg(
            long,
            required_unless_present = "seed_settings",
            conflicts_with = "seed_settings"
        )]
        algebra: Option<String>,
        /// Read precomputed settings JSON instead of building --algebra
        #[arg(long, value_name = "FILE")]
        seed_settings: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        /// Bind a free name to a constant, e.g. --bind x=pi/6
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        binds: Vec<String>,
        /// Comma-separated names of free symbols (symbolic mode)
        #[arg(long)]
        vars: Option<String>,
        /// Hide coefficients whose magnitude is below this threshold
        #[arg(long, default_value_t = 0.0)]
        zero_tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the settings of the tensor product of two algebras
    Tensor {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn generator_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("d{i}")).collect()
}

fn print_settings(s: &WeilSettings, names: &[String], format: Format) {
    match format {
        Format::Text => print!("{}", render::settings_text(s, names)),
        Format::Json => println!("{}", s.to_json_string()),
    }
}

/// Returns the exit status: 0 for a Weil algebra, 1 otherwise.
fn check(ideal: &str, vars: &str, format: Format) -> Result<u8, CliError> {
    let names = split_names(vars);
    if names.is_empty() {
        return Err(CliError::Usage("--vars needs at least one name".into()));
    }
    let ideal = Ideal::new(names.len(), parse_polynomials(ideal, &names)?)?;
    match weil_test(&ideal)? {
        WeilTest::Weil(s) => {
            print_settings(&s, &names, format);
            Ok(0)
        }
        WeilTest::No(reason) => {
            match format {
                Format::Text => println!("No: {reason}"),
                Format::Json => {
                    println!("{}", json!({ "weil": false, "reason": reason.to_string() }))
                }
            }
            Ok(1)
        }
    }
}

fn tensor(left: &str, right: &str, format: Format) -> Result<(), CliError> {
    let a = AlgebraSpec::parse(left)?.build()?;
    let b = AlgebraSpec::parse(right)?.build()?;
    let t = weil_tensor(&a, &b)?;
    print_settings(&t, &generator_names(t.var_count()), format);
    Ok(())
}

struct EvalRequest<'a> {
    settings: Arc<WeilSettings>,
    expr: &'a str,
    binds: Vec<(String, String)>,
    symbols: Vec<String>,
    discover_symbols: bool,
    zero_tol: f64,
    format: Format,
}

fn parse_binding(b: &str) -> Result<(String, String), CliError> {
    let (name, value) = b
        .split_once('=')
        .ok_or_else(|| CliError::Binding(b.into()))?;
    let name = name.trim();
    let valid = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid || value.trim().is_empty() {
        return Err(CliError::Binding(b.into()));
    }
    Ok((name.to_string(), value.trim().to_string()))
}

impl EvalRequest<'_> {
    fn run<S: Scalar + Coefficient>(mut self, symbol: impl Fn(usize) -> S) -> Result<(), CliError> {
        let w = self.settings.clone();
        let gens = generator_names(w.var_count());
        let mut names = gens.clone();
        for (b, _) in &self.binds {
            if names.contains(b) {
                return Err(CliError::Usage(format!(
                    "`{b}` is bound twice or names a generator"
                )));
            }
            names.push(b.clone());
        }
        for s in &self.symbols {
            if names.contains(s) {
                return Err(CliError::Usage(format!(
                    "symbol `{s}` clashes with another name"
                )));
            }
        }
        let expr = loop {
            let mut all = names.clone();
            all.extend(self.symbols.iter().cloned());
            match parse_expr(self.expr, &all) {
                Ok(e) => break e,
                Err(Error::UnknownIdentifier { name, .. }) if self.discover_symbols => {
                    self.symbols.push(name)
                }
                Err(e) => return Err(e.into()),
            }
        };

        let mut args: Vec<WeilElement<S>> = (0..w.var_count())
            .map(|i| WeilElement::generator(&w, i))
            .collect::<Result<_, _>>()?;
        for (_, value) in &self.binds {
            let e = parse_expr::<&str>(value, &[])?;
            let v: S = eval_expr(&e, &[], &())?;
            args.push(WeilElement::inject(v, &w));
        }
        for k in 0..self.symbols.len() {
            args.push(WeilElement::inject(symbol(k), &w));
        }
        let result = lift_weil(&w, &expr, &args)?;
        match self.format {
            Format::Text => print!(
                "{}",
                render::element_text(
                    w.basis(),
                    result.coeffs(),
                    &gens,
                    &self.symbols,
                    self.zero_tol
                )
            ),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&render::element_json(
                    w.basis(),
                    result.coeffs(),
                    &gens,
                    &self.symbols,
                    self.zero_tol
                ))
                .expect("JSON value serializes")
            ),
        }
        Ok(())
    }
}

fn load_settings(algebra: Option<&str>, seed: Option<&PathBuf>) -> Result<WeilSettings, CliError> {
    match (algebra, seed) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(WeilSettings::from_json_str(&text)?)
        }
        (Some(spec), None) => AlgebraSpec::parse(spec)?.build(),
        (None, None) => Err(CliError::Usage(
            "one of --algebra or --seed-settings is required".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Check {
            ideal,
            vars,
            format,
        } => check(&ideal, &vars, format),
        Command::Tensor {
            left,
            right,
            format,
        } => tensor(&left, &right, format).map(|()| 0),
        Command::Eval {
            expr,
            algebra,
            seed_settings,
            mode,
            binds,
            vars,
            zero_tol,
            format,
        } => {
            if zero_tol.is_nan() || zero_tol < 0.0 {
                return Err(CliError::Usage("--zero-tol must be nonnegative".into()));
            }
            if vars.is_some() && !matches!(mode, Mode::Symbolic) {
                return Err(CliError::Usage(
                    "--vars declares symbols and needs --mode symbolic".into(),
                ));
            }
            let settings = Arc::new(load_settings(algebra.as_deref(), seed_settings.as_ref())?);
            let req = EvalRequest {
                settings,
                expr: &expr,
                binds: binds
                    .iter()
                    .map(|b| parse_binding(b))
                    .collect::<Result<_, _>>()?,
                symbols: vars.as_deref().map(split_names).unwrap_or_default(),
                discover_symbols: matches!(mode, Mode::Symbolic),
                zero_tol,
                format,
            };
            match mode {
                Mode::Float => req.run::<f64>(|_| unreachable!("no symbols in float mode")),
                Mode::Rational => {
                    req.run::<BigRational>(|_| unreachable!("no symbols in rational mode"))
                }
                Mode::Symbolic => req.run(Symbolic::symbol),
            }
            .map(|()| 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
