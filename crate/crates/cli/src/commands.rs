use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use qumbral::qbernoulli::{expand_in_bernoulli, expand_in_higher_bernoulli, expand_in_qpoch_basis};
use qumbral::qcombinatorics::{qbinomial, qfactorial, qint, qpochhammer_x_minus_1};
use qumbral::verify::{self, Suite, VerifyOptions};
use qumbral::{BernoulliCache, QRat, XPoly};

use crate::render::{self, TableValue};
use crate::{Cli, Command, EvalArgs, ExpandArgs, TableArgs, TableKind, VerifyArgs, DEGREE_CAP};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

impl From<qumbral::Error> for CliError {
    fn from(e: qumbral::Error) -> Self {
        match e {
            qumbral::Error::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

pub struct Output {
    pub stdout: String,
    /// False only when a verification suite reported a failing case.
    pub verified: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            verified: true,
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Table(args) => table(cli, args),
        Command::Expand(args) => expand(cli, args),
        Command::Verify(args) => run_verify(cli, args),
        Command::Eval(args) => eval(cli, args),
    }
}

fn check_cap(what: &str, value: usize, force: bool) -> Result<(), CliError> {
    if value > DEGREE_CAP && !force {
        return Err(CliError::Compute(format!(
            "{what} = {value} exceeds the degree cap {DEGREE_CAP}; pass --force to allow it"
        )));
    }
    Ok(())
}

fn positive_order(r: Option<usize>, what: &str) -> Result<usize, CliError> {
    match r {
        Some(r) if r >= 1 => Ok(r),
        Some(_) => Err(CliError::Usage(format!("{what}: order must be at least 1"))),
        None => Err(CliError::Usage(format!("{what} needs --r"))),
    }
}

fn table(cli: &Cli, args: &TableArgs) -> Result<Output, CliError> {
    check_cap("--n-max", args.n_max, cli.force)?;
    let cache = BernoulliCache::new();
    let r = match args.kind {
        TableKind::HigherNumber | TableKind::HigherPoly => {
            Some(positive_order(args.r, "higher-order tables")?)
        }
        _ => None,
    };
    if let Some(r) = r {
        check_cap("--r", r, cli.force)?;
    }
    cache.numbers(args.n_max);
    let rows: Vec<(usize, TableValue)> = (0..=args.n_max)
        .map(|n| {
            let value = match (args.kind, r) {
                (TableKind::Number, _) => TableValue::Number(cache.number(n)),
                (TableKind::Poly, _) => TableValue::Poly(cache.poly(n)),
                (TableKind::HigherNumber, Some(r)) => TableValue::Number(cache.higher_number(n, r)),
                (TableKind::HigherPoly, Some(r)) => TableValue::Poly(cache.higher_poly(n, r)),
                _ => unreachable!("order checked above"),
            };
            (n, value)
        })
        .collect();
    Ok(Output::ok(render::table(cli.format, args.kind, r, &rows)))
}

fn parse_usize(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected a nonnegative integer, got `{s}`")))
}

fn named_poly(cache: &BernoulliCache, name: &str, force: bool) -> Result<XPoly, CliError> {
    let parts: Vec<&str> = name.split(':').collect();
    let bad = || {
        CliError::Usage(format!(
            "unknown polynomial `{name}`; expected x^N, bernoulli:N, higher:N:R or qpoch:N"
        ))
    };
    let poly = match parts.as_slice() {
        [p] => {
            let n = parse_usize(p.strip_prefix("x^").ok_or_else(bad)?, "x^N")?;
            check_cap("N", n, force)?;
            XPoly::x_pow(n)
        }
        ["bernoulli", n] => {
            let n = parse_usize(n, "bernoulli:N")?;
            check_cap("N", n, force)?;
            cache.poly(n)
        }
        ["higher", n, r] => {
            let n = parse_usize(n, "higher:N:R")?;
            let r = positive_order(Some(parse_usize(r, "higher:N:R")?), "higher:N:R")?;
            check_cap("N", n, force)?;
            check_cap("R", r, force)?;
            cache.higher_poly(n, r)
        }
        ["qpoch", n] => {
            let n = parse_usize(n, "qpoch:N")?;
            check_cap("N", n, force)?;
            qpochhammer_x_minus_1(n)
        }
        _ => return Err(bad()),
    };
    Ok(poly)
}

fn expand(cli: &Cli, args: &ExpandArgs) -> Result<Output, CliError> {
    let cache = BernoulliCache::new();
    let input = if let Some(lit) = &args.literal {
        XPoly::from_literal(lit)?
    } else if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        XPoly::from_json_str(&text)?
    } else if let Some(name) = &args.named {
        named_poly(&cache, name, cli.force)?
    } else {
        return Err(CliError::Usage("no input polynomial".to_string()));
    };
    check_cap("degree", input.degree().unwrap_or(0), cli.force)?;
    let result = match args.basis.split(':').collect::<Vec<_>>().as_slice() {
        ["bernoulli"] => expand_in_bernoulli(&input),
        ["qpoch"] => expand_in_qpoch_basis(&input),
        ["higher", r] => {
            let r = positive_order(Some(parse_usize(r, "higher:R")?), "higher:R")?;
            check_cap("R", r, cli.force)?;
            expand_in_higher_bernoulli(&input, r)
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown basis `{}`; expected bernoulli, higher:R or qpoch",
                args.basis
            )))
        }
    };
    let reconstruction_ok = result.reconstruct(&cache) == input;
    Ok(Output::ok(render::expansion(
        cli.format,
        &input,
        &result,
        reconstruction_ok,
    )))
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<Output, CliError> {
    let suite = Suite::from_str(&args.suite).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(n) = args.n_max {
        check_cap("--n-max", n, cli.force)?;
    }
    if let Some(r) = args.r_max {
        check_cap("--r-max", r, cli.force)?;
    }
    let cache = BernoulliCache::new();
    if let Some(n) = args.perturb_bernoulli {
        cache.override_number(n, &cache.number(n) + &QRat::one());
    }
    let opts = VerifyOptions {
        n_max: args.n_max,
        r_max: args.r_max,
        seed: args.seed,
    };
    let start = Instant::now();
    let reports = verify::run(suite, &opts, &cache);
    for report in &reports {
        eprintln!(
            "{}: {:.3}s",
            report.identity,
            report.elapsed.as_secs_f64()
        );
    }
    eprintln!("total: {:.3}s", start.elapsed().as_secs_f64());
    let verified = reports.iter().all(|r| r.pass());
    Ok(Output {
        stdout: render::verify(cli.format, args.seed, &reports),
        verified,
    })
}

pub fn parse_rational(s: &str, what: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim())
        .map_err(|_| CliError::Usage(format!("{what}: expected a rational `p/r`, got `{s}`")))
}

enum Quantity {
    Scalar(QRat),
    Poly(XPoly),
}

fn quantity(cache: &BernoulliCache, name: &str, force: bool) -> Result<Quantity, CliError> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<usize, CliError> {
        let v = parse_usize(parts[i], name)?;
        check_cap(name, v, force)?;
        Ok(v)
    };
    let order = |i: usize| positive_order(Some(num(i)?), name);
    Ok(match (parts[0], parts.len()) {
        ("number", 2) => Quantity::Scalar(cache.number(num(1)?)),
        ("higher-number", 3) => Quantity::Scalar(cache.higher_number(num(1)?, order(2)?)),
        ("poly", 2) => Quantity::Poly(cache.poly(num(1)?)),
        ("higher-poly", 3) => Quantity::Poly(cache.higher_poly(num(1)?, order(2)?)),
        ("qint", 2) => Quantity::Scalar(qint(num(1)?)),
        ("qfactorial", 2) => Quantity::Scalar(qfactorial(num(1)?)),
        ("qbinomial", 3) => Quantity::Scalar(qbinomial(num(1)?, num(2)? as i64)),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown quantity `{name}`; expected number:N, higher-number:N:R, poly:N, \
                 higher-poly:N:R, qint:N, qfactorial:N or qbinomial:N:K"
            )))
        }
    })
}

fn eval(cli: &Cli, args: &EvalArgs) -> Result<Output, CliError> {
    let q0 = match (&args.q, args.limit_q1) {
        (_, true) => BigRational::one(),
        (Some(q), false) => parse_rational(q, "--q")?,
        (None, false) => return Err(CliError::Usage("eval needs --q or --limit-q1".to_string())),
    };
    let x0 = args.x.as_deref().map(|x| parse_rational(x, "--x")).transpose()?;
    let cache = BernoulliCache::new();
    let value = match (quantity(&cache, &args.quantity, cli.force)?, &x0) {
        (Quantity::Scalar(v), None) => v.eval(&q0)?,
        (Quantity::Poly(p), Some(x)) => p.eval_at(&q0, x)?,
        (Quantity::Scalar(_), Some(_)) => {
            return Err(CliError::Usage(format!("{} takes no --x", args.quantity)))
        }
        (Quantity::Poly(_), None) => {
            return Err(CliError::Usage(format!("{} needs --x", args.quantity)))
        }
    };
    Ok(Output::ok(render::eval(
        cli.format,
        &args.quantity,
        &q0,
        x0.as_ref(),
        &value,
    )))
}
