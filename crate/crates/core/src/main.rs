use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use netadmit::bounds::{self, classify_domain, DomainTags};
use netadmit::dirichlet::{self, effective_admittance, evaluate, AdmittanceValue, SolveOutcome};
use netadmit::exhaustion::{
    self, ConvergenceOptions, GraphGenerator, InfiniteNetwork, SequenceRule, Verdict,
};
use netadmit::format::{self, format_complex, parse_complex, EXHAUST_HEADER, SWEEP_HEADER};
use netadmit::{Complex, Error, Network};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Effective admittance of RLC networks at complex frequency λ.
#[derive(Parser)]
#[command(name = "netadmit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate P(λ) and Z(λ) with solver diagnostics.
    Eval(EvalArgs),
    /// Tabulate P and Z along a ray of λ values as CSV.
    Sweep(SweepArgs),
    /// Approximate an infinite network by balls around the source.
    Exhaust(ExhaustArgs),
    /// Network constants, domain membership and admittance bounds at λ.
    Bounds(BoundsArgs),
    /// Check identities, symmetries and bounds at random λ.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Network file.
    network: PathBuf,
    /// Value of λ such as `1+2i`; may be repeated.
    #[arg(short, long = "lambda", required = true, allow_hyphen_values = true)]
    lambdas: Vec<String>,
    /// Print CSV rows in the sweep format instead.
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Clone)]
struct RayArgs {
    /// First ray parameter t.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    /// Last ray parameter t.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    /// Number of evenly spaced points, endpoints included.
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// λ = t · direction; the default walks the imaginary axis.
    #[arg(long, default_value = "i", allow_hyphen_values = true)]
    direction: String,
}

impl RayArgs {
    fn lambdas(&self) -> Result<Vec<Complex>, CliError> {
        let (Some(from), Some(to)) = (self.from, self.to) else {
            return Err(CliError::input("both --from and --to are required"));
        };
        if !(from.is_finite() && to.is_finite()) {
            return Err(CliError::input("ray endpoints must be finite"));
        }
        if self.steps == 0 {
            return Err(CliError::input("--steps must be at least 1"));
        }
        let dir = parse_complex(&self.direction)?;
        if self.steps == 1 {
            return Ok(vec![dir * from]);
        }
        let h = (to - from) / (self.steps - 1) as f64;
        Ok((0..self.steps).map(|k| dir * (from + h * k as f64)).collect())
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Network file.
    network: PathBuf,
    #[command(flatten)]
    ray: RayArgs,
    /// Append the half-plane, Ω and Ω* bound columns.
    #[arg(long)]
    bounds: bool,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Modified ladder with rung inductance and elastance, as `L,D`.
    #[arg(long, value_name = "L,D", conflicts_with_all = ["chain_l", "chain_d", "graph"])]
    ladder: Option<String>,
    /// Chain inductance rule, `const:c` or `geom:base,amplitude,ratio`.
    #[arg(long, value_name = "RULE", requires = "chain_d", conflicts_with = "graph")]
    chain_l: Option<String>,
    /// Chain elastance rule (D = 1/C).
    #[arg(long, value_name = "RULE", requires = "chain_l", conflicts_with = "graph")]
    chain_d: Option<String>,
    /// Finite network file explored ball by ball; its ground may be empty.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

impl FamilyArgs {
    fn build(&self) -> Result<Box<dyn InfiniteNetwork>, CliError> {
        if let Some(spec) = &self.ladder {
            let parts: Vec<f64> = spec
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::input(format!("--ladder expects L,D, got {spec:?}")))?;
            let [l, d] = parts[..] else {
                return Err(CliError::input(format!("--ladder expects L,D, got {spec:?}")));
            };
            return Ok(Box::new(exhaustion::make_ladder(l, d)?));
        }
        if let (Some(l), Some(d)) = (&self.chain_l, &self.chain_d) {
            let l: SequenceRule = l.parse()?;
            let d: SequenceRule = d.parse()?;
            return Ok(Box::new(exhaustion::make_chain(l, d)?));
        }
        if let Some(path) = &self.graph {
            let net = format::parse_network_file_with(&read(path)?, true)?;
            return Ok(Box::new(GraphGenerator::new(net)));
        }
        Err(CliError::input("choose a family: --ladder, --chain-l/--chain-d or --graph"))
    }
}

#[derive(Args)]
struct ExhaustArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Value of λ; may be repeated. Alternatively give a ray.
    #[arg(short, long = "lambda", allow_hyphen_values = true)]
    lambdas: Vec<String>,
    #[command(flatten)]
    ray: RayArgs,
    /// Largest layer index.
    #[arg(long, default_value_t = 200)]
    n_max: usize,
    /// Relative Cauchy tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Consecutive steps the tolerance must hold.
    #[arg(long, default_value_t = 3)]
    window: usize,
    /// Print every P_n instead of one summary row per λ.
    #[arg(long)]
    sequence: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Network file; alternatively describe a family layer.
    network: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Layer of the family to bound.
    #[arg(long, default_value_t = 10)]
    layer: usize,
    /// Value of λ; may be repeated.
    #[arg(short, long = "lambda", required = true, allow_hyphen_values = true)]
    lambdas: Vec<String>,
    /// Use this ε for the ratio bound instead of the certified one.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Network file.
    network: PathBuf,
    /// Number of random λ to sample.
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Seed for the λ sampler.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Half-width of the square λ is drawn from.
    #[arg(long, default_value_t = 3.0)]
    radius: f64,
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::LambdaZero
            | Error::ForbiddenLambda(_)
            | Error::NotInRightHalfplane
            | Error::OutsideOmega
            | Error::OutsideOmegaStar
            | Error::EmptyOmegaStar
            | Error::RequiresPositiveL
            | Error::VerticalEdgeShort
            | Error::MuZero
            | Error::GeneratorExhausted(_) => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Network, CliError> {
    format::parse_network_file(&read(path)?).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn parse_lambdas(texts: &[String]) -> Result<Vec<Complex>, CliError> {
    texts.iter().map(|t| parse_complex(t).map_err(CliError::from)).collect()
}

fn fmt_value(v: &AdmittanceValue) -> String {
    match v {
        AdmittanceValue::Finite(z) => format_complex(*z),
        AdmittanceValue::Infinite => "inf".into(),
        AdmittanceValue::Undefined(reason) => format!("undefined ({reason:?})"),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |x| format!("{x:e}"))
}

fn domain_names(tags: &DomainTags) -> String {
    let names: Vec<&str> = [
        (tags.in_right_halfplane, "right-halfplane"),
        (tags.in_lambda, "lambda"),
        (tags.in_omega, "omega"),
        (tags.in_omega_star, "omega-star"),
        (tags.in_j, "J"),
        (tags.in_j_star, "J-star"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect();
    if names.is_empty() {
        "-".into()
    } else {
        names.join(",")
    }
}

fn cmd_eval(args: &EvalArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let net = load(&args.network)?;
    let lambdas = parse_lambdas(&args.lambdas)?;
    let mut code = 0;
    if args.csv {
        writeln!(out, "{SWEEP_HEADER}")?;
    }
    for lambda in lambdas {
        let ev = evaluate(&net, lambda);
        if matches!(ev.admittance, AdmittanceValue::Undefined(_)) {
            code = EXIT_DOMAIN;
        }
        if args.csv {
            writeln!(out, "{}", format::sweep_row(lambda, &ev.admittance, &[]))?;
            continue;
        }
        writeln!(out, "lambda          {}", format_complex(lambda))?;
        writeln!(out, "status          {}", ev.admittance.status())?;
        writeln!(out, "P               {}", fmt_value(&ev.admittance))?;
        writeln!(out, "Z               {}", fmt_value(&ev.impedance))?;
        writeln!(out, "domains         {}", domain_names(&classify_domain(&net, lambda)))?;
        if let Some(sol) = &ev.solution {
            let d = &sol.diagnostics;
            writeln!(out, "solve           {}", sol.outcome.label())?;
            writeln!(out, "dimension       {}", d.dimension)?;
            writeln!(out, "rank            {}", d.rank)?;
            writeln!(out, "log10_abs_det   {}", d.log10_abs_det)?;
            writeln!(out, "pivot_ratio     {:e}", d.pivot_ratio)?;
            if let Some(v) = sol.outcome.voltage() {
                for (x, value) in v.as_slice().iter().enumerate() {
                    writeln!(out, "v[{}]  {}", net.label(x), format_complex(*value))?;
                }
            }
            if let SolveOutcome::ConsistentDeficient { .. } = sol.outcome {
                writeln!(out, "independence    {}", fmt_opt(ev.independence_gap))?;
            }
        }
        writeln!(out, "flux_residual   {}", fmt_opt(ev.flux_residual))?;
        writeln!(out, "power_residual  {}", fmt_opt(ev.power_residual))?;
        writeln!(out)?;
    }
    Ok(code)
}

fn cmd_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let net = load(&args.network)?;
    let lambdas = args.ray.lambdas()?;
    let rows: Vec<String> = lambdas
        .par_iter()
        .map(|&lambda| {
            let p = effective_admittance(&net, lambda);
            let extra = if args.bounds {
                vec![
                    bounds::halfplane_bound(&net, lambda).ok(),
                    bounds::large_im_bound(&net, lambda).ok(),
                    bounds::small_im_bound(&net, lambda).ok(),
                ]
            } else {
                Vec::new()
            };
            format::sweep_row(lambda, &p, &extra)
        })
        .collect();
    let mut text = String::from(SWEEP_HEADER);
    if args.bounds {
        text.push_str(",bound_halfplane,bound_omega,bound_omega_star");
    }
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    match &args.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_exhaust(args: &ExhaustArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let family = args.family.build()?;
    let lambdas = if args.lambdas.is_empty() {
        args.ray.lambdas()?
    } else {
        parse_lambdas(&args.lambdas)?
    };
    let options = ConvergenceOptions {
        tol: args.tol,
        window: args.window,
        n_max: args.n_max,
    };
    options.validate()?;
    if lambdas.contains(&Complex::new(0.0, 0.0)) {
        return Err(Error::LambdaZero.into());
    }
    let family = family.as_ref();
    let reports = lambdas
        .par_iter()
        .map(|&lambda| exhaustion::limit_admittance(family, lambda, &options))
        .collect::<Result<Vec<_>, _>>()?;

    if args.sequence {
        writeln!(out, "lambda_re,lambda_im,n,status,P_re,P_im,oracle_status,oracle_re,oracle_im")?;
        for r in &reports {
            for (k, value) in r.values.iter().enumerate() {
                let n = k + 1;
                let p = value.finite();
                let oracle = family.partial_oracle(n, r.lambda);
                let o = oracle.and_then(|o| o.finite());
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.lambda.re,
                    r.lambda.im,
                    n,
                    value.status(),
                    p.map_or(String::new(), |p| p.re.to_string()),
                    p.map_or(String::new(), |p| p.im.to_string()),
                    oracle.map_or("", |o| o.status()),
                    o.map_or(String::new(), |o| o.re.to_string()),
                    o.map_or(String::new(), |o| o.im.to_string()),
                )?;
            }
        }
        return Ok(0);
    }

    writeln!(out, "{EXHAUST_HEADER}")?;
    for r in &reports {
        let n = match r.verdict {
            Verdict::Converged { at_n, .. } => at_n,
            Verdict::NotConverged(_) => r.values.len(),
        };
        let oracle = family.limit_oracle(r.lambda);
        writeln!(
            out,
            "{}",
            format::exhaust_row(r.lambda, r.verdict.label(), r.verdict.limit(), n, oracle.as_ref())
        )?;
    }
    Ok(0)
}

fn cmd_bounds(args: &BoundsArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let net = match &args.network {
        Some(path) => load(path)?,
        None => exhaustion::ball(args.family.build()?.as_ref(), args.layer)?.network,
    };
    let lambdas = parse_lambdas(&args.lambdas)?;
    let k = bounds::network_constants(&net);
    writeln!(out, "S_D             {}", k.s_d)?;
    writeln!(out, "S_D*            {}", k.s_d_star)?;
    writeln!(out, "S_R             {}", k.s_r)?;
    writeln!(out, "C               {}", k.c)?;
    writeln!(out, "C'              {}", k.c_prime)?;
    writeln!(out, "S               {}", k.s)?;
    let mut code = 0;
    for lambda in lambdas {
        writeln!(out)?;
        let p = effective_admittance(&net, lambda);
        writeln!(out, "lambda          {}", format_complex(lambda))?;
        writeln!(out, "P               {}", fmt_value(&p))?;
        if let Some(p) = p.finite() {
            writeln!(out, "|P|             {}", p.norm())?;
        }
        writeln!(out, "domains         {}", domain_names(&classify_domain(&net, lambda)))?;
        if let AdmittanceValue::Undefined(_) = p {
            code = EXIT_DOMAIN;
            continue;
        }
        let show = |name: &str, r: Result<f64, Error>, out: &mut dyn Write| -> io::Result<()> {
            match r {
                Ok(v) => writeln!(out, "{name:<16}{v}"),
                Err(e) => writeln!(out, "{name:<16}n/a ({e})"),
            }
        };
        let eps = match args.epsilon {
            Some(e) => Ok(Some(e)),
            None => bounds::certified_epsilon(&net, lambda),
        };
        let ratio = match eps {
            Ok(Some(e)) => bounds::epsilon_bound(&net, lambda, e),
            Ok(None) => Err(Error::NonpositiveEpsilon(0.0)),
            Err(e) => Err(e),
        };
        show("ratio", ratio, out)?;
        match bounds::halfplane_bounds(&net, lambda) {
            Ok(h) => {
                show("halfplane", Ok(h.best()), out)?;
                show("  via_rho", Ok(h.via_admittances), out)?;
                show("  via_C", Ok(h.via_c), out)?;
                show("  via_C'", h.via_c_prime.ok_or(Error::RequiresPositiveL), out)?;
            }
            Err(e) => show("halfplane", Err(e), out)?,
        }
        show("omega", bounds::large_im_bound(&net, lambda), out)?;
        show("omega_star", bounds::small_im_bound(&net, lambda), out)?;
    }
    Ok(code)
}

struct Tally {
    checked: usize,
    failed: usize,
    worst: f64,
}

impl Default for Tally {
    fn default() -> Self {
        Tally {
            checked: 0,
            failed: 0,
            worst: f64::NEG_INFINITY,
        }
    }
}

impl Tally {
    fn record(&mut self, value: f64, tolerance: f64) {
        self.checked += 1;
        self.worst = self.worst.max(value);
        if !(value <= tolerance) {
            self.failed += 1;
        }
    }
}

fn relative(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let net = load(&args.network)?;
    if !(args.radius.is_finite() && args.radius > 0.0) {
        return Err(CliError::input("--radius must be positive"));
    }
    let k = bounds::network_constants(&net);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let n = net.vertex_count();
    let (mut green, mut power, mut flux, mut conj, mut odd, mut bound) =
        (Tally::default(), Tally::default(), Tally::default(), Tally::default(), Tally::default(), Tally::default());
    let mut skipped = 0;
    for _ in 0..args.trials {
        let lambda = Complex::new(rng.gen_range(-args.radius..args.radius), rng.gen_range(-args.radius..args.radius));
        let ev = evaluate(&net, lambda);
        let AdmittanceValue::Finite(p) = ev.admittance else {
            skipped += 1;
            continue;
        };
        let mut random_fn = || -> Vec<Complex> {
            (0..n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
        };
        let (f, g) = (random_fn(), random_fn());
        green.record(dirichlet::greens_residual_relative(&net, &f, &g, lambda)?, 1e-10);
        if let Some(r) = ev.power_residual {
            power.record(r, 1e-9);
        }
        if let Some(r) = ev.flux_residual {
            flux.record(r, 1e-9);
        }
        if let Some(q) = effective_admittance(&net, lambda.conj()).finite() {
            conj.record(relative(q, p.conj()), 1e-12);
        }
        if k.all_r_zero {
            if let Some(q) = effective_admittance(&net, -lambda).finite() {
                odd.record(relative(q, -p), 1e-12);
            }
        }
        for b in [
            bounds::halfplane_bound(&net, lambda),
            bounds::large_im_bound(&net, lambda),
            bounds::small_im_bound(&net, lambda),
        ]
        .into_iter()
        .flatten()
        {
            // Margin by which |P| exceeds the bound, relative to the bound.
            bound.record((p.norm() - b) / b.max(1.0), 1e-9);
        }
    }
    writeln!(out, "seed {}  trials {}  skipped {}", args.seed, args.trials, skipped)?;
    let mut code = 0;
    for (name, t, tol) in [
        ("greens", &green, 1e-10),
        ("power", &power, 1e-9),
        ("flux", &flux, 1e-9),
        ("conjugation", &conj, 1e-12),
        ("odd-symmetry", &odd, 1e-12),
        ("bounds", &bound, 1e-9),
    ] {
        let verdict = match (t.checked, t.failed) {
            (0, _) => "SKIP",
            (_, 0) => "PASS",
            _ => "FAIL",
        };
        if t.failed > 0 {
            code = EXIT_VERIFY;
        }
        writeln!(
            out,
            "{verdict} {name:<13} checked {:>5}  failed {:>5}  worst {}  tol {tol:e}",
            t.checked,
            t.failed,
            fmt_opt((t.checked > 0).then_some(t.worst))
        )?;
    }
    Ok(code)
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &mut out),
        Command::Sweep(a) => cmd_sweep(a, &mut out),
        Command::Exhaust(a) => cmd_exhaust(a, &mut out),
        Command::Bounds(a) => cmd_bounds(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
    }?;
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
