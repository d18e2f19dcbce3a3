//! Command-line front end: exact Hecke/Plancherel computations, the
//! GL(2) orbital table, spherical-function quadrature, Weyl-term
//! integrals, ensemble density pairings, and recursion checks.
//!
//! Output is a single structured document on stdout (JSON by default,
//! CSV as a flat projection). Exit codes: 0 success, 2 validation error,
//! 3 budget or tolerance refusal.

mod cache;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use output::{CommandResult, OutputValue, RationalJson, RouteJson, USqrtJson};

use unram::ensembles::{density_pairing, density_pairing_fourier, BandLimitedTestFn, Ensemble};
use unram::hecke::{convolve, degree, satake, HeckeElement};
use unram::orbital::{gl2_orbital, Gl2OrbitalInput, SplittingCase};
use unram::plancherel::{
    kato_moment_from_kf, kl_inputs, macdonald_moment, moment_via_hecke, recursion_check,
    QuadratureGrid,
};
use unram::spherical::{spherical_phi, weyl_main_term, QuadratureSpec, SpectralParam};
use unram::symfunc::{schur_expand, DominantWeight};
use unram::archgeo::GroupMatrix;

#[derive(Parser)]
#[command(name = "unram", version, about = "Unramified Hecke algebra and Plancherel toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Kostka-Foulkes cache file (loaded if present, updated on exit).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads for internal parallelism (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Numeric tolerance for quadrature routes.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    /// Include wall-clock timing in the output (off keeps runs
    /// byte-identical).
    #[arg(long, global = true, default_value_t = false)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier-coefficient averages gamma(m_1, ..., m_{n-1}).
    Gamma(GammaArgs),
    /// Plancherel moment of a Schur polynomial, by one or more routes.
    Moment(MomentArgs),
    /// Satake transform of a double-coset basis element.
    Satake(XiArgs),
    /// Convolution of two basis elements.
    Convolve(ConvolveArgs),
    /// Degree (coset count) of a basis element.
    Degree(XiArgs),
    /// The explicit GL(2) orbital-integral table.
    OrbitalGl2(OrbitalArgs),
    /// Elementary spherical function by quadrature over K.
    Spherical(SphericalArgs),
    /// The Weyl main-term integral and its local growth exponent.
    WeylTerm(WeylArgs),
    /// Ensemble density pairings, direct and Fourier-side.
    Density(DensityArgs),
    /// Both sides of the degree/gamma recursion identity.
    RecursionCheck(RecursionArgs),
}

#[derive(Args)]
struct GammaArgs {
    /// Rank n of the group GL(n).
    #[arg(long)]
    n: usize,
    /// Restrict to powers of this prime (validated); optional.
    #[arg(long)]
    prime: Option<u64>,
    /// Comma-separated positive integers m_1, ..., m_{n-1}.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
}

#[derive(Args)]
struct MomentArgs {
    /// Dominant weight nu, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Vec<i64>,
    #[arg(long)]
    prime: u64,
    /// Routes to run: any of kato, hecke, quad.
    #[arg(long, value_delimiter = ',', default_value = "kato,hecke")]
    routes: Vec<String>,
}

#[derive(Args)]
struct XiArgs {
    /// Dominant weight xi, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Vec<i64>,
    #[arg(long)]
    prime: u64,
}

#[derive(Args)]
struct ConvolveArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<i64>,
    #[arg(long)]
    prime: u64,
}

#[derive(Args)]
struct OrbitalArgs {
    /// split | unramified | ramified
    #[arg(long)]
    case: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    prime: u64,
    /// p-adic valuation of the Weyl discriminant.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    disc_val: i64,
}

#[derive(Args)]
struct SphericalArgs {
    /// Spectral parameter coordinates (must sum to 0), comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<f64>,
    /// Row-major n^2 matrix entries of g.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    g: Vec<f64>,
    /// Nodes per angle for the product-angle quadrature.
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// External lattice-volume configuration constant.
    #[arg(long, default_value_t = 1.0)]
    volume_factor: f64,
}

#[derive(Args)]
struct DensityArgs {
    /// U | Sp | SOeven | SOodd
    #[arg(long)]
    ensemble: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Fejer support radius sigma (one per test function).
    #[arg(long, value_delimiter = ',', default_value = "1.0")]
    sigma: Vec<f64>,
}

#[derive(Args)]
struct RecursionArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    #[arg(long)]
    prime: u64,
}

/// Exit code discipline: validation errors 2, budget/tolerance refusals 3.
enum CliError {
    Validation(String),
    Refusal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Refusal(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) => m,
            CliError::Refusal(m) => m,
        }
    }
}

fn dominant(v: &[i64]) -> Result<DominantWeight, CliError> {
    DominantWeight::new(v.to_vec())
        .map_err(|e| CliError::Validation(format!("weight must be weakly decreasing: {e}")))
}

fn rational(r: &num::rational::BigRational) -> OutputValue {
    OutputValue::Exact(RationalJson::from_rational(r))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let start = Instant::now();
    let mut kf_cache = match cli.cache.as_ref() {
        Some(path) if path.exists() => match cache::KfCache::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        },
        _ => cache::KfCache::empty(),
    };
    let result = run(&cli, &mut kf_cache);
    match result {
        Ok(mut doc) => {
            if cli.timing {
                doc.timing_ms = Some(start.elapsed().as_millis());
            }
            match cli.format.as_str() {
                "csv" => print!("{}", doc.to_csv()),
                _ => println!("{}", doc.to_json()),
            }
            if let Some(path) = cli.cache.as_ref() {
                if kf_cache.dirty() {
                    if let Err(e) = kf_cache.save(path) {
                        eprintln!("warning: cache not saved: {e}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            // machine-readable refusal/validation report on stderr
            eprintln!(
                "{}",
                serde_json::json!({
                    "error": e.message(),
                    "exit_code": e.code(),
                })
            );
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli, kf_cache: &mut cache::KfCache) -> Result<CommandResult, CliError> {
    match &cli.command {
        Command::Gamma(args) => cmd_gamma(args, kf_cache),
        Command::Moment(args) => cmd_moment(args, kf_cache, cli.tolerance),
        Command::Satake(args) => cmd_satake(args),
        Command::Convolve(args) => cmd_convolve(args),
        Command::Degree(args) => cmd_degree(args),
        Command::OrbitalGl2(args) => cmd_orbital(args),
        Command::Spherical(args) => cmd_spherical(args, cli.tolerance),
        Command::WeylTerm(args) => cmd_weyl(args),
        Command::Density(args) => cmd_density(args, cli.tolerance),
        Command::RecursionCheck(args) => cmd_recursion(args),
    }
}

/// Kato moment through the cache: the Kostka-Foulkes polynomial is looked
/// up (or computed and recorded), everything else is assembled exactly.
fn cached_kato_moment(
    nu: &DominantWeight,
    p: u64,
    kf_cache: &mut cache::KfCache,
) -> num::rational::BigRational {
    use num::traits::Zero;
    match kl_inputs(nu) {
        None => num::rational::BigRational::zero(),
        Some((lambda, mu0)) => {
            let kf = kf_cache.kostka_foulkes(&lambda, &mu0);
            kato_moment_from_kf(nu, p, &kf)
        }
    }
}

fn cmd_gamma(args: &GammaArgs, kf_cache: &mut cache::KfCache) -> Result<CommandResult, CliError> {
    if args.m.len() + 1 != args.n || args.m.iter().any(|&m| m == 0) {
        return Err(CliError::Validation(format!(
            "gamma needs n-1 = {} positive entries, got {:?}",
            args.n - 1,
            args.m
        )));
    }
    if let Some(p) = args.prime {
        for &m in &args.m {
            let mut x = m;
            while x % p == 0 {
                x /= p;
            }
            if x != 1 {
                return Err(CliError::Validation(format!(
                    "{m} is not a power of the declared prime {p}"
                )));
            }
        }
    }
    // multiplicative assembly, prime by prime, through the cache
    use num::traits::One;
    let mut value = num::rational::BigRational::one();
    let mut primes = std::collections::BTreeSet::new();
    for &m in &args.m {
        let mut x = m;
        let mut d = 2u64;
        while d * d <= x {
            if x % d == 0 {
                primes.insert(d);
                while x % d == 0 {
                    x /= d;
                }
            }
            d += 1;
        }
        if x > 1 {
            primes.insert(x);
        }
    }
    for p in primes {
        let exps: Vec<i64> = args
            .m
            .iter()
            .map(|&m| {
                let mut x = m;
                let mut e = 0i64;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                e
            })
            .collect();
        let mut nu = vec![0i64; args.n];
        let mut acc = 0i64;
        for (j, &a) in exps.iter().enumerate() {
            acc += a;
            nu[args.n - 2 - j] = acc;
        }
        let w = DominantWeight::new(nu).expect("partial sums are decreasing");
        value *= cached_kato_moment(&w, p, kf_cache);
    }
    let mut doc = CommandResult::new("gamma");
    doc.input("n", args.n);
    doc.input(
        "m",
        args.m
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    if let Some(p) = args.prime {
        doc.input("prime", p);
    }
    doc.output("gamma", rational(&value));
    Ok(doc)
}

fn cmd_moment(
    args: &MomentArgs,
    kf_cache: &mut cache::KfCache,
    tolerance: f64,
) -> Result<CommandResult, CliError> {
    let nu = dominant(&args.nu)?;
    let n = nu.rank();
    if n < 2 {
        return Err(CliError::Validation("rank must be at least 2".into()));
    }
    let exact = cached_kato_moment(&nu, args.prime, kf_cache);
    let mut doc = CommandResult::new("moment");
    doc.input("nu", &nu);
    doc.input("prime", args.prime);
    doc.input("routes", args.routes.join(","));
    let mut agreement = true;
    for route in &args.routes {
        match route.as_str() {
            "kato" => {
                doc.routes.push(RouteJson {
                    route: "kato".into(),
                    value: rational(&exact),
                });
            }
            "hecke" => {
                let phi = schur_expand(&nu, n)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                let v = moment_via_hecke(&phi, args.prime)
                    .map_err(|e| CliError::Refusal(e.to_string()))?;
                if v != exact {
                    agreement = false;
                }
                doc.routes.push(RouteJson {
                    route: "hecke".into(),
                    value: rational(&v),
                });
            }
            "quad" => {
                let phi = schur_expand(&nu, n)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                let r = macdonald_moment(&phi, args.prime, &QuadratureGrid::default())
                    .map_err(|e| CliError::Refusal(e.to_string()))?;
                let exact_f = unram::symfunc::rational_to_f64(&exact);
                if (r.value.re - exact_f).abs() > tolerance {
                    agreement = false;
                }
                doc.routes.push(RouteJson {
                    route: "quad".into(),
                    value: OutputValue::Numeric {
                        value: r.value.re,
                        tolerance,
                    },
                });
            }
            other => {
                return Err(CliError::Validation(format!(
                    "unknown route {other}; use kato, hecke, quad"
                )))
            }
        }
    }
    doc.output("moment", rational(&exact));
    doc.agreement = Some(agreement);
    Ok(doc)
}

fn cmd_satake(args: &XiArgs) -> Result<CommandResult, CliError> {
    let xi = dominant(&args.xi)?;
    let h = HeckeElement::basis(args.prime, &xi);
    let s = satake(&h);
    let mut doc = CommandResult::new("satake");
    doc.input("xi", &xi);
    doc.input("prime", args.prime);
    for (w, c) in s.terms() {
        let key = w
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        doc.output(
            &format!("orbit[{key}]"),
            OutputValue::ExactU(USqrtJson::from_usqrt(c)),
        );
    }
    doc.output(
        "spread_degree",
        OutputValue::Exact(RationalJson {
            num: s.spread_degree().unwrap_or(0).to_string(),
            den: "1".into(),
        }),
    );
    Ok(doc)
}

fn cmd_convolve(args: &ConvolveArgs) -> Result<CommandResult, CliError> {
    let a = dominant(&args.a)?;
    let b = dominant(&args.b)?;
    if a.rank() != b.rank() {
        return Err(CliError::Validation("rank mismatch between a and b".into()));
    }
    let prod = convolve(
        &HeckeElement::basis(args.prime, &a),
        &HeckeElement::basis(args.prime, &b),
    )
    .map_err(|e| CliError::Refusal(e.to_string()))?;
    let mut doc = CommandResult::new("convolve");
    doc.input("a", &a);
    doc.input("b", &b);
    doc.input("prime", args.prime);
    for (w, c) in prod.terms() {
        let key = w
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        doc.output(
            &format!("tau[{key}]"),
            OutputValue::ExactU(USqrtJson::from_usqrt(c)),
        );
    }
    Ok(doc)
}

fn cmd_degree(args: &XiArgs) -> Result<CommandResult, CliError> {
    let xi = dominant(&args.xi)?;
    let d = degree(&xi, args.prime).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut doc = CommandResult::new("degree");
    doc.input("xi", &xi);
    doc.input("prime", args.prime);
    doc.output("degree", rational(&d));
    Ok(doc)
}

fn cmd_orbital(args: &OrbitalArgs) -> Result<CommandResult, CliError> {
    let case = SplittingCase::parse(&args.case)
        .ok_or_else(|| CliError::Validation(format!("unknown case {}", args.case)))?;
    let v = gl2_orbital(&Gl2OrbitalInput {
        prime: args.prime,
        case,
        m: args.m,
        disc_valuation: args.disc_val,
    })
    .map_err(|e| CliError::Validation(e.to_string()))?;
    let mut doc = CommandResult::new("orbital-gl2");
    doc.input("case", case.name());
    doc.input("m", args.m);
    doc.input("prime", args.prime);
    doc.input("disc_val", args.disc_val);
    doc.output("value", OutputValue::ExactU(USqrtJson::from_usqrt(&v.value)));
    doc.output("half_integral", OutputValue::Flag {
        flag: v.half_integral,
    });
    Ok(doc)
}

fn cmd_spherical(args: &SphericalArgs, tolerance: f64) -> Result<CommandResult, CliError> {
    let n = args.lambda.len();
    if args.g.len() != n * n {
        return Err(CliError::Validation(format!(
            "g needs {} entries for rank {n}",
            n * n
        )));
    }
    let lambda = SpectralParam::new(args.lambda.clone())
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let g = GroupMatrix::from_rows(n, &args.g)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let spec = QuadratureSpec::ProductAngles {
        nodes: args.nodes,
        tolerance,
    };
    let (value, err) =
        spherical_phi(&lambda, &g, &spec).map_err(|e| CliError::Refusal(e.to_string()))?;
    let mut doc = CommandResult::new("spherical");
    doc.input("lambda", format!("{:?}", args.lambda));
    doc.input("g", format!("{:?}", args.g));
    doc.input("nodes", args.nodes);
    doc.output("re", OutputValue::Numeric { value: value.re, tolerance: err });
    doc.output("im", OutputValue::Numeric { value: value.im, tolerance: err });
    doc.output("abs", OutputValue::Numeric { value: value.norm(), tolerance: err });
    Ok(doc)
}

fn cmd_weyl(args: &WeylArgs) -> Result<CommandResult, CliError> {
    let value = weyl_main_term(args.omega, args.t, args.n, args.volume_factor)
        .map_err(|e| CliError::Refusal(e.to_string()))?;
    let doubled = weyl_main_term(args.omega, 2.0 * args.t, args.n, args.volume_factor)
        .map_err(|e| CliError::Refusal(e.to_string()))?;
    let exponent = (doubled / value).log2();
    let mut doc = CommandResult::new("weyl-term");
    doc.input("n", args.n);
    doc.input("t", args.t);
    doc.input("omega", args.omega);
    doc.output("integral", OutputValue::Numeric { value, tolerance: 1e-3 });
    doc.output(
        "local_exponent",
        OutputValue::Numeric {
            value: exponent,
            tolerance: 0.02,
        },
    );
    Ok(doc)
}

fn cmd_density(args: &DensityArgs, tolerance: f64) -> Result<CommandResult, CliError> {
    let ensemble = Ensemble::parse(&args.ensemble)
        .ok_or_else(|| CliError::Validation(format!("unknown ensemble {}", args.ensemble)))?;
    if args.sigma.len() != args.k {
        return Err(CliError::Validation(format!(
            "need {} sigma values for k = {}",
            args.k, args.k
        )));
    }
    let phis: Vec<BandLimitedTestFn> = args
        .sigma
        .iter()
        .map(|&s| BandLimitedTestFn::fejer(s))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let direct =
        density_pairing(ensemble, &phis, tolerance).map_err(|e| CliError::Refusal(e.to_string()))?;
    let fourier = density_pairing_fourier(ensemble, &phis)
        .map_err(|e| CliError::Refusal(e.to_string()))?;
    let mut doc = CommandResult::new("density");
    doc.input("ensemble", &args.ensemble);
    doc.input("k", args.k);
    doc.input(
        "sigma",
        args.sigma
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    doc.routes.push(RouteJson {
        route: "direct".into(),
        value: OutputValue::Numeric {
            value: direct.value,
            tolerance,
        },
    });
    doc.routes.push(RouteJson {
        route: "fourier".into(),
        value: OutputValue::Numeric {
            value: fourier,
            tolerance,
        },
    });
    doc.output(
        "tail_bound",
        OutputValue::Numeric {
            value: direct.tail_bound,
            tolerance,
        },
    );
    doc.output("metadata", OutputValue::Text {
        text: direct.metadata.into(),
    });
    doc.agreement = Some((direct.value - fourier).abs() <= tolerance);
    Ok(doc)
}

fn cmd_recursion(args: &RecursionArgs) -> Result<CommandResult, CliError> {
    let r = recursion_check(args.k1, args.k2, args.prime, args.n)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let mut doc = CommandResult::new("recursion-check");
    doc.input("n", args.n);
    doc.input("k1", args.k1);
    doc.input("k2", args.k2);
    doc.input("prime", args.prime);
    doc.output("lhs", rational(&r.lhs));
    doc.output("rhs", rational(&r.rhs));
    doc.output("holds", OutputValue::Flag { flag: r.holds });
    doc.agreement = Some(r.holds);
    Ok(doc)
}
