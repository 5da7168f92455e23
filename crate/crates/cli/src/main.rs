use std::f64::consts::{PI, TAU};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trinoma::verify::Fault;
use trinoma::{
    build_fan, classify_uj, count_roots_below, curve_point, epitrochoid_params, fan_membership,
    has_double_root, hypotrochoid_params, knot_path, norm_spectrum, run_verify, same_norm_pair_exists,
    sample_curve, singularities, winding_numbers, Angle, ComplexValue, CountMethod, Error, SolverConfig,
    Support, Tolerances, TorusPoint, Trinomial, VerifyConfig,
};

mod svg;

use svg::Svg;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_BOUNDARY: u8 = 4;
const EXIT_SAMPLING: u8 = 5;

/// Root norms of trinomials z^(s+t) + p·z^t + q.
#[derive(Parser)]
#[command(name = "trinoma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, env = "TRINOMA_TOLERANCE_ANGLE")]
    angle_tol: Option<f64>,

    #[arg(long, global = true, env = "TRINOMA_TOLERANCE_NORM")]
    norm_tol: Option<f64>,

    #[arg(long, global = true, env = "TRINOMA_TOLERANCE_RESIDUAL")]
    residual_tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveType {
    Hypo,
    Epi,
}

#[derive(Args)]
struct SupportArgs {
    #[arg(short = 's')]
    s: u32,
    #[arg(short = 't')]
    t: u32,
}

#[derive(Args)]
struct Coefficients {
    /// Middle coefficient as two reals.
    #[arg(long = "p", num_args = 2, required = true, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    p: Vec<f64>,
    /// Constant coefficient as two reals.
    #[arg(long = "q", num_args = 2, required = true, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    q: Vec<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Which gaps between consecutive root norms are present.
    Classify {
        #[command(flatten)]
        support: SupportArgs,
        #[command(flatten)]
        coeffs: Coefficients,
    },
    /// Number of roots of norm below v, without root finding.
    Count {
        #[command(flatten)]
        support: SupportArgs,
        #[command(flatten)]
        coeffs: Coefficients,
        #[arg(long = "v", allow_negative_numbers = true)]
        v: f64,
        /// Also count with the root finder and compare.
        #[arg(long)]
        verify: bool,
        /// Exit with status 4 when v is on a root-norm boundary.
        #[arg(long)]
        strict: bool,
    },
    /// Sample the hypotrochoid (fixed q) or epitrochoid (fixed p) for root norm v.
    Curve {
        kind: CurveType,
        #[command(flatten)]
        support: SupportArgs,
        #[arg(long = "p", num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        p: Option<Vec<f64>>,
        #[arg(long = "q", num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        q: Option<Vec<f64>>,
        #[arg(long = "v", allow_negative_numbers = true)]
        v: f64,
        #[arg(short = 'n', default_value_t = 360)]
        n: usize,
        /// Append singular points (hypotrochoids only).
        #[arg(long)]
        singularities: bool,
    },
    /// The 2(s+t) rays of the fan for a given arg q.
    Fan {
        #[command(flatten)]
        support: SupportArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        arg_q: f64,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
    },
    /// Torus knot path on the argument torus.
    Knot {
        #[command(flatten)]
        support: SupportArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        offset: f64,
        #[arg(short = 'n', default_value_t = 256)]
        n: usize,
        /// Emit points of the standard torus in space instead of angle pairs.
        #[arg(long)]
        embed: bool,
    },
    /// Randomized sweep of all checks against the root finder.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        degree_max: u32,
        #[arg(long, hide = true)]
        inject_parity_flip: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSupport { .. }
            | Error::ZeroConstantTerm
            | Error::NonFinite(_)
            | Error::ZeroMiddleCoefficient => EXIT_INVALID,
            Error::InsufficientSampling(_) => EXIT_SAMPLING,
            Error::InvalidParameter(_) => EXIT_USAGE,
            _ => EXIT_VERIFY,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn complex(parts: &[f64]) -> ComplexValue {
    ComplexValue::new(parts[0], parts[1])
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair(z: ComplexValue) -> Value {
    json!([z.re, z.im])
}

fn support(args: &SupportArgs) -> Result<Support, Failure> {
    Ok(Support::new(args.s, args.t)?)
}

fn trinomial(args: &SupportArgs, coeffs: &Coefficients) -> Result<Trinomial, Failure> {
    Ok(Trinomial::new(support(args)?, complex(&coeffs.p), complex(&coeffs.q))?)
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Failure::usage(format!("{name} must be positive, got {x}")))
    }
}

struct Ctx {
    format: Option<Format>,
    tol: Tolerances,
    out: Box<dyn Write>,
}

impl Ctx {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn no_svg(&self, command: &str) -> Result<(), Failure> {
        if self.format == Some(Format::Svg) {
            return Err(Failure::usage(format!("svg output is not available for {command}")));
        }
        Ok(())
    }

    fn json(&mut self, value: &Value) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut self.out, value)?;
        writeln!(self.out)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let defaults = Tolerances::default();
    let tol = Tolerances::new(
        cli.angle_tol.unwrap_or(defaults.angle_tol),
        cli.norm_tol.unwrap_or(defaults.norm_rel_tol),
        cli.residual_tol.unwrap_or(defaults.residual_tol),
    )
    .map_err(|e| Failure::usage(e.to_string()))?;
    let out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut ctx = Ctx { format: cli.format, tol, out };
    let code = match &cli.command {
        Command::Classify { support, coeffs } => cmd_classify(&mut ctx, support, coeffs),
        Command::Count { support, coeffs, v, verify, strict } => {
            cmd_count(&mut ctx, support, coeffs, *v, *verify, *strict)
        }
        Command::Curve { kind, support, p, q, v, n, singularities } => {
            cmd_curve(&mut ctx, *kind, support, p.as_deref(), q.as_deref(), *v, *n, *singularities)
        }
        Command::Fan { support, arg_q, length } => cmd_fan(&mut ctx, support, *arg_q, *length),
        Command::Knot { support, offset, n, embed } => cmd_knot(&mut ctx, support, *offset, *n, *embed),
        Command::Verify { seed, samples, degree_max, inject_parity_flip } => {
            cmd_verify(&mut ctx, *seed, *samples, *degree_max, *inject_parity_flip)
        }
    }?;
    ctx.out.flush()?;
    Ok(code)
}

fn cmd_classify(ctx: &mut Ctx, args: &SupportArgs, coeffs: &Coefficients) -> Outcome {
    ctx.no_svg("classify")?;
    let f = trinomial(args, coeffs)?;
    let uj = classify_uj(&f, &ctx.tol);
    let membership = if f.p().norm() == 0.0 {
        None
    } else {
        let fan = build_fan(f.support(), Angle::of(f.q()));
        Some(fan_membership(f.p(), &fan, &ctx.tol)?)
    };
    let on_fan = membership.is_some_and(|m| m.on_fan);
    let ray = membership.and_then(|m| m.ray_index);
    let parity = membership.and_then(|m| m.parity).map(|p| p.as_str());
    let double_root = has_double_root(&f);
    let pair_kind = match same_norm_pair_exists(&f, &ctx.tol) {
        trinoma::SameNormPair::None => "none",
        trinoma::SameNormPair::Pair => "pair",
        trinoma::SameNormPair::AllEqual => "all_equal",
    };
    match ctx.format_or(Format::Json) {
        Format::Json => {
            let value = json!({
                "s": f.s(),
                "t": f.t(),
                "p": pair(f.p()),
                "q": pair(f.q()),
                "uj": uj.member,
                "on_fan": on_fan,
                "ray": ray,
                "parity": parity,
                "double_root": double_root,
                "same_norm_pair": pair_kind,
            });
            ctx.json(&value)?;
        }
        _ => {
            writeln!(ctx.out, "s,t,p_re,p_im,q_re,q_im,uj,on_fan,ray,parity,double_root,same_norm_pair")?;
            let uj_field: Vec<&str> = uj.member.iter().map(|&m| if m { "1" } else { "0" }).collect();
            writeln!(
                ctx.out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                f.s(),
                f.t(),
                num(f.p().re),
                num(f.p().im),
                num(f.q().re),
                num(f.q().im),
                uj_field.join(";"),
                on_fan,
                ray.map(|r| r.to_string()).unwrap_or_default(),
                parity.unwrap_or(""),
                double_root,
                pair_kind
            )?;
        }
    }
    Ok(0)
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Lopsided => "lopsided",
        CountMethod::Interval => "interval",
        CountMethod::EqualNorms => "equal_norms",
    }
}

fn cmd_count(ctx: &mut Ctx, args: &SupportArgs, coeffs: &Coefficients, v: f64, verify: bool, strict: bool) -> Outcome {
    ctx.no_svg("count")?;
    positive("v", v)?;
    let f = trinomial(args, coeffs)?;
    let result = count_roots_below(&f, v)?;
    let oracle = if verify {
        let cfg = SolverConfig { residual_tol: ctx.tol.residual_tol, ..SolverConfig::default() };
        Some(norm_spectrum(&f, &cfg)?.count_below(v))
    } else {
        None
    };
    let agrees = oracle.map(|o| o == result.count);
    match ctx.format_or(Format::Json) {
        Format::Json => {
            let mut value = json!({
                "s": f.s(),
                "t": f.t(),
                "p": pair(f.p()),
                "q": pair(f.q()),
                "v": v,
                "count": result.count,
                "method": method_name(result.method),
                "boundary": result.boundary,
            });
            if let (Some(o), Some(a)) = (oracle, agrees) {
                value["oracle_count"] = json!(o);
                value["agrees"] = json!(a);
            }
            ctx.json(&value)?;
        }
        _ => {
            let mut header = String::from("count,method,boundary");
            let mut row = format!("{},{},{}", result.count, method_name(result.method), result.boundary);
            if let (Some(o), Some(a)) = (oracle, agrees) {
                header.push_str(",oracle_count,agrees");
                row.push_str(&format!(",{o},{a}"));
            }
            writeln!(ctx.out, "{header}\n{row}")?;
        }
    }
    if agrees == Some(false) {
        return Ok(EXIT_VERIFY);
    }
    if strict && result.boundary {
        return Ok(EXIT_BOUNDARY);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    ctx: &mut Ctx,
    kind: CurveType,
    args: &SupportArgs,
    p: Option<&[f64]>,
    q: Option<&[f64]>,
    v: f64,
    n: usize,
    with_singularities: bool,
) -> Outcome {
    positive("v", v)?;
    if n < 2 {
        return Err(Failure::usage("-n must be at least 2"));
    }
    let support = support(args)?;
    let (params, anchor, fixed_q) = match kind {
        CurveType::Hypo => {
            let q = complex(q.ok_or_else(|| Failure::usage("curve hypo needs --q"))?);
            if !(q.re.is_finite() && q.im.is_finite()) {
                return Err(Error::NonFinite("q").into());
            }
            if q.norm() == 0.0 {
                return Err(Error::ZeroConstantTerm.into());
            }
            (hypotrochoid_params(support, q.norm(), v)?, Angle::of(q), Some(q))
        }
        CurveType::Epi => {
            if with_singularities {
                return Err(Failure::usage("--singularities applies to hypo curves only"));
            }
            let p = complex(p.ok_or_else(|| Failure::usage("curve epi needs --p"))?);
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::NonFinite("p").into());
            }
            (epitrochoid_params(support, p.norm(), v)?, Angle::of(p), None)
        }
    };
    let samples = sample_curve(&params, anchor, n)?;
    let singular = match fixed_q {
        Some(q) if with_singularities => singularities(support, q, v, &ctx.tol)?,
        _ => Vec::new(),
    };
    match ctx.format_or(Format::Csv) {
        Format::Csv => {
            writeln!(ctx.out, "phi,re,im")?;
            for c in &samples {
                writeln!(ctx.out, "{},{},{}", num(c.phi.radians()), num(c.point.re), num(c.point.im))?;
            }
            for r in &singular {
                writeln!(
                    ctx.out,
                    "#singularity,{},{},{},{}",
                    r.kind.as_str(),
                    num(r.location.re),
                    num(r.location.im),
                    num(r.v)
                )?;
            }
        }
        Format::Json => {
            let pts: Vec<Value> = samples
                .iter()
                .map(|c| json!({"phi": c.phi.radians(), "re": c.point.re, "im": c.point.im}))
                .collect();
            let sing: Vec<Value> = singular
                .iter()
                .map(|r| {
                    json!({
                        "kind": r.kind.as_str(),
                        "p": pair(r.location),
                        "phis": r.phis.iter().map(|a| a.radians()).collect::<Vec<_>>(),
                        "v": r.v,
                    })
                })
                .collect();
            let value = json!({
                "kind": match kind { CurveType::Hypo => "hypo", CurveType::Epi => "epi" },
                "s": support.s(),
                "t": support.t(),
                "R": params.big_r,
                "r": params.r,
                "d": params.d,
                "v": v,
                "samples": pts,
                "singularities": sing,
            });
            ctx.json(&value)?;
        }
        Format::Svg => {
            let mut svg = Svg::centered(params.max_radius());
            // draw densely regardless of n so the shape is faithful
            let dense = 4096.max(n);
            let pts: Vec<(f64, f64)> = (0..dense)
                .map(|i| {
                    let z = curve_point(&params, anchor, Angle::new(TAU * i as f64 / dense as f64));
                    (z.re, z.im)
                })
                .collect();
            svg.polyline(&pts, true, "black");
            for r in &singular {
                // singularities are reported as p; the hypotrochoid is drawn as −p
                svg.dot((-r.location.re, -r.location.im), "red");
            }
            ctx.out.write_all(svg.finish().as_bytes())?;
        }
    }
    Ok(0)
}

fn cmd_fan(ctx: &mut Ctx, args: &SupportArgs, arg_q: f64, length: f64) -> Outcome {
    positive("length", length)?;
    if !arg_q.is_finite() {
        return Err(Failure::usage("arg-q must be finite"));
    }
    let fan = build_fan(support(args)?, Angle::new(arg_q));
    match ctx.format_or(Format::Csv) {
        Format::Csv => {
            writeln!(ctx.out, "ray_index,parity,angle,endpoint_re,endpoint_im")?;
            for k in 0..fan.len() {
                let e = fan.endpoint(k, length);
                writeln!(
                    ctx.out,
                    "{k},{},{},{},{}",
                    fan.parity(k).as_str(),
                    num(fan.ray_angles[k].radians()),
                    num(e.re),
                    num(e.im)
                )?;
            }
        }
        Format::Json => {
            let rays: Vec<Value> = (0..fan.len())
                .map(|k| {
                    json!({
                        "ray_index": k,
                        "parity": fan.parity(k).as_str(),
                        "angle": fan.ray_angles[k].radians(),
                        "endpoint": pair(fan.endpoint(k, length)),
                    })
                })
                .collect();
            let value = json!({"s": args.s, "t": args.t, "arg_q": fan.arg_q.radians(), "rays": rays});
            ctx.json(&value)?;
        }
        Format::Svg => {
            let mut svg = Svg::centered(length);
            for k in 0..fan.len() {
                let e = fan.endpoint(k, length);
                let color = if k % 2 == 0 { "blue" } else { "red" };
                svg.line((0.0, 0.0), (e.re, e.im), color);
            }
            ctx.out.write_all(svg.finish().as_bytes())?;
        }
    }
    Ok(0)
}

fn cmd_knot(ctx: &mut Ctx, args: &SupportArgs, offset: f64, n: usize, embed: bool) -> Outcome {
    if n < 3 {
        return Err(Failure::usage("-n must be at least 3"));
    }
    if !offset.is_finite() {
        return Err(Failure::usage("offset must be finite"));
    }
    let support = support(args)?;
    let path = knot_path(support, Angle::new(offset), n)?;
    let w = winding_numbers(&path)?;
    eprintln!("winding: around_p={} around_q={}", w.around_p, w.around_q);
    let phi = |i: usize| i as f64 / n as f64;
    match ctx.format_or(Format::Csv) {
        Format::Csv if embed => {
            writeln!(ctx.out, "phi,x,y,z")?;
            for (i, pt) in path.samples.iter().enumerate() {
                let [x, y, z] = pt.embed();
                writeln!(ctx.out, "{},{},{},{}", num(phi(i)), num(x), num(y), num(z))?;
            }
        }
        Format::Csv => {
            writeln!(ctx.out, "phi,arg_p,arg_q")?;
            for (i, pt) in path.samples.iter().enumerate() {
                writeln!(ctx.out, "{},{},{}", num(phi(i)), num(pt.phi_p.radians()), num(pt.phi_q.radians()))?;
            }
        }
        Format::Json => {
            let samples: Vec<Value> = path
                .samples
                .iter()
                .enumerate()
                .map(|(i, pt)| {
                    if embed {
                        let [x, y, z] = pt.embed();
                        json!({"phi": phi(i), "x": x, "y": y, "z": z})
                    } else {
                        json!({"phi": phi(i), "arg_p": pt.phi_p.radians(), "arg_q": pt.phi_q.radians()})
                    }
                })
                .collect();
            let value = json!({
                "s": support.s(),
                "t": support.t(),
                "offset": Angle::new(offset).radians(),
                "winding": {"around_p": w.around_p, "around_q": w.around_q},
                "samples": samples,
            });
            ctx.json(&value)?;
        }
        Format::Svg => {
            // flat torus [0, 2π)², split where the path wraps
            let mut svg = Svg::centered(PI);
            let to_xy = |pt: &TorusPoint| (pt.phi_q.radians() - PI, pt.phi_p.radians() - PI);
            let mut run: Vec<(f64, f64)> = Vec::new();
            for pair in path.samples.windows(2) {
                let (a, b) = (to_xy(&pair[0]), to_xy(&pair[1]));
                if run.is_empty() {
                    run.push(a);
                }
                if (a.0 - b.0).abs() > PI || (a.1 - b.1).abs() > PI {
                    if run.len() > 1 {
                        svg.polyline(&run, false, "black");
                    }
                    run.clear();
                    run.push(b);
                } else {
                    run.push(b);
                }
            }
            if run.len() > 1 {
                svg.polyline(&run, false, "black");
            }
            ctx.out.write_all(svg.finish().as_bytes())?;
        }
    }
    Ok(0)
}

fn cmd_verify(ctx: &mut Ctx, seed: u64, samples: usize, degree_max: u32, inject: bool) -> Outcome {
    ctx.no_svg("verify")?;
    if samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    if !(2..=trinoma::MAX_DEGREE).contains(&degree_max) {
        return Err(Failure::usage(format!("--degree-max must be in 2..={}", trinoma::MAX_DEGREE)));
    }
    let cfg = VerifyConfig {
        seed,
        samples,
        degree_max,
        tol: ctx.tol,
        fault: inject.then_some(Fault::ParityFlip),
    };
    let report = run_verify(&cfg);
    match ctx.format_or(Format::Json) {
        Format::Json => {
            let value = serde_json::to_value(&report).map_err(|e| Failure::usage(e.to_string()))?;
            ctx.json(&value)?;
        }
        _ => {
            writeln!(ctx.out, "theorem,passed,failed")?;
            for t in &report.theorems {
                writeln!(ctx.out, "{},{},{}", t.name, t.passed, t.failed)?;
            }
        }
    }
    for c in &report.counterexamples {
        eprintln!(
            "counterexample [{}] sample {}: s={} t={} p=({}, {}) q=({}, {}){}: {}",
            c.theorem,
            c.sample,
            c.s,
            c.t,
            c.p[0],
            c.p[1],
            c.q[0],
            c.q[1],
            c.v.map(|v| format!(" v={v}")).unwrap_or_default(),
            c.detail
        );
    }
    Ok(if report.all_passed { 0 } else { EXIT_VERIFY })
}
