//! The `hnpoly` command line: argument parsing, dispatch and output formats.
//!
//! [`run`] never exits the process; it returns the exit status together with
//! what would be written to stdout and stderr.
//!
//! Exit status: 0 on success, 1 on usage, parse or domain errors, 2 when a
//! verification finds a violation.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hnpoly::verify::{DimensionSweep, SlopeWindow, Step1Sweep, Step2Sweep};
use hnpoly::*;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Enumeration commands refuse ranks above this unless `HNPOLY_MAX_RANK` says otherwise.
pub const DEFAULT_MAX_RANK: u32 = 24;

#[derive(Parser, Debug)]
#[command(name = "hnpoly", version, about = "Harder–Narasimhan polygons of bundles O(λ)^m")]
struct Cli {
    /// Output format; `dot` applies to `poset`, `svg`/`tikz` to `render`.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Read every bundle and polygon argument as JSON (`[[d,h,m],...]`, `[[x,y],...]`).
    #[arg(long, global = true)]
    json: bool,
    /// Safety cap on the rank of enumerated objects.
    #[arg(long, env = "HNPOLY_MAX_RANK", default_value_t = DEFAULT_MAX_RANK, global = true, hide_env_values = true)]
    max_rank_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
    Tikz,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, degree, slopes, HN polygon and instability of a bundle.
    Info { bundle: String },
    /// Tensor product A ⊗ B.
    Tensor { a: String, b: String },
    /// Hom bundle A^∨ ⊗ B.
    Hom { a: String, b: String },
    /// Does 0 → F1 → E → F2 → 0 exist?
    ExtCheck {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        e: String,
    },
    /// All E fitting in 0 → F1 → E → F2 → 0.
    ExtEnum {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
    },
    /// A filtration of E with the given semistable gradeds (increasing slopes).
    Filtration {
        #[arg(long)]
        e: String,
        /// Graded pieces F1, F2, ... in order; repeat the flag.
        #[arg(long = "graded", required = true)]
        graded: Vec<String>,
    },
    /// Dimension formulas for moduli of maps and extensions.
    Dim(DimArgs),
    /// Is the stratum of TARGET in the closure of the stratum of STRATUM?
    Closure {
        #[arg(long)]
        target: String,
        #[arg(long)]
        stratum: String,
    },
    /// Down-set of a ceiling polygon under the closure order.
    Poset {
        #[arg(long)]
        ceiling: String,
    },
    /// Check the degree inequalities and dimension identities.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Figure comparing LOWER (dashed) with UPPER (solid).
    Render {
        #[arg(long)]
        upper: String,
        /// Defaults to the chord of UPPER.
        #[arg(long)]
        lower: Option<String>,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("kind").required(true).args(["h0", "hom", "aut", "stratum", "kernel", "ext"])))]
struct DimArgs {
    /// dim H⁰(E); needs --e.
    #[arg(long)]
    h0: bool,
    /// dim Hom(E, F); needs --e, --f.
    #[arg(long)]
    hom: bool,
    /// dim Aut(E); needs --e.
    #[arg(long)]
    aut: bool,
    /// Maps E → F with image Q; needs --e, --f, --q.
    #[arg(long)]
    stratum: bool,
    /// Surjections E ↠ F with kernel K; needs --e, --f, --k.
    #[arg(long)]
    kernel: bool,
    /// Extensions of F2 by F1 isomorphic to E; needs --f1, --f2, --e.
    #[arg(long)]
    ext: bool,
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    f1: Option<String>,
    #[arg(long)]
    f2: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
struct WindowArgs {
    /// Largest slope denominator in the sweep.
    #[arg(long, default_value_t = 3)]
    max_den: u32,
    /// Largest absolute slope numerator in the sweep.
    #[arg(long, default_value_t = 3)]
    max_num: u32,
}

impl From<WindowArgs> for SlopeWindow {
    fn from(w: WindowArgs) -> Self {
        SlopeWindow {
            max_den: w.max_den,
            max_num: w.max_num,
        }
    }
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// Surjection inequality; one instance with --e/--f, else a sweep.
    Step1 {
        #[arg(long, requires = "f")]
        e: Option<String>,
        #[arg(long, requires = "e")]
        f: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_rank_e: u32,
        #[arg(long, default_value_t = 3)]
        max_rank_f: u32,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Kernel inequality; one instance with --d/--f/--e, else a sweep.
    Step2 {
        #[arg(long, requires_all = ["f", "e"])]
        d: Option<String>,
        #[arg(long, requires_all = ["d", "e"])]
        f: Option<String>,
        #[arg(long, requires_all = ["d", "f"])]
        e: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_total_rank: u32,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Extension dimensions versus areas; one pair with --f1/--f2, else a sweep.
    Dims {
        #[arg(long, requires = "f2")]
        f1: Option<String>,
        #[arg(long, requires = "f1")]
        f2: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_rank: u32,
        #[command(flatten)]
        window: WindowArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(format!("error: {e}"))
    }
}

type Out = Result<String, Failure>;

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: msg + "\n",
        },
        Err(Failure::Violation(report)) => Outcome {
            code: 2,
            stdout: report,
            stderr: "verification failed: violations found\n".into(),
        },
    }
}

struct Ctx {
    format: Format,
    json: bool,
    cap: u32,
}

impl Ctx {
    fn bundle(&self, flag: &str, input: &str) -> Result<Bundle, Failure> {
        let parsed = if self.json {
            bundle_from_json(input)
        } else {
            parse_bundle_any(input)
        };
        parsed.map_err(|e| describe(flag, input, e))
    }

    fn opt_bundle(&self, flag: &str, input: &Option<String>) -> Result<Bundle, Failure> {
        match input {
            Some(s) => self.bundle(flag, s),
            None => Err(Failure::Domain(format!("error: --{flag} is required here"))),
        }
    }

    /// A polygon given as `[[x,y],...]`, or a bundle standing for its HN polygon.
    fn polygon(&self, flag: &str, input: &str) -> Result<Polygon, Failure> {
        let looks_like_points = input
            .trim_start()
            .strip_prefix('[')
            .and_then(|rest| rest.trim_start().strip_prefix('['))
            .is_some_and(|rest| rest.split(']').next().is_some_and(|row| row.matches(',').count() == 1));
        if looks_like_points {
            polygon_from_json(input).map_err(|e| describe(flag, input, e))
        } else {
            Ok(polygon_of(&self.bundle(flag, input)?))
        }
    }

    fn check_cap(&self, what: &str, rank: &BigInt) -> Result<(), Failure> {
        if *rank > BigInt::from(self.cap) {
            return Err(Failure::Domain(format!(
                "error: {what} has rank {rank}, above the enumeration cap {} (set HNPOLY_MAX_RANK to raise it)",
                self.cap
            )));
        }
        Ok(())
    }

    fn only(&self, allowed: &[Format], command: &str) -> Result<(), Failure> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            Err(Failure::Domain(format!(
                "error: format {:?} is not available for `{command}`",
                self.format
            )
            .to_lowercase()))
        }
    }
}

fn describe(flag: &str, input: &str, e: Error) -> Failure {
    match e {
        Error::Parse(p) => Failure::Domain(format!("error in {flag}: {}", p.diagnostic(input))),
        other => Failure::Domain(format!("error in {flag}: {other}")),
    }
}

fn slope_json(s: Option<&Slope>) -> Value {
    s.map_or(Value::Null, |s| Value::String(s.to_string()))
}

fn polygons_json(ps: &[Polygon]) -> Value {
    Value::Array(ps.iter().map(polygon_to_json).collect())
}

fn dispatch(cli: &Cli) -> Out {
    let ctx = Ctx {
        format: cli.format,
        json: cli.json,
        cap: cli.max_rank_cap,
    };
    let text_or_json = [Format::Text, Format::Json];
    match &cli.command {
        Command::Info { bundle } => {
            ctx.only(&text_or_json, "info")?;
            info(&ctx, &ctx.bundle("bundle", bundle)?)
        }
        Command::Tensor { a, b } => {
            ctx.only(&text_or_json, "tensor")?;
            emit_bundle(&ctx, &ctx.bundle("a", a)?.tensor(&ctx.bundle("b", b)?))
        }
        Command::Hom { a, b } => {
            ctx.only(&text_or_json, "hom")?;
            emit_bundle(&ctx, &ctx.bundle("a", a)?.hom(&ctx.bundle("b", b)?))
        }
        Command::ExtCheck { f1, f2, e } => {
            ctx.only(&text_or_json, "ext-check")?;
            let (f1, f2, e) = (ctx.bundle("f1", f1)?, ctx.bundle("f2", f2)?, ctx.bundle("e", e)?);
            let exists = exists_extension(&f1, &f2, &e)?;
            Ok(match ctx.format {
                Format::Json => json!({ "exists": exists }).to_string() + "\n",
                _ => format!("{exists}\n"),
            })
        }
        Command::ExtEnum { f1, f2 } => {
            ctx.only(&text_or_json, "ext-enum")?;
            let (f1, f2) = (ctx.bundle("f1", f1)?, ctx.bundle("f2", f2)?);
            ctx.check_cap("F1 ⊕ F2", &f1.direct_sum(&f2).rank())?;
            let exts = enumerate_extensions(&f1, &f2)?;
            Ok(match ctx.format {
                Format::Json => {
                    let polys: Vec<Polygon> = exts.iter().map(polygon_of).collect();
                    json!({
                        "exists": !exts.is_empty(),
                        "count": exts.len(),
                        "extensions": exts.iter().map(bundle_to_json).collect::<Vec<_>>(),
                        "witness": polygons_json(&polys),
                    })
                    .to_string()
                        + "\n"
                }
                _ => exts.iter().map(|e| format!("{e}\n")).collect(),
            })
        }
        Command::Filtration { e, graded } => {
            ctx.only(&text_or_json, "filtration")?;
            let e = ctx.bundle("e", e)?;
            let graded = graded
                .iter()
                .map(|g| ctx.bundle("graded", g))
                .collect::<Result<Vec<_>, _>>()?;
            let exists = exists_filtration(&e, &graded)?;
            let witness = if exists {
                Some(build_filtration_witness(&e, &graded)?)
            } else {
                None
            };
            Ok(match ctx.format {
                Format::Json => {
                    let chain = witness.as_ref().map_or(vec![], |w| w.chain.clone());
                    let polys = witness.as_ref().map_or(vec![], |w| w.polygons());
                    json!({
                        "exists": exists,
                        "count": chain.len(),
                        "chain": chain.iter().map(bundle_to_json).collect::<Vec<_>>(),
                        "witness": polygons_json(&polys),
                    })
                    .to_string()
                        + "\n"
                }
                _ => {
                    let mut out = format!("{exists}\n");
                    if let Some(w) = witness {
                        for (i, step) in w.chain.iter().enumerate() {
                            let _ = writeln!(out, "E_{i} = {step}");
                        }
                    }
                    out
                }
            })
        }
        Command::Dim(args) => {
            ctx.only(&text_or_json, "dim")?;
            dim(&ctx, args)
        }
        Command::Closure { target, stratum } => {
            ctx.only(&text_or_json, "closure")?;
            let (t, s) = (ctx.polygon("target", target)?, ctx.polygon("stratum", stratum)?);
            let inside = in_closure(&t, &s)?;
            Ok(match ctx.format {
                Format::Json => json!({ "in_closure": inside }).to_string() + "\n",
                _ => format!("{inside}\n"),
            })
        }
        Command::Poset { ceiling } => {
            ctx.only(&[Format::Text, Format::Json, Format::Dot], "poset")?;
            let ceiling = ctx.polygon("ceiling", ceiling)?;
            ctx.check_cap("the ceiling", ceiling.width())?;
            let poset = StrataPoset::below(&ceiling);
            let edges = poset.hasse_diagram();
            Ok(match ctx.format {
                Format::Dot => poset.to_dot(),
                Format::Json => json!({
                    "nodes": polygons_json(poset.nodes()),
                    "edges": edges.iter().map(|(lo, hi)| json!([lo, hi])).collect::<Vec<_>>(),
                })
                .to_string()
                    + "\n",
                _ => {
                    let mut out = String::new();
                    for (i, p) in poset.nodes().iter().enumerate() {
                        let _ = writeln!(out, "{i}: {p}");
                    }
                    for (lo, hi) in edges {
                        let _ = writeln!(out, "{lo} < {hi}");
                    }
                    out
                }
            })
        }
        Command::Verify { kind } => {
            ctx.only(&text_or_json, "verify")?;
            verify_cmd(&ctx, kind)
        }
        Command::Render { upper, lower } => {
            let upper = ctx.polygon("upper", upper)?;
            let lower = match lower {
                Some(l) => ctx.polygon("lower", l)?,
                None => Polygon::chord(upper.endpoint())?,
            };
            Ok(match ctx.format {
                Format::Tikz => render::render_tikz(&lower, &upper)?,
                Format::Svg | Format::Text => render::render_svg(&lower, &upper)?,
                _ => return Err(ctx.only(&[Format::Svg, Format::Tikz], "render").unwrap_err()),
            })
        }
    }
}

fn emit_bundle(ctx: &Ctx, b: &Bundle) -> Out {
    Ok(match ctx.format {
        Format::Json => bundle_to_json(b).to_string() + "\n",
        _ => format!("{b}\n"),
    })
}

fn info(ctx: &Ctx, b: &Bundle) -> Out {
    let poly = polygon_of(b);
    let vectors: Vec<Value> = hn_vectors(b)
        .iter()
        .map(|v| json!([int_to_json(&v.x), int_to_json(&v.y)]))
        .collect();
    let (mu, semistable, stable, inst) = if b.is_zero() {
        (None, None, None, None)
    } else {
        (
            Some(b.mu()?),
            Some(b.is_semistable()?),
            Some(b.is_stable()?),
            Some(instability(b)?),
        )
    };
    let doc = json!({
        "bundle": bundle_to_json(b),
        "text": b.to_string(),
        "rank": int_to_json(&b.rank()),
        "degree": int_to_json(&b.degree()),
        "slope": slope_json(mu.as_ref()),
        "mu_max": slope_json(b.mu_max()),
        "mu_min": slope_json(b.mu_min()),
        "semistable": semistable,
        "stable": stable,
        "polygon": polygon_to_json(&poly),
        "hn_vectors": vectors,
        "instability": inst.as_ref().map_or(Value::Null, int_to_json),
        "dim_h0": int_to_json(&dim_h0(b)),
        "dim_aut": int_to_json(&dim_aut(b)),
    });
    if ctx.format == Format::Json {
        return Ok(doc.to_string() + "\n");
    }
    let show = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "bundle:      {b}");
    for key in ["rank", "degree", "slope", "mu_max", "mu_min", "semistable", "stable"] {
        let _ = writeln!(out, "{:<12} {}", format!("{key}:"), show(&doc[key]));
    }
    let _ = writeln!(out, "polygon:     {poly}");
    for key in ["instability", "dim_h0", "dim_aut"] {
        let _ = writeln!(out, "{:<12} {}", format!("{key}:"), show(&doc[key]));
    }
    Ok(out)
}

fn dim(ctx: &Ctx, a: &DimArgs) -> Out {
    let (formula, result) = if a.h0 {
        let e = ctx.opt_bundle("e", &a.e)?;
        ("deg E^{>=0}", (dim_h0(&e), None))
    } else if a.hom {
        let (e, f) = (ctx.opt_bundle("e", &a.e)?, ctx.opt_bundle("f", &a.f)?);
        ("deg(E^v (x) F)^{>=0}", (dim_hom(&e, &f), None))
    } else if a.aut {
        let e = ctx.opt_bundle("e", &a.e)?;
        ("deg(E^v (x) E)^{>=0}", (dim_aut(&e), None))
    } else if a.stratum {
        let (e, f, q) = (
            ctx.opt_bundle("e", &a.e)?,
            ctx.opt_bundle("f", &a.f)?,
            ctx.opt_bundle("q", &a.q)?,
        );
        let d = dim_hom_stratum(&e, &f, &q)?;
        (
            "deg(E^v (x) Q)^{>=0} + deg(Q^v (x) F)^{>=0} - deg(Q^v (x) Q)^{>=0}",
            (d.value, Some(d.nonempty)),
        )
    } else if a.kernel {
        let (e, f, k) = (
            ctx.opt_bundle("e", &a.e)?,
            ctx.opt_bundle("f", &a.f)?,
            ctx.opt_bundle("k", &a.k)?,
        );
        let d = dim_surj_with_kernel(&e, &f, &k)?;
        (
            "deg(K^v (x) E)^{>=0} - deg(K^v (x) K)^{>=0}",
            (d.value, Some(d.nonempty)),
        )
    } else {
        let (f1, f2, e) = (
            ctx.opt_bundle("f1", &a.f1)?,
            ctx.opt_bundle("f2", &a.f2)?,
            ctx.opt_bundle("e", &a.e)?,
        );
        let d = dim_ext_stratum(&f1, &f2, &e)?;
        (
            "deg(F1^v (x) F2) - deg(E^v (x) E)^{>=0}",
            (d.value, Some(d.nonempty)),
        )
    };
    let (value, nonempty) = result;
    Ok(match ctx.format {
        Format::Json => {
            // plain dimensions of non-empty spaces are always realized
            let flag = nonempty.unwrap_or(Nonempty::Yes).to_string();
            json!({ "formula": formula, "value": int_to_json(&value), "nonempty": flag })
                .to_string()
                + "\n"
        }
        _ => match nonempty {
            Some(n) => format!("{value}\nnonempty: {n}\n"),
            None => format!("{value}\n"),
        },
    })
}

fn verify_cmd(ctx: &Ctx, kind: &VerifyKind) -> Out {
    let (name, report) = match kind {
        VerifyKind::Step1 {
            e,
            f,
            max_rank_e,
            max_rank_f,
            window,
        } => {
            let report = match (e, f) {
                (Some(e), Some(f)) => verify::verify_step1(&ctx.bundle("e", e)?, &ctx.bundle("f", f)?)?,
                _ => {
                    ctx.check_cap("the sweep", &BigInt::from(*max_rank_e))?;
                    Step1Sweep {
                        max_rank_e: *max_rank_e,
                        max_rank_f: *max_rank_f,
                        window: (*window).into(),
                    }
                    .run()?
                }
            };
            ("step1", report)
        }
        VerifyKind::Step2 {
            d,
            f,
            e,
            max_total_rank,
            window,
        } => {
            let report = match (d, f, e) {
                (Some(d), Some(f), Some(e)) => verify::verify_step2(
                    &ctx.bundle("d", d)?,
                    &ctx.bundle("f", f)?,
                    &ctx.bundle("e", e)?,
                )?,
                _ => {
                    ctx.check_cap("the sweep", &BigInt::from(*max_total_rank))?;
                    Step2Sweep {
                        max_total_rank: *max_total_rank,
                        window: (*window).into(),
                    }
                    .run()?
                }
            };
            ("step2", report)
        }
        VerifyKind::Dims {
            f1,
            f2,
            max_rank,
            window,
        } => {
            let report = match (f1, f2) {
                (Some(f1), Some(f2)) => {
                    let (f1, f2) = (ctx.bundle("f1", f1)?, ctx.bundle("f2", f2)?);
                    ctx.check_cap("F1 ⊕ F2", &f1.direct_sum(&f2).rank())?;
                    verify::cross_check_dimensions(&f1, &f2)?
                }
                _ => {
                    ctx.check_cap("the sweep", &BigInt::from(2 * *max_rank))?;
                    DimensionSweep {
                        max_rank: *max_rank,
                        window: (*window).into(),
                    }
                    .run()?
                }
            };
            ("dims", report)
        }
    };
    let out = match ctx.format {
        Format::Json => {
            let mut doc = report.to_json();
            doc["check"] = Value::String(name.into());
            doc.to_string() + "\n"
        }
        _ => {
            let mut out = format!(
                "{name}: {} instances, {} violations, {} equality cases\n",
                report.instances_checked,
                report.violations.len(),
                report.equality_cases.len()
            );
            for v in &report.violations {
                let inputs: Vec<String> = v.inputs.iter().map(|(n, b)| format!("{n} = {b}")).collect();
                let _ = writeln!(out, "violation [{}]: {}; {} vs {}", v.check, inputs.join(", "), v.lhs, v.rhs);
            }
            out
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Violation(out))
    }
}
