//! Command-line front end. Every subcommand prints one JSON object carrying
//! `"schema": "1"`; keys are emitted in sorted order so output is
//! byte-deterministic.
//!
//! Exit codes: 0 on success, 1 on a domain error raised by a computation,
//! 2 on a usage error (bad flags or unparsable flag values).

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::parse::{parse_point, parse_point_set, parse_rational, parse_witt_literal};
use crate::algebra::rational::{PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::algebra::unit::PrincipalUnit;
use crate::artin_hasse::{decompose_unit, slots};
use crate::conductor::{conductor_at, Factor, FactorData, GroupSpec};
use crate::curve::Modulus;
use crate::error::Error;
use crate::localsym::{self, SymbolOptions};
use crate::modulus::{
    alpha_p_modulus, asw_modulus, kummer_modulus, local_local_modulus, minimal_modulus, GlobalTorsorClass,
    ModulusResult,
};
use crate::structure::{frobenius_kernel_exponent, jacobian_report, mult_part_report, pro_p_report, uni_ab_factors};
use crate::witt::{self, WittVector};

pub const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "ramify",
    version,
    about = "Exact ramification invariants of torsors over curves in characteristic p"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Characteristic (a prime).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Degree of the coefficient field F_{p^d}.
    #[arg(long, global = true, default_value_t = 1)]
    d: u32,
    /// Modulus of F_{p^d} over F_p as coefficients, constant term first
    /// (e.g. "1,1,1" for t^2+t+1); defaults to the first irreducible one.
    #[arg(long = "field-modulus", global = true)]
    field_modulus: Option<String>,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Extra series terms beyond the computed precision bounds (expert).
    #[arg(long = "precision-override", global = true)]
    precision_override: Option<i64>,
    /// Maximum Witt length accepted (default 4).
    #[arg(long = "witt-cap", global = true)]
    witt_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Witt vector arithmetic over k'(x) or over Z.
    Witt {
        #[arg(long)]
        m: Option<usize>,
        /// add, sub, mul, neg, frobenius, verschiebung, ghost, unghost (int only)
        #[arg(long)]
        op: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        /// "field" (components in k'(x)) or "int" (components in Z).
        #[arg(long, default_value = "field")]
        ring: String,
    },
    /// Artin–Hasse decomposition of a principal unit modulo u^n.
    UnitDecompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        unit: String,
    },
    /// Schmid–Witt local symbol (f, g).
    Symbol {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Expand at this point of P^1; without it f and g are read in u.
        #[arg(long)]
        at: Option<String>,
    },
    /// Least n with f in fil_n W_m(k'((u))).
    FilLevel {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Local conductor of a class.
    Conductor {
        /// "Wm[F^r]", "alpha_p", "Z/p^m", "mu_n", or a product joined by '*'.
        #[arg(long)]
        group: String,
        /// Witt literal (or expression) per factor, separated by ';'.
        #[arg(long)]
        class: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Minimal modulus of a global class over P^1 minus S.
    Modulus {
        /// alpha_p, local-local, asw, kummer, or mixed
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        data: String,
        #[arg(long = "S")]
        s: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Structure of the generalized Jacobian J_{X,m}.
    Jacobian {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        prank: u64,
        #[arg(long)]
        modulus: String,
        /// Descriptor of J_X(k)_tor for the multiplicative-part report.
        #[arg(long)]
        torsion: Option<String>,
        /// Also report the order exponent of the F^n-kernel.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Factor list of the unipotent abelian fundamental group.
    UniAb {
        #[arg(long)]
        modulus: String,
    },
    /// Finite-level shape of the maximal pro-p quotient.
    ProP {
        #[arg(long)]
        modulus: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        prank: u64,
    },
    /// Run the built-in property suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base number of random cases per check.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(flag: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {}", flag, e))
}

/// Wraps errors from interpreting a flag value as usage errors.
trait FlagContext<T> {
    fn flag(self, flag: &str) -> CliResult<T>;
}

impl<T> FlagContext<T> for crate::error::Result<T> {
    fn flag(self, flag: &str) -> CliResult<T> {
        self.map_err(|e| usage(flag, e))
    }
}

struct Ctx {
    spec: Option<Arc<FieldSpec>>,
    opts: SymbolOptions,
}

impl Ctx {
    fn spec(&self) -> CliResult<&Arc<FieldSpec>> {
        self.spec
            .as_ref()
            .ok_or_else(|| CliError::Usage("--p: required for this subcommand".into()))
    }

    fn p(&self) -> CliResult<u64> {
        Ok(self.spec()?.p())
    }
}

fn build_spec(g: &GlobalArgs) -> CliResult<Option<Arc<FieldSpec>>> {
    let Some(p) = g.p else {
        if g.field_modulus.is_some() || g.d != 1 {
            return Err(CliError::Usage("--d/--field-modulus: need --p".into()));
        }
        return Ok(None);
    };
    let spec = match &g.field_modulus {
        Some(text) => {
            let coeffs = text
                .split(',')
                .map(|c| c.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| usage("--field-modulus", e))?;
            let spec = FieldSpec::extension(p, &coeffs).flag("--field-modulus")?;
            if g.d != 1 && spec.degree() != g.d {
                return Err(usage(
                    "--field-modulus",
                    format!("has degree {} but --d is {}", spec.degree(), g.d),
                ));
            }
            spec
        }
        None => FieldSpec::with_degree(p, g.d).flag("--p/--d")?,
    };
    Ok(Some(spec))
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let pretty = cli.global.pretty;
    match execute(cli) {
        Ok(mut v) => {
            if let Value::Object(map) = &mut v {
                map.insert("schema".into(), Value::String(SCHEMA.into()));
            }
            let mut code = 0;
            if v.get("passed") == Some(&Value::Bool(false)) {
                code = 1;
            }
            let text = if pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .expect("JSON values serialize");
            Outcome {
                code,
                stdout: text + "\n",
                stderr: String::new(),
            }
        }
        Err(CliError::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
        },
        Err(CliError::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {}\n", e),
        },
    }
}

fn execute(cli: Cli) -> CliResult<Value> {
    if let Some(cap) = cli.global.witt_cap {
        if cap == 0 {
            return Err(usage("--witt-cap", "must be at least 1"));
        }
        witt::set_length_cap(cap);
    }
    let opts = SymbolOptions {
        extra: cli.global.precision_override.unwrap_or(0),
        ..SymbolOptions::default()
    };
    if opts.extra < 0 {
        return Err(usage("--precision-override", "must be non-negative"));
    }
    let ctx = Ctx {
        spec: build_spec(&cli.global)?,
        opts,
    };
    match cli.cmd {
        Cmd::Witt { m, op, a, b, ring } => cmd_witt(&ctx, m, &op, &a, b.as_deref(), &ring),
        Cmd::UnitDecompose { n, unit } => cmd_unit_decompose(&ctx, n, &unit),
        Cmd::Symbol { m, f, g, at } => cmd_symbol(&ctx, m, &f, &g, at.as_deref()),
        Cmd::FilLevel { m, f, at } => cmd_fil_level(&ctx, m, &f, at.as_deref()),
        Cmd::Conductor { group, class, at } => cmd_conductor(&ctx, &group, &class, at.as_deref()),
        Cmd::Modulus {
            kind,
            data,
            s,
            group,
            m,
            n,
        } => cmd_modulus(&ctx, &kind, &data, &s, group.as_deref(), m, n),
        Cmd::Jacobian {
            genus,
            prank,
            modulus,
            torsion,
            n,
        } => cmd_jacobian(&ctx, genus, prank, &modulus, torsion.as_deref(), n),
        Cmd::UniAb { modulus } => {
            let m = parse_modulus(&ctx, &modulus)?;
            if m.is_zero() {
                return Err(usage("--modulus", "must be supported on a nonempty set"));
            }
            let factors = uni_ab_factors(ctx.p()?, &m);
            Ok(json!({ "factors": factors, "product": factors.join(" × ") }))
        }
        Cmd::ProP { modulus, n, prank } => {
            let m = parse_modulus(&ctx, &modulus)?;
            Ok(serde_json::to_value(pro_p_report(ctx.p()?, &m, n, prank)).expect("serializable"))
        }
        Cmd::Verify { seed, cases } => {
            let results = crate::verify::run_all(seed, cases);
            let passed = results.iter().all(|r| r.passed);
            Ok(json!({ "seed": seed, "checks": results, "passed": passed }))
        }
    }
}

fn parse_modulus(ctx: &Ctx, text: &str) -> CliResult<Modulus> {
    Modulus::parse(text, ctx.spec()?).flag("--modulus")
}

/// A Witt literal, or a bare expression read as a length-1 vector.
fn parse_witt_arg(ctx: &Ctx, text: &str, flag: &str, m: Option<usize>) -> CliResult<WittVector<RationalFunction>> {
    let spec = ctx.spec()?;
    let comps = if text.trim_start().starts_with('[') {
        parse_witt_literal(text, spec).flag(flag)?
    } else {
        vec![parse_rational(text, spec).flag(flag)?]
    };
    if let Some(m) = m {
        if comps.len() != m {
            return Err(usage(flag, format!("has {} components but --m is {}", comps.len(), m)));
        }
    }
    WittVector::new(spec.p(), comps).flag(flag)
}

fn point_arg(ctx: &Ctx, at: Option<&str>) -> CliResult<PointOfP1> {
    match at {
        Some(t) => parse_point(t, ctx.spec()?).flag("--at"),
        None => Ok(PointOfP1::Finite(FieldElement::zero(ctx.spec()?))),
    }
}

fn strings<T: std::fmt::Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// `c*u^k + ...` for the known terms of degree `<= upto`.
pub fn series_to_string(s: &LaurentSeries<FieldElement>, upto: i64) -> String {
    let mut parts = Vec::new();
    for (k, c) in s.terms() {
        if k > upto || c.is_zero() {
            continue;
        }
        let coeff = if c.is_compound() {
            format!("({})", c)
        } else {
            c.to_string()
        };
        let mono = match k {
            0 => None,
            1 => Some("u".to_string()),
            _ => Some(format!("u^{}", k)),
        };
        parts.push(match (mono, coeff.as_str()) {
            (None, _) => coeff,
            (Some(m), "1") => m,
            (Some(m), _) => format!("{}*{}", coeff, m),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn cmd_witt(ctx: &Ctx, m: Option<usize>, op: &str, a: &str, b: Option<&str>, ring: &str) -> CliResult<Value> {
    let binary = matches!(op, "add" | "sub" | "mul");
    if !binary && !matches!(op, "neg" | "frobenius" | "verschiebung" | "ghost" | "unghost") {
        return Err(usage("--op", format!("unknown operation '{}'", op)));
    }
    if binary != b.is_some() {
        return Err(usage(
            "--b",
            if binary {
                "required for binary operations"
            } else {
                "only for binary operations"
            },
        ));
    }
    if op == "unghost" && ring != "int" {
        return Err(usage("--op", "unghost needs --ring int"));
    }
    match ring {
        "field" => {
            let wa = parse_witt_arg(ctx, a, "--a", m)?;
            let wb = b.map(|t| parse_witt_arg(ctx, t, "--b", Some(wa.len()))).transpose()?;
            let out: Vec<RationalFunction> = match op {
                "add" => wa.add(wb.as_ref().unwrap())?.into_comps(),
                "sub" => wa.sub(wb.as_ref().unwrap())?.into_comps(),
                "mul" => wa.mul(wb.as_ref().unwrap())?.into_comps(),
                "neg" => wa.neg().into_comps(),
                "frobenius" => wa.frobenius()?.into_comps(),
                "verschiebung" => wa.verschiebung().into_comps(),
                _ => wa.ghost(),
            };
            Ok(json!({ "result": strings(&out) }))
        }
        "int" => {
            let p = ctx.p()?;
            let parse_int = |text: &str, flag: &str| -> CliResult<WittVector<BigInt>> {
                let inner = text
                    .trim()
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| usage(flag, "expected [a0, a1, ...]"))?;
                let comps = inner
                    .split(',')
                    .map(|c| c.trim().parse::<BigInt>().map_err(|e| usage(flag, e)))
                    .collect::<CliResult<Vec<_>>>()?;
                if let Some(m) = m {
                    if comps.len() != m {
                        return Err(usage(flag, format!("has {} components but --m is {}", comps.len(), m)));
                    }
                }
                WittVector::new(p, comps).flag(flag)
            };
            let wa = parse_int(a, "--a")?;
            let wb = b.map(|t| parse_int(t, "--b")).transpose()?;
            let out: Vec<BigInt> = match op {
                "add" => wa.add(wb.as_ref().unwrap())?.into_comps(),
                "sub" => wa.sub(wb.as_ref().unwrap())?.into_comps(),
                "mul" => wa.mul(wb.as_ref().unwrap())?.into_comps(),
                "neg" => wa.neg().into_comps(),
                "frobenius" => wa.frobenius()?.into_comps(),
                "verschiebung" => wa.verschiebung().into_comps(),
                "unghost" => WittVector::unghost(p, wa.comps())?.into_comps(),
                _ => wa.ghost(),
            };
            Ok(json!({ "result": strings(&out) }))
        }
        other => Err(usage("--ring", format!("expected 'field' or 'int', got '{}'", other))),
    }
}

fn cmd_unit_decompose(ctx: &Ctx, n: usize, unit: &str) -> CliResult<Value> {
    let spec = ctx.spec()?;
    if n == 0 {
        return Err(usage("--n", "must be at least 1"));
    }
    let f = parse_rational(unit, spec).flag("--unit")?;
    if f.is_zero() {
        return Err(CliError::Domain(Error::NotUnit(unit.into())));
    }
    let s = f.laurent_expand(&PointOfP1::Finite(FieldElement::zero(spec)), n as i64);
    let v = PrincipalUnit::from_series(&s, n)?;
    let dec = decompose_unit(&v)?;
    let zero = FieldElement::zero(spec);
    let out: Vec<Value> = slots(spec.p(), n)
        .into_iter()
        .map(|(i, r)| {
            let comps = match dec.slots.get(&i) {
                Some(w) => strings(w.comps()),
                None => vec![zero.to_string(); r],
            };
            json!({ "i": i, "witt": comps })
        })
        .collect();
    Ok(json!({ "n": n, "slots": out }))
}

fn cmd_symbol(ctx: &Ctx, m: Option<usize>, f: &str, g: &str, at: Option<&str>) -> CliResult<Value> {
    let f = parse_witt_arg(ctx, f, "--f", m)?;
    let g = parse_rational(g, ctx.spec()?).flag("--g")?;
    let x = point_arg(ctx, at)?;
    let v = localsym::symbol_at(&f, &g, &x, &ctx.opts)?;
    Ok(json!({ "value": strings(v.comps()) }))
}

fn cmd_fil_level(ctx: &Ctx, m: Option<usize>, f: &str, at: Option<&str>) -> CliResult<Value> {
    let f = parse_witt_arg(ctx, f, "--f", m)?;
    let x = point_arg(ctx, at)?;
    let local = localsym::expand_witt_at(&f, &x, 2 * ctx.opts.scale, ctx.opts.extra)?;
    let level = localsym::fil_level_with(&local, &ctx.opts)?;
    Ok(json!({ "level": level }))
}

fn factor_data(ctx: &Ctx, factor: &Factor, text: &str, flag: &str) -> CliResult<FactorData> {
    match factor {
        Factor::Kummer { .. } => Ok(FactorData::Kummer(parse_rational(text, ctx.spec()?).flag(flag)?)),
        _ => Ok(FactorData::Witt(parse_witt_arg(ctx, text, flag, factor.witt_length())?)),
    }
}

fn split_data<'a>(group: &GroupSpec, text: &'a str, flag: &str) -> CliResult<Vec<&'a str>> {
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    if parts.len() != group.factors.len() {
        return Err(usage(
            flag,
            format!(
                "{} data items for {} group factors (separate with ';')",
                parts.len(),
                group.factors.len()
            ),
        ));
    }
    Ok(parts)
}

fn cmd_conductor(ctx: &Ctx, group: &str, class: &str, at: Option<&str>) -> CliResult<Value> {
    let p = ctx.p()?;
    let group = GroupSpec::parse(group, p).flag("--group")?;
    let x = point_arg(ctx, at)?;
    let mut factors = Vec::new();
    let mut total = 0;
    for (factor, text) in group.factors.iter().zip(split_data(&group, class, "--class")?) {
        let data = factor_data(ctx, factor, text, "--class")?;
        let c = conductor_at(factor, &data, &x, &ctx.opts)?;
        total = total.max(c.conductor);
        let reduced = c
            .reduced
            .as_ref()
            .map(|w| w.comps().iter().map(|s| series_to_string(s, 0)).collect::<Vec<_>>());
        factors.push(json!({ "group": factor.to_string(), "conductor": c.conductor, "reduced": reduced }));
    }
    let mut out = json!({ "conductor": total });
    if factors.len() == 1 {
        out["reduced"] = factors[0]["reduced"].clone();
    } else {
        out["factors"] = Value::Array(factors);
    }
    Ok(out)
}

fn modulus_json(m: &Modulus) -> Value {
    Value::Array(
        m.iter()
            .map(|(x, n)| json!({ "point": x.to_string(), "multiplicity": n }))
            .collect(),
    )
}

fn cmd_modulus(
    ctx: &Ctx,
    kind: &str,
    data: &str,
    s: &str,
    group: Option<&str>,
    m: Option<usize>,
    n: Option<u64>,
) -> CliResult<Value> {
    let spec = ctx.spec()?;
    let p = spec.p();
    let s = parse_point_set(s, spec).flag("--S")?;
    let reject = |flag: &str, present: bool| -> CliResult<()> {
        if present {
            Err(usage(flag, format!("not used with --type {}", kind)))
        } else {
            Ok(())
        }
    };
    let group = match kind {
        "alpha_p" => {
            reject("--group", group.is_some())?;
            reject("--n", n.is_some())?;
            GroupSpec::new(p, vec![Factor::LocalLocal { m: 1, r: 1 }]).flag("--type")?
        }
        "local-local" => {
            reject("--n", n.is_some())?;
            let g = GroupSpec::parse(group.unwrap_or("alpha_p"), p).flag("--group")?;
            if !g.is_local_local() {
                return Err(usage("--group", "must be local-local for --type local-local"));
            }
            g
        }
        "asw" => {
            reject("--group", group.is_some())?;
            reject("--n", n.is_some())?;
            GroupSpec::new(p, vec![Factor::EtaleAsw { m: m.unwrap_or(1) }]).flag("--m")?
        }
        "kummer" => {
            reject("--group", group.is_some())?;
            reject("--m", m.is_some())?;
            let n = n.ok_or_else(|| usage("--n", "required for --type kummer"))?;
            GroupSpec::new(p, vec![Factor::Kummer { n }]).flag("--n")?
        }
        "mixed" => {
            GroupSpec::parse(group.ok_or_else(|| usage("--group", "required for --type mixed"))?, p).flag("--group")?
        }
        other => {
            return Err(usage(
                "--type",
                format!("expected alpha_p, local-local, asw, kummer or mixed, got '{}'", other),
            ))
        }
    };
    if kind == "local-local" {
        if let Some(m) = m {
            if group.factors.iter().any(|f| f.witt_length() != Some(m)) {
                return Err(usage("--m", "does not match the group"));
            }
        }
    }
    let items = group
        .factors
        .iter()
        .zip(split_data(&group, data, "--data")?)
        .map(|(f, t)| factor_data(ctx, f, t, "--data"))
        .collect::<CliResult<Vec<_>>>()?;
    let class = GlobalTorsorClass::new(group, items, s, spec)?;
    let result = match kind {
        "alpha_p" => alpha_p_modulus(&class)?,
        "local-local" => local_local_modulus(&class, &ctx.opts)?,
        "asw" => asw_modulus(&class, &ctx.opts)?,
        "kummer" => kummer_modulus(&class)?,
        _ => ModulusResult {
            modulus: minimal_modulus(&class, &ctx.opts)?,
            trivial: None,
        },
    };
    Ok(json!({ "modulus": modulus_json(&result.modulus), "trivial": result.trivial }))
}

fn cmd_jacobian(
    ctx: &Ctx,
    genus: u64,
    prank: u64,
    modulus: &str,
    torsion: Option<&str>,
    n: Option<u64>,
) -> CliResult<Value> {
    let p = ctx.p()?;
    if prank > genus {
        return Err(usage("--prank", "cannot exceed --genus"));
    }
    let m = parse_modulus(ctx, modulus)?;
    let report = jacobian_report(p, genus, prank, &m);
    let mut out = serde_json::to_value(&report).expect("serializable");
    let default_torsion = if genus == 0 { "trivial" } else { "J_X(k)_tor" };
    out["mult_part"] = json!(mult_part_report(m.support().len(), torsion.unwrap_or(default_torsion)));
    if let Some(n) = n {
        out["frobenius_kernel_exponent"] = json!(frobenius_kernel_exponent(p, genus, &m, n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &str) -> Value {
        let argv = std::iter::once("ramify").chain(args.split_whitespace());
        let out = run(argv);
        assert_eq!(out.code, 0, "{}: {}", args, out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn series_formatting() {
        let k = FieldSpec::prime(3).unwrap();
        let s = parse_rational("2/u^2 + 1/u + 1 + u", &k)
            .unwrap()
            .laurent_expand(&PointOfP1::Finite(FieldElement::zero(&k)), 10);
        assert_eq!(series_to_string(&s, 0), "2*u^-2 + u^-1 + 1");
    }

    #[test]
    fn schema_key_is_present() {
        let v = run_ok("uni-ab --p 2 --modulus 0:4,1:1");
        assert_eq!(v["schema"], "1");
        assert_eq!(v["product"], "Z_p^1 × W[F^2] × W[F^1]");
    }
}
