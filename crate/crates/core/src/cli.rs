//! Batch front end. Every command yields ordered (key, value) records plus a
//! report; output is text or tab-separated `command key value` records.

use crate::classes;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::exterior;
use crate::presets::{self, CalculusKind, ChernConvention};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::universal::{AdTilde, Omega, OmegaStar, SigmaAlgebra};
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;

#[derive(Parser, Debug)]
#[command(name = "qweil", version, about = "Universal characteristic classes of bicovariant calculi")]
pub struct Cli {
    /// Built-in preset name, preset file, or name under $QWEIL_PRESET_DIR.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Wedge,
    Vee,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Signed,
    Exponential,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the presentation, calculus and representation validators.
    Validate { preset: Option<String> },
    /// dim Γ^∨k and dim Γ_inv^∧k, with the antisymmetrizer factorization checks.
    ExteriorDims {
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// dim H^k of Γ_inv^∧ or Γ^∨.
    GroupCohomology {
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// ℸ dimensions, H(ℸ) and representative cocycles.
    DalethCohomology {
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Generators of J_σ, dims of Σ and I(Σ), centrality of I(Σ).
    SigmaRelations {
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
    /// Δ^λ of an ad-invariant element.
    Chern {
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
    },
    /// Factorized Δ^λ(χ_u) against the three-term closed form.
    ChernCheckSumu2 {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
    },
    /// (e^k)∘[u^n] truncated at e^{k+order}.
    EulerAction {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Quantum Euler class of a representation with conjugation and braid data.
    EulerClass {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value = "1")]
        normalization: String,
    },
    /// H(Ω), H(Ω_*) and the Ω_* differential identities.
    OmegaCohomology {
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// 𝒦 = ker(Ω → Ω_*) checks and H(Ω_*).
    KIdealCheck {
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::ExteriorDims { .. } => "exterior-dims",
            Command::GroupCohomology { .. } => "group-cohomology",
            Command::DalethCohomology { .. } => "daleth-cohomology",
            Command::SigmaRelations { .. } => "sigma-relations",
            Command::Chern { .. } => "chern",
            Command::ChernCheckSumu2 { .. } => "chern-check-sumu2",
            Command::EulerAction { .. } => "euler-action",
            Command::EulerClass { .. } => "euler-class",
            Command::OmegaCohomology { .. } => "omega-cohomology",
            Command::KIdealCheck { .. } => "k-ideal-check",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub records: Vec<(String, String)>,
    pub report: Report,
}

impl Outcome {
    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn render(&self, command: &str, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.records {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                out.push_str(&self.report.to_string());
            }
            Format::Records => {
                for (k, v) in &self.records {
                    out.push_str(&format!("{command}\t{k}\t{v}\n"));
                }
                for c in &self.report.checks {
                    let status = if c.passed { "pass" } else { "fail" };
                    out.push_str(&format!("{command}\tcheck:{}\t{status}: {}\n", c.name, c.detail));
                }
            }
        }
        out
    }
}

fn dims(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn kind_of(ctx: &Context, k: Option<Kind>) -> CalculusKind {
    match k {
        Some(Kind::Wedge) => CalculusKind::Wedge,
        Some(Kind::Vee) => CalculusKind::Vee,
        None => ctx.options.calculus_kind,
    }
}

fn convention_of(ctx: &Context, c: Option<Convention>) -> ChernConvention {
    match c {
        Some(Convention::Signed) => ChernConvention::Signed,
        Some(Convention::Exponential) => ChernConvention::Exponential,
        None => ctx.options.chern_convention,
    }
}

fn kind_name(k: CalculusKind) -> &'static str {
    match k {
        CalculusKind::Wedge => "wedge",
        CalculusKind::Vee => "vee",
    }
}

fn bounded(what: &str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        return Err(Error::Compute(format!("{what} {value} exceeds the preset degree bound {bound}")));
    }
    Ok(())
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let mut o = Outcome::default();
    let default_preset = match cli.command {
        Command::ChernCheckSumu2 { .. } => "sumu2-4d",
        _ => "u1",
    };
    let preset_name = match &cli.command {
        Command::Validate { preset: Some(p) } => p.as_str(),
        _ => cli.preset.as_deref().unwrap_or(default_preset),
    };
    if let Command::Validate { .. } = cli.command {
        let ctx = presets::load_unchecked(preset_name)?;
        o.put("preset", &ctx.name);
        o.report = presets::validate(&ctx, cli.seed);
        return Ok(o);
    }
    if let Command::EulerAction { k, n, order } = cli.command {
        for (p, c) in classes::euler_action_series(k, n, order) {
            o.put(format!("e^{p}"), c);
        }
        return Ok(o);
    }
    let ctx = presets::load(preset_name)?;
    let bound = ctx.options.degree_bound;
    o.put("preset", &ctx.name);
    match &cli.command {
        Command::ExteriorDims { max } => {
            bounded("--max", *max, bound)?;
            let n = ctx.dim();
            o.put("vee", dims(&exterior::exterior_dims(&ctx.calc, *max)));
            o.put("envelope", dims(&exterior::envelope_model(&ctx.calc, *max).dims()));
            o.report = exterior::factorization_report(ctx.calc.sigma(), n, *max, (*max).min(3));
        }
        Command::GroupCohomology { max, kind } => {
            bounded("--max", max + 1, bound)?;
            let k = kind_of(&ctx, *kind);
            let model = exterior::model(&ctx.calc, k, max + 1);
            o.put("kind", kind_name(k));
            o.put("cohomology", dims(&exterior::group_cohomology(&model)?));
            o.report.record("d-squared", exterior::d_squared_zero(&model), format!("through degree {}", max + 1));
        }
        Command::DalethCohomology { max, kind } => {
            bounded("--max", max + 1, bound)?;
            let k = kind_of(&ctx, *kind);
            let ad = AdTilde::new(ctx.calc.clone(), k, max + 1);
            let h = ad.daleth_cohomology(*max);
            o.put("kind", kind_name(k));
            o.put("daleth", dims(&h.iter().map(|d| d.dim).collect::<Vec<_>>()));
            o.put("cohomology", dims(&h.iter().map(|d| d.cohomology).collect::<Vec<_>>()));
            let names = ctx.calc.basis_names();
            for d in &h {
                for (i, r) in d.representatives.iter().enumerate() {
                    o.put(format!("representative {} {i}", d.degree), ad.omega().format(r, names));
                }
            }
            o.report = ad.check((*max).min(3));
        }
        Command::SigmaRelations { max } => {
            bounded("--max", *max, bound)?;
            for (i, r) in crate::universal::sigma_relations(&ctx.calc).iter().enumerate() {
                o.put(format!("relation {i}"), ctx.calc.format_tensor(r, 2));
            }
            let sigma = SigmaAlgebra::new(ctx.calc.clone(), 2 * max);
            o.put("sigma", dims(&sigma.dims()[..=*max]));
            o.put("invariant", dims(&(0..=*max).map(|s| sigma.invariants(s).len()).collect::<Vec<_>>()));
            o.report = sigma.centrality(*max, *max);
        }
        Command::Chern { element, order, convention } => {
            bounded("--order", *order, bound)?;
            let a = ctx.alg.parse(element)?;
            let conv = convention_of(&ctx, *convention);
            let sigma = SigmaAlgebra::new(ctx.calc.clone(), *order);
            let s = classes::chern_series(&sigma, &a, *order, conv)?;
            o.put("convention", format!("{conv:?}").to_lowercase());
            for (n, c) in s.format(&sigma).into_iter().enumerate() {
                o.put(format!("c_{n}"), c);
            }
        }
        Command::ChernCheckSumu2 { order, convention } => {
            bounded("--order", *order, bound)?;
            let rep = ctx
                .representation("fund")
                .ok_or_else(|| Error::Compute(format!("preset {} has no representation fund", ctx.name)))?;
            let conv = convention_of(&ctx, *convention);
            let (report, lines) = classes::factorized_chern_check(&ctx.calc, rep, *order, conv)?;
            o.put("convention", format!("{conv:?}").to_lowercase());
            for (n, l) in lines.into_iter().enumerate() {
                o.put(format!("c_{n}"), l.split_once(": ").map(|x| x.1.to_string()).unwrap_or(l));
            }
            o.report = report;
        }
        Command::EulerClass { rep, normalization } => {
            let r = ctx
                .representation(rep)
                .ok_or_else(|| Error::Compute(format!("preset {} has no representation {rep}", ctx.name)))?;
            let norm = Scalar::parse(normalization)?;
            let e = classes::quantum_euler_class(&ctx.calc, r, &norm)?;
            let sigma = SigmaAlgebra::new(ctx.calc.clone(), e.top_degree / 2);
            o.put("exterior", dims(&e.dims));
            o.put("top-degree", e.top_degree);
            o.put("volume", ctx_tensor(r.u.len(), &e.volume, e.top_degree));
            o.put("determinant", ctx.alg.format(&e.determinant));
            o.put("class", sigma.format(&e.class, e.top_degree / 2));
        }
        Command::OmegaCohomology { max } => {
            bounded("--max", max + 2, bound)?;
            let h = Omega::new(ctx.dim()).cohomology(*max)?;
            o.put("omega", dims(&h));
            let acyclic = h.iter().enumerate().all(|(k, &d)| d == usize::from(k == 0));
            o.report.record("omega-acyclic", acyclic, format!("H(Ω) = {h:?}"));
            let os = OmegaStar::new(ctx.calc.clone(), max + 2);
            o.put("omega-star", dims(&os.dims_upto(*max)));
            o.put("omega-star-cohomology", dims(&os.cohomology(*max)?));
            o.report.merge(os.check_identities(*max)?);
        }
        Command::KIdealCheck { max } => {
            bounded("--max", max + 1, bound)?;
            let os = OmegaStar::new(ctx.calc.clone(), max + 1);
            let (report, h) = os.k_ideal_check(*max)?;
            o.put("omega-star-cohomology", dims(&h));
            o.report = report;
        }
        Command::Validate { .. } | Command::EulerAction { .. } => unreachable!("handled above"),
    }
    Ok(o)
}

/// e_{i1}⊗…⊗e_{ik} in 1-based labels.
fn ctx_tensor(d: usize, v: &crate::gla::FinVector, k: usize) -> String {
    crate::scalar::format_combination(v.entries().iter().map(|(idx, c)| {
        let legs: Vec<String> =
            crate::calculus::digits(*idx, d, k).iter().map(|i| format!("e{}", i + 1)).collect();
        (legs.join("@"), c)
    }))
}

/// Parses, runs and renders; returns the exit code and the text for stdout
/// and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let name = cli.command.name();
    match execute(&cli) {
        Ok(o) => {
            let code = if o.report.passed() { 0 } else { 1 };
            (code, o.render(name, cli.format), String::new())
        }
        Err(e @ (Error::PresetNotFound(_) | Error::Parse(_))) => (2, String::new(), format!("error: {e}\n")),
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}
