//! Command-line front end. Every command prints one JSON `CommandReport` on
//! stdout; errors print a JSON object on stderr and exit with
//! [`Error::code`]. A failed verdict exits with 1.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{facets, is_nonresonant, parse_rat, span_mixedness, IntMatrix, Rat, RatVector};
use crate::groebner::{groebner_weyl, BasisStatus, MembershipVerdict, TermOrder};
use crate::json::{self as js, to_text};
use crate::mgraph::{annihilates, bounded_representatives, box_points, lattice_ideal_generators, lattice_polynomial_solutions};
use crate::series::{annihilation_check, density, gamma_series_seeded, monomial_substitution, recurrence_series, Overall, WindowVerdict};
use crate::systems::{block_decompositions, horn_system, hypergeometric_system, toral_component_ideal, toric_ideal, ComponentClass, SystemSpec};
use crate::weyl::{a_degree_components, WeylOperator};
use crate::example;

#[derive(Parser, Debug)]
#[command(name = "dhyper", version, about = "Exact workbench for A-hypergeometric and Horn systems")]
pub struct Cli {
    /// Write result payloads as JSON files into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Facet normals of the cone over the columns of A.
    Facets(MatrixA),
    /// Checks that beta avoids every facet's resonance condition.
    Nonresonant(AhypArgs),
    /// Reduced degrevlex basis of the toric ideal of A.
    Toric(MatrixA),
    /// The A-hypergeometric system.
    Ahyp(AhypArgs),
    /// The Horn system of B.
    Horn(HornArgs),
    /// Block decompositions of B, optionally with toral component checks.
    Components(ComponentArgs),
    /// M-subgraph analysis.
    #[command(subcommand)]
    Mgraph(MgraphCommand),
    /// Gamma-series solution of the A-hypergeometric system.
    Gamma(GammaArgs),
    /// Weyl Gröbner membership certificate.
    Membership(MembershipArgs),
    /// Checks that generators annihilate a truncated series.
    Annihilate(AnnihilateArgs),
    /// Runs the Erdélyi-type worked example end to end.
    ExampleErdelyi(ExampleArgs),
    /// System construction commands.
    #[command(subcommand)]
    Systems(SystemsCommand),
}

#[derive(Subcommand, Debug)]
pub enum MgraphCommand {
    /// Components of the M-graph inside the cap box.
    Components(MgraphArgs),
}

#[derive(Subcommand, Debug)]
pub enum SystemsCommand {
    BuildAhyp(AhypArgs),
    BuildHorn(HornArgs),
    Components(ComponentArgs),
}

#[derive(Args, Debug)]
pub struct MatrixA {
    /// Matrix as a JSON file or inline JSON.
    #[arg(long = "A")]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct AhypArgs {
    #[arg(long = "A")]
    pub a: String,
    /// Comma-separated rationals, e.g. "-11/6,-5/3".
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct HornArgs {
    #[arg(long = "B")]
    pub b: String,
    /// Optional A with AB = 0; the saturated complement of B otherwise.
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct ComponentArgs {
    #[arg(long = "B")]
    pub b: String,
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Box for unbounded monomials.
    #[arg(long, default_value_t = 10)]
    pub cap: u32,
    /// Gröbner degree cap for the inclusion checks.
    #[arg(long, default_value_t = 10)]
    pub gb_cap: u32,
}

#[derive(Args, Debug)]
pub struct MgraphArgs {
    #[arg(long = "M")]
    pub m: String,
    #[arg(long, default_value_t = 12)]
    pub cap: u32,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(long = "A")]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Starting exponent with Av = beta.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub radius: u32,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Generators as JSON (a list of operators).
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long = "A")]
    pub a: Option<String>,
    /// With B the Horn system is used, otherwise the A-hypergeometric one.
    #[arg(long = "B")]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Operator as JSON.
    #[arg(long)]
    pub op: String,
    #[arg(long, default_value_t = 10)]
    pub cap: u32,
    /// degrevlex, lex or weights:w1,...,w2n.
    #[arg(long, default_value = "degrevlex")]
    pub order: String,
}

#[derive(Args, Debug)]
pub struct AnnihilateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Series as JSON.
    #[arg(long)]
    pub series: String,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long = "a-prime", default_value = "1/3", allow_hyphen_values = true)]
    pub a_prime: String,
    #[arg(long, default_value_t = 8)]
    pub radius: u32,
    #[arg(long, default_value_t = 10)]
    pub cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub seed: u64,
    pub verdicts: Vec<VerdictLine>,
    pub results: BTreeMap<String, Value>,
    pub artifacts: Vec<String>,
    pub exit_code: i32,
}

impl CommandReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn verdict(&self, name: &str) -> Option<&VerdictLine> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

struct Ctx {
    hasher: Sha256,
    verdicts: Vec<VerdictLine>,
    results: BTreeMap<String, Value>,
    seed: u64,
}

impl Ctx {
    fn input(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update(label.as_bytes());
        self.hasher.update([0]);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn load(&mut self, label: &str, arg: &str) -> Result<Value> {
        let trimmed = arg.trim_start();
        let bytes = if trimmed.starts_with('{') || trimmed.starts_with('[') {
            arg.as_bytes().to_vec()
        } else {
            std::fs::read(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?
        };
        self.input(label, &bytes);
        Ok(serde_json::from_slice(&bytes)?)
    }

    fn matrix(&mut self, label: &str, arg: &str) -> Result<IntMatrix> {
        js::matrix_from_json(&self.load(label, arg)?)
    }

    fn vector(&mut self, label: &str, arg: &str) -> Result<RatVector> {
        self.input(label, arg.as_bytes());
        RatVector::parse(arg)
    }

    fn scalar(&mut self, label: &str, arg: &str) -> Result<Rat> {
        self.input(label, arg.as_bytes());
        parse_rat(arg)
    }

    fn verdict(&mut self, name: &str, pass: bool, detail: Value) {
        self.verdicts.push(VerdictLine { name: name.into(), pass, detail });
    }

    fn result(&mut self, name: &str, value: Value) {
        self.results.insert(name.into(), value);
    }
}

/// `DHYPER_SEED`, or 0.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var("DHYPER_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("DHYPER_SEED must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn parse_order(s: &str) -> Result<TermOrder> {
    match s {
        "degrevlex" => Ok(TermOrder::Degrevlex),
        "lex" => Ok(TermOrder::Lex),
        _ => match s.strip_prefix("weights:") {
            Some(w) => Ok(TermOrder::Weighted(
                w.split(',')
                    .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("invalid weight {x:?}"))))
                    .collect::<Result<_>>()?,
            )),
            None => Err(Error::Parse(format!("unknown term order {s:?}"))),
        },
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Result<CommandReport>
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(|e| Error::Parse(e.to_string()))?;
    run(&cli, args.into_iter().skip(1).collect(), seed_from_env()?)
}

pub fn run(cli: &Cli, echo: Vec<String>, seed: u64) -> Result<CommandReport> {
    let mut ctx = Ctx { hasher: Sha256::new(), verdicts: Vec::new(), results: BTreeMap::new(), seed };
    ctx.input("seed", &seed.to_le_bytes());
    match &cli.command {
        Command::Facets(x) => cmd_facets(&mut ctx, x)?,
        Command::Nonresonant(x) => cmd_nonresonant(&mut ctx, x)?,
        Command::Toric(x) => cmd_toric(&mut ctx, x)?,
        Command::Ahyp(x) | Command::Systems(SystemsCommand::BuildAhyp(x)) => cmd_ahyp(&mut ctx, x)?,
        Command::Horn(x) | Command::Systems(SystemsCommand::BuildHorn(x)) => cmd_horn(&mut ctx, x)?,
        Command::Components(x) | Command::Systems(SystemsCommand::Components(x)) => cmd_components(&mut ctx, x)?,
        Command::Mgraph(MgraphCommand::Components(x)) => cmd_mgraph(&mut ctx, x)?,
        Command::Gamma(x) => cmd_gamma(&mut ctx, x)?,
        Command::Membership(x) => cmd_membership(&mut ctx, x)?,
        Command::Annihilate(x) => cmd_annihilate(&mut ctx, x)?,
        Command::ExampleErdelyi(x) => cmd_example(&mut ctx, x)?,
    }
    let mut artifacts = Vec::new();
    let mut results = std::mem::take(&mut ctx.results);
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir)?;
        for (name, value) in &results {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, to_text(value))?;
            artifacts.push(path.display().to_string());
        }
        results.clear();
    }
    let exit_code = if ctx.verdicts.iter().all(|v| v.pass) { 0 } else { 1 };
    Ok(CommandReport {
        command: echo,
        inputs_digest: hex::encode(ctx.hasher.finalize()),
        seed: ctx.seed,
        verdicts: ctx.verdicts,
        results,
        artifacts,
        exit_code,
    })
}

/// Entry point for the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let outcome = seed_from_env().and_then(|seed| run(&cli, args.into_iter().skip(1).collect(), seed));
    match outcome {
        Ok(report) => {
            print!("{}", to_text(&report.to_json()));
            report.exit_code
        }
        Err(e) => {
            eprint!("{}", to_text(&json!({"error": e.to_string(), "exit_code": e.code()})));
            e.code()
        }
    }
}

fn cmd_facets(ctx: &mut Ctx, x: &MatrixA) -> Result<()> {
    let a = ctx.matrix("A", &x.a)?;
    let fs = facets(&a)?;
    let supporting = fs.iter().all(|f| {
        a.columns().iter().enumerate().all(|(j, col)| {
            let v = f.eval_int(col);
            if f.sigma.contains(&j) {
                v == Rat::from_integer(0.into())
            } else {
                v > Rat::from_integer(0.into())
            }
        })
    });
    ctx.verdict("facets_support_cone", supporting, json!({"count": fs.len()}));
    ctx.result("facets", Value::Array(fs.iter().map(js::facet_json).collect()));
    Ok(())
}

fn cmd_nonresonant(ctx: &mut Ctx, x: &AhypArgs) -> Result<()> {
    let a = ctx.matrix("A", &x.a)?;
    let beta = ctx.vector("beta", &x.beta)?;
    let res = is_nonresonant(&a, &beta)?;
    let detail = match res.violating_facet() {
        Some(f) => json!({"violating_facet": js::facet_json(f), "value": js::rat_json(&f.eval(&beta.0))}),
        None => json!({}),
    };
    ctx.verdict("nonresonant", res.is_nonresonant(), detail);
    ctx.result(
        "facet_values",
        Value::Array(
            res.facets
                .iter()
                .zip(&res.values)
                .map(|(f, v)| json!({"facet": js::facet_json(f), "value": js::rat_json(v)}))
                .collect(),
        ),
    );
    Ok(())
}

fn cmd_toric(ctx: &mut Ctx, x: &MatrixA) -> Result<()> {
    let a = ctx.matrix("A", &x.a)?;
    let ideal = toric_ideal(&a)?;
    ctx.verdict("groebner_basis_verified", ideal.verify(), json!({"size": ideal.basis().len()}));
    ctx.result("toric_ideal", Value::Array(ideal.basis().iter().map(js::d_poly_json).collect()));
    Ok(())
}

fn homogeneity(ctx: &mut Ctx, a: &IntMatrix, sys: &SystemSpec) -> Result<()> {
    let mut bad = Vec::new();
    for g in sys.generators() {
        if a_degree_components(a, &g)?.len() > 1 {
            bad.push(g.to_string());
        }
    }
    ctx.verdict("generators_homogeneous", bad.is_empty(), json!({"inhomogeneous": bad}));
    Ok(())
}

fn cmd_ahyp(ctx: &mut Ctx, x: &AhypArgs) -> Result<()> {
    let a = ctx.matrix("A", &x.a)?;
    let beta = ctx.vector("beta", &x.beta)?;
    let sys = hypergeometric_system(&a, &beta)?;
    homogeneity(ctx, &a, &sys)?;
    ctx.result("system", js::system_json(&sys));
    Ok(())
}

fn horn_from(ctx: &mut Ctx, b: &str, a: Option<&str>, beta: &str) -> Result<SystemSpec> {
    let b = ctx.matrix("B", b)?;
    let a = a.map(|s| ctx.matrix("A", s)).transpose()?;
    let beta = ctx.vector("beta", beta)?;
    horn_system(&b, &beta, a.as_ref())
}

fn cmd_horn(ctx: &mut Ctx, x: &HornArgs) -> Result<()> {
    let sys = horn_from(ctx, &x.b, x.a.as_deref(), &x.beta)?;
    let toric = toric_ideal(&sys.a)?;
    let outside: Vec<String> = sys
        .binomials
        .iter()
        .filter(|g| g.to_d_poly().is_none_or(|p| !toric.contains(&p)))
        .map(|g| g.to_string())
        .collect();
    ctx.verdict("binomials_in_toric_ideal", outside.is_empty(), json!({"outside": outside}));
    homogeneity(ctx, &sys.a.clone(), &sys)?;
    ctx.result("system", js::system_json(&sys));
    Ok(())
}

fn cmd_components(ctx: &mut Ctx, x: &ComponentArgs) -> Result<()> {
    let b = ctx.matrix("B", &x.b)?;
    let mixed = span_mixedness(&b);
    ctx.verdict("span_mixed", mixed.is_mixed() && mixed.verify(&b), json!({}));
    let decs = block_decompositions(&b);
    ctx.result("decompositions", Value::Array(decs.iter().map(js::decomposition_json).collect()));
    let Some(beta) = &x.beta else { return Ok(()) };
    let horn = horn_from(ctx, &x.b, x.a.as_deref(), beta)?;
    let mut ideals = Vec::new();
    for dec in decs.iter().filter(|d| d.class == ComponentClass::Toral) {
        let label: Vec<String> = dec.jbar.iter().map(|j| (j + 1).to_string()).collect();
        let name = format!("horn_in_component_{{{}}}", label.join(","));
        let comp = toral_component_ideal(&horn.a, &b, dec, &horn.beta, x.cap)?;
        let gb = groebner_weyl(&comp.generators(), TermOrder::Degrevlex, x.gb_cap)?;
        let leftover: Vec<String> =
            horn.generators().iter().filter(|g| !gb.normal_form(g).is_zero()).map(|g| g.to_string()).collect();
        ctx.verdict(&name, leftover.is_empty(), json!({"basis_status": gb.status.name(), "nonzero": leftover}));
        ideals.push(js::system_json(&comp));
    }
    ctx.result("toral_components", Value::Array(ideals));
    Ok(())
}

fn cmd_mgraph(ctx: &mut Ctx, x: &MgraphArgs) -> Result<()> {
    let m = ctx.matrix("M", &x.m)?;
    ctx.input("cap", &x.cap.to_le_bytes());
    let reps = bounded_representatives(&m, x.cap);
    let ops = lattice_ideal_generators(&m);
    let mut solutions = Vec::new();
    let mut all_annihilated = true;
    for c in reps.bounded() {
        let g = lattice_polynomial_solutions(&m, c)?;
        all_annihilated &= annihilates(&ops, &g);
        solutions.push(json!({"representative": c.representative, "solution": js::d_poly_json(&g)}));
    }
    let mut seen = std::collections::BTreeSet::new();
    let disjoint = reps.components.iter().flat_map(|c| &c.vertices).all(|p| seen.insert(p.clone()));
    let covers = box_points(m.rows(), x.cap).iter().all(|p| seen.contains(p));
    ctx.verdict("components_partition_box", disjoint && covers, json!({"points": seen.len()}));
    ctx.verdict("solutions_annihilated", all_annihilated, json!({"count": solutions.len()}));
    let open: Vec<&Vec<i64>> = reps.components.iter().filter(|c| !c.is_resolved()).map(|c| &c.representative).collect();
    ctx.verdict("all_components_resolved", reps.complete, json!({"unresolved": open}));
    ctx.result("components", Value::Array(reps.components.iter().map(js::component_json).collect()));
    ctx.result("solutions", Value::Array(solutions));
    Ok(())
}

fn window_detail(gens: &[WeylOperator], verdicts: &[WindowVerdict]) -> Value {
    Value::Array(
        gens.iter()
            .zip(verdicts)
            .map(|(g, v)| json!({"operator": g.to_string(), "verdict": js::window_verdict_json(v)}))
            .collect(),
    )
}

fn annihilation_verdict(ctx: &mut Ctx, name: &str, gens: &[WeylOperator], f: &crate::series::PuiseuxSeries) -> Result<()> {
    let report = annihilation_check(gens, f)?;
    ctx.verdict(name, report.overall() == Overall::Pass, window_detail(gens, &report.verdicts));
    Ok(())
}

fn cmd_gamma(ctx: &mut Ctx, x: &GammaArgs) -> Result<()> {
    let a = ctx.matrix("A", &x.a)?;
    let beta = ctx.vector("beta", &x.beta)?;
    let v = x.v.as_deref().map(|s| ctx.vector("v", s)).transpose()?;
    ctx.input("radius", &x.radius.to_le_bytes());
    let g = gamma_series_seeded(&a, &beta, v.as_ref(), x.radius, ctx.seed)?;
    let d = density(&g.series);
    ctx.verdict("density_one", d.is_one(), json!({"density": js::rat_json(&d)}));
    let sys = hypergeometric_system(&a, &beta)?;
    annihilation_verdict(ctx, "annihilated", &sys.generators(), &g.series)?;
    ctx.result("series", js::series_json(&g.series));
    ctx.result("gamma_meta", json!({"attempts": g.attempts, "warnings": g.warnings}));
    Ok(())
}

fn generators(ctx: &mut Ctx, s: &SystemArgs) -> Result<Vec<WeylOperator>> {
    if let Some(g) = &s.gens {
        return js::operators_from_json(&ctx.load("gens", g)?);
    }
    let beta = s.beta.as_deref().ok_or_else(|| Error::Parse("either --gens or --beta is required".into()))?;
    if let Some(b) = &s.b {
        return Ok(horn_from(ctx, b, s.a.as_deref(), beta)?.generators());
    }
    let a = s.a.as_deref().ok_or_else(|| Error::Parse("--A or --B is required with --beta".into()))?;
    let a = ctx.matrix("A", a)?;
    let beta = ctx.vector("beta", beta)?;
    Ok(hypergeometric_system(&a, &beta)?.generators())
}

fn cmd_membership(ctx: &mut Ctx, x: &MembershipArgs) -> Result<()> {
    let gens = generators(ctx, &x.system)?;
    let op = js::operator_from_json(&ctx.load("op", &x.op)?)?;
    ctx.input("cap", &x.cap.to_le_bytes());
    ctx.input("order", x.order.as_bytes());
    let gb = groebner_weyl(&gens, parse_order(&x.order)?, x.cap)?;
    let cert = gb.membership(&op)?;
    ctx.verdict("certificate_replays", cert.replay(&gens, &op), json!({}));
    ctx.verdict(
        "decided",
        cert.verdict != MembershipVerdict::Inconclusive,
        json!({"verdict": cert.verdict.name(), "basis_status": gb.status.name()}),
    );
    ctx.result("certificate", js::certificate_json(&cert));
    Ok(())
}

fn cmd_annihilate(ctx: &mut Ctx, x: &AnnihilateArgs) -> Result<()> {
    let gens = generators(ctx, &x.system)?;
    let f = js::series_from_json(&ctx.load("series", &x.series)?)?;
    if gens.iter().any(|g| g.nvars() != f.nvars()) {
        return Err(Error::DimensionMismatch("operators and series have different numbers of variables".into()));
    }
    annihilation_verdict(ctx, "annihilated", &gens, &f)
}

fn cmd_example(ctx: &mut Ctx, x: &ExampleArgs) -> Result<()> {
    let a_par = ctx.scalar("a", &x.a)?;
    let a_prime = ctx.scalar("a_prime", &x.a_prime)?;
    ctx.input("radius", &x.radius.to_le_bytes());
    ctx.input("cap", &x.cap.to_le_bytes());
    let a = example::matrix_a();
    let b = example::matrix_b();
    let beta = example::beta(&a_par, &a_prime);
    let ahyp = hypergeometric_system(&a, &beta)?;
    let horn = horn_system(&b, &beta, Some(&a))?;
    let (ahyp_gens, horn_gens) = (ahyp.generators(), horn.generators());

    let g = recurrence_series(&example::ratios(&a_par, &a_prime), x.radius)?;
    let f = monomial_substitution(&g, &b, &example::v_prime(&a_par, &a_prime))?;
    annihilation_verdict(ctx, "series_annihilated_by_ahyp", &ahyp_gens, &f)?;
    annihilation_verdict(ctx, "series_annihilated_by_horn", &horn_gens, &f)?;

    let mono = example::puiseux_monomial(&a_par, &a_prime);
    annihilation_verdict(ctx, "monomial_annihilated_by_horn", &horn_gens, &mono)?;
    let report = annihilation_check(&ahyp_gens, &mono)?;
    let witness = ahyp_gens.iter().zip(&report.verdicts).find_map(|(g, v)| match v {
        WindowVerdict::Nonzero { exponent, coeff } => Some(json!({
            "operator": g.to_string(),
            "exponent": exponent.iter().map(js::rat_json).collect::<Vec<_>>(),
            "coeff": js::rat_json(coeff),
        })),
        _ => None,
    });
    ctx.verdict("monomial_not_annihilated_by_ahyp", witness.is_some(), witness.unwrap_or(Value::Null));

    let p = example::extra_operator();
    let gb_a = groebner_weyl(&ahyp_gens, TermOrder::Degrevlex, x.cap)?;
    let cert_a = gb_a.membership(&p)?;
    ctx.verdict(
        "extra_operator_in_ahyp",
        cert_a.verdict == MembershipVerdict::Member && cert_a.replay(&ahyp_gens, &p),
        json!({"verdict": cert_a.verdict.name(), "basis_status": gb_a.status.name()}),
    );
    let gb_h = groebner_weyl(&horn_gens, TermOrder::Degrevlex, x.cap)?;
    let cert_h = gb_h.membership(&p)?;
    ctx.verdict(
        "extra_operator_not_in_horn",
        cert_h.verdict == MembershipVerdict::NonMember
            && cert_h.status == BasisStatus::Complete
            && !cert_h.normal_form.is_zero()
            && cert_h.replay(&horn_gens, &p),
        json!({
            "verdict": cert_h.verdict.name(),
            "basis_status": gb_h.status.name(),
            "normal_form": cert_h.normal_form.to_string(),
        }),
    );

    ctx.result("ahyp_system", js::system_json(&ahyp));
    ctx.result("horn_system", js::system_json(&horn));
    ctx.result("series_g", js::series_json(&g));
    ctx.result("series_f", js::series_json(&f));
    ctx.result("membership_ahyp", js::certificate_json(&cert_a));
    ctx.result("membership_horn", js::certificate_json(&cert_h));
    Ok(())
}
