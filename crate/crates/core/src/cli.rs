//! The `spheres` command line.
//!
//! Every command writes its artifacts and a `report.txt` into `--out` and
//! prints the report followed by the wall time. Exit codes: 0 when all
//! checks pass, 1 when a check fails, 2 on bad input.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::allocation::{allocate, AllocateOptions};
use crate::blowup::Blowup;
use crate::chain::{
    generate_chain_host, lower_bound_codegree, lower_bound_tight_cycle, lower_bound_vertex_degree, regularity_centre,
    spanning_sphere_with, verify_chain, ChainCertificate, ChainHost, ChainParams, Host, HostInstance,
};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::extremal::{find_partite_blowup, pigeonhole_blowup, property_graph, PropertyPredicate};
use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::io;
use crate::spheres::{partite_sphere, tight_path_blowup_sphere, PartiteHost};
use crate::{Rational, Vertex};

#[derive(Debug, Parser)]
#[command(name = "spheres", version, about = "Spanning spheres in dense uniform hypergraphs")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-link work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Enumeration budget for exhaustive searches and host materialisation.
    #[arg(long, global = true, default_value_t = crate::extremal::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Directory for artifacts and the report.
    #[arg(long, global = true, default_value = "spheres-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree and connectivity statistics of a hypergraph.
    Stats { hg: PathBuf },
    /// Certify a complex as a sphere, optionally as a spanning copy in a host.
    VerifySphere {
        sc: PathBuf,
        #[arg(long)]
        host: Option<PathBuf>,
    },
    #[command(subcommand)]
    Sphere(SphereCommand),
    /// Spanning sphere of a blow-up containing two given facets.
    Allocate(AllocateArgs),
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Verify or generate a chain, solve it and check the result.
    Pipeline(PipelineArgs),
    #[command(subcommand)]
    Extremal(ExtremalCommand),
    /// Lower-bound constructions.
    LowerBound {
        #[arg(value_enum)]
        kind: LowerBoundKind,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum LowerBoundKind {
    Codegree,
    TightCycle,
    VertexDegree,
}

#[derive(Debug, Subcommand)]
pub enum SphereCommand {
    /// Sphere spanning a complete partite k-graph with sizes (2,..,2,l,l) or (2,..,2,3,l,l).
    Partite {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Doubly edge-covering sphere of a tight path blow-up on `len` positions.
    Path {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Debug, Args)]
pub struct AllocateArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub parts: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    pub f1: Vec<Vertex>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub f2: Vec<Vertex>,
    /// Regularity slack as p/q.
    #[arg(long, default_value = "1/10")]
    pub gamma: String,
    /// Only require f1, f2 disjoint with distinct projections.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Args, Clone)]
pub struct GenArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 6)]
    pub s: usize,
    #[arg(long, default_value_t = 3)]
    pub links: usize,
    #[arg(long, default_value_t = 40)]
    pub part_size: usize,
    /// One singleton part per link.
    #[arg(long)]
    pub singletons: bool,
}

#[derive(Debug, Subcommand)]
pub enum ChainCommand {
    /// Generate a synthetic chain host and its certificate.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Also write the host as an explicit hypergraph.
        #[arg(long)]
        emit_host: bool,
    },
    /// Check the chain properties.
    Verify {
        chain: PathBuf,
        #[arg(long)]
        host: Option<PathBuf>,
    },
    /// Assemble the spanning sphere along a chain.
    Solve {
        chain: PathBuf,
        #[arg(long)]
        host: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Chain certificate; generated from the flags below when absent.
    #[arg(long)]
    pub chain: Option<PathBuf>,
    #[arg(long)]
    pub host: Option<PathBuf>,
    #[command(flatten)]
    pub gen: GenArgs,
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCommand {
    /// Property graph of P(epsilon, k) on s-sets.
    Pg {
        hg: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
    /// Least complete s-partite sub-blow-up with parts of size b.
    Turan {
        hg: PathBuf,
        #[arg(long, default_value_t = 2)]
        b: usize,
    },
    /// Majority-colour consistent blow-up over a family of labelled members.
    Pigeonhole {
        hg: PathBuf,
        #[arg(long)]
        parts: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        family: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        b: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// Input paths with their sha256 digests.
    pub inputs: Vec<(String, String)>,
    pub seed: u64,
    /// `key: value` lines in a fixed order.
    pub values: Vec<(String, String)>,
    pub checks: Vec<(String, bool)>,
    pub artifacts: Vec<String>,
}

impl RunReport {
    fn new(command: &str, seed: u64) -> Self {
        RunReport { command: command.into(), inputs: Vec::new(), seed, values: Vec::new(), checks: Vec::new(), artifacts: Vec::new() }
    }

    fn value(&mut self, key: &str, v: impl fmt::Display) {
        self.values.push((key.into(), v.to_string()));
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn input(&mut self, path: &Path, text: &str) {
        self.inputs.push((path.display().to_string(), format!("{:x}", Sha256::digest(text.as_bytes()))));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (p, h) in &self.inputs {
            writeln!(f, "input: {p} sha256={h}")?;
        }
        writeln!(f, "seed: {}", self.seed)?;
        for (k, v) in &self.values {
            writeln!(f, "{k}: {v}")?;
        }
        for (name, ok) in &self.checks {
            writeln!(f, "check {name}: {}", if *ok { "PASS" } else { "FAIL" })?;
        }
        for a in &self.artifacts {
            writeln!(f, "artifact: {a}")?;
        }
        writeln!(f, "outcome: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    report: RunReport,
}

impl Ctx<'_> {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = io::read_to_string(path)?;
        self.report.input(path, &text);
        Ok(text)
    }

    fn emit(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.cli.out.join(name);
        io::write_file(&path, text)?;
        self.report.artifacts.push(name.into());
        Ok(())
    }

    fn hg(&mut self, path: &Path) -> Result<Hypergraph> {
        let text = self.read(path)?;
        io::parse_hg(&text)
    }

    fn sphere_checks(&mut self, s: &SimplicialComplex, host: &impl EdgeOracle) -> Result<()> {
        let cert = s.verify_sphere();
        self.report.value("vertices", s.vertex_count());
        self.report.value("facets", s.facet_count());
        self.report.value("euler", cert.euler);
        self.report.value("certificate", cert.level);
        if let Some(r) = &cert.failure_reason {
            self.report.value("failure", r);
        }
        self.report.check("sphere", cert.level.at_least_link_verified());
        self.report.check("spanning", s.is_spanning_copy(host)?);
        Ok(())
    }
}

fn rational(t: &str) -> Result<Rational> {
    let bad = || Error::BadParams(format!("expected a rational p/q, found {t:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (p.parse::<i64>().map_err(|_| bad())?, q.parse::<i64>().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => t.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stats { .. } => "stats",
        Command::VerifySphere { .. } => "verify-sphere",
        Command::Sphere(SphereCommand::Partite { .. }) => "sphere partite",
        Command::Sphere(SphereCommand::Path { .. }) => "sphere path",
        Command::Allocate(_) => "allocate",
        Command::Chain(ChainCommand::Gen { .. }) => "chain gen",
        Command::Chain(ChainCommand::Verify { .. }) => "chain verify",
        Command::Chain(ChainCommand::Solve { .. }) => "chain solve",
        Command::Pipeline(_) => "pipeline",
        Command::Extremal(ExtremalCommand::Pg { .. }) => "extremal pg",
        Command::Extremal(ExtremalCommand::Turan { .. }) => "extremal turan",
        Command::Extremal(ExtremalCommand::Pigeonhole { .. }) => "extremal pigeonhole",
        Command::LowerBound { .. } => "lower-bound",
    }
}

fn gen_params(g: &GenArgs, seed: u64) -> ChainParams {
    ChainParams { singletons: g.singletons, ..ChainParams::new(g.k, g.s, g.links, g.part_size, seed) }
}

fn load_chain_host(ctx: &mut Ctx, chain: &Path, host: Option<&Path>) -> Result<(ChainCertificate, Host)> {
    let text = ctx.read(chain)?;
    let c = io::parse_chain(&text)?;
    let h = match host {
        Some(p) => Host::Explicit(ctx.hg(p)?),
        None => Host::Chain(ChainHost::new(&c)),
    };
    Ok((c, h))
}

fn chain_checks(ctx: &mut Ctx, h: &Host, c: &ChainCertificate) -> bool {
    let r = verify_chain(h, c);
    for check in &r.checks {
        ctx.report.check(check.name, check.violations.is_empty());
        if let Some(v) = check.violations.first() {
            ctx.report.value(&format!("{} violation", check.name), v);
        }
    }
    r.passed()
}

fn solve(ctx: &mut Ctx, h: &Host, c: &ChainCertificate) -> Result<()> {
    let sol = spanning_sphere_with(h, c, ctx.cli.jobs)?;
    ctx.report.value("links", c.links.len());
    for (i, r) in sol.link_reports.iter().enumerate() {
        ctx.report.value(&format!("link {i}"), format!("walk_order={} facets={} vertices={}", r.walk.len(), r.facets, r.vertices));
    }
    ctx.emit("sphere.sc", &io::write_sc(&sol.sphere))?;
    ctx.sphere_checks(&sol.sphere, h)?;
    if c.k() == 2 {
        ctx.report.check("hamilton cycle", sol.sphere.facet_count() == sol.sphere.vertex_count());
    }
    Ok(())
}

fn lower_bound_values(ctx: &mut Ctx, h: &Hypergraph) -> Result<()> {
    ctx.report.value("n", h.n());
    ctx.report.value("edges", h.edge_count());
    ctx.report.value("delta_star", h.min_supported_codegree());
    ctx.report.value("tight_components", h.tight_components().components.len());
    Ok(())
}

fn dispatch(ctx: &mut Ctx) -> Result<()> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Stats { hg } => {
            let h = ctx.hg(hg)?;
            ctx.report.value("k", h.k());
            ctx.report.value("n", h.n());
            ctx.report.value("edges", h.edge_count());
            ctx.report.value("delta_star", h.min_supported_codegree());
            for d in 1..h.k() {
                ctx.report.value(&format!("delta_star_{d}"), h.min_supported_d_degree(d)?.delta_star_d);
            }
            let comps = h.tight_components();
            ctx.report.value("tight_components", comps.components.len());
            ctx.report.value("isolated_vertices", comps.isolated.len());
        }
        Command::VerifySphere { sc, host } => {
            let text = ctx.read(sc)?;
            let s = io::parse_sc(&text)?;
            let cert = s.verify_sphere();
            ctx.report.value("facets", s.facet_count());
            ctx.report.value("euler", cert.euler);
            ctx.report.value("pseudomanifold", cert.pseudomanifold);
            ctx.report.value("strongly_connected", cert.strongly_connected);
            ctx.report.value("certificate", cert.level);
            if let Some(r) = &cert.failure_reason {
                ctx.report.value("failure", r);
            }
            ctx.report.check("sphere", cert.level.at_least_link_verified());
            if let Some(p) = host {
                let h = ctx.hg(p)?;
                ctx.report.check("spanning", s.is_spanning_copy(&h)?);
            }
        }
        Command::Sphere(SphereCommand::Partite { sizes }) => {
            let host = PartiteHost::with_sizes(sizes);
            let s = partite_sphere(&host.parts, None)?;
            ctx.report.value("sizes", format!("{sizes:?}"));
            ctx.emit("partite.sc", &io::write_sc(&s))?;
            ctx.sphere_checks(&s, &host)?;
        }
        Command::Sphere(SphereCommand::Path { k, len }) => {
            let d = tight_path_blowup_sphere(*k, *len)?;
            ctx.report.value("profile", format!("{:?}", d.path.profile()));
            ctx.emit("path.sc", &io::write_sc(&d.sphere))?;
            ctx.emit("path.manifest", &io::write_manifest(&d))?;
            let families = d.check(true);
            if let Err(e) = &families {
                ctx.report.value("family failure", e);
            }
            ctx.report.check("families", families.is_ok());
            ctx.sphere_checks(&d.sphere, &d.path)?;
        }
        Command::Allocate(a) => {
            let base = ctx.hg(&a.base)?;
            let text = ctx.read(&a.parts)?;
            let parts = io::parse_parts(&text)?;
            let gamma = rational(&a.gamma)?;
            let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
            let top = Rational::from_integer(sizes.iter().copied().max().unwrap_or(1) as i64);
            let m = regularity_centre(&sizes, gamma, Rational::from_integer(1), top)
                .ok_or_else(|| Error::PreconditionFailed(format!("part sizes {sizes:?} are not nearly regular for γ = {gamma}")))?;
            let b = Blowup::new(base, parts, gamma, m)?;
            let opts = if a.relaxed { AllocateOptions::relaxed() } else { AllocateOptions::default() };
            let res = allocate(&b, &a.f1, &a.f2, &opts)?;
            for line in res.report.to_string().lines() {
                if let Some((k, v)) = line.split_once(": ") {
                    ctx.report.value(k, v);
                }
            }
            ctx.emit("allocation.sc", &io::write_sc(&res.sphere))?;
            ctx.report.check("spanning", res.report.spanning == Some(true));
            ctx.report.check("sphere", res.report.level.is_some_and(|l| l.at_least_link_verified()));
            ctx.report.check("f1 facet", res.sphere.contains_facet(&res.f1));
            ctx.report.check("f2 facet", res.sphere.contains_facet(&res.f2));
        }
        Command::Chain(ChainCommand::Gen { gen, emit_host }) => {
            let inst = generate_chain_host(&gen_params(gen, cli.seed))?;
            let c = inst.certificate.as_ref().expect("generated chains carry certificates");
            ctx.report.value("generator", &inst.provenance.generator);
            ctx.report.value("vertices", inst.host.n());
            ctx.emit("chain.chain", &io::write_chain(c))?;
            if *emit_host {
                let Host::Chain(h) = &inst.host else { unreachable!("generated hosts are implicit") };
                let hg = h.materialize(cli.budget)?;
                ctx.report.value("host_edges", hg.edge_count());
                ctx.emit("host.hg", &io::write_hg(&hg))?;
            }
            chain_checks(ctx, &inst.host, c);
        }
        Command::Chain(ChainCommand::Verify { chain, host }) => {
            let (c, h) = load_chain_host(ctx, chain, host.as_deref())?;
            chain_checks(ctx, &h, &c);
        }
        Command::Chain(ChainCommand::Solve { chain, host }) => {
            let (c, h) = load_chain_host(ctx, chain, host.as_deref())?;
            solve(ctx, &h, &c)?;
        }
        Command::Pipeline(p) => {
            let (c, h) = match &p.chain {
                Some(path) => load_chain_host(ctx, path, p.host.as_deref())?,
                None => {
                    let HostInstance { host, certificate, provenance } = generate_chain_host(&gen_params(&p.gen, cli.seed))?;
                    ctx.report.value("generator", &provenance.generator);
                    let c = certificate.expect("generated chains carry certificates");
                    ctx.emit("chain.chain", &io::write_chain(&c))?;
                    (c, host)
                }
            };
            if chain_checks(ctx, &h, &c) {
                solve(ctx, &h, &c)?;
            }
        }
        Command::Extremal(ExtremalCommand::Pg { hg, s, epsilon }) => {
            let h = ctx.hg(hg)?;
            let p = PropertyPredicate::dirac(rational(epsilon)?, h.k());
            let pg = property_graph(&h, &p, *s, cli.budget)?;
            ctx.report.value("property", &p.name);
            ctx.report.value("edges", pg.edge_count());
            ctx.emit("property.hg", &io::write_hg(&pg))?;
        }
        Command::Extremal(ExtremalCommand::Turan { hg, b }) => {
            let h = ctx.hg(hg)?;
            let found = find_partite_blowup(&h, *b, cli.budget)?;
            ctx.report.value("found", found.is_some());
            if let Some(parts) = found {
                ctx.emit("blowup.parts", &io::write_parts(&parts))?;
            }
        }
        Command::Extremal(ExtremalCommand::Pigeonhole { hg, parts, family, b }) => {
            let h = ctx.hg(hg)?;
            let text = ctx.read(parts)?;
            let parts = io::parse_parts(&text)?;
            let family: Vec<Hypergraph> = family.iter().map(|f| ctx.hg(f)).collect::<Result<_>>()?;
            let res = pigeonhole_blowup(&h, &parts, &family, *b, cli.budget)?;
            ctx.report.value("found", res.is_some());
            if let Some(r) = res {
                ctx.report.value("member", r.member);
                ctx.report.value("colour_class", r.colour_count);
                ctx.emit("pigeonhole.parts", &io::write_parts(&r.blowup))?;
            }
        }
        Command::LowerBound { kind, k, n } => {
            let inst = match kind {
                LowerBoundKind::Codegree => lower_bound_codegree(*k, *n)?,
                LowerBoundKind::TightCycle => lower_bound_tight_cycle(*k, *n)?,
                LowerBoundKind::VertexDegree => lower_bound_vertex_degree(*n)?,
            };
            let h = inst.hypergraph().expect("lower bounds are explicit").clone();
            ctx.report.value("generator", &inst.provenance.generator);
            lower_bound_values(ctx, &h)?;
            ctx.emit("lower_bound.hg", &io::write_hg(&h))?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Link { source, .. } => exit_code(source),
        Error::Io(_) | Error::Parse { .. } | Error::BadParams(_) | Error::PreconditionFailed(_) | Error::DimMismatch { .. } => 2,
        Error::InvalidEdge { .. } | Error::InvalidVertex { .. } | Error::BadArity { .. } => 2,
        _ => 1,
    }
}

/// Runs a parsed command line; returns the report (when the command got
/// far enough to produce one) and the exit code.
pub fn execute(cli: &Cli) -> (Option<RunReport>, i32) {
    let mut ctx = Ctx { cli, report: RunReport::new(command_name(&cli.command), cli.seed) };
    let result = dispatch(&mut ctx);
    let mut report = ctx.report;
    let code = match &result {
        Ok(()) if report.passed() => 0,
        Ok(()) => 1,
        Err(e) => {
            report.value("error", e);
            report.check("run", false);
            exit_code(e)
        }
    };
    if let Err(e) = io::write_file(&cli.out.join("report.txt"), &report.to_string()) {
        eprintln!("error: {e}");
        return (Some(report), 2);
    }
    (Some(report), code)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let (report, code) = execute(&cli);
    if let Some(r) = report {
        print!("{r}");
    }
    println!("wall_time_ms: {}", start.elapsed().as_millis());
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (RunReport, i32) {
        let cli = Cli::try_parse_from(std::iter::once("spheres").chain(args.iter().copied())).unwrap();
        let (r, code) = execute(&cli);
        (r.unwrap(), code)
    }

    #[test]
    fn stats_and_lower_bound() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let (r, code) = run(&["--out", out, "lower-bound", "codegree", "--k", "3", "--n", "12"]);
        assert_eq!(code, 0);
        assert!(r.values.contains(&("delta_star".into(), "5".into())));
        let hg = dir.path().join("lower_bound.hg");
        let (r, code) = run(&["--out", out, "stats", hg.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(r.values.contains(&("delta_star".into(), "5".into())));
        assert_eq!(r.inputs.len(), 1);
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.hg");
        std::fs::write(&bad, "3 4\n0 1\n").unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(run(&["--out", out, "stats", bad.to_str().unwrap()]).1, 2);
        let torus = dir.path().join("torus.sc");
        let mut text = String::from("2 7\n");
        for i in 0..7 {
            text += &format!("{} {} {}\n{} {} {}\n", i, (i + 1) % 7, (i + 3) % 7, i, (i + 2) % 7, (i + 3) % 7);
        }
        std::fs::write(&torus, text).unwrap();
        let (r, code) = run(&["--out", out, "verify-sphere", torus.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(r.values.contains(&("certificate".into(), "Rejected".into())));
    }
}
