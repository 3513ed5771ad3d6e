//! Command-line driver. `run` parses arguments, executes one command and returns the exit
//! code: 0 pass, 1 verified failure, 2 input error, 3 undecided.

use crate::blk::{block_idempotents, block_of, BlockMembership};
use crate::bundled;
use crate::cpx::Complex;
use crate::dec::{decompose_with, is_indecomposable, vertex, DecOptions};
use crate::error::{Error, Result};
use crate::green::{
    build_setup, complex_correspondence, green_correspondent, green_correspondent_back, round_trip_ri,
    simple_modules, Correspondent, CorrespondenceSetup,
};
use crate::grp::{format_group, Group};
use crate::io;
use crate::report::{Format, Report};
use crate::rep::Module;
use crate::verify::{run_all, run_suite, SuiteConfig, SUITES};
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(name = "greencorr", version, about = "Green correspondence and relative stable categories over GF(p)")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Dimension cap for sampled modules.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_dim: usize,
    /// Random probes per locality test before giving up as undecided.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Indecomposable summands, multiplicities and vertices of a module file.
    Decompose { module: PathBuf },
    /// Vertex of an indecomposable module.
    Vertex { module: PathBuf },
    /// Induce a module over a subgroup; prints the module file of the induced module.
    Induce {
        module: PathBuf,
        #[arg(long)]
        group: String,
        /// Generators separated by `;`, or `whole` / `trivial`.
        #[arg(long)]
        subgroup: String,
    },
    /// Restrict a module to a subgroup; prints the module file of the restriction.
    Restrict {
        module: PathBuf,
        #[arg(long)]
        subgroup: String,
    },
    /// Green correspondent of a module (or complex) over H.
    Green {
        input: PathBuf,
        /// A bundled setup: s3-c2, s4-d8, a5-a4.
        #[arg(long)]
        setup: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        /// Members of 𝔓 separated by `|`.
        #[arg(long = "frak-p")]
        frak_p: Option<String>,
        /// The input is a module over G; correspond back to H.
        #[arg(long)]
        back: bool,
        /// Also write the correspondent module file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Block idempotents, defect groups and the blocks of the simple modules.
    Blocks {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        /// A bundled setup name, or `broken`.
        #[arg(long)]
        setup: Option<String>,
    },
}

enum Output {
    Report(Report),
    Raw(String),
}

pub fn run<I, T>(args: I) -> i32
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
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let (text, code) = match execute(&cli) {
        Ok(Output::Report(r)) => (r.render(format), r.exit_code()),
        Ok(Output::Raw(s)) => (s, 0),
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Undecided(_) => 3,
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn opts(cli: &Cli) -> DecOptions {
    let d = DecOptions::default();
    DecOptions { seed: cli.seed, budget: cli.budget.unwrap_or(d.budget), ..d }
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn execute(cli: &Cli) -> Result<Output> {
    let o = opts(cli);
    let cwd = PathBuf::from(".");
    match &cli.command {
        Command::Decompose { module } => {
            let m = io::load_module(module)?;
            let mut r = Report::new(format!("decompose {}", module.display()), cli.seed);
            let d = decompose_with(&m, o)?;
            r.check("summands", true, format!("dim {} = {} summands in {} classes", m.dim(), d.summands.len(), d.classes.len()));
            for (i, c) in d.classes.iter().enumerate() {
                let s = &d.summands[c[0]].module;
                let v = vertex(s, o);
                r.record(
                    format!("class {i}"),
                    v.map(|v| (true, format!("dim {}, multiplicity {}, vertex {} (order {})", s.dim(), c.len(), v.label(), v.order()))),
                );
            }
            Ok(Output::Report(r))
        }
        Command::Vertex { module } => {
            let m = io::load_module(module)?;
            let mut r = Report::new(format!("vertex {}", module.display()), cli.seed);
            if !is_indecomposable(&m, o)? {
                return Err(Error::Precondition("module is not indecomposable; use decompose".into()));
            }
            let v = vertex(&m, o)?;
            let sylow = m.group().whole().sylow(m.p());
            let full = m.group().whole().are_conjugate(&v, &sylow);
            r.check("vertex", true, format!("{} (order {}){}", v.label(), v.order(), if full { ", a Sylow subgroup" } else { "" }));
            Ok(Output::Report(r))
        }
        Command::Induce { module, group, subgroup } => {
            let m = io::load_module(module)?;
            let (g, _) = io::load_group(group, &cwd)?;
            let h = io::parse_subgroup(&g, subgroup)?;
            let ind = m.transport(h.as_group())?.induce(&h)?;
            Ok(Output::Raw(io::module_json(&ind, group) + "\n"))
        }
        Command::Restrict { module, subgroup } => {
            let m = io::load_module(module)?;
            let h = io::parse_subgroup(m.group(), subgroup)?;
            let res = m.restrict(&h)?;
            Ok(Output::Raw(io::module_json(&res, &format_group(h.as_group(), None)) + "\n"))
        }
        Command::Green { input, setup, group, subgroup, p, frak_p, back, emit } => {
            let s = match setup {
                Some(n) => bundled::setup(n)?,
                None => {
                    let need = |x: &Option<String>, what: &str| {
                        x.clone().ok_or_else(|| Error::Precondition(format!("--{what} is required without --setup")))
                    };
                    let (g, gp) = io::load_group(&need(group, "group")?, &cwd)?;
                    let h = io::parse_subgroup(&g, &need(subgroup, "subgroup")?)?;
                    let p = p.or(gp).ok_or_else(|| Error::Precondition("--p is required".into()))?;
                    let fp = io::parse_collection(&g, &need(frak_p, "frak-p")?)?;
                    build_setup(&h, &fp, p)?
                }
            };
            let text = io::read_file(input)?;
            let is_complex = serde_json::from_str::<serde_json::Value>(&text)
                .map(|v| v.get("terms").is_some())
                .unwrap_or(false);
            let mut r = Report::new(format!("green {} {}", s.label(), input.display()), cli.seed);
            r.check("setup", true, setup_details(&s));
            if is_complex {
                let x = io::parse_complex(&text, &base_of(input))?;
                green_complex(&x, &s, &mut r)?;
            } else {
                let m = io::parse_module(&text, &base_of(input))?;
                let target = if *back { s.group().clone() } else { s.h_group().clone() };
                let m = m.transport(&target)?;
                let c = if *back { green_correspondent_back(&m, &s, o) } else { green_correspondent(&m, &s, o) };
                match c {
                    Ok(c) => {
                        green_module(&m, &c, &s, *back, o, &mut r)?;
                        if let Some(path) = emit {
                            let gtext = format_group(c.module.group(), Some(s.p()));
                            std::fs::write(path, io::module_json(&c.module, &gtext) + "\n")
                                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                        }
                    }
                    Err(e @ (Error::Precondition(_) | Error::Undecided(_))) => r.record("correspondent", Err(e)),
                    Err(e) => return Err(e),
                }
            }
            Ok(Output::Report(r))
        }
        Command::Blocks { group, p } => {
            let (g, gp) = io::load_group(group, &cwd)?;
            let p = p.or(gp).ok_or_else(|| Error::Precondition("--p is required".into()))?;
            let mut r = Report::new(format!("blocks {group} GF({p})"), cli.seed);
            let bs = block_idempotents(&g, p)?;
            for (i, b) in bs.iter().enumerate() {
                r.check(
                    format!("block {i}"),
                    true,
                    format!(
                        "{}defect {} (order {}), class-sum coordinates {:?}",
                        if b.is_principal() { "principal, " } else { "" },
                        b.defect.label(),
                        b.defect.order(),
                        b.coords
                    ),
                );
            }
            for (j, m) in simple_modules(&g, p, o)?.iter().enumerate() {
                let (ok, d) = match block_of(&bs, m) {
                    BlockMembership::Single(i) => (true, format!("dim {}, block {i}", m.dim())),
                    other => (false, format!("dim {}, {other:?}", m.dim())),
                };
                r.check(format!("simple {j}"), ok, d);
            }
            Ok(Output::Report(r))
        }
        Command::Verify { suite, group, p, setup } => {
            let mut cfg =
                SuiteConfig { seed: cli.seed, max_dim: cli.max_dim, p: *p, setup: setup.clone(), ..SuiteConfig::default() };
            if let Some(b) = cli.budget {
                cfg.budget = b;
            }
            if let Some(gs) = group {
                let (g, gp) = io::load_group(gs, &cwd)?;
                cfg.p = cfg.p.or(gp);
                cfg.groups = Some(vec![(group_name(gs), g)]);
            }
            if suite == "all" {
                return run_all(&cfg).map(Output::Report);
            }
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::Precondition(format!("unknown suite '{suite}'; expected all or one of {}", SUITES.join(", "))));
            }
            run_suite(suite, &cfg).map(Output::Report)
        }
    }
}

fn group_name(spec: &str) -> String {
    let f = Path::new(spec).file_name().and_then(|s| s.to_str()).unwrap_or(spec);
    f.trim_end_matches(".grp").to_string()
}

fn setup_details(s: &CorrespondenceSetup) -> String {
    let labels = |c: &crate::grp::SubgroupCollection| {
        let v: Vec<String> = c.members().iter().map(|m| m.label()).collect();
        format!("{{{}}}", v.join(", "))
    };
    format!("{} p={} P={} X={} Y={}", s.label(), s.p(), labels(s.frak_p()), labels(s.frak_x()), labels(s.frak_y()))
}

fn green_module(
    m: &Module,
    c: &Correspondent,
    s: &CorrespondenceSetup,
    back: bool,
    o: DecOptions,
    r: &mut Report,
) -> Result<()> {
    r.check(
        "correspondent",
        c.vertex_transported,
        format!(
            "dim {} -> dim {}, vertex {} -> {}",
            m.dim(),
            c.module.dim(),
            c.source_vertex.label(),
            c.vertex.label()
        ),
    );
    let coll = if back { "𝔜" } else { "𝔛" };
    for (i, sm) in c.summands.iter().enumerate() {
        let what = if sm.relatively_projective { format!("{coll}-projective, discarded") } else { "kept".into() };
        r.check(format!("summand {i}"), true, format!("dim {}, vertex {}, {what}", sm.dim, sm.vertex.label()));
    }
    if !back {
        r.record("round trip", round_trip_ri(m, s, o).map(|b| (b, "R I L ≅ L modulo 𝔛".to_string())));
    }
    Ok(())
}

fn green_complex(x: &Complex, s: &CorrespondenceSetup, r: &mut Report) -> Result<()> {
    let x = transport_complex(x, s.h_group())?;
    let c = complex_correspondence(&x, s)?;
    let dims: Vec<usize> = c.induced.terms().iter().map(|t| t.dim()).collect();
    r.check("induced", true, format!("degrees from {}, term dims {dims:?}", c.induced.lo()));
    r.check("mackey block diagonal", c.mackey.block_diagonal, format!("Res Ind X ≅ X ⊕ F, dim F {}", c.mackey.f.total_dim()));
    r.check("F is 𝔜-projective", c.f_projective, "relative trace certificate");
    for (d, ss) in &c.mackey.summands {
        for (i, sm) in ss.iter().enumerate() {
            r.check(format!("F summand {d}.{i}"), true, format!("dim {}, stabilizer {}", sm.module.dim(), sm.stabilizer.label()));
        }
    }
    Ok(())
}

fn transport_complex(x: &Complex, target: &Arc<Group>) -> Result<Complex> {
    if **x.group() == **target {
        return Ok(x.clone());
    }
    let terms = x.terms().iter().map(|t| t.transport(target)).collect::<Result<Vec<_>>>()?;
    let diffs = (x.lo()..x.hi()).map(|d| x.boundary(d)).collect();
    Complex::new(target, x.p(), x.lo(), terms, diffs)
}
