mod demo;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zfcat::dst::{self, DefinableClass};
use zfcat::equivalence as eqv;
use zfcat::internal::{self, GlobalElement, InternalCategory};
use zfcat::kernel::{elaborate, parse};
use zfcat::obligation::parse_records;
use zfcat::smallmaps as sm;
use zfcat::syncat::{self, mk_arrow};
use zfcat::{axiom, AxiomId, Arrow, Error, FormulaInContext, HfSet, Obligation, ObligationBundle, Oracle, Result, Universe, Var};

use report::{check_all, error_json, Sink};

#[derive(Parser)]
#[command(name = "zfcat", version, about = "Categories of ZF-definable classes, checked over hereditarily finite sets")]
struct Cli {
    /// Universe for checks: V0..V5 or C<n> (code prefix).
    #[arg(long, global = true, default_value = "V4")]
    universe: String,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Evaluation step budget per obligation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Print obligations without checking them.
    #[arg(long, global = true)]
    no_check: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Arrows are written `DOM ; COD ; REL`, e.g. `x |- x = 0 ; y |- y = y ; x, y |- y = x`.
#[derive(Subcommand)]
enum Cmd {
    /// Parse and pretty-print a surface formula.
    Parse { text: String },
    /// Elaborate a surface formula into the kernel language.
    Elab { text: String },
    /// Print an axiom or schema instance.
    Axiom {
        /// extensionality, separation, pairing, union, powerset, replacement, infinity, foundation
        name: String,
        /// Schema body for separation or replacement.
        #[arg(long)]
        formula: Option<String>,
        /// Separated variable.
        #[arg(long, default_value = "t")]
        subject: String,
        /// Replacement input and output variables.
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "y")]
        y: String,
        /// Comma-separated schema parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Also check the axiom in the universe.
        #[arg(long)]
        check: bool,
    },
    /// Compose two arrows.
    Compose { f: String, g: String },
    /// Product of two formulas in context.
    Product { a: String, b: String },
    /// Pullback of a cospan.
    Pullback { f: String, g: String },
    /// Collapse a context into a single pair-coded variable.
    Collapse { a: String },
    /// Definable sets.
    Dst {
        #[command(subcommand)]
        cmd: DstCmd,
    },
    /// Small maps.
    Ast {
        #[command(subcommand)]
        cmd: AstCmd,
    },
    /// The internal category SET and its obligations.
    Internal {
        /// Replace ID by the constant map to <0,0>.
        #[arg(long)]
        corrupt: bool,
    },
    /// Global elements of SET.
    Gamma {
        #[command(subcommand)]
        cmd: GammaCmd,
    },
    /// The functors between definable sets and global elements of SET.
    Equiv {
        #[command(subcommand)]
        cmd: EquivCmd,
    },
    /// Check an obligation file.
    Check { file: PathBuf },
    /// Export an obligation file to TPTP FOF.
    Export {
        file: PathBuf,
        /// Accompanying axioms (extensionality, pairing, union, powerset, infinity, foundation).
        #[arg(long = "axiom", value_delimiter = ',')]
        axioms: Vec<String>,
        /// Add a Separation instance for every formula in the file.
        #[arg(long)]
        auto_separation: bool,
    },
    /// Run the showpiece constructions and check their obligations.
    Demo,
}

#[derive(Subcommand)]
enum DstCmd {
    /// Set-hood obligation of a class.
    Set { a: String },
    Terminal,
    Product { a: String, b: String },
    Exp { a: String, b: String },
    Omega,
}

#[derive(Subcommand)]
enum AstCmd {
    /// Power object data of a class.
    Power { x: String },
    /// Representing arrow of a relation `x, z |- R` from X to Z.
    Rep { r: String, x: String, z: String },
    /// Subset relation on the power object.
    Subset { x: String },
    /// Supremum along a small map.
    Sup { f: String, lam: String },
    /// The initial ZF-algebra.
    Algebra,
}

#[derive(Subcommand)]
enum GammaCmd {
    Object { g: String },
    Arrow { g: String },
    Source { g: String },
    Target { g: String },
    Identity { g: String },
    Compose { a: String, b: String },
}

#[derive(Subcommand)]
enum EquivCmd {
    /// P on a definable set.
    P { a: String },
    /// P on an arrow between definable sets.
    PArrow { f: String },
    /// P′ on a global element.
    Pprime { g: String },
    /// P∘P′ roundtrip obligation for a name.
    Roundtrip { g: String },
    /// Component of id ≅ P′∘P.
    Iso { a: String },
    /// Naturality square of an arrow.
    Natural { f: String },
    /// Name of the hereditarily finite set with the given code.
    Name { code: u64 },
}

struct Ctx {
    oracle: Oracle,
    no_check: bool,
}

impl Ctx {
    fn obligations(&self, sink: &mut Sink, obs: &[Obligation]) {
        if self.no_check {
            sink.records(obs);
        } else {
            sink.reports(check_all(&self.oracle, obs));
        }
    }
}

fn class(s: &str) -> Result<FormulaInContext> {
    FormulaInContext::parse(s)
}

fn dclass(s: &str) -> Result<DefinableClass> {
    DefinableClass::parse(s)
}

pub fn arrow(s: &str) -> Result<(Arrow, Vec<Obligation>)> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Syntax {
            line: 1,
            col: 1,
            msg: "an arrow is written `DOM ; COD ; REL`".into(),
        });
    }
    mk_arrow(class(parts[0])?, class(parts[1])?, class(parts[2])?)
}

fn axiom_id(name: &str) -> Result<AxiomId> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "extensionality" => AxiomId::Extensionality,
        "pairing" => AxiomId::Pairing,
        "union" => AxiomId::Union,
        "powerset" => AxiomId::Powerset,
        "infinity" => AxiomId::Infinity,
        "foundation" => AxiomId::Foundation,
        _ => return Err(Error::UnknownAxiom(name.to_string())),
    })
}

fn vars(names: &[String]) -> Result<Vec<Var>> {
    names.iter().map(|n| var(n)).collect()
}

fn var(n: &str) -> Result<Var> {
    let n = n.trim();
    if zfcat::kernel::is_valid_name(n) {
        Ok(Var::new(n))
    } else {
        Err(Error::Syntax {
            line: 1,
            col: 1,
            msg: format!("`{n}` is not a variable name"),
        })
    }
}

fn show_arrow(sink: &mut Sink, label: &str, a: &Arrow) {
    sink.item(label, a);
}

fn run(cli: &Cli, sink: &mut Sink) -> Result<()> {
    let mut oracle = Oracle::new(cli.universe.parse::<Universe>()?);
    if let Some(b) = cli.budget {
        oracle = oracle.with_budget(b);
    }
    let ctx = Ctx {
        oracle,
        no_check: cli.no_check,
    };
    match &cli.cmd {
        Cmd::Parse { text } => sink.item("", parse(text)?),
        Cmd::Elab { text } => sink.item("", elaborate(&parse(text)?)?),
        Cmd::Axiom {
            name,
            formula,
            subject,
            x,
            y,
            params,
            check,
        } => {
            let id = match name.to_ascii_lowercase().as_str() {
                "separation" | "replacement" => {
                    let f = formula.as_deref().ok_or_else(|| Error::Syntax {
                        line: 1,
                        col: 1,
                        msg: "schema instances need --formula".into(),
                    })?;
                    let p = parse(f)?;
                    let params = vars(params)?;
                    if name.eq_ignore_ascii_case("separation") {
                        AxiomId::separation(p, &params, &var(subject)?)
                    } else {
                        AxiomId::Replacement {
                            f: p,
                            params,
                            x: var(x)?,
                            y: var(y)?,
                        }
                    }
                }
                _ => axiom_id(name)?,
            };
            let f = axiom(&id)?;
            sink.item("", &f);
            if *check {
                let ob = Obligation::new(&name.to_ascii_lowercase(), vec![], f, "axiom");
                ctx.obligations(sink, &[ob]);
            }
        }
        Cmd::Compose { f, g } => {
            let (f, mut obs) = arrow(f)?;
            let (g, og) = arrow(g)?;
            obs.extend(og);
            let h = syncat::compose(&f, &g)?;
            show_arrow(sink, "composite", &h);
            obs.extend(h.obligations());
            ctx.obligations(sink, &obs);
        }
        Cmd::Product { a, b } => {
            let p = syncat::product(&class(a)?, &class(b)?)?;
            sink.item("object", &p.obj);
            show_arrow(sink, "proj1", &p.proj1);
            show_arrow(sink, "proj2", &p.proj2);
            let obs: Vec<_> = p.proj1.obligations().into_iter().chain(p.proj2.obligations()).collect();
            ctx.obligations(sink, &obs);
        }
        Cmd::Pullback { f, g } => {
            let (f, mut obs) = arrow(f)?;
            let (g, og) = arrow(g)?;
            obs.extend(og);
            let pb = syncat::pullback(&f, &g)?;
            sink.item("object", &pb.obj);
            show_arrow(sink, "p1", &pb.p1);
            show_arrow(sink, "p2", &pb.p2);
            obs.extend(pb.p1.obligations());
            obs.extend(pb.p2.obligations());
            ctx.obligations(sink, &obs);
        }
        Cmd::Collapse { a } => {
            let c = syncat::collapse_context(&class(a)?)?;
            sink.item("object", &c.obj);
            show_arrow(sink, "iso", &c.iso);
            show_arrow(sink, "inverse", &c.iso_inv);
            let mut obs = c.iso.obligations();
            obs.extend(c.iso_inv.obligations());
            obs.extend(c.obligations()?);
            ctx.obligations(sink, &obs);
        }
        Cmd::Dst { cmd } => run_dst(cmd, &ctx, sink)?,
        Cmd::Ast { cmd } => run_ast(cmd, &ctx, sink)?,
        Cmd::Internal { corrupt } => {
            let ic = set_category(*corrupt);
            for (label, c) in [("C0", &ic.c0), ("C1", &ic.c1), ("Cpair", &ic.cpair)] {
                sink.item(label, c);
            }
            for (label, a) in [("d0", &ic.d0), ("d1", &ic.d1), ("ID", &ic.id), ("comp", &ic.comp)] {
                show_arrow(sink, label, a);
            }
            let mut obs = internal::internal_obligations(&ic)?;
            let (pb, onto) = internal::cpair_obligations(&ic)?;
            obs.extend([pb, onto]);
            ctx.obligations(sink, &obs);
        }
        Cmd::Gamma { cmd } => run_gamma(cmd, &ctx, sink)?,
        Cmd::Equiv { cmd } => run_equiv(cmd, &ctx, sink)?,
        Cmd::Check { file } => {
            let obs = read_records(file)?;
            sink.reports(check_all(&ctx.oracle, &obs));
        }
        Cmd::Export {
            file,
            axioms,
            auto_separation,
        } => {
            let obs = read_records(file)?;
            let mut b = ObligationBundle::new(obs);
            b.metadata.push(format!("obligations from {}", file.display()));
            for a in axioms {
                b.axioms.push(axiom_id(a)?);
            }
            if *auto_separation {
                b.classes = record_classes(&b.obligations)?;
                b.auto_separation();
            }
            let text = zfcat::to_tptp(&b)?;
            if sink.json {
                sink.item("tptp", text);
            } else {
                sink.raw(&text);
            }
        }
        Cmd::Demo => demo::run(&ctx.oracle, sink)?,
    }
    Ok(())
}

fn set_category(corrupt: bool) -> InternalCategory {
    let ic = internal::set_internal();
    if corrupt {
        internal::corrupted_id(ic)
    } else {
        ic
    }
}

fn read_records(file: &PathBuf) -> Result<Vec<Obligation>> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    parse_records(&text)
}

/// Every hypothesis and goal with free variables, as a formula in the
/// context of its sorted free variables.
fn record_classes(obs: &[Obligation]) -> Result<Vec<FormulaInContext>> {
    let mut out = Vec::new();
    for ob in obs {
        for f in ob.hyps.iter().chain([&ob.goal]) {
            let fv: Vec<Var> = f.free_vars().into_iter().collect();
            if !fv.is_empty() {
                out.push(FormulaInContext::new(fv, f.clone())?);
            }
        }
    }
    Ok(out)
}

fn run_dst(cmd: &DstCmd, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    match cmd {
        DstCmd::Set { a } => {
            let w = dst::definable_set(&dclass(a)?);
            sink.item("class", &w.cls);
            ctx.obligations(sink, &[w.obligation]);
        }
        DstCmd::Terminal => {
            let t = dst::dst_terminal();
            sink.item("terminal", &t);
            ctx.obligations(sink, &[dst::set_obligation(&t)]);
        }
        DstCmd::Product { a, b } => {
            let p = dst::dst_product(&dclass(a)?, &dclass(b)?)?;
            sink.item("object", &p.obj);
            show_arrow(sink, "proj1", &p.proj1);
            show_arrow(sink, "proj2", &p.proj2);
            let mut obs = vec![dst::set_obligation(&p.obj)];
            obs.extend(p.proj1.obligations());
            obs.extend(p.proj2.obligations());
            ctx.obligations(sink, &obs);
        }
        DstCmd::Exp { a, b } => {
            let e = dst::dst_exponential(&dclass(a)?, &dclass(b)?)?;
            sink.item("object", &e.obj);
            show_arrow(sink, "eval", &e.eval);
            let mut obs = vec![dst::set_obligation(&e.obj)];
            obs.extend(e.eval.obligations());
            ctx.obligations(sink, &obs);
        }
        DstCmd::Omega => {
            let t = dst::subobject_classifier();
            show_arrow(sink, "true", &t);
            ctx.obligations(sink, &t.obligations());
        }
    }
    Ok(())
}

fn run_ast(cmd: &AstCmd, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    match cmd {
        AstCmd::Power { x } => {
            let p = sm::power_data(&dclass(x)?)?;
            sink.item("PS", &p.ps);
            sink.item("mem", &p.mem);
            show_arrow(sink, "e", &p.e);
            let mut obs = p.e.obligations();
            obs.push(p.small_leg()?);
            ctx.obligations(sink, &obs);
        }
        AstCmd::Rep { r, x, z } => {
            let rep = sm::representing_arrow(&class(r)?, &dclass(x)?, &dclass(z)?)?;
            show_arrow(sink, "rho", &rep.arrow);
            let mut obs = vec![rep.typing, rep.small, rep.square];
            obs.extend(rep.arrow.obligations());
            ctx.obligations(sink, &obs);
        }
        AstCmd::Subset { x } => {
            let s = sm::subset_arrow(&dclass(x)?)?;
            sink.item("subset", &s.obj);
            show_arrow(sink, "arrow", &s.arrow);
            let mut obs = s.arrow.obligations();
            obs.push(s.small);
            ctx.obligations(sink, &obs);
        }
        AstCmd::Sup { f, lam } => {
            let (f, mut obs) = arrow(f)?;
            let (lam, ol) = arrow(lam)?;
            obs.extend(ol);
            obs.push(sm::smallness_obligation(&f)?);
            let s = sm::sup_along(&f, &lam)?;
            show_arrow(sink, "sup", &s);
            obs.extend(s.obligations());
            ctx.obligations(sink, &obs);
        }
        AstCmd::Algebra => {
            let z = sm::initial_zf_algebra()?;
            let obs = algebra_obligations(sink, &z);
            ctx.obligations(sink, &obs);
        }
    }
    Ok(())
}

pub fn algebra_obligations(sink: &mut Sink, z: &sm::ZfAlgebra) -> Vec<Obligation> {
    sink.item("carrier", &z.carrier);
    sink.item("order", &z.order.obj);
    show_arrow(sink, "sigma", &z.succ);
    let mut obs = vec![z.reflexivity(), z.order.small.clone()];
    obs.extend(z.succ.obligations());
    obs
}

fn run_gamma(cmd: &GammaCmd, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    let g = internal::gamma(&internal::set_internal());
    let global = |s: &str| GlobalElement::parse(s);
    let (res, mut obs) = match cmd {
        GammaCmd::Object { g: s } => g.object(dclass(s)?),
        GammaCmd::Arrow { g: s } => g.arrow(dclass(s)?),
        GammaCmd::Source { g: s } => (g.source(&global(s)?)?, vec![]),
        GammaCmd::Target { g: s } => (g.target(&global(s)?)?, vec![]),
        GammaCmd::Identity { g: s } => (g.identity(&global(s)?)?, vec![]),
        GammaCmd::Compose { a, b } => {
            let (c, m) = g.compose(&global(a)?, &global(b)?)?;
            (c, vec![m])
        }
    };
    sink.item("global", &res.cls);
    if !obs.iter().any(|o| o.name == res.uniqueness.name) {
        obs.push(res.uniqueness.clone());
    }
    ctx.obligations(sink, &obs);
    Ok(())
}

fn run_equiv(cmd: &EquivCmd, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    match cmd {
        EquivCmd::P { a } => {
            let (g, set) = eqv::functor_p_object(&dclass(a)?);
            sink.item("P", &g.cls);
            ctx.obligations(sink, &[set, g.uniqueness]);
        }
        EquivCmd::PArrow { f } => {
            let (f, mut obs) = arrow(f)?;
            let p = eqv::functor_p_arrow(&f)?;
            sink.item("P", &p.global.cls);
            sink.item("graph", &p.graph);
            sink.item("extent", &p.extent);
            obs.push(p.global.uniqueness);
            ctx.obligations(sink, &obs);
        }
        EquivCmd::Pprime { g } => {
            let g = GlobalElement::parse(g)?;
            sink.item("P'", eqv::functor_p_prime_object(&g));
            ctx.obligations(sink, &[g.uniqueness]);
        }
        EquivCmd::Roundtrip { g } => {
            let g = GlobalElement::parse(g)?;
            ctx.obligations(sink, &[g.uniqueness.clone(), eqv::roundtrip_pp_prime(&g)]);
        }
        EquivCmd::Iso { a } => {
            let a = dclass(a)?;
            let (eta, obs) = eqv::natural_iso_component(&a)?;
            show_arrow(sink, "eta", &eta);
            ctx.obligations(sink, &obs);
        }
        EquivCmd::Natural { f } => {
            let (f, mut obs) = arrow(f)?;
            obs.push(eqv::naturality_square(&f)?);
            ctx.obligations(sink, &obs);
        }
        EquivCmd::Name { code } => {
            let g = eqv::name_of(&HfSet::from_code(*code));
            sink.item("name", &g.cls);
            ctx.obligations(sink, &[g.uniqueness.clone(), eqv::roundtrip_pp_prime(&g)]);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = Sink::new(cli.json);
    sink.comment_items = cli.no_check;
    match run(&cli, &mut sink) {
        Ok(()) => {
            let failed = sink.failed;
            if let Err(e) = sink.finish(cli.out.as_deref()) {
                eprintln!("zfcat: {e}");
                return ExitCode::from(2);
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", error_json(&e));
            } else {
                eprintln!("zfcat: {e}");
            }
            ExitCode::from(2)
        }
    }
}
