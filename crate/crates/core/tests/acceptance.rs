mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{arb_env, arb_formula, arrows, classes, dc, pool, rename_bound};
use num_bigint::BigUint;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use proptest::prelude::*;
use zfcat::dst::{dst_exponential, dst_product, dst_to_terminal, DefinableClass};
use zfcat::equivalence::{coextension, name_of, naturality_square, p_prime_p, roundtrip_pp_prime};
use zfcat::hforacle::universe::rank_size;
use zfcat::internal::{corrupted_id, internal_obligations, set_internal};
use zfcat::kernel::{canonicalize, parse, Formula};
use zfcat::smallmaps::{initial_zf_algebra, small_iff_set, smallness_obligation};
use zfcat::syncat::{collapse_context, compose, graph, identity, intersect_classes, pullback, Arrow};
use zfcat::{
    axiom, parse_fof, to_tptp, AxiomId, FormulaInContext, HfSet, Obligation, ObligationBundle, Oracle,
    Var, Verdict,
};

type Outcome = Result<String, String>;

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = body();
    let took = start.elapsed();
    let (ok, detail) = match res {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the {}s limit", limit.as_secs())),
        Err(d) => (false, d),
    };
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {tag} {title} ({:.2}s): {detail}", took.as_secs_f64());
    ok
}

fn oracle(n: u32) -> Oracle {
    Oracle::rank(n).expect("rank universe")
}

fn verdict(o: &Oracle, ob: &Obligation) -> Result<Verdict, String> {
    o.check(ob).map_err(|e| format!("{}: {e}", ob.name))
}

fn valid(o: &Oracle, ob: &Obligation) -> Result<bool, String> {
    Ok(verdict(o, ob)?.is_valid())
}

/// Checks every obligation and names the ones that fail.
fn all_valid(o: &Oracle, obs: &[Obligation]) -> Result<Vec<String>, String> {
    let mut bad = Vec::new();
    for ob in obs {
        if let Verdict::Counterexample(m) = verdict(o, ob)? {
            let cx: Vec<String> = m.iter().map(|(v, s)| format!("{v}=#{}", s.code())).collect();
            bad.push(format!("{} [{}]", ob.name, cx.join(", ")));
        }
    }
    Ok(bad)
}

fn extension(o: &Oracle, x: &Var, body: &Formula) -> Result<BTreeSet<HfSet>, String> {
    Ok(o.extension(x, body).map_err(|e| e.to_string())?.into_iter().collect())
}

fn renaming() -> impl Strategy<Value = BTreeMap<Var, Var>> {
    prop::collection::vec((0..4usize, 0..4usize), 0..4).prop_map(|pairs| {
        let p = pool();
        pairs.into_iter().map(|(a, b)| (p[a].clone(), p[b].clone())).collect()
    })
}

fn kernel_suite() -> Outcome {
    let o = oracle(4);
    let config = Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let seen = std::cell::Cell::new(0usize);
    let strategy = (arb_formula(), renaming(), arb_env());
    runner
        .run(&strategy, |(f, m, env)| {
            seen.set(seen.get() + 1);
            let fail = |what: &str| Err(TestCaseError::fail(format!("{what}: {f}")));
            let e = |r: zfcat::Result<bool>| r.map_err(|e| TestCaseError::fail(e.to_string()));
            let g = f.substitute(&m);
            let moved: BTreeSet<Var> = f.free_vars().iter().map(|v| m.get(v).unwrap_or(v).clone()).collect();
            if g.free_vars() != moved {
                return fail("free variables of a substitution");
            }
            let env2: BTreeMap<Var, HfSet> =
                env.keys().map(|v| (v.clone(), env[m.get(v).unwrap_or(v)].clone())).collect();
            if e(o.eval(&g, &env))? != e(o.eval(&f, &env2))? {
                return fail("substitution semantics");
            }
            let (a, b) = (rename_bound(&f, "a"), rename_bound(&f, "b"));
            if !(f.alpha_eq(&f) && f.alpha_eq(&a) && a.alpha_eq(&f) && a.alpha_eq(&b) && f.alpha_eq(&b)) {
                return fail("alpha equivalence");
            }
            let c = canonicalize(&f);
            if canonicalize(&c) != c || canonicalize(&a) != c || !c.free_vars().is_subset(&f.free_vars()) {
                return fail("canonicalize");
            }
            let truth = e(o.eval(&f, &env))?;
            if e(o.eval(&c, &env))? != truth || e(o.eval(&a, &env))? != truth {
                return fail("truth preservation in V_4");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} generated formulas, substitution, alpha, canonicalize and V_4 truth laws", seen.get()))
}

fn category_laws() -> Outcome {
    let all = arrows();
    let objects: Vec<&FormulaInContext> = {
        let mut v: Vec<&FormulaInContext> = Vec::new();
        for (_, f) in &all {
            for o in [&f.dom, &f.cod] {
                if !v.iter().any(|p| p.same_as(o)) {
                    v.push(o);
                }
            }
        }
        v
    };
    let mut units = 0;
    for (name, f) in &all {
        let l = compose(&identity(&f.dom), f).map_err(|e| e.to_string())?;
        let r = compose(f, &identity(&f.cod)).map_err(|e| e.to_string())?;
        if !l.same_as(f) || !r.same_as(f) {
            return Err(format!("unit law fails for {name}"));
        }
        units += 2;
    }
    let mut triples = 0;
    for (nf, f) in &all {
        for (ng, g) in all.iter().filter(|(_, g)| f.cod.same_as(&g.dom)) {
            for (nh, h) in all.iter().filter(|(_, h)| g.cod.same_as(&h.dom)) {
                let fg = compose(f, g).map_err(|e| e.to_string())?;
                let gh = compose(g, h).map_err(|e| e.to_string())?;
                let a = compose(&fg, h).map_err(|e| e.to_string())?;
                let b = compose(f, &gh).map_err(|e| e.to_string())?;
                if !a.same_as(&b) {
                    return Err(format!("associativity fails for {nf};{ng};{nh}"));
                }
                triples += 1;
            }
        }
    }
    let o = oracle(4);
    let obs: Vec<Obligation> = all.iter().flat_map(|(_, f)| f.obligations()).collect();
    let bad = all_valid(&o, &obs)?;
    if !bad.is_empty() {
        return Err(format!("arrow obligations refuted in V_4: {}", bad.join("; ")));
    }
    Ok(format!(
        "{} arrows among {} objects, {units} unit and {triples} associativity checks, {} obligations valid in V_4",
        all.len(),
        objects.len(),
        obs.len()
    ))
}

fn intersections() -> Outcome {
    let pairs = [
        ("x |- x = 0 \\/ x = 1", "y |- y = 1 \\/ y = sing(1)"),
        ("x |- x sub 1", "y |- y = 0"),
        ("x |- x = x", "y |- y != y"),
        ("x |- forall t. t in x -> t = 0", "y |- exists t. t in y"),
        ("x |- x in upair(0, 1)", "y |- y = upair(0, 1) \\/ y = 0"),
    ];
    let o = oracle(3);
    for (p, q) in pairs {
        let a = FormulaInContext::parse(p).map_err(|e| e.to_string())?;
        let b = FormulaInContext::parse(q).map_err(|e| e.to_string())?;
        let i = intersect_classes(&a, &b).map_err(|e| e.to_string())?;
        let got = extension(&o, &i.projected.ctx[0], &i.projected.body)?;
        let want = extension(&o, &i.expected.ctx[0], &i.expected.body)?;
        let mut direct = BTreeSet::new();
        for s in o.universe.elements() {
            let in_a = o.eval(&a.body, &[(a.ctx[0].clone(), s.clone())].into()).map_err(|e| e.to_string())?;
            let in_b = o.eval(&b.body, &[(b.ctx[0].clone(), s.clone())].into()).map_err(|e| e.to_string())?;
            if in_a && in_b {
                direct.insert(s);
            }
        }
        if got != want || got != direct {
            return Err(format!("pullback of {p} and {q} is not the intersection in V_3"));
        }
        if !valid(&o, &i.iso_witness)? {
            return Err(format!("intersection witness refuted for {p} and {q}"));
        }
    }
    Ok(format!("{} pairs coextensive over V_3", pairs.len()))
}

const V3_TERMS: [&str; 4] = ["0", "1", "sing(1)", "upair(0, 1)"];

fn subset_class(var: &str, mask: u32) -> DefinableClass {
    let alts: Vec<String> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| format!("{var} = {}", V3_TERMS[i])).collect();
    let body = if alts.is_empty() { format!("{var} != {var}") } else { alts.join(" \\/ ") };
    dc(&format!("{var} |- {body}"))
}

fn members(mask: u32) -> Vec<HfSet> {
    (0..4u64).filter(|i| mask & (1 << i) != 0).map(HfSet::from_code).collect()
}

/// Every function from `a` to `b`, as a set of pairs.
fn functions(a: &[HfSet], b: &[HfSet]) -> Vec<HfSet> {
    let mut out = vec![Vec::new()];
    for x in a {
        out = out
            .into_iter()
            .flat_map(|f: Vec<HfSet>| b.iter().map(move |y| [f.clone(), vec![HfSet::pair(x, y)]].concat()))
            .collect();
    }
    out.iter().map(HfSet::from_elements).collect()
}

fn topos_counts() -> Outcome {
    let o = oracle(5);
    let limit = BigUint::from(rank_size(5));
    let (mut products, mut exps) = (0, 0);
    for ma in 0..16u32 {
        for mb in 0..16u32 {
            let (a, b) = (subset_class("x", ma), subset_class("y", mb));
            let (ea, eb) = (members(ma), members(mb));
            let p = dst_product(&a, &b).map_err(|e| e.to_string())?;
            let got = extension(&o, p.obj.var(), p.obj.body())?;
            let want: BTreeSet<HfSet> = ea.iter().flat_map(|x| eb.iter().map(move |y| HfSet::pair(x, y))).collect();
            if got != want || got.len() != ea.len() * eb.len() {
                return Err(format!("|A x B| is {} for masks {ma:04b}, {mb:04b}", got.len()));
            }
            products += 1;
            let fs = functions(&ea, &eb);
            if fs.iter().any(|f| *f.code() >= limit) {
                continue;
            }
            let e = dst_exponential(&a, &b).map_err(|e| e.to_string())?;
            let got = extension(&o, e.obj.var(), e.obj.body())?;
            let count = eb.len().pow(ea.len() as u32);
            if got != fs.into_iter().collect() || got.len() != count {
                return Err(format!("|B^A| is {} not {count} for masks {ma:04b}, {mb:04b}", got.len()));
            }
            exps += 1;
        }
    }
    Ok(format!(
        "{products} product pairs and {exps} exponential pairs (all functions inside V_5) exact in V_5"
    ))
}

fn small_corpus() -> Vec<(String, Arrow)> {
    let c = classes();
    let incl = |a: usize, b: usize| graph(c[a].cls(), c[b].cls(), |xs, ys, _| Ok(Formula::eqs(xs, ys))).unwrap();
    let constant = |a: usize, b: usize| graph(c[a].cls(), c[b].cls(), |_, ys, _| Ok(c[b].at(&ys[0]))).unwrap();
    let mut out: Vec<(String, Arrow)> = (0..c.len()).map(|i| (format!("id{i}"), identity(c[i].cls()))).collect();
    for (a, b) in [(0, 2), (1, 2), (5, 0), (3, 1), (0, 4), (7, 8), (2, 6)] {
        out.push((format!("inc{a}{b}"), incl(a, b)));
    }
    for (a, b) in [(2, 0), (4, 1), (6, 7), (2, 5)] {
        out.push((format!("const{a}{b}"), constant(a, b)));
    }
    out.push(("bang2".into(), dst_to_terminal(&c[2]).unwrap()));
    out.push(("bang7".into(), dst_to_terminal(&c[7]).unwrap()));
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Small {
    Yes,
    /// Refuted, but the fiber at the counterexample is a set outside the universe.
    Truncated,
    No,
}

fn smallness(o: &Oracle, f: &Arrow) -> Result<Small, String> {
    let ob = smallness_obligation(f).map_err(|e| e.to_string())?;
    if valid(o, &ob)? {
        return Ok(Small::Yes);
    }
    let (x, y) = (&f.rel.ctx[0], &f.rel.ctx[1]);
    for at in o.universe.elements() {
        let env = [(y.clone(), at)].into();
        let fiber = o.solutions(std::slice::from_ref(x), &f.rel.body, &env).map_err(|e| e.to_string())?;
        if !o.universe.contains(&HfSet::from_elements(fiber.iter().map(|v| &v[0]))) {
            return Ok(Small::Truncated);
        }
    }
    Ok(Small::No)
}

fn brief(items: &[String]) -> String {
    match items.len() {
        0..=4 => items.join(", "),
        n => format!("{} and {} more", items[..3].join(", "), n - 3),
    }
}

/// Genuine refutations and those explained by truncation.
#[derive(Default)]
struct Tally {
    genuine: Vec<String>,
    truncated: Vec<String>,
}

impl Tally {
    fn record(&mut self, s: Small, what: String) {
        match s {
            Small::Yes => {}
            Small::Truncated => self.truncated.push(what),
            Small::No => self.genuine.push(what),
        }
    }

    fn outcome(self, summary: String) -> Outcome {
        if self.genuine.is_empty() && self.truncated.is_empty() {
            return Ok(summary);
        }
        let mut out = summary;
        if !self.truncated.is_empty() {
            out.push_str(&format!(
                "; {} refuted only because the witness set lies outside the universe: {}",
                self.truncated.len(),
                brief(&self.truncated)
            ));
        }
        if !self.genuine.is_empty() {
            out.push_str(&format!("; refuted: {}", brief(&self.genuine)));
        }
        Err(out)
    }
}

fn small_maps() -> Outcome {
    let o4 = oracle(4);
    let corpus = small_corpus();
    let mut tally = Tally::default();
    let mut monos = 0;
    let mut is_small = BTreeMap::new();
    for (name, f) in &corpus {
        for ob in f.obligations() {
            if !valid(&o4, &ob)? {
                return Err(format!("{name} is not an arrow in V_4"));
            }
        }
        let s = smallness(&o4, f)?;
        is_small.insert(name.clone(), s == Small::Yes);
        if valid(&o4, &f.mono_obligation())? {
            monos += 1;
            tally.record(s, format!("mono {name}"));
        }
    }
    let mut composites = 0;
    for (nf, f) in &corpus {
        for (ng, g) in corpus.iter().filter(|(_, g)| f.cod.same_as(&g.dom)) {
            if is_small[nf] && is_small[ng] {
                composites += 1;
                let fg = compose(f, g).map_err(|e| e.to_string())?;
                tally.record(smallness(&o4, &fg)?, format!("{nf};{ng}"));
            }
        }
    }
    let mut pullbacks = 0;
    for (nf, f) in corpus.iter().filter(|(n, _)| is_small[n]) {
        for (ng, g) in corpus.iter().filter(|(_, g)| g.cod.same_as(&f.cod)) {
            let pb = pullback(f, g).map_err(|e| e.to_string())?;
            let c = collapse_context(&pb.obj).map_err(|e| e.to_string())?;
            let leg = compose(&c.iso_inv, &pb.p2).map_err(|e| e.to_string())?;
            pullbacks += 1;
            tally.record(smallness(&o4, &leg)?, format!("pullback of {nf} along {ng}"));
        }
    }
    let mut agree = 0;
    let universal = dc("x |- x = x");
    for a in classes().iter().chain([&universal]) {
        let (s, t) = small_iff_set(a).map_err(|e| e.to_string())?;
        if valid(&o4, &s)? != valid(&o4, &t)? {
            tally.genuine.push(format!("small and set verdicts differ on {a}"));
        }
        agree += 1;
    }
    let o3 = oracle(3);
    let z = initial_zf_algebra().map_err(|e| e.to_string())?;
    let order_leg = compose(&z.order.arrow, &z.order.prod.proj2).map_err(|e| e.to_string())?;
    tally.record(smallness(&o3, &order_leg)?, "order small in V_3".into());
    let mut alg = vec![z.reflexivity()];
    alg.extend(z.succ.obligations());
    for ob in &alg {
        if let Verdict::Counterexample(m) = verdict(&o3, ob)? {
            let x = &z.succ.rel.ctx[0];
            let image_outside = m.get(x).is_some_and(|v| !o3.universe.contains(&HfSet::singleton(v)));
            let what = format!("{} in V_3", ob.name);
            tally.record(if image_outside { Small::Truncated } else { Small::No }, what);
        }
    }
    let summary = format!(
        "{monos} monos, {composites} composites, {pullbacks} pullbacks, {agree} classes, {} algebra obligations",
        alg.len() + 1
    );
    tally.outcome(summary)
}

fn set_category() -> Outcome {
    let o = oracle(4);
    let ic = set_internal();
    let obs = internal_obligations(&ic).map_err(|e| e.to_string())?;
    let bad = all_valid(&o, &obs)?;
    if !bad.is_empty() {
        return Err(format!("refuted in V_4: {}", bad.join("; ")));
    }
    let corrupt = internal_obligations(&corrupted_id(set_internal())).map_err(|e| e.to_string())?;
    let refuted = all_valid(&o, &corrupt)?;
    if refuted.is_empty() {
        return Err("corrupted identity passes every law in V_4".into());
    }
    Ok(format!("{} laws valid; corrupted identity refuted by {}", obs.len(), refuted[0]))
}

/// Whether the code `⟨graph(F), extent(cod)⟩` naming `F` lies in the universe.
fn name_fits(o: &Oracle, f: &Arrow) -> Result<bool, String> {
    let sols = o.solutions(&f.rel.ctx, &f.rel.body, &BTreeMap::new()).map_err(|e| e.to_string())?;
    let pairs: Vec<HfSet> = sols.iter().map(|v| HfSet::pair(&v[0], &v[1])).collect();
    if pairs.iter().any(|p| !o.universe.contains(p)) {
        return Ok(false);
    }
    let graph = HfSet::from_elements(&pairs);
    let extent = extension(o, &f.cod.ctx[0], &f.cod.body)?;
    let extent = HfSet::from_elements(&extent);
    Ok(o.universe.contains(&graph)
        && o.universe.contains(&extent)
        && o.universe.contains(&HfSet::pair(&graph, &extent)))
}

fn equivalence() -> Outcome {
    let o = oracle(4);
    let mut tally = Tally::default();
    let size = rank_size(4);
    for code in 0..size {
        let g = name_of(&HfSet::from_code(code));
        if !valid(&o, &roundtrip_pp_prime(&g))? {
            tally.genuine.push(format!("roundtrip at #{code}"));
        }
    }
    let cs = classes();
    for a in &cs {
        if !valid(&o, &coextension(a, &p_prime_p(a)))? {
            tally.genuine.push(format!("P'(P(A)) differs from {a}"));
        }
    }
    let corpus = small_corpus();
    let mut squares = 0;
    for (name, f) in &corpus {
        let sq = naturality_square(f).map_err(|e| e.to_string())?;
        squares += 1;
        if !valid(&o, &sq)? {
            let s = if name_fits(&o, f)? { Small::No } else { Small::Truncated };
            tally.record(s, format!("square for {name}"));
        }
    }
    tally.outcome(format!("{size} names, {} classes, {squares} naturality squares in V_4", cs.len()))
}

fn axioms() -> Outcome {
    let sizes: Vec<u64> = (2..=4).map(|n| oracle(n).universe.size()).collect();
    if sizes != [2, 4, 16] {
        return Err(format!("universe sizes {sizes:?}"));
    }
    let o = oracle(4);
    let p = Var::new("p");
    let t = Var::new("t");
    let seps = ["t = 0", "t in p", "t sub p", "exists u. u in t", "~ t = p /\\ t in t"];
    let mut want_valid = vec![AxiomId::Extensionality, AxiomId::Foundation, AxiomId::Union];
    for s in seps {
        let body = parse(s).map_err(|e| e.to_string())?;
        want_valid.push(AxiomId::separation(body, std::slice::from_ref(&p), &t));
    }
    let want_refuted = [AxiomId::Pairing, AxiomId::Powerset, AxiomId::Infinity];
    let holds = |id: &AxiomId| -> Result<bool, String> {
        let f = axiom(id).map_err(|e| e.to_string())?;
        o.eval(&f, &BTreeMap::new()).map_err(|e| e.to_string())
    };
    for id in &want_valid {
        if !holds(id)? {
            return Err(format!("{id} refuted in V_4"));
        }
    }
    for id in &want_refuted {
        if holds(id)? {
            return Err(format!("{id} holds in V_4"));
        }
    }
    Ok(format!("sizes 2, 4, 16; {} valid and {} refuted", want_valid.len(), want_refuted.len()))
}

fn export_corpus() -> Vec<Obligation> {
    let mut obs: Vec<Obligation> = arrows().iter().flat_map(|(_, f)| f.obligations()).collect();
    obs.extend(small_corpus().iter().flat_map(|(_, f)| smallness_obligation(f)));
    obs.extend(internal_obligations(&set_internal()).unwrap());
    for a in classes() {
        obs.push(coextension(&a, &p_prime_p(&a)));
    }
    obs
}

fn export() -> Outcome {
    let obs = export_corpus();
    let mut bundle = ObligationBundle::new(obs.clone());
    bundle.axioms = AxiomId::finite();
    let first = to_tptp(&bundle).map_err(|e| e.to_string())?;
    let second = to_tptp(&ObligationBundle { axioms: AxiomId::finite(), ..ObligationBundle::new(export_corpus()) })
        .map_err(|e| e.to_string())?;
    if first != second {
        return Err("two exports differ".into());
    }
    let entries = parse_fof(&first).map_err(|e| e.to_string())?;
    let conjectures: Vec<_> = entries.iter().filter(|e| e.role == "conjecture").collect();
    if conjectures.len() != obs.len() {
        return Err(format!("{} of {} conjectures re-parsed", conjectures.len(), obs.len()));
    }
    for (ob, e) in obs.iter().zip(&conjectures) {
        if !e.formula.alpha_eq(&ob.closure()) {
            return Err(format!("{} changed in the round trip", ob.name));
        }
    }
    Ok(format!("{} obligations and {} axioms, identical across runs", obs.len(), bundle.axioms.len()))
}

fn zfcat_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let bin = dir.join(format!("zfcat{}", std::env::consts::EXE_SUFFIX));
    if bin.exists() {
        return Some(bin);
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../Cargo.toml");
    let status = Command::new(env!("CARGO"))
        .args(["build", "-q", "-p", "zfcat-cli", "--bin", "zfcat", "--manifest-path"])
        .arg(&manifest)
        .status()
        .ok()?;
    (status.success() && bin.exists()).then_some(bin)
}

fn demo() -> Outcome {
    let bin = zfcat_binary().ok_or("zfcat binary not found")?;
    let out = Command::new(bin)
        .args(["demo", "--universe", "V4"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let failing: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with("counterexample"))
        .map(|l| l.split_whitespace().nth(1).unwrap_or_default())
        .collect();
    match out.status.code() {
        Some(0) => Ok("demo exits 0".into()),
        code => Err(format!("demo exits {code:?}; refuted in V_4: {}", failing.join(", "))),
    }
}

fn main() {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let s = Duration::from_secs;
    let table: [Criterion; 10] = [
        (1, "kernel laws", s(10), kernel_suite),
        (2, "category laws", s(30), category_laws),
        (3, "intersection pullbacks", s(5), intersections),
        (4, "product and exponential counts", s(60), topos_counts),
        (5, "small maps", s(60), small_maps),
        (6, "internal category SET", s(60), set_category),
        (7, "P and P' equivalence", s(60), equivalence),
        (8, "axioms in V_n", s(10), axioms),
        (9, "FOF export", s(5), export),
        (10, "demo in V_4", s(300), demo),
    ];
    let results: Vec<bool> = table
        .into_iter()
        .filter(|(n, ..)| only.is_empty() || only.contains(n))
        .map(|(n, title, limit, body)| criterion(n, title, limit, body))
        .collect();
    let passed = results.iter().filter(|r| **r).count();
    println!("{passed}/{} criteria pass", results.len());
}
