use zfcat::dst::{dst_exponential, set_obligation, DefinableClass};
use zfcat::equivalence::{coextension, name_of, natural_iso_component, p_prime_p, roundtrip_pp_prime};
use zfcat::internal::{cpair_obligations, internal_obligations, set_internal};
use zfcat::smallmaps::initial_zf_algebra;
use zfcat::syncat::intersect_classes;
use zfcat::{FormulaInContext, HfSet, Oracle, Result};

use crate::algebra_obligations;
use crate::report::{check_all, Sink};

pub fn run(oracle: &Oracle, sink: &mut Sink) -> Result<()> {
    let check = |sink: &mut Sink, obs: &[zfcat::Obligation]| sink.reports(check_all(oracle, obs));
    sink.item("universe", oracle.universe);

    sink.heading("intersection as a pullback");
    let a = FormulaInContext::parse("x |- x = 0 \\/ x = 1")?;
    let b = FormulaInContext::parse("y |- y = 1 \\/ y = sing(1)")?;
    let i = intersect_classes(&a, &b)?;
    sink.item("pullback", &i.pullback.obj);
    sink.item("diagonal", &i.projected);
    sink.item("expected", &i.expected);
    let mut obs = vec![i.iso_witness.clone()];
    obs.extend(i.pullback.p1.obligations());
    obs.extend(i.pullback.p2.obligations());
    check(sink, &obs);

    sink.heading("exponential");
    let a = DefinableClass::parse("x |- x = 0")?;
    let b = DefinableClass::parse("y |- y = 0 \\/ y = 1")?;
    let e = dst_exponential(&a, &b)?;
    sink.item("object", &e.obj);
    sink.item("eval", &e.eval);
    let mut obs = vec![set_obligation(&e.obj)];
    obs.extend(e.eval.obligations());
    check(sink, &obs);

    sink.heading("initial ZF-algebra");
    let z = initial_zf_algebra()?;
    let obs = algebra_obligations(sink, &z);
    check(sink, &obs);

    sink.heading("internal category SET");
    let ic = set_internal();
    sink.item("C1", &ic.c1);
    sink.item("Cpair", &ic.cpair);
    sink.item("comp", &ic.comp);
    let mut obs = internal_obligations(&ic)?;
    let (pb, onto) = cpair_obligations(&ic)?;
    obs.extend([pb, onto]);
    check(sink, &obs);

    sink.heading("P and P' roundtrip");
    let mut obs = Vec::new();
    for code in 0..4u64 {
        let g = name_of(&HfSet::from_code(code));
        sink.item(&format!("name #{code}"), &g.cls);
        obs.push(g.uniqueness.clone());
        obs.push(roundtrip_pp_prime(&g));
    }
    let a = DefinableClass::parse("x |- x = 0 \\/ x = 1")?;
    sink.item("P'(P(A))", p_prime_p(&a));
    obs.push(coextension(&a, &p_prime_p(&a)));
    obs.extend(natural_iso_component(&a)?.1);
    check(sink, &obs);
    Ok(())
}
