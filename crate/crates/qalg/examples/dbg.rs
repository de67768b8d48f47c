use qalg::catalog::*;
use qalg::rewrite::CompletionConfig;
use qalg::weights::BaseAlgebra;

fn main() {
    let cfg = CompletionConfig { verbose: true, ..Default::default() };
    let gen = build_drinfeldian_generic(BaseAlgebra::C2, None, AParam::Tau).unwrap();
    let exp = build_drinfeldian_explicit(BaseAlgebra::C2).unwrap();
    let t = std::time::Instant::now();
    let esys = exp.complete(&cfg).unwrap();
    println!("explicit: {} rules, frontier {}, unresolved {}, {:?}", esys.rules.len(), esys.frontier_overlaps, esys.unresolved.len(), t.elapsed());
    let t = std::time::Instant::now();
    let gsys = gen.complete(&cfg).unwrap();
    println!("generic: {} rules, frontier {}, unresolved {}, {:?}", gsys.rules.len(), gsys.frontier_overlaps, gsys.unresolved.len(), t.elapsed());
    for rep in [
        check_ideal_containment(&esys, &gen.pres.relations, "generic in explicit").unwrap(),
        check_ideal_containment(&gsys, &exp.pres.relations, "explicit in generic").unwrap(),
    ] {
        for o in &rep.outcomes {
            if let Some(w) = &o.witness {
                println!("FAIL {} / {}: {}", rep.check, o.subject, w);
            }
        }
        println!("{}: {}", rep.check, if rep.passed() { "ok" } else { "FAILED" });
    }
}
