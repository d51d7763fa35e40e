use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::structure::check_axioms;

fn main() {
    let specs = vec![
        ("I n=1", CaseSpec::new("I").size("n", 1)),
        ("I n=2", CaseSpec::new("I").size("n", 2)),
        ("I n=3", CaseSpec::new("I").size("n", 3)),
        ("II n=3", CaseSpec::new("II").size("n", 3)),
        ("III n=3", CaseSpec::new("III").size("n", 3)),
        ("III n=4", CaseSpec::new("III").size("n", 4)),
        ("IVa", CaseSpec::new("IVa")),
        ("IVb", CaseSpec::new("IVb")),
        ("IVc", CaseSpec::new("IVc")),
        ("V (2,1)", CaseSpec::new("V").size("a", 2).size("b", 1)),
        ("V (1,1)", CaseSpec::new("V").size("a", 1).size("b", 1)
            .rho_param("S1", (1, 3)).rho_param("S2", (1, 5))),
        ("VIa", CaseSpec::new("VIa")),
        ("VIb", CaseSpec::new("VIb")),
    ];
    for (name, spec) in specs {
        let t0 = std::time::Instant::now();
        match build_case(&spec) {
            Ok(s) => {
                let report = check_axioms(&s, 3);
                let status: Vec<String> = report
                    .checks
                    .iter()
                    .map(|c| format!("{}:{}", c.name, if c.passed { "ok" } else { "FAIL" }))
                    .collect();
                println!(
                    "{name:9} |W|={:4} rank={} [{}] {:?} {}",
                    s.group_order(),
                    s.rank(),
                    status.join(" "),
                    t0.elapsed(),
                    if report.all_passed() { "" } else { "<<<<<" }
                );
                for c in &report.checks {
                    if !c.passed {
                        println!("    {} witness: {:?}", c.name, c.witness);
                    }
                }
            }
            Err(e) => println!("{name:9} BUILD ERROR: {e}"),
        }
    }
}
