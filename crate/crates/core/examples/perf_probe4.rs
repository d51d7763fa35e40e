use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::diffop::{ad_l, build_l, DifferenceOperator};
use capelli_core::interp::interpolate_p;
use capelli_core::lattice::enumerate_lambda_plus;
use std::time::Instant;

fn main() {
    let s = build_case(&CaseSpec::new("IVc").k("R", (1, 5))).unwrap();
    let lams = enumerate_lambda_plus(&s, 2);
    let h = interpolate_p(&s, lams.iter().find(|l| s.ell_int(l) == 2).unwrap())
        .unwrap()
        .poly;
    let l = build_l(&s);
    // inspect L coefficient sizes
    for (eta, c) in l.terms().take(2) {
        eprintln!(
            "f_{eta}: num deg {} den {}",
            c.numerator_degree(),
            c.denominator_degree()
        );
    }
    let a0 = DifferenceOperator::from_multiplier(h);
    let t = Instant::now();
    let a1 = ad_l(&s, &l, &a0).unwrap();
    eprintln!("level1 {:?}", t.elapsed());
    let mut max_terms = 0;
    for (_, c) in a1.terms() {
        max_terms = max_terms.max(c.cofactor().num_terms());
    }
    eprintln!("level1 coeffs: max num terms {}", max_terms);
    let t = Instant::now();
    let a2 = ad_l(&s, &l, &a1).unwrap();
    eprintln!("level2 {:?}", t.elapsed());
    for (tau, c) in a2.terms().take(4) {
        eprintln!(
            "  b_{tau}: num deg {} cofactor terms {} num factors {} den deg {}",
            c.numerator_degree(),
            c.cofactor().num_terms(),
            c.numerator_factors().values().sum::<u32>(),
            c.denominator_degree()
        );
    }
    let _ = a2;
}
