use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::diffop::{ad_l, build_l, DifferenceOperator};
use capelli_core::interp::interpolate_p;
use capelli_core::lattice::enumerate_lambda_plus;

fn main() {
    let s = build_case(&CaseSpec::new("IVc").k("R", (1, 5))).unwrap();
    let lams = enumerate_lambda_plus(&s, 2);
    let h = interpolate_p(&s, lams.iter().find(|l| s.ell_int(l) == 2).unwrap())
        .unwrap()
        .poly;
    eprintln!("h: deg {} terms {}", h.degree(), h.num_terms());
    let l = build_l(&s);
    let a0 = DifferenceOperator::from_multiplier(h);
    let t0 = std::time::Instant::now();
    let a1 = ad_l(&s, &l, &a0).unwrap();
    eprintln!("level 1: support {} {:?}", a1.num_terms(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let a2 = ad_l(&s, &l, &a1).unwrap();
    eprintln!("level 2: support {} {:?}", a2.num_terms(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let a3 = ad_l(&s, &l, &a2).unwrap();
    eprintln!("level 3 (tail): support {} {:?}", a3.num_terms(), t0.elapsed());
}
