use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::diffop::{apply_interpolated, build_e, build_l, ad_l, DifferenceOperator};
use capelli_core::interp::{interpolate_p, invariant_basis};
use capelli_core::lattice::enumerate_lambda_plus;

fn main() {
    let s = build_case(&CaseSpec::new("IVc").k("R", (1, 5))).unwrap();
    eprintln!("IVc |W|={} rank={} |Λ₁|={}", s.group_order(), s.rank(), s.lambda1().len());

    let t0 = std::time::Instant::now();
    let b = invariant_basis(&s, 4);
    eprintln!("invariant_basis(4): {} elements {:?}", b.len(), t0.elapsed());

    let lams = enumerate_lambda_plus(&s, 4);
    eprintln!("#Λ₊(4) = {}", lams.len());

    let t0 = std::time::Instant::now();
    let p = interpolate_p(&s, &lams[lams.len() - 1]).unwrap();
    eprintln!("one interpolate_p (ℓ=4): {:?} (deg {})", t0.elapsed(), p.poly.degree());

    let e = build_e(&s);
    let t0 = std::time::Instant::now();
    let r2 = apply_interpolated(&s, &e, &p.poly).unwrap();
    eprintln!("interpolated apply(E, p): {:?}", t0.elapsed());
    let eig = s.ell_value(&(s.rho() + &lams[lams.len()-1]));
    assert_eq!(r2, p.poly.scale(&eig));
    eprintln!("eigencheck OK");

    let t0 = std::time::Instant::now();
    let r1 = e.apply(&p.poly).unwrap();
    eprintln!("symbolic apply(E, p): {:?}", t0.elapsed());
    assert_eq!(r1, r2);

    // ad L levels on a degree-2 h
    let h = interpolate_p(&s, &lams.iter().find(|l| s.ell_int(l) == 2).unwrap()).unwrap().poly;
    let l = build_l(&s);
    let a0 = DifferenceOperator::from_multiplier(h.clone());
    let t0 = std::time::Instant::now();
    let a1 = ad_l(&s, &l, &a0).unwrap();
    eprintln!("ad_l level 1: support {} {:?}", a1.num_terms(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let a2 = ad_l(&s, &l, &a1).unwrap();
    eprintln!("ad_l level 2: support {} {:?}", a2.num_terms(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let a3 = ad_l(&s, &l, &a2).unwrap();
    eprintln!("ad_l level 3 (tail): support {} {:?}", a3.num_terms(), t0.elapsed());
}
