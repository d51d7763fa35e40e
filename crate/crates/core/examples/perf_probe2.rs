use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::diffop::{apply_interpolated, build_e};
use capelli_core::interp::interpolate_p;
use capelli_core::lattice::enumerate_lambda_plus;

fn main() {
    let s = build_case(&CaseSpec::new("IVc").k("R", (1, 5))).unwrap();
    let lams = enumerate_lambda_plus(&s, 4);
    eprintln!("#Λ₊(4) = {}", lams.len());
    let t0 = std::time::Instant::now();
    let p = interpolate_p(&s, &lams[lams.len() - 1]).unwrap();
    eprintln!("interpolate_p(ℓ=4): {:?} deg {} terms {}", t0.elapsed(), p.poly.degree(), p.poly.num_terms());
    let e = build_e(&s);
    eprintln!("E built, support {}", e.num_terms());
    let t0 = std::time::Instant::now();
    let r2 = apply_interpolated(&s, &e, &p.poly).unwrap();
    eprintln!("interpolated apply(E,p): {:?} (result deg {})", t0.elapsed(), r2.degree());
    let t0 = std::time::Instant::now();
    let r1 = e.apply(&p.poly).unwrap();
    eprintln!("symbolic apply(E,p): {:?}", t0.elapsed());
    assert_eq!(r1, r2);
    eprintln!("agree");
}
