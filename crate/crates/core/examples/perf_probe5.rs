use capelli_core::catalog::{build_case, CaseSpec};
use capelli_core::diffop::{apply_interpolated, d_operator};
use capelli_core::interp::interpolate_p;
use capelli_core::lattice::enumerate_lambda_plus;
use std::time::Instant;

fn main() {
    let s = build_case(&CaseSpec::new("IVc").k("R", (1, 5))).unwrap();
    let lams2 = enumerate_lambda_plus(&s, 2);
    let hs: Vec<_> = lams2
        .iter()
        .filter(|l| s.ell_int(l) > 0)
        .map(|l| interpolate_p(&s, l).unwrap().poly)
        .collect();
    eprintln!("{} operators to build", hs.len());
    let mut ops = Vec::new();
    for h in &hs {
        let t = Instant::now();
        let d = d_operator(&s, h).unwrap();
        eprintln!("d_operator(deg {}): support {} in {:?}", h.degree(), d.num_terms(), t.elapsed());
        ops.push(d);
    }
    let lam = lams2.iter().find(|l| s.ell_int(l) == 2).unwrap();
    let p = interpolate_p(&s, lam).unwrap().poly;
    for (h, d) in hs.iter().zip(&ops) {
        let t = Instant::now();
        let applied = apply_interpolated(&s, d, &p).unwrap();
        assert_eq!(applied, p.scale(&h.evaluate(&(s.rho() + lam))));
        eprintln!("apply_interpolated + eigencheck: {:?}", t.elapsed());
    }
}
