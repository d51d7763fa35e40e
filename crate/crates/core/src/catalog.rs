//! Machine-readable constructors for the tabulated structure families
//! I, II, III (odd/even), IVa, IVb, IVc, V, VIa, VIb.
//!
//! Each family is stored declaratively as one ambient-coordinate record
//! parameterized by its size, so the data can be audited line by line:
//! Σ and Σ∨ rows, ℓ, reflection generators, the ±W-orbit bracket, the
//! ρ row, and Δ⁺/Φ⁺ rows. The loader cross-checks every stored row
//! against the data derived from W, failing with `OrbitMismatch` on any
//! disagreement, which guards against data-entry bugs in both
//! directions.

use std::collections::BTreeMap;

use crate::exact::Rational;
use crate::structure::{AmbientStructure, SignMark, StructureData, DEFAULT_GROUP_BOUND};
use crate::{Error, Result};

/// Case selection: family id, size parameters, and the parameter
/// assignment per orbit label. Missing k-values fall back to distinct
/// small rationals with pairwise-coprime denominators.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub case_id: String,
    pub size_params: BTreeMap<String, i64>,
    pub k_params: BTreeMap<String, Rational>,
    /// Explicit ρ construction values; required for Case V with a = b,
    /// where the table has no ρ row.
    pub rho_params: Option<BTreeMap<String, Rational>>,
    pub group_bound: usize,
}

impl CaseSpec {
    pub fn new(case_id: &str) -> Self {
        CaseSpec {
            case_id: case_id.to_string(),
            size_params: BTreeMap::new(),
            k_params: BTreeMap::new(),
            rho_params: None,
            group_bound: DEFAULT_GROUP_BOUND,
        }
    }

    pub fn size(mut self, name: &str, value: i64) -> Self {
        self.size_params.insert(name.to_string(), value);
        self
    }

    pub fn k(mut self, label: &str, value: (i64, i64)) -> Self {
        self.k_params
            .insert(label.to_string(), Rational::new(value.0, value.1));
        self
    }

    pub fn rho_param(mut self, label: &str, value: (i64, i64)) -> Self {
        self.rho_params
            .get_or_insert_with(BTreeMap::new)
            .insert(label.to_string(), Rational::new(value.0, value.1));
        self
    }
}

/// Static description of one family for `list-cases`.
#[derive(Clone, Debug)]
pub struct CaseInfo {
    pub case_id: &'static str,
    pub size_constraints: &'static str,
    pub orbit_labels: &'static str,
    /// The group actions realizing this family; documentation only.
    pub realizations: &'static [&'static str],
}

/// The nine tabulated families.
pub fn list_cases() -> Vec<CaseInfo> {
    vec![
        CaseInfo {
            case_id: "I",
            size_constraints: "1 <= n",
            orbit_labels: "[+-R,...,+-R,S]",
            realizations: &[
                "GL_p on S^2(C^p): n=p, r=1/2, s=1/2",
                "GL_p x GL_q on C^p(x)C^q (p<=q): n=p, r=1, s=(q-p+1)/2",
                "GL_p on Alt^2(C^p): n=floor(p/2), r=2, s=1/2 or 3/2",
                "Sp_2p on C^2p: n=1, s=p (no R orbit)",
                "SO_p x C* on C^p: n=2, r=p/2-1, s=1/2",
                "Spin_10 x C* on C^16: n=2, r=3, s=5/2",
                "Spin_7 x C* on C^8: n=2, r=3, s=1/2",
                "G_2 x C* on C^7: n=2, r=5/2, s=1/2",
                "E_6 x C* on C^27: n=3, r=4, s=1/2",
            ],
        },
        CaseInfo {
            case_id: "II",
            size_constraints: "3 <= n",
            orbit_labels: "[R,-R,R,-R,...,S]",
            realizations: &[
                "GL_p x GL_q on (C^p(x)C^q)+C^q: n=2p+1 or 2q, r=1/2",
                "GL_1 x GL_q on (C(x)C^q)+(C^q)*: n=3, r=(q-1)/2, s=1/2",
                "GL_p on Alt^2(C^p)+C^p: n=p, r=1, s=1/2",
            ],
        },
        CaseInfo {
            case_id: "III",
            size_constraints: "3 <= n",
            orbit_labels: "[R,-R,...,R,S,-S] (n odd); [R,-R,...,R,S] (n even)",
            realizations: &[
                "GL_p x GL_q on (C^p(x)C^q)+(C^q)*: n=2p+1 or 2q, r=1/2",
                "GL_p x C* on Alt^2(C^p)+(C^p)*: n=p, r=1, s=1/2",
            ],
        },
        CaseInfo {
            case_id: "IVa",
            size_constraints: "fixed rank 6",
            orbit_labels: "[R,-R,R,-R,R,+-S]",
            realizations: &["Sp_2p x GL_3 on C^2p(x)C^3 (3<=p): r=1/2, s=p-2"],
        },
        CaseInfo {
            case_id: "IVb",
            size_constraints: "fixed rank 6",
            orbit_labels: "[S,+-R,+-R,+-R,+-R,+-R]",
            realizations: &["Sp_4 x GL_p on C^4(x)C^p (4<=p): r=1/2, s=(p-3)/2"],
        },
        CaseInfo {
            case_id: "IVc",
            size_constraints: "fixed rank 5",
            orbit_labels: "[R,-R,R,-R,R]",
            realizations: &["Sp_4 x GL_3 on C^4(x)C^3: r=1/2"],
        },
        CaseInfo {
            case_id: "V",
            size_constraints: "1 <= b <= a <= 3; a = b needs explicit rho_params",
            orbit_labels: "[R1,+-R2,..,R1',+-R2',..,+-S,+-S,+-S] (b>1); [R1,..,S,-S,S] (a>b=1); [S1,S2,-S2] (a=b=1)",
            realizations: &[
                "(Sp_2p x C*) x GL_2 on (C^2p(x)C^2)+C^2: (a,b)=(3,1), r1=1/2, r2=p-1, s=1/2",
                "GL_p x SL_2 x GL_q on (C^p(x)C^2)+(C^2(x)C^q): (a,b)=(2,2)",
                "(Sp_2p x C*) x SL_2 x GL_q: (a,b)=(3,2)",
                "(Sp_2p x C*) x SL_2 x (Sp_2q x C*): (a,b)=(3,3)",
                "Spin_8 x C* x C* on C^8_+ + C^8_-: (a,b)=(2,2), r1=r1'=1/2, s=3/2",
            ],
        },
        CaseInfo {
            case_id: "VIa",
            size_constraints: "fixed rank 3",
            orbit_labels: "[R,+-S,+-T]",
            realizations: &[
                "Sp_2p x GL_2 on C^2p(x)C^2 (2<=p): r=1/2, s=p-1, t=1",
                "Spin_9 x C* on C^16: r=1/2, s=2, t=3",
            ],
        },
        CaseInfo {
            case_id: "VIb",
            size_constraints: "fixed rank 4",
            orbit_labels: "[R,+-S,T,-T]",
            realizations: &["Sp_2p x C* x C* on C^2p+C^2p (2<=p): r=1/2, s=p-1, t=1/2"],
        },
    ]
}

/// Build the validated structure for a case selection, cross-checking
/// every stored table row against derived data.
pub fn build_case(spec: &CaseSpec) -> Result<StructureData> {
    let mut amb = ambient_for(spec)?;
    amb.k = spec.k_params.clone();
    amb.rho_params = spec.rho_params.clone();
    fill_default_k(&mut amb, spec)?;
    attach_rho_row(&mut amb, spec)?;
    amb.build(spec.group_bound)
}

fn size(spec: &CaseSpec, name: &str, min: i64) -> Result<i64> {
    let v = *spec.size_params.get(name).ok_or_else(|| {
        Error::InvalidCaseParams(format!(
            "case {} requires the size parameter {name}",
            spec.case_id
        ))
    })?;
    if v < min {
        return Err(Error::InvalidCaseParams(format!(
            "case {}: {name} = {v} violates {name} >= {min}",
            spec.case_id
        )));
    }
    Ok(v)
}

fn no_size(spec: &CaseSpec) -> Result<()> {
    if spec.size_params.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidCaseParams(format!(
            "case {} takes no size parameters",
            spec.case_id
        )))
    }
}

/// Distinct small rationals with pairwise-coprime denominators for
/// labels without an explicit parameter, in first-occurrence order.
const DEFAULT_K: [(i64, i64); 7] = [(1, 3), (1, 5), (1, 7), (1, 11), (1, 13), (1, 17), (1, 19)];

fn label_bases(amb: &AmbientStructure) -> Vec<String> {
    let mut bases = Vec::new();
    for l in &amb.orbit_labels {
        let (_, base) = SignMark::parse(l);
        if !bases.iter().any(|b| b == base) {
            bases.push(base.to_string());
        }
    }
    bases
}

fn fill_default_k(amb: &mut AmbientStructure, spec: &CaseSpec) -> Result<()> {
    let bases = label_bases(amb);
    for key in spec.k_params.keys() {
        if !bases.iter().any(|b| b == key) {
            return Err(Error::InvalidCaseParams(format!(
                "case {} has no orbit label {key:?} (labels: {bases:?})",
                spec.case_id
            )));
        }
    }
    if let Some(rho) = &spec.rho_params {
        for key in rho.keys() {
            if !bases.iter().any(|b| b == key) {
                return Err(Error::InvalidCaseParams(format!(
                    "case {} has no orbit label {key:?} in rho_params",
                    spec.case_id
                )));
            }
        }
    }
    for (i, base) in bases.iter().enumerate() {
        if !amb.k.contains_key(base) {
            let (n, d) = DEFAULT_K[i % DEFAULT_K.len()];
            amb.k.insert(base.clone(), Rational::new(n, d));
        }
    }
    Ok(())
}

/// Attach the table's ρ row (in ambient coordinates) for cross-checking
/// against the ρ built from the orbit parameters.
fn attach_rho_row(amb: &mut AmbientStructure, spec: &CaseSpec) -> Result<()> {
    let p = |label: &str| -> Rational {
        amb.rho_params
            .as_ref()
            .and_then(|m| m.get(label))
            .or_else(|| amb.k.get(label))
            .cloned()
            .expect("parameter defaulting ran first")
    };
    let row: Option<Vec<Rational>> = match spec.case_id.as_str() {
        "I" | "II" => {
            let n = size(spec, "n", 1)? as usize;
            let (r, s) = (if n > 1 { p("R") } else { Rational::zero() }, p("S"));
            Some(
                (0..n)
                    .map(|i| &r.scale_int((n - 1 - i) as i64) + &s)
                    .collect(),
            )
        }
        "III" => {
            let n = size(spec, "n", 3)? as usize;
            let (r, s) = (p("R"), p("S"));
            if n % 2 == 1 {
                let mut row: Vec<Rational> = (0..n - 1)
                    .map(|i| &r.scale_int((n - 2 - i) as i64) + &s)
                    .collect();
                row.push(Rational::zero());
                row.push(-&s);
                Some(row)
            } else {
                let mut row: Vec<Rational> = (0..n - 1)
                    .map(|i| &r.scale_int((n - 2 - i) as i64) + &s)
                    .collect();
                row.push(&s - &r);
                Some(row)
            }
        }
        "IVa" => {
            let (r, s) = (p("R"), p("S"));
            let half_s = s.scale_den(2);
            let mut row: Vec<Rational> = (0..5)
                .map(|i| &half_s + &r.scale_int(4 - i as i64))
                .collect();
            row.push(&half_s - &r);
            row.push(-(half_s.scale_int(3) + r.scale_int(3)));
            Some(row)
        }
        "IVb" => {
            let (r, s) = (p("R"), p("S"));
            Some(vec![
                s.scale_int(2) + r.scale_int(6),
                r.scale_int(4),
                r.scale_int(3),
                r.scale_int(2),
                r.clone(),
                Rational::zero(),
            ])
        }
        "IVc" => {
            let r = p("R");
            Some(vec![
                r.scale_int(4),
                r.scale_int(3),
                r.scale_int(2),
                r.clone(),
                Rational::zero(),
            ])
        }
        "V" => {
            let a = size(spec, "a", 1)? as usize;
            let b = size(spec, "b", 1)? as usize;
            if a == b {
                None // no tabulated row; V₀ membership is still verified
            } else {
                let s = p("S");
                let mut row = Vec::new();
                for i in 1..=a {
                    let mut v = s.clone();
                    for j in i..a {
                        v += p(&format!("R{j}"));
                    }
                    row.push(v);
                }
                for i in 1..=b {
                    let mut v = s.clone();
                    for j in i..b {
                        v += p(&format!("R{j}'"));
                    }
                    row.push(v);
                }
                row.push(s);
                Some(row)
            }
        }
        "VIa" => {
            let (r, s, t) = (p("R"), p("S"), p("T"));
            let half_t = t.scale_den(2);
            Some(vec![&(&r + &s) + &half_t, &s + &half_t, half_t])
        }
        "VIb" => {
            let (r, s, t) = (p("R"), p("S"), p("T"));
            Some(vec![
                &(&r + &s) + &t,
                &s + &t,
                t,
                Rational::zero(),
            ])
        }
        _ => None,
    };
    amb.rho = row;
    Ok(())
}

/// The ambient-coordinate geometry of a case (k not yet attached).
pub fn ambient_for(spec: &CaseSpec) -> Result<AmbientStructure> {
    match spec.case_id.as_str() {
        "I" => case_staircase(size(spec, "n", 1)? as usize, false),
        "II" => case_staircase(size(spec, "n", 3)? as usize, true),
        "III" => {
            let n = size(spec, "n", 3)?;
            if n % 2 == 1 {
                case_iii_odd(n as usize)
            } else {
                case_iii_even(n as usize)
            }
        }
        "IVa" => no_size(spec).map(|_| case_iva()),
        "IVb" => no_size(spec).map(|_| case_ivb()),
        "IVc" => no_size(spec).map(|_| case_ivc()),
        "V" => {
            let a = size(spec, "a", 1)?;
            let b = size(spec, "b", 1)?;
            case_v(a, b, spec)
        }
        "VIa" => no_size(spec).map(|_| case_via()),
        "VIb" => no_size(spec).map(|_| case_vib()),
        other => Err(Error::InvalidCaseParams(format!("unknown case {other:?}"))),
    }
}

// ---------------------------------------------------------------------
// ambient building blocks

impl Rational {
    fn scale_int(&self, n: i64) -> Rational {
        self * &Rational::from_integer(n)
    }

    fn scale_den(&self, d: i64) -> Rational {
        self * &Rational::new(1, d)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn zeros(m: usize) -> Vec<Rational> {
    vec![Rational::zero(); m]
}

fn covec(m: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = zeros(m);
    for (i, c) in entries {
        v[*i] = c.clone();
    }
    v
}

/// z_i − z_j.
fn diff(m: usize, i: usize, j: usize) -> Vec<Rational> {
    covec(m, &[(i, Rational::one()), (j, -Rational::one())])
}

/// z_i + z_j.
fn sum2(m: usize, i: usize, j: usize) -> Vec<Rational> {
    covec(m, &[(i, Rational::one()), (j, Rational::one())])
}

fn identity_matrix(m: usize) -> Vec<Vec<Rational>> {
    (0..m).map(|i| covec(m, &[(i, Rational::one())])).collect()
}

/// Transposition z_i ↔ z_j on points.
fn swap(m: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut a = identity_matrix(m);
    a[i] = covec(m, &[(j, Rational::one())]);
    a[j] = covec(m, &[(i, Rational::one())]);
    a
}

/// Sign change z_i ↦ −z_i.
fn flip(m: usize, i: usize) -> Vec<Vec<Rational>> {
    let mut a = identity_matrix(m);
    a[i] = covec(m, &[(i, -Rational::one())]);
    a
}

/// z_i ↦ −z_j, z_j ↦ −z_i.
fn neg_swap(m: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut a = identity_matrix(m);
    a[i] = covec(m, &[(j, -Rational::one())]);
    a[j] = covec(m, &[(i, -Rational::one())]);
    a
}

/// e_0 + … + e_upto.
fn partial_sum(m: usize, upto: usize) -> Vec<Rational> {
    let mut v = zeros(m);
    for entry in v.iter_mut().take(upto + 1) {
        *entry = Rational::one();
    }
    v
}

fn bare(
    m: usize,
    sigma: Vec<Vec<Rational>>,
    sigma_check: Vec<Vec<Rational>>,
    ell: Vec<Rational>,
    generators: Vec<Vec<Vec<Rational>>>,
    orbit_labels: Vec<String>,
    delta_plus: Vec<Vec<Rational>>,
    phi_plus: Vec<Vec<Rational>>,
) -> AmbientStructure {
    AmbientStructure {
        ambient_dim: m,
        sigma,
        sigma_check,
        ell,
        generators,
        orbit_labels,
        k: BTreeMap::new(),
        rho_params: None,
        delta_plus: Some(delta_plus),
        phi_plus: Some(phi_plus),
        rho: None,
    }
}

// ---------------------------------------------------------------------
// the nine families

/// Cases I and II share Σ = {z_1−z_2, …, z_{n−1}−z_n, z_n}; II uses the
/// even-displacement subgroup and the alternating ℓ.
fn case_staircase(n: usize, semiclassical: bool) -> Result<AmbientStructure> {
    let m = n;
    let mut sigma: Vec<Vec<Rational>> = (0..n.saturating_sub(1)).map(|i| diff(m, i, i + 1)).collect();
    sigma.push(covec(m, &[(n - 1, Rational::one())]));
    let sigma_check: Vec<Vec<Rational>> = (0..n).map(|i| partial_sum(m, i)).collect();
    let ell: Vec<Rational> = (0..m)
        .map(|i| {
            if !semiclassical || i % 2 == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let generators: Vec<_> = if semiclassical {
        (0..n - 2).map(|i| swap(m, i, i + 2)).collect()
    } else {
        (0..n.saturating_sub(1)).map(|i| swap(m, i, i + 1)).collect()
    };
    let mut orbit_labels: Vec<String> = (0..n - 1)
        .map(|i| {
            if !semiclassical {
                "+-R".into()
            } else if i % 2 == 0 {
                "R".into()
            } else {
                "-R".into()
            }
        })
        .collect();
    orbit_labels.push("S".to_string());
    let mut delta_plus = Vec::new();
    let mut phi_plus = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let even_gap = (j - i) % 2 == 0;
            if !semiclassical || even_gap {
                delta_plus.push(diff(m, i, j));
            }
            if !semiclassical || !even_gap {
                phi_plus.push(diff(m, i, j));
            }
        }
    }
    for i in 0..n {
        if !semiclassical || (n - (i + 1)) % 2 == 0 {
            phi_plus.push(covec(m, &[(i, Rational::one())]));
        }
    }
    Ok(bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus))
}

fn case_iii_odd(n: usize) -> Result<AmbientStructure> {
    // V = {z ∈ C^{n+1} : z_n = 0} (1-based), rank n
    let m = n + 1;
    let sigma: Vec<Vec<Rational>> = (0..n).map(|i| diff(m, i, i + 1)).collect();
    let mut sigma_check: Vec<Vec<Rational>> = (0..n - 1).map(|i| partial_sum(m, i)).collect();
    sigma_check.push(covec(m, &[(n, -Rational::one())]));
    let ell: Vec<Rational> = (0..m)
        .map(|i| {
            if i % 2 == 0 {
                Rational::from_integer(2)
            } else {
                Rational::from_integer(-1)
            }
        })
        .collect();
    // even-displacement permutations fixing position n (1-based): step-2
    // swaps inside the odd block {1,…,n−2} and the even block {2,…,n+1}
    let mut generators = Vec::new();
    let mut i = 0;
    while n >= 5 && i + 2 <= n - 3 {
        generators.push(swap(m, i, i + 2));
        i += 2;
    }
    let mut i = 1;
    while i + 2 <= n {
        generators.push(swap(m, i, i + 2));
        i += 2;
    }
    let mut orbit_labels: Vec<String> = (0..n - 2)
        .map(|i| if i % 2 == 0 { "R".into() } else { "-R".into() })
        .collect();
    orbit_labels.push("S".to_string());
    orbit_labels.push("-S".to_string());
    let mut delta_plus = Vec::new();
    let mut phi_plus = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if (j - i) % 2 == 0 {
                if j != n - 1 && i != n - 1 {
                    delta_plus.push(diff(m, i, j));
                }
            } else {
                phi_plus.push(diff(m, i, j));
            }
        }
    }
    Ok(bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus))
}

fn case_iii_even(n: usize) -> Result<AmbientStructure> {
    let m = n;
    let mut sigma: Vec<Vec<Rational>> = (0..n - 1).map(|i| diff(m, i, i + 1)).collect();
    sigma.push(covec(m, &[(n - 2, Rational::one())]));
    let mut sigma_check: Vec<Vec<Rational>> = (0..n - 2).map(|i| partial_sum(m, i)).collect();
    sigma_check.push(covec(m, &[(n - 1, -Rational::one())]));
    sigma_check.push(partial_sum(m, n - 1));
    let ell: Vec<Rational> = (0..m)
        .map(|i| {
            if i % 2 == 0 {
                Rational::from_integer(2)
            } else {
                Rational::from_integer(-1)
            }
        })
        .collect();
    let generators: Vec<_> = (0..n - 2).map(|i| swap(m, i, i + 2)).collect();
    let mut orbit_labels: Vec<String> = (0..n - 1)
        .map(|i| if i % 2 == 0 { "R".into() } else { "-R".into() })
        .collect();
    orbit_labels.push("S".to_string());
    let mut delta_plus = Vec::new();
    let mut phi_plus = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if (j - i) % 2 == 0 {
                delta_plus.push(diff(m, i, j));
            } else {
                phi_plus.push(diff(m, i, j));
            }
        }
    }
    for i in 0..n {
        if i % 2 == 0 {
            phi_plus.push(covec(m, &[(i, Rational::one())]));
        }
    }
    Ok(bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus))
}

fn case_iva() -> AmbientStructure {
    let m = 7;
    let h = q(1, 2);
    let sigma = vec![
        diff(m, 0, 1),
        diff(m, 1, 2),
        diff(m, 2, 3),
        diff(m, 3, 4),
        diff(m, 4, 5),
        sum2(m, 3, 5),
    ];
    let sigma_check = vec![
        vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(-1, 1)],
        vec![q(1, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(-1, 1)],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), -h.clone(), -h.clone(), -h.clone()],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), h.clone(), -h.clone(), -h.clone()],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), h.clone(), h.clone(), q(-3, 2)],
    ];
    let two = Rational::from_integer(2);
    let ell = covec(m, &[(0, two.clone()), (2, two.clone()), (4, two.clone())]);
    let generators = vec![
        swap(m, 0, 2),
        swap(m, 2, 4),
        swap(m, 1, 3),
        swap(m, 3, 5),
        swap(m, 5, 6),
    ];
    let orbit_labels = ["R", "-R", "R", "-R", "R", "+-S"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut delta_plus = Vec::new();
    for (i, j) in [(0, 2), (0, 4), (2, 4), (1, 3), (1, 5), (1, 6), (3, 5), (3, 6), (5, 6)] {
        delta_plus.push(diff(m, i, j));
    }
    let mut phi_plus = Vec::new();
    for i in [0usize, 2, 4] {
        for j in [1usize, 3, 5, 6] {
            phi_plus.push(if i < j { diff(m, i, j) } else { diff(m, j, i) });
        }
    }
    for (i, j) in [(1, 3), (1, 5), (3, 5)] {
        phi_plus.push(sum2(m, i, j));
    }
    bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus)
}

fn case_ivb() -> AmbientStructure {
    let m = 6;
    let h = q(1, 2);
    let sigma = vec![
        vec![h.clone(), -h.clone(), q(0, 1), -h.clone(), q(0, 1), -h.clone()],
        diff(m, 1, 2),
        diff(m, 2, 3),
        diff(m, 3, 4),
        diff(m, 4, 5),
        sum2(m, 4, 5),
    ];
    let sigma_check = vec![
        vec![q(2, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1)],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), h.clone(), -h.clone()],
        vec![q(3, 2), h.clone(), h.clone(), h.clone(), h.clone(), h.clone()],
    ];
    let two = Rational::from_integer(2);
    let ell = covec(m, &[(0, two.clone())]);
    let generators = vec![
        swap(m, 1, 3),
        swap(m, 3, 5),
        neg_swap(m, 3, 5),
        swap(m, 2, 4),
        flip(m, 4),
    ];
    let orbit_labels = ["S", "+-R", "+-R", "+-R", "+-R", "+-R"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut delta_plus = Vec::new();
    for (i, j) in [(1, 3), (1, 5), (3, 5)] {
        delta_plus.push(diff(m, i, j));
        delta_plus.push(sum2(m, i, j));
    }
    delta_plus.push(diff(m, 2, 4));
    delta_plus.push(sum2(m, 2, 4));
    delta_plus.push(covec(m, &[(2, two.clone())]));
    delta_plus.push(covec(m, &[(4, two.clone())]));
    let mut phi_plus = Vec::new();
    for i in 1..m {
        for j in (i + 1)..m {
            if (j - i) % 2 == 1 {
                phi_plus.push(diff(m, i, j));
                phi_plus.push(sum2(m, i, j));
            }
        }
    }
    for signs in 0..8u32 {
        let minus_count = (signs & 7).count_ones();
        if minus_count != 1 && minus_count != 3 {
            continue;
        }
        let sgn = |bit: u32| {
            if signs & (1 << bit) != 0 {
                -q(1, 2)
            } else {
                q(1, 2)
            }
        };
        phi_plus.push(covec(m, &[(0, q(1, 2)), (1, sgn(0)), (3, sgn(1)), (5, sgn(2))]));
    }
    bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus)
}

fn case_ivc() -> AmbientStructure {
    let m = 5;
    let h = q(1, 2);
    let sigma = vec![
        diff(m, 0, 1),
        diff(m, 1, 2),
        diff(m, 2, 3),
        diff(m, 3, 4),
        sum2(m, 3, 4),
    ];
    let sigma_check = vec![
        vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1)],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), -h.clone()],
        vec![h.clone(), h.clone(), h.clone(), h.clone(), h.clone()],
    ];
    let two = Rational::from_integer(2);
    let ell = covec(m, &[(0, two.clone()), (2, two.clone()), (4, two.clone())]);
    let generators = vec![swap(m, 0, 2), swap(m, 2, 4), swap(m, 1, 3), flip(m, 3)];
    let orbit_labels = ["R", "-R", "R", "-R", "R"].iter().map(|s| s.to_string()).collect();
    let mut delta_plus = Vec::new();
    for (i, j) in [(0, 2), (0, 4), (2, 4)] {
        delta_plus.push(diff(m, i, j));
    }
    delta_plus.push(diff(m, 1, 3));
    delta_plus.push(sum2(m, 1, 3));
    delta_plus.push(covec(m, &[(1, two.clone())]));
    delta_plus.push(covec(m, &[(3, two.clone())]));
    let mut phi_plus = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if (j - i) % 2 == 1 {
                phi_plus.push(diff(m, i, j));
                phi_plus.push(sum2(m, i, j));
            }
        }
    }
    bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus)
}

fn case_v(a: i64, b: i64, spec: &CaseSpec) -> Result<AmbientStructure> {
    if !(1 <= b && b <= a && a <= 3) {
        return Err(Error::InvalidCaseParams(format!(
            "case V requires 1 <= b <= a <= 3, got (a,b) = ({a},{b})"
        )));
    }
    if a == b && spec.rho_params.is_none() {
        return Err(Error::InvalidCaseParams(
            "case V with a = b has no tabulated rho row; pass explicit rho_params".into(),
        ));
    }
    let (a, b) = (a as usize, b as usize);
    let m = a + b + 1;
    let zp = |i: usize| i;
    let zq = |i: usize| a + i;
    let zr = a + b;
    let h = q(1, 2);

    let mut sigma = Vec::new();
    for i in 0..a - 1 {
        sigma.push(diff(m, zp(i), zp(i + 1)));
    }
    for i in 0..b - 1 {
        sigma.push(diff(m, zq(i), zq(i + 1)));
    }
    let tri = |sa: i64, sb: i64, sc: i64| {
        covec(
            m,
            &[
                (zp(a - 1), Rational::from_integer(sa)),
                (zq(b - 1), Rational::from_integer(sb)),
                (zr, Rational::from_integer(sc)),
            ],
        )
    };
    sigma.push(tri(1, 1, -1));
    sigma.push(tri(1, -1, 1));
    sigma.push(tri(-1, 1, 1));

    let mut sigma_check = Vec::new();
    for i in 0..a - 1 {
        sigma_check.push(partial_sum(m, i));
    }
    for i in 0..b - 1 {
        let mut v = zeros(m);
        for k in 0..=i {
            v[zq(k)] = Rational::one();
        }
        sigma_check.push(v);
    }
    let mut v1 = zeros(m);
    let mut v2 = zeros(m);
    let mut v3 = zeros(m);
    for i in 0..a {
        v1[zp(i)] = h.clone();
        v2[zp(i)] = h.clone();
    }
    for i in 0..b {
        v1[zq(i)] = h.clone();
        v3[zq(i)] = h.clone();
    }
    v2[zr] = h.clone();
    v3[zr] = h.clone();
    sigma_check.push(v1);
    sigma_check.push(v2);
    sigma_check.push(v3);

    let two = Rational::from_integer(2);
    let ell = covec(m, &[(zp(0), two.clone()), (zq(0), two.clone())]);
    let mut generators = Vec::new();
    for i in 1..a {
        generators.push(flip(m, zp(i)));
    }
    for i in 1..b {
        generators.push(flip(m, zq(i)));
    }
    generators.push(flip(m, zr));

    let mut orbit_labels: Vec<String> = Vec::new();
    if a == 1 && b == 1 {
        orbit_labels.extend(["S1".to_string(), "S2".to_string(), "-S2".to_string()]);
    } else {
        for i in 0..a - 1 {
            orbit_labels.push(if i == 0 { "R1".to_string() } else { format!("+-R{}", i + 1) });
        }
        for i in 0..b - 1 {
            orbit_labels.push(if i == 0 { "R1'".to_string() } else { format!("+-R{}'", i + 1) });
        }
        if b == 1 {
            orbit_labels.extend(["S".to_string(), "-S".to_string(), "S".to_string()]);
        } else {
            orbit_labels.extend(["+-S".to_string(), "+-S".to_string(), "+-S".to_string()]);
        }
    }

    let mut delta_plus = Vec::new();
    for i in 1..a {
        delta_plus.push(covec(m, &[(zp(i), two.clone())]));
    }
    for i in 1..b {
        delta_plus.push(covec(m, &[(zq(i), two.clone())]));
    }
    delta_plus.push(covec(m, &[(zr, two.clone())]));
    let mut phi_plus = Vec::new();
    for i in 0..a - 1 {
        phi_plus.push(diff(m, zp(i), zp(i + 1)));
        phi_plus.push(sum2(m, zp(i), zp(i + 1)));
    }
    for i in 0..b - 1 {
        phi_plus.push(diff(m, zq(i), zq(i + 1)));
        phi_plus.push(sum2(m, zq(i), zq(i + 1)));
    }
    for signs in [(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)] {
        phi_plus.push(tri(signs.0, signs.1, signs.2));
    }
    Ok(bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus))
}

fn case_via() -> AmbientStructure {
    let m = 3;
    let h = q(1, 2);
    let two = Rational::from_integer(2);
    let sigma = vec![diff(m, 0, 1), diff(m, 1, 2), covec(m, &[(2, two.clone())])];
    let sigma_check = vec![
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(0, 1)],
        vec![h.clone(), h.clone(), h.clone()],
    ];
    let ell = covec(m, &[(0, two.clone())]);
    let generators = vec![flip(m, 1), flip(m, 2)];
    let orbit_labels = ["R", "+-S", "+-T"].iter().map(|s| s.to_string()).collect();
    let delta_plus = vec![covec(m, &[(1, two.clone())]), covec(m, &[(2, two.clone())])];
    let phi_plus = vec![
        diff(m, 0, 1),
        sum2(m, 0, 1),
        diff(m, 1, 2),
        sum2(m, 1, 2),
        covec(m, &[(2, two.clone())]),
    ];
    bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus)
}

fn case_vib() -> AmbientStructure {
    let m = 4;
    let h = q(1, 2);
    let two = Rational::from_integer(2);
    let sigma = vec![diff(m, 0, 1), diff(m, 1, 2), diff(m, 2, 3), sum2(m, 2, 3)];
    let sigma_check = vec![
        vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)],
        vec![h.clone(), h.clone(), h.clone(), -h.clone()],
        vec![h.clone(), h.clone(), h.clone(), h.clone()],
    ];
    let ell = covec(m, &[(0, two.clone())]);
    let generators = vec![flip(m, 1), flip(m, 2)];
    let orbit_labels = ["R", "+-S", "T", "-T"].iter().map(|s| s.to_string()).collect();
    let delta_plus = vec![covec(m, &[(1, two.clone())]), covec(m, &[(2, two.clone())])];
    let phi_plus = vec![
        diff(m, 0, 1),
        sum2(m, 0, 1),
        diff(m, 1, 2),
        sum2(m, 1, 2),
        diff(m, 2, 3),
        sum2(m, 2, 3),
    ];
    bare(m, sigma, sigma_check, ell, generators, orbit_labels, delta_plus, phi_plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{LinearForm, Weight};

    #[test]
    fn list_has_nine_families() {
        let cases = list_cases();
        assert_eq!(cases.len(), 9);
        let ii = cases.iter().find(|c| c.case_id == "II").unwrap();
        assert!(ii.size_constraints.contains("3 <= n"));
        let ivc = cases.iter().find(|c| c.case_id == "IVc").unwrap();
        assert!(ivc.size_constraints.contains("fixed rank"));
    }

    #[test]
    fn case_i_n2_geometric() {
        let s = build_case(&CaseSpec::new("I").size("n", 2).k("R", (1, 1)).k("S", (1, 2)))
            .unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.group_order(), 2);
        // Λ₁ = {e₁, e₂} in Σ∨-coordinates: {(1,0), (−1,1)}
        let l1 = s.lambda1();
        assert_eq!(l1.len(), 2);
        assert!(l1.contains(&Weight::from_integers(&[1, 0])));
        assert!(l1.contains(&Weight::from_integers(&[-1, 1])));
        // Φ⁺ = {z1−z2, z1, z2}
        assert_eq!(s.phi_plus().len(), 3);
        // ρ = (3/2, 1/2) ambient = Σ∨-coords (1, 1/2)
        assert_eq!(
            s.rho(),
            &Weight::new(vec![Rational::one(), Rational::new(1, 2)])
        );
        // ℓ = ω1 + 2ω2
        assert_eq!(s.ell(), &LinearForm::from_integers(&[1, 2]));
        assert_eq!(s.ell_value(s.rho()), Rational::from_integer(2));
    }

    #[test]
    fn case_i_n1_needs_no_r() {
        let s = build_case(&CaseSpec::new("I").size("n", 1).k("S", (3, 1))).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.group_order(), 1);
        assert_eq!(s.rho(), &Weight::from_integers(&[3]));
    }

    #[test]
    fn case_via_geometric() {
        let s = build_case(
            &CaseSpec::new("VIa").k("R", (1, 2)).k("S", (1, 1)).k("T", (1, 1)),
        )
        .unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.group_order(), 4);
        // ℓ = 2z1 = 2ω1 + 2ω2 + ω3 in Σ-coordinates
        assert_eq!(s.ell(), &LinearForm::from_integers(&[2, 2, 1]));
        // ρ = (2, 3/2, 1/2) ambient = Σ∨-coords (1/2, 1, 1)
        assert_eq!(
            s.rho(),
            &Weight::new(vec![Rational::new(1, 2), Rational::one(), Rational::one()])
        );
    }

    #[test]
    fn case_v_rejects_bad_sizes() {
        let err = build_case(&CaseSpec::new("V").size("a", 1).size("b", 2));
        assert!(matches!(err, Err(Error::InvalidCaseParams(_))));
        let err = build_case(&CaseSpec::new("V").size("a", 4).size("b", 1));
        assert!(matches!(err, Err(Error::InvalidCaseParams(_))));
    }

    #[test]
    fn case_v_equal_sizes_need_rho_params() {
        let err = build_case(&CaseSpec::new("V").size("a", 1).size("b", 1));
        assert!(matches!(err, Err(Error::InvalidCaseParams(_))));
        let s = build_case(
            &CaseSpec::new("V")
                .size("a", 1)
                .size("b", 1)
                .rho_param("S1", (1, 3))
                .rho_param("S2", (1, 5)),
        )
        .unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.group_order(), 2);
    }

    #[test]
    fn every_family_builds_at_minimal_size() {
        let specs = [
            CaseSpec::new("I").size("n", 1),
            CaseSpec::new("II").size("n", 3),
            CaseSpec::new("III").size("n", 3),
            CaseSpec::new("III").size("n", 4),
            CaseSpec::new("IVa"),
            CaseSpec::new("IVb"),
            CaseSpec::new("IVc"),
            CaseSpec::new("V").size("a", 2).size("b", 1),
            CaseSpec::new("VIa"),
            CaseSpec::new("VIb"),
        ];
        for spec in specs {
            let s = build_case(&spec).unwrap_or_else(|e| panic!("case {}: {e}", spec.case_id));
            assert!(s.rank() > 0);
        }
    }

    #[test]
    fn expected_group_orders() {
        let orders = [
            (CaseSpec::new("I").size("n", 3), 6),
            (CaseSpec::new("II").size("n", 3), 2),
            (CaseSpec::new("III").size("n", 3), 2),
            (CaseSpec::new("IVa"), 144),
            (CaseSpec::new("IVb"), 192),
            (CaseSpec::new("IVc"), 48),
            (CaseSpec::new("V").size("a", 2).size("b", 1), 4),
            (CaseSpec::new("VIa"), 4),
            (CaseSpec::new("VIb"), 4),
        ];
        for (spec, expected) in orders {
            let s = build_case(&spec).unwrap();
            assert_eq!(s.group_order(), expected, "case {}", spec.case_id);
        }
    }
}
