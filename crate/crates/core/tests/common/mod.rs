//! Independent oracles and reusable property checks.
//!
//! Every `*_error` function returns the largest deviation it observed so
//! that the property tests and the acceptance harness can share them.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steklov::harmonics::{
    coeff_conjugate_transform, eval_harmonic, multiplicity, sphere_area, sphere_quadrature,
    triple_product, wigner_3j, Angles, Basis, CoeffMap, Direction, HarmonicIndex, PointHarmonics,
    TripleMethod, C64,
};
use steklov::perturbation::DeformationField;
use steklov::spectra::DomainSpec;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_angles(rng: &mut impl Rng, dim: usize) -> Angles {
    if dim == 2 {
        Angles::circle(rng.random_range(0.0..2.0 * PI))
    } else {
        Angles::sphere(rng.random_range(0.0..=PI), rng.random_range(0.0..2.0 * PI))
    }
}

fn factorials() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = vec![BigInt::one()];
        for k in 1..64 {
            let next = &v[k - 1] * BigInt::from(k);
            v.push(next);
        }
        v
    })
}

/// Exact Wigner 3j symbol as `sign · sqrt(radicand) · sum`, evaluated in
/// rational arithmetic and rounded once at the end.
pub fn wigner_3j_exact(l1: i64, l2: i64, l3: i64, m1: i64, m2: i64, m3: i64) -> f64 {
    if m1 + m2 + m3 != 0
        || m1.abs() > l1
        || m2.abs() > l2
        || m3.abs() > l3
        || l3 < (l1 - l2).abs()
        || l3 > l1 + l2
    {
        return 0.0;
    }
    let table = factorials();
    let fact = |n: i64| -> BigInt { table[n as usize].clone() };
    let radicand = BigRational::new(
        fact(l1 + l2 - l3)
            * fact(l1 - l2 + l3)
            * fact(-l1 + l2 + l3)
            * fact(l1 + m1)
            * fact(l1 - m1)
            * fact(l2 + m2)
            * fact(l2 - m2)
            * fact(l3 + m3)
            * fact(l3 - m3),
        fact(l1 + l2 + l3 + 1),
    );
    let kmin = 0.max(l2 - l3 - m1).max(l1 - l3 + m2);
    let kmax = (l1 + l2 - l3).min(l1 - m1).min(l2 + m2);
    let mut sum = BigRational::zero();
    for k in kmin..=kmax {
        let den = fact(k)
            * fact(l3 - l2 + k + m1)
            * fact(l3 - l1 + k - m2)
            * fact(l1 + l2 - l3 - k)
            * fact(l1 - k - m1)
            * fact(l2 - k + m2);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let phase = if (l1 - l2 - m3).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let s = sum.abs().to_f64().unwrap();
    let sign = if sum.is_negative() { -phase } else { phase };
    sign * radicand.to_f64().unwrap().sqrt() * s
}

pub fn wigner_oracle_error(lmax: i64) -> (f64, usize) {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for l1 in 0..=lmax {
        for l2 in 0..=lmax {
            for l3 in (l1 - l2).abs()..=(l1 + l2).min(lmax) {
                for m1 in -l1..=l1 {
                    for m2 in -l2..=l2 {
                        let m3 = -m1 - m2;
                        if m3.abs() > l3 {
                            continue;
                        }
                        let exact = wigner_3j_exact(l1, l2, l3, m1, m2, m3);
                        let got = wigner_3j(
                            l1 as u32, l2 as u32, l3 as u32, m1 as i32, m2 as i32, m3 as i32,
                        );
                        worst = worst.max((got - exact).abs());
                        count += 1;
                    }
                }
            }
        }
    }
    (worst, count)
}

/// `Σ_m |Y_l^m|² = N_{l,d} / ω` at random points, `l ≤ lmax`.
pub fn addition_theorem_error(dim: usize, lmax: u32, points: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let omega = sphere_area(dim).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let a = random_angles(&mut r, dim);
        let ph = PointHarmonics::new(dim, lmax, a).unwrap();
        for l in 0..=lmax {
            let s: f64 = HarmonicIndex::degree_indices(l, dim)
                .unwrap()
                .into_iter()
                .map(|i| ph.eval(i, Basis::Complex).unwrap().value.norm_sqr())
                .sum();
            let expect = multiplicity(l, dim).unwrap() as f64 / omega;
            worst = worst.max((s - expect).abs());
        }
    }
    worst
}

/// Values of every basis element up to `lmax` at each quadrature node.
fn tabulate(
    dim: usize,
    lmax: u32,
    degree: u32,
    basis: Basis,
) -> (Vec<HarmonicIndex>, Vec<f64>, Vec<Vec<C64>>) {
    let rule = sphere_quadrature(dim, degree).unwrap();
    let idx = HarmonicIndex::up_to_degree(lmax, dim).unwrap();
    let vals = rule
        .nodes
        .iter()
        .map(|&a| {
            let ph = PointHarmonics::new(dim, lmax, a).unwrap();
            idx.iter()
                .map(|&i| ph.eval(i, basis).unwrap().value)
                .collect()
        })
        .collect();
    (idx, rule.weights, vals)
}

/// Gram matrix of the basis up to `lmax` against the identity.
pub fn gram_error(dim: usize, lmax: u32, basis: Basis) -> f64 {
    let (idx, w, vals) = tabulate(dim, lmax, 2 * lmax, basis);
    let mut worst: f64 = 0.0;
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            let g: C64 = w
                .iter()
                .zip(&vals)
                .map(|(&w, v)| v[i] * v[j].conj() * w)
                .sum();
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - C64::new(e, 0.0)).norm());
        }
    }
    worst
}

/// `∫ Y = √ω` for the constant and 0 otherwise.
pub fn integral_error(dim: usize, lmax: u32) -> f64 {
    let (idx, w, vals) = tabulate(dim, lmax, lmax, Basis::Complex);
    let root = sphere_area(dim).unwrap().sqrt();
    (0..idx.len())
        .map(|i| {
            let s: C64 = w.iter().zip(&vals).map(|(&w, v)| v[i] * w).sum();
            let e = if idx[i].l == 0 { root } else { 0.0 };
            (s - C64::new(e, 0.0)).norm()
        })
        .fold(0.0, f64::max)
}

/// `conj(Y_l^m) = (-1)^m Y_l^{-m}` on the sphere.
pub fn conjugation_error(lmax: u32, points: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let a = random_angles(&mut r, 3);
        for l in 0..=lmax {
            for m in -(l as i32)..=l as i32 {
                let y = eval_harmonic(HarmonicIndex::new(l, m), 3, a, Basis::Complex).unwrap();
                let z = eval_harmonic(HarmonicIndex::new(l, -m), 3, a, Basis::Complex).unwrap();
                let s = if m % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((y.conj() - z * s).norm());
            }
        }
    }
    worst
}

/// `∫ Y_l^m ∇Y_n^i · ∇conj(Y_n^j) = (n(n+d-2) - l(l+d-2)/2) ∫ Y_l^m Y_n^i conj(Y_n^j)`
/// for every `n ≤ nmax`, `l ≤ 2n`, by quadrature with analytic gradients.
pub fn gradient_identity_error(dim: usize, nmax: u32) -> f64 {
    let mut worst: f64 = 0.0;
    let dd = dim as f64;
    for n in 0..=nmax {
        let rule = sphere_quadrature(dim, 4 * n + 2).unwrap();
        let yn = HarmonicIndex::degree_indices(n, dim).unwrap();
        let yl: Vec<HarmonicIndex> = HarmonicIndex::up_to_degree(2 * n, dim).unwrap();
        let nodes: Vec<(Vec<_>, Vec<C64>)> = rule
            .nodes
            .iter()
            .map(|&a| {
                let ph = PointHarmonics::new(dim, 2 * n, a).unwrap();
                let n_vals = yn
                    .iter()
                    .map(|&i| ph.eval(i, Basis::Complex).unwrap())
                    .collect();
                let l_vals = yl
                    .iter()
                    .map(|&i| ph.eval(i, Basis::Complex).unwrap().value)
                    .collect();
                (n_vals, l_vals)
            })
            .collect();
        for (li, l) in yl.iter().enumerate() {
            let ll = l.l as f64;
            let factor = (n as f64) * (n as f64 + dd - 2.0) - ll * (ll + dd - 2.0) / 2.0;
            for i in 0..yn.len() {
                for j in 0..yn.len() {
                    let mut lhs = C64::new(0.0, 0.0);
                    let mut rhs = C64::new(0.0, 0.0);
                    for ((nv, lv), &w) in nodes.iter().zip(&rule.weights) {
                        let (a, b) = (nv[i], nv[j]);
                        let grad = a.d_theta * b.d_theta.conj()
                            + a.d_phi_over_sin * b.d_phi_over_sin.conj();
                        lhs += lv[li] * grad * w;
                        rhs += lv[li] * a.value * b.value.conj() * w;
                    }
                    worst = worst.max((lhs - rhs * factor).norm());
                }
            }
        }
    }
    worst
}

/// Triple products of two degree-`n` elements with an odd or too-high
/// degree vanish, by both methods.
pub fn selection_rule_error(dim: usize, nmax: u32) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=nmax {
        let yn = HarmonicIndex::degree_indices(n, dim).unwrap();
        for l in (1..=2 * n + 2).filter(|l| l % 2 == 1 || *l > 2 * n) {
            for c in HarmonicIndex::degree_indices(l, dim).unwrap() {
                for &a in &yn {
                    for &b in &yn {
                        for method in [TripleMethod::ClosedForm, TripleMethod::Quadrature] {
                            worst = worst.max(triple_product(a, b, c, dim, method).unwrap().norm());
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Closed-form against quadrature triple products on random index triples
/// of degree at most `lmax` (all triples on the circle).
pub fn triple_methods_error(dim: usize, lmax: u32, samples: usize, seed: u64) -> f64 {
    let all = HarmonicIndex::up_to_degree(lmax, dim).unwrap();
    let mut worst: f64 = 0.0;
    let mut check = |a, b, c| {
        let x = triple_product(a, b, c, dim, TripleMethod::ClosedForm).unwrap();
        let y = triple_product(a, b, c, dim, TripleMethod::Quadrature).unwrap();
        worst = worst.max((x - y).norm());
    };
    if dim == 2 {
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    check(a, b, c);
                }
            }
        }
    } else {
        let mut r = rng(seed);
        for _ in 0..samples {
            let pick = |r: &mut ChaCha8Rng| all[r.random_range(0..all.len())];
            let (a, b) = (pick(&mut r), pick(&mut r));
            // Bias towards nonzero products: choose c with m_c = m_b - m_a.
            let c = loop {
                let c = pick(&mut r);
                if r.random_bool(0.2) || c.m == b.m - a.m {
                    break c;
                }
            };
            check(a, b, c);
        }
    }
    worst
}

/// Random real-valued field on every boundary of `domain`, complex basis,
/// degrees up to `lmax`.
pub fn random_field(
    r: &mut impl Rng,
    domain: &DomainSpec,
    lmax: u32,
    with_constant: bool,
) -> DeformationField {
    let d = domain.dim;
    let mut field = DeformationField::new(d, Basis::Complex);
    for (b, _) in domain.boundaries() {
        let mut real = CoeffMap::new();
        for idx in HarmonicIndex::up_to_degree(lmax, d).unwrap() {
            if idx.l == 0 && !with_constant {
                continue;
            }
            real.insert(idx, C64::new(r.random_range(-1.0..1.0), 0.0));
        }
        let c = coeff_conjugate_transform(&real, Direction::RealToComplex, d).unwrap();
        field.set_boundary(b, c).unwrap();
    }
    field
}

pub fn test_domains(dim: usize) -> Vec<DomainSpec> {
    vec![
        DomainSpec::ball(dim, 1.0).unwrap(),
        DomainSpec::ball(dim, 1.7).unwrap(),
        DomainSpec::annulus(dim, 0.4, 1.0).unwrap(),
        DomainSpec::annulus(dim, 0.55, 1.3).unwrap(),
    ]
}

/// Over `fields` random fields per domain: the largest relative gap between
/// the EMP trace and its closed form, and the largest trace magnitude when
/// the constant coefficients vanish.
pub fn trace_identity_error(dim: usize, fields: usize, seed: u64) -> (f64, f64) {
    use steklov::perturbation::{emp_matrix, emp_trace_formula};
    use steklov::spectra::eigen_at;
    let mut r = rng(seed);
    let (mut formula, mut zero): (f64, f64) = (0.0, 0.0);
    for dom in test_domains(dim) {
        for k in 0..fields {
            let n = r.random_range(0..=4u32);
            let branch = if dom.is_annulus() {
                r.random_range(1..=2u8)
            } else {
                1
            };
            let e = eigen_at(&dom, n, branch).unwrap();
            let with_constant = k % 2 == 0;
            let f = random_field(&mut r, &dom, 2 * n + 1, with_constant);
            let m = emp_matrix(&dom, &f, &e).unwrap();
            let tf = emp_trace_formula(&dom, &f, &e).unwrap();
            let scale = m.scale.max(1.0);
            formula = formula.max((m.trace - tf).abs() / scale);
            if !with_constant {
                zero = zero.max(m.trace.abs() / scale);
            }
        }
    }
    (formula, zero)
}

/// Largest entrywise gap between the explicit planar matrices and the
/// general assembly over `fields` random fields per planar domain.
pub fn closed_form_error(fields: usize, seed: u64) -> f64 {
    use steklov::perturbation::{emp_matrix, emp_matrix_closed_2d};
    use steklov::spectra::eigen_at;
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for dom in test_domains(2) {
        for _ in 0..fields {
            let n = r.random_range(0..=5u32);
            let branch = if dom.is_annulus() {
                r.random_range(1..=2u8)
            } else {
                1
            };
            let e = eigen_at(&dom, n, branch).unwrap();
            let f = random_field(&mut r, &dom, 2 * n + 2, true);
            let a = emp_matrix(&dom, &f, &e).unwrap();
            let b = emp_matrix_closed_2d(&dom, &f, &e).unwrap();
            let scale = a.scale.max(1.0);
            let diff = (&a.entries - &b.entries)
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            worst = worst.max(diff / scale);
        }
    }
    worst
}

/// For `μ_{3,1}` and `μ_{3,2}` of the planar annulus (0.4, 1): the largest
/// EMP entry after cancellation and the smallest of the four degree-6
/// coefficient magnitudes.
pub fn cancellation_check() -> Vec<(u8, f64, f64)> {
    use steklov::perturbation::{cancellation_coefficients, emp_matrix};
    use steklov::spectra::{eigen_at, BoundaryKind};
    let dom = DomainSpec::annulus(2, 0.4, 1.0).unwrap();
    let mut inner = CoeffMap::new();
    inner.insert(HarmonicIndex::new(6, 1), C64::new(0.8, 0.3));
    inner.insert(HarmonicIndex::new(6, 2), C64::new(0.8, -0.3));
    [1u8, 2]
        .into_iter()
        .map(|k| {
            let e = eigen_at(&dom, 3, k).unwrap();
            let f = cancellation_coefficients(&dom, &e, &inner).unwrap();
            let m = emp_matrix(&dom, &f, &e).unwrap();
            let smallest = [BoundaryKind::Outer, BoundaryKind::Inner]
                .into_iter()
                .flat_map(|b| [1, 2].map(|m| f.coefficient(b, HarmonicIndex::new(6, m)).norm()))
                .fold(f64::INFINITY, f64::min);
            (k, m.max_abs_entry(), smallest)
        })
        .collect()
}

/// Direct evaluation of one MPS trial function at the Cartesian point `x`.
pub fn ansatz_value(col: steklov::mps::AnsatzColumn, domain: &DomainSpec, x: &[f64]) -> f64 {
    use steklov::mps::AnsatzColumn;
    let d = domain.dim;
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let angles = if d == 2 {
        Angles::circle(x[1].atan2(x[0]).rem_euclid(2.0 * PI))
    } else {
        Angles::sphere(
            (x[2] / r).clamp(-1.0, 1.0).acos(),
            x[1].atan2(x[0]).rem_euclid(2.0 * PI),
        )
    };
    let angular = |i: HarmonicIndex| {
        if d == 2 {
            let l = i.l as f64;
            match (i.l, i.m) {
                (0, _) => 1.0,
                (_, 1) => (l * angles.theta).cos(),
                _ => (l * angles.theta).sin(),
            }
        } else {
            eval_harmonic(i, 3, angles, Basis::Real).unwrap().re
        }
    };
    match col {
        AnsatzColumn::Regular(i) => (r / domain.r_o).powi(i.l as i32) * angular(i),
        AnsatzColumn::Singular(i) => {
            (domain.inner_radius() / r).powi(d as i32 + i.l as i32 - 2) * angular(i)
        }
        AnsatzColumn::Log => r.ln(),
    }
}

/// Largest deviation of the assembled values and normal derivatives from
/// direct evaluation and central differences along the Cartesian normal.
pub fn collocation_error(
    domain: &DomainSpec,
    field: &DeformationField,
    t: f64,
    cfg: &steklov::mps::MpsConfig,
) -> (f64, f64) {
    let sys = steklov::mps::assemble_system(domain, field, t, cfg).unwrap();
    let d = domain.dim;
    let h = 1e-5;
    let (mut val, mut der): (f64, f64) = (0.0, 0.0);
    for (row, p) in sys.points.iter().enumerate() {
        let x = p.position(d);
        let nu = p.normal_cartesian(d);
        let shifted = |s: f64| -> Vec<f64> { x.iter().zip(&nu).map(|(a, b)| a + s * b).collect() };
        let (xp, xm) = (shifted(h), shifted(-h));
        for (col, &c) in sys.columns.iter().enumerate() {
            let f = ansatz_value(c, domain, &x);
            let fd = (ansatz_value(c, domain, &xp) - ansatz_value(c, domain, &xm)) / (2.0 * h);
            val = val.max((sys.b[(row, col)] - f).abs() / f.abs().max(1.0));
            der = der.max((sys.a[(row, col)] - fd).abs() / fd.abs().max(1.0));
        }
    }
    (val, der)
}

/// Largest gap between the unperturbed MPS eigenvalues and the analytic
/// spectrum, relative to `max(1, |σ|)`.
pub fn unperturbed_error(
    domain: &DomainSpec,
    lmax: u32,
    k_o: usize,
    k_i: usize,
    count: usize,
) -> f64 {
    let cfg = steklov::mps::MpsConfig {
        lmax,
        k_outer: k_o,
        k_inner: k_i,
        t_grid: vec![0.0],
        count,
        rank_cutoff: 1e-12,
    };
    let field = DeformationField::new(domain.dim, Basis::Complex);
    let data = steklov::mps::branch_sweep(domain, &field, &cfg).unwrap();
    let exact = steklov::spectra::enumerate_spectrum(domain, count).unwrap();
    data.values[0]
        .iter()
        .zip(&exact)
        .map(|(v, e)| (v - e.value).abs() / e.value.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Run a compare-mode experiment from JSON.
pub fn compare(json: &str) -> steklov::experiment::CompareReport {
    let cfg = steklov::experiment::parse_config(json)
        .unwrap()
        .finalize()
        .unwrap();
    steklov::experiment::run_experiment(&cfg)
        .unwrap()
        .compare
        .unwrap()
}

/// Disk and planar annulus cases whose branch slopes must reproduce the EMP
/// eigenvalues.
pub const DISK_BOW_TIE: &str = r#"{
  "mode": "compare",
  "domain": { "kind": "ball", "d": 2, "r_o": 1.0 },
  "field": { "outer": ["2cos(6θ)"] },
  "mps": { "L": 7, "K_o": 28 },
  "eigen": [ { "n": 3 } ]
}"#;

pub const ANNULUS_SADDLE: &str = r#"{
  "mode": "compare",
  "domain": { "kind": "annulus", "d": 2, "r_i": 0.4, "r_o": 1.0 },
  "field": { "outer": ["2cos(6θ)"], "inner": ["2cos(6θ)"] },
  "mps": { "L": 7, "K_o": 28, "K_i": 20 },
  "eigen": [ { "n": 3, "k": 1 }, { "n": 3, "k": 2 } ]
}"#;

pub const ANNULUS_ODD: &str = r#"{
  "mode": "compare",
  "domain": { "kind": "annulus", "d": 2, "r_i": 0.4, "r_o": 1.0 },
  "field": { "outer": ["2cos(5θ)"], "inner": ["2cos(5θ)"] },
  "mps": { "L": 7, "K_o": 28, "K_i": 20 },
  "eigen": [ { "n": 1, "k": 1 }, { "n": 2, "k": 1 } ]
}"#;

pub const SHELL_Y81: &str = r#"{
  "mode": "compare",
  "domain": { "kind": "annulus", "d": 3, "r_i": 0.4, "r_o": 1.0 },
  "field": { "outer": ["Y_{8,1}"], "inner": ["Y_{8,1}"] },
  "mps": {
    "L": 13, "K_o": 392, "K_i": 392,
    "t_grid": [-0.002, -0.001, 0.0, 0.001, 0.002]
  },
  "eigen": [ { "n": 0 }, { "n": 1 }, { "n": 2 }, { "n": 4 }, { "n": 5 } ]
}"#;
