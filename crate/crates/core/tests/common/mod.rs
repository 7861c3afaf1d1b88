//! Strategies and property bodies shared by the property tests and the
//! acceptance runner.

#![allow(dead_code)]

use blowuplab::classify::classify_constant_height;
use blowuplab::exterior::{interior, Blade, GradedForm, GradedVector};
use blowuplab::geometry::{lift_identity_holds, lift_vector_field};
use blowuplab::linalg::{self, Matrix};
use blowuplab::model_io::catalog;
use blowuplab::poly::{rat, Monomial, Poly};
use blowuplab::spinor::{blowup_pullback, BlowupChart};
use blowuplab::{Covector, LieAlgebra};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = std::result::Result<(), TestCaseError>;

pub fn small_rat() -> impl Strategy<Value = BigRational> {
    (-3i64..=3).prop_map(rat)
}

pub fn nonzero_rat() -> impl Strategy<Value = BigRational> {
    prop_oneof![(-6i64..=-1), (1i64..=6)].prop_flat_map(|n| (Just(n), 1i64..=4)).prop_map(|(n, d)| blowuplab::poly::ratio(n, d))
}

pub fn form(dim: usize) -> impl Strategy<Value = GradedForm<BigRational>> {
    prop::collection::vec((0u64..(1 << dim), small_rat()), 0..6).prop_map(move |terms| {
        GradedForm::from_blades(dim, terms.into_iter().map(|(m, c)| (Blade::from_mask(m), c))).expect("in range")
    })
}

pub fn homogeneous_form(dim: usize, degree: usize) -> impl Strategy<Value = GradedForm<BigRational>> {
    form(dim).prop_map(move |f| f.component(degree))
}

pub fn poly(nvars: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -3i64..=3), 0..4)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), rat(c)))))
}

/// Polynomial with no constant term.
pub fn poly_vanishing_at_origin(nvars: usize) -> impl Strategy<Value = Poly> {
    poly(nvars, 2).prop_map(|p| Poly::from_terms(p.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone()))))
}

pub fn poly_one_form(nvars: usize) -> impl Strategy<Value = GradedForm<Poly>> {
    prop::collection::vec(poly(nvars, 2), nvars).prop_map(move |coeffs| {
        GradedForm::from_blades(nvars, coeffs.into_iter().enumerate().map(|(i, p)| (Blade::single(i), p)))
            .expect("in range")
    })
}

pub fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect::<Matrix>())
        .prop_filter("invertible", |m: &Matrix| !num_traits::Zero::is_zero(&linalg::determinant(m)))
}

pub fn catalog_algebra() -> impl Strategy<Value = LieAlgebra> {
    prop::sample::select(vec![
        catalog::so3(),
        catalog::sl2(),
        catalog::heis3(),
        catalog::abelian(3),
        catalog::diagonal_affine(2),
        catalog::diagonal_affine(3),
    ])
}

/// A catalog algebra with an invertible change of basis of matching size.
pub fn algebra_and_basis() -> impl Strategy<Value = (LieAlgebra, Matrix)> {
    catalog_algebra().prop_flat_map(|l| {
        let n = l.dim();
        (Just(l), invertible(n))
    })
}

pub fn nonzero_covector(n: usize) -> impl Strategy<Value = Covector> {
    prop::collection::vec(-4i64..=4, n)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| Covector::from_ints(&v))
}

/// Antisymmetric table with entries in -1..=1 for `[b_i, b_j]`, `i < j`.
pub fn random_table(n: usize) -> impl Strategy<Value = LieAlgebra> {
    prop::collection::vec(-1i64..=1, n * (n - 1) / 2 * n).prop_map(move |vals| {
        let mut it = vals.into_iter();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    entries.push((i, j, k, rat(it.next().expect("sized"))));
                }
            }
        }
        LieAlgebra::from_brackets(n, entries, None).expect("antisymmetric by construction")
    })
}

/// Adds `delta` to `c^k_ij` and its antisymmetric partner.
pub fn perturb(l: &LieAlgebra, i: usize, j: usize, k: usize, delta: i64) -> LieAlgebra {
    let n = l.dim();
    let mut c = l.constants().to_vec();
    c[(i * n + j) * n + k] += rat(delta);
    c[(j * n + i) * n + k] -= rat(delta);
    LieAlgebra::new(n, c, None).expect("antisymmetric")
}

/// Twenty fixed one-entry perturbations of catalog tables.
pub fn perturbed_tables() -> Vec<LieAlgebra> {
    let bases = [catalog::so3(), catalog::sl2(), catalog::heis3(), catalog::diagonal_affine(2), catalog::abelian(3)];
    let slots = [(0, 1, 0, 1), (0, 2, 2, -1), (1, 2, 0, 1), (0, 1, 2, 1)];
    let mut out = Vec::new();
    for b in &bases {
        for &(i, j, k, d) in &slots {
            out.push(perturb(b, i, j, k, d));
        }
    }
    out
}

pub fn d_squared_vanishes(l: &LieAlgebra) -> bool {
    let n = l.dim();
    (0..n).all(|k| {
        let d1 = l.ce_differential(&GradedForm::<BigRational>::basis(n, k)).expect("dim");
        l.ce_differential(&d1).expect("dim").is_zero()
    })
}

pub fn check_d_squared_iff_jacobi(l: &LieAlgebra) -> Check {
    let jacobi = l.jacobi_check().is_empty();
    prop_assert_eq!(jacobi, d_squared_vanishes(l));
    Ok(())
}

pub fn check_height_scale_invariance(l: &LieAlgebra, p: &Matrix, xi: &Covector, c: &BigRational) -> Check {
    let l2 = l.change_basis(p).expect("invertible");
    let h = l2.height(xi).expect("nonzero");
    prop_assert_eq!(h, l2.height(&xi.scale(c)).expect("nonzero"));
    prop_assert_eq!(h, l2.height_by_rank(xi).expect("nonzero"));
    Ok(())
}

pub fn check_wedge_laws(
    a: &GradedForm<BigRational>,
    b: &GradedForm<BigRational>,
    c: &GradedForm<BigRational>,
    p: usize,
    q: usize,
) -> Check {
    let ab_c = a.wedge(b).unwrap().wedge(c).unwrap();
    let a_bc = a.wedge(&b.wedge(c).unwrap()).unwrap();
    prop_assert_eq!(ab_c, a_bc);
    let ap = a.component(p);
    let bq = b.component(q);
    let lhs = ap.wedge(&bq).unwrap();
    let rhs = bq.wedge(&ap).unwrap();
    let rhs = if (p * q) % 2 == 1 { rhs.neg() } else { rhs };
    prop_assert_eq!(lhs, rhs);
    let sum = a.add(b).unwrap().wedge(c).unwrap();
    prop_assert_eq!(sum, a.wedge(c).unwrap().add(&b.wedge(c).unwrap()).unwrap());
    Ok(())
}

pub fn check_interior_laws(v: usize, a: &GradedForm<BigRational>, b: &GradedForm<BigRational>, p: usize) -> Check {
    let n = a.dim();
    let e = GradedVector::<BigRational>::basis(n, v);
    let ap = a.component(p);
    let lhs = interior(&e, &ap.wedge(b).unwrap()).unwrap();
    let first = interior(&e, &ap).unwrap().wedge(b).unwrap();
    let second = ap.wedge(&interior(&e, b).unwrap()).unwrap();
    let rhs = if p % 2 == 1 { first.sub(&second) } else { first.add(&second) }.unwrap();
    prop_assert_eq!(lhs, rhs);
    prop_assert!(interior(&e, &interior(&e, a).unwrap()).unwrap().is_zero());
    Ok(())
}

pub fn check_pullback_functorial(a: &GradedForm<Poly>, b: &GradedForm<Poly>, chart: usize) -> Check {
    let n = a.dim();
    let ch = BlowupChart::origin(n, chart).unwrap();
    let lhs = blowup_pullback(&a.wedge(b).unwrap(), &ch).unwrap().form;
    let pa = blowup_pullback(a, &ch).unwrap().form;
    let pb = blowup_pullback(b, &ch).unwrap().form;
    prop_assert_eq!(lhs, pa.wedge(&pb).unwrap());
    let sum = blowup_pullback(&a.add(b).unwrap(), &ch).unwrap().form;
    prop_assert_eq!(sum, pa.add(&pb).unwrap());
    Ok(())
}

pub fn check_lifted_field(x: &[Poly], f: &Poly, chart: usize) -> Check {
    let ch = BlowupChart::origin(x.len(), chart).unwrap();
    let lifted = lift_vector_field(x, &ch).unwrap();
    prop_assert!(lift_identity_holds(x, &lifted, f));
    Ok(())
}

pub fn check_basis_independence(l: &LieAlgebra, p: &Matrix) -> Check {
    let a = classify_constant_height(l).unwrap();
    let b = classify_constant_height(&l.change_basis(p).unwrap()).unwrap();
    prop_assert_eq!(a.variant_name(), b.variant_name());
    prop_assert_eq!(a.constant_height(), b.constant_height());
    Ok(())
}

/// Runs one named property for `cases` cases; the error names the failure.
pub fn run_property<S, F>(cases: u32, strategy: S, body: F) -> Result<u32, String>
where
    S: Strategy,
    F: Fn(S::Value) -> Check,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, body).map(|_| cases).map_err(|e| e.to_string())
}

/// Each property suite with its case count; used by the acceptance runner.
pub fn property_suites(cases: u32) -> Vec<(&'static str, Result<u32, String>)> {
    let mut out = Vec::new();
    out.push((
        "d^2 = 0 iff Jacobi (random tables)",
        run_property(cases, (3usize..=4).prop_flat_map(random_table), |l| check_d_squared_iff_jacobi(&l)),
    ));
    out.push((
        "d^2 = 0 iff Jacobi (catalog in random bases)",
        run_property(cases, algebra_and_basis(), |(l, p)| {
            let l = l.change_basis(&p).unwrap();
            prop_assert!(l.jacobi_check().is_empty());
            check_d_squared_iff_jacobi(&l)
        }),
    ));
    let tables = perturbed_tables();
    let perturbed: Result<u32, String> = tables
        .iter()
        .try_for_each(|l| check_d_squared_iff_jacobi(l).map_err(|e| e.to_string()))
        .map(|_| tables.len() as u32);
    out.push(("d^2 = 0 iff Jacobi (20 perturbed tables)", perturbed));
    out.push((
        "height scale invariance",
        run_property(
            cases,
            (algebra_and_basis(), nonzero_rat()).prop_flat_map(|((l, p), c)| {
                let n = l.dim();
                (Just(l), Just(p), nonzero_covector(n), Just(c))
            }),
            |(l, p, xi, c)| check_height_scale_invariance(&l, &p, &xi, &c),
        ),
    ));
    out.push((
        "wedge laws",
        run_property(cases, (form(5), form(5), form(5), 0usize..=5, 0usize..=5), |(a, b, c, p, q)| {
            check_wedge_laws(&a, &b, &c, p, q)
        }),
    ));
    out.push((
        "interior antiderivation",
        run_property(cases, (0usize..5, form(5), form(5), 0usize..=5), |(v, a, b, p)| {
            check_interior_laws(v, &a, &b, p)
        }),
    ));
    out.push((
        "pullback wedge-functoriality",
        run_property(cases, (poly_one_form(3), poly_one_form(3), 0usize..3), |(a, b, i)| {
            check_pullback_functorial(&a, &b, i)
        }),
    ));
    out.push((
        "lifted-field identity",
        run_property(
            cases,
            (prop::collection::vec(poly_vanishing_at_origin(3), 3), poly(3, 3), 0usize..3),
            |(x, f, i)| check_lifted_field(&x, &f, i),
        ),
    ));
    out.push((
        "classification basis independence",
        run_property(cases, algebra_and_basis(), |(l, p)| check_basis_independence(&l, &p)),
    ));
    out
}
