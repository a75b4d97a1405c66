//! Property tests for the algebraic invariants the library relies on.

use orbitlift::corpus::form_choices;
use orbitlift::dlinalg::{DMatrix, QMatrix};
use orbitlift::hermitian::{adjoint, HermitianModule};
use orbitlift::scalars::{AlgebraSpec, Coords, DivisionAlgebraElement, Rational, Sign};
use orbitlift::sl2::{lagrangian_split, HeisenbergElement, HeisenbergGroup};
use orbitlift::tableaux::{build_module, invariant_form, jordan_type, sl2_irrep, theta_lift_tableau, TableauRow, YoungTableau};
use proptest::prelude::*;

fn algebras() -> Vec<AlgebraSpec> {
    vec![
        AlgebraSpec::Field,
        AlgebraSpec::quadratic(Rational::from_int(-1)).unwrap(),
        AlgebraSpec::quadratic(Rational::from_int(5)).unwrap(),
        AlgebraSpec::hamilton(),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(n, d)| Rational::new(n, d))
}

fn wide_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn element(alg: &AlgebraSpec) -> impl Strategy<Value = DivisionAlgebraElement> {
    let alg = alg.clone();
    prop::collection::vec(small_rational(), alg.dim())
        .prop_map(move |c| DivisionAlgebraElement::new(alg.clone(), &c).unwrap())
}

fn any_element() -> impl Strategy<Value = (DivisionAlgebraElement, DivisionAlgebraElement, DivisionAlgebraElement)> {
    (0..algebras().len()).prop_flat_map(|i| {
        let a = algebras()[i].clone();
        (element(&a), element(&a), element(&a))
    })
}

fn qmatrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(small_rational(), cols), rows).prop_map(QMatrix::from_rows)
}

fn diagonal_module(alg: &AlgebraSpec, eps: Sign, dim: usize) -> HermitianModule {
    match eps {
        Sign::Plus => {
            let entries: Vec<Coords> = (0..dim).map(|i| Coords::scalar(Rational::from_int(i as i64 % 3 + 1))).collect();
            HermitianModule::diagonal(alg, eps, &entries).unwrap()
        }
        Sign::Minus => HermitianModule::hyperbolic(alg, eps, dim / 2),
    }
}

/// Admissible tableau over k from distinct row lengths with multiplicities.
fn tableau_over_k(max_size: usize) -> impl Strategy<Value = (YoungTableau, Sign)> {
    let rows = prop::collection::btree_map(1usize..=6, 1usize..=3, 1..=3);
    (rows, any::<bool>(), any::<u64>())
        .prop_filter_map("admissible and within size", move |(rows, plus, pick)| {
            let eps = if plus { Sign::Plus } else { Sign::Minus };
            let alg = AlgebraSpec::Field;
            let mut out = Vec::new();
            for (t, m) in rows {
                let row_eps = Sign::parity(t - 1) * eps;
                let mult = if row_eps == Sign::Minus { 2 * m } else { m };
                let choices = form_choices(&alg, row_eps, mult);
                let form = choices.get(pick as usize % choices.len().max(1))?.clone();
                out.push(TableauRow::new(t, form).ok()?);
            }
            let tab = YoungTableau::new(alg, out).ok()?;
            (tab.size() <= max_size && tab.is_admissible(eps)).then_some((tab, eps))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in wide_rational(), b in wide_rational(), c in wide_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
    }

    #[test]
    fn rational_order_agrees_with_subtraction(a in wide_rational(), b in wide_rational()) {
        prop_assert_eq!(a.cmp(&b), (&a - &b).signum().cmp(&0));
    }

    #[test]
    fn division_algebra_laws((x, y, z) in any_element()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().conj(), y.conj().mul(&x.conj()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().norm(), &x.norm() * &y.norm());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).unwrap() == DivisionAlgebraElement::one(x.algebra().clone()));
        }
    }

    #[test]
    fn adjoint_reverses_products_and_squares_to_sign(
        alg in 0..4usize,
        eps in any::<bool>(),
        coeffs in prop::collection::vec(small_rational(), 48),
    ) {
        let alg = &algebras()[alg];
        let eps = if eps { Sign::Plus } else { Sign::Minus };
        let u = diagonal_module(alg, eps, 2);
        let v = diagonal_module(alg, -eps, 2);
        let w = diagonal_module(alg, eps, 4);
        let d = alg.dim();
        let mat = |rows: usize, cols: usize, off: usize| {
            DMatrix::from_fn(alg, rows, cols, |r, c| {
                let mut x = Coords::zero();
                for k in 0..d {
                    x.0[k] = coeffs[(off + (r * cols + c) * d + k) % coeffs.len()].clone();
                }
                x
            })
        };
        let s = mat(2, 2, 0);
        let t = mat(4, 2, 7);
        let st = adjoint(&s, &u, &v).unwrap();
        // the double adjoint picks up the product of the two signs
        prop_assert_eq!(adjoint(&st, &v, &u).unwrap(), s.neg());
        let ts = t.matmul(&s).unwrap();
        let lhs = adjoint(&ts, &u, &w).unwrap();
        let rhs = st.matmul(&adjoint(&t, &v, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_group_laws(
        raw in qmatrix(4, 4),
        v in prop::collection::vec((prop::collection::vec(small_rational(), 4), small_rational()), 3),
    ) {
        let omega = raw.sub(&raw.transpose());
        let h = HeisenbergGroup::new(omega).unwrap();
        let el: Vec<HeisenbergElement> =
            v.into_iter().map(|(vector, center)| HeisenbergElement { vector, center }).collect();
        let (a, b, c) = (&el[0], &el[1], &el[2]);
        prop_assert_eq!(h.mul(&h.mul(a, b), c), h.mul(a, &h.mul(b, c)));
        prop_assert_eq!(h.mul(a, &h.inverse(a)), h.identity());
        prop_assert_eq!(h.mul(&h.identity(), a), a.clone());
    }

    #[test]
    fn lagrangian_split_is_a_symplectic_basis(p in qmatrix(4, 4)) {
        let j = QMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        prop_assume!(p.rank() == 4);
        let omega = p.transpose().mul(&j).mul(&p);
        let (es, fs) = lagrangian_split(&omega).unwrap();
        prop_assert_eq!(es.len(), 2);
        prop_assert_eq!(fs.len(), 2);
        let form = |v: &[Rational], w: &[Rational]| -> Rational {
            v.iter().zip(omega.mul_vec(w)).map(|(a, b)| a * &b).sum()
        };
        for (i, e) in es.iter().enumerate() {
            for (k, f) in fs.iter().enumerate() {
                let want = if i == k { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(form(e, f), want);
                prop_assert!(form(e, &es[k]).is_zero());
                prop_assert!(form(f, &fs[i]).is_zero());
            }
        }
    }

    #[test]
    fn tableau_round_trip_and_theta_size((tab, eps) in tableau_over_k(12), extra in 0usize..3) {
        let built = build_module(&tab, eps).unwrap();
        prop_assert!(built.triple.relations().all());
        prop_assert_eq!(jordan_type(built.triple.x()).unwrap(), tab.partition());
        let dim = tab.size() + tab.block_count() + extra;
        let ok_extra = extra == 0 || -eps == Sign::Plus || extra % 2 == 0;
        match theta_lift_tableau(&tab, eps, dim, None) {
            Ok(lifted) => {
                prop_assert!(ok_extra);
                prop_assert_eq!(lifted.size(), dim);
                prop_assert!(lifted.is_admissible(-eps));
            }
            Err(_) => prop_assert!(!ok_extra),
        }
        prop_assert!(theta_lift_tableau(&tab, eps, tab.size() + tab.block_count() - 1, None).is_err());
    }
}

#[test]
fn invariant_form_is_invariant_and_normalized() {
    for m in 1..=12 {
        let c = invariant_form(m);
        let irrep = sl2_irrep(m);
        for e in [&irrep.x, &irrep.h, &irrep.y] {
            assert!(e.transpose().mul(&c).add(&c.mul(e)).is_zero(), "m = {m}");
        }
        assert!(c.get(0, m - 1).is_one(), "m = {m}");
        let sym = if m % 2 == 1 { c.sub(&c.transpose()) } else { c.add(&c.transpose()) };
        assert!(sym.is_zero(), "parity of the form for m = {m}");
    }
}
