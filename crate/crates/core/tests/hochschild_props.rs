use hhsg_core::algebra::FinDimAlgebra;
use hhsg_core::field::{Field, Rational, Rationals};
use hhsg_core::hochschild::{
    cohomology_representatives, cup_product, derivations_dim, hh_dims, is_coboundary, HochschildClass, DEFAULT_BUDGET,
};
use hhsg_core::linalg::{rank, Matrix};
use hhsg_core::polyring::{groebner, quotient_algebra, MonomialOrder, PolyRing};
use proptest::prelude::*;

type A = FinDimAlgebra<Rationals>;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn trunc(m: usize) -> A {
    FinDimAlgebra::truncated_polynomial(Rationals, m)
}

/// Upper triangular 2x2 matrices on `e11, e12, e22`.
fn triangular() -> A {
    let mut c = vec![q(0); 27];
    let mut set = |i: usize, j: usize, k: usize| c[(i * 3 + j) * 3 + k] = q(1);
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 2, 1);
    set(2, 2, 2);
    FinDimAlgebra::new(Rationals, vec!["e11".into(), "e12".into(), "e22".into()], c, vec![q(1), q(0), q(1)]).unwrap()
}

/// `k[x, y]/(x^a + c xy, y^b + e x, extra)` when finite-dimensional and small.
fn quotient(a: u32, b: u32, c: i64, e: i64, extra: Option<(u32, u32)>) -> Option<A> {
    let r = PolyRing::new(Rationals, vec!["x".into(), "y".into()]);
    let mono = |i: u32, j: u32, k: i64| r.monomial(vec![i, j], q(k));
    let mut gens = vec![r.add(&mono(a, 0, 1), &mono(1, 1, c)), r.add(&mono(0, b, 1), &mono(1, 0, e))];
    if let Some((i, j)) = extra {
        gens.push(mono(i, j, 1));
    }
    let t = quotient_algebra(&r, &groebner(&r, &gens, &MonomialOrder::grevlex(2)).ok()?).ok()?;
    (1..=6).contains(&t.dim()).then(|| t.into_algebra())
}

#[derive(Clone, Debug)]
enum Shape {
    Trunc(usize),
    Tensor(usize, usize),
    Quotient(u32, u32, i64, i64, Option<(u32, u32)>),
    Triangular(usize),
}

impl Shape {
    fn build(&self) -> Option<A> {
        match *self {
            Shape::Trunc(m) => Some(trunc(m)),
            Shape::Tensor(m, n) => Some(trunc(m).tensor(&trunc(n))),
            Shape::Quotient(a, b, c, e, x) => quotient(a, b, c, e, x),
            Shape::Triangular(m) => Some(triangular().tensor(&trunc(m))),
        }
    }
}

fn shapes(max_dim: usize) -> impl Strategy<Value = Shape> {
    prop_oneof![
        (1..=max_dim.min(5)).prop_map(Shape::Trunc),
        (2usize..=3, 2usize..=3).prop_filter("size", move |(m, n)| m * n <= max_dim).prop_map(|(m, n)| Shape::Tensor(m, n)),
        (2u32..=3, 2u32..=3, -2i64..=2, -2i64..=2, proptest::option::of((0u32..=2, 0u32..=2)))
            .prop_map(|(a, b, c, e, x)| Shape::Quotient(a, b, c, e, x)),
        (1usize..=2).prop_filter("size", move |m| 3 * m <= max_dim).prop_map(Shape::Triangular),
    ]
}

fn span_rank(vs: &[Vec<Rational>], d: usize) -> usize {
    rank(&Rationals, &Matrix::from_dense(&Rationals, vs.len(), d, vs.concat()))
}

fn combine(a: &A, deg: usize, reps: &[HochschildClass<Rationals>], coeffs: &[i64]) -> HochschildClass<Rationals> {
    let f = Rationals;
    let len = a.dim().pow(deg as u32 + 1);
    let mut v = vec![f.zero(); len];
    for (r, c) in reps.iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(r.cochain()) {
            f.add_mul_assign(x, &q(*c), y);
        }
    }
    HochschildClass::new(a, deg, v, DEFAULT_BUDGET).unwrap()
}

fn sub_signed(a: &[Rational], b: &[Rational], sign: i64) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - &(&q(sign) * y)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hh0_is_center_and_hh1_is_derivations(shape in shapes(6)) {
        let Some(a) = shape.build() else {
            return Err(TestCaseError::reject("quotient too large or infinite"));
        };
        let d = a.dim();
        let hh = hh_dims(&a, 1, DEFAULT_BUDGET).unwrap();
        let center = a.center();
        prop_assert_eq!(hh[&0], center.len());
        // the degree-zero cocycles span exactly the center
        let z: Vec<Vec<Rational>> = cohomology_representatives(&a, 0, DEFAULT_BUDGET).unwrap().iter().map(|c| c.cochain().to_vec()).collect();
        let both: Vec<Vec<Rational>> = z.iter().chain(&center).cloned().collect();
        prop_assert_eq!(span_rank(&both, d), center.len());
        if a.is_commutative() {
            prop_assert_eq!(hh[&1], derivations_dim(&a));
        } else {
            // inner derivations are the image of A, of dimension d - dim Z
            prop_assert_eq!(hh[&1], derivations_dim(&a) - (d - center.len()));
        }
    }

    #[test]
    fn cup_product_is_graded_commutative_and_associative(
        shape in shapes(4),
        degs in (0usize..=2, 0usize..=2, 0usize..=1),
        coeffs in proptest::collection::vec(-2i64..=2, 9),
    ) {
        let Some(a) = shape.build() else {
            return Err(TestCaseError::reject("quotient too large or infinite"));
        };
        prop_assume!(a.dim() <= 4);
        let (m, n, l) = degs;
        let reps = |k: usize| cohomology_representatives(&a, k, DEFAULT_BUDGET).unwrap();
        let f = combine(&a, m, &reps(m), &coeffs[0..3]);
        let g = combine(&a, n, &reps(n), &coeffs[3..6]);
        let h = combine(&a, l, &reps(l), &coeffs[6..9]);
        let fg = cup_product(&a, &f, &g, DEFAULT_BUDGET).unwrap();
        let gf = cup_product(&a, &g, &f, DEFAULT_BUDGET).unwrap();
        let sign = if (m * n) % 2 == 0 { 1 } else { -1 };
        prop_assert!(is_coboundary(&a, m + n, &sub_signed(fg.cochain(), gf.cochain(), sign), DEFAULT_BUDGET).unwrap());
        prop_assume!(m + n + l <= 4);
        let left = cup_product(&a, &fg, &h, DEFAULT_BUDGET).unwrap();
        let right = cup_product(&a, &f, &cup_product(&a, &g, &h, DEFAULT_BUDGET).unwrap(), DEFAULT_BUDGET).unwrap();
        prop_assert!(is_coboundary(&a, m + n + l, &sub_signed(left.cochain(), right.cochain(), 1), DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn triangular_algebra_is_rigid() {
    // hereditary with trivial center: HH^0 = k and HH^1 = 0
    let hh = hh_dims(&triangular(), 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(hh.values().copied().collect::<Vec<_>>(), vec![1, 0, 0]);
}
