use hhsg_core::field::{Field, PrimeField, Rational, Rationals};
use hhsg_core::linalg::{self, rank, rank_and_kernel, solve, Matrix};
use hhsg_core::tate::CERTIFICATE_PRIME;
use proptest::prelude::*;

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        // bias towards zeros so low ranks show up
        let entry = prop_oneof![2 => Just(0i64), 3 => -bound..=bound];
        (Just(r), Just(c), proptest::collection::vec(entry, r * c))
    })
}

fn over<F: Field>(f: &F, r: usize, c: usize, v: &[i64]) -> Matrix<F::Elem> {
    Matrix::from_dense(f, r, c, v.iter().map(|x| f.from_i64(*x)).collect())
}

fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_plus_nullity_is_column_count((r, c, v) in int_matrix(7, 4)) {
        let f = Rationals;
        let m = over(&f, r, c, &v);
        let (rk, ker) = rank_and_kernel(&f, &m);
        prop_assert_eq!(rk + ker.len(), c);
        for x in &ker {
            prop_assert!(is_zero_vec(&f, &m.mul_vec(&f, x)));
        }
        // the kernel basis is independent, and rank survives transposition
        let kt = Matrix::from_dense(&f, ker.len(), c, ker.concat());
        prop_assert_eq!(rank(&f, &kt), ker.len());
        prop_assert_eq!(rank(&f, &m.transpose(&f)), rk);
        prop_assert_eq!(linalg::cokernel_dim(&f, &m), r - rk);
    }

    #[test]
    fn sparse_and_dense_storage_agree((r, c, v) in int_matrix(7, 3)) {
        let f = Rationals;
        let m = over(&f, r, c, &v);
        let rows = m.to_rows(&f);
        // a threshold above 100% forces sparse storage
        let s = Matrix::from_sparse_rows_with(&f, r, c, rows, 101);
        prop_assert!(s.is_sparse());
        let (rs, ks) = rank_and_kernel(&f, &s);
        prop_assert_eq!(rs, rank(&f, &m));
        prop_assert_eq!(ks.len(), c - rs);
        prop_assert!(s.eq_exact(&f, &m));
    }

    #[test]
    fn solve_recovers_a_preimage((r, c, v) in int_matrix(6, 4), x in proptest::collection::vec(-5i64..=5, 6)) {
        let f = Rationals;
        let m = over(&f, r, c, &v);
        let x: Vec<Rational> = x[..c].iter().map(|e| Rational::from_int(*e)).collect();
        let b = m.mul_vec(&f, &x);
        let y = solve(&f, &m, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&f, &y), b);
    }

    #[test]
    fn prime_and_rational_ranks_agree((r, c, v) in int_matrix(6, 3)) {
        // all minors are below the Hadamard bound (3 * sqrt 6)^6 < p
        let p = PrimeField::new(CERTIFICATE_PRIME).unwrap();
        prop_assert_eq!(rank(&Rationals, &over(&Rationals, r, c, &v)), rank(&p, &over(&p, r, c, &v)));
    }
}
