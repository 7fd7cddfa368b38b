//! Milnor and Tyurina algebras of an isolated hypersurface singularity at the
//! origin, the stable cohomology of `K(M, Q)`, and isomorphism invariants of
//! the Tyurina algebra.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{koszul, periodic_unfold};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::polyring::{
    groebner, quotient_algebra, FinDimCommAlg, MonomialOrder, MultiPoly, PolyRing, QuotientError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypersurfaceError {
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("all partial derivatives vanish identically (characteristic {characteristic})")]
    DegenerateCharacteristic { characteristic: u64 },
    #[error("non-isolated critical locus: all powers of variable {witness} survive")]
    NonIsolated { witness: usize },
    #[error("singularity away from the origin: variable {variable} is not nilpotent in the Tyurina algebra")]
    AwayFromOrigin { variable: usize },
    #[error("quotient has more than {limit} standard monomials")]
    TooLarge { limit: usize },
    #[error("polynomials live in {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
}

impl From<QuotientError> for HypersurfaceError {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::InfiniteDimension { witness } => HypersurfaceError::NonIsolated { witness },
            QuotientError::TooLarge { limit } => HypersurfaceError::TooLarge { limit },
        }
    }
}

/// The local Milnor algebra at the origin.
#[derive(Clone, Debug)]
pub struct Milnor<F: Field> {
    pub algebra: FinDimCommAlg<F>,
    /// Local Milnor number: the dimension of `algebra`.
    pub mu: usize,
    /// Dimension of `P/(∂_1 Q, ..., ∂_n Q)`, summing over all critical points.
    pub mu_global: usize,
}

fn nonzero_jacobian<F: Field>(ring: &PolyRing<F>, q: &MultiPoly<F::Elem>) -> Result<Vec<MultiPoly<F::Elem>>, HypersurfaceError> {
    if q.is_zero() {
        return Err(HypersurfaceError::ZeroPolynomial);
    }
    let j = ring.jacobian(q);
    if j.iter().all(|p| p.is_zero()) {
        return Err(HypersurfaceError::DegenerateCharacteristic { characteristic: ring.field().characteristic() });
    }
    Ok(j)
}

fn pure_powers<F: Field>(ring: &PolyRing<F>, n: u32) -> Vec<MultiPoly<F::Elem>> {
    (0..ring.nvars())
        .map(|i| {
            let mut e = vec![0; ring.nvars()];
            e[i] = n;
            ring.monomial(e, ring.field().one())
        })
        .collect()
}

/// `M = P/(J + (x_1^N, ..., x_n^N))` with `N` the global Milnor number: the
/// extra generators vanish on the component at the origin and kill the others.
pub fn milnor_algebra<F: Field>(
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
) -> Result<Milnor<F>, HypersurfaceError> {
    let j = nonzero_jacobian(ring, q)?;
    let gb = groebner(ring, &j, order).expect("ring checked");
    let global = quotient_algebra(ring, &gb)?;
    let mu_global = global.dim();
    let all_nilpotent = (0..ring.nvars()).all(|i| is_nilpotent(&global, i));
    let algebra = if all_nilpotent {
        global
    } else {
        let mut gens = j;
        gens.extend(pure_powers(ring, mu_global.max(1) as u32));
        let gb = groebner(ring, &gens, order).expect("ring checked");
        quotient_algebra(ring, &gb)?
    };
    Ok(Milnor { mu: algebra.dim(), algebra, mu_global })
}

fn is_nilpotent<F: Field>(alg: &FinDimCommAlg<F>, var: usize) -> bool {
    let a = alg.algebra();
    a.dim() == 0 || a.is_zero_elem(&a.pow(&alg.variable_image(var), a.dim()))
}

/// `T = P/(Q, ∂_1 Q, ..., ∂_n Q)`, required to be finite-dimensional and local
/// at the origin.
pub fn tyurina_algebra<F: Field>(
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
) -> Result<FinDimCommAlg<F>, HypersurfaceError> {
    let mut gens = nonzero_jacobian(ring, q)?;
    gens.insert(0, q.clone());
    let gb = groebner(ring, &gens, order).expect("ring checked");
    let t = quotient_algebra(ring, &gb)?;
    if let Some(variable) = (0..ring.nvars()).find(|i| !is_nilpotent(&t, *i)) {
        return Err(HypersurfaceError::AwayFromOrigin { variable });
    }
    Ok(t)
}

/// Multiplication by the class of `Q` on the Milnor algebra.
pub fn multiplication_by_q<F: Field>(m: &Milnor<F>, q: &MultiPoly<F::Elem>) -> Matrix<F::Elem> {
    m.algebra.algebra().left_mult_matrix(&m.algebra.image(q))
}

/// Dimensions of the 2-periodic unfolding of `K(M, Q)` over `window`.
pub fn stable_hh_dims<F: Field>(
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
    window: (i64, i64),
) -> Result<BTreeMap<i64, usize>, HypersurfaceError> {
    let m = milnor_algebra(ring, q, order)?;
    Ok(stable_dims_of(&m, q, window))
}

fn stable_dims_of<F: Field>(m: &Milnor<F>, q: &MultiPoly<F::Elem>, window: (i64, i64)) -> BTreeMap<i64, usize> {
    let alg = m.algebra.algebra();
    if alg.dim() == 0 {
        return (window.0..=window.1).map(|n| (n, 0)).collect();
    }
    let k = koszul(alg, &[m.algebra.image(q)]).expect("quotients are commutative");
    periodic_unfold(&k, window).expect("two-term complex")
}

/// Weights `w` with `Σ w_i a_i = 1` for every exponent `a` of `Q`, if any.
pub fn quasi_homogeneous_weights<F: Field>(ring: &PolyRing<F>, q: &MultiPoly<F::Elem>) -> Option<Vec<F::Elem>> {
    let f = ring.field();
    if q.is_zero() {
        return None;
    }
    let rows: Vec<Vec<(usize, F::Elem)>> = q
        .terms()
        .map(|(e, _)| e.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, x)| (i, f.from_i64(*x as i64))).collect())
        .collect();
    let m = Matrix::from_sparse_rows(f, rows.len(), ring.nvars(), rows);
    let ones = vec![f.one(); m.rows()];
    linalg::solve(f, &m, &ones).expect("shapes agree")
}

/// Algebra-isomorphism invariants of the Tyurina algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub tau: usize,
    /// `dim m^i / m^{i+1}` for `i = 0, 1, ...` until the powers vanish.
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
    /// `dim T / rad(T)^2`.
    pub dim_mod_rad_sq: usize,
}

pub fn fingerprint_of<F: Field>(t: &FinDimCommAlg<F>) -> Fingerprint {
    let a = t.algebra();
    let d = a.dim();
    let vars: Vec<Vec<F::Elem>> = (0..t.ring().nvars()).map(|i| t.variable_image(i)).collect();
    let m = a.ideal_basis(&vars);
    let mut powers = vec![d];
    if d > 0 {
        powers.extend(a.ideal_power_dims(&vars));
    }
    let hilbert: Vec<usize> = powers.windows(2).map(|w| w[0] - w[1]).collect();
    let rad = a.radical().expect("quotients are commutative");
    let rad_sq = a.product_span(&rad, &rad);
    Fingerprint { tau: d, hilbert, socle_dim: if d == 0 { 0 } else { a.annihilator_dim(&m) }, dim_mod_rad_sq: d - rad_sq.len() }
}

pub fn fingerprint<F: Field>(
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
) -> Result<Fingerprint, HypersurfaceError> {
    Ok(fingerprint_of(&tyurina_algebra(ring, q, order)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Some invariant differs, so the singularities are not isomorphic.
    Distinct,
    /// All invariants agree; this does not prove isomorphism.
    FingerprintEqual,
}

pub fn compare_singularities<F: Field>(
    r1: &PolyRing<F>,
    q1: &MultiPoly<F::Elem>,
    r2: &PolyRing<F>,
    q2: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
) -> Result<(Verdict, Fingerprint, Fingerprint), HypersurfaceError> {
    if r1.nvars() != r2.nvars() {
        return Err(HypersurfaceError::VariableCountMismatch { left: r1.nvars(), right: r2.nvars() });
    }
    let a = fingerprint(r1, q1, order)?;
    let b = fingerprint(r2, q2, order)?;
    let v = if a == b { Verdict::FingerprintEqual } else { Verdict::Distinct };
    Ok((v, a, b))
}

#[derive(Clone, Debug)]
pub struct SingularityReport<F: Field> {
    pub q: MultiPoly<F::Elem>,
    pub milnor_number: usize,
    pub milnor_number_global: usize,
    pub tyurina_number: usize,
    pub milnor_algebra: FinDimCommAlg<F>,
    pub tyurina_algebra: FinDimCommAlg<F>,
    pub stable_even_dim: usize,
    pub stable_odd_dim: usize,
    /// Rank of multiplication by `Q` on the Milnor algebra.
    pub q_action_rank: usize,
    pub quasi_homogeneous: Option<Vec<F::Elem>>,
}

pub fn analyze<F: Field>(
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
) -> Result<SingularityReport<F>, HypersurfaceError> {
    let m = milnor_algebra(ring, q, order)?;
    let t = tyurina_algebra(ring, q, order)?;
    let stable = stable_dims_of(&m, q, (0, 1));
    let q_action_rank = linalg::rank(ring.field(), &multiplication_by_q(&m, q));
    Ok(SingularityReport {
        q: q.clone(),
        milnor_number: m.mu,
        milnor_number_global: m.mu_global,
        tyurina_number: t.dim(),
        stable_even_dim: stable[&0],
        stable_odd_dim: stable[&1],
        q_action_rank,
        quasi_homogeneous: quasi_homogeneous_weights(ring, q),
        milnor_algebra: m.algebra,
        tyurina_algebra: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};
    use alloc::string::ToString;

    fn ring(vars: &[&str]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect())
    }

    fn go() -> MonomialOrder {
        MonomialOrder::grevlex(2)
    }

    #[test]
    fn milnor_examples() {
        let r1 = ring(&["x"]);
        let m = milnor_algebra(&r1, &r1.parse("x^2").unwrap(), &MonomialOrder::grevlex(1)).unwrap();
        assert_eq!(m.mu, 1);
        let r = ring(&["x", "y"]);
        let m = milnor_algebra(&r, &r.parse("x^3 + y^3").unwrap(), &go()).unwrap();
        let mut b = m.algebra.monomial_basis().to_vec();
        b.sort();
        assert_eq!(b, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let m = milnor_algebra(&r, &r.parse("x^3 - y^2").unwrap(), &go()).unwrap();
        assert_eq!(m.mu, 2);
        let mut b = m.algebra.monomial_basis().to_vec();
        b.sort();
        assert_eq!(b, vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn witness_local_and_global_numbers() {
        let r = ring(&["x", "y"]);
        let q = r.parse("x^4 + y^5 + x^2*y^3").unwrap();
        let m = milnor_algebra(&r, &q, &go()).unwrap();
        assert_eq!((m.mu, m.mu_global), (12, 14));
        let t = tyurina_algebra(&r, &q, &go()).unwrap();
        assert_eq!(t.dim(), 11);
        assert_eq!(linalg::rank(&Rationals, &multiplication_by_q(&m, &q)), 1);
        let s = stable_hh_dims(&r, &q, &go(), (-2, 3)).unwrap();
        assert!(s.values().all(|d| *d == 11));
        assert!(quasi_homogeneous_weights(&r, &q).is_none());
    }

    #[test]
    fn tyurina_of_powers() {
        let r = ring(&["x"]);
        for m in 2..7 {
            let q = r.parse(&alloc::format!("x^{}", m)).unwrap();
            assert_eq!(tyurina_algebra(&r, &q, &MonomialOrder::grevlex(1)).unwrap().dim(), m - 1);
            let s = stable_hh_dims(&r, &q, &MonomialOrder::grevlex(1), (-3, 5)).unwrap();
            assert!(s.values().all(|d| *d == m - 1));
        }
    }

    #[test]
    fn errors() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            milnor_algebra(&r, &r.parse("x^2").unwrap(), &go()).unwrap_err(),
            HypersurfaceError::NonIsolated { witness: 1 }
        );
        let f5 = PolyRing::new(PrimeField::new(5).unwrap(), vec!["x".to_string()]);
        assert_eq!(
            milnor_algebra(&f5, &f5.parse("x^5").unwrap(), &MonomialOrder::grevlex(1)).unwrap_err(),
            HypersurfaceError::DegenerateCharacteristic { characteristic: 5 }
        );
        // critical point at x = 1 on the hypersurface (x-1)^2
        let r1 = ring(&["x"]);
        assert_eq!(
            tyurina_algebra(&r1, &r1.parse("(x-1)^2").unwrap(), &MonomialOrder::grevlex(1)).unwrap_err(),
            HypersurfaceError::AwayFromOrigin { variable: 0 }
        );
    }

    #[test]
    fn weights() {
        let r = ring(&["x", "y"]);
        let third = Rational::new(1, 3);
        assert_eq!(quasi_homogeneous_weights(&r, &r.parse("x^3+y^3").unwrap()), Some(vec![third.clone(), third.clone()]));
        assert_eq!(quasi_homogeneous_weights(&r, &r.parse("x^3-y^2").unwrap()), Some(vec![third, Rational::new(1, 2)]));
    }

    #[test]
    fn fingerprints() {
        let r = ring(&["x", "y"]);
        let fp = |s: &str| fingerprint(&r, &r.parse(s).unwrap(), &go()).unwrap();
        assert_eq!(fp("x^2+y^2"), fp("x*y"));
        assert_ne!(fp("x^3+y^3"), fp("x^4+y^4"));
        assert_eq!(fp("x^3+y^3").tau, 4);
        assert_eq!(fp("x^4+y^4").tau, 9);
        assert_eq!(fp("x^4 + y^5 + x^2*y^3"), fp("y^4 + x^5 + y^2*x^3"));
        let f = fp("x^3+y^3");
        assert_eq!(f.hilbert, vec![1, 2, 1]);
        assert_eq!(f.socle_dim, 1);
        assert_eq!(f.dim_mod_rad_sq, 3);
    }
}
