use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{divides, exp_add, Exponent, GroebnerBasis, MultiPoly, PolyRing};
use crate::algebra::FinDimAlgebra;
use crate::field::Field;

/// Largest staircase turned into a dense structure-constant table.
pub const DEFAULT_STAIRCASE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("quotient is infinite-dimensional: all powers of variable {witness} survive")]
    InfiniteDimension { witness: usize },
    #[error("quotient has more than {limit} standard monomials")]
    TooLarge { limit: usize },
}

/// `P / I` for a zero-dimensional ideal `I`, on the staircase basis.
#[derive(Clone, Debug)]
pub struct FinDimCommAlg<F: Field> {
    ring: PolyRing<F>,
    gb: GroebnerBasis<F>,
    basis: Vec<Exponent>,
    index: BTreeMap<Exponent, usize>,
    algebra: FinDimAlgebra<F>,
}

impl<F: Field> FinDimCommAlg<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra(&self) -> &FinDimAlgebra<F> {
        &self.algebra
    }

    pub fn into_algebra(self) -> FinDimAlgebra<F> {
        self.algebra
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    /// Standard monomials, ascending; `1` first whenever the quotient is nonzero.
    pub fn monomial_basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn var_names(&self) -> &[String] {
        self.ring.var_names()
    }

    /// Coordinates of the class of `p`.
    pub fn image(&self, p: &MultiPoly<F::Elem>) -> Vec<F::Elem> {
        let field = self.ring.field();
        let nf = self.gb.normal_form(p).expect("variable count checked by ring");
        let mut v = vec![field.zero(); self.dim()];
        for (e, c) in nf.terms() {
            v[self.index[e]] = c.clone();
        }
        v
    }

    pub fn variable_image(&self, i: usize) -> Vec<F::Elem> {
        self.image(&self.ring.var(i))
    }

    /// The polynomial supported on the staircase with coordinates `v`.
    pub fn lift(&self, v: &[F::Elem]) -> MultiPoly<F::Elem> {
        self.ring.from_terms(self.basis.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Builds the quotient by the ideal of a Gröbner basis.
pub fn quotient_algebra<F: Field>(
    ring: &PolyRing<F>,
    gb: &GroebnerBasis<F>,
) -> Result<FinDimCommAlg<F>, QuotientError> {
    quotient_algebra_with_limit(ring, gb, DEFAULT_STAIRCASE_LIMIT)
}

/// Standard monomials of `gb`, ascending.
pub fn staircase<F: Field>(gb: &GroebnerBasis<F>, limit: usize) -> Result<Vec<Exponent>, QuotientError> {
    let n = gb.nvars();
    let lts = gb.leading_monomials();
    if lts.iter().any(|e| e.iter().all(|x| *x == 0)) {
        return Ok(Vec::new());
    }
    for v in 0..n {
        let pure = lts.iter().any(|e| e.iter().enumerate().all(|(i, x)| i == v || *x == 0));
        if !pure {
            return Err(QuotientError::InfiniteDimension { witness: v });
        }
    }
    // the staircase is closed under division, so a search from 1 finds it all
    let mut seen: BTreeSet<Exponent> = BTreeSet::new();
    let mut frontier = vec![vec![0u32; n]];
    seen.insert(vec![0; n]);
    while let Some(e) = frontier.pop() {
        for v in 0..n {
            let mut f = e.clone();
            f[v] += 1;
            if seen.contains(&f) || lts.iter().any(|l| divides(l, &f)) {
                continue;
            }
            if seen.len() >= limit {
                return Err(QuotientError::TooLarge { limit });
            }
            seen.insert(f.clone());
            frontier.push(f);
        }
    }
    let mut basis: Vec<Exponent> = seen.into_iter().collect();
    basis.sort_by(|a, b| gb.order().cmp(a, b));
    Ok(basis)
}

pub fn quotient_algebra_with_limit<F: Field>(
    ring: &PolyRing<F>,
    gb: &GroebnerBasis<F>,
    limit: usize,
) -> Result<FinDimCommAlg<F>, QuotientError> {
    let basis = staircase(gb, limit)?;
    let field = ring.field();
    let d = basis.len();
    let index: BTreeMap<Exponent, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut structure = vec![field.zero(); d * d * d];
    let mut cache: BTreeMap<Exponent, MultiPoly<F::Elem>> = BTreeMap::new();
    for i in 0..d {
        for j in i..d {
            let e = exp_add(&basis[i], &basis[j]);
            let nf = cache
                .entry(e.clone())
                .or_insert_with(|| gb.normal_form(&ring.monomial(e, field.one())).unwrap());
            for (m, c) in nf.terms() {
                let k = index[m];
                structure[(i * d + j) * d + k] = c.clone();
                structure[(j * d + i) * d + k] = c.clone();
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    if d > 0 {
        unit[0] = field.one();
    }
    let labels = basis.iter().map(|e| ring.format_monomial(e)).collect();
    let algebra = FinDimAlgebra::new_unchecked(field.clone(), labels, structure, unit).expect("shapes agree");
    Ok(FinDimCommAlg { ring: ring.clone(), gb: gb.clone(), basis, index, algebra })
}
