//! Buchberger's algorithm for ideals and for submodules of free modules
//! `P^r` under a position-over-term order.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{divides, exp_add, exp_sub, lcm, Exponent, MonomialOrder, MultiPoly, PolyRing};
use crate::field::Field;

/// An element of `P^r`, one polynomial per position.
pub type ModuleVector<E> = Vec<MultiPoly<E>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial has {got} variables, expected {expected}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("module vector has {got} components, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
}

// Terms sorted descending under the position-over-term order, where a
// smaller position index is larger.
type Terms<E> = Vec<(usize, Exponent, E)>;

#[derive(Clone)]
struct Engine<F: Field> {
    field: F,
    order: MonomialOrder,
    nvars: usize,
    rank: usize,
}

impl<F: Field> Engine<F> {
    fn cmp_key(&self, a: (usize, &[u32]), b: (usize, &[u32])) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.order.cmp(a.1, b.1))
    }

    fn from_vector(&self, v: &[MultiPoly<F::Elem>]) -> Terms<F::Elem> {
        let mut t: Terms<F::Elem> = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            for (e, c) in p.terms() {
                t.push((pos, e.clone(), c.clone()));
            }
        }
        t.sort_by(|a, b| self.cmp_key((b.0, &b.1), (a.0, &a.1)));
        t
    }

    fn to_vector(&self, t: &Terms<F::Elem>) -> ModuleVector<F::Elem> {
        let mut out = vec![MultiPoly::zero(self.nvars); self.rank];
        for (pos, e, c) in t {
            out[*pos].terms.insert(e.clone(), c.clone());
        }
        out
    }

    /// `a - c * x^m * b`
    fn sub_scaled(&self, a: &[(usize, Exponent, F::Elem)], c: &F::Elem, m: &[u32], b: &Terms<F::Elem>) -> Terms<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut bi = b.iter().map(|(p, e, x)| (*p, exp_add(e, m), f.mul(x, c))).peekable();
        while i < a.len() || bi.peek().is_some() {
            let take = match (a.get(i), bi.peek()) {
                (Some(x), Some(y)) => self.cmp_key((x.0, &x.1), (y.0, &y.1)),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (p, e, x) = bi.next().unwrap();
                    out.push((p, e, f.neg(&x)));
                }
                Ordering::Equal => {
                    let (p, e, x) = bi.next().unwrap();
                    let v = f.sub(&a[i].2, &x);
                    if !f.is_zero(&v) {
                        out.push((p, e, v));
                    }
                    i += 1;
                }
            }
        }
        out
    }

    fn monic(&self, t: &mut Terms<F::Elem>) {
        if let Some(lc) = t.first().map(|x| x.2.clone()) {
            let inv = self.field.inv(&lc).unwrap();
            for x in t.iter_mut() {
                x.2 = self.field.mul(&x.2, &inv);
            }
        }
    }

    fn find_divisor(&self, basis: &[Terms<F::Elem>], pos: usize, e: &[u32], skip: Option<usize>) -> Option<usize> {
        basis.iter().enumerate().position(|(k, g)| {
            Some(k) != skip && g[0].0 == pos && divides(&g[0].1, e)
        })
    }

    /// Full reduction. Basis elements are monic.
    fn reduce(&self, f: &[(usize, Exponent, F::Elem)], basis: &[Terms<F::Elem>], skip: Option<usize>) -> Terms<F::Elem> {
        let mut p: Terms<F::Elem> = f.to_vec();
        let mut rem: Terms<F::Elem> = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let (pos, e, c) = &p[start];
            match self.find_divisor(basis, *pos, e, skip) {
                Some(k) => {
                    let g = &basis[k];
                    let m = exp_sub(e, &g[0].1);
                    let c = c.clone();
                    p = self.sub_scaled(&p[start..], &c, &m, g);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    fn s_poly(&self, a: &Terms<F::Elem>, b: &Terms<F::Elem>) -> Terms<F::Elem> {
        let l = lcm(&a[0].1, &b[0].1);
        let ma = exp_sub(&l, &a[0].1);
        let mb = exp_sub(&l, &b[0].1);
        let one = self.field.one();
        let zero: Terms<F::Elem> = Vec::new();
        let sa = self.sub_scaled(&zero, &self.field.neg(&one), &ma, a);
        self.sub_scaled(&sa, &one, &mb, b)
    }

    fn buchberger(&self, gens: Vec<Terms<F::Elem>>) -> Vec<Terms<F::Elem>> {
        let mut basis: Vec<Terms<F::Elem>> = Vec::new();
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        let add = |basis: &mut Vec<Terms<F::Elem>>, pending: &mut BTreeSet<(usize, usize)>, mut g: Terms<F::Elem>| {
            self.monic(&mut g);
            let j = basis.len();
            for (i, h) in basis.iter().enumerate() {
                if h[0].0 == g[0].0 {
                    pending.insert((i, j));
                }
            }
            basis.push(g);
        };
        for g in gens {
            let r = self.reduce(&g, &basis, None);
            if !r.is_empty() {
                add(&mut basis, &mut pending, r);
            }
        }
        while !pending.is_empty() {
            // normal selection: smallest lcm
            let &(i, j) = pending
                .iter()
                .min_by(|x, y| {
                    let lx = lcm(&basis[x.0][0].1, &basis[x.1][0].1);
                    let ly = lcm(&basis[y.0][0].1, &basis[y.1][0].1);
                    self.cmp_key((basis[x.0][0].0, &lx), (basis[y.0][0].0, &ly)).then(x.cmp(y))
                })
                .unwrap();
            pending.remove(&(i, j));
            let (a, b) = (&basis[i], &basis[j]);
            if self.rank == 1 && a[0].1.iter().zip(&b[0].1).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let l = lcm(&a[0].1, &b[0].1);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k][0].0 == a[0].0
                    && divides(&basis[k][0].1, &l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.s_poly(a, b);
            let r = self.reduce(&s, &basis, None);
            if !r.is_empty() {
                add(&mut basis, &mut pending, r);
            }
        }
        self.interreduce(basis)
    }

    fn interreduce(&self, basis: Vec<Terms<F::Elem>>) -> Vec<Terms<F::Elem>> {
        // drop elements whose leading term is divisible by another's
        let mut keep: Vec<Terms<F::Elem>> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                k != i
                    && h[0].0 == g[0].0
                    && divides(&h[0].1, &g[0].1)
                    && (h[0].1 != g[0].1 || k < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let mut r = self.reduce(&keep[i], &keep, Some(i));
            self.monic(&mut r);
            out.push(r);
        }
        out.sort_by(|a, b| self.cmp_key((a[0].0, &a[0].1), (b[0].0, &b[0].1)));
        out
    }
}

fn check_vars<E: Clone>(nvars: usize, p: &MultiPoly<E>) -> Result<(), PolyError> {
    if p.nvars() != nvars {
        return Err(PolyError::VariableMismatch { expected: nvars, got: p.nvars() });
    }
    Ok(())
}

/// A reduced Gröbner basis of an ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<MultiPoly<F::Elem>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    fn engine(&self) -> Engine<F> {
        Engine { field: self.field.clone(), order: self.order.clone(), nvars: self.nvars, rank: 1 }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[MultiPoly<F::Elem>] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Generators ascending by leading monomial.
    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.generators.iter().map(|g| g.leading_term(&self.order).unwrap().0.clone()).collect()
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().iter().any(|e| e.iter().all(|x| *x == 0))
    }

    pub fn normal_form(&self, f: &MultiPoly<F::Elem>) -> Result<MultiPoly<F::Elem>, PolyError> {
        check_vars(self.nvars, f)?;
        let eng = self.engine();
        let basis: Vec<_> = self.generators.iter().map(|g| eng.from_vector(core::slice::from_ref(g))).collect();
        let r = eng.reduce(&eng.from_vector(core::slice::from_ref(f)), &basis, None);
        Ok(eng.to_vector(&r).pop().unwrap())
    }

    pub fn contains(&self, f: &MultiPoly<F::Elem>) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Assembles a basis without running Buchberger; the generators must be
    /// monic. Use [`buchberger_criterion_holds`] to validate.
    pub fn from_generators_unchecked(
        field: F,
        nvars: usize,
        order: MonomialOrder,
        generators: Vec<MultiPoly<F::Elem>>,
        reduced: bool,
    ) -> Self {
        GroebnerBasis { field, nvars, order, generators, reduced }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Zero generators are
/// ignored; the zero ideal has an empty basis.
pub fn groebner<F: Field>(
    ring: &PolyRing<F>,
    gens: &[MultiPoly<F::Elem>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>, PolyError> {
    for g in gens {
        check_vars(ring.nvars(), g)?;
    }
    assert_eq!(order.nvars(), ring.nvars(), "order is for a different number of variables");
    let eng = Engine { field: ring.field().clone(), order: order.clone(), nvars: ring.nvars(), rank: 1 };
    let terms: Vec<_> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| eng.from_vector(core::slice::from_ref(g))).collect();
    let basis = eng.buchberger(terms);
    let generators = basis.iter().map(|t| eng.to_vector(t).pop().unwrap()).collect();
    Ok(GroebnerBasis { field: ring.field().clone(), nvars: ring.nvars(), order: order.clone(), generators, reduced: true })
}

/// Checks that every S-polynomial of two generators reduces to zero, and, for
/// a basis flagged as reduced, that it is monic and interreduced.
pub fn buchberger_criterion_holds<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let eng = gb.engine();
    let mut basis: Vec<Terms<F::Elem>> =
        gb.generators.iter().map(|g| eng.from_vector(core::slice::from_ref(g))).collect();
    if basis.iter().any(|b| b.is_empty()) {
        return false;
    }
    if gb.reduced {
        for (i, b) in basis.iter().enumerate() {
            if !gb.field.is_one(&b[0].2) {
                return false;
            }
            for (k, h) in basis.iter().enumerate() {
                if k != i && b.iter().any(|t| divides(&h[0].1, &t.1)) {
                    return false;
                }
            }
        }
    }
    for b in basis.iter_mut() {
        eng.monic(b);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !eng.reduce(&eng.s_poly(&basis[i], &basis[j]), &basis, None).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A reduced Gröbner basis of a submodule of `P^r`, position-over-term with
/// position 0 the most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleBasis<F: Field> {
    field: F,
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    generators: Vec<ModuleVector<F::Elem>>,
}

impl<F: Field> ModuleBasis<F> {
    fn engine(&self) -> Engine<F> {
        Engine { field: self.field.clone(), order: self.order.clone(), nvars: self.nvars, rank: self.rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[ModuleVector<F::Elem>] {
        &self.generators
    }

    /// `(position, monomial)` of each generator's leading term.
    pub fn leading_terms(&self) -> Vec<(usize, Exponent)> {
        let eng = self.engine();
        self.generators
            .iter()
            .map(|g| {
                let t = eng.from_vector(g);
                (t[0].0, t[0].1.clone())
            })
            .collect()
    }

    /// Whether `x^e` at `pos` lies in the leading-term module.
    pub fn is_leading(&self, pos: usize, e: &[u32]) -> bool {
        self.leading_terms().iter().any(|(p, l)| *p == pos && divides(l, e))
    }

    pub fn normal_form(&self, v: &[MultiPoly<F::Elem>]) -> Result<ModuleVector<F::Elem>, PolyError> {
        if v.len() != self.rank {
            return Err(PolyError::RankMismatch { expected: self.rank, got: v.len() });
        }
        for p in v {
            check_vars(self.nvars, p)?;
        }
        let eng = self.engine();
        let basis: Vec<_> = self.generators.iter().map(|g| eng.from_vector(g)).collect();
        Ok(eng.to_vector(&eng.reduce(&eng.from_vector(v), &basis, None)))
    }

    pub fn is_criterion_satisfied(&self) -> bool {
        let eng = self.engine();
        let basis: Vec<_> = self.generators.iter().map(|g| eng.from_vector(g)).collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i][0].0 == basis[j][0].0
                    && !eng.reduce(&eng.s_poly(&basis[i], &basis[j]), &basis, None).is_empty()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the submodule of `P^rank` generated by `gens`.
pub fn module_groebner<F: Field>(
    ring: &PolyRing<F>,
    rank: usize,
    gens: &[ModuleVector<F::Elem>],
    order: &MonomialOrder,
) -> Result<ModuleBasis<F>, PolyError> {
    for g in gens {
        if g.len() != rank {
            return Err(PolyError::RankMismatch { expected: rank, got: g.len() });
        }
        for p in g {
            check_vars(ring.nvars(), p)?;
        }
    }
    let eng = Engine { field: ring.field().clone(), order: order.clone(), nvars: ring.nvars(), rank };
    let terms: Vec<_> = gens.iter().map(|g| eng.from_vector(g)).filter(|t| !t.is_empty()).collect();
    let basis = eng.buchberger(terms);
    Ok(ModuleBasis {
        field: ring.field().clone(),
        nvars: ring.nvars(),
        rank,
        order: order.clone(),
        generators: basis.iter().map(|t| eng.to_vector(t)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};
    use crate::polyring::OrderKind;
    use alloc::string::ToString;

    fn ring(vars: &[&str]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect())
    }

    fn polys(r: &PolyRing<Rationals>, s: &[&str]) -> Vec<MultiPoly<Rational>> {
        s.iter().map(|x| r.parse(x).unwrap()).collect()
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"]);
        let o = MonomialOrder::grevlex(2);
        let gb = groebner(&r, &polys(&r, &["x"]), &o).unwrap();
        assert_eq!(gb.generators(), &polys(&r, &["x"])[..]);
        let gb = groebner(&r, &polys(&r, &["2*x", "3*x"]), &o).unwrap();
        assert_eq!(gb.generators(), &polys(&r, &["x"])[..]);
        let gb = groebner(&r, &polys(&r, &["0"]), &o).unwrap();
        assert!(gb.generators().is_empty());
    }

    #[test]
    fn lex_elimination() {
        let r = ring(&["x", "y"]);
        let o = MonomialOrder::lex(2);
        let gb = groebner(&r, &polys(&r, &["x^2 - y", "y^2 - x"]), &o).unwrap();
        // eliminating x: x = y^2 gives y^4 = y
        let target = r.parse("y^4 - y").unwrap();
        assert!(gb.generators().contains(&target));
        assert!(buchberger_criterion_holds(&gb));
        for g in polys(&r, &["x^2 - y", "y^2 - x"]) {
            assert!(gb.contains(&g).unwrap());
        }
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let o = MonomialOrder::lex(2);
        let gb = groebner(&r, &polys(&r, &["x^2 - y"]), &o).unwrap();
        assert_eq!(gb.normal_form(&r.parse("x^2").unwrap()).unwrap(), r.parse("y").unwrap());
        let gb = groebner(&r, &polys(&r, &["2*x - y"]), &o).unwrap();
        // substitute x = y/2
        let nf = gb.normal_form(&r.parse("x^3").unwrap()).unwrap();
        assert_eq!(nf, r.parse("1/8*y^3").unwrap());
        let wrong = ring(&["x"]).parse("x").unwrap();
        assert_eq!(gb.normal_form(&wrong), Err(PolyError::VariableMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn prime_field_basis() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), vec!["x".to_string(), "y".to_string()]);
        let gens = vec![r.parse("x^3 + y^2*x").unwrap(), r.parse("x*y - 1").unwrap()];
        let gb = groebner(&r, &gens, &MonomialOrder::grevlex(2)).unwrap();
        assert!(buchberger_criterion_holds(&gb));
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn module_basis_of_syzygy_trick() {
        // module generated by (x, 1), (y, 0) in P^2
        let r = ring(&["x", "y"]);
        let o = MonomialOrder::with_priority(OrderKind::Grevlex, vec![0, 1]);
        let g1 = vec![r.parse("x").unwrap(), r.parse("1").unwrap()];
        let g2 = vec![r.parse("y").unwrap(), r.parse("0").unwrap()];
        let mb = module_groebner(&r, 2, &[g1, g2], &o).unwrap();
        assert!(mb.is_criterion_satisfied());
        // y*(x,1) - x*(y,0) = (0, y)
        let v = vec![r.parse("0").unwrap(), r.parse("y").unwrap()];
        assert!(mb.normal_form(&v).unwrap().iter().all(|p| p.is_zero()));
        assert!(mb.is_leading(1, &[0, 1]));
        assert!(!mb.is_leading(1, &[1, 0]));
    }
}
