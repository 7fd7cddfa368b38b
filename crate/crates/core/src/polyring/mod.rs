//! Multivariate polynomials with exact coefficients, monomial orders,
//! Gröbner bases and finite-dimensional quotient algebras.

mod groebner;
mod parse;
mod quotient;

pub use groebner::{
    buchberger_criterion_holds, groebner, module_groebner, GroebnerBasis, ModuleBasis, ModuleVector, PolyError,
};
pub use parse::ParseError;
pub use quotient::{
    quotient_algebra, quotient_algebra_with_limit, staircase, FinDimCommAlg, QuotientError, DEFAULT_STAIRCASE_LIMIT,
};

use alloc::collections::BTreeMap;
use alloc::fmt;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::Field;

/// Exponent vector.
pub type Exponent = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Grevlex,
    Lex,
    GradedLex,
}

/// A monomial order together with a variable priority: `priority[0]` is the
/// most significant variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, priority: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn graded_lex(nvars: usize) -> Self {
        Self::new(OrderKind::GradedLex, nvars)
    }

    /// Panics unless `priority` is a permutation of `0..n`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            assert!(p < seen.len() && !seen[p], "priority must be a permutation");
            seen[p] = true;
        }
        MonomialOrder { kind, priority }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let lex = || {
            for &v in &self.priority {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::GradedLex => degree(a).cmp(&degree(b)).then_with(lex),
            OrderKind::Grevlex => degree(a).cmp(&degree(b)).then_with(|| {
                for &v in self.priority.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `b - a`, assuming `a | b`.
pub fn exp_sub(b: &[u32], a: &[u32]) -> Exponent {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// A polynomial: nonzero coefficients keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<E> {
    nvars: usize,
    terms: BTreeMap<Exponent, E>,
}

impl<E: Clone> MultiPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&E> {
        self.terms.get(e)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Terms sorted in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Exponent, E)> {
        let mut v: Vec<(Exponent, E)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &E)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; self.nvars];
                for (i, x) in e.iter().enumerate() {
                    ne[perm[i]] = *x;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

/// A polynomial ring `k[x_1, ..., x_n]` with named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>) -> Self {
        PolyRing { field, vars }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> MultiPoly<F::Elem> {
        MultiPoly::zero(self.nvars())
    }

    pub fn constant(&self, c: F::Elem) -> MultiPoly<F::Elem> {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn one(&self) -> MultiPoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn monomial(&self, e: Exponent, c: F::Elem) -> MultiPoly<F::Elem> {
        let mut p = self.zero();
        if !self.field.is_zero(&c) {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn var(&self, i: usize) -> MultiPoly<F::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e, self.field.one())
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Exponent, F::Elem)>) -> MultiPoly<F::Elem> {
        let mut p = self.zero();
        for (e, c) in terms {
            assert_eq!(e.len(), self.nvars());
            self.add_term(&mut p, e, &c);
        }
        p
    }

    fn add_term(&self, p: &mut MultiPoly<F::Elem>, e: Exponent, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match p.terms.get_mut(&e) {
            Some(x) => {
                *x = self.field.add(x, c);
                if self.field.is_zero(x) {
                    p.terms.remove(&e);
                }
            }
            None => {
                p.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, a: &MultiPoly<F::Elem>, b: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        let mut p = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut p, e.clone(), c);
        }
        p
    }

    pub fn neg(&self, a: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        self.scale(a, &self.field.from_i64(-1))
    }

    pub fn sub(&self, a: &MultiPoly<F::Elem>, b: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &MultiPoly<F::Elem>, c: &F::Elem) -> MultiPoly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        MultiPoly { nvars: a.nvars, terms: a.terms.iter().map(|(e, x)| (e.clone(), self.field.mul(x, c))).collect() }
    }

    pub fn mul(&self, a: &MultiPoly<F::Elem>, b: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        let mut p = self.zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(&mut p, exp_add(ea, eb), &self.field.mul(ca, cb));
            }
        }
        p
    }

    pub fn pow(&self, a: &MultiPoly<F::Elem>, e: u32) -> MultiPoly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, a: &MultiPoly<F::Elem>, i: usize) -> MultiPoly<F::Elem> {
        let mut p = self.zero();
        for (e, c) in &a.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            self.add_term(&mut p, ne, &self.field.mul(c, &self.field.from_i64(e[i] as i64)));
        }
        p
    }

    /// The partial derivatives `∂Q/∂x_i`, in variable order.
    pub fn jacobian(&self, q: &MultiPoly<F::Elem>) -> Vec<MultiPoly<F::Elem>> {
        (0..self.nvars()).map(|i| self.derivative(q, i)).collect()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, a: &MultiPoly<F::Elem>, order: &MonomialOrder) -> MultiPoly<F::Elem> {
        match a.leading_term(order) {
            Some((_, c)) => self.scale(a, &self.field.inv(c).unwrap()),
            None => a.clone(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly<F::Elem>, ParseError> {
        parse::parse(self, text)
    }

    /// Prints terms in descending order.
    pub fn display<'a>(&'a self, p: &'a MultiPoly<F::Elem>, order: &'a MonomialOrder) -> DisplayPoly<'a, F> {
        DisplayPoly { ring: self, poly: p, order }
    }

    pub fn format(&self, p: &MultiPoly<F::Elem>, order: &MonomialOrder) -> String {
        alloc::format!("{}", self.display(p, order))
    }

    pub fn format_monomial(&self, e: &[u32]) -> String {
        let mut s = String::new();
        write_monomial(&mut s, &self.vars, e).unwrap();
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

fn write_monomial(out: &mut impl fmt::Write, vars: &[String], e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, &x) in vars.iter().zip(e) {
        if x == 0 {
            continue;
        }
        if !first {
            out.write_char('*')?;
        }
        first = false;
        out.write_str(v)?;
        if x > 1 {
            write!(out, "^{}", x)?;
        }
    }
    Ok(())
}

pub struct DisplayPoly<'a, F: Field> {
    ring: &'a PolyRing<F>,
    poly: &'a MultiPoly<F::Elem>,
    order: &'a MonomialOrder,
}

impl<F: Field> fmt::Display for DisplayPoly<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = &self.ring.field;
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.poly.sorted_terms(self.order).iter().enumerate() {
            let cs = alloc::format!("{}", field.display(c));
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, String::from(rest)),
                None => (false, cs),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = e.iter().all(|x| *x == 0);
            if constant {
                f.write_str(&mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{}*", mag)?;
                }
                write_monomial(f, &self.ring.vars, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};
    use alloc::string::ToString;

    fn ring(vars: &[&str]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn grevlex_lex_graded_lex() {
        let g = MonomialOrder::grevlex(3);
        // x y^2 vs x^2 z: same degree; last variable z has exponent 0 vs 1 -> x y^2 bigger
        assert_eq!(g.cmp(&[1, 2, 0], &[2, 0, 1]), Ordering::Greater);
        let l = MonomialOrder::lex(2);
        assert_eq!(l.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let gl = MonomialOrder::graded_lex(2);
        assert_eq!(gl.cmp(&[1, 0], &[0, 5]), Ordering::Less);
        let l_yx = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]);
        assert_eq!(l_yx.cmp(&[1, 0], &[0, 1]), Ordering::Less);
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(&["x", "y"]);
        let q = r.parse("x^3 + y^3").unwrap();
        let j = r.jacobian(&q);
        assert_eq!(j[0], r.parse("3*x^2").unwrap());
        assert_eq!(j[1], r.parse("3*y^2").unwrap());
        let r1 = ring(&["x"]);
        assert_eq!(r1.jacobian(&r1.parse("x^2").unwrap()), vec![r1.parse("2*x").unwrap()]);
        let f5 = PolyRing::new(PrimeField::new(5).unwrap(), vec!["x".to_string()]);
        let x5 = f5.parse("x^5").unwrap();
        assert!(f5.jacobian(&x5)[0].is_zero());
    }

    #[test]
    fn printing_is_descending_and_signed() {
        let r = ring(&["x", "y"]);
        let p = r.parse("3*y - x^2 + 1/2").unwrap();
        assert_eq!(r.format(&p, &MonomialOrder::grevlex(2)), "-x^2 + 3*y + 1/2");
        let m = r.monic(&p, &MonomialOrder::grevlex(2));
        assert_eq!(m.coeff(&[2, 0]), Some(&Rational::ONE));
    }
}
