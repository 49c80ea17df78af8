//! Sparse bivariate polynomials in `y1`, `y2` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{to_f64, Rat};
use super::univariate::UnivariatePoly;
use crate::error::Error;

/// Exponent pair (power of y1, power of y2).
pub type Exp = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Exp, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Y1,
    Y2,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivariatePoly { terms }
    }

    pub fn y1() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y2() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exp, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().copied().collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(Exp, Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Largest power of y1 (resp. y2) dividing the polynomial.
    pub fn min_exponents(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|e| match v {
                Var::Y1 => e.0,
                Var::Y2 => e.1,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                p.add_term((i + k, j + l), a * b);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by y1^a·y2^b.
    pub fn shift_exponents(&self, a: u32, b: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::Y1 if i > 0 => Some(((i - 1, j), c * Rat::from_integer(i.into()))),
            Var::Y2 if j > 0 => Some(((i, j - 1), c * Rat::from_integer(j.into()))),
            _ => None,
        }))
    }

    /// ∂₁²p·∂₂²p − (∂₁∂₂p)².
    pub fn hessian_det(&self) -> Self {
        let p1 = self.partial(Var::Y1);
        let p2 = self.partial(Var::Y2);
        let p11 = p1.partial(Var::Y1);
        let p22 = p2.partial(Var::Y2);
        let p12 = p1.partial(Var::Y2);
        p11.mul(&p22).sub(&p12.mul(&p12))
    }

    /// Leading term in lex order with y2 as the main variable.
    fn lead_y2(&self) -> Option<(Exp, Rat)> {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (*j, *i))
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Multivariate division by a single divisor (lex, y2 > y1). The remainder
    /// is zero exactly when `q` divides `self`.
    pub fn div_rem(&self, q: &Self) -> (Self, Self) {
        assert!(!q.is_zero(), "division by zero polynomial");
        let ((qi, qj), qc) = q.lead_y2().unwrap();
        let mut rest = self.clone();
        let mut quot = Self::zero();
        let mut rem = Self::zero();
        while let Some(((i, j), c)) = rest.lead_y2() {
            if i >= qi && j >= qj {
                let t = Self::monomial(&c / &qc, i - qi, j - qj);
                rest = rest.sub(&t.mul(q));
                quot = quot.add(&t);
            } else {
                rest.terms.remove(&(i, j));
                rem.add_term((i, j), c);
            }
        }
        (quot, rem)
    }

    pub fn exact_divide(&self, q: &Self) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (quot, rem) = self.div_rem(q);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Substitutes y1 → a, y2 → b.
    pub fn substitute(&self, a: &Self, b: &Self) -> Self {
        let max_i = self.degree_in(Var::Y1) as usize;
        let max_j = self.degree_in(Var::Y2) as usize;
        let mut pa = vec![Self::one()];
        for k in 0..max_i {
            let nxt = pa[k].mul(a);
            pa.push(nxt);
        }
        let mut pb = vec![Self::one()];
        for k in 0..max_j {
            let nxt = pb[k].mul(b);
            pb.push(nxt);
        }
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            let t = pa[*i as usize].mul(&pb[*j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// p(y1, y2 + λ·y1^r).
    pub fn compose_shift(&self, lambda: &Rat, r: u32) -> Self {
        let b = Self::y2().add(&Self::monomial(lambda.clone(), r, 0));
        self.substitute(&Self::y1(), &b)
    }

    /// p(a·y1, b·y2).
    pub fn scale_vars(&self, a: &Rat, b: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            (
                (i, j),
                c * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize),
            )
        }))
    }

    /// Exchanges y1 and y2.
    pub fn swap_vars(&self) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of y2^j as a univariate polynomial in y1.
    pub fn coeff_in_y2(&self, j: u32) -> UnivariatePoly {
        let d = self.degree_in(Var::Y1) as usize;
        let mut v = vec![Rat::zero(); d + 1];
        for ((a, b), c) in &self.terms {
            if *b == j {
                v[*a as usize] = c.clone();
            }
        }
        UnivariatePoly::new(v)
    }

    /// Terms with y1-exponent zero, as a univariate polynomial in y2.
    pub fn slice_y1_zero(&self) -> UnivariatePoly {
        let d = self.degree_in(Var::Y2) as usize;
        let mut v = vec![Rat::zero(); d + 1];
        for ((a, b), c) in &self.terms {
            if *a == 0 {
                v[*b as usize] = c.clone();
            }
        }
        UnivariatePoly::new(v)
    }

    pub fn eval(&self, y1: &Rat, y2: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.terms {
            acc += c
                * num_traits::pow(y1.clone(), *i as usize)
                * num_traits::pow(y2.clone(), *j as usize);
        }
        acc
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, to_f64(c))).collect(),
        }
    }

    /// Terms in display order: total degree descending, then y1-power descending.
    pub fn graded_terms(&self) -> Vec<(Exp, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|a, b| {
            let (ea, eb) = (a.0, b.0);
            (eb.0 + eb.1, eb.0).cmp(&(ea.0 + ea.1, ea.0))
        });
        v
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.graded_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                parts.push(a.to_string());
            }
            for (v, e) in [("y1", i), ("y2", j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl serde::Serialize for BivariatePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Floating-point evaluation copy of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    pub terms: Vec<(Exp, f64)>,
}

impl FloatPoly {
    pub fn eval(&self, y1: f64, y2: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| c * y1.powi(*i as i32) * y2.powi(*j as i32))
            .sum()
    }

    /// Coefficients of the polynomial in y2 for a fixed y1, lowest first.
    pub fn in_y2(&self, y1: f64) -> Vec<f64> {
        let d = self.terms.iter().map(|((_, j), _)| *j).max().unwrap_or(0) as usize;
        let mut v = vec![0.0; d + 1];
        for ((i, j), c) in &self.terms {
            v[*j as usize] += c * y1.powi(*i as i32);
        }
        v
    }

    pub fn partial(&self, v: Var) -> FloatPoly {
        FloatPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|&((i, j), c)| match v {
                    Var::Y1 if i > 0 => Some(((i - 1, j), c * i as f64)),
                    Var::Y2 if j > 0 => Some(((i, j - 1), c * j as f64)),
                    _ => None,
                })
                .collect(),
        }
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::poly::rat::{int, rat};
    use proptest::prelude::*;

    fn pp(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn partials() {
        assert_eq!(pp("y1^12").partial(Var::Y1), pp("12*y1^11"));
        assert_eq!(pp("y2^4").partial(Var::Y2), pp("4*y2^3"));
        assert!(pp("7").partial(Var::Y1).is_zero());
    }

    #[test]
    fn hessians() {
        assert_eq!(pp("(y2-y1^2)^2").hessian_det(), pp("-8*(y2-y1^2)"));
        assert_eq!(pp("(y2-2*y1^3)^2").hessian_det(), pp("-48*y1*(y2-2*y1^3)"));
        assert_eq!(pp("y2^4+y1^12").hessian_det(), pp("1584*y1^10*y2^2"));
        assert_eq!(pp("y1*y2").hessian_det(), pp("-1"));
        assert!(pp("3*y1 - 2*y2 + 5").hessian_det().is_zero());
    }

    #[test]
    fn division() {
        assert_eq!(
            pp("-8*y2+8*y1^2").exact_divide(&pp("y2-y1^2")).unwrap(),
            pp("-8")
        );
        assert_eq!(
            pp("y1^10*y2^2").exact_divide(&pp("y1^10")).unwrap(),
            pp("y2^2")
        );
        assert!(matches!(
            pp("y2^2").exact_divide(&pp("y1")),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            pp("y2").exact_divide(&pp("0")),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn shifts() {
        assert_eq!(pp("(y2-y1^2)^2").compose_shift(&int(1), 2), pp("y2^2"));
        assert_eq!(pp("y2").compose_shift(&int(3), 2), pp("y2+3*y1^2"));
        assert_eq!(
            pp("y2^2").compose_shift(&int(1), 3),
            pp("y2^2+2*y2*y1^3+y1^6")
        );
    }

    #[test]
    fn display_order() {
        let p = pp("9/40*y2^2*y1 + y1^5 + y2*y1^3");
        assert_eq!(p.to_string(), "y1^5 + y1^3*y2 + 9/40*y1*y2^2");
        assert_eq!(pp("-8*y2+8*y1^2").to_string(), "8*y1^2 - 8*y2");
        assert_eq!(pp("-1").to_string(), "-1");
        assert_eq!(pp(&p.to_string()), p);
    }

    #[test]
    fn float_eval() {
        let p = pp("y2^4+y1^12 - 1/2*y1*y2").to_float();
        assert!((p.eval(0.5, -1.0) - (1.0 + 0.5f64.powi(12) + 0.25)).abs() < 1e-15);
        assert_eq!(p.in_y2(1.0), vec![1.0, -0.5, 0.0, 0.0, 1.0]);
    }

    pub(crate) fn small_bivariate() -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5, 1i64..=4), 1..5).prop_map(|ts| {
            BivariatePoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn divide_product(p in small_bivariate(), q in small_bivariate()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!(p.mul(&q).exact_divide(&q).unwrap(), p);
        }

        #[test]
        fn shift_inverse(p in small_bivariate(), n in -5i64..=5, d in 1i64..=4, r in 1u32..4) {
            let l = rat(n, d);
            prop_assert_eq!(p.compose_shift(&l, r).compose_shift(&-l, r), p);
        }

        #[test]
        fn affine_hessian_zero(a in -5i64..5, b in -5i64..5, c in -5i64..5) {
            let p = BivariatePoly::from_terms([((1, 0), int(a)), ((0, 1), int(b)), ((0, 0), int(c))]);
            prop_assert!(p.hessian_det().is_zero());
        }

        #[test]
        fn display_reparses(p in small_bivariate()) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
