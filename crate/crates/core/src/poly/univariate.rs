//! Dense univariate polynomials over the rationals, with GCD, squarefree
//! decomposition and Sturm-based real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{simplest_between, to_f64, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rat>,
}

/// Interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rat),
}

impl UnivariatePoly {
    /// Coefficients lowest degree first; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c·u^d.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut v = vec![Rat::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// u − a
    pub fn linear_root(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Division with remainder. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let dl = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(
            ints.into_iter()
                .map(|c| Rat::from_integer(c / &g))
                .collect(),
        )
    }

    /// Monic GCD. Remainders are kept primitive to stop coefficient growth.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = o.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Yun's algorithm. Returns monic squarefree, pairwise coprime factors with
    /// multiplicities; constants yield an empty list.
    pub fn squarefree_decomposition(&self) -> Vec<(UnivariatePoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).expect("gcd divides");
            let nc = d.exact_div(&a).expect("gcd divides");
            if a.deg() > 0 {
                out.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Canonical Sturm chain g, g', −rem(...), each scaled by a positive constant.
    pub fn sturm_chain(&self) -> Vec<UnivariatePoly> {
        let mut chain = vec![self.clone()];
        if self.deg() == 0 {
            return chain;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            let next = positive_primitive(&r.scale(&-Rat::one()));
            prev = cur;
            cur = next;
        }
        chain
    }

    /// Sign of the polynomial at a bound (limits at ±∞).
    pub fn sign_at(&self, b: &Bound) -> i8 {
        if self.is_zero() {
            return 0;
        }
        match b {
            Bound::At(x) => sign(&self.eval(x)),
            Bound::PosInf => sign(&self.lead()),
            Bound::NegInf => {
                let l = sign(&self.lead());
                if self.deg().is_multiple_of(2) {
                    l
                } else {
                    -l
                }
            }
        }
    }

    /// Number of distinct real roots in the open interval (lo, hi).
    /// The polynomial should be squarefree.
    pub fn sturm_real_root_count(&self, lo: &Bound, hi: &Bound) -> usize {
        if self.is_zero() {
            return 0;
        }
        let chain = self.sturm_chain();
        let vl = variations(&chain, lo);
        let vh = variations(&chain, hi);
        let mut n = vl as i64 - vh as i64;
        if let Bound::At(b) = hi {
            if self.eval(b).is_zero() {
                n -= 1;
            }
        }
        n.max(0) as usize
    }

    /// Strict upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> Rat {
        let l = self.lead().abs();
        let m = self.coeffs[..self.deg()]
            .iter()
            .map(|c| c.abs() / &l)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// Half-open intervals (lo, hi], each containing exactly one real root.
    pub fn isolate_real_roots(&self) -> Vec<(Rat, Rat)> {
        let g = self.squarefree_part();
        if g.deg() == 0 {
            return Vec::new();
        }
        let chain = g.sturm_chain();
        let b = g.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = variations(&chain, &Bound::At(lo.clone())) as i64
                - variations(&chain, &Bound::At(hi.clone())) as i64;
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rat::from_integer(2.into());
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrinks an isolating interval (lo, hi] to width ≤ `width`.
    pub fn refine(&self, lo: &Rat, hi: &Rat, width: &Rat) -> (Rat, Rat) {
        let ints: Vec<BigInt> = self
            .squarefree_part()
            .primitive()
            .coeffs
            .iter()
            .map(|c| c.numer().clone())
            .collect();
        // sign of g(x) via the homogenized integer form Σ a_i p^i q^{d−i}, q > 0
        let sign = |x: &Rat| {
            let (p, q) = (x.numer(), x.denom());
            let mut acc = ints.last().unwrap().clone();
            let mut qp = BigInt::one();
            for a in ints.iter().rev().skip(1) {
                qp *= q;
                acc = acc * p + a * &qp;
            }
            acc.signum()
        };
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let two = Rat::from_integer(2.into());
        let mut s_hi = sign(&hi);
        if s_hi.is_zero() {
            return (hi.clone(), hi);
        }
        // the root is simple, so g changes sign exactly once in (lo, hi]
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            let s_mid = sign(&mid);
            if s_mid.is_zero() {
                return (mid.clone(), mid);
            }
            if s_mid == s_hi {
                hi = mid;
                s_hi = s_mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Real roots to within 1e-12, ascending.
    pub fn real_root_approximations(&self) -> Vec<f64> {
        let w = Rat::new(1.into(), BigInt::from(10u64).pow(12));
        self.isolate_real_roots()
            .into_iter()
            .map(|(lo, hi)| {
                let (a, b) = self.refine(&lo, &hi, &w);
                to_f64(&((a + b) / Rat::from_integer(2.into())))
            })
            .collect()
    }

    /// Exact rational real roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let g = self.squarefree_part().primitive();
        if g.deg() == 0 {
            return Vec::new();
        }
        let a = g.lead().abs();
        let width = (a.clone() * a * Rat::from_integer(2.into())).recip();
        let mut out = Vec::new();
        for (lo, hi) in g.isolate_real_roots() {
            if g.eval(&hi).is_zero() {
                out.push(hi);
                continue;
            }
            let (lo, hi) = g.refine(&lo, &hi, &width);
            let x = simplest_between(&lo, &hi);
            if g.eval(&x).is_zero() {
                out.push(x);
            }
        }
        out
    }

    pub fn squarefree_part(&self) -> UnivariatePoly {
        if self.deg() == 0 {
            return self.monic();
        }
        self.exact_div(&self.gcd(&self.derivative()))
            .expect("gcd divides")
            .monic()
    }
}

fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn positive_primitive(p: &UnivariatePoly) -> UnivariatePoly {
    if p.is_zero() {
        return p.clone();
    }
    let q = p.primitive();
    if sign(&q.lead()) != sign(&p.lead()) {
        q.scale(&-Rat::one())
    } else {
        q
    }
}

fn variations(chain: &[UnivariatePoly], at: &Bound) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in chain {
        let s = p.sign_at(at);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let one = a.is_one();
            match (i, one) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::{int, rat};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UnivariatePoly {
        UnivariatePoly::from_i64(cs)
    }

    fn inf() -> (Bound, Bound) {
        (Bound::NegInf, Bound::PosInf)
    }

    #[test]
    fn squarefree_examples() {
        // (u-1)^2 (u+2)
        let g = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(
            g.squarefree_decomposition(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        let g = p(&[1, 0, 0, 0, 1]);
        assert_eq!(g.squarefree_decomposition(), vec![(g.clone(), 1)]);
        assert_eq!(
            p(&[0, 0, 0, 1]).squarefree_decomposition(),
            vec![(p(&[0, 1]), 3)]
        );
        assert!(p(&[5]).squarefree_decomposition().is_empty());
    }

    #[test]
    fn sturm_examples() {
        let (a, b) = inf();
        assert_eq!(p(&[-2, 0, 1]).sturm_real_root_count(&a, &b), 2);
        assert_eq!(p(&[1, 0, 1]).sturm_real_root_count(&a, &b), 0);
        let g = UnivariatePoly::new(vec![rat(-1, 2), int(1)]);
        assert_eq!(
            g.sturm_real_root_count(&Bound::At(int(0)), &Bound::At(int(1))),
            1
        );
        // open interval excludes endpoints
        let g = p(&[-1, 1]);
        assert_eq!(
            g.sturm_real_root_count(&Bound::At(int(0)), &Bound::At(int(1))),
            0
        );
        assert_eq!(
            g.sturm_real_root_count(&Bound::At(int(1)), &Bound::At(int(2))),
            0
        );
        assert_eq!(
            g.sturm_real_root_count(&Bound::At(int(0)), &Bound::At(int(2))),
            1
        );
    }

    #[test]
    fn roots() {
        let g = p(&[-2, 0, 1]);
        let r = g.real_root_approximations();
        assert_eq!(r.len(), 2);
        assert!((r[1] - 2f64.sqrt()).abs() < 1e-11);
        assert!(g.rational_roots().is_empty());
        // (3u-2)(u+5)(u^2+1)
        let g = p(&[-2, 3]).mul(&p(&[5, 1])).mul(&p(&[1, 0, 1]));
        assert_eq!(g.rational_roots(), vec![int(-5), rat(2, 3)]);
        let g = UnivariatePoly::new(vec![int(1), int(1), rat(9, 40)]);
        assert!(g.rational_roots().is_empty());
        assert_eq!(g.real_root_approximations().len(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "2*u^3 - u + 1");
        assert_eq!(UnivariatePoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = UnivariatePoly> {
        prop::collection::vec(-6i64..=6, 1..6).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn reconstruction(a in small_poly(), b in small_poly(), c in small_poly()) {
            let g = a.mul(&b.pow(2)).mul(&c.pow(3));
            prop_assume!(!g.is_zero());
            let dec = g.squarefree_decomposition();
            let mut prod = UnivariatePoly::constant(Rat::one());
            for (f, m) in &dec {
                prop_assert!(f.is_squarefree());
                prod = prod.mul(&f.pow(*m));
            }
            prop_assert_eq!(prod, g.monic());
            for i in 0..dec.len() {
                for j in i + 1..dec.len() {
                    prop_assert_eq!(dec[i].0.gcd(&dec[j].0).deg(), 0);
                }
            }
        }

        #[test]
        fn sturm_matches_cauchy_box(a in small_poly()) {
            prop_assume!(!a.is_zero());
            let g = a.squarefree_part();
            let b = g.cauchy_bound();
            let full = g.sturm_real_root_count(&Bound::NegInf, &Bound::PosInf);
            let boxed = g.sturm_real_root_count(&Bound::At(-b.clone()), &Bound::At(b));
            prop_assert_eq!(full, boxed);
            prop_assert_eq!(full, g.isolate_real_roots().len());
        }

        #[test]
        fn division_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }
    }
}
