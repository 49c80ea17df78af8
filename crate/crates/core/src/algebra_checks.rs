//! Exact checks of the vanishing orders of w = det φ'' along the axes,
//! transversally to them and along the zero curves of φ, of w ≢ 0, and of
//! the dyadic rescaling identity.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{expand_in_weights, factorize};
use crate::mixhom::{detect_kappa, gradient_vanishes_at_origin};
use crate::poly::rat::{int, pow2, rat, Rat};
use crate::poly::{BivariatePoly, UnivariatePoly};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderReport {
    pub instance: String,
    pub claimed_order: u32,
    pub computed_order: u32,
    #[serde(with = "crate::poly::rat::serde_pq_opt")]
    pub claimed_leading: Option<Rat>,
    #[serde(with = "crate::poly::rat::serde_pq_opt")]
    pub computed_leading: Option<Rat>,
    pub cofactor_ok: bool,
}

impl OrderReport {
    pub fn pass(&self) -> bool {
        self.claimed_order == self.computed_order && self.cofactor_ok
    }
}

/// Lowest-degree term (exponent, coefficient) of a nonzero univariate polynomial.
fn lowest_term(p: &UnivariatePoly) -> Option<(u32, Rat)> {
    p.coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c.clone()))
}

fn min_y1_exponent(p: &BivariatePoly) -> u32 {
    p.min_exponents().0
}

/// Lowest power of t in w(y1, t + λ·y1^r), with its coefficient.
/// The cofactor check asks that coefficient to be c·y1^k with c ≠ 0.
pub fn curve_vanishing_order(
    p: &BivariatePoly,
    lambda: &Rat,
    r: u32,
) -> Result<(u32, bool, UnivariatePoly)> {
    if lambda.is_zero() || r < 2 {
        return Err(Error::Precondition("need λ ≠ 0 and r ≥ 2".into()));
    }
    let w = p.hessian_det();
    if w.is_zero() {
        return Err(Error::Internal(format!("w ≡ 0 for {p}")));
    }
    let shifted = w.compose_shift(lambda, r);
    let order = shifted.min_exponents().1;
    let cof = shifted.coeff_in_y2(order);
    let nonzero_terms = cof.coeffs().iter().filter(|c| !c.is_zero()).count();
    Ok((order, nonzero_terms == 1, cof))
}

/// For p = y1^n·Q with Q(0, y2) = c·y2^m + ..., checks that w is divisible
/// by exactly y1^{2n−2} with slice c²·n·m·(1−n−m)·y2^{2m−2} + ...
pub fn axis_vanishing_order(p: &BivariatePoly) -> Result<OrderReport> {
    let n = min_y1_exponent(p);
    let shape = |m: &str| Error::Shape(format!("{p}: {m}"));
    if n == 0 {
        return Err(shape("not divisible by y1"));
    }
    let q = p.exact_divide(&BivariatePoly::monomial(Rat::one(), n, 0))?;
    let (m, c) = lowest_term(&q.slice_y1_zero()).ok_or_else(|| shape("Q(0, y2) ≡ 0"))?;
    if m == 0 {
        return Err(shape("Q(0, y2) has a constant term"));
    }
    let w = p.hessian_det();
    let computed_order = min_y1_exponent(&w);
    let claimed_order = 2 * n - 2;
    let (nn, mm) = (int(n as i64), int(m as i64));
    let claimed_leading = &c * &c * &nn * &mm * (Rat::one() - &nn - &mm);
    let mut computed_leading = None;
    let mut cofactor_ok = false;
    if computed_order >= claimed_order {
        let quot = w.exact_divide(&BivariatePoly::monomial(Rat::one(), claimed_order, 0))?;
        if let Some((e, lc)) = lowest_term(&quot.slice_y1_zero()) {
            cofactor_ok = e == 2 * m - 2 && lc == claimed_leading;
            computed_leading = Some(lc);
        }
    }
    Ok(OrderReport {
        instance: p.to_string(),
        claimed_order,
        computed_order,
        claimed_leading: Some(claimed_leading),
        computed_leading,
        cofactor_ok,
    })
}

/// For p = b·y2^M + y1^A·Q with Q(0, y2) = c·y2^B + ..., checks that w is
/// divisible by exactly y1^{A−2} with slice b·c·A(A−1)M(M−1)·y2^{B+M−2} + ...
pub fn transversal_vanishing_order(p: &BivariatePoly) -> Result<OrderReport> {
    let shape = |m: &str| Error::Shape(format!("{p}: {m}"));
    let slice = p.slice_y1_zero();
    let nonzero: Vec<usize> = (0..slice.coeffs().len())
        .filter(|&i| !slice.coeff(i).is_zero())
        .collect();
    if nonzero.len() != 1 {
        return Err(shape("p(0, y2) is not a single power of y2"));
    }
    let big_m = nonzero[0] as u32;
    let b = slice.coeff(nonzero[0]);
    let rest = p.sub(&BivariatePoly::monomial(b.clone(), 0, big_m));
    if rest.is_zero() {
        return Err(shape("no y1-dependent part"));
    }
    let a = min_y1_exponent(&rest);
    if a.min(big_m) < 2 {
        return Err(shape("need min{A, M} ≥ 2"));
    }
    let q = rest.exact_divide(&BivariatePoly::monomial(Rat::one(), a, 0))?;
    let (big_b, c) = lowest_term(&q.slice_y1_zero()).ok_or_else(|| shape("Q(0, y2) ≡ 0"))?;
    let w = p.hessian_det();
    let computed_order = min_y1_exponent(&w);
    let claimed_order = a - 2;
    let (aa, mm) = (int(a as i64), int(big_m as i64));
    let claimed_leading = &b * &c * &aa * (&aa - int(1)) * &mm * (&mm - int(1));
    let mut computed_leading = None;
    let mut cofactor_ok = false;
    if computed_order >= claimed_order {
        let quot = w.exact_divide(&BivariatePoly::monomial(Rat::one(), claimed_order, 0))?;
        if let Some((e, lc)) = lowest_term(&quot.slice_y1_zero()) {
            cofactor_ok = e == big_b + big_m - 2 && lc == claimed_leading;
            computed_leading = Some(lc);
        }
    }
    Ok(OrderReport {
        instance: p.to_string(),
        claimed_order,
        computed_order,
        claimed_leading: Some(claimed_leading),
        computed_leading,
        cofactor_ok,
    })
}

/// The rescaled piece for the l-th rational root λ (1-based) of p, which must
/// have weights with s = 1 in the normalized frame:
/// C·y1^ν1·y2^{n_l}·(δ·y2 + λ·y1^r)^ν2·R(y1, δ·y2 + λ·y1^r), δ = 2^{jr−k},
/// where R collects the remaining factors.
#[derive(Clone, Debug, PartialEq)]
pub struct RescaledPiece {
    pub lambda: Rat,
    pub r: u32,
    pub multiplicity: u32,
    pub delta: Rat,
    /// φ(2^{−j}y1, 2^{−k}y2 + λ2^{−jr}y1^r) = 2^{−scale_exponent}·φ_jk.
    pub scale_exponent: u64,
    pub phi_jk: BivariatePoly,
    /// φ in the normalized frame.
    pub phi: BivariatePoly,
}

pub fn rescaled_piece(p: &BivariatePoly, l: usize, j: u32, k: u32) -> Result<RescaledPiece> {
    let kap = detect_kappa(p)?;
    if kap.s != 1 {
        return Err(Error::Precondition(format!(
            "zero curves are y2^{} = λ·y1^{}; pieces need s = 1",
            kap.s, kap.r
        )));
    }
    let phi = kap.normalize(p);
    let f = factorize(p, &kap)?;
    let roots: Vec<(Rat, u32)> = f
        .factors
        .iter()
        .flat_map(|fa| {
            fa.rational_roots
                .iter()
                .map(move |x| (x.clone(), fa.multiplicity))
        })
        .collect();
    if l == 0 || l > roots.len() {
        let irrational = f
            .real_factors()
            .any(|fa| fa.rational_roots.len() < fa.real_root_count);
        return Err(if irrational {
            Error::IrrationalRoot(l as u32)
        } else {
            Error::Precondition(format!("root index {l} out of range 1..={}", roots.len()))
        });
    }
    let (lambda, n_l) = roots[l - 1].clone();
    let r = kap.r;
    let curve = BivariatePoly::y2().sub(&BivariatePoly::monomial(lambda.clone(), r, 0));
    let head = BivariatePoly::monomial(f.c.clone(), f.nu1, f.nu2).mul(&curve.pow(n_l));
    let rest = phi.exact_divide(&head)?;
    let delta = pow2(j as i64 * r as i64 - k as i64);
    let moved = BivariatePoly::monomial(delta.clone(), 0, 1).add(&BivariatePoly::monomial(
        lambda.clone(),
        r,
        0,
    ));
    let phi_jk = BivariatePoly::monomial(f.c.clone(), f.nu1, n_l)
        .mul(&moved.pow(f.nu2))
        .mul(&rest.substitute(&BivariatePoly::y1(), &moved));
    let (j, k, r64) = (j as u64, k as u64, r as u64);
    let scale_exponent =
        j * f.nu1 as u64 + k * n_l as u64 + j * r64 * f.nu2 as u64 + j * r64 * (f.n - n_l) as u64;
    Ok(RescaledPiece {
        lambda,
        r,
        multiplicity: n_l,
        delta,
        scale_exponent,
        phi_jk,
        phi,
    })
}

/// Checks φ(2^{−j}y1, 2^{−k}y2 + λ·2^{−jr}·y1^r) = 2^{−e}·φ_jk exactly.
pub fn dyadic_rescaling_identity(p: &BivariatePoly, l: usize, j: u32, k: u32) -> Result<bool> {
    let piece = rescaled_piece(p, l, j, k)?;
    let a = BivariatePoly::monomial(pow2(-(j as i64)), 1, 0);
    let b = BivariatePoly::monomial(pow2(-(k as i64)), 0, 1).add(&BivariatePoly::monomial(
        &piece.lambda * pow2(-(j as i64 * piece.r as i64)),
        piece.r,
        0,
    ));
    let lhs = piece.phi.substitute(&a, &b);
    let rhs = piece.phi_jk.scale(&pow2(-(piece.scale_exponent as i64)));
    Ok(lhs == rhs)
}

/// Size limits for the random generators.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorBounds {
    pub max_r: u32,
    pub max_multiplicity: u32,
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            max_r: 6,
            max_multiplicity: 5,
            max_numerator: 10,
            max_denominator: 10,
        }
    }
}

fn random_rat(rng: &mut ChaCha8Rng, b: &GeneratorBounds) -> Rat {
    loop {
        let n = rng.random_range(-b.max_numerator..=b.max_numerator);
        if n != 0 {
            return rat(n, rng.random_range(1..=b.max_denominator));
        }
    }
}

fn random_weights(rng: &mut ChaCha8Rng, b: &GeneratorBounds) -> (u32, u32) {
    loop {
        let r = rng.random_range(2..=b.max_r);
        let s = rng.random_range(1..r);
        if s.gcd(&r) == 1 {
            return (s, r);
        }
    }
}

fn curve_factor(s: u32, r: u32, lambda: &Rat) -> BivariatePoly {
    BivariatePoly::monomial(Rat::one(), 0, s).sub(&BivariatePoly::monomial(lambda.clone(), r, 0))
}

/// A random polynomial C·y1^ν1·y2^ν2·Π(y2^s − λ_i·y1^r)^{n_i}·(an irreducible
/// quadratic factor, sometimes) with vanishing gradient at the origin, not a
/// monomial, and s < r coprime.
pub fn random_mixed_homogeneous(rng: &mut ChaCha8Rng, b: &GeneratorBounds) -> BivariatePoly {
    loop {
        let (s, r) = random_weights(rng, b);
        let mut p = BivariatePoly::monomial(
            random_rat(rng, b),
            rng.random_range(0..=b.max_multiplicity.min(3)),
            rng.random_range(0..=b.max_multiplicity.min(3)),
        );
        let mut total = 0;
        for _ in 0..rng.random_range(1..=2) {
            let m = rng.random_range(1..=b.max_multiplicity);
            if total + m > b.max_multiplicity {
                break;
            }
            total += m;
            p = p.mul(&curve_factor(s, r, &random_rat(rng, b)).pow(m));
        }
        if rng.random_bool(0.3) {
            // u² + c with c > 0 has no real roots
            let c = random_rat(rng, b);
            let g = UnivariatePoly::new(vec![&c * &c, Rat::zero(), Rat::one()]);
            p = p.mul(&expand_in_weights(&g, s, r));
        }
        if !p.is_monomial() && gradient_vanishes_at_origin(&p) && detect_kappa(&p).is_ok() {
            return p;
        }
    }
}

fn rng_for(seed: u64, suite: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(i);
    rng
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run_suite<F>(name: &str, seed: u64, tag: u64, count: usize, check: F) -> SuiteResult
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), String> + Sync,
{
    let failures: Vec<String> = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| check(&mut rng_for(seed, tag, i)).err())
        .collect();
    SuiteResult {
        name: name.into(),
        instances: count,
        failures,
    }
}

/// w ≢ 0 on random mixed homogeneous polynomials plus monomial sanity cases.
pub fn hessian_nonzero_suite(seed: u64, count: usize) -> Result<SuiteResult> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let b = GeneratorBounds::default();
    let mut res = run_suite("hessian nonzero", seed, 1, count, |rng| {
        let p = random_mixed_homogeneous(rng, &b);
        if p.hessian_det().is_zero() {
            Err(format!("w ≡ 0 for {p}"))
        } else {
            Ok(())
        }
    });
    for (a, c) in [(1, 1), (2, 3), (5, 1)] {
        let w = BivariatePoly::monomial(Rat::one(), a, c).hessian_det();
        let k = int(a as i64 * c as i64 * (1 - a as i64 - c as i64));
        if w != BivariatePoly::monomial(k, 2 * a - 2, 2 * c - 2) {
            res.failures
                .push(format!("monomial y1^{a}*y2^{c}: w = {w}"));
        }
        res.instances += 1;
    }
    Ok(res)
}

/// φ = (y2 − λ·y1^r)^N·Q with Q nonvanishing on the curve: order 2N − 3.
pub fn curve_order_suite(seed: u64, count: usize) -> SuiteResult {
    let b = GeneratorBounds::default();
    run_suite("curve order 2N-3", seed, 2, count, |rng| {
        let r = rng.random_range(2..=b.max_r);
        let n = rng.random_range(2..=b.max_multiplicity);
        let lambda = random_rat(rng, &b);
        let mut mu = random_rat(rng, &b);
        while mu == lambda {
            mu = random_rat(rng, &b);
        }
        let q = BivariatePoly::monomial(
            random_rat(rng, &b),
            rng.random_range(0..=3),
            rng.random_range(0..=2),
        )
        .mul(&curve_factor(1, r, &mu).pow(rng.random_range(0..=2)));
        let p = curve_factor(1, r, &lambda).pow(n).mul(&q);
        match curve_vanishing_order(&p, &lambda, r) {
            Ok((o, true, _)) if o == 2 * n - 3 => Ok(()),
            Ok((o, ok, cof)) => Err(format!("{p}: order {o} (cofactor {cof}, monomial {ok})")),
            Err(e) => Err(format!("{p}: {e}")),
        }
    })
}

/// The homogeneous control r = 1: the order is at least 2N − 2.
pub fn homogeneous_control_suite(seed: u64, count: usize) -> SuiteResult {
    let b = GeneratorBounds::default();
    run_suite("homogeneous control", seed, 3, count, |rng| {
        let n = rng.random_range(2..=b.max_multiplicity);
        let lambda = random_rat(rng, &b);
        let mut mu = random_rat(rng, &b);
        while mu == lambda {
            mu = random_rat(rng, &b);
        }
        let q =
            BivariatePoly::monomial(Rat::one(), rng.random_range(1..=2), rng.random_range(0..=2))
                .mul(&curve_factor(1, 1, &mu).pow(rng.random_range(0..=2)));
        let p = curve_factor(1, 1, &lambda).pow(n).mul(&q);
        let w = p.hessian_det();
        if w.is_zero() {
            return Err(format!("w ≡ 0 for {p}"));
        }
        let o = w.compose_shift(&lambda, 1).min_exponents().1;
        if o + 2 >= 2 * n {
            Ok(())
        } else {
            Err(format!("{p}: order {o} < 2N-2"))
        }
    })
}

/// y1^n·Q on random weight lines through (0, m).
pub fn axis_order_suite(seed: u64, count: usize) -> SuiteResult {
    run_suite("axis order 2n-2", seed, 4, count, |rng| {
        let n = rng.random_range(1..=5u32);
        let m = rng.random_range(1..=5u32);
        let w1 = rng.random_range(1..=6u32);
        let w2 = rng.random_range(1..=6u32);
        let mut q = BivariatePoly::monomial(int(rng.random_range(1..=9)), 0, m);
        for j in 0..m {
            let num = w2 * (m - j);
            if num % w1 == 0 && rng.random_bool(0.7) {
                q = q.add(&BivariatePoly::monomial(
                    int(rng.random_range(-9..=9)),
                    num / w1,
                    j,
                ));
            }
        }
        let p = BivariatePoly::monomial(Rat::one(), n, 0).mul(&q);
        match axis_vanishing_order(&p) {
            Ok(rep) if rep.pass() => Ok(()),
            Ok(rep) => Err(format!("{rep:?}")),
            Err(e) => Err(format!("{p}: {e}")),
        }
    })
}

/// b·y2^M + y1^A·Q on random weight lines through (0, M) and (A, B).
pub fn transversal_order_suite(seed: u64, count: usize) -> SuiteResult {
    run_suite("transversal order A-2", seed, 5, count, |rng| {
        let big_m = rng.random_range(2..=6u32);
        let big_b = rng.random_range(0..big_m);
        let a = rng.random_range(2..=12u32);
        // weights with w1·A = w2·(M − B)
        let g = a.gcd(&(big_m - big_b));
        let (w1, w2) = ((big_m - big_b) / g, a / g);
        let mut p = BivariatePoly::monomial(int(rng.random_range(1..=9)), 0, big_m).add(
            &BivariatePoly::monomial(int(rng.random_range(1..=9)), a, big_b),
        );
        for j in 0..big_b {
            let num = w2 * (big_m - j);
            if num % w1 == 0 && rng.random_bool(0.7) {
                p = p.add(&BivariatePoly::monomial(
                    int(rng.random_range(-9..=9)),
                    num / w1,
                    j,
                ));
            }
        }
        match transversal_vanishing_order(&p) {
            Ok(rep) if rep.pass() => Ok(()),
            Ok(rep) => Err(format!("{rep:?}")),
            Err(e) => Err(format!("{p}: {e}")),
        }
    })
}

/// Random φ with a rational root on a curve y2 = λ·y1^r and random (j, k) in [0, 6]².
pub fn dyadic_identity_suite(seed: u64, count: usize) -> SuiteResult {
    let b = GeneratorBounds {
        max_r: 4,
        max_multiplicity: 3,
        ..GeneratorBounds::default()
    };
    run_suite("dyadic rescaling identity", seed, 6, count, |rng| {
        let r = rng.random_range(2..=b.max_r);
        let mut p = BivariatePoly::monomial(
            random_rat(rng, &b),
            rng.random_range(0..=2),
            rng.random_range(0..=2),
        );
        for _ in 0..rng.random_range(1..=2) {
            p = p.mul(&curve_factor(1, r, &random_rat(rng, &b)).pow(rng.random_range(1..=3)));
        }
        if p.is_monomial() || detect_kappa(&p).is_err() {
            return Ok(());
        }
        let (j, k) = (rng.random_range(0..=6), rng.random_range(0..=6));
        match dyadic_rescaling_identity(&p, 1, j, k) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{p}: identity fails at j={j}, k={k}")),
            Err(e) => Err(format!("{p}: {e}")),
        }
    })
}

/// All lemma suites with `count` instances each (20 for the identity).
pub fn verify_lemmas(seed: u64, count: usize) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        curve_order_suite(seed, count),
        homogeneous_control_suite(seed, count),
        axis_order_suite(seed, count),
        transversal_order_suite(seed, count),
        hessian_nonzero_suite(seed, count)?,
        dyadic_identity_suite(seed, count.min(20)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn pp(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn curve_orders() {
        let (o, ok, _) = curve_vanishing_order(&pp("(y2-y1^2)^2"), &int(1), 2).unwrap();
        assert_eq!((o, ok), (1, true));
        let (o, ok, _) = curve_vanishing_order(&pp("(y2-y1^2)^3"), &int(1), 2).unwrap();
        assert_eq!((o, ok), (3, true));
        let (o, ok, cof) = curve_vanishing_order(&pp("(y2-2*y1^3)^2"), &int(2), 3).unwrap();
        assert_eq!((o, ok), (1, true));
        assert_eq!(cof, UnivariatePoly::from_i64(&[0, -48]));
        assert!(curve_vanishing_order(&pp("(y2-y1^2)^2"), &int(0), 2).is_err());
    }

    #[test]
    fn axis_orders() {
        let r = axis_vanishing_order(&pp("y1^2*y2^2")).unwrap();
        assert_eq!(
            (r.computed_order, r.computed_leading.clone()),
            (2, Some(int(-12)))
        );
        assert!(r.pass());
        let r = axis_vanishing_order(&pp("y1^4*(y2-y1^2)")).unwrap();
        assert_eq!(r.computed_order, 6);
        assert!(r.pass());
        let r = axis_vanishing_order(&pp("y1*y2")).unwrap();
        assert_eq!(
            (r.computed_order, r.computed_leading.clone()),
            (0, Some(int(-1)))
        );
        assert!(axis_vanishing_order(&pp("y2^3+y1^2")).is_err());
    }

    #[test]
    fn transversal_orders() {
        let r = transversal_vanishing_order(&pp("y2^4+y1^12")).unwrap();
        assert_eq!(
            (r.computed_order, r.computed_leading.clone()),
            (10, Some(int(1584)))
        );
        assert!(r.pass());
        let r = transversal_vanishing_order(&pp("y2^2+y1^2")).unwrap();
        assert_eq!(
            (r.computed_order, r.computed_leading.clone()),
            (0, Some(int(4)))
        );
        let r = transversal_vanishing_order(&pp("y2^3+y1^5*y2")).unwrap();
        assert_eq!(
            (r.computed_order, r.computed_leading.clone()),
            (3, Some(int(120)))
        );
        assert!(r.pass());
    }

    #[test]
    fn dyadic_identity_examples() {
        assert!(dyadic_rescaling_identity(&pp("(y2-y1^2)^3"), 1, 1, 5).unwrap());
        let p = pp("y1*(y2-y1^2)^2*(y2+3*y1^2)");
        for l in 1..=2 {
            assert!(dyadic_rescaling_identity(&p, l, 2, 3).unwrap());
        }
        let piece = rescaled_piece(&pp("(y2-y1^2)^3"), 1, 0, 0).unwrap();
        assert_eq!(piece.phi_jk, pp("(y2-y1^2)^3").compose_shift(&int(1), 2));
        let piece = rescaled_piece(&pp("(y2-y1^2)^3"), 1, 1, 6).unwrap();
        assert_eq!(piece.delta, rat(1, 16));
        assert_eq!(piece.phi_jk, pp("y2^3"));
        assert!(matches!(
            rescaled_piece(&pp("y2^2+y1^4"), 1, 0, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn suites_pass() {
        for s in verify_lemmas(7, 30).unwrap() {
            assert!(s.pass(), "{}: {:?}", s.name, s.failures);
        }
    }
}
