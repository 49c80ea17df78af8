//! Advisory classification for polynomials with floating-point coefficients,
//! e.g. irrational roots entered as `0.5*(5+sqrt(21))`.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix, Schur};
use num_traits::Zero;

use super::{decide_case, Case, Classification, ExclusionReason};
use crate::error::{Error, Result};
use crate::factorization::RootLocation;
use crate::mixhom::{detect_kappa, MixedHomogeneity};
use crate::poly::rat::{int, max_rat, Rat};
use crate::poly::{BivariatePoly, Exp, FloatPoly};

type Terms = BTreeMap<Exp, f64>;

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            *out.entry((i + k, j + l)).or_insert(0.0) += x * y;
        }
    }
    out
}

fn partial(a: &Terms, first: bool) -> Terms {
    a.iter()
        .filter_map(|(&(i, j), &c)| match first {
            true if i > 0 => Some(((i - 1, j), c * i as f64)),
            false if j > 0 => Some(((i, j - 1), c * j as f64)),
            _ => None,
        })
        .collect()
}

fn hessian(p: &Terms) -> Terms {
    let (p1, p2) = (partial(p, true), partial(p, false));
    let mut w = mul(&partial(&p1, true), &partial(&p2, false));
    let cross = partial(&p1, false);
    for (e, c) in mul(&cross, &cross) {
        *w.entry(e).or_insert(0.0) -= c;
    }
    w
}

/// Drops coefficients below `tol` relative to the largest one.
fn prune(p: &Terms, tol: f64) -> Terms {
    let big = p.values().fold(0.0f64, |a, c| a.max(c.abs()));
    p.iter()
        .filter(|(_, c)| c.abs() > tol * big)
        .map(|(e, c)| (*e, *c))
        .collect()
}

/// Proxy with unit coefficients, used only for weight detection.
fn support_proxy(p: &Terms) -> BivariatePoly {
    BivariatePoly::from_terms(p.keys().map(|&e| (e, int(1))))
}

struct Reduced {
    nu1: u32,
    nu2: u32,
    /// Clusters of roots of the reduced polynomial: (center, size).
    clusters: Vec<(Complex<f64>, u32)>,
}

fn reduce(p: &Terms, k: &MixedHomogeneity, tol: f64) -> Result<Reduced> {
    let nu1 = p.keys().map(|e| e.0).min().unwrap_or(0);
    let nu2 = p.keys().map(|e| e.1).min().unwrap_or(0);
    let (s, r) = (k.s as u64, k.r as u64);
    let n = (k.m as u64 - s * nu1 as u64 - r * nu2 as u64) / (r * s);
    let mut g = vec![0.0; n as usize + 1];
    for (&(_, j), c) in p {
        g[((j - nu2) as u64 / s) as usize] = *c;
    }
    Ok(Reduced {
        nu1,
        nu2,
        clusters: cluster_roots(&g, tol)?,
    })
}

/// Coefficients of g(u + c).
fn taylor_shift(g: &[f64], c: f64) -> Vec<f64> {
    let mut a = g.to_vec();
    let n = a.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            a[k] += c * a[k + 1];
        }
    }
    a
}

/// Companion-matrix eigenvalues of Σ g[t] u^t. Symmetric root sets can stall
/// the shifted QR iteration, so a failed attempt is retried on g(u + c).
fn polynomial_roots(g: &[f64]) -> Result<Vec<Complex<f64>>> {
    let n = g.len() - 1;
    for c in [0.0, std::f64::consts::FRAC_1_PI, -0.577_215_665] {
        let h = taylor_shift(g, c);
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -h[i] / h[n];
        }
        if let Some(schur) = Schur::try_new(m, f64::EPSILON, 2_000) {
            return Ok(schur.complex_eigenvalues().iter().map(|z| z + c).collect());
        }
    }
    Err(Error::IllConditioned(
        "companion eigenvalue iteration did not converge".into(),
    ))
}

/// Roots of Σ g[t] u^t grouped into clusters.
fn cluster_roots(g: &[f64], tol: f64) -> Result<Vec<(Complex<f64>, u32)>> {
    let n = g.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let roots = polynomial_roots(g)?;
    let radius = tol.sqrt();
    let close = |a: Complex<f64>, b: Complex<f64>, f: f64| {
        (a - b).norm() <= f * radius * a.norm().max(b.norm()).max(1.0)
    };
    // single-linkage clustering
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if close(roots[i], roots[j], 1.0) {
                let (a, b) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == a {
                        *l = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Complex<f64>>> = BTreeMap::new();
    for (i, l) in label.iter().enumerate() {
        groups.entry(*l).or_default().push(roots[i]);
    }
    let clusters: Vec<(Complex<f64>, u32)> = groups
        .values()
        .map(|v| {
            (
                v.iter().sum::<Complex<f64>>() / v.len() as f64,
                v.len() as u32,
            )
        })
        .collect();
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            if label[i] != label[j] && close(*a, *b, 10.0) {
                return Err(Error::IllConditioned(format!(
                    "roots {a} and {b} are neither separated nor merged at tol {tol:e}"
                )));
            }
        }
    }
    Ok(clusters)
}

fn is_real(z: &Complex<f64>, tol: f64) -> bool {
    z.im.abs() <= tol.sqrt() * z.norm().max(1.0)
}

/// Same decision logic as the exact classifier, with roots located by
/// floating-point clustering at relative radius √tol. Always advisory.
pub fn classify_numeric(p: &FloatPoly, tol: f64) -> Result<Classification> {
    let mut terms = Terms::new();
    for &(e, c) in &p.terms {
        *terms.entry(e).or_insert(0.0) += c;
    }
    let terms = prune(&terms, tol);
    let excluded = |r| {
        let mut c = Classification::excluded(r);
        c.advisory = true;
        Ok(c)
    };
    if terms.is_empty() {
        return excluded(ExclusionReason::ZeroPolynomial);
    }
    let k = match detect_kappa(&support_proxy(&terms)) {
        Ok(k) => k,
        Err(Error::Monomial) => return excluded(ExclusionReason::Monomial),
        Err(Error::Homogeneous) => return excluded(ExclusionReason::Homogeneous),
        Err(_) => return excluded(ExclusionReason::NotMixedHomogeneous),
    };
    if terms.contains_key(&(1, 0)) || terms.contains_key(&(0, 1)) {
        return excluded(ExclusionReason::GradientNonzero);
    }
    let phi: Terms = if k.swapped {
        terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect()
    } else {
        terms
    };
    let rp = reduce(&phi, &k, tol)?;
    let real_phi: Vec<(Complex<f64>, u32)> = rp
        .clusters
        .iter()
        .copied()
        .filter(|c| is_real(&c.0, tol))
        .collect();
    let n = real_phi.iter().map(|c| c.1).max().unwrap_or(0);

    let w = prune(&hessian(&phi), tol);
    if w.is_empty() {
        return Err(Error::Internal(
            "Hessian determinant vanishes numerically".into(),
        ));
    }
    let d_h = k.d_h();
    let (t, locations, h_w) = if k.m == k.r + k.s {
        (0, Vec::new(), Rat::zero())
    } else {
        let kw = MixedHomogeneity {
            m: 2 * (k.m - k.r - k.s),
            swapped: false,
            ..k
        };
        let rw = reduce(&w, &kw, tol)?;
        let mut cands = vec![(rw.nu1, RootLocation::Axis1), (rw.nu2, RootLocation::Axis2)];
        let mut n_w = 0;
        for (z, mult) in rw.clusters.iter().filter(|c| is_real(&c.0, tol)) {
            n_w = n_w.max(*mult);
            let coincident = real_phi
                .iter()
                .any(|(y, _)| (z - y).norm() <= 10.0 * tol.sqrt() * z.norm().max(1.0));
            let loc = if coincident {
                RootLocation::OffAxisCoincident
            } else {
                RootLocation::OffAxisNew
            };
            cands.push((*mult, loc));
        }
        let t = cands.iter().map(|c| c.0).max().unwrap_or(0);
        let mut locs: Vec<RootLocation> = if t == 0 {
            Vec::new()
        } else {
            cands.iter().filter(|c| c.0 == t).map(|c| c.1).collect()
        };
        locs.sort();
        locs.dedup();
        let m = rw.nu1.max(rw.nu2).max(n_w);
        let h_w = max_rat(&kw.d_h(), &int(m as i64)).clone();
        (t, locs, h_w)
    };
    let new_root = locations.iter().any(|l| l.is_new());
    let tie = new_root && locations.iter().any(|l| !l.is_new());
    let location = if locations.is_empty() {
        RootLocation::NoRealRoots
    } else if new_root {
        RootLocation::OffAxisNew
    } else {
        locations[0]
    };
    let (case, redundancy_flag) = decide_case(
        n,
        rp.nu1.max(rp.nu2),
        &d_h,
        t,
        location == RootLocation::OffAxisNew,
        tie,
    );
    let h_phi = max_rat(&d_h, &int(rp.nu1.max(rp.nu2).max(n) as i64)).clone();
    Ok(Classification {
        case,
        kappa: Some(k),
        n,
        t,
        nu1: rp.nu1,
        nu2: rp.nu2,
        h_phi,
        h_w,
        location,
        redundancy_flag,
        tie_flag: tie && matches!(case, Case::C | Case::D),
        advisory: true,
        diagnostics: vec![format!(
            "advisory: roots located numerically with cluster radius {:e}",
            tol.sqrt()
        )],
        d_h,
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::poly::parse::{parse_poly, parse_poly_float};
    use crate::poly::rat::rat;

    #[test]
    fn irrational_case_d_example() {
        let p = parse_poly_float("y1*(y2+y1^3)*(y2+0.5*(5+sqrt(21))*y1^3)").unwrap();
        let c = classify_numeric(&p, 1e-9).unwrap();
        assert_eq!((c.case, c.t, c.d_h.clone()), (Case::D, 2, rat(7, 4)));
        assert!(c.advisory);
    }

    #[test]
    fn agrees_with_exact() {
        for s in [
            "y2^4+y1^12",
            "(y2-y1^2)^3",
            "y1^4*(y2-y1^2)",
            "y1^5+y2*y1^3+9/40*y2^2*y1",
            "y2^4+y2^2*y1^6-y2*y1^9+y1^12",
            "y1^2*y2^2",
            "y1^2+y2^2",
        ] {
            let e = classify(&parse_poly(s).unwrap());
            let f = classify_numeric(&parse_poly_float(s).unwrap(), 1e-9).unwrap();
            assert_eq!(
                (e.case, e.n, e.t, e.location),
                (f.case, f.n, f.t, f.location),
                "{s}"
            );
            assert_eq!((e.d_h, e.h_w, e.h_phi), (f.d_h, f.h_w, f.h_phi), "{s}");
        }
    }

    #[test]
    fn split_double_root_clusters() {
        let base = parse_poly_float("y1*(y2-y1^2)^2").unwrap();
        let split = parse_poly_float("y1*(y2-y1^2)*(y2-1.0000000000001*y1^2)").unwrap();
        let a = classify_numeric(&base, 1e-9).unwrap();
        let b = classify_numeric(&split, 1e-9);
        let b = b.unwrap_or_else(|e| panic!("{e}"));
        assert_eq!((a.case, a.n, a.t), (b.case, b.n, b.t));
        assert_eq!(a.n, 2);
    }

    #[test]
    fn ambiguous_roots_rejected() {
        let p = parse_poly_float("y1*(y2-y1^2)*(y2-1.0001*y1^2)").unwrap();
        assert!(matches!(
            classify_numeric(&p, 1e-9),
            Err(Error::IllConditioned(_))
        ));
    }
}
