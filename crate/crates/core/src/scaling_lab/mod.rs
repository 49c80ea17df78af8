//! Numerical checks of the necessary conditions: the extremal indicator
//! families f_δ, the δ-scaling of ‖A f_δ‖_q on the designed x-sets, and the
//! norm-scaling law under diagonal changes of variables.

mod averaging;

pub use averaging::DiscreteAveraging;

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::factorize;
use crate::mixhom::{detect_kappa, MixedHomogeneity};
use crate::numerics::fit_line;
use crate::poly::rat::{int, serde_pq, to_f64, Rat};
use crate::poly::BivariatePoly;
use crate::region::HalfPlane;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Large cubes.
    C1,
    /// Small cubes tested near the surface.
    C2,
    /// Boxes adapted to a power of y2 dividing φ.
    NU,
    /// Boxes adapted to the weights.
    DH,
    /// Thin slabs around a zero curve of φ.
    N1,
    /// Boxes adapted to a zero curve of φ.
    N2,
    /// Boxes adapted to the smallest positive y1-exponent.
    ML1,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "c1" => Family::C1,
            "c2" => Family::C2,
            "nu" => Family::NU,
            "dh" => Family::DH,
            "n1" => Family::N1,
            "n2" => Family::N2,
            "ml1" => Family::ML1,
            _ => return Err(Error::Precondition(format!("unknown family '{s}'"))),
        })
    }
}

/// Structural data a family needs, read off φ in the normalized frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyParams {
    #[serde(with = "crate::poly::rat::serde_pq_opt")]
    pub lambda: Option<Rat>,
    pub r: Option<u32>,
    /// Multiplicity of the zero curve y2 = λ·y1^r.
    pub n: Option<u32>,
    /// Smallest positive y1-exponent of the support.
    pub a: Option<u32>,
    pub nu2: Option<u32>,
    #[serde(skip)]
    pub kappa: Option<(Rat, Rat)>,
}

impl FamilyParams {
    fn empty() -> Self {
        FamilyParams {
            lambda: None,
            r: None,
            n: None,
            a: None,
            nu2: None,
            kappa: None,
        }
    }

    pub fn derive(phi: &BivariatePoly, family: Family) -> Result<Self> {
        let mut fp = FamilyParams::empty();
        let pre = |m: String| Err(Error::Precondition(m));
        match family {
            Family::C1 | Family::C2 => {}
            Family::NU => {
                let nu2 = phi.min_exponents().1;
                if nu2 == 0 {
                    return pre(format!("{phi} is not divisible by y2"));
                }
                fp.nu2 = Some(nu2);
            }
            Family::DH => fp.kappa = Some(normalized_weights(phi)?.kappa()),
            Family::N1 | Family::N2 => {
                let k = normalized_weights(phi)?;
                if k.s != 1 {
                    return pre(format!(
                        "zero curves of {phi} are not graphs over y1 (s = {})",
                        k.s
                    ));
                }
                let f = factorize(phi, &k)?;
                let best = f
                    .factors
                    .iter()
                    .filter(|x| !x.rational_roots.is_empty())
                    .max_by_key(|x| x.multiplicity)
                    .ok_or_else(|| {
                        Error::Precondition(format!("{phi} has no rational zero curve"))
                    })?;
                fp.lambda = Some(best.rational_roots[0].clone());
                fp.r = Some(k.r);
                fp.n = Some(best.multiplicity);
            }
            Family::ML1 => {
                let a = phi.support().iter().map(|e| e.0).filter(|&a| a > 0).min();
                fp.a =
                    Some(a.ok_or_else(|| {
                        Error::Precondition(format!("{phi} has no y1-dependence"))
                    })?);
            }
        }
        Ok(fp)
    }
}

fn normalized_weights(phi: &BivariatePoly) -> Result<MixedHomogeneity> {
    let k = detect_kappa(phi)?;
    if k.swapped {
        return Err(Error::Precondition("pass φ in the normalized frame".into()));
    }
    Ok(k)
}

/// Exponents in ‖A f_δ‖_q ≳ δ^{a/q + b} and ‖f_δ‖_p ∼ δ^{c/p}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    #[serde(with = "serde_pq")]
    pub a: Rat,
    #[serde(with = "serde_pq")]
    pub b: Rat,
    #[serde(with = "serde_pq")]
    pub c: Rat,
    /// Predicted slope a/q + b.
    #[serde(with = "serde_pq")]
    pub slope: Rat,
    /// a/q + b − c/p; negative values violate the condition.
    #[serde(with = "serde_pq")]
    pub margin: Rat,
    /// The implied condition a·v + b ≥ c·u.
    pub condition: HalfPlane,
}

pub fn predicted_exponent(
    family: Family,
    params: &FamilyParams,
    p: &Rat,
    q: &Rat,
) -> Result<Prediction> {
    let one = Rat::one();
    let need = |x: Option<u32>, what: &str| {
        x.map(|v| int(v as i64))
            .ok_or_else(|| Error::Precondition(format!("family {family:?} needs {what}")))
    };
    let (a, b, c) = match family {
        Family::C1 => (int(-3), int(0), int(-3)),
        Family::C2 => (int(1), int(2), int(3)),
        Family::NU => {
            let nu = need(params.nu2, "ν2")?;
            let t = &one + nu.recip();
            (t.clone(), nu.recip(), t)
        }
        Family::DH => {
            let (k1, k2) = params
                .kappa
                .clone()
                .ok_or_else(|| Error::Precondition("family DH needs weights".into()))?;
            let t = &k1 + &k2;
            (&one + &t, t.clone(), &one + &t)
        }
        Family::N1 => {
            let n = need(params.n, "N")?;
            (n.clone(), one.clone(), n)
        }
        Family::N2 => {
            let n = need(params.n, "N")?;
            (&n + &one, int(2), &n + int(2))
        }
        Family::ML1 => {
            let a = need(params.a, "A")?;
            let t = (&a + &one) / &a;
            (t.clone(), t, (&a * int(2) + &one) / &a)
        }
    };
    let (u, v) = (p.recip(), q.recip());
    let slope = &a * &v + &b;
    let margin = &slope - &c * &u;
    let condition = HalfPlane::new(
        -c.clone(),
        a.clone(),
        -b.clone(),
        false,
        format!("{family:?}"),
    );
    Ok(Prediction {
        a,
        b,
        c,
        slope,
        margin,
        condition,
    })
}

/// The indicator box of f_δ and the x-set on which ‖A f_δ‖_q is measured.
/// The x-set is {x1 ∈ I1, x2 = s2(x1) + t2, x3 = s3(x1, x2) + t3} with t_i ∈ I_i;
/// the shears have unit Jacobian.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub half_sides: [f64; 3],
    pub x_ranges: [(f64, f64); 3],
    pub shear2: Option<(f64, i32)>,
    pub shear3: bool,
}

impl FamilySpec {
    pub fn box_volume(&self) -> f64 {
        8.0 * self.half_sides.iter().product::<f64>()
    }

    pub fn x_volume(&self) -> f64 {
        self.x_ranges.iter().map(|(a, b)| b - a).product()
    }
}

fn abs_sum(p: &BivariatePoly, base1: f64, base2: f64) -> f64 {
    p.terms()
        .map(|(&(i, j), c)| to_f64(&c.abs()) * base1.powi(i as i32) * base2.powi(j as i32))
        .sum()
}

/// Scale factor ε applied to δ so that the witness y-sets stay where ψ = 1.
fn prefactor(family: Family, params: &FamilyParams, delta_max: f64) -> f64 {
    let fit = |bound: f64| (bound / delta_max).min(1.0);
    match family {
        Family::DH => {
            let (k1, k2) = params.kappa.clone().unwrap();
            let e = |k: &Rat| (1.0f64 / 6.0).powf(1.0 / to_f64(k));
            fit(e(&k1).min(e(&k2)))
        }
        Family::ML1 => fit((1.0f64 / 6.0).powi(params.a.unwrap() as i32)),
        _ => 1.0,
    }
}

pub fn family_spec(
    phi: &BivariatePoly,
    family: Family,
    params: &FamilyParams,
    delta: f64,
) -> Result<FamilySpec> {
    let d = delta;
    let spec = match family {
        Family::C1 => {
            let n = 1.0 / d;
            FamilySpec {
                half_sides: [2.0 * n; 3],
                x_ranges: [(-n, n); 3],
                shear2: None,
                shear3: false,
            }
        }
        Family::C2 => FamilySpec {
            half_sides: [d; 3],
            x_ranges: [(-0.25, 0.25), (-0.25, 0.25), (-d / 2.0, d / 2.0)],
            shear2: None,
            shear3: true,
        },
        Family::NU => {
            let nu = params.nu2.unwrap();
            let rest = phi.exact_divide(&BivariatePoly::monomial(Rat::one(), 0, nu))?;
            let k = 1.0 + abs_sum(&rest, 1.0, 1.0);
            let w = d.powf(1.0 / nu as f64);
            FamilySpec {
                half_sides: [2.0, 2.0 * w, k * d],
                x_ranges: [(-1.0, 1.0), (-w, w), (-d, d)],
                shear2: None,
                shear3: false,
            }
        }
        Family::DH => {
            let (k1, k2) = params.kappa.clone().unwrap();
            let m = abs_sum(phi, 1.0, 1.0);
            let (w1, w2) = (d.powf(to_f64(&k1)), d.powf(to_f64(&k2)));
            FamilySpec {
                half_sides: [2.0 * w1, 2.0 * w2, (m + 1.0) * d],
                x_ranges: [(-w1, w1), (-w2, w2), (-d, d)],
                shear2: None,
                shear3: false,
            }
        }
        Family::N1 | Family::N2 => {
            let lambda = params.lambda.clone().unwrap();
            let (r, n) = (params.r.unwrap(), params.n.unwrap());
            let curve = BivariatePoly::y2().sub(&BivariatePoly::monomial(lambda.clone(), r, 0));
            let rest = phi.exact_divide(&curve.pow(n))?;
            let m = abs_sum(&rest, 2.0, 2.0);
            let dn = d.powi(n as i32);
            let l = to_f64(&lambda);
            if family == Family::N1 {
                FamilySpec {
                    half_sides: [2.0, 2.0, (m + 1.0) * dn],
                    x_ranges: [(-1.0, 1.0), (-1.0, 1.0), (-dn, dn)],
                    shear2: None,
                    shear3: false,
                }
            } else {
                FamilySpec {
                    half_sides: [d, 2.0 * (1.0 + l.abs() * r as f64) * d, (m + 1.0) * dn],
                    x_ranges: [(-0.25, 0.25), (-d, d), (-dn, dn)],
                    shear2: Some((l, r as i32)),
                    shear3: false,
                }
            }
        }
        Family::ML1 => {
            let a = params.a.unwrap();
            let mut k = 2.0;
            for (&(i, j), c) in phi.terms() {
                let c = to_f64(&c.abs());
                k += if i == 0 {
                    c * j as f64
                } else {
                    c * (1.0 + 3f64.powi(i as i32))
                };
            }
            let w = d.powf(1.0 / a as f64);
            FamilySpec {
                half_sides: [2.0 * w, d, k * d],
                x_ranges: [(-w, w), (0.0, 0.25), (-d, d)],
                shear2: None,
                shear3: true,
            }
        }
    };
    Ok(spec)
}

/// (∫_X |A f|^q)^{1/q} by the midpoint rule with `n` points per axis.
pub fn lq_norm_on_xset(avg: &DiscreteAveraging, spec: &FamilySpec, q: f64, n: usize) -> f64 {
    let mid = |(a, b): (f64, f64), i: usize| a + (i as f64 + 0.5) * (b - a) / n as f64;
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x1 = mid(spec.x_ranges[0], i);
            let mut acc = 0.0;
            for j in 0..n {
                let mut x2 = mid(spec.x_ranges[1], j);
                if let Some((l, r)) = spec.shear2 {
                    x2 += l * x1.powi(r);
                }
                let base3 = if spec.shear3 { avg.phi(x1, x2) } else { 0.0 };
                for k in 0..n {
                    let x3 = base3 + mid(spec.x_ranges[2], k);
                    acc += avg.apply(spec.half_sides, [x1, x2, x3]).powf(q);
                }
            }
            acc
        })
        .collect();
    let sum: f64 = rows.iter().sum();
    (sum * spec.x_volume() / (n * n * n) as f64).powf(1.0 / q)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measurement {
    pub delta: f64,
    pub norm_q: f64,
    pub norm_p: f64,
}

impl Measurement {
    pub fn ratio(&self) -> f64 {
        self.norm_q / self.norm_p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingExperiment {
    pub family: Family,
    pub params: FamilyParams,
    #[serde(with = "serde_pq")]
    pub p: Rat,
    #[serde(with = "serde_pq")]
    pub q: Rat,
    /// ε with δ replaced by ε·δ in the construction.
    pub prefactor: f64,
    pub panels: usize,
    pub x_points: usize,
    pub measured: Vec<Measurement>,
    pub fitted_slope: f64,
    pub fit_residual: f64,
    pub prediction: Prediction,
    /// Set when the measured slope is well above the prediction.
    pub flag: Option<String>,
}

impl ScalingExperiment {
    pub fn slope_error(&self) -> f64 {
        self.fitted_slope - to_f64(&self.prediction.slope)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("delta,norm_q,norm_p,ratio,log2_ratio\n");
        for m in &self.measured {
            let _ = writeln!(
                s,
                "{:e},{:e},{:e},{:e},{:.9}",
                m.delta,
                m.norm_q,
                m.norm_p,
                m.ratio(),
                m.ratio().log2()
            );
        }
        s
    }
}

/// Default schedule 2^{−3}, …, 2^{−7}.
pub fn default_schedule() -> Vec<f64> {
    (3..=7).map(|k| 2f64.powi(-k)).collect()
}

pub const X_POINTS: usize = 32;
pub const DEFAULT_PANELS: usize = 16;
const RESIDUAL_LIMIT: f64 = 0.05;

/// Runs one family on φ (normalized frame) over a δ schedule.
pub fn run_scaling(
    phi: &BivariatePoly,
    family: Family,
    params: &FamilyParams,
    pq: (&Rat, &Rat),
    schedule: &[f64],
    panels: usize,
) -> Result<ScalingExperiment> {
    if schedule.len() < 4 || schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition(
            "schedule needs at least 4 strictly decreasing values".into(),
        ));
    }
    let (p, q) = pq;
    let prediction = predicted_exponent(family, params, p, q)?;
    let eps = prefactor(family, params, schedule[0]);
    let avg = DiscreteAveraging::new(phi, panels);
    let (pf, qf) = (to_f64(p), to_f64(q));
    let mut measured = Vec::new();
    for &delta in schedule {
        let spec = family_spec(phi, family, params, eps * delta)?;
        measured.push(Measurement {
            delta,
            norm_q: lq_norm_on_xset(&avg, &spec, qf, X_POINTS),
            norm_p: spec.box_volume().powf(1.0 / pf),
        });
    }
    if measured
        .iter()
        .any(|m| m.norm_q.is_nan() || m.norm_q <= 0.0)
    {
        return Err(Error::UnresolvedScaling {
            residual: f64::INFINITY,
            hint: "A f vanished on the x-set; increase the number of panels".into(),
        });
    }
    let xs: Vec<f64> = measured.iter().map(|m| m.delta.log2()).collect();
    let ys: Vec<f64> = measured.iter().map(|m| m.norm_q.log2()).collect();
    let fit = fit_line(&xs, &ys);
    if fit.residual > RESIDUAL_LIMIT {
        return Err(Error::UnresolvedScaling {
            residual: fit.residual,
            hint: format!("rerun with --grid {}", 2 * panels),
        });
    }
    let predicted = to_f64(&prediction.slope);
    let flag = (fit.slope > predicted + 0.1).then(|| {
        format!(
            "measured slope {:.3} exceeds the lower-bound prediction {predicted:.3}; check the family",
            fit.slope
        )
    });
    Ok(ScalingExperiment {
        family,
        params: params.clone(),
        p: p.clone(),
        q: q.clone(),
        prefactor: eps,
        panels,
        x_points: X_POINTS,
        measured,
        fitted_slope: fit.slope,
        fit_residual: fit.residual,
        prediction,
        flag,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineCase {
    pub half_sides: [f64; 3],
    pub ratio_scaled: f64,
    pub ratio_plain: f64,
    pub factor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineScalingReport {
    #[serde(with = "serde_pq")]
    pub det: Rat,
    pub expected_factor: f64,
    pub cases: Vec<AffineCase>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares ‖S_D f‖_q/‖f‖_p with |det D|^{1/q−1/p}·‖A g‖_q/‖g‖_p, g = f∘D,
/// where S_D f(x) = A(f∘D)(D⁻¹x) is averaging over the surface D·Φ.
/// The two sides use different x-grids.
pub fn check_affine_scaling(
    phi: &BivariatePoly,
    diag: [Rat; 3],
    inputs: &[[f64; 3]],
    p: &Rat,
    q: &Rat,
) -> Result<AffineScalingReport> {
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::Precondition("D must be invertible".into()));
    }
    let det = diag.iter().fold(Rat::one(), |a, d| a * d);
    let expo = to_f64(&(q.recip() - p.recip()));
    let expected_factor = to_f64(&det.abs()).powf(expo);
    let d: Vec<f64> = diag.iter().map(to_f64).collect();
    let avg = DiscreteAveraging::new(phi, DEFAULT_PANELS);
    let (pf, qf) = (to_f64(p), to_f64(q));
    let reach = abs_sum(phi, 1.0, 1.0);
    let mut cases = Vec::new();
    for &half in inputs {
        let g = [
            half[0] / d[0].abs(),
            half[1] / d[1].abs(),
            half[2] / d[2].abs(),
        ];
        let support = [g[0] + 1.0, g[1] + 1.0, g[2] + reach];
        // ‖A g‖_q over the box containing supp A g
        let plain = FamilySpec {
            half_sides: g,
            x_ranges: [
                (-support[0], support[0]),
                (-support[1], support[1]),
                (-support[2], support[2]),
            ],
            shear2: None,
            shear3: false,
        };
        let ratio_plain = lq_norm_on_xset(&avg, &plain, qf, 28) / plain.box_volume().powf(1.0 / pf);
        // ‖S_D f‖_q over D·(that box), sampled directly in x
        let n = X_POINTS;
        let ext: Vec<f64> = (0..3).map(|i| support[i] * d[i].abs()).collect();
        let sum: f64 = (0..n)
            .into_par_iter()
            .map(|i| {
                let mid = |e: f64, k: usize| -e + (k as f64 + 0.5) * 2.0 * e / n as f64;
                let mut acc = 0.0;
                for j in 0..n {
                    for k in 0..n {
                        let x = [mid(ext[0], i), mid(ext[1], j), mid(ext[2], k)];
                        let y = [x[0] / d[0], x[1] / d[1], x[2] / d[2]];
                        acc += avg.apply(g, y).powf(qf);
                    }
                }
                acc
            })
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        let vol: f64 = ext.iter().map(|e| 2.0 * e).product();
        let norm_scaled = (sum * vol / (n * n * n) as f64).powf(1.0 / qf);
        let f_norm = (8.0 * half.iter().product::<f64>()).powf(1.0 / pf);
        let ratio_scaled = norm_scaled / f_norm;
        cases.push(AffineCase {
            half_sides: half,
            ratio_scaled,
            ratio_plain,
            factor: ratio_scaled / ratio_plain,
        });
    }
    let tolerance = 0.05;
    let pass = cases
        .iter()
        .all(|c| ((c.factor - expected_factor) / expected_factor).abs() <= tolerance);
    Ok(AffineScalingReport {
        det,
        expected_factor,
        cases,
        tolerance,
        pass,
    })
}

/// Bring a polynomial into the frame the families expect.
pub fn normalized_frame(p: &BivariatePoly) -> BivariatePoly {
    match detect_kappa(p) {
        Ok(k) => k.normalize(p),
        Err(_) => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::poly::rat::rat;

    fn pp(s: &str) -> BivariatePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn predictions() {
        let (p, q) = (rat(4, 3), int(4));
        let e = predicted_exponent(Family::C2, &FamilyParams::empty(), &p, &q).unwrap();
        assert_eq!((e.slope.clone(), e.margin.clone()), (rat(9, 4), int(0)));
        let fp = FamilyParams::derive(&pp("y2^4+y1^12"), Family::DH).unwrap();
        let e = predicted_exponent(Family::DH, &fp, &p, &q).unwrap();
        assert!(e
            .condition
            .same_set(&HalfPlane::above(int(1), rat(-1, 4), false, "")));
        let fp = FamilyParams::derive(&pp("y2^4+y1^12"), Family::ML1).unwrap();
        assert_eq!(fp.a, Some(12));
        let e = predicted_exponent(Family::ML1, &fp, &p, &q).unwrap();
        assert!(e
            .condition
            .same_set(&HalfPlane::above(rat(25, 13), int(-1), false, "")));
        let fp = FamilyParams::derive(&pp("(y2-y1^2)^2"), Family::N1).unwrap();
        assert_eq!(
            (fp.n, fp.r, fp.lambda.clone()),
            (Some(2), Some(2), Some(int(1)))
        );
        let e = predicted_exponent(Family::N1, &fp, &rat(3, 2), &int(3)).unwrap();
        assert_eq!(e.slope, rat(5, 3));
        let e = predicted_exponent(Family::C1, &fp, &rat(3, 2), &int(3)).unwrap();
        assert!(e
            .condition
            .same_set(&HalfPlane::below(int(1), int(0), false, "")));
        assert!(FamilyParams::derive(&pp("(y2-y1^2)^2"), Family::NU).is_err());
    }

    #[test]
    fn c2_slope_on_parabola() {
        let phi = pp("(y2-y1^2)^2");
        let fp = FamilyParams::derive(&phi, Family::C2).unwrap();
        let e = run_scaling(
            &phi,
            Family::C2,
            &fp,
            (&rat(4, 3), &int(4)),
            &default_schedule(),
            8,
        )
        .unwrap();
        assert!(e.slope_error().abs() < 0.1, "{e:?}");
    }

    #[test]
    fn short_schedule_rejected() {
        let phi = pp("(y2-y1^2)^2");
        let fp = FamilyParams::derive(&phi, Family::C2).unwrap();
        let r = run_scaling(
            &phi,
            Family::C2,
            &fp,
            (&rat(4, 3), &int(4)),
            &[0.1, 0.05],
            8,
        );
        assert!(r.is_err());
    }

    #[test]
    fn affine_identity_and_reflection() {
        let phi = pp("(y2-y1^2)^2");
        let one = Rat::one();
        let r = check_affine_scaling(
            &phi,
            [one.clone(), one.clone(), one.clone()],
            &[[0.25; 3]],
            &rat(3, 2),
            &int(3),
        )
        .unwrap();
        assert_eq!(r.expected_factor, 1.0);
        let r = check_affine_scaling(
            &phi,
            [-one.clone(), one.clone(), one],
            &[[0.25; 3]],
            &rat(3, 2),
            &int(3),
        )
        .unwrap();
        assert_eq!(r.expected_factor, 1.0);
        assert!(r.pass, "{r:?}");
    }
}
