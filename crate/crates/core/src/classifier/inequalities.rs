use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Case, Classification};
use crate::error::{Error, Result};
use crate::poly::rat::{int, serde_pq, Rat};
use crate::region::{build_region, HalfPlane, RegionPolygon};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Endpoint {
    #[serde(with = "serde_pq")]
    pub u: Rat,
    #[serde(with = "serde_pq")]
    pub v: Rat,
    #[serde(with = "serde_pq")]
    pub theta_max: Rat,
    pub label: String,
}

fn r(n: u32) -> Rat {
    int(n as i64)
}

fn check_admitted(c: &Classification) -> Result<()> {
    if let Case::Excluded(reason) = c.case {
        return Err(Error::Excluded(reason.describe().into()));
    }
    Ok(())
}

fn hessian_conditions(t: u32, new_root: bool) -> Vec<HalfPlane> {
    let t = r(t);
    let one = Rat::one();
    if new_root {
        vec![
            HalfPlane::above(
                Rat::new(5.into(), 3.into()),
                -(&t * int(2) + int(12)) / (&t * int(3) + int(12)),
                true,
                "c12",
            ),
            HalfPlane::above(
                Rat::new(3.into(), 5.into()),
                -int(4) / (&t + int(4)),
                true,
                "c13",
            ),
        ]
    } else {
        let two_t5 = &t * int(2) + int(5);
        vec![
            HalfPlane::above(&two_t5 / (&t + int(3)), -one.clone(), true, "c9"),
            HalfPlane::above((&t + int(3)) / &two_t5, -one / &two_t5, true, "c10"),
        ]
    }
}

/// Every condition describing the region of an admitted classification.
pub fn theorem_inequalities(c: &Classification) -> Result<Vec<HalfPlane>> {
    check_admitted(c)?;
    let one = Rat::one();
    let mut hs = vec![
        HalfPlane::below(one.clone(), int(0), false, "c1"),
        HalfPlane::above(int(3), int(-2), false, "c2"),
        HalfPlane::above(Rat::new(1.into(), 3.into()), int(0), false, "c3"),
        HalfPlane::above(one.clone(), -(&c.d_h + &one).recip(), true, "cdh"),
    ];
    match c.case {
        Case::A => {
            let n = r(c.n);
            hs.push(HalfPlane::above(one.clone(), -n.recip(), true, "c4"));
            hs.push(HalfPlane::above(
                (&n + int(2)) / (&n + int(1)),
                -int(2) / (&n + int(1)),
                true,
                "c5",
            ));
            hs.push(HalfPlane::above(
                (&n + int(1)) / (&n + int(2)),
                -(&n + int(2)).recip(),
                true,
                "c6",
            ));
        }
        Case::B => {
            hs.push(HalfPlane::above(
                one.clone(),
                -(r(c.nu_max()) + &one).recip(),
                true,
                "c7",
            ));
        }
        Case::C => hs.extend(hessian_conditions(c.t, false)),
        Case::D => {
            if c.tie_flag {
                hs.extend(hessian_conditions(c.t, false));
            }
            hs.extend(hessian_conditions(c.t, true));
        }
        Case::Excluded(_) => unreachable!(),
    }
    Ok(hs)
}

/// The region polygon with the redundancy rule recorded on its annotations.
pub fn region_for(c: &Classification) -> Result<RegionPolygon> {
    let mut rp = build_region(&theorem_inequalities(c)?)?;
    if c.redundancy_flag {
        for l in ["c9", "c10", "c12", "c13"] {
            rp.add_note(l, "redundant: T <= 2 d_h - 2");
        }
    }
    Ok(rp)
}

/// Endpoint ((H+3)/(H+4), (H+1)/(H+4)) on the line v = 3u − 2, θ = 4/(H+4).
pub fn gressman_endpoint(h: &Rat) -> Endpoint {
    let d = h + int(4);
    Endpoint {
        u: (h + int(3)) / &d,
        v: (h + int(1)) / &d,
        theta_max: int(4) / &d,
        label: "c2 (height of w)".into(),
    }
}

/// Limit of the interpolated estimates of the dyadic pieces as θ approaches
/// its summability threshold.
pub fn summability_endpoint(c: &Classification) -> Result<Endpoint> {
    check_admitted(c)?;
    let d = &c.d_h;
    let one = Rat::one();
    let d1 = d + &one;
    let trapezium = || {
        let mut e = gressman_endpoint(&(d * int(2) - int(2)));
        e.label = "cdh & c2".into();
        e
    };
    let t = r(c.t);
    let case_c = || Endpoint {
        u: (&t + int(3)) * d / ((&t + int(2)) * &d1),
        v: (&t * (d - &one) + d * int(3) - int(2)) / ((&t + int(2)) * &d1),
        theta_max: (&t * int(3) - d * int(2) + int(6)) / ((&t + int(2)) * &d1),
        label: "cdh & c9".into(),
    };
    let case_d = || {
        let den = (&t + int(4)) * &d1 * int(2);
        Endpoint {
            u: (&t * (d * int(2) - &one) + d * int(12)) / &den,
            v: (&t * (d * int(2) - int(3)) + d * int(12) - int(8)) / &den,
            theta_max: (&t - d + int(3)) * int(4) / ((&t + int(4)) * &d1),
            label: "cdh & c12".into(),
        }
    };
    Ok(match c.case {
        Case::A => {
            let n = r(c.n);
            if n >= d1 {
                Endpoint {
                    u: &one - n.recip(),
                    v: &one - int(2) / &n,
                    theta_max: int(3) / &n,
                    label: "c4 & c5".into(),
                }
            } else {
                Endpoint {
                    u: (d * int(2) + &one - &n) / &d1,
                    v: (d * int(2) - &n) / &d1,
                    theta_max: ((&n - d) * int(2) + &one) / &d1,
                    label: "cdh & c5".into(),
                }
            }
        }
        Case::B => {
            let mut e = gressman_endpoint(&(r(c.nu_max()) * int(2) - int(2)));
            e.label = "c7 & c2".into();
            e
        }
        _ if c.redundancy_flag => trapezium(),
        Case::C => case_c(),
        Case::D if c.tie_flag => {
            let (a, b) = (case_c(), case_d());
            if a.u <= b.u {
                a
            } else {
                b
            }
        }
        Case::D => case_d(),
        Case::Excluded(_) => unreachable!(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationStatus {
    Pass,
    Fail,
    /// No relation is asserted for this configuration.
    NotClaimed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightRelation {
    pub relation: String,
    #[serde(with = "serde_pq")]
    pub h_phi: Rat,
    #[serde(with = "serde_pq")]
    pub h_w: Rat,
    #[serde(with = "crate::poly::rat::serde_pq_opt")]
    pub expected: Option<Rat>,
    pub status: RelationStatus,
}

/// Compares the height of w with the value predicted from φ.
pub fn height_relation_check(c: &Classification) -> Result<HeightRelation> {
    check_admitted(c)?;
    let k = c.kappa.expect("admitted classification has weights");
    let d2 = &c.d_h * int(2) - int(2);
    let a = c.min_positive_y1_exponent();
    let exception = c.nu1 == 0 && a.is_some_and(|a| r(a) > &c.d_h * int(2));
    let (relation, expected): (String, Option<Rat>) = match c.case {
        Case::A => ("h(w) = 2N - 3".into(), Some(r(c.n) * int(2) - int(3))),
        Case::B => (
            "h(w) = 2 max(nu1, nu2) - 2".into(),
            Some(r(c.nu_max()) * int(2) - int(2)),
        ),
        _ if exception => {
            let a = a.unwrap();
            (format!("h(w) = A - 2 with A = {a}"), Some(r(a) - int(2)))
        }
        _ if k.s >= 2 => ("h(w) = 2 d_h - 2".into(), Some(d2)),
        _ if c.h_w == d2 => ("h(w) = 2 d_h - 2".into(), Some(d2)),
        _ => ("none asserted for s = 1".into(), None),
    };
    let status = match &expected {
        None => RelationStatus::NotClaimed,
        Some(e) if *e == c.h_w => RelationStatus::Pass,
        Some(_) => RelationStatus::Fail,
    };
    Ok(HeightRelation {
        relation,
        h_phi: c.h_phi.clone(),
        h_w: c.h_w.clone(),
        expected,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, decide_case};
    use crate::factorization::RootLocation;
    use crate::poly::parse_poly;
    use crate::poly::rat::rat;
    use crate::region::{contains, Membership};

    fn cl(s: &str) -> Classification {
        classify(&parse_poly(s).unwrap())
    }

    fn has(hs: &[HalfPlane], h: HalfPlane) -> bool {
        hs.iter().any(|x| x.same_set(&h) && x.label == h.label)
    }

    /// Classification with only the fields the formulas read.
    fn synthetic(case: Case, n: u32, t: u32, d_h: Rat, nu: u32) -> Classification {
        let (_, red) = decide_case(0, 0, &d_h, t, case == Case::D, false);
        Classification {
            case,
            n,
            t,
            d_h,
            nu1: nu,
            redundancy_flag: matches!(case, Case::C | Case::D) && red,
            location: RootLocation::NoRealRoots,
            ..Classification::excluded(crate::classifier::ExclusionReason::Monomial)
        }
    }

    #[test]
    fn condition_examples() {
        let hs = theorem_inequalities(&cl("y2^4+y1^12")).unwrap();
        assert!(has(&hs, HalfPlane::above(rat(25, 13), int(-1), true, "c9")));
        assert!(has(
            &hs,
            HalfPlane::above(rat(13, 25), rat(-1, 25), true, "c10")
        ));
        let hs = theorem_inequalities(&cl("(y2-y1^2)^3")).unwrap();
        assert!(has(&hs, HalfPlane::above(int(1), rat(-1, 3), true, "c4")));
        assert!(has(
            &hs,
            HalfPlane::above(rat(5, 4), rat(-1, 2), true, "c5")
        ));
        assert!(has(
            &hs,
            HalfPlane::above(rat(4, 5), rat(-1, 5), true, "c6")
        ));
        let hs = theorem_inequalities(&cl("y1^4*(y2-y1^2)")).unwrap();
        assert!(has(&hs, HalfPlane::above(int(1), rat(-1, 5), true, "c7")));
        assert!(theorem_inequalities(&cl("y1^2*y2^2")).is_err());
    }

    #[test]
    fn endpoint_examples() {
        let e = summability_endpoint(&cl("(y2-y1^2)^3")).unwrap();
        assert_eq!((e.u, e.v, e.theta_max), (rat(2, 3), rat(1, 3), int(1)));
        let e = summability_endpoint(&cl("y2^4+y1^12")).unwrap();
        assert_eq!((e.u, e.v), (rat(13, 16), rat(9, 16)));
        let e = summability_endpoint(&cl("y1^4*(y2-y1^2)")).unwrap();
        assert_eq!((e.u, e.v), (rat(9, 10), rat(7, 10)));
        let e = summability_endpoint(&synthetic(Case::C, 0, 4, int(3), 0)).unwrap();
        assert_eq!((e.u, e.v), (rat(7, 8), rat(5, 8)));
    }

    #[test]
    fn gressman_examples() {
        let e = gressman_endpoint(&int(3));
        assert_eq!((e.u, e.v), (rat(6, 7), rat(4, 7)));
        let e = gressman_endpoint(&int(0));
        assert_eq!((e.u, e.v), (rat(3, 4), rat(1, 4)));
        for h in [rat(7, 3), int(10), int(0)] {
            let e = gressman_endpoint(&h);
            assert_eq!(e.u * int(3) - int(2), e.v);
        }
    }

    #[test]
    fn case_d_endpoint_is_a_vertex() {
        // grid of (T, d_h) in the non-redundant regime
        for (t, d) in [(2, rat(7, 4)), (3, int(2)), (5, rat(5, 2)), (9, int(3))] {
            let c = synthetic(Case::D, 0, t, d.clone(), 0);
            assert!(!c.redundancy_flag);
            let e = summability_endpoint(&c).unwrap();
            let rp = build_region(&theorem_inequalities(&c).unwrap()).unwrap();
            assert_eq!(contains(&rp, &e.u, &e.v), Membership::BoundaryExcluded);
            assert!(rp.vertices.iter().any(|v| v.u == e.u && v.v == e.v));
            // the endpoint interpolates (1,1) with a point between (5/8,3/8) and (3/4,1/4)
            let pu = Rat::one() - (Rat::one() - &e.u) / &e.theta_max;
            let pv = Rat::one() - (Rat::one() - &e.v) / &e.theta_max;
            assert_eq!(&pu + &pv, Rat::one());
            assert!(pu >= rat(5, 8) && pu <= rat(3, 4));
        }
    }

    #[test]
    fn height_relations() {
        let h = height_relation_check(&cl("(y2-y1^2)^3")).unwrap();
        assert_eq!((h.h_w.clone(), h.status), (int(3), RelationStatus::Pass));
        let h = height_relation_check(&cl("y1^4*(y2-y1^2)")).unwrap();
        assert_eq!((h.h_w.clone(), h.status), (int(6), RelationStatus::Pass));
        let h = height_relation_check(&cl("y2^4+y1^12")).unwrap();
        assert_eq!((h.h_w.clone(), h.status), (int(10), RelationStatus::Pass));
        assert!(h.relation.contains("A - 2"));
    }
}
