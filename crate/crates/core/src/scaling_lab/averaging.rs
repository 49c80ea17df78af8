use crate::numerics::{
    composite_nodes, eta, eta_integral, gauss_legendre, horner, level_crossings, monotone_breaks,
};
use crate::poly::{BivariatePoly, Var};

/// A f(x) = ∫ f(x − (y1, y2, φ(y))) ψ(y) dy with ψ(y) = η(y1)·η(y2), for f the
/// indicator of a box centred at the origin.
///
/// The y1 integral uses composite Gauss–Legendre panels; for each y1 node the
/// y2-set where |x3 − φ| is small is found exactly from the level crossings of
/// φ(y1, ·), and η is integrated over it in closed form.
#[derive(Clone, Debug)]
pub struct DiscreteAveraging {
    /// `rows[j][i]` is the coefficient of y1^i·y2^j.
    rows: Vec<Vec<f64>>,
    rule: Vec<(f64, f64)>,
    pub panels: usize,
}

impl DiscreteAveraging {
    pub fn new(phi: &BivariatePoly, panels: usize) -> Self {
        let dj = phi.degree_in(Var::Y2) as usize;
        let di = phi.degree_in(Var::Y1) as usize;
        let mut rows = vec![vec![0.0; di + 1]; dj + 1];
        for ((i, j), c) in phi.to_float().terms {
            rows[j as usize][i as usize] += c;
        }
        DiscreteAveraging {
            rows,
            rule: gauss_legendre(4),
            panels: panels.max(1),
        }
    }

    pub fn phi(&self, y1: f64, y2: f64) -> f64 {
        let c: Vec<f64> = self.rows.iter().map(|r| horner(r, y1)).collect();
        horner(&c, y2)
    }

    /// ∫ψ with f ≡ 1, i.e. the sum of all quadrature weights.
    pub fn cutoff_mass(&self) -> f64 {
        self.apply([4.0, 4.0, f64::INFINITY], [0.0, 0.0, 0.0])
    }

    /// Average of the indicator of ∏[−h_i, h_i] at x.
    pub fn apply(&self, half: [f64; 3], x: [f64; 3]) -> f64 {
        let (a1, b1) = ((x[0] - half[0]).max(-1.0), (x[0] + half[0]).min(1.0));
        let (a2, b2) = ((x[1] - half[1]).max(-1.0), (x[1] + half[1]).min(1.0));
        if a1 >= b1 || a2 >= b2 {
            return 0.0;
        }
        let (lo, hi) = (x[2] - half[2], x[2] + half[2]);
        let mut total = 0.0;
        let mut c = vec![0.0; self.rows.len()];
        for (y1, w) in composite_nodes(&self.rule, a1, b1, self.panels) {
            let e1 = eta(y1);
            if e1 == 0.0 {
                continue;
            }
            for (cj, r) in c.iter_mut().zip(&self.rows) {
                *cj = horner(r, y1);
            }
            total += w * e1 * self.slice_measure(&c, a2, b2, lo, hi);
        }
        total
    }

    /// ∫ η(y2)·1[lo ≤ p(y2) ≤ hi] over [a, b].
    fn slice_measure(&self, p: &[f64], a: f64, b: f64, lo: f64, hi: f64) -> f64 {
        if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
            return eta_integral(a, b);
        }
        let breaks = monotone_breaks(p, a, b);
        let mut pts = breaks.clone();
        pts.extend(level_crossings(p, &breaks, lo));
        pts.extend(level_crossings(p, &breaks, hi));
        pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
        let mut s = 0.0;
        for w in pts.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let v = horner(p, 0.5 * (w[0] + w[1]));
            if v >= lo && v <= hi {
                s += eta_integral(w[0], w[1]);
            }
        }
        s
    }
}
