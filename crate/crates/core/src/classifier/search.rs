use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{classify, Case, Classification};
use crate::error::{Error, Result};
use crate::factorization::{expand_in_weights, RootLocation};
use crate::poly::{BivariatePoly, UnivariatePoly};

const WEIGHTS: [(u32, u32); 5] = [(1, 2), (1, 3), (1, 4), (2, 3), (1, 5)];

#[derive(Clone, Debug)]
pub struct CaseDInstance {
    pub trial: u64,
    pub poly: BivariatePoly,
    pub classification: Classification,
}

fn draw(rng: &mut ChaCha8Rng) -> BivariatePoly {
    let (s, r) = WEIGHTS[rng.random_range(0..WEIGHTS.len())];
    let n = rng.random_range(1..=3usize);
    let mut g: Vec<i64> = (0..=n).map(|_| rng.random_range(-6..=6)).collect();
    if g[n] == 0 {
        g[n] = 1;
    }
    if g[0] == 0 {
        g[0] = -1;
    }
    let nu1 = rng.random_range(0..=2);
    let nu2 = rng.random_range(0..=1);
    expand_in_weights(&UnivariatePoly::from_i64(&g), s, r).shift_exponents(nu1, nu2)
}

/// Random integer-coefficient polynomials on a weight line, kept when they
/// classify as case D with T attained only at a new root of w.
/// Trial i uses stream i of the ChaCha generator seeded by `seed`.
pub fn search_case_d(seed: u64, trials: u64) -> Result<Vec<CaseDInstance>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let found: Vec<Option<CaseDInstance>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let poly = draw(&mut rng);
            let c = classify(&poly);
            (c.case == Case::D && !c.tie_flag && c.location == RootLocation::OffAxisNew).then_some(
                CaseDInstance {
                    trial,
                    poly,
                    classification: c,
                },
            )
        })
        .collect();
    let mut out: Vec<CaseDInstance> = Vec::new();
    for x in found.into_iter().flatten() {
        if !out.iter().any(|o| o.poly == x.poly) {
            out.push(x);
        }
    }
    Ok(out)
}
