//! Seeded randomized property suites. Each suite runs a fixed number of
//! cases from a deterministic stream, so a seed reproduces a failure
//! exactly. Failures are counted and the first one is described.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autos::AutGroup;
use crate::bits;
use crate::gfield::GoldenNumber;
use crate::group::Perm;
use crate::matroid::{OrthoData, RankOracle};
use crate::roots::{PointTable, NPOINTS};
use crate::{Golden, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct PropOutcome {
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropOutcome {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    fn new(cases: usize) -> Self {
        PropOutcome { cases, failures: 0, first_failure: None }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg());
        }
    }
}

fn random_golden(rng: &mut ChaCha8Rng) -> Golden {
    let part = |rng: &mut ChaCha8Rng| {
        let num = rng.random_range(-40i64..=40);
        let den = rng.random_range(1i64..=12);
        Rat::new(num, den)
    };
    GoldenNumber::new(part(rng), part(rng))
}

/// Field axioms, sign multiplicativity, conjugation homomorphism, and the
/// rationality of the norm, on random elements.
pub fn golden_field_axioms(seed: u64, cases: usize) -> PropOutcome {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropOutcome::new(cases);
    for _ in 0..cases {
        let x = random_golden(&mut rng);
        let y = random_golden(&mut rng);
        let z = random_golden(&mut rng);
        let assoc_add = (&x + &y) + &z == &x + &(&y + &z);
        let assoc_mul = (&x * &y) * &z == &x * &(&y * &z);
        let comm = &x * &y == &y * &x && &x + &y == &y + &x;
        let distr = &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
        let inv_ok = x.is_zero() || {
            let i = x.inverse().unwrap();
            &x * &i == Golden::one() && i.inverse().unwrap() == x
        };
        let sign_mul = (&x * &y).sign() == x.sign() * y.sign();
        let conj_hom = (&x + &y).conj() == x.conj() + y.conj()
            && (&x * &y).conj() == x.conj() * y.conj()
            && x.conj().conj() == x;
        let norm_rational = (&x * &x.conj()).tau_part().is_zero();
        if !(assoc_add && assoc_mul && comm && distr && inv_ok && sign_mul && conj_hom && norm_rational)
        {
            out.fail(|| format!("field axiom failed at x={x}, y={y}, z={z}"));
        }
    }
    out
}

fn random_mask(rng: &mut ChaCha8Rng, max_size: usize) -> u64 {
    let size = rng.random_range(0..=max_size);
    let mut mask = 0u64;
    for _ in 0..size {
        mask |= 1u64 << rng.random_range(0..NPOINTS);
    }
    mask
}

/// Rank is monotone and submodular on random subset pairs.
pub fn rank_submodularity(table: &PointTable<Rat>, seed: u64, cases: usize) -> PropOutcome {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = RankOracle::new(table);
    let mut out = PropOutcome::new(cases);
    for _ in 0..cases {
        let a = random_mask(&mut rng, 8);
        let b = random_mask(&mut rng, 8);
        let ra = oracle.rank_mask(a);
        let rb = oracle.rank_mask(b);
        let runion = oracle.rank_mask(a | b);
        let rinter = oracle.rank_mask(a & b);
        if runion + rinter > ra + rb {
            out.fail(|| {
                format!(
                    "submodularity failed at A={:?}, B={:?}",
                    bits::ids(a),
                    bits::ids(b)
                )
            });
        } else if runion < ra.max(rb) || rinter > ra.min(rb) {
            out.fail(|| format!("monotonicity failed at A={:?}, B={:?}", bits::ids(a), bits::ids(b)));
        }
    }
    out
}

/// Closure is extensive, idempotent, monotone, and rank-preserving.
pub fn closure_axioms(table: &PointTable<Rat>, seed: u64, cases: usize) -> PropOutcome {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = RankOracle::new(table);
    let mut out = PropOutcome::new(cases);
    for _ in 0..cases {
        let s = random_mask(&mut rng, 5);
        let t = s | random_mask(&mut rng, 3);
        let (cs, rs) = oracle.closure_mask(s);
        let (ccs, rcs) = oracle.closure_mask(cs);
        let (ct, _) = oracle.closure_mask(t);
        let extensive = s & !cs == 0;
        let idempotent = ccs == cs && rcs == rs;
        let monotone = cs & !ct == 0;
        let rank_kept = oracle.rank_mask(s) == rs;
        if !(extensive && idempotent && monotone && rank_kept) {
            out.fail(|| format!("closure axiom failed at S={:?}", bits::ids(s)));
        }
    }
    out
}

/// Random automorphisms commute with the orthoplane map:
/// `P_{sigma(x)} = sigma(P_x)`.
pub fn duality_commutation(
    ortho: &OrthoData,
    aut: &AutGroup,
    seed: u64,
    cases: usize,
) -> PropOutcome {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropOutcome::new(cases);
    for _ in 0..cases {
        let sigma: Perm = aut.group.random_element(&mut rng);
        let x = rng.random_range(0..NPOINTS);
        let lhs = ortho.orthoplane_mask[sigma.apply(x)];
        let rhs = sigma.apply_mask(ortho.orthoplane_mask[x]);
        if lhs != rhs {
            out.fail(|| format!("orthoplane commutation failed at x={x}, sigma={sigma:?}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testworld::world;

    #[test]
    fn suites_pass_on_a_small_budget() {
        let w = world();
        assert!(golden_field_axioms(11, 500).ok());
        assert!(rank_submodularity(&w.table, 12, 300).ok());
        assert!(closure_axioms(&w.table, 13, 300).ok());
        assert!(duality_commutation(&w.ortho, &w.aut, 14, 500).ok());
    }

    #[test]
    fn outcomes_are_seed_deterministic() {
        let a = golden_field_axioms(42, 200);
        let b = golden_field_axioms(42, 200);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.first_failure, b.first_failure);
    }
}
