#![allow(dead_code)]

use std::collections::BTreeMap;

use ihgenera::hodge::HodgeClass;
use ihgenera::ring::{LaurentPoly, Rational};
use ihgenera::strata::{Poset, StratifiedSpace, Stratum};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to four bigrades with `|p|, |q| <= 3` and multiplicities in `[-5, 5]`.
pub fn hodge_class(rng: &mut ChaCha8Rng) -> HodgeClass {
    let n = rng.gen_range(0..=4);
    HodgeClass::from_entries((0..n).map(|_| {
        let pq = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        (pq, BigInt::from(rng.gen_range(-5..=5)))
    }))
}

pub fn laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let n = rng.gen_range(0..=4);
    LaurentPoly::from_terms((0..n).map(|_| {
        let c = Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        (rng.gen_range(-3..=3), c)
    }))
}

/// A relation on `n` strata listed in topological order, with dimensions
/// strictly increasing along it and a unique maximal element at the end.
pub fn random_order(rng: &mut ChaCha8Rng, n: usize) -> (Vec<u32>, Vec<Vec<bool>>) {
    let mut dims: Vec<u32> = (0..n - 1).map(|_| rng.gen_range(0..4)).collect();
    dims.sort();
    dims.push(4);
    let mut lt = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            if dims[i] < dims[j] && (j == n - 1 || rng.gen_bool(0.5)) {
                lt[i][j] = true;
            }
        }
    }
    // transitive closure, so that every comparable pair gets link data
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    (dims, lt)
}

pub fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> Poset {
    let n = rng.gen_range(1..=max);
    let (_, lt) = random_order(rng, n);
    Poset::from_relation((0..n).map(|i| format!("s{i}")).collect(), lt)
}

/// A valid space with random Hodge-level closure and link data.
pub fn random_space(rng: &mut ChaCha8Rng, max: usize) -> StratifiedSpace {
    let n = rng.gen_range(1..=max);
    let (dims, lt) = random_order(rng, n);
    let mut s = StratifiedSpace::new("random");
    let ids: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    for (id, &d) in ids.iter().zip(&dims) {
        s.add_stratum(Stratum::new(id.clone(), d));
        s.set_closure(id, hodge_class(rng));
    }
    for j in 0..n {
        for i in 0..j {
            if lt[i][j] {
                s.add_relation(&ids[i], &ids[j]);
                s.set_link(&ids[i], &ids[j], hodge_class(rng));
            }
        }
    }
    assert!(s.is_valid(), "{:?}", s.diagnostics());
    s
}

pub fn random_stalks(rng: &mut ChaCha8Rng, s: &StratifiedSpace) -> BTreeMap<String, HodgeClass> {
    s.strata().iter().map(|st| (st.id.clone(), hodge_class(rng))).collect()
}
