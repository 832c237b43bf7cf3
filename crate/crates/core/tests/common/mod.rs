#![allow(dead_code)]

use monovar::{Monomial, Polynomial, Rational, VarietySpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero-denominator rational `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.gen_range(-max_num..=max_num),
        rng.gen_range(1..=max_den),
    )
    .unwrap()
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn monomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
}

/// Up to `max_terms` random terms (fewer after collisions or cancellation).
pub fn poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (monomial(rng, n, max_exp), nonzero_rational(rng, 9, 4)))
        .collect();
    Polynomial::from_terms(n, terms).unwrap()
}

/// `m, k <= 3`, exponents `<= 4`, λ numerators and denominators `<= 9` in size.
pub fn spec(rng: &mut ChaCha8Rng) -> VarietySpec {
    let m = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=3);
    spec_with(rng, m, k)
}

pub fn spec_with(rng: &mut ChaCha8Rng, m: usize, k: usize) -> VarietySpec {
    let lambdas = (0..k).map(|_| rational(rng, 9, 9)).collect();
    let rows = (0..k)
        .map(|_| (0..m).map(|_| rng.gen_range(0..=4)).collect())
        .collect();
    VarietySpec::new(m, lambdas, rows).unwrap()
}
