#![allow(dead_code)]

use dioph_curves::families::{mixed_sign_family, z2z6_family, z2z6_family_t, z2z8_family};
use dioph_curves::search::{point_to_r, r_to_triples, E1Context};
use dioph_curves::{Rat, Triple};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(s: &str) -> Rat {
    s.parse().unwrap()
}

pub fn rand_rat(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rat {
    Rat::frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// `(a, (r^2-1)/a, a + b +- 2r)`, or `None` when degenerate.
pub fn random_regular(rng: &mut ChaCha8Rng) -> Option<Triple> {
    let a = rand_rat(rng, 30, 12);
    let r = rand_rat(rng, 30, 12);
    if a.is_zero() {
        return None;
    }
    let b = &(&r.square() - 1) / &a;
    let two_r = 2 * &r;
    let c = if rng.gen_bool(0.5) {
        &(&a + &b) + &two_r
    } else {
        &(&a + &b) - &two_r
    };
    Triple::validate(a, b, c).ok()
}

fn small_params() -> Vec<Rat> {
    let mut out = Vec::new();
    for den in 1..=7i64 {
        for num in -14..=14i64 {
            let v = Rat::frac(num, den);
            if v.denom() == &den.into() {
                out.push(v);
            }
        }
    }
    out
}

/// Family members plus random regular triples, deterministic for a seed.
pub fn corpus(seed: u64, random: usize) -> Vec<Triple> {
    use rand::SeedableRng;
    let params = small_params();
    let mut out = Vec::new();
    for p in params.iter().take(120) {
        out.extend(z2z6_family(p).ok());
        out.extend(z2z6_family_t(p).ok());
        out.extend(z2z8_family(p).ok());
    }
    for u in params.iter().step_by(11).take(12) {
        for t in params.iter().step_by(13).take(8) {
            out.extend(mixed_sign_family(u, t).ok());
        }
    }
    // Triples from the quartic search have 4S' = O.
    let ctx = E1Context::new();
    for pt in ctx.ladder(8) {
        for p in [pt.clone(), ctx.translate(&pt)] {
            let Ok(r) = point_to_r(&p) else { continue };
            for bt in r_to_triples(&r).unwrap_or_default() {
                out.push(bt.triple.negated());
                out.push(bt.triple);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0;
    while made < random {
        if let Some(t) = random_regular(&mut rng) {
            out.push(t);
            made += 1;
        }
    }
    out
}
