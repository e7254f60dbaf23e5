//! Naive-height point search on a curve, as a lower bound for the rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ec::{Curve, Order, Point};
use crate::error::{Error, Result};
use crate::qarith::{int_sqrt_exact, Rat};

const MODULUS: i64 = 64 * 63 * 65 * 11;
const FILTER_MODS: [i64; 4] = [64, 63, 65, 11];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankConclusion {
    AtLeastOne,
    /// Only torsion points up to the height bound; says nothing about rank 0.
    NoNonTorsionUpTo(u64),
}

impl fmt::Display for RankConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankConclusion::AtLeastOne => write!(f, "rank >= 1"),
            RankConclusion::NoNonTorsionUpTo(h) => {
                write!(f, "no non-torsion point up to height {h} (not a proof of rank 0)")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RankEvidence {
    pub height_bound: u64,
    /// Points with `y >= 0`, in order of ascending `max(|p|, q)` of `x = p/q`.
    pub torsion: Vec<(Point, Order)>,
    pub infinite: Vec<Point>,
    pub conclusion: RankConclusion,
}

/// `f(p/q) = N / (L q^3)` with `N = L p^3 + (L a2) p^2 q + (L a4) p q^2 + (L a6) q^3`.
struct ScaledCubic {
    coeffs: [BigInt; 4],
    residues: [i64; 4],
    denom: BigInt,
    tables: Vec<Vec<bool>>,
}

impl ScaledCubic {
    fn new(curve: &Curve) -> Self {
        let (a2, a4, a6) = curve.coefficients();
        let l = [a2, a4, a6]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lr = Rat::from_int(l.clone());
        let scaled = |c: &Rat| (c * &lr).numer().clone();
        let coeffs = [l.clone(), scaled(a2), scaled(a4), scaled(a6)];
        let m = BigInt::from(MODULUS);
        let residues = coeffs
            .clone()
            .map(|c| c.mod_floor(&m).to_i64().expect("residue fits"));
        let tables = FILTER_MODS
            .iter()
            .map(|&k| {
                let mut t = vec![false; k as usize];
                for s in 0..k {
                    t[(s * s % k) as usize] = true;
                }
                t
            })
            .collect();
        ScaledCubic {
            coeffs,
            residues,
            denom: l,
            tables,
        }
    }

    /// `N * L * q`, which is a square iff `f(p/q)` is.
    fn cleared_mod(&self, p: i64, q: i64) -> i64 {
        let m = MODULUS;
        let (p, q) = (p.rem_euclid(m), q.rem_euclid(m));
        let [c0, c1, c2, c3] = self.residues;
        let mut acc = c0 * p % m;
        acc = (acc + c1 * q % m) % m * p % m;
        acc = (acc + c2 * q % m * q % m) % m * p % m;
        acc = (acc + c3 * q % m * q % m * q % m) % m;
        acc * (self.denom_mod()) % m * q % m
    }

    fn denom_mod(&self) -> i64 {
        self.residues[0]
    }

    fn may_be_square(&self, v: i64) -> bool {
        FILTER_MODS
            .iter()
            .zip(&self.tables)
            .all(|(&k, t)| t[(v % k) as usize])
    }

    fn y_at(&self, p: i64, q: i64) -> Option<Rat> {
        if !self.may_be_square(self.cleared_mod(p, q)) {
            return None;
        }
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        let [c0, c1, c2, c3] = &self.coeffs;
        let n = ((c0 * &p + c1 * &q) * &p + c2 * &q * &q) * &p + c3 * &q * &q * &q;
        if n.is_negative() {
            return None;
        }
        let cleared = &n * &self.denom * &q;
        if n.is_zero() {
            return Some(Rat::zero());
        }
        let root = int_sqrt_exact(&cleared)?;
        // y = sqrt(N L q) / (L q^2)
        Some(Rat::from_int(root) / Rat::from_int(&self.denom * &q * &q))
    }
}

fn points_at_height(curve: &Curve, cubic: &ScaledCubic, h: i64) -> Vec<(Point, Order)> {
    let mut xs: Vec<(i64, i64)> = (-h..=h)
        .filter(|p| p.gcd(&h) == 1)
        .map(|p| (p, h))
        .collect();
    xs.extend(
        (1..h)
            .filter(|q| q.gcd(&h) == 1)
            .flat_map(|q| [(-h, q), (h, q)]),
    );
    xs.into_iter()
        .filter_map(|(p, q)| {
            let y = cubic.y_at(p, q)?;
            let pt = Point::new(Rat::frac(p, q), y);
            debug_assert!(curve.on_curve(&pt));
            let order = curve.order_of(&pt).expect("constructed on the curve");
            Some((pt, order))
        })
        .collect()
}

/// Every point with `x = p/q`, `max(|p|, q) <= height_bound`.
pub fn rank_evidence(curve: &Curve, height_bound: u64) -> Result<RankEvidence> {
    if height_bound < 1 {
        return Err(Error::DegenerateParameter("height bound must be at least 1".into()));
    }
    let h_max = i64::try_from(height_bound)
        .ok()
        .filter(|h| *h < 1 << 20)
        .ok_or_else(|| Error::DegenerateParameter(format!("height bound {height_bound} too large")))?;
    let cubic = ScaledCubic::new(curve);
    let found: Vec<(Point, Order)> = (1..=h_max)
        .into_par_iter()
        .map(|h| points_at_height(curve, &cubic, h))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let (torsion, infinite): (Vec<_>, Vec<_>) =
        found.into_iter().partition(|(_, o)| o.is_finite());
    let infinite: Vec<Point> = infinite.into_iter().map(|(p, _)| p).collect();
    let conclusion = if infinite.is_empty() {
        RankConclusion::NoNonTorsionUpTo(height_bound)
    } else {
        RankConclusion::AtLeastOne
    };
    Ok(RankEvidence {
        height_bound,
        torsion,
        infinite,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn height_one_finds_small_points() {
        // y^2 = x^3 - x: 2-torsion at -1, 0, 1.
        let c = Curve::factored(q("1"), q("0"), q("-1")).unwrap();
        let ev = rank_evidence(&c, 1).unwrap();
        let xs: Vec<_> = ev.torsion.iter().map(|(p, _)| p.x().unwrap().clone()).collect();
        assert_eq!(xs, [q("-1"), q("0"), q("1")]);
        assert_eq!(ev.conclusion, RankConclusion::NoNonTorsionUpTo(1));
        assert!(rank_evidence(&c, 0).is_err());
    }

    #[test]
    fn filter_agrees_with_direct_evaluation() {
        let c = Curve::factored(q("-1"), q("8"), q("-8/9")).unwrap();
        let cubic = ScaledCubic::new(&c);
        for h in 1..40i64 {
            for p in -h..=h {
                let x = Rat::frac(p, h);
                let direct = crate::qarith::sqrt_checked(&c.rhs(&x));
                assert_eq!(cubic.y_at(p, h), direct, "x = {x}");
            }
        }
    }

    #[test]
    fn fermat_curve_has_points_of_infinite_order() {
        let c = Curve::factored(q("3"), q("8"), q("24")).unwrap();
        let ev = rank_evidence(&c, 30).unwrap();
        assert_eq!(ev.conclusion, RankConclusion::AtLeastOne);
        assert!(ev.infinite.contains(&Point::new(q("0"), q("24"))));
        assert!(ev.infinite.contains(&Point::new(q("1"), q("30"))));
    }
}
