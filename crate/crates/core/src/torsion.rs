//! Torsion of curves with full rational 2-torsion.
//!
//! The 2-primary part is decided exactly by halving. The 3-part is detected
//! by probing supplied points (and their translates by 2-torsion) for orders
//! 3 and 6; a curve whose probes never witness it is flagged rather than
//! silently reported as having no 3-torsion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ec::{Curve, Order, Point};
use crate::error::{Error, Result};
use crate::qarith::Rat;
use crate::triples::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorsionClass {
    Z2xZ2,
    Z2xZ4,
    Z2xZ6,
    Z2xZ8,
}

impl TorsionClass {
    pub fn order(self) -> u32 {
        match self {
            TorsionClass::Z2xZ2 => 4,
            TorsionClass::Z2xZ4 => 8,
            TorsionClass::Z2xZ6 => 12,
            TorsionClass::Z2xZ8 => 16,
        }
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorsionClass::Z2xZ2 => "Z2xZ2",
            TorsionClass::Z2xZ4 => "Z2xZ4",
            TorsionClass::Z2xZ6 => "Z2xZ6",
            TorsionClass::Z2xZ8 => "Z2xZ8",
        })
    }
}

impl FromStr for TorsionClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Z2xZ2" => Ok(TorsionClass::Z2xZ2),
            "Z2xZ4" => Ok(TorsionClass::Z2xZ4),
            "Z2xZ6" => Ok(TorsionClass::Z2xZ6),
            "Z2xZ8" => Ok(TorsionClass::Z2xZ8),
            _ => Err(format!("unknown torsion class {s:?}")),
        }
    }
}

/// How the 3-part of the torsion was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreePart {
    /// A probe-derived point of order 3.
    Witnessed(Point),
    /// A point of order 4 exists, so there is no 3-torsion.
    Excluded,
    /// No probe witnessed 3-torsion; the answer Z2xZ2 is not proven.
    NotDetected,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: TorsionClass,
    pub three_part: ThreePart,
    /// A point of maximal 2-power order, when that order exceeds 2.
    pub two_power_witness: Option<Point>,
}

/// `(ab+1)(ac+1)(bc+1) = 0`, equivalently `2S = O`.
pub fn lemma_2s(tr: &Triple) -> bool {
    tr.roots().iter().any(|r| r.is_zero())
}

/// `3 + 4(ab+ac+bc) + 6abc(a+b+c) + 12(abc)^2 - (abc)^2 (a^2+b^2+c^2-2ab-2ac-2bc)`,
/// which vanishes exactly when `3S = O`.
pub fn lemma_3s_value(tr: &Triple) -> Rat {
    let [a, b, c] = tr.elements();
    let (ab, ac, bc) = (a * b, a * c, b * c);
    let sigma2 = &(&ab + &ac) + &bc;
    let abc = tr.abc();
    let abc2 = abc.square();
    let sum = &(a + b) + c;
    let squares = &(&a.square() + &b.square()) + &c.square();
    let mixed = 2 * &sigma2;
    3 + &(4 * &sigma2) + &(6 * &(&abc * &sum)) + &(12 * &abc2) - &(&abc2 * &(&squares - &mixed))
}

/// The three order-4 factors. Factor `k` vanishes iff `2S'` is the 2-torsion
/// point `C'`, `B'`, `A'` respectively (`(-ab,0)`, `(-ac,0)`, `(-bc,0)`).
pub fn lemma_4s_factors(tr: &Triple) -> [Rat; 3] {
    let [a, b, c] = tr.elements();
    let factor = |x: &Rat, y: &Rat, z: &Rat| {
        let xy = x * y;
        (&xy + 1).square() - &(&xy * &(&(z - x) * &(z - y)))
    };
    [factor(a, b, c), factor(a, c, b), factor(b, c, a)]
}

/// Index of the first vanishing order-4 factor.
pub fn lemma_4s_zero_factor(tr: &Triple) -> Option<usize> {
    lemma_4s_factors(tr).iter().position(Rat::is_zero)
}

/// Result of comparing the closed-form predicates with the order of `S'`.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub s_order: Order,
    pub lemma_2s: bool,
    pub lemma_3s_zero: bool,
    pub lemma_4s_factor: Option<usize>,
    pub mismatches: Vec<String>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn order_consistency(tr: &Triple) -> ConsistencyReport {
    let curve = tr.induced_curve();
    let s = tr.canonical_points().s;
    let s_order = curve.order_of(&s).expect("S' lies on the induced curve");
    let l2 = lemma_2s(tr);
    let l3 = lemma_3s_value(tr).is_zero();
    let l4 = lemma_4s_zero_factor(tr);
    let mut mismatches = Vec::new();
    let mut expect = |name: &str, predicate: bool, order: u32| {
        if predicate != (s_order == Order::Finite(order)) {
            mismatches.push(format!(
                "{name} is {predicate} but S' has order {s_order}"
            ));
        }
    };
    expect("lemma 2S", l2, 2);
    expect("lemma 3S", l3, 3);
    expect("lemma 4S", l4.is_some() && !l2, 4);
    if let (Some(k), Order::Finite(4)) = (l4, s_order) {
        let two_s = curve.add_unchecked(&s, &s);
        let cp = tr.canonical_points();
        let target = [&cp.c, &cp.b, &cp.a][k];
        if two_s != *target {
            mismatches.push(format!("factor {k} vanishes but 2S' = {two_s}"));
        }
    }
    ConsistencyReport {
        s_order,
        lemma_2s: l2,
        lemma_3s_zero: l3,
        lemma_4s_factor: l4,
        mismatches,
    }
}

/// 2-torsion points with a rational half: `e_i - e_j` and `e_i - e_k` squares.
pub fn halvable_two_torsion(curve: &Curve) -> Result<Vec<Point>> {
    let roots = curve.roots()?;
    Ok((0..3)
        .filter(|&i| {
            (0..3)
                .filter(|&j| j != i)
                .all(|j| crate::qarith::is_perfect_square(&(&roots[i] - &roots[j])))
        })
        .map(|i| Point::new(roots[i].clone(), Rat::zero()))
        .collect())
}

pub fn classify(curve: &Curve, probes: &[Point]) -> Result<Classification> {
    if probes.iter().any(|p| !curve.on_curve(p)) {
        return Err(Error::NotOnCurve);
    }
    let two_torsion = curve.two_torsion()?;

    let mut order4 = Vec::new();
    for t in halvable_two_torsion(curve)? {
        order4.extend(curve.halves_of(&t)?);
    }
    for q in &order4 {
        if let Some(h) = curve.halves_of(q)?.into_iter().next() {
            return Ok(Classification {
                class: TorsionClass::Z2xZ8,
                three_part: ThreePart::Excluded,
                two_power_witness: Some(h),
            });
        }
    }
    if let Some(q) = order4.into_iter().next() {
        return Ok(Classification {
            class: TorsionClass::Z2xZ4,
            three_part: ThreePart::Excluded,
            two_power_witness: Some(q),
        });
    }

    for p in probes {
        for shift in std::iter::once(&Point::Identity).chain(two_torsion.iter()) {
            let cand = curve.add_unchecked(p, shift);
            let witness = match curve.order_of(&cand)? {
                Order::Finite(3) => Some(cand),
                Order::Finite(6) => Some(curve.add_unchecked(&cand, &cand)),
                _ => None,
            };
            if let Some(w) = witness {
                return Ok(Classification {
                    class: TorsionClass::Z2xZ6,
                    three_part: ThreePart::Witnessed(w),
                    two_power_witness: None,
                });
            }
        }
    }
    Ok(Classification {
        class: TorsionClass::Z2xZ2,
        three_part: ThreePart::NotDetected,
        two_power_witness: None,
    })
}

/// Classifies the induced curve using the canonical points as probes.
pub fn classify_triple(tr: &Triple) -> Classification {
    let cp = tr.canonical_points();
    let probes = [cp.p, cp.s, cp.r];
    classify(&tr.induced_curve(), &probes).expect("canonical points lie on the induced curve")
}
