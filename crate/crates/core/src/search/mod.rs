//! Search for all-positive triples whose induced curve has torsion Z/2 x Z/8.
//!
//! Put `b = (r^2-1)/a` and `c = a + b + 2r`. Requiring the first order-4
//! factor to vanish leaves the quadratic
//!
//! ```text
//! (2r^3 - 2r) a^2 + (4r^4 - 6r^2 + 1) a + (2r^5 + 2r - 4r^3) = 0
//! ```
//!
//! whose discriminant is `1 + 4r^2 - 4r^4`. Rational `r` making that a square
//! are points of the quartic `d^2 = 1 + 4r^2 - 4r^4`, which is birational to
//! `E1: Y^2 = X^3 + X^2 + X + 1` via
//!
//! ```text
//! r = (X + 1) / Y,            d = 2 r^2 X - 1,
//! X = (d + 1) / (2 r^2),      Y = (d + 1 + 2 r^2) / (2 r^3).
//! ```
//!
//! `E1` has rank one, generated by `P1 = (0, 1)`, so walking the multiples of
//! `P1` enumerates candidates.

mod evidence;
mod scan;

pub use evidence::{rank_evidence, RankConclusion, RankEvidence};
pub use scan::{
    process_multiple, read_records, scan, scan_resumable, write_records, CandidateRecord,
    ScanSummary,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ec::{Curve, Point};
use crate::error::{Error, Result};
use crate::families::z2z8_family;
use crate::qarith::{sqrt_checked, Rat};
use crate::triples::Triple;

/// Sign applied to `(X + 1) / Y`. Together with [`TRANSLATE_BY_T1`] this
/// pins the quartic map so that `6 P1` lands on `r = -3855558/3603685`.
pub const R_SIGN: i64 = 1;
/// Whether points are translated by `T1` before mapping to `r`.
pub const TRANSLATE_BY_T1: bool = false;

/// `Y^2 = X^3 + X^2 + X + 1` with `P1 = (0, 1)` and `T1 = (-1, 0)`.
#[derive(Clone, Debug)]
pub struct E1Context {
    pub curve: Curve,
    pub generator: Point,
    pub two_torsion: Point,
}

impl Default for E1Context {
    fn default() -> Self {
        Self::new()
    }
}

impl E1Context {
    pub fn new() -> Self {
        let one = Rat::one;
        E1Context {
            curve: Curve::monic(one(), one(), one()).expect("E1 is nonsingular"),
            generator: Point::new(Rat::zero(), one()),
            two_torsion: Point::new(-one(), Rat::zero()),
        }
    }

    /// `n * P1`.
    pub fn multiple(&self, n: i64) -> Point {
        self.curve.mul_unchecked(n, &self.generator)
    }

    /// `[P1, 2 P1, ..., n_max P1]`, built by repeated addition.
    pub fn ladder(&self, n_max: u64) -> Vec<Point> {
        let mut out = Vec::with_capacity(n_max as usize);
        let mut acc = Point::Identity;
        for _ in 0..n_max {
            acc = self.curve.add_unchecked(&acc, &self.generator);
            out.push(acc.clone());
        }
        out
    }

    pub fn translate(&self, pt: &Point) -> Point {
        self.curve.add_unchecked(pt, &self.two_torsion)
    }
}

pub fn e1_multiple(n: i64) -> Result<Point> {
    if n < 1 {
        return Err(Error::DegenerateParameter(format!("multiple index {n} < 1")));
    }
    Ok(E1Context::new().multiple(n))
}

fn raw_point_to_r(pt: &Point) -> Result<Rat> {
    match pt {
        Point::Affine { x, y } if !y.is_zero() => Ok(&(x + 1) / y),
        _ => Err(Error::ExceptionalPoint),
    }
}

/// The quartic parameter `r` of a point of `E1`.
pub fn point_to_r(pt: &Point) -> Result<Rat> {
    let ctx = E1Context::new();
    if !ctx.curve.on_curve(pt) {
        return Err(Error::NotOnCurve);
    }
    let pt = if TRANSLATE_BY_T1 { ctx.translate(pt) } else { pt.clone() };
    Ok(R_SIGN * raw_point_to_r(&pt)?)
}

/// The point `(r, d)` of `d^2 = 1 + 4r^2 - 4r^4` attached to `pt`.
pub fn point_to_quartic(pt: &Point) -> Result<(Rat, Rat)> {
    let r = point_to_r(pt)?;
    let ctx = E1Context::new();
    let base = if TRANSLATE_BY_T1 { ctx.translate(pt) } else { pt.clone() };
    let x = base.x().ok_or(Error::ExceptionalPoint)?;
    let d = &(2 * &(&r.square() * x)) - 1;
    Ok((r, d))
}

/// Inverse of [`point_to_quartic`]; `(r, d)` must satisfy the quartic.
pub fn r_to_point(r: &Rat, d: &Rat) -> Result<Point> {
    if d.square() != quartic_disc(r) {
        return Err(Error::NotASquare(quartic_disc(r).to_string()));
    }
    if r.is_zero() {
        return Err(Error::ExceptionalPoint);
    }
    let r = R_SIGN * r;
    let r2 = r.square();
    let x = &(d + 1) / &(2 * &r2);
    let y = &(&(d + 1) + &(2 * &r2)) / &(2 * &r.pow(3));
    let pt = Point::new(x, y);
    let ctx = E1Context::new();
    Ok(if TRANSLATE_BY_T1 { ctx.translate(&pt) } else { pt })
}

/// `1 - 4r^4 + 4r^2`.
pub fn quartic_disc(r: &Rat) -> Rat {
    let r2 = r.square();
    &(1 - &(4 * &r2.square())) + &(4 * &r2)
}

/// Coefficients `(A, B, C)` of the quadratic in `a`.
pub fn quadratic_coefficients(r: &Rat) -> (Rat, Rat, Rat) {
    let r2 = r.square();
    let r3 = &r2 * r;
    let lead = &(2 * &r3) - &(2 * r);
    let mid = &(&(4 * &r2.square()) - &(6 * &r2)) + 1;
    let constant = &(&(2 * &(&r3 * &r2)) + &(2 * r)) - &(4 * &r3);
    (lead, mid, constant)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootBranch {
    /// `a = (-B + sqrt(D)) / 2A`
    Plus,
    /// `a = (-B - sqrt(D)) / 2A`
    Minus,
}

impl fmt::Display for RootBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootBranch::Plus => "plus",
            RootBranch::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BranchTriple {
    pub branch: RootBranch,
    pub triple: Triple,
}

/// Triples `(a, (r^2-1)/a, a + b + 2r)` for each rational root `a`.
pub fn r_to_triples(r: &Rat) -> Result<Vec<BranchTriple>> {
    let (lead, mid, constant) = quadratic_coefficients(r);
    if lead.is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "r = {r} makes the leading coefficient vanish"
        )));
    }
    let disc = &mid.square() - &(4 * &(&lead * &constant));
    let Some(root) = sqrt_checked(&disc) else {
        return Ok(Vec::new());
    };
    let branches: &[RootBranch] = if root.is_zero() {
        &[RootBranch::Plus]
    } else {
        &[RootBranch::Plus, RootBranch::Minus]
    };
    let two_lead = 2 * &lead;
    let r2m1 = &r.square() - 1;
    let mut out = Vec::new();
    for &branch in branches {
        let signed = match branch {
            RootBranch::Plus => root.clone(),
            RootBranch::Minus => -&root,
        };
        let a = &(&signed - &mid) / &two_lead;
        if a.is_zero() {
            continue;
        }
        let b = &r2m1 / &a;
        let c = &(&a + &b) + &(2 * r);
        if let Ok(triple) = Triple::validate(a, b, c) {
            out.push(BranchTriple { branch, triple });
        }
    }
    Ok(out)
}

/// Whether `curve` is Q-isomorphic to the curve induced by the Z/2 x Z/8
/// family at `t`.
pub fn verify_family_t(curve: &Curve, t: &Rat) -> Result<bool> {
    let fam = z2z8_family(t)?;
    Ok(curve.is_isomorphic_over_q(&fam.induced_curve()))
}
