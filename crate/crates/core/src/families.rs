//! Parametrized families of triples with prescribed torsion on the induced curve.
//!
//! * [`mixed_sign_family`]: `{a, -1/a, c}`, so `2S = O`.
//! * [`z2z6_family`] and [`z2z6_family_t`]: regular triples with `3S = O`.
//! * [`z2z8_family`]: every curve with torsion Z/2 x Z/8 arises this way.
//!
//! Elements come back in the order the formulas list them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qarith::Rat;
use crate::triples::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    MixedSign,
    Z2Z6a,
    Z2Z6t,
    Z2Z8T,
}

impl FamilyTag {
    pub fn arity(self) -> usize {
        match self {
            FamilyTag::MixedSign => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::MixedSign => "mixed",
            FamilyTag::Z2Z6a => "z2z6a",
            FamilyTag::Z2Z6t => "z2z6t",
            FamilyTag::Z2Z8T => "z2z8",
        })
    }
}

impl FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mixed" => Ok(FamilyTag::MixedSign),
            "z2z6a" | "z2z6" => Ok(FamilyTag::Z2Z6a),
            "z2z6t" => Ok(FamilyTag::Z2Z6t),
            "z2z8" => Ok(FamilyTag::Z2Z8T),
            _ => Err(format!("unknown family {s:?} (expected mixed, z2z6a, z2z6t or z2z8)")),
        }
    }
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParam {
    MixedSign { u: Rat, t: Rat },
    Z2Z6a { r: Rat },
    Z2Z6t { t: Rat },
    Z2Z8T { t: Rat },
}

impl FamilyParam {
    pub fn from_tag(tag: FamilyTag, params: &[Rat]) -> Result<Self> {
        if params.len() != tag.arity() {
            return Err(Error::FamilyDegenerate(format!(
                "family {tag} takes {} parameter(s), got {}",
                tag.arity(),
                params.len()
            )));
        }
        let p = |i: usize| params[i].clone();
        Ok(match tag {
            FamilyTag::MixedSign => FamilyParam::MixedSign { u: p(0), t: p(1) },
            FamilyTag::Z2Z6a => FamilyParam::Z2Z6a { r: p(0) },
            FamilyTag::Z2Z6t => FamilyParam::Z2Z6t { t: p(0) },
            FamilyTag::Z2Z8T => FamilyParam::Z2Z8T { t: p(0) },
        })
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyParam::MixedSign { .. } => FamilyTag::MixedSign,
            FamilyParam::Z2Z6a { .. } => FamilyTag::Z2Z6a,
            FamilyParam::Z2Z6t { .. } => FamilyTag::Z2Z6t,
            FamilyParam::Z2Z8T { .. } => FamilyTag::Z2Z8T,
        }
    }

    pub fn values(&self) -> Vec<Rat> {
        match self {
            FamilyParam::MixedSign { u, t } => vec![u.clone(), t.clone()],
            FamilyParam::Z2Z6a { r: v } | FamilyParam::Z2Z6t { t: v } | FamilyParam::Z2Z8T { t: v } => {
                vec![v.clone()]
            }
        }
    }

    pub fn generate(&self) -> Result<Triple> {
        match self {
            FamilyParam::MixedSign { u, t } => mixed_sign_family(u, t),
            FamilyParam::Z2Z6a { r } => z2z6_family(r),
            FamilyParam::Z2Z6t { t } => z2z6_family_t(t),
            FamilyParam::Z2Z8T { t } => z2z8_family(t),
        }
    }
}

fn degenerate(reason: impl Into<String>) -> Error {
    Error::FamilyDegenerate(reason.into())
}

fn finish(a: Rat, b: Rat, c: Rat) -> Result<Triple> {
    Triple::validate(a, b, c).map_err(|e| degenerate(e.to_string()))
}

/// `a = (ut+1)/(t-u)`, `b = (u-t)/(ut+1)`, `c = 4ut/((ut+1)(t-u))`.
pub fn mixed_sign_family(u: &Rat, t: &Rat) -> Result<Triple> {
    let diff = t - u;
    let ut1 = &(u * t) + 1;
    if diff.is_zero() {
        return Err(degenerate("t = u"));
    }
    if ut1.is_zero() {
        return Err(degenerate("ut = -1"));
    }
    if u.is_zero() || t.is_zero() {
        return Err(degenerate("u or t is zero, so c = 0"));
    }
    let a = &ut1 / &diff;
    let b = -&diff / &ut1;
    let c = &(4 * &(u * t)) / &(&ut1 * &diff);
    finish(a, b, c)
}

/// The Z/2 x Z/6 family in `r`:
/// `(-2r(r-1)(r+1)/(2r^2-1), -(2r^2-1)/(2r), (2r-1)(2r+1)/(2r(2r^2-1)))`.
pub fn z2z6_family(r: &Rat) -> Result<Triple> {
    if r.is_zero() {
        return Err(degenerate("r = 0"));
    }
    let r2 = r.square();
    if r2 == Rat::one() {
        return Err(degenerate("r = +-1 makes a = 0"));
    }
    if 4 * &r2 == Rat::one() {
        return Err(degenerate("r = +-1/2 makes c = 0"));
    }
    // 2r^2 - 1 never vanishes for rational r.
    let q = &(2 * &r2) - 1;
    let a = -&(&(2 * r) * &(&r2 - 1)) / &q;
    let b = -&q / &(2 * r);
    let c = &(&(4 * &r2) - 1) / &(&(2 * r) * &q);
    finish(a, b, c)
}

/// The Z/2 x Z/6 family obtained from `8r^2 + 1 = (2rt + 1)^2`:
/// `(-t(t-2)(t+2)/(2(t^2-2)), 2(t-1)(t+1)/((t^2-2)t), -(t^2-2)/(2t))`.
pub fn z2z6_family_t(t: &Rat) -> Result<Triple> {
    if t.is_zero() {
        return Err(degenerate("t = 0"));
    }
    let t2 = t.square();
    if t2 == 4 {
        return Err(degenerate("t = +-2 makes a = 0"));
    }
    if t2 == Rat::one() {
        return Err(degenerate("t = +-1 makes b = 0"));
    }
    let q = &t2 - 2;
    let a = -&(t * &(&t2 - 4)) / &(2 * &q);
    let b = &(2 * &(&t2 - 1)) / &(&q * t);
    let c = -&q / &(2 * t);
    finish(a, b, c)
}

/// `{2T/(T^2-1), (1-T^2)/(2T), (6T^2-T^4-1)/(2T(T^2-1))}`.
pub fn z2z8_family(t: &Rat) -> Result<Triple> {
    if t.is_zero() {
        return Err(degenerate("T = 0"));
    }
    let t2 = t.square();
    let m = &t2 - 1;
    if m.is_zero() {
        return Err(degenerate("T = +-1"));
    }
    let a = &(2 * t) / &m;
    let b = -&m / &(2 * t);
    let c = &(&(&(6 * &t2) - &t2.square()) - 1) / &(&(2 * t) * &m);
    finish(a, b, c)
}
