//! Group law on `y^2 = x^3 + a2 x^2 + a4 x + a6` over the rationals.
//!
//! Most curves here arrive factored as `y^2 = (x+p)(x+q)(x+w)`, with all of
//! their 2-torsion rational; [`Curve::factored`] keeps the shifts `p, q, w`
//! around so that halving and torsion classification can use them. Curves
//! whose cubic does not split are built with [`Curve::monic`] and support
//! everything except halving.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qarith::{nth_root_exact, sqrt_checked, Rat};

/// Largest order of a rational torsion point (Mazur).
pub const MAX_TORSION_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Identity,
    Affine { x: Rat, y: Rat },
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Point::Identity)
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            Point::Identity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            Point::Identity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Identity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Curve {
    a2: Rat,
    a4: Rat,
    a6: Rat,
    shifts: Option<[Rat; 3]>,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.a2 == other.a2 && self.a4 == other.a4 && self.a6 == other.a6
    }
}

impl Eq for Curve {}

/// Depressed model `y^2 = x^3 + a x + b`, reached by `x -> x + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortForm {
    pub a: Rat,
    pub b: Rat,
    pub shift: Rat,
}

impl ShortForm {
    pub fn transport(&self, pt: &Point) -> Point {
        match pt {
            Point::Identity => Point::Identity,
            Point::Affine { x, y } => Point::new(x + &self.shift, y.clone()),
        }
    }

    pub fn transport_back(&self, pt: &Point) -> Point {
        match pt {
            Point::Identity => Point::Identity,
            Point::Affine { x, y } => Point::new(x - &self.shift, y.clone()),
        }
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Identity => true,
            Point::Affine { x, y } => y.square() == &(&(x.square() + &self.a) * x) + &self.b,
        }
    }
}

impl Curve {
    /// `y^2 = (x+p)(x+q)(x+w)`; the shifts must be pairwise distinct.
    pub fn factored(p: Rat, q: Rat, w: Rat) -> Result<Self> {
        if p == q || p == w || q == w {
            return Err(Error::SingularCurve(format!("repeated root among {p}, {q}, {w}")));
        }
        let a2 = &(&p + &q) + &w;
        let a4 = &(&(&p * &q) + &(&p * &w)) + &(&q * &w);
        let a6 = &(&p * &q) * &w;
        Ok(Curve {
            a2,
            a4,
            a6,
            shifts: Some([p, q, w]),
        })
    }

    /// `y^2 = x^3 + a2 x^2 + a4 x + a6` with nonzero discriminant.
    pub fn monic(a2: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let c = Curve {
            a2,
            a4,
            a6,
            shifts: None,
        };
        if c.cubic_discriminant().is_zero() {
            return Err(Error::SingularCurve("zero discriminant".into()));
        }
        Ok(c)
    }

    pub fn coefficients(&self) -> (&Rat, &Rat, &Rat) {
        (&self.a2, &self.a4, &self.a6)
    }

    /// The shifts `(p, q, w)` when the curve was built factored.
    pub fn shifts(&self) -> Option<&[Rat; 3]> {
        self.shifts.as_ref()
    }

    /// Roots `-p, -q, -w` of the cubic, i.e. x-coordinates of the 2-torsion.
    pub fn roots(&self) -> Result<[Rat; 3]> {
        let [p, q, w] = self.shifts.as_ref().ok_or(Error::NotSplit)?;
        Ok([-p, -q, -w])
    }

    pub fn two_torsion(&self) -> Result<[Point; 3]> {
        Ok(self.roots()?.map(|e| Point::new(e, Rat::zero())))
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &Rat) -> Rat {
        let t = &(x + &self.a2) * x;
        &(&(t + &self.a4) * x) + &self.a6
    }

    fn cubic_discriminant(&self) -> Rat {
        let (b, c, d) = (&self.a2, &self.a4, &self.a6);
        let bcd = &(b * c) * d;
        18 * &bcd - 4 * &(&b.pow(3) * d) + &b.square() * &c.square()
            - 4 * &c.pow(3)
            - 27 * &d.square()
    }

    /// Scales `x -> u^2 x`, `y -> u^3 y`; the result is isomorphic over Q.
    pub fn scaled(&self, u: &Rat) -> Self {
        let u2 = u.square();
        let u4 = u2.square();
        Curve {
            a2: &self.a2 * &u2,
            a4: &self.a4 * &u4,
            a6: &self.a6 * &(&u4 * &u2),
            shifts: self
                .shifts
                .as_ref()
                .map(|s| [&s[0] * &u2, &s[1] * &u2, &s[2] * &u2]),
        }
    }

    pub fn on_curve(&self, pt: &Point) -> bool {
        match pt {
            Point::Identity => true,
            Point::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    fn check(&self, pt: &Point) -> Result<()> {
        if self.on_curve(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn negate(&self, pt: &Point) -> Result<Point> {
        self.check(pt)?;
        Ok(neg(pt))
    }

    pub fn add(&self, p1: &Point, p2: &Point) -> Result<Point> {
        self.check(p1)?;
        self.check(p2)?;
        Ok(self.add_unchecked(p1, p2))
    }

    /// Chord-tangent sum for points already known to be on the curve.
    pub(crate) fn add_unchecked(&self, p1: &Point, p2: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Identity, q) | (q, Point::Identity) => return q.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            // Vertical line: inverse pair, which covers doubling a y = 0 point.
            if *y1 == -y2 {
                return Point::Identity;
            }
            let num = &(&(3 * &x1.square()) + &(2 * &(&self.a2 * x1))) + &self.a4;
            num / (2 * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &(&(&slope.square() - &self.a2) - x1) - x2;
        let y3 = -(y1 + &(&slope * &(&x3 - x1)));
        Point::new(x3, y3)
    }

    pub fn double(&self, pt: &Point) -> Result<Point> {
        self.add(pt, pt)
    }

    /// `n * pt` by double-and-add.
    pub fn mul(&self, n: i64, pt: &Point) -> Result<Point> {
        self.check(pt)?;
        Ok(self.mul_unchecked(n, pt))
    }

    pub(crate) fn mul_unchecked(&self, n: i64, pt: &Point) -> Point {
        let base = if n < 0 { neg(pt) } else { pt.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Identity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &addend);
            }
            k >>= 1;
            if k > 0 {
                addend = self.add_unchecked(&addend, &addend);
            }
        }
        acc
    }

    /// `u` with `u^2 x` integral for every rational torsion point.
    fn integral_scale(&self) -> BigInt {
        [&self.a2, &self.a4, &self.a6]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Smallest `n <= 12` with `n * pt = O`, otherwise infinite.
    ///
    /// Multiples whose x-coordinate is not integral on the scaled integral
    /// model cannot be torsion, which cuts the search short for points of
    /// infinite order.
    pub fn order_of(&self, pt: &Point) -> Result<Order> {
        self.check(pt)?;
        if pt.is_identity() {
            return Ok(Order::Finite(1));
        }
        let u2 = Rat::from_int(self.integral_scale().pow(2));
        let not_integral = |q: &Point| q.x().is_some_and(|x| !(x * &u2).is_integer());
        let mut acc = pt.clone();
        for n in 2..=MAX_TORSION_ORDER {
            if not_integral(&acc) {
                return Ok(Order::Infinite);
            }
            acc = self.add_unchecked(&acc, pt);
            if acc.is_identity() {
                return Ok(Order::Finite(n));
            }
        }
        Ok(Order::Infinite)
    }

    pub fn short_form(&self) -> ShortForm {
        let shift = &self.a2 / 3;
        let a = &self.a4 - &(&self.a2.square() / 3);
        let b = &(&(2 * &self.a2.pow(3)) / 27) - &(&(&self.a2 * &self.a4) / 3) + &self.a6;
        ShortForm { a, b, shift }
    }

    pub fn j_invariant(&self) -> Rat {
        let ShortForm { a, b, .. } = self.short_form();
        let a3 = 4 * &a.pow(3);
        &(1728 * &a3) / &(&a3 + &(27 * &b.square()))
    }

    /// True iff the two curves are isomorphic over Q: their short forms satisfy
    /// `a2 = u^4 a1`, `b2 = u^6 b1` for some nonzero rational `u`.
    pub fn is_isomorphic_over_q(&self, other: &Curve) -> bool {
        let s1 = self.short_form();
        let s2 = other.short_form();
        match (s1.a.is_zero(), s1.b.is_zero(), s2.a.is_zero(), s2.b.is_zero()) {
            (false, false, false, false) => {
                let u2 = &(&s1.a * &s2.b) / &(&s2.a * &s1.b);
                sqrt_checked(&u2).is_some()
                    && s2.a == &s1.a * &u2.square()
                    && s2.b == &s1.b * &u2.pow(3)
            }
            (false, true, false, true) => nth_root_exact(&(&s2.a / &s1.a), 4).is_some(),
            (true, false, true, false) => nth_root_exact(&(&s2.b / &s1.b), 6).is_some(),
            _ => false,
        }
    }

    /// All rational `Q` with `2Q = pt`.
    ///
    /// `pt = (x0, y0)` is halvable iff each `x0 - e_i` is a rational square.
    /// With `d_i` the square roots, halves have `x = x0 + d1 d2 + d1 d3 + d2 d3`
    /// and `y = (d1 + d2)(d1 + d3)(d2 + d3)` for a suitable choice of signs;
    /// every sign choice is tried and kept if it doubles back to `pt`.
    pub fn halves_of(&self, pt: &Point) -> Result<Vec<Point>> {
        self.check(pt)?;
        let (x0, _) = match pt {
            Point::Identity => return Err(Error::AtIdentity),
            Point::Affine { x, y } => (x, y),
        };
        let roots = self.roots()?;
        let mut deltas = Vec::with_capacity(3);
        for e in &roots {
            match sqrt_checked(&(x0 - e)) {
                Some(d) => deltas.push(d),
                None => return Ok(Vec::new()),
            }
        }
        let mut halves: Vec<Point> = Vec::new();
        for signs in 0u8..8 {
            let d: Vec<Rat> = deltas
                .iter()
                .enumerate()
                .map(|(i, d)| if signs >> i & 1 == 1 { -d } else { d.clone() })
                .collect();
            let x = x0 + &(&(&(&d[0] * &d[1]) + &(&d[0] * &d[2])) + &(&d[1] * &d[2]));
            let y = &(&(&d[0] + &d[1]) * &(&d[0] + &d[2])) * &(&d[1] + &d[2]);
            let cand = Point::new(x, y);
            if !halves.contains(&cand)
                && self.on_curve(&cand)
                && self.add_unchecked(&cand, &cand) == *pt
            {
                halves.push(cand);
            }
        }
        Ok(halves)
    }
}

fn neg(pt: &Point) -> Point {
    match pt {
        Point::Identity => Point::Identity,
        Point::Affine { x, y } => Point::new(x.clone(), -y),
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shifts {
            Some([p, q, w]) => write!(f, "y^2 = (x + {p})(x + {q})(x + {w})"),
            None => write!(
                f,
                "y^2 = x^3 + {} x^2 + {} x + {}",
                self.a2, self.a4, self.a6
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn pt(x: &str, y: &str) -> Point {
        Point::new(q(x), q(y))
    }

    fn fermat() -> Curve {
        Curve::factored(q("3"), q("8"), q("24")).unwrap()
    }

    fn e1() -> Curve {
        Curve::monic(q("1"), q("1"), q("1")).unwrap()
    }

    #[test]
    fn incidence() {
        let c = fermat();
        assert!(c.on_curve(&pt("1", "30")));
        assert!(c.on_curve(&pt("0", "24")));
        assert!(!c.on_curve(&pt("1", "29")));
        assert!(c.on_curve(&Point::Identity));
    }

    #[test]
    fn negation() {
        let c = fermat();
        assert_eq!(c.negate(&pt("1", "30")).unwrap(), pt("1", "-30"));
        assert_eq!(c.negate(&Point::Identity).unwrap(), Point::Identity);
        assert_eq!(c.negate(&pt("-3", "0")).unwrap(), pt("-3", "0"));
        assert!(matches!(c.negate(&pt("1", "29")), Err(Error::NotOnCurve)));
    }

    #[test]
    fn addition_cases() {
        let c = fermat();
        let s = pt("1", "30");
        assert_eq!(c.add(&s, &Point::Identity).unwrap(), s);
        assert_eq!(c.add(&Point::Identity, &s).unwrap(), s);
        assert_eq!(c.add(&pt("-3", "0"), &pt("-3", "0")).unwrap(), Point::Identity);
        assert_eq!(c.add(&s, &pt("1", "-30")).unwrap(), Point::Identity);
        assert!(c.add(&s, &pt("1", "29")).is_err());
        // Tangent at (0, 1): slope 1/2, so x = 1/4 - 1 = -3/4, y = -(1 - 3/8).
        assert_eq!(e1().add(&pt("0", "1"), &pt("0", "1")).unwrap(), pt("-3/4", "-5/8"));
    }

    #[test]
    fn scalar_multiples() {
        let c = e1();
        let p1 = pt("0", "1");
        assert_eq!(c.mul(0, &p1).unwrap(), Point::Identity);
        assert_eq!(c.mul(1, &p1).unwrap(), p1);
        assert_eq!(c.mul(2, &p1).unwrap(), c.add(&p1, &p1).unwrap());
        assert_eq!(c.mul(-2, &p1).unwrap(), pt("-3/4", "5/8"));
        let mut acc = Point::Identity;
        for n in 0..15 {
            assert_eq!(c.mul(n, &p1).unwrap(), acc);
            acc = c.add(&acc, &p1).unwrap();
        }
    }

    #[test]
    fn orders() {
        let c = fermat();
        assert_eq!(c.order_of(&Point::Identity).unwrap(), Order::Finite(1));
        assert_eq!(c.order_of(&pt("-3", "0")).unwrap(), Order::Finite(2));
        assert_eq!(c.order_of(&pt("0", "24")).unwrap(), Order::Infinite);
        // {3, -1/3, 8/3} gives shifts (ab, ac, bc) = (-1, 8, -8/9).
        let c2 = Curve::factored(q("-1"), q("8"), q("-8/9")).unwrap();
        assert_eq!(c2.order_of(&pt("1", "0")).unwrap(), Order::Finite(2));
        assert_eq!(e1().order_of(&pt("0", "1")).unwrap(), Order::Infinite);
        assert_eq!(e1().order_of(&pt("-1", "0")).unwrap(), Order::Finite(2));
    }

    #[test]
    fn order_of_ignores_integrality_shortcut_for_torsion() {
        // y^2 = x^3 + 1 has (2, 3) of order 6; rescaling with u = 1/5 puts
        // non-integral torsion on the curve, which the scale must absorb.
        let c = Curve::monic(q("0"), q("0"), q("1")).unwrap();
        assert_eq!(c.order_of(&pt("2", "3")).unwrap(), Order::Finite(6));
        let u = q("1/5");
        let cs = c.scaled(&u);
        let p = pt("2/25", "3/125");
        assert!(cs.on_curve(&p));
        assert_eq!(cs.order_of(&p).unwrap(), Order::Finite(6));
    }

    #[test]
    fn short_forms() {
        let c = Curve::factored(q("1"), q("0"), q("-1")).unwrap();
        let sf = c.short_form();
        assert_eq!((sf.a.clone(), sf.b.clone()), (q("-1"), q("0")));
        assert!(matches!(
            Curve::factored(q("0"), q("0"), q("-1")),
            Err(Error::SingularCurve(_))
        ));
        let c = fermat();
        let sf = c.short_form();
        assert_eq!(sf.shift, q("35/3"));
        for p in [pt("1", "30"), pt("0", "24"), pt("-24", "0"), pt("32", "280")] {
            let moved = sf.transport(&p);
            assert!(sf.contains(&moved));
            assert_eq!(sf.transport_back(&moved), p);
        }
        assert!(Curve::monic(q("0"), q("0"), q("0")).is_err());
    }

    fn lambda_j(lambda: &Rat) -> Rat {
        let l2 = lambda.square();
        let num = 256 * &(&(&l2 - lambda) + 1).pow(3);
        let den = &l2 * &(lambda - 1).square();
        &num / &den
    }

    #[test]
    fn j_values() {
        let c = Curve::factored(q("1"), q("0"), q("-1")).unwrap();
        assert_eq!(c.j_invariant(), q("1728"));
        // Roots {0, 1, 3}: lambda = (3 - 0) / (1 - 0) = 3.
        let c = Curve::factored(q("0"), q("-1"), q("-3")).unwrap();
        assert_eq!(lambda_j(&q("3")), q("21952/9"));
        assert_eq!(c.j_invariant(), q("21952/9"));
    }

    #[test]
    fn isomorphism() {
        let c = fermat();
        assert!(c.is_isomorphic_over_q(&c));
        let c4 = Curve::factored(q("12"), q("32"), q("96")).unwrap();
        assert!(c.is_isomorphic_over_q(&c4));
        // Quadratic twist by -1: same j, not isomorphic.
        let tw = Curve::factored(q("-3"), q("-8"), q("-24")).unwrap();
        assert_eq!(c.j_invariant(), tw.j_invariant());
        assert!(!c.is_isomorphic_over_q(&tw));
        // j = 1728 family: twists by 2 are not quartic-power related.
        let a = Curve::monic(q("0"), q("-1"), q("0")).unwrap();
        let b = Curve::monic(q("0"), q("-4"), q("0")).unwrap();
        let b16 = Curve::monic(q("0"), q("-16"), q("0")).unwrap();
        assert!(!a.is_isomorphic_over_q(&b));
        assert!(a.is_isomorphic_over_q(&b16));
        // j = 0 family.
        let a = Curve::monic(q("0"), q("0"), q("1")).unwrap();
        assert!(a.is_isomorphic_over_q(&Curve::monic(q("0"), q("0"), q("64")).unwrap()));
        assert!(!a.is_isomorphic_over_q(&Curve::monic(q("0"), q("0"), q("8")).unwrap()));
        assert!(!a.is_isomorphic_over_q(&c));
    }

    #[test]
    fn halving() {
        let c = fermat();
        let s = pt("1", "30");
        let halves = c.halves_of(&s).unwrap();
        assert!(halves.contains(&pt("32", "280")));
        assert_eq!(halves.len(), 4);
        for h in &halves {
            assert_eq!(c.double(h).unwrap(), s);
        }
        // x0 - e for e = -3 is 3: not a square.
        assert!(c.halves_of(&pt("0", "24")).unwrap().is_empty());
        assert!(matches!(c.halves_of(&Point::Identity), Err(Error::AtIdentity)));
        assert!(matches!(e1().halves_of(&pt("0", "1")), Err(Error::NotSplit)));
    }
}
