//! Rational Diophantine triples and the curves they induce.
//!
//! A triple `{a, b, c}` induces `E: y^2 = (ax+1)(bx+1)(cx+1)`. Scaling by
//! `abc` gives the factored model `E': y^2 = (x+ab)(x+ac)(x+bc)`, which is
//! the model every other module works with.

use std::fmt;

use crate::ec::{Curve, Point};
use crate::error::{Error, Result};
use crate::qarith::{sqrt_checked, Rat};

/// A validated triple with the nonnegative roots
/// `r^2 = ab+1`, `s^2 = ac+1`, `t^2 = bc+1`.
#[derive(Clone, Debug)]
pub struct Triple {
    a: Rat,
    b: Rat,
    c: Rat,
    r: Rat,
    s: Rat,
    t: Rat,
}

impl Triple {
    pub fn validate(a: Rat, b: Rat, c: Rat) -> Result<Triple> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if v.is_zero() {
                return Err(Error::InvalidElement(format!("{name} is zero")));
            }
        }
        if a == b || a == c || b == c {
            return Err(Error::InvalidElement(format!("elements {a}, {b}, {c} are not distinct")));
        }
        let root = |x: &Rat, y: &Rat| -> Result<Rat> {
            let v = &(x * y) + 1;
            sqrt_checked(&v).ok_or_else(|| Error::NotATriple {
                left: x.to_string(),
                right: y.to_string(),
                value: v.to_string(),
            })
        };
        let r = root(&a, &b)?;
        let s = root(&a, &c)?;
        let t = root(&b, &c)?;
        Ok(Triple { a, b, c, r, s, t })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    /// `sqrt(ab + 1) >= 0`.
    pub fn r(&self) -> &Rat {
        &self.r
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn elements(&self) -> [&Rat; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `(r, s, t)`.
    pub fn roots(&self) -> [&Rat; 3] {
        [&self.r, &self.s, &self.t]
    }

    pub fn abc(&self) -> Rat {
        &(&self.a * &self.b) * &self.c
    }

    /// The triple `{-a, -b, -c}`; same pairwise products, same roots.
    pub fn negated(&self) -> Triple {
        Triple {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            r: self.r.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }

    /// Reorders the elements; `perm[i]` is the old index of the new i-th element.
    pub fn permuted(&self, perm: [usize; 3]) -> Triple {
        let e = self.elements();
        Triple::validate(e[perm[0]].clone(), e[perm[1]].clone(), e[perm[2]].clone())
            .expect("a permutation of a valid triple is valid")
    }

    /// Sorted elements, for comparing triples as sets.
    pub fn sorted_elements(&self) -> [Rat; 3] {
        let mut e = [self.a.clone(), self.b.clone(), self.c.clone()];
        e.sort();
        e
    }

    pub fn same_set(&self, other: &Triple) -> bool {
        self.sorted_elements() == other.sorted_elements()
    }

    /// `E': y^2 = (x+ab)(x+ac)(x+bc)`.
    pub fn induced_curve(&self) -> Curve {
        Curve::factored(&self.a * &self.b, &self.a * &self.c, &self.b * &self.c)
            .expect("pairwise products of a valid triple are distinct")
    }

    /// Whether `(x, y)` lies on `y^2 = (ax+1)(bx+1)(cx+1)`.
    pub fn on_original_curve(&self, pt: &Point) -> bool {
        match pt {
            Point::Identity => true,
            Point::Affine { x, y } => {
                let f = |e: &Rat| &(e * x) + 1;
                y.square() == &(&f(&self.a) * &f(&self.b)) * &f(&self.c)
            }
        }
    }

    /// Maps a point of `y^2 = (ax+1)(bx+1)(cx+1)` to the induced curve by
    /// `(x, y) -> (abc x, abc y)`.
    pub fn transform_to_eprime(&self, pt: &Point) -> Result<Point> {
        if !self.on_original_curve(pt) {
            return Err(Error::NotOnCurve);
        }
        let abc = self.abc();
        Ok(match pt {
            Point::Identity => Point::Identity,
            Point::Affine { x, y } => Point::new(&abc * x, &abc * y),
        })
    }

    pub fn canonical_points(&self) -> CanonicalPoints {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (r, s, t) = (&self.r, &self.s, &self.t);
        let zero = Rat::zero;
        let rs = r * s;
        let r_x = &(&(&rs + &(r * t)) + &(s * t)) + 1;
        let r_y = &(&(r + s) * &(r + t)) * &(s + t);
        let pts = CanonicalPoints {
            a: Point::new(-(b * c), zero()),
            b: Point::new(-(a * c), zero()),
            c: Point::new(-(a * b), zero()),
            p: Point::new(zero(), self.abc()),
            s: Point::new(Rat::one(), &rs * t),
            r: Point::new(r_x, r_y),
        };
        debug_assert!({
            let curve = self.induced_curve();
            curve.add(&pts.r, &pts.r).ok().as_ref() == Some(&pts.s)
        });
        pts
    }

    /// Whether `c = a + b + 2 sigma r` for some sign; `+` wins when `r = 0`.
    pub fn is_regular(&self) -> Option<Sign> {
        regular_sign(&self.a, &self.b, &self.c, &self.r)
    }

    /// Checks every choice of the distinguished element. Returns the index
    /// of the element playing the role of `c`, and the sign.
    pub fn regular_role(&self) -> Option<(usize, Sign)> {
        let e = self.elements();
        let roots = [&self.t, &self.s, &self.r];
        (0..3).rev().find_map(|k| {
            let (i, j) = match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            regular_sign(e[i], e[j], e[k], roots[k]).map(|s| (k, s))
        })
    }

    pub fn sign_pattern(&self) -> [i8; 3] {
        [self.a.signum(), self.b.signum(), self.c.signum()]
    }

    pub fn all_same_sign(&self) -> bool {
        let [x, y, z] = self.sign_pattern();
        x == y && y == z
    }
}

fn regular_sign(a: &Rat, b: &Rat, c: &Rat, r: &Rat) -> Option<Sign> {
    let ab = a + b;
    let two_r = 2 * r;
    if *c == &ab + &two_r {
        Some(Sign::Plus)
    } else if *c == &ab - &two_r {
        Some(Sign::Minus)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Named points on the induced curve `E'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalPoints {
    /// `(-bc, 0)`
    pub a: Point,
    /// `(-ac, 0)`
    pub b: Point,
    /// `(-ab, 0)`
    pub c: Point,
    /// `(0, abc)`
    pub p: Point,
    /// `(1, rst)`
    pub s: Point,
    /// `(rs + rt + st + 1, (r+s)(r+t)(s+t))`, a half of `s`.
    pub r: Point,
}

impl CanonicalPoints {
    pub fn all(&self) -> [(&'static str, &Point); 6] {
        [
            ("A'", &self.a),
            ("B'", &self.b),
            ("C'", &self.c),
            ("P'", &self.p),
            ("S'", &self.s),
            ("R'", &self.r),
        ]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.a, self.b, self.c)
    }
}
