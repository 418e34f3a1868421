//! Scalar fields on R³.
//!
//! A [`ScalarField`] is an immutable expression tree over the coordinates
//! `x`, `y`, `z`. Nodes are shared through `Arc`, so cloning a field is cheap
//! and fields can be handed to worker threads freely.
//!
//! Construction goes through smart constructors that apply a handful of local
//! rewrites (`0+e → e`, `1·e → e`, `0·e → 0`, constant folding, and collapsing
//! `(p^a)^n → p^(a·n)` for integer `n`). There is no general canonical form:
//! identities are decided by [`is_identically_zero`].

mod diff;
mod display;
mod eval;
mod parse;
pub mod poly;
mod sample;
mod zero;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use diff::{fd_partial, gradient, laplacian, partial, DEFAULT_STEP};
pub use eval::{EvalError, EvalErrorKind};
pub(crate) use parse::parse_decimal;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use sample::{SampleError, SampleSpec, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
pub use zero::{is_identically_zero, zero_test, ZeroTest, ZeroTestMethod};

/// Exact rational number used for constants and exponents.
pub type Rational = BigRational;

/// Coordinate axis of R³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of R³. Coordinates are finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn origin() -> Self {
        Point3::new(0.0, 0.0, 0.0)
    }

    pub fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// The point shifted by `delta` along `axis`.
    pub fn shifted(&self, axis: Axis, delta: f64) -> Self {
        let mut p = *self;
        match axis {
            Axis::X => p.x += delta,
            Axis::Y => p.y += delta,
            Axis::Z => p.z += delta,
        }
        p
    }

    pub fn scaled(&self, t: f64) -> Self {
        Point3::new(self.x * t, self.y * t, self.z * t)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Expression node. Children are shared [`ScalarField`]s.
#[derive(Debug, PartialEq)]
pub enum Node {
    Const(Rational),
    Var(Axis),
    Neg(ScalarField),
    Add(ScalarField, ScalarField),
    Sub(ScalarField, ScalarField),
    Mul(ScalarField, ScalarField),
    Div(ScalarField, ScalarField),
    /// Power with an exact rational exponent.
    Pow(ScalarField, Rational),
    Sqrt(ScalarField),
}

/// Smooth scalar function on (a domain of) R³, stored as an expression tree.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField(Arc<Node>);

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, when one exists.
pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

/// `q^e` for an integer exponent, `None` for `0^negative`.
pub(crate) fn rational_powi(q: &Rational, e: i64) -> Option<Rational> {
    if e < 0 && q.is_zero() {
        return None;
    }
    let mag = u32::try_from(e.unsigned_abs()).ok()?;
    let p = num_traits::pow(q.clone(), mag as usize);
    Some(if e < 0 { p.recip() } else { p })
}

impl ScalarField {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(q: Rational) -> Self {
        ScalarField(Arc::new(Node::Const(q)))
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn var(axis: Axis) -> Self {
        ScalarField(Arc::new(Node::Var(axis)))
    }

    pub fn x() -> Self {
        Self::var(Axis::X)
    }

    pub fn y() -> Self {
        Self::var(Axis::Y)
    }

    pub fn z() -> Self {
        Self::var(Axis::Z)
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    /// True only when the tree is literally the constant 0.
    pub fn is_zero_literal(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_one_literal(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    pub fn neg(e: &ScalarField) -> Self {
        match e.node() {
            Node::Const(q) => Self::constant(-q),
            Node::Neg(inner) => inner.clone(),
            _ => Self::negate_leading_constant(e).unwrap_or_else(|| ScalarField(Arc::new(Node::Neg(e.clone())))),
        }
    }

    /// `−e` for a product chain whose leftmost factor is a constant, by
    /// negating that constant.
    fn negate_leading_constant(e: &ScalarField) -> Option<Self> {
        match e.node() {
            Node::Mul(a, b) => match a.as_const() {
                Some(q) => Some(Self::mul(&Self::constant(-q), b)),
                None => Self::negate_leading_constant(a).map(|na| Self::mul(&na, b)),
            },
            _ => None,
        }
    }

    pub fn add(a: &ScalarField, b: &ScalarField) -> Self {
        match (a.node(), b.node()) {
            (Node::Const(p), Node::Const(q)) => Self::constant(p + q),
            _ if a.is_zero_literal() => b.clone(),
            _ if b.is_zero_literal() => a.clone(),
            (_, Node::Neg(inner)) => ScalarField(Arc::new(Node::Sub(a.clone(), inner.clone()))),
            _ => ScalarField(Arc::new(Node::Add(a.clone(), b.clone()))),
        }
    }

    pub fn sub(a: &ScalarField, b: &ScalarField) -> Self {
        match (a.node(), b.node()) {
            (Node::Const(p), Node::Const(q)) => Self::constant(p - q),
            _ if b.is_zero_literal() => a.clone(),
            _ if a.is_zero_literal() => Self::neg(b),
            (_, Node::Neg(inner)) => ScalarField(Arc::new(Node::Add(a.clone(), inner.clone()))),
            _ => ScalarField(Arc::new(Node::Sub(a.clone(), b.clone()))),
        }
    }

    pub fn mul(a: &ScalarField, b: &ScalarField) -> Self {
        match (a.node(), b.node()) {
            (Node::Const(p), Node::Const(q)) => Self::constant(p * q),
            _ if a.is_zero_literal() || b.is_zero_literal() => Self::zero(),
            _ if a.is_one_literal() => b.clone(),
            _ if b.is_one_literal() => a.clone(),
            (Node::Const(p), _) if *p == -Rational::one() => Self::neg(b),
            (_, Node::Const(q)) if *q == -Rational::one() => Self::neg(a),
            _ => ScalarField(Arc::new(Node::Mul(a.clone(), b.clone()))),
        }
    }

    pub fn div(a: &ScalarField, b: &ScalarField) -> Self {
        match (a.node(), b.node()) {
            (Node::Const(p), Node::Const(q)) if !q.is_zero() => Self::constant(p / q),
            _ if b.is_one_literal() => a.clone(),
            _ if a.is_zero_literal() && !b.is_zero_literal() => Self::zero(),
            _ => ScalarField(Arc::new(Node::Div(a.clone(), b.clone()))),
        }
    }

    pub fn pow(base: &ScalarField, exponent: Rational) -> Self {
        if exponent.is_zero() {
            return Self::one();
        }
        if exponent.is_one() {
            return base.clone();
        }
        match base.node() {
            Node::Const(q) => {
                if exponent.is_integer() {
                    if let Some(v) = exponent.to_integer().to_i64().and_then(|e| rational_powi(q, e)) {
                        return Self::constant(v);
                    }
                } else if *exponent.denom() == BigInt::from(2) {
                    if let Some(root) = rational_sqrt(q) {
                        if let Some(v) = exponent.numer().to_i64().and_then(|e| rational_powi(&root, e)) {
                            return Self::constant(v);
                        }
                    }
                }
            }
            Node::Pow(inner, a) if exponent.is_integer() => {
                return Self::pow(inner, a * &exponent);
            }
            Node::Sqrt(inner) if exponent.is_integer() => {
                return Self::pow(inner, exponent / int(2));
            }
            _ => {}
        }
        ScalarField(Arc::new(Node::Pow(base.clone(), exponent)))
    }

    pub fn powi(base: &ScalarField, n: i64) -> Self {
        Self::pow(base, int(n))
    }

    pub fn sqrt(e: &ScalarField) -> Self {
        if let Node::Const(q) = e.node() {
            if let Some(r) = rational_sqrt(q) {
                return Self::constant(r);
            }
        }
        ScalarField(Arc::new(Node::Sqrt(e.clone())))
    }

    /// Sum of any number of fields; the empty sum is 0.
    pub fn sum<'a, I: IntoIterator<Item = &'a ScalarField>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, t| Self::add(&acc, t))
    }

    pub fn scale(&self, q: Rational) -> Self {
        Self::mul(&Self::constant(q), self)
    }

    /// Number of nodes in the tree, counting shared subtrees once per use.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Var(_) => 0,
            Node::Neg(a) | Node::Pow(a, _) | Node::Sqrt(a) => a.size(),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.size() + b.size(),
        }
    }
}

impl From<i64> for ScalarField {
    fn from(n: i64) -> Self {
        ScalarField::integer(n)
    }
}

impl From<Axis> for ScalarField {
    fn from(a: Axis) -> Self {
        ScalarField::var(a)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $ctor:path) => {
        impl $tr<ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                $ctor(&self, &rhs)
            }
        }
        impl $tr<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                $ctor(&self, rhs)
            }
        }
        impl $tr<ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                $ctor(self, &rhs)
            }
        }
        impl $tr<&ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                $ctor(self, rhs)
            }
        }
    };
}

binop!(Add, add, ScalarField::add);
binop!(Sub, sub, ScalarField::sub);
binop!(Mul, mul, ScalarField::mul);
binop!(Div, div, ScalarField::div);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField::neg(&self)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField::neg(self)
    }
}
