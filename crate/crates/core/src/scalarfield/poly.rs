//! Exact polynomial expansion.
//!
//! Coefficients live in the field generated over Q by square roots of
//! rationals ([`Surd`]), which is enough to expand the degree-2 solution
//! family with its `√(ab)` constants and decide identities exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, rational_powi, Axis, Node, Rational, ScalarField};

/// Radicands above this bound are not fully reduced to square-free form.
const FACTOR_LIMIT: u64 = 1_000_000;

/// Split `n` into `(s, r)` with `n = s²·r`. `r` is square-free whenever the
/// cofactor left after trial division is small enough to classify.
fn square_part(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut p: u64 = 2;
    while p <= FACTOR_LIMIT {
        let pp = BigUint::from(p * p);
        if pp > rest {
            break;
        }
        let bp = BigUint::from(p);
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &bp;
        }
        if (&rest % &bp).is_zero() {
            rest /= &bp;
            let (s, r) = square_part(&rest);
            return (square * s, r * bp);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest && rest > BigUint::one() {
        return (square * root, BigUint::one());
    }
    (square, rest)
}

/// Exact element of Q(√r₁, √r₂, …): a sum of rational multiples of square
/// roots of square-free positive integers. The key `1` holds the rational part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Surd(BTreeMap<BigUint, Rational>);

impl Surd {
    pub fn zero() -> Self {
        Surd(BTreeMap::new())
    }

    pub fn rational(q: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !q.is_zero() {
            m.insert(BigUint::one(), q);
        }
        Surd(m)
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `√q` for a nonnegative rational `q`.
    pub fn sqrt_of(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // √(n/d) = √(n·d)/d
        let nd = q.numer().magnitude() * q.denom().magnitude();
        let (s, r) = square_part(&nd);
        let coeff = Rational::new(BigInt::from(s), q.denom().clone());
        let mut m = BTreeMap::new();
        m.insert(r, coeff);
        Some(Surd(m))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The rational value, if there are no irrational parts.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.0.iter()
    }

    fn add_term(&mut self, radicand: BigUint, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.0.entry(radicand).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, q) in &other.0 {
            out.add_term(r.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Surd {
        Surd(self.0.iter().map(|(r, q)| (r.clone(), -q)).collect())
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (r1, q1) in &self.0 {
            for (r2, q2) in &other.0 {
                // √r1·√r2 = g·√((r1/g)(r2/g)) for square-free r1, r2
                let g = r1.gcd(r2);
                let radicand = (r1 / &g) * (r2 / &g);
                let coeff = q1 * q2 * Rational::from_integer(BigInt::from(g));
                out.add_term(radicand, coeff);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd(self.0.iter().map(|(r, c)| (r.clone(), c * q)).collect())
    }

    /// Multiplicative inverse for single-term values `q·√r`.
    pub fn inverse(&self) -> Option<Surd> {
        if self.0.len() != 1 {
            return None;
        }
        let (r, q) = self.0.iter().next()?;
        // 1/(q√r) = √r/(q·r)
        let denom = q * Rational::from_integer(BigInt::from(r.clone()));
        let mut m = BTreeMap::new();
        m.insert(r.clone(), denom.recip());
        Some(Surd(m))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.iter().map(|(r, q)| q.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt()).sum()
    }

    /// Least common multiple of the denominators of all parts.
    fn denominator_lcm(&self) -> BigInt {
        self.0.values().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn to_field(&self) -> ScalarField {
        let parts: Vec<ScalarField> = self
            .0
            .iter()
            .map(|(r, q)| {
                if r.is_one() {
                    ScalarField::constant(q.clone())
                } else {
                    let root = ScalarField::sqrt(&ScalarField::constant(Rational::from_integer(r.clone().into())));
                    ScalarField::constant(q.clone()) * root
                }
            })
            .collect();
        ScalarField::sum(&parts)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, q)) in self.0.iter().enumerate() {
            let negative = q.is_negative();
            if i > 0 {
                f.write_str(if negative { "-" } else { "+" })?;
            } else if negative {
                f.write_str("-")?;
            }
            let mag = q.abs();
            if r.is_one() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({r})")?;
            } else if mag.is_integer() {
                write!(f, "{}*sqrt({r})", mag.numer())?;
            } else {
                write!(f, "{}*sqrt({r})/{}", mag.numer(), mag.denom())?;
            }
        }
        Ok(())
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exponent vector `[deg_x, deg_y, deg_z]`.
pub type Monomial = [u32; 3];

/// Polynomial in x, y, z with [`Surd`] coefficients, kept in expanded form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial(BTreeMap<Monomial, Surd>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(BTreeMap::new())
    }

    pub fn constant(c: Surd) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Polynomial(m)
    }

    pub fn var(axis: Axis) -> Self {
        let mut e = [0; 3];
        e[axis.index()] = 1;
        Polynomial(BTreeMap::from([(e, Surd::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Surd)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Surd {
        self.0.get(&m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Surd> {
        match self.0.len() {
            0 => Some(Surd::zero()),
            1 => self.0.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Surd) {
        if c.is_zero() {
            return;
        }
        let sum = match self.0.get(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial(self.0.iter().map(|(m, c)| (*m, c.neg())).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                out.add_term(m, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Surd) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, k) in &self.0 {
            out.add_term(*m, k.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Surd::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, axis: Axis) -> Polynomial {
        let i = axis.index();
        let mut out = Polynomial::zero();
        for (m, c) in &self.0 {
            if m[i] == 0 {
                continue;
            }
            let mut lowered = *m;
            lowered[i] -= 1;
            out.add_term(lowered, c.scale(&int(i64::from(m[i]))));
        }
        out
    }

    /// Antiderivative of the closed 1-form `Σ wᵢ dxᵢ` along the segment from
    /// the origin: each monomial `m` of `wᵢ` contributes `xᵢ·m/(deg m + 1)`.
    pub fn segment_integral(components: &[Polynomial; 3]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, w) in components.iter().enumerate() {
            for (m, c) in &w.0 {
                let deg: u32 = m.iter().sum();
                let mut raised = *m;
                raised[i] += 1;
                out.add_term(raised, c.scale(&Rational::new(1.into(), BigInt::from(deg + 1))));
            }
        }
        out
    }

    pub fn evaluate(&self, p: &super::Point3) -> f64 {
        self.0
            .iter()
            .map(|(m, c)| c.to_f64() * p.x.powi(m[0] as i32) * p.y.powi(m[1] as i32) * p.z.powi(m[2] as i32))
            .sum()
    }

    /// Expand an expression tree. `None` when the tree is not a polynomial
    /// with square-root-of-rational coefficients (variable denominators,
    /// fractional powers of non-constants, irreducible constant divisors).
    pub fn from_field(f: &ScalarField) -> Option<Polynomial> {
        Some(match f.node() {
            Node::Const(q) => Polynomial::constant(Surd::rational(q.clone())),
            Node::Var(a) => Polynomial::var(*a),
            Node::Neg(a) => Polynomial::from_field(a)?.neg(),
            Node::Add(a, b) => Polynomial::from_field(a)?.add(&Polynomial::from_field(b)?),
            Node::Sub(a, b) => Polynomial::from_field(a)?.sub(&Polynomial::from_field(b)?),
            Node::Mul(a, b) => Polynomial::from_field(a)?.mul(&Polynomial::from_field(b)?),
            Node::Div(a, b) => {
                let num = Polynomial::from_field(a)?;
                let den = Polynomial::from_field(b)?.as_constant()?;
                num.scale(&den.inverse()?)
            }
            Node::Pow(a, e) => {
                let base = Polynomial::from_field(a)?;
                if e.is_integer() && !e.is_negative() {
                    base.pow(e.to_integer().to_u32()?)
                } else {
                    Polynomial::constant(constant_power(&base.as_constant()?.as_rational()?, e)?)
                }
            }
            Node::Sqrt(a) => {
                let q = Polynomial::from_field(a)?.as_constant()?.as_rational()?;
                Polynomial::constant(Surd::sqrt_of(&q)?)
            }
        })
    }

    /// Rebuild an expression tree in canonical term order.
    pub fn to_field(&self) -> ScalarField {
        let terms: Vec<ScalarField> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mut t = c.to_field();
                for axis in Axis::ALL {
                    let d = m[axis.index()];
                    if d > 0 {
                        t = t * ScalarField::powi(&ScalarField::var(axis), i64::from(d));
                    }
                }
                t
            })
            .collect();
        ScalarField::sum(&terms)
    }

    /// Terms sorted by descending total degree, then pure powers before mixed
    /// ones (descending sorted exponent profile), then descending exponent
    /// vector in (x, y, z) order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Surd)> {
        let mut v: Vec<_> = self.0.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            let key = |m: &Monomial| {
                let mut profile = *m;
                profile.sort_unstable_by(|p, q| q.cmp(p));
                (m.iter().sum::<u32>(), profile, *m)
            };
            key(b).cmp(&key(a))
        });
        v
    }

    /// Stable text form: expanded monomials in [`sorted_terms`](Self::sorted_terms)
    /// order. When rational parts carry denominators, their least common
    /// multiple is factored out as `(…)/d`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let lcm = self.0.values().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let factor = Rational::from_integer(lcm.clone());
        let terms = self.sorted_terms();
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let c = c.scale(&factor);
            let mono = monomial_string(m);
            let (negative, body) = coefficient_string(&c);
            if i > 0 {
                out.push(if negative { '-' } else { '+' });
            } else if negative {
                out.push('-');
            }
            match (body.as_str(), mono.is_empty()) {
                (b, true) => out.push_str(b),
                ("1", false) => out.push_str(&mono),
                (b, false) => {
                    let _ = write!(out, "{b}*{mono}");
                }
            }
        }
        if lcm.is_one() {
            out
        } else if terms.len() == 1 {
            format!("{out}/{lcm}")
        } else {
            format!("({out})/{lcm}")
        }
    }
}

fn constant_power(base: &Rational, e: &Rational) -> Option<Surd> {
    if e.is_integer() {
        return Some(Surd::rational(rational_powi(base, e.to_integer().to_i64()?)?));
    }
    if *e.denom() != BigInt::from(2) {
        return None;
    }
    // q^(n/2) = (√q)^n
    let root = Surd::sqrt_of(base)?;
    let n = e.numer().to_i64()?;
    let mut acc = Surd::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc.mul(&root);
    }
    if n < 0 {
        acc.inverse()
    } else {
        Some(acc)
    }
}

fn monomial_string(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for axis in Axis::ALL {
        match m[axis.index()] {
            0 => {}
            1 => parts.push(axis.name().to_string()),
            d => parts.push(format!("{}^{d}", axis.name())),
        }
    }
    parts.join("*")
}

/// Sign and magnitude text of a coefficient with integral parts.
fn coefficient_string(c: &Surd) -> (bool, String) {
    if c.terms().count() == 1 {
        let (r, q) = c.terms().next().expect("one term");
        let mag = q.abs();
        let body = if r.is_one() {
            fmt_rational(&mag)
        } else if mag.is_one() {
            format!("sqrt({r})")
        } else {
            format!("{}*sqrt({r})", fmt_rational(&mag))
        };
        (q.is_negative(), body)
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl ScalarField {
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        Polynomial::from_field(self)
    }

    /// Canonical text: expanded polynomial form when the field is a
    /// polynomial, otherwise the (locally simplified) tree itself.
    pub fn canonical_string(&self) -> String {
        match self.to_polynomial() {
            Some(p) => p.canonical_string(),
            None => self.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfield::parse;

    fn poly(s: &str) -> Polynomial {
        parse(s).unwrap().to_polynomial().unwrap()
    }

    #[test]
    fn binomial_identity_expands_to_zero() {
        assert!(poly("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
        assert!(!poly("(x+y)^2 - x^2 - y^2").is_zero());
    }

    #[test]
    fn surd_products_reduce() {
        // √6·√10 = 2√15
        let p = poly("sqrt(6)*sqrt(10) - 2*sqrt(15)");
        assert!(p.is_zero(), "{p}");
        assert!(poly("sqrt(8) - 2*sqrt(2)").is_zero());
        assert!(poly("sqrt(1/2) - sqrt(2)/2").is_zero());
        assert!(poly("sqrt(3)^2 - 3").is_zero());
        assert!(poly("(x*sqrt(2))^2 - 2*x^2").is_zero());
        assert!(poly("1/sqrt(2) - sqrt(2)/2").is_zero());
    }

    #[test]
    fn square_part_of_large_prime_square() {
        let p = BigUint::from(1_000_003u64);
        let (s, r) = square_part(&(&p * &p * BigUint::from(6u32)));
        assert_eq!(s, p);
        assert_eq!(r, BigUint::from(6u32));
    }

    #[test]
    fn non_polynomials_are_rejected() {
        for s in ["1/x", "sqrt(x)", "(x^2+1)^(1/2)", "x/(1+sqrt(2))", "sqrt(-1)"] {
            assert!(parse(s).unwrap().to_polynomial().is_none(), "{s}");
        }
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(poly("y^2 + x^2").canonical_string(), "x^2+y^2");
        assert_eq!(
            poly("2*x^2+2*y^2+2*z^2-2*x*y+2*x*z+2*y*z").canonical_string(),
            "2*x^2+2*y^2+2*z^2-2*x*y+2*x*z+2*y*z"
        );
        assert_eq!(poly("z*y*x").canonical_string(), "x*y*z");
        assert_eq!(poly("(z^2+y^2+x^2)/2").canonical_string(), "(x^2+y^2+z^2)/2");
        assert_eq!(poly("-x/3").canonical_string(), "-x/3");
        assert_eq!(poly("1 + x + x^2").canonical_string(), "x^2+x+1");
        assert_eq!(poly("2*sqrt(6)*x*y - x").canonical_string(), "2*sqrt(6)*x*y-x");
        assert_eq!(poly("x - x").canonical_string(), "0");
    }

    #[test]
    fn canonical_string_reparses() {
        for s in ["(x^2+y^2+z^2)/2", "2*sqrt(6)*x*y - x/3 + 5", "(1+sqrt(2))*x^3*z"] {
            let p = poly(s);
            let q = poly(&p.canonical_string());
            assert_eq!(p, q, "{s}");
        }
    }

    #[test]
    fn segment_integral_recovers_potential() {
        let f = poly("x*y*z + x^3 - 2*y^2*z + 7*z");
        let grad = [f.partial(Axis::X), f.partial(Axis::Y), f.partial(Axis::Z)];
        assert_eq!(Polynomial::segment_integral(&grad), f);
    }
}
