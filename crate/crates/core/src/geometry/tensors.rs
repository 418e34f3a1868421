use num_traits::{One, Zero};

use super::GeometryError;
use crate::scalarfield::{gradient, Axis, EvalError, Point3, Rational, ScalarField};

/// One-form `a₁ dx + a₂ dy + a₃ dz`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm(pub [ScalarField; 3]);

/// Vector field `v₁ ∂x + v₂ ∂y + v₃ ∂z`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField(pub [ScalarField; 3]);

macro_rules! triple_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(a: ScalarField, b: ScalarField, c: ScalarField) -> Self {
                $ty([a, b, c])
            }

            pub fn zero() -> Self {
                $ty([ScalarField::zero(), ScalarField::zero(), ScalarField::zero()])
            }

            pub fn component(&self, axis: Axis) -> &ScalarField {
                &self.0[axis.index()]
            }

            pub fn components(&self) -> &[ScalarField; 3] {
                &self.0
            }

            pub fn add(&self, other: &Self) -> Self {
                $ty(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
            }

            pub fn sub(&self, other: &Self) -> Self {
                $ty(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
            }

            /// Function-linear scaling `g·self`.
            pub fn scale(&self, g: &ScalarField) -> Self {
                $ty(std::array::from_fn(|i| g * &self.0[i]))
            }

            pub fn evaluate(&self, p: &Point3) -> Result<[f64; 3], EvalError> {
                Ok([self.0[0].evaluate(p)?, self.0[1].evaluate(p)?, self.0[2].evaluate(p)?])
            }
        }
    };
}

triple_impl!(OneForm);
triple_impl!(VectorField);

impl OneForm {
    /// The coordinate coframe element `dxᵢ`.
    pub fn coframe(axis: Axis) -> Self {
        let mut c = [ScalarField::zero(), ScalarField::zero(), ScalarField::zero()];
        c[axis.index()] = ScalarField::one();
        OneForm(c)
    }

    /// Exterior derivative `df`.
    pub fn exact(f: &ScalarField) -> Self {
        OneForm(gradient(f))
    }
}

/// Bivector `p12 ∂x∧∂y + p13 ∂x∧∂z + p23 ∂y∧∂z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    pub p12: ScalarField,
    pub p13: ScalarField,
    pub p23: ScalarField,
}

impl Bivector {
    pub fn new(p12: ScalarField, p13: ScalarField, p23: ScalarField) -> Self {
        Bivector { p12, p13, p23 }
    }

    pub fn zero() -> Self {
        Bivector::new(ScalarField::zero(), ScalarField::zero(), ScalarField::zero())
    }

    /// `π(dxᵢ, dxⱼ)` for 0-based indices, skew-symmetric.
    pub fn entry(&self, i: usize, j: usize) -> ScalarField {
        match (i, j) {
            (0, 1) => self.p12.clone(),
            (0, 2) => self.p13.clone(),
            (1, 2) => self.p23.clone(),
            (1, 0) => -&self.p12,
            (2, 0) => -&self.p13,
            (2, 1) => -&self.p23,
            _ => ScalarField::zero(),
        }
    }

    pub fn components(&self) -> [&ScalarField; 3] {
        [&self.p12, &self.p13, &self.p23]
    }

    pub fn scale(&self, g: &ScalarField) -> Self {
        Bivector::new(g * &self.p12, g * &self.p13, g * &self.p23)
    }

    pub fn sub(&self, other: &Bivector) -> Self {
        Bivector::new(&self.p12 - &other.p12, &self.p13 - &other.p13, &self.p23 - &other.p23)
    }

    pub fn evaluate(&self, p: &Point3) -> Result<[f64; 3], EvalError> {
        Ok([self.p12.evaluate(p)?, self.p13.evaluate(p)?, self.p23.evaluate(p)?])
    }
}

/// Accumulates terms `c · ∂a∧∂b` into the three independent components.
#[derive(Default)]
pub(crate) struct WedgeAccumulator {
    terms: [Vec<ScalarField>; 3],
}

impl WedgeAccumulator {
    fn slot(a: usize, b: usize) -> usize {
        match (a.min(b), a.max(b)) {
            (0, 1) => 0,
            (0, 2) => 1,
            (1, 2) => 2,
            _ => unreachable!("diagonal wedge"),
        }
    }

    pub(crate) fn push(&mut self, c: ScalarField, a: usize, b: usize) {
        if a == b || c.is_zero_literal() {
            return;
        }
        let c = if a < b { c } else { -c };
        self.terms[Self::slot(a, b)].push(c);
    }

    pub(crate) fn finish(self) -> Bivector {
        let [a, b, c] = self.terms.map(|t| ScalarField::sum(&t));
        Bivector::new(a, b, c)
    }
}

/// Trivector `c ∂x∧∂y∧∂z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trivector(pub ScalarField);

impl Trivector {
    pub fn coefficient(&self) -> &ScalarField {
        &self.0
    }
}

/// Constant Gram matrix `<dxᵢ, dxⱼ>` of a metric on the cotangent bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGram {
    gram: [[Rational; 3]; 3],
    inverse: [[Rational; 3]; 3],
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl MetricGram {
    /// The canonical metric: `<dxᵢ, dxⱼ> = δᵢⱼ`.
    pub fn canonical() -> Self {
        let id: [[Rational; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }));
        MetricGram { gram: id.clone(), inverse: id }
    }

    pub fn from_rows(gram: [[Rational; 3]; 3]) -> Result<Self, GeometryError> {
        if (0..3).any(|i| (0..3).any(|j| gram[i][j] != gram[j][i])) {
            return Err(GeometryError::BadMetric);
        }
        // Sylvester: leading principal minors positive
        let m1 = gram[0][0].clone();
        let m2 = &gram[0][0] * &gram[1][1] - &gram[0][1] * &gram[1][0];
        let det = det3(&gram);
        if m1 <= Rational::zero() || m2 <= Rational::zero() || det <= Rational::zero() {
            return Err(GeometryError::BadMetric);
        }
        let cof = |r: usize, c: usize| {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let minor =
                &gram[rows[0]][cols[0]] * &gram[rows[1]][cols[1]] - &gram[rows[0]][cols[1]] * &gram[rows[1]][cols[0]];
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let inverse = std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det));
        Ok(MetricGram { gram, inverse })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn is_canonical(&self) -> bool {
        *self == MetricGram::canonical()
    }

    /// `<α, β>` as a scalar field.
    pub fn inner(&self, a: &OneForm, b: &OneForm) -> ScalarField {
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let g = &self.gram[i][j];
                if g.is_zero() {
                    continue;
                }
                terms.push(ScalarField::constant(g.clone()) * &a.0[i] * &b.0[j]);
            }
        }
        ScalarField::sum(&terms)
    }

    /// Solve `G·c = r` for the one-form whose inner products with the
    /// coframe are `r`.
    pub fn raise(&self, r: [ScalarField; 3]) -> OneForm {
        OneForm(std::array::from_fn(|i| {
            let terms: Vec<_> = (0..3)
                .filter(|&j| !self.inverse[i][j].is_zero())
                .map(|j| ScalarField::constant(self.inverse[i][j].clone()) * &r[j])
                .collect();
            ScalarField::sum(&terms)
        }))
    }
}

/// Christoffel symbols `Γᵢⱼᵏ` of a contravariant connection on the
/// coordinate coframe: `D_{dxᵢ} dxⱼ = Σₖ Γᵢⱼᵏ dxₖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelTable {
    pub(crate) gamma: [[[ScalarField; 3]; 3]; 3],
}

impl ChristoffelTable {
    /// `Γᵢⱼᵏ` with 0-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &ScalarField {
        &self.gamma[i][j][k]
    }

    /// `D_{dxᵢ} dxⱼ` as a one-form.
    pub fn derivative(&self, i: usize, j: usize) -> OneForm {
        OneForm(self.gamma[i][j].clone())
    }

    /// The nine `(i, j)` pairs in the customary listing order
    /// 11, 12, 21, 13, 31, 22, 23, 32, 33 (0-based).
    pub const LISTING_ORDER: [(usize, usize); 9] =
        [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1), (1, 2), (2, 1), (2, 2)];

    /// All 27 entries as `((i, j, k), Γᵢⱼᵏ)`, 0-based, in listing order.
    pub fn entries(&self) -> Vec<((usize, usize, usize), &ScalarField)> {
        Self::LISTING_ORDER.iter().flat_map(|&(i, j)| (0..3).map(move |k| ((i, j, k), &self.gamma[i][j][k]))).collect()
    }
}
