//! Fixture potentials shared by the benchmarks.

use riemann_poisson::geometry::{quadratic_family, so3_potential};
use riemann_poisson::{parse, ScalarField};

/// Source text of a degree-4 polynomial potential with every variable mixed.
pub const QUARTIC: &str = "3*x^4 - 2*x^2*y*z + y^3*z - 5*x*y^2*z + z^4/7 - x*z + 2";

pub fn quartic() -> ScalarField {
    parse(QUARTIC).expect("fixture parses")
}

/// Named potentials covering the polynomial, irrational-coefficient and
/// fractional-power code paths.
pub fn fixtures() -> Vec<(&'static str, ScalarField)> {
    vec![
        ("quartic", quartic()),
        ("family_2_3_5", quadratic_family(2.0, 3.0, 5.0).expect("valid parameters")),
        ("radial_cubic", so3_potential()),
    ]
}
