use riemann_poisson::geometry::{quadratic_family, so3_potential};
use riemann_poisson::verify::run_suite;
use riemann_poisson::{parse, Report, SampleSpec, ScalarField, Verdict};

fn suite() -> Vec<ScalarField> {
    vec![
        quadratic_family(2.0, 3.0, 5.0).unwrap(),
        quadratic_family(0.5, 0.0, 1.5).unwrap(),
        so3_potential(),
        parse("(x^2+y^2+z^2)/2").unwrap(),
        parse("x^3*y - z^2").unwrap(),
        parse("x*y*z").unwrap(),
    ]
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let spec = SampleSpec::default().with_count(300);
    for f in suite() {
        let a = serde_json::to_string(&run_suite(&f, &spec).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(&f, &spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn more_points_never_turn_a_failure_into_a_pass() {
    for f in suite() {
        let small = run_suite(&f, &SampleSpec::default().with_count(50)).unwrap();
        let large = run_suite(&f, &SampleSpec::default().with_count(400)).unwrap();
        for (s, l) in small.checks.iter().zip(&large.checks) {
            assert!(l.max_abs_residual >= s.max_abs_residual, "{f}: {}", s.name);
            assert!(s.passed || !l.passed, "{f}: {} flipped to passing", s.name);
        }
    }
}

#[test]
fn compatible_verdicts_survive_fresh_seeds() {
    for f in suite() {
        if run_suite(&f, &SampleSpec::default()).unwrap().verdict != Verdict::Compatible {
            continue;
        }
        for seed in [1, 7, 1234, u64::MAX] {
            let r = run_suite(&f, &SampleSpec::default().with_seed(seed)).unwrap();
            assert_eq!(r.verdict, Verdict::Compatible, "{f} with seed {seed}");
        }
    }
}

#[test]
fn report_json_round_trips() {
    let r = run_suite(&so3_potential(), &SampleSpec::default().with_count(100)).unwrap();
    let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back.verdict, r.verdict);
    assert_eq!(back.spec, r.spec);
    assert_eq!(back.potential, r.potential);
    for (a, b) in back.checks.iter().zip(&r.checks) {
        assert_eq!((a.name.as_str(), a.points_tested, a.passed), (b.name.as_str(), b.points_tested, b.passed));
        assert_eq!(a.max_abs_residual, b.max_abs_residual);
    }
}
