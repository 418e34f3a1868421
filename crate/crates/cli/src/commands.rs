use riemann_poisson::geometry::{
    bivector_from_potential, christoffel_table, equation_e_residual, jacobiator, potential_from_bivector,
    quadratic_family, GeometryError, Potential,
};
use riemann_poisson::verify::{cross_check, run_suite, Report};
use riemann_poisson::{parse, Bivector, ChristoffelTable, ScalarField};
use serde_json::json;

use crate::args::{BivectorArgs, Cli, Command, Format};

type Outcome = Result<u8, String>;

/// Standard output of a command, written in one piece once it has finished.
#[derive(Default)]
pub struct Output(String);

impl Output {
    fn text(&mut self, args: std::fmt::Arguments<'_>) {
        use std::fmt::Write;
        self.0.write_fmt(args).expect("writing to a String");
    }

    fn line(&mut self, args: impl std::fmt::Display) {
        self.text(format_args!("{args}\n"));
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

pub fn run(cli: Cli, out: &mut Output) -> Outcome {
    match cli.command {
        Command::Verify { f, sampling, h, format } => {
            let field = parse_expr("--f", &f)?;
            let spec = sampling.to_spec()?;
            verify(out, &field, &spec, h, format)
        }
        Command::Christoffel { f, format } => christoffel(out, &parse_expr("--f", &f)?, format),
        Command::Family { a, b, c, format } => family(out, a, b, c, format),
        Command::Potential { a, b, c, bivector, sampling, format } => {
            let positional: Vec<String> = [a, b, c].into_iter().flatten().collect();
            let pi = bivector_input(&positional, &bivector)?;
            potential(out, &pi, &sampling.to_spec()?, format)
        }
        Command::Residual { f, format } => residual(out, &parse_expr("--f", &f)?, format),
        Command::Jacobi { f, bivector, format } => {
            let pi = match f {
                Some(f) => bivector_from_potential(&parse_expr("--f", &f)?),
                None => bivector_input(&[], &bivector)?,
            };
            jacobi(out, &pi, format)
        }
    }
}

/// Parse an expression, rendering failures with a caret under the offset.
fn parse_expr(label: &str, text: &str) -> Result<ScalarField, String> {
    parse(text).map_err(|e| {
        let caret = " ".repeat(text[..e.offset.min(text.len())].chars().count());
        format!("cannot parse {label}: {e}\n  {text}\n  {caret}^")
    })
}

fn bivector_input(positional: &[String], flags: &BivectorArgs) -> Result<Bivector, String> {
    let named = [&flags.p12, &flags.p13, &flags.p23];
    let texts: Vec<(&str, &str)> = match (positional.len(), named.iter().all(|p| p.is_some())) {
        (3, false) if named.iter().all(|p| p.is_none()) => {
            ["p12", "p13", "p23"].into_iter().zip(positional.iter().map(String::as_str)).collect()
        }
        (0, true) => ["--p12", "--p13", "--p23"]
            .into_iter()
            .zip(named.iter().map(|p| p.as_deref().unwrap_or_default()))
            .collect(),
        _ => return Err("expected the bivector as three positional expressions or as --p12, --p13 and --p23".into()),
    };
    let parsed = texts.iter().map(|(l, t)| parse_expr(l, t)).collect::<Result<Vec<_>, _>>()?;
    let [p12, p13, p23]: [ScalarField; 3] = parsed.try_into().expect("three components");
    Ok(Bivector::new(p12, p13, p23))
}

fn print_json(out: &mut Output, value: &serde_json::Value) {
    out.line(format_args!("{}", serde_json::to_string_pretty(value).expect("serialisable")));
}

fn verify(
    out: &mut Output,
    f: &ScalarField,
    spec: &riemann_poisson::SampleSpec,
    h: Option<f64>,
    format: Format,
) -> Outcome {
    if let Some(h) = h {
        if !(h > 0.0 && h.is_finite()) {
            return Err(format!("--h must be a positive step, got {h}"));
        }
    }
    let report = run_suite(f, spec).map_err(|e| e.to_string())?;
    match format {
        Format::Json => print_json(out, &serde_json::to_value(&report).expect("serialisable")),
        Format::Text => {
            print_report(out, &report);
            if let Some(h) = h {
                let c = cross_check(f, spec, h).map_err(|e| e.to_string())?;
                out.line(format_args!(
                    "oracle: h={h:e} max |symbolic - central difference| = {:.3e} (bound 10*h^2*scale = {:.3e}) {}",
                    c.max_error,
                    c.bound(),
                    if c.within_bound() { "ok" } else { "EXCEEDED" }
                ));
            }
        }
    }
    Ok(report.verdict.exit_code() as u8)
}

fn print_report(out: &mut Output, report: &Report) {
    let s = &report.spec;
    out.line(format_args!("potential: {}", report.potential));
    out.line(format_args!(
        "sampling: box [{}, {}]x[{}, {}]x[{}, {}], excluded radius {}, {} points, seed {}",
        s.lo[0], s.hi[0], s.lo[1], s.hi[1], s.lo[2], s.hi[2], s.excluded_radius, s.count, s.seed
    ));
    out.line(format_args!("tolerance: abs {:e} + rel {:e} * magnitude (engineering choice)", s.abs_tol, s.rel_tol));
    for c in &report.checks {
        let status = if c.is_inconclusive() {
            "inconclusive"
        } else if c.passed {
            "pass"
        } else {
            "FAIL"
        };
        out.text(format_args!(
            "  {:<11} max residual {:.3e}  threshold {:.3e}  points {:>5}  {status}",
            c.name, c.max_abs_residual, c.threshold, c.points_tested
        ));
        if c.domain_failures > 0 {
            out.text(format_args!("  ({} points outside the domain)", c.domain_failures));
        }
        out.line("");
    }
    out.line(format_args!("verdict: {}", report.verdict));
}

fn christoffel(out: &mut Output, f: &ScalarField, format: Format) -> Outcome {
    let table: ChristoffelTable = christoffel_table(f);
    let entries = table.entries();
    match format {
        Format::Json => print_json(
            out,
            &json!(entries
                .iter()
                .map(|((i, j, k), e)| json!({"i": i + 1, "j": j + 1, "k": k + 1, "expr": e.canonical_string()}))
                .collect::<Vec<_>>()),
        ),
        Format::Text => {
            for ((i, j, k), e) in entries {
                out.line(format_args!("Gamma_{}{}^{} = {}", i + 1, j + 1, k + 1, e.canonical_string()));
            }
        }
    }
    Ok(0)
}

fn family(out: &mut Output, a: f64, b: f64, c: f64, format: Format) -> Outcome {
    let f = quadratic_family(a, b, c).map_err(|e| e.to_string())?;
    let poly = f.to_polynomial().expect("family members are polynomials");
    let degenerate = poly.is_zero();
    let exact_zero = equation_e_residual(&f).0.iter().all(|r| r.to_polynomial().is_some_and(|p| p.is_zero()));
    let potential = f.canonical_string();
    match format {
        Format::Json => print_json(
            out,
            &json!({
                "params": [a, b, c],
                "potential": potential,
                "equation_E_exact_zero": exact_zero,
            }),
        ),
        Format::Text => {
            out.line(format_args!("{potential}"));
            let status = match (degenerate, exact_zero) {
                (true, _) => "degenerate (zero potential)",
                (false, true) => "pass (residual expands to the zero polynomial)",
                (false, false) => "FAIL (residual does not vanish)",
            };
            out.line(format_args!("equation_E: {status}"));
        }
    }
    Ok(match (degenerate, exact_zero) {
        (true, _) => 2,
        (false, true) => 0,
        (false, false) => 1,
    })
}

fn potential(out: &mut Output, pi: &Bivector, spec: &riemann_poisson::SampleSpec, format: Format) -> Outcome {
    match potential_from_bivector(pi, spec) {
        Ok(Potential::Symbolic(f)) => {
            let text = f.canonical_string();
            match format {
                Format::Json => print_json(out, &json!({"closed": true, "potential": text})),
                Format::Text => out.line(format_args!("{text}")),
            }
            Ok(0)
        }
        Ok(Potential::Quadrature(li)) => {
            let w = li.form.components().each_ref().map(|c| c.canonical_string());
            let text = format!("integral_0^1 w(t*p).p dt with w = ({}, {}, {})", w[0], w[1], w[2]);
            match format {
                Format::Json => print_json(out, &json!({"closed": true, "potential": text, "line_integral": w})),
                Format::Text => out.line(format_args!("{text}")),
            }
            Ok(0)
        }
        Err(GeometryError::NotClosed { residuals }) => {
            let r = residuals.each_ref().map(|c| c.canonical_string());
            match format {
                Format::Json => print_json(out, &json!({"closed": false, "residuals": r})),
                Format::Text => {
                    out.line(format_args!("not closed; divergence residuals:"));
                    for (label, text) in ["dp12/dy + dp13/dz", "dp12/dx - dp23/dz", "dp13/dx + dp23/dy"].iter().zip(&r)
                    {
                        out.line(format_args!("  {label} = {text}"));
                    }
                }
            }
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn residual(out: &mut Output, f: &ScalarField, format: Format) -> Outcome {
    let r = equation_e_residual(f).0.map(|c| c.canonical_string());
    match format {
        Format::Json => print_json(out, &json!({"dx": r[0], "dy": r[1], "dz": r[2]})),
        Format::Text => {
            for (axis, text) in ["dx", "dy", "dz"].iter().zip(&r) {
                out.line(format_args!("{axis}: {text}"));
            }
        }
    }
    Ok(0)
}

fn jacobi(out: &mut Output, pi: &Bivector, format: Format) -> Outcome {
    let text = jacobiator(pi).coefficient().canonical_string();
    match format {
        Format::Json => print_json(out, &json!({"jacobiator": text})),
        Format::Text => out.line(format_args!("{text}")),
    }
    Ok(0)
}
