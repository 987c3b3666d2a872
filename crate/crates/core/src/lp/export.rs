use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};

use super::{is_integral, LinearProgram, Rational, Relation, Sense};

fn number(v: &Rational) -> String {
    if is_integral(v) {
        v.numer().to_string()
    } else {
        // LP files have no fraction syntax
        format!("{:.17}", v.to_f64().unwrap_or(f64::NAN))
    }
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn linear(out: &mut String, coeffs: &[Rational], names: &[String]) {
    let mut first = true;
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        if !first || sign == "-" {
            out.push(' ');
        }
        out.push_str(sign);
        if !sign.is_empty() {
            out.push(' ');
        }
        if mag != Rational::from_integer(1.into()) {
            let _ = write!(out, "{} ", number(&mag));
        }
        out.push_str(name);
        first = false;
    }
    if first {
        out.push('0');
    }
}

/// Writes `lp` in CPLEX LP text format for cross-checking with external
/// solvers. Non-integral coefficients are printed as decimals.
pub fn write_lp_format(lp: &LinearProgram) -> String {
    let names: Vec<String> = lp.variables.iter().map(|v| sanitize(&v.name)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "\\ {}", lp.name);
    out.push_str(match lp.sense {
        Sense::Maximize => "Maximize\n",
        Sense::Minimize => "Minimize\n",
    });
    out.push_str(" obj: ");
    linear(&mut out, &lp.objective, &names);
    out.push_str("\nSubject To\n");
    for c in &lp.constraints {
        let _ = write!(out, " {}: ", sanitize(&c.name));
        linear(&mut out, &c.coeffs, &names);
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        let _ = writeln!(out, " {rel} {}", number(&c.rhs));
    }
    out.push_str("Bounds\n");
    for (v, name) in lp.variables.iter().zip(&names) {
        match (&v.lower, &v.upper) {
            (Some(l), Some(u)) => {
                let _ = writeln!(out, " {} <= {name} <= {}", number(l), number(u));
            }
            (Some(l), None) => {
                let _ = writeln!(out, " {name} >= {}", number(l));
            }
            (None, Some(u)) => {
                let _ = writeln!(out, " -inf <= {name} <= {}", number(u));
            }
            (None, None) => {
                let _ = writeln!(out, " {name} free");
            }
        }
    }
    let ints: Vec<&String> = lp
        .variables
        .iter()
        .zip(&names)
        .filter(|(v, _)| v.integer)
        .map(|(_, n)| n)
        .collect();
    if !ints.is_empty() {
        out.push_str("General\n");
        for n in ints {
            let _ = writeln!(out, " {n}");
        }
    }
    out.push_str("End\n");
    out
}
