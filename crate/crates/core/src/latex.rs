//! Deterministic LaTeX rendering of scalars and torus elements.
//!
//! Weyl monomials in two or more generators are wrapped as `[...]_{W}`;
//! single-generator monomials print bare. Terms are emitted in descending
//! exponent order, so emitting twice yields identical text.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::scalar::{coeff_abs_is_one, GroundScalar};
use crate::torus::TorusElement;

/// Render `name` as `base_{subscript}` when it ends with digits or quote
/// marks; a `:` splits an outer symbol from its subscript.
fn gen_to_latex(name: &str) -> String {
    if let Some((outer, inner)) = name.split_once(':') {
        return format!("{}_{{{}}}", gen_to_latex(outer), gen_to_latex(inner));
    }
    let base_len = name
        .find(|c: char| c.is_ascii_digit() || c == '\'' || c == '.')
        .unwrap_or(name.len());
    if base_len == 0 || base_len == name.len() {
        if let Some(stripped) = name.strip_suffix(".hat") {
            return format!("\\hat{{{}}}", gen_to_latex(stripped));
        }
        return name.to_string();
    }
    let (base, rest) = name.split_at(base_len);
    if let Some(stripped) = rest.strip_suffix(".hat") {
        format!("\\hat{{{}_{{{}}}}}", base, stripped)
    } else {
        format!("{}_{{{}}}", base, rest)
    }
}

fn half_power(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{}/2", doubled)
    }
}

/// One scalar term without its sign, e.g. `3 q^{1/2} v_{1}^{-1}`.
fn scalar_term(coeff: &BigInt, q2: i64, v2: &[i64], vars: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let abs = coeff.abs();
    let unit_monomial = q2 == 0 && v2.iter().all(|&x| x == 0);
    if !coeff_abs_is_one(coeff) || unit_monomial {
        parts.push(abs.to_string());
    }
    if q2 != 0 {
        parts.push(format!("q^{{{}}}", half_power(q2)));
    }
    for (i, &e) in v2.iter().enumerate() {
        if e != 0 {
            parts.push(format!("{}^{{{}}}", gen_to_latex(&vars[i]), half_power(e)));
        }
    }
    parts.join(" ")
}

pub fn scalar_to_latex(s: &GroundScalar) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let vars = s.vars().names();
    let mut out = String::new();
    // Descending exponent order.
    for (i, (key, coeff)) in s.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let negative = coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&scalar_term(coeff, key.q2, &key.v2, vars));
    }
    out
}

fn monomial_to_latex(exp: &[i64], gens: &[String]) -> String {
    let factors: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                gen_to_latex(&gens[i])
            } else {
                format!("{}^{{{}}}", gen_to_latex(&gens[i]), e)
            }
        })
        .collect();
    match factors.len() {
        0 => "1".to_string(),
        1 => factors.into_iter().next().expect("one factor"),
        _ => format!("[{}]_{{W}}", factors.join(" ")),
    }
}

pub fn torus_to_latex(a: &TorusElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let gens = a.form().gens();
    let mut out = String::new();
    for (i, (exp, coeff)) in a.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mono = monomial_to_latex(&exp.0, gens);
        if coeff.is_one() {
            out.push_str(&mono);
        } else {
            let c = scalar_to_latex(coeff);
            let wrapped = if coeff.num_terms() > 1 { format!("({c})") } else { c };
            if mono == "1" {
                out.push_str(&wrapped);
            } else {
                out.push_str(&format!("{wrapped} {mono}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::VarSet;
    use crate::torus::{AntisymForm, ExpVec};
    use std::sync::Arc;

    #[test]
    fn loop_trace_render() {
        let f = Arc::new(AntisymForm::commutative(vec!["u1"]));
        let vars = VarSet::empty();
        let a = TorusElement::basis(f.clone(), &vars, ExpVec(vec![2]))
            .add(&TorusElement::basis(f, &vars, ExpVec(vec![-2])))
            .unwrap();
        assert_eq!(torus_to_latex(&a), "u_{1}^{2} + u_{1}^{-2}");
    }

    #[test]
    fn weyl_bracket_render() {
        let f = Arc::new(AntisymForm::new(
            vec!["x1", "x2"],
            vec![vec![0, 1], vec![-1, 0]],
        )
        .unwrap());
        let vars = VarSet::empty();
        let m = TorusElement::basis(f, &vars, ExpVec(vec![1, 1]));
        assert_eq!(torus_to_latex(&m), "[x_{1} x_{2}]_{W}");
    }

    #[test]
    fn emission_is_stable() {
        let vars = VarSet::new(vec!["v1"]).unwrap();
        let s = GroundScalar::q_half(&vars, -1) + GroundScalar::v_half(&vars, 0, 1)
            - GroundScalar::int(&vars, 2);
        let once = scalar_to_latex(&s);
        let twice = scalar_to_latex(&s);
        assert_eq!(once, twice);
    }
}
