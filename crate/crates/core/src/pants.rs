//! The quantum tori of the three DT pairs of pants and the closed-form
//! reduced traces of their strongly simple diagrams.
//!
//! Generators are `x_1..x_j` (boundary) and `u_1..u_j` (twist), with
//! `x_(i+1) x_i = q x_i x_(i+1)` (indices mod 3 on the type-3 face),
//! commuting `u`'s, and `u_i x_j = q^(delta_ij) x_j u_i`. Component traces
//! are stored in their tabulated closed forms; multicurve traces are
//! reflection-normalized ordered products.

use std::sync::Arc;

use crate::dt::{face_coord, Component, FaceCoord, FaceDiagram, FaceType, StdTag};
use crate::error::{Error, Result};
use crate::scalar::{GroundScalar, VarSet};
use crate::torus::{AntisymForm, DegreeFunctional, ExpVec, TorusElement};

/// The antisymmetric form of the pants torus: the cyclic x-block doubled by
/// the twist generators.
pub fn pants_form(face: FaceType) -> Arc<AntisymForm> {
    let j = face.bold();
    let x_names: Vec<String> = (1..=j).map(|i| format!("x{i}")).collect();
    let u_names: Vec<String> = (1..=j).map(|i| format!("u{i}")).collect();
    let mut mat = vec![vec![0i64; j]; j];
    match face {
        FaceType::P3 => {
            // x_(i+1) x_i = q x_i x_(i+1), indices mod 3.
            for i in 0..3 {
                let next = (i + 1) % 3;
                mat[next][i] = 1;
                mat[i][next] = -1;
            }
        }
        FaceType::P2 => {
            mat[1][0] = 1;
            mat[0][1] = -1;
        }
        FaceType::P1 => {}
    }
    let x_block = AntisymForm::new(x_names, mat).expect("antisymmetric");
    Arc::new(x_block.symplectic_double(u_names).expect("matching rank"))
}

/// The three-component degree functional ordering the pants torus basis.
pub fn pants_degree(face: FaceType) -> DegreeFunctional {
    let j = face.bold();
    let ones_n: Vec<i64> = std::iter::repeat_n(1, j)
        .chain(std::iter::repeat_n(0, j))
        .collect();
    let ones_t: Vec<i64> = std::iter::repeat_n(0, j)
        .chain(std::iter::repeat_n(1, j))
        .collect();
    let third: Vec<i64> = match face {
        // Only the type-2 face needs a third coordinate: the first twist.
        FaceType::P2 => vec![0, 0, 1, 0],
        _ => vec![0; 2 * j],
    };
    DegreeFunctional::new(vec![ones_n, ones_t, third])
}

/// Exponent vector `(n, t)` of the monomial `x^n u^t` on a pants torus.
fn y_exp(face: FaceType, n: &[i64], t: &[i64]) -> ExpVec {
    let j = face.bold();
    debug_assert_eq!(n.len(), j);
    debug_assert_eq!(t.len(), j);
    let mut v = Vec::with_capacity(2 * j);
    v.extend_from_slice(n);
    v.extend_from_slice(t);
    ExpVec(v)
}

fn y_monomial(face: FaceType, form: &Arc<AntisymForm>, n: &[i64], t: &[i64]) -> TorusElement {
    TorusElement::basis(form.clone(), &VarSet::empty(), y_exp(face, n, t))
}

/// The tabulated trace of a single twisted standard curve. `twists` records
/// the power of each boundary twist applied to the component; twists on
/// sides the curve misses act trivially.
pub fn trace_component_twisted(
    face: FaceType,
    tag: StdTag,
    twists: &[i64],
) -> Result<TorusElement> {
    if !tag.legal(face) {
        return Err(Error::IllegalTag(tag.name(), face.type_number()));
    }
    let j = face.bold();
    if twists.len() != j {
        return Err(Error::BadInput(format!(
            "need {j} twist entries for face type {}",
            face.type_number()
        )));
    }
    let form = pants_form(face);
    let n = tag.n_vec(face);
    // Twists on zero-intersection sides are silent.
    let m: Vec<i64> = (0..j)
        .map(|i| if n[i] > 0 { twists[i] } else { 0 })
        .collect();
    let zeros = vec![0i64; j];
    let one_at = |i: usize, v: i64| -> Vec<i64> {
        let mut out = vec![0i64; j];
        out[i] = v;
        out
    };
    let elt = match (face, tag) {
        // Near-boundary loop: u_i^2 + u_i^(-2).
        (_, StdTag::Loop(i)) => {
            let a = y_monomial(face, &form, &zeros, &one_at(i - 1, 2));
            let b = y_monomial(face, &form, &zeros, &one_at(i - 1, -2));
            a.add(&b)?
        }
        // Type 3 straight arc: [u_a^(2m_a) u_b^(2m_b) x_a x_b]_Weyl.
        (FaceType::P3, StdTag::Arc(a, b)) if a != b => {
            let mut nn = vec![0i64; 3];
            nn[a - 1] = 1;
            nn[b - 1] = 1;
            let mut tt = vec![0i64; 3];
            tt[a - 1] = 2 * m[a - 1];
            tt[b - 1] = 2 * m[b - 1];
            y_monomial(face, &form, &nn, &tt)
        }
        // Type 3 return arc:
        // [u_a^(2m) u_(a+1)^2 x_a^2] + [u_a^(2m+2) u_(a+2)^(-2) x_a^2].
        (FaceType::P3, StdTag::Arc(a, _)) => {
            let ma = m[a - 1];
            let nn = one_at(a - 1, 2);
            let mut t1 = one_at(a - 1, 2 * ma);
            t1[a % 3] += 2;
            let mut t2 = one_at(a - 1, 2 * ma + 2);
            t2[(a + 1) % 3] += -2;
            y_monomial(face, &form, &nn, &t1).add(&y_monomial(face, &form, &nn, &t2))?
        }
        // Type 2 arc between the bold sides.
        (FaceType::P2, StdTag::Arc(1, 2)) => {
            let nn = vec![1, 1];
            let tt = vec![2 * m[0], 2 * m[1]];
            y_monomial(face, &form, &nn, &tt)
        }
        // Type 2 arc from side 1 to the dashed side:
        // [u_1^(2m) x_1] + [u_1^(2m-2) u_2^2 x_1].
        (FaceType::P2, StdTag::Arc(1, 3)) => {
            let nn = vec![1, 0];
            let a = y_monomial(face, &form, &nn, &[2 * m[0], 0]);
            let b = y_monomial(face, &form, &nn, &[2 * m[0] - 2, 2]);
            a.add(&b)?
        }
        // Type 2 arc from side 2 to the dashed side: [u_2^(2m) x_2].
        (FaceType::P2, StdTag::Arc(2, 3)) => {
            y_monomial(face, &form, &[0, 1], &[0, 2 * m[1]])
        }
        // Type 2 return arc on side 1: three terms, the middle one carrying
        // the q + q^(-1) coefficient.
        (FaceType::P2, StdTag::Arc(1, 1)) => {
            let nn = vec![2, 0];
            let ma = m[0];
            let a = y_monomial(face, &form, &nn, &[2 * ma + 2, 0]);
            let b = y_monomial(face, &form, &nn, &[2 * ma - 2, 4]);
            let c = y_monomial(face, &form, &nn, &[2 * ma, 2])
                .scalar_mul(&GroundScalar::q_plus_qinv(&VarSet::empty()))?;
            a.add(&b)?.add(&c)?
        }
        // Type 2 return arc on side 2: [u_2^(2m) x_2^2].
        (FaceType::P2, StdTag::Arc(2, 2)) => {
            y_monomial(face, &form, &[0, 2], &[0, 2 * m[1]])
        }
        // Type 1 arc between the dashed sides: u_1 + u_1^(-1).
        (FaceType::P1, StdTag::Arc(2, 3)) => {
            let a = y_monomial(face, &form, &[0], &[1]);
            let b = y_monomial(face, &form, &[0], &[-1]);
            a.add(&b)?
        }
        // Type 1 arcs meeting the bold side once.
        (FaceType::P1, StdTag::Arc(1, 2)) => y_monomial(face, &form, &[1], &[2 * m[0]]),
        (FaceType::P1, StdTag::Arc(1, 3)) => y_monomial(face, &form, &[1], &[2 * m[0] - 1]),
        // Type 1 return arc: [u_1^(2m) x_1^2].
        (FaceType::P1, StdTag::Arc(1, 1)) => y_monomial(face, &form, &[2], &[2 * m[0]]),
        _ => return Err(Error::IllegalTag(tag.name(), face.type_number())),
    };
    Ok(elt)
}

/// The tabulated trace with a single twist parameter on the component's own
/// boundary (the first side it meets).
pub fn trace_component(face: FaceType, tag: StdTag, m: i64) -> Result<TorusElement> {
    let j = face.bold();
    let n = tag.n_vec(face);
    let mut twists = vec![0i64; j];
    if let Some(i) = (0..j).find(|&i| n[i] > 0) {
        twists[i] = m;
    }
    trace_component_twisted(face, tag, &twists)
}

/// Verify the three-term twist recursion
/// `q^k T(m+2) - (u_i^2 + u_i^(-2)) T(m+1) + q^(-k) T(m) = 0`
/// on the tabulated traces, where `T(m)` twists the tag by `theta_i^m` and
/// `k` is the given intersection number with side `i`.
pub fn trace_recursion_check(
    face: FaceType,
    tag: StdTag,
    i: usize,
    m: i64,
    k: i64,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroIntersection(i));
    }
    let j = face.bold();
    if i < 1 || i > j {
        return Err(Error::BadInput(format!("twist index {i} out of range")));
    }
    let form = pants_form(face);
    let vars = VarSet::empty();
    let tr_at = |mm: i64| -> Result<TorusElement> {
        let mut twists = vec![0i64; j];
        twists[i - 1] = mm;
        trace_component_twisted(face, tag, &twists)
    };
    let loop_elt = {
        let mut plus = vec![0i64; 2 * j];
        plus[j + i - 1] = 2;
        let mut minus = vec![0i64; 2 * j];
        minus[j + i - 1] = -2;
        TorusElement::basis(form.clone(), &vars, ExpVec(plus))
            .add(&TorusElement::basis(form, &vars, ExpVec(minus)))?
    };
    let lhs = tr_at(m + 2)?
        .mul_q_half(2 * k)
        .sub(&loop_elt.mul(&tr_at(m + 1)?)?)?
        .add(&tr_at(m)?.mul_q_half(-2 * k))?;
    Ok(lhs.is_zero())
}

/// Canonical ordering for multicurve products: loops before arcs, then by
/// tag and twist record. The output is order-independent anyway; a fixed
/// order makes failures reproducible.
fn sorted_components(d: &FaceDiagram) -> Vec<Component> {
    let mut comps = d.components.clone();
    comps.sort();
    comps
}

/// The reflection-normalized trace of a face diagram: the normalized ordered
/// product of its component traces.
pub fn trace_multicurve(d: &FaceDiagram) -> Result<TorusElement> {
    let form = pants_form(d.face);
    let vars = VarSet::empty();
    let mut acc = TorusElement::one(form, &vars);
    for comp in sorted_components(d) {
        let t = trace_component_twisted(d.face, comp.tag, &comp.twists)?;
        acc = acc.mul(&t)?;
    }
    acc.reflection_normalize()
}

/// The boundary-grading property: every term of the trace has `x_i`-degree
/// equal to the diagram's intersection number with side `i`.
pub fn boundary_grading_check(d: &FaceDiagram) -> Result<bool> {
    let tr = trace_multicurve(d)?;
    for i in 1..=d.face.bold() {
        let expected = d.n_at(i);
        match tr.uniform_degree(i - 1) {
            Some(deg) if deg == expected => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// The highest-term property: the degree-maximal part of the trace is the
/// single monomial with exponent equal to the diagram's coordinate vector
/// and coefficient exactly 1.
pub fn highest_term_check(d: &FaceDiagram) -> Result<bool> {
    let tr = trace_multicurve(d)?;
    let coord = face_coord(d)?;
    let deg = pants_degree(d.face);
    match tr.lead_single(&deg)? {
        Some((exp, coeff)) => {
            Ok(exp == y_exp(d.face, &coord.n, &coord.t) && coeff.is_one())
        }
        None => Ok(false),
    }
}

/// The twist property: `tr([theta_i(alpha)]) = q^(-k) u_i^2 tr([alpha])`
/// where `k` is the diagram's intersection number with side `i`.
pub fn twist_property_check(d: &FaceDiagram, i: usize) -> Result<bool> {
    let k = d.n_at(i);
    if k == 0 {
        return Err(Error::ZeroIntersection(i));
    }
    let j = d.face.bold();
    let form = pants_form(d.face);
    let vars = VarSet::empty();
    let lhs = trace_multicurve(&d.twist(i, 1))?;
    let mut usq = vec![0i64; 2 * j];
    usq[j + i - 1] = 2;
    let rhs = TorusElement::basis(form, &vars, ExpVec(usq))
        .mul(&trace_multicurve(d)?)?
        .mul_q_half(-2 * k);
    Ok(lhs == rhs)
}

/// The coordinate vector of a face diagram as a pants-torus exponent.
pub fn coord_exponent(c: &FaceCoord) -> ExpVec {
    y_exp(c.face, &c.n, &c.t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dt::Component;

    fn plain(face: FaceType, tag: StdTag) -> FaceDiagram {
        FaceDiagram::new(face, vec![Component::plain(tag, face)]).unwrap()
    }

    #[test]
    fn pants_form_relations() {
        // u_i x_j = q^(delta_ij) x_j u_i and the cyclic x relations.
        let f3 = pants_form(FaceType::P3);
        assert_eq!(f3.rank(), 6);
        for i in 0..3 {
            for jj in 0..3 {
                assert_eq!(f3.entry(3 + i, jj), i64::from(i == jj));
            }
            // u's commute.
            for jj in 0..3 {
                assert_eq!(f3.entry(3 + i, 3 + jj), 0);
            }
        }
        // x_2 x_1 = q x_1 x_2 etc.
        assert_eq!(f3.entry(1, 0), 1);
        assert_eq!(f3.entry(2, 1), 1);
        assert_eq!(f3.entry(0, 2), 1);

        let f1 = pants_form(FaceType::P1);
        assert_eq!(f1.entry(1, 0), 1); // u_1 x_1 = q x_1 u_1
    }

    #[test]
    fn loop_trace() {
        let tr = trace_component(FaceType::P3, StdTag::Loop(2), 0).unwrap();
        assert_eq!(tr.num_terms(), 2);
        let exps: Vec<_> = tr.terms().map(|(k, _)| k.clone()).collect();
        assert!(exps.contains(&ExpVec(vec![0, 0, 0, 0, 2, 0])));
        assert!(exps.contains(&ExpVec(vec![0, 0, 0, 0, -2, 0])));
    }

    #[test]
    fn p2_a13_at_zero() {
        // [x_1] + [u_1^(-2) u_2^2 x_1].
        let tr = trace_component(FaceType::P2, StdTag::Arc(1, 3), 0).unwrap();
        assert_eq!(tr.num_terms(), 2);
        assert!(tr.coeff(&ExpVec(vec![1, 0, 0, 0])).is_some_and(|c| c.is_one()));
        assert!(tr.coeff(&ExpVec(vec![1, 0, -2, 2])).is_some_and(|c| c.is_one()));
    }

    #[test]
    fn p1_a12_twisted() {
        let tr = trace_component(FaceType::P1, StdTag::Arc(1, 2), 2).unwrap();
        assert_eq!(tr.num_terms(), 1);
        assert!(tr.coeff(&ExpVec(vec![1, 4])).is_some_and(|c| c.is_one()));
    }

    #[test]
    fn traces_are_reflection_invariant() {
        for (face, tags) in [
            (
                FaceType::P3,
                vec![
                    StdTag::Loop(1),
                    StdTag::Loop(2),
                    StdTag::Loop(3),
                    StdTag::Arc(1, 2),
                    StdTag::Arc(1, 3),
                    StdTag::Arc(2, 3),
                    StdTag::Arc(1, 1),
                    StdTag::Arc(2, 2),
                    StdTag::Arc(3, 3),
                ],
            ),
            (
                FaceType::P2,
                vec![
                    StdTag::Loop(1),
                    StdTag::Loop(2),
                    StdTag::Arc(1, 2),
                    StdTag::Arc(1, 3),
                    StdTag::Arc(2, 3),
                    StdTag::Arc(1, 1),
                    StdTag::Arc(2, 2),
                ],
            ),
            (
                FaceType::P1,
                vec![
                    StdTag::Loop(1),
                    StdTag::Arc(1, 1),
                    StdTag::Arc(1, 2),
                    StdTag::Arc(1, 3),
                    StdTag::Arc(2, 3),
                ],
            ),
        ] {
            for tag in tags {
                for m in -2..=2 {
                    let tr = trace_component(face, tag, m).unwrap();
                    assert_eq!(tr.reflection(), tr, "{face:?} {} m={m}", tag.name());
                }
            }
        }
    }

    #[test]
    fn recursion_spot_checks() {
        assert!(trace_recursion_check(FaceType::P3, StdTag::Arc(1, 2), 1, 0, 1).unwrap());
        assert!(trace_recursion_check(FaceType::P2, StdTag::Arc(1, 1), 1, -1, 2).unwrap());
        assert!(trace_recursion_check(FaceType::P1, StdTag::Arc(1, 3), 1, 3, 1).unwrap());
        // Wrong k is a negative control.
        assert!(!trace_recursion_check(FaceType::P3, StdTag::Arc(1, 2), 1, 0, 2).unwrap());
        assert!(matches!(
            trace_recursion_check(FaceType::P3, StdTag::Loop(1), 1, 0, 0),
            Err(Error::ZeroIntersection(1))
        ));
    }

    #[test]
    fn multicurve_commuting_loops() {
        let d = FaceDiagram::new(
            FaceType::P3,
            vec![
                Component::plain(StdTag::Loop(1), FaceType::P3),
                Component::plain(StdTag::Loop(2), FaceType::P3),
            ],
        )
        .unwrap();
        let tr = trace_multicurve(&d).unwrap();
        let l1 = trace_component(FaceType::P3, StdTag::Loop(1), 0).unwrap();
        let l2 = trace_component(FaceType::P3, StdTag::Loop(2), 0).unwrap();
        assert_eq!(tr, l1.mul(&l2).unwrap());
    }

    #[test]
    fn multicurve_order_independence() {
        // The normalized product of a_12 and a_23 is the same in either
        // order (each order is computed directly, not via sorting).
        let face = FaceType::P3;
        let a = trace_component(face, StdTag::Arc(1, 2), 0).unwrap();
        let b = trace_component(face, StdTag::Arc(2, 3), 0).unwrap();
        let ab = a.mul(&b).unwrap().reflection_normalize().unwrap();
        let ba = b.mul(&a).unwrap().reflection_normalize().unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn highest_term_examples() {
        // Type 3 return arc: lead exponent (2,0,0,0,2,0).
        let d = plain(FaceType::P3, StdTag::Arc(1, 1));
        let tr = trace_multicurve(&d).unwrap();
        let deg = pants_degree(FaceType::P3);
        let (exp, c) = tr.lead_single(&deg).unwrap().unwrap();
        assert_eq!(exp, ExpVec(vec![2, 0, 0, 0, 2, 0]));
        assert!(c.is_one());
        assert!(highest_term_check(&d).unwrap());

        // Type 2 twisted return arc: lead exponent (2,0,4,0).
        let d = FaceDiagram::new(
            FaceType::P2,
            vec![Component::twisted(StdTag::Arc(1, 1), FaceType::P2, vec![1, 0])],
        )
        .unwrap();
        let (exp, c) = trace_multicurve(&d)
            .unwrap()
            .lead_single(&pants_degree(FaceType::P2))
            .unwrap()
            .unwrap();
        assert_eq!(exp, ExpVec(vec![2, 0, 4, 0]));
        assert!(c.is_one());

        // Type 1 arc to a dashed side: lead exponent (1,-1).
        let d = plain(FaceType::P1, StdTag::Arc(1, 3));
        let (exp, _) = trace_multicurve(&d)
            .unwrap()
            .lead_single(&pants_degree(FaceType::P1))
            .unwrap()
            .unwrap();
        assert_eq!(exp, ExpVec(vec![1, -1]));
        assert!(highest_term_check(&d).unwrap());
    }

    #[test]
    fn twist_property_examples() {
        assert!(twist_property_check(&plain(FaceType::P3, StdTag::Arc(1, 2)), 1).unwrap());
        assert!(twist_property_check(&plain(FaceType::P1, StdTag::Arc(1, 1)), 1).unwrap());
        let multi = FaceDiagram::new(
            FaceType::P3,
            vec![
                Component::plain(StdTag::Arc(1, 2), FaceType::P3),
                Component::plain(StdTag::Loop(3), FaceType::P3),
            ],
        )
        .unwrap();
        assert!(twist_property_check(&multi, 1).unwrap());
        assert!(matches!(
            twist_property_check(&plain(FaceType::P3, StdTag::Loop(1)), 1),
            Err(Error::ZeroIntersection(1))
        ));
    }

    #[test]
    fn boundary_grading() {
        let d = FaceDiagram::new(
            FaceType::P2,
            vec![
                Component::plain(StdTag::Arc(1, 2), FaceType::P2),
                Component::plain(StdTag::Arc(1, 1), FaceType::P2),
            ],
        )
        .unwrap();
        assert!(boundary_grading_check(&d).unwrap());
    }
}
