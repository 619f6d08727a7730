//! Finitely presented algebras realized through normal forms: the 1-marked
//! monogon, the exceptional small surfaces, and the half-variable rescaling
//! between the two skein flavors.
//!
//! The monogon algebra is `Z_q<u+, u-> / (q u+ u- - q^(-1) u- u+ = q - q^(-1))`
//! with PBW basis `u+^a u-^b`. Multiplication repeatedly rewrites
//! `u- u+ -> q^2 u+ u- - (q^2 - 1)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{GroundScalar, VarSet};
use crate::torus::{AntisymForm, ExpVec, TorusElement};

// --- 1-marked monogon --------------------------------------------------------

/// An element of the monogon skein algebra in the normal form basis
/// `u+^a u-^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonogonElement {
    terms: BTreeMap<(u32, u32), GroundScalar>,
}

impl MonogonElement {
    pub fn zero() -> Self {
        MonogonElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::basis(0, 0)
    }

    /// The basis monomial `u+^a u-^b`.
    pub fn basis(a: u32, b: u32) -> Self {
        Self::monomial(a, b, GroundScalar::one(&VarSet::empty()))
    }

    pub fn monomial(a: u32, b: u32, coeff: GroundScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((a, b), coeff);
        }
        MonogonElement { terms }
    }

    pub fn u_plus() -> Self {
        Self::basis(1, 0)
    }

    pub fn u_minus() -> Self {
        Self::basis(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GroundScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms
                .entry(*k)
                .or_insert_with(|| GroundScalar::zero(&VarSet::empty()));
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        MonogonElement { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        MonogonElement { terms }
    }

    pub fn scalar_mul(&self, c: &GroundScalar) -> Self {
        let mut out = MonogonElement::zero();
        for (k, a) in &self.terms {
            out.accumulate(*k, a * c);
        }
        out
    }

    fn accumulate(&mut self, key: (u32, u32), coeff: GroundScalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| GroundScalar::zero(&VarSet::empty()));
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Product in normal form.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MonogonElement::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                let basis_prod = mul_basis(*a, *b, *x, *y);
                out = out.add(&basis_prod.scalar_mul(&(c * d)));
            }
        }
        out
    }

    /// The reduced trace into the commutative 1-generator torus:
    /// `u+ -> x`, `u- -> x^(-1)`.
    pub fn reduced_trace(&self) -> TorusElement {
        let form = monogon_trace_form();
        let vars = VarSet::empty();
        let mut out = TorusElement::zero(form.clone(), &vars);
        for ((a, b), c) in &self.terms {
            let exp = ExpVec(vec![i64::from(*a) - i64::from(*b)]);
            out = out
                .add(&TorusElement::monomial(form.clone(), exp, c.clone()))
                .expect("same form");
        }
        out
    }
}

fn monogon_trace_form() -> Arc<AntisymForm> {
    Arc::new(AntisymForm::commutative(vec!["x"]))
}

/// `(u+^a u-^b)(u+^x u-^y)` in normal form, by rewriting
/// `u- u+ -> q^2 u+ u- - (q^2 - 1)` until sorted.
fn mul_basis(a: u32, b: u32, x: u32, y: u32) -> MonogonElement {
    if b == 0 || x == 0 {
        return MonogonElement::basis(a + x, b + y);
    }
    // u-^b u+^x = u-^(b-1) (u- u+) u+^(x-1)
    //           = q^2 u-^(b-1) u+ u- u+^(x-1) - (q^2-1) u-^(b-1) u+^(x-1)
    let vars = VarSet::empty();
    let q2 = GroundScalar::q_half(&vars, 4); // q^2
    let q2m1 = GroundScalar::q_half(&vars, 4) - GroundScalar::one(&vars); // q^2 - 1
    let swap = mul_basis(1, 1, x - 1, y); // u+ (u- u+^(x-1) u-^y)
    let inner = mul_basis(0, b - 1, 0, 0); // u-^(b-1)
    let term1 = prepend_uplus_power(a, &inner.mul(&swap)).scalar_mul(&q2);
    let drop = mul_basis(0, b - 1, x - 1, y);
    let term2 = prepend_uplus_power(a, &drop).scalar_mul(&q2m1);
    term1.sub(&term2)
}

/// Left-multiply by `u+^a`: shifts the first normal-form exponent.
fn prepend_uplus_power(a: u32, e: &MonogonElement) -> MonogonElement {
    let mut out = MonogonElement::zero();
    for ((x, y), c) in &e.terms {
        out.accumulate((x + a, *y), c.clone());
    }
    out
}

/// The defining relation `q u+ u- - q^(-1) u- u+ - (q - q^(-1))`, which must
/// normalize to zero.
pub fn monogon_relation() -> MonogonElement {
    let vars = VarSet::empty();
    let q = GroundScalar::q_half(&vars, 2);
    let qinv = GroundScalar::q_half(&vars, -2);
    let lhs = MonogonElement::u_plus()
        .mul(&MonogonElement::u_minus())
        .scalar_mul(&q)
        .sub(
            &MonogonElement::u_minus()
                .mul(&MonogonElement::u_plus())
                .scalar_mul(&qinv),
        );
    lhs.sub(&MonogonElement::monomial(
        0,
        0,
        GroundScalar::q_minus_qinv(&vars),
    ))
}

/// The bad arc `b(2,1) = q^(1/2) (u+ u- - 1)`.
pub fn monogon_bad_arc() -> MonogonElement {
    let vars = VarSet::empty();
    MonogonElement::u_plus()
        .mul(&MonogonElement::u_minus())
        .sub(&MonogonElement::one())
        .scalar_mul(&GroundScalar::q_half(&vars, 1))
}

/// Rank of the k-th filtration level in the diagram basis, counted by
/// enumerating the normal-form monomials it is spanned by (total degree
/// strictly below k): this count equals k(k+1)/2.
pub fn monogon_filtration_rank(k: u32) -> u64 {
    let mut count = 0u64;
    for a in 0..k {
        for b in 0..k {
            if a + b < k {
                count += 1;
            }
        }
    }
    count
}

// --- Sigma_{0,3} --------------------------------------------------------------

/// Which index convention is used in the three-puncture sphere relation
/// `v_? a_i a_(i+1) = delta a_(i+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma03Convention {
    /// `v_(i+1) a_i a_(i+1) = delta a_(i+2)`.
    VNext,
    /// `v_(i+2) a_i a_(i+1) = delta a_(i+2)`.
    VNextNext,
}

/// An element of the three-puncture sphere algebra in the basis
/// `{1, a1, a2, a3}` over `Z_q[v1, v2, v3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma03Element {
    /// Coefficients of 1, a1, a2, a3 in order.
    pub coeffs: [GroundScalar; 4],
}

pub fn sigma03_vars() -> VarSet {
    VarSet::new(vec!["v1", "v2", "v3"]).expect("distinct")
}

impl Sigma03Element {
    pub fn zero() -> Self {
        let vars = sigma03_vars();
        Sigma03Element {
            coeffs: [
                GroundScalar::zero(&vars),
                GroundScalar::zero(&vars),
                GroundScalar::zero(&vars),
                GroundScalar::zero(&vars),
            ],
        }
    }

    pub fn one() -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = GroundScalar::one(&sigma03_vars());
        e
    }

    /// The generator `a_i`, `i` in 1..=3.
    pub fn alpha(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        let mut e = Self::zero();
        e.coeffs[i] = GroundScalar::one(&sigma03_vars());
        e
    }

    pub fn scalar(c: GroundScalar) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = c;
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.coeffs[i] = self.coeffs[i].clone() - other.coeffs[i].clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GroundScalar::is_zero)
    }

    /// Product reduced to the 4-element basis via the relations
    /// `v_(i+2) a_i a_(i+1) = delta a_(i+2)` (the consistent convention, see
    /// `sigma03_convention_consistent`) and `v_(i+1) v_(i+2) a_i^2 = delta^2`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::mul_with(self, other, Sigma03Convention::VNextNext)
    }

    pub fn mul_with(a: &Self, b: &Self, conv: Sigma03Convention) -> Self {
        let vars = sigma03_vars();
        let delta = GroundScalar::delta(&vars);
        let mut out = Self::zero();
        // 1 * 1 and scalar parts.
        out.coeffs[0] = &a.coeffs[0] * &b.coeffs[0];
        for i in 1..4 {
            out.coeffs[i] = &(&a.coeffs[0] * &b.coeffs[i]) + &(&a.coeffs[i] * &b.coeffs[0]);
        }
        // alpha_i * alpha_j cross terms.
        for i in 1..4usize {
            for j in 1..4usize {
                let c = &a.coeffs[i] * &b.coeffs[j];
                if c.is_zero() {
                    continue;
                }
                if i == j {
                    // a_i^2 = delta^2 v_(i+1)^(-1) v_(i+2)^(-1)
                    let mut shift = [0i64; 3];
                    shift[nxt(i) - 1] = -2;
                    shift[nxt(nxt(i)) - 1] = -2;
                    let red = (&delta * &delta).mul_v_half(&shift);
                    out.coeffs[0] = &out.coeffs[0] + &(&c * &red);
                } else {
                    // a_i a_j with j = i+1 or j = i+2 (cyclically); the
                    // relation gives a_b a_(b+1) = delta v^(-1) a_(b+2) where
                    // b is whichever of i, j is followed cyclically by the
                    // other.
                    let base = if j == nxt(i) { i } else { j };
                    debug_assert_eq!(nxt(base), if base == i { j } else { i });
                    let other_idx = nxt(nxt(base));
                    let divisor = match conv {
                        Sigma03Convention::VNext => nxt(base),
                        Sigma03Convention::VNextNext => nxt(nxt(base)),
                    };
                    let mut shift = [0i64; 3];
                    shift[divisor - 1] = -2;
                    let red = delta.mul_v_half(&shift);
                    out.coeffs[other_idx] = &out.coeffs[other_idx] + &(&c * &red);
                }
            }
        }
        out
    }

    /// The embedding into the half-variable scalar ring:
    /// `f(a_i) = delta v_(i+1)^(-1/2) v_(i+2)^(-1/2)`, extended linearly.
    pub fn embed(&self) -> GroundScalar {
        let mut acc = self.coeffs[0].clone();
        for i in 1..4 {
            acc += &(&self.coeffs[i] * &sigma03_alpha_image(i));
        }
        acc
    }
}

fn nxt(i: usize) -> usize {
    i % 3 + 1
}

/// `f(a_i) = delta v_(i+1)^(-1/2) v_(i+2)^(-1/2)`.
pub fn sigma03_alpha_image(i: usize) -> GroundScalar {
    let vars = sigma03_vars();
    let mut shift = [0i64; 3];
    shift[nxt(i) - 1] = -1;
    shift[nxt(nxt(i)) - 1] = -1;
    GroundScalar::delta(&vars).mul_v_half(&shift)
}

/// Evaluate `f(v_? a_i a_(i+1) - delta a_(i+2))` for each `i` under the given
/// index convention; the convention is consistent when all three vanish.
pub fn sigma03_convention_consistent(conv: Sigma03Convention) -> bool {
    let vars = sigma03_vars();
    let delta = GroundScalar::delta(&vars);
    for i in 1..=3usize {
        let multiplier_idx = match conv {
            Sigma03Convention::VNext => nxt(i),
            Sigma03Convention::VNextNext => nxt(nxt(i)),
        };
        let mut shift = [0i64; 3];
        shift[multiplier_idx - 1] = 2; // v (integer power)
        let lhs = (&sigma03_alpha_image(i) * &sigma03_alpha_image(nxt(i))).mul_v_half(&shift);
        let rhs = &delta * &sigma03_alpha_image(nxt(nxt(i)));
        if lhs != rhs {
            return false;
        }
        // The square relation v_(i+1) v_(i+2) a_i^2 = delta^2 must also hold.
        let mut sq_shift = [0i64; 3];
        sq_shift[nxt(i) - 1] = 2;
        sq_shift[nxt(nxt(i)) - 1] = 2;
        let sq_lhs = (&sigma03_alpha_image(i) * &sigma03_alpha_image(i)).mul_v_half(&sq_shift);
        if sq_lhs != &delta * &delta {
            return false;
        }
    }
    true
}

// --- Sigma_{0,2} --------------------------------------------------------------

/// An element `p0 + p1 alpha` of the two-puncture sphere algebra
/// `R[v1,v2][alpha] / (v1 v2 alpha^2 + (q - q^(-1))^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma02Element {
    pub p0: GroundScalar,
    pub p1: GroundScalar,
}

pub fn sigma02_vars() -> VarSet {
    VarSet::new(vec!["v1", "v2"]).expect("distinct")
}

impl Sigma02Element {
    pub fn zero() -> Self {
        let vars = sigma02_vars();
        Sigma02Element { p0: GroundScalar::zero(&vars), p1: GroundScalar::zero(&vars) }
    }

    pub fn one() -> Self {
        let vars = sigma02_vars();
        Sigma02Element { p0: GroundScalar::one(&vars), p1: GroundScalar::zero(&vars) }
    }

    pub fn alpha() -> Self {
        let vars = sigma02_vars();
        Sigma02Element { p0: GroundScalar::zero(&vars), p1: GroundScalar::one(&vars) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Sigma02Element { p0: &self.p0 + &other.p0, p1: &self.p1 + &other.p1 }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Sigma02Element {
            p0: self.p0.clone() - other.p0.clone(),
            p1: self.p1.clone() - other.p1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    /// Multiply as degree-1 polynomials in alpha, then reduce
    /// `alpha^2 -> -(q - q^(-1))^2 (v1 v2)^(-1)`.
    pub fn mul(&self, other: &Self) -> Self {
        let vars = sigma02_vars();
        let d = GroundScalar::q_minus_qinv(&vars);
        let alpha_sq = (-(&d * &d)).mul_v_half(&[-2, -2]);
        let p0 = &(&self.p0 * &other.p0) + &(&(&self.p1 * &other.p1) * &alpha_sq);
        let p1 = &(&self.p0 * &other.p1) + &(&self.p1 * &other.p0);
        Sigma02Element { p0, p1 }
    }

    /// The defining polynomial `v1 v2 alpha^2 + (q - q^(-1))^2` evaluated in
    /// the algebra; must be zero.
    pub fn relation_value() -> Self {
        let vars = sigma02_vars();
        let alpha = Self::alpha();
        let sq = alpha.mul(&alpha);
        let scaled = Sigma02Element {
            p0: sq.p0.mul_v_half(&[2, 2]),
            p1: sq.p1.mul_v_half(&[2, 2]),
        };
        let d = GroundScalar::q_minus_qinv(&vars);
        scaled.add(&Sigma02Element { p0: &d * &d, p1: GroundScalar::zero(&vars) })
    }
}

// --- RY rescaling --------------------------------------------------------------

/// Rescale a diagram coefficient by `prod_m m^(-hits/2)` over the listed
/// boundary hits; the inverse rescale negates the hit counts.
pub fn ry_rescale(coeff: &GroundScalar, hits: &BTreeMap<String, u32>) -> Result<GroundScalar> {
    let vars = coeff.vars().clone();
    let mut shift = vec![0i64; vars.len()];
    for (name, h) in hits {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        shift[idx] -= i64::from(*h);
    }
    Ok(coeff.mul_v_half(&shift))
}

/// Inverse of `ry_rescale` with the same hit counts.
pub fn ry_rescale_inverse(coeff: &GroundScalar, hits: &BTreeMap<String, u32>) -> Result<GroundScalar> {
    let vars = coeff.vars().clone();
    let mut shift = vec![0i64; vars.len()];
    for (name, h) in hits {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        shift[idx] += i64::from(*h);
    }
    Ok(coeff.mul_v_half(&shift))
}

// --- JSON ----------------------------------------------------------------------

impl MonogonElement {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((a, b), c)| serde_json::json!({ "a": a, "b": b, "coef": c.to_json() }))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let vars = VarSet::empty();
        let mut out = MonogonElement::zero();
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::BadInput("monogon element missing `terms`".into()))?;
        for t in terms {
            let a = t.get("a").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::BadInput("monogon term missing `a`".into())
            })? as u32;
            let b = t.get("b").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::BadInput("monogon term missing `b`".into())
            })? as u32;
            let coef = GroundScalar::from_json(
                &vars,
                t.get("coef")
                    .ok_or_else(|| Error::BadInput("monogon term missing `coef`".into()))?,
            )?;
            out = out.add(&MonogonElement::monomial(a, b, coef));
        }
        Ok(out)
    }
}

impl Sigma03Element {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>()
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let vars = sigma03_vars();
        let arr = value
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::BadInput("sigma03 element missing `coeffs`".into()))?;
        if arr.len() != 4 {
            return Err(Error::BadInput("sigma03 element needs 4 coefficients".into()));
        }
        let mut out = Self::zero();
        for (i, v) in arr.iter().enumerate() {
            out.coeffs[i] = GroundScalar::from_json(&vars, v)?;
        }
        Ok(out)
    }
}

impl Sigma02Element {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "p0": self.p0.to_json(), "p1": self.p1.to_json() })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let vars = sigma02_vars();
        let p0 = GroundScalar::from_json(
            &vars,
            value.get("p0").ok_or_else(|| Error::BadInput("missing `p0`".into()))?,
        )?;
        let p1 = GroundScalar::from_json(
            &vars,
            value.get("p1").ok_or_else(|| Error::BadInput("missing `p1`".into()))?,
        )?;
        Ok(Sigma02Element { p0, p1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::ExpVec;

    #[test]
    fn swap_rewrite() {
        // u- u+ = q^2 u+ u- - (q^2 - 1)
        let vars = VarSet::empty();
        let prod = MonogonElement::u_minus().mul(&MonogonElement::u_plus());
        let expected = MonogonElement::monomial(1, 1, GroundScalar::q_half(&vars, 4)).add(
            &MonogonElement::monomial(
                0,
                0,
                GroundScalar::one(&vars) - GroundScalar::q_half(&vars, 4),
            ),
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn already_normal() {
        let prod = MonogonElement::u_plus().mul(&MonogonElement::u_minus());
        assert_eq!(prod, MonogonElement::basis(1, 1));
    }

    #[test]
    fn relation_normalizes_to_zero() {
        assert!(monogon_relation().is_zero());
    }

    #[test]
    fn filtration_rank_counts() {
        assert_eq!(monogon_filtration_rank(0), 0);
        assert_eq!(monogon_filtration_rank(2), 3);
        assert_eq!(monogon_filtration_rank(4), 10);
        for k in 0..=10u32 {
            assert_eq!(monogon_filtration_rank(k), u64::from(k) * u64::from(k + 1) / 2);
        }
    }

    #[test]
    fn reduced_trace_values() {
        let vars = VarSet::empty();
        let tr_plus = MonogonElement::u_plus().reduced_trace();
        assert_eq!(tr_plus.num_terms(), 1);
        assert_eq!(tr_plus.terms().next().unwrap().0, &ExpVec(vec![1]));

        // b(2,1) = q^(1/2)(u+ u- - 1) dies.
        assert!(monogon_bad_arc().reduced_trace().is_zero());

        // b(2,0) = q^(1/2) u+^2 -> q^(1/2) x^2.
        let b20 = MonogonElement::monomial(2, 0, GroundScalar::q_half(&vars, 1));
        let tr = b20.reduced_trace();
        assert_eq!(tr.num_terms(), 1);
        let (k, c) = tr.terms().next().unwrap();
        assert_eq!(k, &ExpVec(vec![2]));
        assert_eq!(c, &GroundScalar::q_half(&vars, 1));
    }

    #[test]
    fn trace_respects_relation() {
        // The defining relation maps to zero under the trace.
        let rel = monogon_relation();
        assert!(rel.reduced_trace().is_zero());
        // And the trace is multiplicative on a few random-ish products.
        let a = MonogonElement::basis(2, 1);
        let b = MonogonElement::basis(1, 3);
        let lhs = a.mul(&b).reduced_trace();
        let rhs = a.reduced_trace().mul(&b.reduced_trace()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma03_oracle_picks_convention() {
        assert!(!sigma03_convention_consistent(Sigma03Convention::VNext));
        assert!(sigma03_convention_consistent(Sigma03Convention::VNextNext));
    }

    #[test]
    fn sigma03_square_relation() {
        // a1 * a1 = delta^2 v2^(-1) v3^(-1)
        let vars = sigma03_vars();
        let a1 = Sigma03Element::alpha(1);
        let sq = a1.mul(&a1);
        let delta = GroundScalar::delta(&vars);
        let expected = (&delta * &delta).mul_v_half(&[0, -2, -2]);
        assert_eq!(sq.coeffs[0], expected);
        assert!(sq.coeffs[1].is_zero() && sq.coeffs[2].is_zero() && sq.coeffs[3].is_zero());
        // f is multiplicative on the square.
        assert_eq!(a1.embed() * a1.embed(), sq.embed());
    }

    #[test]
    fn sigma03_embed_multiplicative() {
        for i in 1..=3 {
            for j in 1..=3 {
                let a = Sigma03Element::alpha(i);
                let b = Sigma03Element::alpha(j);
                assert_eq!(a.mul(&b).embed(), a.embed() * b.embed(), "alpha_{i} alpha_{j}");
            }
        }
    }

    #[test]
    fn sigma03_zero_divisor_in_specialization() {
        let vars = sigma03_vars();
        let delta = Sigma03Element::scalar(GroundScalar::delta(&vars));
        let a1 = Sigma03Element::alpha(1);
        let prod = a1.sub(&delta).mul(&a1.add(&delta));
        assert!(!prod.is_zero());
        // After v -> 1 every coefficient vanishes.
        for c in &prod.coeffs {
            assert!(c.specialize_v_to_one().is_zero());
        }
        // Neither factor is zero, before or after specialization.
        assert!(!a1.sub(&delta).is_zero());
        assert!(!a1.add(&delta).is_zero());
    }

    #[test]
    fn sigma02_reduction() {
        let vars = sigma02_vars();
        let alpha = Sigma02Element::alpha();
        let sq = alpha.mul(&alpha);
        let d = GroundScalar::q_minus_qinv(&vars);
        assert_eq!(sq.p0, (-(&d * &d)).mul_v_half(&[-2, -2]));
        assert!(sq.p1.is_zero());
        assert!(Sigma02Element::relation_value().is_zero());
        // (1 + a)(1 - a) = 1 + (q - q^(-1))^2 (v1 v2)^(-1)
        let one = Sigma02Element::one();
        let prod = one.add(&alpha).mul(&one.sub(&alpha));
        assert_eq!(prod.p0, GroundScalar::one(&vars) + (&d * &d).mul_v_half(&[-2, -2]));
        assert!(prod.p1.is_zero());
    }

    #[test]
    fn rescale_round_trip() {
        let vars = VarSet::new(vec!["m1", "m2"]).unwrap();
        let c = GroundScalar::q_half(&vars, 3) + GroundScalar::v_half(&vars, 0, 2);
        let mut hits = BTreeMap::new();
        hits.insert("m1".to_string(), 1u32);
        hits.insert("m2".to_string(), 4u32);
        let scaled = ry_rescale(&c, &hits).unwrap();
        let back = ry_rescale_inverse(&scaled, &hits).unwrap();
        assert_eq!(back, c);
        // Single hit on m1 sends 1 to m1^(-1/2).
        let one = GroundScalar::one(&vars);
        let mut h1 = BTreeMap::new();
        h1.insert("m1".to_string(), 1u32);
        assert_eq!(ry_rescale(&one, &h1).unwrap(), GroundScalar::v_half(&vars, 0, -1));
        // Zero hits is the identity.
        assert_eq!(ry_rescale(&c, &BTreeMap::new()).unwrap(), c);
    }
}
