//! The ground ring: exact Laurent polynomials in `q^(1/2)` and finitely many
//! commuting puncture variables `v^(1/2)`, with integer coefficients.
//!
//! All half-integer exponents are stored doubled, so a key `(q2, v2)` means
//! `q^(q2/2) * prod_i v_i^(v2[i]/2)`. Coefficients are arbitrary-precision
//! integers. Every constructor canonicalizes (drops zero coefficients), so
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered, immutable set of puncture-variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::BadInput(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarSet(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent key of one scalar term: doubled q-exponent and doubled v-exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScalarKey {
    pub q2: i64,
    pub v2: Vec<i64>,
}

impl ScalarKey {
    fn unit(nvars: usize) -> Self {
        ScalarKey { q2: 0, v2: vec![0; nvars] }
    }
}

/// An element of `Z[q^(1/2), q^(-1/2)][v^(1/2), v^(-1/2)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundScalar {
    vars: VarSet,
    terms: BTreeMap<ScalarKey, BigInt>,
}

impl GroundScalar {
    pub fn zero(vars: &VarSet) -> Self {
        GroundScalar { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::int(vars, 1)
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Self::big(vars, BigInt::from(n))
    }

    pub fn big(vars: &VarSet, n: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(ScalarKey::unit(vars.len()), n);
        }
        GroundScalar { vars: vars.clone(), terms }
    }

    /// `q^(q2/2)`.
    pub fn q_half(vars: &VarSet, q2: i64) -> Self {
        Self::term(vars, ScalarKey { q2, v2: vec![0; vars.len()] }, BigInt::one())
    }

    /// `v_idx^(v2/2)`.
    pub fn v_half(vars: &VarSet, idx: usize, v2: i64) -> Self {
        let mut v = vec![0; vars.len()];
        v[idx] = v2;
        Self::term(vars, ScalarKey { q2: 0, v2: v }, BigInt::one())
    }

    pub fn term(vars: &VarSet, key: ScalarKey, coeff: BigInt) -> Self {
        assert_eq!(key.v2.len(), vars.len(), "exponent key length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        GroundScalar { vars: vars.clone(), terms }
    }

    /// `q^(1/2) + q^(-1/2)`, the loop value delta of the marked algebras.
    pub fn delta(vars: &VarSet) -> Self {
        Self::q_half(vars, 1) + Self::q_half(vars, -1)
    }

    /// `q - q^(-1)`.
    pub fn q_minus_qinv(vars: &VarSet) -> Self {
        Self::q_half(vars, 2) - Self::q_half(vars, -2)
    }

    /// `q + q^(-1)`.
    pub fn q_plus_qinv(vars: &VarSet) -> Self {
        Self::q_half(vars, 2) + Self::q_half(vars, -2)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ScalarKey::unit(self.vars.len()))
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch(
                self.vars.names().to_vec(),
                other.vars.names().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Ok(GroundScalar { vars: self.vars.clone(), terms })
    }

    /// Exact ring product; fails on a variable-set mismatch.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut terms: BTreeMap<ScalarKey, BigInt> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ScalarKey {
                    q2: ka.q2 + kb.q2,
                    v2: ka.v2.iter().zip(&kb.v2).map(|(x, y)| x + y).collect(),
                };
                let entry = terms.entry(key.clone()).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&key);
                }
            }
        }
        Ok(GroundScalar { vars: self.vars.clone(), terms })
    }

    /// The bar involution `q^(1/2) -> q^(-1/2)`; puncture variables are fixed.
    pub fn bar(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (ScalarKey { q2: -k.q2, v2: k.v2.clone() }, c.clone()))
            .collect();
        GroundScalar { vars: self.vars.clone(), terms }
    }

    /// Multiply by `q^(k2/2)` in place-free style.
    pub fn mul_q_half(&self, k2: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (ScalarKey { q2: k.q2 + k2, v2: k.v2.clone() }, c.clone()))
            .collect();
        GroundScalar { vars: self.vars.clone(), terms }
    }

    /// Multiply by `prod_i v_i^(shift2[i]/2)`.
    pub fn mul_v_half(&self, shift2: &[i64]) -> Self {
        assert_eq!(shift2.len(), self.vars.len());
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let v2 = k.v2.iter().zip(shift2).map(|(x, s)| x + s).collect();
                (ScalarKey { q2: k.q2, v2 }, c.clone())
            })
            .collect();
        GroundScalar { vars: self.vars.clone(), terms }
    }

    /// Doubled exponent `k2` with `self = q^(k2/2) * other`, when such a power
    /// exists. `None` is the not-proportional signal, not an error.
    pub fn q_ratio2(&self, other: &Self) -> Option<i64> {
        if self.vars != other.vars {
            return None;
        }
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (ka, ca) = self.terms.iter().next().expect("nonzero");
        // Every candidate shift comes from matching the first term of `self`
        // against a term of `other` with the same v-exponents and coefficient.
        let mut candidates: Vec<i64> = other
            .terms
            .iter()
            .filter(|(kb, cb)| kb.v2 == ka.v2 && *cb == ca)
            .map(|(kb, _)| ka.q2 - kb.q2)
            .collect();
        candidates.dedup();
        'cand: for d in candidates {
            for (kb, cb) in &other.terms {
                let shifted = ScalarKey { q2: kb.q2 + d, v2: kb.v2.clone() };
                if self.terms.get(&shifted) != Some(cb) {
                    continue 'cand;
                }
            }
            return Some(d);
        }
        None
    }

    /// Substitute every puncture variable by 1 (keeping q), i.e. drop all
    /// v-exponents. The result lives over the empty variable set.
    pub fn specialize_v_to_one(&self) -> GroundScalar {
        let vars = VarSet::empty();
        let mut terms: BTreeMap<ScalarKey, BigInt> = BTreeMap::new();
        for (k, c) in &self.terms {
            let key = ScalarKey { q2: k.q2, v2: vec![] };
            let entry = terms.entry(key.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&key);
            }
        }
        GroundScalar { vars, terms }
    }

    /// All v-exponents reduced mod 2, as a parity fingerprint. Used to check
    /// linear independence over the integer-exponent subring.
    pub fn v_parity_patterns(&self) -> Vec<Vec<i64>> {
        let mut pats: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|k| k.v2.iter().map(|x| x.rem_euclid(2)).collect())
            .collect();
        pats.sort();
        pats.dedup();
        pats
    }
}

impl Add for GroundScalar {
    type Output = GroundScalar;
    fn add(self, rhs: GroundScalar) -> GroundScalar {
        self.try_add(&rhs).expect("scalar addition over mismatched variable sets")
    }
}

impl<'a> Add<&'a GroundScalar> for &'a GroundScalar {
    type Output = GroundScalar;
    fn add(self, rhs: &GroundScalar) -> GroundScalar {
        self.try_add(rhs).expect("scalar addition over mismatched variable sets")
    }
}

impl AddAssign<&GroundScalar> for GroundScalar {
    fn add_assign(&mut self, rhs: &GroundScalar) {
        *self = self.try_add(rhs).expect("scalar addition over mismatched variable sets");
    }
}

impl Sub for GroundScalar {
    type Output = GroundScalar;
    fn sub(self, rhs: GroundScalar) -> GroundScalar {
        self.try_add(&-rhs).expect("scalar subtraction over mismatched variable sets")
    }
}

impl SubAssign<&GroundScalar> for GroundScalar {
    fn sub_assign(&mut self, rhs: &GroundScalar) {
        *self = self.try_add(&-rhs.clone()).expect("scalar subtraction over mismatched variable sets");
    }
}

impl Neg for GroundScalar {
    type Output = GroundScalar;
    fn neg(mut self) -> GroundScalar {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for GroundScalar {
    type Output = GroundScalar;
    fn mul(self, rhs: GroundScalar) -> GroundScalar {
        self.try_mul(&rhs).expect("scalar product over mismatched variable sets")
    }
}

impl<'a> Mul<&'a GroundScalar> for &'a GroundScalar {
    type Output = GroundScalar;
    fn mul(self, rhs: &GroundScalar) -> GroundScalar {
        self.try_mul(rhs).expect("scalar product over mismatched variable sets")
    }
}

impl MulAssign<&GroundScalar> for GroundScalar {
    fn mul_assign(&mut self, rhs: &GroundScalar) {
        *self = self.try_mul(rhs).expect("scalar product over mismatched variable sets");
    }
}

impl fmt::Display for GroundScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::latex::scalar_to_latex(self))
    }
}

// --- JSON wire format -------------------------------------------------------
//
// A scalar is a list of {"q2": int, "v2": [int...], "c": int}. Coefficients
// that do not fit in an i64 are emitted as decimal strings.

#[derive(Serialize, Deserialize)]
struct TermJson {
    q2: i64,
    v2: Vec<i64>,
    c: serde_json::Value,
}

impl GroundScalar {
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(k, c)| TermJson {
                q2: k.q2,
                v2: k.v2.clone(),
                c: coeff_to_json(c),
            })
            .collect();
        serde_json::to_value(items).expect("scalar serialization")
    }

    pub fn from_json(vars: &VarSet, value: &serde_json::Value) -> Result<Self> {
        let items: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| Error::BadInput(format!("scalar: {e}")))?;
        let mut out = GroundScalar::zero(vars);
        for t in items {
            if t.v2.len() != vars.len() {
                return Err(Error::BadInput(format!(
                    "scalar term has {} v-exponents, expected {}",
                    t.v2.len(),
                    vars.len()
                )));
            }
            let c = coeff_from_json(&t.c)?;
            out += &GroundScalar::term(vars, ScalarKey { q2: t.q2, v2: t.v2 }, c);
        }
        Ok(out)
    }
}

fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c.clone()) {
        Ok(n) => serde_json::Value::from(n),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::BadInput(format!("bad coefficient {n}"))),
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| Error::BadInput(format!("bad coefficient `{s}`: {e}"))),
        other => Err(Error::BadInput(format!("bad coefficient {other}"))),
    }
}

/// Sign helper for display code.
pub(crate) fn coeff_abs_is_one(c: &BigInt) -> bool {
    c.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_vars() -> VarSet {
        VarSet::empty()
    }

    #[test]
    fn half_powers_multiply() {
        let vars = no_vars();
        let a = GroundScalar::q_half(&vars, 1);
        let prod = a.try_mul(&a).unwrap();
        assert_eq!(prod, GroundScalar::q_half(&vars, 2));
    }

    #[test]
    fn difference_of_squares() {
        let vars = no_vars();
        let q = GroundScalar::q_half(&vars, 2);
        let qinv = GroundScalar::q_half(&vars, -2);
        let lhs = (q.clone() - qinv.clone()).try_mul(&(q.clone() + qinv.clone())).unwrap();
        let rhs = GroundScalar::q_half(&vars, 4) - GroundScalar::q_half(&vars, -4);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_squared() {
        // delta = q^(1/2) + q^(-1/2); delta^2 = q + 2 + q^(-1).
        let vars = no_vars();
        let d = GroundScalar::delta(&vars);
        let sq = d.try_mul(&d).unwrap();
        let expected = GroundScalar::q_half(&vars, 2)
            + GroundScalar::int(&vars, 2)
            + GroundScalar::q_half(&vars, -2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn bar_is_involutive_and_fixes_symmetric() {
        let vars = no_vars();
        let a = GroundScalar::q_half(&vars, 1);
        assert_eq!(a.bar(), GroundScalar::q_half(&vars, -1));
        let three = GroundScalar::int(&vars, 3);
        assert_eq!(three.bar(), three);
        let sym = GroundScalar::q_half(&vars, 2) + GroundScalar::q_half(&vars, -2);
        assert_eq!(sym.bar(), sym);
        let mixed = GroundScalar::q_half(&vars, 3) - GroundScalar::int(&vars, 7);
        assert_eq!(mixed.bar().bar(), mixed);
    }

    #[test]
    fn q_ratio_single_term() {
        let vars = VarSet::new(vec!["v1"]).unwrap();
        let v = GroundScalar::v_half(&vars, 0, 2);
        let a = GroundScalar::q_half(&vars, 3).try_mul(&v).unwrap();
        let b = GroundScalar::q_half(&vars, 1).try_mul(&v).unwrap();
        assert_eq!(a.q_ratio2(&b), Some(2));
    }

    #[test]
    fn q_ratio_polynomials() {
        let vars = no_vars();
        let q = GroundScalar::q_half(&vars, 2);
        let one = GroundScalar::one(&vars);
        let a = q.clone() + one.clone(); // q + 1
        let b = GroundScalar::q_half(&vars, 4) + q.clone(); // q^2 + q
        assert_eq!(b.q_ratio2(&a), Some(2));
        let c = q - one; // q - 1
        assert_eq!(a.q_ratio2(&c), None);
    }

    #[test]
    fn q_ratio_round_trip() {
        let vars = no_vars();
        let b = GroundScalar::q_half(&vars, 1) + GroundScalar::int(&vars, 5);
        let a = b.mul_q_half(-7);
        let r = a.q_ratio2(&b).unwrap();
        assert_eq!(b.mul_q_half(r), a);
    }

    #[test]
    fn json_round_trip() {
        let vars = VarSet::new(vec!["v1", "v2"]).unwrap();
        let a = GroundScalar::q_half(&vars, -3)
            .try_mul(&GroundScalar::v_half(&vars, 1, 1))
            .unwrap()
            + GroundScalar::int(&vars, 42);
        let j = a.to_json();
        let back = GroundScalar::from_json(&vars, &j).unwrap();
        assert_eq!(a, back);
    }
}
