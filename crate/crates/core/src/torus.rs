//! Quantum tori with the Weyl-normalized monomial basis.
//!
//! An element is a finite sum of Weyl monomials `x^k` with coefficients in the
//! ground ring. The product is the bilinear extension of
//! `x^k x^l = q^(<k,l>/2) x^(k+l)` where `<k,l> = sum Q_ij k_i l_j`, so the
//! doubled-exponent scalar keys absorb every half power exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{GroundScalar, VarSet};

/// An antisymmetric integer form on a finite ordered list of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntisymForm {
    gens: Vec<String>,
    mat: Vec<Vec<i64>>,
}

impl AntisymForm {
    pub fn new<S: Into<String>>(gens: Vec<S>, mat: Vec<Vec<i64>>) -> Result<Self> {
        let gens: Vec<String> = gens.into_iter().map(Into::into).collect();
        let r = gens.len();
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].contains(g) {
                return Err(Error::BadInput(format!("duplicate generator `{g}`")));
            }
        }
        if mat.len() != r || mat.iter().any(|row| row.len() != r) {
            return Err(Error::BadInput(format!("form matrix is not {r}x{r}")));
        }
        for i in 0..r {
            for j in 0..r {
                if mat[i][j] != -mat[j][i] {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(AntisymForm { gens, mat })
    }

    /// The zero form on the given generators (a commutative torus).
    pub fn commutative<S: Into<String>>(gens: Vec<S>) -> Self {
        let gens: Vec<String> = gens.into_iter().map(Into::into).collect();
        let r = gens.len();
        AntisymForm { mat: vec![vec![0; r]; r], gens }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.mat[i][j]
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// `<k,l>_Q = sum_ij Q_ij k_i l_j`.
    pub fn pairing(&self, k: &ExpVec, l: &ExpVec) -> i64 {
        let mut acc = 0i64;
        for (i, ki) in k.0.iter().enumerate() {
            if *ki == 0 {
                continue;
            }
            for (j, lj) in l.0.iter().enumerate() {
                if *lj == 0 {
                    continue;
                }
                acc += self.mat[i][j] * ki * lj;
            }
        }
        acc
    }

    /// The symplectic double: the 2r x 2r form `[[Q, -Id], [Id, 0]]` on the
    /// original generators followed by the given twist generators.
    pub fn symplectic_double<S: Into<String>>(&self, u_names: Vec<S>) -> Result<AntisymForm> {
        let r = self.rank();
        let u_names: Vec<String> = u_names.into_iter().map(Into::into).collect();
        if u_names.len() != r {
            return Err(Error::BadInput(format!(
                "need {r} twist generator names, got {}",
                u_names.len()
            )));
        }
        let mut gens = self.gens.clone();
        gens.extend(u_names);
        let mut mat = vec![vec![0i64; 2 * r]; 2 * r];
        for i in 0..r {
            for j in 0..r {
                mat[i][j] = self.mat[i][j];
            }
            mat[i][r + i] = -1;
            mat[r + i][i] = 1;
        }
        AntisymForm::new(gens, mat)
    }
}

/// An exponent vector over a form's generators, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(rank: usize) -> Self {
        ExpVec(vec![0; rank])
    }

    pub fn unit(rank: usize, idx: usize, value: i64) -> Self {
        let mut v = vec![0; rank];
        v[idx] = value;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// An additive lattice-valued degree functional, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFunctional {
    rows: Vec<Vec<i64>>,
}

impl DegreeFunctional {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        DegreeFunctional { rows }
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, k: &ExpVec) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(&k.0).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// A finite sum of Weyl monomials of the quantum torus `T(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    form: Arc<AntisymForm>,
    vars: VarSet,
    terms: BTreeMap<ExpVec, GroundScalar>,
}

impl TorusElement {
    pub fn zero(form: Arc<AntisymForm>, vars: &VarSet) -> Self {
        TorusElement { form, vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(form: Arc<AntisymForm>, vars: &VarSet) -> Self {
        let rank = form.rank();
        Self::monomial(form, ExpVec::zero(rank), GroundScalar::one(vars))
    }

    /// The single Weyl monomial `c * x^k`.
    pub fn monomial(form: Arc<AntisymForm>, exp: ExpVec, coeff: GroundScalar) -> Self {
        assert_eq!(exp.len(), form.rank(), "exponent length mismatch");
        let vars = coeff.vars().clone();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        TorusElement { form, vars, terms }
    }

    /// Weyl basis monomial `x^k` with coefficient 1.
    pub fn basis(form: Arc<AntisymForm>, vars: &VarSet, exp: ExpVec) -> Self {
        Self::monomial(form, exp, GroundScalar::one(vars))
    }

    pub fn form(&self) -> &Arc<AntisymForm> {
        &self.form
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &GroundScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &ExpVec) -> Option<&GroundScalar> {
        self.terms.get(exp)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.form.as_ref() != other.form.as_ref() {
            return Err(Error::FormMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch(
                self.vars.names().to_vec(),
                other.vars.names().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            match terms.get_mut(k) {
                Some(acc) => {
                    *acc = acc.try_add(c)?;
                    if acc.is_zero() {
                        terms.remove(k);
                    }
                }
                None => {
                    terms.insert(k.clone(), c.clone());
                }
            }
        }
        Ok(TorusElement { form: self.form.clone(), vars: self.vars.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), -c.clone()))
            .collect();
        TorusElement { form: self.form.clone(), vars: self.vars.clone(), terms }
    }

    /// Bilinear extension of the Weyl monomial product rule.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TorusElement::zero(self.form.clone(), &self.vars);
        for (k, c) in &self.terms {
            for (l, d) in &other.terms {
                let pow = self.form.pairing(k, l); // q^(pow/2)
                let coeff = c.try_mul(d)?.mul_q_half(pow);
                out.accumulate(k.add(l), coeff);
            }
        }
        Ok(out)
    }

    fn accumulate(&mut self, exp: ExpVec, coeff: GroundScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(acc) => {
                *acc = acc.try_add(&coeff).expect("same vars");
                if acc.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn scalar_mul(&self, c: &GroundScalar) -> Result<Self> {
        let mut out = TorusElement::zero(self.form.clone(), &self.vars);
        for (k, a) in &self.terms {
            out.accumulate(k.clone(), a.try_mul(c)?);
        }
        Ok(out)
    }

    pub fn mul_q_half(&self, k2: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.mul_q_half(k2)))
            .collect();
        TorusElement { form: self.form.clone(), vars: self.vars.clone(), terms }
    }

    /// The reflection anti-automorphism: bar every coefficient, fix exponents.
    pub fn reflection(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.bar()))
            .collect();
        TorusElement { form: self.form.clone(), vars: self.vars.clone(), terms }
    }

    /// Degree of a generator if every term has the same exponent there.
    pub fn uniform_degree(&self, gen_idx: usize) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = it.next()?.0[gen_idx];
        if it.all(|k| k.0[gen_idx] == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The sum of terms of maximal degree under `d` (lexicographic).
    pub fn lead_part(&self, d: &DegreeFunctional) -> Result<TorusElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let max = self
            .terms
            .keys()
            .map(|k| d.apply(k))
            .max()
            .expect("nonzero");
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| d.apply(k) == max)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Ok(TorusElement { form: self.form.clone(), vars: self.vars.clone(), terms })
    }

    /// Lead degree value under `d`.
    pub fn lead_degree(&self, d: &DegreeFunctional) -> Result<Vec<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.terms.keys().map(|k| d.apply(k)).max().expect("nonzero"))
    }

    /// The unique maximal term, if the lead part is a single monomial.
    pub fn lead_single(&self, d: &DegreeFunctional) -> Result<Option<(ExpVec, GroundScalar)>> {
        let lead = self.lead_part(d)?;
        if lead.terms.len() == 1 {
            let (k, c) = lead.terms.into_iter().next().expect("singleton");
            Ok(Some((k, c)))
        } else {
            Ok(None)
        }
    }

    /// The unique q-power multiple of `self` fixed by reflection.
    ///
    /// Requires `reflection(self) = q^(s) self` for an integer `s`; the result
    /// is `q^(s/2) self`.
    pub fn reflection_normalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let refl = self.reflection();
        let s2 = self.ratio2_to(&refl)?;
        if s2 % 2 != 0 {
            return Err(Error::QuarterPower);
        }
        Ok(self.mul_q_half(s2 / 2))
    }

    /// Doubled q-exponent `s2` with `other = q^(s2/2) self`, exponent-wise.
    fn ratio2_to(&self, other: &Self) -> Result<i64> {
        if self.terms.len() != other.terms.len() {
            return Err(Error::NotReflectionProportional);
        }
        let mut shift: Option<i64> = None;
        for (k, c) in &self.terms {
            let d = other
                .terms
                .get(k)
                .ok_or(Error::NotReflectionProportional)?;
            let r = d.q_ratio2(c).ok_or(Error::NotReflectionProportional)?;
            match shift {
                None => shift = Some(r),
                Some(s) if s == r => {}
                Some(_) => return Err(Error::NotReflectionProportional),
            }
        }
        shift.ok_or(Error::NotReflectionProportional)
    }

    /// True when every term's exponent vector satisfies the predicate.
    pub fn in_monomial_algebra<F: Fn(&ExpVec) -> bool>(&self, member: F) -> bool {
        self.terms.keys().all(member)
    }

    /// Multiplicatively linear map `x^k -> x^(kH)`, checked via `H Q' H^T = Q`.
    pub fn mono_hom(&self, h: &[Vec<i64>], target: Arc<AntisymForm>) -> Result<TorusElement> {
        let r = self.form.rank();
        let r2 = target.rank();
        if h.len() != r || h.iter().any(|row| row.len() != r2) {
            return Err(Error::BadInput(format!("H is not {r}x{r2}")));
        }
        // Check H Q' H^T = Q.
        for i in 0..r {
            for j in 0..r {
                let mut acc = 0i64;
                for a in 0..r2 {
                    for b in 0..r2 {
                        acc += h[i][a] * target.entry(a, b) * h[j][b];
                    }
                }
                if acc != self.form.entry(i, j) {
                    return Err(Error::IncompatibleHom);
                }
            }
        }
        Ok(self.exp_map(h, target))
    }

    /// Unchecked exponent surgery `x^k -> x^(kH)` with coefficients kept.
    /// Callers must guarantee pairing preservation on the exponents in use.
    pub(crate) fn exp_map(&self, h: &[Vec<i64>], target: Arc<AntisymForm>) -> TorusElement {
        let r2 = target.rank();
        let mut out = TorusElement::zero(target, &self.vars);
        for (k, c) in &self.terms {
            let mut img = vec![0i64; r2];
            for (i, ki) in k.0.iter().enumerate() {
                if *ki == 0 {
                    continue;
                }
                for (j, hij) in h[i].iter().enumerate() {
                    img[j] += ki * hij;
                }
            }
            out.accumulate(ExpVec(img), c.clone());
        }
        out
    }
}

/// The Weyl normalization of an ordered word of generator powers:
/// `q^(-1/2 sum_(i<j) c_ij)` times the raw ordered product, expressed in the
/// Weyl basis. The result is independent of the word order.
pub fn weyl_normalize(
    form: &Arc<AntisymForm>,
    vars: &VarSet,
    word: &[(String, i64)],
) -> Result<TorusElement> {
    let mut letters = Vec::with_capacity(word.len());
    for (g, p) in word {
        letters.push((form.gen_index(g)?, *p));
    }
    // Commutation exponent of letters i < j is <p_i e_(g_i), p_j e_(g_j)>.
    let mut prefactor = 0i64; // doubled: q^(-prefactor/2) later via mul_q_half
    for i in 0..letters.len() {
        for j in (i + 1)..letters.len() {
            let (gi, pi) = letters[i];
            let (gj, pj) = letters[j];
            prefactor += form.entry(gi, gj) * pi * pj;
        }
    }
    // Raw ordered product of the single-letter monomials.
    let mut acc = TorusElement::one(form.clone(), vars);
    for (g, p) in &letters {
        let letter = TorusElement::basis(form.clone(), vars, ExpVec::unit(form.rank(), *g, *p));
        acc = acc.mul(&letter)?;
    }
    Ok(acc.mul_q_half(-prefactor))
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::latex::torus_to_latex(self))
    }
}

// --- JSON wire format -------------------------------------------------------

impl TorusElement {
    /// `{"form": {...}, "vars": [...], "terms": [{"exp": [...], "coef": ...}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                serde_json::json!({ "exp": k.0, "coef": c.to_json() })
            })
            .collect();
        serde_json::json!({
            "form": serde_json::to_value(self.form.as_ref()).expect("form"),
            "vars": self.vars.names(),
            "terms": terms,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let form: AntisymForm = serde_json::from_value(
            value
                .get("form")
                .cloned()
                .ok_or_else(|| Error::BadInput("element missing `form`".into()))?,
        )
        .map_err(|e| Error::BadInput(format!("form: {e}")))?;
        let form = Arc::new(AntisymForm::new(form.gens.clone(), form.mat.clone())?);
        let vars = match value.get("vars") {
            None => VarSet::empty(),
            Some(v) => {
                let names: Vec<String> = serde_json::from_value(v.clone())
                    .map_err(|e| Error::BadInput(format!("vars: {e}")))?;
                VarSet::new(names)?
            }
        };
        let mut out = TorusElement::zero(form.clone(), &vars);
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::BadInput("element missing `terms`".into()))?;
        for t in terms {
            let exp: Vec<i64> = serde_json::from_value(
                t.get("exp")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("term missing `exp`".into()))?,
            )
            .map_err(|e| Error::BadInput(format!("exp: {e}")))?;
            if exp.len() != form.rank() {
                return Err(Error::BadInput(format!(
                    "exponent has length {}, form rank is {}",
                    exp.len(),
                    form.rank()
                )));
            }
            let coef = GroundScalar::from_json(
                &vars,
                t.get("coef")
                    .ok_or_else(|| Error::BadInput("term missing `coef`".into()))?,
            )?;
            out = out.add(&TorusElement::monomial(form.clone(), ExpVec(exp), coef))?;
        }
        Ok(out)
    }
}
