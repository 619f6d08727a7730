//! Modified Dehn-Thurston coordinates: the three DT pairs of pants, Add
//! functions, twist actions, standard-curve values, the per-face and global
//! coordinate monoids, coordinate splitting, and matched-family
//! normalization.
//!
//! Twist coordinates here are the modified ones: twice the classical twist
//! plus an even correction counting return arcs, so that products pick up
//! lead terms downstream.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three DT pairs of pants, by number of bold boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceType {
    P1,
    P2,
    P3,
}

impl FaceType {
    pub fn bold(self) -> usize {
        match self {
            FaceType::P1 => 1,
            FaceType::P2 => 2,
            FaceType::P3 => 3,
        }
    }

    pub fn type_number(self) -> u8 {
        self.bold() as u8
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(FaceType::P1),
            2 => Ok(FaceType::P2),
            3 => Ok(FaceType::P3),
            _ => Err(Error::BadInput(format!("no pants type {n}"))),
        }
    }
}

/// A standard curve: the near-boundary loop `l_i` or the arc `a_(jk)`
/// (indices 1-based, `j <= k`; `a_(jj)` is a return arc).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StdTag {
    Loop(usize),
    Arc(usize, usize),
}

impl StdTag {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::BadInput(format!("bad component tag `{s}`"));
        if let Some(i) = s.strip_prefix('l') {
            let i: usize = i.parse().map_err(|_| bad())?;
            return Ok(StdTag::Loop(i));
        }
        if let Some(jk) = s.strip_prefix('a') {
            let digits: Vec<u32> = jk.chars().map(|c| c.to_digit(10)).collect::<Option<_>>().ok_or_else(bad)?;
            if digits.len() != 2 {
                return Err(bad());
            }
            let (j, k) = (digits[0] as usize, digits[1] as usize);
            return Ok(StdTag::Arc(j.min(k), j.max(k)));
        }
        Err(bad())
    }

    pub fn name(&self) -> String {
        match self {
            StdTag::Loop(i) => format!("l{i}"),
            StdTag::Arc(j, k) => format!("a{j}{k}"),
        }
    }

    /// Whether this tag exists on the given face type.
    pub fn legal(&self, face: FaceType) -> bool {
        let j = face.bold();
        match *self {
            StdTag::Loop(i) => i >= 1 && i <= j,
            StdTag::Arc(a, b) => {
                if a < 1 || b > 3 || a > b {
                    return false;
                }
                // A dashed side carries at most one endpoint, so no return
                // arc on a dashed side.
                if a == b && a > j {
                    return false;
                }
                true
            }
        }
    }

    /// Intersection numbers with the bold sides.
    pub fn n_vec(&self, face: FaceType) -> Vec<i64> {
        let j = face.bold();
        let mut n = vec![0i64; j];
        if let StdTag::Arc(a, b) = *self {
            if a <= j {
                n[a - 1] += 1;
            }
            if b <= j {
                n[b - 1] += 1;
            }
        }
        n
    }

    /// Standard twist coordinates on the bold sides.
    pub fn t_vec(&self, face: FaceType) -> Vec<i64> {
        let j = face.bold();
        let mut t = vec![0i64; j];
        match (face, *self) {
            (_, StdTag::Loop(i)) => t[i - 1] = 2,
            (FaceType::P3, StdTag::Arc(a, b)) if a == b => {
                // Return arc a_(jj) contributes 2 to t_(j+1), indices mod 3.
                t[a % 3] = 2;
            }
            (FaceType::P2, StdTag::Arc(1, 1)) => t[0] = 2,
            (FaceType::P2, StdTag::Arc(2, 2)) => {}
            (FaceType::P1, StdTag::Arc(1, 3)) => t[0] = -1,
            (FaceType::P1, StdTag::Arc(2, 3)) => t[0] = 1,
            _ => {}
        }
        t
    }

    /// Endpoints on each dashed side (positions bold+1..=3), used to enforce
    /// the at-most-one-endpoint rule.
    pub fn dashed_hits(&self, face: FaceType) -> Vec<(usize, u32)> {
        let j = face.bold();
        let mut hits = Vec::new();
        if let StdTag::Arc(a, b) = *self {
            for side in [a, b] {
                if side > j {
                    hits.push((side, 1));
                }
            }
        }
        hits
    }
}

/// One diagram component: a standard tag plus the record of twist powers
/// applied on each bold side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub tag: StdTag,
    pub twists: Vec<i64>,
}

impl Component {
    pub fn plain(tag: StdTag, face: FaceType) -> Self {
        Component { tag, twists: vec![0; face.bold()] }
    }

    pub fn twisted(tag: StdTag, face: FaceType, twists: Vec<i64>) -> Self {
        assert_eq!(twists.len(), face.bold());
        Component { tag, twists }
    }
}

/// A multiset of standard curves with twist records inside one pair of pants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDiagram {
    pub face: FaceType,
    pub components: Vec<Component>,
}

impl FaceDiagram {
    pub fn new(face: FaceType, components: Vec<Component>) -> Result<Self> {
        let d = Self::new_unchecked(face, components)?;
        // Disjoint realizability: the tag multiset must be the canonical one
        // for its own coordinate vector (loops only along sides the arcs
        // miss, at most one return-arc class, no crossing arc pairs).
        let mut tags: Vec<StdTag> = d.components.iter().map(|c| c.tag).collect();
        tags.sort();
        let coord = face_coord(&d)?;
        let canonical = canonical_components(face, &coord)?;
        let mut canon_tags: Vec<StdTag> = canonical.iter().map(|c| c.tag).collect();
        canon_tags.sort();
        if tags != canon_tags {
            return Err(Error::BadInput(format!(
                "components are not disjointly realizable on a type-{} face",
                face.type_number()
            )));
        }
        Ok(d)
    }

    /// Validation without the realizability comparison; used internally on
    /// multisets that are canonical by construction.
    pub(crate) fn new_unchecked(face: FaceType, mut components: Vec<Component>) -> Result<Self> {
        let mut dashed: BTreeMap<usize, u32> = BTreeMap::new();
        for c in &components {
            if !c.tag.legal(face) {
                return Err(Error::IllegalTag(c.tag.name(), face.type_number()));
            }
            if c.twists.len() != face.bold() {
                return Err(Error::BadInput(format!(
                    "component {} has {} twist entries, face type {} needs {}",
                    c.tag.name(),
                    c.twists.len(),
                    face.type_number(),
                    face.bold()
                )));
            }
            for (side, h) in c.tag.dashed_hits(face) {
                *dashed.entry(side).or_insert(0) += h;
            }
        }
        for (side, h) in dashed {
            if h > 1 {
                return Err(Error::BadInput(format!(
                    "dashed side {side} carries {h} endpoints; at most one is allowed"
                )));
            }
        }
        components.sort();
        Ok(FaceDiagram { face, components })
    }

    pub fn empty(face: FaceType) -> Self {
        FaceDiagram { face, components: Vec::new() }
    }

    /// Total intersection number with bold side `i` (1-based).
    pub fn n_at(&self, i: usize) -> i64 {
        self.components
            .iter()
            .map(|c| c.tag.n_vec(self.face)[i - 1])
            .sum()
    }

    /// The component that receives twist bookkeeping for side `i`: the
    /// minimal tag among components meeting the side, preferring a member of
    /// that tag class that already carries a twist. The choice is a function
    /// of the multiset alone, so recorded twists land in the same place no
    /// matter in which order they are applied.
    fn twist_carrier(&self, i: usize) -> Option<usize> {
        let face = self.face;
        let meets: Vec<usize> = (0..self.components.len())
            .filter(|&ci| self.components[ci].tag.n_vec(face)[i - 1] > 0)
            .collect();
        let min_tag = meets.iter().map(|&ci| self.components[ci].tag).min()?;
        let class: Vec<usize> = meets
            .into_iter()
            .filter(|&ci| self.components[ci].tag == min_tag)
            .collect();
        class
            .iter()
            .copied()
            .find(|&ci| self.components[ci].twists.iter().any(|&t| t != 0))
            .or_else(|| class.first().copied())
    }

    /// The twist map on bold side `i`: one full twist applied to the diagram,
    /// recorded on the carrier component. A diagram disjoint from the side is
    /// fixed.
    pub fn twist(&self, i: usize, power: i64) -> Self {
        let mut out = self.clone();
        if let Some(pos) = out.twist_carrier(i) {
            out.components[pos].twists[i - 1] += power;
            out.components.sort();
        }
        out
    }
}

/// A per-face coordinate vector `(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCoord {
    pub face: FaceType,
    pub n: Vec<i64>,
    pub t: Vec<i64>,
}

impl FaceCoord {
    pub fn zero(face: FaceType) -> Self {
        let j = face.bold();
        FaceCoord { face, n: vec![0; j], t: vec![0; j] }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.face, other.face);
        FaceCoord {
            face: self.face,
            n: self.n.iter().zip(&other.n).map(|(a, b)| a + b).collect(),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        }
    }
}

/// The even return-arc correction entering coordinates and membership.
/// `i` is 1-based; `n` has one entry per bold side.
pub fn add_function(face: FaceType, i: usize, n: &[i64]) -> Result<i64> {
    if i < 1 || i > face.bold() {
        return Err(Error::BadInput(format!(
            "twist index {i} out of range for face type {}",
            face.type_number()
        )));
    }
    Ok(match face {
        FaceType::P3 => {
            // max(0, n_(i-1) - n_i - n_(i+1)), indices mod 3.
            let prev = n[(i + 1) % 3];
            let this = n[i - 1];
            let next = n[i % 3];
            (prev - this - next).max(0)
        }
        FaceType::P2 => {
            if i == 2 {
                0
            } else {
                let n3 = (n[0] + n[1]).rem_euclid(2);
                (n[0] - n[1] - n3).max(0)
            }
        }
        FaceType::P1 => 0,
    })
}

/// The tabulated coordinate of one standard curve.
pub fn standard_coord(face: FaceType, tag: StdTag) -> Result<FaceCoord> {
    if !tag.legal(face) {
        return Err(Error::IllegalTag(tag.name(), face.type_number()));
    }
    Ok(FaceCoord { face, n: tag.n_vec(face), t: tag.t_vec(face) })
}

/// The twist action on coordinates: `t_i` grows by 2 per twist when the
/// diagram meets side `i`, otherwise nothing changes.
pub fn twist_coord(face: FaceType, i: usize, c: &FaceCoord, power: i64) -> Result<FaceCoord> {
    if i < 1 || i > face.bold() {
        return Err(Error::BadInput(format!("twist index {i} out of range")));
    }
    let mut out = c.clone();
    if c.n[i - 1] > 0 {
        out.t[i - 1] += 2 * power;
    }
    Ok(out)
}

/// Coordinates of a face diagram: disjoint additivity over components, each
/// component contributing its twisted standard coordinate.
pub fn face_coord(d: &FaceDiagram) -> Result<FaceCoord> {
    let mut acc = FaceCoord::zero(d.face);
    for comp in &d.components {
        let mut c = standard_coord(d.face, comp.tag)?;
        for (idx, &m) in comp.twists.iter().enumerate() {
            if m != 0 {
                c = twist_coord(d.face, idx + 1, &c, m)?;
            }
        }
        acc = acc.add(&c);
    }
    Ok(acc)
}

/// First violated membership condition for the per-face monoid, if any.
pub fn lambda_violation(face: FaceType, c: &FaceCoord) -> Result<Option<String>> {
    let j = face.bold();
    if c.face != face || c.n.len() != j || c.t.len() != j {
        return Err(Error::BadInput("coordinate shape mismatch".into()));
    }
    for (i, &ni) in c.n.iter().enumerate() {
        if ni < 0 {
            return Ok(Some(format!("n_{} = {ni} is negative", i + 1)));
        }
    }
    match face {
        FaceType::P3 => {
            if (c.n.iter().sum::<i64>()) % 2 != 0 {
                return Ok(Some(format!(
                    "n_1+n_2+n_3 = {} is odd",
                    c.n.iter().sum::<i64>()
                )));
            }
            for (i, &ti) in c.t.iter().enumerate() {
                if ti % 2 != 0 {
                    return Ok(Some(format!("t_{} = {ti} is odd", i + 1)));
                }
            }
            for i in 1..=3 {
                if c.n[i - 1] == 0 {
                    let bound = add_function(face, i, &c.n)?;
                    if c.t[i - 1] < bound {
                        return Ok(Some(format!(
                            "n_{i} = 0 but t_{i} = {} is below Add_{i} = {bound}",
                            c.t[i - 1]
                        )));
                    }
                }
            }
        }
        FaceType::P2 => {
            for (i, &ti) in c.t.iter().enumerate() {
                if ti % 2 != 0 {
                    return Ok(Some(format!("t_{} = {ti} is odd", i + 1)));
                }
            }
            for i in 1..=2 {
                if c.n[i - 1] == 0 && c.t[i - 1] < 0 {
                    return Ok(Some(format!(
                        "n_{i} = 0 but t_{i} = {} is negative",
                        c.t[i - 1]
                    )));
                }
            }
        }
        FaceType::P1 => {
            if c.n[0] == 0 && c.t[0] < 0 {
                return Ok(Some(format!("n_1 = 0 but t_1 = {} is negative", c.t[0])));
            }
        }
    }
    Ok(None)
}

pub fn lambda_member(face: FaceType, c: &FaceCoord) -> Result<bool> {
    Ok(lambda_violation(face, c)?.is_none())
}

/// Standard-arc multiplicities realizing an intersection vector on a pair of
/// pants: straight arcs `x[(j,k)]` and return arcs `r[j]`.
fn pants_multiplicities(n: [i64; 3]) -> (BTreeMap<(usize, usize), i64>, [i64; 3]) {
    let mut x = BTreeMap::new();
    for j in 1..=3usize {
        for k in (j + 1)..=3usize {
            let l = 6 - j - k;
            let cnt = ((n[j - 1] + n[k - 1] - n[l - 1]) / 2)
                .min(n[j - 1])
                .min(n[k - 1])
                .max(0);
            x.insert((j, k), cnt);
        }
    }
    let mut r = [0i64; 3];
    for j in 1..=3usize {
        let k = j % 3 + 1;
        let l = k % 3 + 1;
        r[j - 1] = ((n[j - 1] - n[k - 1] - n[l - 1]) / 2).max(0);
    }
    (x, r)
}

/// The unique canonical face diagram with the given member coordinate.
///
/// Standard multiplicities come from the intersection vector (corner arcs,
/// return arcs where a triangle inequality fails, loops where `n_i = 0`);
/// uniform twist powers are recovered from `t` minus the standard
/// contribution, halved, and recorded on the first component meeting the
/// side.
pub fn decompose_face_coord(face: FaceType, c: &FaceCoord) -> Result<FaceDiagram> {
    if let Some(msg) = lambda_violation(face, c)? {
        return Err(Error::Membership(msg));
    }
    let comps = canonical_components(face, c)?;
    let mut d = FaceDiagram::new_unchecked(face, comps)?;
    // Recover the uniform twist power on each side and record it on the
    // carrier component.
    let std = face_coord(&d)?;
    for i in 1..=face.bold() {
        if c.n[i - 1] > 0 {
            let k = (c.t[i - 1] - std.t[i - 1]) / 2;
            if k != 0 {
                d = d.twist(i, k);
            }
        }
    }
    debug_assert_eq!(face_coord(&d)?, *c);
    Ok(d)
}

/// The untwisted standard multiset realizing a coordinate's intersection
/// vector, with loops filling the twist coordinates along empty sides.
fn canonical_components(face: FaceType, c: &FaceCoord) -> Result<Vec<Component>> {
    let mut comps: Vec<Component> = Vec::new();
    match face {
        FaceType::P3 => {
            let n = [c.n[0], c.n[1], c.n[2]];
            let (x, r) = pants_multiplicities(n);
            for ((j, k), cnt) in &x {
                for _ in 0..*cnt {
                    comps.push(Component::plain(StdTag::Arc(*j, *k), face));
                }
            }
            for (j, &cnt) in r.iter().enumerate() {
                for _ in 0..cnt {
                    comps.push(Component::plain(StdTag::Arc(j + 1, j + 1), face));
                }
            }
            for i in 1..=3usize {
                if c.n[i - 1] == 0 {
                    let loops = (c.t[i - 1] - add_function(face, i, &c.n)?) / 2;
                    for _ in 0..loops {
                        comps.push(Component::plain(StdTag::Loop(i), face));
                    }
                }
            }
        }
        FaceType::P2 => {
            let n3 = (c.n[0] + c.n[1]).rem_euclid(2);
            let n = [c.n[0], c.n[1], n3];
            let (x, r) = pants_multiplicities(n);
            debug_assert_eq!(r[2], 0, "a dashed side carries no return arc");
            for ((j, k), cnt) in &x {
                for _ in 0..*cnt {
                    comps.push(Component::plain(StdTag::Arc(*j, *k), face));
                }
            }
            for j in 1..=2usize {
                for _ in 0..r[j - 1] {
                    comps.push(Component::plain(StdTag::Arc(j, j), face));
                }
            }
            for i in 1..=2usize {
                if c.n[i - 1] == 0 {
                    for _ in 0..(c.t[i - 1] / 2) {
                        comps.push(Component::plain(StdTag::Loop(i), face));
                    }
                }
            }
        }
        FaceType::P1 => {
            if c.n[0] == 0 {
                // l copies of the loop and at most one arc between the two
                // dashed sides; parity of t_1 decides the arc.
                let d = c.t[0].rem_euclid(2);
                if d == 1 {
                    comps.push(Component::plain(StdTag::Arc(2, 3), face));
                }
                for _ in 0..((c.t[0] - d) / 2) {
                    comps.push(Component::plain(StdTag::Loop(1), face));
                }
            } else {
                // t_1 mod 2 determines the hit pattern on the dashed sides.
                let n3 = c.t[0].rem_euclid(2);
                let n2 = (c.n[0] + n3).rem_euclid(2);
                if n2 == 1 {
                    comps.push(Component::plain(StdTag::Arc(1, 2), face));
                }
                if n3 == 1 {
                    comps.push(Component::plain(StdTag::Arc(1, 3), face));
                }
                let ret = (c.n[0] - n2 - n3) / 2;
                for _ in 0..ret {
                    comps.push(Component::plain(StdTag::Arc(1, 1), face));
                }
            }
        }
    }
    Ok(comps)
}

/// Bounded enumeration of per-face monoid members (all entries with
/// `0 <= n_i <= n_max`, `|t_i| <= t_max`).
pub fn enumerate_lambda(face: FaceType, n_max: i64, t_max: i64) -> Vec<FaceCoord> {
    let j = face.bold();
    let mut out = Vec::new();
    let mut stack = vec![Vec::<i64>::new()];
    // Enumerate n-vectors then t-vectors.
    while let Some(n) = stack.pop() {
        if n.len() == j {
            let mut tstack = vec![Vec::<i64>::new()];
            while let Some(t) = tstack.pop() {
                if t.len() == j {
                    let c = FaceCoord { face, n: n.clone(), t };
                    if lambda_member(face, &c).expect("shape ok") {
                        out.push(c);
                    }
                } else {
                    for v in -t_max..=t_max {
                        let mut next = t.clone();
                        next.push(v);
                        tstack.push(next);
                    }
                }
            }
        } else {
            for v in 0..=n_max {
                let mut next = n.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    out.sort_by(|a, b| (&a.n, &a.t).cmp(&(&b.n, &b.t)));
    out
}

// --- DT datum -----------------------------------------------------------------

/// Which of the two lifts of a decomposition curve a bold side is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lift {
    Prime,
    DoublePrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Bold { curve: usize, lift: Lift },
    Dashed { boundary: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsFace {
    pub face: FaceType,
    pub sides: [Side; 3],
}

/// A reference to one bold side: face index and side position (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftRef {
    pub face: usize,
    pub side: usize,
}

/// A pants decomposition with dual-graph data: the ordered curve list and
/// the faces with their characteristic-map side assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtDatum {
    genus: u32,
    boundary: u32,
    curves: Vec<String>,
    faces: Vec<PantsFace>,
    prime: Vec<LiftRef>,
    dprime: Vec<LiftRef>,
}

impl DtDatum {
    pub fn new(
        genus: u32,
        boundary: u32,
        curves: Vec<String>,
        faces: Vec<PantsFace>,
    ) -> Result<Self> {
        let (g, m) = (genus, boundary);
        if (g == 0 && m <= 4) || (g == 1 && m == 0) {
            return Err(Error::ExcludedSurface(g, m));
        }
        let r = (3 * i64::from(g) - 3 + i64::from(m)) as usize;
        if curves.len() != r {
            return Err(Error::InvalidDatum(format!(
                "{} curves given, 3g-3+m = {r}",
                curves.len()
            )));
        }
        let f_expect = (2 * i64::from(g) - 2 + i64::from(m)) as usize;
        if faces.len() != f_expect {
            return Err(Error::InvalidDatum(format!(
                "{} faces given, 2g-2+m = {f_expect}",
                faces.len()
            )));
        }
        let mut prime: Vec<Option<LiftRef>> = vec![None; r];
        let mut dprime: Vec<Option<LiftRef>> = vec![None; r];
        let mut dashed_seen = vec![false; m as usize];
        for (fi, f) in faces.iter().enumerate() {
            let bold_count = f.face.bold();
            for (si, side) in f.sides.iter().enumerate() {
                match side {
                    Side::Bold { curve, lift } => {
                        if si >= bold_count {
                            return Err(Error::InvalidDatum(format!(
                                "face {fi}: side {si} must be dashed on a type-{} face",
                                f.face.type_number()
                            )));
                        }
                        if *curve >= r {
                            return Err(Error::InvalidDatum(format!(
                                "face {fi}: curve index {curve} out of range"
                            )));
                        }
                        let slot = match lift {
                            Lift::Prime => &mut prime[*curve],
                            Lift::DoublePrime => &mut dprime[*curve],
                        };
                        if slot.is_some() {
                            return Err(Error::InvalidDatum(format!(
                                "curve {} has two {:?} lifts",
                                curves[*curve], lift
                            )));
                        }
                        if matches!(lift, Lift::Prime) && f.face == FaceType::P1 {
                            return Err(Error::InvalidDatum(format!(
                                "curve {}: the prime lift may not lie on a type-1 face",
                                curves[*curve]
                            )));
                        }
                        *slot = Some(LiftRef { face: fi, side: si });
                    }
                    Side::Dashed { boundary } => {
                        if si < bold_count {
                            return Err(Error::InvalidDatum(format!(
                                "face {fi}: side {si} must be bold on a type-{} face",
                                f.face.type_number()
                            )));
                        }
                        if *boundary >= m as usize {
                            return Err(Error::InvalidDatum(format!(
                                "face {fi}: boundary index {boundary} out of range"
                            )));
                        }
                        if dashed_seen[*boundary] {
                            return Err(Error::InvalidDatum(format!(
                                "boundary {boundary} used twice"
                            )));
                        }
                        dashed_seen[*boundary] = true;
                    }
                }
            }
        }
        let prime: Vec<LiftRef> = prime
            .into_iter()
            .enumerate()
            .map(|(c, s)| {
                s.ok_or_else(|| Error::InvalidDatum(format!("curve {} has no prime lift", curves[c])))
            })
            .collect::<Result<_>>()?;
        let dprime: Vec<LiftRef> = dprime
            .into_iter()
            .enumerate()
            .map(|(c, s)| {
                s.ok_or_else(|| {
                    Error::InvalidDatum(format!("curve {} has no double-prime lift", curves[c]))
                })
            })
            .collect::<Result<_>>()?;
        if let Some(missing) = dashed_seen.iter().position(|&b| !b) {
            return Err(Error::InvalidDatum(format!("boundary {missing} unused")));
        }
        // Ordering condition: on a type-2 face the curve under the first bold
        // side does not come after the curve under the second.
        for (fi, f) in faces.iter().enumerate() {
            if f.face == FaceType::P2 {
                let c1 = match f.sides[0] {
                    Side::Bold { curve, .. } => curve,
                    _ => unreachable!("validated"),
                };
                let c2 = match f.sides[1] {
                    Side::Bold { curve, .. } => curve,
                    _ => unreachable!("validated"),
                };
                if c1 > c2 {
                    return Err(Error::InvalidDatum(format!(
                        "face {fi} violates the ordering condition: curve {} after {}",
                        curves[c1], curves[c2]
                    )));
                }
            }
        }
        // Connectivity of the face-curve incidence graph.
        let mut reach = vec![false; faces.len()];
        let mut stack = vec![0usize];
        while let Some(fi) = stack.pop() {
            if std::mem::replace(&mut reach[fi], true) {
                continue;
            }
            for c in 0..r {
                for pair in [(prime[c], dprime[c]), (dprime[c], prime[c])] {
                    if pair.0.face == fi && !reach[pair.1.face] {
                        stack.push(pair.1.face);
                    }
                }
            }
        }
        if !reach.iter().all(|&b| b) {
            return Err(Error::InvalidDatum("the glued surface is disconnected".into()));
        }
        Ok(DtDatum { genus, boundary, curves, faces, prime, dprime })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary
    }

    pub fn curves(&self) -> &[String] {
        &self.curves
    }

    pub fn rank(&self) -> usize {
        self.curves.len()
    }

    pub fn faces(&self) -> &[PantsFace] {
        &self.faces
    }

    pub fn prime_lift(&self, curve: usize) -> LiftRef {
        self.prime[curve]
    }

    pub fn dprime_lift(&self, curve: usize) -> LiftRef {
        self.dprime[curve]
    }

    /// The curve under a bold side, if the side is bold.
    pub fn side_curve(&self, r: LiftRef) -> Option<usize> {
        match self.faces[r.face].sides[r.side] {
            Side::Bold { curve, .. } => Some(curve),
            Side::Dashed { .. } => None,
        }
    }

    /// A curve is even when neither lift lies on a type-1 face.
    pub fn curve_even(&self, curve: usize) -> bool {
        self.faces[self.prime[curve].face].face != FaceType::P1
            && self.faces[self.dprime[curve].face].face != FaceType::P1
    }

    /// Number of type-2 faces; the length of the twist block of the global
    /// degree functional.
    pub fn p2_count(&self) -> usize {
        self.faces.iter().filter(|f| f.face == FaceType::P2).count()
    }

    /// `Add(b; n)` for a bold side `b`, where `n` assigns an intersection
    /// number to every curve.
    pub fn add_at(&self, lift: LiftRef, n: &[i64]) -> Result<i64> {
        let f = &self.faces[lift.face];
        let side_n: Vec<i64> = (0..f.face.bold())
            .map(|si| {
                let c = self
                    .side_curve(LiftRef { face: lift.face, side: si })
                    .expect("bold side");
                n[c]
            })
            .collect();
        add_function(f.face, lift.side + 1, &side_n)
    }
}

/// A global coordinate: intersection and twist numbers per curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalCoord {
    pub n: Vec<i64>,
    pub t: Vec<i64>,
}

impl GlobalCoord {
    pub fn zero(d: &DtDatum) -> Self {
        GlobalCoord { n: vec![0; d.rank()], t: vec![0; d.rank()] }
    }

    pub fn add(&self, other: &Self) -> Self {
        GlobalCoord {
            n: self.n.iter().zip(&other.n).map(|(a, b)| a + b).collect(),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        }
    }
}

/// First violated condition of the global coordinate monoid, if any.
pub fn global_violation(d: &DtDatum, c: &GlobalCoord) -> Result<Option<String>> {
    let r = d.rank();
    if c.n.len() != r || c.t.len() != r {
        return Err(Error::BadInput("coordinate length mismatch".into()));
    }
    for (i, &ni) in c.n.iter().enumerate() {
        if ni < 0 {
            return Ok(Some(format!("n({}) = {ni} is negative", d.curves[i])));
        }
    }
    for (fi, f) in d.faces.iter().enumerate() {
        if f.face == FaceType::P3 {
            let sum: i64 = (0..3)
                .map(|si| {
                    let cv = d.side_curve(LiftRef { face: fi, side: si }).expect("bold");
                    c.n[cv]
                })
                .sum();
            if sum % 2 != 0 {
                return Ok(Some(format!(
                    "triangular triple of face {fi} has odd intersection sum {sum}"
                )));
            }
        }
    }
    for cv in 0..r {
        if d.curve_even(cv) && c.t[cv] % 2 != 0 {
            return Ok(Some(format!(
                "curve {} is even but t = {} is odd",
                d.curves[cv], c.t[cv]
            )));
        }
        if c.n[cv] == 0 {
            let bound = d.add_at(d.prime_lift(cv), &c.n)? + d.add_at(d.dprime_lift(cv), &c.n)?;
            if c.t[cv] < bound {
                return Ok(Some(format!(
                    "n({}) = 0 but t = {} is below Add(c') + Add(c'') = {bound}",
                    d.curves[cv], c.t[cv]
                )));
            }
        }
    }
    Ok(None)
}

pub fn global_member(d: &DtDatum, c: &GlobalCoord) -> Result<bool> {
    Ok(global_violation(d, c)?.is_none())
}

/// Split a global member coordinate into per-face coordinates: the prime
/// side receives the Add correction, the double-prime side the remainder.
pub fn split_coordinates(d: &DtDatum, c: &GlobalCoord) -> Result<Vec<FaceCoord>> {
    if let Some(msg) = global_violation(d, c)? {
        return Err(Error::Membership(msg));
    }
    let mut out: Vec<FaceCoord> = d.faces.iter().map(|f| FaceCoord::zero(f.face)).collect();
    for cv in 0..d.rank() {
        let p = d.prime_lift(cv);
        let dp = d.dprime_lift(cv);
        let t_prime = d.add_at(p, &c.n)?;
        let t_dprime = c.t[cv] - t_prime;
        out[p.face].n[p.side] = c.n[cv];
        out[p.face].t[p.side] = t_prime;
        out[dp.face].n[dp.side] = c.n[cv];
        out[dp.face].t[dp.side] = t_dprime;
    }
    for (fi, fc) in out.iter().enumerate() {
        if let Some(msg) = lambda_violation(fc.face, fc)? {
            return Err(Error::Membership(format!("face {fi}: {msg}")));
        }
    }
    Ok(out)
}

/// Per-face diagrams, one per face of the datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family(pub Vec<FaceDiagram>);

impl Family {
    pub fn empty(d: &DtDatum) -> Self {
        Family(d.faces.iter().map(|f| FaceDiagram::empty(f.face)).collect())
    }

    pub fn coords(&self) -> Result<Vec<FaceCoord>> {
        self.0.iter().map(face_coord).collect()
    }
}

/// Check the matching condition `|alpha . c'| = |alpha . c''|` and return the
/// patched global coordinate.
pub fn patch_family(d: &DtDatum, family: &Family) -> Result<GlobalCoord> {
    if family.0.len() != d.faces.len() {
        return Err(Error::BadInput("family length differs from face count".into()));
    }
    for (fi, diag) in family.0.iter().enumerate() {
        if diag.face != d.faces[fi].face {
            return Err(Error::BadInput(format!("family entry {fi} has the wrong face type")));
        }
    }
    let coords = family.coords()?;
    patch_coords(d, &coords)
}

/// Patch per-face coordinates into a global coordinate, checking matching.
pub fn patch_coords(d: &DtDatum, coords: &[FaceCoord]) -> Result<GlobalCoord> {
    let mut n = vec![0i64; d.rank()];
    let mut t = vec![0i64; d.rank()];
    for cv in 0..d.rank() {
        let p = d.prime_lift(cv);
        let dp = d.dprime_lift(cv);
        let n_p = coords[p.face].n[p.side];
        let n_dp = coords[dp.face].n[dp.side];
        if n_p != n_dp {
            return Err(Error::Unmatched(d.curves[cv].clone()));
        }
        n[cv] = n_p;
        t[cv] = coords[p.face].t[p.side] + coords[dp.face].t[dp.side];
    }
    Ok(GlobalCoord { n, t })
}

/// The canonical representative of a matched family: loops carried on the
/// prime side, and for positive intersection the prime-side twist pinned to
/// the Add correction by t-moves. Families related by t-moves or loop-moves
/// normalize identically; the map is idempotent.
pub fn normalize_matched(d: &DtDatum, family: &Family) -> Result<Family> {
    let global = patch_family(d, family)?;
    canonical_family(d, &global)
}

/// The canonical family of a global member coordinate.
pub fn canonical_family(d: &DtDatum, global: &GlobalCoord) -> Result<Family> {
    let split = split_coordinates(d, global)?;
    let mut diagrams: Vec<FaceDiagram> = split
        .iter()
        .map(|fc| decompose_face_coord(fc.face, fc))
        .collect::<Result<_>>()?;
    // Loop transfer: decompose leaves all curve-parallel loops on the
    // double-prime side; the canonical form carries them on the prime side.
    for cv in 0..d.rank() {
        if global.n[cv] != 0 {
            continue;
        }
        let p = d.prime_lift(cv);
        let dp = d.dprime_lift(cv);
        let tag_dp = StdTag::Loop(dp.side + 1);
        let count = diagrams[dp.face]
            .components
            .iter()
            .filter(|c| c.tag == tag_dp)
            .count();
        if count == 0 {
            continue;
        }
        diagrams[dp.face].components.retain(|c| c.tag != tag_dp);
        let face_p = diagrams[p.face].face;
        for _ in 0..count {
            diagrams[p.face]
                .components
                .push(Component::plain(StdTag::Loop(p.side + 1), face_p));
        }
        diagrams[p.face].components.sort();
    }
    Ok(Family(diagrams))
}

// --- JSON ----------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DatumJson {
    genus: u32,
    boundary: u32,
    curves: Vec<String>,
    faces: Vec<FaceJson>,
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    #[serde(rename = "type")]
    face_type: u8,
    sides: Vec<SideJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SideJson {
    Bold { curve: String, lift: String },
    Dashed { boundary: usize },
}

impl DtDatum {
    pub fn to_json(&self) -> serde_json::Value {
        let faces = self
            .faces
            .iter()
            .map(|f| FaceJson {
                face_type: f.face.type_number(),
                sides: f
                    .sides
                    .iter()
                    .take(3)
                    .map(|s| match s {
                        Side::Bold { curve, lift } => SideJson::Bold {
                            curve: self.curves[*curve].clone(),
                            lift: match lift {
                                Lift::Prime => "prime".into(),
                                Lift::DoublePrime => "double".into(),
                            },
                        },
                        Side::Dashed { boundary } => SideJson::Dashed { boundary: *boundary },
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(DatumJson {
            genus: self.genus,
            boundary: self.boundary,
            curves: self.curves.clone(),
            faces,
        })
        .expect("datum serialization")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let dj: DatumJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::BadInput(format!("datum: {e}")))?;
        let mut faces = Vec::new();
        for f in &dj.faces {
            if f.sides.len() != 3 {
                return Err(Error::BadInput("each face needs exactly 3 sides".into()));
            }
            let ft = FaceType::from_number(f.face_type)?;
            let mut sides = Vec::new();
            for s in &f.sides {
                sides.push(match s {
                    SideJson::Bold { curve, lift } => {
                        let idx = dj
                            .curves
                            .iter()
                            .position(|c| c == curve)
                            .ok_or_else(|| Error::BadInput(format!("unknown curve `{curve}`")))?;
                        let lift = match lift.as_str() {
                            "prime" | "'" => Lift::Prime,
                            "double" | "''" => Lift::DoublePrime,
                            other => {
                                return Err(Error::BadInput(format!("bad lift `{other}`")))
                            }
                        };
                        Side::Bold { curve: idx, lift }
                    }
                    SideJson::Dashed { boundary } => Side::Dashed { boundary: *boundary },
                });
            }
            faces.push(PantsFace {
                face: ft,
                sides: [sides[0], sides[1], sides[2]],
            });
        }
        DtDatum::new(dj.genus, dj.boundary, dj.curves, faces)
    }
}

impl FaceDiagram {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "face": self.face.type_number(),
            "components": self
                .components
                .iter()
                .map(|c| serde_json::json!({ "tag": c.tag.name(), "twists": c.twists }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let ft = value
            .get("face")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::BadInput("diagram missing `face`".into()))?;
        let face = FaceType::from_number(ft as u8)?;
        let mut comps = Vec::new();
        for c in value
            .get("components")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::BadInput("diagram missing `components`".into()))?
        {
            let tag = StdTag::parse(
                c.get("tag")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::BadInput("component missing `tag`".into()))?,
            )?;
            let twists: Vec<i64> = match c.get("twists") {
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|e| Error::BadInput(format!("twists: {e}")))?,
                None => vec![0; face.bold()],
            };
            comps.push(Component { tag, twists });
        }
        FaceDiagram::new(face, comps)
    }
}
