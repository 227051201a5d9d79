//! Aisles, t-structures, hearts and simple-minded collections.
//!
//! An aisle `U` is stored as one threshold per indecomposable module: `M[d]`
//! lies in `U` iff `d >= c_M`, where `c_M` is an extended integer. Aisles are
//! closed under `[1]` and under summands, so this is exact and also covers
//! unbounded aisles. The coaisle side is never stored: `D^{>=1} = U^⊥` is
//! computed as a second threshold vector `v` (`N[e]` in `U^⊥` iff `e <= v_N`).
//!
//! In this locally finite Krull–Schmidt setting every suspended subcategory is
//! an aisle, and a threshold vector describes an aisle exactly when it is equal
//! to the left orthogonal of its right orthogonal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::derivedcat::{catalog, AutoEq, Catalog, DObject, DerivedError, IndecObject};
use crate::exactmat::integer_determinant;
use crate::repcat::{Algebra, Interval};

/// `Z ∪ {-inf, +inf}` with the obvious order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub fn add(self, s: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + s),
            other => other,
        }
    }

    pub fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::Fin(v) => ExtInt::Fin(-v),
            ExtInt::PosInf => ExtInt::NegInf,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    /// `self <= d`.
    pub fn le(self, d: i64) -> bool {
        self <= ExtInt::Fin(d)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtInt::NegInf),
            "+inf" | "inf" => Ok(ExtInt::PosInf),
            t => t.parse().map(ExtInt::Fin).map_err(|_| format!("not an extended integer: {s:?}")),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ExtInt::Fin(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// First failing t-structure axiom, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Failure {
    /// `left -> missing -> right` is a triangle with outer terms in the aisle.
    Extension { left: IndecObject, right: IndecObject, missing: IndecObject },
    Orthogonality { x: IndecObject, y: IndecObject },
    Truncation { z: IndecObject, reason: String },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Extension { left, right, missing } => {
                write!(f, "extension of {right} by {left} needs {missing}, which is not in the aisle")
            }
            Failure::Orthogonality { x, y } => write!(f, "Hom({x}, {y}) != 0 across the t-structure"),
            Failure::Truncation { z, reason } => write!(f, "no truncation triangle for {z}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TstrError {
    #[error("not an aisle: {0}")]
    NotAnAisle(Failure),
    #[error("t-structure is not bounded")]
    Unbounded,
    #[error("truncation search found no triangle for {0}")]
    TruncationExhausted(IndecObject),
    #[error("truncation search found several triangles for {0}")]
    TruncationAmbiguous(IndecObject),
    #[error("not a simple-minded collection: {0:?} fails")]
    NotSmc(SmcAxiom),
    #[error("extension closure and orthogonal closure of the collection disagree")]
    ClosureMismatch,
    #[error("heart has {got} simples, expected {expected}")]
    HeartNotLength { expected: usize, got: usize },
    #[error("objects belong to different algebras")]
    AlgebraMismatch,
    #[error("bad aisle description: {0}")]
    Format(String),
    #[error(transparent)]
    Derived(#[from] DerivedError),
}

/// Generator of an aisle in JSON: `d` may be `"-inf"` for all shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub l: usize,
    pub k: usize,
    pub d: ExtInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AisleJson {
    pub tails: Vec<ExtInt>,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aisle {
    alg: Algebra,
    thr: Vec<ExtInt>,
}

impl Aisle {
    /// Thresholds listed in the order of `Algebra::modules`.
    pub fn from_thresholds(alg: &Algebra, thr: Vec<ExtInt>) -> Self {
        assert_eq!(thr.len(), alg.modules().len(), "one threshold per indecomposable module");
        Aisle { alg: alg.clone(), thr }
    }

    fn constant(alg: &Algebra, c: ExtInt) -> Self {
        Aisle { alg: alg.clone(), thr: vec![c; alg.modules().len()] }
    }

    pub fn standard(alg: &Algebra) -> Self {
        Self::constant(alg, ExtInt::Fin(0))
    }

    pub fn whole(alg: &Algebra) -> Self {
        Self::constant(alg, ExtInt::NegInf)
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::constant(alg, ExtInt::PosInf)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn thresholds(&self) -> &[ExtInt] {
        &self.thr
    }

    pub fn threshold(&self, m: Interval) -> Option<ExtInt> {
        self.alg.modules().iter().position(|&x| x == m).map(|i| self.thr[i])
    }

    pub fn member(&self, x: IndecObject) -> bool {
        self.threshold(x.module()).is_some_and(|c| c.le(x.d))
    }

    /// `U[s]`.
    pub fn shifted(&self, s: i64) -> Self {
        Aisle { alg: self.alg.clone(), thr: self.thr.iter().map(|c| c.add(s)).collect() }
    }

    pub fn is_bounded(&self) -> bool {
        self.thr.iter().all(|c| c.is_finite())
    }

    pub fn to_json(&self) -> AisleJson {
        let modules = self.alg.modules();
        let mut tails = Vec::new();
        let mut extras = Vec::new();
        for b in self.alg.blocks() {
            let idx: Vec<usize> = (0..modules.len())
                .filter(|&i| b.offset <= modules[i].l && modules[i].k <= b.offset + b.size)
                .collect();
            let top = idx.iter().map(|&i| self.thr[i]).max().unwrap_or(ExtInt::PosInf);
            tails.push(top.neg());
            for &i in &idx {
                if self.thr[i] < top {
                    extras.push(Extra { l: modules[i].l, k: modules[i].k, d: self.thr[i] });
                }
            }
        }
        AisleJson { tails, extras }
    }

    /// Extras need not be minimal; each one adds all its higher shifts.
    pub fn from_json(alg: &Algebra, j: &AisleJson) -> Result<Self, TstrError> {
        if j.tails.len() != alg.blocks().len() {
            return Err(TstrError::Format(format!(
                "expected {} tails, got {}",
                alg.blocks().len(),
                j.tails.len()
            )));
        }
        let modules = alg.modules();
        let mut thr = vec![ExtInt::PosInf; modules.len()];
        for (bi, b) in alg.blocks().iter().enumerate() {
            for (i, m) in modules.iter().enumerate() {
                if b.offset <= m.l && m.k <= b.offset + b.size {
                    thr[i] = j.tails[bi].neg();
                }
            }
        }
        for (pos, e) in j.extras.iter().enumerate() {
            let m = Interval::new(e.l, e.k);
            let i = modules
                .iter()
                .position(|&x| x == m)
                .ok_or_else(|| TstrError::Format(format!("extras[{pos}]: ({},{}) is not a module", e.l, e.k)))?;
            if e.d == ExtInt::PosInf {
                return Err(TstrError::Format(format!("extras[{pos}]: shift +inf adds nothing")));
            }
            thr[i] = thr[i].min(e.d);
        }
        Ok(Aisle { alg: alg.clone(), thr })
    }
}

/// `v_N` such that `N[e]` is in `U^⊥` iff `e <= v_N`.
pub fn right_orth(cat: &Catalog, thr: &[ExtInt]) -> Vec<ExtInt> {
    (0..cat.len())
        .map(|n| {
            let mut v = ExtInt::PosInf;
            for m in 0..cat.len() {
                if cat.hom(m, n) {
                    v = v.min(thr[m].add(-1));
                }
                if cat.ext(m, n) {
                    v = v.min(thr[m]);
                }
            }
            v
        })
        .collect()
}

/// Thresholds of the left orthogonal of `{N[e] : e <= v_N}`.
pub fn left_orth(cat: &Catalog, v: &[ExtInt]) -> Vec<ExtInt> {
    (0..cat.len())
        .map(|m| {
            let mut c = ExtInt::NegInf;
            for n in 0..cat.len() {
                if cat.hom(m, n) {
                    c = c.max(v[n].add(1));
                }
                if cat.ext(m, n) {
                    c = c.max(v[n]);
                }
            }
            c
        })
        .collect()
}

pub fn is_aisle(cat: &Catalog, thr: &[ExtInt]) -> bool {
    left_orth(cat, &right_orth(cat, thr)) == thr
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RuleKind {
    /// `0 -> M_i -> Q ⊕ .. -> M_j -> 0`
    Ext,
    /// `Q = coker(M_j -> M_i)`, from `M_i[a] -> E -> M_j[a+1]`
    Coker,
    /// `Q = ker(M_j -> M_i)`, same triangle, `Q` one degree up
    Ker,
}

/// `c_q <= bound(c_i, c_j)` must hold in any extension-closed set.
#[derive(Debug, Clone, Copy)]
struct Rule {
    i: usize,
    j: usize,
    q: usize,
    kind: RuleKind,
}

impl Rule {
    fn bound(&self, thr: &[ExtInt]) -> ExtInt {
        let (ci, cj) = (thr[self.i], thr[self.j]);
        match self.kind {
            RuleKind::Ext => ci.max(cj),
            RuleKind::Coker => ci.max(cj.add(-1)),
            RuleKind::Ker => ci.max(cj.add(-1)).add(1),
        }
    }

    fn witness(&self, cat: &Catalog, thr: &[ExtInt]) -> Failure {
        let missing_d = match (self.bound(thr), thr[self.q]) {
            (ExtInt::Fin(b), _) => b,
            (_, ExtInt::Fin(c)) => c - 1,
            _ => 0,
        };
        let (a, b) = match self.kind {
            RuleKind::Ext => (missing_d, missing_d),
            RuleKind::Coker => (missing_d, missing_d + 1),
            RuleKind::Ker => (missing_d - 1, missing_d),
        };
        Failure::Extension { left: cat.object(self.i, a), right: cat.object(self.j, b), missing: cat.object(self.q, missing_d) }
    }
}

fn rules(cat: &Catalog) -> Vec<Rule> {
    let mut out = Vec::new();
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            if cat.ext(j, i) {
                for &q in cat.middle(j, i) {
                    out.push(Rule { i, j, q, kind: RuleKind::Ext });
                }
            }
            if cat.hom(j, i) {
                let (k, c) = cat.ker_coker(j, i);
                if let Some(q) = c {
                    out.push(Rule { i, j, q, kind: RuleKind::Coker });
                }
                if let Some(q) = k {
                    out.push(Rule { i, j, q, kind: RuleKind::Ker });
                }
            }
        }
    }
    out
}

/// First pairwise extension-closure violation, if any.
pub fn extension_violation(cat: &Catalog, thr: &[ExtInt]) -> Option<Failure> {
    rules(cat).into_iter().find(|r| thr[r.q] > r.bound(thr)).map(|r| r.witness(cat, thr))
}

/// Closure under extensions of pairs of indecomposables, iterated to a fixpoint.
pub fn extension_close(cat: &Catalog, thr: &[ExtInt]) -> Vec<ExtInt> {
    let rules = rules(cat);
    let mut thr = thr.to_vec();
    loop {
        let mut changed = false;
        for r in &rules {
            let b = r.bound(&thr);
            if thr[r.q] > b {
                thr[r.q] = b;
                changed = true;
            }
        }
        if !changed {
            return thr;
        }
    }
}

/// Transport thresholds along `Φ`.
pub fn transport(cat: &Catalog, thr: &[ExtInt], phi: AutoEq) -> Vec<ExtInt> {
    let mut out = vec![ExtInt::PosInf; thr.len()];
    for (i, &c) in thr.iter().enumerate() {
        let y = cat.apply(phi, cat.object(i, 0));
        out[cat.idx(y.module()).expect("Φ preserves the algebra")] = c.add(y.d);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Heart {
    pub indecomposables: Vec<IndecObject>,
    pub simples: Vec<IndecObject>,
}

/// Outcome of [`TStructure::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub lo: i64,
    pub hi: i64,
    pub checked: usize,
    pub failure: Option<Failure>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// A t-structure, determined by its aisle.
#[derive(Clone)]
pub struct TStructure {
    aisle: Aisle,
    cat: Arc<Catalog>,
    perp: Vec<ExtInt>,
}

impl fmt::Debug for TStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TStructure").field("thresholds", &self.aisle.thr).finish()
    }
}

impl PartialEq for TStructure {
    fn eq(&self, other: &Self) -> bool {
        self.aisle == other.aisle
    }
}

impl Eq for TStructure {}

impl std::hash::Hash for TStructure {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.aisle.hash(state)
    }
}

impl PartialOrd for TStructure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TStructure {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.aisle.cmp(&other.aisle)
    }
}

type Pieces = (DObject, DObject);

impl TStructure {
    pub fn new(aisle: Aisle) -> Result<Self, TstrError> {
        let t = Self::unchecked(aisle);
        if let Some(w) = extension_violation(&t.cat, &t.aisle.thr) {
            return Err(TstrError::NotAnAisle(w));
        }
        let closure = left_orth(&t.cat, &t.perp);
        if let Some(i) = (0..closure.len()).find(|&i| closure[i] != t.aisle.thr[i]) {
            let d = closure[i].finite().unwrap_or(0);
            let reason = "lies in the left orthogonal of the coaisle but not in the aisle".to_string();
            return Err(TstrError::NotAnAisle(Failure::Truncation { z: t.cat.object(i, d), reason }));
        }
        Ok(t)
    }

    pub(crate) fn unchecked(aisle: Aisle) -> Self {
        let cat = catalog(&aisle.alg);
        let perp = right_orth(&cat, &aisle.thr);
        TStructure { aisle, cat, perp }
    }

    pub fn from_thresholds(alg: &Algebra, thr: Vec<ExtInt>) -> Result<Self, TstrError> {
        Self::new(Aisle::from_thresholds(alg, thr))
    }

    pub fn standard(alg: &Algebra) -> Self {
        Self::unchecked(Aisle::standard(alg))
    }

    pub fn aisle(&self) -> &Aisle {
        &self.aisle
    }

    pub fn thresholds(&self) -> &[ExtInt] {
        &self.aisle.thr
    }

    pub fn catalog(&self) -> &Catalog {
        &self.cat
    }

    pub fn algebra(&self) -> &Algebra {
        &self.aisle.alg
    }

    /// `v_N` with `N[e]` in `D^{>=1}` iff `e <= v_N`.
    pub fn perp_bounds(&self) -> &[ExtInt] {
        &self.perp
    }

    fn idx(&self, x: IndecObject) -> usize {
        self.cat.idx(x.module()).expect("object of this algebra")
    }

    pub fn in_aisle(&self, x: IndecObject) -> bool {
        self.aisle.thr[self.idx(x)].le(x.d)
    }

    /// `x` in `D^{>=1} = U^⊥`.
    pub fn in_perp(&self, x: IndecObject) -> bool {
        ExtInt::Fin(x.d) <= self.perp[self.idx(x)]
    }

    /// `x` in `D^{>=0}`.
    pub fn in_coaisle(&self, x: IndecObject) -> bool {
        self.in_perp(x.shift(-1))
    }

    pub fn is_bounded(&self) -> bool {
        self.aisle.is_bounded()
    }

    /// No indecomposable lies in every `D^{<=n}` or in every `D^{>=n}`.
    pub fn is_nondegenerate(&self) -> bool {
        self.aisle.thr.iter().all(|&c| c != ExtInt::NegInf) && self.perp.iter().all(|&v| v != ExtInt::PosInf)
    }

    /// The t-structure with aisle `U[s]`.
    pub fn shifted(&self, s: i64) -> Self {
        TStructure {
            aisle: self.aisle.shifted(s),
            cat: Arc::clone(&self.cat),
            perp: self.perp.iter().map(|v| v.add(s)).collect(),
        }
    }

    pub fn transported(&self, phi: AutoEq) -> Self {
        Self::unchecked(Aisle { alg: self.aisle.alg.clone(), thr: transport(&self.cat, &self.aisle.thr, phi) })
    }

    fn members_in(&self, lo: i64, hi: i64, pred: impl Fn(IndecObject) -> bool) -> Vec<IndecObject> {
        self.cat.objects_in(lo, hi).into_iter().filter(|&x| pred(x)).collect()
    }

    /// Summand sets of `cands` whose profile vectors add up to `target`;
    /// stops after two solutions.
    fn profile_search(profiles: &[Vec<usize>], target: &[usize], cap: usize) -> Vec<Vec<usize>> {
        fn go(
            at: usize,
            profiles: &[Vec<usize>],
            target: &[usize],
            cap: usize,
            acc: &mut Vec<usize>,
            chosen: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if out.len() >= 2 {
                return;
            }
            if at == profiles.len() {
                if acc == target {
                    out.push(chosen.clone());
                }
                return;
            }
            go(at + 1, profiles, target, cap, acc, chosen, out);
            if chosen.len() < cap && profiles[at].iter().zip(acc.iter()).zip(target).all(|((p, a), t)| p + a <= *t) {
                for (a, p) in acc.iter_mut().zip(&profiles[at]) {
                    *a += p;
                }
                chosen.push(at);
                go(at + 1, profiles, target, cap, acc, chosen, out);
                chosen.pop();
                for (a, p) in acc.iter_mut().zip(&profiles[at]) {
                    *a -= p;
                }
            }
        }
        let mut out = Vec::new();
        go(0, profiles, target, cap, &mut vec![0; target.len()], &mut Vec::new(), &mut out);
        out
    }

    /// The triangle `X -> z -> Y` with `X` in the aisle and `Y` in `D^{>=1}`.
    ///
    /// `X` is found as the aisle object with the same Hom profile from aisle
    /// objects as `z`, and `Y` dually; the pair must also add up to `z` in
    /// the Grothendieck group and be the only such pair.
    pub fn truncate_indec(&self, z: IndecObject) -> Result<Pieces, TstrError> {
        self.cat.idx_of(z)?;
        if self.in_aisle(z) {
            return Ok((z.into(), DObject::zero()));
        }
        if self.in_perp(z) {
            return Ok((DObject::zero(), z.into()));
        }
        let d = z.d;
        let cap = z.k - z.l;
        let c = &self.cat;

        let cands_x = self.members_in(d - 1, d, |w| self.in_aisle(w) && c.dhom(w, z) > 0);
        let probes_x = self.members_in(d - 2, d, |w| self.in_aisle(w));
        let prof_x: Vec<Vec<usize>> = cands_x.iter().map(|&w| probes_x.iter().map(|&p| c.dhom(p, w)).collect()).collect();
        let target_x: Vec<usize> = probes_x.iter().map(|&p| c.dhom(p, z)).collect();
        let sols_x = Self::profile_search(&prof_x, &target_x, cap);

        let cands_y = self.members_in(d, d + 1, |v| self.in_perp(v) && c.dhom(z, v) > 0);
        let probes_y = self.members_in(d, d + 2, |v| self.in_perp(v));
        let prof_y: Vec<Vec<usize>> = cands_y.iter().map(|&v| probes_y.iter().map(|&p| c.dhom(v, p)).collect()).collect();
        let target_y: Vec<usize> = probes_y.iter().map(|&p| c.dhom(z, p)).collect();
        let sols_y = Self::profile_search(&prof_y, &target_y, cap + 1);

        let class_z = c.groth_class(&z.into());
        let mut found = Vec::new();
        for sx in &sols_x {
            let x: DObject = sx.iter().map(|&i| cands_x[i]).collect();
            for sy in &sols_y {
                let y: DObject = sy.iter().map(|&i| cands_y[i]).collect();
                let sum: Vec<i64> = c.groth_class(&x).iter().zip(c.groth_class(&y)).map(|(a, b)| a + b).collect();
                if sum == class_z {
                    found.push((x.clone(), y));
                }
            }
        }
        match found.len() {
            0 => Err(TstrError::TruncationExhausted(z)),
            1 => Ok(found.pop().expect("one element")),
            _ => Err(TstrError::TruncationAmbiguous(z)),
        }
    }

    /// `(τ_{<=0} z, τ_{>=1} z)`, summand by summand.
    pub fn truncate(&self, z: &DObject) -> Result<Pieces, TstrError> {
        let mut xs = DObject::zero();
        let mut ys = DObject::zero();
        for &s in z.summands() {
            let (x, y) = self.truncate_indec(s)?;
            xs = xs.sum(&x);
            ys = ys.sum(&y);
        }
        Ok((xs, ys))
    }

    fn h0(&self, z: &DObject) -> Result<DObject, TstrError> {
        let (le0, _) = self.truncate(z)?;
        let (_, ge1) = self.truncate(&le0.shift(-1))?;
        Ok(ge1.shift(1))
    }

    /// `H^i(z) = τ_{>=i} τ_{<=i} z`, an object of `heart[-i]`.
    pub fn cohomology(&self, z: &DObject, i: i64) -> Result<DObject, TstrError> {
        Ok(self.h0(&z.shift(i))?.shift(-i))
    }

    pub fn heart(&self) -> Heart {
        let inds: Vec<IndecObject> = (0..self.cat.len())
            .filter_map(|i| {
                let c = self.aisle.thr[i].finite()?;
                (self.perp[i] == ExtInt::Fin(c - 1)).then(|| self.cat.object(i, c))
            })
            .collect();
        let simples = inds
            .iter()
            .copied()
            .filter(|&x| {
                let into_epi = inds.iter().filter(|&&a| a != x && self.cat.dhom(a, x) > 0).all(|&a| {
                    let cone = self.cat.cone(a, x).expect("nonzero map");
                    cone.summands().iter().all(|&q| self.in_aisle(q.shift(-1)))
                });
                let out_mono = inds.iter().filter(|&&b| b != x && self.cat.dhom(x, b) > 0).all(|&b| {
                    let cone = self.cat.cone(x, b).expect("nonzero map");
                    cone.summands().iter().all(|&q| self.in_perp(q.shift(-1)))
                });
                debug_assert_eq!(into_epi, out_mono, "simple criteria disagree at {x}");
                into_epi && out_mono
            })
            .collect();
        Heart { indecomposables: inds, simples }
    }

    /// Shift range used when no window is given: three steps past the
    /// finite thresholds on each side.
    pub fn default_window(&self) -> (i64, i64) {
        let fin: Vec<i64> = self.aisle.thr.iter().chain(&self.perp).filter_map(|c| c.finite()).collect();
        let lo = fin.iter().min().copied().unwrap_or(0);
        let hi = fin.iter().max().copied().unwrap_or(0);
        (lo - 3, hi + 3)
    }

    pub fn validate(&self) -> Validation {
        let (lo, hi) = self.default_window();
        self.validate_window(lo, hi)
    }

    /// Checks extension closure, orthogonality and the truncation axiom for
    /// every indecomposable with shift in `lo..=hi`.
    pub fn validate_window(&self, lo: i64, hi: i64) -> Validation {
        let objs = self.cat.objects_in(lo, hi);
        let mut out = Validation { lo, hi, checked: 0, failure: None };
        if let Some(w) = extension_violation(&self.cat, &self.aisle.thr) {
            out.failure = Some(w);
            return out;
        }
        for &x in objs.iter().filter(|&&x| self.in_aisle(x)) {
            for &y in objs.iter().filter(|&&y| self.in_perp(y)) {
                if self.cat.dhom(x, y) != 0 {
                    out.failure = Some(Failure::Orthogonality { x, y });
                    return out;
                }
            }
        }
        for &z in &objs {
            out.checked += 1;
            match self.truncate_indec(z) {
                Ok((x, y)) => {
                    let ok = x.summands().iter().all(|&s| self.in_aisle(s)) && y.summands().iter().all(|&s| self.in_perp(s));
                    if !ok {
                        out.failure = Some(Failure::Truncation { z, reason: "pieces on the wrong side".into() });
                        return out;
                    }
                }
                Err(e) => {
                    out.failure = Some(Failure::Truncation { z, reason: e.to_string() });
                    return out;
                }
            }
        }
        let closure = left_orth(&self.cat, &self.perp);
        if let Some(i) = (0..closure.len()).find(|&i| closure[i] != self.aisle.thr[i]) {
            let z = self.cat.object(i, closure[i].finite().unwrap_or(0));
            out.failure = Some(Failure::Truncation { z, reason: "outside the aisle yet orthogonal to the coaisle".into() });
        }
        out
    }
}

/// Shifted objects forming a simple-minded collection, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<IndecObject>", into = "Vec<IndecObject>")]
pub struct Smc {
    objects: Vec<IndecObject>,
}

impl From<Vec<IndecObject>> for Smc {
    fn from(mut objects: Vec<IndecObject>) -> Self {
        objects.sort();
        Smc { objects }
    }
}

impl From<Smc> for Vec<IndecObject> {
    fn from(s: Smc) -> Self {
        s.objects
    }
}

impl Smc {
    pub fn objects(&self) -> &[IndecObject] {
        &self.objects
    }

    pub fn shifted(&self, s: i64) -> Smc {
        self.objects.iter().map(|x| x.shift(s)).collect::<Vec<_>>().into()
    }

    /// The simple modules `S_1, ..., S_n` of each block.
    pub fn standard(alg: &Algebra) -> Smc {
        alg.blocks()
            .iter()
            .flat_map(|b| (b.offset..b.offset + b.size).map(|v| IndecObject::new(v, v + 1, 0)))
            .collect::<Vec<_>>()
            .into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SmcAxiom {
    Size,
    NegativeShifts,
    Orthogonality,
    Determinant,
    Generation,
}

/// Axioms (1) and (2) for one pair, in both directions.
fn smc_pair_ok(cat: &Catalog, x: IndecObject, y: IndecObject) -> bool {
    smc_pair_axiom(cat, x, y).is_none()
}

fn smc_pair_axiom(cat: &Catalog, x: IndecObject, y: IndecObject) -> Option<SmcAxiom> {
    for (a, b) in [(x, y), (y, x)] {
        if a != b && cat.dhom(a, b) != 0 {
            return Some(SmcAxiom::Orthogonality);
        }
        // Hom(a, b[m]) with m < 0 can only be nonzero for b.d + m in {a.d, a.d + 1}
        for m in [a.d - b.d, a.d + 1 - b.d] {
            if m < 0 && cat.dhom(a, b.shift(m)) != 0 {
                return Some(SmcAxiom::NegativeShifts);
            }
        }
    }
    None
}

fn class_determinant(cat: &Catalog, objs: &[IndecObject]) -> i64 {
    let rows: Vec<Vec<i64>> = objs.iter().map(|&x| cat.groth_class(&x.into())).collect();
    integer_determinant(&rows)
}

/// Thick closure at module level: kernels, cokernels and extension middle terms.
fn generates(cat: &Catalog, objs: &[IndecObject]) -> bool {
    let mut have = vec![false; cat.len()];
    let mut list = Vec::new();
    for x in objs {
        let i = cat.idx(x.module()).expect("object of the algebra");
        if !have[i] {
            have[i] = true;
            list.push(i);
        }
    }
    let mut at = 0;
    while at < list.len() {
        let i = list[at];
        at += 1;
        let snapshot = list.clone();
        for &j in &snapshot {
            let mut found = Vec::new();
            for (a, b) in [(i, j), (j, i)] {
                if cat.hom(a, b) {
                    let (k, c) = cat.ker_coker(a, b);
                    found.extend(k);
                    found.extend(c);
                }
                if cat.ext(a, b) {
                    found.extend_from_slice(cat.middle(a, b));
                }
            }
            for q in found {
                if !have[q] {
                    have[q] = true;
                    list.push(q);
                }
            }
        }
    }
    have.iter().all(|&h| h)
}

pub fn smc_violation(cat: &Catalog, s: &Smc) -> Option<SmcAxiom> {
    let objs = s.objects();
    if objs.len() != cat.algebra().rank() || objs.iter().any(|&x| !cat.contains(x)) {
        return Some(SmcAxiom::Size);
    }
    for (a, &x) in objs.iter().enumerate() {
        for &y in &objs[a..] {
            if let Some(ax) = smc_pair_axiom(cat, x, y) {
                return Some(ax);
            }
        }
    }
    if class_determinant(cat, objs).abs() != 1 {
        return Some(SmcAxiom::Determinant);
    }
    if !generates(cat, objs) {
        return Some(SmcAxiom::Generation);
    }
    None
}

pub fn smc_check(cat: &Catalog, s: &Smc) -> bool {
    smc_violation(cat, s).is_none()
}

/// The aisle generated by all non-negative shifts of the collection.
pub fn aisle_from_smc(alg: &Algebra, s: &Smc) -> Result<TStructure, TstrError> {
    let cat = catalog(alg);
    if let Some(ax) = smc_violation(&cat, s) {
        return Err(TstrError::NotSmc(ax));
    }
    let mut seed = vec![ExtInt::PosInf; cat.len()];
    for x in s.objects() {
        let i = cat.idx_of(*x)?;
        seed[i] = seed[i].min(ExtInt::Fin(x.d));
    }
    let closed = extension_close(&cat, &seed);
    let orth = left_orth(&cat, &right_orth(&cat, &seed));
    if closed != orth {
        return Err(TstrError::ClosureMismatch);
    }
    let t = TStructure::new(Aisle::from_thresholds(alg, closed))?;
    if !t.is_bounded() {
        return Err(TstrError::Unbounded);
    }
    Ok(t)
}

/// Simples of the heart, sorted.
pub fn recover_smc(t: &TStructure) -> Result<Smc, TstrError> {
    if !t.is_bounded() {
        return Err(TstrError::Unbounded);
    }
    let simples = t.heart().simples;
    let expected = t.algebra().rank();
    if simples.len() != expected {
        return Err(TstrError::HeartNotLength { expected, got: simples.len() });
    }
    Ok(simples.into())
}

/// All collections with every shift in `lo..=hi`, sorted.
pub fn enumerate_smc(alg: &Algebra, lo: i64, hi: i64) -> Vec<Smc> {
    let cat = catalog(alg);
    let n = alg.rank();
    let objs = cat.objects_in(lo, hi);
    fn go(cat: &Catalog, objs: &[IndecObject], n: usize, from: usize, chosen: &mut Vec<IndecObject>, out: &mut Vec<Smc>) {
        if chosen.len() == n {
            if class_determinant(cat, chosen).abs() == 1 && generates(cat, chosen) {
                out.push(chosen.clone().into());
            }
            return;
        }
        for at in from..objs.len() {
            let x = objs[at];
            if chosen.iter().all(|&y| smc_pair_ok(cat, x, y)) && smc_pair_ok(cat, x, x) {
                chosen.push(x);
                go(cat, objs, n, at + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    if n == 0 {
        return vec![Vec::new().into()];
    }
    let mut out: Vec<Smc> = (0..objs.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            if smc_pair_ok(&cat, objs[first], objs[first]) {
                go(&cat, &objs, n, first + 1, &mut vec![objs[first]], &mut out);
            }
            out
        })
        .collect();
    out.sort();
    out
}

/// Every threshold vector with entries from `values` that is an aisle.
fn enumerate_thresholds(cat: &Catalog, values: &[ExtInt]) -> Vec<Vec<ExtInt>> {
    let m = cat.len();
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut by_last: Vec<Vec<Rule>> = vec![Vec::new(); m];
    for r in rules(cat) {
        by_last[r.i.max(r.j).max(r.q)].push(r);
    }
    fn go(cat: &Catalog, values: &[ExtInt], by_last: &[Vec<Rule>], thr: &mut Vec<ExtInt>, out: &mut Vec<Vec<ExtInt>>) {
        let at = thr.len();
        if at == by_last.len() {
            if is_aisle(cat, thr) {
                out.push(thr.clone());
            }
            return;
        }
        for &v in values {
            thr.push(v);
            if by_last[at].iter().all(|r| thr[r.q] <= r.bound(thr)) {
                go(cat, values, by_last, thr, out);
            }
            thr.pop();
        }
    }
    let mut out: Vec<Vec<ExtInt>> = values
        .par_iter()
        .flat_map_iter(|&v| {
            let mut out = Vec::new();
            let mut thr = vec![v];
            if by_last[0].iter().all(|r| thr[r.q] <= r.bound(&thr)) {
                go(cat, values, &by_last, &mut thr, &mut out);
            }
            out
        })
        .collect();
    out.sort();
    out
}

/// Bounded t-structures with all thresholds in `lo..=hi`, i.e. with
/// `D_0^{<=-hi} ⊂ U ⊂ D_0^{<=-lo}`.
pub fn enumerate_tstructures(alg: &Algebra, lo: i64, hi: i64) -> Vec<TStructure> {
    let cat = catalog(alg);
    let values: Vec<ExtInt> = (lo..=hi).map(ExtInt::Fin).collect();
    enumerate_thresholds(&cat, &values)
        .into_iter()
        .map(|thr| TStructure::unchecked(Aisle::from_thresholds(alg, thr)))
        .collect()
}

/// All aisles whose thresholds are `-inf`, `+inf` or in `lo..=hi`.
pub fn enumerate_aisles(alg: &Algebra, lo: i64, hi: i64) -> Vec<TStructure> {
    let cat = catalog(alg);
    let mut values = vec![ExtInt::NegInf];
    values.extend((lo..=hi).map(ExtInt::Fin));
    values.push(ExtInt::PosInf);
    enumerate_thresholds(&cat, &values)
        .into_iter()
        .map(|thr| TStructure::unchecked(Aisle::from_thresholds(alg, thr)))
        .collect()
}

/// `(t', level)` with `t'` the shift of `t` whose aisle is `D^{<=level}`
/// of `t` and which satisfies `D_0^{<=-1} ⊂ U'` but `D_0^{<=0} ⊄ U'`.
pub fn normalize(t: &TStructure) -> Result<(TStructure, i64), TstrError> {
    if !t.is_bounded() {
        return Err(TstrError::Unbounded);
    }
    let top = t.thresholds().iter().filter_map(|c| c.finite()).max().expect("nonempty algebra");
    let s = 1 - top;
    Ok((t.shifted(s), -s))
}

/// Modules lying in a normalized aisle in degree 0.
pub fn degree_zero_set(t: &TStructure) -> Vec<Interval> {
    (0..t.catalog().len()).filter(|&i| t.thresholds()[i].le(0)).map(|i| t.catalog().module(i)).collect()
}

/// Some `Φ = τ^a[b]` with `Φ(t1) = t2`, trying `a = 0, 1, -1, 2, -2, ...`.
///
/// `τ^{n+1}` is a shift on each block of size `n`, so the search over `a` is
/// complete.
pub fn orbit_equivalent(t1: &TStructure, t2: &TStructure) -> Option<AutoEq> {
    if t1.algebra() != t2.algebra() {
        return None;
    }
    let cat = t1.catalog();
    let period: i64 = t1.algebra().blocks().iter().map(|b| b.size as i64 + 1).product::<i64>().max(1);
    let mut order = vec![0];
    for a in 1..=period {
        order.push(a);
        order.push(-a);
    }
    for a in order {
        let moved = transport(cat, t1.thresholds(), AutoEq::new(a, 0));
        let b = moved.iter().zip(t2.thresholds()).find_map(|(x, y)| Some(y.finite()? - x.finite()?)).unwrap_or(0);
        if moved.iter().map(|c| c.add(b)).eq(t2.thresholds().iter().copied()) {
            return Some(AutoEq::new(a, b));
        }
    }
    None
}

/// Connected components of the AR quiver restricted to the aisle.
pub fn ar_component_count(t: &TStructure) -> Result<usize, TstrError> {
    if !t.is_bounded() {
        return Err(TstrError::Unbounded);
    }
    let cat = t.catalog();
    let fin: Vec<i64> = t.thresholds().iter().filter_map(|c| c.finite()).collect();
    let lo = fin.iter().min().copied().unwrap_or(0) - 1;
    let hi = fin.iter().max().copied().unwrap_or(0) + 2;
    let verts: Vec<IndecObject> = cat.objects_in(lo, hi).into_iter().filter(|&x| t.in_aisle(x)).collect();
    let pos = |x: IndecObject| verts.iter().position(|&v| v == x);
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let link = |a: IndecObject, b: IndecObject, parent: &mut Vec<usize>| {
        if let (Some(i), Some(j)) = (pos(a), pos(b)) {
            let (ri, rj) = (find(parent, i), find(parent, j));
            parent[ri] = rj;
        }
    };
    for z in cat.objects_in(lo - 1, hi + 1) {
        let tz = cat.tau(z);
        let mid = cat.cone(z, tz.shift(1))?.shift(-1);
        for &e in mid.summands() {
            link(tz, e, &mut parent);
            link(e, z, &mut parent);
        }
    }
    let roots: BTreeSet<usize> = (0..verts.len()).map(|i| find(&mut parent, i)).collect();
    Ok(roots.len())
}

/// Index vectors (`D^{<=t}` per factor) of all t-structures on a product of
/// `s` copies of `D^b(K)` with finite indices in `lo..=hi`.
pub fn semisimple_tstructures(s: usize, lo: i64, hi: i64) -> Vec<Vec<ExtInt>> {
    let mut values = vec![ExtInt::NegInf];
    values.extend((lo..=hi).map(ExtInt::Fin));
    values.push(ExtInt::PosInf);
    let mut out: Vec<Vec<ExtInt>> = vec![Vec::new()];
    for _ in 0..s {
        out = out.into_iter().flat_map(|v| values.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
    }
    out.sort();
    out
}

/// The templates of the A_2 classification matched by a threshold vector
/// `(c(P_1), c(P_2), c(S_2))`; a valid aisle matches exactly one.
pub fn a2_types(thr: &[ExtInt]) -> Vec<u8> {
    use ExtInt::*;
    assert_eq!(thr.len(), 3, "A_2 has three indecomposable modules");
    let (c1, c2, cs) = (thr[0], thr[1], thr[2]);
    let mut out = Vec::new();
    let all = |v| c1 == v && c2 == v && cs == v;
    if all(PosInf) || all(NegInf) {
        out.push(1);
    }
    if c1.is_finite() && c1 == c2 && c2 == cs {
        out.push(2);
    }
    if c1 != PosInf && c2 == PosInf && cs == PosInf {
        out.push(3);
    }
    if cs != PosInf && c1 == PosInf && c2 == PosInf {
        out.push(4);
    }
    if c2 != PosInf && c1 == PosInf && cs == PosInf {
        out.push(5);
    }
    if cs.is_finite() && c2 == cs && c1 < cs {
        out.push(6);
    }
    if c1.is_finite() && c1 == c2 && cs < c1 {
        out.push(7);
    }
    if let Fin(mu) = c1 {
        if cs == Fin(mu - 1) && c2 <= Fin(mu - 1) {
            out.push(8);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtInt::{Fin, NegInf, PosInf};

    fn obj(l: usize, k: usize, d: i64) -> IndecObject {
        IndecObject::new(l, k, d)
    }

    fn a(n: usize) -> Algebra {
        Algebra::linear(n)
    }

    #[test]
    fn extint_order_and_json() {
        assert!(NegInf < Fin(-100) && Fin(100) < PosInf);
        assert_eq!(serde_json::to_string(&vec![NegInf, Fin(3), PosInf]).unwrap(), r#"["-inf",3,"+inf"]"#);
        let back: Vec<ExtInt> = serde_json::from_str(r#"["+inf", -2, "-inf"]"#).unwrap();
        assert_eq!(back, vec![PosInf, Fin(-2), NegInf]);
        assert!("x".parse::<ExtInt>().is_err());
    }

    #[test]
    fn member_examples() {
        let st = Aisle::standard(&a(2));
        for x in catalog(&a(2)).objects_in(-2, 2) {
            assert_eq!(st.member(x), x.d >= 0);
        }
        let j = AisleJson { tails: vec![Fin(-1)], extras: vec![Extra { l: 1, k: 2, d: Fin(0) }] };
        let u = Aisle::from_json(&a(2), &j).unwrap();
        assert!(u.member(obj(1, 2, 0)));
        assert!(!u.member(obj(0, 1, 0)));
        assert_eq!(u.to_json(), j);
        let empty = Aisle::zero(&a(2));
        assert!(catalog(&a(2)).objects_in(-3, 3).into_iter().all(|x| !empty.member(x)));
    }

    #[test]
    fn aisle_json_round_trip_with_infinities() {
        let alg = Algebra::quotient(4, 2);
        let u = Aisle::from_thresholds(&alg, vec![Fin(0), NegInf, PosInf, Fin(2)]);
        let j = u.to_json();
        assert_eq!(j.tails, vec![Fin(0), NegInf]);
        assert_eq!(Aisle::from_json(&alg, &j).unwrap(), u);
        assert!(Aisle::from_json(&alg, &AisleJson { tails: vec![Fin(0)], extras: vec![] }).is_err());
    }

    #[test]
    fn standard_validates() {
        let t = TStructure::standard(&a(3));
        let v = t.validate_window(-3, 3);
        assert!(v.passed(), "{v:?}");
        let whole = TStructure::new(Aisle::whole(&a(3))).unwrap();
        assert!(whole.validate_window(-3, 3).passed());
        assert!(whole.heart().indecomposables.is_empty());
    }

    #[test]
    fn extension_closure_failure_has_witness() {
        // P_1 and S_2 in degree 0 force P_2 (A_2 order: P_1, P_2, S_2)
        let bad = Aisle::from_thresholds(&a(2), vec![Fin(0), Fin(1), Fin(0)]);
        match TStructure::new(bad) {
            Err(TstrError::NotAnAisle(Failure::Extension { missing, .. })) => assert_eq!(missing, obj(0, 2, 0)),
            other => panic!("expected an extension witness, got {other:?}"),
        }
    }

    #[test]
    fn truncation_examples() {
        let t = TStructure::standard(&a(3));
        let m = obj(1, 3, 0);
        assert_eq!(t.truncate(&m.into()).unwrap(), (m.into(), DObject::zero()));
        assert_eq!(t.truncate(&m.shift(-1).into()).unwrap(), (DObject::zero(), m.shift(-1).into()));
        // type (7): shifts of S_2 down to -1 over D_0^{<=-1}
        let t7 = TStructure::from_thresholds(&a(2), vec![Fin(1), Fin(1), Fin(-1)]).unwrap();
        let (x, y) = t7.truncate(&obj(0, 1, 0).into()).unwrap();
        assert_eq!(x, obj(1, 2, -1).into());
        assert_eq!(y, obj(0, 2, 0).into());
        assert!(t7.validate().passed());
        // type (6): P_1 in degree 0 cuts P_2 into P_1 and S_2
        let t6 = TStructure::from_thresholds(&a(2), vec![Fin(0), Fin(1), Fin(1)]).unwrap();
        let (x, y) = t6.truncate(&obj(0, 2, 0).into()).unwrap();
        assert_eq!((x, y), (obj(0, 1, 0).into(), obj(1, 2, 0).into()));
    }

    #[test]
    fn cohomology_examples() {
        let t = TStructure::standard(&a(3));
        let m: DObject = obj(0, 2, 0).into();
        assert_eq!(t.cohomology(&m, 0).unwrap(), m);
        assert!(t.cohomology(&m, 1).unwrap().is_zero());
        assert!(t.cohomology(&m, -1).unwrap().is_zero());
        assert!(t.cohomology(&DObject::zero(), 0).unwrap().is_zero());
    }

    #[test]
    fn cohomology_regenerates_class() {
        for t in enumerate_tstructures(&a(3), -2, 0) {
            let c = t.catalog();
            for z in c.objects_in(-2, 1) {
                let mut total = vec![0; 3];
                for i in -6..=6 {
                    let h = t.cohomology(&z.into(), i).unwrap();
                    for (acc, v) in total.iter_mut().zip(c.groth_class(&h)) {
                        *acc += v;
                    }
                }
                assert_eq!(total, c.groth_class(&z.into()));
            }
        }
    }

    #[test]
    fn heart_examples() {
        let t = TStructure::standard(&a(3));
        let h = t.heart();
        assert_eq!(h.indecomposables.len(), 6);
        assert_eq!(h.simples, vec![obj(0, 1, 0), obj(1, 2, 0), obj(2, 3, 0)]);
        let s: Smc = vec![obj(0, 1, 0), obj(1, 2, 1)].into();
        let t = aisle_from_smc(&a(2), &s).unwrap();
        assert_eq!(t.heart().simples.len(), 2);
    }

    #[test]
    fn smc_examples() {
        let c = catalog(&a(2));
        assert!(smc_check(&c, &Smc::standard(&a(2))));
        assert_eq!(smc_violation(&c, &vec![obj(0, 1, 0), obj(0, 2, 0)].into()), Some(SmcAxiom::Orthogonality));
        assert!(smc_check(&c, &vec![obj(0, 1, 0), obj(1, 2, 1)].into()));
    }

    #[test]
    fn aisle_from_smc_examples() {
        let st = aisle_from_smc(&a(3), &Smc::standard(&a(3))).unwrap();
        assert_eq!(st, TStructure::standard(&a(3)));
        let shifted = aisle_from_smc(&a(3), &Smc::standard(&a(3)).shifted(2)).unwrap();
        assert_eq!(shifted, TStructure::standard(&a(3)).shifted(2));
        // {P_1, S_2[1]}: type (6), P_1 in degree 0 over the tail D_0^{<=-1}
        let t = aisle_from_smc(&a(2), &vec![obj(0, 1, 0), obj(1, 2, 1)].into()).unwrap();
        assert_eq!(t.thresholds(), &[Fin(0), Fin(1), Fin(1)]);
        assert_eq!(a2_types(t.thresholds()), vec![6]);
    }

    #[test]
    fn recover_smc_examples() {
        let st = TStructure::standard(&a(3));
        assert_eq!(recover_smc(&st).unwrap(), Smc::standard(&a(3)));
        assert_eq!(recover_smc(&st.shifted(1)).unwrap(), Smc::standard(&a(3)).shifted(1));
    }

    #[test]
    fn enumerate_smc_examples() {
        assert_eq!(enumerate_smc(&a(1), 0, 0), vec![Smc::standard(&a(1))]);
        assert_eq!(enumerate_smc(&a(2), 0, 0), vec![Smc::standard(&a(2))]);
    }

    #[test]
    fn enumerations_agree_small() {
        for n in 1..=3 {
            for lo in -2..=0 {
                let smcs = enumerate_smc(&a(n), lo, 0);
                let ts = enumerate_tstructures(&a(n), lo, 0);
                assert_eq!(smcs.len(), ts.len(), "n={n} lo={lo}");
                for s in &smcs {
                    let t = aisle_from_smc(&a(n), s).unwrap();
                    assert_eq!(&recover_smc(&t).unwrap(), s);
                    assert!(ts.binary_search(&t).is_ok());
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let st = TStructure::standard(&a(2));
        let (nt, level) = normalize(&st).unwrap();
        assert_eq!(level, -1);
        assert!(degree_zero_set(&nt).is_empty());
        let (nt5, level5) = normalize(&st.shifted(5)).unwrap();
        assert_eq!(nt5, nt);
        assert_eq!(level5 - level, 5);
        let t7 = TStructure::from_thresholds(&a(2), vec![Fin(3), Fin(3), Fin(1)]).unwrap();
        let (n7, _) = normalize(&t7).unwrap();
        assert_eq!(degree_zero_set(&n7), vec![Interval::new(1, 2)]);
    }

    #[test]
    fn orbit_examples() {
        let ts = enumerate_tstructures(&a(2), -2, 0);
        for t in &ts {
            assert_eq!(orbit_equivalent(t, t), Some(AutoEq::IDENTITY));
            assert_eq!(orbit_equivalent(t, &t.shifted(3)), Some(AutoEq::new(0, 3)));
            let c = ar_component_count(t).unwrap();
            for phi in [AutoEq::new(1, 0), AutoEq::new(-2, 1)] {
                assert_eq!(ar_component_count(&t.transported(phi)).unwrap(), c);
            }
        }
        let st = TStructure::standard(&a(2));
        assert_eq!(ar_component_count(&st).unwrap(), 1);
        let detached = TStructure::from_thresholds(&a(2), vec![Fin(0), Fin(1), Fin(1)]).unwrap();
        assert_eq!(ar_component_count(&detached).unwrap(), 2);
        // P_1[-1] and P_1[0] are each isolated
        let two_more = TStructure::from_thresholds(&a(2), vec![Fin(-1), Fin(1), Fin(1)]).unwrap();
        assert_eq!(ar_component_count(&two_more).unwrap(), 3);
        assert_eq!(orbit_equivalent(&st, &detached), None);
    }

    #[test]
    fn semisimple_examples() {
        assert_eq!(semisimple_tstructures(1, 0, 0), vec![vec![NegInf], vec![Fin(0)], vec![PosInf]]);
        assert_eq!(semisimple_tstructures(2, 0, 0).len(), 9);
        let generic = enumerate_aisles(&Algebra::semisimple(2), 0, 0);
        assert_eq!(generic.len(), 9);
    }

    #[test]
    fn a2_every_aisle_has_one_type() {
        for t in enumerate_aisles(&a(2), -3, 0) {
            assert_eq!(a2_types(t.thresholds()).len(), 1, "{:?}", t.thresholds());
        }
    }

    #[test]
    fn nondegenerate_and_bounded() {
        let st = TStructure::standard(&a(2));
        assert!(st.is_bounded() && st.is_nondegenerate());
        let p1 = TStructure::from_thresholds(&a(2), vec![Fin(0), PosInf, PosInf]).unwrap();
        assert!(!p1.is_bounded());
        assert!(!TStructure::new(Aisle::whole(&a(2))).unwrap().is_nondegenerate());
    }
}
