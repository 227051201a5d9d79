//! Recollements of `D^b(A_n)` by `D^b(K)` and the perpendicular category of
//! an exceptional object, and the gluing of t-structures along them.
//!
//! A recollement is generated by an indecomposable `X` (always exceptional
//! here). Writing `X = Φ(P_r)` for an autoequivalence `Φ = τ^a[b]`, the
//! perpendicular category `X^⊥ = Im i_*` is `Φ` applied to `P_r^⊥`, which is
//! `D^b(A/Ae_rA)`: the intervals avoiding vertex `r`, kept in their original
//! coordinates. So `i_* = Φ` on objects of the quotient algebra.
//!
//! On objects: `j^*Z = RHom(X, Z)`, `j_!K = X`, `j_*K = τX[1]`,
//! `i^*Z = cone(j_!j^*Z -> Z)` and `i^!Z` is located by adjunction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivedcat::{catalog, AutoEq, Catalog, DObject, DerivedError, IndecObject};
use crate::repcat::{Algebra, Interval};
use crate::tstr::{Aisle, AisleJson, ExtInt, Smc, TStructure, TstrError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecolError {
    #[error("{0} is not exceptional")]
    NotExceptional(IndecObject),
    #[error("vertex {r} is not in 1..={n}")]
    BadIndex { r: usize, n: usize },
    #[error("recollements are only built on a single linear A_n")]
    NotLinear,
    #[error("t-structure is not compatible with the recollement")]
    Incompatible,
    #[error("{0} left the perpendicular category: internal error")]
    LeftPerpendicular(IndecObject),
    #[error("adjoint search for i^! found {0} candidates")]
    AdjointSearch(usize),
    #[error("no member of the collection has the others in its right perpendicular")]
    NoPivot,
    #[error("τ-orbit of {0} never reached a projective")]
    NoProjective(IndecObject),
    #[error("intermediate extension: {0} candidates")]
    IntermediateExtension(usize),
    #[error("compatible idempotent {r} (case {case}) failed its postcondition")]
    Postcondition { r: usize, case: String },
    #[error(transparent)]
    Tstr(#[from] TstrError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
}

/// JSON form: `{"kind":"idempotent","r":..}` or `{"kind":"exceptional","x":..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Generator {
    Idempotent { r: usize },
    Exceptional { x: IndecObject },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recollement {
    alg: Algebra,
    generator: Generator,
    x: IndecObject,
    base_r: usize,
    twist: AutoEq,
    quotient: Algebra,
    perp: Vec<Interval>,
}

/// A t-structure on `D^b(K)` (by its index, `D^{<=t}`) and one on the
/// quotient side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorTStructure {
    pub corner: ExtInt,
    pub quotient: Aisle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub corner: ExtInt,
    pub quotient: AisleJson,
}

impl FactorTStructure {
    pub fn to_json(&self) -> FactorJson {
        FactorJson { corner: self.corner, quotient: self.quotient.to_json() }
    }

    pub fn from_json(rec: &Recollement, j: &FactorJson) -> Result<Self, RecolError> {
        Ok(FactorTStructure { corner: j.corner, quotient: Aisle::from_json(rec.quotient_algebra(), &j.quotient)? })
    }

    pub fn is_bounded(&self) -> bool {
        self.corner.is_finite() && self.quotient.is_bounded()
    }

    pub fn is_nondegenerate(&self) -> Result<bool, RecolError> {
        let q = TStructure::new(self.quotient.clone())?;
        Ok(self.corner.is_finite() && q.is_nondegenerate())
    }
}

/// Minimal `s >= 0` with `τ^s x = P_r[d]`; returns `(s, r, d)`.
pub fn pivot_to_projective(cat: &Catalog, x: IndecObject) -> Result<(usize, usize, i64), RecolError> {
    let alg = cat.algebra();
    let cap = 2 * (alg.rank() + 1);
    let mut y = x;
    for s in 0..=cap {
        if alg.is_projective(y.module()) {
            return Ok((s, y.k, y.d));
        }
        y = cat.tau(y);
    }
    Err(RecolError::NoProjective(x))
}

/// Members `i` of the collection with every other member in `X_i^⊥`.
pub fn smc_pivots(cat: &Catalog, s: &Smc) -> Vec<usize> {
    let objs = s.objects();
    (0..objs.len())
        .filter(|&i| (0..objs.len()).all(|j| i == j || cat.perpendicular(objs[i], objs[j])))
        .collect()
}

/// The first pivot of the collection.
pub fn smc_pivot(cat: &Catalog, s: &Smc) -> Result<usize, RecolError> {
    smc_pivots(cat, s).first().copied().ok_or(RecolError::NoPivot)
}

impl Recollement {
    /// The recollement of the idempotent `e_r`, generated by `P_r`.
    pub fn idempotent(n: usize, r: usize) -> Result<Self, RecolError> {
        if !(1..=n).contains(&r) {
            return Err(RecolError::BadIndex { r, n });
        }
        let alg = Algebra::linear(n);
        Self::build(&alg, Generator::Idempotent { r }, IndecObject::new(0, r, 0), r, AutoEq::IDENTITY)
    }

    pub fn exceptional(alg: &Algebra, x: IndecObject) -> Result<Self, RecolError> {
        if !alg.is_linear() {
            return Err(RecolError::NotLinear);
        }
        let cat = catalog(alg);
        cat.idx_of(x)?;
        if cat.dhom(x, x) != 1 || cat.dhom(x, x.shift(1)) != 0 {
            return Err(RecolError::NotExceptional(x));
        }
        let (s, r, d) = pivot_to_projective(&cat, x)?;
        Self::build(alg, Generator::Exceptional { x }, x, r, AutoEq::new(-(s as i64), d))
    }

    pub fn from_generator(n: usize, g: Generator) -> Result<Self, RecolError> {
        match g {
            Generator::Idempotent { r } => Self::idempotent(n, r),
            Generator::Exceptional { x } => Self::exceptional(&Algebra::linear(n), x),
        }
    }

    fn build(alg: &Algebra, generator: Generator, x: IndecObject, base_r: usize, twist: AutoEq) -> Result<Self, RecolError> {
        let cat = catalog(alg);
        debug_assert_eq!(cat.apply(twist, IndecObject::new(0, base_r, 0)), x);
        let quotient = Algebra::quotient(alg.rank(), base_r);
        let mut perp: Vec<Interval> = alg.modules().into_iter().filter(|&m| cat.perpendicular(x, IndecObject::of(m, 0))).collect();
        perp.sort();
        let mut transported: Vec<Interval> = quotient.modules().into_iter().map(|m| cat.apply(twist, IndecObject::of(m, 0)).module()).collect();
        transported.sort();
        assert_eq!(perp, transported, "X^⊥ must be the transported quotient category");
        Ok(Recollement { alg: alg.clone(), generator, x, base_r, twist, quotient, perp })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn generator_object(&self) -> IndecObject {
        self.x
    }

    /// `(r, Φ)` with `X = Φ(P_r)`.
    pub fn base(&self) -> (usize, AutoEq) {
        (self.base_r, self.twist)
    }

    pub fn quotient_algebra(&self) -> &Algebra {
        &self.quotient
    }

    pub fn corner_algebra(&self) -> Algebra {
        Algebra::linear(1)
    }

    /// Modules `Y` with `Hom(X, Y[m]) = 0` for all `m`.
    pub fn kernel_modules(&self) -> &[Interval] {
        &self.perp
    }

    pub fn in_kernel(&self, y: IndecObject) -> bool {
        self.perp.binary_search(&y.module()).is_ok()
    }

    fn cat(&self) -> std::sync::Arc<Catalog> {
        catalog(&self.alg)
    }

    /// `m` with `Hom(X[m], y) != 0`, if any.
    fn corner_degree(&self, cat: &Catalog, y: IndecObject) -> Option<i64> {
        let base = y.d - self.x.d;
        [base, base - 1].into_iter().find(|&m| cat.dhom(self.x.shift(m), y) != 0)
    }

    /// `j^*z` as an object of `D^b(K)`.
    pub fn j_star(&self, z: &DObject) -> DObject {
        let cat = self.cat();
        z.summands().iter().filter_map(|&y| self.corner_degree(&cat, y)).map(|m| IndecObject::new(0, 1, m)).collect()
    }

    /// `j_!` of an object of `D^b(K)`.
    pub fn j_shriek(&self, k: &DObject) -> DObject {
        k.summands().iter().map(|c| self.x.shift(c.d)).collect()
    }

    /// `j_*` of an object of `D^b(K)`.
    pub fn j_lower_star(&self, k: &DObject) -> DObject {
        let sx = self.cat().tau(self.x).shift(1);
        k.summands().iter().map(|c| sx.shift(c.d)).collect()
    }

    /// `⊕_m X[m]^{dim Hom(X[m], z)}`.
    pub fn j_bang_j_star(&self, z: &DObject) -> DObject {
        self.j_shriek(&self.j_star(z))
    }

    /// `i_*` from quotient coordinates.
    pub fn i_lower_star(&self, v: &DObject) -> DObject {
        let cat = self.cat();
        v.summands().iter().map(|&y| cat.apply(self.twist, y)).collect()
    }

    /// Pull an object of `X^⊥` back into quotient coordinates.
    fn to_quotient(&self, cat: &Catalog, z: &DObject) -> Result<DObject, RecolError> {
        let inv = self.twist.inverse();
        z.summands()
            .iter()
            .map(|&y| {
                if !self.in_kernel(y) {
                    return Err(RecolError::LeftPerpendicular(y));
                }
                Ok(cat.apply(inv, y))
            })
            .collect()
    }

    /// `cone(j_!j^*z -> z)`, in quotient coordinates.
    pub fn i_upper_star(&self, z: &DObject) -> Result<DObject, RecolError> {
        let cat = self.cat();
        let mut out = DObject::zero();
        for &y in z.summands() {
            let piece = match self.corner_degree(&cat, y) {
                Some(m) => cat.cone(self.x.shift(m), y)?,
                None => y.into(),
            };
            out = out.sum(&self.to_quotient(&cat, &piece)?);
        }
        Ok(out)
    }

    /// `i^!z`, the object `W` of the quotient side with
    /// `dim Hom(V, W) = dim Hom(i_*V, z)` for every indecomposable `V`.
    pub fn i_upper_shriek(&self, z: &DObject) -> Result<DObject, RecolError> {
        let cat = self.cat();
        let qcat = catalog(&self.quotient);
        let mut out = DObject::zero();
        for &y in z.summands() {
            let probes = qcat.objects_in(y.d - 3, y.d + 1);
            let image = |v: IndecObject| cat.apply(self.twist, v);
            let cands: Vec<IndecObject> = probes.iter().copied().filter(|&v| cat.dhom(image(v), y) != 0).collect();
            let target: Vec<usize> = probes.iter().map(|&v| cat.dhom(image(v), y)).collect();
            let profiles: Vec<Vec<usize>> = cands.iter().map(|&w| probes.iter().map(|&v| qcat.dhom(v, w)).collect()).collect();
            let mut found = Vec::new();
            for mask in 0u32..(1 << cands.len()) {
                let mut acc = vec![0; probes.len()];
                for (b, p) in profiles.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        for (a, v) in acc.iter_mut().zip(p) {
                            *a += v;
                        }
                    }
                }
                if acc == target {
                    found.push(mask);
                }
            }
            if found.len() != 1 {
                return Err(RecolError::AdjointSearch(found.len()));
            }
            let w: DObject = (0..cands.len()).filter(|b| found[0] & (1 << b) != 0).map(|b| cands[b]).collect();
            out = out.sum(&w);
        }
        Ok(out)
    }

    /// `j_!j^*` maps the aisle into itself. With `X = N[f]` this reads
    /// `c_N <= c_M + f + m_M` for every module `M` with `j^*M = K[m_M]`.
    pub fn is_compatible(&self, t: &TStructure) -> bool {
        let cat = self.cat();
        let thr = t.thresholds();
        let cn = thr[cat.idx(self.x.module()).expect("generator")];
        (0..cat.len()).all(|i| match self.corner_degree(&cat, cat.object(i, 0)) {
            Some(m) => cn <= thr[i].add(self.x.d + m),
            None => true,
        })
    }

    /// BBD induction.
    pub fn induce(&self, f: &FactorTStructure) -> Result<TStructure, RecolError> {
        let cat = self.cat();
        let qcat = catalog(&self.quotient);
        let corner = f.corner.neg();
        let thr: Vec<ExtInt> = (0..cat.len())
            .map(|i| {
                let y = cat.object(i, 0);
                let mut c = ExtInt::NegInf;
                if let Some(m) = self.corner_degree(&cat, y) {
                    c = c.max(corner.add(-m));
                }
                for v in self.i_upper_star(&y.into())?.summands() {
                    let tv = f.quotient.thresholds()[qcat.idx_of(*v)?];
                    c = c.max(tv.add(-v.d));
                }
                Ok(c)
            })
            .collect::<Result<_, RecolError>>()?;
        Ok(TStructure::new(Aisle::from_thresholds(&self.alg, thr))?)
    }

    /// BBD restriction of a compatible t-structure.
    pub fn restrict(&self, t: &TStructure) -> Result<FactorTStructure, RecolError> {
        if !self.is_compatible(t) {
            return Err(RecolError::Incompatible);
        }
        let cat = self.cat();
        let thr = t.thresholds();
        let corner = (0..cat.len())
            .filter_map(|i| Some(thr[i].add(self.corner_degree(&cat, cat.object(i, 0))?)))
            .min()
            .expect("X itself has j^*X = K");
        let quotient = self
            .quotient
            .modules()
            .into_iter()
            .map(|m| {
                let y = cat.apply(self.twist, IndecObject::of(m, 0));
                thr[cat.idx(y.module()).expect("object")].add(-y.d)
            })
            .collect();
        Ok(FactorTStructure { corner: corner.neg(), quotient: Aisle::from_thresholds(&self.quotient, quotient) })
    }

    /// Simples of the induced heart: `i_*` of the quotient simples and the
    /// intermediate extension of the corner simple.
    pub fn simples_of_induced_heart(&self, f: &FactorTStructure) -> Result<Vec<IndecObject>, RecolError> {
        let t = self.induce(f)?;
        let theta = f.corner.neg().finite().ok_or(TstrError::Unbounded)?;
        let q = TStructure::new(f.quotient.clone())?;
        let qheart = q.heart();
        let mut simples: Vec<IndecObject> = self.i_lower_star(&qheart.simples.clone().into()).summands().to_vec();

        let cat = self.cat();
        let corner_simple: DObject = IndecObject::new(0, 1, theta).into();
        let p = t.cohomology(&self.j_shriek(&corner_simple), 0)?;
        let qq = t.cohomology(&self.j_lower_star(&corner_simple), 0)?;
        let embedded = self.i_lower_star(&qheart.indecomposables.into());
        let cands: Vec<IndecObject> = t
            .heart()
            .indecomposables
            .into_iter()
            .filter(|&e| {
                self.j_star(&e.into()) == corner_simple
                    && cat.dhom_from(&p, e) > 0
                    && cat.dhom_into(e, &qq) > 0
                    && embedded.summands().iter().all(|&a| cat.dhom(a, e) == 0 && cat.dhom(e, a) == 0)
            })
            .collect();
        if cands.len() != 1 {
            return Err(RecolError::IntermediateExtension(cands.len()));
        }
        simples.push(cands[0]);
        simples.sort();
        Ok(simples)
    }

    pub fn twist(&self, phi: AutoEq) -> Result<Recollement, RecolError> {
        let cat = self.cat();
        let x = cat.apply(phi, self.x);
        let generator = match self.generator {
            Generator::Idempotent { r } if phi == AutoEq::IDENTITY => Generator::Idempotent { r },
            _ => Generator::Exceptional { x },
        };
        Self::build(&self.alg, generator, x, self.base_r, phi.compose(&self.twist))
    }
}

/// `Φ` applied to the recollement.
pub fn twist_recollement(phi: AutoEq, rec: &Recollement) -> Result<Recollement, RecolError> {
    rec.twist(phi)
}

/// Case labels of the constructive proof that some `R_r` is compatible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "0")]
    Shifted,
    #[serde(rename = "1a")]
    BelowTop,
    #[serde(rename = "1b")]
    AboveBottom,
    #[serde(rename = "2a")]
    TopProjective,
    #[serde(rename = "2b")]
    MinimalS0,
    #[serde(rename = "3")]
    AfterP0,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::Shifted => "0",
            CaseTag::BelowTop => "1a",
            CaseTag::AboveBottom => "1b",
            CaseTag::TopProjective => "2a",
            CaseTag::MinimalS0 => "2b",
            CaseTag::AfterP0 => "3",
        }
    }
}

/// A vertex `r` with `t` compatible with `R_r`, chosen exactly as in the
/// three-case argument on the normalized t-structure.
pub fn find_compatible_idempotent(t: &TStructure) -> Result<(usize, CaseTag), RecolError> {
    if !t.algebra().is_linear() {
        return Err(RecolError::NotLinear);
    }
    let n = t.algebra().rank();
    let (nt, _) = crate::tstr::normalize(t)?;
    let cat = nt.catalog();
    let c = |l: usize, k: usize| nt.thresholds()[cat.idx(Interval::new(l, k)).expect("interval of A_n")];
    let s = crate::tstr::degree_zero_set(&nt);
    let (r, tag) = if s.is_empty() {
        (n, CaseTag::Shifted)
    } else {
        let m0 = s.iter().map(|m| m.k).max().expect("nonempty");
        let m1 = s.iter().map(|m| m.l).min().expect("nonempty");
        if (m0, m1) != (n, 0) {
            if m0 < n {
                (n, CaseTag::BelowTop)
            } else {
                (m1, CaseTag::AboveBottom)
            }
        } else if s.contains(&Interval::new(0, n)) {
            let k = c(0, n).add(-1);
            match (1..n).find(|&s0| c(s0, n) <= k) {
                Some(s0) => (s0, CaseTag::MinimalS0),
                None => (n, CaseTag::TopProjective),
            }
        } else {
            let p0 = s.iter().filter(|m| m.l == 0).map(|m| m.k).max().unwrap_or(0);
            (p0 + 1, CaseTag::AfterP0)
        }
    };
    if !Recollement::idempotent(n, r)?.is_compatible(t) {
        return Err(RecolError::Postcondition { r, case: tag.label().to_string() });
    }
    Ok((r, tag))
}

/// All `r` with `t` compatible with `R_r`.
pub fn compatible_idempotents(t: &TStructure) -> Result<Vec<usize>, RecolError> {
    let n = t.algebra().rank();
    let mut out = Vec::new();
    for r in 1..=n {
        if Recollement::idempotent(n, r)?.is_compatible(t) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Factor t-structures with corner index and quotient thresholds drawn from
/// `{-inf, +inf} ∪ lo..=hi` (corner indices from the negated range).
pub fn enumerate_factors(rec: &Recollement, lo: i64, hi: i64) -> Vec<FactorTStructure> {
    let mut corners = vec![ExtInt::NegInf];
    corners.extend((-hi..=-lo).map(ExtInt::Fin));
    corners.push(ExtInt::PosInf);
    let quotients = crate::tstr::enumerate_aisles(rec.quotient_algebra(), lo, hi);
    let mut out: Vec<FactorTStructure> = corners
        .iter()
        .flat_map(|&corner| quotients.iter().map(move |q| FactorTStructure { corner, quotient: q.aisle().clone() }))
        .collect();
    out.sort();
    out
}
