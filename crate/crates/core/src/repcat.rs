//! Finite-dimensional modules over products of linearly oriented A_m.
//!
//! Vertices are 0-based internally. The arrow between vertex `i` and `i + 1`
//! acts as a linear map `V_{i+1} -> V_i`, which makes the interval module
//! `M_{l,k}` (support `l..k`) have projective presentation
//! `0 -> P_l -> P_k -> M_{l,k} -> 0` with `P_k = M_{o,k}` for the block offset
//! `o` and `P_o = 0`. Under this choice `Hom(P_l, P_k) != 0` exactly when
//! `l <= k`.
//!
//! Everything in here is deliberately computed by brute linear algebra: it is
//! the oracle that the closed-form predicates in [`crate::derivedcat`] are
//! checked against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{Matrix, Rational};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("interval ({l},{k}) is not a module of this algebra", l = .0.l, k = .0.k)]
    NotInAlgebra(Interval),
    #[error("no extension: Ext^1 has dimension {dim}, requested class {requested}")]
    NoExtension { dim: usize, requested: usize },
    #[error("decomposition check failed against interval ({l},{k})", l = .0.l, k = .0.k)]
    DecompositionMismatch(Interval),
    #[error("representation shape does not match the algebra")]
    Shape,
}

/// The interval module `M_{l,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub l: usize,
    pub k: usize,
}

impl Interval {
    pub const fn new(l: usize, k: usize) -> Self {
        Interval { l, k }
    }

    pub fn dim(&self) -> usize {
        self.k - self.l
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M({},{})", self.l, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub offset: usize,
    pub size: usize,
}

/// A product of linear A_m factors laid out on a common vertex line.
///
/// Block `(offset, size)` owns vertices `offset..offset + size`; its modules
/// are the intervals `(l, k)` with `offset <= l < k <= offset + size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Algebra {
    blocks: Vec<Block>,
}

impl Algebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self, RepError> {
        let mut end = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.size == 0 {
                return Err(RepError::InvalidAlgebra(format!("block {i} is empty")));
            }
            // adjacent blocks would look like one longer interval to the
            // hammock formulas, so a gap slot is required
            if i > 0 && b.offset <= end {
                return Err(RepError::InvalidAlgebra(format!("block {i} does not leave a gap after block {}", i - 1)));
            }
            end = b.offset + b.size;
        }
        Ok(Algebra { blocks })
    }

    /// The path algebra of `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        assert!(n >= 1, "A_n needs n >= 1");
        Algebra { blocks: vec![Block { offset: 0, size: n }] }
    }

    /// `A/Ae_rA` for `A = A_n`, i.e. `A_{r-1} x A_{n-r}` placed so that its
    /// intervals coincide with the intervals of `A_n` killed by `e_r`.
    pub fn quotient(n: usize, r: usize) -> Self {
        assert!((1..=n).contains(&r));
        let mut blocks = Vec::new();
        if r > 1 {
            blocks.push(Block { offset: 0, size: r - 1 });
        }
        if r < n {
            blocks.push(Block { offset: r, size: n - r });
        }
        Algebra { blocks }
    }

    /// `s` copies of the base field.
    pub fn semisimple(s: usize) -> Self {
        Algebra { blocks: (0..s).map(|i| Block { offset: 2 * i, size: 1 }).collect() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of vertex slots, including slots between blocks.
    pub fn span(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.size)
    }

    /// Number of vertices (rank of the Grothendieck group).
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].offset == 0
    }

    pub fn modules(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for l in b.offset..b.offset + b.size {
                for k in l + 1..=b.offset + b.size {
                    out.push(Interval::new(l, k));
                }
            }
        }
        out.sort();
        out
    }

    pub fn block_of(&self, m: Interval) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.offset <= m.l && m.l < m.k && m.k <= b.offset + b.size)
    }

    pub fn contains(&self, m: Interval) -> bool {
        self.block_of(m).is_some()
    }

    pub fn has_arrow(&self, i: usize) -> bool {
        self.blocks.iter().any(|b| b.offset <= i && i + 1 < b.offset + b.size)
    }

    /// Projective cover of the simple at 1-based vertex `v`.
    pub fn projective(&self, v: usize) -> Option<Interval> {
        let b = self.blocks.iter().find(|b| b.offset < v && v <= b.offset + b.size)?;
        Some(Interval::new(b.offset, v))
    }

    /// Injective envelope of the simple at 1-based vertex `v`.
    pub fn injective(&self, v: usize) -> Option<Interval> {
        let b = self.blocks.iter().find(|b| b.offset < v && v <= b.offset + b.size)?;
        Some(Interval::new(v - 1, b.offset + b.size))
    }

    pub fn is_projective(&self, m: Interval) -> bool {
        self.block_of(m).is_some_and(|b| self.blocks[b].offset == m.l)
    }

    /// `(P_l, P_k)` with `P_l = None` for the zero module.
    pub fn presentation(&self, m: Interval) -> Result<(Option<Interval>, Interval), RepError> {
        let b = self.block_of(m).ok_or(RepError::NotInAlgebra(m))?;
        let o = self.blocks[b].offset;
        let lower = (m.l > o).then(|| Interval::new(o, m.l));
        Ok((lower, Interval::new(o, m.k)))
    }

    pub fn dim_vector(&self, m: Interval) -> Vec<i64> {
        (0..self.span()).map(|v| i64::from(m.l <= v && v < m.k)).collect()
    }
}

/// A representation: per-vertex dimensions and, for arrow `i`, a matrix of
/// shape `dims[i] x dims[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(span: usize) -> Self {
        Representation {
            dims: vec![0; span],
            maps: (0..span.saturating_sub(1)).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn span(&self) -> usize {
        self.dims.len()
    }

    fn check_shape(&self) -> Result<(), RepError> {
        if self.maps.len() != self.dims.len().saturating_sub(1) {
            return Err(RepError::Shape);
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.rows() != self.dims[i] || m.cols() != self.dims[i + 1] {
                return Err(RepError::Shape);
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.span(), other.span());
        Representation {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// Composite map `V_j -> V_i` along the arrows, `i <= j`.
    fn path_map(&self, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::identity(self.dims[j]);
        for a in (i..j).rev() {
            m = self.maps[a].mul(&m).expect("shapes checked");
        }
        m
    }
}

/// A morphism of representations with one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Representation,
    pub target: Representation,
    pub components: Vec<Matrix>,
}

impl ModuleMap {
    pub fn commutes(&self) -> bool {
        (0..self.source.maps.len()).all(|i| {
            let lhs = self.target.maps[i].mul(&self.components[i + 1]).expect("shape");
            let rhs = self.components[i].mul(&self.source.maps[i]).expect("shape");
            lhs == rhs
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| g.mul(f).expect("composable"))
                .collect(),
        }
    }

    fn flatten(&self) -> Vec<Rational> {
        self.components
            .iter()
            .flat_map(|m| (0..m.rows()).flat_map(move |r| (0..m.cols()).map(move |c| m.get(r, c).clone())))
            .collect()
    }
}

/// The thin representation of `M_{l,k}`: `K` on vertices `l..k`, identities inside.
pub fn realize(alg: &Algebra, m: Interval) -> Result<Representation, RepError> {
    if !alg.contains(m) {
        return Err(RepError::NotInAlgebra(m));
    }
    let span = alg.span();
    let dims: Vec<usize> = (0..span).map(|v| usize::from(m.l <= v && v < m.k)).collect();
    let maps = (0..span.saturating_sub(1))
        .map(|i| {
            if dims[i] == 1 && dims[i + 1] == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(dims[i], dims[i + 1])
            }
        })
        .collect();
    Ok(Representation { dims, maps })
}

/// A basis of `Hom(x, y)`, from the kernel of the commuting-square system.
pub fn hom_basis(x: &Representation, y: &Representation) -> Vec<ModuleMap> {
    assert_eq!(x.span(), y.span());
    let span = x.span();
    let mut offsets = Vec::with_capacity(span + 1);
    let mut total = 0;
    for v in 0..span {
        offsets.push(total);
        total += y.dims[v] * x.dims[v];
    }
    offsets.push(total);
    let var = |v: usize, a: usize, b: usize| offsets[v] + a * x.dims[v] + b;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..span.saturating_sub(1) {
        // y.maps[i] * phi_{i+1} - phi_i * x.maps[i] = 0, entry (a, b)
        for a in 0..y.dims[i] {
            for b in 0..x.dims[i + 1] {
                let mut row = vec![Rational::zero(); total];
                for c in 0..y.dims[i + 1] {
                    let coeff = y.maps[i].get(a, c);
                    if !coeff.is_zero() {
                        row[var(i + 1, c, b)] += coeff;
                    }
                }
                for c in 0..x.dims[i] {
                    let coeff = x.maps[i].get(c, b);
                    if !coeff.is_zero() {
                        row[var(i, a, c)] -= coeff;
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut system = Matrix::zeros(rows.len(), total);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                system.set(r, c, v);
            }
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|vec| {
            let components = (0..span)
                .map(|v| {
                    let mut m = Matrix::zeros(y.dims[v], x.dims[v]);
                    for a in 0..y.dims[v] {
                        for b in 0..x.dims[v] {
                            m.set(a, b, vec[var(v, a, b)].clone());
                        }
                    }
                    m
                })
                .collect();
            ModuleMap { source: x.clone(), target: y.clone(), components }
        })
        .collect()
}

pub fn hom_dim_rep(x: &Representation, y: &Representation) -> usize {
    hom_basis(x, y).len()
}

/// Oracle `dim Hom(M_x, M_y)`.
pub fn hom_dim(alg: &Algebra, x: Interval, y: Interval) -> Result<usize, RepError> {
    Ok(hom_dim_rep(&realize(alg, x)?, &realize(alg, y)?))
}

/// The canonical inclusion `P_l -> P_k` of the presentation of `m`.
fn presentation_map(alg: &Algebra, m: Interval) -> Result<Option<ModuleMap>, RepError> {
    let (lower, upper) = alg.presentation(m)?;
    let Some(lower) = lower else { return Ok(None) };
    let basis = hom_basis(&realize(alg, lower)?, &realize(alg, upper)?);
    debug_assert_eq!(basis.len(), 1);
    Ok(basis.into_iter().next())
}

/// Classes in `Hom(P_l, Y)` that span a complement of the image of
/// `Hom(P_k, Y)`; their count is `dim Ext^1(M_{l,k}, Y)`.
fn ext_classes(alg: &Algebra, x: Interval, y: &Representation) -> Result<Vec<ModuleMap>, RepError> {
    let Some(iota) = presentation_map(alg, x)? else { return Ok(Vec::new()) };
    let from_upper = hom_basis(&iota.target, y);
    let from_lower = hom_basis(&iota.source, y);
    let mut span: Vec<Vec<Rational>> = from_upper.iter().map(|g| iota.then(g).flatten()).collect();
    let mut rank = rank_of(&span);
    let mut picked = Vec::new();
    for g in from_lower {
        span.push(g.flatten());
        let r = rank_of(&span);
        if r > rank {
            rank = r;
            picked.push(g);
        } else {
            span.pop();
        }
    }
    Ok(picked)
}

fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_columns(vectors[0].len(), vectors);
    m.rank()
}

/// Oracle `dim Ext^1(M_x, Y)` via `coker(Hom(P_k, Y) -> Hom(P_l, Y))`.
pub fn ext1_dim_rep(alg: &Algebra, x: Interval, y: &Representation) -> Result<usize, RepError> {
    Ok(ext_classes(alg, x, y)?.len())
}

pub fn ext1_dim(alg: &Algebra, x: Interval, y: Interval) -> Result<usize, RepError> {
    ext1_dim_rep(alg, x, &realize(alg, y)?)
}

/// Vertexwise kernel and cokernel with their induced arrow maps.
pub fn kernel_coker(f: &ModuleMap) -> (Representation, Representation) {
    let span = f.source.span();
    let kernels: Vec<Matrix> = f
        .components
        .iter()
        .map(|c| Matrix::from_columns(c.cols(), &c.kernel_basis()))
        .collect();
    let kernel_maps = (0..span.saturating_sub(1))
        .map(|i| {
            let rhs = f.source.maps[i].mul(&kernels[i + 1]).expect("shape");
            kernels[i].solve_matrix(&rhs).expect("shape").expect("kernel is a subrepresentation")
        })
        .collect();
    let kernel = Representation { dims: kernels.iter().map(Matrix::cols).collect(), maps: kernel_maps };

    let projections: Vec<Matrix> = f.components.iter().map(Matrix::cokernel_projection).collect();
    let sections: Vec<Matrix> = projections
        .iter()
        .map(|q| q.solve_matrix(&Matrix::identity(q.rows())).expect("shape").expect("q is onto"))
        .collect();
    let coker_maps = (0..span.saturating_sub(1))
        .map(|i| {
            projections[i]
                .mul(&f.target.maps[i])
                .and_then(|m| m.mul(&sections[i + 1]))
                .expect("shape")
        })
        .collect();
    let coker = Representation { dims: projections.iter().map(Matrix::rows).collect(), maps: coker_maps };
    (kernel, coker)
}

/// Middle term `E` of the nonsplit sequence `0 -> y -> E -> x -> 0` given by
/// extension class number `class_index`, built as the pushout
/// `coker(P_l -> P_k ⊕ Y)`.
pub fn pushout_extension(
    alg: &Algebra,
    x: Interval,
    y: Interval,
    class_index: usize,
) -> Result<Representation, RepError> {
    let yrep = realize(alg, y)?;
    let classes = ext_classes(alg, x, &yrep)?;
    let Some(g) = classes.get(class_index) else {
        return Err(RepError::NoExtension { dim: classes.len(), requested: class_index });
    };
    let iota = presentation_map(alg, x)?.expect("nonzero Ext forces a nonzero P_l");
    let target = iota.target.direct_sum(&yrep);
    let components = iota
        .components
        .iter()
        .zip(&g.components)
        .map(|(i, gc)| {
            let mut neg = gc.clone();
            for r in 0..neg.rows() {
                for c in 0..neg.cols() {
                    let v = -neg.get(r, c).clone();
                    neg.set(r, c, v);
                }
            }
            i.vstack(&neg).expect("same source dimension")
        })
        .collect();
    let f = ModuleMap { source: iota.source.clone(), target, components };
    debug_assert!(f.commutes());
    Ok(kernel_coker(&f).1)
}

/// Krull–Schmidt decomposition into intervals.
///
/// Multiplicities come from ranks of composite arrow maps; the result is then
/// checked by comparing `dim Hom(W, -)` against every interval `W`.
pub fn decompose(alg: &Algebra, r: &Representation) -> Result<Vec<Interval>, RepError> {
    r.check_shape()?;
    let span = alg.span();
    if r.span() != span {
        return Err(RepError::Shape);
    }
    let mut rank_cache = vec![vec![0i64; span]; span];
    for i in 0..span {
        for j in i..span {
            rank_cache[i][j] = r.path_map(i, j).rank() as i64;
        }
    }
    let rk = |i: isize, j: usize| -> i64 {
        if i < 0 || j >= span {
            0
        } else {
            rank_cache[i as usize][j]
        }
    };
    let mut out = Vec::new();
    for i in 0..span {
        for j in i..span {
            let mult = rk(i as isize, j) - rk(i as isize - 1, j) - rk(i as isize, j + 1)
                + rk(i as isize - 1, j + 1);
            let iv = Interval::new(i, j + 1);
            if mult < 0 || (mult > 0 && !alg.contains(iv)) {
                return Err(RepError::DecompositionMismatch(iv));
            }
            out.extend(std::iter::repeat_n(iv, mult as usize));
        }
    }
    for w in alg.modules() {
        let wrep = realize(alg, w)?;
        let expected: usize = out.iter().map(|&m| hom_dim(alg, w, m)).sum::<Result<usize, _>>()?;
        if hom_dim_rep(&wrep, r) != expected {
            return Err(RepError::DecompositionMismatch(w));
        }
    }
    out.sort();
    Ok(out)
}

/// The unique-up-to-scalar nonzero map between two thin interval modules, if any.
pub fn canonical_map(alg: &Algebra, x: Interval, y: Interval) -> Result<Option<ModuleMap>, RepError> {
    let basis = hom_basis(&realize(alg, x)?, &realize(alg, y)?);
    Ok(basis.into_iter().next())
}
