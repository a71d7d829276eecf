use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::field::{Fe, Field};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A finite-dimensional space with a labelled basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecSpace {
    field: Field,
    labels: Arc<Vec<String>>,
}

/// A linear map; `matrix` has shape `dim(codomain) x dim(domain)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinMap {
    pub domain: VecSpace,
    pub codomain: VecSpace,
    pub matrix: Matrix,
}

impl VecSpace {
    pub fn new(field: Field, labels: Vec<String>) -> Result<VecSpace> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(VecSpace { field, labels: Arc::new(labels) })
    }

    /// Space with labels `{prefix}0, {prefix}1, ...`.
    pub fn named(field: Field, prefix: &str, dim: usize) -> VecSpace {
        let labels = (0..dim).map(|i| format!("{prefix}{i}")).collect();
        VecSpace { field, labels: Arc::new(labels) }
    }

    /// The ground field as a one-dimensional space.
    pub fn ground(field: Field) -> VecSpace {
        VecSpace { field, labels: Arc::new(vec!["1".to_string()]) }
    }

    pub fn zero(field: Field) -> VecSpace {
        VecSpace { field, labels: Arc::new(Vec::new()) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn relabel(&self, prefix: &str) -> VecSpace {
        VecSpace::named(self.field, prefix, self.dim())
    }

    /// `self ⊗ other` with basis `a⊗b`, left factor major.
    pub fn tensor(&self, other: &VecSpace) -> VecSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in self.labels.iter() {
            for b in other.labels.iter() {
                labels.push(format!("{}⊗{}", wrap(a), wrap(b)));
            }
        }
        VecSpace { field: self.field, labels: Arc::new(labels) }
    }

    /// `self ⊕ other` with labels tagged by summand.
    pub fn direct_sum(&self, other: &VecSpace) -> VecSpace {
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}.0"))
            .chain(other.labels.iter().map(|l| format!("{l}.1")))
            .collect();
        VecSpace { field: self.field, labels: Arc::new(labels) }
    }

    pub fn check_field(&self, other: &VecSpace) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }
}

fn wrap(l: &str) -> String {
    if l.contains('⊗') || l.contains('→') {
        format!("({l})")
    } else {
        l.to_string()
    }
}

impl fmt::Debug for VecSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VecSpace(dim {} over {})", self.dim(), self.field)
    }
}

impl LinMap {
    pub fn new(domain: VecSpace, codomain: VecSpace, matrix: Matrix) -> Result<LinMap> {
        domain.check_field(&codomain)?;
        if matrix.field() != domain.field() {
            return Err(Error::FieldMismatch(matrix.field(), domain.field()));
        }
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: (codomain.dim(), domain.dim()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    /// Constructor for internally consistent data; panics on shape mismatch.
    pub fn from_parts(domain: &VecSpace, codomain: &VecSpace, matrix: Matrix) -> LinMap {
        LinMap::new(domain.clone(), codomain.clone(), matrix).expect("inconsistent linear map")
    }

    pub fn identity(space: &VecSpace) -> LinMap {
        LinMap::from_parts(space, space, Matrix::identity(space.field(), space.dim()))
    }

    pub fn zero(domain: &VecSpace, codomain: &VecSpace) -> LinMap {
        LinMap::from_parts(domain, codomain, Matrix::zeros(domain.field(), codomain.dim(), domain.dim()))
    }

    pub fn field(&self) -> Field {
        self.domain.field()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if inner.codomain.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: (self.domain.dim(), 0),
                found: (inner.codomain.dim(), 0),
            });
        }
        inner.domain.check_field(&self.codomain)?;
        Ok(LinMap::from_parts(&inner.domain, &self.codomain, self.matrix.mul(&inner.matrix)))
    }

    /// `self ∘ inner`, panicking on mismatch; for internally constructed chains.
    pub fn then_after(&self, inner: &LinMap) -> LinMap {
        self.compose(inner).expect("composable maps")
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        LinMap::from_parts(&self.domain, &self.codomain, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        LinMap::from_parts(&self.domain, &self.codomain, self.matrix.sub(&other.matrix))
    }

    pub fn neg(&self) -> LinMap {
        LinMap::from_parts(&self.domain, &self.codomain, self.matrix.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.domain.dim() {
            return Err(Error::DimensionMismatch { expected: (self.domain.dim(), 1), found: (v.len(), 1) });
        }
        let x = Matrix::column(self.field(), v);
        Ok(self.matrix.mul(&x).col_vec(0))
    }

    pub fn is_injective(&self) -> bool {
        rank(self) == self.domain.dim()
    }

    pub fn is_surjective(&self) -> bool {
        rank(self) == self.codomain.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.is_injective()
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_parts(&self.codomain, &self.domain, self.matrix.transpose())
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({} -> {}) {:?}", self.domain.dim(), self.codomain.dim(), self.matrix)
    }
}

pub fn rank(f: &LinMap) -> usize {
    f.matrix.rank()
}

/// Kernel space with its inclusion into the domain.
pub fn kernel(f: &LinMap) -> (VecSpace, LinMap) {
    let basis = f.matrix.nullspace();
    let space = VecSpace::named(f.field(), "z", basis.cols());
    let incl = LinMap::from_parts(&space, &f.domain, basis);
    (space, incl)
}

/// Cokernel space with the projection from the codomain.
pub fn cokernel(f: &LinMap) -> (VecSpace, LinMap) {
    let proj = f.matrix.left_nullspace();
    let space = VecSpace::named(f.field(), "c", proj.rows());
    let p = LinMap::from_parts(&f.codomain, &space, proj);
    (space, p)
}

/// Image space with the inclusion into the codomain (pivot columns of `f`).
pub fn image(f: &LinMap) -> (VecSpace, LinMap) {
    let basis = f.matrix.column_basis();
    let space = VecSpace::named(f.field(), "b", basis.cols());
    let incl = LinMap::from_parts(&space, &f.codomain, basis);
    (space, incl)
}

/// `f ⊗ g` on tensor spaces, left factor major.
pub fn tensor(f: &LinMap, g: &LinMap) -> Result<LinMap> {
    f.domain.check_field(&g.domain)?;
    Ok(LinMap::from_parts(
        &f.domain.tensor(&g.domain),
        &f.codomain.tensor(&g.codomain),
        f.matrix.kron(&g.matrix),
    ))
}

/// Kronecker product of maps known to share a field.
pub fn kron(f: &LinMap, g: &LinMap) -> LinMap {
    tensor(f, g).expect("same field")
}

/// Direct sum of maps.
pub fn direct_sum(f: &LinMap, g: &LinMap) -> LinMap {
    LinMap::from_parts(
        &f.domain.direct_sum(&g.domain),
        &f.codomain.direct_sum(&g.codomain),
        Matrix::direct_sum(f.field(), &[&f.matrix, &g.matrix]),
    )
}

/// `Hom_k(M, N)`. The basis is the elementary maps `E_{n,m}` at coordinate
/// `n * dim M + m`, so a map is stored as its row-major matrix. With this
/// layout `Hom(V, Hom(U, W))` and `Hom(U ⊗ V, W)` share coordinates: the outer
/// argument of a curried map is the right-hand tensor factor.
pub fn hom_space(m: &VecSpace, n: &VecSpace) -> Result<VecSpace> {
    m.check_field(n)?;
    let mut labels = Vec::with_capacity(m.dim() * n.dim());
    for b in n.labels().iter() {
        for a in m.labels().iter() {
            labels.push(format!("[{}→{}]", wrap(a), wrap(b)));
        }
    }
    Ok(VecSpace { field: m.field(), labels: Arc::new(labels) })
}

pub(crate) fn hom(m: &VecSpace, n: &VecSpace) -> VecSpace {
    hom_space(m, n).expect("same field")
}

/// Coordinates of `f` in `Hom(domain, codomain)`.
pub fn hom_vec(f: &LinMap) -> Matrix {
    let (r, c) = (f.matrix.rows(), f.matrix.cols());
    let mut v = Matrix::zeros(f.field(), r * c, 1);
    for i in 0..r {
        for j in 0..c {
            if !f.matrix.is_zero_at(i, j) {
                v.set(i * c + j, 0, f.matrix.get(i, j));
            }
        }
    }
    v
}

/// Inverse of [`hom_vec`]: column `col` of `coords` read as a map `m -> n`.
pub fn hom_unvec(coords: &Matrix, col: usize, m: &VecSpace, n: &VecSpace) -> LinMap {
    assert_eq!(coords.rows(), m.dim() * n.dim(), "coordinate vector has wrong length");
    let mut a = Matrix::zeros(m.field(), n.dim(), m.dim());
    for i in 0..n.dim() {
        for j in 0..m.dim() {
            if !coords.is_zero_at(i * m.dim() + j, col) {
                a.set(i, j, coords.get(i * m.dim() + j, col));
            }
        }
    }
    LinMap::from_parts(m, n, a)
}

/// Post-composition `Hom(V, W) -> Hom(V, W')`, `h ↦ g ∘ h`.
pub fn hom_post(v: &VecSpace, g: &LinMap) -> LinMap {
    LinMap::from_parts(
        &hom(v, &g.domain),
        &hom(v, &g.codomain),
        g.matrix.kron(&Matrix::identity(v.field(), v.dim())),
    )
}

/// Pre-composition `Hom(B, W) -> Hom(A, W)`, `h ↦ h ∘ f` for `f: A -> B`.
pub fn hom_pre(f: &LinMap, w: &VecSpace) -> LinMap {
    LinMap::from_parts(
        &hom(&f.codomain, w),
        &hom(&f.domain, w),
        Matrix::identity(w.field(), w.dim()).kron(&f.matrix.transpose()),
    )
}

/// The identification `Hom(U ⊗ V, W) -> Hom(V, Hom(U, W))`, `G ↦ (v ↦ (u ↦ G(u⊗v)))`.
pub fn curry(u: &VecSpace, v: &VecSpace, w: &VecSpace) -> LinMap {
    let src = hom(&u.tensor(v), w);
    let dst = hom(v, &hom(u, w));
    // Coordinates coincide under the chosen Hom layout.
    LinMap::from_parts(&src, &dst, Matrix::identity(u.field(), src.dim()))
}

/// Inverse of [`curry`].
pub fn uncurry(u: &VecSpace, v: &VecSpace, w: &VecSpace) -> LinMap {
    curry(u, v, w).transpose()
}

/// Evaluation `U ⊗ Hom(U, W) -> W`, `u ⊗ h ↦ h(u)`.
pub fn evaluation(u: &VecSpace, w: &VecSpace) -> LinMap {
    let (du, dw) = (u.dim(), w.dim());
    let src = u.tensor(&hom(u, w));
    let mut m = Matrix::zeros(u.field(), dw, du * du * dw);
    for a in 0..du {
        for b in 0..dw {
            // basis u_a ⊗ E_{b,a}
            m.set_int(b, a * (du * dw) + b * du + a, 1);
        }
    }
    LinMap::from_parts(&src, w, m)
}

/// The swap `A ⊗ B -> B ⊗ A`.
pub fn swap(a: &VecSpace, b: &VecSpace) -> LinMap {
    let (da, db) = (a.dim(), b.dim());
    let mut m = Matrix::zeros(a.field(), da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            m.set_int(j * da + i, i * db + j, 1);
        }
    }
    LinMap::from_parts(&a.tensor(b), &b.tensor(a), m)
}

/// Unitor `V -> k ⊗ V` or `V -> V ⊗ k`; coordinates are unchanged.
pub fn unitor(v: &VecSpace, left: bool) -> LinMap {
    let k = VecSpace::ground(v.field());
    let t = if left { k.tensor(v) } else { v.tensor(&k) };
    LinMap::from_parts(v, &t, Matrix::identity(v.field(), v.dim()))
}

/// Solves `f(x) = target`; the deterministic preimage has free variables zero.
pub fn solve(f: &LinMap, target: &[Fe]) -> Result<Option<Vec<Fe>>> {
    if target.len() != f.codomain.dim() {
        return Err(Error::DimensionMismatch { expected: (f.codomain.dim(), 1), found: (target.len(), 1) });
    }
    let b = Matrix::column(f.field(), target);
    Ok(f.matrix.solve(&b).map(|x| x.col_vec(0)))
}

/// Corestriction of `f` through an injective `incl` whose image contains the image of `f`.
pub fn factor_through_injection(f: &LinMap, incl: &LinMap) -> Option<LinMap> {
    let x = incl.matrix.solve(&f.matrix)?;
    Some(LinMap::from_parts(&f.domain, &incl.domain, x))
}

/// Factors `f` through a surjection `proj` when `f` kills its kernel.
pub fn factor_through_surjection(f: &LinMap, proj: &LinMap) -> Option<LinMap> {
    // Find g with g ∘ proj = f, i.e. proj^T g^T = f^T.
    let gt = proj.matrix.transpose().solve(&f.matrix.transpose())?;
    Some(LinMap::from_parts(&proj.codomain, &f.codomain, gt.transpose()))
}
