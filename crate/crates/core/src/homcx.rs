//! Bounded cochain complexes of finite-dimensional spaces.
//!
//! Indexing is cohomological: `d^i : X^i -> X^{i+1}`. Terms not stored are
//! zero. `d ∘ d = 0` is verified on construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::comod::Comodule;
use crate::contramod::Contramodule;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, LinMap, Matrix, VecSpace, Field};

/// Structure carried by a term of a complex.
#[derive(Clone, Debug)]
pub enum Decoration {
    Comodule(Comodule),
    Contramodule(Contramodule),
    /// A finite-dimensional module with commuting operators `t` (nilpotent) and `γ` (invertible).
    Smooth { t: Matrix, gamma: Matrix },
}

#[derive(Clone, Debug)]
pub struct Complex {
    field: Field,
    terms: BTreeMap<i32, VecSpace>,
    diffs: BTreeMap<i32, LinMap>,
    decoration: Option<BTreeMap<i32, Decoration>>,
}

#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    components: BTreeMap<i32, LinMap>,
}

/// Homology in one degree with representative cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i32,
    pub space: VecSpace,
    /// Columns are cycles in `X^degree` representing the basis of `space`.
    pub representatives: LinMap,
    /// Boundaries followed by representatives; a basis of the cycle space.
    cycle_frame: Matrix,
    boundary_count: usize,
}

/// Failure witness for a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoWitness {
    pub degree: i32,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIso {
    pub holds: bool,
    pub witness: Option<QuasiIsoWitness>,
}

impl Complex {
    pub fn new(field: Field, terms: BTreeMap<i32, VecSpace>, diffs: BTreeMap<i32, LinMap>) -> Result<Complex> {
        let mut x = Complex { field, terms, diffs, decoration: None };
        x.terms.retain(|_, v| v.dim() > 0);
        for (&i, d) in &x.diffs {
            let src = x.term(i);
            let dst = x.term(i + 1);
            if d.domain.dim() != src.dim() || d.codomain.dim() != dst.dim() {
                return Err(Error::DimensionMismatch {
                    expected: (dst.dim(), src.dim()),
                    found: (d.codomain.dim(), d.domain.dim()),
                });
            }
            if d.field() != field {
                return Err(Error::FieldMismatch(d.field(), field));
            }
        }
        x.diffs.retain(|i, _| x.terms.contains_key(i) && x.terms.contains_key(&(i + 1)));
        for &i in x.diffs.keys() {
            if let Some(next) = x.diffs.get(&(i + 1)) {
                if !next.matrix.mul(&x.diffs[&i].matrix).is_zero() {
                    return Err(Error::NotAComplex { degree: i });
                }
            }
        }
        Ok(x)
    }

    /// Builds a complex from consecutive terms starting at degree `lo`.
    pub fn from_terms(field: Field, lo: i32, terms: Vec<VecSpace>, diffs: Vec<LinMap>) -> Result<Complex> {
        assert!(diffs.len() + 1 >= terms.len(), "missing differentials");
        let t = terms.into_iter().enumerate().map(|(k, v)| (lo + k as i32, v)).collect();
        let d = diffs.into_iter().enumerate().map(|(k, m)| (lo + k as i32, m)).collect();
        Complex::new(field, t, d)
    }

    pub fn zero(field: Field) -> Complex {
        Complex { field, terms: BTreeMap::new(), diffs: BTreeMap::new(), decoration: None }
    }

    pub fn concentrated(space: VecSpace, degree: i32) -> Complex {
        let field = space.field();
        Complex::new(field, BTreeMap::from([(degree, space)]), BTreeMap::new()).expect("single term")
    }

    /// Attaches per-term structure; differentials must be structure morphisms.
    pub fn with_decoration(mut self, deco: BTreeMap<i32, Decoration>) -> Result<Complex> {
        for (&i, v) in &self.terms {
            let Some(d) = deco.get(&i) else {
                return Err(Error::Precondition(format!("term {i} lacks a decoration")));
            };
            if decoration_dim(d) != v.dim() {
                return Err(Error::Precondition(format!("decoration of term {i} has the wrong dimension")));
            }
        }
        for (&i, d) in &self.diffs {
            let (Some(a), Some(b)) = (deco.get(&i), deco.get(&(i + 1))) else { continue };
            if !is_structure_morphism(a, b, d)? {
                return Err(Error::Precondition(format!("differential {i} is not a structure morphism")));
            }
        }
        self.decoration = Some(deco);
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn decoration(&self, degree: i32) -> Option<&Decoration> {
        self.decoration.as_ref().and_then(|d| d.get(&degree))
    }

    pub fn is_decorated(&self) -> bool {
        self.decoration.is_some()
    }

    pub fn term(&self, i: i32) -> VecSpace {
        self.terms.get(&i).cloned().unwrap_or_else(|| VecSpace::zero(self.field))
    }

    pub fn diff(&self, i: i32) -> LinMap {
        match self.diffs.get(&i) {
            Some(d) => d.clone(),
            None => LinMap::zero(&self.term(i), &self.term(i + 1)),
        }
    }

    /// Degrees carrying a nonzero term.
    pub fn degrees(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.terms.iter().map(|(&i, v)| (i, v.dim())).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().map(|(&i, v)| sign(i) * v.dim() as i64).sum()
    }

    /// Dimensions of nonzero homology groups.
    pub fn homology_table(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for i in self.degrees() {
            let h = homology(self, i).dim();
            if h > 0 {
                out.insert(i, h);
            }
        }
        out
    }

    pub fn homology_euler(&self) -> i64 {
        self.homology_table().iter().map(|(&i, &d)| sign(i) * d as i64).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.homology_table().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn sign(i: i32) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn decoration_dim(d: &Decoration) -> usize {
    match d {
        Decoration::Comodule(m) => m.dim(),
        Decoration::Contramodule(p) => p.dim(),
        Decoration::Smooth { t, .. } => t.rows(),
    }
}

fn is_structure_morphism(a: &Decoration, b: &Decoration, f: &LinMap) -> Result<bool> {
    match (a, b) {
        (Decoration::Comodule(m), Decoration::Comodule(n)) => crate::comod::is_morphism(m, n, f),
        (Decoration::Contramodule(p), Decoration::Contramodule(q)) => crate::contramod::is_morphism(p, q, f),
        (Decoration::Smooth { t: t1, gamma: g1 }, Decoration::Smooth { t: t2, gamma: g2 }) => {
            Ok(t2.mul(&f.matrix) == f.matrix.mul(t1) && g2.mul(&f.matrix) == f.matrix.mul(g1))
        }
        _ => Err(Error::Mismatch("differential joins terms of different kinds".into())),
    }
}

/// `H^i(X)` with a basis of representative cycles.
pub fn homology_data(x: &Complex, i: i32) -> Homology {
    let field = x.field;
    let term = x.term(i);
    let (_, z) = kernel(&x.diff(i));
    let b = x.diff(i - 1).matrix.column_basis();
    let frame_all = Matrix::hstack(field, term.dim(), &[&b, &z.matrix]);
    let piv = frame_all.rref().pivots;
    let rep_cols: Vec<usize> = piv.iter().filter(|&&c| c >= b.cols()).copied().collect();
    let reps = frame_all.select_cols(&rep_cols);
    let space = VecSpace::named(field, &format!("h{i}_"), reps.cols());
    let cycle_frame = Matrix::hstack(field, term.dim(), &[&b, &reps]);
    Homology {
        degree: i,
        representatives: LinMap::from_parts(&space, &term, reps),
        space,
        cycle_frame,
        boundary_count: b.cols(),
    }
}

pub fn homology(x: &Complex, i: i32) -> VecSpace {
    homology_data(x, i).space
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Class of a cycle (given as columns) in the homology basis.
    pub fn classify(&self, cycles: &Matrix) -> Option<Matrix> {
        let c = self.cycle_frame.solve(cycles)?;
        Some(c.block(self.boundary_count, 0, self.dim(), cycles.cols()))
    }
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i32, LinMap>) -> Result<ChainMap> {
        let f = ChainMap { source, target, components };
        let degrees: BTreeSet<i32> = f.source.degrees().into_iter().chain(f.target.degrees()).collect();
        for &i in &degrees {
            let c = f.component(i);
            if c.domain.dim() != f.source.term(i).dim() || c.codomain.dim() != f.target.term(i).dim() {
                return Err(Error::NotAChainMap { degree: i });
            }
        }
        for &i in &degrees {
            let lhs = f.target.diff(i).matrix.mul(&f.component(i).matrix);
            let rhs = f.component(i + 1).matrix.mul(&f.source.diff(i).matrix);
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: i });
            }
        }
        Ok(f)
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let comps = x.terms.iter().map(|(&i, v)| (i, LinMap::identity(v))).collect();
        ChainMap { source: x.clone(), target: x.clone(), components: comps }
    }

    pub fn zero(x: &Complex, y: &Complex) -> ChainMap {
        ChainMap { source: x.clone(), target: y.clone(), components: BTreeMap::new() }
    }

    pub fn component(&self, i: i32) -> LinMap {
        match self.components.get(&i) {
            Some(c) => c.clone(),
            None => LinMap::zero(&self.source.term(i), &self.target.term(i)),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        let degrees: BTreeSet<i32> = inner.source.degrees().into_iter().collect();
        let mut comps = BTreeMap::new();
        for i in degrees {
            comps.insert(i, self.component(i).compose(&inner.component(i))?);
        }
        ChainMap::new(inner.source.clone(), self.target.clone(), comps)
    }

    /// Induced map `H^i(source) -> H^i(target)`.
    pub fn on_homology(&self, i: i32) -> (Homology, Homology, LinMap) {
        let hx = homology_data(&self.source, i);
        let hy = homology_data(&self.target, i);
        let images = self.component(i).matrix.mul(&hx.representatives.matrix);
        let m = hy.classify(&images).expect("chain maps send cycles to cycles");
        let map = LinMap::from_parts(&hx.space, &hy.space, m);
        (hx, hy, map)
    }
}

/// True iff every induced map on homology is bijective; otherwise the first
/// failing degree with the kernel and cokernel dimensions of `H(f)`.
pub fn is_quasi_iso(f: &ChainMap) -> QuasiIso {
    let degrees: BTreeSet<i32> = f.source.degrees().into_iter().chain(f.target.degrees()).collect();
    for i in degrees {
        let (hx, hy, m) = f.on_homology(i);
        let r = m.matrix.rank();
        if r != hx.dim() || r != hy.dim() {
            return QuasiIso {
                holds: false,
                witness: Some(QuasiIsoWitness { degree: i, kernel_dim: hx.dim() - r, cokernel_dim: hy.dim() - r }),
            };
        }
    }
    QuasiIso { holds: true, witness: None }
}

/// Mapping cone: `Cone^i = X^{i+1} ⊕ Y^i`, `d(x, y) = (-d x, f x + d y)`.
pub fn cone(f: &ChainMap) -> Complex {
    let field = f.source.field;
    let mut degs: BTreeSet<i32> = f.target.degrees().into_iter().collect();
    degs.extend(f.source.degrees().into_iter().map(|i| i - 1));
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for &i in &degs {
        terms.insert(i, f.source.term(i + 1).direct_sum(&f.target.term(i)));
    }
    for &i in &degs {
        let (x1, y0) = (f.source.term(i + 1).dim(), f.target.term(i).dim());
        let (x2, y1) = (f.source.term(i + 2).dim(), f.target.term(i + 1).dim());
        let mut m = Matrix::zeros(field, x2 + y1, x1 + y0);
        m.set_block(0, 0, &f.source.diff(i + 1).matrix.neg());
        m.set_block(x2, 0, &f.component(i + 1).matrix);
        m.set_block(x2, x1, &f.target.diff(i).matrix);
        let src = terms[&i].clone();
        let dst = terms.get(&(i + 1)).cloned().unwrap_or_else(|| {
            f.source.term(i + 2).direct_sum(&f.target.term(i + 1))
        });
        diffs.insert(i, LinMap::from_parts(&src, &dst, m));
    }
    Complex::new(field, terms, diffs).expect("cone of a chain map is a complex")
}

/// `X[n]^i = X^{i+n}` with differential `(-1)^n d`.
pub fn shift(x: &Complex, n: i32) -> Complex {
    let terms = x.terms.iter().map(|(&i, v)| (i - n, v.clone())).collect();
    let diffs = x
        .diffs
        .iter()
        .map(|(&i, d)| (i - n, if n.rem_euclid(2) == 1 { d.neg() } else { d.clone() }))
        .collect();
    let mut y = Complex::new(x.field, terms, diffs).expect("shift preserves d∘d = 0");
    if let Some(deco) = &x.decoration {
        y.decoration = Some(deco.iter().map(|(&i, d)| (i - n, d.clone())).collect());
    }
    y
}

/// Canonical truncation to `[lo, hi]`: `X^lo` becomes `X^lo / im d^{lo-1}` and
/// `X^hi` becomes `ker d^hi`. Decorations are dropped.
pub fn truncate_support(x: &Complex, lo: i32, hi: i32) -> Result<Complex> {
    assert!(lo <= hi, "empty truncation window");
    for i in x.degrees() {
        if (i < lo || i > hi) && homology(x, i).dim() > 0 {
            return Err(Error::HomologyOutsideSupport { degree: i });
        }
    }
    let field = x.field;
    // Coordinates: for each kept degree, a matrix `basis` (columns in X^i) and a
    // projection from the ambient term onto the kept quotient when i = lo.
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    // Upper end: replace X^hi by Z^hi.
    let (_, zhi) = kernel(&x.diff(hi));
    // Lower end: X^lo / B^lo.
    let (_, qlo) = crate::exactlin::cokernel(&x.diff(lo - 1));
    for i in lo..=hi {
        let dim = if lo == hi {
            // Quotient of the cycles by the boundaries.
            homology(x, lo).dim()
        } else if i == lo {
            qlo.codomain.dim()
        } else if i == hi {
            zhi.domain.dim()
        } else {
            x.term(i).dim()
        };
        terms.insert(i, VecSpace::named(field, &format!("x{i}_"), dim));
    }
    if lo == hi {
        return Complex::new(field, terms, diffs);
    }
    for i in lo..hi {
        let src = terms[&i].clone();
        let dst = terms[&(i + 1)].clone();
        let d = x.diff(i);
        // Express d in the truncated coordinates.
        let m = if i == lo {
            let into = if i + 1 == hi { zhi.matrix.solve(&d.matrix).expect("boundaries are cycles") } else { d.matrix.clone() };
            // Factor through the quotient projection.
            qlo.matrix.transpose().solve(&into.transpose()).expect("d kills boundaries").transpose()
        } else if i + 1 == hi {
            zhi.matrix.solve(&d.matrix).expect("boundaries are cycles")
        } else {
            d.matrix.clone()
        };
        diffs.insert(i, LinMap::from_parts(&src, &dst, m));
    }
    Complex::new(field, terms, diffs)
}
