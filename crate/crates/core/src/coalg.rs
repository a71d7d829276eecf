//! Finite-dimensional coalgebras given by structure constants.
//!
//! Conventions: `Δ(c) = Σ c₁ ⊗ c₂` is stored as a matrix `C -> C ⊗ C` with
//! left-factor-major basis. The dual algebra multiplies by
//! `(φψ)(c) = Σ φ(c₂) ψ(c₁)`, the product under which left comodules and left
//! contramodules are both left modules over `C^∨`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::comod::{self, Comodule};
use crate::error::{Error, Result};
use crate::exactlin::{swap, Fe, Field, LinMap, Matrix, VecSpace};
use crate::group::FiniteGroup;
use crate::witness::{compare, shape, Verdict, Violation};

/// Largest prime for which eigenvalue candidates are enumerated directly.
const ENUMERATION_PRIME_LIMIT: u64 = 1021;

/// Which side of the coalgebra coacts or acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Cheap to clone; structure maps are shared.
#[derive(Clone)]
pub struct Coalgebra {
    inner: Arc<Data>,
}

struct Data {
    name: String,
    space: VecSpace,
    comult: LinMap,
    counit: LinMap,
    coaugmentation: Option<LinMap>,
}

impl Coalgebra {
    /// Checks shapes only; see [`check_coalgebra`] for the axioms.
    pub fn new(name: &str, space: VecSpace, comult: Matrix, counit: Matrix) -> Result<Coalgebra> {
        let f = space.field();
        let comult = LinMap::new(space.clone(), space.tensor(&space), comult)?;
        let counit = LinMap::new(space.clone(), VecSpace::ground(f), counit)?;
        Ok(Coalgebra { inner: Arc::new(Data { name: name.to_string(), space, comult, counit, coaugmentation: None }) })
    }

    /// Attaches `γ : k -> C`; it must be a coalgebra morphism.
    pub fn with_coaugmentation(&self, gamma: Matrix) -> Result<Coalgebra> {
        let k = VecSpace::ground(self.field());
        let gamma = LinMap::new(k, self.space().clone(), gamma)?;
        let d = &self.inner;
        let out = Coalgebra {
            inner: Arc::new(Data {
                name: d.name.clone(),
                space: d.space.clone(),
                comult: d.comult.clone(),
                counit: d.counit.clone(),
                coaugmentation: Some(gamma),
            }),
        };
        if let Err(v) = check_coaugmentation(&out) {
            return Err(Error::Axiom(v.to_string()));
        }
        Ok(out)
    }

    /// The ground field as a coalgebra: `Δ(1) = 1 ⊗ 1`, `ε = id`.
    pub fn ground(field: Field) -> Coalgebra {
        let one = Matrix::identity(field, 1);
        Coalgebra::new("k", VecSpace::named(field, "1", 1).relabel("1"), one.clone(), one.clone())
            .and_then(|c| c.with_coaugmentation(one))
            .expect("ground coalgebra")
    }

    /// From triples `(i, j, k, v)` meaning `Δ(e_k)` has coefficient `v` on `e_i ⊗ e_j`.
    pub fn from_structure_constants(
        field: Field,
        dim: usize,
        comult: &[(usize, usize, usize, i64)],
        counit: &[i64],
    ) -> Result<Coalgebra> {
        if counit.len() != dim {
            return Err(Error::DimensionMismatch { expected: (1, dim), found: (1, counit.len()) });
        }
        let mut d = Matrix::zeros(field, dim * dim, dim);
        for &(i, j, k, v) in comult {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch { expected: (dim, dim), found: (i.max(j), k) });
            }
            d.add_int_at(i * dim + j, k, v);
        }
        let e = Matrix::from_fn(field, 1, dim, |_, j| counit[j]);
        Coalgebra::new("C", VecSpace::named(field, "c", dim), d, e)
    }

    /// Path coalgebra of an acyclic quiver: paths as basis,
    /// `Δ(p) = Σ_{p = q·r} q ⊗ r` with `r` traversed first.
    pub fn path_coalgebra(field: Field, vertices: usize, arrows: &[(usize, usize)]) -> Result<Coalgebra> {
        if arrows.iter().any(|&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::Precondition("arrow endpoint out of range".into()));
        }
        // Paths are arrow sequences in traversal order; trivial paths have no arrows.
        let mut paths: Vec<(usize, Vec<usize>)> = (0..vertices).map(|v| (v, Vec::new())).collect();
        let mut frontier: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                if p.len() > arrows.len() {
                    return Err(Error::Precondition("quiver has an oriented cycle".into()));
                }
                let end = arrows[*p.last().expect("nonempty")].1;
                for (a, &(s, _)) in arrows.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(a);
                        next.push(q);
                    }
                }
                paths.push((arrows[p[0]].0, p));
            }
            frontier = next;
        }
        let n = paths.len();
        let labels: Vec<String> = paths
            .iter()
            .map(|(v, p)| {
                if p.is_empty() {
                    format!("e{v}")
                } else {
                    p.iter().map(|a| format!("a{a}")).collect::<Vec<_>>().join("·")
                }
            })
            .collect();
        let find = |start: usize, p: &[usize]| -> usize {
            paths.iter().position(|(v, q)| q.as_slice() == p && (!p.is_empty() || *v == start)).expect("subpath")
        };
        let mut d = Matrix::zeros(field, n * n, n);
        let mut e = Matrix::zeros(field, 1, n);
        for (k, (v, p)) in paths.iter().enumerate() {
            if p.is_empty() {
                d.set_int(k * n + k, k, 1);
                e.set_int(0, k, 1);
                continue;
            }
            for cut in 0..=p.len() {
                let (first, later) = p.split_at(cut);
                let mid = if cut == 0 { *v } else { arrows[first[cut - 1]].1 };
                let r = find(*v, first);
                let q = find(mid, later);
                d.add_int_at(q * n + r, k, 1);
            }
        }
        Coalgebra::new("path", VecSpace::new(field, labels)?, d, e)
    }

    /// The coalgebra of functions on a finite group, with its coaugmentation
    /// exactly when it is conilpotent.
    pub fn group_function(group: &FiniteGroup, field: Field) -> Coalgebra {
        group_function_coalgebra(group, field)
    }

    /// `C ⊗ D` with `Δ = (id ⊗ swap ⊗ id)(Δ ⊗ Δ)`.
    pub fn tensor(&self, other: &Coalgebra) -> Result<Coalgebra> {
        self.space().check_field(other.space())?;
        let f = self.field();
        let (c, d) = (self.space(), other.space());
        let mid = swap(c, d).matrix;
        let reorder = Matrix::identity(f, c.dim()).kron(&mid).kron(&Matrix::identity(f, d.dim()));
        let comult = reorder.mul(&self.comult().matrix.kron(&other.comult().matrix));
        let counit = self.counit().matrix.kron(&other.counit().matrix);
        let name = format!("{}⊗{}", self.name(), other.name());
        let out = Coalgebra::new(&name, c.tensor(d), comult, counit)?;
        match (self.coaugmentation(), other.coaugmentation()) {
            (Some(g), Some(h)) => out.with_coaugmentation(g.matrix.kron(&h.matrix)),
            _ => Ok(out),
        }
    }

    /// `C ⊕ D`; never coaugmented unless one summand is zero.
    pub fn direct_sum(&self, other: &Coalgebra) -> Result<Coalgebra> {
        self.space().check_field(other.space())?;
        let f = self.field();
        let (m, n) = (self.dim(), other.dim());
        let s = m + n;
        let mut d = Matrix::zeros(f, s * s, s);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let x = self.comult().matrix.get(i * m + j, k);
                    if !x.is_zero() {
                        d.set(i * s + j, k, x);
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let x = other.comult().matrix.get(i * n + j, k);
                    if !x.is_zero() {
                        d.set((m + i) * s + (m + j), m + k, x);
                    }
                }
            }
        }
        let e = Matrix::hstack(f, 1, &[&self.counit().matrix, &other.counit().matrix]);
        let name = format!("{}⊕{}", self.name(), other.name());
        Coalgebra::new(&name, self.space().direct_sum(other.space()), d, e)
    }

    /// The subcoalgebra spanned by the columns of `basis`, with its inclusion.
    pub fn subcoalgebra(&self, basis: &Matrix) -> Result<(Coalgebra, LinMap)> {
        let f = self.field();
        let b = basis.column_basis();
        let bb = b.kron(&b);
        let img = self.comult().matrix.mul(&b);
        let d = bb.solve(&img).ok_or_else(|| Error::Precondition("span is not a subcoalgebra".into()))?;
        let e = self.counit().matrix.mul(&b);
        let space = VecSpace::named(f, "s", b.cols());
        let sub = Coalgebra::new(&format!("sub({})", self.name()), space.clone(), d, e)?;
        Ok((sub, LinMap::from_parts(&space, self.space(), b)))
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn field(&self) -> Field {
        self.inner.space.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.space.dim()
    }

    pub fn space(&self) -> &VecSpace {
        &self.inner.space
    }

    pub fn comult(&self) -> &LinMap {
        &self.inner.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.inner.counit
    }

    pub fn coaugmentation(&self) -> Option<&LinMap> {
        self.inner.coaugmentation.as_ref()
    }

    /// Same structure constants (coaugmentations are not compared).
    pub fn same(&self, other: &Coalgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.comult().matrix == other.comult().matrix && self.counit().matrix == other.counit().matrix)
    }

    pub fn require_same(&self, other: &Coalgebra) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("coalgebras {} and {} differ", self.name(), other.name())))
        }
    }

    /// `L_i` with `Δ(c) = Σ_i e_i ⊗ L_i(c)`.
    pub fn left_coefficients(&self) -> Vec<Matrix> {
        let n = self.dim();
        (0..n).map(|i| self.comult().matrix.block(i * n, 0, n, n)).collect()
    }
}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra({}, dim {} over {})", self.name(), self.dim(), self.field())
    }
}

/// Verifies coassociativity, both counit laws and, if present, that the
/// coaugmentation is a coalgebra morphism.
pub fn check_coalgebra(c: &Coalgebra) -> Verdict {
    let f = c.field();
    let n = c.dim();
    let id = Matrix::identity(f, n);
    let d = &c.comult().matrix;
    let e = &c.counit().matrix;
    let cc = c.space().tensor(c.space());
    let ccc = cc.tensor(c.space());
    compare("coassociativity", &d.kron(&id).mul(d), &id.kron(d).mul(d), c.space(), &ccc)?;
    compare("left counitality", &e.kron(&id).mul(d), &id, c.space(), c.space())?;
    compare("right counitality", &id.kron(e).mul(d), &id, c.space(), c.space())?;
    check_coaugmentation(c)
}

fn check_coaugmentation(c: &Coalgebra) -> Verdict {
    let Some(g) = c.coaugmentation() else { return Ok(()) };
    let k = VecSpace::ground(c.field());
    let d = &c.comult().matrix;
    compare("coaugmentation is comultiplicative", &d.mul(&g.matrix), &g.matrix.kron(&g.matrix), &k, &c.space().tensor(c.space()))?;
    compare("coaugmentation is counital", &c.counit().matrix.mul(&g.matrix), &Matrix::identity(c.field(), 1), &k, &k)
}

/// Provenance of an algebra, carried for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum AlgebraRole {
    DualOfCoalgebra,
    IwasawaTruncation,
    EndomorphismRing,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    pub space: VecSpace,
    pub mult: LinMap,
    pub unit: LinMap,
    pub role: AlgebraRole,
}

impl Algebra {
    pub fn new(space: VecSpace, mult: Matrix, unit: Matrix, role: AlgebraRole) -> Result<Algebra> {
        let k = VecSpace::ground(space.field());
        let mult = LinMap::new(space.tensor(&space), space.clone(), mult)?;
        let unit = LinMap::new(k, space.clone(), unit)?;
        Ok(Algebra { space, mult, unit, role })
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Matrix of left multiplication by basis element `i`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<usize> = (0..n).map(|j| i * n + j).collect();
        self.mult.matrix.select_cols(&cols)
    }

    /// Matrix of right multiplication by basis element `j`.
    pub fn right_mult(&self, j: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<usize> = (0..n).map(|i| i * n + j).collect();
        self.mult.matrix.select_cols(&cols)
    }
}

/// Associativity and both unit laws.
pub fn check_algebra(a: &Algebra) -> Verdict {
    let f = a.field();
    let n = a.dim();
    let id = Matrix::identity(f, n);
    let m = &a.mult.matrix;
    let u = &a.unit.matrix;
    let aaa = a.space.tensor(&a.space).tensor(&a.space);
    compare("associativity", &m.mul(&m.kron(&id)), &m.mul(&id.kron(m)), &aaa, &a.space)?;
    compare("left unit", &m.mul(&u.kron(&id)), &id, &a.space, &a.space)?;
    compare("right unit", &m.mul(&id.kron(u)), &id, &a.space, &a.space)
}

/// `C^∨` with multiplication `Δ^T ∘ swap` and unit `ε^T`.
pub fn dual_algebra(c: &Coalgebra) -> Result<Algebra> {
    check_coalgebra(c).map_err(|v| Error::Axiom(v.to_string()))?;
    let f = c.field();
    let labels: Vec<String> = c.space().labels().iter().map(|l| format!("{l}*")).collect();
    let dual = VecSpace::new(f, labels)?;
    let mult = c.comult().matrix.transpose().mul(&swap(&dual, &dual).matrix);
    let unit = c.counit().matrix.transpose();
    Algebra::new(dual, mult, unit, AlgebraRole::DualOfCoalgebra)
}

/// A module over an algebra: left action `A ⊗ M -> M` or right action `M ⊗ A -> M`.
#[derive(Clone, Debug)]
pub struct AlgModule {
    pub algebra: Algebra,
    pub space: VecSpace,
    pub action: LinMap,
    pub side: Side,
}

impl AlgModule {
    pub fn new(algebra: Algebra, space: VecSpace, action: Matrix, side: Side) -> Result<AlgModule> {
        let src = match side {
            Side::Left => algebra.space.tensor(&space),
            Side::Right => space.tensor(&algebra.space),
        };
        let action = LinMap::new(src, space.clone(), action)?;
        Ok(AlgModule { algebra, space, action, side })
    }

    /// Operator by which basis element `i` of the algebra acts.
    pub fn operator(&self, i: usize) -> Matrix {
        let (n, d) = (self.algebra.dim(), self.space.dim());
        let cols: Vec<usize> = match self.side {
            Side::Left => (0..d).map(|m| i * d + m).collect(),
            Side::Right => (0..d).map(|m| m * n + i).collect(),
        };
        self.action.matrix.select_cols(&cols)
    }
}

/// Action associativity and unitality, as matrix identities.
pub fn check_module(m: &AlgModule) -> Verdict {
    let f = m.algebra.field();
    let (ia, im) = (Matrix::identity(f, m.algebra.dim()), Matrix::identity(f, m.space.dim()));
    let act = &m.action.matrix;
    let mu = &m.algebra.mult.matrix;
    let u = &m.algebra.unit.matrix;
    match m.side {
        Side::Left => {
            let src = m.algebra.space.tensor(&m.algebra.space).tensor(&m.space);
            compare("module associativity", &act.mul(&mu.kron(&im)), &act.mul(&ia.kron(act)), &src, &m.space)?;
            compare("module unit", &act.mul(&u.kron(&im)), &im, &m.space, &m.space)
        }
        Side::Right => {
            let src = m.space.tensor(&m.algebra.space).tensor(&m.algebra.space);
            compare("module associativity", &act.mul(&act.kron(&ia)), &act.mul(&im.kron(mu)), &src, &m.space)?;
            compare("module unit", &act.mul(&im.kron(u)), &im, &m.space, &m.space)
        }
    }
}

/// Basis of module homomorphisms `M -> N`, found by solving `F a_M = a_N F`
/// for every basis element of the algebra.
pub fn module_hom(m: &AlgModule, n: &AlgModule) -> Result<Vec<LinMap>> {
    if m.side != n.side || m.algebra.mult.matrix != n.algebra.mult.matrix {
        return Err(Error::Mismatch("modules over different algebras or sides".into()));
    }
    let ops: Vec<(Matrix, Matrix)> = (0..m.algebra.dim()).map(|i| (m.operator(i), n.operator(i))).collect();
    Ok(intertwiners(&m.space, &n.space, &ops))
}

/// Basis of `{F : F a_i = b_i F for all i}` for pairs `(a_i, b_i)`.
pub(crate) fn intertwiners(src: &VecSpace, dst: &VecSpace, ops: &[(Matrix, Matrix)]) -> Vec<LinMap> {
    let f = src.field();
    let (dm, dn) = (src.dim(), dst.dim());
    let vars = dm * dn;
    if vars == 0 {
        return Vec::new();
    }
    let blocks: Vec<Matrix> = ops
        .iter()
        .map(|(a, b)| {
            // Row-major vectorisation: vec(F a) = (I ⊗ a^T) vec F, vec(b F) = (b ⊗ I) vec F.
            Matrix::identity(f, dn).kron(&a.transpose()).sub(&b.kron(&Matrix::identity(f, dm)))
        })
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = if refs.is_empty() { Matrix::zeros(f, 0, vars) } else { Matrix::vstack(f, vars, &refs) };
    let null = system.nullspace();
    (0..null.cols()).map(|j| crate::exactlin::hom_unvec(&null, j, src, dst)).collect()
}

/// All grouplike elements (`Δg = g ⊗ g`, `ε(g) = 1`), as columns.
///
/// A nonzero common eigenvector `x` of the operators `L_i` satisfies
/// `Δx = y ⊗ x` with `y = Σ λ_i e_i`, and counitality forces `x = ε(x) y`; so
/// common eigenspaces are at most one-dimensional and grouplikes are their
/// normalised generators.
pub fn grouplikes(c: &Coalgebra) -> Result<Vec<Matrix>> {
    let f = c.field();
    let n = c.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ops = c.left_coefficients();
    let mut cands: Vec<Matrix> = vec![Matrix::identity(f, n)];
    for op in &ops {
        let lambdas = eigenvalue_candidates(op)?;
        let mut next = Vec::new();
        for w in &cands {
            for lam in &lambdas {
                let shifted = op.sub(&Matrix::identity(f, n).scale(lam));
                let y = shifted.mul(w).nullspace();
                if y.cols() > 0 {
                    next.push(w.mul(&y));
                }
            }
        }
        cands = next;
        if cands.is_empty() {
            break;
        }
    }
    let mut out = Vec::new();
    for w in cands {
        for j in 0..w.cols() {
            let x = w.col(j);
            let eps = c.counit().matrix.mul(&x).get(0, 0);
            if eps.is_zero() {
                continue;
            }
            let g = x.scale(&f.inv(&eps)?);
            if c.comult().matrix.mul(&g) == g.kron(&g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn eigenvalue_candidates(op: &Matrix) -> Result<Vec<Fe>> {
    let f = op.field();
    if let Some(all) = f.elements() {
        if f.characteristic() <= ENUMERATION_PRIME_LIMIT {
            return Ok(all);
        }
        return Err(Error::Unsupported(format!(
            "grouplike search over {f}: eigenvalue enumeration is limited to p ≤ {ENUMERATION_PRIME_LIMIT}"
        )));
    }
    let poly = charpoly_q(op);
    rational_roots(&poly).map(|r| r.into_iter().map(Fe::Q).collect())
}

fn to_q(x: &Fe) -> BigRational {
    match x {
        Fe::Q(q) => q.clone(),
        Fe::Fp(v) => BigRational::from_integer(BigInt::from(*v)),
    }
}

/// Characteristic polynomial over `Q` by the Faddeev–LeVerrier recursion;
/// coefficients in increasing degree, monic.
fn charpoly_q(a: &Matrix) -> Vec<BigRational> {
    let n = a.rows();
    let f = a.field();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::zeros(f, n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Matrix::identity(f, n).scale(&Fe::Q(coeffs[n + 1 - k].clone())));
        let am = a.mul(&m);
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + to_q(&am.get(i, i)));
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    coeffs
}

/// Rational roots by the rational root theorem, with bounded trial division.
fn rational_roots(poly: &[BigRational]) -> Result<Vec<BigRational>> {
    const BOUND: u64 = 1_000_000_000_000;
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| num_integer_lcm(&acc, c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints.iter().all(|c| c.is_zero()) {
        return Ok(roots);
    }
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let lead = ints.last().expect("nonzero").abs();
    let constant = ints[0].abs();
    let (Some(a0), Some(an)) = (constant.to_u64(), lead.to_u64()) else {
        return Err(Error::Unsupported("rational root search: coefficients too large".into()));
    };
    if a0 > BOUND || an > BOUND {
        return Err(Error::Unsupported("rational root search: coefficients too large".into()));
    }
    let eval = |x: &BigRational| -> bool {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                if !roots.contains(&x) && eval(&x) {
                    roots.push(x);
                }
            }
        }
    }
    Ok(roots)
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    if x.is_zero() {
        BigInt::zero()
    } else {
        (a * b).abs() / x
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `k(Γ)`: δ-function basis, `Δ(δ_g) = Σ_{ab=g} δ_a ⊗ δ_b`, `ε(δ_g) = [g = e]`.
pub fn group_function_coalgebra(group: &FiniteGroup, field: Field) -> Coalgebra {
    let n = group.order();
    let mut d = Matrix::zeros(field, n * n, n);
    for a in 0..n {
        for b in 0..n {
            d.set_int(a * n + b, group.mul(a, b), 1);
        }
    }
    let e = Matrix::from_fn(field, 1, n, |_, g| i64::from(g == group.identity()));
    let labels = (0..n).map(|g| format!("δ{g}")).collect();
    let space = VecSpace::new(field, labels).expect("distinct labels");
    let c = Coalgebra::new(&format!("k({})", group.name), space, d, e).expect("group coalgebra shapes");
    match is_conilpotent(&c) {
        Ok(r) if r.conilpotent => c.with_coaugmentation(r.coaugmentation.matrix).expect("grouplike"),
        _ => c,
    }
}

/// Outcome of the conilpotency test.
#[derive(Clone, Debug)]
pub struct Conilpotency {
    pub conilpotent: bool,
    pub coaugmentation: LinMap,
    /// Number of grouplike elements found.
    pub grouplikes: usize,
    /// Inclusions into `C` of `F_1 ⊆ F_2 ⊆ …` inside `ker ε`, where
    /// `F_m = {x : Δ₊x ∈ F_{m-1} ⊗ C₊}`; ends where it stabilises.
    pub filtration: Vec<LinMap>,
    /// `dim(kγ ⊕ F_m)` for `m = 0, 1, …`.
    pub dims: Vec<usize>,
}

/// Decides conilpotency by the filtration above. Uses the given
/// coaugmentation if any, else searches for grouplikes; more than one
/// grouplike means more than one simple subcoalgebra, so not conilpotent.
pub fn is_conilpotent(c: &Coalgebra) -> Result<Conilpotency> {
    let f = c.field();
    let (gamma, count) = match c.coaugmentation() {
        Some(g) => (g.matrix.clone(), 1),
        None => {
            let gs = grouplikes(c)?;
            if gs.is_empty() {
                return Err(Error::NoCoaugmentation { found: 0 });
            }
            (gs[0].clone(), gs.len())
        }
    };
    let n = c.dim();
    let kbasis = c.counit().matrix.nullspace();
    let m = kbasis.cols();
    let ground = VecSpace::ground(f);
    let coaug = LinMap::from_parts(&ground, c.space(), gamma.clone());
    let mut dims = vec![1];
    let mut filtration = Vec::new();
    if m == 0 {
        return Ok(Conilpotency { conilpotent: count == 1, coaugmentation: coaug, grouplikes: count, filtration, dims });
    }
    let linv = kbasis.left_inverse().expect("independent columns");
    // Δ₊ on C₊ in coordinates of the basis of ker ε.
    let id = Matrix::identity(f, n);
    let reduced = c.comult().matrix.sub(&gamma.kron(&id)).sub(&id.kron(&gamma));
    let dplus = linv.kron(&linv).mul(&reduced).mul(&kbasis);
    let mut prev = Matrix::zeros(f, m, 0);
    let im = Matrix::identity(f, m);
    loop {
        let q = if prev.cols() == 0 { im.clone() } else { prev.left_nullspace() };
        let next = q.kron(&im).mul(&dplus).nullspace();
        if next.cols() == prev.cols() {
            return Ok(Conilpotency { conilpotent: false, coaugmentation: coaug, grouplikes: count, filtration, dims });
        }
        let sub_space = VecSpace::named(f, &format!("F{}_", filtration.len() + 1), next.cols());
        filtration.push(LinMap::from_parts(&sub_space, c.space(), kbasis.mul(&next)));
        dims.push(1 + next.cols());
        if next.cols() == m {
            return Ok(Conilpotency { conilpotent: count == 1, coaugmentation: coaug, grouplikes: count, filtration, dims });
        }
        prev = next;
    }
}

/// `H^1(C) = ker(C₊ -> C₊ ⊗ C₊)`, the primitive elements, with their inclusion into `C`.
pub fn cogenerator_space(c: &Coalgebra) -> Result<(VecSpace, LinMap)> {
    let r = is_conilpotent(c)?;
    if !r.conilpotent {
        return Err(Error::NotConilpotent);
    }
    let f = c.field();
    match r.filtration.first() {
        None => {
            let z = VecSpace::zero(f);
            Ok((z.clone(), LinMap::zero(&z, c.space())))
        }
        Some(incl) => {
            let h = VecSpace::named(f, "h", incl.domain.dim());
            Ok((h.clone(), LinMap::from_parts(&h, c.space(), incl.matrix.clone())))
        }
    }
}

/// One isomorphism class of simple comodules in a decomposition.
#[derive(Clone, Debug)]
pub struct IrreducibleComodule {
    pub comodule: Comodule,
    pub dim: usize,
    pub multiplicity: usize,
    pub endomorphism_dim: usize,
}

/// A subcomodule admitting no comodule retraction.
#[derive(Clone, Debug)]
pub struct NonSplitWitness {
    pub ambient: Comodule,
    pub sub: Comodule,
    pub inclusion: LinMap,
}

#[derive(Clone, Debug)]
pub enum Semisimplicity {
    Semisimple(Vec<IrreducibleComodule>),
    NotSemisimple(NonSplitWitness),
}

/// Splits the left regular comodule into simples. Every simple comodule
/// embeds in the regular one and comodules are semisimple exactly when it
/// splits completely, so a failed splitting is a global witness.
pub fn cosemisimple_decomposition(c: &Coalgebra) -> Result<Semisimplicity> {
    let regular = Comodule::regular(c, Side::Left);
    let mut rest = regular.clone();
    let mut simples: Vec<Comodule> = Vec::new();
    while rest.dim() > 0 {
        let basis = comod::simple_subcomodule_basis(&rest)?;
        let (sub, incl) = rest.subcomodule(&basis)?;
        match comod::retraction(&rest, &incl)? {
            None => {
                return Ok(Semisimplicity::NotSemisimple(NonSplitWitness { ambient: rest, sub, inclusion: incl }));
            }
            Some(r) => {
                let k = r.matrix.nullspace();
                let (complement, _) = rest.subcomodule(&k)?;
                simples.push(sub);
                rest = complement;
            }
        }
    }
    let mut classes: Vec<IrreducibleComodule> = Vec::new();
    for s in simples {
        let mut placed = false;
        for cl in classes.iter_mut() {
            if cl.dim == s.dim() && !comod::comodule_hom(&cl.comodule, &s)?.1.is_empty() {
                cl.multiplicity += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            let endo = comod::comodule_hom(&s, &s)?.1.len();
            classes.push(IrreducibleComodule { dim: s.dim(), multiplicity: 1, endomorphism_dim: endo, comodule: s });
        }
    }
    Ok(Semisimplicity::Semisimple(classes))
}

/// Coordinates of a coalgebra map `C -> D` tested for compatibility with both structures.
pub fn is_coalgebra_morphism(c: &Coalgebra, d: &Coalgebra, f: &LinMap) -> Verdict {
    if f.domain.dim() != c.dim() || f.codomain.dim() != d.dim() {
        return Err(shape("coalgebra morphism", "map has the wrong shape"));
    }
    let lhs = d.comult().matrix.mul(&f.matrix);
    let rhs = f.matrix.kron(&f.matrix).mul(&c.comult().matrix);
    compare("comultiplicativity", &lhs, &rhs, c.space(), &d.space().tensor(d.space()))?;
    compare("counitality", &d.counit().matrix.mul(&f.matrix), &c.counit().matrix, c.space(), &VecSpace::ground(c.field()))
}

/// Convenience for reporting: a violation converted to an error.
pub fn into_error(v: Violation) -> Error {
    Error::Axiom(v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_coalgebra_passes() {
        let k = Coalgebra::ground(Field::fp(5));
        assert!(check_coalgebra(&k).is_ok());
        let r = is_conilpotent(&k).unwrap();
        assert!(r.conilpotent);
        assert_eq!(r.dims, vec![1]);
        assert_eq!(cogenerator_space(&k).unwrap().0.dim(), 0);
    }

    #[test]
    fn path_coalgebra_is_coassociative() {
        let c = Coalgebra::path_coalgebra(Field::fp(3), 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(c.dim(), 7);
        assert!(check_coalgebra(&c).is_ok());
        assert!(Coalgebra::path_coalgebra(Field::fp(3), 2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn rational_grouplikes() {
        let c = group_function_coalgebra(&FiniteGroup::cyclic(2), Field::rationals());
        // Characters of Z/2 over Q: trivial and sign.
        assert_eq!(grouplikes(&c).unwrap().len(), 2);
        assert!(!is_conilpotent(&c).unwrap().conilpotent);
    }

    #[test]
    fn tensor_and_sum_of_coalgebras() {
        let f = Field::fp(2);
        let a = group_function_coalgebra(&FiniteGroup::cyclic(2), f);
        let t = a.tensor(&a).unwrap();
        assert!(check_coalgebra(&t).is_ok());
        assert!(t.coaugmentation().is_some());
        let s = a.direct_sum(&a).unwrap();
        assert!(check_coalgebra(&s).is_ok());
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
