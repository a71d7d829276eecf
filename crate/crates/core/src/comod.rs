//! Finite-dimensional comodules over a [`Coalgebra`].
//!
//! A left coaction is stored as `M -> C ⊗ M`, a right one as `M -> M ⊗ C`.
//! Writing `ν(m) = Σ_i c_i ⊗ ν_i(m)` (or `Σ_i ν_i(m) ⊗ c_i`) the operators
//! `ν_i` are the coefficients; most systems below are phrased through them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalg::{dual_algebra, intertwiners, AlgModule, Coalgebra, Side};
use crate::error::{Error, Result};
use crate::exactlin::{hom_vec, is_prime, Fe, Field, LinMap, Matrix, VecSpace};
use crate::homcx::{Complex, Decoration};
use crate::witness::{compare, shape, Verdict};

/// Exhaustive searches over `F_p^w` are limited to this many vectors.
const SEARCH_CAP: u64 = 1 << 20;

const NORTON_TRIES: usize = 64;

const SPLITTING_TRIES: usize = 8;

const SEARCH_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct Comodule {
    coalgebra: Coalgebra,
    space: VecSpace,
    coaction: LinMap,
    side: Side,
}

impl Comodule {
    /// Checks shapes only; see [`check_comodule`] for the axioms.
    pub fn new(coalgebra: &Coalgebra, space: VecSpace, coaction: Matrix, side: Side) -> Result<Comodule> {
        coalgebra.space().check_field(&space)?;
        let target = match side {
            Side::Left => coalgebra.space().tensor(&space),
            Side::Right => space.tensor(coalgebra.space()),
        };
        let coaction = LinMap::new(space.clone(), target, coaction)?;
        Ok(Comodule { coalgebra: coalgebra.clone(), space, coaction, side })
    }

    /// Assembles the coaction from its coefficient operators.
    pub fn from_coefficients(coalgebra: &Coalgebra, space: VecSpace, side: Side, coeffs: &[Matrix]) -> Comodule {
        let (n, d) = (coalgebra.dim(), space.dim());
        assert_eq!(coeffs.len(), n, "one coefficient per basis element of C");
        let mut nu = Matrix::zeros(space.field(), n * d, d);
        for (i, b) in coeffs.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    if !b.is_zero_at(r, c) {
                        let row = match side {
                            Side::Left => i * d + r,
                            Side::Right => r * n + i,
                        };
                        nu.set(row, c, b.get(r, c));
                    }
                }
            }
        }
        Comodule::new(coalgebra, space, nu, side).expect("consistent shapes")
    }

    /// `C` over itself via `Δ`.
    pub fn regular(c: &Coalgebra, side: Side) -> Comodule {
        Comodule::new(c, c.space().clone(), c.comult().matrix.clone(), side).expect("Δ has the right shape")
    }

    /// `V` with coaction through the coaugmentation, `v ↦ γ(1) ⊗ v`.
    pub fn trivial(c: &Coalgebra, v: &VecSpace, side: Side) -> Result<Comodule> {
        let g = c.coaugmentation().ok_or(Error::NoCoaugmentation { found: 0 })?;
        let id = Matrix::identity(v.field(), v.dim());
        let nu = match side {
            Side::Left => g.matrix.kron(&id),
            Side::Right => id.kron(&g.matrix),
        };
        Comodule::new(c, v.clone(), nu, side)
    }

    pub fn zero(c: &Coalgebra, side: Side) -> Comodule {
        let z = VecSpace::zero(c.field());
        Comodule::new(c, z, Matrix::zeros(c.field(), 0, 0), side).expect("zero comodule")
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn space(&self) -> &VecSpace {
        &self.space
    }

    pub fn coaction(&self) -> &LinMap {
        &self.coaction
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn relabel(&self, prefix: &str) -> Comodule {
        Comodule { space: self.space.relabel(prefix), ..self.clone() }.reattach()
    }

    fn reattach(mut self) -> Comodule {
        let target = match self.side {
            Side::Left => self.coalgebra.space().tensor(&self.space),
            Side::Right => self.space.tensor(self.coalgebra.space()),
        };
        self.coaction = LinMap::from_parts(&self.space, &target, self.coaction.matrix.clone());
        self
    }

    /// The operators `ν_i`.
    pub fn coefficients(&self) -> Vec<Matrix> {
        let (n, d) = (self.coalgebra.dim(), self.dim());
        (0..n)
            .map(|i| match self.side {
                Side::Left => self.coaction.matrix.block(i * d, 0, d, d),
                Side::Right => self.coaction.matrix.select_rows(&(0..d).map(|m| m * n + i).collect::<Vec<_>>()),
            })
            .collect()
    }

    /// The subcomodule spanned by the columns of `basis`, with its inclusion.
    pub fn subcomodule(&self, basis: &Matrix) -> Result<(Comodule, LinMap)> {
        let f = self.field();
        let b = if basis.cols() == 0 { Matrix::zeros(f, self.dim(), 0) } else { basis.column_basis() };
        let space = VecSpace::named(f, "s", b.cols());
        let coeffs = if b.cols() == 0 {
            vec![Matrix::zeros(f, 0, 0); self.coalgebra.dim()]
        } else {
            let linv = b.left_inverse().expect("independent columns");
            let mut out = Vec::new();
            for nu in self.coefficients() {
                let img = nu.mul(&b);
                let x = linv.mul(&img);
                if b.mul(&x) != img {
                    return Err(Error::Precondition("span is not a subcomodule".into()));
                }
                out.push(x);
            }
            out
        };
        let sub = Comodule::from_coefficients(&self.coalgebra, space.clone(), self.side, &coeffs);
        Ok((sub, LinMap::from_parts(&space, &self.space, b)))
    }

    /// The quotient by the subcomodule spanned by `basis`, with the projection.
    pub fn quotient(&self, basis: &Matrix) -> Result<(Comodule, LinMap)> {
        let f = self.field();
        let d = self.dim();
        let q = if basis.cols() == 0 { Matrix::identity(f, d) } else { basis.left_nullspace() };
        let space = VecSpace::named(f, "q", q.rows());
        let coeffs = if q.rows() == 0 {
            vec![Matrix::zeros(f, 0, 0); self.coalgebra.dim()]
        } else {
            let rinv = q.right_inverse().expect("independent rows");
            let mut out = Vec::new();
            for nu in self.coefficients() {
                let img = q.mul(&nu);
                let y = img.mul(&rinv);
                if y.mul(&q) != img {
                    return Err(Error::Precondition("span is not a subcomodule".into()));
                }
                out.push(y);
            }
            out
        };
        let quo = Comodule::from_coefficients(&self.coalgebra, space.clone(), self.side, &coeffs);
        Ok((quo, LinMap::from_parts(&self.space, &space, q)))
    }

    pub fn direct_sum(&self, other: &Comodule) -> Result<Comodule> {
        self.coalgebra.require_same(&other.coalgebra)?;
        if self.side != other.side {
            return Err(Error::Mismatch("comodules on different sides".into()));
        }
        let f = self.field();
        let coeffs: Vec<Matrix> = self
            .coefficients()
            .iter()
            .zip(other.coefficients())
            .map(|(a, b)| Matrix::direct_sum(f, &[a, &b]))
            .collect();
        Ok(Comodule::from_coefficients(&self.coalgebra, self.space.direct_sum(&other.space), self.side, &coeffs))
    }

    /// The left (or right) `C^∨`-module with `φ·m = Σ φ(m₋₁) m₀`
    /// (or `m·φ = Σ m₀ φ(m₁)`).
    pub fn as_module(&self) -> Result<AlgModule> {
        let alg = dual_algebra(&self.coalgebra)?;
        let (n, d) = (self.coalgebra.dim(), self.dim());
        let f = self.field();
        let coeffs = self.coefficients();
        let mut act = Matrix::zeros(f, d, n * d);
        for (i, nu) in coeffs.iter().enumerate() {
            for m in 0..d {
                let col = match self.side {
                    Side::Left => i * d + m,
                    Side::Right => m * n + i,
                };
                for r in 0..d {
                    if !nu.is_zero_at(r, m) {
                        act.set(r, col, nu.get(r, m));
                    }
                }
            }
        }
        AlgModule::new(alg, self.space.clone(), act, self.side)
    }
}

/// Coassociativity and counitality of the coaction, as matrix identities.
pub fn check_comodule(m: &Comodule) -> Verdict {
    let c = m.coalgebra();
    let f = m.field();
    let (ic, im) = (Matrix::identity(f, c.dim()), Matrix::identity(f, m.dim()));
    let nu = &m.coaction().matrix;
    let d = &c.comult().matrix;
    let e = &c.counit().matrix;
    match m.side() {
        Side::Left => {
            let ccm = c.space().tensor(c.space()).tensor(m.space());
            compare("coaction coassociativity", &d.kron(&im).mul(nu), &ic.kron(nu).mul(nu), m.space(), &ccm)?;
            compare("coaction counitality", &e.kron(&im).mul(nu), &im, m.space(), m.space())
        }
        Side::Right => {
            let mcc = m.space().tensor(c.space()).tensor(c.space());
            compare("coaction coassociativity", &nu.kron(&ic).mul(nu), &im.kron(d).mul(nu), m.space(), &mcc)?;
            compare("coaction counitality", &im.kron(e).mul(nu), &im, m.space(), m.space())
        }
    }
}

fn require_compatible(m: &Comodule, n: &Comodule) -> Result<()> {
    m.coalgebra().require_same(n.coalgebra())?;
    if m.side() != n.side() {
        return Err(Error::Mismatch("comodules on different sides".into()));
    }
    Ok(())
}

/// Whether `f : M -> N` commutes with the coactions.
pub fn is_morphism(m: &Comodule, n: &Comodule, f: &LinMap) -> Result<bool> {
    require_compatible(m, n)?;
    if f.domain.dim() != m.dim() || f.codomain.dim() != n.dim() {
        return Err(Error::DimensionMismatch { expected: (n.dim(), m.dim()), found: (f.codomain.dim(), f.domain.dim()) });
    }
    let ic = Matrix::identity(m.field(), m.coalgebra().dim());
    let lifted = match m.side() {
        Side::Left => ic.kron(&f.matrix),
        Side::Right => f.matrix.kron(&ic),
    };
    Ok(n.coaction().matrix.mul(&f.matrix) == lifted.mul(&m.coaction().matrix))
}

/// Morphism check reported as a verdict.
pub fn check_morphism(m: &Comodule, n: &Comodule, f: &LinMap) -> Verdict {
    if f.domain.dim() != m.dim() || f.codomain.dim() != n.dim() {
        return Err(shape("comodule morphism", "map has the wrong shape"));
    }
    let ic = Matrix::identity(m.field(), m.coalgebra().dim());
    let lifted = match m.side() {
        Side::Left => ic.kron(&f.matrix),
        Side::Right => f.matrix.kron(&ic),
    };
    compare(
        "comodule morphism",
        &n.coaction().matrix.mul(&f.matrix),
        &lifted.mul(&m.coaction().matrix),
        m.space(),
        &n.coaction().codomain,
    )
}

/// The cofree left comodule `C ⊗ V` with coaction `Δ ⊗ id`.
pub fn cofree(c: &Coalgebra, v: &VecSpace) -> Result<Comodule> {
    c.space().check_field(v)?;
    let nu = c.comult().matrix.kron(&Matrix::identity(v.field(), v.dim()));
    Comodule::new(c, c.space().tensor(v), nu, Side::Left)
}

/// The cofree right comodule `V ⊗ C` with coaction `id ⊗ Δ`.
pub fn cofree_right(c: &Coalgebra, v: &VecSpace) -> Result<Comodule> {
    c.space().check_field(v)?;
    let nu = Matrix::identity(v.field(), v.dim()).kron(&c.comult().matrix);
    Comodule::new(c, v.tensor(c.space()), nu, Side::Right)
}

/// Basis of `Hom_C(M, N)`: solutions of `ν_N ∘ F = (id ⊗ F) ∘ ν_M`.
pub fn comodule_hom(m: &Comodule, n: &Comodule) -> Result<(VecSpace, Vec<LinMap>)> {
    require_compatible(m, n)?;
    let ops: Vec<(Matrix, Matrix)> = m.coefficients().into_iter().zip(n.coefficients()).collect();
    let basis = intertwiners(m.space(), n.space(), &ops);
    let space = VecSpace::named(m.field(), "φ", basis.len());
    Ok((space, basis))
}

/// `N □_C M = ker(ν_N ⊗ id − id ⊗ ν_M : N ⊗ M -> N ⊗ C ⊗ M)`, with its inclusion into `N ⊗ M`.
pub fn cotensor(n: &Comodule, m: &Comodule) -> Result<(VecSpace, LinMap)> {
    n.coalgebra().require_same(m.coalgebra())?;
    if n.side() != Side::Right || m.side() != Side::Left {
        return Err(Error::Mismatch("cotensor needs a right and a left comodule".into()));
    }
    let f = m.field();
    let a = n.coaction().matrix.kron(&Matrix::identity(f, m.dim()));
    let b = Matrix::identity(f, n.dim()).kron(&m.coaction().matrix);
    let ker = a.sub(&b).nullspace();
    let space = VecSpace::named(f, "□", ker.cols());
    let nm = n.space().tensor(m.space());
    Ok((space.clone(), LinMap::from_parts(&space, &nm, ker)))
}

/// Subcomodule generated by one vector: the span of all `ν_i(v)`.
pub fn generated_subcomodule(m: &Comodule, v: &Matrix) -> Matrix {
    let images: Vec<Matrix> = m.coefficients().iter().map(|nu| nu.mul(v)).collect();
    let refs: Vec<&Matrix> = images.iter().collect();
    Matrix::hstack(m.field(), m.dim(), &refs).column_basis()
}

/// Basis (in `M`) of a simple subcomodule of a nonzero `M`, over a finite field.
///
/// Shrinks through cyclic subcomodules and then applies Norton's
/// irreducibility criterion: for a singular `a` in the operator algebra, `W`
/// is simple iff every nonzero vector of `ker a` generates `W` and one
/// nonzero vector of `ker a^T` generates the dual. A failure of either
/// produces a proper subcomodule. When no singular element is found the
/// candidate is certified simple by an element `b` with `F_p[b]` a field of
/// degree `dim W`, or, failing that, by exhaustive search.
pub fn simple_subcomodule_basis(m: &Comodule) -> Result<Matrix> {
    if m.dim() == 0 {
        return Err(Error::Precondition("zero comodule has no simple subcomodule".into()));
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    let mut w = Matrix::identity(f, m.dim());
    'outer: loop {
        let dw = w.cols();
        let linv = w.left_inverse().expect("independent columns");
        let ops: Vec<Matrix> = m.coefficients().iter().map(|nu| linv.mul(&nu.mul(&w))).collect();
        for j in 0..dw {
            let g = generate(&ops, &Matrix::identity(f, dw).col(j));
            if g.cols() < dw {
                w = w.mul(&g);
                continue 'outer;
            }
        }
        if dw == 1 {
            return Ok(w);
        }
        let Some(elems) = f.elements() else {
            return Err(Error::Unsupported("simple subcomodule search needs a finite field".into()));
        };
        if let Some(a) = singular_element(&ops, &elems, &mut rng) {
            let ker = a.nullspace();
            let mut found = None;
            for_each_line(f, ker.cols(), |y| {
                let g = generate(&ops, &ker.mul(y));
                if g.cols() < dw {
                    found = Some(g);
                    return false;
                }
                true
            })?;
            if let Some(g) = found {
                w = w.mul(&g);
                continue 'outer;
            }
            let dual_ops: Vec<Matrix> = ops.iter().map(|o| o.transpose()).collect();
            let u = generate(&dual_ops, &a.transpose().nullspace().col(0));
            if u.cols() == dw {
                return Ok(w);
            }
            w = w.mul(&u.transpose().nullspace());
            continue 'outer;
        }
        if field_certificate(&ops, &elems, &mut rng) {
            return Ok(w);
        }
        let mut found = None;
        for_each_line(f, dw, |y| {
            let g = generate(&ops, y);
            if g.cols() < dw {
                found = Some(g);
                return false;
            }
            true
        })?;
        match found {
            Some(g) => w = w.mul(&g),
            None => return Ok(w),
        }
    }
}

/// Span of `op_i v`, the subcomodule generated by `v`.
fn generate(ops: &[Matrix], v: &Matrix) -> Matrix {
    let images: Vec<Matrix> = ops.iter().map(|o| o.mul(v)).collect();
    let refs: Vec<&Matrix> = images.iter().collect();
    Matrix::hstack(v.field(), v.rows(), &refs).column_basis()
}

fn random_element(ops: &[Matrix], elems: &[Fe], rng: &mut ChaCha8Rng) -> Matrix {
    let mut a = Matrix::zeros(ops[0].field(), ops[0].rows(), ops[0].cols());
    for o in ops {
        let r = &elems[rng.random_range(0..elems.len())];
        if !r.is_zero() {
            a = a.add(&o.scale(r));
        }
    }
    a
}

/// A singular, nonzero element of the operator algebra with smallest nullity
/// found. Candidates are shifts `x - λ` and, for semisimple commutative
/// pieces whose residue fields are not `F_p`, equal-degree splitting
/// elements: `z^{(p^k-1)/2} - 1` for odd `p`, the trace `Σ_{i<k} z^{2^i}` for
/// `p = 2`.
fn singular_element(ops: &[Matrix], elems: &[Fe], rng: &mut ChaCha8Rng) -> Option<Matrix> {
    let f = ops[0].field();
    let d = ops[0].rows();
    let p = f.characteristic();
    let mut best: Option<(usize, Matrix)> = None;
    let offer = |a: Matrix, best: &mut Option<(usize, Matrix)>| {
        let nullity = d - a.rank();
        if nullity > 0 && nullity < d && best.as_ref().is_none_or(|(k, _)| nullity < *k) {
            *best = Some((nullity, a));
        }
    };
    for t in 0..NORTON_TRIES {
        let x = if t < ops.len() { ops[t].clone() } else { random_element(ops, elems, rng) };
        for lam in elems {
            offer(x.sub(&Matrix::identity(f, d).scale(lam)), &mut best);
        }
        if matches!(best, Some((1, _))) {
            return best.map(|(_, a)| a);
        }
    }
    for _ in 0..SPLITTING_TRIES {
        let z = random_element(ops, elems, rng);
        for k in 1..=d as u32 {
            let Some(q) = p.checked_pow(k) else { break };
            let a = if p == 2 {
                let mut acc = z.clone();
                let mut y = z.clone();
                for _ in 1..k {
                    y = y.mul(&y);
                    acc = acc.add(&y);
                }
                acc
            } else {
                z.pow((q - 1) / 2).sub(&Matrix::identity(f, d))
            };
            offer(a, &mut best);
        }
    }
    best.map(|(_, a)| a)
}

/// Whether some `b` in the operator algebra generates a field of degree `dim`:
/// `1, b, …, b^{d-1}` independent, `b^{p^d} = b`, and `b^{p^{d/q}} - b`
/// invertible for every prime `q | d`. The space is then one-dimensional
/// over that field, hence simple.
fn field_certificate(ops: &[Matrix], elems: &[Fe], rng: &mut ChaCha8Rng) -> bool {
    let f = ops[0].field();
    let d = ops[0].rows();
    let p = f.characteristic();
    let frob = |b: &Matrix, k: usize| (0..k).fold(b.clone(), |x, _| x.pow(p));
    for t in 0..NORTON_TRIES {
        let b = if t < ops.len() { ops[t].clone() } else { random_element(ops, elems, rng) };
        let mut powers = vec![flatten(&Matrix::identity(f, d))];
        let mut x = Matrix::identity(f, d);
        for _ in 1..d {
            x = x.mul(&b);
            powers.push(flatten(&x));
        }
        if Matrix::from_columns(f, d * d, &powers).rank() < d {
            continue;
        }
        if frob(&b, d) != b {
            continue;
        }
        let ok = (2..=d).filter(|q| d % q == 0 && is_prime(*q as u64)).all(|q| {
            frob(&b, d / q).sub(&b).inverse().is_some()
        });
        if ok {
            return true;
        }
    }
    false
}

fn flatten(x: &Matrix) -> Matrix {
    let (r, c) = (x.rows(), x.cols());
    let mut v = Matrix::zeros(x.field(), r * c, 1);
    for i in 0..r {
        for j in 0..c {
            if !x.is_zero_at(i, j) {
                v.set(i * c + j, 0, x.get(i, j));
            }
        }
    }
    v
}

/// Calls `visit` on one representative of each line of `F_p^dim` (leading
/// nonzero coordinate 1) until it returns `false`.
fn for_each_line(f: Field, dim: usize, mut visit: impl FnMut(&Matrix) -> bool) -> Result<()> {
    let p = f.characteristic();
    let total = p.checked_pow(dim as u32).filter(|&t| t <= SEARCH_CAP).ok_or_else(|| {
        Error::Unsupported(format!("search over {f} in dimension {dim} exceeds the search cap"))
    })?;
    for t in 1..total {
        let mut digits = Vec::with_capacity(dim);
        let mut x = t;
        for _ in 0..dim {
            digits.push(x % p);
            x /= p;
        }
        if digits.iter().rev().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let y = Matrix::from_fn(f, dim, 1, |i, _| digits[i] as i64);
        if !visit(&y) {
            break;
        }
    }
    Ok(())
}

/// A comodule retraction `r : M -> S` of `incl : S -> M`, if one exists.
pub fn retraction(m: &Comodule, incl: &LinMap) -> Result<Option<LinMap>> {
    let s_dim = incl.domain.dim();
    let f = m.field();
    if s_dim == 0 {
        return Ok(Some(LinMap::zero(m.space(), &incl.domain)));
    }
    let (sub, _) = m.subcomodule(&incl.matrix)?;
    let sub = Comodule { space: incl.domain.clone(), ..sub }.reattach();
    let (_, basis) = comodule_hom(m, &sub)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let cols: Vec<Matrix> = basis.iter().map(|h| hom_vec(&h.then_after(incl))).collect();
    let sys = Matrix::from_columns(f, s_dim * s_dim, &cols);
    let target = hom_vec(&LinMap::identity(&incl.domain));
    let Some(c) = sys.solve(&target) else { return Ok(None) };
    let mut r = Matrix::zeros(f, s_dim, m.dim());
    for (j, h) in basis.iter().enumerate() {
        let cj = c.get(j, 0);
        if !cj.is_zero() {
            r = r.add(&h.matrix.scale(&cj));
        }
    }
    Ok(Some(LinMap::from_parts(m.space(), &incl.domain, r)))
}

/// The cofree comodule on the underlying space of `M`, on the same side,
/// together with the coaction viewed as an embedding into it.
pub fn cofree_hull(m: &Comodule) -> Result<(Comodule, LinMap)> {
    let j = match m.side() {
        Side::Left => cofree(m.coalgebra(), m.space())?,
        Side::Right => cofree_right(m.coalgebra(), m.space())?,
    };
    let emb = LinMap::from_parts(m.space(), j.space(), m.coaction().matrix.clone());
    Ok((j, emb))
}

/// Injective comodules are the direct summands of cofree ones; `M` is one
/// exactly when its coaction embedding splits.
pub fn is_injective(m: &Comodule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let (j, emb) = cofree_hull(m)?;
    Ok(retraction_onto(&j, m, &emb)?.is_some())
}

/// A comodule map `r : J -> M` with `r ∘ e = id`, for a comodule embedding `e : M -> J`.
pub fn retraction_onto(j: &Comodule, m: &Comodule, e: &LinMap) -> Result<Option<LinMap>> {
    let f = m.field();
    let d = m.dim();
    let (_, basis) = comodule_hom(j, m)?;
    if basis.is_empty() {
        return Ok(if d == 0 { Some(LinMap::zero(j.space(), m.space())) } else { None });
    }
    let cols: Vec<Matrix> = basis.iter().map(|h| hom_vec(&h.then_after(e))).collect();
    let sys = Matrix::from_columns(f, d * d, &cols);
    let Some(c) = sys.solve(&hom_vec(&LinMap::identity(m.space()))) else { return Ok(None) };
    let mut r = Matrix::zeros(f, d, j.dim());
    for (k, h) in basis.iter().enumerate() {
        let ck = c.get(k, 0);
        if !ck.is_zero() {
            r = r.add(&h.matrix.scale(&ck));
        }
    }
    Ok(Some(LinMap::from_parts(j.space(), m.space(), r)))
}

/// `0 -> M -> J^0 -> … -> J^n -> 0`.
#[derive(Clone, Debug)]
pub struct Coresolution {
    /// Decorated complex `J^0 -> … -> J^n` in degrees `0..=n`.
    pub complex: Complex,
    pub terms: Vec<Comodule>,
    /// `M -> J^0`.
    pub augmentation: LinMap,
    pub length: usize,
    /// Dimensions of the successive cokernels, starting with `M`.
    pub cokernel_dims: Vec<usize>,
}

/// Coresolves by the coaction embeddings `K -> C ⊗ K`, stopping as soon as a
/// cokernel is itself injective (it becomes the last term). Every other term
/// is cofree.
pub fn injective_coresolution(m: &Comodule, cap: usize) -> Result<Coresolution> {
    let f = m.field();
    let mut terms: Vec<Comodule> = Vec::new();
    let mut diffs: Vec<LinMap> = Vec::new();
    let mut cokernel_dims = vec![m.dim()];
    let mut current = m.clone();
    let mut into_current: Option<LinMap> = None;
    let mut augmentation: Option<LinMap> = None;
    for i in 0..=cap {
        if current.dim() == 0 && i > 0 {
            break;
        }
        let last = is_injective(&current)?;
        let (term, emb) = if last {
            let id = LinMap::identity(current.space());
            (current.clone(), id)
        } else if i == cap {
            return Err(Error::CapExceeded { cap, last_dim: current.dim() });
        } else {
            cofree_hull(&current)?
        };
        let term = term.relabel(&format!("J{i}_"));
        let emb = LinMap::from_parts(&emb.domain, term.space(), emb.matrix);
        match &into_current {
            None => augmentation = Some(emb.clone()),
            Some(p) => {
                let prev = terms.last().expect("previous term");
                diffs.push(LinMap::from_parts(prev.space(), term.space(), emb.matrix.mul(&p.matrix)));
            }
        }
        terms.push(term.clone());
        if last {
            break;
        }
        let (quo, proj) = term.quotient(&emb.matrix)?;
        cokernel_dims.push(quo.dim());
        into_current = Some(proj);
        current = quo;
    }
    let augmentation = augmentation.expect("at least one step");
    let spaces: Vec<VecSpace> = terms.iter().map(|t| t.space().clone()).collect();
    let deco: BTreeMap<i32, Decoration> =
        terms.iter().enumerate().map(|(i, t)| (i as i32, Decoration::Comodule(t.clone()))).collect();
    let complex = Complex::from_terms(f, 0, spaces, diffs)?.with_decoration(deco)?;
    let length = terms.len().saturating_sub(1);
    Ok(Coresolution { complex, terms, augmentation, length, cokernel_dims })
}
