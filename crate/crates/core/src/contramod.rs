//! Finite-dimensional left contramodules over a [`Coalgebra`].
//!
//! The contraaction is a map `π : Hom_k(C, P) -> P`. Writing `π_i(p)` for
//! `π` applied to the map sending `c_i ↦ p` and every other basis element to
//! zero, `π(f) = Σ_i π_i(f(c_i))`; `π_i` is the action of the dual basis
//! functional `c_i^*`.

use std::collections::BTreeMap;

use crate::coalg::{dual_algebra, intertwiners, AlgModule, Coalgebra, Side};
use crate::comod::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::{
    cokernel, curry, evaluation, hom, hom_post, hom_pre, hom_unvec, hom_vec, uncurry, Field, LinMap, Matrix,
    VecSpace,
};
use crate::homcx::{Complex, Decoration};
use crate::witness::{compare, shape, Verdict, Violation};

#[derive(Clone, Debug)]
pub struct Contramodule {
    coalgebra: Coalgebra,
    space: VecSpace,
    contraaction: LinMap,
}

impl Contramodule {
    /// Checks shapes only; see [`check_contramodule`] for the axioms.
    pub fn new(coalgebra: &Coalgebra, space: VecSpace, contraaction: Matrix) -> Result<Contramodule> {
        coalgebra.space().check_field(&space)?;
        let src = hom(coalgebra.space(), &space);
        let contraaction = LinMap::new(src, space.clone(), contraaction)?;
        Ok(Contramodule { coalgebra: coalgebra.clone(), space, contraaction })
    }

    /// Assembles `π` from the operators `π_i`.
    pub fn from_coefficients(coalgebra: &Coalgebra, space: VecSpace, coeffs: &[Matrix]) -> Contramodule {
        let (n, d) = (coalgebra.dim(), space.dim());
        assert_eq!(coeffs.len(), n, "one coefficient per basis element of C");
        let mut pi = Matrix::zeros(space.field(), d, n * d);
        for (i, b) in coeffs.iter().enumerate() {
            for p in 0..d {
                for r in 0..d {
                    if !b.is_zero_at(r, p) {
                        pi.set(r, p * n + i, b.get(r, p));
                    }
                }
            }
        }
        Contramodule::new(coalgebra, space, pi).expect("consistent shapes")
    }

    /// `V` with `π(f) = f(γ(1))`.
    pub fn trivial(c: &Coalgebra, v: &VecSpace) -> Result<Contramodule> {
        let g = c.coaugmentation().ok_or(Error::NoCoaugmentation { found: 0 })?;
        let pi = hom_pre(g, v);
        Contramodule::new(c, v.clone(), pi.matrix)
    }

    pub fn zero(c: &Coalgebra) -> Contramodule {
        Contramodule::new(c, VecSpace::zero(c.field()), Matrix::zeros(c.field(), 0, 0)).expect("zero")
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn space(&self) -> &VecSpace {
        &self.space
    }

    pub fn contraaction(&self) -> &LinMap {
        &self.contraaction
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn relabel(&self, prefix: &str) -> Contramodule {
        let space = self.space.relabel(prefix);
        Contramodule::new(&self.coalgebra, space, self.contraaction.matrix.clone()).expect("same shape")
    }

    /// The operators `π_i`.
    pub fn coefficients(&self) -> Vec<Matrix> {
        let (n, d) = (self.coalgebra.dim(), self.dim());
        (0..n)
            .map(|i| self.contraaction.matrix.select_cols(&(0..d).map(|p| p * n + i).collect::<Vec<_>>()))
            .collect()
    }

    /// The subcontramodule spanned by the columns of `basis`.
    pub fn subcontramodule(&self, basis: &Matrix) -> Result<(Contramodule, LinMap)> {
        let f = self.field();
        let b = if basis.cols() == 0 { Matrix::zeros(f, self.dim(), 0) } else { basis.column_basis() };
        let space = VecSpace::named(f, "s", b.cols());
        let coeffs = if b.cols() == 0 {
            vec![Matrix::zeros(f, 0, 0); self.coalgebra.dim()]
        } else {
            let linv = b.left_inverse().expect("independent columns");
            let mut out = Vec::new();
            for pi in self.coefficients() {
                let img = pi.mul(&b);
                let x = linv.mul(&img);
                if b.mul(&x) != img {
                    return Err(Error::Precondition("span is not a subcontramodule".into()));
                }
                out.push(x);
            }
            out
        };
        let sub = Contramodule::from_coefficients(&self.coalgebra, space.clone(), &coeffs);
        Ok((sub, LinMap::from_parts(&space, &self.space, b)))
    }

    /// The quotient by the subcontramodule spanned by `basis`.
    pub fn quotient(&self, basis: &Matrix) -> Result<(Contramodule, LinMap)> {
        let f = self.field();
        let q = if basis.cols() == 0 { Matrix::identity(f, self.dim()) } else { basis.left_nullspace() };
        let space = VecSpace::named(f, "q", q.rows());
        let coeffs = if q.rows() == 0 {
            vec![Matrix::zeros(f, 0, 0); self.coalgebra.dim()]
        } else {
            let rinv = q.right_inverse().expect("independent rows");
            let mut out = Vec::new();
            for pi in self.coefficients() {
                let img = q.mul(&pi);
                let y = img.mul(&rinv);
                if y.mul(&q) != img {
                    return Err(Error::Precondition("span is not a subcontramodule".into()));
                }
                out.push(y);
            }
            out
        };
        let quo = Contramodule::from_coefficients(&self.coalgebra, space.clone(), &coeffs);
        Ok((quo, LinMap::from_parts(&self.space, &space, q)))
    }

    pub fn direct_sum(&self, other: &Contramodule) -> Result<Contramodule> {
        self.coalgebra.require_same(&other.coalgebra)?;
        let f = self.field();
        let coeffs: Vec<Matrix> = self
            .coefficients()
            .iter()
            .zip(other.coefficients())
            .map(|(a, b)| Matrix::direct_sum(f, &[a, &b]))
            .collect();
        Ok(Contramodule::from_coefficients(&self.coalgebra, self.space.direct_sum(&other.space), &coeffs))
    }
}

/// Contraassociativity and contraunitality. The first compares, on
/// `Hom(C ⊗ C, P) ≅ Hom(C, Hom(C, P))`, the composite through `Δ` with the
/// composite through `Hom(C, π)`; the second checks `π ∘ Hom(ε, P) = id`.
pub fn check_contramodule(p: &Contramodule) -> Verdict {
    let c = p.coalgebra();
    let pi = p.contraaction();
    let via_comult = pi.then_after(&hom_pre(c.comult(), p.space()));
    let via_action = pi.then_after(&hom_post(c.space(), pi)).then_after(&curry(c.space(), c.space(), p.space()));
    compare("contraassociativity", &via_comult.matrix, &via_action.matrix, &via_comult.domain, p.space())?;
    let unit = hom_pre(c.counit(), p.space());
    let id = Matrix::identity(p.field(), p.dim());
    compare("contraunitality", &pi.matrix.mul(&unit.matrix), &id, p.space(), p.space())
}

/// Whether `f : P -> Q` satisfies `f ∘ π_P = π_Q ∘ Hom(C, f)`.
pub fn is_morphism(p: &Contramodule, q: &Contramodule, f: &LinMap) -> Result<bool> {
    p.coalgebra().require_same(q.coalgebra())?;
    if f.domain.dim() != p.dim() || f.codomain.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: (q.dim(), p.dim()), found: (f.codomain.dim(), f.domain.dim()) });
    }
    let lhs = f.matrix.mul(&p.contraaction().matrix);
    let rhs = q.contraaction().matrix.mul(&hom_post(p.coalgebra().space(), f).matrix);
    Ok(lhs == rhs)
}

/// Morphism check reported as a verdict.
pub fn check_morphism(p: &Contramodule, q: &Contramodule, f: &LinMap) -> Verdict {
    if f.domain.dim() != p.dim() || f.codomain.dim() != q.dim() {
        return Err(shape("contramodule morphism", "map has the wrong shape"));
    }
    let lhs = f.matrix.mul(&p.contraaction().matrix);
    let rhs = q.contraaction().matrix.mul(&hom_post(p.coalgebra().space(), f).matrix);
    compare("contramodule morphism", &lhs, &rhs, &p.contraaction().domain, q.space())
}

/// `Hom_k(C, V)` with `π(F)(c) = Σ F(c₂)(c₁)`: uncurry, then precompose with `Δ`.
pub fn free_contra(c: &Coalgebra, v: &VecSpace) -> Result<Contramodule> {
    c.space().check_field(v)?;
    let pi = hom_pre(c.comult(), v).then_after(&uncurry(c.space(), c.space(), v));
    Contramodule::new(c, hom(c.space(), v), pi.matrix)
}

/// `Hom_k(N, V)` for a right comodule `N`: `Hom(C, Hom(N, V)) ≅ Hom(N ⊗ C, V)`
/// followed by precomposition with `ν_N`.
pub fn contra_from_dual(n: &Comodule, v: &VecSpace) -> Result<Contramodule> {
    if n.side() != Side::Right {
        return Err(Error::Mismatch("contra_from_dual needs a right comodule".into()));
    }
    n.space().check_field(v)?;
    let c = n.coalgebra();
    let pi = hom_pre(n.coaction(), v).then_after(&uncurry(n.space(), c.space(), v));
    Contramodule::new(c, hom(n.space(), v), pi.matrix)
}

/// The left `C^∨`-module with `φ·p = π(c ↦ φ(c) p)`, obtained by restricting
/// `π` along `C^∨ ⊗ P -> Hom_k(C, P)`.
pub fn contramodule_as_module(p: &Contramodule) -> Result<AlgModule> {
    let alg = dual_algebra(p.coalgebra())?;
    let (n, d) = (p.coalgebra().dim(), p.dim());
    let f = p.field();
    let mut rank_one = Matrix::zeros(f, n * d, n * d);
    for i in 0..n {
        for q in 0..d {
            // c_i^* ⊗ p_q ↦ the map c_i ↦ p_q.
            rank_one.set_int(q * n + i, i * d + q, 1);
        }
    }
    let act = p.contraaction().matrix.mul(&rank_one);
    AlgModule::new(alg, p.space().clone(), act, Side::Left)
}

/// Basis of `Hom^C(P, Q)`: solutions of `f ∘ π_P = π_Q ∘ Hom(C, f)`.
pub fn contra_hom(p: &Contramodule, q: &Contramodule) -> Result<(VecSpace, Vec<LinMap>)> {
    p.coalgebra().require_same(q.coalgebra())?;
    let f = p.field();
    let n = p.coalgebra().dim();
    let (dp, dq) = (p.dim(), q.dim());
    let vars = dp * dq;
    if vars == 0 {
        return Ok((VecSpace::zero(f), Vec::new()));
    }
    // Unknown E_{a,b} (coordinate a*dp + b); equation entries indexed by (row r of Q, column s of Hom(C,P)).
    let pp = &p.contraaction().matrix;
    let pq = &q.contraaction().matrix;
    let cols = n * dp;
    let mut sys = Matrix::zeros(f, dq * cols, vars);
    for a in 0..dq {
        for b in 0..dp {
            let var = a * dp + b;
            // E_{a,b} ∘ π_P puts row b of π_P into row a.
            for s in 0..cols {
                if !pp.is_zero_at(b, s) {
                    sys.add_at(a * cols + s, var, &pp.get(b, s));
                }
            }
            // π_Q ∘ Hom(C, E_{a,b}) sends the map c_i ↦ p_b to π_Q(c_i ↦ q_a).
            for i in 0..n {
                let s = b * n + i;
                for r in 0..dq {
                    if !pq.is_zero_at(r, a * n + i) {
                        sys.add_at(r * cols + s, var, &f.neg(&pq.get(r, a * n + i)));
                    }
                }
            }
        }
    }
    let null = sys.nullspace();
    let basis: Vec<LinMap> = (0..null.cols()).map(|j| hom_unvec(&null, j, p.space(), q.space())).collect();
    Ok((VecSpace::named(f, "ψ", basis.len()), basis))
}

/// Homomorphisms between the associated `C^∨`-modules, by a separate route.
pub fn module_hom_via_dual(p: &Contramodule, q: &Contramodule) -> Result<Vec<LinMap>> {
    let ops: Vec<(Matrix, Matrix)> = p.coefficients().into_iter().zip(q.coefficients()).collect();
    Ok(intertwiners(p.space(), q.space(), &ops))
}

/// `N ⊙_C P`: the cokernel of `id ⊗ π − (id ⊗ ev) ∘ (ν_N ⊗ id)` on
/// `N ⊗ Hom_k(C, P)`, with the projection from `N ⊗ P`.
pub fn contratensor(n: &Comodule, p: &Contramodule) -> Result<(VecSpace, LinMap)> {
    let rel = contratensor_relations(n, p)?;
    let (space, proj) = cokernel(&rel);
    let space = space.relabel("⊙");
    Ok((space.clone(), LinMap::from_parts(&proj.domain, &space, proj.matrix)))
}

pub(crate) fn contratensor_relations(n: &Comodule, p: &Contramodule) -> Result<LinMap> {
    n.coalgebra().require_same(p.coalgebra())?;
    if n.side() != Side::Right {
        return Err(Error::Mismatch("contratensor needs a right comodule".into()));
    }
    let f = p.field();
    let c = p.coalgebra();
    let hcp = hom(c.space(), p.space());
    let i_n = Matrix::identity(f, n.dim());
    let by_pi = i_n.kron(&p.contraaction().matrix);
    let ev = evaluation(c.space(), p.space());
    let by_coaction = i_n.kron(&ev.matrix).mul(&n.coaction().matrix.kron(&Matrix::identity(f, hcp.dim())));
    Ok(LinMap::from_parts(&n.space().tensor(&hcp), &n.space().tensor(p.space()), by_pi.sub(&by_coaction)))
}

/// `N ⊗_{C^∨} P`: cokernel of `(n·φ) ⊗ p − n ⊗ (φ·p)` on `N ⊗ C^∨ ⊗ P`.
pub fn module_tensor(n: &Comodule, p: &Contramodule) -> Result<(VecSpace, LinMap)> {
    let nm = n.as_module()?;
    let pm = contramodule_as_module(p)?;
    let f = p.field();
    let (i_n, i_p) = (Matrix::identity(f, n.dim()), Matrix::identity(f, p.dim()));
    let rel = nm.action.matrix.kron(&i_p).sub(&i_n.kron(&pm.action.matrix));
    let src = n.space().tensor(&nm.algebra.space).tensor(p.space());
    let (space, proj) = cokernel(&LinMap::from_parts(&src, &n.space().tensor(p.space()), rel));
    let space = space.relabel("⊗");
    Ok((space.clone(), LinMap::from_parts(&proj.domain, &space, proj.matrix)))
}

/// Result of [`adjunction_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub module_tensor_dim: usize,
    pub contratensor_dim: usize,
}

/// Builds `Hom_k(N ⊙_C P, V) -> Hom^C(P, Hom_k(N, V))`, `g ↦ (p ↦ (n ↦ g[n ⊗ p]))`,
/// and verifies it is a bijection onto contramodule morphisms; also checks that
/// the identity of `N ⊗ P` descends to a surjection `N ⊗_{C^∨} P -> N ⊙_C P`.
pub fn adjunction_check(n: &Comodule, p: &Contramodule, v: &VecSpace) -> Result<std::result::Result<AdjunctionReport, Violation>> {
    let f = p.field();
    let (ct, proj) = contratensor(n, p)?;
    let target = contra_from_dual(n, v)?;
    let (_, homs) = contra_hom(p, &target)?;
    let (dn, dp, dv) = (n.dim(), p.dim(), v.dim());
    let lhs_dim = ct.dim() * dv;
    // Image of each basis map g = E_{a,b} of Hom(N ⊙ P, V).
    let mut images = Vec::with_capacity(lhs_dim);
    for a in 0..dv {
        for b in 0..ct.dim() {
            let mut m = Matrix::zeros(f, dn * dv, dp);
            for q in 0..dp {
                for x in 0..dn {
                    // [n_x ⊗ p_q] has coordinate proj[b, x*dp + q].
                    let val = proj.matrix.get(b, x * dp + q);
                    if !val.is_zero() {
                        m.set(a * dn + x, q, val);
                    }
                }
            }
            let map = LinMap::from_parts(p.space(), target.space(), m);
            if !is_morphism(p, &target, &map)? {
                return Ok(Err(Violation {
                    axiom: "adjunction map lands in contramodule morphisms".into(),
                    input: format!("E[{a},{b}]"),
                    output: String::new(),
                    lhs: String::new(),
                    rhs: String::new(),
                }));
            }
            images.push(hom_vec(&map));
        }
    }
    let img = Matrix::from_columns(f, dp * dn * dv, &images);
    if img.rank() != lhs_dim || lhs_dim != homs.len() {
        return Ok(Err(Violation {
            axiom: "adjunction bijectivity".into(),
            input: format!("rank {} of the natural map", img.rank()),
            output: String::new(),
            lhs: lhs_dim.to_string(),
            rhs: homs.len().to_string(),
        }));
    }
    // Surjection N ⊗_{C^∨} P -> N ⊙_C P: module relations lie among contratensor relations.
    let (mt, mproj) = module_tensor(n, p)?;
    let descends = crate::exactlin::factor_through_surjection(&proj, &mproj).is_some();
    if !descends {
        return Ok(Err(Violation {
            axiom: "module tensor surjects onto contratensor".into(),
            input: "N ⊗ P".into(),
            output: String::new(),
            lhs: mt.dim().to_string(),
            rhs: ct.dim().to_string(),
        }));
    }
    Ok(Ok(AdjunctionReport { lhs_dim, rhs_dim: homs.len(), module_tensor_dim: mt.dim(), contratensor_dim: ct.dim() }))
}

/// Contramodule generated by the columns of `v`: closure under every `π_i`.
pub fn generated_subcontramodule(p: &Contramodule, v: &Matrix) -> Matrix {
    let f = p.field();
    let ops = p.coefficients();
    let mut span = if v.cols() == 0 { Matrix::zeros(f, p.dim(), 0) } else { v.column_basis() };
    loop {
        let mut parts = vec![span.clone()];
        parts.extend(ops.iter().map(|pi| pi.mul(&span)));
        let refs: Vec<&Matrix> = parts.iter().collect();
        let next = Matrix::hstack(f, p.dim(), &refs).column_basis();
        if next.cols() == span.cols() {
            return span;
        }
        span = next;
    }
}

/// The free contramodule `Hom_k(C, P)` with the contraaction `π_P` as a
/// surjective morphism onto `P`.
pub fn free_cover(p: &Contramodule) -> Result<(Contramodule, LinMap)> {
    let free = free_contra(p.coalgebra(), p.space())?;
    let cover = LinMap::from_parts(free.space(), p.space(), p.contraaction().matrix.clone());
    Ok((free, cover))
}

/// A contramodule map `s : P -> F` with `e ∘ s = id`, for a surjection `e : F -> P`.
pub fn section_onto(fr: &Contramodule, p: &Contramodule, e: &LinMap) -> Result<Option<LinMap>> {
    let f = p.field();
    let d = p.dim();
    if d == 0 {
        return Ok(Some(LinMap::zero(p.space(), fr.space())));
    }
    let (_, basis) = contra_hom(p, fr)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let cols: Vec<Matrix> = basis.iter().map(|h| hom_vec(&e.then_after(h))).collect();
    let sys = Matrix::from_columns(f, d * d, &cols);
    let Some(c) = sys.solve(&hom_vec(&LinMap::identity(p.space()))) else { return Ok(None) };
    let mut s = Matrix::zeros(f, fr.dim(), d);
    for (k, h) in basis.iter().enumerate() {
        let ck = c.get(k, 0);
        if !ck.is_zero() {
            s = s.add(&h.matrix.scale(&ck));
        }
    }
    Ok(Some(LinMap::from_parts(p.space(), fr.space(), s)))
}

/// Projective contramodules are the direct summands of free ones; `P` is one
/// exactly when its free cover splits.
pub fn is_projective(p: &Contramodule) -> Result<bool> {
    if p.dim() == 0 {
        return Ok(true);
    }
    let (fr, cover) = free_cover(p)?;
    Ok(section_onto(&fr, p, &cover)?.is_some())
}

/// `… -> F_1 -> F_0 -> P -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Decorated complex `F_n -> … -> F_0` in degrees `-n..=0`.
    pub complex: Complex,
    /// `terms[i]` sits in degree `-i`.
    pub terms: Vec<Contramodule>,
    /// `F_0 -> P`.
    pub augmentation: LinMap,
    pub length: usize,
    /// Dimensions of the successive kernels, starting with `P`.
    pub kernel_dims: Vec<usize>,
}

/// Resolves by the free covers `Hom_k(C, K) -> K`, stopping as soon as a
/// kernel is itself projective (it becomes the last term). Every other term
/// is free.
pub fn projective_resolution(p: &Contramodule, cap: usize) -> Result<Resolution> {
    let f = p.field();
    let mut terms: Vec<Contramodule> = Vec::new();
    let mut diffs: Vec<LinMap> = Vec::new();
    let mut kernel_dims = vec![p.dim()];
    let mut current = p.clone();
    let mut from_current: Option<LinMap> = None;
    let mut augmentation: Option<LinMap> = None;
    for i in 0..=cap {
        if current.dim() == 0 && i > 0 {
            break;
        }
        let last = is_projective(&current)?;
        let (term, cover) = if last {
            (current.clone(), LinMap::identity(current.space()))
        } else if i == cap {
            return Err(Error::CapExceeded { cap, last_dim: current.dim() });
        } else {
            free_cover(&current)?
        };
        let term = term.relabel(&format!("F{i}_"));
        let cover = LinMap::from_parts(term.space(), &cover.codomain, cover.matrix);
        match &from_current {
            None => augmentation = Some(cover.clone()),
            Some(incl) => {
                let prev = terms.last().expect("previous term");
                diffs.push(LinMap::from_parts(term.space(), prev.space(), incl.matrix.mul(&cover.matrix)));
            }
        }
        terms.push(term.clone());
        if last {
            break;
        }
        let (ker, incl) = term.subcontramodule(&cover.matrix.nullspace())?;
        kernel_dims.push(ker.dim());
        from_current = Some(incl);
        current = ker;
    }
    let augmentation = augmentation.expect("at least one step");
    let length = terms.len().saturating_sub(1);
    let spaces: Vec<VecSpace> = terms.iter().rev().map(|t| t.space().clone()).collect();
    let deco: BTreeMap<i32, Decoration> =
        terms.iter().enumerate().map(|(i, t)| (-(i as i32), Decoration::Contramodule(t.clone()))).collect();
    let complex = Complex::from_terms(f, -(length as i32), spaces, diffs.into_iter().rev().collect())?
        .with_decoration(deco)?;
    Ok(Resolution { complex, terms, augmentation, length, kernel_dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::group_function_coalgebra;
    use crate::group::FiniteGroup;

    fn kz2() -> Coalgebra {
        group_function_coalgebra(&FiniteGroup::cyclic(2), Field::fp(2))
    }

    #[test]
    fn free_and_trivial_pass() {
        let c = kz2();
        let k = VecSpace::ground(c.field());
        assert!(check_contramodule(&free_contra(&c, &k).unwrap()).is_ok());
        assert!(check_contramodule(&free_contra(&c, &VecSpace::named(c.field(), "v", 2)).unwrap()).is_ok());
        assert!(check_contramodule(&Contramodule::trivial(&c, &k).unwrap()).is_ok());
    }

    #[test]
    fn dual_of_regular_is_free() {
        let c = kz2();
        let k = VecSpace::ground(c.field());
        let n = Comodule::regular(&c, Side::Right);
        let a = contra_from_dual(&n, &k).unwrap();
        let b = free_contra(&c, &k).unwrap();
        assert_eq!(a.contraaction().matrix, b.contraaction().matrix);
    }

    #[test]
    fn free_rank_one_homs() {
        let c = kz2();
        let k = VecSpace::ground(c.field());
        let free = free_contra(&c, &k).unwrap();
        let triv = Contramodule::trivial(&c, &k).unwrap();
        assert_eq!(contra_hom(&free, &triv).unwrap().1.len(), 1);
        assert_eq!(contra_hom(&free, &free).unwrap().1.len(), 2);
    }
}
