//! Finite `G ⊇ H`: the semialgebra `S = k(G)` over `C = k(H)`, and
//! brute-force `Ψ_G`, `Φ_G` and contratensor products over `G`, compared with
//! the coalgebra-level functors over `k(H)`.
//!
//! Conventions. A representation `ρ` of a finite group becomes a left
//! comodule and a contramodule over `k(H)` with coefficient `ρ(h^{-1})` at
//! `δ_h`, and a right comodule with coefficient `ρ(h)`. On `S` the group acts
//! by `L_g δ_x = δ_{gx}` and `R_g δ_x = δ_{xg}`; `Ψ_G(M)` is
//! `Hom_{k[G]}((S, L), M)` with `(g·f) = f ∘ R_g`, and `Φ_G(P)` is
//! `S ⊗_{k[G]} P` for the right action `R`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coalg::{group_function_coalgebra, Coalgebra, Side};
use crate::comod::{self, check_comodule, Comodule};
use crate::contramod::{self, Contramodule};
use crate::corr;
use crate::error::Result;
use crate::exactlin::{factor_through_injection, Field, LinMap, Matrix, VecSpace};
use crate::group::FiniteGroup;
use crate::protower::{intertwiners, quotient_projection, unvec, vec_of};
use crate::witness::{compare, shape, Verdict};

const ISO_TRIES: usize = 256;

/// An algebra object in `C`-bicomodules under the cotensor product, with
/// every map stored as a matrix on the finite-dimensional spaces involved.
#[derive(Clone, Debug)]
pub struct Semialgebra {
    pub coalgebra: Coalgebra,
    pub space: VecSpace,
    /// `S -> C ⊗ S`.
    pub left: Matrix,
    /// `S -> S ⊗ C`.
    pub right: Matrix,
    /// Basis of `S □_C S` inside `S ⊗ S`.
    pub cotensor: Matrix,
    /// `S □_C S -> S` in the basis `cotensor`.
    pub semimult: Matrix,
    /// `C -> S`.
    pub semiunit: Matrix,
}

/// `ker(ρ ⊗ id − id ⊗ λ)` on `A ⊗ B` for a right coaction on `A` and a left one on `B`.
pub fn cotensor_kernel(right: &Matrix, left: &Matrix, a: usize, c: usize, b: usize) -> Matrix {
    let f = right.field();
    debug_assert_eq!((right.rows(), left.rows()), (a * c, c * b));
    right.kron(&Matrix::identity(f, b)).sub(&Matrix::identity(f, a).kron(left)).nullspace()
}

impl Semialgebra {
    /// `S = C` with `Δ` on both sides, `ε ⊗ id` as semimultiplication and the identity as semiunit.
    pub fn trivial(c: &Coalgebra) -> Semialgebra {
        let f = c.field();
        let n = c.dim();
        let delta = c.comult().matrix.clone();
        let cot = cotensor_kernel(&delta, &delta, n, n, n);
        let eps_id = c.counit().matrix.kron(&Matrix::identity(f, n));
        Semialgebra {
            coalgebra: c.clone(),
            space: c.space().relabel("s"),
            left: delta.clone(),
            right: delta,
            semimult: eps_id.mul(&cot),
            cotensor: cot,
            semiunit: Matrix::identity(f, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.coalgebra.field()
    }

    /// The semimultiplication extended to `S ⊗ S` through coordinates in the
    /// cotensor basis; agrees with `semimult` on `S □ S`.
    fn extended(&self) -> (Matrix, Matrix) {
        let n2 = self.dim() * self.dim();
        let coords = self.cotensor.left_inverse().unwrap_or_else(|| Matrix::zeros(self.field(), 0, n2));
        (self.semimult.mul(&coords), self.cotensor.mul(&coords))
    }

    /// The same semialgebra with `semimult[(row, col)]` shifted by `delta`.
    pub fn mutated(&self, row: usize, col: usize, delta: i64) -> Semialgebra {
        let mut s = self.clone();
        s.semimult.add_int_at(row, col, delta);
        s
    }
}

fn labels(prefix: &str, n: usize) -> VecSpace {
    VecSpace::named(Field::fp(2), prefix, n)
}

/// Axioms of a semialgebra, all as matrix identities on finite-dimensional
/// spaces. `S □ S □ S` is the kernel of the second cotensor condition
/// restricted to `(S □ S) ⊗ S`.
pub fn check_semialgebra(s: &Semialgebra) -> Verdict {
    let f = s.field();
    let c = &s.coalgebra;
    let (n, k) = (s.dim(), c.dim());
    let id = |d: usize| Matrix::identity(f, d);
    let lc = Comodule::new(c, s.space.clone(), s.left.clone(), Side::Left).map_err(|e| shape("left coaction", &e.to_string()))?;
    let rc = Comodule::new(c, s.space.clone(), s.right.clone(), Side::Right).map_err(|e| shape("right coaction", &e.to_string()))?;
    check_comodule(&lc)?;
    check_comodule(&rc)?;
    let src = labels("s", n);
    compare(
        "bicomodule",
        &id(k).kron(&s.right).mul(&s.left),
        &s.left.kron(&id(k)).mul(&s.right),
        &src,
        &labels("c⊗s⊗c", k * n * k),
    )?;
    let cot = cotensor_kernel(&s.right, &s.left, n, k, n);
    if s.cotensor.rows() != n * n || s.cotensor.cols() != cot.cols() || !cot.same_span(&s.cotensor) {
        return Err(shape("cotensor", "stored basis does not span S □ S"));
    }
    if s.semimult.rows() != n || s.semimult.cols() != cot.cols() || s.semiunit.rows() != n || s.semiunit.cols() != k {
        return Err(shape("semialgebra", "semimultiplication or semiunit has the wrong shape"));
    }
    let (m, proj) = s.extended();
    let cot_src = labels("s□s", cot.cols());
    // m is a left and a right comodule map; the slices land in S □ S by exactness of C ⊗ −.
    let lifted_left = s.left.kron(&id(n)).mul(&s.cotensor);
    in_cotensor("left comodule map", &id(k).kron(&proj), &lifted_left)?;
    compare("left comodule map", &s.left.mul(&s.semimult), &id(k).kron(&m).mul(&lifted_left), &cot_src, &labels("c⊗s", k * n))?;
    let lifted_right = id(n).kron(&s.right).mul(&s.cotensor);
    in_cotensor("right comodule map", &proj.kron(&id(k)), &lifted_right)?;
    compare("right comodule map", &s.right.mul(&s.semimult), &m.kron(&id(k)).mul(&lifted_right), &cot_src, &labels("s⊗c", n * k))?;
    // S □ S □ S.
    let first = s.cotensor.kron(&id(n));
    let second = id(n).kron(&s.right.kron(&id(n)).sub(&id(n).kron(&s.left)));
    let coords = second.mul(&first).nullspace();
    let triple = first.mul(&coords);
    let left_first = m.kron(&id(n)).mul(&triple);
    let right_first = id(n).kron(&m).mul(&triple);
    in_cotensor("semiassociativity (m ⊗ id lands in S □ S)", &proj, &left_first)?;
    in_cotensor("semiassociativity (id ⊗ m lands in S □ S)", &proj, &right_first)?;
    compare("semiassociativity", &m.mul(&left_first), &m.mul(&right_first), &labels("s□s□s", triple.cols()), &src)?;
    // The semiunit is a bicomodule map and m(u ⊗ id)λ = id = m(id ⊗ u)ρ.
    let delta = &c.comult().matrix;
    compare("semiunit left", &s.left.mul(&s.semiunit), &id(k).kron(&s.semiunit).mul(delta), c.space(), &labels("c⊗s", k * n))?;
    compare("semiunit right", &s.right.mul(&s.semiunit), &s.semiunit.kron(&id(k)).mul(delta), c.space(), &labels("s⊗c", n * k))?;
    let ul = s.semiunit.kron(&id(n)).mul(&s.left);
    let ur = id(n).kron(&s.semiunit).mul(&s.right);
    in_cotensor("left semiunitality", &proj, &ul)?;
    in_cotensor("right semiunitality", &proj, &ur)?;
    compare("left semiunitality", &m.mul(&ul), &id(n), &src, &src)?;
    compare("right semiunitality", &m.mul(&ur), &id(n), &src, &src)
}

fn in_cotensor(axiom: &str, proj: &Matrix, v: &Matrix) -> Verdict {
    let n = v.rows();
    compare(axiom, &proj.mul(v), v, &labels("x", v.cols()), &labels("y", n))
}

/// A finite group `G`, a subgroup `H`, and `k(G)` as a semialgebra over `k(H)`.
#[derive(Clone, Debug)]
pub struct Sandbox {
    pub group: FiniteGroup,
    pub subgroup: FiniteGroup,
    /// `embedding[i]` is the element of `G` numbered `i` in `H`.
    pub embedding: Vec<usize>,
    pub semialgebra: Semialgebra,
}

/// `S = k(G)` over `C = k(H)`: the coactions restrict `Δ_G` to `H` on either
/// side, and the semimultiplication is the pushforward along
/// `G ×_H G -> G`, realised on the cotensor by keeping the terms whose first
/// index lies in a fixed transversal of `G/H`.
pub fn finite_sandbox(g: &FiniteGroup, h_elems: &[usize], field: Field) -> Result<Sandbox> {
    let (h, emb) = g.subgroup(h_elems, "H")?;
    let (n, k) = (g.order(), h.order());
    let c = group_function_coalgebra(&h, field);
    let mut left = Matrix::zeros(field, k * n, n);
    let mut right = Matrix::zeros(field, n * k, n);
    for x in 0..n {
        for (hi, &he) in emb.iter().enumerate() {
            left.set_int(hi * n + g.mul(g.inv(he), x), x, 1);
            right.set_int(g.mul(x, g.inv(he)) * k + hi, x, 1);
        }
    }
    let cot = cotensor_kernel(&right, &left, n, k, n);
    let mut m_full = Matrix::zeros(field, n, n * n);
    for a in (0..n).filter(|&a| emb.iter().all(|&he| g.mul(a, he) >= a)) {
        for b in 0..n {
            m_full.set_int(g.mul(a, b), a * n + b, 1);
        }
    }
    let mut semiunit = Matrix::zeros(field, n, k);
    for (hi, &he) in emb.iter().enumerate() {
        semiunit.set_int(he, hi, 1);
    }
    let labels = (0..n).map(|x| format!("δ{x}")).collect();
    let semialgebra = Semialgebra {
        coalgebra: c,
        space: VecSpace::new(field, labels)?,
        left,
        right,
        semimult: m_full.mul(&cot),
        cotensor: cot,
        semiunit,
    };
    Ok(Sandbox { group: g.clone(), subgroup: h, embedding: emb, semialgebra })
}

/// Result of flipping every semimultiplication entry in turn.
#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub mutations: usize,
    pub detected: usize,
}

impl MutationReport {
    pub fn rate(&self) -> f64 {
        if self.mutations == 0 {
            1.0
        } else {
            self.detected as f64 / self.mutations as f64
        }
    }
}

/// Shifts each entry of the semimultiplication by one and runs the checker.
pub fn semimult_mutations(s: &Semialgebra) -> MutationReport {
    let (rows, cols) = (s.semimult.rows(), s.semimult.cols());
    let detected = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|&(r, c)| check_semialgebra(&s.mutated(r, c, 1)).is_err())
        .count();
    MutationReport { mutations: rows * cols, detected }
}

/// A finite-dimensional representation, one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct GRep {
    pub field: Field,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl GRep {
    pub fn trivial(g: &FiniteGroup, field: Field, dim: usize) -> GRep {
        GRep { field, dim, action: vec![Matrix::identity(field, dim); g.order()] }
    }

    /// `k(G)` with `g δ_x = δ_{gx}`.
    pub fn regular(g: &FiniteGroup, field: Field) -> GRep {
        let n = g.order();
        let action = (0..n).map(|a| Matrix::from_fn(field, n, n, |y, x| i64::from(g.mul(a, x) == y))).collect();
        GRep { field, dim: n, action }
    }

    /// `k(G/K)` for a subgroup `K`, cosets numbered by least representative.
    pub fn permutation(g: &FiniteGroup, k_elems: &[usize], field: Field) -> GRep {
        let n = g.order();
        let rep = |x: usize| k_elems.iter().map(|&y| g.mul(x, y)).min().expect("K is nonempty");
        let mut cosets: Vec<usize> = (0..n).map(rep).collect();
        cosets.sort_unstable();
        cosets.dedup();
        let pos = |x: usize| cosets.binary_search(&rep(x)).expect("listed coset");
        let d = cosets.len();
        let action = (0..n).map(|a| Matrix::from_fn(field, d, d, |i, j| i64::from(pos(g.mul(a, cosets[j])) == i))).collect();
        GRep { field, dim: d, action }
    }

    pub fn direct_sum(&self, o: &GRep) -> GRep {
        let action = self.action.iter().zip(&o.action).map(|(a, b)| Matrix::direct_sum(self.field, &[a, b])).collect();
        GRep { field: self.field, dim: self.dim + o.dim, action }
    }

    /// The subrepresentation generated by the columns of `v`.
    pub fn generated(&self, v: &Matrix) -> GRep {
        let cols: Vec<Matrix> = self.action.iter().map(|a| a.mul(v)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let basis = Matrix::hstack(self.field, self.dim, &refs).column_basis();
        self.sub(&basis)
    }

    /// Restriction to an invariant subspace with the given basis.
    pub fn sub(&self, basis: &Matrix) -> GRep {
        let action = self.action.iter().map(|a| basis.solve(&a.mul(basis)).expect("invariant subspace")).collect();
        GRep { field: self.field, dim: basis.cols(), action }
    }

    /// Restriction along `H ↪ G`.
    pub fn restrict(&self, embedding: &[usize]) -> GRep {
        GRep { field: self.field, dim: self.dim, action: embedding.iter().map(|&g| self.action[g].clone()).collect() }
    }

    pub fn check(&self, g: &FiniteGroup) -> Verdict {
        let sp = labels("v", self.dim);
        if self.action.len() != g.order() || self.action.iter().any(|a| a.rows() != self.dim || a.cols() != self.dim) {
            return Err(shape("representation", "one square matrix per element"));
        }
        compare("unit", &self.action[g.identity()], &Matrix::identity(self.field, self.dim), &sp, &sp)?;
        for a in 0..g.order() {
            for b in 0..g.order() {
                compare("multiplicativity", &self.action[g.mul(a, b)], &self.action[a].mul(&self.action[b]), &sp, &sp)?;
            }
        }
        Ok(())
    }

    /// Basis of `Hom_{k[G]}(self, o)`.
    pub fn hom(&self, o: &GRep) -> Vec<Matrix> {
        let ops: Vec<(Matrix, Matrix)> = self.action.iter().cloned().zip(o.action.iter().cloned()).collect();
        intertwiners(self.field, &ops, self.dim, o.dim)
    }

    pub fn is_morphism(&self, o: &GRep, x: &Matrix) -> bool {
        self.action.iter().zip(&o.action).all(|(a, b)| x.mul(a) == b.mul(x))
    }

    /// Left comodule over `k(H)` with coefficient `ρ(h^{-1})` at `δ_h`.
    pub fn comodule(&self, h: &FiniteGroup, c: &Coalgebra) -> Comodule {
        let coeffs: Vec<Matrix> = (0..h.order()).map(|x| self.action[h.inv(x)].clone()).collect();
        Comodule::from_coefficients(c, VecSpace::named(self.field, "m", self.dim), Side::Left, &coeffs)
    }

    /// Right comodule over `k(H)` with coefficient `ρ(h)` at `δ_h`.
    pub fn right_comodule(&self, h: &FiniteGroup, c: &Coalgebra) -> Comodule {
        Comodule::from_coefficients(c, VecSpace::named(self.field, "n", self.dim), Side::Right, &self.action[..h.order()])
    }

    /// Contramodule over `k(H)` with `π_h = ρ(h^{-1})`.
    pub fn contramodule(&self, h: &FiniteGroup, c: &Coalgebra) -> Contramodule {
        let coeffs: Vec<Matrix> = (0..h.order()).map(|x| self.action[h.inv(x)].clone()).collect();
        Contramodule::from_coefficients(c, VecSpace::named(self.field, "p", self.dim), &coeffs)
    }
}

/// Reads a representation back off a contramodule built by [`GRep::contramodule`].
pub fn contramodule_rep(h: &FiniteGroup, p: &Contramodule) -> GRep {
    let coeffs = p.coefficients();
    GRep { field: p.field(), dim: p.dim(), action: (0..h.order()).map(|x| coeffs[h.inv(x)].clone()).collect() }
}

/// Reads a representation back off a left comodule built by [`GRep::comodule`].
pub fn comodule_rep(h: &FiniteGroup, m: &Comodule) -> GRep {
    let coeffs = m.coefficients();
    GRep { field: m.field(), dim: m.dim(), action: (0..h.order()).map(|x| coeffs[h.inv(x)].clone()).collect() }
}

/// `Ψ_G(M)` with the basis of `Hom_{k[G]}(S, M)` it was computed in; column
/// `j` of `basis` is `vec(f_j)`, row `r·|G| + x` holding the coefficient of `f_j(δ_x)`.
#[derive(Clone, Debug)]
pub struct PsiG {
    pub rep: GRep,
    pub basis: Matrix,
}

/// `Φ_G(P)` with the projection from `S ⊗ P`, column `x·dim P + s` for `δ_x ⊗ p_s`.
#[derive(Clone, Debug)]
pub struct PhiG {
    pub rep: GRep,
    pub projection: Matrix,
}

fn left_ops(sb: &Sandbox) -> Vec<Matrix> {
    GRep::regular(&sb.group, sb.semialgebra.field()).action
}

fn right_ops(sb: &Sandbox) -> Vec<Matrix> {
    let g = &sb.group;
    let n = g.order();
    let f = sb.semialgebra.field();
    (0..n).map(|a| Matrix::from_fn(f, n, n, |y, x| i64::from(g.mul(x, a) == y))).collect()
}

pub fn psi_g(sb: &Sandbox, m: &GRep) -> PsiG {
    let f = m.field;
    let n = sb.group.order();
    let ops: Vec<(Matrix, Matrix)> = left_ops(sb).into_iter().zip(m.action.iter().cloned()).collect();
    let hom = intertwiners(f, &ops, n, m.dim);
    let cols: Vec<Matrix> = hom.iter().map(vec_of).collect();
    let basis = Matrix::from_columns(f, m.dim * n, &cols);
    let action = right_ops(sb)
        .iter()
        .map(|r| {
            let moved: Vec<Matrix> = hom.iter().map(|x| vec_of(&x.mul(r))).collect();
            basis.solve(&Matrix::from_columns(f, m.dim * n, &moved)).expect("Hom_G(S, M) is R-stable")
        })
        .collect();
    PsiG { rep: GRep { field: f, dim: hom.len(), action }, basis }
}

pub fn phi_g(sb: &Sandbox, p: &GRep) -> PhiG {
    let f = p.field;
    let n = sb.group.order();
    let (i_n, i_p) = (Matrix::identity(f, n), Matrix::identity(f, p.dim));
    let rels: Vec<Matrix> = right_ops(sb).iter().zip(&p.action).map(|(r, a)| r.kron(&i_p).sub(&i_n.kron(a))).collect();
    let refs: Vec<&Matrix> = rels.iter().collect();
    let rel = Matrix::hstack(f, n * p.dim, &refs);
    let q = quotient_projection(&rel, n * p.dim);
    let sec = q.right_inverse().unwrap_or_else(|| Matrix::zeros(f, n * p.dim, 0));
    let action = left_ops(sb).iter().map(|l| q.mul(&l.kron(&i_p)).mul(&sec)).collect();
    PhiG { rep: GRep { field: f, dim: q.rows(), action }, projection: q }
}

/// The unit `P -> Ψ_G Φ_G P`, `p ↦ (δ_x ↦ [δ_x ⊗ p])`.
pub fn sandbox_unit(sb: &Sandbox, p: &GRep) -> Matrix {
    let ph = phi_g(sb, p);
    let ps = psi_g(sb, &ph.rep);
    adjunct_right(sb, p, &ph, &ps, &Matrix::identity(p.field, ph.rep.dim))
}

/// The counit `Φ_G Ψ_G M -> M`, `[δ_x ⊗ f] ↦ f(δ_x)`.
pub fn sandbox_counit(sb: &Sandbox, m: &GRep) -> Matrix {
    let ps = psi_g(sb, m);
    let ph = phi_g(sb, &ps.rep);
    let n = sb.group.order();
    let f = m.field;
    let mut ev = Matrix::zeros(f, m.dim, n * ps.rep.dim);
    for j in 0..ps.rep.dim {
        let x = unvec(&ps.basis.col(j), m.dim, n);
        for c in 0..n {
            ev.set_block(0, c * ps.rep.dim + j, &x.col(c));
        }
    }
    ev.mul(&ph.projection.right_inverse().unwrap_or_else(|| Matrix::zeros(f, n * ps.rep.dim, 0)))
}

/// The adjunct `P -> Ψ_G(M)` of `u : Φ_G(P) -> M`.
fn adjunct_right(sb: &Sandbox, p: &GRep, ph: &PhiG, ps: &PsiG, u: &Matrix) -> Matrix {
    let f = p.field;
    let n = sb.group.order();
    let dm = u.rows();
    let cols: Vec<Matrix> = (0..p.dim)
        .map(|s| {
            let mut x = Matrix::zeros(f, dm, n);
            for c in 0..n {
                x.set_block(0, c, &u.mul(&ph.projection.col(c * p.dim + s)));
            }
            ps.basis.solve(&vec_of(&x)).expect("the adjunct is a G-map out of S")
        })
        .collect();
    Matrix::from_columns(f, ps.rep.dim, &cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct SandboxAdjunction {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

/// `Hom_G(Φ_G P, M) -> Hom_G(P, Ψ_G M)`, `u ↦ (p ↦ (δ_x ↦ u[δ_x ⊗ p]))`,
/// checked to land in `G`-maps and to be bijective against an independently
/// computed right-hand side.
pub fn sandbox_adjunction(sb: &Sandbox, p: &GRep, m: &GRep) -> std::result::Result<SandboxAdjunction, String> {
    let ph = phi_g(sb, p);
    let ps = psi_g(sb, m);
    let lhs = ph.rep.hom(m);
    let rhs = p.hom(&ps.rep);
    let mut images = Vec::new();
    for u in &lhs {
        let v = adjunct_right(sb, p, &ph, &ps, u);
        if !p.is_morphism(&ps.rep, &v) {
            return Err("adjunct is not a G-map".into());
        }
        images.push(vec_of(&v));
    }
    let report = SandboxAdjunction { lhs_dim: lhs.len(), rhs_dim: rhs.len() };
    let rank = Matrix::from_columns(p.field, p.dim * ps.rep.dim, &images).rank();
    if rank != lhs.len() || rank != rhs.len() {
        return Err(format!("adjunction map has rank {rank} between spaces of dimension {} and {}", lhs.len(), rhs.len()));
    }
    Ok(report)
}

/// `Ψ_G(M)|_H = Ψ_H(M|_H)` through the explicit map restricting `f : S -> M` to `k(H) ⊂ S`.
pub fn psi_restriction_check(sb: &Sandbox, m: &GRep) -> Result<Verdict> {
    let (h, c) = (&sb.subgroup, &sb.semialgebra.coalgebra);
    let n = sb.group.order();
    let k = h.order();
    let ps = psi_g(sb, m);
    let lhs = ps.rep.restrict(&sb.embedding).contramodule(h, c);
    let mc = m.restrict(&sb.embedding).comodule(h, c);
    let (rhs, emb) = corr::psi_embedded(&mc)?;
    let f = m.field;
    let mut restr = Matrix::zeros(f, m.dim * k, ps.rep.dim);
    for j in 0..ps.rep.dim {
        for r in 0..m.dim {
            for (hi, &he) in sb.embedding.iter().enumerate() {
                restr.set(r * k + hi, j, ps.basis.get(r * n + he, j));
            }
        }
    }
    let through = LinMap::from_parts(lhs.space(), &emb.codomain, restr);
    let Some(map) = factor_through_injection(&through, &emb) else {
        return Ok(Err(shape("Ψ restriction", "restricted maps are not H-comodule maps")));
    };
    Ok(morphism_iso_verdict("Ψ restriction", contramod::is_morphism(&lhs, &rhs, &map)?, &map))
}

/// `Φ_G(P)|_H = Φ_H(P|_H)` through `[δ_h ⊗ p] ↦ [δ_h ⊗ p]`.
pub fn phi_restriction_check(sb: &Sandbox, p: &GRep) -> Result<Verdict> {
    let (h, c) = (&sb.subgroup, &sb.semialgebra.coalgebra);
    let k = h.order();
    let ph = phi_g(sb, p);
    let target = ph.rep.restrict(&sb.embedding).comodule(h, c);
    let pc = p.restrict(&sb.embedding).contramodule(h, c);
    let (src, proj) = corr::phi_presented(&pc)?;
    let f = p.field;
    let mut inc = Matrix::zeros(f, ph.projection.rows(), k * p.dim);
    for (hi, &he) in sb.embedding.iter().enumerate() {
        for s in 0..p.dim {
            inc.set_block(0, hi * p.dim + s, &ph.projection.col(he * p.dim + s));
        }
    }
    // inc must kill the contratensor relations, i.e. factor through proj.
    let kernel = proj.matrix.nullspace();
    if !inc.mul(&kernel).is_zero() {
        return Ok(Err(shape("Φ restriction", "H-contratensor relations are not G-tensor relations")));
    }
    let map = inc.mul(&proj.matrix.right_inverse().unwrap_or_else(|| Matrix::zeros(f, k * p.dim, 0)));
    let map = LinMap::from_parts(src.space(), target.space(), map);
    Ok(morphism_iso_verdict("Φ restriction", comod::is_morphism(&src, &target, &map)?, &map))
}

fn morphism_iso_verdict(axiom: &str, morphism: bool, map: &LinMap) -> Verdict {
    if !morphism {
        Err(shape(axiom, "comparison map is not a morphism"))
    } else if !map.is_iso() {
        Err(shape(axiom, "comparison map is not bijective"))
    } else {
        Ok(())
    }
}

/// Orientation of the integrand in the contratensor product over `G`:
/// `Literal` pairs `x ⊗ g p` with `g x`, `Inverse` with `g^{-1} x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Literal,
    Inverse,
}

impl Orientation {
    pub fn describe(self) -> &'static str {
        match self {
            Orientation::Literal => "x ⊗ μ ↦ ∫ x·g^{-1} ⊗ dμ_g with x·g^{-1} = g x",
            Orientation::Inverse => "x ⊗ μ ↦ ∫ x·g ⊗ dμ_g with x·g = g^{-1} x",
        }
    }
}

/// The natural map `N ⊗_{k[G]} P -> N ⊛_G P` between two quotients of `N ⊗ P`.
#[derive(Clone, Debug, Serialize)]
pub struct ContratensorGReport {
    pub orientation: Orientation,
    pub tensor_dim: usize,
    pub contratensor_dim: usize,
    /// The tensor relations lie among the contratensor relations.
    pub well_defined: bool,
    pub iso: bool,
}

impl ContratensorGReport {
    pub fn passes(&self) -> bool {
        self.well_defined && self.iso
    }
}

/// Least generating set found greedily, used so the tensor side is computed
/// from generators while the contratensor side sums over all of `G`.
pub fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generated_subgroup(&[]);
    for x in 0..g.order() {
        if !span.contains(&x) {
            gens.push(x);
            span = g.generated_subgroup(&gens);
        }
    }
    gens
}

/// Relations of `N ⊗_{k[G]} P` (from generators, `x·g = g^{-1} x`) and of the
/// contratensor product (summed over every `g`), compared as subspaces of `N ⊗ P`.
pub fn contratensor_g_comparison(g: &FiniteGroup, n: &GRep, p: &GRep, orient: Orientation) -> ContratensorGReport {
    let f = n.field;
    let (i_n, i_p) = (Matrix::identity(f, n.dim), Matrix::identity(f, p.dim));
    let d = n.dim * p.dim;
    let tensor: Vec<Matrix> =
        generators(g).iter().map(|&x| n.action[g.inv(x)].kron(&i_p).sub(&i_n.kron(&p.action[x]))).collect();
    let contra: Vec<Matrix> = (0..g.order())
        .map(|x| {
            let moved = match orient {
                Orientation::Literal => &n.action[x],
                Orientation::Inverse => &n.action[g.inv(x)],
            };
            i_n.kron(&p.action[x]).sub(&moved.kron(&i_p))
        })
        .collect();
    let span = |parts: &[Matrix]| {
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::hstack(f, d, &refs).column_basis()
    };
    let (t, c) = (span(&tensor), span(&contra));
    let well_defined = c.spans(&t) || t.cols() == 0;
    ContratensorGReport {
        orientation: orient,
        tensor_dim: d - t.cols(),
        contratensor_dim: d - c.cols(),
        well_defined,
        iso: well_defined && t.cols() == c.cols(),
    }
}

/// A seeded family of representations: permutation modules on cosets,
/// trivial and regular modules, their sums, and cyclic submodules of
/// `k(G)^2` generated by random vectors.
pub fn rep_family(g: &FiniteGroup, field: Field, count: usize, seed: u64) -> Vec<GRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subgroups = subgroup_list(g);
    let reg = GRep::regular(g, field);
    let p = field.characteristic().max(2);
    (0..count)
        .map(|i| match i % 4 {
            0 => GRep::permutation(g, &subgroups[rng.random_range(0..subgroups.len())], field),
            1 => GRep::trivial(g, field, rng.random_range(1..=2)),
            2 => {
                let a = GRep::permutation(g, &subgroups[rng.random_range(0..subgroups.len())], field);
                a.direct_sum(&GRep::trivial(g, field, 1))
            }
            _ => {
                let two = reg.direct_sum(&reg);
                let coords: Vec<i64> = (0..two.dim).map(|_| rng.random_range(0..p) as i64).collect();
                let v = Matrix::from_fn(field, two.dim, 1, |r, _| coords[r]);
                let v = if v.is_zero() { Matrix::from_fn(field, two.dim, 1, |r, _| i64::from(r == 0)) } else { v };
                two.generated(&v)
            }
        })
        .collect()
}

/// Every subgroup, found as the subgroups generated by at most two elements.
pub fn subgroup_list(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let s = g.generated_subgroup(&[a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// Outcome of the sandbox equivalence and adjunction checks on one family.
#[derive(Clone, Debug, Serialize)]
pub struct SandboxEquivalence {
    pub modules: usize,
    pub adjunction_pairs: usize,
    /// Whether `|H|` is invertible in `k`.
    pub coprime: bool,
    pub unit_isos: usize,
    pub counit_isos: usize,
    pub restriction_checks: usize,
    pub failures: Vec<String>,
}

impl SandboxEquivalence {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Adjunction on a third of all pairs, the restriction diagrams, and unit and
/// counit isomorphisms on every module. For finite `G` the object `S ≅ k[G]`
/// is free, so the unit and counit are invertible whether or not `|H|` is
/// invertible in `k`; `coprime` records which case was run.
pub fn sandbox_equivalence(sb: &Sandbox, family: &[GRep]) -> Result<SandboxEquivalence> {
    let f = sb.semialgebra.field();
    let coprime = f.characteristic() == 0 || sb.subgroup.order() as u64 % f.characteristic() != 0;
    let mut out = SandboxEquivalence {
        modules: family.len(),
        adjunction_pairs: 0,
        coprime,
        unit_isos: 0,
        counit_isos: 0,
        restriction_checks: 0,
        failures: Vec::new(),
    };
    for (i, m) in family.iter().enumerate() {
        for (j, p) in family.iter().enumerate().filter(|(j, _)| (i + j) % 3 == 0) {
            match sandbox_adjunction(sb, p, m) {
                Ok(_) => out.adjunction_pairs += 1,
                Err(e) => out.failures.push(format!("adjunction ({j}, {i}): {e}")),
            }
        }
        for (name, v) in [("Ψ", psi_restriction_check(sb, m)?), ("Φ", phi_restriction_check(sb, m)?)] {
            match v {
                Ok(()) => out.restriction_checks += 1,
                Err(w) => out.failures.push(format!("{name} restriction on module {i}: {w}")),
            }
        }
    }
    for (i, m) in family.iter().enumerate() {
        let e = sandbox_counit(sb, m);
        if e.is_square() && e.rank() == m.dim {
            out.counit_isos += 1;
        } else {
            out.failures.push(format!("counit on module {i} is not invertible"));
        }
    }
    for (i, p) in family.iter().enumerate() {
        let u = sandbox_unit(sb, p);
        if u.is_square() && u.rank() == p.dim {
            out.unit_isos += 1;
        } else {
            out.failures.push(format!("unit on module {i} is not invertible"));
        }
    }
    Ok(out)
}

/// An invertible combination of `basis`, by seeded search.
pub fn find_invertible(basis: &[Matrix], f: Field, seed: u64) -> Option<Matrix> {
    let first = basis.first()?;
    if !first.is_square() {
        return None;
    }
    let p = f.characteristic().max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIES {
        let mut x = Matrix::zeros(f, first.rows(), first.cols());
        for b in basis {
            let c = rng.random_range(0..p) as i64;
            if c != 0 {
                x = x.add(&b.scale_int(c));
            }
        }
        if x.rank() == x.rows() {
            return Some(x);
        }
    }
    None
}
