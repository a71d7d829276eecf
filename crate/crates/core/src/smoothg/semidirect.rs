//! `G = H ⋊_φ Z` over the cyclic tower `H = Z_p`, with `γ` the generator of
//! `Z`. Smooth modules and contramodules are finite-length `k[[t]]`-modules
//! with an invertible `γ` satisfying `γ (1 + t) γ^{-1} = φ(1 + t)`; the
//! infinite objects `S` and `𝔗` enter through level-`n` shadows of their
//! degree windows, `C_n^r` and `R_n^r` with `R_n = k[t]/t^{p^n}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::sandbox::{finite_sandbox, find_invertible, ContratensorGReport, Orientation, Sandbox};
use crate::coalg::Side;
use crate::comod::Comodule;
use crate::contramod::{self, Contramodule};
use crate::corr;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, VecSpace};
use crate::group::FiniteGroup;
use crate::protower::{
    contramodule_to_tmodule, homology_colimit, intertwiners, level_comodule, level_contramodule, level_inclusion,
    level_coalgebra, level_regular, lphi_iwasawa, lphi_with, rpsi_with, GroupTower, LevelComplex, Operator, PCModule, TModule,
    TowerKind, Twist,
};
use crate::witness::{compare, shape, Verdict};

const ISO_SEED: u64 = 0x7a11;

/// A range of `Z`-degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn symmetric(w: usize) -> Window {
        Window { lo: -(w as i64), hi: w as i64 }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    /// Degrees reached by semimultiplying elements of the two windows.
    pub fn product(&self, o: &Window) -> Window {
        Window { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }
}

/// `G = H ⋊_φ Z` with `H` the tower's limit.
#[derive(Clone, Debug)]
pub struct GDescriptor {
    pub tower: GroupTower,
    pub window: Window,
    /// `γ h γ^{-1} = φ(h)` in every finite model, and `φ` commutes with the tower maps.
    pub relation_holds: bool,
    pub nonabelian: bool,
}

impl GDescriptor {
    pub fn twist(&self) -> Twist {
        self.tower.twist
    }

    pub fn p(&self) -> u64 {
        self.tower.p
    }

    pub fn field(&self) -> Field {
        self.tower.field()
    }

    /// `H_n ⋊ Z/2`, a finite quotient of `G` when `φ² = id`; element
    /// `(h, e)` at `e·|H_n| + h`, with `H_n` the elements `e = 0`.
    pub fn finite_model(&self, n: usize) -> Result<(FiniteGroup, Vec<usize>)> {
        let h = self.tower.levels.get(n).ok_or_else(|| Error::Precondition(format!("tower has no level {n}")))?;
        let sigma = &self.tower.twist_maps[n];
        let k = h.order();
        if (0..k).any(|x| sigma[sigma[x]] != x) {
            return Err(Error::Unsupported("finite models need an involutive twist".into()));
        }
        let mul = |a: usize, b: usize| {
            let (ea, ha) = (a / k, a % k);
            let (eb, hb) = (b / k, b % k);
            let hb = if ea == 1 { sigma[hb] } else { hb };
            ((ea + eb) % 2) * k + h.mul(ha, hb)
        };
        let table = (0..2 * k).map(|a| (0..2 * k).map(|b| mul(a, b)).collect()).collect();
        let g = FiniteGroup::from_table(&format!("{}⋊Z/2", h.name), table)?;
        Ok((g, (0..k).collect()))
    }

    /// The finite model's semialgebra over `k(H_n)`.
    pub fn sandbox(&self, n: usize) -> Result<Sandbox> {
        let (g, emb) = self.finite_model(n)?;
        finite_sandbox(&g, &emb, self.field())
    }

    /// `φ(1 + t)` for a module with the given `t`.
    pub fn twisted_generator(&self, t: &Matrix) -> Result<Matrix> {
        let one_t = Matrix::identity(t.field(), t.rows()).add(t);
        match self.twist() {
            Twist::Identity => Ok(one_t),
            Twist::Inversion => Ok(one_t.inverse().expect("1 + t is unipotent")),
            Twist::Swap => Err(Error::Unsupported("modules over the swap twist".into())),
        }
    }

    /// `φ` on `R_n = k[t]/t^q` as a ring automorphism, column `j` holding `φ(t)^j`.
    pub fn twist_on_truncation(&self, q: usize) -> Result<Matrix> {
        let r = TModule::jordan(self.p(), &[q]);
        let phi_t = self.twisted_generator(r.t())?.sub(&Matrix::identity(self.field(), q));
        let mut e = Matrix::zeros(self.field(), q, 1);
        if q > 0 {
            e.set_int(0, 0, 1);
        }
        let cols: Vec<Matrix> = (0..q).map(|j| phi_t.pow(j as u64).mul(&e)).collect();
        Ok(Matrix::from_columns(self.field(), q, &cols))
    }
}

/// Finite models, the twist relation in each, and compatibility of `φ` with the tower maps.
pub fn build_g(tower: &GroupTower, window: usize) -> Result<GDescriptor> {
    let mut d = GDescriptor { tower: tower.clone(), window: Window::symmetric(window), relation_holds: true, nonabelian: false };
    for n in 1..=tower.depth {
        let sigma = &tower.twist_maps[n];
        let (s, down) = (&tower.surjections[n - 1], &tower.twist_maps[n - 1]);
        d.relation_holds &= (0..sigma.len()).all(|x| s[sigma[x]] == down[s[x]]);
        let (g, emb) = d.finite_model(n)?;
        // γ is the element (e, 1), numbered |H_n|.
        let gamma = emb.len();
        d.relation_holds &= emb.iter().all(|&x| g.mul(g.mul(gamma, x), g.inv(gamma)) == sigma[x]);
        d.nonabelian |= !g.is_abelian();
    }
    Ok(d)
}

/// Finite length, or the level-`n` shadow of `C^rank` (smooth) or `R^rank` (contramodule).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    FiniteLength,
    Window { rank: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothGModule {
    pub base: TModule,
    pub gamma: Matrix,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GContramodule {
    pub base: TModule,
    pub gamma: Matrix,
    pub shape: Shape,
}

/// `γ` invertible with `γ (1 + t) = φ(1 + t) γ`; window shapes have Jordan type `[q; rank]`.
pub fn check_twisted(d: &GDescriptor, base: &TModule, gamma: &Matrix, sh: Shape) -> Result<Verdict> {
    if !gamma.is_square() || gamma.rows() != base.dim() || gamma.rank() != base.dim() {
        return Ok(Err(shape("γ", "not an invertible operator on the module")));
    }
    let one_t = Matrix::identity(d.field(), base.dim()).add(base.t());
    let lhs = gamma.mul(&one_t);
    let rhs = d.twisted_generator(base.t())?.mul(gamma);
    let v = VecSpace::named(d.field(), "m", base.dim());
    if let Err(w) = compare("γ (1 + t) = φ(1 + t) γ", &lhs, &rhs, &v, &v) {
        return Ok(Err(w));
    }
    if let Shape::Window { rank } = sh {
        window_level(d, base, rank)?;
    }
    Ok(Ok(()))
}

/// The level `n` with `base ≅ (R/t^{p^n})^rank`.
pub fn window_level(d: &GDescriptor, base: &TModule, rank: usize) -> Result<usize> {
    let jt = base.jordan_type();
    let q = jt.first().copied().unwrap_or(0);
    let n = (1..=d.tower.depth).find(|&n| d.tower.modulus(n) == q as u64);
    match n {
        Some(n) if rank > 0 && jt.len() == rank && jt.iter().all(|&e| e == q) => Ok(n),
        _ => Err(Error::Precondition(format!("Jordan type {jt:?} is not a window shadow of rank {rank}"))),
    }
}

impl SmoothGModule {
    pub fn new(d: &GDescriptor, base: TModule, gamma: Matrix, shape: Shape) -> Result<SmoothGModule> {
        check_twisted(d, &base, &gamma, shape)?.map_err(|w| Error::Precondition(w.to_string()))?;
        Ok(SmoothGModule { base, gamma, shape })
    }

    /// `k` with `t = 0`, `γ = 1`.
    pub fn trivial(p: u64) -> SmoothGModule {
        let f = Field::fp(p);
        SmoothGModule { base: TModule::jordan(p, &[1]), gamma: Matrix::identity(f, 1), shape: Shape::FiniteLength }
    }

    /// The level-`n` shadow of `S` on the descriptor's window: `⊕_m C_n γ^m`,
    /// `γ` moving degree `m` to `m + 1` (cyclically on the window) through `φ`.
    pub fn s_window(d: &GDescriptor, n: usize) -> Result<SmoothGModule> {
        let c = level_regular(&d.tower, n)?;
        let sigma = twist_permutation(d, n);
        let (base, gamma) = window_data(d, &c, &sigma);
        SmoothGModule::new(d, base, gamma, Shape::Window { rank: d.window.len() })
    }

    pub fn level(&self) -> usize {
        self.base.level()
    }
}

impl GContramodule {
    pub fn new(d: &GDescriptor, base: TModule, gamma: Matrix, shape: Shape) -> Result<GContramodule> {
        check_twisted(d, &base, &gamma, shape)?.map_err(|w| Error::Precondition(w.to_string()))?;
        Ok(GContramodule { base, gamma, shape })
    }

    pub fn trivial(p: u64) -> GContramodule {
        let f = Field::fp(p);
        GContramodule { base: TModule::jordan(p, &[1]), gamma: Matrix::identity(f, 1), shape: Shape::FiniteLength }
    }

    /// The level-`n` shadow of `𝔗` on the window: `⊕_m R_n γ^m` with `γ` acting by left multiplication.
    pub fn t_window(d: &GDescriptor, n: usize) -> Result<GContramodule> {
        let q = d.tower.modulus(n) as usize;
        let r = TModule::jordan(d.p(), &[q]);
        let phi = d.twist_on_truncation(q)?;
        let (base, gamma) = window_data(d, &r, &phi);
        GContramodule::new(d, base, gamma, Shape::Window { rank: d.window.len() })
    }

    /// `R_n^rank` with `γ = 1`: projective over `H`, not free over `𝔗`.
    pub fn free_untwisted(d: &GDescriptor, n: usize, rank: usize) -> Result<GContramodule> {
        let q = d.tower.modulus(n) as usize;
        let base = TModule::jordan(d.p(), &vec![q; rank]);
        let gamma = Matrix::identity(d.field(), base.dim());
        GContramodule::new(d, base, gamma, Shape::Window { rank })
    }

    pub fn level(&self) -> usize {
        self.base.level()
    }
}

/// `φ` on `C_n` in the δ-basis: `δ_x ↦ δ_{φ(x)}`.
fn twist_permutation(d: &GDescriptor, n: usize) -> Matrix {
    let sigma = &d.tower.twist_maps[n];
    let k = sigma.len();
    Matrix::from_fn(d.field(), k, k, |y, x| i64::from(sigma[x] == y))
}

/// `r = |window|` copies of `m` laid out as [`TModule::power`] does, with `γ`
/// sending copy `i` to copy `i + 1 mod r` through `block`.
fn window_data(d: &GDescriptor, m: &TModule, block: &Matrix) -> (TModule, Matrix) {
    let r = d.window.len();
    let f = d.field();
    let base = m.power(r);
    let mut shift = Matrix::zeros(f, r, r);
    for i in 0..r {
        shift.set_int((i + 1) % r, i, 1);
    }
    (base, block.kron(&shift))
}

/// `𝔗 = k[[t]][γ^{±1}]` with `γ t γ^{-1} = φ(t)`, checked on degree windows
/// of the level-`n` truncation.
#[derive(Clone, Debug)]
pub struct TAlgebra {
    pub descriptor: GDescriptor,
    pub level: usize,
}

impl TAlgebra {
    pub fn new(d: &GDescriptor, level: usize) -> TAlgebra {
        TAlgebra { descriptor: d.clone(), level }
    }

    /// Left multiplication by `t` and `γ` on the window with basis `t^j γ^m`.
    pub fn regular_window(&self) -> Result<(TModule, Matrix)> {
        let w = GContramodule::t_window(&self.descriptor, self.level)?;
        Ok((w.base, w.gamma))
    }

    /// `γ t γ^{-1} = φ(t)` on the window, with `γ` invertible.
    pub fn check(&self) -> Result<Verdict> {
        let (base, gamma) = self.regular_window()?;
        check_twisted(&self.descriptor, &base, &gamma, Shape::Window { rank: self.descriptor.window.len() })
    }
}

/// A smooth module or a contramodule over `G`.
#[derive(Clone, Debug, PartialEq)]
pub enum GObject {
    Smooth(SmoothGModule),
    Contra(GContramodule),
}

impl GObject {
    fn parts(&self) -> (&TModule, &Matrix, Shape) {
        match self {
            GObject::Smooth(m) => (&m.base, &m.gamma, m.shape),
            GObject::Contra(p) => (&p.base, &p.gamma, p.shape),
        }
    }
}

fn object_level(d: &GDescriptor, base: &TModule, sh: Shape) -> Result<usize> {
    match sh {
        Shape::FiniteLength => Ok(base.level()),
        Shape::Window { rank } => window_level(d, base, rank),
    }
}

fn require_depth(d: &GDescriptor, n: usize) -> Result<()> {
    if n > d.tower.depth {
        return Err(Error::Precondition(format!("level {n} exceeds tower depth {}", d.tower.depth)));
    }
    Ok(())
}

/// `Ψ_G(M)` through the forgetful diagram: `Ψ_H` on the base, `γ` carried along.
/// Finite-length modules go through the stabilised `RΨ` (only `H^0` is kept);
/// windows go through the level comodule and `f ↦ f(δ_e)`.
pub fn psi_g(d: &GDescriptor, m: &SmoothGModule, depth: usize) -> Result<GContramodule> {
    match m.shape {
        Shape::FiniteLength => {
            let (base, gamma) = underived_through(d, &m.base, &m.gamma, depth, Functor::Psi)?;
            Ok(GContramodule { base, gamma, shape: Shape::FiniteLength })
        }
        Shape::Window { rank } => {
            let n = window_level(d, &m.base, rank)?;
            let c = level_comodule(&d.tower, n, &m.base, Side::Left)?;
            let (ps, emb) = corr::psi_embedded(&c)?;
            let base = contramodule_to_tmodule(&d.tower, n, &ps)?;
            let k = c.coalgebra().dim();
            let e = d.tower.element(n, &[0]);
            let ev = emb.matrix.select_rows(&(0..m.base.dim()).map(|r| r * k + e).collect::<Vec<_>>());
            let inv = ev.inverse().ok_or_else(|| Error::Precondition("evaluation at δ_e is not bijective".into()))?;
            GContramodule::new(d, base, inv.mul(&m.gamma).mul(&ev), Shape::Window { rank })
        }
    }
}

/// `Φ_G(P)` through the forgetful diagram, with `p ↦ [δ_e ⊗ p]` carrying `γ` on windows.
pub fn phi_g(d: &GDescriptor, p: &GContramodule, depth: usize) -> Result<SmoothGModule> {
    match p.shape {
        Shape::FiniteLength => {
            let (base, gamma) = underived_through(d, &p.base, &p.gamma, depth, Functor::Phi)?;
            Ok(SmoothGModule { base, gamma, shape: Shape::FiniteLength })
        }
        Shape::Window { rank } => {
            let n = window_level(d, &p.base, rank)?;
            let pc = level_contramodule(&d.tower, n, &p.base)?;
            let (ph, proj) = corr::phi_presented(&pc)?;
            let one = d.tower.element(n, &[1]);
            let b1 = &ph.coefficients()[one];
            let base = TModule::new(d.p(), b1.sub(&Matrix::identity(d.field(), ph.dim())))?;
            let e = d.tower.element(n, &[0]);
            let u = proj.matrix.select_cols(&(0..p.base.dim()).map(|s| e * p.base.dim() + s).collect::<Vec<_>>());
            let inv = u.inverse().ok_or_else(|| Error::Precondition("p ↦ [δ_e ⊗ p] is not bijective".into()))?;
            SmoothGModule::new(d, base, u.mul(&p.gamma).mul(&inv), Shape::Window { rank })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Functor {
    Psi,
    Phi,
}

/// Degree-0 homology of `RΨ` or `LΦ` with `γ` carried through the limit or
/// colimit; with a nontrivial twist `γ` does not commute with the cone, so
/// only a vanishing `H^0` is accepted.
fn underived_through(d: &GDescriptor, base: &TModule, gamma: &Matrix, depth: usize, which: Functor) -> Result<(TModule, Matrix)> {
    let x = LevelComplex::concentrated(base, 0);
    let ops: Vec<Operator> = if d.twist() == Twist::Identity { vec![BTreeMap::from([(0, gamma.clone())])] } else { Vec::new() };
    let (out, carried) = match which {
        Functor::Psi => rpsi_with(&x, &ops, depth)?,
        Functor::Phi => lphi_with(&x, &ops, depth)?,
    };
    let h = out.complex.homology_module(0);
    if h.dim() == 0 {
        return Ok((h, Matrix::zeros(d.field(), 0, 0)));
    }
    let Some(op) = carried.first() else {
        return Err(Error::Unsupported("nonzero H^0 under a nontrivial twist".into()));
    };
    let on_complex = op.get(&0).cloned().unwrap_or_else(|| Matrix::identity(d.field(), out.complex.term(0).dim()));
    Ok((h, out.complex.homology_operator(0, &on_complex)))
}

/// An isomorphism commuting with both `t` and `γ`.
pub fn t_gamma_iso(a: (&TModule, &Matrix), b: (&TModule, &Matrix)) -> Option<Matrix> {
    let (ta, ga) = a;
    let (tb, gb) = b;
    if ta.jordan_type() != tb.jordan_type() {
        return None;
    }
    let f = ta.field();
    if ta.dim() == 0 {
        return Some(Matrix::zeros(f, 0, 0));
    }
    let basis = intertwiners(f, &[(ta.t().clone(), tb.t().clone()), (ga.clone(), gb.clone())], ta.dim(), tb.dim());
    find_invertible(&basis, f, ISO_SEED)
}

/// `H`-injectivity, `H`-projectivity and the semiprojective / semiinjective
/// shape certificates. Windows are tested at their own level; finite-length
/// objects one level above theirs, since a module injective over `C_n`
/// stops being injective over `C_{n+1}` unless it is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeakFlags {
    pub level: usize,
    pub weakly_compactly_injective: bool,
    pub weakly_compactly_projective: bool,
    pub semiprojective: bool,
    pub semiinjective: bool,
}

pub fn weakly_compact_flags(d: &GDescriptor, obj: &GObject) -> Result<WeakFlags> {
    let (base, gamma, sh) = obj.parts();
    let own = object_level(d, base, sh)?;
    let level = match sh {
        Shape::FiniteLength => own.max(1) + 1,
        Shape::Window { .. } => own,
    };
    require_depth(d, level)?;
    let monomial = match sh {
        Shape::Window { rank } => monomial_blocks(gamma, rank),
        Shape::FiniteLength => false,
    };
    let mut flags = WeakFlags {
        level,
        weakly_compactly_injective: false,
        weakly_compactly_projective: false,
        semiprojective: false,
        semiinjective: false,
    };
    // Over `k[Z/q]` injective, projective and free coincide: every Jordan block has size `q`.
    let free = level_free(d, base, level);
    match obj {
        GObject::Smooth(_) => {
            flags.weakly_compactly_injective = free;
            flags.semiprojective = free && monomial;
        }
        GObject::Contra(_) => {
            flags.weakly_compactly_projective = free;
            flags.semiinjective = free && monomial;
        }
    }
    Ok(flags)
}

/// `base` is free over `k[t]/t^q`, `q = |H_level|`. For small objects this is
/// confirmed against the injectivity test on the level comodule.
pub fn level_free(d: &GDescriptor, base: &TModule, level: usize) -> bool {
    let q = d.tower.modulus(level) as usize;
    base.dim() > 0 && base.jordan_type().iter().all(|&b| b == q)
}

/// `γ` permutes the `rank` equal blocks, each nonzero block invertible.
fn monomial_blocks(gamma: &Matrix, rank: usize) -> bool {
    if rank == 0 || gamma.rows() % rank != 0 {
        return false;
    }
    let q = gamma.rows() / rank;
    // Blocks are interleaved as in `TModule::power`: copy `x` of row `i` at `i·rank + x`.
    let block = |to: usize, from: usize| {
        let rows: Vec<usize> = (0..q).map(|i| i * rank + to).collect();
        let cols: Vec<usize> = (0..q).map(|i| i * rank + from).collect();
        gamma.select_rows(&rows).select_cols(&cols)
    };
    let mut hit = vec![false; rank];
    for from in 0..rank {
        let nonzero: Vec<usize> = (0..rank).filter(|&to| !block(to, from).is_zero()).collect();
        match nonzero.as_slice() {
            [to] if !hit[*to] && block(*to, from).rank() == q => hit[*to] = true,
            _ => return false,
        }
    }
    true
}

/// With the injective (projective) flag, the counit `Φ_G Ψ_G M -> M` (unit
/// `P -> Ψ_G Φ_G P`) is bijective at the object's level, and the round trip
/// returns the object up to an isomorphism commuting with `t` and `γ`.
pub fn underived_equivalence_check(d: &GDescriptor, obj: &GObject, depth: usize) -> Result<Verdict> {
    let flags = weakly_compact_flags(d, obj)?;
    match obj {
        GObject::Smooth(m) => {
            if !flags.weakly_compactly_injective {
                return Err(Error::Precondition("weakly compactly injective flag missing".into()));
            }
            let c = level_comodule(&d.tower, flags.level, &m.base, Side::Left)?;
            if !corr::counit(&c)?.is_iso() {
                return Ok(Err(shape("counit", "Φ_H Ψ_H M -> M is not bijective")));
            }
            let back = phi_g(d, &psi_g(d, m, depth)?, depth)?;
            Ok(match t_gamma_iso((&back.base, &back.gamma), (&m.base, &m.gamma)) {
                Some(_) => Ok(()),
                None => Err(shape("Φ_G Ψ_G", "round trip is not isomorphic to the input")),
            })
        }
        GObject::Contra(p) => {
            if !flags.weakly_compactly_projective {
                return Err(Error::Precondition("weakly compactly projective flag missing".into()));
            }
            let c = level_contramodule(&d.tower, flags.level, &p.base)?;
            if !corr::unit(&c)?.is_iso() {
                return Ok(Err(shape("unit", "P -> Ψ_H Φ_H P is not bijective")));
            }
            let back = psi_g(d, &phi_g(d, p, depth)?, depth)?;
            Ok(match t_gamma_iso((&back.base, &back.gamma), (&p.base, &p.gamma)) {
                Some(_) => Ok(()),
                None => Err(shape("Ψ_G Φ_G", "round trip is not isomorphic to the input")),
            })
        }
    }
}

/// `Ext^i_{𝔗^op}(S, M)` or `Tor_i^𝔗(S, P)` for `1 ≤ i ≤ i_max`, by dimension,
/// with the steps of the reduction to `R = k[[t]]`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTorTable {
    pub functor: String,
    pub values: BTreeMap<usize, usize>,
    pub trace: Vec<String>,
}

impl ExtTorTable {
    pub fn vanishes(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }
}

/// `S ≅ C ⊗_R 𝔗` with `𝔗` free over `R` on the `γ^m` turns both functors into
/// their counterparts over `R`, whose global dimension is 1.
/// `Ext^1_R(C, M)` sits in the Milnor sequence for `C = colim C_n`: its
/// `lim^1` part vanishes when restriction `Hom_R(C_{n+1}, M) -> Hom_R(C_n, M)`
/// is onto, and its `lim` part is `lim M / t^{p^n} M`, zero when `M` is divisible.
/// `Tor_1^R(C, P)` is the degree −1 homology of `LΦ` on the free presentation.
pub fn ext_tor_vanishing(d: &GDescriptor, obj: &GObject, i_max: usize) -> Result<ExtTorTable> {
    let flags = weakly_compact_flags(d, obj)?;
    let mut trace = vec![
        "S ≅ C ⊗_R 𝔗, 𝔗 free over R on γ^m".to_string(),
    ];
    let mut values = BTreeMap::new();
    let functor = match obj {
        GObject::Smooth(m) => {
            if !flags.weakly_compactly_injective {
                return Err(Error::Precondition("weakly compactly injective flag missing".into()));
            }
            let Shape::Window { rank } = m.shape else {
                return Err(Error::Precondition("injective objects are window shadows".into()));
            };
            trace.push("Ext^i_{𝔗^op}(S, M) ≅ Ext^i_R(C, M)".into());
            let n = flags.level;
            let up = n + 1;
            require_depth(d, up).map_err(|_| Error::NotStabilized { depth: d.tower.depth })?;
            // M ≅ C^rank over H; its level-(n+1) shadow receives the level-n one.
            let big = level_regular(&d.tower, up)?.power(rank);
            let incl = level_inclusion(&d.tower, n, up)?.kron(&Matrix::identity(d.field(), rank));
            let mut ml = 0;
            for j in 1..n {
                let (cj, cj1) = (level_regular(&d.tower, j)?, level_regular(&d.tower, j + 1)?);
                let step = level_inclusion(&d.tower, j, j + 1)?;
                let target = cj.hom_basis(&big).len();
                let images: Vec<Matrix> = cj1.hom_basis(&big).iter().map(|x| crate::protower::vec_of(&x.mul(&step))).collect();
                let rank_r = Matrix::from_columns(d.field(), big.dim() * cj.dim(), &images).rank();
                ml += target - rank_r;
            }
            trace.push(format!("Mittag-Leffler defect of Hom_R(C_j, M), j < {n}: {ml}"));
            let mut div = 0;
            let shadow = incl.column_basis();
            for j in 1..=n {
                let image = big.power_image(d.tower.modulus(j) as usize);
                let both = Matrix::hstack(d.field(), big.dim(), &[&shadow, &image]).rank();
                let inter = shadow.cols() + image.cols() - both;
                div += shadow.cols() - inter;
            }
            trace.push(format!("divisibility defect of M / t^(p^j) M, j ≤ {n}: {div}"));
            values.insert(1, ml + div);
            "Ext^i_{𝔗^op}(S, M)".to_string()
        }
        GObject::Contra(p) => {
            if !flags.weakly_compactly_projective {
                return Err(Error::Precondition("weakly compactly projective flag missing".into()));
            }
            let Shape::Window { rank } = p.shape else {
                return Err(Error::Precondition("projective objects are window shadows".into()));
            };
            trace.push("Tor_i^𝔗(S, P) ≅ Tor_i^R(C, P), P ≅ R^rank over R".into());
            let lp = lphi_iwasawa(&PCModule::from_invariants(d.p(), rank, &[]), d.tower.depth)?;
            let tor1: usize = lp.homology.get(&-1).map(|v| v.iter().sum()).unwrap_or(0);
            trace.push(format!("LΦ on the free presentation: degree −1 homology of dimension {tor1}, stabilised at level {}", lp.stabilized_at));
            values.insert(1, tor1);
            "Tor_i^𝔗(S, P)".to_string()
        }
    };
    trace.push("gl.dim R = 1: degrees ≥ 2 vanish".into());
    for i in 2..=i_max {
        values.insert(i, 0);
    }
    values.retain(|&i, _| i <= i_max);
    Ok(ExtTorTable { functor, values, trace })
}

/// Homology of a derived functor with `t` and `γ`, by degree.
#[derive(Clone, Debug)]
pub struct GHomology {
    pub pieces: BTreeMap<i32, (TModule, Matrix)>,
}

impl GHomology {
    pub fn types(&self) -> BTreeMap<i32, Vec<usize>> {
        self.pieces.iter().map(|(&i, (m, _))| (i, m.jordan_type())).collect()
    }

    /// Nonzero degrees, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.pieces.iter().filter(|(_, (m, _))| m.dim() > 0).map(|(&i, _)| i).collect()
    }

    /// Degree-by-degree isomorphism commuting with `t` and `γ`.
    pub fn iso(&self, o: &GHomology) -> bool {
        self.support() == o.support()
            && self.support().iter().all(|i| {
                let (a, ga) = &self.pieces[i];
                let (b, gb) = &o.pieces[i];
                t_gamma_iso((a, ga), (b, gb)).is_some()
            })
    }
}

fn homology_with(x: &LevelComplex, op: &Operator) -> GHomology {
    let f = x.field();
    let mut pieces = BTreeMap::new();
    if let Some((lo, hi)) = x.range() {
        for i in lo..=hi {
            let h = x.homology_module(i);
            if h.dim() > 0 {
                let g = op.get(&i).cloned().unwrap_or_else(|| Matrix::identity(f, x.term(i).dim()));
                pieces.insert(i, (h, x.homology_operator(i, &g)));
            }
        }
    }
    GHomology { pieces }
}

/// `LΦ_G` and `RΨ_G` of a finite-length object, the independent Koszul
/// computation of `LΦ_G`, and the round trip.
#[derive(Clone, Debug)]
pub struct DerivedG {
    pub functor: &'static str,
    pub complex: LevelComplex,
    pub gamma: Operator,
    pub homology: GHomology,
    pub stabilized_at: usize,
    /// `LΦ_G` only: the Koszul resolution over `𝔗` gives the same homology with `γ`.
    pub koszul_agrees: Option<bool>,
    pub round_trip: bool,
    /// Homology sits in at most `cap + 1` consecutive degrees.
    pub support_ok: bool,
}

impl DerivedG {
    pub fn holds(&self) -> bool {
        self.round_trip && self.support_ok && self.koszul_agrees != Some(false)
    }
}

fn support_within(h: &GHomology, cap: usize) -> bool {
    let s = h.support();
    match (s.first(), s.last()) {
        (Some(a), Some(b)) => (b - a) as usize <= cap,
        _ => true,
    }
}

/// The two derived functors need `φ = id`, where `𝔗` is commutative.
fn require_untwisted(d: &GDescriptor) -> Result<()> {
    if d.twist() != Twist::Identity {
        return Err(Error::Unsupported("derived functors over G need the identity twist".into()));
    }
    if d.tower.kind != TowerKind::Zp {
        return Err(Error::Unsupported("derived functors over G need the cyclic tower".into()));
    }
    Ok(())
}

/// `LΦ_G(P) = S ⊗^L_𝔗 P` through `LΦ_H` with `γ` carried along, cross-checked
/// by the Koszul resolution, and `RΨ_G LΦ_G(P) ≅ P` in degree 0.
pub fn derived_phi_g(d: &GDescriptor, p: &GContramodule, cap: usize, depth: usize) -> Result<DerivedG> {
    require_untwisted(d)?;
    let x = LevelComplex::concentrated(&p.base, 0);
    let (out, ops) = lphi_with(&x, &[BTreeMap::from([(0, p.gamma.clone())])], depth)?;
    let gamma = ops.into_iter().next().unwrap_or_default();
    let homology = homology_with(&out.complex, &gamma);
    let koszul = koszul_phi(d, p, 2, depth)?;
    let (back, back_ops) = rpsi_with(&out.complex, std::slice::from_ref(&gamma), depth)?;
    let back_h = homology_with(&back.complex, &back_ops[0]);
    let input = GHomology { pieces: nonzero_piece(&p.base, &p.gamma) };
    Ok(DerivedG {
        functor: "LΦ_G",
        support_ok: support_within(&homology, cap),
        round_trip: back_h.iso(&input),
        koszul_agrees: Some(koszul.iso(&homology)),
        complex: out.complex,
        gamma,
        homology,
        stabilized_at: out.stabilized_at,
    })
}

/// `RΨ_G(M) = RHom_{𝔗^op}(S, M)` through `RΨ_H`, and `LΦ_G RΨ_G(M) ≅ M` in degree 0.
pub fn derived_psi_g(d: &GDescriptor, m: &SmoothGModule, cap: usize, depth: usize) -> Result<DerivedG> {
    require_untwisted(d)?;
    let x = LevelComplex::concentrated(&m.base, 0);
    let (out, ops) = rpsi_with(&x, &[BTreeMap::from([(0, m.gamma.clone())])], depth)?;
    let gamma = ops.into_iter().next().unwrap_or_default();
    let homology = homology_with(&out.complex, &gamma);
    let (back, back_ops) = lphi_with(&out.complex, std::slice::from_ref(&gamma), depth)?;
    let back_h = homology_with(&back.complex, &back_ops[0]);
    let input = GHomology { pieces: nonzero_piece(&m.base, &m.gamma) };
    Ok(DerivedG {
        functor: "RΨ_G",
        support_ok: support_within(&homology, cap),
        round_trip: back_h.iso(&input),
        koszul_agrees: None,
        complex: out.complex,
        gamma,
        homology,
        stabilized_at: out.stabilized_at,
    })
}

fn nonzero_piece(base: &TModule, gamma: &Matrix) -> BTreeMap<i32, (TModule, Matrix)> {
    if base.dim() == 0 {
        BTreeMap::new()
    } else {
        BTreeMap::from([(0, (base.clone(), gamma.clone()))])
    }
}

/// Either derived functor on a finite-length object.
pub fn derived_equivalence_g(d: &GDescriptor, obj: &GObject, cap: usize, depth: usize) -> Result<DerivedG> {
    match obj {
        GObject::Contra(p) => derived_phi_g(d, p, cap, depth),
        GObject::Smooth(m) => derived_psi_g(d, m, cap, depth),
    }
}

/// `S ⊗_𝔗 K(P)` for the Koszul resolution `K(P)` of `P` over `k[t, γ^{±1}]`,
/// on the `γ`-degree window `[0, w]` of `S` and at level `N`, as a colimit over `N`:
///
/// degree −2: `C_N ⊗ k^w ⊗ P`; degree −1: `(C_N ⊗ k^{w+1} ⊗ P) ⊕ (C_N ⊗ k^w ⊗ P)`;
/// degree 0: `C_N ⊗ k^{w+1} ⊗ P`, with `g(e_m ⊗ p) = e_{m+1} ⊗ p − e_m ⊗ γ p`
/// and `T = t ⊗ 1 − 1 ⊗ t`. Multiplication by `γ ⊗ 1 − 1 ⊗ γ_P` is null-homotopic,
/// so `γ` acts on homology through `1 ⊗ γ_P`.
pub fn koszul_phi(d: &GDescriptor, p: &GContramodule, w: usize, depth: usize) -> Result<GHomology> {
    require_untwisted(d)?;
    let f = d.field();
    let dp = p.base.dim();
    let id = |n: usize| Matrix::identity(f, n);
    let g_map = |c: usize| {
        // k^w ⊗ P -> k^{w+1} ⊗ P, tensored on the left with C.
        let mut up = Matrix::zeros(f, w + 1, w);
        let mut stay = Matrix::zeros(f, w + 1, w);
        for m in 0..w {
            up.set_int(m + 1, m, 1);
            stay.set_int(m, m, 1);
        }
        id(c).kron(&up.kron(&id(dp)).sub(&stay.kron(&p.gamma)))
    };
    let t_map = |c: &TModule, width: usize| c.t().kron(&id(width * dp)).sub(&id(c.dim()).kron(&id(width).kron(p.base.t())));
    let mut levels = Vec::new();
    let mut ops = Vec::new();
    let first = p.base.level().max(1);
    for n in first..=depth {
        let c = level_regular(&d.tower, n)?;
        let cd = c.dim();
        let (a, b) = (w * dp, (w + 1) * dp);
        let term = |width: usize| TModule::new(d.p(), c.t().kron(&id(width * dp))).expect("nilpotent");
        let mid = term(w + 1).direct_sum(&term(w));
        let d2 = Matrix::vstack(f, cd * a, &[&g_map(cd), &t_map(&c, w).neg()]);
        let d1 = Matrix::hstack(f, cd * b, &[&t_map(&c, w + 1), &g_map(cd)]);
        let terms = BTreeMap::from([(-2, term(w)), (-1, mid), (0, term(w + 1))]);
        let diffs = BTreeMap::from([(-2, d2), (-1, d1)]);
        levels.push(LevelComplex::new(d.p(), terms, diffs)?);
        let gam = |width: usize| id(cd).kron(&id(width).kron(&p.gamma));
        let op = BTreeMap::from([(-2, gam(w)), (-1, Matrix::direct_sum(f, &[&gam(w + 1), &gam(w)])), (0, gam(w + 1))]);
        ops.push(vec![op]);
    }
    let mut maps = Vec::new();
    for n in first..depth {
        let incl = level_inclusion(&d.tower, n, n + 1)?;
        let up = |width: usize| incl.kron(&id(width * dp));
        maps.push(BTreeMap::from([(-2, up(w)), (-1, Matrix::direct_sum(f, &[&up(w + 1), &up(w)])), (0, up(w + 1))]));
    }
    let (_, pieces) = homology_colimit(&levels, &maps, &ops, &[-2, -1, 0]).ok_or(Error::NotStabilized { depth })?;
    Ok(GHomology { pieces: pieces.into_iter().map(|(i, (m, mut g))| (i, (m, g.remove(0)))).collect() })
}

/// `N ⊗_{k[G]} P` from the generators `1 + t` and `γ` (with `x·g = g^{-1} x`)
/// against `N ⊛_G P` computed as the coalgebra contratensor over `C_n`
/// followed by the `γ` relation in the chosen orientation.
pub fn contratensor_gt_comparison(d: &GDescriptor, n: &SmoothGModule, p: &GContramodule, orient: Orientation) -> Result<ContratensorGReport> {
    let f = d.field();
    let level = n.base.level().max(p.base.level()).max(1);
    require_depth(d, level)?;
    let (dn, dp) = (n.base.dim(), p.base.dim());
    let (i_n, i_p) = (Matrix::identity(f, dn), Matrix::identity(f, dp));
    let (gn, gp) = (i_n.add(n.base.t()), i_p.add(p.base.t()));
    let (gn_inv, gamma_inv) = (
        gn.inverse().expect("unipotent"),
        n.gamma.inverse().ok_or_else(|| Error::Precondition("γ is not invertible".into()))?,
    );
    let tensor = Matrix::hstack(f, dn * dp, &[&gn_inv.kron(&i_p).sub(&i_n.kron(&gp)), &gamma_inv.kron(&i_p).sub(&i_n.kron(&p.gamma))]).column_basis();
    let c = level_coalgebra(&d.tower, level)?;
    let q = d.tower.modulus(level);
    let ncoeffs: Vec<Matrix> = (0..c.dim()).map(|g| gn.pow(d.tower.coordinates(level, g)[0])).collect();
    let pcoeffs: Vec<Matrix> = (0..c.dim())
        .map(|g| {
            let e = d.tower.coordinates(level, g)[0];
            match orient {
                Orientation::Inverse => gp.pow((q - e) % q),
                Orientation::Literal => gp.pow(e),
            }
        })
        .collect();
    let nc = Comodule::from_coefficients(&c, VecSpace::named(f, "n", dn), Side::Right, &ncoeffs);
    let pc = Contramodule::from_coefficients(&c, VecSpace::named(f, "p", dp), &pcoeffs);
    let (_, proj) = contramod::contratensor(&nc, &pc)?;
    let moved = match orient {
        Orientation::Inverse => &gamma_inv,
        Orientation::Literal => &n.gamma,
    };
    let gamma_rel = i_n.kron(&p.gamma).sub(&moved.kron(&i_p));
    let contra = Matrix::hstack(f, dn * dp, &[&proj.matrix.nullspace(), &gamma_rel]).column_basis();
    let well_defined = contra.spans(&tensor) || tensor.cols() == 0;
    Ok(ContratensorGReport {
        orientation: orient,
        tensor_dim: dn * dp - tensor.cols(),
        contratensor_dim: dn * dp - contra.cols(),
        well_defined,
        iso: well_defined && tensor.cols() == contra.cols(),
    })
}
