//! The derived functors between discrete modules and contramodules over
//! `C = k(Z_p)`, computed as limits and colimits over the tower of levels
//! `C_n`, `C_n^∨ = k[[t]] / t^{p^n}`.
//!
//! `RΨ(X)` is the limit of the level complexes `RHom(C_n, X)`, realised as the
//! total complex of `t^{p^n} : X → X`, with transitions `t^{p^{n+1} − p^n}` on the
//! first copy. `LΦ(X)` is the colimit of `C_n ⊗^L X`, the total complex of the
//! same arrow placed in degrees `[−1, 0]`, with transitions on the second copy.
//! A limit (colimit) is accepted at the first level where the transition
//! between two consecutive stable images (quotients) is bijective.

use std::collections::BTreeMap;

use serde::Serialize;

use super::smith::{smith_form, PCModule, SmithSummary};
use super::tmodule::{induced, quotient_projection, TModule};
use super::tower::{builtin_tower, level_inclusion, level_regular, TowerKind, Twist};
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinMap, Matrix, VecSpace};
use crate::homcx::{Complex, Decoration};

/// A bounded complex of finite-length modules with `t`-linear differentials.
#[derive(Clone, Debug)]
pub struct LevelComplex {
    p: u64,
    terms: BTreeMap<i32, TModule>,
    diffs: BTreeMap<i32, Matrix>,
}

/// `d` on the direct sum `a ⊕ b` as a block matrix `[[aa, ab], [ba, bb]]`.
fn blocks(f: Field, rows: (usize, usize), cols: (usize, usize), parts: [Option<&Matrix>; 4]) -> Matrix {
    let mut m = Matrix::zeros(f, rows.0 + rows.1, cols.0 + cols.1);
    let offs = [(0, 0), (0, cols.0), (rows.0, 0), (rows.0, cols.0)];
    for (part, (r, c)) in parts.iter().zip(offs) {
        if let Some(x) = part {
            m.set_block(r, c, x);
        }
    }
    m
}

impl LevelComplex {
    pub fn new(p: u64, terms: BTreeMap<i32, TModule>, diffs: BTreeMap<i32, Matrix>) -> Result<LevelComplex> {
        let x = LevelComplex { p, terms: terms.into_iter().filter(|(_, m)| m.dim() > 0).collect(), diffs };
        for (&i, d) in &x.diffs {
            let (a, b) = (x.term(i), x.term(i + 1));
            if d.rows() != b.dim() || d.cols() != a.dim() {
                return Err(Error::DimensionMismatch { expected: (b.dim(), a.dim()), found: (d.rows(), d.cols()) });
            }
            if !a.is_morphism(&b, d) {
                return Err(Error::Precondition(format!("differential {i} is not t-linear")));
            }
            if !x.diff(i + 1).mul(d).is_zero() {
                return Err(Error::NotAComplex { degree: i });
            }
        }
        Ok(x)
    }

    /// A single module in degree `deg`.
    pub fn concentrated(m: &TModule, deg: i32) -> LevelComplex {
        LevelComplex { p: m.prime(), terms: BTreeMap::from([(deg, m.clone())]), diffs: BTreeMap::new() }
            .pruned()
    }

    fn pruned(mut self) -> LevelComplex {
        self.terms.retain(|_, m| m.dim() > 0);
        self
    }

    pub fn field(&self) -> Field {
        Field::fp(self.p)
    }

    pub fn term(&self, i: i32) -> TModule {
        self.terms.get(&i).cloned().unwrap_or_else(|| TModule::zero(self.p))
    }

    pub fn diff(&self, i: i32) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.term(i + 1).dim(), self.term(i).dim()))
    }

    pub(crate) fn range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// As a complex of vector spaces decorated by `t` and `γ = 1 + t`.
    pub fn to_complex(&self) -> Result<Complex> {
        let f = self.field();
        let spaces: BTreeMap<i32, VecSpace> =
            self.terms.iter().map(|(&i, m)| (i, VecSpace::named(f, &format!("x{i}_"), m.dim()))).collect();
        let space = |i: i32| spaces.get(&i).cloned().unwrap_or_else(|| VecSpace::zero(f));
        let diffs = self
            .diffs
            .iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(&i, d)| (i, LinMap::from_parts(&space(i), &space(i + 1), d.clone())))
            .collect();
        let deco = self
            .terms
            .iter()
            .map(|(&i, m)| (i, Decoration::Smooth { t: m.t().clone(), gamma: Matrix::identity(f, m.dim()).add(m.t()) }))
            .collect();
        Complex::new(f, spaces, diffs)?.with_decoration(deco)
    }

    /// Reads the `t`-action off `Smooth` decorations.
    pub fn from_complex(x: &Complex) -> Result<LevelComplex> {
        let p = x.field().characteristic();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for i in x.degrees() {
            match x.decoration(i) {
                Some(Decoration::Smooth { t, .. }) => {
                    terms.insert(i, TModule::new(p, t.clone())?);
                }
                _ => return Err(Error::Precondition(format!("term {i} carries no t-action"))),
            }
            diffs.insert(i, x.diff(i).matrix.clone());
        }
        LevelComplex::new(p, terms, diffs)
    }

    /// `H^i` as a module, with the cycle frame and the projection from cycle coordinates.
    fn homology_frame(&self, i: i32) -> (TModule, Matrix, Matrix) {
        let f = self.field();
        let m = self.term(i);
        let z = self.diff(i).nullspace();
        let z = if z.cols() == 0 { Matrix::zeros(f, m.dim(), 0) } else { z.column_basis() };
        let b = self.diff(i - 1).column_basis();
        let b_in_z = if b.cols() == 0 { Matrix::zeros(f, z.cols(), 0) } else { z.solve(&b).expect("boundaries are cycles") };
        let q = quotient_projection(&b_in_z, z.cols());
        let t_on_z = if z.cols() == 0 { Matrix::zeros(f, 0, 0) } else { z.solve(&m.t().mul(&z)).expect("cycles are t-stable") };
        let h = TModule::new(self.p, induced(&q, &t_on_z)).expect("homology of nilpotent operators is nilpotent");
        (h, z, q)
    }

    /// The operator induced on `H^i` by a chain endomorphism given in degree `i`.
    pub(crate) fn homology_operator(&self, i: i32, op: &Matrix) -> Matrix {
        let (h, z, q) = self.homology_frame(i);
        if h.dim() == 0 {
            return Matrix::zeros(self.field(), 0, 0);
        }
        let on_z = z.solve(&op.mul(&z)).expect("chain maps preserve cycles");
        induced(&q, &on_z)
    }

    pub fn homology_module(&self, i: i32) -> TModule {
        self.homology_frame(i).0
    }

    /// Nonzero homology, by degree, with Jordan types.
    pub fn homology_types(&self) -> BTreeMap<i32, Vec<usize>> {
        let Some((lo, hi)) = self.range() else { return BTreeMap::new() };
        (lo..=hi)
            .map(|i| (i, self.homology_module(i)))
            .filter(|(_, h)| h.dim() > 0)
            .map(|(i, h)| (i, h.jordan_type()))
            .collect()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.terms.iter().map(|(&i, m)| (i, m.dim())).collect()
    }
}

type Frames = BTreeMap<i32, Matrix>;

/// Map on homology induced by per-degree components `maps`.
fn homology_map(x: &LevelComplex, y: &LevelComplex, maps: &BTreeMap<i32, Matrix>, i: i32) -> (TModule, TModule, Matrix) {
    let (hx, zx, qx) = x.homology_frame(i);
    let (hy, zy, qy) = y.homology_frame(i);
    let f = x.field();
    let comp = component(maps, i, f, y.term(i).dim(), x.term(i).dim());
    if hx.dim() == 0 || hy.dim() == 0 {
        return (hx.clone(), hy.clone(), Matrix::zeros(f, hy.dim(), hx.dim()));
    }
    let img = comp.mul(&zx).mul(&qx.right_inverse().expect("surjective"));
    let coords = zy.solve(&img).expect("chain maps send cycles to cycles");
    (hx, hy, qy.mul(&coords))
}

fn component(maps: &BTreeMap<i32, Matrix>, i: i32, f: Field, rows: usize, cols: usize) -> Matrix {
    maps.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(f, rows, cols))
}

/// Inverse limit of `levels[0] ← levels[1] ← …`; `maps[k] : levels[k+1] → levels[k]`.
/// The limit is the subcomplex of `levels[k]` spanned by the stable images, returned as column frames.
fn stable_limit(levels: &[LevelComplex], maps: &[BTreeMap<i32, Matrix>]) -> Option<(usize, LevelComplex, Frames)> {
    let f = levels.first()?.field();
    for k in 0..maps.len().saturating_sub(1) {
        let (x, y, z) = (&levels[k], &levels[k + 1], &levels[k + 2]);
        let degs: Vec<i32> = x.terms.keys().chain(y.terms.keys()).copied().collect();
        let mut images = BTreeMap::new();
        let mut stable = true;
        for &i in &degs {
            let m0 = component(&maps[k], i, f, x.term(i).dim(), y.term(i).dim());
            let m1 = component(&maps[k + 1], i, f, y.term(i).dim(), z.term(i).dim());
            let s0 = m0.column_basis();
            let s1 = m1.column_basis();
            let mapped = m0.mul(&s1);
            if mapped.rank() != s1.cols() || mapped.rank() != s0.cols() {
                stable = false;
                break;
            }
            images.insert(i, s0);
        }
        if !stable {
            continue;
        }
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&i, s) in &images {
            if s.cols() == 0 {
                continue;
            }
            let t = s.solve(&x.term(i).t().mul(s)).expect("images of t-linear maps are t-stable");
            terms.insert(i, TModule::new(x.p, t).expect("restriction of a nilpotent operator"));
            if let Some(s_next) = images.get(&(i + 1)) {
                if s_next.cols() > 0 {
                    let d = s_next.solve(&x.diff(i).mul(s)).expect("images form a subcomplex");
                    diffs.insert(i, d);
                }
            }
        }
        return Some((k, LevelComplex::new(x.p, terms, diffs).expect("subcomplex"), images));
    }
    None
}

/// Direct limit of `levels[0] → levels[1] → …`; `maps[k] : levels[k] → levels[k+1]`.
/// The colimit is the quotient of `levels[k]` by the stable kernels, returned as projections.
fn stable_colimit(levels: &[LevelComplex], maps: &[BTreeMap<i32, Matrix>]) -> Option<(usize, LevelComplex, Frames)> {
    let f = levels.first()?.field();
    for k in 0..maps.len().saturating_sub(1) {
        let (x, y, z) = (&levels[k], &levels[k + 1], &levels[k + 2]);
        let degs: Vec<i32> = x.terms.keys().chain(y.terms.keys()).copied().collect();
        let mut projections = BTreeMap::new();
        let mut stable = true;
        for &i in &degs {
            let m0 = component(&maps[k], i, f, y.term(i).dim(), x.term(i).dim());
            let m1 = component(&maps[k + 1], i, f, z.term(i).dim(), y.term(i).dim());
            let k1 = m1.nullspace();
            let both = Matrix::hstack(f, y.term(i).dim(), &[&m0, &k1]);
            if both.rank() != y.term(i).dim() || m0.rank() + k1.cols() != y.term(i).dim() {
                stable = false;
                break;
            }
            let k0 = m0.nullspace();
            projections.insert(i, quotient_projection(&k0, x.term(i).dim()));
        }
        if !stable {
            continue;
        }
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&i, q) in &projections {
            if q.rows() == 0 {
                continue;
            }
            terms.insert(i, TModule::new(x.p, induced(q, x.term(i).t())).expect("quotient of a nilpotent operator"));
            if let Some(q_next) = projections.get(&(i + 1)) {
                if q_next.rows() > 0 {
                    let sec = q.right_inverse().expect("surjective");
                    diffs.insert(i, q_next.mul(&x.diff(i)).mul(&sec));
                }
            }
        }
        return Some((k, LevelComplex::new(x.p, terms, diffs).expect("quotient complex"), projections));
    }
    None
}

/// `RΨ` of a complex of finite-length discrete modules.
#[derive(Clone, Debug)]
pub struct RPsi {
    pub complex: LevelComplex,
    /// Tower level at which the limit stabilised.
    pub stabilized_at: usize,
}

/// Level `n`: `Y^k = X^k ⊕ X^{k−1}`, `d(x, y) = (dx, t^q x − dy)`, `q = p^n`.
fn rpsi_level(x: &LevelComplex, q: u64) -> LevelComplex {
    let f = x.field();
    let Some((lo, hi)) = x.range() else { return x.clone() };
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for k in lo..=hi + 1 {
        let (a, b) = (x.term(k), x.term(k - 1));
        terms.insert(k, a.direct_sum(&b));
        let (a2, b2) = (x.term(k + 1), x.term(k));
        let tq = a.t().pow(q);
        let d = blocks(f, (a2.dim(), b2.dim()), (a.dim(), b.dim()), [Some(&x.diff(k)), None, Some(&tq), Some(&x.diff(k - 1).neg())]);
        diffs.insert(k, d);
    }
    LevelComplex::new(x.p, terms, diffs).expect("cone of t^q").pruned()
}

pub fn rpsi_iwasawa(x: &LevelComplex, depth: usize) -> Result<RPsi> {
    Ok(rpsi_with(x, &[], depth)?.0)
}

/// Per-degree operators on a complex, commuting with `t` and the differential.
pub(crate) type Operator = BTreeMap<i32, Matrix>;

fn op_at(op: &Operator, i: i32, dim: usize, f: Field) -> Matrix {
    op.get(&i).cloned().unwrap_or_else(|| Matrix::identity(f, dim))
}

/// `op^a ⊕ op^b` on the summands of a two-term level complex.
fn sum_ops(x: &LevelComplex, ops: &[Operator], first: i32, second: i32) -> Vec<Matrix> {
    let f = x.field();
    ops.iter()
        .map(|op| {
            let (a, b) = (op_at(op, first, x.term(first).dim(), f), op_at(op, second, x.term(second).dim(), f));
            Matrix::direct_sum(f, &[&a, &b])
        })
        .collect()
}

/// `RΨ` carrying extra operators through the limit.
pub(crate) fn rpsi_with(x: &LevelComplex, ops: &[Operator], depth: usize) -> Result<(RPsi, Vec<Operator>)> {
    let f = x.field();
    let p = x.p;
    let Some((lo, hi)) = x.range() else {
        return Ok((RPsi { complex: x.clone(), stabilized_at: 1 }, vec![Operator::new(); ops.len()]));
    };
    let levels: Vec<LevelComplex> = (1..=depth).map(|n| rpsi_level(x, p.pow(n as u32))).collect();
    let maps: Vec<BTreeMap<i32, Matrix>> = (1..depth)
        .map(|n| {
            let delta = p.pow(n as u32 + 1) - p.pow(n as u32);
            (lo..=hi + 1)
                .map(|k| {
                    let (a, b) = (x.term(k), x.term(k - 1));
                    let m = blocks(f, (a.dim(), b.dim()), (a.dim(), b.dim()), [Some(&a.t().pow(delta)), None, None, Some(&Matrix::identity(f, b.dim()))]);
                    (k, m)
                })
                .collect()
        })
        .collect();
    let (k, lim, frames) = stable_limit(&levels, &maps).ok_or(Error::NotStabilized { depth })?;
    let mut out = vec![Operator::new(); ops.len()];
    for (&i, s) in frames.iter().filter(|(_, s)| s.cols() > 0) {
        for (o, big) in out.iter_mut().zip(sum_ops(x, ops, i, i - 1)) {
            o.insert(i, s.solve(&big.mul(s)).expect("operators preserve the stable image"));
        }
    }
    Ok((RPsi { complex: lim, stabilized_at: k + 1 }, out))
}

/// `RΨ` of a single finite-length module placed in degree 0.
pub fn rpsi_module(m: &TModule, depth: usize) -> Result<RPsi> {
    rpsi_iwasawa(&LevelComplex::concentrated(m, 0), depth)
}

/// Level `N`: `W^k = X^{k+1} ⊕ X^k`, `d(x, y) = (−dx, t^q x + dy)`.
fn lphi_level(x: &LevelComplex, q: u64) -> LevelComplex {
    let f = x.field();
    let Some((lo, hi)) = x.range() else { return x.clone() };
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for k in lo - 1..=hi {
        let (a, b) = (x.term(k + 1), x.term(k));
        terms.insert(k, a.direct_sum(&b));
        let (a2, b2) = (x.term(k + 2), x.term(k + 1));
        let tq = a.t().pow(q);
        let d = blocks(f, (a2.dim(), b2.dim()), (a.dim(), b.dim()), [Some(&x.diff(k + 1).neg()), None, Some(&tq), Some(&x.diff(k))]);
        diffs.insert(k, d);
    }
    LevelComplex::new(x.p, terms, diffs).expect("cone of t^q").pruned()
}

/// `LΦ` of a complex of finite-length contramodules, through the cone of `t^{p^N}`.
pub fn lphi_iwasawa_complex(x: &LevelComplex, depth: usize) -> Result<RPsi> {
    Ok(lphi_with(x, &[], depth)?.0)
}

/// `LΦ` through the cone, carrying extra operators through the colimit.
pub(crate) fn lphi_with(x: &LevelComplex, ops: &[Operator], depth: usize) -> Result<(RPsi, Vec<Operator>)> {
    let f = x.field();
    let p = x.p;
    let Some((lo, hi)) = x.range() else {
        return Ok((RPsi { complex: x.clone(), stabilized_at: 1 }, vec![Operator::new(); ops.len()]));
    };
    let levels: Vec<LevelComplex> = (1..=depth).map(|n| lphi_level(x, p.pow(n as u32))).collect();
    let maps: Vec<BTreeMap<i32, Matrix>> = (1..depth)
        .map(|n| {
            let delta = p.pow(n as u32 + 1) - p.pow(n as u32);
            (lo - 1..=hi)
                .map(|k| {
                    let (a, b) = (x.term(k + 1), x.term(k));
                    let m = blocks(f, (a.dim(), b.dim()), (a.dim(), b.dim()), [Some(&Matrix::identity(f, a.dim())), None, None, Some(&b.t().pow(delta))]);
                    (k, m)
                })
                .collect()
        })
        .collect();
    let (k, colim, projections) = stable_colimit(&levels, &maps).ok_or(Error::NotStabilized { depth })?;
    let mut out = vec![Operator::new(); ops.len()];
    for (&i, q) in projections.iter().filter(|(_, q)| q.rows() > 0) {
        let sec = q.right_inverse().expect("surjective");
        for (o, big) in out.iter_mut().zip(sum_ops(x, ops, i + 1, i)) {
            o.insert(i, q.mul(&big).mul(&sec));
        }
    }
    Ok((RPsi { complex: colim, stabilized_at: k + 1 }, out))
}

/// `LΦ(P)` from the Smith resolution `0 → R^r → R^s → P → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct LPhi {
    pub smith: SmithSummary,
    /// Ranks of the resolution in degrees −1 and 0.
    pub ranks: (usize, usize),
    /// `s − r`, zero exactly for finite length.
    pub euler_characteristic: i64,
    /// Term dimensions of the level complex `C_N^r → C_N^s` at the stabilisation level.
    pub level_dims: BTreeMap<i32, usize>,
    pub stabilized_at: usize,
    /// Copies of the divisible comodule `C` in degree 0, coming from the free
    /// summand; they never stabilise in a finite level and are reported only by rank.
    pub divisible_rank: usize,
    /// Homology of the torsion part, by degree, as Jordan types.
    pub homology: BTreeMap<i32, Vec<usize>>,
    #[serde(skip)]
    pub complex: Option<LevelComplex>,
}

impl LPhi {
    /// Degrees carrying homology, the divisible summand included.
    pub fn support(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.homology.keys().copied().collect();
        if self.divisible_rank > 0 && !s.contains(&0) {
            s.push(0);
        }
        s.sort();
        s
    }
}

pub fn lphi_iwasawa(pm: &PCModule, depth: usize) -> Result<LPhi> {
    let p = pm.prime();
    let f = Field::fp(p);
    let sm = smith_form(pm);
    let es = sm.exponents.clone();
    let (r, s) = (es.len(), es.len() + sm.free_rank);
    let tower = builtin_tower(TowerKind::Zp, p, depth, Twist::Identity)?;
    let level_complex = |n: usize| -> Result<LevelComplex> {
        let c = level_regular(&tower, n)?;
        let mut term = TModule::zero(p);
        for _ in 0..r {
            term = term.direct_sum(&c);
        }
        let parts: Vec<Matrix> = es.iter().map(|&e| c.t().pow(e as u64)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        let d = Matrix::direct_sum(f, &refs);
        LevelComplex::new(p, BTreeMap::from([(-1, term.clone()), (0, term)]), BTreeMap::from([(-1, d)]))
    };
    let levels: Vec<LevelComplex> = (1..=depth).map(level_complex).collect::<Result<_>>()?;
    let maps: Vec<BTreeMap<i32, Matrix>> = (1..depth)
        .map(|n| -> Result<BTreeMap<i32, Matrix>> {
            let incl = level_inclusion(&tower, n, n + 1)?;
            let parts = vec![&incl; r];
            let m = Matrix::direct_sum(f, &parts);
            Ok(BTreeMap::from([(-1, m.clone()), (0, m)]))
        })
        .collect::<Result<_>>()?;
    // Colimit on homology, where the torsion part stabilises.
    let mut found = None;
    for k in 0..maps.len().saturating_sub(1) {
        let mut ok = true;
        let mut pieces = BTreeMap::new();
        for i in [-1, 0] {
            let (h0, h1, m0) = homology_map(&levels[k], &levels[k + 1], &maps[k], i);
            let (_, _, m1) = homology_map(&levels[k + 1], &levels[k + 2], &maps[k + 1], i);
            let k1 = m1.nullspace();
            let both = Matrix::hstack(f, h1.dim(), &[&m0, &k1]);
            if both.rank() != h1.dim() || m0.rank() + k1.cols() != h1.dim() {
                ok = false;
                break;
            }
            let (quot, _) = h0.quotient(&m0.nullspace()).expect("kernels of module maps are t-stable");
            pieces.insert(i, quot);
        }
        if ok {
            found = Some((k, pieces));
            break;
        }
    }
    let (k, pieces) = if r == 0 {
        (0, BTreeMap::new())
    } else {
        found.ok_or(Error::NotStabilized { depth })?
    };
    let n = k + 1;
    let q = tower.modulus(n) as usize;
    let complex = LevelComplex::new(p, pieces, BTreeMap::new())?;
    Ok(LPhi {
        smith: sm.summary(),
        ranks: (r, s),
        euler_characteristic: s as i64 - r as i64,
        level_dims: BTreeMap::from([(-1, r * q), (0, s * q)]),
        stabilized_at: n,
        divisible_rank: sm.free_rank,
        homology: complex.homology_types(),
        complex: Some(complex),
    })
}

/// Result of composing the two derived functors on a finite-length object.
#[derive(Clone, Debug, Serialize)]
pub struct IwasawaRoundTrip {
    pub input: Vec<usize>,
    pub homology: BTreeMap<i32, Vec<usize>>,
    #[serde(skip)]
    pub iso: Option<Matrix>,
}

impl IwasawaRoundTrip {
    /// Homology only in degree 0, isomorphic to the input by an explicit map.
    pub fn holds(&self) -> bool {
        self.homology.keys().all(|&i| i == 0) && self.iso.is_some()
    }
}

fn round_trip_from(input: &TModule, out: &LevelComplex) -> IwasawaRoundTrip {
    let h0 = out.homology_module(0);
    let iso = input.find_iso(&h0, 0x150);
    IwasawaRoundTrip { input: input.jordan_type(), homology: out.homology_types(), iso }
}

/// `RΨ ∘ LΦ` on a finite-length contramodule.
pub fn round_trip_contra(pm: &PCModule, depth: usize) -> Result<IwasawaRoundTrip> {
    let input = TModule::from_presentation(pm)?;
    let l = lphi_iwasawa(pm, depth)?;
    let lc = l.complex.expect("finite length");
    let back = rpsi_iwasawa(&lc, depth)?;
    Ok(round_trip_from(&input, &back.complex))
}

/// `LΦ ∘ RΨ` on a finite-length discrete module.
pub fn round_trip_comod(m: &TModule, depth: usize) -> Result<IwasawaRoundTrip> {
    let r = rpsi_module(m, depth)?;
    let back = lphi_iwasawa_complex(&r.complex, depth)?;
    Ok(round_trip_from(m, &back.complex))
}

/// Colimit of homology along `levels[0] → levels[1] → …`, with extra operators
/// (one list per level) carried to the colimit. Accepted at the first `k` where
/// `H(levels[k+1])` is the image of `H(levels[k])` plus the kernel onward.
pub(crate) fn homology_colimit(
    levels: &[LevelComplex],
    maps: &[BTreeMap<i32, Matrix>],
    ops: &[Vec<Operator>],
    degrees: &[i32],
) -> Option<(usize, BTreeMap<i32, (TModule, Vec<Matrix>)>)> {
    let f = levels.first()?.field();
    'level: for k in 0..maps.len().saturating_sub(1) {
        let mut pieces = BTreeMap::new();
        for &i in degrees {
            let (h0, h1, m0) = homology_map(&levels[k], &levels[k + 1], &maps[k], i);
            let (_, _, m1) = homology_map(&levels[k + 1], &levels[k + 2], &maps[k + 1], i);
            let k1 = m1.nullspace();
            let both = Matrix::hstack(f, h1.dim(), &[&m0, &k1]);
            if both.rank() != h1.dim() || m0.rank() + k1.cols() != h1.dim() {
                continue 'level;
            }
            let kernel = m0.nullspace();
            let (quot, q) = h0.quotient(&kernel).expect("kernels of module maps are t-stable");
            let induced_ops = ops[k]
                .iter()
                .map(|op| {
                    let on_h = levels[k].homology_operator(i, &op_at(op, i, levels[k].term(i).dim(), f));
                    induced(&q, &on_h)
                })
                .collect();
            if quot.dim() > 0 {
                pieces.insert(i, (quot, induced_ops));
            }
        }
        return Some((k, pieces));
    }
    None
}
