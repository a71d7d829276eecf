//! Towers of finite quotients `Z/p^n` and `(Z/p^n)^2`, their function
//! coalgebras, and the passage between finite-length `k[[t]]`-modules and
//! level comodules or contramodules.

use serde::Serialize;

use super::tmodule::TModule;
use crate::coalg::{dual_algebra, group_function_coalgebra, is_coalgebra_morphism, Algebra, Coalgebra, Side};
use crate::comod::Comodule;
use crate::contramod::Contramodule;
use crate::error::{Error, Result};
use crate::exactlin::{is_prime, Field, LinMap, Matrix, VecSpace};
use crate::group::FiniteGroup;
use crate::witness::{shape, Verdict};

/// Upper bound on the order of any level group.
pub const MAX_LEVEL_ORDER: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerKind {
    Zp,
    Zp2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Twist {
    Identity,
    /// `x ↦ −x`.
    Inversion,
    /// `(a, b) ↦ (b, a)` on `Zp2`.
    Swap,
}

impl Twist {
    pub fn parse(s: &str) -> Result<Twist> {
        match s {
            "identity" | "id" => Ok(Twist::Identity),
            "inversion" | "inv" => Ok(Twist::Inversion),
            "swap" => Ok(Twist::Swap),
            _ => Err(Error::Unsupported(format!("twist {s:?}"))),
        }
    }
}

/// Level `n` is `(Z/p^n)^d`; level 0 is the trivial group. An element of
/// level `n` is stored as `a + p^n b` with `0 ≤ a, b < p^n`.
#[derive(Clone, Debug)]
pub struct GroupTower {
    pub kind: TowerKind,
    pub p: u64,
    pub depth: usize,
    pub levels: Vec<FiniteGroup>,
    /// `surjections[n]` maps level `n + 1` onto level `n`.
    pub surjections: Vec<Vec<usize>>,
    pub twist: Twist,
    /// The twist at each level, as a permutation of the elements.
    pub twist_maps: Vec<Vec<usize>>,
}

impl GroupTower {
    pub fn rank(&self) -> usize {
        match self.kind {
            TowerKind::Zp => 1,
            TowerKind::Zp2 => 2,
        }
    }

    pub fn field(&self) -> Field {
        Field::fp(self.p)
    }

    pub fn modulus(&self, n: usize) -> u64 {
        self.p.pow(n as u32)
    }

    /// Index of the element with coordinates `coords` at level `n`.
    pub fn element(&self, n: usize, coords: &[u64]) -> usize {
        let q = self.modulus(n);
        let mut idx = 0;
        for &c in coords.iter().rev() {
            idx = idx * q + (c % q);
        }
        idx as usize
    }

    pub fn coordinates(&self, n: usize, g: usize) -> Vec<u64> {
        let q = self.modulus(n);
        let mut g = g as u64;
        (0..self.rank())
            .map(|_| {
                let c = g % q;
                g /= q;
                c
            })
            .collect()
    }

    pub fn name(&self) -> String {
        let base = match self.kind {
            TowerKind::Zp => format!("Z_{}", self.p),
            TowerKind::Zp2 => format!("Z_{}^2", self.p),
        };
        match self.twist {
            Twist::Identity => base,
            Twist::Inversion => format!("{base} (inversion)"),
            Twist::Swap => format!("{base} (swap)"),
        }
    }
}

/// The cyclic tower `Z/p ← Z/p^2 ← …` or its square, with a twist.
pub fn builtin_tower(kind: TowerKind, p: u64, depth: usize, twist: Twist) -> Result<GroupTower> {
    if !is_prime(p) {
        return Err(Error::InvalidField(p));
    }
    if depth == 0 {
        return Err(Error::Precondition("tower depth must be at least 1".into()));
    }
    let d = match kind {
        TowerKind::Zp => 1,
        TowerKind::Zp2 => 2,
    };
    if twist == Twist::Swap && kind != TowerKind::Zp2 {
        return Err(Error::Unsupported("swap twist needs the rank-two tower".into()));
    }
    match p.checked_pow((depth * d) as u32) {
        Some(o) if o <= MAX_LEVEL_ORDER => {}
        _ => return Err(Error::Unsupported(format!("level order p^{} exceeds {MAX_LEVEL_ORDER}", depth * d))),
    }
    let mut tower = GroupTower { kind, p, depth, levels: Vec::new(), surjections: Vec::new(), twist, twist_maps: Vec::new() };
    for n in 0..=depth {
        let q = p.pow(n as u32);
        let order = q.pow(d as u32) as usize;
        let table: Vec<Vec<usize>> = (0..order)
            .map(|x| {
                (0..order)
                    .map(|y| {
                        let (a, b) = (tower.coordinates(n, x), tower.coordinates(n, y));
                        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % q).collect();
                        tower.element(n, &s)
                    })
                    .collect()
            })
            .collect();
        let name = if d == 1 { format!("Z/{q}") } else { format!("(Z/{q})^2") };
        tower.levels.push(FiniteGroup::from_table(&name, table)?);
        let tw: Vec<usize> = (0..order)
            .map(|x| {
                let c = tower.coordinates(n, x);
                let image: Vec<u64> = match twist {
                    Twist::Identity => c,
                    Twist::Inversion => c.iter().map(|&u| (q - u) % q).collect(),
                    Twist::Swap => vec![c[1], c[0]],
                };
                tower.element(n, &image)
            })
            .collect();
        tower.twist_maps.push(tw);
    }
    for n in 0..depth {
        let order = tower.levels[n + 1].order();
        let s = (0..order).map(|x| tower.element(n, &tower.coordinates(n + 1, x))).collect();
        tower.surjections.push(s);
    }
    Ok(tower)
}

/// Surjections are homomorphisms onto their targets; twists are automorphisms
/// commuting with the surjections.
pub fn check_tower(t: &GroupTower) -> Verdict {
    for (n, s) in t.surjections.iter().enumerate() {
        let (g, h) = (&t.levels[n + 1], &t.levels[n]);
        for a in 0..g.order() {
            for b in 0..g.order() {
                if s[g.mul(a, b)] != h.mul(s[a], s[b]) {
                    return Err(shape("level surjection is a homomorphism", &format!("level {}", n + 1)));
                }
            }
        }
        let mut hit = vec![false; h.order()];
        s.iter().for_each(|&x| hit[x] = true);
        if hit.contains(&false) {
            return Err(shape("level map is surjective", &format!("level {}", n + 1)));
        }
    }
    for (n, phi) in t.twist_maps.iter().enumerate() {
        let g = &t.levels[n];
        let mut seen = vec![false; g.order()];
        phi.iter().for_each(|&x| seen[x] = true);
        if seen.contains(&false) {
            return Err(shape("twist is bijective", &format!("level {n}")));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if phi[g.mul(a, b)] != g.mul(phi[a], phi[b]) {
                    return Err(shape("twist is a homomorphism", &format!("level {n}")));
                }
            }
        }
        if n < t.depth {
            let s = &t.surjections[n];
            let up = &t.twist_maps[n + 1];
            if (0..t.levels[n + 1].order()).any(|x| s[up[x]] != phi[s[x]]) {
                return Err(shape("twist commutes with the level map", &format!("level {}", n + 1)));
            }
        }
    }
    Ok(())
}

fn require_level(t: &GroupTower, n: usize) -> Result<()> {
    if n > t.depth {
        return Err(Error::Precondition(format!("level {n} exceeds tower depth {}", t.depth)));
    }
    Ok(())
}

/// `C_n = k(H/U_n)` and the inclusion `C_{n−1} ↪ C_n`, `δ_h ↦ Σ_{s(g) = h} δ_g`.
pub fn ind_coalgebra_level(t: &GroupTower, n: usize) -> Result<(Coalgebra, LinMap)> {
    require_level(t, n)?;
    if n == 0 {
        let c = level_coalgebra(t, 0)?;
        return Ok((c.clone(), LinMap::identity(c.space())));
    }
    let (lo, hi) = (level_coalgebra(t, n - 1)?, level_coalgebra(t, n)?);
    let s = &t.surjections[n - 1];
    let m = Matrix::from_fn(t.field(), hi.dim(), lo.dim(), |g, h| i64::from(s[g] == h));
    let incl = LinMap::from_parts(lo.space(), hi.space(), m);
    Ok((hi, incl))
}

pub fn level_coalgebra(t: &GroupTower, n: usize) -> Result<Coalgebra> {
    require_level(t, n)?;
    Ok(group_function_coalgebra(&t.levels[n], t.field()))
}

/// Checks that the level inclusion is a coalgebra morphism.
pub fn check_inclusion(t: &GroupTower, n: usize) -> Result<Verdict> {
    let (hi, incl) = ind_coalgebra_level(t, n)?;
    let lo = level_coalgebra(t, n.saturating_sub(1))?;
    Ok(is_coalgebra_morphism(&lo, &hi, &incl))
}

/// `k[H/U_n]` (the dual of `C_n`) with its augmentation ideal.
#[derive(Clone, Debug)]
pub struct IwasawaTruncation {
    pub tower: GroupTower,
    pub level: usize,
    pub algebra: Algebra,
    /// Columns span `ker(Σ a_g g ↦ Σ a_g)`, spanned by `g − e`.
    pub augmentation_ideal: Matrix,
}

pub fn iwasawa_truncation(t: &GroupTower, n: usize) -> Result<IwasawaTruncation> {
    let c = level_coalgebra(t, n)?;
    let algebra = dual_algebra(&c)?;
    let g = &t.levels[n];
    let e = g.identity();
    let f = t.field();
    let cols: Vec<Matrix> = (0..g.order())
        .filter(|&x| x != e)
        .map(|x| {
            let mut v = Matrix::zeros(f, g.order(), 1);
            v.set_int(x, 0, 1);
            v.set_int(e, 0, -1);
            v
        })
        .collect();
    let augmentation_ideal = Matrix::from_columns(f, g.order(), &cols);
    Ok(IwasawaTruncation { tower: t.clone(), level: n, algebra, augmentation_ideal })
}

fn operator_of(t: &GroupTower, n: usize, m: &TModule, g: usize) -> Matrix {
    let f = t.field();
    let gamma = Matrix::identity(f, m.dim()).add(m.t());
    gamma.pow(t.coordinates(n, g)[0])
}

fn require_cyclic_level(t: &GroupTower, n: usize, m: &TModule) -> Result<()> {
    require_level(t, n)?;
    if t.kind != TowerKind::Zp {
        return Err(Error::Unsupported("level structures need the cyclic tower".into()));
    }
    if m.prime() != t.p {
        return Err(Error::FieldMismatch(Field::fp(t.p), m.field()));
    }
    if (m.nilpotency() as u64) > t.modulus(n) {
        return Err(Error::Precondition(format!("module does not live at level {n}")));
    }
    Ok(())
}

/// The contramodule over `C_n` with `π_g = (1 + t)^g`.
pub fn level_contramodule(t: &GroupTower, n: usize, m: &TModule) -> Result<Contramodule> {
    require_cyclic_level(t, n, m)?;
    let c = level_coalgebra(t, n)?;
    let coeffs: Vec<Matrix> = (0..c.dim()).map(|g| operator_of(t, n, m, g)).collect();
    Ok(Contramodule::from_coefficients(&c, VecSpace::named(t.field(), "p", m.dim()), &coeffs))
}

/// The comodule over `C_n` whose dual action is `g ↦ (1 + t)^g`.
pub fn level_comodule(t: &GroupTower, n: usize, m: &TModule, side: Side) -> Result<Comodule> {
    require_cyclic_level(t, n, m)?;
    let c = level_coalgebra(t, n)?;
    let coeffs: Vec<Matrix> = (0..c.dim()).map(|g| operator_of(t, n, m, g)).collect();
    Ok(Comodule::from_coefficients(&c, VecSpace::named(t.field(), "n", m.dim()), side, &coeffs))
}

/// Reads `t = π_1 − 1` back off a contramodule over a cyclic level.
pub fn contramodule_to_tmodule(t: &GroupTower, n: usize, p: &Contramodule) -> Result<TModule> {
    require_level(t, n)?;
    let one = t.element(n, &[1]);
    let pi = &p.coefficients()[one];
    TModule::new(t.p, pi.sub(&Matrix::identity(t.field(), p.dim())))
}

/// `C_n` itself as a `k[[t]]`-module: the right regular comodule.
pub fn level_regular(t: &GroupTower, n: usize) -> Result<TModule> {
    let c = level_coalgebra(t, n)?;
    let reg = Comodule::regular(&c, Side::Right);
    let one = t.element(n, &[1]);
    let b = &reg.coefficients()[one];
    TModule::new(t.p, b.sub(&Matrix::identity(t.field(), c.dim())))
}

/// The level inclusion `C_n ↪ C_{n'}` as a map of modules.
pub fn level_inclusion(t: &GroupTower, n: usize, n2: usize) -> Result<Matrix> {
    require_level(t, n2)?;
    let f = t.field();
    let mut m = Matrix::identity(f, t.levels[n].order());
    for k in n + 1..=n2 {
        let (_, incl) = ind_coalgebra_level(t, k)?;
        m = incl.matrix.mul(&m);
    }
    Ok(m)
}
