//! The functors `Ψ(M) = Hom_C(C, M)` and `Φ(P) = C ⊙_C P` between left
//! comodules and left contramodules, their derived functors through explicit
//! (co)resolutions, and homological dimension.
//!
//! `Ψ(M)` is stored as a subcontramodule of the free contramodule
//! `Hom_k(C, M)`; `Φ(P)` as a quotient of the cofree comodule `C ⊗ P`. Both
//! functors act on morphisms by restriction and descent.

use std::collections::{BTreeMap, HashMap};

use crate::coalg::{Coalgebra, Side};
use crate::comod::{
    check_morphism as check_comod_morphism, cofree, comodule_hom, injective_coresolution, is_injective,
    simple_subcomodule_basis, Comodule,
};
use crate::contramod::{
    check_morphism as check_contra_morphism, free_contra, is_projective, projective_resolution, Contramodule,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    factor_through_injection, factor_through_surjection, hom_post, hom_vec, LinMap, Matrix, VecSpace,
};
use crate::homcx::{is_quasi_iso, ChainMap, Complex, Decoration, QuasiIso};
use crate::witness::{shape, Verdict};

/// `Ψ(M)` together with its embedding into `Hom_k(C, M)`.
pub fn psi_embedded(m: &Comodule) -> Result<(Contramodule, LinMap)> {
    require_left(m)?;
    let c = m.coalgebra();
    let f = m.field();
    let (_, maps) = comodule_hom(&Comodule::regular(c, Side::Left), m)?;
    let free = free_contra(c, m.space())?;
    let cols: Vec<Matrix> = maps.iter().map(hom_vec).collect();
    let basis = Matrix::from_columns(f, free.dim(), &cols);
    let (sub, incl) = free.subcontramodule(&basis)?;
    let sub = sub.relabel("ψ");
    let incl = LinMap::from_parts(sub.space(), free.space(), incl.matrix);
    Ok((sub, incl))
}

pub fn psi(m: &Comodule) -> Result<Contramodule> {
    Ok(psi_embedded(m)?.0)
}

/// `Ψ(g) : Ψ(M) -> Ψ(N)`, post-composition with `g`.
pub fn psi_map(m: &Comodule, n: &Comodule, g: &LinMap) -> Result<LinMap> {
    let (_, im) = psi_embedded(m)?;
    let (_, inn) = psi_embedded(n)?;
    psi_map_with(m.coalgebra().space(), &im, &inn, g)
}

fn psi_map_with(c: &VecSpace, im: &LinMap, inn: &LinMap, g: &LinMap) -> Result<LinMap> {
    let post = hom_post(c, g);
    let through = LinMap::from_parts(&im.domain, &post.codomain, post.matrix.mul(&im.matrix));
    factor_through_injection(&through, inn)
        .ok_or_else(|| Error::Precondition("map is not a comodule morphism".into()))
}

/// `Φ(P)` together with the projection from the cofree comodule `C ⊗ P`.
pub fn phi_presented(p: &Contramodule) -> Result<(Comodule, LinMap)> {
    let c = p.coalgebra();
    let cof = cofree(c, p.space())?;
    let rel = crate::contramod::contratensor_relations(&Comodule::regular(c, Side::Right), p)?;
    let (quo, proj) = cof.quotient(&rel.matrix.column_basis())?;
    let quo = quo.relabel("φ");
    let proj = LinMap::from_parts(cof.space(), quo.space(), proj.matrix);
    Ok((quo, proj))
}

pub fn phi(p: &Contramodule) -> Result<Comodule> {
    Ok(phi_presented(p)?.0)
}

/// `Φ(g) : Φ(P) -> Φ(Q)`, induced by `id_C ⊗ g`.
pub fn phi_map(p: &Contramodule, q: &Contramodule, g: &LinMap) -> Result<LinMap> {
    let (_, pp) = phi_presented(p)?;
    let (_, pq) = phi_presented(q)?;
    phi_map_with(p.coalgebra().dim(), &pp, &pq, g)
}

fn phi_map_with(n: usize, pp: &LinMap, pq: &LinMap, g: &LinMap) -> Result<LinMap> {
    let lifted = Matrix::identity(g.field(), n).kron(&g.matrix);
    let through = LinMap::from_parts(&pp.domain, &pq.codomain, pq.matrix.mul(&lifted));
    factor_through_surjection(&through, pp)
        .ok_or_else(|| Error::Precondition("map is not a contramodule morphism".into()))
}

/// The counit `Φ(Ψ(M)) -> M`, `[c ⊗ f] ↦ f(c)`.
pub fn counit(m: &Comodule) -> Result<LinMap> {
    let (ps, emb) = psi_embedded(m)?;
    let (_, proj) = phi_presented(&ps)?;
    Ok(counit_with(m, &emb, &proj))
}

fn counit_with(m: &Comodule, emb: &LinMap, proj: &LinMap) -> LinMap {
    let f = m.field();
    let n = m.coalgebra().dim();
    let (d, dpsi) = (m.dim(), emb.domain.dim());
    let mut ev = Matrix::zeros(f, d, n * dpsi);
    for i in 0..n {
        for j in 0..dpsi {
            for r in 0..d {
                if !emb.matrix.is_zero_at(r * n + i, j) {
                    ev.set(r, i * dpsi + j, emb.matrix.get(r * n + i, j));
                }
            }
        }
    }
    let ev = LinMap::from_parts(&proj.domain, m.space(), ev);
    factor_through_surjection(&ev, proj).expect("evaluation kills the contratensor relations")
}

/// The unit `P -> Ψ(Φ(P))`, `p ↦ (c ↦ [c ⊗ p])`.
pub fn unit(p: &Contramodule) -> Result<LinMap> {
    let (ph, proj) = phi_presented(p)?;
    let (_, emb) = psi_embedded(&ph)?;
    Ok(unit_with(p, &proj, &emb))
}

fn unit_with(p: &Contramodule, proj: &LinMap, emb: &LinMap) -> LinMap {
    let f = p.field();
    let n = p.coalgebra().dim();
    let (d, dphi) = (p.dim(), proj.codomain.dim());
    let mut h = Matrix::zeros(f, n * dphi, d);
    for s in 0..d {
        for i in 0..n {
            for r in 0..dphi {
                if !proj.matrix.is_zero_at(r, i * d + s) {
                    h.set(r * n + i, s, proj.matrix.get(r, i * d + s));
                }
            }
        }
    }
    let h = LinMap::from_parts(p.space(), &emb.codomain, h);
    factor_through_injection(&h, emb).expect("c ↦ [c ⊗ p] is a comodule map")
}

/// The explicit isomorphism `Hom_k(C, V) -> Ψ(C ⊗ V)`, `F ↦ (id ⊗ F) ∘ Δ`.
pub fn psi_cofree_iso(c: &Coalgebra, v: &VecSpace) -> Result<LinMap> {
    let f = c.field();
    let n = c.dim();
    let free = free_contra(c, v)?;
    let cof = cofree(c, v)?;
    let (target, emb) = psi_embedded(&cof)?;
    let delta = &c.comult().matrix;
    let mut cols = Vec::with_capacity(free.dim());
    for col in 0..free.dim() {
        let fmap = crate::exactlin::hom_unvec(&Matrix::identity(f, free.dim()), col, c.space(), v);
        let g = Matrix::identity(f, n).kron(&fmap.matrix).mul(delta);
        cols.push(hom_vec(&LinMap::from_parts(c.space(), cof.space(), g)));
    }
    let img = LinMap::from_parts(free.space(), &emb.codomain, Matrix::from_columns(f, emb.codomain.dim(), &cols));
    let iso = factor_through_injection(&img, &emb).ok_or_else(|| Error::Axiom("(id ⊗ F)Δ is not colinear".into()))?;
    Ok(LinMap::from_parts(free.space(), target.space(), iso.matrix))
}

/// The explicit isomorphism `Φ(Hom_k(C, V)) -> C ⊗ V`, `[c ⊗ F] ↦ c₁ ⊗ F(c₂)`.
pub fn phi_free_iso(c: &Coalgebra, v: &VecSpace) -> Result<LinMap> {
    let f = c.field();
    let (n, dv) = (c.dim(), v.dim());
    let free = free_contra(c, v)?;
    let cof = cofree(c, v)?;
    let (_, proj) = phi_presented(&free)?;
    let delta = &c.comult().matrix;
    let dh = free.dim();
    let mut m = Matrix::zeros(f, n * dv, n * dh);
    for k in 0..n {
        for col in 0..dh {
            // F = E_{r,b}: c_b ↦ v_r, coordinate r·n + b.
            let (r, b) = (col / n, col % n);
            for a in 0..n {
                let x = delta.get(a * n + b, k);
                if !x.is_zero() {
                    m.add_at(a * dv + r, k * dh + col, &x);
                }
            }
        }
    }
    let map = LinMap::from_parts(&proj.domain, cof.space(), m);
    factor_through_surjection(&map, &proj).ok_or_else(|| Error::Axiom("c₁ ⊗ F(c₂) ignores a relation".into()))
}

/// Input to [`phi_psi_unit_counit`].
#[derive(Clone, Debug)]
pub enum Object {
    Comodule(Comodule),
    Contramodule(Contramodule),
}

/// On an injective comodule checks that the counit `Φ(Ψ(M)) -> M` is an
/// isomorphism of comodules; on a projective contramodule, that the unit
/// `P -> Ψ(Φ(P))` is one. Other inputs are rejected.
pub fn phi_psi_unit_counit(x: &Object) -> Result<Verdict> {
    match x {
        Object::Comodule(m) => {
            require_left(m)?;
            if !is_injective(m)? {
                return Err(Error::Precondition("comodule is not injective".into()));
            }
            let (ps, emb) = psi_embedded(m)?;
            let (ph, proj) = phi_presented(&ps)?;
            let e = counit_with(m, &emb, &proj);
            if let Err(w) = check_comod_morphism(&ph, m, &e) {
                return Ok(Err(w));
            }
            Ok(if e.is_iso() { Ok(()) } else { Err(shape("counit is an isomorphism", &rank_note(&e))) })
        }
        Object::Contramodule(p) => {
            if !is_projective(p)? {
                return Err(Error::Precondition("contramodule is not projective".into()));
            }
            let (ph, proj) = phi_presented(p)?;
            let (ps, emb) = psi_embedded(&ph)?;
            let u = unit_with(p, &proj, &emb);
            if let Err(w) = check_contra_morphism(p, &ps, &u) {
                return Ok(Err(w));
            }
            Ok(if u.is_iso() { Ok(()) } else { Err(shape("unit is an isomorphism", &rank_note(&u))) })
        }
    }
}

fn rank_note(f: &LinMap) -> String {
    format!("rank {} for a {}x{} map", f.matrix.rank(), f.codomain.dim(), f.domain.dim())
}

/// The bijection `Hom_C(Φ(P), M) -> Hom^C(P, Ψ(M))`, `g ↦ Ψ(g) ∘ η_P`,
/// checked to land in morphisms, to be injective, and to hit a space of the
/// same dimension as the independently computed `Hom^C(P, Ψ(M))`.
pub fn adjunction_phi_psi(p: &Contramodule, m: &Comodule) -> Result<Verdict> {
    let f = p.field();
    let (ph, proj) = phi_presented(p)?;
    let (_, emb_ph) = psi_embedded(&ph)?;
    let eta = unit_with(p, &proj, &emb_ph);
    let (ps_m, emb_m) = psi_embedded(m)?;
    let (_, left) = comodule_hom(&ph, m)?;
    let (_, right) = crate::contramod::contra_hom(p, &ps_m)?;
    let mut images = Vec::with_capacity(left.len());
    for g in &left {
        let pg = psi_map_with(p.coalgebra().space(), &emb_ph, &emb_m, g)?;
        let h = pg.then_after(&eta);
        if let Err(w) = check_contra_morphism(p, &ps_m, &h) {
            return Ok(Err(w));
        }
        images.push(hom_vec(&h));
    }
    let rank = Matrix::from_columns(f, p.dim() * ps_m.dim(), &images).rank();
    if rank != left.len() || rank != right.len() {
        return Ok(Err(shape(
            "Φ ⊣ Ψ bijection",
            &format!("rank {rank}, dim Hom_C(ΦP, M) = {}, dim Hom^C(P, ΨM) = {}", left.len(), right.len()),
        )));
    }
    Ok(Ok(()))
}

/// `LΦ(P)`: `Φ` applied to the canonical free resolution, in degrees `[-n, 0]`.
pub fn derived_phi(p: &Contramodule, cap: usize) -> Result<Complex> {
    let res = projective_resolution(p, cap)?;
    apply_phi(&res.complex)
}

/// `RΨ(M)`: `Ψ` applied to the canonical injective coresolution, in degrees `[0, n]`.
pub fn derived_psi(m: &Comodule, cap: usize) -> Result<Complex> {
    require_left(m)?;
    let res = injective_coresolution(m, cap)?;
    apply_psi(&res.complex)
}

/// Termwise `Φ` on a complex decorated by contramodules.
pub fn apply_phi(x: &Complex) -> Result<Complex> {
    let f = x.field();
    let mut n0 = 0;
    let mut terms = BTreeMap::new();
    let mut deco = BTreeMap::new();
    let mut projs = BTreeMap::new();
    for i in x.degrees() {
        let p = contra_at(x, i)?;
        n0 = p.coalgebra().dim();
        let (ph, proj) = phi_presented(&p)?;
        terms.insert(i, ph.space().clone());
        deco.insert(i, Decoration::Comodule(ph));
        projs.insert(i, proj);
    }
    let mut diffs = BTreeMap::new();
    for i in x.degrees() {
        if let (Some(a), Some(b)) = (projs.get(&i), projs.get(&(i + 1))) {
            diffs.insert(i, phi_map_with(n0, a, b, &x.diff(i))?);
        }
    }
    Complex::new(f, terms, diffs)?.with_decoration(deco)
}

/// Termwise `Ψ` on a complex decorated by left comodules.
pub fn apply_psi(x: &Complex) -> Result<Complex> {
    let f = x.field();
    let mut m0 = VecSpace::zero(f);
    let mut terms = BTreeMap::new();
    let mut deco = BTreeMap::new();
    let mut embs = BTreeMap::new();
    for i in x.degrees() {
        let m = comod_at(x, i)?;
        m0 = m.coalgebra().space().clone();
        let (ps, emb) = psi_embedded(&m)?;
        terms.insert(i, ps.space().clone());
        deco.insert(i, Decoration::Contramodule(ps));
        embs.insert(i, emb);
    }
    let mut diffs = BTreeMap::new();
    for i in x.degrees() {
        if let (Some(a), Some(b)) = (embs.get(&i), embs.get(&(i + 1))) {
            diffs.insert(i, psi_map_with(&m0, a, b, &x.diff(i))?);
        }
    }
    Complex::new(f, terms, diffs)?.with_decoration(deco)
}

fn comod_at(x: &Complex, i: i32) -> Result<Comodule> {
    match x.decoration(i) {
        Some(Decoration::Comodule(m)) => Ok(m.clone()),
        _ => Err(Error::Precondition(format!("term {i} is not decorated by a comodule"))),
    }
}

fn contra_at(x: &Complex, i: i32) -> Result<Contramodule> {
    match x.decoration(i) {
        Some(Decoration::Contramodule(p)) => Ok(p.clone()),
        _ => Err(Error::Precondition(format!("term {i} is not decorated by a contramodule"))),
    }
}

/// Canonical coresolution of fixed length `L`: `K_0 = M`, `J^i = C ⊗ K_i`
/// and `K_{i+1} = J^i / K_i` for `i < L`, and `J^L = K_L`, which must be
/// injective. Every step is functorial in `M`.
struct FixedCoresolution {
    j: Vec<Comodule>,
    /// `K_i -> J^i`.
    emb: Vec<LinMap>,
    /// `J^i -> K_{i+1}`, for `i < L`.
    proj: Vec<LinMap>,
}

fn fixed_coresolution(m: &Comodule, len: usize) -> Result<FixedCoresolution> {
    let c = m.coalgebra();
    let mut j = Vec::new();
    let mut emb = Vec::new();
    let mut proj = Vec::new();
    let mut k = m.clone();
    for _ in 0..len {
        let cof = cofree(c, k.space())?;
        let e = LinMap::from_parts(k.space(), cof.space(), k.coaction().matrix.clone());
        let (q, pr) = cof.quotient(&e.matrix)?;
        j.push(cof);
        emb.push(e);
        proj.push(pr);
        k = q;
    }
    if !is_injective(&k)? {
        return Err(Error::CapExceeded { cap: len, last_dim: k.dim() });
    }
    emb.push(LinMap::identity(k.space()));
    j.push(k);
    Ok(FixedCoresolution { j, emb, proj })
}

/// Components `J^i(g)` of the map induced by a comodule morphism `g`.
fn lift_coresolution(a: &FixedCoresolution, b: &FixedCoresolution, g: &LinMap) -> Vec<LinMap> {
    let len = a.j.len() - 1;
    let f = g.field();
    let mut out = Vec::new();
    let mut k = g.clone();
    for i in 0..len {
        let n = a.j[i].coalgebra().dim();
        let ji = LinMap::from_parts(a.j[i].space(), b.j[i].space(), Matrix::identity(f, n).kron(&k.matrix));
        let through = b.proj[i].then_after(&ji);
        k = factor_through_surjection(&through, &a.proj[i]).expect("naturality of the cokernel");
        out.push(ji);
    }
    out.push(LinMap::from_parts(a.j[len].space(), b.j[len].space(), k.matrix));
    out
}

/// Canonical resolution of fixed length `L`: `K_0 = P`, `F_i = Hom_k(C, K_i)`
/// and `K_{i+1} = ker(F_i -> K_i)` for `i < L`, and `F_L = K_L`, which must
/// be projective.
struct FixedResolution {
    fr: Vec<Contramodule>,
    /// `F_i -> K_i`.
    cover: Vec<LinMap>,
    /// `K_{i+1} -> F_i`, for `i < L`.
    incl: Vec<LinMap>,
}

fn fixed_resolution(p: &Contramodule, len: usize) -> Result<FixedResolution> {
    let c = p.coalgebra();
    let mut fr = Vec::new();
    let mut cover = Vec::new();
    let mut incl = Vec::new();
    let mut k = p.clone();
    for _ in 0..len {
        let free = free_contra(c, k.space())?;
        let cv = LinMap::from_parts(free.space(), k.space(), k.contraaction().matrix.clone());
        let (ker, inc) = free.subcontramodule(&cv.matrix.nullspace())?;
        fr.push(free);
        cover.push(cv);
        incl.push(inc);
        k = ker;
    }
    if !is_projective(&k)? {
        return Err(Error::CapExceeded { cap: len, last_dim: k.dim() });
    }
    cover.push(LinMap::identity(k.space()));
    fr.push(k);
    Ok(FixedResolution { fr, cover, incl })
}

fn lift_resolution(a: &FixedResolution, b: &FixedResolution, g: &LinMap) -> Vec<LinMap> {
    let len = a.fr.len() - 1;
    let mut out = Vec::new();
    let mut k = g.clone();
    for i in 0..len {
        let c = a.fr[i].coalgebra().space().clone();
        let post = hom_post(&c, &k);
        let fi = LinMap::from_parts(a.fr[i].space(), b.fr[i].space(), post.matrix);
        let through = fi.then_after(&a.incl[i]);
        k = factor_through_injection(&through, &b.incl[i]).expect("naturality of the kernel");
        out.push(fi);
    }
    out.push(LinMap::from_parts(a.fr[len].space(), b.fr[len].space(), k.matrix));
    out
}

/// A complex replaced by a quasi-isomorphic one, with the comparison map.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub complex: Complex,
    /// `X -> Tot` for injective replacements, `Tot -> X` for projective ones.
    pub comparison: ChainMap,
    /// Per-term resolution length used.
    pub length: usize,
}

fn sum_comodules(c: &Coalgebra, parts: &[&Comodule]) -> Result<Comodule> {
    let mut acc = Comodule::zero(c, Side::Left);
    for p in parts {
        acc = acc.direct_sum(p)?;
    }
    Ok(acc)
}

fn sum_contramodules(c: &Coalgebra, parts: &[&Contramodule]) -> Result<Contramodule> {
    let mut acc = Contramodule::zero(c);
    for p in parts {
        acc = acc.direct_sum(p)?;
    }
    Ok(acc)
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len());
    let mut s = 0;
    for d in dims {
        o.push(s);
        s += d;
    }
    o
}

/// Total complex of the canonical injective coresolutions of the terms of a
/// bounded complex of left comodules, with the coaugmentation `X -> Tot`.
/// The length is the largest minimal coresolution length of a term.
pub fn injective_replacement(x: &Complex, c: &Coalgebra, cap: usize) -> Result<Replacement> {
    let f = x.field();
    let degs = x.degrees();
    let mut len = 0;
    let mut objs = BTreeMap::new();
    for &q in &degs {
        let m = comod_at(x, q)?;
        len = len.max(injective_coresolution(&m, cap)?.length);
        objs.insert(q, m);
    }
    let res: BTreeMap<i32, FixedCoresolution> =
        objs.iter().map(|(&q, m)| Ok((q, fixed_coresolution(m, len)?))).collect::<Result<_>>()?;
    let lifts: BTreeMap<i32, Vec<LinMap>> = degs
        .iter()
        .filter(|q| res.contains_key(&(**q + 1)))
        .map(|&q| (q, lift_coresolution(&res[&q], &res[&(q + 1)], &x.diff(q))))
        .collect();
    let (lo, hi) = match (degs.first(), degs.last()) {
        (Some(&a), Some(&b)) => (a, b + len as i32),
        _ => return Ok(Replacement { complex: x.clone(), comparison: ChainMap::identity(x), length: 0 }),
    };
    // Tot^n = ⊕_q J^{n-q}(X^q), ordered by q.
    let pieces = |n: i32| -> Vec<(i32, usize)> {
        degs.iter().filter_map(|&q| {
            let p = n - q;
            (p >= 0 && p as usize <= len).then_some((q, p as usize))
        }).collect()
    };
    let mut terms = BTreeMap::new();
    let mut deco = BTreeMap::new();
    for n in lo..=hi {
        let parts: Vec<&Comodule> = pieces(n).iter().map(|&(q, p)| &res[&q].j[p]).collect();
        let sum = sum_comodules(c, &parts)?.relabel(&format!("T{n}_"));
        terms.insert(n, sum.space().clone());
        deco.insert(n, Decoration::Comodule(sum));
    }
    let mut diffs = BTreeMap::new();
    for n in lo..hi {
        let src = pieces(n);
        let dst = pieces(n + 1);
        let so = offsets(&src.iter().map(|&(q, p)| res[&q].j[p].dim()).collect::<Vec<_>>());
        let to = offsets(&dst.iter().map(|&(q, p)| res[&q].j[p].dim()).collect::<Vec<_>>());
        let mut m = Matrix::zeros(f, terms[&(n + 1)].dim(), terms[&n].dim());
        for (s, &(q, p)) in src.iter().enumerate() {
            let r = &res[&q];
            for (t, &(q2, p2)) in dst.iter().enumerate() {
                if q2 == q && p2 == p + 1 {
                    let h = r.emb[p + 1].matrix.mul(&r.proj[p].matrix);
                    m.set_block(to[t], so[s], &h);
                } else if q2 == q + 1 && p2 == p {
                    let v = lifts[&q][p].matrix.clone();
                    let v = if p % 2 == 1 { v.neg() } else { v };
                    m.set_block(to[t], so[s], &v);
                }
            }
        }
        diffs.insert(n, LinMap::from_parts(&terms[&n], &terms[&(n + 1)], m));
    }
    let tot = Complex::new(f, terms, diffs)?.with_decoration(deco)?;
    let mut comps = BTreeMap::new();
    for &q in &degs {
        let src = pieces(q);
        let to = offsets(&src.iter().map(|&(q2, p)| res[&q2].j[p].dim()).collect::<Vec<_>>());
        let slot = src.iter().position(|&(q2, p)| q2 == q && p == 0).expect("J^0 piece");
        let mut m = Matrix::zeros(f, tot.term(q).dim(), x.term(q).dim());
        m.set_block(to[slot], 0, &res[&q].emb[0].matrix);
        comps.insert(q, LinMap::from_parts(&x.term(q), &tot.term(q), m));
    }
    let comparison = ChainMap::new(x.clone(), tot.clone(), comps)?;
    Ok(Replacement { complex: tot, comparison, length: len })
}

/// Total complex of the canonical free resolutions of the terms of a bounded
/// complex of contramodules, with the augmentation `Tot -> X`.
pub fn projective_replacement(x: &Complex, c: &Coalgebra, cap: usize) -> Result<Replacement> {
    let f = x.field();
    let degs = x.degrees();
    let mut len = 0;
    let mut objs = BTreeMap::new();
    for &q in &degs {
        let p = contra_at(x, q)?;
        len = len.max(projective_resolution(&p, cap)?.length);
        objs.insert(q, p);
    }
    let res: BTreeMap<i32, FixedResolution> =
        objs.iter().map(|(&q, p)| Ok((q, fixed_resolution(p, len)?))).collect::<Result<_>>()?;
    let lifts: BTreeMap<i32, Vec<LinMap>> = degs
        .iter()
        .filter(|q| res.contains_key(&(**q + 1)))
        .map(|&q| (q, lift_resolution(&res[&q], &res[&(q + 1)], &x.diff(q))))
        .collect();
    let (lo, hi) = match (degs.first(), degs.last()) {
        (Some(&a), Some(&b)) => (a - len as i32, b),
        _ => return Ok(Replacement { complex: x.clone(), comparison: ChainMap::identity(x), length: 0 }),
    };
    // Tot^n = ⊕_q F_{q-n}(X^q), ordered by q.
    let pieces = |n: i32| -> Vec<(i32, usize)> {
        degs.iter().filter_map(|&q| {
            let p = q - n;
            (p >= 0 && p as usize <= len).then_some((q, p as usize))
        }).collect()
    };
    let mut terms = BTreeMap::new();
    let mut deco = BTreeMap::new();
    for n in lo..=hi {
        let parts: Vec<&Contramodule> = pieces(n).iter().map(|&(q, p)| &res[&q].fr[p]).collect();
        let sum = sum_contramodules(c, &parts)?.relabel(&format!("T{n}_"));
        terms.insert(n, sum.space().clone());
        deco.insert(n, Decoration::Contramodule(sum));
    }
    let mut diffs = BTreeMap::new();
    for n in lo..hi {
        let src = pieces(n);
        let dst = pieces(n + 1);
        let so = offsets(&src.iter().map(|&(q, p)| res[&q].fr[p].dim()).collect::<Vec<_>>());
        let to = offsets(&dst.iter().map(|&(q, p)| res[&q].fr[p].dim()).collect::<Vec<_>>());
        let mut m = Matrix::zeros(f, terms[&(n + 1)].dim(), terms[&n].dim());
        for (s, &(q, p)) in src.iter().enumerate() {
            let r = &res[&q];
            for (t, &(q2, p2)) in dst.iter().enumerate() {
                if q2 == q && p2 + 1 == p {
                    let h = r.incl[p2].matrix.mul(&r.cover[p].matrix);
                    m.set_block(to[t], so[s], &h);
                } else if q2 == q + 1 && p2 == p {
                    let v = lifts[&q][p].matrix.clone();
                    let v = if p % 2 == 1 { v.neg() } else { v };
                    m.set_block(to[t], so[s], &v);
                }
            }
        }
        diffs.insert(n, LinMap::from_parts(&terms[&n], &terms[&(n + 1)], m));
    }
    let tot = Complex::new(f, terms, diffs)?.with_decoration(deco)?;
    let mut comps = BTreeMap::new();
    for &q in &degs {
        let src = pieces(q);
        let so = offsets(&src.iter().map(|&(q2, p)| res[&q2].fr[p].dim()).collect::<Vec<_>>());
        let slot = src.iter().position(|&(q2, p)| q2 == q && p == 0).expect("F_0 piece");
        let mut m = Matrix::zeros(f, x.term(q).dim(), tot.term(q).dim());
        m.set_block(0, so[slot], &res[&q].cover[0].matrix);
        comps.insert(q, LinMap::from_parts(&tot.term(q), &x.term(q), m));
    }
    let comparison = ChainMap::new(tot.clone(), x.clone(), comps)?;
    Ok(Replacement { complex: tot, comparison, length: len })
}

/// `RΨ` of a bounded complex of left comodules.
pub fn derived_psi_complex(x: &Complex, c: &Coalgebra, cap: usize) -> Result<Complex> {
    apply_psi(&injective_replacement(x, c, cap)?.complex)
}

/// `LΦ` of a bounded complex of contramodules.
pub fn derived_phi_complex(x: &Complex, c: &Coalgebra, cap: usize) -> Result<Complex> {
    apply_phi(&projective_replacement(x, c, cap)?.complex)
}

/// Certificate that a round trip returns an object isomorphic to the input
/// in the derived category: a roof `X <- R -> Y` (or `X -> R <- Y`) of two
/// chain maps, both tested for being quasi-isomorphisms.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    /// The round-trip image.
    pub output: Complex,
    /// Replacement of the input by (co)resolutions.
    pub replacement: QuasiIso,
    /// Comparison of the replacement with the round-trip image.
    pub comparison: QuasiIso,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.replacement.holds && self.comparison.holds
    }
}

/// `RΨ(LΦ(Y))` for a complex of contramodules, compared with `Y` through
/// `Y <- F(Y) -> Ψ(J(Φ(F(Y))))`, the second arrow being `Ψ(coaug) ∘ η`.
pub fn round_trip_contra(y: &Complex, c: &Coalgebra, cap: usize) -> Result<RoundTrip> {
    let fy = projective_replacement(y, c, cap)?;
    let x = apply_phi(&fy.complex)?;
    let jx = injective_replacement(&x, c, cap)?;
    let out = apply_psi(&jx.complex)?;
    let mut comps = BTreeMap::new();
    for n in fy.complex.degrees() {
        let p = contra_at(&fy.complex, n)?;
        let (ph, proj) = phi_presented(&p)?;
        let (_, emb_ph) = psi_embedded(&ph)?;
        let eta = unit_with(&p, &proj, &emb_ph);
        let target = comod_at(&jx.complex, n)?;
        let (_, emb_t) = psi_embedded(&target)?;
        let b = LinMap::from_parts(ph.space(), target.space(), jx.comparison.component(n).matrix);
        let pb = psi_map_with(c.space(), &emb_ph, &emb_t, &b)?;
        let comp = pb.then_after(&eta);
        comps.insert(n, LinMap::from_parts(&fy.complex.term(n), &out.term(n), comp.matrix));
    }
    let u = ChainMap::new(fy.complex.clone(), out.clone(), comps)?;
    Ok(RoundTrip { output: out, replacement: is_quasi_iso(&fy.comparison), comparison: is_quasi_iso(&u) })
}

/// `LΦ(RΨ(X))` for a complex of left comodules, compared with `X` through
/// `X -> J(X) <- Φ(F(Ψ(J(X))))`, the second arrow being `ε ∘ Φ(aug)`.
pub fn round_trip_comod(x: &Complex, c: &Coalgebra, cap: usize) -> Result<RoundTrip> {
    let jx = injective_replacement(x, c, cap)?;
    let y = apply_psi(&jx.complex)?;
    let fy = projective_replacement(&y, c, cap)?;
    let out = apply_phi(&fy.complex)?;
    let mut comps = BTreeMap::new();
    for n in out.degrees() {
        let src = contra_at(&fy.complex, n)?;
        let (_, proj_src) = phi_presented(&src)?;
        let m = comod_at(&jx.complex, n)?;
        let (ps, emb) = psi_embedded(&m)?;
        let (_, proj_ps) = phi_presented(&ps)?;
        let a = LinMap::from_parts(src.space(), ps.space(), fy.comparison.component(n).matrix);
        let pa = phi_map_with(c.dim(), &proj_src, &proj_ps, &a)?;
        let eps = counit_with(&m, &emb, &proj_ps);
        let comp = eps.then_after(&pa);
        comps.insert(n, LinMap::from_parts(&out.term(n), &jx.complex.term(n), comp.matrix));
    }
    let v = ChainMap::new(out.clone(), jx.complex.clone(), comps)?;
    Ok(RoundTrip { output: out, replacement: is_quasi_iso(&jx.comparison), comparison: is_quasi_iso(&v) })
}

/// A single comodule as a decorated complex in degree 0.
pub fn comodule_complex(m: &Comodule) -> Result<Complex> {
    Complex::concentrated(m.space().clone(), 0).with_decoration(BTreeMap::from([(0, Decoration::Comodule(m.clone()))]))
}

/// A single contramodule as a decorated complex in degree 0.
pub fn contramodule_complex(p: &Contramodule) -> Result<Complex> {
    Complex::concentrated(p.space().clone(), 0)
        .with_decoration(BTreeMap::from([(0, Decoration::Contramodule(p.clone()))]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HomologicalDimension {
    Exactly(usize),
    AtLeast(usize),
}

/// The simple left comodules up to isomorphism: composition factors of `C`.
pub fn simple_comodules(c: &Coalgebra) -> Result<Vec<Comodule>> {
    let mut out: Vec<Comodule> = Vec::new();
    let mut current = Comodule::regular(c, Side::Left);
    while current.dim() > 0 {
        let b = simple_subcomodule_basis(&current)?;
        let (s, _) = current.subcomodule(&b)?;
        let mut known = false;
        for t in &out {
            if t.dim() == s.dim() && !comodule_hom(&s, t)?.1.is_empty() {
                known = true;
                break;
            }
        }
        if !known {
            out.push(s);
        }
        current = current.quotient(&b)?.0;
    }
    Ok(out)
}

/// Largest injective dimension of a simple comodule; every finite-dimensional
/// comodule has a composition series, so this bounds all of them.
pub fn homological_dimension(c: &Coalgebra, cap: usize) -> Result<HomologicalDimension> {
    let mut best = 0;
    for s in simple_comodules(c)? {
        match injective_coresolution(&s, cap) {
            Ok(r) => best = best.max(r.length),
            Err(Error::CapExceeded { .. }) => return Ok(HomologicalDimension::AtLeast(cap)),
            Err(e) => return Err(e),
        }
    }
    Ok(HomologicalDimension::Exactly(best))
}

/// Memoised `Ψ` and `Φ` for one coalgebra, keyed by structure matrices.
#[derive(Debug)]
pub struct CorrespondencePair {
    coalgebra: Coalgebra,
    psi_cache: HashMap<String, (Contramodule, LinMap)>,
    phi_cache: HashMap<String, (Comodule, LinMap)>,
}

impl CorrespondencePair {
    pub fn new(c: &Coalgebra) -> CorrespondencePair {
        CorrespondencePair { coalgebra: c.clone(), psi_cache: HashMap::new(), phi_cache: HashMap::new() }
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn psi(&mut self, m: &Comodule) -> Result<(Contramodule, LinMap)> {
        self.coalgebra.require_same(m.coalgebra())?;
        let key = format!("{}:{:?}", m.dim(), m.coaction().matrix);
        if let Some(v) = self.psi_cache.get(&key) {
            return Ok(v.clone());
        }
        let v = psi_embedded(m)?;
        self.psi_cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn phi(&mut self, p: &Contramodule) -> Result<(Comodule, LinMap)> {
        self.coalgebra.require_same(p.coalgebra())?;
        let key = format!("{}:{:?}", p.dim(), p.contraaction().matrix);
        if let Some(v) = self.phi_cache.get(&key) {
            return Ok(v.clone());
        }
        let v = phi_presented(p)?;
        self.phi_cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn cached(&self) -> (usize, usize) {
        (self.psi_cache.len(), self.phi_cache.len())
    }

    /// `Ψ(C ⊗ V) ≅ Hom_k(C, V)` and `Φ(Hom_k(C, V)) ≅ C ⊗ V` through the
    /// explicit maps, checked to be structure-preserving isomorphisms.
    pub fn check_free_cofree(&mut self, v: &VecSpace) -> Result<Verdict> {
        let c = self.coalgebra.clone();
        let free = free_contra(&c, v)?;
        let cof = cofree(&c, v)?;
        let (ps, _) = self.psi(&cof)?;
        let a = psi_cofree_iso(&c, v)?;
        if let Err(w) = check_contra_morphism(&free, &ps, &a) {
            return Ok(Err(w));
        }
        if !a.is_iso() {
            return Ok(Err(shape("Ψ(C ⊗ V) ≅ Hom_k(C, V)", &rank_note(&a))));
        }
        let (ph, _) = self.phi(&free)?;
        let b = phi_free_iso(&c, v)?;
        let b = LinMap::from_parts(ph.space(), cof.space(), b.matrix);
        if let Err(w) = check_comod_morphism(&ph, &cof, &b) {
            return Ok(Err(w));
        }
        if !b.is_iso() {
            return Ok(Err(shape("Φ(Hom_k(C, V)) ≅ C ⊗ V", &rank_note(&b))));
        }
        Ok(Ok(()))
    }
}

fn require_left(m: &Comodule) -> Result<()> {
    if m.side() != Side::Left {
        return Err(Error::Mismatch("expected a left comodule".into()));
    }
    Ok(())
}
