//! The twelve acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use comodcontra::cli::{self, Defaults};
use comodcontra::coalg::{check_algebra, check_coalgebra, check_module, dual_algebra, Coalgebra, Side};
use comodcontra::comod::{check_comodule, Comodule};
use comodcontra::contramod::{adjunction_check, check_contramodule, contramodule_as_module, Contramodule};
use comodcontra::corr::{self, phi_psi_unit_counit, Object};
use comodcontra::exactlin::{Field, Matrix, VecSpace};
use comodcontra::gen;
use comodcontra::group::small_groups;
use comodcontra::protower::{
    artin_rees_number, builtin_tower, contratensor_comparison, dense_subring_hom_check, flatness_comparison, injective_extension,
    level_regular, lphi_iwasawa, rpsi_module, PCModule, Poly, ShortExact, SubmoduleGens, TModule, TowerKind, Twist,
};
use comodcontra::smoothg::{
    build_g, derived_equivalence_g, derived_phi_g, derived_psi_g, ext_tor_vanishing, find_invertible, weakly_compact_flags,
    GContramodule, GObject, Shape, SmoothGModule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn mutated(m: &Matrix, r: &mut ChaCha8Rng) -> Matrix {
    let p = m.field().characteristic();
    let mut out = m.clone();
    out.add_int_at(r.random_range(0..m.rows()), r.random_range(0..m.cols()), r.random_range(1..p) as i64);
    out
}

/// Counts of one mutation campaign: (mutants, rejected by the dual-algebra route, rejected by the checker among those, disagreements).
#[derive(Default)]
struct Mutations {
    total: usize,
    expected: usize,
    detected: usize,
    disagreements: usize,
}

impl Mutations {
    fn record(&mut self, checker_ok: bool, oracle_ok: bool) {
        self.total += 1;
        if !oracle_ok {
            self.expected += 1;
            self.detected += usize::from(!checker_ok);
        }
        self.disagreements += usize::from(checker_ok != oracle_ok);
    }
}

fn axiom_suites() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut mu = Mutations::default();
    for i in 0..200 {
        let (g, c) = gen::group_coalgebra(12, &[2, 3], &mut r);
        check_coalgebra(&c).map_err(|w| format!("instance {i}: k({}) {w}", g.name))?;
        let ml = gen::comodule(&c, Side::Left, 4, &mut r);
        let mr = gen::comodule(&c, Side::Right, 4, &mut r);
        let p = gen::contramodule(&c, 4, &mut r);
        for (what, v) in [("left comodule", check_comodule(&ml)), ("right comodule", check_comodule(&mr)), ("contramodule", check_contramodule(&p))] {
            v.map_err(|w| format!("instance {i}: {what} over k({}) {w}", g.name))?;
        }
        for _ in 0..4 {
            let x = Coalgebra::new("m", c.space().clone(), mutated(&c.comult().matrix, &mut r), c.counit().matrix.clone()).unwrap();
            let oracle = dual_algebra(&x).map(|a| check_algebra(&a).is_ok()).unwrap_or(false);
            mu.record(check_coalgebra(&x).is_ok(), oracle);
            let x = Comodule::new(&c, ml.space().clone(), mutated(&ml.coaction().matrix, &mut r), Side::Left).unwrap();
            let oracle = x.as_module().map(|a| check_module(&a).is_ok()).unwrap_or(false);
            mu.record(check_comodule(&x).is_ok(), oracle);
            let x = Contramodule::new(&c, p.space().clone(), mutated(&p.contraaction().matrix, &mut r)).unwrap();
            let oracle = contramodule_as_module(&x).map(|a| check_module(&a).is_ok()).unwrap_or(false);
            mu.record(check_contramodule(&x).is_ok(), oracle);
        }
    }
    let secs = start.elapsed();
    ensure(
        mu.detected == mu.expected && mu.disagreements == 0 && secs <= Duration::from_secs(60),
        format!(
            "200 coalgebras; {}/{} invalid mutants detected ({} of {} mutants are valid structures per the dual-algebra route); {} disagreements; {:.1}s",
            mu.detected,
            mu.expected,
            mu.total - mu.expected,
            mu.total,
            mu.disagreements,
            secs.as_secs_f64()
        ),
    )
}

fn adjunction() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut max_dim = 0;
    for i in 0..500 {
        let (g, c) = gen::group_coalgebra(6, &[2, 3], &mut r);
        let n = gen::comodule(&c, Side::Right, 3, &mut r);
        let p = gen::contramodule(&c, 3, &mut r);
        let v = VecSpace::named(c.field(), "v", r.random_range(1..=3));
        max_dim = max_dim.max(n.dim()).max(p.dim()).max(c.dim());
        match adjunction_check(&n, &p, &v) {
            Ok(Ok(rep)) if rep.lhs_dim == rep.rhs_dim => {}
            other => return Err(format!("instance {i} over k({}): {other:?}", g.name)),
        }
    }
    let secs = start.elapsed();
    ensure(
        max_dim <= 6 && secs <= Duration::from_secs(120),
        format!("500 bijections, dims ≤ {max_dim}, {:.1}s", secs.as_secs_f64()),
    )
}

fn cosemisimple() -> Outcome {
    let mut r = rng(3);
    let (mut pairs, mut objects) = (0, 0);
    for g in small_groups(8) {
        for p in [2u64, 3, 5, 7] {
            if g.order() % p as usize == 0 {
                continue;
            }
            let c = Coalgebra::group_function(&g, Field::fp(p));
            pairs += 1;
            for _ in 0..3 {
                let m = gen::comodule(&c, Side::Left, 4, &mut r);
                phi_psi_unit_counit(&Object::Comodule(m))
                    .map_err(|e| format!("{} over F_{p}: {e}", g.name))?
                    .map_err(|w| format!("{} over F_{p}: counit {w}", g.name))?;
                let q = gen::contramodule(&c, 4, &mut r);
                phi_psi_unit_counit(&Object::Contramodule(q))
                    .map_err(|e| format!("{} over F_{p}: {e}", g.name))?
                    .map_err(|w| format!("{} over F_{p}: unit {w}", g.name))?;
                objects += 2;
            }
        }
    }
    Ok(format!("{pairs} coprime (H, p) pairs, |H| ≤ 8; unit and counit invertible on {objects} objects"))
}

fn two_term() -> Outcome {
    let mut r = rng(4);
    for i in 0..60 {
        let pm = gen::pcmodule(2, 3, 2, true, 4, &mut r);
        let l = lphi_iwasawa(&pm, 5).map_err(|e| format!("instance {i}: {e}"))?;
        if l.support().iter().any(|d| !(-1..=0).contains(d)) || l.euler_characteristic != 0 {
            return Err(format!("instance {i}: support {:?}, χ = {}", l.support(), l.euler_characteristic));
        }
        // Independent route: Tor_1(C, P) has the Jordan type of P itself.
        let mut want = TModule::from_presentation(&pm).unwrap().jordan_type();
        want.sort();
        let mut got = l.homology.get(&-1).cloned().unwrap_or_default();
        got.sort();
        if got != want || l.homology.keys().any(|&d| d != -1) {
            return Err(format!("instance {i}: homology {:?}, Jordan type {want:?}", l.homology));
        }
    }
    Ok("60 finite-length contramodules over k[[t]], p = 2, depth 5: support ⊆ {−1, 0}, χ = 0".into())
}

fn theorem_one() -> Outcome {
    let mut r = rng(5);
    for i in 0..300 {
        let (a, b) = (gen::tmodule(2, 4, 3, &mut r), gen::tmodule(2, 4, 3, &mut r));
        let h = dense_subring_hom_check(&a, &b).map_err(|e| e.to_string())?;
        let c = contratensor_comparison(&a, &b).map_err(|e| e.to_string())?;
        if !h.passes() || !c.passes() {
            return Err(format!("pair {i}: {:?} / {:?}", a.jordan_type(), b.jordan_type()));
        }
    }
    Ok("300 finite-length pairs: Hom over dense subrings and contratensor comparison pass".into())
}

fn artin_rees() -> Outcome {
    let ar = artin_rees_number(&PCModule::from_invariants(2, 1, &[]), &vec![vec![Poly::new(2, &[0, 0, 1])]], 10).map_err(|e| e.to_string())?;
    let certs_ok = ar.certificates.len() == 11 && ar.certificates.iter().all(|c| c.lhs.same_span(&c.rhs));
    if ar.m != 2 || !certs_ok {
        return Err(format!("k[[t]] ⊃ t²k[[t]]: m = {}, certificates ok = {certs_ok}", ar.m));
    }
    let mut r = rng(6);
    let (mut compared, mut attempts) = (0, 0);
    while compared < 100 && attempts < 400 {
        attempts += 1;
        let m = gen::pcmodule(2, 2, 2, false, 4, &mut r);
        let k = r.random_range(1..=2);
        let gens: SubmoduleGens = (0..k).map(|_| (0..m.generators()).map(|_| gen::poly(2, 2, &mut r)).collect()).collect();
        let Some(want) = common::brute_artin_rees(&m, &gens, 8) else { continue };
        let got = artin_rees_number(&m, &gens, 8).map_err(|e| e.to_string())?;
        if got.m != want {
            return Err(format!("{m:?} {gens:?}: computed {}, brute force {want}", got.m));
        }
        compared += 1;
    }
    ensure(compared >= 100, format!("m = 2 for t²k[[t]] with certificates n ≤ 10; {compared} random pairs agree with brute force at depth 8"))
}

fn injective_extensions() -> Outcome {
    let tower = builtin_tower(TowerKind::Zp, 2, 5, Twist::Identity).unwrap();
    let mut r = rng(7);
    let (mut ok, mut nonzero, mut attempts) = (0, 0, 0);
    while ok < 100 && attempts < 300 {
        attempts += 1;
        let level = r.random_range(1..=2);
        let j = level_regular(&tower, level).unwrap();
        let m = gen::pcmodule(2, 2, 2, false, 3, &mut r);
        let gens: SubmoduleGens = vec![(0..m.generators()).map(|_| gen::poly(2, 2, &mut r)).collect()];
        let v = gen::matrix(j.field(), j.dim(), 1, &mut r);
        // Powers of t applied to a random target eventually give a well-defined f.
        for e in 0..=j.dim() {
            let fv = j.t().pow(e as u64).mul(&v);
            match injective_extension(&tower, level, &m, &gens, &fv) {
                Ok(x) if x.restricts && x.t_linear => {
                    ok += 1;
                    nonzero += usize::from(!fv.is_zero());
                    break;
                }
                Ok(_) => return Err(format!("{m:?} {gens:?}: extension does not restrict")),
                Err(comodcontra::Error::Precondition(_)) => continue,
                Err(other) => return Err(other.to_string()),
            }
        }
    }
    ensure(ok >= 100 && nonzero > 0, format!("{ok} extensions verified ({nonzero} with f ≠ 0)"))
}

fn flatness() -> Outcome {
    let ms = [
        ("R", PCModule::from_invariants(2, 1, &[])),
        ("R/t", PCModule::from_invariants(2, 0, &[1])),
        ("R/t²", PCModule::from_invariants(2, 0, &[2])),
        ("R/t³", PCModule::from_invariants(2, 0, &[3])),
        ("R ⊕ R/t²", PCModule::from_invariants(2, 1, &[2])),
    ];
    for (name, m) in &ms {
        for x in [1, 3, 5] {
            let rep = flatness_comparison(m, x, 6, &ShortExact::standard(2)).map_err(|e| format!("{name}, |X| = {x}: {e}"))?;
            if !rep.passes() {
                return Err(format!("{name}, |X| = {x}"));
            }
        }
    }
    Ok("5 modules × |X| ∈ {1, 3, 5}, depth 6".into())
}

fn derived_coalgebra() -> Outcome {
    let c = Coalgebra::path_coalgebra(Field::fp(2), 2, &[(0, 1)]).unwrap();
    let mut r = rng(9);
    for i in 0..120 {
        let rt = if i % 2 == 0 {
            let m = gen::comodule(&c, Side::Left, 4, &mut r);
            corr::round_trip_comod(&corr::comodule_complex(&m).unwrap(), &c, 3)
        } else {
            let p = gen::contramodule(&c, 4, &mut r);
            corr::round_trip_contra(&corr::contramodule_complex(&p).unwrap(), &c, 3)
        }
        .map_err(|e| format!("object {i}: {e}"))?;
        if !rt.holds() {
            return Err(format!("object {i}: {:?} / {:?}", rt.replacement, rt.comparison));
        }
    }
    Ok("120 objects over •→•: both composites quasi-isomorphic to the identity".into())
}

fn derived_group() -> Outcome {
    let tower = builtin_tower(TowerKind::Zp, 2, 4, Twist::Identity).unwrap();
    let d = build_g(&tower, 2).map_err(|e| e.to_string())?;
    let f = d.field();
    // Truncation oracle over k[[t]] alone.
    let oracle_l = lphi_iwasawa(&PCModule::from_invariants(2, 0, &[1]), 5).map_err(|e| e.to_string())?.homology;
    let oracle_r = rpsi_module(&TModule::jordan(2, &[1]), 5).map_err(|e| e.to_string())?.complex.homology_types();
    let l = derived_phi_g(&d, &GContramodule::trivial(2), 2, 4).map_err(|e| e.to_string())?;
    let rr = derived_psi_g(&d, &SmoothGModule::trivial(2), 2, 4).map_err(|e| e.to_string())?;
    let want_l = [(-1, vec![1])].into_iter().collect();
    let want_r = [(1, vec![1])].into_iter().collect();
    if oracle_l != want_l || oracle_r != want_r || l.homology.types() != want_l || rr.homology.types() != want_r {
        return Err(format!("LΦ_G(k) = {:?}, RΨ_G(k) = {:?}", l.homology.types(), rr.homology.types()));
    }
    let mut r = rng(10);
    for i in 0..100 {
        let parts: Vec<usize> = (0..r.random_range(1..=3)).map(|_| r.random_range(1..=4)).collect();
        let base = TModule::jordan(2, &parts);
        let gamma = find_invertible(&base.hom_basis(&base), f, r.random()).ok_or("no invertible endomorphism")?;
        let obj = if i % 2 == 0 {
            GObject::Contra(GContramodule::new(&d, base, gamma, Shape::FiniteLength).map_err(|e| e.to_string())?)
        } else {
            GObject::Smooth(SmoothGModule::new(&d, base, gamma, Shape::FiniteLength).map_err(|e| e.to_string())?)
        };
        let out = derived_equivalence_g(&d, &obj, 2, 4).map_err(|e| format!("object {i}: {e}"))?;
        let s = out.homology.support();
        let width = s.last().zip(s.first()).map_or(0, |(b, a)| b - a);
        if !out.holds() || width > 1 {
            return Err(format!("object {i} ({parts:?}): {:?}", out.homology.types()));
        }
    }
    Ok("G = Z_2 × Z: 100 round trips; LΦ_G(k) = k[1], RΨ_G(k) = k[−1], matching the truncation oracle; support ≤ 2 degrees".into())
}

fn ext_tor() -> Outcome {
    let mut r = rng(11);
    let mut flagged = 0;
    let mut i = 0;
    while flagged < 100 && i < 400 {
        i += 1;
        let (p, twist) = [(2, Twist::Identity), (3, Twist::Identity), (3, Twist::Inversion)][r.random_range(0..3)];
        let d = build_g(&builtin_tower(TowerKind::Zp, p, 3, twist).unwrap(), r.random_range(1..=2)).map_err(|e| e.to_string())?;
        let level = r.random_range(1..=2);
        // γ = 1 satisfies the twisted relation only for φ = id.
        let kinds = if twist == Twist::Identity { 4 } else { 3 };
        let obj = match r.random_range(0..kinds) {
            0 => GObject::Smooth(SmoothGModule::s_window(&d, level).map_err(|e| e.to_string())?),
            1 => GObject::Contra(GContramodule::t_window(&d, level).map_err(|e| e.to_string())?),
            3 => GObject::Contra(GContramodule::free_untwisted(&d, level, r.random_range(1..=3)).map_err(|e| e.to_string())?),
            2 => GObject::Smooth(SmoothGModule::trivial(p)),
            _ => unreachable!(),
        };
        let fl = weakly_compact_flags(&d, &obj).map_err(|e| e.to_string())?;
        if !(fl.weakly_compactly_injective || fl.weakly_compactly_projective) {
            continue;
        }
        flagged += 1;
        let t = ext_tor_vanishing(&d, &obj, 3).map_err(|e| format!("object {i}: {e}"))?;
        let reduced = t.trace.first().is_some_and(|s| s.contains("C ⊗_R 𝔗"));
        if !t.vanishes() || t.values.len() != 3 || !reduced {
            return Err(format!("object {i}: {} {:?} {:?}", t.functor, t.values, t.trace));
        }
    }
    ensure(flagged >= 100, format!("{flagged} flagged objects: Ext^i and Tor_i vanish for i = 1, 2, 3; trace through C ⊗_R 𝔗 ≅ S recorded"))
}

fn determinism() -> Outcome {
    for (name, _) in cli::BUNDLED {
        let a = cli::run_source(name, Defaults::default()).structured();
        let b = cli::run_source(name, Defaults::default()).structured();
        if a != b {
            return Err(format!("{name} differs between runs"));
        }
    }
    for f in cli::FAMILIES {
        if cli::fuzz(f.name, 42, 5).structured() != cli::fuzz(f.name, 42, 5).structured() {
            return Err(format!("fuzz {} differs between runs", f.name));
        }
    }
    Ok(format!("{} bundled scenarios and {} fuzz families byte-identical across runs", cli::BUNDLED.len(), cli::FAMILIES.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suites and mutation detection", axiom_suites),
        ("contratensor adjunction", adjunction),
        ("cosemisimple correspondence", cosemisimple),
        ("two-term complex over k[[t]]", two_term),
        ("dense subrings and contratensor at finite length", theorem_one),
        ("Artin–Rees", artin_rees),
        ("injective extension", injective_extensions),
        ("flatness of R[[X]]", flatness),
        ("derived equivalence over a coalgebra", derived_coalgebra),
        ("derived equivalence over Z_2 × Z", derived_group),
        ("Ext/Tor vanishing", ext_tor),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
