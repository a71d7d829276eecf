//! Seeded fuzz campaigns with greedy shrinking.
//!
//! Every instance draws from its own ChaCha8 stream, seeded from the run seed
//! and the instance index, under a vector of size bounds. A failing instance
//! is shrunk by lowering one bound at a time while the property still fails
//! on the same stream; the shrunk instance is checked once more before it is
//! reported.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{Outcome, Report, TaskReport};
use crate::coalg::{check_coalgebra, check_module, dual_algebra, Coalgebra, Side};
use crate::comod::{check_comodule, Comodule};
use crate::contramod::{adjunction_check, check_contramodule, contramodule_as_module, Contramodule};
use crate::corr::{comodule_complex, contramodule_complex, round_trip_comod, round_trip_contra};
use crate::exactlin::{Field, Matrix, VecSpace};
use crate::gen;
use crate::protower::{artin_rees_number, builtin_tower, contratensor_comparison, dense_subring_hom_check, TModule, TowerKind, Twist};
use crate::smoothg::{
    build_g, check_semialgebra, contratensor_g_comparison, derived_equivalence_g, find_invertible, finite_sandbox, rep_family,
    sandbox_equivalence, subgroup_list, GContramodule, GObject, Orientation, Shape, SmoothGModule,
};

/// Counters summed over the instances of a campaign.
pub type Tally = BTreeMap<&'static str, usize>;

type Property = fn(&mut ChaCha8Rng, &[usize], &mut Tally) -> Result<(), String>;

pub struct Family {
    pub name: &'static str,
    /// Default size bounds and their floors.
    pub size: &'static [usize],
    pub floor: &'static [usize],
    pub property: Property,
}

pub const FAMILIES: &[Family] = &[
    Family { name: "coalgebra-axioms", size: &[12, 3, 6], floor: &[1, 1, 0], property: coalgebra_axioms },
    Family { name: "adjunction", size: &[6, 3, 3], floor: &[1, 1, 1], property: adjunction },
    Family { name: "theorem1", size: &[4, 3], floor: &[1, 1], property: theorem1 },
    Family { name: "contratensor", size: &[8, 3], floor: &[1, 1], property: contratensor },
    Family { name: "artin-rees", size: &[2, 2, 4], floor: &[1, 0, 1], property: artin_rees },
    Family { name: "derived-roundtrip", size: &[3, 3], floor: &[1, 1], property: derived_roundtrip },
    Family { name: "sandbox-equivalence", size: &[8, 3], floor: &[1, 1], property: sandbox_equiv },
];

pub fn family(name: &str) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.name == name)
}

pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

fn check(fam: &Family, seed: u64, size: &[usize], tally: &mut Tally) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (fam.property)(&mut rng, size, tally)
}

/// Greedily lowers size bounds while the instance keeps failing.
pub fn shrink(fam: &Family, seed: u64, size: &[usize]) -> (Vec<usize>, String) {
    let mut best = size.to_vec();
    let mut scratch = Tally::new();
    let mut message = check(fam, seed, &best, &mut scratch).err().unwrap_or_default();
    loop {
        let mut moved = false;
        for i in 0..best.len() {
            if best[i] <= fam.floor[i] {
                continue;
            }
            let mut cand = best.clone();
            cand[i] -= 1;
            if let Err(m) = check(fam, seed, &cand, &mut scratch) {
                best = cand;
                message = m;
                moved = true;
            }
        }
        if !moved {
            return (best, message);
        }
    }
}

/// `count` instances of a family. An unknown family yields a report with one error entry.
pub fn fuzz(name: &str, seed: u64, count: usize) -> Report {
    let mut report = Report::new(&format!("fuzz:{name}"), seed, Orientation::Inverse);
    let Some(fam) = family(name) else {
        let mut t = TaskReport::new(0, name, &[]);
        t.outcome = Outcome::Error;
        t.message = Some(format!("unknown family; known: {}", FAMILIES.iter().map(|f| f.name).collect::<Vec<_>>().join(", ")));
        report.push(t);
        return report;
    };
    if count == 0 {
        return report;
    }
    let mut tally = Tally::new();
    let mut failures = Vec::new();
    for i in 0..count {
        let s = instance_seed(seed, i);
        if let Err(m) = check(fam, s, fam.size, &mut tally) {
            failures.push((i, s, m));
        }
    }
    let mut head = TaskReport::new(0, name, &[]);
    head.outcome = if failures.is_empty() { Outcome::Pass } else { Outcome::Fail };
    head.value = json!({ "instances": count, "passed": count - failures.len(), "failed": failures.len(), "tally": tally });
    report.push(head);
    for (k, (i, s, m)) in failures.into_iter().enumerate() {
        let (shrunk, message) = shrink(fam, s, fam.size);
        let still_fails = check(fam, s, &shrunk, &mut Tally::new()).is_err();
        let mut t = TaskReport::new(k + 1, name, &[]);
        t.outcome = Outcome::Fail;
        t.message = Some(m);
        t.value = json!({
            "instance": i,
            "instance_seed": s,
            "size": fam.size,
            "shrunk_size": shrunk,
            "shrunk_message": message,
            "shrunk_still_fails": still_fails,
        });
        report.push(t);
    }
    report
}

fn bump(t: &mut Tally, k: &'static str) {
    *t.entry(k).or_default() += 1;
}

fn prime<R: Rng>(rng: &mut R) -> u64 {
    [2, 3][rng.random_range(0..2)]
}

/// `M + δ·E_{row,col}` for a random entry and a nonzero `δ`.
fn mutate<R: Rng>(m: &Matrix, rng: &mut R) -> Option<(Matrix, usize, usize)> {
    if m.rows() == 0 || m.cols() == 0 {
        return None;
    }
    let (r, c) = (rng.random_range(0..m.rows()), rng.random_range(0..m.cols()));
    let p = m.field().characteristic();
    let mut out = m.clone();
    out.add_int_at(r, c, rng.random_range(1..p) as i64);
    Some((out, r, c))
}

/// Axioms hold on generated objects; single-entry mutations of the
/// comultiplication, a coaction and a contraaction are rejected exactly when
/// the dual-algebra route says the mutated structure is invalid.
fn coalgebra_axioms(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let (g, c) = gen::group_coalgebra(size[0], &[2, 3], rng);
    check_coalgebra(&c).map_err(|w| format!("k({}) fails: {w}", g.name))?;
    let m = gen::comodule(&c, Side::Left, size[1], rng);
    check_comodule(&m).map_err(|w| format!("generated comodule fails: {w}"))?;
    let p = gen::contramodule(&c, size[1], rng);
    check_contramodule(&p).map_err(|w| format!("generated contramodule fails: {w}"))?;
    bump(t, "objects");
    for _ in 0..size[2] {
        let (checker, oracle, what) = match rng.random_range(0..3) {
            0 => {
                let Some((d, r, col)) = mutate(&c.comult().matrix, rng) else { continue };
                let Ok(x) = Coalgebra::new("mutant", c.space().clone(), d, c.counit().matrix.clone()) else { continue };
                let oracle = dual_algebra(&x).map(|a| crate::coalg::check_algebra(&a).is_ok()).unwrap_or(false);
                (check_coalgebra(&x).is_ok(), oracle, format!("Δ[{r},{col}] of k({})", g.name))
            }
            1 => {
                let Some((d, r, col)) = mutate(&m.coaction().matrix, rng) else { continue };
                let Ok(x) = Comodule::new(&c, m.space().clone(), d, Side::Left) else { continue };
                let oracle = x.as_module().map(|a| check_module(&a).is_ok()).unwrap_or(false);
                (check_comodule(&x).is_ok(), oracle, format!("coaction[{r},{col}] over k({})", g.name))
            }
            _ => {
                let Some((d, r, col)) = mutate(&p.contraaction().matrix, rng) else { continue };
                let Ok(x) = Contramodule::new(&c, p.space().clone(), d) else { continue };
                let oracle = contramodule_as_module(&x).map(|a| check_module(&a).is_ok()).unwrap_or(false);
                (check_contramodule(&x).is_ok(), oracle, format!("contraaction[{r},{col}] over k({})", g.name))
            }
        };
        bump(t, "mutations");
        if !oracle {
            bump(t, "expected_failures");
            if !checker {
                bump(t, "detected");
            }
        }
        if checker != oracle {
            return Err(format!("{what}: checker says valid={checker}, dual-algebra route says valid={oracle}"));
        }
    }
    Ok(())
}

fn adjunction(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let (g, c) = gen::group_coalgebra(size[0], &[2, 3], rng);
    let n = gen::comodule(&c, Side::Right, size[1], rng);
    let p = gen::contramodule(&c, size[1], rng);
    let v = VecSpace::named(c.field(), "v", rng.random_range(1..=size[2]));
    match adjunction_check(&n, &p, &v) {
        Ok(Ok(r)) if r.lhs_dim == r.rhs_dim => {
            bump(t, "bijections");
            Ok(())
        }
        Ok(Ok(r)) => Err(format!("k({}): {} vs {}", g.name, r.lhs_dim, r.rhs_dim)),
        Ok(Err(w)) => Err(format!("k({}): {w}", g.name)),
        Err(e) => Err(e.to_string()),
    }
}

fn theorem1(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let a = gen::tmodule(2, size[0], size[1], rng);
    let b = gen::tmodule(2, size[0], size[1], rng);
    let h = dense_subring_hom_check(&a, &b).map_err(|e| e.to_string())?;
    if !h.passes() {
        return Err(format!("Hom comparison {:?} vs {:?}: {h:?}", a.jordan_type(), b.jordan_type()));
    }
    let c = contratensor_comparison(&a, &b).map_err(|e| e.to_string())?;
    if !c.passes() {
        return Err(format!("contratensor comparison {:?} vs {:?}: {:?}", a.jordan_type(), b.jordan_type(), c.witness));
    }
    bump(t, "pairs");
    Ok(())
}

fn contratensor(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let g = gen::group(size[0], rng);
    let f = Field::fp(prime(rng));
    let fam = rep_family(&g, f, size[1], rng.random());
    for (i, n) in fam.iter().enumerate() {
        for (j, p) in fam.iter().enumerate() {
            let r = contratensor_g_comparison(&g, n, p, Orientation::Inverse);
            if !r.passes() {
                return Err(format!("{} over {f}: pair ({i}, {j}) {r:?}", g.name));
            }
            bump(t, "pairs");
        }
    }
    Ok(())
}

fn artin_rees(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let m = gen::pcmodule(2, size[0], size[1], false, size[2], rng);
    let k = rng.random_range(1..=2);
    let gens: Vec<Vec<_>> = (0..k).map(|_| (0..m.generators()).map(|_| gen::poly(2, 2, rng)).collect()).collect();
    let ar = artin_rees_number(&m, &gens, 8).map_err(|e| e.to_string())?;
    if ar.m > ar.bound {
        return Err(format!("m = {} above the bound {}", ar.m, ar.bound));
    }
    if let Some(c) = ar.certificates.iter().find(|c| !c.lhs.same_span(&c.rhs)) {
        return Err(format!("certificate at n = {} does not hold", c.n));
    }
    bump(t, "certified");
    Ok(())
}

/// Alternates the hereditary coalgebra `•→•` over `F_2` and `G = Z_2 × Z`.
fn derived_roundtrip(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    if rng.random_bool(0.5) {
        let c = Coalgebra::path_coalgebra(Field::fp(2), 2, &[(0, 1)]).map_err(|e| e.to_string())?;
        let rt = if rng.random_bool(0.5) {
            let m = gen::comodule(&c, Side::Left, size[0], rng);
            round_trip_comod(&comodule_complex(&m).map_err(|e| e.to_string())?, &c, 3)
        } else {
            let p = gen::contramodule(&c, size[0], rng);
            round_trip_contra(&contramodule_complex(&p).map_err(|e| e.to_string())?, &c, 3)
        }
        .map_err(|e| e.to_string())?;
        if !rt.holds() {
            return Err(format!("coalgebra-level round trip: {:?} / {:?}", rt.replacement, rt.comparison));
        }
        bump(t, "coalgebra_level");
    } else {
        let tower = builtin_tower(TowerKind::Zp, 2, 4, Twist::Identity).map_err(|e| e.to_string())?;
        let d = build_g(&tower, 2).map_err(|e| e.to_string())?;
        let parts: Vec<usize> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(1..=size[1])).collect();
        let base = TModule::jordan(2, &parts);
        let gamma = find_invertible(&base.hom_basis(&base), d.field(), rng.random()).ok_or("no invertible γ found")?;
        let obj = if rng.random_bool(0.5) {
            GObject::Contra(GContramodule::new(&d, base, gamma, Shape::FiniteLength).map_err(|e| e.to_string())?)
        } else {
            GObject::Smooth(SmoothGModule::new(&d, base, gamma, Shape::FiniteLength).map_err(|e| e.to_string())?)
        };
        let r = derived_equivalence_g(&d, &obj, 2, 4).map_err(|e| e.to_string())?;
        if !r.holds() {
            return Err(format!("{} on Jordan type {parts:?}: {:?}", r.functor, r.homology.types()));
        }
        bump(t, "group_level");
    }
    Ok(())
}

fn sandbox_equiv(rng: &mut ChaCha8Rng, size: &[usize], t: &mut Tally) -> Result<(), String> {
    let g = gen::group(size[0], rng);
    let subs = subgroup_list(&g);
    let h = &subs[rng.random_range(0..subs.len())];
    let f = Field::fp(prime(rng));
    let sb = finite_sandbox(&g, h, f).map_err(|e| e.to_string())?;
    check_semialgebra(&sb.semialgebra).map_err(|w| format!("{} ⊃ {h:?}: {w}", g.name))?;
    let e = sandbox_equivalence(&sb, &rep_family(&g, f, size[1], rng.random())).map_err(|e| e.to_string())?;
    if !e.passes() {
        return Err(format!("{} ⊃ {h:?} over {f}: {:?}", g.name, e.failures));
    }
    bump(t, if e.coprime { "coprime" } else { "modular" });
    Ok(())
}
