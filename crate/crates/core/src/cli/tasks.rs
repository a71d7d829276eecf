//! Task execution. Task errors are recorded in the report, never fatal.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::report::{Outcome, Report, TaskReport};
use super::scenario::{Objects, Scenario, TaskDecl};
use crate::coalg::check_coalgebra;
use crate::comod::check_comodule;
use crate::contramod::{adjunction_check, check_contramodule, contratensor};
use crate::corr::{
    comodule_complex, contramodule_complex, derived_phi, derived_psi, homological_dimension, phi_psi_unit_counit, round_trip_comod,
    round_trip_contra, Object,
};
use crate::error::{Error, Result};
use crate::exactlin::VecSpace;
use crate::protower::{artin_rees_number, flatness_comparison, lphi_iwasawa, Poly, ShortExact, SubmoduleGens};
use crate::smoothg::{
    build_g, check_semialgebra, contratensor_g_comparison, derived_equivalence_g, ext_tor_vanishing, finite_sandbox, rep_family,
    sandbox_adjunction, sandbox_equivalence, GContramodule, GObject, SmoothGModule,
};
use crate::witness::Verdict;

/// Operation names and whether they are pass-type (`true`) or value-type.
pub const OPS: &[(&str, bool)] = &[
    ("check_coalgebra", true),
    ("check_comodule", true),
    ("check_contramodule", true),
    ("contratensor", false),
    ("adjunction", true),
    ("unit_counit", true),
    ("derived_phi", false),
    ("derived_psi", false),
    ("derived_roundtrip", true),
    ("homological_dimension", false),
    ("lphi_iwasawa", true),
    ("artin_rees", false),
    ("flatness", true),
    ("sandbox_adjunction", true),
    ("sandbox_equivalence", true),
    ("contratensor_g", true),
    ("derived_equivalence_g", true),
    ("ext_tor_vanishing", true),
];

/// Defaults for parameters a task leaves out; the CLI flags override them.
#[derive(Clone, Copy, Debug)]
pub struct Defaults {
    pub seed: u64,
    pub cap: usize,
    pub depth: usize,
    pub count: usize,
}

impl Default for Defaults {
    fn default() -> Defaults {
        Defaults { seed: 0, cap: 3, depth: 5, count: 4 }
    }
}

/// Runs the tasks in declaration order.
pub fn run(s: &Scenario, o: &Objects, defaults: Defaults) -> Report {
    let seed = s.seed.unwrap_or(defaults.seed);
    let mut report = Report::new(&s.name, seed, o.orientation);
    for (i, t) in s.tasks.iter().enumerate() {
        let mut tr = TaskReport::new(i, &t.op, &t.args);
        let pass_type = OPS.iter().find(|(op, _)| *op == t.op).is_some_and(|(_, p)| *p);
        match execute(t, o, defaults, seed) {
            Ok((ok, value, certs)) => {
                tr.outcome = match (pass_type, ok) {
                    (false, _) => Outcome::Value,
                    (true, true) => Outcome::Pass,
                    (true, false) => Outcome::Fail,
                };
                tr.value = value;
                tr.certificates = certs;
            }
            Err(e) => {
                tr.outcome = Outcome::Error;
                tr.message = Some(e.to_string());
            }
        }
        report.push(tr);
    }
    report
}

type Executed = (bool, Value, Value);

fn arg<'a, T>(t: &TaskDecl, i: usize, map: &'a BTreeMap<String, T>, kind: &str) -> Result<&'a T> {
    let name = t.args.get(i).ok_or_else(|| Error::Precondition(format!("{} needs argument {i} ({kind})", t.op)))?;
    map.get(name).ok_or_else(|| Error::Precondition(format!("{name:?} is not a {kind}")))
}

fn verdict(v: Verdict) -> Executed {
    match v {
        Ok(()) => (true, Value::Null, Value::Null),
        Err(w) => (false, json!({ "violation": w.to_string() }), Value::Null),
    }
}

fn object(t: &TaskDecl, o: &Objects) -> Result<Object> {
    let name = t.args.first().ok_or_else(|| Error::Precondition(format!("{} needs an object", t.op)))?;
    if let Some(m) = o.comodules.get(name) {
        Ok(Object::Comodule(m.clone()))
    } else if let Some(p) = o.contramodules.get(name) {
        Ok(Object::Contramodule(p.clone()))
    } else {
        Err(Error::Precondition(format!("{name:?} is neither a comodule nor a contramodule")))
    }
}

fn execute(t: &TaskDecl, o: &Objects, d: Defaults, seed: u64) -> Result<Executed> {
    let cap = t.cap.unwrap_or(d.cap);
    let depth = t.depth.unwrap_or(d.depth);
    let count = t.count.unwrap_or(d.count);
    let seed = t.seed.unwrap_or(seed);
    let f = o.field;
    Ok(match t.op.as_str() {
        "check_coalgebra" => verdict(check_coalgebra(arg(t, 0, &o.coalgebras, "coalgebra")?)),
        "check_comodule" => verdict(check_comodule(arg(t, 0, &o.comodules, "comodule")?)),
        "check_contramodule" => verdict(check_contramodule(arg(t, 0, &o.contramodules, "contramodule")?)),
        "contratensor" => {
            let (ct, _) = contratensor(arg(t, 0, &o.comodules, "comodule")?, arg(t, 1, &o.contramodules, "contramodule")?)?;
            (true, json!({ "dim": ct.dim() }), Value::Null)
        }
        "adjunction" => {
            let v = VecSpace::named(f, "v", t.dim.unwrap_or(2));
            match adjunction_check(arg(t, 0, &o.comodules, "comodule")?, arg(t, 1, &o.contramodules, "contramodule")?, &v)? {
                Ok(r) => (
                    r.lhs_dim == r.rhs_dim,
                    json!({ "lhs_dim": r.lhs_dim, "rhs_dim": r.rhs_dim }),
                    json!({ "module_tensor_dim": r.module_tensor_dim, "contratensor_dim": r.contratensor_dim }),
                ),
                Err(w) => (false, json!({ "violation": w.to_string() }), Value::Null),
            }
        }
        "unit_counit" => verdict(phi_psi_unit_counit(&object(t, o)?)?),
        "derived_phi" => {
            let x = derived_phi(arg(t, 0, &o.contramodules, "contramodule")?, cap)?;
            (true, json!({ "homology": x.homology_table(), "terms": x.dims() }), Value::Null)
        }
        "derived_psi" => {
            let x = derived_psi(arg(t, 0, &o.comodules, "comodule")?, cap)?;
            (true, json!({ "homology": x.homology_table(), "terms": x.dims() }), Value::Null)
        }
        "derived_roundtrip" => {
            let rt = match object(t, o)? {
                Object::Comodule(m) => round_trip_comod(&comodule_complex(&m)?, m.coalgebra(), cap)?,
                Object::Contramodule(p) => round_trip_contra(&contramodule_complex(&p)?, p.coalgebra(), cap)?,
            };
            (rt.holds(), json!({ "homology": rt.output.homology_table() }), Value::Null)
        }
        "homological_dimension" => {
            let h = homological_dimension(arg(t, 0, &o.coalgebras, "coalgebra")?, cap)?;
            (true, serde_json::to_value(h).expect("serializable"), Value::Null)
        }
        "lphi_iwasawa" => {
            let pm = arg(t, 0, &o.pcmodules, "pcmodule")?;
            let l = lphi_iwasawa(pm, depth)?;
            let two_term = l.support().iter().all(|i| (-1..=0).contains(i));
            let ok = two_term && (!pm.is_finite_length() || l.euler_characteristic == 0);
            (
                ok,
                json!({
                    "homology": l.homology,
                    "ranks": [l.ranks.0, l.ranks.1],
                    "euler_characteristic": l.euler_characteristic,
                    "divisible_rank": l.divisible_rank,
                }),
                json!({ "stabilized_at": l.stabilized_at, "level_dims": l.level_dims }),
            )
        }
        "artin_rees" => {
            let pm = arg(t, 0, &o.pcmodules, "pcmodule")?;
            let gens = t.submodule.as_ref().ok_or_else(|| Error::Precondition("artin_rees needs a submodule".into()))?;
            let sub: SubmoduleGens = gens.iter().map(|g| g.iter().map(|c| Poly::new(pm.prime(), c)).collect()).collect();
            let ar = artin_rees_number(pm, &sub, depth)?;
            let certs = ar.certificates.iter().map(|c| json!({ "n": c.n, "dim": c.dim, "holds": c.lhs.same_span(&c.rhs) })).collect::<Vec<_>>();
            (true, json!({ "m": ar.m, "bound": ar.bound, "depth": ar.depth }), json!(certs))
        }
        "flatness" => {
            let pm = arg(t, 0, &o.pcmodules, "pcmodule")?;
            let r = flatness_comparison(pm, t.x_size.unwrap_or(1), depth, &ShortExact::standard(pm.prime()))?;
            (r.passes(), serde_json::to_value(&r).expect("serializable"), Value::Null)
        }
        "sandbox_adjunction" | "sandbox_equivalence" | "contratensor_g" => {
            let g = arg(t, 0, &o.groups, "group")?;
            let h = t.subgroup.clone().unwrap_or_else(|| vec![g.identity()]);
            let family = rep_family(g, f, count, seed);
            match t.op.as_str() {
                "sandbox_adjunction" => {
                    let sb = finite_sandbox(g, &h, f)?;
                    let semi = check_semialgebra(&sb.semialgebra);
                    let mut rows = Vec::new();
                    let mut ok = semi.is_ok();
                    for (i, p) in family.iter().enumerate() {
                        for (j, m) in family.iter().enumerate() {
                            match sandbox_adjunction(&sb, p, m) {
                                Ok(a) => rows.push(json!({ "p": i, "m": j, "lhs_dim": a.lhs_dim, "rhs_dim": a.rhs_dim, "pass": true })),
                                Err(w) => {
                                    ok = false;
                                    rows.push(json!({ "p": i, "m": j, "pass": false, "violation": w }));
                                }
                            }
                        }
                    }
                    (ok, json!({ "semialgebra": semi.is_ok(), "pairs": rows.len() }), json!(rows))
                }
                "sandbox_equivalence" => {
                    let sb = finite_sandbox(g, &h, f)?;
                    let e = sandbox_equivalence(&sb, &family)?;
                    (
                        e.passes(),
                        json!({
                            "modules": e.modules,
                            "coprime": e.coprime,
                            "unit_isos": e.unit_isos,
                            "counit_isos": e.counit_isos,
                            "adjunction_pairs": e.adjunction_pairs,
                            "restriction_checks": e.restriction_checks,
                        }),
                        json!(e.failures),
                    )
                }
                _ => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for (i, n) in family.iter().enumerate() {
                        for (j, p) in family.iter().enumerate() {
                            let r = contratensor_g_comparison(g, n, p, o.orientation);
                            ok &= r.passes();
                            rows.push(json!({
                                "n": i, "p": j, "tensor_dim": r.tensor_dim, "contratensor_dim": r.contratensor_dim,
                                "well_defined": r.well_defined, "iso": r.iso,
                            }));
                        }
                    }
                    (ok, json!({ "pairs": rows.len() }), json!(rows))
                }
            }
        }
        "derived_equivalence_g" | "ext_tor_vanishing" => {
            let tower = arg(t, 0, &o.towers, "tower")?;
            let desc = build_g(tower, t.window.unwrap_or(2))?;
            let level = t.level.unwrap_or(1);
            let obj = match t.object.as_deref().unwrap_or("trivial-contra") {
                "trivial-contra" => GObject::Contra(GContramodule::trivial(desc.p())),
                "trivial-smooth" => GObject::Smooth(SmoothGModule::trivial(desc.p())),
                "s-window" => GObject::Smooth(SmoothGModule::s_window(&desc, level)?),
                "t-window" => GObject::Contra(GContramodule::t_window(&desc, level)?),
                "free" => GObject::Contra(GContramodule::free_untwisted(&desc, level, 2)?),
                other => return Err(Error::Precondition(format!("unknown object {other:?}"))),
            };
            if t.op == "derived_equivalence_g" {
                let r = derived_equivalence_g(&desc, &obj, cap, depth)?;
                (
                    r.holds(),
                    json!({
                        "functor": r.functor,
                        "homology": r.homology.types(),
                        "koszul_agrees": r.koszul_agrees,
                        "round_trip": r.round_trip,
                    }),
                    json!({ "stabilized_at": r.stabilized_at, "support_ok": r.support_ok }),
                )
            } else {
                let r = ext_tor_vanishing(&desc, &obj, t.count.unwrap_or(3))?;
                (r.vanishes(), json!({ "functor": r.functor, "values": r.values }), json!(r.trace))
            }
        }
        other => return Err(Error::Unsupported(format!("operation {other:?}"))),
    })
}
