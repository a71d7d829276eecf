//! Scenario files: named objects over one prime field and an ordered task list.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::coalg::{check_coalgebra, Coalgebra, Side};
use crate::comod::{check_comodule, Comodule};
use crate::contramod::{check_contramodule, Contramodule};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, VecSpace};
use crate::group::FiniteGroup;
use crate::protower::{builtin_tower, check_tower, GroupTower, PCModule, TowerKind, Twist};
use crate::smoothg::Orientation;

/// The bundled scenarios, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("ktt-two-term", include_str!("../../scenarios/ktt-two-term.toml")),
    ("sandbox-s3", include_str!("../../scenarios/sandbox-s3.toml")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    /// Characteristic of the ground field; every object lives over it.
    #[serde(default = "default_field")]
    pub field: u64,
    pub seed: Option<u64>,
    pub orientation: Option<String>,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDecl>,
    #[serde(default)]
    pub coalgebras: BTreeMap<String, CoalgebraDecl>,
    #[serde(default)]
    pub comodules: BTreeMap<String, ModuleDecl>,
    #[serde(default)]
    pub contramodules: BTreeMap<String, ModuleDecl>,
    #[serde(default)]
    pub towers: BTreeMap<String, TowerDecl>,
    #[serde(default)]
    pub pcmodules: BTreeMap<String, PCModuleDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

fn default_field() -> u64 {
    2
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDecl {
    /// `cyclic:n`, `dihedral:n`, `symmetric:n`, `alternating:4`, `quaternion:8`.
    pub builtin: Option<String>,
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDecl {
    /// Group-function coalgebra `k(G)`.
    pub group: Option<String>,
    /// Path coalgebra: vertex count and arrows.
    pub vertices: Option<usize>,
    pub arrows: Option<Vec<(usize, usize)>>,
    /// Explicit structure: `Δ` as a `dim² × dim` matrix, `ε` as `1 × dim`.
    pub comult: Option<Vec<Vec<i64>>>,
    pub counit: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub coalgebra: String,
    pub dim: usize,
    #[serde(default)]
    pub side: Option<String>,
    /// One `dim × dim` matrix per basis element of the coalgebra.
    pub coefficients: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDecl {
    pub kind: String,
    pub depth: usize,
    #[serde(default)]
    pub twist: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PCModuleDecl {
    #[serde(default)]
    pub free: usize,
    #[serde(default)]
    pub torsion: Vec<usize>,
    /// Relation matrix: rows are generators, entries are coefficient lists in `t`.
    pub relations: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, Default, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    pub cap: Option<usize>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub dim: Option<usize>,
    pub level: Option<usize>,
    pub window: Option<usize>,
    pub x_size: Option<usize>,
    pub object: Option<String>,
    pub subgroup: Option<Vec<usize>>,
    /// Submodule generators: one column of coefficient lists per generator.
    pub submodule: Option<Vec<Vec<Vec<i64>>>>,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Scenario { path: path.into(), message: message.into() }
}

pub fn parse(text: &str) -> Result<Scenario> {
    toml::from_str(text).map_err(|e| err("<root>", e.to_string()))
}

/// The built objects of a validated scenario.
#[derive(Clone, Debug)]
pub struct Objects {
    pub field: Field,
    pub orientation: Orientation,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub coalgebras: BTreeMap<String, Coalgebra>,
    pub comodules: BTreeMap<String, Comodule>,
    pub contramodules: BTreeMap<String, Contramodule>,
    pub towers: BTreeMap<String, GroupTower>,
    pub pcmodules: BTreeMap<String, PCModule>,
}

impl Objects {
    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        [
            (self.groups.contains_key(name), "group"),
            (self.coalgebras.contains_key(name), "coalgebra"),
            (self.comodules.contains_key(name), "comodule"),
            (self.contramodules.contains_key(name), "contramodule"),
            (self.towers.contains_key(name), "tower"),
            (self.pcmodules.contains_key(name), "pcmodule"),
        ]
        .into_iter()
        .find(|(hit, _)| *hit)
        .map(|(_, k)| k)
    }
}

fn builtin_group(spec: &str) -> Option<FiniteGroup> {
    let (kind, n) = spec.split_once(':')?;
    let n: usize = n.parse().ok()?;
    match kind {
        "cyclic" if n >= 1 => Some(FiniteGroup::cyclic(n)),
        "dihedral" if n >= 2 => Some(FiniteGroup::dihedral(n)),
        "symmetric" if (1..=4).contains(&n) => Some(FiniteGroup::symmetric(n)),
        "alternating" if n == 4 => Some(FiniteGroup::alternating4()),
        "quaternion" if n == 8 => Some(FiniteGroup::quaternion8()),
        _ => None,
    }
}

fn matrix(f: Field, path: &str, rows: &[Vec<i64>], shape: (usize, usize)) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(err(path, format!("expected a {}×{} matrix", shape.0, shape.1)));
    }
    Ok(Matrix::from_rows(f, rows))
}

fn twist(path: &str, s: Option<&str>) -> Result<Twist> {
    match s.unwrap_or("identity") {
        "identity" => Ok(Twist::Identity),
        "inversion" => Ok(Twist::Inversion),
        "swap" => Ok(Twist::Swap),
        other => Err(err(path, format!("unknown twist {other:?}"))),
    }
}

fn tower_kind(path: &str, s: &str) -> Result<TowerKind> {
    match s {
        "zp" => Ok(TowerKind::Zp),
        "zp2" => Ok(TowerKind::Zp2),
        other => Err(err(path, format!("unknown tower kind {other:?}"))),
    }
}

pub fn orientation(s: Option<&str>) -> Result<Orientation> {
    match s.unwrap_or("inverse") {
        "inverse" => Ok(Orientation::Inverse),
        "literal" => Ok(Orientation::Literal),
        other => Err(err("orientation", format!("unknown orientation {other:?}"))),
    }
}

/// Schema, references and axioms: every declared coalgebra, comodule and
/// contramodule must pass its checker. Diagnostics carry a path into the file.
pub fn validate(s: &Scenario) -> std::result::Result<Objects, Vec<Error>> {
    let mut diags = Vec::new();
    let f = match Field::new(s.field) {
        Ok(f) if s.field != 0 => f,
        _ => return Err(vec![err("field", format!("{} is not a supported prime", s.field))]),
    };
    let orientation = orientation(s.orientation.as_deref()).unwrap_or_else(|e| {
        diags.push(e);
        Orientation::Inverse
    });
    let mut o = Objects {
        field: f,
        orientation,
        groups: BTreeMap::new(),
        coalgebras: BTreeMap::new(),
        comodules: BTreeMap::new(),
        contramodules: BTreeMap::new(),
        towers: BTreeMap::new(),
        pcmodules: BTreeMap::new(),
    };

    for (name, g) in &s.groups {
        let path = format!("groups.{name}");
        let built = match (&g.builtin, &g.table) {
            (Some(b), None) => builtin_group(b).ok_or_else(|| err(&path, format!("unknown builtin group {b:?}"))),
            (None, Some(t)) => FiniteGroup::from_table(name, t.clone()).map_err(|e| err(format!("{path}.table"), e.to_string())),
            _ => Err(err(&path, "give exactly one of builtin, table")),
        };
        match built {
            Ok(g) => {
                o.groups.insert(name.clone(), g);
            }
            Err(e) => diags.push(e),
        }
    }

    for (name, c) in &s.coalgebras {
        let path = format!("coalgebras.{name}");
        let built = match (&c.group, c.vertices, &c.comult) {
            (Some(g), None, None) => match o.groups.get(g) {
                Some(g) => Ok(Coalgebra::group_function(g, f)),
                None => Err(err(format!("{path}.group"), format!("dangling reference {g:?}"))),
            },
            (None, Some(v), None) => Coalgebra::path_coalgebra(f, v, c.arrows.as_deref().unwrap_or(&[])).map_err(|e| err(&path, e.to_string())),
            (None, None, Some(d)) => {
                let n = d.first().map_or(0, Vec::len);
                let counit = c.counit.clone().unwrap_or_default();
                matrix(f, &format!("{path}.comult"), d, (n * n, n)).and_then(|d| {
                    let e = matrix(f, &format!("{path}.counit"), &counit, (1, n))?;
                    Coalgebra::new(name, VecSpace::named(f, "c", n), d, e).map_err(|e| err(&path, e.to_string()))
                })
            }
            _ => Err(err(&path, "give exactly one of group, vertices, comult")),
        };
        match built {
            Ok(c) => match check_coalgebra(&c) {
                Ok(()) => {
                    o.coalgebras.insert(name.clone(), c);
                }
                Err(w) => diags.push(err(&path, format!("coalgebra axioms fail: {w}"))),
            },
            Err(e) => diags.push(e),
        }
    }

    let module_parts = |kind: &str, name: &str, m: &ModuleDecl, diags: &mut Vec<Error>| -> Option<(Coalgebra, VecSpace, Vec<Matrix>)> {
        let path = format!("{kind}.{name}");
        let Some(c) = o.coalgebras.get(&m.coalgebra) else {
            diags.push(err(format!("{path}.coalgebra"), format!("dangling reference {:?}", m.coalgebra)));
            return None;
        };
        if m.coefficients.len() != c.dim() {
            diags.push(err(format!("{path}.coefficients"), format!("expected {} matrices, one per basis element", c.dim())));
            return None;
        }
        let mut coeffs = Vec::new();
        for (i, rows) in m.coefficients.iter().enumerate() {
            match matrix(f, &format!("{path}.coefficients[{i}]"), rows, (m.dim, m.dim)) {
                Ok(x) => coeffs.push(x),
                Err(e) => {
                    diags.push(e);
                    return None;
                }
            }
        }
        Some((c.clone(), VecSpace::named(f, name, m.dim), coeffs))
    };

    for (name, m) in &s.comodules {
        let path = format!("comodules.{name}");
        let side = match m.side.as_deref().unwrap_or("left") {
            "left" => Side::Left,
            "right" => Side::Right,
            other => {
                diags.push(err(format!("{path}.side"), format!("unknown side {other:?}")));
                continue;
            }
        };
        let Some((c, v, coeffs)) = module_parts("comodules", name, m, &mut diags) else { continue };
        let cm = Comodule::from_coefficients(&c, v, side, &coeffs);
        match check_comodule(&cm) {
            Ok(()) => {
                o.comodules.insert(name.clone(), cm);
            }
            Err(w) => diags.push(err(&path, format!("comodule axioms fail: {w}"))),
        }
    }

    for (name, m) in &s.contramodules {
        let path = format!("contramodules.{name}");
        if m.side.is_some() {
            diags.push(err(format!("{path}.side"), "contramodules are left contramodules"));
            continue;
        }
        let Some((c, v, coeffs)) = module_parts("contramodules", name, m, &mut diags) else { continue };
        let pc = Contramodule::from_coefficients(&c, v, &coeffs);
        match check_contramodule(&pc) {
            Ok(()) => {
                o.contramodules.insert(name.clone(), pc);
            }
            Err(w) => diags.push(err(&path, format!("contramodule axioms fail: {w}"))),
        }
    }

    for (name, t) in &s.towers {
        let path = format!("towers.{name}");
        let built = tower_kind(&format!("{path}.kind"), &t.kind)
            .and_then(|k| Ok((k, twist(&format!("{path}.twist"), t.twist.as_deref())?)))
            .and_then(|(k, tw)| builtin_tower(k, s.field, t.depth, tw).map_err(|e| err(&path, e.to_string())));
        match built {
            Ok(t) => match check_tower(&t) {
                Ok(()) => {
                    o.towers.insert(name.clone(), t);
                }
                Err(w) => diags.push(err(&path, format!("tower checks fail: {w}"))),
            },
            Err(e) => diags.push(e),
        }
    }

    for (name, m) in &s.pcmodules {
        let path = format!("pcmodules.{name}");
        let built = match &m.relations {
            None => Ok(PCModule::from_invariants(s.field, m.free, &m.torsion)),
            Some(rows) if m.free == 0 && m.torsion.is_empty() => {
                PCModule::from_coefficients(s.field, rows).map_err(|e| err(format!("{path}.relations"), e.to_string()))
            }
            Some(_) => Err(err(&path, "give either relations or free/torsion")),
        };
        match built {
            Ok(pm) => {
                o.pcmodules.insert(name.clone(), pm);
            }
            Err(e) => diags.push(e),
        }
    }

    for (i, t) in s.tasks.iter().enumerate() {
        for (j, a) in t.args.iter().enumerate() {
            if o.kind_of(a).is_none() {
                diags.push(err(format!("tasks[{i}].args[{j}]"), format!("dangling reference {a:?}")));
            }
        }
        if let (Some(h), Some(g)) = (&t.subgroup, t.args.first().and_then(|a| o.groups.get(a))) {
            if h.iter().any(|&x| x >= g.order()) || !g.is_subgroup(h) {
                diags.push(err(format!("tasks[{i}].subgroup"), format!("{h:?} is not a subgroup of {}", g.name)));
            }
        }
        if !super::tasks::OPS.iter().any(|(op, _)| *op == t.op) {
            diags.push(err(format!("tasks[{i}].op"), format!("unknown operation {:?}", t.op)));
        }
    }

    if diags.is_empty() {
        Ok(o)
    } else {
        Err(diags)
    }
}
