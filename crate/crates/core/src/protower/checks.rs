//! Executable statements about finite-length and finitely presented
//! `k[[t]]`-modules: full faithfulness over a dense subring, the contratensor
//! comparison, Nakayama, Artin–Rees, injective extension and flatness.

use serde::Serialize;

use super::poly::Poly;
use super::smith::{smith_form, PCModule};
use super::tmodule::{intertwiners, unvec, vec_of, TModule, Truncation};
use super::tower::{
    builtin_tower, iwasawa_truncation, level_comodule, level_contramodule, level_inclusion, level_regular, GroupTower,
    TowerKind, Twist,
};
use crate::coalg::Side;
use crate::contramod::{contra_hom, contratensor};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::witness::{shape, Violation};

/// Columns of `a` spanning `span(a) ∩ span(b)`.
pub(crate) fn intersect(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let n = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zeros(f, n, 0);
    }
    let null = Matrix::hstack(f, n, &[a, &b.neg()]).nullspace();
    let coeffs = null.block(0, 0, a.cols(), null.cols());
    a.mul(&coeffs).column_basis()
}

fn span_eq(a: &Matrix, b: &Matrix) -> bool {
    a.column_basis().cols() == b.column_basis().cols() && Matrix::hstack(a.field(), a.rows(), &[a, b]).rank() == a.rank()
}

fn stack_vecs(f: Field, maps: &[Matrix], rows: usize) -> Matrix {
    let cols: Vec<Matrix> = maps.iter().map(vec_of).collect();
    Matrix::from_columns(f, rows, &cols)
}

/// A cyclic tower deep enough to host modules of nilpotency `e`, plus one more level.
fn hosting_tower(p: u64, level: usize) -> Result<GroupTower> {
    builtin_tower(TowerKind::Zp, p, level + 1, Twist::Identity)
}

/// Three descriptions of `Hom(P, Q)` compared as subspaces of `Hom_k(P, Q)`.
#[derive(Clone, Debug, Serialize)]
pub struct HomComparison {
    pub level: usize,
    /// Maps commuting with `t`.
    pub dim_polynomial: usize,
    /// Maps commuting with `γ = 1 + t` and `γ^{-1}`.
    pub dim_laurent: usize,
    /// Contramodule morphisms over `C_n`.
    pub dim_contra: usize,
    pub witness: Option<Violation>,
}

impl HomComparison {
    pub fn passes(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn dense_subring_hom_check(p: &TModule, q: &TModule) -> Result<HomComparison> {
    if p.prime() != q.prime() {
        return Err(Error::FieldMismatch(p.field(), q.field()));
    }
    let f = p.field();
    let level = p.level().max(q.level());
    let tower = builtin_tower(TowerKind::Zp, p.prime(), level, Twist::Identity)?;
    let rows = p.dim() * q.dim();
    let poly = stack_vecs(f, &p.hom_basis(q), rows);
    let gamma = |m: &TModule| Matrix::identity(f, m.dim()).add(m.t());
    let (gp, gq) = (gamma(p), gamma(q));
    let (gpi, gqi) = (gp.inverse().expect("1 + t is a unit"), gq.inverse().expect("1 + t is a unit"));
    let laurent = stack_vecs(f, &intertwiners(f, &[(gp, gq), (gpi, gqi)], p.dim(), q.dim()), rows);
    let (cp, cq) = (level_contramodule(&tower, level, p)?, level_contramodule(&tower, level, q)?);
    let (_, basis) = contra_hom(&cp, &cq)?;
    let contra = stack_vecs(f, &basis.iter().map(|b| b.matrix.clone()).collect::<Vec<_>>(), rows);
    let witness = if !span_eq(&poly, &laurent) {
        Some(shape("Hom over k[t] equals Hom over k[γ, γ^{-1}]", &format!("dims {} vs {}", poly.cols(), laurent.cols())))
    } else if !span_eq(&poly, &contra) {
        Some(shape("Hom over k[t] equals contramodule Hom", &format!("dims {} vs {}", poly.cols(), contra.cols())))
    } else {
        None
    };
    Ok(HomComparison {
        level,
        dim_polynomial: poly.cols(),
        dim_laurent: laurent.cols(),
        dim_contra: contra.cols(),
        witness,
    })
}

/// `N ⊗_{k[t]} P` against `N ⊙_{C_n} P` at the hosting level and the next one.
#[derive(Clone, Debug, Serialize)]
pub struct ContratensorComparison {
    pub level: usize,
    pub dim_module_tensor: usize,
    pub dim_contratensor: usize,
    pub dim_next_level: usize,
    /// The map induced by the identity of `N ⊗_k P`, module tensor to contratensor.
    #[serde(skip)]
    pub iso: Matrix,
    pub witness: Option<Violation>,
}

impl ContratensorComparison {
    pub fn passes(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn contratensor_comparison(n: &TModule, p: &TModule) -> Result<ContratensorComparison> {
    if n.prime() != p.prime() {
        return Err(Error::FieldMismatch(n.field(), p.field()));
    }
    let f = n.field();
    let level = n.level().max(p.level());
    let tower = hosting_tower(n.prime(), level)?;
    let (tens, q_tens) = n.tensor(p);
    let contra_at = |lvl: usize| -> Result<Matrix> {
        let nc = level_comodule(&tower, lvl, n, Side::Right)?;
        let pc = level_contramodule(&tower, lvl, p)?;
        Ok(contratensor(&nc, &pc)?.1.matrix)
    };
    let q_con = contra_at(level)?;
    let q_next = contra_at(level + 1)?;
    let total = n.dim() * p.dim();
    let iso = if total == 0 {
        Matrix::zeros(f, 0, 0)
    } else {
        q_con.mul(&q_tens.right_inverse().expect("projection is surjective"))
    };
    let witness = if total > 0 && iso.mul(&q_tens) != q_con {
        Some(shape("module tensor relations hold in the contratensor product", "identity of N ⊗ P"))
    } else if iso.rows() != iso.cols() || iso.rank() != iso.rows() {
        Some(shape("comparison map is bijective", &format!("dims {} vs {}", tens.dim(), q_con.rows())))
    } else if q_next.rows() != q_con.rows() || (total > 0 && !span_eq(&q_next.transpose(), &q_con.transpose())) {
        Some(shape("contratensor product is stable in the level", &format!("dims {} vs {}", q_con.rows(), q_next.rows())))
    } else {
        None
    };
    Ok(ContratensorComparison {
        level,
        dim_module_tensor: tens.dim(),
        dim_contratensor: q_con.rows(),
        dim_next_level: q_next.rows(),
        iso,
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaReport {
    /// `dim P / tP`, read off the constant terms of the presentation.
    pub quotient_dim: usize,
    /// Minimal number of generators from the Smith form.
    pub smith_generators: usize,
}

impl NakayamaReport {
    pub fn passes(&self) -> bool {
        self.quotient_dim > 0
    }

    pub fn agrees_with_smith(&self) -> bool {
        self.quotient_dim == self.smith_generators
    }
}

/// `P / IP ≠ 0` for nonzero `P`, with `dim P/tP = s − rank A(0)`.
pub fn nakayama_check(m: &PCModule) -> Result<NakayamaReport> {
    let sm = smith_form(m);
    if sm.free_rank == 0 && sm.exponents.is_empty() {
        return Err(Error::Precondition("Nakayama check needs a nonzero module".into()));
    }
    let f = Field::fp(m.prime());
    let a0 = Matrix::from_fn(f, m.generators(), m.relations(), |i, j| m.entry(i, j).coeff(0) as i64);
    Ok(NakayamaReport { quotient_dim: m.generators() - a0.rank(), smith_generators: sm.generator_count() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinReesCertificate {
    pub n: usize,
    /// `N ∩ t^{n+m} M`, as columns in the truncation.
    #[serde(skip)]
    pub lhs: Matrix,
    /// `t^n (N ∩ t^m M)`.
    #[serde(skip)]
    pub rhs: Matrix,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinRees {
    pub m: usize,
    pub depth: usize,
    /// A priori bound on the least valid `m`: the larger of the torsion exponents of `M` and `M/N`.
    pub bound: usize,
    /// Truncation `M / t^L M` the computation ran in.
    pub truncation: usize,
    pub certificates: Vec<ArtinReesCertificate>,
    /// Validity for `n > depth` rests on the lemma, not on a check.
    pub beyond_depth_asserted: bool,
}

/// Generators of a submodule as columns of polynomials, one entry per generator of `M`.
pub type SubmoduleGens = Vec<Vec<Poly>>;

fn sub_image(tr: &Truncation, m: &PCModule, sub: &SubmoduleGens) -> Matrix {
    let f = tr.module.field();
    let l = tr.level;
    let gens: Vec<Matrix> = sub
        .iter()
        .map(|g| {
            let mut v = Matrix::zeros(f, m.generators() * l, 1);
            for (i, e) in g.iter().enumerate() {
                for (k, &a) in e.coeffs().iter().enumerate() {
                    if k < l && a != 0 {
                        v.set_int(i * l + k, 0, a as i64);
                    }
                }
            }
            tr.projection.mul(&v)
        })
        .collect();
    Matrix::from_columns(f, tr.module.dim(), &gens)
}

/// The `t`-stable span of the columns of `g`.
fn t_span(m: &TModule, g: &Matrix) -> Matrix {
    let f = m.field();
    let mut parts = vec![g.clone()];
    let mut cur = g.clone();
    for _ in 0..m.dim() {
        cur = m.t().mul(&cur);
        parts.push(cur.clone());
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    Matrix::hstack(f, m.dim(), &refs).column_basis()
}

pub fn artin_rees_number(m: &PCModule, sub: &SubmoduleGens, depth: usize) -> Result<ArtinRees> {
    if depth == 0 {
        return Err(Error::Precondition("Artin–Rees depth must be at least 1".into()));
    }
    if sub.iter().any(|g| g.len() != m.generators()) {
        return Err(Error::Mismatch("submodule generator has the wrong length".into()));
    }
    let bound = smith_form(m).max_exponent().max(smith_form(&m.quotient_by(sub)).max_exponent());
    let l = depth + 2 * bound + 1;
    let tr = TModule::truncate(m, l);
    let ml = &tr.module;
    let n_sub = t_span(ml, &sub_image(&tr, m, sub));
    let filt: Vec<Matrix> = (0..=l).map(|j| ml.power_image(j)).collect();
    for cand in 0..=bound {
        let base = intersect(&n_sub, &filt[cand]);
        let mut certs = Vec::new();
        let mut ok = true;
        for n in 0..=depth {
            let lhs = intersect(&n_sub, &filt[n + cand]);
            let rhs = ml.t().pow(n as u64).mul(&base);
            if !span_eq(&lhs, &rhs) {
                ok = false;
                break;
            }
            certs.push(ArtinReesCertificate { n, dim: lhs.cols(), lhs, rhs: rhs.column_basis() });
        }
        if ok {
            return Ok(ArtinRees { m: cand, depth, bound, truncation: l, certificates: certs, beyond_depth_asserted: true });
        }
    }
    Err(Error::Mismatch(format!("no Artin–Rees number up to the bound {bound}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    /// `M / t^L M` on which `g` is defined.
    pub truncation: usize,
    pub artin_rees: usize,
    /// Level of the target `C_{k'}` receiving `g`.
    pub target_level: usize,
    #[serde(skip)]
    pub module: TModule,
    /// `dim C_{k'} × dim M_L`.
    #[serde(skip)]
    pub g: Matrix,
    /// `g` on the generators of `N` equals `f` followed by `C_k ↪ C_{k'}`.
    pub restricts: bool,
    pub t_linear: bool,
}

/// Extends `f : N → C_k`, given on the generators of `N`, to `M`: `f` kills
/// `N ∩ t^{q+m} M` for `q = p^k` and the Artin–Rees number `m`, so it lives on
/// `M / t^{q+m} M`, where injectivity of the cofree comodule lets it extend.
pub fn injective_extension(
    tower: &GroupTower,
    k: usize,
    m: &PCModule,
    sub: &SubmoduleGens,
    f_on_gens: &Matrix,
) -> Result<Extension> {
    let fld = tower.field();
    let j = level_regular(tower, k)?;
    if f_on_gens.rows() != j.dim() || f_on_gens.cols() != sub.len() {
        return Err(Error::DimensionMismatch { expected: (j.dim(), sub.len()), found: (f_on_gens.rows(), f_on_gens.cols()) });
    }
    let q = tower.modulus(k) as usize;
    let ar = artin_rees_number(m, sub, q)?;
    let l = q + ar.m;
    let tr = TModule::truncate(m, l);
    let ml = tr.module.clone();
    let gl = sub_image(&tr, m, sub);
    // Well-definedness: the kernel of the free cover of N_L must die under f.
    let g_count = sub.len();
    let free = TModule::jordan(tower.p, &vec![l; g_count]);
    let mut cover = Matrix::zeros(fld, ml.dim(), g_count * l);
    let mut fcover = Matrix::zeros(fld, j.dim(), g_count * l);
    for i in 0..g_count {
        let mut v = gl.col(i);
        let mut w = f_on_gens.col(i);
        for s in 0..l {
            cover.set_block(0, i * l + s, &v);
            fcover.set_block(0, i * l + s, &w);
            v = ml.t().mul(&v);
            w = j.t().mul(&w);
        }
    }
    debug_assert!(free.is_morphism(&ml, &cover));
    if !fcover.mul(&cover.nullspace()).is_zero() {
        return Err(Error::Precondition("f is not a well-defined module map on N".into()));
    }
    let mut target_level = k;
    while (tower.modulus(target_level) as usize) < l {
        target_level += 1;
    }
    if target_level > tower.depth {
        return Err(Error::Precondition(format!("tower depth {} is below the needed level {target_level}", tower.depth)));
    }
    let j2 = level_regular(tower, target_level)?;
    let iota = level_inclusion(tower, k, target_level)?;
    let want = iota.mul(f_on_gens);
    let (dj, dm) = (j2.dim(), ml.dim());
    let vars = dj * dm;
    let commute = Matrix::identity(fld, dj).kron(&ml.t().transpose()).sub(&j2.t().kron(&Matrix::identity(fld, dm)));
    let mut restrict = Matrix::zeros(fld, dj * g_count, vars);
    let mut rhs = Matrix::zeros(fld, dj * g_count + commute.rows(), 1);
    for i in 0..g_count {
        for r in 0..dj {
            for c in 0..dm {
                if !gl.is_zero_at(c, i) {
                    restrict.set(i * dj + r, r * dm + c, gl.get(c, i));
                }
            }
            if !want.is_zero_at(r, i) {
                rhs.set(commute.rows() + i * dj + r, 0, want.get(r, i));
            }
        }
    }
    let system = Matrix::vstack(fld, vars, &[&commute, &restrict]);
    let sol = system.solve(&rhs).ok_or_else(|| Error::Mismatch("extension system has no solution".into()))?;
    let g = unvec(&sol, dj, dm);
    let restricts = g.mul(&gl) == want;
    let t_linear = ml.is_morphism(&j2, &g);
    Ok(Extension { truncation: l, artin_rees: ar.m, target_level, module: ml, g, restricts, t_linear })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatLevel {
    pub n: usize,
    /// `dim (M ⊗_R R^s) / t^n`.
    pub dim_tensor: usize,
    /// `dim (M / t^n M)^s`.
    pub dim_levelwise: usize,
    pub iso: bool,
}

/// `0 → A → B → C → 0` of finite-length modules.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub a: TModule,
    pub b: TModule,
    pub c: TModule,
    pub i: Matrix,
    pub pr: Matrix,
}

impl ShortExact {
    /// `0 → t·R/t^2 → R/t^2 → k → 0`.
    pub fn standard(p: u64) -> ShortExact {
        let f = Field::fp(p);
        let b = TModule::jordan(p, &[2]);
        ShortExact {
            a: TModule::jordan(p, &[1]),
            c: TModule::jordan(p, &[1]),
            i: Matrix::from_rows(f, &[vec![0], vec![1]]),
            pr: Matrix::from_rows(f, &[vec![1, 0]]),
            b,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.a.is_morphism(&self.b, &self.i)
            && self.b.is_morphism(&self.c, &self.pr)
            && self.i.rank() == self.a.dim()
            && self.pr.rank() == self.c.dim()
            && self.pr.mul(&self.i).is_zero()
            && self.a.dim() + self.c.dim() == self.b.dim()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorCheck {
    pub level: usize,
    pub injective: bool,
    pub exact_middle: bool,
    pub surjective: bool,
}

impl TorCheck {
    pub fn passes(&self) -> bool {
        self.injective && self.exact_middle && self.surjective
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub x_size: usize,
    pub levels: Vec<FlatLevel>,
    pub tor: TorCheck,
}

impl FlatnessReport {
    pub fn passes(&self) -> bool {
        self.levels.iter().all(|l| l.iso) && self.tor.passes()
    }
}

/// Compares `(M ⊗_R R[[X]]) / t^n` with `(M/t^nM)[X]` at each `n ≤ depth` and
/// checks that tensoring `ses` with `(R/t^n)[X]` stays exact.
pub fn flatness_comparison(m: &PCModule, x_size: usize, depth: usize, ses: &ShortExact) -> Result<FlatnessReport> {
    if !ses.is_exact() {
        return Err(Error::Precondition("supplied sequence is not short exact".into()));
    }
    let f = Field::fp(m.prime());
    let s = x_size;
    let mx = m.tensor_free(s);
    let mut levels = Vec::new();
    for n in 1..=depth {
        let lhs = TModule::truncate(&mx, n);
        let rhs_base = TModule::truncate(m, n);
        let rhs = rhs_base.module.power(s);
        // Free basis t^j (e_i ⊗ x) at (i·s + x)·n + j maps to copy x of the class of t^j e_i.
        let cols = mx.generators() * n;
        let mut phi = Matrix::zeros(f, rhs.dim(), cols);
        for i in 0..m.generators() {
            for x in 0..s {
                for j in 0..n {
                    for b in 0..rhs_base.module.dim() {
                        let v = rhs_base.projection.get(b, i * n + j);
                        if !v.is_zero() {
                            phi.set(b * s + x, (i * s + x) * n + j, v);
                        }
                    }
                }
            }
        }
        let iso = if lhs.module.dim() == 0 {
            rhs.dim() == 0
        } else {
            let x = phi.mul(&lhs.projection.right_inverse().expect("projection is surjective"));
            x.mul(&lhs.projection) == phi && x.is_square() && x.rank() == x.rows() && lhs.module.is_morphism(&rhs, &x)
        };
        levels.push(FlatLevel { n, dim_tensor: lhs.module.dim(), dim_levelwise: rhs.dim(), iso });
    }
    let level = depth.max(ses.a.nilpotency()).max(ses.b.nilpotency()).max(ses.c.nilpotency()).max(1);
    let free = TModule::jordan(m.prime(), &vec![level; s]);
    let (ta, qa) = ses.a.tensor(&free);
    let (tb, qb) = ses.b.tensor(&free);
    let (tc, qc) = ses.c.tensor(&free);
    let induced = |q_src: &Matrix, q_dst: &Matrix, map: &Matrix| -> Matrix {
        let lifted = map.kron(&Matrix::identity(f, free.dim()));
        match q_src.right_inverse() {
            Some(sec) => q_dst.mul(&lifted).mul(&sec),
            None => Matrix::zeros(f, q_dst.rows(), 0),
        }
    };
    let i2 = induced(&qa, &qb, &ses.i);
    let p2 = induced(&qb, &qc, &ses.pr);
    let kernel_of_p = p2.nullspace();
    let tor = TorCheck {
        level,
        injective: i2.rank() == ta.dim(),
        exact_middle: p2.mul(&i2).is_zero() && kernel_of_p.cols() == i2.rank(),
        surjective: p2.rank() == tc.dim(),
    };
    debug_assert_eq!(tb.dim(), qb.rows());
    Ok(FlatnessReport { x_size: s, levels, tor })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedRingReport {
    pub level: usize,
    pub generators: usize,
    /// `dim I^j / I^{j+1}` for `j = 0, 1, …`.
    pub hilbert: Vec<usize>,
    /// Monomials in `d` variables with exponents below `p^n`, counted by degree.
    pub expected: Vec<usize>,
    pub commutative: bool,
    pub truncation_relations: bool,
    /// Monomials in `x_i = g_i − 1` give a basis of each graded piece.
    pub monomial_basis: bool,
}

impl GradedRingReport {
    pub fn passes(&self) -> bool {
        self.commutative
            && self.truncation_relations
            && self.monomial_basis
            && self.hilbert == self.expected
            && self.hilbert.get(1).copied() == Some(self.generators)
    }
}

/// `gr_I k[H/U_n]` against `k[s_1, …, s_d] / (s_i^{p^n})`.
pub fn graded_ring_check(tower: &GroupTower, n: usize) -> Result<GradedRingReport> {
    let it = iwasawa_truncation(tower, n)?;
    let f = tower.field();
    let dim = it.algebra.dim();
    let mult = it.algebra.mult.matrix.clone();
    let prod = |u: &Matrix, v: &Matrix| mult.mul(&u.kron(v));
    let mut powers = vec![Matrix::identity(f, dim), it.augmentation_ideal.column_basis()];
    while powers.last().unwrap().cols() > 0 {
        let last = powers.last().unwrap();
        let ideal = &powers[1];
        let mut cols = Vec::new();
        for a in 0..last.cols() {
            for b in 0..ideal.cols() {
                cols.push(prod(&last.col(a), &ideal.col(b)));
            }
        }
        powers.push(Matrix::from_columns(f, dim, &cols).column_basis());
    }
    let hilbert: Vec<usize> = powers.windows(2).map(|w| w[0].cols() - w[1].cols()).collect();
    let d = tower.rank();
    let q = tower.modulus(n) as usize;
    let mut expected = vec![0usize; d * (q - 1) + 1];
    let monomials: Vec<Vec<usize>> = exponent_vectors(d, q);
    for a in &monomials {
        expected[a.iter().sum::<usize>()] += 1;
    }
    let e = tower.levels[n].identity();
    let xs: Vec<Matrix> = (0..d)
        .map(|i| {
            let mut coords = vec![0u64; d];
            coords[i] = 1;
            let g = tower.element(n, &coords);
            let mut v = Matrix::zeros(f, dim, 1);
            v.set_int(g, 0, 1);
            v.add_int_at(e, 0, -1);
            v
        })
        .collect();
    let mut one = Matrix::zeros(f, dim, 1);
    one.set_int(e, 0, 1);
    let monomial = |a: &[usize]| -> Matrix {
        let mut acc = one.clone();
        for (i, &k) in a.iter().enumerate() {
            for _ in 0..k {
                acc = prod(&acc, &xs[i]);
            }
        }
        acc
    };
    let commutative = (0..d).all(|i| (0..d).all(|j| prod(&xs[i], &xs[j]) == prod(&xs[j], &xs[i])));
    let truncation_relations = xs.iter().all(|x| {
        let mut acc = one.clone();
        for _ in 0..q {
            acc = prod(&acc, x);
        }
        acc.is_zero()
    });
    let zero = Matrix::zeros(f, dim, 0);
    let monomial_basis = (0..hilbert.len()).all(|j| {
        let mono: Vec<Matrix> = monomials.iter().filter(|a| a.iter().sum::<usize>() == j).map(|a| monomial(a)).collect();
        let mono = Matrix::from_columns(f, dim, &mono);
        let next = powers.get(j + 1).unwrap_or(&zero);
        let both = Matrix::hstack(f, dim, &[&mono, next]);
        both.rank() == powers[j].cols() && mono.cols() + next.cols() == powers[j].cols() && powers[j].spans(&mono)
    });
    Ok(GradedRingReport {
        level: n,
        generators: d,
        hilbert,
        expected,
        commutative,
        truncation_relations,
        monomial_basis,
    })
}

fn exponent_vectors(d: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..q).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}
