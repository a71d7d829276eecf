//! Seeded generators of random structures, shared by the fuzzer, the
//! acceptance suite and the property tests.

use rand::Rng;

use crate::coalg::{group_function_coalgebra, Coalgebra, Side};
use crate::comod::{cofree, cofree_right, generated_subcomodule, Comodule};
use crate::contramod::{contra_from_dual, free_contra, generated_subcontramodule, Contramodule};
use crate::exactlin::{Fe, Field, Matrix, VecSpace};
use crate::group::{small_groups, FiniteGroup};
use crate::protower::{smith_form, PCModule, Poly, TModule};

pub fn element<R: Rng>(f: Field, rng: &mut R) -> Fe {
    match f.characteristic() {
        0 => f.from_i64(rng.random_range(-3..=3)),
        p => f.from_i64(rng.random_range(0..p) as i64),
    }
}

pub fn matrix<R: Rng>(f: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let x = element(f, rng);
            if !x.is_zero() {
                m.set(i, j, x);
            }
        }
    }
    m
}

/// A uniformly chosen group of order `≤ max_order` from the built-in list.
pub fn group<R: Rng>(max_order: usize, rng: &mut R) -> FiniteGroup {
    let all = small_groups(max_order);
    all[rng.random_range(0..all.len())].clone()
}

pub fn group_coalgebra<R: Rng>(max_order: usize, primes: &[u64], rng: &mut R) -> (FiniteGroup, Coalgebra) {
    let g = group(max_order, rng);
    let p = primes[rng.random_range(0..primes.len())];
    let c = group_function_coalgebra(&g, Field::fp(p));
    (g, c)
}

fn sparse_vector<R: Rng>(f: Field, dim: usize, rng: &mut R) -> Matrix {
    if rng.random_bool(0.3) {
        return matrix(f, dim, 1, rng);
    }
    let mut v = Matrix::zeros(f, dim, 1);
    v.set_int(rng.random_range(0..dim), 0, 1);
    v
}

/// A left or right comodule of dimension in `1..=max_dim`, cut out of a
/// cofree comodule by alternating cyclic subcomodules and quotients, possibly
/// summed with a second one.
///
/// Panics when no attempt lands within `max_dim` (smaller than every simple comodule).
pub fn comodule<R: Rng>(c: &Coalgebra, side: Side, max_dim: usize, rng: &mut R) -> Comodule {
    assert!(max_dim >= 1, "comodules are generated nonzero");
    for _ in 0..ATTEMPTS {
        if let Some(m) = comodule_attempt(c, side, max_dim, rng) {
            return m;
        }
    }
    panic!("no comodule of dimension ≤ {max_dim} found");
}

const ATTEMPTS: usize = 200;

fn comodule_attempt<R: Rng>(c: &Coalgebra, side: Side, max_dim: usize, rng: &mut R) -> Option<Comodule> {
    let f = c.field();
    let v = VecSpace::named(f, "v", rng.random_range(1..=2));
    let mut m = match side {
        Side::Left => cofree(c, &v),
        Side::Right => cofree_right(c, &v),
    }
    .expect("same field");
    let target = rng.random_range(1..=max_dim);
    for _ in 0..64 {
        if m.dim() <= target && rng.random_bool(0.5) {
            break;
        }
        let sub = generated_subcomodule(&m, &sparse_vector(f, m.dim(), rng));
        if sub.cols() == m.dim() {
            continue;
        }
        let take_sub = sub.cols() >= target.min(m.dim() - sub.cols()) && rng.random_bool(0.5);
        m = if take_sub { m.subcomodule(&sub).expect("generated").0 } else { m.quotient(&sub).expect("generated").0 };
    }
    if m.dim() > max_dim {
        let b = crate::comod::simple_subcomodule_basis(&m).expect("nonzero");
        m = m.subcomodule(&b).expect("simple").0;
    }
    if m.dim() > max_dim {
        return None;
    }
    if m.dim() < max_dim && rng.random_bool(0.3) {
        if let Some(extra) = comodule_attempt(c, side, max_dim - m.dim(), rng) {
            m = m.direct_sum(&extra).expect("same side");
        }
    }
    Some(m.relabel("m"))
}

/// A contramodule of dimension in `1..=max_dim`, cut out of a free
/// contramodule (or the dual of a random right comodule) by alternating
/// generated subcontramodules and quotients, possibly summed with another.
pub fn contramodule<R: Rng>(c: &Coalgebra, max_dim: usize, rng: &mut R) -> Contramodule {
    assert!(max_dim >= 1, "contramodules are generated nonzero");
    for _ in 0..ATTEMPTS {
        if let Some(p) = contramodule_attempt(c, max_dim, rng) {
            return p;
        }
    }
    panic!("no contramodule of dimension ≤ {max_dim} found");
}

fn contramodule_attempt<R: Rng>(c: &Coalgebra, max_dim: usize, rng: &mut R) -> Option<Contramodule> {
    let f = c.field();
    let target = rng.random_range(1..=max_dim);
    let mut p = if rng.random_bool(0.25) {
        let n = comodule(c, Side::Right, max_dim, rng);
        contra_from_dual(&n, &VecSpace::ground(f)).expect("right comodule")
    } else {
        free_contra(c, &VecSpace::named(f, "v", rng.random_range(1..=2))).expect("same field")
    };
    for _ in 0..64 {
        if p.dim() <= target && rng.random_bool(0.5) {
            break;
        }
        let sub = generated_subcontramodule(&p, &sparse_vector(f, p.dim(), rng));
        if sub.cols() == p.dim() {
            continue;
        }
        let take_sub = sub.cols() >= target.min(p.dim() - sub.cols()) && rng.random_bool(0.5);
        p = if take_sub { p.subcontramodule(&sub).expect("generated").0 } else { p.quotient(&sub).expect("generated").0 };
    }
    for _ in 0..64 {
        if p.dim() <= max_dim {
            break;
        }
        let sub = generated_subcontramodule(&p, &sparse_vector(f, p.dim(), rng));
        if sub.cols() < p.dim() {
            p = if sub.cols() <= max_dim { p.subcontramodule(&sub).expect("generated").0 } else { p.quotient(&sub).expect("generated").0 };
        }
    }
    if p.dim() > max_dim || p.dim() == 0 {
        return None;
    }
    if p.dim() < max_dim && rng.random_bool(0.3) {
        if let Some(extra) = contramodule_attempt(c, max_dim - p.dim(), rng) {
            p = p.direct_sum(&extra).expect("same coalgebra");
        }
    }
    Some(p.relabel("p"))
}

/// A polynomial over `F_p` of degree `≤ max_deg`.
pub fn poly<R: Rng>(p: u64, max_deg: usize, rng: &mut R) -> Poly {
    let c: Vec<i64> = (0..=max_deg).map(|_| rng.random_range(0..p) as i64).collect();
    Poly::new(p, &c)
}

/// A presentation with `1..=max_gens` generators and entries of degree `≤ max_deg`;
/// when `finite`, retried until it has finite length and exponents `≤ max_exp`.
pub fn pcmodule<R: Rng>(p: u64, max_gens: usize, max_deg: usize, finite: bool, max_exp: usize, rng: &mut R) -> PCModule {
    for _ in 0..ATTEMPTS * 10 {
        let s = rng.random_range(1..=max_gens);
        let r = if finite { rng.random_range(s..=s + 1) } else { rng.random_range(0..=s + 1) };
        let entries = (0..s * r)
            .map(|_| if rng.random_bool(0.35) { Poly::zero(p) } else { poly(p, max_deg, rng) })
            .collect();
        let m = PCModule::new(p, s, r, entries).expect("consistent shape");
        let sm = smith_form(&m);
        if sm.max_exponent() > max_exp || (finite && (sm.free_rank > 0 || sm.exponents.is_empty())) {
            continue;
        }
        return m;
    }
    panic!("no presentation within the requested bounds");
}

/// A finite-length module with block sizes `≤ max_exp`, total dimension
/// `1..=max_dim`, in a random basis.
pub fn tmodule<R: Rng>(p: u64, max_dim: usize, max_exp: usize, rng: &mut R) -> TModule {
    let f = Field::fp(p);
    let target = rng.random_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut dim = 0;
    while dim < target {
        let e = rng.random_range(1..=max_exp.min(target - dim));
        blocks.push(e);
        dim += e;
    }
    let j = TModule::jordan(p, &blocks);
    let s = loop {
        let s = matrix(f, dim, dim, rng);
        if s.rank() == dim {
            break s;
        }
    };
    let t = s.mul(j.t()).mul(&s.inverse().expect("invertible"));
    TModule::new(p, t).expect("conjugate of a nilpotent matrix")
}
