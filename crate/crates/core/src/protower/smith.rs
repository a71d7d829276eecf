//! Finitely presented modules over `k[[t]]` and their Smith normal form.

use std::fmt;

use serde::Serialize;

use super::poly::{Local, Poly};
use crate::error::{Error, Result};

/// `R^s / A·R^r` for an `s × r` matrix `A` of polynomials, `R = F_p[[t]]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PCModule {
    p: u64,
    gens: usize,
    rels: usize,
    /// Row-major, `gens × rels`.
    entries: Vec<Poly>,
}

impl PCModule {
    pub fn new(p: u64, gens: usize, rels: usize, entries: Vec<Poly>) -> Result<PCModule> {
        if entries.len() != gens * rels {
            return Err(Error::DimensionMismatch { expected: (gens, rels), found: (entries.len(), 1) });
        }
        if entries.iter().any(|e| e.prime() != p) {
            return Err(Error::Mismatch("presentation entries over different primes".into()));
        }
        Ok(PCModule { p, gens, rels, entries })
    }

    /// Entries given as coefficient lists, one inner `Vec` per row.
    pub fn from_coefficients(p: u64, rows: &[Vec<Vec<i64>>]) -> Result<PCModule> {
        let gens = rows.len();
        let rels = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != rels) {
            return Err(Error::Mismatch("ragged presentation matrix".into()));
        }
        let entries = rows.iter().flatten().map(|c| Poly::new(p, c)).collect();
        PCModule::new(p, gens, rels, entries)
    }

    /// `R^a ⊕ ⊕ R/t^{e_i}` with its diagonal presentation.
    pub fn from_invariants(p: u64, free_rank: usize, exponents: &[usize]) -> PCModule {
        let gens = free_rank + exponents.len();
        let rels = exponents.len();
        let mut entries = vec![Poly::zero(p); gens * rels];
        for (j, &e) in exponents.iter().enumerate() {
            entries[(free_rank + j) * rels + j] = Poly::monomial(p, e);
        }
        PCModule { p, gens, rels, entries }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> usize {
        self.rels
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.rels + j]
    }

    /// `M ⊕ N`, block-diagonal presentation.
    pub fn direct_sum(&self, o: &PCModule) -> PCModule {
        let (gens, rels) = (self.gens + o.gens, self.rels + o.rels);
        let mut entries = vec![Poly::zero(self.p); gens * rels];
        for i in 0..self.gens {
            for j in 0..self.rels {
                entries[i * rels + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..o.gens {
            for j in 0..o.rels {
                entries[(self.gens + i) * rels + self.rels + j] = o.entry(i, j).clone();
            }
        }
        PCModule { p: self.p, gens, rels, entries }
    }

    /// `M ⊗_R R^s`: the presentation `A ⊗ I_s`, generator `(i, x)` at `i·s + x`.
    pub fn tensor_free(&self, s: usize) -> PCModule {
        let (gens, rels) = (self.gens * s, self.rels * s);
        let mut entries = vec![Poly::zero(self.p); gens * rels];
        for i in 0..self.gens {
            for j in 0..self.rels {
                for x in 0..s {
                    entries[(i * s + x) * rels + j * s + x] = self.entry(i, j).clone();
                }
            }
        }
        PCModule { p: self.p, gens, rels, entries }
    }

    /// Extra relations appended as columns: the quotient by the submodule they generate.
    pub fn quotient_by(&self, gens_of_sub: &[Vec<Poly>]) -> PCModule {
        let rels = self.rels + gens_of_sub.len();
        let mut entries = vec![Poly::zero(self.p); self.gens * rels];
        for i in 0..self.gens {
            for j in 0..self.rels {
                entries[i * rels + j] = self.entry(i, j).clone();
            }
            for (k, g) in gens_of_sub.iter().enumerate() {
                entries[i * rels + self.rels + k] = g[i].clone();
            }
        }
        PCModule { p: self.p, gens: self.gens, rels, entries }
    }

    pub fn is_finite_length(&self) -> bool {
        smith_form(self).free_rank == 0
    }

    pub fn is_zero(&self) -> bool {
        let s = smith_form(self);
        s.free_rank == 0 && s.exponents.is_empty()
    }
}

impl fmt::Debug for PCModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PCModule(F_{}; ", self.p)?;
        for i in 0..self.gens {
            let row: Vec<String> = (0..self.rels).map(|j| self.entry(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}

/// Invariants of `R^s / A·R^r` with `U·A·V = D`, `U` and `V` invertible over
/// `F_p[t]_(t)` and `D` diagonal with entries `t^{e}` (or zero).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub free_rank: usize,
    /// Torsion exponents `1 ≤ e_1 ≤ … ≤ e_r`; unit invariant factors are dropped.
    pub exponents: Vec<usize>,
    /// Valuations of all nonzero diagonal entries, including zeros for units.
    pub diagonal: Vec<usize>,
    pub u: Vec<Vec<Local>>,
    pub v: Vec<Vec<Local>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SmithSummary {
    pub free_rank: usize,
    pub exponents: Vec<usize>,
}

impl SmithForm {
    pub fn summary(&self) -> SmithSummary {
        SmithSummary { free_rank: self.free_rank, exponents: self.exponents.clone() }
    }

    /// Minimal number of generators, `a + r`.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.exponents.len()
    }

    pub fn max_exponent(&self) -> usize {
        self.exponents.last().copied().unwrap_or(0)
    }

    /// `k`-dimension; `None` when the free rank is positive.
    pub fn length(&self) -> Option<usize> {
        (self.free_rank == 0).then(|| self.exponents.iter().sum())
    }
}

type LMat = Vec<Vec<Local>>;

fn identity(p: u64, n: usize) -> LMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Local::one(p) } else { Local::zero(p) }).collect()).collect()
}

fn lmul(p: u64, a: &LMat, b: &LMat, inner: usize) -> LMat {
    let rows = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Local::zero(p); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
                }
            }
        }
    }
    out
}

/// Smith form by pivoting on an entry of least valuation.
pub fn smith_form(m: &PCModule) -> SmithForm {
    let p = m.p;
    let (s, r) = (m.gens, m.rels);
    let mut a: LMat = (0..s).map(|i| (0..r).map(|j| Local::from_poly(m.entry(i, j).clone())).collect()).collect();
    let mut u = identity(p, s);
    let mut v = identity(p, r);
    let mut diagonal = Vec::new();
    let mut k = 0;
    while k < s.min(r) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..s {
            for j in k..r {
                if let Some(val) = a[i][j].valuation() {
                    if best.is_none_or(|(_, _, b)| val < b) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        a.swap(k, pi);
        u.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in v.iter_mut() {
            row.swap(k, pj);
        }
        // Pivot is t^val · unit; normalise the unit away through V.
        let unit_inv = a[k][k].div_t(val).inv_unit();
        for row in a.iter_mut() {
            row[k] = row[k].mul(&unit_inv);
        }
        for row in v.iter_mut() {
            row[k] = row[k].mul(&unit_inv);
        }
        for i in k + 1..s {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].div_t(val);
            for j in 0..r {
                let d = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&d);
            }
            for j in 0..s {
                let d = f.mul(&u[k][j]);
                u[i][j] = u[i][j].sub(&d);
            }
        }
        for j in k + 1..r {
            if a[k][j].is_zero() {
                continue;
            }
            let f = a[k][j].div_t(val);
            for i in 0..s {
                let d = f.mul(&a[i][k]);
                a[i][j] = a[i][j].sub(&d);
            }
            for i in 0..r {
                let d = f.mul(&v[i][k]);
                v[i][j] = v[i][j].sub(&d);
            }
        }
        diagonal.push(val);
        k += 1;
    }
    let free_rank = s - diagonal.len();
    let exponents = diagonal.iter().copied().filter(|&e| e > 0).collect();
    SmithForm { free_rank, exponents, diagonal, u, v }
}

/// Re-multiplies `U·A·V` exactly and compares it with the claimed diagonal;
/// also checks that `U(0)` and `V(0)` are invertible mod `p`.
pub fn verify_smith(m: &PCModule, s: &SmithForm) -> bool {
    let p = m.p;
    let a: LMat = (0..m.gens).map(|i| (0..m.rels).map(|j| Local::from_poly(m.entry(i, j).clone())).collect()).collect();
    let uav = lmul(p, &lmul(p, &s.u, &a, m.gens), &s.v, m.rels);
    for i in 0..m.gens {
        for j in 0..m.rels {
            let want = if i == j && i < s.diagonal.len() {
                Local::from_poly(Poly::monomial(p, s.diagonal[i]))
            } else {
                Local::zero(p)
            };
            if uav[i][j] != want {
                return false;
            }
        }
    }
    invertible_at_zero(p, &s.u) && invertible_at_zero(p, &s.v)
}

fn invertible_at_zero(p: u64, m: &LMat) -> bool {
    let f = crate::exactlin::Field::fp(p);
    let n = m.len();
    let m0 = crate::exactlin::Matrix::from_fn(f, n, n, |i, j| {
        let e = &m[i][j];
        let num = e.num.coeff(0);
        let den_inv = crate::exactlin::inv_mod(e.den.coeff(0), p);
        (num * den_inv % p) as i64
    });
    m0.rank() == n
}
