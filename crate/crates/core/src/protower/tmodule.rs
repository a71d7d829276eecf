//! Finite-length `k[[t]]`-modules: a finite-dimensional space with a
//! nilpotent operator `t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::smith::{smith_form, PCModule};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

const ISO_TRIES: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct TModule {
    p: u64,
    t: Matrix,
}

/// Truncation `(R/t^L)^s / span{t^j A_c}` with the projection from the truncated free module.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub module: TModule,
    pub level: usize,
    /// `dim × (s·L)`; the free basis element `t^j e_i` sits at `i·L + j`.
    pub projection: Matrix,
}

impl TModule {
    /// `t` must be square and nilpotent.
    pub fn new(p: u64, t: Matrix) -> Result<TModule> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch { expected: (t.rows(), t.rows()), found: (t.rows(), t.cols()) });
        }
        if t.field() != Field::fp(p) {
            return Err(Error::FieldMismatch(Field::fp(p), t.field()));
        }
        if !t.pow(t.rows() as u64).is_zero() {
            return Err(Error::Precondition("t is not nilpotent".into()));
        }
        Ok(TModule { p, t })
    }

    pub fn zero(p: u64) -> TModule {
        TModule { p, t: Matrix::zeros(Field::fp(p), 0, 0) }
    }

    /// `⊕ R/t^{e_i}`; block `i` has basis `x_i, t x_i, …`.
    pub fn jordan(p: u64, exponents: &[usize]) -> TModule {
        let f = Field::fp(p);
        let n: usize = exponents.iter().sum();
        let mut t = Matrix::zeros(f, n, n);
        let mut off = 0;
        for &e in exponents {
            for j in 0..e.saturating_sub(1) {
                t.set_int(off + j + 1, off + j, 1);
            }
            off += e;
        }
        TModule { p, t }
    }

    /// The module presented by `m`, cut down to `M / t^L M`.
    pub fn truncate(m: &PCModule, level: usize) -> Truncation {
        let p = m.prime();
        let f = Field::fp(p);
        let (s, l) = (m.generators(), level);
        let n = s * l;
        let shift = free_shift(f, s, l);
        let mut rels = Vec::new();
        for c in 0..m.relations() {
            let mut v = Matrix::zeros(f, n, 1);
            for i in 0..s {
                for (k, &a) in m.entry(i, c).coeffs().iter().enumerate() {
                    if k < l && a != 0 {
                        v.set_int(i * l + k, 0, a as i64);
                    }
                }
            }
            for _ in 0..l {
                rels.push(v.clone());
                v = shift.mul(&v);
            }
        }
        let span = Matrix::from_columns(f, n, &rels);
        let q = quotient_projection(&span, n);
        let t = induced(&q, &shift);
        Truncation { module: TModule { p, t }, level, projection: q }
    }

    /// The finite-length module presented by `m` (errors on a free summand).
    pub fn from_presentation(m: &PCModule) -> Result<TModule> {
        let s = smith_form(m);
        if s.free_rank > 0 {
            return Err(Error::Precondition(format!("presentation has free rank {}", s.free_rank)));
        }
        Ok(TModule::truncate(m, s.max_exponent().max(1)).module)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> Field {
        Field::fp(self.p)
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    /// Least `e` with `t^e = 0`.
    pub fn nilpotency(&self) -> usize {
        let mut e = 0;
        let mut acc = Matrix::identity(self.field(), self.dim());
        while !acc.is_zero() {
            acc = acc.mul(&self.t);
            e += 1;
        }
        e
    }

    /// Least `n ≥ 1` with `p^n ≥` nilpotency: the first tower level the module lives on.
    pub fn level(&self) -> usize {
        let e = self.nilpotency() as u64;
        let mut n = 1;
        while self.p.pow(n as u32) < e {
            n += 1;
        }
        n
    }

    /// Block sizes in increasing order, read off from `rank t^j`.
    pub fn jordan_type(&self) -> Vec<usize> {
        let mut ranks = vec![self.dim()];
        let mut acc = Matrix::identity(self.field(), self.dim());
        while *ranks.last().unwrap() > 0 {
            acc = acc.mul(&self.t);
            ranks.push(acc.rank());
        }
        let at_least = |j: usize| ranks[j - 1] - ranks[j];
        let mut out = Vec::new();
        for j in 1..ranks.len() {
            let exactly = at_least(j) - if j + 1 < ranks.len() { at_least(j + 1) } else { 0 };
            out.extend(std::iter::repeat_n(j, exactly));
        }
        out
    }

    /// `dim M / tM`.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.t.rank()
    }

    pub fn direct_sum(&self, o: &TModule) -> TModule {
        TModule { p: self.p, t: Matrix::direct_sum(self.field(), &[&self.t, &o.t]) }
    }

    /// `s` copies of `self`; copy `x` of basis element `i` at `i·s + x`.
    pub fn power(&self, s: usize) -> TModule {
        TModule { p: self.p, t: self.t.kron(&Matrix::identity(self.field(), s)) }
    }

    /// Solutions `X` of `X t_self = t_o X`, each as a `dim o × dim self` matrix.
    pub fn hom_basis(&self, o: &TModule) -> Vec<Matrix> {
        intertwiners(self.field(), &[(self.t.clone(), o.t.clone())], self.dim(), o.dim())
    }

    pub fn is_morphism(&self, o: &TModule, x: &Matrix) -> bool {
        x.rows() == o.dim() && x.cols() == self.dim() && x.mul(&self.t) == o.t.mul(x)
    }

    /// A `t`-stable subspace with its inclusion.
    pub fn submodule(&self, basis: &Matrix) -> Result<(TModule, Matrix)> {
        let b = basis.column_basis();
        let img = self.t.mul(&b);
        let t = b.solve(&img).ok_or_else(|| Error::Precondition("subspace is not t-stable".into()))?;
        Ok((TModule { p: self.p, t }, b))
    }

    /// Quotient by a `t`-stable subspace with its projection.
    pub fn quotient(&self, basis: &Matrix) -> Result<(TModule, Matrix)> {
        if !basis.spans(&self.t.mul(basis)) {
            return Err(Error::Precondition("subspace is not t-stable".into()));
        }
        let q = quotient_projection(basis, self.dim());
        let t = induced(&q, &self.t);
        Ok((TModule { p: self.p, t }, q))
    }

    /// `self ⊗_{k[t]} o`: the cokernel of `t ⊗ 1 − 1 ⊗ t`, with the projection from `self ⊗_k o`.
    pub fn tensor(&self, o: &TModule) -> (TModule, Matrix) {
        let f = self.field();
        let (a, b) = (Matrix::identity(f, self.dim()), Matrix::identity(f, o.dim()));
        let tl = self.t.kron(&b);
        let rel = tl.sub(&a.kron(&o.t));
        let q = quotient_projection(&rel, self.dim() * o.dim());
        let t = induced(&q, &tl);
        (TModule { p: self.p, t }, q)
    }

    /// An explicit isomorphism `self -> o`, found by seeded random search in the
    /// Hom space after the Jordan types agree.
    pub fn find_iso(&self, o: &TModule, seed: u64) -> Option<Matrix> {
        if self.jordan_type() != o.jordan_type() {
            return None;
        }
        let f = self.field();
        if self.dim() == 0 {
            return Some(Matrix::zeros(f, 0, 0));
        }
        let basis = self.hom_basis(o);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ISO_TRIES {
            let mut x = Matrix::zeros(f, o.dim(), self.dim());
            for b in &basis {
                let c = rng.random_range(0..self.p) as i64;
                if c != 0 {
                    x = x.add(&b.scale_int(c));
                }
            }
            if x.rank() == self.dim() {
                return Some(x);
            }
        }
        None
    }

    /// Image of `t^j`.
    pub fn power_image(&self, j: usize) -> Matrix {
        self.t.pow(j as u64).column_basis()
    }
}

/// Shift `t^j e_i ↦ t^{j+1} e_i` on `(R/t^L)^s`.
pub(crate) fn free_shift(f: Field, s: usize, l: usize) -> Matrix {
    let mut t = Matrix::zeros(f, s * l, s * l);
    for i in 0..s {
        for j in 0..l.saturating_sub(1) {
            t.set_int(i * l + j + 1, i * l + j, 1);
        }
    }
    t
}

/// A surjection `k^n -> k^n / span(rel)` as a matrix with `dim` rows.
pub(crate) fn quotient_projection(rel: &Matrix, n: usize) -> Matrix {
    let f = rel.field();
    if n == 0 {
        return Matrix::zeros(f, 0, 0);
    }
    let comp = if rel.cols() == 0 { Matrix::identity(f, n) } else { rel.complement_basis() };
    let base = if rel.cols() == 0 { Matrix::zeros(f, n, 0) } else { rel.column_basis() };
    // Coordinates with respect to [base | comp]; keep the comp part.
    let frame = Matrix::hstack(f, n, &[&base, &comp]);
    let inv = frame.inverse().expect("basis plus complement is a frame");
    inv.block(base.cols(), 0, comp.cols(), n)
}

/// The operator induced by `a` on the codomain of a surjection `q` whose kernel is `a`-stable.
pub(crate) fn induced(q: &Matrix, a: &Matrix) -> Matrix {
    let sec = q.right_inverse().unwrap_or_else(|| Matrix::zeros(q.field(), q.cols(), 0));
    q.mul(a).mul(&sec)
}

pub(crate) fn intertwiners(f: Field, ops: &[(Matrix, Matrix)], dm: usize, dn: usize) -> Vec<Matrix> {
    let vars = dm * dn;
    if vars == 0 {
        return Vec::new();
    }
    let blocks: Vec<Matrix> = ops
        .iter()
        .map(|(a, b)| Matrix::identity(f, dn).kron(&a.transpose()).sub(&b.kron(&Matrix::identity(f, dm))))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let null = Matrix::vstack(f, vars, &refs).nullspace();
    (0..null.cols()).map(|j| unvec(&null.col(j), dn, dm)).collect()
}

/// Row-major unvectorisation of a column into a `rows × cols` matrix.
pub(crate) fn unvec(v: &Matrix, rows: usize, cols: usize) -> Matrix {
    let mut x = Matrix::zeros(v.field(), rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if !v.is_zero_at(r * cols + c, 0) {
                x.set(r, c, v.get(r * cols + c, 0));
            }
        }
    }
    x
}

pub(crate) fn vec_of(x: &Matrix) -> Matrix {
    let (rows, cols) = (x.rows(), x.cols());
    let mut v = Matrix::zeros(x.field(), rows * cols, 1);
    for r in 0..rows {
        for c in 0..cols {
            if !x.is_zero_at(r, c) {
                v.set(r * cols + c, 0, x.get(r, c));
            }
        }
    }
    v
}
