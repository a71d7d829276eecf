//! Polynomials over `F_p` and the local ring `F_p[t]_(t)`, which holds every
//! entry of a presentation over `k[[t]]` that arises here: polynomials and
//! their quotients by units (nonzero constant term).

use std::fmt;

use crate::exactlin::inv_mod;

/// Coefficients from degree 0 upwards, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    p: u64,
    c: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: &[i64]) -> Poly {
        let c = coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Poly { p, c }.trimmed()
    }

    pub fn zero(p: u64) -> Poly {
        Poly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Poly {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u64, a: u64) -> Poly {
        Poly { p, c: vec![a % p] }.trimmed()
    }

    /// `t^k`.
    pub fn monomial(p: u64, k: usize) -> Poly {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Poly { p, c }
    }

    fn trimmed(mut self) -> Poly {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// The `t`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&x| x != 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeff(0) != 0
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| (self.coeff(k) + o.coeff(k)) % self.p).collect();
        Poly { p: self.p, c }.trimmed()
    }

    pub fn neg(&self) -> Poly {
        let c = self.c.iter().map(|&x| (self.p - x) % self.p).collect();
        Poly { p: self.p, c }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Poly { p: self.p, c }.trimmed()
    }

    pub fn scale(&self, a: u64) -> Poly {
        let c = self.c.iter().map(|&x| x * (a % self.p) % self.p).collect();
        Poly { p: self.p, c }.trimmed()
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division by `t^k`, which must divide `self`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || self.valuation().unwrap() >= k);
        Poly { p: self.p, c: self.c.iter().skip(k).copied().collect() }.trimmed()
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod(d.c[dd], self.p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1] * lead_inv % self.p;
            q[k] = f;
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - f * b % self.p) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Poly { p: self.p, c: q }.trimmed(), Poly { p: self.p, c: r }.trimmed())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.degree() {
            Some(d) => a.scale(inv_mod(a.c[d], a.p)),
            None => a,
        }
    }

    /// Truncation modulo `t^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly { p: self.p, c: self.c.iter().take(n).copied().collect() }.trimmed()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `num / den` with `den(0) = 1`; equality is cross-multiplication.
#[derive(Clone, Debug)]
pub struct Local {
    pub num: Poly,
    pub den: Poly,
}

impl PartialEq for Local {
    fn eq(&self, o: &Local) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for Local {}

impl Local {
    pub fn from_poly(a: Poly) -> Local {
        let p = a.prime();
        Local { num: a, den: Poly::one(p) }
    }

    pub fn zero(p: u64) -> Local {
        Local::from_poly(Poly::zero(p))
    }

    pub fn one(p: u64) -> Local {
        Local::from_poly(Poly::one(p))
    }

    /// `num / den`; `den` must be a unit.
    pub fn new(num: Poly, den: Poly) -> Local {
        assert!(den.is_unit(), "denominator must have nonzero constant term");
        let p = num.prime();
        if num.is_zero() {
            return Local::zero(p);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let s = inv_mod(den.coeff(0), p);
        Local { num: num.scale(s), den: den.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn valuation(&self) -> Option<usize> {
        self.num.valuation()
    }

    pub fn add(&self, o: &Local) -> Local {
        Local::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Local) -> Local {
        Local::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &Local) -> Local {
        Local::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Local {
        Local { num: self.num.neg(), den: self.den.clone() }
    }

    /// Inverse of a unit.
    pub fn inv_unit(&self) -> Local {
        assert!(self.num.is_unit(), "not a unit");
        Local::new(self.den.clone(), self.num.clone())
    }

    /// `self / t^k`, for `k ≤` valuation.
    pub fn div_t(&self, k: usize) -> Local {
        Local { num: self.num.shift_down(k), den: self.den.clone() }
    }

    /// Power series expansion modulo `t^n`.
    pub fn expand(&self, n: usize) -> Poly {
        let p = self.num.prime();
        // Invert den modulo t^n by Newton-free recursion on coefficients.
        let mut inv = vec![0u64; n];
        if n > 0 {
            inv[0] = 1;
            for k in 1..n {
                let mut s = 0u64;
                for j in 1..=k {
                    s = (s + self.den.coeff(j) * inv[k - j]) % p;
                }
                inv[k] = (p - s) % p;
            }
        }
        let inv = Poly { p, c: inv }.trimmed();
        self.num.mul(&inv).truncate(n)
    }
}

impl fmt::Display for Local {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one(self.den.prime()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 3;
        let a = Poly::new(p, &[1, 1]);
        let b = Poly::new(p, &[2, 0, 1]);
        let (q, r) = b.div_rem(&a);
        assert_eq!(q.mul(&a).add(&r), b);
        assert_eq!(a.pow(3), Poly::new(p, &[1, 0, 0, 1]));
        assert_eq!(Poly::new(p, &[0, 0, 2, 1]).valuation(), Some(2));
    }

    #[test]
    fn local_expansion_inverts_units() {
        let p = 2;
        let u = Local::from_poly(Poly::new(p, &[1, 1]));
        let inv = u.inv_unit();
        assert_eq!(u.mul(&inv), Local::one(p));
        // 1/(1+t) = 1 + t + t^2 + … over F_2.
        assert_eq!(inv.expand(4), Poly::new(p, &[1, 1, 1, 1]));
    }
}
