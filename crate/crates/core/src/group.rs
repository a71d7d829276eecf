//! Finite groups given by multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Elements are `0..order`; `0` need not be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a closed square".into()));
        }
        let flat: Vec<usize> = table.concat();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), order: n, table: flat, identity, inverse })
    }

    /// Closure of `gens` under `mul`, elements numbered in breadth-first order from the identity.
    pub fn generate<T: Clone + Eq + Hash>(name: &str, identity: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> FiniteGroup {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let x = mul(&elems[k], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&mul(&elems[a], &elems[b])]).collect()).collect();
        FiniteGroup::from_table(name, table).expect("closure of a generating set is a group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&format!("Z/{n}"), table).expect("cyclic group")
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (g.order, h.order);
        let table = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        FiniteGroup::from_table(&format!("{}×{}", g.name, h.name), table).expect("product group")
    }

    /// Dihedral group of order `2n`: rotations `r^i` at `i`, reflections `s r^i` at `n + i`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let mul = |x: usize, y: usize| -> usize {
            let (fx, ix) = (x / n, x % n);
            let (fy, iy) = (y / n, y % n);
            // (s^fx r^ix)(s^fy r^iy) = s^{fx+fy} r^{(-1)^fy ix + iy}
            let i = if fy == 0 { (ix + iy) % n } else { (n - ix + iy) % n };
            ((fx + fy) % 2) * n + i
        };
        let table = (0..2 * n).map(|a| (0..2 * n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(&format!("D{n}"), table).expect("dihedral group")
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let id: Vec<usize> = (0..n).collect();
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t = id.clone();
            t.swap(0, 1);
            gens.push(t);
            gens.push((1..n).chain(0..1).collect());
        }
        FiniteGroup::generate(&format!("S{n}"), id, &gens, |a, b| compose_perm(a, b))
    }

    pub fn alternating4() -> FiniteGroup {
        let id: Vec<usize> = (0..4).collect();
        let gens = vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
        FiniteGroup::generate("A4", id, &gens, |a, b| compose_perm(a, b))
    }

    /// Quaternion group, realised inside `SL_2(F_3)`.
    pub fn quaternion8() -> FiniteGroup {
        let mul = |a: &[i64; 4], b: &[i64; 4]| -> [i64; 4] {
            let m = |x: i64| x.rem_euclid(3);
            [
                m(a[0] * b[0] + a[1] * b[2]),
                m(a[0] * b[1] + a[1] * b[3]),
                m(a[2] * b[0] + a[3] * b[2]),
                m(a[2] * b[1] + a[3] * b[3]),
            ]
        };
        FiniteGroup::generate("Q8", [1, 0, 0, 1], &[[0, 2, 1, 0], [1, 1, 1, 2]], mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Whether `elems` is a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        !elems.is_empty()
            && elems.contains(&self.identity)
            && elems.iter().all(|&a| elems.contains(&self.inv(a)))
            && elems.iter().all(|&a| elems.iter().all(|&b| elems.contains(&self.mul(a, b))))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut elems = vec![self.identity];
        let mut k = 0;
        while k < elems.len() {
            for &g in gens {
                let x = self.mul(elems[k], g);
                if !elems.contains(&x) {
                    elems.push(x);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// The subgroup as a group in its own right, with the embedding.
    pub fn subgroup(&self, elems: &[usize], name: &str) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::InvalidGroup("not a subgroup".into()));
        }
        let mut emb = elems.to_vec();
        emb.sort_unstable();
        let pos = |x: usize| emb.iter().position(|&y| y == x).expect("closed");
        let table = emb.iter().map(|&a| emb.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        Ok((FiniteGroup::from_table(name, table)?, emb))
    }
}

/// `(a ∘ b)(i) = a(b(i))`.
fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// A catalogue of small groups used by fuzzers and tests, by increasing order.
/// Complete for abelian groups of order at most 16.
pub fn small_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=max_order).map(FiniteGroup::cyclic).collect();
    let c = FiniteGroup::cyclic;
    let extra = vec![
        FiniteGroup::product(&c(2), &c(2)),
        FiniteGroup::symmetric(3),
        FiniteGroup::product(&c(2), &c(4)),
        FiniteGroup::product(&FiniteGroup::product(&c(2), &c(2)), &c(2)),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion8(),
        FiniteGroup::product(&c(3), &c(3)),
        FiniteGroup::dihedral(5),
        FiniteGroup::product(&c(2), &c(6)),
        FiniteGroup::dihedral(6),
        FiniteGroup::alternating4(),
        FiniteGroup::product(&c(2), &c(8)),
        FiniteGroup::product(&c(4), &c(4)),
        FiniteGroup::product(&FiniteGroup::product(&c(2), &c(2)), &c(4)),
        FiniteGroup::product(&FiniteGroup::product(&c(2), &c(2)), &FiniteGroup::product(&c(2), &c(2))),
    ];
    out.extend(extra.into_iter().filter(|g| g.order() <= max_order));
    out.sort_by_key(|g| g.order());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_orders() {
        let gs = small_groups(12);
        assert!(gs.iter().all(|g| g.order() <= 12));
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::quaternion8().order(), 8);
        assert!(!FiniteGroup::quaternion8().is_abelian());
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert_eq!(FiniteGroup::dihedral(6).order(), 12);
    }

    #[test]
    fn rejects_non_group() {
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        let r = (0..6).find(|&a| s3.element_order(a) == 3).unwrap();
        let h = s3.generated_subgroup(&[r]);
        assert_eq!(h.len(), 3);
        assert!(s3.is_subgroup(&h));
    }
}
