use comodcontra::protower::{PCModule, Poly, SubmoduleGens};

/// `F_2` linear algebra on bit rows, independent of the crate's `Matrix`.
pub mod f2 {
    pub type V = Vec<u8>;

    pub fn reduce(rows: &[V]) -> Vec<V> {
        let mut basis: Vec<V> = Vec::new();
        for r in rows {
            let mut v = r.clone();
            for b in &basis {
                let lead = b.iter().position(|&x| x == 1).unwrap();
                if v[lead] == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            if v.contains(&1) {
                let lead = v.iter().position(|&x| x == 1).unwrap();
                for b in basis.iter_mut() {
                    if b[lead] == 1 {
                        b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push(v);
            }
        }
        basis
    }

    pub fn same(a: &[V], b: &[V]) -> bool {
        let (ra, rb) = (reduce(a).len(), reduce(b).len());
        let both: Vec<V> = a.iter().chain(b).cloned().collect();
        ra == rb && reduce(&both).len() == ra
    }

    /// `U ∩ W` via the kernel of `(a, b) ↦ Σ a_i u_i + Σ b_j w_j`.
    pub fn intersect(u: &[V], w: &[V]) -> Vec<V> {
        let (u, w) = (reduce(u), reduce(w));
        let n = u.len() + w.len();
        let len = u.first().or(w.first()).map_or(0, Vec::len);
        // Rows tagged with their combination coefficients.
        let tagged: Vec<(V, V)> = u
            .iter()
            .chain(&w)
            .enumerate()
            .map(|(i, v)| {
                let mut tag = vec![0; n];
                tag[i] = 1;
                (v.clone(), tag)
            })
            .collect();
        let mut pivots: Vec<(V, V)> = Vec::new();
        let mut out = Vec::new();
        for (mut v, mut tag) in tagged {
            for (b, bt) in &pivots {
                let lead = b.iter().position(|&x| x == 1).unwrap();
                if v[lead] == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                    tag.iter_mut().zip(bt).for_each(|(x, y)| *x ^= y);
                }
            }
            if v.contains(&1) {
                pivots.push((v, tag));
            } else {
                let mut x = vec![0; len];
                for (i, ui) in u.iter().enumerate() {
                    if tag[i] == 1 {
                        x.iter_mut().zip(ui).for_each(|(a, b)| *a ^= b);
                    }
                }
                out.push(x);
            }
        }
        out
    }
}

/// Least `m ≤ 12` with `N ∩ t^{n+m}M = t^n(N ∩ t^mM)` for all `n ≤ depth`,
/// computed on preimages in `(F_2[t]/t^40)^s`.
pub fn brute_artin_rees(m: &PCModule, sub: &SubmoduleGens, depth: usize) -> Option<usize> {
    const L: usize = 40;
    let s = m.generators();
    let vec_of = |col: &dyn Fn(usize) -> Poly| -> f2::V {
        let mut v = vec![0u8; s * L];
        for i in 0..s {
            for (k, &c) in col(i).coeffs().iter().enumerate() {
                if k < L {
                    v[i * L + k] = (c % 2) as u8;
                }
            }
        }
        v
    };
    let shift = |v: &f2::V, k: usize| -> f2::V {
        let mut w = vec![0u8; s * L];
        for i in 0..s {
            for j in 0..L - k.min(L) {
                w[i * L + j + k] = v[i * L + j];
            }
        }
        w
    };
    let t_closure = |gens: &[f2::V]| -> Vec<f2::V> { gens.iter().flat_map(|g| (0..L).map(move |k| shift(g, k))).collect() };
    let rel: Vec<f2::V> = t_closure(&(0..m.relations()).map(|c| vec_of(&|i| m.entry(i, c).clone())).collect::<Vec<_>>());
    let with_rel = |xs: Vec<f2::V>| -> Vec<f2::V> { xs.into_iter().chain(rel.iter().cloned()).collect() };
    let n_sub = with_rel(t_closure(&sub.iter().map(|g| vec_of(&|i| g[i].clone())).collect::<Vec<_>>()));
    let filt = |k: usize| -> Vec<f2::V> {
        let mut xs = Vec::new();
        for i in 0..s {
            for j in k..L {
                let mut v = vec![0u8; s * L];
                v[i * L + j] = 1;
                xs.push(v);
            }
        }
        with_rel(xs)
    };
    (0..=12).find(|&cand| {
        let base = f2::intersect(&n_sub, &filt(cand));
        (0..=depth).all(|n| {
            let lhs = f2::intersect(&n_sub, &filt(n + cand));
            let rhs = with_rel(base.iter().map(|v| shift(v, n)).collect());
            f2::same(&with_rel(lhs), &rhs)
        })
    })
}
