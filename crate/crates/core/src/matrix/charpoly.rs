use super::SquareMatrix;
use crate::gf::Elem;
use crate::poly::Polynomial;

/// Reduces to upper Hessenberg form by similarity, then runs the standard
/// determinant recurrence on the leading principal minors.
pub(super) fn hessenberg_charpoly(a: &SquareMatrix) -> Polynomial {
    let f = &a.field;
    let n = a.n;
    let mut h = a.entries.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i * n + j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for k in 0..n {
                h.swap(piv * n + k, (j + 1) * n + k);
            }
            for k in 0..n {
                h.swap(k * n + piv, k * n + j + 1);
            }
        }
        let inv = f.inv(h[(j + 1) * n + j]).unwrap();
        for k in j + 2..n {
            let u = f.mul(h[k * n + j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.mul(u, h[(j + 1) * n + c]);
                h[k * n + c] = f.sub(h[k * n + c], v);
            }
            for r in 0..n {
                let v = f.mul(u, h[r * n + k]);
                h[r * n + j + 1] = f.add(h[r * n + j + 1], v);
            }
        }
    }

    let at = |i: usize, j: usize| h[i * n + j];
    let x = Polynomial::x(f);
    let mut chain: Vec<Polynomial> = vec![Polynomial::one(f)];
    for m in 0..n {
        let mut acc = x.sub(&Polynomial::constant(f, at(m, m))).mul(&chain[m]);
        let mut t: Elem = 1;
        for i in (0..m).rev() {
            t = f.mul(t, at(i + 1, i));
            if t == 0 {
                break;
            }
            let c = f.mul(at(i, m), t);
            if c != 0 {
                acc = acc.sub(&chain[i].scale(c));
            }
        }
        chain.push(acc);
    }
    chain.pop().unwrap()
}

/// Row-echelon accumulator that remembers, for each stored row, which
/// combination of inserted vectors produced it.
struct Echelon {
    rows: Vec<(usize, Vec<Elem>, Vec<Elem>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces `v` (with combination `combo`) against the stored rows.
    fn reduce(&self, a: &SquareMatrix, v: &mut [Elem], combo: &mut Vec<Elem>) {
        let f = &a.field;
        for (piv, row, rc) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
            if combo.len() < rc.len() {
                combo.resize(rc.len(), 0);
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
    }

    /// Stores a reduced nonzero vector, normalised at its pivot.
    fn insert(&mut self, a: &SquareMatrix, v: Vec<Elem>, combo: Vec<Elem>) {
        let f = &a.field;
        let piv = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let inv = f.inv(v[piv]).unwrap();
        let v = v.iter().map(|&x| f.mul(x, inv)).collect();
        let combo = combo.iter().map(|&x| f.mul(x, inv)).collect();
        self.rows.push((piv, v, combo));
    }
}

pub(super) fn krylov_minpoly(a: &SquareMatrix) -> Polynomial {
    let f = &a.field;
    let n = a.n;
    let mut span = Echelon::new();
    let mut result = Polynomial::one(f);
    for start in 0..n {
        let mut e = vec![0; n];
        e[start] = 1;
        let mut probe = e.clone();
        span.reduce(a, &mut probe, &mut Vec::new());
        if probe.iter().all(|&x| x == 0) {
            continue;
        }
        // chain e, Ae, A^2 e, ... until a linear relation appears
        let mut local = Echelon::new();
        let mut chain = Vec::new();
        let mut w = e;
        loop {
            let k = chain.len();
            let mut v = w.clone();
            let mut combo = vec![0; k + 1];
            combo[k] = 1;
            local.reduce(a, &mut v, &mut combo);
            if v.iter().all(|&x| x == 0) {
                result = result.lcm(&Polynomial::new(f, combo));
                break;
            }
            local.insert(a, v, combo);
            chain.push(w.clone());
            w = a.mat_vec(&w);
        }
        for v in chain {
            let mut v = v;
            span.reduce(a, &mut v, &mut Vec::new());
            if v.iter().any(|&x| x != 0) {
                span.insert(a, v, Vec::new());
            }
        }
    }
    result
}
