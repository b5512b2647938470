//! Ordinary Schubert polynomials in `x_1, x_2, ...` with integer
//! coefficients, built from the staircase by divided differences. Used as
//! an independent check on the non-equivariant limit.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// Exponent vectors with trailing zeros trimmed.
pub type XPoly = BTreeMap<Vec<u32>, i64>;

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_term(p: &mut XPoly, e: Vec<u32>, c: i64) {
    let e = trim(e);
    let slot = p.entry(e.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        p.remove(&e);
    }
}

pub fn mul(a: &XPoly, b: &XPoly) -> XPoly {
    let mut out = XPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let len = ea.len().max(eb.len());
            let e = (0..len)
                .map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0))
                .collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

/// `∂_i` with 1-based `i`, termwise:
/// `∂_i x_i^a x_{i+1}^b = Σ_{j<a-b} x_i^{a-1-j} x_{i+1}^{b+j}` for `a > b`.
pub fn divided_difference(p: &XPoly, i: usize) -> XPoly {
    let mut out = XPoly::new();
    for (e, &c) in p {
        let mut e = e.clone();
        if e.len() < i + 1 {
            e.resize(i + 1, 0);
        }
        let (a, b) = (e[i - 1], e[i]);
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        for j in 0..hi - lo {
            let mut f = e.clone();
            f[i - 1] = hi - 1 - j;
            f[i] = lo + j;
            add_term(&mut out, f, sign * c);
        }
    }
    out
}

/// `e_m(x_1, ..., x_k)`.
pub fn elementary(k: usize, m: usize) -> XPoly {
    let mut out = XPoly::new();
    let mut pick = vec![0u32; k];
    fn rec(start: usize, left: usize, pick: &mut Vec<u32>, out: &mut XPoly) {
        if left == 0 {
            add_term(out, pick.clone(), 1);
            return;
        }
        for i in start..pick.len() {
            pick[i] = 1;
            rec(i + 1, left - 1, pick, out);
            pick[i] = 0;
        }
    }
    rec(0, m, &mut pick, &mut out);
    out
}

/// Lehmer code `c_i = #{j > i : u(j) < u(i)}`.
pub fn code(u: &[usize]) -> Vec<u32> {
    let c = (0..u.len())
        .map(|i| (i + 1..u.len()).filter(|&j| u[j] < u[i]).count() as u32)
        .collect();
    trim(c)
}

/// The permutation (one-line, trimmed of trailing fixed points) with the
/// given Lehmer code.
pub fn from_code(c: &[u32]) -> Vec<usize> {
    let n = (0..c.len())
        .map(|i| i + 1 + c[i] as usize)
        .max()
        .unwrap_or(1)
        .max(c.len());
    let mut free: Vec<usize> = (1..=n).collect();
    let mut out: Vec<usize> = c.iter().map(|&ci| free.remove(ci as usize)).collect();
    out.extend(free);
    while out.len() > 1 && out[out.len() - 1] == out.len() {
        out.pop();
    }
    out
}

#[derive(Default)]
pub struct Schubert {
    memo: HashMap<Vec<usize>, XPoly>,
}

impl Schubert {
    /// `S_u`, where `u` is given in one-line notation on `1..=len`.
    pub fn poly(&mut self, u: &[usize]) -> XPoly {
        let mut key = u.to_vec();
        while key.len() > 1 && key[key.len() - 1] == key.len() {
            key.pop();
        }
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let n = key.len();
        let p = match (0..n - 1).find(|&i| key[i] < key[i + 1]) {
            None => {
                // the longest element: x_1^{n-1} x_2^{n-2} ... x_{n-1}
                let mut out = XPoly::new();
                add_term(&mut out, (0..n).map(|i| (n - 1 - i) as u32).collect(), 1);
                out
            }
            Some(i) => {
                let mut up = key.clone();
                up.swap(i, i + 1);
                divided_difference(&self.poly(&up), i + 1)
            }
        };
        self.memo.insert(key, p.clone());
        p
    }

    /// Expansion of `f` in the Schubert basis by repeatedly removing the
    /// lex-smallest monomial, which is `x^{code(u)}` for a unique `S_u` in
    /// the support.
    pub fn expand(&mut self, f: &XPoly) -> BTreeMap<Vec<usize>, i64> {
        let mut rest = f.clone();
        let mut out = BTreeMap::new();
        while let Some((lead, &c)) = rest.iter().next() {
            let u = from_code(lead);
            let s = self.poly(&u);
            for (e, &d) in &s {
                add_term(&mut rest, e.clone(), -c * d);
            }
            out.insert(u, c);
        }
        out
    }
}
