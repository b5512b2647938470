//! Equivariant Pieri-type products `ξ^{c[k,m]} ξ^w`.
//!
//! The closed rule: `p^u_{c,w}` is nonzero only when `u` is special
//! `k`-superior to `w` of some degree `p <= m`, in which case it equals
//! `ξ^{c[k-p,m-p]}` evaluated at the associated element `v(u,w,k)`.
//!
//! Two independent routes compute the same numbers: the Monk recursion in
//! `k` ([`monk_recursion_expand`]) and the triangular solve of the pointwise
//! product ([`solve_expand`]).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::localization::{
    chevalley_expand, expand_schubert, xi_value, SchubertExpansion, WeylFunction,
};
use crate::poly::{LinearForm, Polynomial};
use crate::weyl::{check_rank, Cycle, Permutation};

/// Certificate that `u = w ζ_1 ... ζ_r` is special `k`-superior to `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperiorWitness {
    /// The cycles of `w^{-1} u`, each led by its unique entry `q > k`.
    pub cycles: Vec<Cycle>,
    /// Sum of the cycle degrees (entries `<= k`).
    pub degree: usize,
    pub k: usize,
}

/// Every intermediate object in the construction of `v(u,w,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedTrace {
    pub degree: usize,
    /// Indices `i <= k` moved by `w^{-1} u`, ascending.
    pub index_set: Vec<usize>,
    /// `r_1 > r_2 > ... > r_{k-p}`: the indices `<= k` outside the index set.
    pub r_seq: Vec<usize>,
    /// `λ_j = #{i in I : i < r_j}`.
    pub lambda: Vec<usize>,
    /// Letters of `π_1, ..., π_{k-p}`; an empty word is the identity.
    pub pi_words: Vec<Vec<usize>>,
    /// `w π_1 ... π_{k-p}`.
    pub result: Permutation,
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "k = {k} must satisfy 1 <= k <= n-1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

fn check_km(k: usize, m: usize, n: usize) -> Result<()> {
    check_k(k, n)?;
    if m == 0 || m > k {
        return Err(Error::InvalidParameters(format!(
            "m = {m} must satisfy 1 <= m <= k = {k}"
        )));
    }
    Ok(())
}

/// Checks the three conditions on a single cycle `(q i_r ... i_1)`:
/// `i_j <= k < q`, `w(q) > w(i_1) > ... > w(i_r)`, and
/// `l(w ζ) = l(w) + r`. Returns `r` on success.
fn admissible_cycle(w: &Permutation, cycle: &Cycle, k: usize) -> Option<usize> {
    let q = cycle.top();
    let chain = cycle.chain();
    if q <= k || chain.iter().any(|&i| i > k) {
        return None;
    }
    let mut last = w.at(q);
    for &i in &chain {
        if w.at(i) >= last {
            return None;
        }
        last = w.at(i);
    }
    let wz = w * &cycle.to_permutation(w.rank()).ok()?;
    (wz.length() == w.length() + chain.len()).then_some(chain.len())
}

/// The witness for `u` being special `k`-superior to `w`, with whatever
/// degree `w^{-1} u` forces, or `None`.
pub fn superior_witness(
    w: &Permutation,
    u: &Permutation,
    k: usize,
) -> Result<Option<SuperiorWitness>> {
    check_rank(w.rank(), u.rank())?;
    check_k(k, w.rank())?;
    let x = &w.inverse() * u;
    let cycles = x.cycle_decomposition();
    let mut degree = 0;
    for c in &cycles {
        match admissible_cycle(w, c, k) {
            Some(r) => degree += r,
            None => return Ok(None),
        }
    }
    if u.length() != w.length() + degree {
        return Ok(None);
    }
    Ok(Some(SuperiorWitness { cycles, degree, k }))
}

/// Whether `u ∈ S_w(k,p)`; returns the witness if so. `p = 0` accepts
/// exactly `u = w`.
pub fn is_special_superior(
    w: &Permutation,
    u: &Permutation,
    k: usize,
    p: usize,
) -> Result<Option<SuperiorWitness>> {
    Ok(superior_witness(w, u, k)?.filter(|wit| wit.degree == p))
}

/// `S_w(k,p)` in canonical order, generated cycle by cycle.
///
/// For each `q > k` in turn a (possibly empty) chain `i_1, i_2, ...` of
/// unused indices `<= k` is chosen with strictly decreasing `w`-values below
/// `w(q)`. A chain is only extended while its prefix keeps the length
/// additive, since every prefix of an admissible chain is itself admissible.
pub fn special_superior_set(w: &Permutation, k: usize, p: usize) -> Result<Vec<Permutation>> {
    let n = w.rank();
    check_k(k, n)?;
    let mut out = Vec::new();
    let mut state = Enumeration {
        w,
        k,
        target: p,
        base_len: w.length(),
        used: vec![false; k + 1],
        out: &mut out,
    };
    state.next_q(k + 1, p, w.clone());
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

struct Enumeration<'a> {
    w: &'a Permutation,
    k: usize,
    target: usize,
    base_len: usize,
    used: Vec<bool>,
    out: &'a mut Vec<Permutation>,
}

impl Enumeration<'_> {
    fn next_q(&mut self, q: usize, remaining: usize, u: Permutation) {
        if remaining == 0 {
            if u.length() == self.base_len + self.target {
                self.out.push(u);
            }
            return;
        }
        if q > self.w.rank() {
            return;
        }
        self.next_q(q + 1, remaining, u.clone());
        self.extend_chain(q, self.w.at(q), self.w.clone(), 0, remaining, &u);
    }

    /// `prefix = w t(i_1,q) ... t(i_r,q)` for the chain chosen so far.
    fn extend_chain(
        &mut self,
        q: usize,
        bound: usize,
        prefix: Permutation,
        r: usize,
        remaining: usize,
        u: &Permutation,
    ) {
        for i in 1..=self.k {
            if self.used[i] || self.w.at(i) >= bound {
                continue;
            }
            let next = prefix.times_transposition(i, q);
            if next.length() != self.base_len + r + 1 {
                continue;
            }
            let next_u = extend_u(u, self.w, &next);
            self.used[i] = true;
            self.next_q(q + 1, remaining - 1, next_u.clone());
            if remaining > 1 {
                self.extend_chain(q, self.w.at(i), next, r + 1, remaining - 1, &next_u);
            }
            self.used[i] = false;
        }
    }
}

/// Disjoint cycles act on disjoint positions, so `w ζ_1 ... ζ_r` agrees with
/// `w ζ_r` wherever `ζ_r` moves something and with the previous product
/// elsewhere.
fn extend_u(u: &Permutation, w: &Permutation, wz: &Permutation) -> Permutation {
    let mut images = u.one_line();
    for pos in 1..=w.rank() {
        if wz.at(pos) != w.at(pos) {
            images[pos - 1] = wz.at(pos);
        }
    }
    Permutation::new(images).expect("product of disjoint cycles is a permutation")
}

/// Runs the four-step construction of `v(u,w,k)`.
pub fn associated_element(u: &Permutation, w: &Permutation, k: usize) -> Result<AssociatedTrace> {
    let witness = superior_witness(w, u, k)?.ok_or_else(|| Error::NotSuperior {
        u: u.to_string(),
        w: w.to_string(),
        k,
    })?;
    let p = witness.degree;
    let x = &w.inverse() * u;
    let index_set: Vec<usize> = (1..=k).filter(|&i| x.at(i) != i).collect();
    debug_assert_eq!(index_set.len(), p);

    let r_seq: Vec<usize> = (1..=k).rev().filter(|i| !index_set.contains(i)).collect();
    let lambda: Vec<usize> = r_seq
        .iter()
        .map(|&r| index_set.iter().filter(|&&i| i < r).count())
        .collect();
    let len = k - p;
    let pi_words: Vec<Vec<usize>> = (1..=len)
        .map(|j| {
            let l = lambda[len - j];
            if l == 0 {
                Vec::new()
            } else {
                (j..=l + j - 1).rev().collect()
            }
        })
        .collect();
    let mut result = w.clone();
    for word in &pi_words {
        for &i in word {
            result = result.times_simple(i);
        }
    }
    Ok(AssociatedTrace {
        degree: p,
        index_set,
        r_seq,
        lambda,
        pi_words,
        result,
    })
}

/// One term of the closed rule together with its audit trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriTerm {
    pub u: Permutation,
    pub coefficient: Polynomial,
    pub witness: SuperiorWitness,
    pub trace: AssociatedTrace,
}

/// `p^u_{c[k,m],w}` with the witness and trace when `u ∈ S_w(k,p)` for some
/// `p <= m`; `None` when the rule assigns zero by exclusion.
pub fn pieri_term(
    k: usize,
    m: usize,
    w: &Permutation,
    u: &Permutation,
) -> Result<Option<PieriTerm>> {
    let n = w.rank();
    check_km(k, m, n)?;
    let Some(witness) = superior_witness(w, u, k)? else {
        return Ok(None);
    };
    let p = witness.degree;
    if p > m {
        return Ok(None);
    }
    let trace = associated_element(u, w, k)?;
    let c = Permutation::c_km(k - p, m - p, n)?;
    let coefficient = xi_value(&c, &trace.result)?;
    Ok(Some(PieriTerm {
        u: u.clone(),
        coefficient,
        witness,
        trace,
    }))
}

/// `p^u_{c[k,m],w}` by the closed rule.
pub fn pieri_coefficient(
    k: usize,
    m: usize,
    w: &Permutation,
    u: &Permutation,
) -> Result<Polynomial> {
    Ok(pieri_term(k, m, w, u)?.map_or_else(|| Polynomial::zero(w.rank()), |t| t.coefficient))
}

/// All terms of `ξ^{c[k,m]} ξ^w` with nonzero coefficient, in canonical
/// order of `u`.
pub fn pieri_terms(k: usize, m: usize, w: &Permutation) -> Result<Vec<PieriTerm>> {
    check_km(k, m, w.rank())?;
    let mut terms = Vec::new();
    for p in 0..=m {
        for u in special_superior_set(w, k, p)? {
            if let Some(t) = pieri_term(k, m, w, &u)? {
                if !t.coefficient.is_zero() {
                    terms.push(t);
                }
            }
        }
    }
    terms.sort_by(|a, b| a.u.canonical_cmp(&b.u));
    Ok(terms)
}

/// `ξ^{c[k,m]} ξ^w` by the closed rule.
pub fn pieri_expand(k: usize, m: usize, w: &Permutation) -> Result<SchubertExpansion> {
    let mut out = SchubertExpansion::new(w.rank());
    for t in pieri_terms(k, m, w)? {
        out.add_term(&t.u, &t.coefficient);
    }
    Ok(out)
}

/// `ξ^{c[k,m]} ξ^w` by expanding the pointwise product.
pub fn solve_expand(k: usize, m: usize, w: &Permutation) -> Result<SchubertExpansion> {
    let n = w.rank();
    check_km(k, m, n)?;
    let c = Permutation::c_km(k, m, n)?;
    expand_schubert(&WeylFunction::xi(&c).pointwise_product(&WeylFunction::xi(w))?)
}

/// `ξ^{c[k,m]} ξ^w` by recursion in `k`:
///
/// `p^u_{c[k,m],w} = p^u_{c[k-1,m],w} + (L_{k-m+1} - L_{u(k)}) p^u_{c[k-1,m-1],w}
///   + Σ_{q>k, u t(k,q) -> u} p^{u t(k,q)}_{c[k-1,m-1],w}
///   - Σ_{q<k, u t(q,k) -> u} p^{u t(q,k)}_{c[k-1,m-1],w}`,
///
/// with base cases `m = 0` (the unit) and `k = m = 1` (Chevalley), and
/// `ξ^{c[k-1,m]} = 0` when `m > k-1`.
pub fn monk_recursion_expand(k: usize, m: usize, w: &Permutation) -> Result<SchubertExpansion> {
    let n = w.rank();
    if m > k || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= m <= k <= n-1, got k = {k}, m = {m}, n = {n}"
        )));
    }
    let mut memo = HashMap::new();
    monk_rec(k, m, w, &mut memo)
}

fn monk_rec(
    k: usize,
    m: usize,
    w: &Permutation,
    memo: &mut HashMap<(usize, usize), SchubertExpansion>,
) -> Result<SchubertExpansion> {
    if let Some(e) = memo.get(&(k, m)) {
        return Ok(e.clone());
    }
    let n = w.rank();
    let result = if m == 0 {
        let mut e = SchubertExpansion::new(n);
        e.add_term(w, &Polynomial::one(n));
        e
    } else if m > k {
        SchubertExpansion::new(n)
    } else if k == 1 {
        chevalley_expand(1, w)?
    } else {
        let mut out = monk_rec(k - 1, m, w, memo)?;
        let lower = monk_rec(k - 1, m - 1, w, memo)?;
        for (v, c) in lower.iter() {
            let factor = Polynomial::root(k - m + 1, v.at(k), n);
            out.add_term(v, &(&factor * c));
            let len = v.length();
            for q in k + 1..=n {
                if v.at(k) < v.at(q) {
                    let up = v.times_transposition(k, q);
                    if up.length() == len + 1 {
                        out.add_term(&up, c);
                    }
                }
            }
            for q in 1..k {
                if v.at(q) < v.at(k) {
                    let up = v.times_transposition(q, k);
                    if up.length() == len + 1 {
                        out.add_term(&up, &(-c));
                    }
                }
            }
        }
        out
    };
    memo.insert((k, m), result.clone());
    Ok(result)
}

/// `p^u_{c[k,m],w}` by the Monk recursion.
pub fn monk_recursion_coefficient(
    k: usize,
    m: usize,
    w: &Permutation,
    u: &Permutation,
) -> Result<Polynomial> {
    check_rank(w.rank(), u.rank())?;
    Ok(monk_recursion_expand(k, m, w)?.coefficient(u))
}

/// Checks, pointwise on `S_n`,
/// `ξ^{c[k,m]} = ξ^{c[k-1,m]} + (ξ^{s_k} - ξ^{s_{k-1}} + L_{k-m+1} - L_k) ξ^{c[k-1,m-1]}`
/// with `ξ^{c[k-1,m]} = 0` when `m > k-1`.
pub fn decomp_identity_check(k: usize, m: usize, n: usize) -> Result<bool> {
    if k < 2 || k >= n || m == 0 || m > k {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= k <= n-1 and 1 <= m <= k, got k = {k}, m = {m}, n = {n}"
        )));
    }
    let xi = |p: Permutation| WeylFunction::xi(&p);
    let lhs = xi(Permutation::c_km(k, m, n)?);
    let first = if m > k - 1 {
        WeylFunction::zero(n)
    } else {
        xi(Permutation::c_km(k - 1, m, n)?)
    };
    let shift =
        (&LinearForm::coordinate(k - m + 1, n) - &LinearForm::coordinate(k, n)).to_alpha()?;
    let factor = xi(Permutation::simple(k, n)?)
        .try_sub(&xi(Permutation::simple(k - 1, n)?))?
        .try_add(&WeylFunction::constant(&shift))?;
    let rhs =
        first.try_add(&factor.pointwise_product(&xi(Permutation::c_km(k - 1, m - 1, n)?))?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::enumerate_group;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn word(l: &[usize], n: usize) -> Permutation {
        Permutation::from_word(l, n).unwrap()
    }

    #[test]
    fn superior_examples() {
        let w = perm(&[1, 2, 5, 6, 3, 4, 7]);
        let u = perm(&[1, 3, 5, 6, 2, 4, 7]);
        let wit = is_special_superior(&w, &u, 4, 1).unwrap().unwrap();
        assert_eq!(wit.cycles, vec![Cycle::new(vec![5, 2]).unwrap()]);
        assert!(is_special_superior(&w, &u, 4, 2).unwrap().is_none());

        let wit = is_special_superior(&w, &w, 3, 0).unwrap().unwrap();
        assert!(wit.cycles.is_empty());

        let e = Permutation::identity(3);
        let wit = is_special_superior(&e, &perm(&[2, 3, 1]), 2, 2)
            .unwrap()
            .unwrap();
        assert_eq!(wit.cycles.len(), 1);
        assert_eq!(wit.cycles[0].entries(), &[3, 1, 2]);
        assert!(is_special_superior(&e, &e, 3, 0).is_err());
    }

    #[test]
    fn superior_set_examples() {
        let s1 = Permutation::simple(1, 3).unwrap();
        assert_eq!(
            special_superior_set(&s1, 2, 1).unwrap(),
            vec![perm(&[2, 3, 1]), perm(&[3, 1, 2])]
        );
        let s2 = Permutation::simple(2, 3).unwrap();
        assert_eq!(
            special_superior_set(&s2, 2, 1).unwrap(),
            vec![perm(&[2, 3, 1])]
        );
        for w in enumerate_group(4) {
            for k in 1..4 {
                assert_eq!(special_superior_set(&w, k, 0).unwrap(), vec![w.clone()]);
            }
        }
    }

    #[test]
    fn superior_set_matches_filter() {
        for n in 2..=5 {
            let group = enumerate_group(n);
            for w in &group {
                for k in 1..n {
                    for p in 0..=k {
                        let fast = special_superior_set(w, k, p).unwrap();
                        let slow: Vec<Permutation> = group
                            .iter()
                            .filter(|u| is_special_superior(w, u, k, p).unwrap().is_some())
                            .cloned()
                            .collect();
                        assert_eq!(fast, slow, "w = {w}, k = {k}, p = {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn associated_element_examples() {
        let w = word(&[4, 3, 5, 4], 7);
        let u = perm(&[1, 3, 5, 6, 2, 4, 7]);
        let t = associated_element(&u, &w, 4).unwrap();
        assert_eq!(t.index_set, vec![2]);
        assert_eq!(t.r_seq, vec![4, 3, 1]);
        assert_eq!(t.lambda, vec![1, 1, 0]);
        assert_eq!(t.pi_words, vec![vec![], vec![2], vec![3]]);
        assert_eq!(t.result, perm(&[1, 5, 6, 2, 3, 4, 7]));
        assert_eq!(t.result, word(&[4, 3, 5, 4, 2, 3], 7));

        let t = associated_element(&w, &w, 4).unwrap();
        assert!(t.index_set.is_empty());
        assert!(t.lambda.iter().all(|&l| l == 0));
        assert_eq!(t.result, w);

        let e = Permutation::identity(3);
        let t = associated_element(&perm(&[2, 3, 1]), &e, 2).unwrap();
        assert_eq!(t.index_set, vec![1, 2]);
        assert!(t.lambda.is_empty());
        assert_eq!(t.result, e);

        assert!(matches!(
            associated_element(&perm(&[3, 2, 1]), &e, 1),
            Err(Error::NotSuperior { .. })
        ));
    }

    #[test]
    fn coefficient_examples() {
        let w = word(&[4, 3, 5, 4], 7);
        let u = word(&[2, 4, 3, 5, 4], 7);
        assert_eq!(
            pieri_coefficient(4, 2, &w, &u).unwrap().to_string(),
            "a2 + 2*a3 + 2*a4 + a5"
        );

        let e = Permutation::identity(5);
        for k in 1..5 {
            for m in 1..=k {
                assert!(pieri_coefficient(k, m, &e, &e).unwrap().is_zero());
            }
        }
        let s1 = Permutation::simple(1, 3).unwrap();
        assert!(pieri_coefficient(2, 1, &s1, &perm(&[2, 3, 1]))
            .unwrap()
            .is_one());

        assert!(pieri_coefficient(2, 3, &s1, &s1).is_err());
        assert!(pieri_coefficient(3, 1, &s1, &s1).is_err());
        assert!(pieri_coefficient(2, 0, &s1, &s1).is_err());
    }

    #[test]
    fn expand_examples() {
        let s2 = Permutation::simple(2, 3).unwrap();
        let e = pieri_expand(2, 1, &s2).unwrap();
        assert_eq!(e, chevalley_expand(2, &s2).unwrap());
        assert_eq!(e.len(), 2);

        for n in 2..=5 {
            let id = Permutation::identity(n);
            for k in 1..n {
                for m in 1..=k {
                    let e = pieri_expand(k, m, &id).unwrap();
                    assert_eq!(e.len(), 1);
                    assert!(e.coefficient(&Permutation::c_km(k, m, n).unwrap()).is_one());
                }
            }
        }

        let s1 = Permutation::simple(1, 3).unwrap();
        assert_eq!(
            pieri_expand(2, 2, &s1).unwrap(),
            solve_expand(2, 2, &s1).unwrap()
        );
    }

    #[test]
    fn monk_examples() {
        let w = word(&[4, 3, 5, 4], 7);
        let u = word(&[2, 4, 3, 5, 4], 7);
        assert_eq!(
            monk_recursion_coefficient(4, 2, &w, &u)
                .unwrap()
                .to_string(),
            "a2 + 2*a3 + 2*a4 + a5"
        );
        for k in 0..4 {
            assert!(monk_recursion_coefficient(k, 0, &w, &w).unwrap().is_one());
        }
        assert!(monk_recursion_expand(2, 3, &w).is_err());
    }

    #[test]
    fn decomp_examples() {
        assert!(decomp_identity_check(2, 1, 3).unwrap());
        assert!(decomp_identity_check(3, 2, 4).unwrap());
        for n in 3..=5 {
            for k in 2..n {
                assert!(decomp_identity_check(k, k, n).unwrap());
            }
        }
        assert!(decomp_identity_check(1, 1, 3).is_err());
        assert!(decomp_identity_check(3, 1, 3).is_err());
    }
}
