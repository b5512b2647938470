//! Localization model of the equivariant cohomology ring: functions from
//! `S_n` to polynomials, the Schubert basis `ξ^v` evaluated by Billey's
//! formula, divided differences, and expansion in the Schubert basis by a
//! triangular solve.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Polynomial};
use crate::weyl::{check_rank, Permutation, ReducedWord, SymmetricGroup};

/// `ξ^v(w)` by Billey's formula on the canonical reduced word of `w`.
///
/// Vanishes unless `v <= w` in Bruhat order.
pub fn xi_value(v: &Permutation, w: &Permutation) -> Result<Polynomial> {
    check_rank(v.rank(), w.rank())?;
    Ok(billey(v, w.canonical_reduced_word().letters(), w.rank()))
}

/// `ξ^v(w)` by Billey's formula on an explicit reduced word for `w`.
pub fn xi_value_with_word(v: &Permutation, word: &ReducedWord, n: usize) -> Result<Polynomial> {
    check_rank(v.rank(), n)?;
    Ok(billey(v, word.letters(), n))
}

/// Sum over subwords of `letters` that are reduced words for `v` of the
/// product of the roots `β_j = s_{i_1} ... s_{i_{j-1}} α_{i_j}`.
///
/// The search keeps `y = (chosen prefix)^{-1} v`; a letter `s_i` can extend
/// the chosen subword exactly when it is a left descent of `y`, which keeps
/// the subword reduced and a left factor of `v`.
fn billey(v: &Permutation, letters: &[usize], n: usize) -> Polynomial {
    let target_len = v.length();
    if target_len > letters.len() {
        return Polynomial::zero(n);
    }
    if target_len == 0 {
        return Polynomial::one(n);
    }
    let mut betas = Vec::with_capacity(letters.len());
    let mut prefix = Permutation::identity(n);
    for &i in letters {
        betas.push(Polynomial::root(prefix.at(i), prefix.at(i + 1), n));
        prefix = prefix.times_simple(i);
    }

    struct Search<'a> {
        letters: &'a [usize],
        betas: &'a [Polynomial],
        total: Polynomial,
    }

    fn go(s: &mut Search<'_>, start: usize, y: &Permutation, remaining: usize, acc: &Polynomial) {
        if remaining == 0 {
            s.total += acc;
            return;
        }
        let last = s.letters.len() - remaining;
        for pos in start..=last {
            let i = s.letters[pos];
            if y.has_left_descent(i) {
                let next = acc * &s.betas[pos];
                go(s, pos + 1, &y.simple_times(i), remaining - 1, &next);
            }
        }
    }

    let mut search = Search {
        letters,
        betas: &betas,
        total: Polynomial::zero(n),
    };
    go(&mut search, 0, v, target_len, &Polynomial::one(n));
    search.total
}

/// `ξ^{s_i}(v) = χ_i - v χ_i`, written in the simple roots.
pub fn xi_simple_value(i: usize, v: &Permutation) -> Result<Polynomial> {
    let n = v.rank();
    if i == 0 || i >= n {
        return Err(Error::LetterOutOfRange { letter: i, n });
    }
    let chi = LinearForm::chi(i, n);
    (&chi - &chi.act(v)?).to_alpha()
}

/// The positive roots `L_a - L_b` (`a < b`) sent to negative roots by
/// `w^{-1}`; these are the linear factors of `ξ^w(w)`.
pub fn diagonal_roots(w: &Permutation) -> Vec<Polynomial> {
    let n = w.rank();
    let inv = w.inverse();
    let mut roots = Vec::with_capacity(w.length());
    for a in 1..=n {
        for b in a + 1..=n {
            if inv.at(a) > inv.at(b) {
                roots.push(Polynomial::root(a, b, n));
            }
        }
    }
    roots
}

/// `ξ^w(w)`, the product of [`diagonal_roots`].
pub fn xi_diagonal(w: &Permutation) -> Polynomial {
    diagonal_roots(w)
        .iter()
        .fold(Polynomial::one(w.rank()), |acc, r| &acc * r)
}

/// All values `ξ^v(w)` for one rank, indexed by the canonical enumeration.
pub struct XiTable {
    group: Arc<SymmetricGroup>,
    // values[v][w]
    values: Vec<Vec<Polynomial>>,
}

impl XiTable {
    pub fn new(n: usize) -> Self {
        let group = SymmetricGroup::shared(n);
        let words: Vec<ReducedWord> = group
            .elements()
            .iter()
            .map(Permutation::canonical_reduced_word)
            .collect();
        let values = group
            .elements()
            .par_iter()
            .map(|v| {
                group
                    .elements()
                    .iter()
                    .zip(&words)
                    .map(|(w, word)| {
                        if v.bruhat_leq_unchecked(w) {
                            billey(v, word.letters(), n)
                        } else {
                            Polynomial::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        Self { group, values }
    }

    /// A process-wide cached table for rank `n`.
    pub fn shared(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<XiTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(&n) {
            return t.clone();
        }
        let table = Arc::new(Self::new(n));
        cache.lock().unwrap().entry(n).or_insert(table).clone()
    }

    pub fn group(&self) -> &Arc<SymmetricGroup> {
        &self.group
    }

    pub fn value(&self, v: &Permutation, w: &Permutation) -> &Polynomial {
        &self.values[self.group.index_of(v)][self.group.index_of(w)]
    }

    /// `ξ^v` as a function.
    pub fn function(&self, v: &Permutation) -> WeylFunction {
        WeylFunction {
            group: self.group.clone(),
            values: self.values[self.group.index_of(v)].clone(),
        }
    }
}

/// A total function `S_n -> S(h*)`, stored densely in canonical order.
#[derive(Clone)]
pub struct WeylFunction {
    group: Arc<SymmetricGroup>,
    values: Vec<Polynomial>,
}

impl WeylFunction {
    pub fn from_fn<F>(n: usize, f: F) -> Self
    where
        F: Fn(&Permutation) -> Polynomial,
    {
        let group = SymmetricGroup::shared(n);
        let values = group.elements().iter().map(f).collect();
        Self { group, values }
    }

    pub fn try_from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(&Permutation) -> Result<Polynomial>,
    {
        let group = SymmetricGroup::shared(n);
        let values = group.elements().iter().map(f).collect::<Result<_>>()?;
        Ok(Self { group, values })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| Polynomial::zero(n))
    }

    /// The constant function with value `c`.
    pub fn constant(c: &Polynomial) -> Self {
        Self::from_fn(c.rank(), |_| c.clone())
    }

    /// The Schubert basis element `ξ^v`.
    pub fn xi(v: &Permutation) -> Self {
        XiTable::shared(v.rank()).function(v)
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn value(&self, w: &Permutation) -> &Polynomial {
        &self.values[self.group.index_of(w)]
    }

    /// `(w, f(w))` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> {
        self.group.elements().iter().zip(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    /// `(A_i f)(w) = (f(w s_i) - f(w)) / (w α_i)`, each quotient exact.
    pub fn divided_difference(&self, i: usize) -> Result<Self> {
        let n = self.rank();
        if i == 0 || i >= n {
            return Err(Error::LetterOutOfRange { letter: i, n });
        }
        let values = self
            .group
            .elements()
            .iter()
            .zip(&self.values)
            .map(|(w, fw)| {
                let num = self.value(&w.times_simple(i)) - fw;
                num.exact_div_alpha_linear(&Polynomial::root(w.at(i), w.at(i + 1), n))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            group: self.group.clone(),
            values,
        })
    }

    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            values,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            values,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            values,
        })
    }

    /// Multiplies every value by the polynomial `c`.
    pub fn scale(&self, c: &Polynomial) -> Result<Self> {
        check_rank(self.rank(), c.rank())?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        })
    }
}

impl PartialEq for WeylFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.values == other.values
    }
}

impl Eq for WeylFunction {}

impl fmt::Debug for WeylFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// A finite sum `Σ p_u ξ^u`, iterated in canonical order of `u`.
#[derive(Clone, PartialEq, Eq)]
pub struct SchubertExpansion {
    rank: usize,
    coeffs: BTreeMap<(usize, Permutation), Polynomial>,
}

impl SchubertExpansion {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds `p ξ^u`, dropping the entry if the coefficient cancels to zero.
    pub fn add_term(&mut self, u: &Permutation, p: &Polynomial) {
        assert_eq!(u.rank(), self.rank, "rank mismatch");
        if p.is_zero() {
            return;
        }
        let key = (u.length(), u.clone());
        match self.coeffs.get_mut(&key) {
            Some(c) => {
                *c += p;
                if c.is_zero() {
                    self.coeffs.remove(&key);
                }
            }
            None => {
                self.coeffs.insert(key, p.clone());
            }
        }
    }

    pub fn coefficient(&self, u: &Permutation) -> Polynomial {
        self.coeffs
            .get(&(u.length(), u.clone()))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.rank))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> {
        self.coeffs.iter().map(|((_, u), p)| (u, p))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ p_u ξ^u` as a function on `S_n`.
    pub fn to_function(&self) -> WeylFunction {
        let table = XiTable::shared(self.rank);
        WeylFunction::from_fn(self.rank, |w| {
            let mut total = Polynomial::zero(self.rank);
            for (u, p) in self.iter() {
                total += &(p * table.value(u, w));
            }
            total
        })
    }
}

impl fmt::Debug for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// The unique expansion `f = Σ p_u ξ^u`, solved in canonical order.
///
/// At `u`, the residual `f(u) - Σ_{v earlier} p_v ξ^v(u)` is divided by
/// each linear factor of `ξ^u(u)` in turn. Any inexact division, or a
/// residual left over at the end, is reported as an error.
pub fn expand_schubert(f: &WeylFunction) -> Result<SchubertExpansion> {
    let n = f.rank();
    let table = XiTable::shared(n);
    let elements = table.group().elements();
    let mut residual = f.values.clone();
    let mut out = SchubertExpansion::new(n);
    for (ui, u) in elements.iter().enumerate() {
        if residual[ui].is_zero() {
            continue;
        }
        let mut coeff = residual[ui].clone();
        for root in diagonal_roots(u) {
            coeff = coeff
                .exact_div_alpha_linear(&root)
                .map_err(|e| Error::OutsideSpan(format!("at {u}: {e}")))?;
        }
        for (wi, w) in elements.iter().enumerate().skip(ui) {
            let basis = table.value(u, w);
            if !basis.is_zero() {
                residual[wi] -= &(&coeff * basis);
            }
        }
        out.add_term(u, &coeff);
    }
    if let Some(w) = elements
        .iter()
        .zip(&residual)
        .find(|(_, r)| !r.is_zero())
        .map(|(w, _)| w)
    {
        return Err(Error::OutsideSpan(format!("nonzero residual at {w}")));
    }
    Ok(out)
}

/// Chevalley's formula: `ξ^{s_i} ξ^w = ξ^{s_i}(w) ξ^w + Σ ξ^{w t(a,b)}`
/// over covers `w -> w t(a,b)` with `a <= i < b`.
pub fn chevalley_expand(i: usize, w: &Permutation) -> Result<SchubertExpansion> {
    let n = w.rank();
    let mut out = SchubertExpansion::new(n);
    out.add_term(w, &xi_simple_value(i, w)?);
    let one = Polynomial::one(n);
    let len = w.length();
    for a in 1..=i {
        for b in i + 1..=n {
            if w.at(a) < w.at(b) {
                let u = w.times_transposition(a, b);
                if u.length() == len + 1 {
                    out.add_term(&u, &one);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::enumerate_group;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn a(k: usize, n: usize) -> Polynomial {
        Polynomial::alpha(k, n).unwrap()
    }

    fn word(l: &[usize], n: usize) -> Permutation {
        Permutation::from_word(l, n).unwrap()
    }

    #[test]
    fn billey_examples() {
        let w = word(&[4, 3, 5, 4, 2, 3], 7);
        let v = Permutation::simple(3, 7).unwrap();
        assert_eq!(
            xi_value(&v, &w).unwrap().to_string(),
            "a2 + 2*a3 + 2*a4 + a5"
        );
        for w in enumerate_group(3) {
            assert!(xi_value(&Permutation::identity(3), &w).unwrap().is_one());
        }
        let s1 = Permutation::simple(1, 3).unwrap();
        assert_eq!(xi_value(&s1, &s1).unwrap(), a(1, 3));
        assert!(xi_value(&s1, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn simple_value_examples() {
        let v = perm(&[1, 5, 6, 2, 3, 4, 7]);
        assert_eq!(
            xi_simple_value(3, &v).unwrap().to_string(),
            "a2 + 2*a3 + 2*a4 + a5"
        );
        assert!(xi_simple_value(1, &Permutation::identity(3))
            .unwrap()
            .is_zero());
        assert_eq!(
            xi_simple_value(1, &perm(&[3, 2, 1])).unwrap(),
            &a(1, 3) + &a(2, 3)
        );
        assert!(xi_simple_value(0, &Permutation::identity(3)).is_err());
        assert!(xi_simple_value(3, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert!(xi_diagonal(&Permutation::identity(3)).is_one());
        assert_eq!(xi_diagonal(&Permutation::simple(1, 3).unwrap()), a(1, 3));
        let expected = &(&a(1, 3) * &a(2, 3)) * &(&a(1, 3) + &a(2, 3));
        assert_eq!(xi_diagonal(&perm(&[3, 2, 1])), expected);
    }

    #[test]
    fn divided_difference_examples() {
        let n = 3;
        let s1 = Permutation::simple(1, n).unwrap();
        let s2 = Permutation::simple(2, n).unwrap();
        let d = WeylFunction::xi(&s1).divided_difference(1).unwrap();
        assert_eq!(d, WeylFunction::constant(&Polynomial::one(n)));
        assert!(WeylFunction::xi(&s2)
            .divided_difference(1)
            .unwrap()
            .is_zero());
        let c = WeylFunction::constant(&(&a(1, n) + &Polynomial::from_int(n, 5)));
        assert!(c.divided_difference(2).unwrap().is_zero());
        assert!(c.divided_difference(3).is_err());
    }

    #[test]
    fn divided_difference_rejects_non_members() {
        // f(e) = 0 and f = 1 elsewhere has no exact quotient at e
        let n = 2;
        let f = WeylFunction::from_fn(n, |w| {
            if w.is_identity() {
                Polynomial::zero(n)
            } else {
                Polynomial::one(n)
            }
        });
        assert!(matches!(
            f.divided_difference(1),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn pointwise_examples() {
        let n = 3;
        let s1 = Permutation::simple(1, n).unwrap();
        let g = WeylFunction::xi(&perm(&[2, 3, 1]));
        let e = WeylFunction::xi(&Permutation::identity(n));
        assert_eq!(e.pointwise_product(&g).unwrap(), g);
        let sq = WeylFunction::xi(&s1)
            .pointwise_product(&WeylFunction::xi(&s1))
            .unwrap();
        assert_eq!(sq.value(&s1), &(&a(1, n) * &a(1, n)));
        assert!(g
            .pointwise_product(&WeylFunction::zero(n))
            .unwrap()
            .is_zero());
        assert!(g.pointwise_product(&WeylFunction::zero(4)).is_err());
    }

    #[test]
    fn expand_examples() {
        let n = 3;
        let s1 = Permutation::simple(1, n).unwrap();
        let single = expand_schubert(&WeylFunction::xi(&s1)).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.coefficient(&s1).is_one());

        let sq = WeylFunction::xi(&s1)
            .pointwise_product(&WeylFunction::xi(&s1))
            .unwrap();
        let e = expand_schubert(&sq).unwrap();
        let cover = s1.times_transposition(1, 3);
        assert_eq!(cover, perm(&[3, 1, 2]));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&s1), a(1, n));
        assert!(e.coefficient(&cover).is_one());

        assert!(expand_schubert(&WeylFunction::zero(n)).unwrap().is_empty());
    }

    #[test]
    fn expand_rejects_functions_outside_the_span() {
        let n = 2;
        let f = WeylFunction::from_fn(n, |w| {
            if w.is_identity() {
                Polynomial::zero(n)
            } else {
                Polynomial::one(n)
            }
        });
        assert!(matches!(expand_schubert(&f), Err(Error::OutsideSpan(_))));
    }

    #[test]
    fn chevalley_examples() {
        let n = 3;
        let s1 = Permutation::simple(1, n).unwrap();
        let s2 = Permutation::simple(2, n).unwrap();
        let c = chevalley_expand(1, &s1).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&s1), a(1, n));
        assert!(c.coefficient(&perm(&[3, 1, 2])).is_one());

        let c = chevalley_expand(2, &s2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&s2), a(2, n));
        assert!(c.coefficient(&perm(&[2, 3, 1])).is_one());

        for i in 1..4 {
            let c = chevalley_expand(i, &Permutation::identity(4)).unwrap();
            assert_eq!(c.len(), 1);
            assert!(c.coefficient(&Permutation::simple(i, 4).unwrap()).is_one());
        }
    }

    #[test]
    fn right_invariance_needs_ascents() {
        // ξ^{s1} is invariant under right multiplication by s2, but not by
        // s2 s1 even though l(s1 s2 s1) = l(s1) + l(s2 s1)
        let n = 3;
        let s1 = word(&[1], n);
        let e = Permutation::identity(n);
        assert_eq!(
            xi_value(&s1, &word(&[2], n)).unwrap(),
            xi_value(&s1, &e).unwrap()
        );
        let v = word(&[2, 1], n);
        assert_eq!((&s1 * &v).length(), 3);
        assert_eq!(xi_value(&s1, &v).unwrap(), &a(1, n) + &a(2, n));
    }
}
