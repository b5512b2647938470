//! Exact arithmetic in the symmetric algebra of `h*` for `sl_n`.
//!
//! Weights and roots live as [`LinearForm`]s in the coordinates `L_1..L_n`.
//! Everything the engine computes is a [`Polynomial`] in the simple roots
//! `α_1..α_{n-1}`; conversion between the two goes through
//! [`LinearForm::to_alpha`], which only accepts forms whose coefficients sum
//! to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weyl::{check_rank, Permutation};

/// Exponent vector over `α_1..α_{n-1}`, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u16>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `α_1..α_{n-1}` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigRational::one())
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(rank - 1), c);
        }
        p
    }

    pub fn from_int(rank: usize, c: i64) -> Self {
        Self::constant(rank, BigRational::from_integer(BigInt::from(c)))
    }

    /// The simple root `α_k` as a variable, `1 <= k <= n-1`.
    pub fn alpha(k: usize, rank: usize) -> Result<Self> {
        if k == 0 || k >= rank {
            return Err(Error::LetterOutOfRange { letter: k, n: rank });
        }
        let mut e = vec![0; rank - 1];
        e[k - 1] = 1;
        let mut p = Self::zero(rank);
        p.terms.insert(Monomial(e), BigRational::one());
        Ok(p)
    }

    /// The root `L_a - L_b` written in the simple-root basis.
    pub fn root(a: usize, b: usize, rank: usize) -> Self {
        let mut p = Self::zero(rank);
        if a == b {
            return p;
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for k in lo..hi {
            let mut e = vec![0; rank - 1];
            e[k - 1] = 1;
            p.terms
                .insert(Monomial(e), BigRational::from_integer(BigInt::from(sign)));
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u16>, BigRational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() + 1 != rank {
                return Err(Error::InvalidParameters(format!(
                    "exponent vector {e:?} has {} entries, expected {}",
                    e.len(),
                    rank - 1
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True if every term has total degree `d` (vacuously true for zero).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Value at `α = 0`, i.e. the constant term.
    pub fn specialize_zero(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.rank - 1))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self * other)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitutes `α_k ↦ images[k-1]` for every variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() + 1 != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: images.len() + 1,
            });
        }
        let rank = images.first().map_or(self.rank, |p| p.rank);
        // powers[k][e] = images[k]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|_| vec![Polynomial::one(rank)]).collect();
        let mut out = Polynomial::zero(rank);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(rank, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][e as usize];
            }
            out += &term;
        }
        Ok(out)
    }

    /// The Weyl group action induced by `w L_j = L_{w(j)}`.
    pub fn weyl_act(&self, w: &Permutation) -> Result<Self> {
        check_rank(self.rank, w.rank())?;
        let images: Vec<Polynomial> = (1..self.rank)
            .map(|k| Polynomial::root(w.at(k), w.at(k + 1), self.rank))
            .collect();
        self.substitute(&images)
    }

    /// Exact quotient by a linear form in the root span.
    ///
    /// The form is written as `Σ d_k α_k`; its smallest-index variable `α_j`
    /// with `d_j != 0` is eliminated by division in `α_j` with constant leading
    /// coefficient `d_j`. The remainder is `self` evaluated on the hyperplane
    /// `ℓ = 0` and must vanish.
    pub fn exact_div_linear(&self, divisor: &LinearForm) -> Result<Self> {
        check_rank(self.rank, divisor.rank())?;
        let d = divisor.to_alpha()?;
        self.exact_div_alpha_linear(&d)
    }

    /// Same as [`exact_div_linear`](Self::exact_div_linear) for a divisor
    /// already written as a degree-one polynomial in the simple roots.
    pub fn exact_div_alpha_linear(&self, divisor: &Polynomial) -> Result<Self> {
        check_rank(self.rank, divisor.rank)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.terms.keys().any(|m| m.degree() != 1) {
            return Err(Error::InvalidParameters(format!(
                "divisor {divisor} is not a linear form"
            )));
        }
        // smallest variable index present = largest monomial in grlex order
        let (lead_mono, lead_coef) = divisor.terms.iter().next_back().unwrap();
        let j = lead_mono.0.iter().position(|&e| e == 1).unwrap();
        let lead_inv = lead_coef.recip();

        let mut rem = self.terms.clone();
        let mut quot = Polynomial::zero(self.rank);
        loop {
            // the remaining term with the highest power of α_j
            let pick = rem
                .iter()
                .filter(|(m, _)| m.0[j] > 0)
                .max_by(|(a, _), (b, _)| a.0[j].cmp(&b.0[j]).then_with(|| a.cmp(b)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = pick else { break };
            let mut qm = m.0.clone();
            qm[j] -= 1;
            let qm = Monomial(qm);
            let qc = &c * &lead_inv;
            for (dm, dc) in &divisor.terms {
                let prod = qm.mul(dm);
                let entry = rem.entry(prod.clone()).or_insert_with(BigRational::zero);
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&prod);
                }
            }
            quot.add_term(qm, qc);
        }
        if !rem.is_empty() {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(quot)
    }
}

impl fmt::Display for Polynomial {
    /// Renders terms in canonical order, e.g. `a2 + 2*a3 + 2*a4 + a5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| {
                        if e == 1 {
                            format!("a{}", k + 1)
                        } else {
                            format!("a{}^{}", k + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = Polynomial::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// A rational linear form `Σ c_i L_i`, stored verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); rank],
        }
    }

    /// The coordinate `L_i`.
    pub fn coordinate(i: usize, rank: usize) -> Self {
        assert!(i >= 1 && i <= rank, "L_{i} out of range for rank {rank}");
        let mut f = Self::zero(rank);
        f.coeffs[i - 1] = BigRational::one();
        f
    }

    /// The simple root `α_i = L_i - L_{i+1}`.
    pub fn alpha(i: usize, rank: usize) -> Self {
        &Self::coordinate(i, rank) - &Self::coordinate(i + 1, rank)
    }

    /// The fundamental weight `χ_i = L_1 + ... + L_i`.
    pub fn chi(i: usize, rank: usize) -> Self {
        let mut f = Self::zero(rank);
        for c in f.coeffs.iter_mut().take(i) {
            *c = BigRational::one();
        }
        f
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// `w · f` with `w L_j = L_{w(j)}`.
    pub fn act(&self, w: &Permutation) -> Result<Self> {
        check_rank(self.rank(), w.rank())?;
        let mut out = Self::zero(self.rank());
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[w.at(j + 1) - 1] = c.clone();
        }
        Ok(out)
    }

    /// Rewrites a root-span form in the simple-root basis: the coefficient of
    /// `α_k` is the partial sum `c_1 + ... + c_k`.
    pub fn to_alpha(&self) -> Result<Polynomial> {
        let sum = self.coefficient_sum();
        if !sum.is_zero() {
            return Err(Error::NotInRootSpan(sum.to_string()));
        }
        let n = self.rank();
        let mut partial = BigRational::zero();
        let mut terms = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            partial += &self.coeffs[k - 1];
            let mut e = vec![0u16; n - 1];
            e[k - 1] = 1;
            terms.push((e, partial.clone()));
        }
        Polynomial::from_terms(n, terms)
    }

    /// Inverse of [`to_alpha`](Self::to_alpha): substitutes
    /// `α_k = L_k - L_{k+1}` into a polynomial of degree at most one.
    /// A nonzero constant term has no root-span preimage and is rejected.
    pub fn from_alpha(p: &Polynomial) -> Result<Self> {
        let n = p.rank();
        let mut out = Self::zero(n);
        for (m, c) in p.terms() {
            match m.degree() {
                1 => {
                    let k = m.exponents().iter().position(|&e| e == 1).unwrap() + 1;
                    out.coeffs[k - 1] += c;
                    out.coeffs[k] -= c;
                }
                d => {
                    return Err(Error::InvalidParameters(format!(
                        "term of degree {d} has no linear-form preimage"
                    )))
                }
            }
        }
        Ok(out)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: usize, n: usize) -> Polynomial {
        Polynomial::alpha(k, n).unwrap()
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn arithmetic_examples() {
        let n = 3;
        assert!((&a(1, n) + &(-&a(1, n))).is_zero());
        let prod = &a(1, n) * &a(2, n);
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(prod.to_string(), "a1*a2");
        let s = &a(1, n) + &a(2, n);
        let sq = &s * &s;
        assert_eq!(sq.to_string(), "a1^2 + 2*a1*a2 + a2^2");
        assert_eq!(
            a(1, 3).try_add(&a(1, 4)),
            Err(Error::RankMismatch { left: 3, right: 4 })
        );
        assert!(a(1, 3).try_mul(&a(1, 4)).is_err());
    }

    #[test]
    fn display_signs_and_fractions() {
        let n = 3;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let p = &(-&a(1, n)).scale(&q(3)) + &Polynomial::constant(n, half);
        assert_eq!(p.to_string(), "-3*a1 + 1/2");
        assert_eq!(Polynomial::zero(n).to_string(), "0");
        assert_eq!(Polynomial::one(n).to_string(), "1");
    }

    #[test]
    fn to_alpha_examples() {
        let f = LinearForm::from_ints(&[0, 1, 0, 0, 0, -1, 0]);
        assert_eq!(f.to_alpha().unwrap().to_string(), "a2 + a3 + a4 + a5");
        assert_eq!(LinearForm::alpha(1, 2).to_alpha().unwrap(), a(1, 2));
        assert!(matches!(
            LinearForm::chi(1, 3).to_alpha(),
            Err(Error::NotInRootSpan(_))
        ));
    }

    #[test]
    fn root_matches_to_alpha() {
        let n = 6;
        for i in 1..=n {
            for j in 1..=n {
                let form = &LinearForm::coordinate(i, n) - &LinearForm::coordinate(j, n);
                assert_eq!(Polynomial::root(i, j, n), form.to_alpha().unwrap());
            }
        }
    }

    #[test]
    fn weyl_act_examples() {
        let s2 = Permutation::simple(2, 3).unwrap();
        assert_eq!(a(1, 3).weyl_act(&s2).unwrap(), &a(1, 3) + &a(2, 3));
        let f = &(&a(1, 3) * &a(2, 3)) + &Polynomial::from_int(3, 7);
        assert_eq!(f.weyl_act(&Permutation::identity(3)).unwrap(), f);
        let s4 = Permutation::simple(4, 7).unwrap();
        assert_eq!(a(3, 7).weyl_act(&s4).unwrap(), &a(3, 7) + &a(4, 7));
    }

    #[test]
    fn exact_division_examples() {
        let n = 3;
        let a1 = LinearForm::alpha(1, n);
        assert_eq!(
            (&a(1, n) * &a(1, n)).exact_div_linear(&a1).unwrap(),
            a(1, n)
        );
        let diff = &(&a(1, n) * &a(1, n)) - &(&a(2, n) * &a(2, n));
        let sum = &LinearForm::alpha(1, n) + &LinearForm::alpha(2, n);
        assert_eq!(diff.exact_div_linear(&sum).unwrap(), &a(1, n) - &a(2, n));
        assert!(matches!(
            a(1, n).exact_div_linear(&LinearForm::alpha(2, n)),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(
            a(1, n).exact_div_linear(&LinearForm::zero(n)),
            Err(Error::DivisionByZero)
        );
        assert!(a(1, n).exact_div_linear(&LinearForm::chi(1, n)).is_err());
        assert!(Polynomial::zero(n).exact_div_linear(&a1).unwrap().is_zero());
    }

    #[test]
    fn specialize_examples() {
        assert!(Polynomial::zero(4).specialize_zero().is_zero());
        assert!(Polynomial::one(4).specialize_zero().is_one());
        let p = Polynomial::from_terms(
            7,
            vec![
                (vec![0, 1, 0, 0, 0, 0], q(1)),
                (vec![0, 0, 1, 0, 0, 0], q(2)),
                (vec![0, 0, 0, 1, 0, 0], q(2)),
                (vec![0, 0, 0, 0, 1, 0], q(1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "a2 + 2*a3 + 2*a4 + a5");
        assert!(p.specialize_zero().is_zero());
    }

    #[test]
    fn from_alpha_inverts_to_alpha() {
        let f = LinearForm::from_ints(&[3, -1, 0, -2]);
        assert_eq!(LinearForm::from_alpha(&f.to_alpha().unwrap()).unwrap(), f);
        assert!(LinearForm::from_alpha(&Polynomial::one(4)).is_err());
    }
}
