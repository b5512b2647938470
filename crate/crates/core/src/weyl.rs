//! The symmetric group `S_n` as the Weyl group of `sl_n`.
//!
//! Permutations are stored in one-line notation with 1-based values. The
//! product is composition of maps, `(uv)(i) = u(v(i))`, so right
//! multiplication by a transposition `t(i,j)` swaps the entries in positions
//! `i` and `j`, while left multiplication swaps the values `i` and `j`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// An element of `S_n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `[w(1), ..., w(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("rank must be at least 1".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("rank {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..{n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize, "rank {n} out of range");
        Self {
            images: (1..=n as u8).collect(),
        }
    }

    /// The simple reflection `s_i = t(i, i+1)`.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::LetterOutOfRange { letter: i, n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The transposition `t(i,j)` exchanging `i < j`.
    pub fn transposition(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::InvalidTransposition { i, j, n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// The product `s_{i_1} s_{i_2} ... s_{i_l}` of the given letters, read
    /// left to right.
    pub fn from_word(letters: &[usize], n: usize) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in letters {
            if i == 0 || i >= n {
                return Err(Error::LetterOutOfRange { letter: i, n });
            }
            p.images.swap(i - 1, i);
        }
        Ok(p)
    }

    /// The cycle permutation `c[k,m] = s_{k-m+1} ... s_{k-1} s_k`.
    pub fn c_km(k: usize, m: usize, n: usize) -> Result<Self> {
        if m > k || k + 1 > n.max(1) {
            return Err(Error::InvalidParameters(format!(
                "c[{k},{m}] requires 0 <= m <= k <= n-1 with n = {n}"
            )));
        }
        let letters: Vec<usize> = (k + 1 - m..=k).collect();
        Self::from_word(if m == 0 { &[] } else { &letters }, n)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.rank()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Self { images: inv }
    }

    /// Composition of maps: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Ok(self * other)
    }

    /// Number of inversions, which equals the length of any reduced word.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w t(i,j)` (positions `i`, `j` swapped) together with whether the
    /// length went up, which happens exactly when `w(i) < w(j)`.
    pub fn multiply_transposition(&self, i: usize, j: usize) -> Result<(Self, bool)> {
        if i == 0 || i >= j || j > self.rank() {
            return Err(Error::InvalidTransposition {
                i,
                j,
                n: self.rank(),
            });
        }
        Ok((self.times_transposition(i, j), self.at(i) < self.at(j)))
    }

    /// `w t(i,j)` without range checks beyond indexing.
    #[inline]
    pub fn times_transposition(&self, i: usize, j: usize) -> Self {
        let mut p = self.clone();
        p.images.swap(i - 1, j - 1);
        p
    }

    /// `w s_i`.
    #[inline]
    pub fn times_simple(&self, i: usize) -> Self {
        self.times_transposition(i, i + 1)
    }

    /// `s_i w`: swaps the values `i` and `i+1`.
    pub fn simple_times(&self, i: usize) -> Self {
        let mut p = self.clone();
        for x in p.images.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        p
    }

    /// Whether `l(s_i w) < l(w)`, i.e. the value `i+1` sits left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.images.iter().position(|&x| x as usize == v).unwrap();
        pos(i) > pos(i + 1)
    }

    /// Whether `l(w s_i) < l(w)`.
    #[inline]
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.at(i) > self.at(i + 1)
    }

    /// Bruhat order `self <= other`, decided by the rank-matrix criterion:
    /// `#{a <= i : v(a) >= j} <= #{a <= i : w(a) >= j}` for all `i, j`.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, other: &Self) -> bool {
        let n = self.rank();
        // counts[j] = #{a <= i : v(a) >= j+1} - #{a <= i : w(a) >= j+1}
        let mut counts = vec![0i32; n];
        for i in 0..n {
            let v = self.images[i] as usize;
            let w = other.images[i] as usize;
            for c in counts.iter_mut().take(v) {
                *c += 1;
            }
            for c in counts.iter_mut().take(w) {
                *c -= 1;
            }
            if counts.iter().any(|&c| c > 0) {
                return false;
            }
        }
        true
    }

    /// Disjoint cycles of the permutation, fixed points omitted, each
    /// starting at its largest entry. Cycles are sorted by that entry.
    pub fn cycle_decomposition(&self) -> Vec<Cycle> {
        let n = self.rank();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in (1..=n).rev() {
            if seen[start] || self.at(start) == start {
                continue;
            }
            let mut entries = vec![start];
            seen[start] = true;
            let mut x = self.at(start);
            while x != start {
                seen[x] = true;
                entries.push(x);
                x = self.at(x);
            }
            cycles.push(Cycle { entries });
        }
        cycles.sort_by_key(|c| c.top());
        cycles
    }

    /// The lexicographically smallest reduced word.
    ///
    /// Every reduced word starts with a left descent and every left descent
    /// starts some reduced word, so choosing the smallest left descent at each
    /// step yields the lexicographic minimum among words of equal length.
    pub fn canonical_reduced_word(&self) -> ReducedWord {
        let mut rest = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        'outer: loop {
            for i in 1..rest.rank() {
                if rest.has_left_descent(i) {
                    letters.push(i);
                    rest = rest.simple_times(i);
                    continue 'outer;
                }
            }
            break;
        }
        ReducedWord { letters }
    }

    /// All reduced words, in lexicographic order.
    pub fn reduced_words(&self) -> Vec<ReducedWord> {
        fn go(w: &Permutation, prefix: &mut Vec<usize>, out: &mut Vec<ReducedWord>) {
            if w.is_identity() {
                out.push(ReducedWord {
                    letters: prefix.clone(),
                });
                return;
            }
            for i in 1..w.rank() {
                if w.has_left_descent(i) {
                    prefix.push(i);
                    go(&w.simple_times(i), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Ordering used for every enumeration: length first, then one-line
    /// notation lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.images.cmp(&other.images))
    }

    /// Digit string such as `1254367`; only defined for `n <= 9`.
    pub fn compact(&self) -> Option<String> {
        (self.rank() <= 9).then(|| self.images.iter().map(|x| char::from(b'0' + x)).collect())
    }

    /// Parses one of the accepted textual forms for a permutation of rank `n`:
    /// an empty string or `e` (identity), a bracketed one-line form
    /// `[1,2,4,5,3,6,7]`, a digit string `1245367` (n <= 9), or a word
    /// `s3 s4` read left to right.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if n == 0 {
            return Err(Error::InvalidParameters("rank must be at least 1".into()));
        }
        if t.is_empty() || t == "e" {
            return Ok(Self::identity(n));
        }
        let p = if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated one-line form {t:?}")))?;
            let images = body
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {s:?} in {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Self::new(images)?
        } else if t.starts_with('s') {
            let letters = t
                .split(|c: char| c.is_whitespace() || c == '*' || c == ',')
                .filter(|s| !s.is_empty())
                .map(|tok| {
                    let digits = tok.strip_prefix('s').map(|d| d.trim_start_matches('_'));
                    digits
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad letter {tok:?} in {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Self::from_word(&letters, n)?
        } else if t.chars().all(|c| c.is_ascii_digit()) {
            if n > 9 {
                return Err(Error::Parse(format!(
                    "digit-string form needs n <= 9, got n = {n}"
                )));
            }
            Self::new(t.bytes().map(|b| (b - b'0') as usize).collect())?
        } else {
            return Err(Error::Parse(format!("unrecognized permutation {t:?}")));
        };
        check_rank(p.rank(), n)?;
        Ok(p)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// `(u * v)(i) = u(v(i))`. Panics on a rank mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Permutation {
            images: rhs
                .images
                .iter()
                .map(|&x| self.images[x as usize - 1])
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// A reduced word `s_{i_1} ... s_{i_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Checks that `letters` really is reduced for rank `n`.
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self> {
        let p = Permutation::from_word(&letters, n)?;
        if p.length() != letters.len() {
            return Err(Error::InvalidParameters(format!(
                "word {letters:?} is not reduced"
            )));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Renders as `s3 s4`, or `e` for the empty word.
impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// A cycle `(q i_r ... i_1)` listed from its largest entry `q`, so that
/// `entries[0] = q`, `entries[1] = ζ(q) = i_r`, and so on, with the last
/// entry mapping back to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    entries: Vec<usize>,
}

impl Cycle {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidParameters(
                "a cycle needs at least two entries".into(),
            ));
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != entries.len() || sorted[0] == 0 {
            return Err(Error::InvalidParameters(format!(
                "cycle entries {entries:?} must be distinct and positive"
            )));
        }
        let top = entries
            .iter()
            .enumerate()
            .max_by_key(|(_, &x)| x)
            .unwrap()
            .0;
        let mut entries = entries;
        entries.rotate_left(top);
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The largest entry `q`.
    pub fn top(&self) -> usize {
        self.entries[0]
    }

    /// `i_1, ..., i_r` in the order of the factorization
    /// `ζ = t(i_1,q) t(i_2,q) ... t(i_r,q)`.
    pub fn chain(&self) -> Vec<usize> {
        self.entries[1..].iter().rev().copied().collect()
    }

    /// The cycle as a permutation of rank `n`.
    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (k, &x) in self.entries.iter().enumerate() {
            if x > n {
                return Err(Error::InvalidParameters(format!(
                    "cycle entry {x} exceeds rank {n}"
                )));
            }
            images[x - 1] = self.entries[(k + 1) % self.entries.len()];
        }
        Permutation::new(images)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All `n!` elements of `S_n`, sorted by length and then by one-line
/// notation. This order is used by every enumeration in the crate.
pub fn enumerate_group(n: usize) -> Vec<Permutation> {
    assert!(n >= 1, "rank must be at least 1");
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    permute(&mut current, 0, &mut out);
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation {
            images: v.iter().map(|&x| x as u8).collect(),
        });
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// `S_n` with its canonical enumeration and a reverse index, shared per rank.
#[derive(Debug)]
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let elements = enumerate_group(n);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Self { n, elements, index }
    }

    /// A process-wide cached instance for rank `n`.
    pub fn shared(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Self::new(n)))
            .clone()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of `w` in the canonical enumeration.
    pub fn index_of(&self, w: &Permutation) -> usize {
        self.index[w]
    }
}
