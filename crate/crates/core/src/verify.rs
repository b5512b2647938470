//! Exhaustive invariant sweeps over `S_n`.
//!
//! Each suite counts the individual checks it performs and records a short
//! description of every failing tuple. Sweeps fan out over `w` with rayon;
//! failures are reported in canonical order regardless of scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localization::{
    chevalley_expand, expand_schubert, xi_diagonal, xi_simple_value, xi_value_with_word,
    WeylFunction, XiTable,
};
use crate::pieri::{
    associated_element, decomp_identity_check, is_special_superior, monk_recursion_expand,
    pieri_expand, solve_expand, special_superior_set,
};
use crate::poly::Polynomial;
use crate::weyl::{enumerate_group, Permutation};

/// Largest rank the sweeps accept unless the caller raises it.
pub const DEFAULT_MAX_RANK: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    BilleyIndependence,
    Basis,
    OracleAgreement,
    Positivity,
    Lemmas,
    ClassicalLimit,
    Identity,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::BilleyIndependence,
        Suite::Basis,
        Suite::OracleAgreement,
        Suite::Positivity,
        Suite::Lemmas,
        Suite::ClassicalLimit,
        Suite::Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BilleyIndependence => "billey-independence",
            Suite::Basis => "basis",
            Suite::OracleAgreement => "oracle-agreement",
            Suite::Positivity => "positivity",
            Suite::Lemmas => "lemmas",
            Suite::ClassicalLimit => "classical-limit",
            Suite::Identity => "identity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one suite at one rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

/// Runs one suite over all of `S_n`.
pub fn run_suite(suite: Suite, n: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "verification needs n >= 2, got {n}"
        )));
    }
    Ok(match suite {
        Suite::BilleyIndependence => billey_independence(n),
        Suite::Basis => basis(n),
        Suite::OracleAgreement => oracle_agreement(n),
        Suite::Positivity => positivity(n),
        Suite::Lemmas => lemmas(n),
        Suite::ClassicalLimit => classical_limit(n),
        Suite::Identity => identity(n)?,
    })
}

fn sweep<F>(n: usize, f: F) -> Report
where
    F: Fn(&Permutation) -> Report + Sync + Send,
{
    enumerate_group(n)
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Report::default(), Report::merge)
}

/// `ξ^v(w)` is the same for every reduced word of `w`, and `ξ^{s_i}` agrees
/// with `χ_i - v χ_i`.
pub fn billey_independence(n: usize) -> Report {
    let table = XiTable::shared(n);
    let group = enumerate_group(n);
    let report = sweep(n, |w| {
        let mut r = Report::default();
        let words = w.reduced_words();
        for v in &group {
            let reference = table.value(v, w);
            for word in &words {
                let val = xi_value_with_word(v, word, n).unwrap();
                r.check(&val == reference, || {
                    format!("ξ^{v}({w}) via word {word}: {val} != {reference}")
                });
            }
        }
        r
    });
    report.merge(simple_root_formula(n))
}

/// ξ^{s_i}(v) from Billey's formula against χ_i - vχ_i for every v.
pub fn simple_root_formula(n: usize) -> Report {
    let table = XiTable::shared(n);
    let mut report = Report::default();
    for v in table.group().elements() {
        for i in 1..n {
            let s = Permutation::simple(i, n).unwrap();
            let direct = xi_simple_value(i, v).unwrap();
            let billey = table.value(&s, v);
            report.check(&direct == billey, || {
                format!("ξ^s{i}({v}): χ form {direct} != Billey {billey}")
            });
        }
    }
    report
}

/// Support vanishing, diagonal values, and the divided-difference
/// characterization of the Schubert basis.
pub fn basis(n: usize) -> Report {
    let table = XiTable::shared(n);
    let group = enumerate_group(n);
    sweep(n, |w| {
        let mut r = Report::default();
        for v in &group {
            let val = table.value(w, v);
            let below = w.bruhat_leq(v).unwrap();
            r.check(below || val.is_zero(), || {
                format!("ξ^{w}({v}) = {val} but {w} is not <= {v}")
            });
        }
        let diag = xi_diagonal(w);
        r.check(table.value(w, w) == &diag, || {
            format!("ξ^{w}({w}) = {} != root product {diag}", table.value(w, w))
        });
        let xi_w = table.function(w);
        for i in 1..n {
            let expected = if w.has_right_descent(i) {
                table.function(&w.times_simple(i))
            } else {
                WeylFunction::zero(n)
            };
            match xi_w.divided_difference(i) {
                Ok(d) => r.check(d == expected, || format!("A_{i} ξ^{w} has the wrong value")),
                Err(e) => r.check(false, || format!("A_{i} ξ^{w}: {e}")),
            }
        }
        r
    })
}

/// The closed rule, the Monk recursion, and the triangular solve agree on
/// `ξ^{c[k,m]} ξ^w` for every `w` and `1 <= m <= k <= n-1`.
pub fn oracle_agreement(n: usize) -> Report {
    sweep(n, |w| {
        let mut r = Report::default();
        for k in 1..n {
            for m in 1..=k {
                if let Some(msg) = three_way_mismatch(k, m, w) {
                    r.check(false, || msg);
                } else {
                    r.check(true, String::new);
                }
            }
        }
        r
    })
}

/// Compares the three routes for one `(k, m, w)`; `None` when they agree.
pub fn three_way_mismatch(k: usize, m: usize, w: &Permutation) -> Option<String> {
    let closed = match pieri_expand(k, m, w) {
        Ok(e) => e,
        Err(e) => return Some(format!("closed rule failed for k={k} m={m} w={w}: {e}")),
    };
    let recursion = match monk_recursion_expand(k, m, w) {
        Ok(e) => e,
        Err(e) => return Some(format!("recursion failed for k={k} m={m} w={w}: {e}")),
    };
    let solve = match solve_expand(k, m, w) {
        Ok(e) => e,
        Err(e) => return Some(format!("solve failed for k={k} m={m} w={w}: {e}")),
    };
    if closed != recursion {
        return Some(format!(
            "k={k} m={m} w={w}: closed {closed:?} != recursion {recursion:?}"
        ));
    }
    if closed != solve {
        return Some(format!(
            "k={k} m={m} w={w}: closed {closed:?} != solve {solve:?}"
        ));
    }
    None
}

/// Every structure constant is a nonnegative integer combination of
/// α-monomials and homogeneous of the expected degree. Checked on all
/// Pieri products and, for `n <= 4`, on all products `ξ^v ξ^w`.
pub fn positivity(n: usize) -> Report {
    let mut report = sweep(n, |w| {
        let mut r = Report::default();
        for k in 1..n {
            for m in 1..=k {
                let e = pieri_expand(k, m, w).unwrap();
                for (u, p) in e.iter() {
                    check_constant(&mut r, p, m + w.length(), u, || format!("c[{k},{m}]·{w}"));
                }
            }
        }
        r
    });
    if n <= 4 {
        let table = XiTable::shared(n);
        let group = enumerate_group(n);
        let products = sweep(n, |v| {
            let mut r = Report::default();
            for w in &group {
                match expand_schubert(
                    &table
                        .function(v)
                        .pointwise_product(&table.function(w))
                        .unwrap(),
                ) {
                    Ok(e) => {
                        for (u, p) in e.iter() {
                            check_constant(&mut r, p, v.length() + w.length(), u, || {
                                format!("{v}·{w}")
                            });
                        }
                    }
                    Err(e) => r.check(false, || format!("ξ^{v} ξ^{w}: {e}")),
                }
            }
            r
        });
        report = report.merge(products);
    }
    report
}

fn check_constant(
    r: &mut Report,
    p: &Polynomial,
    total: usize,
    u: &Permutation,
    what: impl Fn() -> String,
) {
    r.check(p.is_nonnegative_integral(), || {
        format!("{} at {u}: {p} is not a nonnegative integral", what())
    });
    let ok = u.length() <= total && p.is_homogeneous_of_degree((total - u.length()) as u32);
    r.check(ok, || {
        format!("{} at {u}: {p} has the wrong degree", what())
    });
}

/// `p = 0` applied coefficientwise recovers the classical rule: 1 exactly
/// on `S_w(k,m)` at length `l(w)+m`, 0 elsewhere. The expected support is
/// computed by filtering all of `S_n`.
pub fn classical_limit(n: usize) -> Report {
    let group = enumerate_group(n);
    sweep(n, |w| {
        let mut r = Report::default();
        for k in 1..n {
            for m in 1..=k {
                let e = pieri_expand(k, m, w).unwrap();
                for u in &group {
                    let got = e.coefficient(u).specialize_zero();
                    let expected = u.length() == w.length() + m
                        && is_special_superior(w, u, k, m).unwrap().is_some();
                    let want = if expected { 1 } else { 0 };
                    r.check(got == num_rational::BigRational::from_integer(want.into()), || {
                        format!("k={k} m={m} w={w} u={u}: classical coefficient {got}, expected {want}")
                    });
                }
            }
        }
        r
    })
}

/// The decomposition identity for every admissible `(k, m)`.
pub fn identity(n: usize) -> Result<Report> {
    let mut r = Report::default();
    for k in 2..n {
        for m in 1..=k {
            let ok = decomp_identity_check(k, m, n)?;
            r.check(ok, || {
                format!("decomposition identity fails for k={k} m={m} n={n}")
            });
        }
    }
    Ok(r)
}

/// The combinatorial lemmas on special superior sets and the lemmas on
/// values at associated elements, over every applicable tuple.
pub fn lemmas(n: usize) -> Report {
    let table = XiTable::shared(n);
    let group = enumerate_group(n);
    sweep(n, |w| {
        let mut r = Report::default();
        let member = |u: &Permutation, k: usize, p: usize| {
            is_special_superior(w, u, k, p).unwrap().is_some()
        };

        // transposition criterion for covers in Bruhat order
        for i in 1..=n {
            for j in i + 1..=n {
                let (u, up) = w.multiply_transposition(i, j).unwrap();
                let diff = u.length() as i64 - w.length() as i64;
                r.check(up == (w.at(i) < w.at(j)), || {
                    format!("t({i},{j}) flag at {w}")
                });
                r.check(diff % 2 != 0 && (diff > 0) == up, || {
                    format!("t({i},{j}) length change {diff} at {w}")
                });
            }
        }

        for k in 1..n {
            // prefix closure of single-cycle elements
            for p in 1..=k {
                for u in special_superior_set(w, k, p).unwrap() {
                    let wit = is_special_superior(w, &u, k, p).unwrap().unwrap();
                    if wit.cycles.len() != 1 {
                        continue;
                    }
                    let q = wit.cycles[0].top();
                    let mut prefix = w.clone();
                    for (r_len, &i) in wit.cycles[0].chain().iter().enumerate() {
                        prefix = prefix.times_transposition(i, q);
                        let ok = member(&prefix, k, r_len + 1);
                        r.check(ok, || {
                            format!("prefix {prefix} of {u} not in S_{w}({k},{})", r_len + 1)
                        });
                    }
                }
            }

            // diagonal coefficient of the product
            for m in 1..=k {
                let e = pieri_expand(k, m, w).unwrap();
                let c = Permutation::c_km(k, m, n).unwrap();
                r.check(&e.coefficient(w) == table.value(&c, w), || {
                    format!("diagonal term of c[{k},{m}]·{w}")
                });
            }

            if k < 2 {
                continue;
            }
            for p in 1..=k {
                for u in &group {
                    let in_k = member(u, k, p);
                    let in_k1 = member(u, k - 1, p);
                    let ups: Vec<usize> = (k + 1..=n)
                        .filter(|&q| member(&u.times_transposition(k, q), k - 1, p - 1))
                        .collect();
                    let downs: Vec<usize> = (1..k)
                        .filter(|&q| member(&u.times_transposition(q, k), k - 1, p - 1))
                        .collect();
                    // the same moves restricted to covers u t -> u
                    let covered = |t: Permutation| t.length() + 1 == u.length();
                    let cover_ups: Vec<usize> = ups
                        .iter()
                        .copied()
                        .filter(|&q| covered(u.times_transposition(k, q)))
                        .collect();
                    let cover_downs: Vec<usize> = downs
                        .iter()
                        .copied()
                        .filter(|&q| covered(u.times_transposition(q, k)))
                        .collect();
                    let ctx = || format!("w={w} u={u} k={k} p={p} ups={ups:?} downs={downs:?}");
                    match (in_k, in_k1) {
                        (true, false) => {
                            r.check(ups.len() == 1 && downs.is_empty(), || {
                                format!("unique q>k: {}", ctx())
                            });
                            for &q in &ups {
                                let a = associated_element(u, w, k).unwrap().result;
                                let b = associated_element(&u.times_transposition(k, q), w, k - 1)
                                    .unwrap()
                                    .result;
                                r.check(a == b, || {
                                    format!(
                                        "associated elements differ across t({k},{q}): {}",
                                        ctx()
                                    )
                                });
                            }
                        }
                        (true, true) => {
                            r.check(ups.is_empty() && downs.is_empty(), || {
                                format!("no moves expected: {}", ctx())
                            });
                            let v = associated_element(u, w, k).unwrap().result;
                            r.check(u.at(k) == v.at(k - p), || {
                                format!("u(k) != v(k-p) with v = {v}: {}", ctx())
                            });
                            let v1 = associated_element(u, w, k - 1).unwrap().result;
                            for big_n in 1..=(k - p).saturating_sub(1) {
                                let c = Permutation::c_km(k - p - 1, big_n, n).unwrap();
                                r.check(table.value(&c, &v) == table.value(&c, &v1), || {
                                    format!(
                                        "c[{},{big_n}] values differ at {v} and {v1}: {}",
                                        k - p - 1,
                                        ctx()
                                    )
                                });
                            }
                        }
                        (false, true) => {
                            r.check(downs.len() == 1 && ups.is_empty(), || {
                                format!("unique q<k: {}", ctx())
                            });
                        }
                        (false, false) => {
                            r.check(cover_ups.is_empty() == cover_downs.is_empty(), || {
                                format!("covering q>k iff covering q'<k: {}", ctx())
                            });
                            for &q in &cover_ups {
                                for &q2 in &cover_downs {
                                    let a =
                                        associated_element(&u.times_transposition(k, q), w, k - 1)
                                            .unwrap()
                                            .result;
                                    let b =
                                        associated_element(&u.times_transposition(q2, k), w, k - 1)
                                            .unwrap()
                                            .result;
                                    r.check(a == b, || {
                                        format!(
                                            "associated elements differ for q={q} q'={q2}: {}",
                                            ctx()
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        // ξ^w(v s_i) = ξ^w(v) whenever w s_i > w, and hence ξ^w is constant
        // on right cosets of the parabolic subgroup generated by those s_i
        let ascents: Vec<usize> = (1..n).filter(|&i| !w.has_right_descent(i)).collect();
        for v in &group {
            for &i in &ascents {
                let moved = v.times_simple(i);
                r.check(table.value(w, &moved) == table.value(w, v), || {
                    format!("ξ^{w}({v}·s{i}) != ξ^{w}({v})")
                });
            }
        }
        for x in &group {
            let word = x.canonical_reduced_word();
            if !word.letters().iter().all(|i| ascents.contains(i)) {
                continue;
            }
            r.check((w * x).length() == w.length() + x.length(), || {
                format!("{w}·{x} not length-additive")
            });
            for u in &group {
                let ux = u * x;
                r.check(table.value(w, &ux) == table.value(w, u), || {
                    format!("ξ^{w}({u}·{x}) != ξ^{w}({u})")
                });
            }
        }
        r
    })
}

/// Chevalley's formula against the triangular solve for every `i` and `w`.
pub fn chevalley_agreement(n: usize) -> Report {
    let table = XiTable::shared(n);
    sweep(n, |w| {
        let mut r = Report::default();
        for i in 1..n {
            let s = Permutation::simple(i, n).unwrap();
            let product = table
                .function(&s)
                .pointwise_product(&table.function(w))
                .unwrap();
            let solved = expand_schubert(&product);
            let chev = chevalley_expand(i, w).unwrap();
            r.check(solved.as_ref().ok() == Some(&chev), || {
                format!("Chevalley mismatch at s{i}·{w}")
            });
        }
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass_on_s3() {
        for s in Suite::ALL {
            let report = run_suite(s, 3).unwrap();
            assert!(report.passed(), "{s}: {:?}", report.failures);
            assert!(report.checks > 0, "{s} performed no checks");
        }
    }

    #[test]
    fn chevalley_matches_solve_on_s4() {
        let r = chevalley_agreement(4);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
