//! JSON documents for expansions and coefficients.
//!
//! Rationals are written as decimal strings so arbitrarily large values
//! survive a round trip.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use schubert_core::{pieri_term, Permutation, Polynomial, SchubertExpansion};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub exp: Vec<u16>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub terms: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub p: usize,
    #[serde(rename = "I")]
    pub index_set: Vec<usize>,
    pub lambda: Vec<usize>,
    pub assoc: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub u: String,
    pub one_line: Vec<usize>,
    pub coeff: PolynomialDoc,
    pub trace: Option<TraceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub n: usize,
    pub c: [usize; 2],
    pub w: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub n: usize,
    pub c: [usize; 2],
    pub w: String,
    pub u: String,
    pub coeff: PolynomialDoc,
    pub trace: Option<TraceDoc>,
}

pub fn word(w: &Permutation) -> String {
    w.canonical_reduced_word().to_string()
}

pub fn polynomial_doc(p: &Polynomial) -> PolynomialDoc {
    let terms = p
        .terms()
        .map(|(m, c)| MonomialDoc {
            exp: m.exponents().to_vec(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect();
    PolynomialDoc { terms }
}

pub fn parse_polynomial(doc: &PolynomialDoc, n: usize) -> Result<Polynomial, CliError> {
    let int = |s: &str| {
        BigInt::from_str(s).map_err(|e| CliError::Usage(format!("bad integer {s:?}: {e}")))
    };
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in &doc.terms {
        let den = int(&t.den)?;
        if den == BigInt::from(0) {
            return Err(CliError::Usage("zero denominator".into()));
        }
        terms.push((t.exp.clone(), BigRational::new(int(&t.num)?, den)));
    }
    Ok(Polynomial::from_terms(n, terms)?)
}

/// The closed-rule trace for `u`, if `u` is special superior of degree at
/// most `m`.
pub fn trace_doc(
    k: usize,
    m: usize,
    w: &Permutation,
    u: &Permutation,
) -> Result<Option<TraceDoc>, CliError> {
    Ok(pieri_term(k, m, w, u)?.map(|t| TraceDoc {
        p: t.trace.degree,
        index_set: t.trace.index_set,
        lambda: t.trace.lambda,
        assoc: word(&t.trace.result),
    }))
}

pub fn expansion_doc(
    k: usize,
    m: usize,
    w: &Permutation,
    e: &SchubertExpansion,
) -> Result<ExpansionDoc, CliError> {
    let mut terms = Vec::with_capacity(e.len());
    for (u, p) in e.iter() {
        terms.push(TermDoc {
            u: word(u),
            one_line: u.one_line(),
            coeff: polynomial_doc(p),
            trace: trace_doc(k, m, w, u)?,
        });
    }
    Ok(ExpansionDoc {
        n: w.rank(),
        c: [k, m],
        w: word(w),
        terms,
    })
}

/// Rebuilds the expansion from its JSON form. The one-line notation is
/// authoritative; the word is checked against it.
pub fn parse_expansion(text: &str) -> Result<SchubertExpansion, CliError> {
    let doc: ExpansionDoc = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("bad expansion json: {e}")))?;
    let mut out = SchubertExpansion::new(doc.n);
    for t in &doc.terms {
        let u = Permutation::new(t.one_line.clone())?;
        if Permutation::parse(&t.u, doc.n)? != u {
            return Err(CliError::Usage(format!(
                "word {} does not match {:?}",
                t.u, t.one_line
            )));
        }
        out.add_term(&u, &parse_polynomial(&t.coeff, doc.n)?);
    }
    Ok(out)
}
