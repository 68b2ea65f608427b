//! Trace polynomials for words in the free group of rank 2.
//!
//! Every trace function on F₂ is a polynomial in x₁ = tr a, x₂ = tr b and
//! x₃ = tr ab. The rewriting works on cyclically reduced words, normalized
//! to their least rotation, with two rules:
//!
//! 1. a word with an inverse letter is rotated to `X g⁻¹`, and
//!    tr(X g⁻¹) = tr X · tr g − tr(X g);
//! 2. a positive word whose highest repeated generator is `g` is rotated to
//!    `g U g V`, and tr(gUgV) = tr(gU) · tr(gV) − tr(U V⁻¹).
//!
//! Every recursive call strictly decreases (length, number of inverse
//! letters) in lexicographic order, so the recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CharError, Triple, Word};
use crate::numfield::{format_rational, parse_rational, FieldElem, Rational};

/// A polynomial in x₁, x₂, x₃ with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TracePolynomial {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl TracePolynomial {
    pub fn zero() -> TracePolynomial {
        TracePolynomial::default()
    }

    pub fn constant(c: Rational) -> TracePolynomial {
        TracePolynomial::monomial(c, [0, 0, 0])
    }

    pub fn from_int(c: i64) -> TracePolynomial {
        TracePolynomial::constant(Rational::from_integer(c.into()))
    }

    /// The coordinate xₖ, k ∈ {1, 2, 3}.
    pub fn var(k: usize) -> TracePolynomial {
        let mut e = [0; 3];
        e[k - 1] = 1;
        TracePolynomial::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exponents: [u32; 3]) -> TracePolynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        TracePolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Terms in canonical order: total degree descending, then exponent
    /// vectors descending lexicographically.
    pub fn terms(&self) -> Vec<([u32; 3], &Rational)> {
        let mut out: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        out.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d);
            }
        }
        out
    }

    pub fn eval(&self, x: &[FieldElem; 3]) -> FieldElem {
        let powers: Vec<Vec<FieldElem>> = (0..3)
            .map(|k| {
                let top = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
                let mut p = vec![FieldElem::one()];
                for _ in 0..top {
                    let next = p.last().unwrap() * &x[k];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut total = FieldElem::zero();
        for (e, c) in &self.terms {
            let mut term = FieldElem::from_rational(c.clone());
            for k in 0..3 {
                if e[k] > 0 {
                    term *= &powers[k][e[k] as usize];
                }
            }
            total += &term;
        }
        total
    }

    pub fn eval_triple(&self, t: &Triple) -> FieldElem {
        self.eval(t.coords())
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| match e[i] {
                    1 => format!("x{}", i + 1),
                    p => format!("x{}^{p}", i + 1),
                })
                .collect();
            let coef = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if vars.is_empty() {
                f.write_str(&coef)?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{coef}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracePolynomial({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coefficient: String,
    exponents: [u32; 3],
}

impl Serialize for TracePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .into_iter()
            .map(|(exponents, c)| TermJson {
                coefficient: format_rational(c),
                exponents,
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TracePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = TracePolynomial::zero();
        for t in raw {
            let c = parse_rational(&t.coefficient).map_err(serde::de::Error::custom)?;
            out.add_term(t.exponents, c);
        }
        Ok(out)
    }
}

/// The polynomial P with P(tr A, tr B, tr AB) = tr w(A, B) for all A, B in SL₂.
pub fn skein_polynomial(w: &Word) -> Result<TracePolynomial, CharError> {
    SkeinEngine::new().polynomial(w)
}

/// Trace-polynomial rewriting with a cache shared across words.
#[derive(Debug, Default)]
pub struct SkeinEngine {
    memo: HashMap<Word, TracePolynomial>,
}

impl SkeinEngine {
    pub fn new() -> SkeinEngine {
        SkeinEngine::default()
    }

    pub fn polynomial(&mut self, w: &Word) -> Result<TracePolynomial, CharError> {
        if let Some(l) = w.letters().iter().find(|l| l.generator > 2) {
            return Err(CharError::IndexOutOfRange {
                index: l.generator,
                rank: 2,
            });
        }
        Ok(self.trace_poly(w))
    }

    fn trace_poly(&mut self, w: &Word) -> TracePolynomial {
        let w = w.cyclically_reduced().min_rotation();
        if let Some(p) = self.memo.get(&w) {
            return p.clone();
        }
        let letters = w.letters();
        let result = if letters.is_empty() {
            TracePolynomial::from_int(2)
        } else if let Some(k) = letters.iter().position(|l| l.inverse) {
            let rotated = w.rotated(k + 1);
            let (last, x) = rotated.letters().split_last().expect("nonempty");
            let g = last.inv();
            let x = Word::from_letters(x.iter().copied());
            let xg = Word::from_letters(x.letters().iter().copied().chain([g]));
            let tr_g = TracePolynomial::var(g.generator);
            self.trace_poly(&x).mul(&tr_g).sub(&self.trace_poly(&xg))
        } else if letters.len() == 1 {
            TracePolynomial::var(letters[0].generator)
        } else if letters.len() == 2 && letters[0] != letters[1] {
            TracePolynomial::var(3)
        } else {
            self.split_positive(&w)
        };
        self.memo.insert(w, result.clone());
        result
    }

    /// tr(gUgV) = tr(gU) tr(gV) − tr(UV⁻¹) at the highest repeated generator g.
    fn split_positive(&mut self, w: &Word) -> TracePolynomial {
        let letters = w.letters();
        let g = letters
            .iter()
            .filter(|l| letters.iter().filter(|m| m == l).count() >= 2)
            .map(|l| l.generator)
            .max()
            .expect("positive word of length ≥ 2 other than ab repeats a generator");
        let first = letters.iter().position(|l| l.generator == g).unwrap();
        let rotated = w.rotated(first);
        let r = rotated.letters();
        let second = 1 + r[1..].iter().position(|l| l.generator == g).unwrap();
        let u = Word::from_letters(r[1..second].iter().copied());
        let v = Word::from_letters(r[second + 1..].iter().copied());
        let gw = Word::generator(g);
        let gu = gw.concat(&u);
        let gv = gw.concat(&v);
        let uv = u.concat(&v.inverse());
        self.trace_poly(&gu)
            .mul(&self.trace_poly(&gv))
            .sub(&self.trace_poly(&uv))
    }
}
