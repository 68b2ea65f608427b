//! Surface bookkeeping: generator conventions, simple-loop words, special
//! dihedral representations and monodromy surveys.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::charvariety::{CharError, Letter, Representation, Word};
use crate::numfield::FieldElem;
use crate::sl2core::{is_torsion, Mat2, Sl2Error, TorsionStatus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("genus 0 surfaces are not supported")]
    GenusZero,
    #[error("expected {expected} puncture parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error(transparent)]
    Matrix(#[from] Sl2Error),
    #[error(transparent)]
    Representation(#[from] CharError),
    #[error("representation has {got} generator images, signature {sig} needs {expected}")]
    SignatureMismatch {
        sig: SurfaceSig,
        expected: usize,
        got: usize,
    },
}

/// Genus and number of punctures of an oriented surface, genus at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SurfaceSig {
    genus: usize,
    punctures: usize,
}

impl SurfaceSig {
    pub fn new(genus: usize, punctures: usize) -> Result<SurfaceSig, SurfaceError> {
        if genus == 0 {
            return Err(SurfaceError::GenusZero);
        }
        Ok(SurfaceSig { genus, punctures })
    }

    /// The once-punctured torus.
    pub fn one_one() -> SurfaceSig {
        SurfaceSig {
            genus: 1,
            punctures: 1,
        }
    }

    pub fn genus(self) -> usize {
        self.genus
    }

    pub fn punctures(self) -> usize {
        self.punctures
    }

    /// Length 2g + n of the optimal generator sequence.
    pub fn generator_count(self) -> usize {
        2 * self.genus + self.punctures
    }

    /// Number of independent images: 2g + n − 1 when punctured, 2g when closed.
    pub fn free_rank(self) -> usize {
        if self.punctures == 0 {
            2 * self.genus
        } else {
            2 * self.genus + self.punctures - 1
        }
    }

    pub fn generator_names(self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.generator_count());
        for k in 1..=self.genus {
            names.push(format!("a{k}"));
            names.push(format!("b{k}"));
        }
        for k in 1..=self.punctures {
            names.push(format!("c{k}"));
        }
        names
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.genus, self.punctures)
    }
}

impl std::str::FromStr for SurfaceSig {
    type Err = String;
    /// Parses `"g,n"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [g, n] = parts[..] else {
            return Err(format!("expected `g,n`, got `{s}`"));
        };
        let g: usize = g.parse().map_err(|_| format!("bad genus `{g}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad puncture count `{n}`"))?;
        SurfaceSig::new(g, n).map_err(|e| e.to_string())
    }
}

impl<'de> Deserialize<'de> for SurfaceSig {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            genus: usize,
            punctures: usize,
        }
        let raw = Raw::deserialize(deserializer)?;
        SurfaceSig::new(raw.genus, raw.punctures).map_err(serde::de::Error::custom)
    }
}

/// The sequence (a₁, b₁, …, a_g, b_g, c₁, …, c_n) with its relation
/// [a₁,d₁]⋯[a_g,d_g]c₁⋯c_n = 1, where d_i = b_i⁻¹.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalGenerators {
    pub signature: SurfaceSig,
    pub names: Vec<String>,
    /// The relation written with the d_i, e.g. `[a1,d1]c1`.
    pub relation: String,
    /// The relation as a word in the named generators.
    pub relation_word: Word,
}

pub fn optimal_generators(sig: SurfaceSig) -> OptimalGenerators {
    let mut relation = String::new();
    let mut letters = Vec::new();
    for k in 1..=sig.genus {
        relation.push_str(&format!("[a{k},d{k}]"));
        let a = Letter::new(2 * k - 1, 1);
        let d = Letter::new(2 * k, -1);
        letters.extend([a, d, a.inv(), d.inv()]);
    }
    for k in 1..=sig.punctures {
        relation.push_str(&format!("c{k}"));
        letters.push(Letter::new(2 * sig.genus + k, 1));
    }
    OptimalGenerators {
        signature: sig,
        names: sig.generator_names(),
        relation,
        relation_word: Word::from_letters(letters),
    }
}

/// One word per nonempty set of at most `max_factors` distinct generators,
/// multiplied in the order of the optimal sequence. Cyclic rotations of
/// such a product are conjugate, so each set contributes a single word.
pub fn cyclic_order_simple_words(sig: SurfaceSig, max_factors: usize) -> Vec<Word> {
    let m = sig.generator_count();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) {
        if mask.count_ones() as usize > max_factors {
            continue;
        }
        out.push(Word::from_pairs(
            (0..m).filter(|k| mask >> k & 1 == 1).map(|k| (k + 1, 1)),
        ));
    }
    out.sort();
    out
}

/// Number of words produced by [`cyclic_order_simple_words`].
pub fn cyclic_order_word_count(sig: SurfaceSig, max_factors: usize) -> usize {
    let m = sig.generator_count();
    let mut total = 0usize;
    let mut binom = 1usize;
    for k in 1..=max_factors.min(m) {
        binom = binom * (m + 1 - k) / k;
        total += binom;
    }
    total
}

/// The genus-one representation with ρ(a₁) = [[0,1],[−1,0]],
/// ρ(b₁) = diag(λ, λ⁻¹) and ρ(c_i) = diag(μ_i, μ_i⁻¹) for i ≤ n, on the
/// surface of signature (1, n + 1) (the last puncture is determined by
/// the relation and is diagonal as well).
pub fn special_dihedral_rep(
    n: usize,
    lambda: &FieldElem,
    mus: &[FieldElem],
) -> Result<Representation, SurfaceError> {
    if mus.len() != n {
        return Err(SurfaceError::ParameterCount {
            expected: n,
            got: mus.len(),
        });
    }
    let mut images = vec![Mat2::antidiag(&FieldElem::one())?, Mat2::diag(lambda)?];
    for mu in mus {
        images.push(Mat2::diag(mu)?);
    }
    let sig = SurfaceSig::new(1, n + 1)?;
    Ok(Representation::surface(sig, images)?)
}

/// The word automorphisms of F(a₁, b₁) realizing the Dehn twists along a₁
/// and b₁ and their inverses. Each fixes the boundary word [a₁, b₁⁻¹].
fn genus_one_twists() -> [[Word; 2]; 4] {
    let a = Word::generator(1);
    let b = Word::generator(2);
    let ai = a.inverse();
    let bi = b.inverse();
    [
        [a.clone(), a.concat(&b)],
        [a.clone(), ai.concat(&b)],
        [a.concat(&bi), b.clone()],
        [a.concat(&b), b.clone()],
    ]
}

fn substitute(w: &Word, images: &[Word; 2]) -> Word {
    let mut out = Word::empty();
    for l in w.letters() {
        let piece = match l.generator {
            1 | 2 => images[l.generator - 1].clone(),
            g => Word::generator(g),
        };
        out = out.concat(&if l.inverse { piece.inverse() } else { piece });
    }
    out
}

/// Least cyclic rotation of the cyclic reduction of `w` or of `w⁻¹`,
/// a normal form for unoriented free homotopy classes.
fn loop_normal_form(w: &Word) -> Word {
    let forward = w.cyclically_reduced().min_rotation();
    let backward = w.inverse().cyclically_reduced().min_rotation();
    forward.min(backward)
}

/// The cyclic-order family together with its images under up to
/// `twist_depth` genus-one twists (only for genus 1).
pub fn survey_words(sig: SurfaceSig, max_factors: usize, twist_depth: usize) -> Vec<Word> {
    let base = cyclic_order_simple_words(sig, max_factors);
    if sig.genus() != 1 || twist_depth == 0 {
        return base;
    }
    let twists = genus_one_twists();
    let mut seen: BTreeSet<Word> = base.iter().map(loop_normal_form).collect();
    let mut out = base.clone();
    let mut frontier = base;
    for _ in 0..twist_depth {
        let mut next = Vec::new();
        for w in &frontier {
            for t in &twists {
                let image = substitute(w, t);
                if seen.insert(loop_normal_form(&image)) {
                    out.push(image.clone());
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

/// Twist depth used by [`monodromy_survey`] in genus 1.
pub const DEFAULT_TWIST_DEPTH: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    pub word: String,
    pub trace: FieldElem,
    pub torsion: TorsionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub all_torsion: bool,
    /// Loops certified to have infinite order.
    pub non_torsion_witnesses: Vec<String>,
    /// Loops with no certificate and no order up to the bound.
    pub undetermined: Vec<String>,
    pub distinct_traces: usize,
    /// Least common multiple of the orders found, when every loop is torsion.
    pub order_lcm: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub signature: SurfaceSig,
    pub max_factors: usize,
    pub twist_depth: usize,
    pub k_max: u32,
    pub entries: Vec<SurveyEntry>,
    pub summary: SurveySummary,
}

impl SurveyReport {
    /// The distinct traces seen, in canonical order.
    pub fn trace_set(&self) -> BTreeSet<FieldElem> {
        self.entries.iter().map(|e| e.trace.clone()).collect()
    }
}

/// Records trace and torsion status along every loop of the survey family.
pub fn monodromy_survey(
    rep: &Representation,
    sig: SurfaceSig,
    max_factors: usize,
    k_max: u32,
) -> Result<SurveyReport, SurfaceError> {
    monodromy_survey_with_depth(rep, sig, max_factors, k_max, DEFAULT_TWIST_DEPTH)
}

pub fn monodromy_survey_with_depth(
    rep: &Representation,
    sig: SurfaceSig,
    max_factors: usize,
    k_max: u32,
    twist_depth: usize,
) -> Result<SurveyReport, SurfaceError> {
    let got = rep.generator_images().len();
    if got != sig.generator_count() || rep.signature().is_some_and(|s| s != sig) {
        return Err(SurfaceError::SignatureMismatch {
            sig,
            expected: sig.generator_count(),
            got,
        });
    }
    let names = sig.generator_names();
    let mut entries = Vec::new();
    let mut traces = BTreeMap::new();
    for w in survey_words(sig, max_factors, twist_depth) {
        let m = rep.evaluate(&w)?;
        let trace = m.trace();
        traces.insert(trace.clone(), ());
        entries.push(SurveyEntry {
            word: w.display_with(&names),
            trace,
            torsion: is_torsion(&m, k_max),
        });
    }
    let witnesses = |pred: fn(&TorsionStatus) -> bool| -> Vec<String> {
        entries
            .iter()
            .filter(|e| pred(&e.torsion))
            .map(|e| e.word.clone())
            .collect()
    };
    let non_torsion_witnesses = witnesses(|t| matches!(t, TorsionStatus::NeverTorsion { .. }));
    let undetermined = witnesses(|t| matches!(t, TorsionStatus::NotTorsionUpTo { .. }));
    let all_torsion = entries.iter().all(|e| e.torsion.is_torsion());
    let order_lcm = all_torsion.then(|| {
        entries
            .iter()
            .filter_map(|e| e.torsion.order())
            .fold(1u64, |acc, k| num_integer::lcm(acc, u64::from(k)))
    });
    Ok(SurveyReport {
        signature: sig,
        max_factors,
        twist_depth,
        k_max,
        summary: SurveySummary {
            all_torsion,
            non_torsion_witnesses,
            undetermined,
            distinct_traces: traces.len(),
            order_lcm,
        },
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvariety::Triple;

    fn sig(g: usize, n: usize) -> SurfaceSig {
        SurfaceSig::new(g, n).unwrap()
    }

    #[test]
    fn optimal_sequences() {
        let o = optimal_generators(sig(1, 1));
        assert_eq!(o.names, ["a1", "b1", "c1"]);
        assert_eq!(o.relation, "[a1,d1]c1");
        assert_eq!(
            o.relation_word.display_with(&o.names),
            "a1 b1^-1 a1^-1 b1 c1"
        );
        assert_eq!(optimal_generators(sig(2, 1)).names.len(), 5);
        let closed = optimal_generators(sig(1, 0));
        assert_eq!(closed.names, ["a1", "b1"]);
        assert_eq!(closed.relation, "[a1,d1]");
        assert_eq!(SurfaceSig::new(0, 3), Err(SurfaceError::GenusZero));
    }

    #[test]
    fn simple_word_enumeration() {
        let names = sig(1, 0).generator_names();
        let words: Vec<String> = cyclic_order_simple_words(sig(1, 0), 2)
            .iter()
            .map(|w| w.display_with(&names))
            .collect();
        assert_eq!(words, ["a1", "a1 b1", "b1"]);

        let s = sig(2, 1);
        let names = s.generator_names();
        let words: Vec<String> = cyclic_order_simple_words(s, 2)
            .iter()
            .map(|w| w.display_with(&names))
            .collect();
        assert!(words.contains(&"a1 b2".to_string()));
        assert_eq!(words.len(), cyclic_order_word_count(s, 2));
        assert_eq!(cyclic_order_word_count(sig(1, 1), 3), 7);
        assert_eq!(cyclic_order_simple_words(sig(1, 1), 3).len(), 7);
    }

    #[test]
    fn special_dihedral_examples() {
        let rep = special_dihedral_rep(0, &FieldElem::i(), &[]).unwrap();
        assert_eq!(rep.fricke_triple().unwrap(), Triple::from_ints(0, 0, 0));
        let rep = special_dihedral_rep(0, &FieldElem::from_int(3), &[]).unwrap();
        assert_eq!(
            rep.fricke_triple().unwrap(),
            Triple::new(0.into(), FieldElem::frac(10, 3), 0.into())
        );
        let rep = special_dihedral_rep(1, &FieldElem::phi(), &[FieldElem::phi()]).unwrap();
        assert!(rep
            .generator_images()
            .iter()
            .all(|m| m.is_diagonal() || m.is_antidiagonal()));
        assert!(special_dihedral_rep(0, &FieldElem::zero(), &[]).is_err());
        assert!(special_dihedral_rep(2, &FieldElem::one(), &[FieldElem::one()]).is_err());
    }

    #[test]
    fn twists_fix_the_boundary() {
        let boundary: Word = "a b^-1 a^-1 b".parse().unwrap();
        for t in genus_one_twists() {
            assert_eq!(substitute(&boundary, &t), boundary);
        }
    }

    #[test]
    fn surveys() {
        let s = SurfaceSig::one_one();
        let id = Representation::surface(s, vec![Mat2::identity(), Mat2::identity()]).unwrap();
        let r = monodromy_survey(&id, s, 3, 120).unwrap();
        assert!(r.summary.all_torsion);
        assert_eq!(r.summary.order_lcm, Some(1));

        let rep = special_dihedral_rep(0, &FieldElem::from_int(3), &[]).unwrap();
        let r = monodromy_survey(&rep, s, 3, 120).unwrap();
        assert!(!r.summary.all_torsion);
        assert!(r.summary.non_torsion_witnesses.contains(&"b1".to_string()));

        assert!(monodromy_survey(&rep, sig(2, 1), 2, 120).is_err());
    }
}
