//! Fixed-seed self-checks: trace identities, the finite β-orbits, and the
//! invariance of κ under the twist maps.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::charvariety::{
    f3_residuals, fricke_commutator_trace, vogt_residual, Letter, Representation, SkeinEngine,
    Triple, Word,
};
use crate::mcgdyn::{verify_dm_with, DmReport, TripleTransform, DEFAULT_ORBIT_CAP};
use crate::numfield::FieldElem;
use crate::random::{random_sl2, random_sl2_integer, random_triple, seeded_rng, DEFAULT_SEED};
use crate::sl2core::Mat2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Dm,
    Invariants,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Identities, Suite::Dm, Suite::Invariants];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Dm => "dm",
            Suite::Invariants => "invariants",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| format!("unknown suite '{s}' (expected identities, dm or invariants)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random SL₂ tuples per identity.
    pub identity_samples: usize,
    /// Longest rank-2 word compared against the matrix oracle.
    pub skein_max_len: usize,
    /// Random triples for the invariance checks.
    pub triple_samples: usize,
    pub cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: DEFAULT_SEED,
            identity_samples: 500,
            skein_max_len: 8,
            triple_samples: 1000,
            cap: DEFAULT_ORBIT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    pub passed: bool,
    /// Description of the first failing sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(
        name: impl Into<String>,
        samples: usize,
        failures: usize,
        witness: Option<String>,
    ) -> Check {
        Check {
            name: name.into(),
            samples,
            failures,
            passed: failures == 0,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dm: Option<DmReport>,
    pub passed: bool,
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> VerifyReport {
    let (checks, dm) = match suite {
        Suite::Identities => (identity_checks(config), None),
        Suite::Dm => {
            let report = verify_dm_with(config.cap, config.seed, config.triple_samples);
            (dm_checks(&report), Some(report))
        }
        Suite::Invariants => (invariant_checks(config), None),
    };
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        suite,
        seed: config.seed,
        checks,
        dm,
        passed,
    }
}

/// Counts failures of `f` over the samples and remembers the first one.
fn tally<T>(name: &str, samples: &[T], mut f: impl FnMut(&T) -> Option<String>) -> Check {
    let mut failures = 0;
    let mut witness = None;
    for s in samples {
        if let Some(w) = f(s) {
            failures += 1;
            witness.get_or_insert(w);
        }
    }
    Check::new(name, samples.len(), failures, witness)
}

fn describe(images: &[Mat2]) -> String {
    serde_json::to_string(images).unwrap_or_default()
}

fn identity_checks(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = seeded_rng(config.seed);
    let tuples: Vec<Vec<Mat2>> = (0..config.identity_samples)
        .map(|_| (0..4).map(|_| random_sl2(&mut rng)).collect())
        .collect();
    let g = |k| Word::generator(k);

    let vogt = tally("vogt-residual", &tuples, |m| {
        let rep = Representation::free(m.clone()).ok()?;
        let r = vogt_residual(&rep, &g(1), &g(2), &g(3), &g(4)).ok()?;
        (!r.is_zero()).then(|| describe(m))
    });
    let f3 = tally("f3-residuals", &tuples, |m| {
        let rep = Representation::free(m[..3].to_vec()).ok()?;
        let (lin, quad) = f3_residuals(&rep, &g(1), &g(2), &g(3)).ok()?;
        (!(lin.is_zero() && quad.is_zero())).then(|| describe(&m[..3]))
    });
    let fricke = tally("fricke-commutator", &tuples, |m| {
        let t = Triple::of_pair(&m[0], &m[1]);
        (m[0].commutator(&m[1]).trace() != fricke_commutator_trace(&t)).then(|| describe(&m[..2]))
    });

    // One generic pair and one integral pair as oracles for the skein rewrite.
    let pairs = [
        (random_sl2(&mut rng), random_sl2(&mut rng)),
        (random_sl2_integer(&mut rng), random_sl2_integer(&mut rng)),
    ];
    let (words, oracle) = words_with_traces(&pairs, config.skein_max_len);
    let cases: Vec<(Word, Vec<FieldElem>)> = words.into_iter().zip(oracle).collect();
    let triples: Vec<Triple> = pairs.iter().map(|(a, b)| Triple::of_pair(a, b)).collect();
    let mut engine = SkeinEngine::new();
    let skein = tally("skein-vs-matrix", &cases, |(w, traces)| {
        let p = match engine.polynomial(w) {
            Ok(p) => p,
            Err(e) => return Some(format!("{w}: {e}")),
        };
        triples
            .iter()
            .zip(traces)
            .any(|(t, tr)| p.eval_triple(t) != *tr)
            .then(|| format!("{w}: {p}"))
    });
    vec![vogt, f3, fricke, skein]
}

/// Reduced rank-2 words of length ≤ `max_len` with their traces under each
/// pair, one matrix product per word along the prefix tree.
fn words_with_traces(pairs: &[(Mat2, Mat2)], max_len: usize) -> (Vec<Word>, Vec<Vec<FieldElem>>) {
    let steps: Vec<(Letter, Vec<Mat2>)> = [(1, 1), (1, -1), (2, 1), (2, -1)]
        .into_iter()
        .map(|(g, e)| {
            let mats = pairs
                .iter()
                .map(|(a, b)| {
                    let m = if g == 1 { a } else { b };
                    if e < 0 {
                        m.inverse()
                    } else {
                        m.clone()
                    }
                })
                .collect();
            (Letter::new(g, e), mats)
        })
        .collect();
    let root = (Vec::<Letter>::new(), vec![Mat2::identity(); pairs.len()]);
    let mut words = vec![Word::empty()];
    let mut traces = vec![root.1.iter().map(Mat2::trace).collect()];
    let mut frontier = vec![root];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, mats) in &frontier {
            for (l, step) in &steps {
                if w.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(*l);
                let prod: Vec<Mat2> = mats.iter().zip(step).map(|(m, s)| m * s).collect();
                words.push(Word::from_letters(v.iter().copied()));
                traces.push(prod.iter().map(Mat2::trace).collect());
                next.push((v, prod));
            }
        }
        frontier = next;
    }
    (words, traces)
}

/// All freely reduced words of length ≤ `max_len` in `rank` generators.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=rank)
        .flat_map(|g| [Letter::new(g, 1), Letter::new(g, -1)])
        .collect();
    let mut out = vec![Vec::<Letter>::new()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(Word::from_letters).collect()
}

fn dm_checks(report: &DmReport) -> Vec<Check> {
    let mut checks: Vec<Check> = report
        .orbits
        .iter()
        .map(|o| {
            let witness = if o.passed() {
                None
            } else {
                Some(match &o.witness {
                    Some(w) => format!("non-admissible element {w}"),
                    None => format!("{:?} orbit of size {}", o.status, o.size),
                })
            };
            Check::new(
                format!("finite-orbit {}", o.seed),
                1,
                usize::from(!o.passed()),
                witness,
            )
        })
        .collect();
    for c in &report.compositions {
        checks.push(Check::new(
            format!("factorization {}", c.transform),
            c.samples,
            usize::from(c.witness.is_some()),
            c.witness.as_ref().map(Triple::to_string),
        ));
    }
    checks
}

fn invariant_checks(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = seeded_rng(config.seed);
    let triples: Vec<Triple> = (0..config.triple_samples)
        .map(|_| random_triple(&mut rng))
        .collect();
    let mut checks = Vec::new();
    for t in TripleTransform::ALL {
        checks.push(tally(&format!("kappa-invariant {t}"), &triples, |x| {
            (t.apply(x).kappa() != x.kappa()).then(|| x.to_string())
        }));
    }
    for t in TripleTransform::ALL {
        let inv = t.inverse();
        checks.push(tally(&format!("inverse {t}"), &triples, |x| {
            let there = inv.apply(&t.apply(x));
            let back = t.apply(&inv.apply(x));
            (there != *x || back != *x).then(|| x.to_string())
        }));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        // 1 + 4 + 12 + 36
        assert_eq!(reduced_words(2, 3).len(), 53);
    }

    #[test]
    fn small_suites_pass() {
        let config = VerifyConfig {
            identity_samples: 20,
            skein_max_len: 4,
            triple_samples: 20,
            cap: 1000,
            ..VerifyConfig::default()
        };
        for s in Suite::ALL {
            let r = run_suite(s, &config);
            assert!(r.passed, "{s}: {:?}", r.checks);
        }
    }
}
