//! The mapping class group action on the character variety of the
//! once-punctured torus, in Fricke coordinates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::charvariety::{reducible_test, Triple};
use crate::numfield::FieldElem;
use crate::random::{random_triple, seeded_rng, DEFAULT_SEED};

pub const DEFAULT_ORBIT_CAP: usize = 100_000;

/// A polynomial automorphism of 𝔸³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleTransform {
    TwA,
    TwAInv,
    TwB,
    TwBInv,
    TwAb,
    TwAbInv,
    Sigma12,
    Sigma23,
    Sigma13,
    Beta1,
    Beta1Inv,
    Beta2,
    Beta2Inv,
}

use TripleTransform::*;

impl TripleTransform {
    pub const ALL: [TripleTransform; 13] = [
        TwA, TwAInv, TwB, TwBInv, TwAb, TwAbInv, Sigma12, Sigma23, Sigma13, Beta1, Beta1Inv, Beta2,
        Beta2Inv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwA => "tw_a",
            TwAInv => "tw_a^-1",
            TwB => "tw_b",
            TwBInv => "tw_b^-1",
            TwAb => "tw_ab",
            TwAbInv => "tw_ab^-1",
            Sigma12 => "sigma12",
            Sigma23 => "sigma23",
            Sigma13 => "sigma13",
            Beta1 => "beta1",
            Beta1Inv => "beta1^-1",
            Beta2 => "beta2",
            Beta2Inv => "beta2^-1",
        }
    }

    pub fn inverse(self) -> TripleTransform {
        match self {
            TwA => TwAInv,
            TwAInv => TwA,
            TwB => TwBInv,
            TwBInv => TwB,
            TwAb => TwAbInv,
            TwAbInv => TwAb,
            Sigma12 | Sigma23 | Sigma13 => self,
            Beta1 => Beta1Inv,
            Beta1Inv => Beta1,
            Beta2 => Beta2Inv,
            Beta2Inv => Beta2,
        }
    }

    pub fn apply(self, t: &Triple) -> Triple {
        let [x1, x2, x3] = t.coords();
        let prod = |a: &FieldElem, b: &FieldElem, c: &FieldElem| &(a * b) - c;
        match self {
            TwA => Triple::new(x1.clone(), x3.clone(), prod(x1, x3, x2)),
            TwAInv => Triple::new(x1.clone(), prod(x1, x2, x3), x2.clone()),
            TwB => Triple::new(prod(x1, x2, x3), x2.clone(), x1.clone()),
            TwBInv => Triple::new(x3.clone(), x2.clone(), prod(x2, x3, x1)),
            TwAb => Triple::new(x2.clone(), prod(x2, x3, x1), x3.clone()),
            TwAbInv => Triple::new(prod(x1, x3, x2), x1.clone(), x3.clone()),
            Sigma12 => Triple::new(-x1, -x2, x3.clone()),
            Sigma23 => Triple::new(x1.clone(), -x2, -x3),
            Sigma13 => Triple::new(-x1, x2.clone(), -x3),
            Beta1 => Triple::new(-x1, -prod(x1, x2, x3), x2.clone()),
            Beta1Inv => Triple::new(-x1, x3.clone(), -prod(x1, x3, x2)),
            Beta2 => Triple::new(x3.clone(), -x2, -prod(x2, x3, x1)),
            Beta2Inv => Triple::new(-prod(x1, x2, x3), -x2, x1.clone()),
        }
    }

    /// Applies `maps` right to left, so `[f, g]` is `f ∘ g`.
    pub fn compose(maps: &[TripleTransform], t: &Triple) -> Triple {
        maps.iter().rev().fold(t.clone(), |acc, m| m.apply(&acc))
    }

    /// The factorizations β₁ = σ₁₂ tw_ab (tw_b tw_a)⁻¹ and
    /// β₂ = σ₂₃ tw_a (tw_b tw_a)⁻¹, as right-to-left lists.
    pub fn beta_factorization(self) -> Option<[TripleTransform; 4]> {
        match self {
            Beta1 => Some([Sigma12, TwAb, TwAInv, TwBInv]),
            Beta2 => Some([Sigma23, TwA, TwAInv, TwBInv]),
            _ => None,
        }
    }
}

impl fmt::Display for TripleTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TripleTransform {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s
            .trim()
            .replace('σ', "sigma")
            .replace('β', "beta")
            .replace("⁻¹", "^-1")
            .replace("_inv", "^-1");
        TripleTransform::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| format!("unknown transform `{s}`"))
    }
}

impl Serialize for TripleTransform {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TripleTransform {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The named generating sets used for orbit computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratingSet {
    /// The three Dehn twists tw_a, tw_b, tw_ab.
    Twists,
    /// β₁ and β₂.
    Beta,
    /// The twists together with the sign changes σ₁₂, σ₂₃, σ₁₃.
    PiPrime,
}

impl GeneratingSet {
    pub fn transforms(self) -> Vec<TripleTransform> {
        match self {
            GeneratingSet::Twists => vec![TwA, TwB, TwAb],
            GeneratingSet::Beta => vec![Beta1, Beta2],
            GeneratingSet::PiPrime => vec![TwA, TwB, TwAb, Sigma12, Sigma23, Sigma13],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratingSet::Twists => "twists",
            GeneratingSet::Beta => "beta",
            GeneratingSet::PiPrime => "pi-prime",
        }
    }
}

impl FromStr for GeneratingSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "twists" => Ok(GeneratingSet::Twists),
            "beta" => Ok(GeneratingSet::Beta),
            "pi-prime" | "pi_prime" | "piprime" => Ok(GeneratingSet::PiPrime),
            other => Err(format!("unknown generating set `{other}`")),
        }
    }
}

impl fmt::Display for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitStatus {
    Finite,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub seed: Triple,
    pub status: OrbitStatus,
    /// Orbit size when finite; otherwise the number of triples found
    /// before stopping (cap + 1).
    pub size: usize,
    pub cap: usize,
    pub generating_set_used: Vec<TripleTransform>,
    /// The orbit in canonical order, present iff finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Vec<Triple>>,
}

impl OrbitResult {
    pub fn is_finite(&self) -> bool {
        self.status == OrbitStatus::Finite
    }

    /// Newline-delimited triples in canonical order, one JSON array per line.
    pub fn dump_lines(&self) -> String {
        let mut out = String::new();
        for t in self.orbit.iter().flatten() {
            out.push_str(&serde_json::to_string(t).expect("triples serialize"));
            out.push('\n');
        }
        out
    }
}

/// Closure of `{seed}` under `transforms` and their inverses.
///
/// Reports `Finite` with the whole orbit when it has at most `cap` elements.
pub fn orbit_bfs(seed: &Triple, transforms: &[TripleTransform], cap: usize) -> OrbitResult {
    assert!(cap >= 1, "cap must be positive");
    let mut steps: Vec<TripleTransform> = Vec::new();
    for t in transforms {
        for s in [*t, t.inverse()] {
            if !steps.contains(&s) {
                steps.push(s);
            }
        }
    }
    let mut used: Vec<TripleTransform> = transforms.to_vec();
    used.sort();
    used.dedup();

    let mut seen: HashSet<Triple> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];
    let mut exceeded = false;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = s.apply(x);
                if seen.contains(&y) {
                    continue;
                }
                seen.insert(y.clone());
                if seen.len() > cap {
                    exceeded = true;
                    break 'bfs;
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    let size = seen.len();
    let orbit = (!exceeded).then(|| {
        let mut v: Vec<Triple> = seen.into_iter().collect();
        v.sort();
        v
    });
    OrbitResult {
        seed: seed.clone(),
        status: if exceeded {
            OrbitStatus::CapExceeded
        } else {
            OrbitStatus::Finite
        },
        size,
        cap,
        generating_set_used: used,
        orbit,
    }
}

pub fn orbit_bfs_set(seed: &Triple, set: GeneratingSet, cap: usize) -> OrbitResult {
    orbit_bfs(seed, &set.transforms(), cap)
}

/// At most one zero coordinate, and off the reducible cubic.
pub fn is_admissible(x: &Triple) -> bool {
    x.zero_count() <= 1 && !reducible_test(x)
}

/// The five representatives of finite ⟨β₁, β₂⟩-orbits of admissible triples:
/// (0,−1,−1), (0,−1,−√2), (0,−1,−φ), (0,−1,−φ⁻¹), (0,−φ,−φ⁻¹).
pub fn dm_triples() -> [Triple; 5] {
    let zero = FieldElem::zero;
    let m1 = || FieldElem::from_int(-1);
    [
        Triple::new(zero(), m1(), m1()),
        Triple::new(zero(), m1(), -FieldElem::sqrt2()),
        Triple::new(zero(), m1(), -FieldElem::phi()),
        Triple::new(zero(), m1(), -FieldElem::phi_inv()),
        Triple::new(zero(), -FieldElem::phi(), -FieldElem::phi_inv()),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DmOrbitCheck {
    pub seed: Triple,
    pub admissible: bool,
    pub status: OrbitStatus,
    pub size: usize,
    pub all_admissible: bool,
    /// First orbit element that is not admissible, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Triple>,
}

impl DmOrbitCheck {
    pub fn passed(&self) -> bool {
        self.admissible && self.status == OrbitStatus::Finite && self.all_admissible
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionCheck {
    pub transform: TripleTransform,
    pub factorization: Vec<TripleTransform>,
    pub samples: usize,
    /// First sample where the map and its factorization disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DmReport {
    pub cap: usize,
    pub orbits: Vec<DmOrbitCheck>,
    pub compositions: Vec<CompositionCheck>,
    pub passed: bool,
}

/// Checks the five representatives (admissible, finite ⟨β₁, β₂⟩-orbit, every
/// orbit element admissible) and the factorizations of β₁, β₂ on
/// `samples` random triples.
pub fn verify_dm_with(cap: usize, seed: u64, samples: usize) -> DmReport {
    let orbits: Vec<DmOrbitCheck> = dm_triples()
        .iter()
        .map(|t| {
            let r = orbit_bfs_set(t, GeneratingSet::Beta, cap);
            let witness = r
                .orbit
                .iter()
                .flatten()
                .find(|x| !is_admissible(x))
                .cloned();
            DmOrbitCheck {
                seed: t.clone(),
                admissible: is_admissible(t),
                status: r.status,
                size: r.size,
                all_admissible: r.is_finite() && witness.is_none(),
                witness,
            }
        })
        .collect();
    let mut rng = seeded_rng(seed);
    let inputs: Vec<Triple> = (0..samples).map(|_| random_triple(&mut rng)).collect();
    let compositions: Vec<CompositionCheck> = [Beta1, Beta2]
        .into_iter()
        .map(|b| {
            let fact = b.beta_factorization().expect("β has a factorization");
            let witness = inputs
                .iter()
                .find(|x| b.apply(x) != TripleTransform::compose(&fact, x))
                .cloned();
            CompositionCheck {
                transform: b,
                factorization: fact.to_vec(),
                samples,
                witness,
            }
        })
        .collect();
    let passed =
        orbits.iter().all(DmOrbitCheck::passed) && compositions.iter().all(|c| c.witness.is_none());
    DmReport {
        cap,
        orbits,
        compositions,
        passed,
    }
}

pub fn verify_dm() -> DmReport {
    verify_dm_with(DEFAULT_ORBIT_CAP, DEFAULT_SEED, 100)
}

/// Structural facts about a triple together with its twist-orbit verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum TripleTag {
    Reducible,
    /// At least two zero coordinates and irreducible.
    TwoZerosDihedral,
    /// The Π′-orbit contains this representative of a finite ⟨β₁, β₂⟩-orbit.
    DmOrbit {
        representative: Triple,
    },
    OrbitFinite {
        size: usize,
    },
    OrbitExceedsCap {
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleClassification {
    pub triple: Triple,
    pub admissible: bool,
    pub tags: Vec<TripleTag>,
    /// The orbit under the three twists; its status is the finiteness verdict.
    pub orbit_status: OrbitStatus,
    pub orbit_size: usize,
}

impl TripleClassification {
    pub fn orbit_finite(&self) -> bool {
        self.orbit_status == OrbitStatus::Finite
    }

    pub fn has_tag(&self, pred: impl Fn(&TripleTag) -> bool) -> bool {
        self.tags.iter().any(pred)
    }
}

pub fn classify_triple(x: &Triple, cap: usize) -> TripleClassification {
    let mut tags = Vec::new();
    let reducible = reducible_test(x);
    if reducible {
        tags.push(TripleTag::Reducible);
    } else if x.zero_count() >= 2 {
        tags.push(TripleTag::TwoZerosDihedral);
    }
    let orbit = orbit_bfs_set(x, GeneratingSet::Twists, cap);
    if orbit.is_finite() {
        let wide = orbit_bfs_set(x, GeneratingSet::PiPrime, cap);
        let members: HashSet<&Triple> = wide.orbit.iter().flatten().collect();
        if let Some(r) = dm_triples().into_iter().find(|r| members.contains(r)) {
            tags.push(TripleTag::DmOrbit { representative: r });
        }
        tags.push(TripleTag::OrbitFinite { size: orbit.size });
    } else {
        tags.push(TripleTag::OrbitExceedsCap { cap });
    }
    TripleClassification {
        triple: x.clone(),
        admissible: is_admissible(x),
        tags,
        orbit_status: orbit.status,
        orbit_size: orbit.size,
    }
}
