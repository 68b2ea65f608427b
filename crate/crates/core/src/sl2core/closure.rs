use std::collections::HashSet;

use serde::Serialize;

use super::Mat2;

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureStatus {
    Finite,
    CapExceeded,
}

/// Outcome of a group closure. When finite, `elements` is the whole group
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    /// Group order when finite; otherwise the number of elements found before stopping.
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Mat2>>,
}

impl ClosureResult {
    pub fn is_finite(&self) -> bool {
        self.status == ClosureStatus::Finite
    }
}

/// Breadth-first closure of the group generated by `generators`.
///
/// Returns `Finite` when the generated group has at most `cap` elements.
pub fn closure(generators: &[Mat2], cap: usize) -> ClosureResult {
    assert!(cap >= 1, "cap must be positive");
    let mut steps: Vec<Mat2> = Vec::new();
    for g in generators {
        for h in [g.clone(), g.inverse()] {
            if !h.is_identity() && !steps.contains(&h) {
                steps.push(h);
            }
        }
    }
    let mut seen: HashSet<Mat2> = HashSet::from([Mat2::identity()]);
    let mut frontier = vec![Mat2::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = x * s;
                if seen.contains(&y) {
                    continue;
                }
                seen.insert(y.clone());
                if seen.len() > cap {
                    return ClosureResult {
                        status: ClosureStatus::CapExceeded,
                        order: seen.len(),
                        elements: None,
                    };
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    let mut elements: Vec<Mat2> = seen.into_iter().collect();
    elements.sort();
    ClosureResult {
        status: ClosureStatus::Finite,
        order: elements.len(),
        elements: Some(elements),
    }
}
