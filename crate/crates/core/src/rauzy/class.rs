use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{rauzy_permutation, RauzyError, StepType};
use crate::iet::Permutation;

/// A Rauzy class: the closure of a permutation under both step types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RauzyClass {
    /// Members in breadth-first discovery order.
    pub members: Vec<Permutation>,
    /// `(source, step type) -> target`.
    pub edges: BTreeMap<(Permutation, StepType), Permutation>,
}

impl RauzyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }
}

pub fn rauzy_class(perm: &Permutation) -> Result<RauzyClass, RauzyError> {
    if !perm.is_irreducible() {
        return Err(RauzyError::InvalidPermutation(perm.to_string()));
    }
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    let mut edges = BTreeMap::new();
    let mut queue = VecDeque::from([perm.clone()]);
    seen.insert(perm.clone());
    while let Some(p) = queue.pop_front() {
        for t in StepType::BOTH {
            let q = rauzy_permutation(&p, t);
            debug_assert!(q.is_irreducible());
            edges.insert((p.clone(), t), q.clone());
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
        members.push(p);
    }
    Ok(RauzyClass { members, edges })
}
