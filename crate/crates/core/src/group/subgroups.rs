use std::collections::BTreeSet;
use std::sync::Arc;

use super::finite::FiniteGroup;
use crate::error::{check_guard, Result};

/// Default bound on `|G|` for subgroup classification.
pub const DEFAULT_SUBGROUP_GUARD: usize = 300;

/// A conjugacy class of subgroups with its canonical representative: the
/// lexicographically least sorted index set among all conjugates.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub members: Vec<u32>,
    pub representative: Arc<FiniteGroup>,
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Canonical (lex-least) conjugate of a subgroup and the number of conjugates.
pub fn canonical_conjugate(g: &FiniteGroup, members: &[u32]) -> (Vec<u32>, usize) {
    let mut conjugates = BTreeSet::new();
    for x in 0..g.order() {
        conjugates.insert(g.conjugate_set(x, members));
    }
    let n = conjugates.len();
    (conjugates.into_iter().next().expect("nonempty"), n)
}

/// All subgroups up to conjugacy, by cyclic extension: every subgroup
/// `⟨M, x⟩` with `M` a known class representative and `x ∈ G`, deduplicated
/// by canonical conjugate. Sorted by (order, representative).
pub fn subgroup_classes(g: &FiniteGroup) -> Result<Vec<SubgroupClass>> {
    subgroup_classes_with_guard(g, DEFAULT_SUBGROUP_GUARD)
}

pub fn subgroup_classes_with_guard(g: &FiniteGroup, guard: usize) -> Result<Vec<SubgroupClass>> {
    check_guard("group order", g.order(), guard)?;
    let mut found: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    let mut sizes = std::collections::HashMap::new();
    found.insert((1, vec![0]));
    sizes.insert(vec![0u32], 1usize);
    let mut frontier = vec![vec![0u32]];
    while let Some(m) = frontier.pop() {
        let mut seen_here = BTreeSet::new();
        for x in 0..g.order() as u32 {
            if m.binary_search(&x).is_ok() {
                continue;
            }
            let k = g.closure_from(&m, &[x]);
            if !seen_here.insert(k.clone()) {
                continue;
            }
            let (canon, size) = canonical_conjugate(g, &k);
            if found.insert((canon.len(), canon.clone())) {
                sizes.insert(canon.clone(), size);
                frontier.push(canon);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, members)| SubgroupClass {
            representative: g.subgroup(&members),
            class_size: sizes[&members],
            members,
        })
        .collect())
}

/// The class (index into `classes`) containing the subgroup `members`.
pub fn find_class(g: &FiniteGroup, classes: &[SubgroupClass], members: &[u32]) -> Option<usize> {
    let (canon, _) = canonical_conjugate(g, members);
    classes.iter().position(|c| c.members == canon)
}
