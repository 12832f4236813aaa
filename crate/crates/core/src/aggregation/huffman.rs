use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::{check_m, Aggregation};
use crate::dist::{compensated_sum, ProbDist};
use crate::error::Result;

/// One Huffman step: the atoms represented by original indices `first` and
/// `second` were merged into an atom of mass `merged`. A merged atom is
/// represented by the smallest original index in its block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergeStep {
    pub first: usize,
    pub second: usize,
    pub merged: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuffmanTrace {
    pub merge_steps: Vec<MergeStep>,
    /// Number of leading output atoms that are untouched source atoms.
    pub i_q: usize,
    /// Mass of the output atoms after the first `i_q`.
    pub tail_mass: f64,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    mass: f64,
    rep: usize,
}

// Max-heap order: the smallest mass is the greatest element; among equal
// masses the largest representative index wins.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .mass
            .total_cmp(&self.mass)
            .then(self.rep.cmp(&other.rep))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union keeping the smaller index as root, so a root is always the
    /// minimum of its set.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        lo
    }
}

/// Run exactly `n - m` Huffman steps on `p`, each merging the two smallest
/// current atoms. Ties go to the atoms with the largest representative
/// indices.
pub fn huffman_aggregate(p: &ProbDist, m: usize) -> Result<(Aggregation, HuffmanTrace)> {
    check_m(p, m)?;
    let n = p.len();
    let mut heap: BinaryHeap<Node> = p
        .probs()
        .iter()
        .enumerate()
        .map(|(rep, &mass)| Node { mass, rep })
        .collect();
    let mut sets = DisjointSets::new(n);
    let mut merge_steps = Vec::with_capacity(n - m);

    for _ in 0..n - m {
        let x = heap.pop().expect("heap holds more than m atoms");
        let y = heap.pop().expect("heap holds more than m atoms");
        let rep = sets.union(x.rep, y.rep);
        let merged = x.mass + y.mass;
        merge_steps.push(MergeStep {
            first: x.rep,
            second: y.rep,
            merged,
        });
        heap.push(Node { mass: merged, rep });
    }

    let mut labels = vec![0; n];
    for (i, label) in labels.iter_mut().enumerate() {
        *label = sets.find(i);
    }
    let agg = Aggregation::from_labels(p, &labels)?;

    let i_q = agg
        .blocks()
        .iter()
        .enumerate()
        .take_while(|(j, b)| b.len() == 1 && b[0] == *j)
        .count();
    let tail_mass = compensated_sum(agg.dist().probs()[i_q..].iter().copied());

    Ok((
        agg,
        HuffmanTrace {
            merge_steps,
            i_q,
            tail_mass,
        },
    ))
}
