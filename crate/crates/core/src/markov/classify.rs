//! Transient / recurrent state classification.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::matrix::TransitionMatrix;

/// Partition of the state space: every state is either transient or belongs
/// to exactly one closed recurrent class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateClassification {
    pub transient: BTreeSet<usize>,
    /// Closed communicating classes, ordered by smallest member.
    pub recurrent_classes: Vec<BTreeSet<usize>>,
}

impl StateClassification {
    /// True when the whole chain is one communicating class.
    pub fn is_irreducible(&self) -> bool {
        self.transient.is_empty() && self.recurrent_classes.len() == 1
    }
}

/// Strongly-connected-component analysis of the nonzero-transition graph.
/// An SCC with no edge leaving it is a closed recurrent class; every other
/// state is transient.
pub(super) fn classify(p: &TransitionMatrix) -> StateClassification {
    let n = p.n();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for i in 0..n {
        for (j, &prob) in p.row(i).iter().enumerate() {
            if prob > 0.0 {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }

    let mut transient = BTreeSet::new();
    let mut recurrent_classes = Vec::new();
    for scc in tarjan_scc(&graph) {
        let members: BTreeSet<usize> = scc.iter().map(|ix| ix.index()).collect();
        let closed = scc.iter().all(|&ix| {
            graph
                .neighbors(ix)
                .all(|succ| members.contains(&succ.index()))
        });
        if closed {
            recurrent_classes.push(members);
        } else {
            transient.extend(members);
        }
    }
    recurrent_classes.sort_by_key(|c| *c.first().expect("SCCs are non-empty"));

    StateClassification {
        transient,
        recurrent_classes,
    }
}
