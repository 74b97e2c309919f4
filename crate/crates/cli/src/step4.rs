//! Splitting a congruence set into symplectic blocks by sign propagation.

use ecsym_core::twist::{SymplecticType, TypeValue};
use std::collections::VecDeque;
use thiserror::Error;

/// A decided relation between two nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypedEdge {
    pub a: usize,
    pub b: usize,
    pub kind: SymplecticType,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Step4Error {
    #[error("edge {a}-{b} closes a cycle with an odd number of antisymplectic links")]
    OddCycle { a: usize, b: usize },
    #[error("edge {a}-{b} carries an indefinite type ({value})")]
    Indefinite { a: usize, b: usize, value: TypeValue },
    #[error("edge {a}-{b} refers to a node outside 0..{n}")]
    OutOfRange { a: usize, b: usize, n: usize },
}

/// Node colouring: `component[i]` numbers the connected piece containing `i` (0 contains node 0)
/// and `side[i]` is the parity relative to that piece's first node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub component: Vec<usize>,
    pub side: Vec<bool>,
}

impl Coloring {
    pub fn components(&self) -> usize {
        self.component.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Nodes of one component, split by side; the side holding the component's first node comes
    /// first and an empty second side is dropped.
    pub fn blocks(&self, component: usize) -> Vec<Vec<usize>> {
        let nodes: Vec<usize> = (0..self.side.len()).filter(|&i| self.component[i] == component).collect();
        let Some(&first) = nodes.first() else {
            return Vec::new();
        };
        let s0 = self.side[first];
        let (same, other): (Vec<usize>, Vec<usize>) = nodes.into_iter().partition(|&i| self.side[i] == s0);
        if other.is_empty() {
            vec![same]
        } else {
            vec![same, other]
        }
    }

    /// Type between two nodes of the same component.
    pub fn relation(&self, a: usize, b: usize) -> Option<TypeValue> {
        (self.component[a] == self.component[b]).then(|| {
            if self.side[a] == self.side[b] {
                TypeValue::Symplectic
            } else {
                TypeValue::Antisymplectic
            }
        })
    }
}

/// Two-colour `n` nodes so that symplectic edges join equal sides and antisymplectic edges join
/// opposite sides. Undetermined edges are ignored.
pub fn step4_partition(n: usize, edges: &[TypedEdge]) -> Result<Coloring, Step4Error> {
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for e in edges {
        if e.a >= n || e.b >= n {
            return Err(Step4Error::OutOfRange { a: e.a, b: e.b, n });
        }
        let flip = match e.kind.value {
            TypeValue::Symplectic => false,
            TypeValue::Antisymplectic => true,
            TypeValue::Undetermined => continue,
            TypeValue::Both => {
                return Err(Step4Error::Indefinite {
                    a: e.a,
                    b: e.b,
                    value: e.kind.value,
                })
            }
        };
        adj[e.a].push((e.b, flip));
        adj[e.b].push((e.a, flip));
    }
    let mut component = vec![usize::MAX; n];
    let mut side = vec![false; n];
    let mut next = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, flip) in &adj[u] {
                let want = side[u] ^ flip;
                if component[v] == usize::MAX {
                    component[v] = next;
                    side[v] = want;
                    queue.push_back(v);
                } else if side[v] != want {
                    return Err(Step4Error::OddCycle { a: u, b: v });
                }
            }
        }
        next += 1;
    }
    Ok(Coloring { component, side })
}
