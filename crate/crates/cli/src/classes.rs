//! Isogeny classes of the input and the isogenies connecting their members.

use crate::ingest::CurveRecord;
use ecsym_core::{galois, isogeny, RationalEC};
use std::collections::BTreeMap;

/// Degrees searched for when no isogeny matrix is supplied.
pub const DETECTED_DEGREES: [u64; 3] = [2, 3, 7];

/// A cyclic isogeny between two members of a class (indices into the input records).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsogenyEdge {
    pub a: usize,
    pub b: usize,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyClass {
    pub id: String,
    /// Record indices, in input order; the first is the class representative.
    pub members: Vec<usize>,
    pub edges: Vec<IsogenyEdge>,
    /// Edges taken from the supplied degree matrix rather than detected.
    pub from_matrix: bool,
}

impl IsogenyClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    /// Whether the edges connect every member.
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.members.len());
        let pos: BTreeMap<usize, usize> = self.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for e in &self.edges {
            uf.union(pos[&e.a], pos[&e.b]);
        }
        (1..self.members.len()).all(|i| uf.find(i) == uf.find(0))
    }
}

/// Group records by class, keeping input order.
pub fn group_classes(records: &[CurveRecord]) -> Vec<IsogenyClass> {
    let mut by_id: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let id = r.class_id();
        by_id.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            Vec::new()
        });
        by_id.get_mut(&id).unwrap().push(i);
    }
    order
        .into_iter()
        .map(|id| {
            let members = by_id.remove(&id).unwrap();
            IsogenyClass {
                id,
                members,
                edges: Vec::new(),
                from_matrix: false,
            }
        })
        .collect()
}

/// Fill in the edges of a class, from the degree matrix when every member carries a row, else by
/// searching for isogenies of degree 2, 3 and 7 between members.
pub fn connect(class: &mut IsogenyClass, records: &[CurveRecord]) {
    let rows: Option<Vec<&Vec<u64>>> = class.members.iter().map(|&m| records[m].isogeny_row.as_ref()).collect();
    let n = class.members.len();
    if let Some(rows) = rows.filter(|rs| rs.iter().all(|r| r.len() == n)) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| records[class.members[i]].class_index);
        class.edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| IsogenyEdge {
                a: class.members[order[i]],
                b: class.members[order[j]],
                degree: rows[order[i]][j],
            })
            .filter(|e| e.degree > 1)
            .collect();
        class.edges.sort();
        class.from_matrix = true;
        return;
    }
    let minimal: Vec<RationalEC> = class.members.iter().map(|&m| records[m].curve.minimal_model()).collect();
    let mut edges = Vec::new();
    for (i, e) in minimal.iter().enumerate() {
        for l in DETECTED_DEGREES {
            if l == 7 && galois::has_rational_7_isogeny(e).is_none() {
                continue;
            }
            for (_, target) in isogeny::isogenous_curves(e, l) {
                if let Some(j) = minimal.iter().position(|c| *c == target) {
                    if i < j {
                        edges.push(IsogenyEdge {
                            a: class.members[i],
                            b: class.members[j],
                            degree: l,
                        });
                    }
                }
            }
        }
    }
    edges.sort();
    edges.dedup();
    class.edges = edges;
    class.from_matrix = false;
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            c = std::mem::replace(&mut self.parent[c], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = rb.min(ra);
        }
    }
}
