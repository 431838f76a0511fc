//! Cayley graphs `Cay(G, S)`: vertices are group elements and `x ~ y`
//! iff `y x^-1` lies in the connection set `S`.
//!
//! Adjacency is computed from the multiplication table on demand; the
//! neighbourhood of `x` is the right translate `S x`. Connectedness is not
//! required.

use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};

/// An inverse-closed subset of `G \ {e}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    elems: ElementSet,
}

impl ConnectionSet {
    pub fn new(group: &GroupTable, elems: ElementSet) -> Result<Self> {
        group.check_set(&elems)?;
        if elems.contains(group.identity()) {
            return Err(Error::ContainsIdentity);
        }
        if let Some(x) = group.inverse_closure_violation(&elems) {
            return Err(Error::NotInverseClosed(group.name(x).to_string()));
        }
        Ok(ConnectionSet { elems })
    }

    pub fn empty(group: &GroupTable) -> Self {
        ConnectionSet {
            elems: group.empty_set(),
        }
    }

    pub fn elems(&self) -> &ElementSet {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn into_inner(self) -> ElementSet {
        self.elems
    }
}

/// Validates `elems` as a connection set of `group`.
pub fn make_connection_set(group: &GroupTable, elems: ElementSet) -> Result<ConnectionSet> {
    ConnectionSet::new(group, elems)
}

#[derive(Debug, Clone)]
pub struct CayleyGraph<'g> {
    group: &'g GroupTable,
    connection: ConnectionSet,
    members: Vec<usize>,
}

impl<'g> CayleyGraph<'g> {
    pub fn new(group: &'g GroupTable, connection: ConnectionSet) -> Result<Self> {
        group.check_set(connection.elems())?;
        let members = connection.elems().to_vec();
        Ok(CayleyGraph {
            group,
            connection,
            members,
        })
    }

    /// Convenience: validate `elems` and build the graph.
    pub fn from_set(group: &'g GroupTable, elems: ElementSet) -> Result<Self> {
        Self::new(group, ConnectionSet::new(group, elems)?)
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    /// Connection set members in ascending order.
    pub fn generators(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.members.len()
    }

    /// `S v`.
    pub fn neighbors(&self, v: usize) -> ElementSet {
        self.group.set_of(self.neighbor_iter(v))
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(move |&s| self.group.mul(s, v))
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.connection.elems().contains(self.group.mul(y, self.group.inv(x)))
    }

    /// `|S v ∩ c|`.
    pub fn count_in(&self, v: usize, c: &ElementSet) -> usize {
        self.neighbor_iter(v).filter(|&u| c.contains(u)).count()
    }

    /// Undirected edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in self.neighbor_iter(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut m = vec![vec![0i64; n]; n];
        for (u, row) in m.iter_mut().enumerate() {
            for v in self.neighbor_iter(u) {
                row[v] = 1;
            }
        }
        m
    }
}
