//! Building connection sets that make a normal subgroup `H` an
//! `(a,b)`-regular set.
//!
//! The pipeline is:
//! 1. [`inverse_closed_transversal`] finds `S0` such that `S0 ∪ {e}` is an
//!    inverse-closed left transversal of `H`, i.e. `H` is a perfect code in
//!    `Cay(G, S0)`.
//! 2. [`construct_connection_set`] spreads `b` copies of every non-identity
//!    coset over `S`: for inverse pairs `s_r, s_r^-1` of `S0` it uses the
//!    blocks `S_i = {s_r h_i, (s_r h_i)^-1}`, and for involutions `s_j` it
//!    takes `b` elements of `s_j H` arranged in inverse pairs plus
//!    involutions (`T_j`). Adding an inverse-closed `K ⊆ H \ {e}` gives
//!    `a = |K|`.
//! 3. [`complement_to_full`] and [`complement_outside`] turn an
//!    `(a,b)` witness into `(a,|H|)` and `(a,|H|-b)` witnesses.

use serde::Serialize;

use crate::cayley::ConnectionSet;
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use crate::regular::{check_subgroup_regular, condition1_holds, Regularity};

/// `S0 = (s_1, ..., s_n)` with `s_i^-1 = s_{2m+1-i}` for `i <= 2m` and
/// `s_j` an involution for `j > 2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedS0 {
    pub elems: Vec<usize>,
    pub m: usize,
}

impl OrderedS0 {
    pub fn pairs(&self) -> &[usize] {
        &self.elems[..self.m]
    }

    pub fn involutions(&self) -> &[usize] {
        &self.elems[2 * self.m..]
    }

    pub fn to_set(&self, group: &GroupTable) -> ElementSet {
        group.set_of(self.elems.iter().copied())
    }

    /// Orders an inverse-closed set canonically: pair representatives
    /// ascending in front, their inverses mirrored, then involutions.
    pub fn canonical(group: &GroupTable, set: &ElementSet) -> Result<Self> {
        if let Some(x) = group.inverse_closure_violation(set) {
            return Err(Error::NotInverseClosed(group.name(x).into()));
        }
        let mut reps = Vec::new();
        let mut invs = Vec::new();
        for x in set.iter() {
            let xi = group.inv(x);
            if xi == x {
                invs.push(x);
            } else if x < xi {
                reps.push(x);
            }
        }
        Ok(Self::from_parts(group, &reps, &invs))
    }

    fn from_parts(group: &GroupTable, reps: &[usize], invs: &[usize]) -> Self {
        let mut elems = reps.to_vec();
        elems.extend(reps.iter().rev().map(|&x| group.inv(x)));
        elems.extend_from_slice(invs);
        OrderedS0 { elems, m: reps.len() }
    }

    /// Checks the ordering convention and that `S0 ∪ {e}` is an
    /// inverse-closed left transversal of `h`.
    pub fn validate(&self, group: &GroupTable, h: &ElementSet) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTransversal(msg));
        let n = self.elems.len();
        if 2 * self.m > n {
            return bad(format!("m = {} too large for {n} elements", self.m));
        }
        for &s in &self.elems {
            if s >= group.order() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    order: group.order(),
                });
            }
        }
        for i in 0..2 * self.m {
            if group.inv(self.elems[i]) != self.elems[2 * self.m - 1 - i] {
                return bad(format!("position {} is not mirrored by its inverse", i + 1));
            }
            if group.is_involution(self.elems[i]) {
                return bad(format!(
                    "paired element `{}` is an involution",
                    group.name(self.elems[i])
                ));
            }
        }
        for &s in self.involutions() {
            if !group.is_involution(s) {
                return bad(format!("`{}` is not an involution", group.name(s)));
            }
        }
        let cosets = group.left_cosets(h)?;
        let mut hit = vec![false; cosets.index()];
        hit[cosets.coset_of(group.identity())] = true;
        for &s in &self.elems {
            let c = cosets.coset_of(s);
            if hit[c] {
                return bad(format!("`{}` repeats a coset", group.name(s)));
            }
            hit[c] = true;
        }
        if hit.iter().any(|&x| !x) {
            return bad("some coset is missed".into());
        }
        Ok(())
    }
}

/// Split of a coset `s_j H` (with `s_j` an involution) into inverse pairs
/// of elements of order > 2 and a list of involutions headed by `s_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub coset_rep: usize,
    pub u_pairs: Vec<(usize, usize)>,
    pub v_involutions: Vec<usize>,
}

impl CosetDecomposition {
    pub fn alpha(&self) -> usize {
        self.u_pairs.len()
    }

    pub fn beta(&self) -> usize {
        self.v_involutions.len()
    }

    /// The `b` elements of the coset taken into the connection set.
    pub fn block(&self, group: &GroupTable, b: usize) -> ElementSet {
        let alpha = self.alpha();
        let pairs = if b > 2 * alpha { alpha } else { b / 2 };
        let singles = if b > 2 * alpha { b - 2 * alpha } else { b % 2 };
        let mut t = group.empty_set();
        for &(u, ui) in &self.u_pairs[..pairs] {
            t.insert(u);
            t.insert(ui);
        }
        for &v in &self.v_involutions[..singles] {
            t.insert(v);
        }
        t
    }
}

fn require_normal_proper(group: &GroupTable, h: &ElementSet) -> Result<()> {
    group.require_subgroup(h)?;
    if h.len() <= 1 {
        return Err(Error::TrivialSubgroup);
    }
    if h.is_full() {
        return Err(Error::ImproperSubset);
    }
    if !group.is_normal(h)? {
        return Err(Error::NotNormal);
    }
    Ok(())
}

/// Finds an inverse-closed left transversal `S0 ∪ {e}` of `h`, or `None`
/// when some self-inverse coset holds no involution.
pub fn inverse_closed_transversal(group: &GroupTable, h: &ElementSet) -> Result<Option<OrderedS0>> {
    require_normal_proper(group, h)?;
    let cosets = group.left_cosets(h)?;
    let mut handled = vec![false; cosets.index()];
    handled[cosets.coset_of(group.identity())] = true;
    let mut reps = Vec::new();
    let mut invs = Vec::new();
    for ci in 0..cosets.index() {
        if handled[ci] {
            continue;
        }
        handled[ci] = true;
        let least = cosets.representatives[ci];
        let cj = cosets.coset_of(group.inv(least));
        if cj != ci {
            handled[cj] = true;
            reps.push(least);
        } else {
            match cosets.cosets[ci].iter().find(|&x| group.is_involution(x)) {
                Some(v) => invs.push(v),
                None => return Ok(None),
            }
        }
    }
    invs.sort_unstable();
    Ok(Some(OrderedS0::from_parts(group, &reps, &invs)))
}

pub fn decompose_coset(group: &GroupTable, h: &ElementSet, rep: usize) -> Result<CosetDecomposition> {
    group.require_subgroup(h)?;
    if rep >= group.order() {
        return Err(Error::IndexOutOfRange {
            index: rep,
            order: group.order(),
        });
    }
    if !group.is_involution(rep) {
        return Err(Error::NotInvolution(group.name(rep).into()));
    }
    if h.contains(rep) {
        return Err(Error::OutOfRange(format!(
            "coset representative `{}` lies in the subgroup",
            group.name(rep)
        )));
    }
    let coset = group.left_translate(rep, h);
    if !group.is_inverse_closed(&coset) {
        return Err(Error::CosetNotInverseClosed(group.name(rep).into()));
    }
    let mut v_involutions = vec![rep];
    let mut u_pairs = Vec::new();
    let mut used = group.empty_set();
    used.insert(rep);
    for x in coset.iter() {
        if used.contains(x) {
            continue;
        }
        used.insert(x);
        if group.is_involution(x) {
            v_involutions.push(x);
        } else {
            let xi = group.inv(x);
            used.insert(xi);
            u_pairs.push((x, xi));
        }
    }
    Ok(CosetDecomposition {
        coset_rep: rep,
        u_pairs,
        v_involutions,
    })
}

/// All intermediate objects of one run of the block construction.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub subgroup: ElementSet,
    pub h_order: Vec<usize>,
    pub s0: OrderedS0,
    pub b: usize,
    pub k: ElementSet,
    /// `S_1, ..., S_b`.
    pub s_blocks: Vec<ElementSet>,
    /// One `(decomposition, T_j)` per involution of `S0`.
    pub t_blocks: Vec<(CosetDecomposition, ElementSet)>,
    pub result: ConnectionSet,
}

/// Structural facts that every trace must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceChecks {
    pub s_block_sizes: bool,
    pub t_block_sizes: bool,
    pub disjoint_union: bool,
    pub inverse_closed: bool,
    pub identity_free: bool,
}

impl TraceChecks {
    pub fn all(&self) -> bool {
        self.s_block_sizes && self.t_block_sizes && self.disjoint_union && self.inverse_closed && self.identity_free
    }
}

impl ConstructionTrace {
    pub fn connection(&self) -> &ConnectionSet {
        &self.result
    }

    pub fn check(&self, group: &GroupTable) -> TraceChecks {
        let s_block_sizes = self.s_blocks.iter().all(|s| s.len() == 2 * self.s0.m);
        let t_block_sizes = self.t_blocks.iter().all(|(_, t)| t.len() == self.b);
        let mut blocks: Vec<&ElementSet> = vec![&self.k];
        blocks.extend(&self.s_blocks);
        blocks.extend(self.t_blocks.iter().map(|(_, t)| t));
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        let union = blocks.iter().fold(group.empty_set(), |acc, b| acc.union(b));
        let s = self.result.elems();
        TraceChecks {
            s_block_sizes,
            t_block_sizes,
            disjoint_union: total == s.len() && &union == s,
            inverse_closed: group.is_inverse_closed(s),
            identity_free: !s.contains(group.identity()),
        }
    }

    pub fn to_json(&self, group: &GroupTable) -> TraceJson {
        let names = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| group.name(x).to_string()).collect::<Vec<_>>();
        TraceJson {
            subgroup: group.set_names(&self.subgroup),
            h_order: names(&mut self.h_order.iter().copied()),
            s0: names(&mut self.s0.elems.iter().copied()),
            m: self.s0.m,
            b: self.b,
            k: group.set_names(&self.k),
            s_blocks: self.s_blocks.iter().map(|s| group.set_names(s)).collect(),
            t_blocks: self
                .t_blocks
                .iter()
                .map(|(d, t)| TBlockJson {
                    rep: group.name(d.coset_rep).into(),
                    alpha: d.alpha(),
                    beta: d.beta(),
                    u_pairs: d
                        .u_pairs
                        .iter()
                        .map(|&(u, ui)| [group.name(u).into(), group.name(ui).into()])
                        .collect(),
                    v: names(&mut d.v_involutions.iter().copied()),
                    block: group.set_names(t),
                })
                .collect(),
            s: group.set_names(self.result.elems()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceJson {
    #[serde(rename = "H")]
    pub subgroup: Vec<String>,
    pub h_order: Vec<String>,
    #[serde(rename = "S0")]
    pub s0: Vec<String>,
    pub m: usize,
    pub b: usize,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "S_blocks")]
    pub s_blocks: Vec<Vec<String>>,
    #[serde(rename = "T_blocks")]
    pub t_blocks: Vec<TBlockJson>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TBlockJson {
    pub rep: String,
    pub alpha: usize,
    pub beta: usize,
    pub u_pairs: Vec<[String; 2]>,
    pub v: Vec<String>,
    #[serde(rename = "T")]
    pub block: Vec<String>,
}

/// Canonical ordering of `H`: identity first, then ascending.
pub fn canonical_h_order(h: &ElementSet) -> Vec<usize> {
    // identity is index 0, so ascending order already starts with it
    h.to_vec()
}

/// Runs the block construction with the canonical ordering of `H`.
pub fn construct_connection_set(
    group: &GroupTable,
    h: &ElementSet,
    k: &ElementSet,
    b: usize,
    s0: &OrderedS0,
) -> Result<ConstructionTrace> {
    construct_with_order(group, h, k, b, s0, &canonical_h_order(h))
}

/// Runs the block construction with an explicit enumeration `h_1..h_d` of `H`.
pub fn construct_with_order(
    group: &GroupTable,
    h: &ElementSet,
    k: &ElementSet,
    b: usize,
    s0: &OrderedS0,
    h_order: &[usize],
) -> Result<ConstructionTrace> {
    require_normal_proper(group, h)?;
    group.check_set(k)?;
    if !k.is_subset(h) || k.contains(group.identity()) {
        return Err(Error::OutOfRange("K must be a subset of H \\ {e}".into()));
    }
    if let Some(x) = group.inverse_closure_violation(k) {
        return Err(Error::NotInverseClosed(group.name(x).into()));
    }
    if b > h.len() {
        return Err(Error::OutOfRange(format!("b = {b} exceeds |H| = {}", h.len())));
    }
    if h_order.len() != h.len() || group.set_of(h_order.iter().copied()) != *h {
        return Err(Error::OutOfRange("h_order must enumerate H".into()));
    }
    s0.validate(group, h)?;

    let m = s0.m;
    let s_blocks: Vec<ElementSet> = h_order[..b]
        .iter()
        .map(|&hi| {
            let mut block = group.empty_set();
            for &s in s0.pairs() {
                let x = group.mul(s, hi);
                block.insert(x);
                block.insert(group.inv(x));
            }
            block
        })
        .collect();
    debug_assert!(s_blocks.iter().all(|s| s.len() == 2 * m));

    let mut t_blocks = Vec::with_capacity(s0.involutions().len());
    for &sj in s0.involutions() {
        let d = decompose_coset(group, h, sj)?;
        let t = d.block(group, b);
        t_blocks.push((d, t));
    }

    let mut s = k.clone();
    for block in s_blocks.iter().chain(t_blocks.iter().map(|(_, t)| t)) {
        s = s.union(block);
    }
    let result = ConnectionSet::new(group, s)?;
    Ok(ConstructionTrace {
        subgroup: h.clone(),
        h_order: h_order.to_vec(),
        s0: s0.clone(),
        b,
        k: k.clone(),
        s_blocks,
        t_blocks,
        result,
    })
}

/// Inverse-closed `K ⊆ H \ {e}` of size `a`: the least involution first when
/// `a` is odd, then inverse pairs of non-involutions ascending, then further
/// involutions ascending if pairs run out. `None` when no such set exists.
pub fn canonical_k(group: &GroupTable, h: &ElementSet, a: usize) -> Option<ElementSet> {
    let mut involutions = Vec::new();
    let mut pairs = Vec::new();
    for x in h.iter().filter(|&x| x != group.identity()) {
        let xi = group.inv(x);
        if xi == x {
            involutions.push(x);
        } else if x < xi {
            pairs.push((x, xi));
        }
    }
    let mut k = group.empty_set();
    let mut need = a;
    let mut inv_iter = involutions.into_iter();
    if need % 2 == 1 {
        k.insert(inv_iter.next()?);
        need -= 1;
    }
    for (x, xi) in pairs {
        if need < 2 {
            break;
        }
        k.insert(x);
        k.insert(xi);
        need -= 2;
    }
    while need > 0 {
        k.insert(inv_iter.next()?);
        need -= 1;
    }
    Some(k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasible {
    /// No inverse-closed left transversal; carries the element violating
    /// the involution condition.
    NoTransversal { witness: Option<usize> },
    /// `|H|` odd has no inverse-closed subset of odd size in `H \ {e}`.
    OddSubset,
}

#[derive(Debug, Clone)]
pub enum ConstructionOutcome {
    Built(Box<ConstructionTrace>),
    Infeasible(Infeasible),
}

impl ConstructionOutcome {
    pub fn trace(&self) -> Option<&ConstructionTrace> {
        match self {
            ConstructionOutcome::Built(t) => Some(t),
            ConstructionOutcome::Infeasible(_) => None,
        }
    }
}

/// Builds `S` with `H` an `(a,b)`-regular set of `Cay(G,S)` whenever `H` is
/// a perfect code of `G` and the parity of `a` allows it.
pub fn regular_set_connection(group: &GroupTable, h: &ElementSet, a: usize, b: usize) -> Result<ConstructionOutcome> {
    require_normal_proper(group, h)?;
    let d = h.len();
    if a >= d {
        return Err(Error::OutOfRange(format!(
            "a = {a} must be at most |H| - 1 = {}",
            d - 1
        )));
    }
    if b > d {
        return Err(Error::OutOfRange(format!("b = {b} exceeds |H| = {d}")));
    }
    let Some(s0) = inverse_closed_transversal(group, h)? else {
        let witness = condition1_holds(group, h)?.witness;
        return Ok(ConstructionOutcome::Infeasible(Infeasible::NoTransversal { witness }));
    };
    let Some(k) = canonical_k(group, h, a) else {
        return Ok(ConstructionOutcome::Infeasible(Infeasible::OddSubset));
    };
    let trace = construct_connection_set(group, h, &k, b, &s0)?;
    Ok(ConstructionOutcome::Built(Box::new(trace)))
}

fn require_certified(group: &GroupTable, s: &ConnectionSet, h: &ElementSet) -> Result<()> {
    match check_subgroup_regular(group, s, h)? {
        Regularity::Regular(_) => Ok(()),
        Regularity::NotRegular(_) => Err(Error::NotCertified),
    }
}

/// `(S ∩ H) ∪ (G \ H)`: turns an `(a,b)` witness into an `(a,|H|)` witness.
pub fn complement_to_full(group: &GroupTable, s: &ConnectionSet, h: &ElementSet) -> Result<ConnectionSet> {
    require_certified(group, s, h)?;
    let out = s.elems().intersection(h).union(&h.complement());
    ConnectionSet::new(group, out)
}

/// `(S ∩ H) ∪ (G \ (S ∪ H))`: turns an `(a,b)` witness into an
/// `(a,|H|-b)` witness. Applying it twice gives back `S`.
pub fn complement_outside(group: &GroupTable, s: &ConnectionSet, h: &ElementSet) -> Result<ConnectionSet> {
    require_certified(group, s, h)?;
    let inside = s.elems().intersection(h);
    let outside = s.elems().union(h).complement();
    ConnectionSet::new(group, inside.union(&outside))
}
