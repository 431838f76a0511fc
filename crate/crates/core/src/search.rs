//! Brute-force oracles.
//!
//! Everything here enumerates candidates and certifies them by counting
//! neighbours directly, without using the subgroup criteria or the
//! construction. Inverse-closed connection sets are enumerated as unions of
//! "atoms" (an involution, or an inverse pair `{x, x^-1}`), by ascending
//! number of atoms and then lexicographically, so the first witness found
//! for a cell is the smallest one.

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::{build_group, ElementSet, GroupTable, DEFAULT_SUBGROUP_CAP};
use crate::regular::{check_regular_set, condition1_holds, Certificate, Regularity};

/// Default group-order cap for all-subsets enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;
/// Default number of candidate connection sets per query.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: u64,
    pub enumeration_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_candidates: DEFAULT_CANDIDATE_BUDGET,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
        }
    }
}

fn mask_of(set: &ElementSet) -> Result<u128> {
    set.to_mask()
        .ok_or_else(|| Error::BudgetExceeded("exhaustive search supports groups of order <= 128".into()))
}

/// Involutions and inverse pairs inside `within \ {e}`, ordered by least element.
pub fn atoms(group: &GroupTable, within: &ElementSet) -> Vec<ElementSet> {
    within
        .iter()
        .filter(|&x| x != group.identity() && x <= group.inv(x) && within.contains(group.inv(x)))
        .map(|x| group.set_of([x, group.inv(x)]))
        .collect()
}

/// Lexicographic `k`-combinations of `0..n`, for `k = 0, 1, ..., n`.
struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize) -> Self {
        Combinations {
            n,
            k: 0,
            idx: Vec::new(),
            started: false,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let (n, k) = (self.n, self.k);
        // rightmost index that can still move
        let mut i = k;
        while i > 0 && self.idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            if k == n {
                return None;
            }
            self.k += 1;
            self.idx = (0..self.k).collect();
        } else {
            self.idx[i - 1] += 1;
            for j in i..k {
                self.idx[j] = self.idx[j - 1] + 1;
            }
        }
        Some(&self.idx)
    }
}

/// All inverse-closed subsets of `within \ {e}` in search order.
pub fn inverse_closed_subsets(group: &GroupTable, within: &ElementSet) -> Vec<ElementSet> {
    let atoms = atoms(group, within);
    let mut combos = Combinations::new(atoms.len());
    let mut out = Vec::new();
    while let Some(idx) = combos.advance() {
        out.push(idx.iter().fold(group.empty_set(), |acc, &i| acc.union(&atoms[i])));
    }
    out
}

/// Every `(C, certificate)` with `C` a nonempty proper regular set of the
/// graph, ascending by bitmask, optionally restricted to one `(a,b)`.
pub fn enumerate_regular_sets(
    graph: &CayleyGraph<'_>,
    filter: Option<(usize, usize)>,
    cap: usize,
) -> Result<Vec<(ElementSet, Certificate)>> {
    let n = graph.order();
    if n > cap.min(63) {
        return Err(Error::BudgetExceeded(format!(
            "all-subsets enumeration capped at order {}, group has order {n}; use subgroup mode",
            cap.min(63)
        )));
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| graph.neighbor_iter(v).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let mut inside = None;
        let mut outside = None;
        let ok = (0..n).all(|v| {
            let k = (nbr[v] & mask).count_ones();
            let slot = if mask >> v & 1 == 1 { &mut inside } else { &mut outside };
            *slot.get_or_insert(k) == k
        });
        if !ok {
            continue;
        }
        let ab = (inside.unwrap_or(0) as usize, outside.unwrap_or(0) as usize);
        if filter.is_some_and(|f| f != ab) {
            continue;
        }
        let set = ElementSet::from_mask(n, mask as u128);
        match check_regular_set(graph, &set)? {
            Regularity::Regular(cert) => out.push((set, cert)),
            Regularity::NotRegular(_) => unreachable!("bitmask count disagrees with certifier"),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellState {
    Feasible(ElementSet),
    Infeasible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub a: usize,
    pub b: usize,
    pub state: CellState,
}

/// Which `(a,b)` with `0 <= a < |H|`, `0 <= b <= |H|` admit a connection
/// set making `H` an `(a,b)`-regular set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityTable {
    pub subgroup: ElementSet,
    pub normal: bool,
    pub cells: Vec<Cell>,
    pub candidates_examined: u64,
    /// False when the budget ran out before the space was exhausted.
    pub complete: bool,
}

impl FeasibilityTable {
    fn width(&self) -> usize {
        self.subgroup.len() + 1
    }

    pub fn cell(&self, a: usize, b: usize) -> &Cell {
        &self.cells[a * self.width() + b]
    }

    pub fn is_feasible(&self, a: usize, b: usize) -> bool {
        matches!(self.cell(a, b).state, CellState::Feasible(_))
    }

    pub fn witness(&self, a: usize, b: usize) -> Option<&ElementSet> {
        match &self.cell(a, b).state {
            CellState::Feasible(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self, group: &GroupTable) -> TableJson {
        TableJson {
            subgroup: group.set_names(&self.subgroup),
            normal: self.normal,
            cells: self
                .cells
                .iter()
                .map(|c| CellJson {
                    a: c.a,
                    b: c.b,
                    feasible: match c.state {
                        CellState::Feasible(_) => serde_json::Value::Bool(true),
                        CellState::Infeasible => serde_json::Value::Bool(false),
                        CellState::Unknown => serde_json::Value::String("unknown".into()),
                    },
                    witness: match &c.state {
                        CellState::Feasible(s) => Some(group.set_names(s)),
                        _ => None,
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableJson {
    #[serde(rename = "H")]
    pub subgroup: Vec<String>,
    pub normal: bool,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellJson {
    pub a: usize,
    pub b: usize,
    pub feasible: serde_json::Value,
    pub witness: Option<Vec<String>>,
}

/// Masks `C x^-1` for every vertex `x`, so that `|S x ∩ C| = |S ∩ C x^-1|`.
fn translate_masks(group: &GroupTable, c: &ElementSet) -> Vec<u128> {
    (0..group.order())
        .map(|x| {
            let xi = group.inv(x);
            c.iter().fold(0u128, |m, y| m | 1 << group.mul(y, xi))
        })
        .collect()
}

fn require_proper_subgroup(group: &GroupTable, h: &ElementSet) -> Result<()> {
    group.require_subgroup(h)?;
    if h.is_full() {
        return Err(Error::ImproperSubset);
    }
    Ok(())
}

/// Exhaustive feasibility table for a subgroup `H` (normality not required).
pub fn feasible_ab_table(group: &GroupTable, h: &ElementSet, budget: &Budget) -> Result<FeasibilityTable> {
    require_proper_subgroup(group, h)?;
    if h.len() <= 1 {
        return Err(Error::TrivialSubgroup);
    }
    let n = group.order();
    let d = h.len();
    let index = n / d;
    let h_mask = mask_of(h)?;
    let translates = translate_masks(group, h);
    let width = d + 1;

    let mut cells: Vec<Cell> = (0..d)
        .flat_map(|a| {
            (0..=d).map(move |b| Cell {
                a,
                b,
                state: CellState::Unknown,
            })
        })
        .collect();
    // odd |H| has no involutions, so |S ∩ H| is even
    if d % 2 == 1 {
        for c in cells.iter_mut().filter(|c| c.a % 2 == 1) {
            c.state = CellState::Infeasible;
        }
    }
    let mut open = cells.iter().filter(|c| c.state == CellState::Unknown).count();

    let atom_sets = atoms(group, &group.full_set());
    let atom_masks: Vec<u128> = atom_sets.iter().map(mask_of).collect::<Result<_>>()?;
    let mut combos = Combinations::new(atom_masks.len());
    let mut examined = 0u64;
    let mut exhausted = true;
    while open > 0 {
        let Some(idx) = combos.advance() else { break };
        if examined == budget.max_candidates {
            exhausted = false;
            break;
        }
        examined += 1;
        let s = idx.iter().fold(0u128, |m, &i| m | atom_masks[i]);
        let size = s.count_ones() as usize;
        let a = (s & h_mask).count_ones() as usize;
        // counting identity: |S| = a + b (index - 1)
        if a >= d || !(size - a).is_multiple_of(index - 1) {
            continue;
        }
        let b = (size - a) / (index - 1);
        if b > d || cells[a * width + b].state != CellState::Unknown {
            continue;
        }
        let certified = (0..n).all(|x| {
            let k = (s & translates[x]).count_ones() as usize;
            k == if h_mask >> x & 1 == 1 { a } else { b }
        });
        if certified {
            cells[a * width + b].state = CellState::Feasible(ElementSet::from_mask(n, s));
            open -= 1;
        }
    }
    if exhausted {
        for c in cells.iter_mut().filter(|c| c.state == CellState::Unknown) {
            c.state = CellState::Infeasible;
        }
    }
    Ok(FeasibilityTable {
        subgroup: h.clone(),
        normal: group.is_normal(h)?,
        cells,
        candidates_examined: examined,
        complete: exhausted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectCodeSearch {
    pub exists: bool,
    pub witness: Option<ElementSet>,
    pub candidates_examined: u64,
}

/// Searches for an inverse-closed `S ⊆ G \ {e}` making `H` a perfect code.
/// Only atoms outside `H` can occur, and `|S| = |G:H| - 1`.
pub fn perfect_code_connection_exists(
    group: &GroupTable,
    h: &ElementSet,
    budget: &Budget,
) -> Result<PerfectCodeSearch> {
    require_proper_subgroup(group, h)?;
    let n = group.order();
    let target = n / h.len() - 1;
    let h_mask = mask_of(h)?;
    let translates = translate_masks(group, h);
    let outside = atoms(group, &h.complement());
    let atom_masks: Vec<u128> = outside.iter().map(mask_of).collect::<Result<_>>()?;
    let mut combos = Combinations::new(atom_masks.len());
    let mut examined = 0u64;
    while let Some(idx) = combos.advance() {
        // pairs and involutions only: fewer than target/2 atoms cannot reach the size
        if idx.len() > target {
            break;
        }
        if examined == budget.max_candidates {
            return Err(Error::BudgetExceeded(format!("{examined} candidates examined")));
        }
        examined += 1;
        let s = idx.iter().fold(0u128, |m, &i| m | atom_masks[i]);
        if s.count_ones() as usize != target {
            continue;
        }
        let ok = (0..n).all(|x| {
            let k = (s & translates[x]).count_ones();
            k == if h_mask >> x & 1 == 1 { 0 } else { 1 }
        });
        if ok {
            return Ok(PerfectCodeSearch {
                exists: true,
                witness: Some(ElementSet::from_mask(n, s)),
                candidates_examined: examined,
            });
        }
    }
    Ok(PerfectCodeSearch {
        exists: false,
        witness: None,
        candidates_examined: examined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub group: String,
    pub subgroup: Vec<String>,
    pub condition1: bool,
    /// `None` when the search budget ran out.
    pub perfect_code: Option<bool>,
    pub witness: Option<Vec<String>>,
}

impl ProbeEntry {
    pub fn disagrees(&self) -> bool {
        self.perfect_code.is_some_and(|p| p != self.condition1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub entries: Vec<ProbeEntry>,
    pub disagreements: Vec<ProbeEntry>,
    pub skipped: Vec<String>,
}

/// For every non-normal subgroup of every listed group, compares the
/// involution condition with an exhaustive perfect-code search.
pub fn question1_probe(specs: &[String], budget: &Budget) -> Result<ProbeReport> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for spec in specs {
        let group = build_group(spec)?;
        let subgroups = match group.subgroups(budget.subgroup_cap) {
            Ok(s) => s,
            Err(e) => {
                skipped.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let mut non_normal = Vec::new();
        for h in subgroups {
            if !group.is_normal(&h)? {
                non_normal.push(h);
            }
        }
        let results: Vec<Result<ProbeEntry>> = non_normal
            .par_iter()
            .map(|h| {
                let condition1 = condition1_holds(&group, h)?.holds;
                let (perfect_code, witness) = match perfect_code_connection_exists(&group, h, budget) {
                    Ok(r) => (Some(r.exists), r.witness.map(|w| group.set_names(&w))),
                    Err(Error::BudgetExceeded(_)) => (None, None),
                    Err(e) => return Err(e),
                };
                Ok(ProbeEntry {
                    group: spec.clone(),
                    subgroup: group.set_names(h),
                    condition1,
                    perfect_code,
                    witness,
                })
            })
            .collect();
        for r in results {
            entries.push(r?);
        }
    }
    let disagreements = entries.iter().filter(|e| e.disagrees()).cloned().collect();
    Ok(ProbeReport {
        entries,
        disagreements,
        skipped,
    })
}
