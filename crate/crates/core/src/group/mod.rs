//! Finite groups given by complete multiplication tables.
//!
//! Every group is stored with its identity at index 0. Elements are plain
//! `usize` indices into the table; [`ElementSet`] holds subsets such as
//! subgroups, connection sets and candidate regular sets.

mod builders;
mod file;
mod set;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

pub use builders::build_group;
pub use file::{load_table_file, TableFile, DEFAULT_ASSOCIATIVITY_CAP};
pub use set::ElementSet;

use crate::error::{Error, Result};

/// Default cap on the group order for [`GroupTable::subgroups`].
pub const DEFAULT_SUBGROUP_CAP: usize = 128;

/// How element names beyond the canonical ones are parsed.
#[derive(Debug, Clone)]
pub(crate) enum Notation {
    /// Canonical names only.
    Plain,
    /// Words in named generators with integer exponents, e.g. `x2y`, `x^-2`, `y3`.
    Words(Vec<(String, usize)>),
    /// Pairs `(a,b)` parsed in the factor groups.
    Product(Arc<GroupTable>, Arc<GroupTable>),
    /// Permutations in cycle notation over points `1..=degree`.
    Perm {
        degree: usize,
        index: HashMap<Vec<usize>, usize>,
    },
}

/// A finite group as a complete multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    spec: String,
    names: Vec<String>,
    mul: Vec<u32>,
    inv: Vec<usize>,
    notation: Notation,
}

/// Partition of a group into the left cosets of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub subgroup: ElementSet,
    /// Left cosets in ascending order of their least member.
    pub cosets: Vec<ElementSet>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetPartition {
    /// Index (into `cosets`) of the coset containing `g`.
    #[inline]
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn index(&self) -> usize {
        self.cosets.len()
    }
}

impl GroupTable {
    /// Builds a table from a product function, checking the Latin property
    /// and that index 0 is the identity. Associativity is the caller's
    /// responsibility.
    pub(crate) fn from_fn(
        spec: impl Into<String>,
        names: Vec<String>,
        notation: Notation,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        let mut rows = Vec::with_capacity(n);
        for a in 0..n {
            rows.push((0..n).map(|b| f(a, b)).collect::<Vec<_>>());
        }
        Self::from_rows(spec, names, notation, &rows)
    }

    pub(crate) fn from_rows(
        spec: impl Into<String>,
        names: Vec<String>,
        notation: Notation,
        rows: &[Vec<usize>],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidTable("group too large".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}x{n}")));
        }
        {
            let mut seen = HashSet::new();
            for name in &names {
                if !seen.insert(name.as_str()) {
                    return Err(Error::InvalidTable(format!("duplicate element name `{name}`")));
                }
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                mul.push(x as u32);
            }
        }
        // Latin square
        let mut seen = vec![0usize; n];
        for (a, row) in rows.iter().enumerate() {
            for &x in row {
                if seen[x] == a + 1 {
                    return Err(Error::InvalidTable(format!("row {a} repeats element {x}")));
                }
                seen[x] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for (a, row) in rows.iter().enumerate() {
                let x = row[b];
                if seen[x] == b + 1 {
                    return Err(Error::InvalidTable(format!("column {b} repeats element {x} (row {a})")));
                }
                seen[x] = b + 1;
            }
        }
        for (g, row) in rows.iter().enumerate() {
            if rows[0][g] != g || row[0] != g {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for (g, row) in rows.iter().enumerate() {
            // Latin rows guarantee exactly one right inverse.
            let h = row.iter().position(|&x| x == 0).expect("latin row contains identity");
            if rows[h][g] != 0 {
                return Err(Error::InvalidTable(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = h;
        }
        Ok(GroupTable {
            spec: spec.into(),
            names,
            mul,
            inv,
            notation,
        })
    }

    /// Checks associativity by a full triple scan when `order <= cap`,
    /// otherwise by Light's test over a generating set.
    pub fn check_associative(&self, cap: usize) -> Result<()> {
        let n = self.order();
        let fail = |a: usize, b: usize, c: usize| {
            Err(Error::InvalidTable(format!(
                "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
            )))
        };
        let middles: Vec<usize> = if n <= cap {
            (0..n).collect()
        } else {
            self.magma_generators()
        };
        for a in 0..n {
            for &b in &middles {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail(a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set of the table under multiplication alone.
    fn magma_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut reached = ElementSet::singleton(n, 0);
        for g in 1..n {
            if reached.contains(g) {
                continue;
            }
            gens.push(g);
            reached = self.closure(&gens);
        }
        gens
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    /// Row `a` of the table as indices.
    pub fn row(&self, a: usize) -> Vec<usize> {
        (0..self.order()).map(|b| self.mul(a, b)).collect()
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Least `n >= 1` with `g^n = e`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_involution(&self, g: usize) -> bool {
        g != 0 && self.mul(g, g) == 0
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    pub fn identity_set(&self) -> ElementSet {
        ElementSet::singleton(self.order(), 0)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, items: I) -> ElementSet {
        ElementSet::from_indices(self.order(), items)
    }

    pub(crate) fn check_set(&self, a: &ElementSet) -> Result<()> {
        if a.universe() != self.order() {
            return Err(Error::GroupMismatch {
                expected: self.order(),
                found: a.universe(),
            });
        }
        Ok(())
    }

    /// Closure of `gens` under multiplication, starting from the identity.
    fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = self.identity_set();
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate_subgroup(&self, gens: &ElementSet) -> ElementSet {
        // In a finite group closure under products already contains inverses.
        self.closure(&gens.to_vec())
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        if h.universe() != self.order() || !h.contains(0) {
            return false;
        }
        let elems = h.to_vec();
        elems.iter().all(|&a| elems.iter().all(|&b| h.contains(self.mul(a, b))))
    }

    pub(crate) fn require_subgroup(&self, h: &ElementSet) -> Result<()> {
        self.check_set(h)?;
        if !self.is_subgroup(h) {
            return Err(Error::NotSubgroup);
        }
        Ok(())
    }

    /// Whether `g H g^-1 = H` for every `g`.
    pub fn is_normal(&self, h: &ElementSet) -> Result<bool> {
        self.require_subgroup(h)?;
        let elems = h.to_vec();
        Ok((0..self.order()).all(|g| {
            let gi = self.inv(g);
            elems.iter().all(|&x| h.contains(self.mul(self.mul(g, x), gi)))
        }))
    }

    pub fn inverse_set(&self, a: &ElementSet) -> ElementSet {
        self.set_of(a.iter().map(|x| self.inv(x)))
    }

    pub fn is_inverse_closed(&self, a: &ElementSet) -> bool {
        a.iter().all(|x| a.contains(self.inv(x)))
    }

    /// First member of `a` whose inverse is missing.
    pub fn inverse_closure_violation(&self, a: &ElementSet) -> Option<usize> {
        a.iter().find(|&x| !a.contains(self.inv(x)))
    }

    /// `{ a * x : x in set }`.
    pub fn left_translate(&self, a: usize, set: &ElementSet) -> ElementSet {
        self.set_of(set.iter().map(|x| self.mul(a, x)))
    }

    /// `{ x * a : x in set }`.
    pub fn right_translate(&self, set: &ElementSet, a: usize) -> ElementSet {
        self.set_of(set.iter().map(|x| self.mul(x, a)))
    }

    pub fn left_cosets(&self, h: &ElementSet) -> Result<CosetPartition> {
        self.require_subgroup(h)?;
        Ok(self.cosets_by(h, |g| self.left_translate(g, h)))
    }

    pub fn right_cosets(&self, h: &ElementSet) -> Result<CosetPartition> {
        self.require_subgroup(h)?;
        Ok(self.cosets_by(h, |g| self.right_translate(h, g)))
    }

    fn cosets_by(&self, h: &ElementSet, coset: impl Fn(usize) -> ElementSet) -> CosetPartition {
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        let mut representatives = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = coset(g);
            for x in c.iter() {
                coset_of[x] = cosets.len();
            }
            representatives.push(g);
            cosets.push(c);
        }
        CosetPartition {
            subgroup: h.clone(),
            cosets,
            representatives,
            coset_of,
        }
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&g| self.is_involution(g)).collect()
    }

    /// All subgroups, sorted by size then by member mask. Refuses groups
    /// larger than `cap`.
    pub fn subgroups(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let n = self.order();
        if n > cap {
            return Err(Error::BudgetExceeded(format!(
                "subgroup enumeration capped at order {cap}, group has order {n}"
            )));
        }
        let mut cyclic: Vec<(usize, ElementSet)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for g in 0..n {
            let c = self.closure(&[g]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((g, c));
            }
        }
        let mut found: HashSet<ElementSet> = HashSet::new();
        let mut queue: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        for (g, c) in &cyclic {
            if found.insert(c.clone()) {
                queue.push((c.clone(), vec![*g]));
            }
        }
        while let Some((sub, gens)) = queue.pop() {
            for (g, c) in &cyclic {
                if c.is_subset(&sub) {
                    continue;
                }
                let mut gs = gens.clone();
                gs.push(*g);
                let joined = self.closure(&gs);
                if found.insert(joined.clone()) {
                    queue.push((joined, gs));
                }
            }
        }
        let mut out: Vec<ElementSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Nontrivial proper normal subgroups.
    pub fn proper_normal_subgroups(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let n = self.order();
        let mut out = Vec::new();
        for h in self.subgroups(cap)? {
            if h.len() > 1 && h.len() < n && self.is_normal(&h)? {
                out.push(h);
            }
        }
        Ok(out)
    }

    pub fn set_names(&self, a: &ElementSet) -> Vec<String> {
        a.iter().map(|g| self.names[g].clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves an element given by canonical name or, where the family
    /// supports it, by a word in its generators.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if let Some(g) = self.index_of(text) {
            return Ok(g);
        }
        let parsed = match &self.notation {
            Notation::Plain => None,
            Notation::Words(gens) => self.parse_word(text, gens),
            Notation::Product(a, b) => parse_pair(text).and_then(|(x, y)| {
                let x = a.parse_element(x).ok()?;
                let y = b.parse_element(y).ok()?;
                Some(x * b.order() + y)
            }),
            Notation::Perm { degree, index } => builders::parse_cycles(text, *degree)
                .ok()
                .and_then(|p| index.get(&p).copied()),
        };
        parsed.ok_or_else(|| Error::UnknownElement(text.to_string()))
    }

    fn parse_word(&self, text: &str, gens: &[(String, usize)]) -> Option<usize> {
        let mut rest = text;
        let mut acc = self.identity();
        if rest.is_empty() {
            return None;
        }
        while !rest.is_empty() {
            let (gname, g) = gens
                .iter()
                .filter(|(name, _)| rest.starts_with(name.as_str()))
                .max_by_key(|(name, _)| name.len())?;
            rest = &rest[gname.len()..];
            let after_caret = rest.strip_prefix('^').unwrap_or(rest);
            let (neg, digits_from) = match after_caret.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, after_caret),
            };
            let ndig = digits_from.bytes().take_while(u8::is_ascii_digit).count();
            let exp: i64 = if ndig == 0 {
                if neg || after_caret.len() != rest.len() {
                    return None;
                }
                1
            } else {
                digits_from[..ndig].parse().ok()?
            };
            rest = &digits_from[ndig..];
            let exp = if neg { -exp } else { exp };
            let reduced = exp.rem_euclid(self.element_order(*g) as i64);
            acc = self.mul(acc, self.pow(*g, reduced));
        }
        Some(acc)
    }

    /// Parses a comma-separated list of elements. Commas nested inside
    /// parentheses are kept, so product and permutation names work.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for item in split_top_level(text, ',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            set.insert(self.parse_element(item)?);
        }
        Ok(set)
    }
}

/// Splits on `sep` outside of parentheses.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn parse_pair(text: &str) -> Option<(&str, &str)> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let parts = split_top_level(inner, ',');
    match parts.as_slice() {
        [a, b] => Some((a.trim(), b.trim())),
        _ => None,
    }
}
