//! Certifying `(a,b)`-regular sets.
//!
//! Two independent routes are provided. [`check_regular_set`] counts
//! `|S x ∩ C|` vertex by vertex; [`check_regular_set_ring`] evaluates the
//! group-ring identities `S·C = a C + b (G \ C)` and
//! `S·C + (b - a) C = b G` by plain convolution. For subgroups,
//! [`check_subgroup_regular`] reads `a = |S ∩ H|` and `b` off the product
//! `(S \ H)·H`.

use serde::Serialize;

use crate::cayley::{CayleyGraph, ConnectionSet};
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};

/// An element of `Z[G]`: one integer coefficient per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMultiset {
    coeff: Vec<i64>,
}

impl ElementMultiset {
    pub fn zero(order: usize) -> Self {
        ElementMultiset { coeff: vec![0; order] }
    }

    /// The indicator sum of a set.
    pub fn of_set(set: &ElementSet) -> Self {
        let mut m = Self::zero(set.universe());
        for x in set.iter() {
            m.coeff[x] = 1;
        }
        m
    }

    pub fn from_coeffs(coeff: Vec<i64>) -> Self {
        ElementMultiset { coeff }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeff
    }

    pub fn get(&self, g: usize) -> i64 {
        self.coeff[g]
    }

    pub fn len(&self) -> usize {
        self.coeff.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeff.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        ElementMultiset {
            coeff: self.coeff.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::GroupMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(ElementMultiset {
            coeff: self.coeff.iter().zip(&other.coeff).map(|(a, b)| a + b).collect(),
        })
    }
}

/// Convolution in `Z[G]`: the coefficient of `x` in `A·B` is the sum of
/// `A[g] B[h]` over all `g h = x`.
pub fn ring_multiply(group: &GroupTable, a: &ElementMultiset, b: &ElementMultiset) -> Result<ElementMultiset> {
    let n = group.order();
    for m in [a, b] {
        if m.len() != n {
            return Err(Error::GroupMismatch {
                expected: n,
                found: m.len(),
            });
        }
    }
    let mut out = ElementMultiset::zero(n);
    for (g, &ca) in a.coeff.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (h, &cb) in b.coeff.iter().enumerate() {
            if cb != 0 {
                out.coeff[group.mul(g, h)] += ca * cb;
            }
        }
    }
    Ok(out)
}

/// Witness that a set is not regular: two vertices on the same side of the
/// partition whose neighbour counts in `C` differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub u: usize,
    pub u_count: usize,
    pub v: usize,
    pub v_count: usize,
}

/// Verified `(a,b)` parameters with the counts that witness them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub a: usize,
    pub b: usize,
    pub set_size: usize,
    pub degree: usize,
    pub group_order: usize,
    /// `(x, |Sx ∩ C|)` for each `x` in `C`, ascending.
    pub inside_counts: Vec<(usize, usize)>,
    /// `(x, |Sx ∩ C|)` for each `x` outside `C`, ascending.
    pub outside_counts: Vec<(usize, usize)>,
}

impl Certificate {
    /// `|C| (|S| - a) = (|G| - |C|) b`.
    pub fn counting_identity_holds(&self) -> bool {
        self.degree >= self.a && self.set_size * (self.degree - self.a) == (self.group_order - self.set_size) * self.b
    }

    pub fn ab(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular(Certificate),
    NotRegular(Witness),
}

impl Regularity {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Regularity::Regular(c) => Some(c),
            Regularity::NotRegular(_) => None,
        }
    }

    pub fn ab(&self) -> Option<(usize, usize)> {
        self.certificate().map(Certificate::ab)
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular(_))
    }
}

/// JSON form: `{"a", "b", "set_size", "degree", "witness"}`. `a` and `b`
/// are null when the set is not regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub set_size: usize,
    pub degree: usize,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub u: String,
    pub v: String,
}

impl CertificateJson {
    pub fn new(group: &GroupTable, outcome: &Regularity, set_size: usize, degree: usize) -> Self {
        match outcome {
            Regularity::Regular(c) => CertificateJson {
                a: Some(c.a),
                b: Some(c.b),
                set_size,
                degree,
                witness: None,
            },
            Regularity::NotRegular(w) => CertificateJson {
                a: None,
                b: None,
                set_size,
                degree,
                witness: Some(WitnessJson {
                    u: group.name(w.u).into(),
                    v: group.name(w.v).into(),
                }),
            },
        }
    }
}

fn require_proper(group: &GroupTable, c: &ElementSet) -> Result<()> {
    group.check_set(c)?;
    if c.is_empty() || c.is_full() {
        return Err(Error::ImproperSubset);
    }
    Ok(())
}

/// Scans counts side by side; the first disagreement on either side is the witness.
fn certify_counts(order: usize, degree: usize, c: &ElementSet, count: impl Fn(usize) -> usize) -> Regularity {
    let mut inside = Vec::with_capacity(c.len());
    let mut outside = Vec::with_capacity(order - c.len());
    for x in 0..order {
        let k = count(x);
        let side = if c.contains(x) { &mut inside } else { &mut outside };
        if let Some(&(u, ku)) = side.first() {
            if ku != k {
                return Regularity::NotRegular(Witness {
                    u,
                    u_count: ku,
                    v: x,
                    v_count: k,
                });
            }
        }
        side.push((x, k));
    }
    Regularity::Regular(Certificate {
        a: inside[0].1,
        b: outside[0].1,
        set_size: inside.len(),
        degree,
        group_order: order,
        inside_counts: inside,
        outside_counts: outside,
    })
}

/// Neighbourhood-count certifier.
pub fn check_regular_set(graph: &CayleyGraph<'_>, c: &ElementSet) -> Result<Regularity> {
    require_proper(graph.group(), c)?;
    Ok(certify_counts(graph.order(), graph.degree(), c, |x| {
        graph.count_in(x, c)
    }))
}

/// Group-ring certifier: whether `S·C = a C + b (G \ C)`. The equivalent
/// form `S·C + (b - a) C = b G` is evaluated too; both must agree.
pub fn check_regular_set_ring(graph: &CayleyGraph<'_>, c: &ElementSet, a: usize, b: usize) -> Result<bool> {
    let group = graph.group();
    require_proper(group, c)?;
    let (a, b) = (a as i64, b as i64);
    let s_bar = ElementMultiset::of_set(graph.connection().elems());
    let c_bar = ElementMultiset::of_set(c);
    let rest_bar = ElementMultiset::of_set(&c.complement());
    let g_bar = ElementMultiset::of_set(&group.full_set());
    let sc = ring_multiply(group, &s_bar, &c_bar)?;

    let form_c = sc == c_bar.scale(a).add(&rest_bar.scale(b))?;
    let form_d = sc.add(&c_bar.scale(b - a))? == g_bar.scale(b);
    assert_eq!(form_c, form_d, "equivalent group-ring identities disagree");
    Ok(form_c)
}

/// Perfect code test via `(S ∪ {e})·C = G`. Empty and full sets are never
/// perfect codes.
pub fn is_perfect_code(graph: &CayleyGraph<'_>, c: &ElementSet) -> Result<bool> {
    let group = graph.group();
    group.check_set(c)?;
    if c.is_empty() || c.is_full() {
        return Ok(false);
    }
    let mut closed = graph.connection().elems().clone();
    closed.insert(group.identity());
    let lhs = ring_multiply(group, &ElementMultiset::of_set(&closed), &ElementMultiset::of_set(c))?;
    Ok(lhs == ElementMultiset::of_set(&group.full_set()))
}

/// Total perfect code test: the certificate must be `(1,1)`.
pub fn is_total_perfect_code(graph: &CayleyGraph<'_>, c: &ElementSet) -> Result<bool> {
    graph.group().check_set(c)?;
    if c.is_empty() || c.is_full() {
        return Ok(false);
    }
    let total = check_regular_set(graph, c)?.ab() == Some((1, 1));
    if total {
        assert!(c.len().is_multiple_of(2), "total perfect code of odd size");
    }
    Ok(total)
}

/// Subgroup criterion: `H` is `(a,b)`-regular in `Cay(G,S)` iff
/// `a = |S ∩ H|` and `(S \ H)·H = b (G \ H)`.
pub fn check_subgroup_regular(group: &GroupTable, s: &ConnectionSet, h: &ElementSet) -> Result<Regularity> {
    group.require_subgroup(h)?;
    group.check_set(s.elems())?;
    if h.is_full() {
        return Err(Error::ImproperSubset);
    }
    let a = s.elems().intersection(h).len();
    let outside_part = ElementMultiset::of_set(&s.elems().difference(h));
    let product = ring_multiply(group, &outside_part, &ElementMultiset::of_set(h))?;
    Ok(certify_counts(group.order(), s.len(), h, |x| {
        if h.contains(x) {
            // (S \ H)·H vanishes on H; members of H see exactly S ∩ H.
            debug_assert_eq!(product.get(x), 0);
            a
        } else {
            product.get(x) as usize
        }
    }))
}

/// Outcome of the involution condition: for every `g` with `g^2 ∈ H`
/// there is `h ∈ H` with `(gh)^2 = e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition1 {
    pub holds: bool,
    /// Least `g` violating the condition.
    pub witness: Option<usize>,
}

pub fn condition1_holds(group: &GroupTable, h: &ElementSet) -> Result<Condition1> {
    group.require_subgroup(h)?;
    let members = h.to_vec();
    for g in 0..group.order() {
        if !h.contains(group.mul(g, g)) {
            continue;
        }
        let ok = members.iter().any(|&x| {
            let gh = group.mul(g, x);
            group.mul(gh, gh) == group.identity()
        });
        if !ok {
            return Ok(Condition1 {
                holds: false,
                witness: Some(g),
            });
        }
    }
    Ok(Condition1 {
        holds: true,
        witness: None,
    })
}
