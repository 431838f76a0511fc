#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use regsets::construction::OrderedS0;
use regsets::{ElementSet, GroupTable};

/// Every group of order at most `max` from the cyclic, dihedral,
/// generalized quaternion, Q8 and products-of-cyclics families.
pub fn family_specs(max: usize) -> Vec<String> {
    let mut specs = Vec::new();
    for n in 1..=max {
        specs.push(format!("cyclic:{n}"));
    }
    for n in 2..=max / 2 {
        specs.push(format!("dihedral:{n}"));
    }
    for n in (8..=max).step_by(4) {
        specs.push(format!("genq:{n}"));
    }
    if max >= 8 {
        specs.push("q8".into());
    }
    for m in 2..=max {
        for n in m..=max {
            if m * n <= max {
                specs.push(format!("product(cyclic:{m},cyclic:{n})"));
            }
        }
    }
    for (p, q, r) in [
        (2, 2, 2),
        (2, 2, 3),
        (2, 2, 4),
        (2, 2, 5),
        (2, 2, 6),
        (2, 3, 3),
        (2, 3, 4),
    ] {
        if p * q * r <= max {
            specs.push(format!("product(cyclic:{p},product(cyclic:{q},cyclic:{r}))"));
        }
    }
    for r in [2, 3] {
        if 8 * r <= max {
            specs.push(format!(
                "product(cyclic:2,product(cyclic:2,product(cyclic:2,cyclic:{r})))"
            ));
        }
    }
    specs
}

/// Inverse found by scanning the table rather than using the cached inverse.
pub fn inverse_by_scan(g: &GroupTable, x: usize) -> usize {
    (0..g.order()).find(|&y| g.mul(x, y) == g.identity()).unwrap()
}

/// `(a,b)` straight from the definition: `y ~ x` iff `y x^-1 ∈ S`.
pub fn oracle_ab(g: &GroupTable, s: &ElementSet, c: &ElementSet) -> Option<(usize, usize)> {
    let n = g.order();
    let mut inside = None;
    let mut outside = None;
    for x in 0..n {
        let xi = inverse_by_scan(g, x);
        let k = (0..n).filter(|&y| c.contains(y) && s.contains(g.mul(y, xi))).count();
        let slot = if c.contains(x) { &mut inside } else { &mut outside };
        if *slot.get_or_insert(k) != k {
            return None;
        }
    }
    Some((inside?, outside?))
}

/// Uniformly random inverse-closed subset of `G \ {e}`.
pub fn random_connection_set<R: Rng>(g: &GroupTable, rng: &mut R) -> ElementSet {
    let mut s = g.empty_set();
    for x in 1..g.order() {
        let xi = g.inv(x);
        if x <= xi && rng.gen_bool(0.5) {
            s.insert(x);
            s.insert(xi);
        }
    }
    s
}

/// Random valid ordered transversal, or `None` when none exists.
pub fn random_s0<R: Rng>(g: &GroupTable, h: &ElementSet, rng: &mut R) -> Option<OrderedS0> {
    let cosets = g.left_cosets(h).unwrap();
    let mut done = vec![false; cosets.index()];
    done[cosets.coset_of(0)] = true;
    let mut reps = Vec::new();
    let mut invs = Vec::new();
    let mut order: Vec<usize> = (0..cosets.index()).collect();
    order.shuffle(rng);
    for ci in order {
        if done[ci] {
            continue;
        }
        let members = cosets.cosets[ci].to_vec();
        let partner = cosets.coset_of(g.inv(members[0]));
        if partner == ci {
            let choices: Vec<usize> = members.iter().copied().filter(|&x| g.is_involution(x)).collect();
            invs.push(*choices.choose(rng)?);
        } else {
            reps.push(*members.choose(rng).unwrap());
            done[partner] = true;
        }
        done[ci] = true;
    }
    invs.shuffle(rng);
    let mut elems = reps.clone();
    elems.extend(reps.iter().rev().map(|&x| g.inv(x)));
    elems.extend(invs);
    Some(OrderedS0 { elems, m: reps.len() })
}

/// A random inverse-closed subset of `H \ {e}` of size `a`, if one exists.
pub fn random_k<R: Rng>(g: &GroupTable, h: &ElementSet, a: usize, rng: &mut R) -> Option<ElementSet> {
    let mut invs: Vec<usize> = h.iter().filter(|&x| x != 0 && g.is_involution(x)).collect();
    let mut pairs: Vec<usize> = h.iter().filter(|&x| x < g.inv(x)).collect();
    invs.shuffle(rng);
    pairs.shuffle(rng);
    for n_pairs in (0..=pairs.len().min(a / 2)).rev() {
        let n_inv = a - 2 * n_pairs;
        if n_inv <= invs.len() {
            let mut k = g.empty_set();
            for &x in &pairs[..n_pairs] {
                k.insert(x);
                k.insert(g.inv(x));
            }
            for &x in &invs[..n_inv] {
                k.insert(x);
            }
            return Some(k);
        }
    }
    None
}
