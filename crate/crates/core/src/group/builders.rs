//! Group-spec mini-language: `cyclic:n`, `dihedral:n`, `genq:n`, `q8`,
//! `product(A,B)`, `perm:<generators>` and `table:<path>`.
//!
//! Canonical element orders:
//! - `cyclic:n`: `0, 1, ..., n-1`
//! - `dihedral:n` (order 2n): `e, r, ..., r{n-1}, s, rs, ..., r{n-1}s`
//! - `genq:n` (order n = 4m): `e, x, ..., x{2m-1}, y, xy, ..., x{2m-1}y`
//! - `q8`: `1, -1, i, -i, j, -j, k, -k`
//! - `product(A,B)`: pairs `(a,b)` with index `a * |B| + b`
//! - `perm:...`: permutations sorted by image array (identity `()` first)

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{split_top_level, GroupTable, Notation};
use crate::error::{Error, Result};

fn malformed(spec: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn parse_param(spec: &str, text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| malformed(spec, format!("`{text}` is not a nonnegative integer")))
}

/// Builds a group from a spec string.
pub fn build_group(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    if spec == "q8" {
        return quaternion8();
    }
    if let Some(inner) = spec.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top_level(inner, ',');
        let [a, b] = parts.as_slice() else {
            return Err(malformed(spec, "product takes exactly two factors"));
        };
        return direct_product(build_group(a)?, build_group(b)?);
    }
    let Some((family, arg)) = spec.split_once(':') else {
        return Err(malformed(spec, "expected `family:parameter`"));
    };
    match family {
        "cyclic" => {
            let n = parse_param(spec, arg)?;
            if n < 1 {
                return Err(malformed(spec, "cyclic order must be at least 1"));
            }
            cyclic(n)
        }
        "dihedral" => {
            let n = parse_param(spec, arg)?;
            if n < 2 {
                return Err(malformed(spec, "dihedral:n needs n >= 2"));
            }
            dihedral(n)
        }
        "genq" => {
            let n = parse_param(spec, arg)?;
            if n < 8 || n % 4 != 0 {
                return Err(malformed(spec, "genq:n needs n divisible by 4 and n >= 8"));
            }
            generalized_quaternion(n / 4)
        }
        "perm" => permutation_group(spec, arg),
        "table" => super::file::load_table_file(arg, super::file::DEFAULT_ASSOCIATIVITY_CAP),
        _ => Err(malformed(spec, format!("unknown family `{family}`"))),
    }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    let names = (0..n).map(|k| k.to_string()).collect();
    GroupTable::from_fn(format!("cyclic:{n}"), names, Notation::Plain, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`: rotations `r^k` then reflections `r^k s`.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    let mut names = Vec::with_capacity(2 * n);
    for k in 0..n {
        names.push(if k == 0 { "e".to_string() } else { power_name("r", k) });
    }
    for k in 0..n {
        names.push(format!("{}s", power_name("r", k)));
    }
    let notation = Notation::Words(vec![("r".into(), 1), ("s".into(), n)]);
    GroupTable::from_fn(format!("dihedral:{n}"), names, notation, |p, q| {
        let (a, e1) = (p % n, p / n);
        let (c, e2) = (q % n, q / n);
        // s r^c = r^-c s
        let rot = if e1 == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((e1 + e2) % 2)
    })
}

/// Generalized quaternion group `<x, y | x^2m = e, y^2 = x^m, y^-1 x y = x^-1>`.
pub fn generalized_quaternion(m: usize) -> Result<GroupTable> {
    let two_m = 2 * m;
    let mut names = Vec::with_capacity(2 * two_m);
    for k in 0..two_m {
        names.push(if k == 0 { "e".to_string() } else { power_name("x", k) });
    }
    for k in 0..two_m {
        names.push(format!("{}y", power_name("x", k)));
    }
    let notation = Notation::Words(vec![("x".into(), 1), ("y".into(), two_m)]);
    GroupTable::from_fn(format!("genq:{}", 4 * m), names, notation, |p, q| {
        let (a, e1) = (p % two_m, p / two_m);
        let (c, e2) = (q % two_m, q / two_m);
        match (e1, e2) {
            (0, _) => (a + c) % two_m + two_m * e2,
            // y x^c = x^-c y
            (_, 0) => (a + two_m - c) % two_m + two_m,
            // x^a y x^c y = x^(a-c) y^2 = x^(a-c+m)
            _ => (a + two_m - c + m) % two_m,
        }
    })
}

pub fn quaternion8() -> Result<GroupTable> {
    // index = 2 * unit + negative, units 1, i, j, k
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    let notation = Notation::Words(vec![("i".into(), 2), ("j".into(), 4), ("k".into(), 6)]);
    GroupTable::from_fn("q8", names, notation, |p, q| {
        let (u, su) = (p / 2, p % 2 == 1);
        let (v, sv) = (q / 2, q % 2 == 1);
        let (w, sw) = UNIT[u][v];
        2 * w + usize::from(su ^ sv ^ sw)
    })
}

pub fn direct_product(a: GroupTable, b: GroupTable) -> Result<GroupTable> {
    let nb = b.order();
    let mut names = Vec::with_capacity(a.order() * nb);
    for x in 0..a.order() {
        for y in 0..nb {
            names.push(format!("({},{})", a.name(x), b.name(y)));
        }
    }
    let spec = format!("product({},{})", a.spec(), b.spec());
    let (a, b) = (Arc::new(a), Arc::new(b));
    let (ta, tb) = (a.clone(), b.clone());
    GroupTable::from_fn(spec, names, Notation::Product(a, b), move |p, q| {
        ta.mul(p / nb, q / nb) * nb + tb.mul(p % nb, q % nb)
    })
}

/// Parses cycle notation over points `1..=degree` into a 0-based image
/// array. Cycles are composed left to right.
pub(crate) fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("empty permutation".into());
    }
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = open.find(')').ok_or("unbalanced parentheses")?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let mut points = Vec::new();
        for tok in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let p: usize = tok.parse().map_err(|_| format!("bad point `{tok}`"))?;
            if p == 0 || p > degree {
                return Err(format!("point {p} outside 1..={degree}"));
            }
            if points.contains(&(p - 1)) {
                return Err(format!("point {p} repeated in cycle"));
            }
            points.push(p - 1);
        }
        let mut cycle: Vec<usize> = (0..degree).collect();
        for (i, &p) in points.iter().enumerate() {
            cycle[p] = points[(i + 1) % points.len()];
        }
        perm = perm.iter().map(|&x| cycle[x]).collect();
    }
    Ok(perm)
}

fn max_point(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

fn cycle_name(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cyc.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn permutation_group(spec: &str, arg: &str) -> Result<GroupTable> {
    let degree = max_point(arg).max(1);
    let mut gens = Vec::new();
    for g in arg.split(';').map(str::trim).filter(|g| !g.is_empty()) {
        gens.push(parse_cycles(g, degree).map_err(|e| malformed(spec, e))?);
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = vec![identity];
    while let Some(p) = queue.pop() {
        for g in &gens {
            // apply p, then g
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                queue.push(q);
            }
            if seen.len() > 1 << 16 {
                return Err(malformed(spec, "permutation group too large"));
            }
        }
    }
    let mut elems: Vec<Vec<usize>> = seen.into_iter().collect();
    elems.sort();
    let index: HashMap<Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let names = elems.iter().map(|p| cycle_name(p)).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|p| {
            elems
                .iter()
                .map(|q| index[&p.iter().map(|&x| q[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    GroupTable::from_rows(
        format!("perm:{}", arg.trim()),
        names,
        Notation::Perm { degree, index },
        &table,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genq20_relations() {
        let g = build_group("genq:20").unwrap();
        assert_eq!(g.order(), 20);
        let x = g.parse_element("x").unwrap();
        let y = g.parse_element("y").unwrap();
        assert_eq!(g.pow(x, 10), 0);
        assert_eq!(g.pow(y, 2), g.pow(x, 5));
        assert_eq!(g.mul(g.mul(g.inv(y), x), y), g.inv(x));
        assert_eq!(g.name(g.mul(y, g.pow(x, 2))), "x8y");
    }

    #[test]
    fn trivial_group() {
        let g = build_group("cyclic:1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn quaternion_products() {
        let g = build_group("q8").unwrap();
        let e = |s: &str| g.parse_element(s).unwrap();
        assert_eq!(g.mul(e("i"), e("j")), e("k"));
        assert_eq!(g.mul(e("j"), e("i")), e("-k"));
        assert_eq!(g.mul(e("i"), e("i")), e("-1"));
        assert_eq!(g.names(), ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(build_group("dihedral:5").unwrap().order(), 10);
        assert_eq!(
            build_group("product(cyclic:2,product(cyclic:2,cyclic:3))")
                .unwrap()
                .order(),
            12
        );
        let s3 = build_group("perm:(1,2,3);(1,2)").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.name(0), "()");
        assert_eq!(build_group("perm:").unwrap().order(), 1);
    }

    #[test]
    fn bad_specs() {
        for bad in [
            "cyclic:0",
            "dihedral:1",
            "genq:12x",
            "genq:6",
            "genq:4",
            "foo:3",
            "cyclic",
            "product(q8)",
            "perm:(1,1)",
            "perm:(1,2",
        ] {
            assert!(matches!(build_group(bad), Err(Error::MalformedSpec { .. })), "{bad}");
        }
        // 12 is a valid genq order (m = 3)
        assert_eq!(build_group("genq:12").unwrap().order(), 12);
    }

    #[test]
    fn all_families_associative() {
        for spec in [
            "cyclic:7",
            "dihedral:6",
            "genq:16",
            "genq:12",
            "q8",
            "product(dihedral:3,cyclic:2)",
            "perm:(1,2)(3,4);(1,3,5)",
        ] {
            let g = build_group(spec).unwrap();
            g.check_associative(usize::MAX).unwrap();
        }
    }
}
