//! Builder tables checked against independent concrete realizations.

use regsets::{build_group, GroupTable};

/// 2x2 complex matrices; the generalized quaternion group of order 4m sits
/// in SU(2) as x = diag(z, 1/z), y = [[0,-1],[1,0]] with z = exp(pi i / m).
type C = (f64, f64);
type M2 = [[C; 2]; 2];

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

fn mmul(a: &M2, b: &M2) -> M2 {
    let mut out = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = cadd(cmul(a[i][0], b[0][j]), cmul(a[i][1], b[1][j]));
        }
    }
    out
}

fn mdist(a: &M2, b: &M2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j].0 - b[i][j].0).abs()).max((a[i][j].1 - b[i][j].1).abs());
        }
    }
    d
}

fn genq_matrices(m: usize) -> Vec<M2> {
    let theta = std::f64::consts::PI / m as f64;
    let x_pow = |k: usize| -> M2 {
        let t = theta * k as f64;
        [[(t.cos(), t.sin()), (0.0, 0.0)], [(0.0, 0.0), (t.cos(), -t.sin())]]
    };
    let y: M2 = [[(0.0, 0.0), (-1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]];
    let mut out: Vec<M2> = (0..2 * m).map(x_pow).collect();
    out.extend((0..2 * m).map(|k| mmul(&x_pow(k), &y)));
    out
}

fn assert_table_matches(g: &GroupTable, product: impl Fn(usize, usize) -> usize) {
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(
                g.mul(a, b),
                product(a, b),
                "{}: {} * {}",
                g.spec(),
                g.name(a),
                g.name(b)
            );
        }
    }
}

#[test]
fn generalized_quaternion_matches_su2() {
    for n in [8, 12, 16, 20, 24, 28] {
        let m = n / 4;
        let g = build_group(&format!("genq:{n}")).unwrap();
        let mats = genq_matrices(m);
        // the matrices are pairwise distinct, so nearest match identifies the product
        for i in 0..mats.len() {
            for j in 0..i {
                assert!(mdist(&mats[i], &mats[j]) > 1e-6);
            }
        }
        assert_table_matches(&g, |a, b| {
            let p = mmul(&mats[a], &mats[b]);
            (0..mats.len()).find(|&k| mdist(&p, &mats[k]) < 1e-9).unwrap()
        });
        assert_eq!(g.name(2 * m), "y");
        assert_eq!(g.name(1), "x");
    }
}

/// Quaternion units as integer 4-vectors (1, i, j, k).
fn quat_mul(p: [i64; 4], q: [i64; 4]) -> [i64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

#[test]
fn q8_matches_quaternion_arithmetic() {
    let g = build_group("q8").unwrap();
    let units: Vec<[i64; 4]> = vec![
        [1, 0, 0, 0],
        [-1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, -1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, -1, 0],
        [0, 0, 0, 1],
        [0, 0, 0, -1],
    ];
    assert_eq!(g.names(), ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]);
    assert_table_matches(&g, |a, b| {
        let p = quat_mul(units[a], units[b]);
        units.iter().position(|&u| u == p).unwrap()
    });
}

#[test]
fn dihedral_matches_polygon_symmetries() {
    // the action on n points is faithful only for n >= 3
    for n in 3..=12usize {
        let g = build_group(&format!("dihedral:{n}")).unwrap();
        // element i < n is the rotation k -> k + i, element n + i is k -> i - k
        let perm = |e: usize| -> Vec<usize> {
            (0..n)
                .map(|k| if e < n { (k + e) % n } else { (e - n + n - k) % n })
                .collect()
        };
        let perms: Vec<Vec<usize>> = (0..2 * n).map(perm).collect();
        assert_table_matches(&g, |a, b| {
            // (ab)(k) = a(b(k))
            let p: Vec<usize> = (0..n).map(|k| perms[a][perms[b][k]]).collect();
            perms.iter().position(|q| *q == p).unwrap()
        });
    }
    let klein = build_group("dihedral:2").unwrap();
    assert_table_matches(&klein, |a, b| a ^ b);
}

#[test]
fn cyclic_and_products_match_modular_arithmetic() {
    for n in 1..=24usize {
        let g = build_group(&format!("cyclic:{n}")).unwrap();
        assert_table_matches(&g, |a, b| (a + b) % n);
    }
    for (m, n) in [(2, 2), (2, 3), (3, 4), (4, 6)] {
        let g = build_group(&format!("product(cyclic:{m},cyclic:{n})")).unwrap();
        assert_table_matches(&g, |p, q| ((p / n + q / n) % m) * n + (p % n + q % n) % n);
    }
}

#[test]
fn permutation_generators_close_to_the_generated_group() {
    let s3 = build_group("perm:(1,2,3);(1,2)").unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.name(0), "()");
    let s4 = build_group("perm:(1,2,3,4);(1,2)").unwrap();
    assert_eq!(s4.order(), 24);
    let a4 = build_group("perm:(1,2,3);(2,3,4)").unwrap();
    assert_eq!(a4.order(), 12);
    // A4 has a normal Klein four-subgroup and no subgroup of order 6
    let subgroups = a4.subgroups(128).unwrap();
    assert!(subgroups.iter().all(|h| h.len() != 6));
    assert_eq!(
        a4.proper_normal_subgroups(128)
            .unwrap()
            .iter()
            .filter(|h| h.len() == 4)
            .count(),
        1
    );
}
