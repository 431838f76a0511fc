//! Two-part equitable partitions `{C, V \ C}` of Cayley graphs.
//!
//! For a `k`-regular graph, `C` is `(a,b)`-regular exactly when the
//! partition is equitable with quotient matrix `[[a, k-a], [b, k-b]]`; the
//! non-`k` eigenvalue is `μ = a - b = trace - k`, and `μ` must be an
//! eigenvalue of the adjacency matrix. Eigenvalue membership is decided
//! exactly with a fraction-free determinant.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::ElementSet;
use crate::regular::{check_regular_set, Regularity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    pub entries: [[i64; 2]; 2],
    pub degree: i64,
}

impl QuotientMatrix {
    pub fn trace(&self) -> i64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn row_sums(&self) -> [i64; 2] {
        [
            self.entries[0][0] + self.entries[0][1],
            self.entries[1][0] + self.entries[1][1],
        ]
    }
}

/// Quotient matrix of `{C, V \ C}`, or `None` when the partition is not equitable.
pub fn quotient_matrix(graph: &CayleyGraph<'_>, c: &ElementSet) -> Result<Option<QuotientMatrix>> {
    let k = graph.degree() as i64;
    Ok(match check_regular_set(graph, c)? {
        Regularity::Regular(cert) => {
            let (a, b) = (cert.a as i64, cert.b as i64);
            Some(QuotientMatrix {
                entries: [[a, k - a], [b, k - b]],
                degree: k,
            })
        }
        Regularity::NotRegular(_) => None,
    })
}

/// `μ = trace(M) - k`.
pub fn mu_from_quotient(m: &QuotientMatrix) -> i64 {
    m.trace() - m.degree
}

/// `a = ((k - μ)|C| + μ|V|) / |V|` and `b = (k - μ)|C| / |V|`, evaluated
/// exactly. Non-integral results are an error, never rounded.
pub fn ab_from_mu(k: i64, mu: Ratio<i64>, size_c: i64, size_v: i64) -> Result<(i64, i64)> {
    if !(size_v > size_c && size_c > 0) {
        return Err(Error::OutOfRange(format!(
            "need |V| > |C| > 0, got |C| = {size_c}, |V| = {size_v}"
        )));
    }
    let k = Ratio::from_integer(k);
    let c = Ratio::from_integer(size_c);
    let v = Ratio::from_integer(size_v);
    let a = ((k - mu) * c + mu * v) / v;
    let b = ((k - mu) * c) / v;
    if !a.is_integer() || !b.is_integer() {
        return Err(Error::OutOfRange(format!("no integer (a,b): a = {a}, b = {b}")));
    }
    Ok((a.to_integer(), b.to_integer()))
}

/// Whether `λ` is an eigenvalue of the adjacency matrix, i.e.
/// `det(A - λI) = 0`.
pub fn eigenvalue_membership(graph: &CayleyGraph<'_>, lambda: i64) -> bool {
    let mut m = graph.adjacency_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    determinant_is_zero(m)
}

pub fn determinant_is_zero(m: Vec<Vec<i64>>) -> bool {
    match bareiss_i128(&m) {
        Some(d) => d == 0,
        None => bareiss_big(&m) == BigInt::from(0),
    }
}

/// Exact determinant.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    match bareiss_i128(m) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(m),
    }
}

/// Fraction-free elimination in `i128`; `None` on overflow.
fn bareiss_i128(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
}

fn bareiss_big(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let zero = BigInt::from(0);
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == zero {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != zero) else {
                return zero;
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 {
        BigInt::from(1)
    } else {
        a[n - 1][n - 1].clone()
    };
    if negate {
        -d
    } else {
        d
    }
}
