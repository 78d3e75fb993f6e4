//! Coordinate vectors as plain scalar slices.

use super::{Field, Scalar};

pub fn zero(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero(field, n);
    v[i] = field.one();
    v
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `v += s * w`
pub fn axpy(v: &mut [Scalar], s: &Scalar, w: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x += &(s * y);
        }
    }
}

/// Renders a vector as a combination of `e_1, e_2, ...`, e.g. `2*e5` or `e1 - 1/2*e3`.
pub fn format_basis(v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&format!("e{}", i + 1));
        } else {
            out.push_str(&format!("{}*e{}", mag, i + 1));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
