//! Dense integer polynomial helpers on coefficient slices (lowest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Exact quotient `a / b` in `Z[v]`, or `None` when `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lb = b.last()?.clone();
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&a);
    if c.is_zero() || c.is_one() {
        return a;
    }
    a.into_iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^k a mod b` with integer arithmetic.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = primitive(trim(r));
    }
    r
}

/// Primitive greatest common divisor in `Z[v]` with positive leading coefficient.
///
/// Content is discarded, so the result is the gcd over `Q[v]` scaled to be
/// primitive.
pub(crate) fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(trim(a.to_vec()));
    let mut y = primitive(trim(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.last().is_some_and(Signed::is_negative) {
        x = x.into_iter().map(|c| -c).collect();
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (1+v)(2-v) and (1+v)(3+v^2)
        let a = p(&[2, 1, -1]);
        let b = p(&[3, 3, 1, 1]);
        assert_eq!(primitive_gcd(&a, &b), p(&[1, 1]));
        assert_eq!(primitive_gcd(&p(&[4, 6]), &p(&[6, 9])), p(&[2, 3]));
        assert_eq!(primitive_gcd(&p(&[1, 1]), &p(&[1, -1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&p(&[2, 1, -1]), &p(&[1, 1])), Some(p(&[2, -1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
        assert_eq!(div_exact(&p(&[2, 2]), &p(&[2])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[1, 2]), &p(&[2])), None);
    }
}
