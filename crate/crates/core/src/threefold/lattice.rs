//! Integer lattice helpers: unimodular completion, inertia of symmetric
//! forms, and short-vector enumeration for positive definite forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};

pub type Matrix = Vec<Vec<BigInt>>;

/// A unimodular matrix whose first column is the primitive vector `v`.
pub fn complete_to_basis(v: &[BigInt]) -> Result<Matrix> {
    let n = v.len();
    let mut w = v.to_vec();
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_one() {
        return Err(Error::Domain(format!("vector is not primitive (content {g})")));
    }
    let mut u: Matrix = (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    // Invariant: U·w equals the original vector.
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.len() == 1 {
            break;
        }
        let i = *nonzero.iter().min_by_key(|&&i| w[i].abs()).expect("nonempty");
        for &j in &nonzero {
            if j == i {
                continue;
            }
            let k = w[j].div_floor(&w[i]);
            w[j] = &w[j] - &k * &w[i];
            for row in u.iter_mut() {
                let add = &k * &row[j];
                row[i] += add;
            }
        }
    }
    let i = (0..n).find(|&i| !w[i].is_zero()).expect("nonzero vector");
    for row in u.iter_mut() {
        row.swap(0, i);
    }
    w.swap(0, i);
    if w[0].is_negative() {
        for row in u.iter_mut() {
            row[0] = -&row[0];
        }
    }
    Ok(u)
}

pub fn transform(g: &Matrix, u: &Matrix) -> Matrix {
    let n = g.len();
    let mut gu = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                gu[i][j] += &g[i][k] * &u[k][j];
            }
        }
    }
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += &u[k][i] * &gu[k][j];
            }
        }
    }
    out
}

/// Characteristic polynomial coefficients `det(xI − A)`, ascending degree,
/// by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn sign_changes(c: &[Rational]) -> usize {
    let signs: Vec<i8> = c.iter().map(rational::sign).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// (positive, negative, zero) eigenvalue counts of a symmetric matrix, read
/// off the characteristic polynomial with Descartes' rule (exact because all
/// roots are real).
pub fn inertia(a: &[Vec<Rational>]) -> (usize, usize, usize) {
    let c = char_poly(a);
    let zero = c.iter().take_while(|x| x.is_zero()).count();
    let pos = sign_changes(&c);
    let neg_coeffs: Vec<Rational> =
        c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect();
    let neg = sign_changes(&neg_coeffs);
    (pos, neg, zero)
}

/// Minimum of `xᵀMx` over nonzero integer vectors, for positive definite `M`.
pub fn min_positive_value(m: &Matrix) -> Result<BigInt> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Domain("empty form".into()));
    }
    let mut q: Vec<Vec<Rational>> =
        m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::InvalidModel("descended form is not positive definite".into()));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut best = (0..n).map(|i| m[i][i].clone()).min().expect("nonempty");
    let mut x = vec![BigInt::zero(); n];
    search(&q, n - 1, &Rational::zero(), &mut x, &mut best);
    Ok(best)
}

fn search(q: &[Vec<Rational>], i: usize, used: &Rational, x: &mut Vec<BigInt>, best: &mut BigInt) {
    let n = q.len();
    let mut c = Rational::zero();
    for j in i + 1..n {
        c += &q[i][j] * Rational::from_integer(x[j].clone());
    }
    let room = Rational::from_integer(best.clone()) - used;
    if room.is_negative() {
        return;
    }
    let t = &room / &q[i][i];
    let s = Rational::from_integer(rational::floor(&t).sqrt() + 1);
    let lo = rational::ceil(&(-&c - &s));
    let hi = rational::floor(&(-&c + &s));
    let mut xi = lo;
    while xi <= hi {
        let shifted = Rational::from_integer(xi.clone()) + &c;
        let val = used + &q[i][i] * &shifted * &shifted;
        if val <= Rational::from_integer(best.clone()) {
            x[i] = xi.clone();
            if i == 0 {
                if x.iter().any(|v| !v.is_zero()) && val.is_positive() {
                    let v = val.to_integer();
                    if v < *best {
                        *best = v;
                    }
                }
            } else {
                search(q, i - 1, &val, x, best);
            }
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}
