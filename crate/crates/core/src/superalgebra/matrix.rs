//! Dense square matrices over `Rational` and `Grassmann`, row-major.

use super::grassmann::Grassmann;
use super::rational::Rational;

/// Gauss–Jordan inverse of an n×n rational matrix; `None` if singular.
pub fn rational_inverse(m: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut a = m.to_vec();
    let mut inv = identity_rational(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let p = a[col * n + col].recip()?;
        for k in 0..n {
            a[col * n + k] = &a[col * n + k] * &p;
            inv[col * n + k] = &inv[col * n + k] * &p;
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].clone();
            for k in 0..n {
                let t = &factor * &a[col * n + k];
                a[r * n + k] = &a[r * n + k] - &t;
                let t = &factor * &inv[col * n + k];
                inv[r * n + k] = &inv[r * n + k] - &t;
            }
        }
    }
    Some(inv)
}

pub fn identity_rational(n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = Rational::one();
    }
    v
}

pub fn rational_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j] += &(aik * bkj);
                }
            }
        }
    }
    out
}

pub fn identity_grassmann(n: usize) -> Vec<Grassmann> {
    let mut v = vec![Grassmann::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = Grassmann::one();
    }
    v
}

/// Plain product Σ_k a_ik b_kj (entries multiplied in order, no extra sign).
pub fn grassmann_mul(a: &[Grassmann], b: &[Grassmann], n: usize) -> Vec<Grassmann> {
    let mut out = vec![Grassmann::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j] = &out[i * n + j] + &(aik * bkj);
                }
            }
        }
    }
    out
}

pub fn grassmann_add(a: &[Grassmann], b: &[Grassmann]) -> Vec<Grassmann> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn grassmann_sub(a: &[Grassmann], b: &[Grassmann]) -> Vec<Grassmann> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn trace(a: &[Grassmann], n: usize) -> Grassmann {
    (0..n).fold(Grassmann::zero(), |acc, i| &acc + &a[i * n + i])
}

pub fn is_zero(a: &[Grassmann]) -> bool {
    a.iter().all(Grassmann::is_zero)
}

pub fn body(a: &[Grassmann]) -> Vec<Rational> {
    a.iter().map(Grassmann::body).collect()
}

pub fn from_rational(a: &[Rational]) -> Vec<Grassmann> {
    a.iter().cloned().map(Grassmann::scalar).collect()
}

/// Inverse of a Grassmann matrix with invertible rational body, by the
/// terminating Neumann series around the body.
pub fn grassmann_inverse(a: &[Grassmann], n: usize) -> Option<Vec<Grassmann>> {
    let b_inv = from_rational(&rational_inverse(&body(a), n)?);
    let soul: Vec<Grassmann> = a.iter().map(Grassmann::soul).collect();
    // A⁻¹ = Σ_k (−B⁻¹N)^k B⁻¹
    let step: Vec<Grassmann> = grassmann_mul(&b_inv, &soul, n).iter().map(|x| -x).collect();
    let mut term = b_inv.clone();
    let mut acc = b_inv;
    loop {
        term = grassmann_mul(&step, &term, n);
        if is_zero(&term) {
            return Some(acc);
        }
        acc = grassmann_add(&acc, &term);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_round_trip() {
        let m: Vec<Rational> = [2, 1, 1, 1].iter().map(|&x| Rational::from_int(x)).collect();
        let inv = rational_inverse(&m, 2).unwrap();
        assert_eq!(rational_mul(&m, &inv, 2), identity_rational(2));
        let sing: Vec<Rational> = [1, 2, 2, 4].iter().map(|&x| Rational::from_int(x)).collect();
        assert!(rational_inverse(&sing, 2).is_none());
    }

    #[test]
    fn grassmann_inverse_round_trip() {
        let t = |i| Grassmann::generator(i);
        let a = vec![
            &Grassmann::from_int(2) + &(&t(0) * &t(1)),
            t(0).clone(),
            t(1).clone(),
            Grassmann::from_int(3),
        ];
        let inv = grassmann_inverse(&a, 2).unwrap();
        assert_eq!(grassmann_mul(&a, &inv, 2), identity_grassmann(2));
        assert_eq!(grassmann_mul(&inv, &a, 2), identity_grassmann(2));
    }
}
