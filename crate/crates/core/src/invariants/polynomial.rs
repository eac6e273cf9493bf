use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::matrix::IntMatrix;

/// Integer polynomial, coefficients highest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coefficients: Vec<BigInt>,
}

impl Polynomial {
    /// Leading zeros are dropped; the zero polynomial is `[0]`.
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let first = coefficients.iter().position(|c| !c.is_zero());
        let coefficients = match first {
            Some(i) => coefficients[i..].to_vec(),
            None => vec![BigInt::zero()],
        };
        Polynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Polynomial {
            coefficients: vec![BigInt::one()],
        }
    }

    /// `prod (x - root)^multiplicity`
    pub fn from_roots(roots: &[(i64, u32)]) -> Self {
        roots.iter().fold(Self::one(), |acc, &(root, mult)| {
            let linear = Self::from_i64(&[1, -root]);
            (0..mult).fold(acc, |p, _| &p * &linear)
        })
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients[0].is_one()
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let n = m.order();
        let mut acc = IntMatrix::zeros(n);
        for c in &self.coefficients {
            acc = &acc * m;
            for i in 0..n {
                let diag = acc.get(i, i) + c;
                acc.set(i, i, diag);
            }
        }
        acc
    }

    /// Numeric roots sorted by real part, from the companion matrix eigenvalues.
    ///
    /// Only the real parts are returned; the polynomials in this crate are
    /// characteristic polynomials of symmetric matrices, whose roots are real.
    pub fn numeric_roots(&self) -> Vec<f64> {
        let lead = self.coefficients[0].to_f64().unwrap_or(f64::NAN);
        let mut coeffs: Vec<f64> = self
            .coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
            .collect();
        let mut roots = Vec::new();
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
            roots.push(0.0);
        }
        let n = coeffs.len() - 1;
        if n > 0 {
            let companion = DMatrix::from_fn(n, n, |i, j| {
                if i == 0 {
                    -coeffs[j + 1]
                } else if i == j + 1 {
                    1.0
                } else {
                    0.0
                }
            });
            roots.extend(companion.complex_eigenvalues().iter().map(|z| z.re));
        }
        roots.sort_by(f64::total_cmp);
        roots
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coefficients.iter().map(ToString::to_string))
    }
}

/// `det(xI - m)` by the Faddeev-LeVerrier recursion.
///
/// Runs in `i128` and restarts in `BigInt` if any intermediate overflows.
pub fn char_poly(m: &IntMatrix) -> Polynomial {
    let n = m.order();
    let coefficients = m
        .to_i128_entries()
        .and_then(|entries| faddeev_leverrier(&entries, n))
        .map(|cs| cs.into_iter().map(BigInt::from).collect())
        .unwrap_or_else(|| faddeev_leverrier(m.entries(), n).expect("BigInt arithmetic cannot overflow"));
    Polynomial { coefficients }
}

/// Returns `None` on overflow. The division by `k` at step `k` is exact over
/// the integers; a nonzero remainder is a bug, not an input condition.
fn faddeev_leverrier<T>(a: &[T], n: usize) -> Option<Vec<T>>
where
    T: Clone + Zero + One + PartialEq + From<i32> + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv,
{
    let mut coefficients = Vec::with_capacity(n + 1);
    coefficients.push(T::one());
    // a_m holds A * M_{k-1}; M_0 = 0
    let mut a_m = vec![T::zero(); n * n];
    for k in 1..=n {
        let last = coefficients.last().unwrap().clone();
        let mut m_k = a_m;
        for i in 0..n {
            let d = &mut m_k[i * n + i];
            *d = d.checked_add(&last)?;
        }
        a_m = mat_mul(a, &m_k, n)?;
        let trace = (0..n).try_fold(T::zero(), |acc, i| acc.checked_add(&a_m[i * n + i]))?;
        let k_t = T::from(k as i32);
        let quotient = trace.checked_div(&k_t)?;
        assert!(
            quotient.checked_mul(&k_t)? == trace,
            "trace not divisible by step index"
        );
        coefficients.push(T::zero().checked_sub(&quotient)?);
    }
    Some(coefficients)
}

fn mat_mul<T>(a: &[T], b: &[T], n: usize) -> Option<Vec<T>>
where
    T: Clone + Zero + CheckedAdd + CheckedMul,
{
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for l in 0..n {
            let x = &a[i * n + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let prod = x.checked_mul(&b[l * n + j])?;
                let cell = &mut out[i * n + j];
                *cell = cell.checked_add(&prod)?;
            }
        }
    }
    Some(out)
}
