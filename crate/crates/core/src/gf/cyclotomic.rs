use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of Z[zeta_p], zeta_p a primitive p-th root of unity, stored as
/// the coefficients of `1, zeta, ..., zeta^{p-1}`.
///
/// The only integer relation among these powers is `1 + zeta + ... +
/// zeta^{p-1} = 0`, so subtracting the minimum coefficient gives a unique
/// representative. Every value is kept in that form; derived equality is
/// therefore exact equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    /// Canonicalizes an arbitrary coefficient vector of length p.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "cyclotomic order must be positive");
        let min = *coeffs.iter().min().unwrap();
        if min != 0 {
            coeffs.iter_mut().for_each(|c| *c -= min);
        }
        CyclotomicInt { coeffs }
    }

    pub fn zero(p: u32) -> Self {
        CyclotomicInt { coeffs: vec![0; p as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut c = vec![0; p as usize];
        c[0] = n;
        Self::from_coeffs(c)
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut c = vec![0; p as usize];
        c[(k % p as u64) as usize] = 1;
        CyclotomicInt { coeffs: c }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Canonical coefficients (minimum coefficient is 0).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let c = &self.coeffs;
        if c[1..].iter().all(|&x| x == 0) {
            Some(c[0])
        } else if c[0] == 0 && c[1..].iter().all(|&x| x == c[1]) {
            Some(-c[1])
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// Floating-point value `(re, im)` for diagnostics.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.coeffs.len() as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &c)| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / p;
            (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
        })
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "mixing cyclotomic integers of different orders"
        );
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt{:?}", self.coeffs)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_order(rhs);
        CyclotomicInt::from_coeffs(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Add for CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: CyclotomicInt) -> CyclotomicInt {
        &self + &rhs
    }
}

impl AddAssign<&CyclotomicInt> for CyclotomicInt {
    fn add_assign(&mut self, rhs: &CyclotomicInt) {
        *self = &*self + rhs;
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_order(rhs);
        let p = self.coeffs.len();
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CyclotomicInt::from_coeffs(out)
    }
}

impl Mul for CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: CyclotomicInt) -> CyclotomicInt {
        &self * &rhs
    }
}

impl std::iter::Sum for CyclotomicInt {
    /// Panics on an empty iterator, since the order is unknown.
    fn sum<I: Iterator<Item = CyclotomicInt>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty sequence of cyclotomic integers");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
