//! Arithmetic in F_{p^d} for odd primes p.
//!
//! Elements are stored packed as `sum c_i p^i` where `c_0..c_{d-1}` are the
//! coefficients of the polynomial-basis representative. The packed value is
//! also the canonical enumeration order of the field.

mod constants;
mod cyclotomic;
pub(crate) mod poly;

pub use constants::{g1, g_const, Axis, QuadGaussSum};
pub use cyclotomic::CyclotomicInt;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_ORDER: u64 = 1 << 20;

const MAX_DEGREE: usize = 16;
const ETA_TABLE_LIMIT: u32 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// Position of the element in the canonical field order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FieldCtx {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    trace_basis: Vec<u32>,
    eta_table: OnceLock<Vec<i8>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("d", &self.d)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^d} with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared low-degree-first).
    pub fn new(p: u32, d: u32) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not an odd prime"
            )));
        }
        if d < 1 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(d)
            .filter(|&q| q <= MAX_ORDER && d as usize <= MAX_DEGREE)
            .ok_or_else(|| {
                Error::InvalidField(format!("{p}^{d} exceeds the supported order {MAX_ORDER}"))
            })? as u32;
        let modulus = poly::smallest_irreducible(p, d);
        let mut ctx = FieldCtx {
            p,
            d,
            q,
            modulus,
            trace_basis: Vec::new(),
            eta_table: OnceLock::new(),
        };
        ctx.trace_basis = (0..d)
            .map(|i| {
                let xi = ctx.elem_from_coeffs(&monomial(i as usize));
                let mut acc = FqElem::ZERO;
                let mut frob = xi;
                for _ in 0..d {
                    acc = ctx.add(acc, frob);
                    frob = ctx.pow(frob, p as u64);
                }
                debug_assert!(acc.0 < p, "trace must land in the prime field");
                acc.0
            })
            .collect();
        Ok(ctx)
    }

    /// Parses `"p"` or `"p^d"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("field spec `{spec}` is not of the form p or p^d"));
        let (p, d) = match spec.trim().split_once('^') {
            Some((p, d)) => (p.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => (spec.trim().parse().map_err(|_| bad())?, 1),
        };
        FieldCtx::new(p, d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low-degree-first (length d + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `"p"` for prime fields, `"p^d"` otherwise.
    pub fn spec_string(&self) -> String {
        if self.d == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.d)
        }
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Element at `index` in the canonical order.
    pub fn elem(&self, index: u32) -> Result<FqElem> {
        if index < self.q {
            Ok(FqElem(index))
        } else {
            Err(Error::Contract(format!("index {index} outside F_{}", self.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from polynomial-basis coefficients, low-degree-first.
    /// Coefficients are reduced mod p; at most d of them are allowed.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.d as usize {
            return Err(Error::Contract(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.d
            )));
        }
        let reduced: Vec<u32> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(self.p as i64) as u32)
            .collect();
        Ok(self.elem_from_coeffs(&reduced))
    }

    fn elem_from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        FqElem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.d)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn unpack(&self, a: FqElem) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut v = a.0;
        for c in out.iter_mut().take(self.d as usize) {
            *c = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, coeffs: &[u32]) -> FqElem {
        self.elem_from_coeffs(&coeffs[..self.d as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.d == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut s = [0u32; MAX_DEGREE];
        for i in 0..self.d as usize {
            s[i] = (x[i] + y[i]) % self.p;
        }
        self.pack(&s)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.d == 1 {
            return FqElem((self.p - a.0) % self.p);
        }
        let mut x = self.unpack(a);
        for c in x.iter_mut().take(self.d as usize) {
            *c = (self.p - *c) % self.p;
        }
        self.pack(&x)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.d == 1 {
            return FqElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let d = self.d as usize;
        let p = self.p as u64;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // x^d = -sum m_i x^i
        for k in (d..2 * d - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                prod[k - d + i] = (prod[k - d + i] + c * (p - m as u64)) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..d {
            out[i] = prod[i] as u32;
        }
        self.pack(&out)
    }

    pub fn pow(&self, a: FqElem, mut exp: u64) -> FqElem {
        let mut acc = FqElem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^{q-2}`.
    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q as u64));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace `a + a^p + ... + a^{p^{d-1}}`, as a residue in [0, p).
    pub fn trace(&self, a: FqElem) -> u32 {
        let c = self.unpack(a);
        let p = self.p as u64;
        self.trace_basis
            .iter()
            .zip(c.iter())
            .fold(0u64, |acc, (&t, &ci)| (acc + t as u64 * ci as u64) % p) as u32
    }

    /// The canonical additive character `zeta^{Tr(a)}`.
    pub fn additive_char(&self, a: FqElem) -> CyclotomicInt {
        CyclotomicInt::zeta_pow(self.p, self.trace(a) as u64)
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    pub fn quad_char(&self, a: FqElem) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.q <= ETA_TABLE_LIMIT {
            return self.eta_table()[a.0 as usize];
        }
        self.quad_char_by_pow(a)
    }

    fn quad_char_by_pow(&self, a: FqElem) -> i8 {
        if a.is_zero() {
            0
        } else if self.pow(a, (self.q as u64 - 1) / 2) == FqElem::ONE {
            1
        } else {
            -1
        }
    }

    fn eta_table(&self) -> &[i8] {
        self.eta_table.get_or_init(|| {
            (0..self.q)
                .map(|i| self.quad_char_by_pow(FqElem(i)))
                .collect()
        })
    }

    /// Lifts a residue mod p into the prime subfield.
    pub fn prime_elem(&self, c: u32) -> FqElem {
        FqElem(c % self.p)
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FieldCtx::parse(s)
    }
}

fn monomial(i: usize) -> Vec<u32> {
    let mut v = vec![0; i + 1];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32, d: u32) -> FieldCtx {
        FieldCtx::new(p, d).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(f(3, 1).modulus(), &[0, 1]);
        assert_eq!(f(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(f(3, 2).q(), 9);
        assert!(matches!(FieldCtx::new(2, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldCtx::new(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldCtx::new(3, 0), Err(Error::InvalidField(_))));
        assert!(FieldCtx::new(3, 13).is_err());
    }

    #[test]
    fn parse_spec() {
        assert_eq!(FieldCtx::parse("3^2").unwrap().q(), 9);
        assert_eq!(FieldCtx::parse("5").unwrap().q(), 5);
        assert_eq!(FieldCtx::parse("3^2").unwrap().spec_string(), "3^2");
        assert!(matches!(FieldCtx::parse("x^2"), Err(Error::Parse(_))));
        assert!(matches!(FieldCtx::parse("4"), Err(Error::InvalidField(_))));
    }

    #[test]
    fn small_arithmetic() {
        let f3 = f(3, 1);
        assert_eq!(f3.inv(f3.from_int(2)).unwrap(), f3.from_int(2));
        assert!(matches!(f3.inv(FqElem::ZERO), Err(Error::DivisionByZero(3))));
        let f5 = f(5, 1);
        assert_eq!(f5.pow(f5.from_int(2), 3), f5.from_int(3));
        let f9 = f(3, 2);
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(x, x), f9.from_int(2));
    }

    #[test]
    fn trace_examples() {
        let f3 = f(3, 1);
        assert_eq!(f3.trace(f3.from_int(2)), 2);
        let f9 = f(3, 2);
        for c in 0..3 {
            assert_eq!(f9.trace(f9.from_int(c)), (2 * c as u32) % 3);
        }
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.trace(x), 0);
    }

    #[test]
    fn trace_agrees_with_frobenius_sum() {
        for (p, d) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
            let fld = f(p, d);
            for a in fld.elements() {
                let mut acc = FqElem::ZERO;
                let mut fr = a;
                for _ in 0..d {
                    acc = fld.add(acc, fr);
                    fr = fld.pow(fr, p as u64);
                }
                assert!(acc.0 < p);
                assert_eq!(fld.trace(a), acc.0);
            }
        }
    }

    #[test]
    fn trace_is_surjective_and_balanced() {
        for (p, d) in [(3, 1), (3, 2), (5, 2), (3, 3)] {
            let fld = f(p, d);
            let mut hist = vec![0u32; p as usize];
            for a in fld.elements() {
                hist[fld.trace(a) as usize] += 1;
            }
            assert!(hist.iter().all(|&h| h == fld.q() / p));
        }
    }

    #[test]
    fn quadratic_character() {
        let f3 = f(3, 1);
        assert_eq!(f3.quad_char(f3.from_int(1)), 1);
        assert_eq!(f3.quad_char(f3.from_int(2)), -1);
        assert_eq!(f3.quad_char(FqElem::ZERO), 0);
        let f9 = f(3, 2);
        assert_eq!(f9.quad_char(f9.from_int(2)), 1);
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let fld = f(p, d);
            let squares: std::collections::BTreeSet<_> =
                fld.nonzero_elements().map(|x| fld.mul(x, x)).collect();
            assert_eq!(squares.len() as u32, (fld.q() - 1) / 2);
            for a in fld.nonzero_elements() {
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(fld.quad_char(a), expect);
                assert_eq!(fld.quad_char_by_pow(a), expect);
            }
        }
    }

    fn arb_field() -> impl Strategy<Value = (u32, u32)> {
        prop_oneof![Just((3, 1)), Just((5, 1)), Just((7, 1)), Just((3, 2)), Just((5, 2)), Just((3, 3))]
    }

    proptest! {
        #[test]
        fn field_axioms((p, d) in arb_field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let fld = f(p, d);
            let q = fld.q();
            let (a, b, c) = (FqElem(a % q), FqElem(b % q), FqElem(c % q));
            prop_assert_eq!(fld.add(a, b), fld.add(b, a));
            prop_assert_eq!(fld.mul(a, b), fld.mul(b, a));
            prop_assert_eq!(fld.mul(a, fld.add(b, c)), fld.add(fld.mul(a, b), fld.mul(a, c)));
            prop_assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
            prop_assert_eq!(fld.add(a, fld.neg(a)), FqElem::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(fld.mul(a, fld.inv(a).unwrap()), FqElem::ONE);
            }
            prop_assert_eq!(fld.quad_char(fld.mul(a, b)), fld.quad_char(a) * fld.quad_char(b));
            let ta = fld.trace(fld.add(a, b));
            prop_assert_eq!(ta, (fld.trace(a) + fld.trace(b)) % p);
        }
    }
}
