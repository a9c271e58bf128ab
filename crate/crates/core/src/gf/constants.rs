//! The rational weights g(q, m) and the one-dimensional quadratic Gauss sum.

use num_rational::Ratio;

use super::poly::pow_mod;
use super::{CyclotomicInt, FieldCtx};

/// Weight of a term of corank `m` in the character-sum expansions:
/// `(g1(q)/q)^m`. Zero for odd `m`, `1` for `m = 0`, and for even `m`
/// `1/q^{m/2}` when `q = 1 mod 4`, `1/(-q)^{m/2}` when `q = 3 mod 4`.
pub fn g_const(q: u64, m: u32) -> Ratio<i128> {
    if m % 2 == 1 {
        return Ratio::from_integer(0);
    }
    let base: i128 = if q % 4 == 1 { q as i128 } else { -(q as i128) };
    Ratio::new(1, base.pow(m / 2))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    Real,
    Imaginary,
}

/// `sum_{x in F_q} h(x^2)`, kept symbolically as `sign * (1 or i) * sqrt(q)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadGaussSum {
    pub sign: i8,
    pub axis: Axis,
    pub p: u32,
    pub d: u32,
}

/// Closed form: `(-1)^{d-1} sqrt(q)` for `p = 1 mod 4` and
/// `(-1)^{d-1} i^d sqrt(q)` for `p = 3 mod 4`.
pub fn g1(field: &FieldCtx) -> QuadGaussSum {
    let (p, d) = (field.p(), field.d());
    let parity: i8 = if (d - 1) % 2 == 0 { 1 } else { -1 };
    let (sign, axis) = if p % 4 == 1 {
        (parity, Axis::Real)
    } else {
        // i^d cycles through 1, i, -1, -i
        match d % 4 {
            0 => (parity, Axis::Real),
            1 => (parity, Axis::Imaginary),
            2 => (-parity, Axis::Real),
            _ => (-parity, Axis::Imaginary),
        }
    };
    QuadGaussSum { sign, axis, p, d }
}

impl QuadGaussSum {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.d)
    }

    /// `g1(q)^2`, which is `q` or `-q`.
    pub fn square(&self) -> i64 {
        match self.axis {
            Axis::Real => self.q() as i64,
            Axis::Imaginary => -(self.q() as i64),
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let m = (self.q() as f64).sqrt() * self.sign as f64;
        match self.axis {
            Axis::Real => (m, 0.0),
            Axis::Imaginary => (0.0, m),
        }
    }

    /// Exact value in Z[zeta_p]. Uses `sqrt(q) = p^{floor(d/2)} sqrt(p)` and
    /// the prime-field sum `G_p = sum_j (j/p) zeta^j`, which equals `sqrt(p)`
    /// for `p = 1 mod 4` and `i sqrt(p)` for `p = 3 mod 4`.
    pub fn to_cyclotomic(&self) -> CyclotomicInt {
        let p = self.p;
        let base = (p as i64).pow(self.d / 2);
        if self.d.is_multiple_of(2) {
            debug_assert_eq!(self.axis, Axis::Real);
            return CyclotomicInt::from_int(p, self.sign as i64 * base);
        }
        debug_assert_eq!(self.axis == Axis::Real, p % 4 == 1);
        let gp: Vec<i64> = (0..p)
            .map(|j| match j {
                0 => 0,
                _ if pow_mod(j, (p - 1) / 2, p) == 1 => 1,
                _ => -1,
            })
            .collect();
        CyclotomicInt::from_coeffs(gp).scale(self.sign as i64 * base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_const_values() {
        assert_eq!(g_const(3, 2), Ratio::new(-1, 3));
        assert_eq!(g_const(3, 1), Ratio::from_integer(0));
        assert_eq!(g_const(5, 4), Ratio::new(1, 25));
        assert_eq!(g_const(7, 0), Ratio::from_integer(1));
        assert_eq!(g_const(3, 4), Ratio::new(1, 9));
        // q = 9: p = 3 mod 4 but q = 1 mod 4, so the weight stays positive.
        assert_eq!(g_const(9, 2), Ratio::new(1, 9));
    }

    #[test]
    fn g1_closed_forms() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(g1(&f3), QuadGaussSum { sign: 1, axis: Axis::Imaginary, p: 3, d: 1 });
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(g1(&f5), QuadGaussSum { sign: 1, axis: Axis::Real, p: 5, d: 1 });
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(g1(&f9), QuadGaussSum { sign: 1, axis: Axis::Real, p: 3, d: 2 });
        assert_eq!(g1(&f9).to_cyclotomic().as_integer(), Some(3));
        assert_eq!(g1(&f3).to_cyclotomic(), CyclotomicInt::from_coeffs(vec![1, 2, 0]));
    }

    #[test]
    fn g1_matches_direct_summation() {
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2), (11, 1), (13, 1)] {
            let f = FieldCtx::new(p, d).unwrap();
            let direct: CyclotomicInt = f.elements().map(|x| f.additive_char(f.mul(x, x))).sum();
            let closed = g1(&f);
            assert_eq!(direct, closed.to_cyclotomic(), "q = {p}^{d}");
            let (re, im) = direct.to_complex();
            let (cre, cim) = closed.to_complex();
            assert!((re - cre).abs() < 1e-9 && (im - cim).abs() < 1e-9);
        }
    }

    #[test]
    fn g_const_is_power_of_g1_over_q() {
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2)] {
            let f = FieldCtx::new(p, d).unwrap();
            let s = g1(&f).square() as i128;
            let q = f.q() as i128;
            for k in 0..4u32 {
                // (g1/q)^{2k} = (g1^2 / q^2)^k
                let expect = Ratio::new(s.pow(k), q.pow(2 * k));
                assert_eq!(g_const(q as u64, 2 * k), expect);
            }
        }
    }
}
