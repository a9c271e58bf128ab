//! Dense polynomials over a prime field, used only to pick and test the
//! defining modulus of an extension field.

/// Coefficients low-degree-first, trailing zeros trimmed.
pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let (mut acc, m) = (1u64, p as u64);
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let t = (f as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    rem(&prod.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
}

fn pow_poly_mod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility of a monic polynomial of degree `d = f.len() - 1` over
/// F_p: `f` is irreducible iff gcd(x^{p^i} - x, f) = 1 for 1 <= i <= d/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    // Cheap root scan first; it settles every reducible polynomial of degree <= 3.
    let has_root = (0..p).any(|x| {
        f.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
            == 0
    });
    if has_root {
        return false;
    }
    if d <= 3 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=d / 2 {
        frob = pow_poly_mod(&frob, p as u64, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `d`,
/// comparing the non-leading coefficients low-degree-first.
pub(crate) fn smallest_irreducible(p: u32, d: u32) -> Poly {
    let d = d as usize;
    let mut lower = vec![0u32; d];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // Odometer with the constant term as the most significant digit.
        let mut i = d;
        loop {
            // An irreducible polynomial of every degree exists, so this never
            // runs off the front.
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        // Reducible iff divisible by some monic polynomial of degree 1..=d/2.
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let count = (p as usize).pow(k as u32);
            for idx in 0..count {
                let mut g: Vec<u32> = (0..k)
                    .map(|j| ((idx / (p as usize).pow(j as u32)) % p as usize) as u32)
                    .collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for &(p, d) in &[(3u32, 2usize), (3, 3), (3, 4), (5, 2), (5, 4), (7, 2), (3, 5)] {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut f: Vec<u32> = (0..d)
                    .map(|j| ((idx / (p as usize).pow(j as u32)) % p as usize) as u32)
                    .collect();
                f.push(1);
                assert_eq!(is_irreducible(&f, p), brute_irreducible(&f, p), "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn smallest_quadratic_mod_three_is_x2_plus_1() {
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 1), vec![0, 1]);
        // x^2 + 1 splits mod 5, x^2 + x + 1 has discriminant 2, a non-residue.
        assert_eq!(smallest_irreducible(5, 2), vec![1, 1, 1]);
    }
}
