//! Univariate polynomial gcd over the integers.
//!
//! Polynomials are dense coefficient slices, index = degree. The gcd is
//! computed by the modular algorithm: monic gcds modulo 62-bit primes are
//! scaled by `gcd(lc(a), lc(b))`, lifted by Chinese remaindering until the
//! symmetric lift stabilises, and the candidate is confirmed by exact trial
//! division over `Z`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn degree<T>(p: &[T]) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    let mut out: Vec<BigInt> = if c.is_zero() || c.is_one() {
        p.to_vec()
    } else {
        p.iter().map(|x| x / &c).collect()
    };
    if out.last().is_some_and(Signed::is_negative) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Exact quotient `a / b` in `Z[x]`, or `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = trim(b);
    let a = trim(a);
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &q * bj;
            }
        }
        quot[k] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

fn trim(p: &[BigInt]) -> &[BigInt] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Primitive gcd of two nonzero integer polynomials with positive leading
/// coefficient.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = primitive(trim(a));
    let b = primitive(trim(b));
    assert!(!a.is_empty() && !b.is_empty(), "gcd of the zero polynomial");
    if degree(&a) == 0 || degree(&b) == 0 {
        return vec![BigInt::one()];
    }
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    if div_exact(large, small).is_some() {
        return small.clone();
    }

    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut lifted: Option<(Vec<BigInt>, BigInt)> = None;
    let mut previous: Option<Vec<BigInt>> = None;

    for &p in primes() {
        let pb = BigInt::from(p);
        let la = reduce(a.last().unwrap(), &pb);
        let lb = reduce(b.last().unwrap(), &pb);
        if la == 0 || lb == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|x| reduce(x, &pb)).collect();
        let bp: Vec<u64> = b.iter().map(|x| reduce(x, &pb)).collect();
        let mut g = gcd_mod(ap, bp, p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gm = reduce(&gamma, &pb);
        for x in &mut g {
            *x = mul_mod(*x, gm, p);
        }

        lifted = match lifted.take() {
            Some((acc, m)) if acc.len() == g.len() => Some(crt(&acc, &m, &g, p)),
            Some((acc, m)) if acc.len() < g.len() => {
                // unlucky prime
                Some((acc, m))
            }
            _ => {
                previous = None;
                Some((g.iter().map(|&x| BigInt::from(x)).collect(), pb.clone()))
            }
        };

        let (acc, m) = lifted.as_ref().unwrap();
        let half = m >> 1;
        let candidate: Vec<BigInt> = acc
            .iter()
            .map(|x| if *x > half { x - m } else { x.clone() })
            .collect();
        let candidate = primitive(&candidate);
        if previous.as_ref() == Some(&candidate)
            && div_exact(&a, &candidate).is_some()
            && div_exact(&b, &candidate).is_some()
        {
            return candidate;
        }
        previous = Some(candidate);
    }
    panic!("modular gcd exhausted its prime table");
}

fn crt(acc: &[BigInt], m: &BigInt, g: &[u64], p: u64) -> (Vec<BigInt>, BigInt) {
    let pb = BigInt::from(p);
    let m_mod = reduce(m, &pb);
    let m_inv = inv_mod(m_mod, p);
    let out = acc
        .iter()
        .zip(g)
        .map(|(x, &r)| {
            let xr = reduce(x, &pb);
            let t = mul_mod((r + p - xr) % p, m_inv, p);
            x + m * BigInt::from(t)
        })
        .collect();
    (out, m * pb)
}

fn reduce(x: &BigInt, p: &BigInt) -> u64 {
    x.mod_floor(p).to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Monic gcd in `F_p[x]`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&x| mul_mod(x, inv, p)).collect()
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let inv = inv_mod(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let q = mul_mod(*r.last().unwrap(), inv, p);
        let shift = r.len() - b.len();
        if q != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(q, bj, p);
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
        }
        r.pop();
        trim_mod(&mut r);
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // deterministic for all 64-bit n
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut n = (1u64 << 62) - 1;
        while out.len() < 512 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn prime_table_is_prime() {
        assert!(primes().iter().take(8).all(|&p| is_prime(p)));
        assert!(!is_prime(1 << 40));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert_eq!(poly_gcd(&v(&[1, 1]), &v(&[-1, 1])), v(&[1]));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = v(&[3, -2, 5]);
        let a = mul(&g, &v(&[1, 7, 0, 2]));
        let b = mul(&g, &v(&[-4, 0, 9]));
        assert_eq!(poly_gcd(&a, &b), g);
        // scaling does not matter
        let a6: Vec<BigInt> = a.iter().map(|x| x * 6).collect();
        assert_eq!(poly_gcd(&a6, &b), g);
    }

    #[test]
    fn gcd_with_big_coefficients() {
        let g = v(&[1_000_000_000_007, -3, 999_999_999_989]);
        let a = mul(&mul(&g, &g), &v(&[5, 1]));
        let b = mul(&g, &v(&[123_456_789_012, 0, 0, 1]));
        assert_eq!(poly_gcd(&a, &b), g);
    }

    #[test]
    fn exact_division() {
        let a = mul(&v(&[1, -1]), &v(&[2, 0, 3]));
        assert_eq!(div_exact(&a, &v(&[1, -1])), Some(v(&[2, 0, 3])));
        assert_eq!(div_exact(&v(&[1, 0, 1]), &v(&[2, 0, 2])), None);
        assert_eq!(div_exact(&v(&[1, 2]), &v(&[1, 0, 1])), None);
    }
}
