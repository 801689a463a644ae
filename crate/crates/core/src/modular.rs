//! Machine-word modular arithmetic, primality, and binomial rows modulo composites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Canonical residue of a signed value.
pub fn reduce_i128(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(reduce_i128(old_s, m))
}

/// Residue of an exact rational modulo a word-sized m.
pub fn rat_mod(v: &Rat, m: u64) -> Result<u64> {
    let mb = BigInt::from(m);
    let den = v.denom().mod_floor(&mb).to_u64().unwrap();
    let inv = inv_mod(den, m).ok_or_else(|| Error::NotInvertible {
        denominator: v.denom().to_string(),
        modulus: m.to_string(),
    })?;
    let num = v.numer().mod_floor(&mb).to_u64().unwrap();
    Ok(mulmod(num, inv, m))
}

pub fn int_mod(v: &Int, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary non-negative integers. Above u64 the answer is
/// Miller-Rabin over the same bases, which is probabilistic there.
pub fn is_prime(n: &Int) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    let one = Int::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = Int::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Combine residues r_i mod m_i (pairwise coprime).
pub fn crt(parts: &[(u64, u64)]) -> u64 {
    let mut r: u128 = 0;
    let mut m: u128 = 1;
    for &(ri, mi) in parts {
        let mi128 = mi as u128;
        let t = ((ri as u128 + mi128 - (r % mi128)) % mi128) as u64;
        let inv = inv_mod((m % mi128) as u64, mi).expect("coprime moduli");
        let k = mulmod(t, inv, mi) as u128;
        r += m * k;
        m *= mi128;
    }
    r as u64
}

fn strip(mut v: i128, q: u64) -> (i128, u32) {
    let q = q as i128;
    let mut e = 0;
    while v % q == 0 {
        v /= q;
        e += 1;
    }
    (v, e)
}

/// Binomials binom(top, k) mod m for k = 0, 1, 2, ... generated in order.
///
/// Each prime power q^e of m keeps the q-adic valuation of the running
/// binomial apart from its unit part, so the division by k never needs an
/// inverse of a multiple of q. Negative tops are fine; a zero factor makes
/// every later entry zero.
#[derive(Debug, Clone)]
pub struct BinomRow {
    top: i128,
    m: u64,
    k: i64,
    zero: bool,
    parts: Vec<PrimePart>,
}

#[derive(Debug, Clone)]
struct PrimePart {
    q: u64,
    qe: u64,
    e: u32,
    val: u32,
    unit: u64,
}

impl BinomRow {
    pub fn new(top: i128, m: u64) -> Self {
        let parts = factorize(m)
            .into_iter()
            .map(|(q, e)| PrimePart { q, qe: q.pow(e), e, val: 0, unit: 1 % q.pow(e) })
            .collect();
        BinomRow { top, m, k: 0, zero: false, parts }
    }

    fn current(&self) -> u64 {
        if self.zero || self.m == 1 {
            return 0;
        }
        let rs: Vec<(u64, u64)> = self
            .parts
            .iter()
            .map(|p| {
                let v = if p.val >= p.e { 0 } else { mulmod(p.unit, p.q.pow(p.val), p.qe) };
                (v, p.qe)
            })
            .collect();
        crt(&rs)
    }

    fn advance(&mut self) {
        self.k += 1;
        let num = self.top - (self.k as i128 - 1);
        if num == 0 {
            self.zero = true;
        }
        if self.zero {
            return;
        }
        let den = self.k as i128;
        for p in &mut self.parts {
            let (nu, ne) = strip(num, p.q);
            let (du, de) = strip(den, p.q);
            p.val = p.val + ne - de;
            let nr = reduce_i128(nu, p.qe);
            let dr = reduce_i128(du, p.qe);
            p.unit = mulmod(mulmod(p.unit, nr, p.qe), inv_mod(dr, p.qe).unwrap(), p.qe);
        }
    }

    /// The first `len` entries binom(top, 0..len) mod m.
    pub fn take(mut self, len: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            if i > 0 {
                self.advance();
            }
            out.push(self.current());
        }
        out
    }
}

pub fn binom_row_mod(top: i128, len: usize, m: u64) -> Vec<u64> {
    BinomRow::new(top, m).take(len)
}

/// Factorials 0!, 1!, ..., (len-1)! mod m.
pub fn factorial_row_mod(len: usize, m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut f = 1 % m;
    for i in 0..len {
        if i > 0 {
            f = mulmod(f, i as u64 % m, m);
        }
        out.push(f);
    }
    out
}

/// n! mod m by a running product.
pub fn factorial_mod(n: u64, m: u64) -> u64 {
    let mut f = 1 % m;
    for j in 2..=n {
        f = mulmod(f, j % m, m);
        if f == 0 {
            break;
        }
    }
    f
}

/// alpha-factorial n!_(alpha) mod m.
pub fn afact_mod(n: i64, alpha: i64, m: u64) -> u64 {
    if n <= -alpha {
        return 0;
    }
    let mut f = 1 % m;
    let mut j = n;
    while j > 0 {
        f = mulmod(f, j as u64 % m, m);
        j -= alpha;
    }
    f
}

/// Modular rational helper: a/b mod m.
pub fn frac_mod(a: i128, b: i128, m: u64) -> Result<u64> {
    let br = reduce_i128(b, m);
    let inv = inv_mod(br, m).ok_or_else(|| Error::NotInvertible {
        denominator: b.to_string(),
        modulus: m.to_string(),
    })?;
    Ok(mulmod(reduce_i128(a, m), inv, m))
}

pub fn is_zero_mod(v: &Int, m: &Int) -> bool {
    v.mod_floor(m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom_i;
    use proptest::prelude::*;

    fn trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), trial(n), "{n}");
        }
        assert!(is_prime_u64(563));
        assert!(!is_prime_u64(567));
        assert!(is_prime_u64(2_305_843_009_213_693_951));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn big_primality() {
        let m127 = (Int::one() << 127) - 1;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * 3)));
    }

    #[test]
    fn crt_roundtrip() {
        assert_eq!(crt(&[(2, 3), (3, 5), (2, 7)]), 23);
    }

    #[test]
    fn binom_row_negative_top() {
        let row = binom_row_mod(-7, 6, 1000);
        for (k, v) in row.iter().enumerate() {
            let exact = binom_i(-7, k as i64).mod_floor(&Int::from(1000));
            assert_eq!(Int::from(*v), exact);
        }
    }

    proptest! {
        #[test]
        fn binom_row_matches_exact(top in -40i64..200, m in 2u64..5000) {
            let row = binom_row_mod(top as i128, 30, m);
            for (k, v) in row.iter().enumerate() {
                let exact = binom_i(top, k as i64).mod_floor(&Int::from(m));
                prop_assert_eq!(Int::from(*v), exact);
            }
        }

        #[test]
        fn inverse_is_inverse(a in 1u64..10_000, m in 2u64..10_000) {
            if let Some(i) = inv_mod(a, m) {
                prop_assert_eq!(mulmod(a, i, m), 1 % m);
            } else {
                prop_assert!(a.gcd(&m) != 1);
            }
        }
    }
}
