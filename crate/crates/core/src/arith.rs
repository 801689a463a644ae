//! Exact scalars and the primitive factorial-type products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ri(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// (-1)^e for any integer e.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Integer power with the 0^0 = 1 convention.
pub fn ipow(base: i64, e: u32) -> Int {
    num_traits::pow(Int::from(base), e as usize)
}

/// Rational power; negative exponents invert, 0^0 = 1.
pub fn rpow(base: &Rat, e: i64) -> Result<Rat> {
    if e >= 0 {
        return Ok(num_traits::pow(base.clone(), e as usize));
    }
    if base.is_zero() {
        return Err(Error::Pole("zero raised to a negative power".into()));
    }
    Ok(num_traits::pow(base.recip(), (-e) as usize))
}

/// Exact rational to integer, failing when the denominator is not 1.
pub fn as_int(v: &Rat) -> Result<Int> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        domain(format!("{v} is not an integer"))
    }
}

pub fn factorial(n: u64) -> Int {
    let mut r = Int::one();
    for j in 2..=n {
        r *= j;
    }
    r
}

/// binom(n, k) for integer top of either sign: n(n-1)...(n-k+1)/k!, zero for k < 0.
pub fn binom(n: &Int, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    let mut num = Int::one();
    let mut den = Int::one();
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

pub fn binom_i(n: i64, k: i64) -> Int {
    binom(&Int::from(n), k)
}

/// Generalized binomial binom(x, k) with rational top.
pub fn binom_rat(x: &Rat, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    let mut r = Rat::one();
    for j in 0..k {
        r *= x - ri(j);
        r /= ri(j + 1);
    }
    r
}

/// Rising factorial (x)_n, with (x)_{-m} = 1/((x-m)(x-m+1)...(x-1)).
pub fn pochhammer(x: &Rat, n: i64) -> Result<Rat> {
    let mut r = Rat::one();
    if n >= 0 {
        for j in 0..n {
            r *= x + ri(j);
        }
        return Ok(r);
    }
    for j in 1..=(-n) {
        let f = x - ri(j);
        if f.is_zero() {
            return Err(Error::Domain(format!(
                "pochhammer({x}, {n}): factor x-{j} vanishes"
            )));
        }
        r *= f;
    }
    Ok(r.recip())
}

/// Falling factorial x(x-1)...(x-n+1).
pub fn falling_factorial(x: &Rat, n: i64) -> Result<Rat> {
    if n < 0 {
        return domain(format!("falling factorial with negative length {n}"));
    }
    let mut r = Rat::one();
    for j in 0..n {
        r *= x - ri(j);
    }
    Ok(r)
}

/// Integer-argument rising factorial, exact.
pub fn rising_int(x: &Int, n: i64) -> Int {
    let mut r = Int::one();
    for j in 0..n.max(0) {
        r *= x + j;
    }
    r
}

/// Integer-argument falling factorial, exact.
pub fn falling_int(x: &Int, n: i64) -> Int {
    let mut r = Int::one();
    for j in 0..n.max(0) {
        r *= x - j;
    }
    r
}

/// p_n(alpha, R) = R (R + alpha) ... (R + (n-1) alpha), p_0 = 1.
pub fn pn(n: i64, alpha: &Rat, r: &Rat) -> Rat {
    let mut acc = Rat::one();
    let mut term = r.clone();
    for _ in 0..n.max(0) {
        acc *= &term;
        term += alpha;
    }
    acc
}

pub fn pn_i(n: i64, alpha: i64, r: i64) -> Int {
    let mut acc = Int::one();
    for j in 0..n.max(0) {
        acc *= r + j * alpha;
    }
    acc
}

/// Parameters of p_n(alpha, R): either a fixed offset R or R = beta n + gamma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorialParams {
    Fixed { alpha: i64, r: Rat },
    Linear { alpha: i64, beta: i64, gamma: i64 },
}

impl FactorialParams {
    pub fn fixed(alpha: i64, r: Rat) -> Result<Self> {
        if alpha == 0 {
            return domain("alpha must be nonzero");
        }
        Ok(FactorialParams::Fixed { alpha, r })
    }

    pub fn linear(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        if alpha == 0 {
            return domain("alpha must be nonzero");
        }
        if beta == 0 && gamma == 0 {
            return domain("beta and gamma are both zero");
        }
        Ok(FactorialParams::Linear { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> i64 {
        match self {
            FactorialParams::Fixed { alpha, .. } | FactorialParams::Linear { alpha, .. } => *alpha,
        }
    }

    /// The offset R used for the n-th term.
    pub fn r_at(&self, n: i64) -> Rat {
        match self {
            FactorialParams::Fixed { r, .. } => r.clone(),
            FactorialParams::Linear { beta, gamma, .. } => ri(beta * n + gamma),
        }
    }

    pub fn value(&self, n: i64) -> Rat {
        pn(n, &ri(self.alpha()), &self.r_at(n))
    }
}

pub fn generalized_product(params: &FactorialParams, n: i64) -> Result<Rat> {
    if n < 0 {
        return domain(format!("generalized product with negative n = {n}"));
    }
    Ok(params.value(n))
}

/// n!_(alpha): n (n - alpha)!_(alpha) for n > 0, 1 for -alpha < n <= 0, else 0.
pub fn alpha_factorial(n: i64, alpha: i64) -> Result<Int> {
    if alpha <= 0 {
        return domain(format!("alpha-factorial needs alpha >= 1, got {alpha}"));
    }
    if n <= -alpha {
        return Ok(Int::zero());
    }
    let mut acc = Int::one();
    let mut m = n;
    while m > 0 {
        acc *= m;
        m -= alpha;
    }
    Ok(acc)
}

pub fn afact(n: i64, alpha: i64) -> Int {
    alpha_factorial(n, alpha).expect("alpha >= 1")
}

pub fn double_factorial(n: i64) -> Int {
    afact(n, 2)
}

/// G_n(x; a, b) = x/(x - a n) * ((x - a n)/b)^{falling n}, with the removable pole at x = a n cancelled.
pub fn gould_polynomial(n: i64, x: &Rat, a: &Rat, b: &Rat) -> Result<Rat> {
    if n < 0 {
        return domain("gould polynomial with negative n");
    }
    if b.is_zero() {
        return domain("gould polynomial with b = 0");
    }
    if n == 0 {
        if x.is_zero() {
            return Err(Error::Pole("x = 0 at n = 0".into()));
        }
        return Ok(ri(1));
    }
    // the leading factor (x - a n)/b of the falling factorial cancels the prefactor
    let y = (x - a * ri(n)) / b;
    Ok(x / b * falling_factorial(&(y - ri(1)), n - 1)?)
}

/// Both sides of p_n(alpha, beta n + gamma) = (-alpha)^{n+1}/(gamma-alpha-beta) G_{n+1}(gamma-alpha-beta; -beta, -alpha).
pub fn gould_identity(alpha: i64, beta: i64, gamma: i64, n: i64) -> Result<(Rat, Rat)> {
    let c = gamma - alpha - beta;
    if c == 0 {
        return Err(Error::Pole("gamma - alpha - beta = 0".into()));
    }
    let lhs = pn(n, &ri(alpha), &ri(beta * n + gamma));
    let g = gould_polynomial(n + 1, &ri(c), &ri(-beta), &ri(-alpha))?;
    let rhs = rpow(&ri(-alpha), n + 1)? / ri(c) * g;
    Ok((lhs, rhs))
}

/// Canonical residue of an exact integer in [0, m).
pub fn residue(v: &Int, m: &Int) -> Int {
    v.mod_floor(m)
}

/// Canonical residue of a rational modulo m, inverting the denominator.
pub fn rat_residue(v: &Rat, m: &Int) -> Result<Int> {
    let den = v.denom();
    let inv = mod_inverse(&den.mod_floor(m), m).ok_or_else(|| Error::NotInvertible {
        denominator: den.to_string(),
        modulus: m.to_string(),
    })?;
    Ok((v.numer() * inv).mod_floor(m))
}

/// Inverse of a modulo m when gcd(a, m) = 1.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    if m.is_one() {
        return Some(Int::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn to_i64(v: &Int) -> Option<i64> {
    v.to_i64()
}

pub fn is_neg(v: &Rat) -> bool {
    v.is_negative()
}
