//! Convergent numerator and denominator polynomials of the J-fraction for
//! p_n(alpha, R), the numerator coefficients C_{h,n}, and their expansions.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    binom_i, binom_rat, factorial, pn, pochhammer, ri, rpow, sign, to_rat, FactorialParams, Int, Rat,
};
use crate::error::{domain, Error, Result};
use crate::modular::{binom_row_mod, mulmod, reduce_i128};
use crate::poly::{series_of_rational, series_of_rational_mod, Poly1, Series};
use crate::report::{CongruenceReport, Inputs};
use crate::triangles::{stirling1, stirling2};

fn check_alpha(alpha: i64) -> Result<()> {
    if alpha == 0 {
        return domain("alpha must be nonzero");
    }
    Ok(())
}

fn fixed_params(params: &FactorialParams) -> Result<(i64, Rat)> {
    match params {
        FactorialParams::Fixed { alpha, r } => Ok((*alpha, r.clone())),
        FactorialParams::Linear { .. } => domain("convergents need a fixed offset R"),
    }
}

/// FQ_h(alpha, R; z) = sum_k binom(h,k) (-1)^k p_k(-alpha, R + (h-1) alpha) z^k.
pub fn fq_poly(h: i64, alpha: i64, r: &Rat) -> Result<Poly1> {
    check_alpha(alpha)?;
    if h < 1 {
        return domain("convergent index h must be >= 1");
    }
    let top = r + ri((h - 1) * alpha);
    Ok(Poly1::new(
        (0..=h)
            .map(|k| to_rat(&binom_i(h, k)) * ri(sign(k)) * pn(k, &ri(-alpha), &top))
            .collect(),
    ))
}

/// The same denominator via sum_k binom(h,k) (R/alpha + h - k)_k (-alpha z)^k.
pub fn fq_poly_pochhammer(h: i64, alpha: i64, r: &Rat) -> Result<Poly1> {
    check_alpha(alpha)?;
    let ra = r / ri(alpha);
    let mut cs = Vec::new();
    for k in 0..=h {
        let p = pochhammer(&(&ra + ri(h - k)), k)?;
        cs.push(to_rat(&binom_i(h, k)) * p * rpow(&ri(-alpha), k)?);
    }
    Ok(Poly1::new(cs))
}

/// C_{h,n}(alpha, R) with the convention C_{h,n} = 0 outside 0 <= n < h.
pub fn chn(h: i64, n: i64, alpha: i64, r: &Rat) -> Rat {
    if n < 0 || n >= h {
        return Rat::zero();
    }
    let top = r + ri((h - 1) * alpha);
    let a = ri(alpha);
    (0..=n)
        .map(|i| {
            to_rat(&binom_i(h, i)) * ri(sign(i)) * pn(i, &(-&a), &top) * pn(n - i, &a, r)
        })
        .sum()
}

/// Numerator coefficient C_{h,n} by the product-convolution formula.
pub fn chn_product_form(h: i64, n: i64, alpha: i64, r: &Rat) -> Result<Rat> {
    check_alpha(alpha)?;
    if n < 0 || n >= h {
        return Err(Error::Index(format!("C_{{h,n}} needs 0 <= n < h, got h = {h}, n = {n}")));
    }
    Ok(chn(h, n, alpha, r))
}

/// C_{h,n} = alpha^n sum_i binom(h,i) (1 - h - R/alpha)_i (R/alpha)_{n-i}.
pub fn chn_vandermonde(h: i64, n: i64, alpha: i64, r: &Rat) -> Result<Rat> {
    check_alpha(alpha)?;
    if n < 0 || n >= h {
        return Err(Error::Index(format!("C_{{h,n}} needs 0 <= n < h, got h = {h}, n = {n}")));
    }
    let ra = r / ri(alpha);
    let x = ri(1 - h) - &ra;
    let mut s = Rat::zero();
    for i in 0..=n {
        s += to_rat(&binom_i(h, i)) * pochhammer(&x, i)? * pochhammer(&ra, n - i)?;
    }
    Ok(s * rpow(&ri(alpha), n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultisumVariant {
    V1,
    V2,
    V3,
    V4,
    V5,
}

impl MultisumVariant {
    pub const ALL: [MultisumVariant; 5] = [Self::V1, Self::V2, Self::V3, Self::V4, Self::V5];

    pub fn name(self) -> &'static str {
        match self {
            Self::V1 => "v1",
            Self::V2 => "v2",
            Self::V3 => "v3",
            Self::V4 => "v4",
            Self::V5 => "v5",
        }
    }
}

/// sum_{k <= n, m <= k, s <= m} binom(h,k) binom(m,s) [k,m] (-1)^m alpha^n (R/a)_{n-k} (R/a - 1)^{m-s} w(s).
fn stirling1_shell(h: i64, n: i64, alpha: i64, r: &Rat, w: &dyn Fn(i64) -> Int) -> Result<Rat> {
    let ra = r / ri(alpha);
    let ra1 = &ra - ri(1);
    let ws: Vec<Rat> = (0..=n).map(|s| to_rat(&w(s))).collect();
    let mut outer = Rat::zero();
    for k in 0..=n {
        let mut inner = Rat::zero();
        for m in 0..=k {
            let s1 = stirling1(k, m);
            if s1.is_zero() {
                continue;
            }
            let mut acc = Rat::zero();
            for s in 0..=m {
                acc += to_rat(&binom_i(m, s)) * rpow(&ra1, m - s)? * &ws[s as usize];
            }
            inner += acc * to_rat(&(s1 * sign(m)));
        }
        outer += inner * to_rat(&binom_i(h, k)) * pochhammer(&ra, n - k)?;
    }
    Ok(outer * rpow(&ri(alpha), n)?)
}

/// Integer inner factor of the fifth expansion; a polynomial in h alone.
pub fn v5_inner(h: i64, n: i64, i: i64) -> Int {
    let mut tot = Int::zero();
    for k in 0..=n {
        let bk = binom_i(h, k);
        for m in 0..=k {
            let s1 = stirling1(k, m);
            if s1.is_zero() {
                continue;
            }
            for s in 0..=n {
                let s2 = stirling2(s, i);
                if s2.is_zero() {
                    continue;
                }
                for t in 0..=s.min(m) {
                    let c = stirling1(n - k, s - t);
                    if c.is_zero() {
                        continue;
                    }
                    tot += &bk
                        * binom_i(m, t)
                        * &s1
                        * c
                        * &s2
                        * sign(m + s - i)
                        * crate::arith::ipow(h - 1, (m - t) as u32);
                }
            }
        }
    }
    tot
}

/// The five alternating Stirling-number expansions of C_{h,n}.
pub fn chn_multisum(variant: MultisumVariant, h: i64, n: i64, alpha: i64, r: &Rat) -> Result<Rat> {
    check_alpha(alpha)?;
    if n < 0 || n >= h {
        return Err(Error::Index(format!("C_{{h,n}} needs 0 <= n < h, got h = {h}, n = {n}")));
    }
    match variant {
        MultisumVariant::V1 => stirling1_shell(h, n, alpha, r, &|s| crate::arith::ipow(h, s as u32)),
        MultisumVariant::V3 => stirling1_shell(h, n, alpha, r, &|s| {
            (0..=s).map(|i| binom_i(h, i) * stirling2(s, i) * factorial(i as u64)).sum()
        }),
        MultisumVariant::V4 => stirling1_shell(h, n, alpha, r, &|s| {
            let mut tot = Int::zero();
            for i in 0..=s {
                let base = stirling2(s, i) * factorial(i as u64);
                for v in 0..=i {
                    tot += &base * binom_i(i, v) * binom_i(h + v, v) * sign(i - v);
                }
            }
            tot
        }),
        MultisumVariant::V2 => {
            let a = ri(alpha);
            let mut tot = Rat::zero();
            for k in 0..=n {
                let bk = binom_i(h, k);
                for m in 0..=k {
                    let s1 = stirling1(k, m);
                    if s1.is_zero() {
                        continue;
                    }
                    for s in 0..=n {
                        let mut acc = Int::zero();
                        for t in 0..=s.min(m) {
                            acc += binom_i(m, t)
                                * stirling1(n - k, s - t)
                                * crate::arith::ipow(h - 1, (m - t) as u32);
                        }
                        if acc.is_zero() {
                            continue;
                        }
                        tot += to_rat(&(&bk * &s1 * acc * sign(m)))
                            * rpow(&a, n - s)?
                            * rpow(r, s)?;
                    }
                }
            }
            Ok(tot)
        }
        MultisumVariant::V5 => {
            let ra = r / ri(alpha);
            let mut tot = Rat::zero();
            for i in 0..=n {
                tot += to_rat(&v5_inner(h, n, i)) * pochhammer(&ra, i)?;
            }
            Ok(tot * rpow(&ri(alpha), n)?)
        }
    }
}

/// FP_h(alpha, R; z) = sum_{n < h} C_{h,n} z^n.
pub fn fp_poly(h: i64, alpha: i64, r: &Rat) -> Result<Poly1> {
    check_alpha(alpha)?;
    if h < 1 {
        return domain("convergent index h must be >= 1");
    }
    Ok(Poly1::new((0..h).map(|n| chn(h, n, alpha, r)).collect()))
}

/// The h-th convergent FP_h / FQ_h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    pub h: i64,
    pub params: FactorialParams,
    pub numerator: Poly1,
    pub denominator: Poly1,
}

impl ConvergentPair {
    pub fn new(h: i64, params: &FactorialParams) -> Result<Self> {
        let (alpha, r) = fixed_params(params)?;
        Ok(ConvergentPair {
            h,
            params: params.clone(),
            numerator: fp_poly(h, alpha, &r)?,
            denominator: fq_poly(h, alpha, &r)?,
        })
    }

    pub fn series(&self, n: usize) -> Result<Series> {
        series_of_rational(&self.numerator, &self.denominator, n)
    }
}

/// Power series of the h-th convergent through z^N.
pub fn convergent_series(h: i64, alpha: i64, r: &Rat, n: usize) -> Result<Series> {
    series_of_rational(&fp_poly(h, alpha, r)?, &fq_poly(h, alpha, r)?, n)
}

pub fn convergent_series_params(h: i64, params: &FactorialParams, n: usize) -> Result<Series> {
    ConvergentPair::new(h, params)?.series(n)
}

/// Convergent coefficients modulo m for integer R, without materializing the
/// exact polynomials; cost O(h^2 + h N) word operations.
pub fn convergent_series_mod(h: i64, alpha: i64, r: i64, n: usize, m: u64) -> Result<Vec<u64>> {
    check_alpha(alpha)?;
    if h < 1 {
        return domain("convergent index h must be >= 1");
    }
    let bin = binom_row_mod(h as i128, h as usize + 1, m);
    let top = r as i128 + (h as i128 - 1) * alpha as i128;
    let mut down = vec![1 % m];
    let mut up = vec![1 % m];
    for j in 0..h as i128 {
        let d = *down.last().unwrap();
        down.push(mulmod(d, reduce_i128(top - j * alpha as i128, m), m));
        let u = *up.last().unwrap();
        up.push(mulmod(u, reduce_i128(r as i128 + j * alpha as i128, m), m));
    }
    let signed = |i: usize, v: u64| if i % 2 == 1 { (m - v) % m } else { v };
    let q: Vec<Int> =
        (0..=h as usize).map(|k| Int::from(signed(k, mulmod(bin[k], down[k], m)))).collect();
    let p: Vec<Int> = (0..h as usize)
        .map(|nn| {
            let mut acc = 0u64;
            for i in 0..=nn {
                let t = mulmod(mulmod(bin[i], down[i], m), up[nn - i], m);
                acc = (acc + signed(i, t)) % m;
            }
            Int::from(acc)
        })
        .collect();
    let s = series_of_rational_mod(&p, &q, n, &Int::from(m))?;
    Ok(s.iter().map(|v| crate::modular::int_mod(v, m)).collect())
}

/// Compare FQ_h with (-alpha z)^h h! L_h^{(R/alpha - 1)}(1/(alpha z)) coefficientwise.
pub fn laguerre_identity_check(h: i64, alpha: i64, r: &Rat) -> Result<CongruenceReport> {
    let fq = fq_poly(h, alpha, r)?;
    let beta = r / ri(alpha) - ri(1);
    let hf = to_rat(&factorial(h as u64));
    let lead = rpow(&ri(-alpha), h)?;
    let mut co = vec![Rat::zero(); h as usize + 1];
    for k in 0..=h {
        let c = &hf * binom_rat(&(&beta + ri(h)), h - k) * ri(sign(k))
            / to_rat(&factorial(k as u64))
            * &lead
            * rpow(&ri(alpha), -k)?;
        co[(h - k) as usize] += c;
    }
    let lag = Poly1::new(co);
    let inputs = || Inputs::new().with("h", h).with("alpha", alpha).with("R", r);
    let forms = (0..=h as usize)
        .map(|k| {
            CongruenceReport::exact("laguerre_coeff", inputs().with("k", k), lag.coeff(k), fq.coeff(k))
        })
        .collect();
    Ok(CongruenceReport::all_of("laguerre", inputs().with("fq", &fq), forms))
}

/// Is h in the proven range of the mod-h statements (odd or prime)?
pub fn proven_modulus(h: i64) -> bool {
    h % 2 != 0 || crate::modular::is_prime_u64(h as u64)
}
