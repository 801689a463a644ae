//! Finite-difference expansions of p_n(alpha, R) and the exact-sum and
//! congruence families derived from them.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    afact, binom_i, binom_rat, double_factorial, factorial, falling_factorial, ipow, pn,
    pochhammer, rat, ri, rpow, sign, to_rat, FactorialParams, Int, Rat,
};
use crate::convergents::{chn, proven_modulus};
use crate::error::{domain, Result};
use crate::poly::{poly_mod_reduce_substitute, Poly1};
use crate::report::{CongruenceReport, Inputs};
use crate::triangles::{fcf, stirling1};

fn binom_r(n: i64, k: i64) -> Rat {
    to_rat(&binom_i(n, k))
}

fn fact_r(n: i64) -> Rat {
    to_rat(&factorial(n.max(0) as u64))
}

fn linear(params: &FactorialParams) -> Result<(i64, i64, i64)> {
    match params {
        FactorialParams::Linear { alpha, beta, gamma } => Ok((*alpha, *beta, *gamma)),
        FactorialParams::Fixed { .. } => domain("this identity needs R = beta n + gamma"),
    }
}

/// Which verification suite an instance belongs to.
pub fn suite_label(h: i64, alpha: i64) -> &'static str {
    if proven_modulus(h) && alpha.abs() <= 2 {
        "proven"
    } else {
        "conjectural"
    }
}

/// Right-hand side of the exact expansion
/// p_n = sum_{k<n} binom(n+r, k+1) (-1)^k p_{k+1}(-a, R + (n-1+r) a) p_{n-1-k}(a, R) + C_{n+r,n}.
/// With n + r = 0 the numerator coefficient is the Iverson term [n = 0].
pub fn prop1_exact(n: i64, r: i64, params: &FactorialParams) -> Result<Rat> {
    if n < 0 || r < 0 {
        return domain("prop1_exact needs n, r >= 0");
    }
    let alpha = params.alpha();
    let rr = params.r_at(n);
    let a = ri(alpha);
    let top = &rr + ri((n - 1 + r) * alpha);
    let mut s = Rat::zero();
    for k in 0..n {
        s += binom_r(n + r, k + 1) * ri(sign(k)) * pn(k + 1, &-&a, &top) * pn(n - 1 - k, &a, &rr);
    }
    s += chn(n + r, n, alpha, &rr);
    if n + r == 0 {
        s += ri(1);
    }
    Ok(s)
}

fn prop1_terms(n: i64, h: i64, t: Option<i64>, alpha: i64, beta: i64, gamma: i64) -> Result<Rat> {
    let ra = rat(beta * n + gamma, alpha);
    let x = ri(1 - h) - &ra;
    let a = ri(alpha);
    let mut s = Rat::zero();
    for k in 0..=n {
        let e = match t {
            Some(t) => n + (t + 1) * k,
            None => n + k,
        };
        s += binom_r(h, k) * rpow(&a, e)? * pochhammer(&x, k)? * pochhammer(&ra, n - k)?;
    }
    Ok(s)
}

/// Both displayed forms of p_n(a, b n + c) mod h.
pub fn prop1_mod_h(n: i64, h: i64, params: &FactorialParams) -> Result<CongruenceReport> {
    let (alpha, beta, gamma) = linear(params)?;
    if h < 2 || n < 0 {
        return domain("prop1_mod_h needs h >= 2, n >= 0");
    }
    let rr = ri(beta * n + gamma);
    let a = ri(alpha);
    let target = pn(n, &a, &rr);
    let top = &rr + ri((h - 1) * alpha);
    let product: Rat = (0..=n)
        .map(|k| binom_r(h, k) * rpow(&-&a, k).unwrap() * pn(k, &-&a, &top) * pn(n - k, &a, &rr))
        .sum();
    let poch = prop1_terms(n, h, None, alpha, beta, gamma)?;
    let m = Int::from(h);
    let inputs = || {
        Inputs::new()
            .with("n", n)
            .with("h", h)
            .with("alpha", alpha)
            .with("beta", beta)
            .with("gamma", gamma)
            .with("suite", suite_label(h, alpha))
    };
    let f1 = CongruenceReport::modular("prop1_v1", inputs().with("form", "product"), product, target.clone(), &m)?;
    let f2 = CongruenceReport::modular("prop1_v1", inputs().with("form", "pochhammer"), poch, target, &m)?;
    Ok(CongruenceReport::all_of("prop1_v1", inputs(), vec![f1, f2]))
}

/// The weighted form modulo h |alpha|^t.
pub fn prop1_mod_h_alpha_t(n: i64, h: i64, t: i64, params: &FactorialParams) -> Result<CongruenceReport> {
    let (alpha, beta, gamma) = linear(params)?;
    if h < 2 || n < 0 || t < 0 || t > h {
        return domain("prop1_mod_h_alpha_t needs h >= 2, n >= 0, 0 <= t <= h");
    }
    let target = pn(n, &ri(alpha), &ri(beta * n + gamma));
    let sum = prop1_terms(n, h, Some(t), alpha, beta, gamma)?;
    let m = Int::from(h) * num_traits::pow(Int::from(alpha.abs()), t as usize);
    CongruenceReport::modular(
        "prop1_v2",
        Inputs::new()
            .with("n", n)
            .with("h", h)
            .with("t", t)
            .with("alpha", alpha)
            .with("beta", beta)
            .with("gamma", gamma)
            .with("suite", suite_label(h, alpha)),
        sum,
        target,
        &m,
    )
}

/// Both sums for (alpha n - d)!_(alpha) modulo h alpha^t.
pub fn alpha_fact_congruence(form: u8, n: i64, h: i64, t: i64, alpha: i64, d: i64) -> Result<CongruenceReport> {
    if alpha < 1 || d < 0 || d >= alpha || h < 2 || t < 0 || t > h || n < 0 {
        return domain("alpha_fact_congruence needs alpha >= 1, 0 <= d < alpha, h >= 2, 0 <= t <= h");
    }
    let a = ri(alpha);
    let da = rat(d, alpha);
    let mut s = Rat::zero();
    for i in 0..=n {
        s += binom_r(h, i)
            * match form {
                1 => {
                    rpow(&a, n)?
                        * rpow(&-&a, (t + 1) * i)?
                        * pochhammer(&(&da - ri(h)), i)?
                        * pochhammer(&(ri(1) - &da), n - i)?
                }
                2 => {
                    rpow(&-&a, n)?
                        * rpow(&a, (t + 1) * i)?
                        * pochhammer(&(&da + ri(n + 1 - h)), i)?
                        * pochhammer(&(&da - ri(n)), n - i)?
                }
                _ => return domain(format!("alpha-factorial congruence form {form} (expected 1 or 2)")),
            };
    }
    let target = to_rat(&afact(alpha * n - d, alpha));
    let m = Int::from(h) * num_traits::pow(Int::from(alpha), t as usize);
    CongruenceReport::modular(
        "alpha_fact_congruence",
        Inputs::new()
            .with("form", form)
            .with("n", n)
            .with("h", h)
            .with("t", t)
            .with("alpha", alpha)
            .with("d", d)
            .with("suite", if proven_modulus(h) { "proven" } else { "conjectural" }),
        s,
        target,
        &m,
    )
}

/// The three sums for (2n-1)!! modulo 2^s h.
pub fn dbl_fact_congruence(form: u8, n: i64, h: i64, s: i64) -> Result<CongruenceReport> {
    if h < 2 || s < 0 || s > h || n < 0 {
        return domain("dbl_fact_congruence needs h >= 2, 0 <= s <= h, n >= 0");
    }
    let half = rat(1, 2);
    let two = ri(2);
    let mut tot = Rat::zero();
    for i in 0..=n {
        let e = n + (s + 1) * i;
        tot += binom_r(h, i)
            * match form {
                1 => rpow(&two, e)? * pochhammer(&(&half - ri(h)), i)? * pochhammer(&half, n - i)?,
                2 => {
                    binom_r(2 * n - 2 * i, n - i) * rpow(&two, e)? / rpow(&ri(4), n - i)?
                        * pochhammer(&(&half - ri(h)), i)?
                        * fact_r(n - i)
                }
                3 => {
                    rpow(&ri(-2), e)?
                        * pochhammer(&(&half + ri(n - h)), i)?
                        * pochhammer(&(&half - ri(n)), n - i)?
                }
                _ => return domain(format!("double-factorial congruence form {form} (expected 1..3)")),
            };
    }
    let target = to_rat(&double_factorial(2 * n - 1));
    let m = Int::from(h) << (s as usize);
    CongruenceReport::modular(
        "dbl_fact_congruence",
        Inputs::new()
            .with("form", form)
            .with("n", n)
            .with("h", h)
            .with("s", s)
            .with("suite", if proven_modulus(h) { "proven" } else { "conjectural" }),
        tot,
        target,
        &m,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CentralBinomialForm {
    /// modulo 2x + 1, then x = n, outer modulus 2n + 1
    Mod2n1,
    /// modulo x^p with the numeric central binomial binom(2n-2i, n-i)
    ModNp,
    /// modulo x^p with the Pochhammer factor (1/2)_{n-i}
    ModNpPochhammer,
}

/// Multiplication in Q[x]/(f).
fn mulmod_poly(a: &Poly1, b: &Poly1, f: &Poly1) -> Result<Poly1> {
    Ok((a * b).divrem(f)?.1)
}

/// binom(g(x), i) as a polynomial, reduced modulo f.
fn binom_poly(g: &Poly1, i: i64, f: &Poly1) -> Result<Poly1> {
    let mut acc = Poly1::constant(ri(1));
    for j in 0..i {
        let factor = (g - &Poly1::constant(ri(j))).scale(&rat(1, j + 1));
        acc = mulmod_poly(&acc, &factor, f)?;
    }
    Ok(acc)
}

/// Rising factorial (g(x))_i reduced modulo f, or the falling one when `step` is -1.
fn product_poly(g: &Poly1, i: i64, step: i64, f: &Poly1) -> Result<Poly1> {
    let mut acc = Poly1::constant(ri(1));
    for j in 0..i {
        acc = mulmod_poly(&acc, &(g + &Poly1::constant(ri(step * j))), f)?;
    }
    Ok(acc)
}

/// Build the underlined expression in x, reduce modulo f(x), set x = n, and reduce mod the outer modulus.
///
/// Products are reduced modulo f after every multiplication; this computes the
/// same remainder as expanding first.
pub fn central_binomial_semi_poly(form: CentralBinomialForm, n: i64, p: u32) -> Result<CongruenceReport> {
    let half = rat(1, 2);
    let nf = fact_r(n);
    let (f, outer) = match form {
        CentralBinomialForm::Mod2n1 => {
            if n < 1 {
                return domain("mod 2n+1 form needs n >= 1");
            }
            (Poly1::from_ints(&[1, 2]), Int::from(2 * n + 1))
        }
        _ => {
            if p < 1 || n < 2 {
                return domain("mod n^p forms need p >= 1, n >= 2");
            }
            (Poly1::monomial(p as usize, ri(1)), num_traits::pow(Int::from(n), p as usize))
        }
    };
    let mut expr = Poly1::zero();
    match form {
        CentralBinomialForm::Mod2n1 => {
            let g = Poly1::from_ints(&[1, 2]);
            let ff_arg = &Poly1::constant(half.clone()) + &Poly1::from_ints(&[0, 2]);
            let scale = rpow(&ri(2), 2 * n)? / &nf;
            for i in 0..=n {
                let b = binom_poly(&g, i, &f)?;
                let fall = product_poly(&ff_arg, i, -1, &f)?;
                let c = rpow(&ri(-2), i)? * pochhammer(&half, n - i)? * &scale;
                expr = &expr + &mulmod_poly(&b, &fall, &f)?.scale(&c);
            }
        }
        CentralBinomialForm::ModNp | CentralBinomialForm::ModNpPochhammer => {
            let xp = Poly1::monomial(p as usize, ri(1));
            let poch_arg = &Poly1::constant(half.clone()) - &xp;
            for i in 0..=n {
                let b = binom_poly(&xp, i, &f)?;
                let pr = product_poly(&poch_arg, i, 1, &f)?;
                let c = if form == CentralBinomialForm::ModNp {
                    binom_r(2 * n - 2 * i, n - i) * rpow(&ri(8), i)? * fact_r(n - i) / &nf
                } else {
                    rpow(&ri(2), i)? * pochhammer(&half, n - i)? * rpow(&ri(2), 2 * n)? / &nf
                };
                expr = &expr + &mulmod_poly(&b, &pr, &f)?.scale(&c);
            }
        }
    }
    let lhs = poly_mod_reduce_substitute(&expr, &f, &Int::from(n), &outer)?;
    let target = binom_i(2 * n, n);
    let name = match form {
        CentralBinomialForm::Mod2n1 => "mod_2n1",
        CentralBinomialForm::ModNp => "mod_np",
        CentralBinomialForm::ModNpPochhammer => "mod_np_pochhammer",
    };
    CongruenceReport::modular(
        "central_binomial_semi_poly",
        Inputs::new().with("form", name).with("n", n).with("p", p),
        to_rat(&lhs),
        to_rat(&target),
        &outer,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaForm {
    A1,
    A2,
    A3,
    B1,
    B2,
}

impl LemmaForm {
    pub const ALL: [LemmaForm; 5] = [Self::A1, Self::A2, Self::A3, Self::B1, Self::B2];
}

/// The C_{h,N}(1,1) and C_{h,N}(-1,N) sum families for (n-s)!, N = n - s.
pub fn single_fact_lemma_sum(form: LemmaForm, n: i64, s: i64, h: i64) -> Result<Int> {
    let big_n = n - s;
    if big_n < 0 || h < 2 {
        return domain("single_fact_lemma_sum needs n - s >= 0 and h >= 2");
    }
    let mut tot = Rat::zero();
    for i in 0..=big_n {
        let bh = binom_r(h, i);
        tot += match form {
            LemmaForm::A1 => bh * pochhammer(&ri(-h), i)? * fact_r(big_n - i),
            LemmaForm::A2 => &bh * &bh * ri(sign(i)) * fact_r(i) * fact_r(big_n - i),
            LemmaForm::A3 => bh * binom_rat(&ri(i - h - 1), i) * fact_r(i) * fact_r(big_n - i),
            LemmaForm::B1 => {
                bh * pochhammer(&ri(big_n + 1 - h), i)?
                    * ri(sign(big_n - i))
                    * pochhammer(&ri(-big_n), big_n - i)?
            }
            LemmaForm::B2 => {
                bh * binom_r(big_n, i)
                    * binom_rat(&ri(h - big_n - 1), i)
                    * ri(sign(i))
                    * fact_r(i)
                    * fact_r(big_n - i)
            }
        };
    }
    crate::arith::as_int(&tot)
}

/// (n-s)! against the chosen sum, modulo h.
pub fn single_fact_lemma_check(form: LemmaForm, n: i64, s: i64, h: i64) -> Result<CongruenceReport> {
    let v = single_fact_lemma_sum(form, n, s, h)?;
    CongruenceReport::modular(
        "single_fact_lemma",
        Inputs::new().with("form", format!("{form:?}").to_lowercase()).with("n", n).with("s", s).with("h", h),
        to_rat(&v),
        to_rat(&factorial((n - s) as u64)),
        &Int::from(h),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultipleSumVariant {
    Quad,
    Five,
}

/// Polynomial expansions in n of p_{n-s}(alpha, beta n + gamma).
pub fn multiple_sum_expansion(variant: MultipleSumVariant, n: i64, s: i64, params: &FactorialParams) -> Result<Rat> {
    let (alpha, beta, gamma) = linear(params)?;
    if n < 0 || s < 0 {
        return domain("multiple_sum_expansion needs n, s >= 0");
    }
    let big_n = n - s;
    let iverson = if n <= s { Int::one() } else { Int::zero() };
    if big_n <= 0 {
        return Ok(to_rat(&iverson));
    }
    let ab = alpha + beta;
    let c = alpha * (s + 1) - gamma;
    let pw = |b: i64, e: i64| ipow(b, e as u32);
    let tot = match variant {
        MultipleSumVariant::Quad => {
            let mut tot = Rat::zero();
            for k in 0..big_n {
                for m in 0..=k {
                    let s1 = stirling1(k, m);
                    if s1.is_zero() {
                        continue;
                    }
                    for pp in 0..=big_n {
                        for r in 0..=m.min(pp) {
                            let j = pp - r;
                            for t in j..=(big_n - k) {
                                let v = binom_i(m, r)
                                    * binom_i(big_n, k)
                                    * binom_i(t, j)
                                    * &s1
                                    * stirling1(big_n - k, t)
                                    * sign(j - 1)
                                    * pw(beta, r)
                                    * pw(gamma, m - r)
                                    * pw(ab, j)
                                    * pw(c, t - j)
                                    * pw(n, pp);
                                tot += to_rat(&v) * rpow(&ri(alpha), big_n - m - t)?;
                            }
                        }
                    }
                }
            }
            tot
        }
        MultipleSumVariant::Five => {
            // index groups (m, r), (i, q = u - p), (t, j = p - r) are summed separately
            let mut tot = Rat::zero();
            for k in 0..big_n {
                let mut g_i = Int::zero();
                for i in 0..=k {
                    let mut q_sum = Int::zero();
                    for q in 0..=i {
                        q_sum += binom_i(i, q) * sign(q) * pw(s, i - q) * pw(n, q);
                    }
                    g_i += stirling1(k, i) * q_sum;
                }
                let mut partial = Rat::zero();
                for m in 0..=k {
                    let s1 = stirling1(k, m);
                    if s1.is_zero() {
                        continue;
                    }
                    for r in 0..=m {
                        let left = binom_i(m, r) * &s1 * pw(beta, r) * pw(gamma, m - r) * pw(n, r);
                        for t in 0..=(big_n - k) {
                            let mut j_sum = Int::zero();
                            for j in 0..=t {
                                j_sum += binom_i(t, j) * pw(ab, j) * pw(c, t - j) * pw(n, j) * sign(j);
                            }
                            let v = &left * stirling1(big_n - k, t) * j_sum;
                            partial += to_rat(&v) * rpow(&ri(alpha), big_n - m - t)?;
                        }
                    }
                }
                tot += partial * to_rat(&(g_i * sign(k + 1))) / fact_r(k);
            }
            tot
        }
    };
    Ok(tot + to_rat(&iverson))
}

fn gcomb(a: i64, b: i64) -> Int {
    if b < 0 {
        Int::zero()
    } else {
        binom_i(a, b)
    }
}

/// (n-1)! by one of the three Stirling triple sums over (p, k, t).
pub fn single_fact_triple_sum(form: u8, n: i64) -> Result<Int> {
    if n < 1 {
        return domain("single_fact_triple_sum needs n >= 1");
    }
    let mut tot = Int::zero();
    for p in 0..=n {
        let mut inner = Int::zero();
        match form {
            1 => {
                for k in 0..n {
                    for t in 0..=k {
                        inner += gcomb(n, n - 1 - k) * stirling1(n - 1 - k, p) * stirling1(k, k - t) * sign(n - 1 - p);
                    }
                }
                tot += inner * ipow(n - 1, p as u32);
            }
            2 => {
                for k in 0..n {
                    for t in 0..(n - k) {
                        inner += gcomb(n, k) * stirling1(k, p) * stirling1(n - 1 - k, n - 1 - k - t) * sign(n - 1 - p);
                    }
                }
                tot += inner * ipow(n - 1, p as u32);
            }
            3 => {
                for k in 0..n {
                    for t in 0..=k {
                        inner += gcomb(n, n - 1 - k) * stirling1(n - 1 - k, n - p) * stirling1(k, k - t) * sign(p + 1);
                    }
                }
                tot += inner * ipow(n - 1, (n - p) as u32);
            }
            _ => return domain(format!("triple sum form {form} (expected 1..3)")),
        }
    }
    Ok(tot)
}

/// Both sides of Riordan's n^n expansions.
pub fn riordan_check(n: i64) -> Result<CongruenceReport> {
    if n < 1 {
        return domain("riordan_check needs n >= 1");
    }
    let a: Int = (0..n).map(|k| binom_i(n - 1, k) * factorial((k + 1) as u64) * ipow(n, (n - 1 - k) as u32)).sum();
    let b: Int = (0..n).map(|k| binom_i(n - 1, k) * factorial((n - k) as u64) * ipow(n, k as u32)).sum();
    let target = ipow(n, n as u32);
    let inputs = || Inputs::new().with("n", n);
    let forms = vec![
        CongruenceReport::exact_int("riordan", inputs().with("form", 1), a, target.clone()),
        CongruenceReport::exact_int("riordan", inputs().with("form", 2), b, target),
    ];
    Ok(CongruenceReport::all_of("riordan", inputs(), forms))
}

/// (2n-1)!! by one of the five Stirling/double-factorial sums.
pub fn dbl_fact_triple_sum(form: u8, n: i64) -> Result<Int> {
    if n < 1 {
        return domain("dbl_fact_triple_sum needs n >= 1");
    }
    if !(1..=5).contains(&form) {
        return domain(format!("double-factorial triple sum form {form} (expected 1..5)"));
    }
    let mut t = Rat::zero();
    for k in 1..=n {
        for j in 1..=k {
            match form {
                1 => {
                    t += to_rat(&(stirling1(k - 1, j - 1) * ipow(2, (n - j) as u32) * sign(n - k)))
                        * pochhammer(&ri(1 - n), n - k)?
                }
                2 => {
                    for m in 0..=(n - k) {
                        t += to_rat(
                            &(stirling1(k - 1, j - 1)
                                * stirling1(n - k + 1, m + 1)
                                * ipow(2, (n - j) as u32)
                                * sign(n - k - m)
                                * ipow(n, m as u32)),
                        );
                    }
                }
                3 => t += to_rat(&(gcomb(2 * n - k - 1, k - 1) * stirling1(k, j) * double_factorial(2 * n - 2 * k - 1))),
                4 => {
                    for m in 0..=(n - k) {
                        t += to_rat(
                            &(gcomb(2 * n - k - 1, k - 1)
                                * stirling1(k, j)
                                * stirling1(n - k, m)
                                * ipow(2, (n - k - m) as u32)),
                        );
                    }
                }
                _ => {
                    for m in 0..=(n - k) {
                        t += to_rat(&(gcomb(2 * n - k - 1, k - 1) * stirling1(k, j)))
                            * fcf(2, n - k + 1, m + 1)
                            * ri(sign(n - k - m))
                            * to_rat(&ipow(2 * n - 2 * k, m as u32));
                    }
                }
            }
        }
    }
    crate::arith::as_int(&t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactSumForm {
    Pochhammer,
    Binomial,
    Double1,
    Double2,
}

impl ExactSumForm {
    pub const ALL: [ExactSumForm; 4] = [Self::Pochhammer, Self::Binomial, Self::Double1, Self::Double2];
}

/// (alpha n - 1)!_(alpha) through the convolution sums of lower alpha-factorials.
///
/// All four forms vanish at n = 1 while the target is alpha - 1, so n >= 2 is required.
pub fn alpha_fact_exact_sums(form: ExactSumForm, alpha: i64, n: i64) -> Result<Int> {
    if alpha < 2 || n < 2 {
        return domain("alpha_fact_exact_sums needs alpha >= 2 and n >= 2");
    }
    let inv = rat(1, alpha);
    let a = ri(alpha);
    let af = |x: i64| to_rat(&afact(x, alpha));
    let mut tot = Rat::zero();
    for k in 0..n {
        let outer = binom_r(n - 1, k + 1) * ri(sign(k));
        if outer.is_zero() {
            continue;
        }
        match form {
            ExactSumForm::Pochhammer => {
                tot += &outer
                    * pochhammer(&inv, -(k + 1))?
                    * pochhammer(&(&inv - ri(n)), k + 1)?
                    * af(alpha * (k + 1) - 1)
                    * af(alpha * (n - k - 1) - 1);
            }
            ExactSumForm::Binomial => {
                let den = binom_rat(&(&inv - ri(1)), k + 1);
                if den.is_zero() {
                    return domain(format!("binom(1/alpha - 1, {}) vanishes", k + 1));
                }
                tot += &outer * binom_rat(&(&inv + ri(k - n)), k + 1) / den
                    * af(alpha * (k + 1) - 1)
                    * af(alpha * (n - k - 1) - 1);
            }
            ExactSumForm::Double1 | ExactSumForm::Double2 => {
                for i in 0..=(k + 1) {
                    let common = &outer
                        * binom_r(k + 1, i)
                        * rpow(&a, k + 1 - i)?
                        * af(alpha * i - 1)
                        * af(alpha * (n - 1 - k) - 1);
                    tot += if form == ExactSumForm::Double1 {
                        common * pochhammer(&ri(n - 1 - k), k + 1 - i)?
                    } else {
                        common * binom_rat(&ri(n - 1 - i), k + 1 - i) * fact_r(k + 1 - i)
                    };
                }
            }
        }
    }
    crate::arith::as_int(&tot)
}

/// (n-1)! = (2n-3)!! plus two double sums over products of double factorials.
pub fn single_fact_via_dblfact(n: i64) -> Result<Int> {
    if n < 2 {
        return domain("single_fact_via_dblfact needs n >= 2");
    }
    let df = |x: i64| to_rat(&double_factorial(x));
    let mut t = df(2 * n - 3);
    for k in 1..(n - 1) {
        for j in k..n {
            t += ri(sign(j + 1))
                * pochhammer(&ri(-j), k)?
                * pochhammer(&ri(-(2 * n - k - j - 2)), j - k)?
                * df(2 * n - 2 * j - 3);
        }
        for j in (k + 1)..n {
            t += ri(sign(j))
                * pochhammer(&ri(-j), k + 1)?
                * pochhammer(&ri(-(2 * n - k - j - 3)), j - k - 1)?
                * df(2 * n - 2 * j - 3);
        }
    }
    crate::arith::as_int(&t)
}

/// sum_k binom(n, k+1) (2k-1)!! (2n-2k-3)!! = (2n-1)!!.
pub fn dbl_fact_convolution(n: i64) -> Int {
    (0..n)
        .map(|k| binom_i(n, k + 1) * double_factorial(2 * k - 1) * double_factorial(2 * n - 2 * k - 3))
        .sum()
}

/// Falling factorial used by some of the sums, re-exported for callers building their own.
pub fn falling(x: &Rat, n: i64) -> Result<Rat> {
    falling_factorial(x, n)
}

/// Least residue helper for signed integers.
pub fn residue_i(v: &Int, m: i64) -> Int {
    v.mod_floor(&Int::from(m))
}
