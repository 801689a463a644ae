//! Harmonic numbers, their alpha-shifted variants, and the identity suites
//! built on them: Stirling expansions, coefficient-triangle closed forms, and a
//! registry of closed forms for the squared-binomial factorial sums.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{binom_i, binom_rat, factorial, pochhammer, rat, ri, rpow, sign, to_rat, Int, Rat};
use crate::error::{domain, Result};
use crate::modular::is_prime;
use crate::report::{CongruenceReport, Inputs};
use crate::triangles::{fcf, stirling1};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicValue {
    pub order: i64,
    pub index: i64,
    /// 1 for the ordinary numbers
    pub alpha: i64,
    #[serde(serialize_with = "crate::report::dec::ser_rat", deserialize_with = "crate::report::dec::de_rat")]
    pub value: Rat,
}

impl HarmonicValue {
    pub fn new(alpha: i64, n: i64, r: i64) -> Result<Self> {
        Ok(HarmonicValue { order: r, index: n, alpha, value: harmonic_alpha(alpha, n, r)? })
    }
}

/// H_n^(r) = sum_{k=1..n} k^-r, zero for n <= 0.
pub fn harmonic(n: i64, r: i64) -> Result<Rat> {
    harmonic_alpha(1, n, r)
}

/// sum_{k=1..n} (alpha k + 1 - alpha)^-r.
pub fn harmonic_alpha(alpha: i64, n: i64, r: i64) -> Result<Rat> {
    if r < 1 || alpha < 1 {
        return domain("harmonic numbers need r >= 1 and alpha >= 1");
    }
    let mut s = Rat::zero();
    for k in 1..=n {
        s += rpow(&ri(alpha * k + 1 - alpha), -r)?;
    }
    Ok(s)
}

fn h(n: i64, r: i64) -> Rat {
    harmonic(n, r).expect("r >= 1")
}

fn fact_r(n: i64) -> Rat {
    to_rat(&factorial(n.max(0) as u64))
}

fn binom_r(n: i64, k: i64) -> Rat {
    to_rat(&binom_i(n, k))
}

/// [n+1, k] as a polynomial in H_n, ..., H_n^(k-1), for k = 2..5.
pub fn stirling_harmonic_identity(k: i64, n: i64) -> Result<CongruenceReport> {
    if n < 0 {
        return domain("n must be non-negative");
    }
    let (h1, h2, h3, h4) = (h(n, 1), h(n, 2), h(n, 3), h(n, 4));
    let poly = match k {
        2 => h1,
        3 => (&h1 * &h1 - &h2) / ri(2),
        4 => (&h1 * &h1 * &h1 - ri(3) * &h1 * &h2 + ri(2) * &h3) / ri(6),
        5 => {
            let h1sq = &h1 * &h1;
            (&h1sq * &h1sq - ri(6) * &h1sq * &h2 + ri(3) * &h2 * &h2 + ri(8) * &h1 * &h3 - ri(6) * &h4) / ri(24)
        }
        _ => return domain(format!("stirling_harmonic_identity covers k = 2..5, got {k}")),
    };
    Ok(CongruenceReport::exact(
        "stirling_harmonic",
        Inputs::new().with("k", k).with("n", n),
        to_rat(&stirling1(n + 1, k)),
        fact_r(n) * poly,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FcfHarmonicForm {
    M1Sum,
    M2Sum,
    M1Closed,
    M2Closed,
    M3Closed,
}

impl FcfHarmonicForm {
    pub const ALL: [FcfHarmonicForm; 5] = [Self::M1Sum, Self::M2Sum, Self::M1Closed, Self::M2Closed, Self::M3Closed];

    pub fn name(self) -> &'static str {
        match self {
            Self::M1Sum => "m1_sum",
            Self::M2Sum => "m2_sum",
            Self::M1Closed => "m1_closed",
            Self::M2Closed => "m2_closed",
            Self::M3Closed => "m3_closed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Coefficient-triangle entries FcfII(alpha, n+1, m+1)/n! against harmonic expressions.
pub fn fcf_harmonic_identity(form: FcfHarmonicForm, alpha: i64, n: i64) -> Result<CongruenceReport> {
    if alpha < 1 || n < 0 {
        return domain("fcf_harmonic_identity needs alpha >= 1, n >= 0");
    }
    let a = ri(alpha);
    let shift = ri(1) - rat(1, alpha);
    let b = rpow(&a, n)? * binom_rat(&(ri(n) + rat(1 - alpha, alpha)), n);
    let ha = |r| harmonic_alpha(alpha, n, r);
    let (m, rhs) = match form {
        FcfHarmonicForm::M1Sum => {
            let s: Rat = (0..=n).map(|k| binom_rat(&shift, k) * ri(sign(k)) * h(n - k, 1)).sum();
            (1, rpow(&a, n - 1)? * s)
        }
        FcfHarmonicForm::M2Sum => {
            let s: Rat = (0..=n)
                .map(|k| {
                    let x = h(n - k, 1);
                    binom_rat(&shift, k) * ri(sign(k)) * (&x * &x - h(n - k, 2))
                })
                .sum();
            (2, rpow(&a, n - 2)? / ri(2) * s)
        }
        FcfHarmonicForm::M1Closed => (1, &b * ha(1)?),
        FcfHarmonicForm::M2Closed => {
            let x1 = ha(1)?;
            (2, &b / ri(2) * (&x1 * &x1 - ha(2)?))
        }
        FcfHarmonicForm::M3Closed => {
            let (x1, x2, x3) = (ha(1)?, ha(2)?, ha(3)?);
            (3, &b / ri(6) * (&x1 * &x1 * &x1 - ri(3) * &x1 * &x2 + ri(2) * x3))
        }
    };
    Ok(CongruenceReport::exact(
        "fcf_harmonic",
        Inputs::new().with("form", form.name()).with("alpha", alpha).with("n", n),
        fcf(alpha, n + 1, m + 1) / fact_r(n),
        rhs,
    ))
}

/// p^2 | [p, 2] and p^2 | sum_{j=1}^{p-2} (-1)^(j-1) p^j [p, j+2].
///
/// Both hold for primes p > 3; the oracle records primality, since composites
/// may also satisfy them.
pub fn wolstenholme_stirling(p: i64) -> Result<CongruenceReport> {
    if p < 5 {
        return domain("wolstenholme_stirling needs p >= 5");
    }
    let psq = Int::from(p * p);
    let comb: Int = (1..=p - 2)
        .map(|j| stirling1(p, j + 2) * num_traits::pow(Int::from(p), j as usize) * sign(j - 1))
        .sum();
    let inputs = || Inputs::new().with("p", p);
    let forms = vec![
        CongruenceReport::modular("wolstenholme_stirling", inputs().with("form", 1), to_rat(&stirling1(p, 2)), Rat::zero(), &psq)?,
        CongruenceReport::modular("wolstenholme_stirling", inputs().with("form", 2), to_rat(&comb), Rat::zero(), &psq)?,
    ];
    Ok(CongruenceReport::all_of("wolstenholme_stirling", inputs(), forms).with_oracle(is_prime(&Int::from(p))))
}

/// Parameters for `sigma_identity`; each identity reads the fields it needs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaParams {
    pub n: i64,
    pub d: i64,
    pub h: i64,
    pub i: i64,
    pub form: u8,
}

pub const SIGMA_IDS: &[&str] = &[
    "s1d_sum",
    "s1d_alt",
    "s1d_mod",
    "s1d_closed",
    "s1d_closed_printed",
    "harmonic_dform",
    "expansion_2n1",
    "t_forms",
    "h_forms",
    "h_printed",
    "sn_expansions",
    "sn_expansion_printed",
    "ratio",
];

/// sum_i binom(h, i)^2 (-1)^i i! (N - i)!
pub fn squared_binomial_sum(h: i64, big_n: i64) -> Int {
    (0..=big_n)
        .map(|i| {
            let b = binom_i(h, i);
            &b * &b * sign(i) * factorial(i as u64) * factorial((big_n - i) as u64)
        })
        .sum()
}

/// S_{1,d}(n) in its Pochhammer form.
pub fn s1d(d: i64, n: i64) -> Result<Rat> {
    let mut s = Rat::zero();
    for i in 0..=n {
        let b = binom_r(i + d, d);
        s += &b * &b * fact_r(i) * pochhammer(&ri(2 * d + i), n - i)? / ri((i + d) * (i + d));
    }
    Ok(ri(sign(n) * d * d) * s)
}

fn s1d_alt(d: i64, n: i64) -> Result<Rat> {
    let mut s = ri(1);
    for i in 1..=n {
        s += ri(d * d) * binom_r(i + d, i) * ri(sign(i)) * pochhammer(&ri(-(i + d)), i)?
            / (ri((i + d) * (i + d)) * pochhammer(&ri(2 * d), i)?);
    }
    Ok(ri(sign(n)) * pochhammer(&ri(2 * d), n)? * s)
}

/// The two closed forms of S_{1,d}(n) for d <= 4. The second forms for d >= 2
/// are printed with an overall factor 1/d^2 missing; `printed` keeps that slip.
pub fn s1d_closed(d: i64, n: i64, form: u8, printed: bool) -> Result<Rat> {
    let sg = ri(sign(n));
    let hn = |k: i64| h(k, 1);
    let nn = ri(n);
    let v = match (d, form) {
        (1, 1) => sg * pochhammer(&ri(2), n)? * hn(n + 1),
        (1, 2) => sg * fact_r(n + 1) * hn(n + 1),
        (2, 1) => sg * fact_r(n + 2) * (ri(n + 3) * hn(n + 2) - ri(2 * (n + 2))),
        (2, 2) => {
            let q = rat(2 * n.pow(3) + 8 * n * n + 7 * n - 1, (n + 1) * (n + 2) * (n + 3));
            rat(3, 2) * sg * pochhammer(&ri(4), n)? * (hn(n) - q)
        }
        (3, 1) => rat(1, 4) * sg * fact_r(n + 4) * (ri(n + 5) * hn(n + 3) - ri(3 * (n + 3))),
        (3, 2) => {
            let q = rat(3 * n.pow(4) + 24 * n.pow(3) + 60 * n * n + 46 * n - 1, (n + 1) * (n + 2) * (n + 3) * (n + 5));
            rat(10, 3) * sg * pochhammer(&ri(6), n)? * (hn(n) - q)
        }
        (4, 1) => {
            let lead = ri(3 * (n + 5) * (n + 6) * (n + 7)) * hn(n + 4);
            rat(1, 108) * sg * fact_r(n + 4) * (lead - ri((n + 4) * (11 * n * n + 118 * n + 327)))
        }
        (4, 2) => {
            let num = [-108i64, 24426, 45548, 33329, 12404, 2498, 260, 11]
                .iter()
                .rev()
                .fold(Rat::zero(), |acc, c| acc * &nn + ri(*c));
            let den: i64 = (1..=7).map(|k| n + k).product();
            rat(35, 12) * sg * pochhammer(&ri(8), n)? * (ri(3) * hn(n) - num / ri(den))
        }
        _ => return domain(format!("closed forms exist for d = 1..4 and form 1 or 2, got d = {d}, form = {form}")),
    };
    Ok(if form == 2 && d >= 2 && !printed { v * ri(d * d) } else { v })
}

/// The general harmonic d-form of S_{1,d}(n).
pub fn harmonic_dform(d: i64, n: i64) -> Result<Rat> {
    let mut s = Rat::zero();
    for i in 1..=d {
        let c = rat(sign(d - i), 1) * fact_r(d + i - 2) / (fact_r(i - 1) * fact_r(i - 1) * fact_r(d - i));
        s += c * (h(n - 1 + d + i, 1) - h(d + i - 1, 1));
    }
    Ok(ri(sign(n)) * pochhammer(&ri(2 * d), n)? * (ri(1) + rat(d, 2) * binom_r(2 * d, d) * s))
}

fn bracket_2n1(i: i64, first: bool) -> Rat {
    let (a, b) = (ri(2 * i + 1), ri(3 * i + 1));
    let sq = &a * &a;
    if first {
        ri(11) + rat(20, i) - ri(8) / &a + ri(1) / sq
    } else {
        rat(10, i) + ri(5) / &a - ri(1) / sq - ri(32) / b
    }
}

/// The four expansions of S_{1,n+1}(n) = sum binom(2n+1, i)^2 (-1)^i i! (n-i)!.
pub fn expansion_2n1(form: u8, n: i64) -> Result<Rat> {
    let sg = ri(sign(n));
    let nf = fact_r(n);
    let lead = &sg * fact_r(3 * n + 1) / (&nf * &nf);
    let mut s = Rat::zero();
    for i in 1..=n {
        let b = binom_r(2 * i + 1, i);
        let b2 = &b * &b;
        let fi = fact_r(i);
        s += match form {
            1 => b2 * &fi * &fi * &fi / (ri(2) * fact_r(3 * i + 1)) * bracket_2n1(i, true),
            2 => {
                let q = pochhammer(&ri(i + 1), n - i)?;
                b2 * &fi * pochhammer(&ri(3 * i + 2), 3 * n - 3 * i)? / (&q * &q) * bracket_2n1(i, true)
            }
            3 => b2 * &fi * &fi * &fi / fact_r(3 * i) * bracket_2n1(i, false),
            4 => {
                let q = pochhammer(&ri(i + 1), n - i)?;
                b2 * &fi * pochhammer(&ri(3 * i + 1), 3 * n - 3 * i)? / (&q * &q) * bracket_2n1(i, false)
            }
            _ => return domain(format!("expansion_2n1 form {form} (expected 1..4)")),
        };
    }
    Ok(match form {
        1 | 3 => &lead / ri(8) * (ri(8) - s),
        2 => lead - &sg / ri(16) * s,
        _ => lead - ri(3 * n + 1) * &sg / ri(8) * s,
    })
}

fn nonzero(v: i64, what: &str) -> Result<()> {
    if v == 0 {
        domain(format!("pole: {what} = 0"))
    } else {
        Ok(())
    }
}

/// T_{h,n} as a finite product.
pub fn t_product(h: i64, n: i64) -> Result<Rat> {
    let mut r = ri(1);
    for j in 1..=n {
        nonzero(h - j, "h - j")?;
        nonzero(2 * h + 1 - 2 * j, "2h + 1 - 2j")?;
        let (a, b) = (h - 2 * j, h + 1 - 2 * j);
        r *= rat(a * a * b * b, 2 * (2 * h + 1 - 2 * j) * (h - j));
    }
    Ok(r)
}

/// T_{h,n} through Pochhammer symbols at half-integer arguments.
pub fn t_pochhammer(h: i64, n: i64) -> Result<Rat> {
    let a = pochhammer(&rat(1 - h, 2), n)?;
    let b = pochhammer(&(ri(1) - rat(h, 2)), n)?;
    let den = pochhammer(&(rat(1, 2) - ri(h)), n)? * pochhammer(&ri(1 - h), n)?;
    if den.is_zero() {
        return domain("pole: (1 - h)_n = 0");
    }
    Ok(rpow(&ri(4), n)? * &a * &a * &b * &b / den)
}

/// T_{h,n} = (1-h)_{2n}^2 / (1-2h)_{2n}.
pub fn t_ratio(h: i64, n: i64) -> Result<Rat> {
    let num = pochhammer(&ri(1 - h), 2 * n)?;
    let den = pochhammer(&ri(1 - 2 * h), 2 * n)?;
    if den.is_zero() {
        return domain("pole: (1 - 2h)_{2n} = 0");
    }
    Ok(&num * &num / den)
}

/// H_{h,i} in factored form.
pub fn h_factored(h: i64, i: i64) -> Result<Rat> {
    nonzero(2 * h + 1 - 2 * i, "2h + 1 - 2i")?;
    nonzero(h + 1 - 2 * i, "h + 1 - 2i")?;
    nonzero(h - i, "h - i")?;
    Ok(rat((h + 1) * (2 * h + 1 - 4 * i) * (h - 2 * i), (2 * h + 1 - 2 * i) * (h + 1 - 2 * i) * (h - i)))
}

/// H_{h,i} as partial fractions. The printed version carries a + on the first term.
pub fn h_partial_fractions(h: i64, i: i64, printed: bool) -> Result<Rat> {
    nonzero(h - 1, "h - 1")?;
    nonzero(h, "h")?;
    nonzero(h - i, "h - i")?;
    nonzero(2 * h + 1 - 2 * i, "2h + 1 - 2i")?;
    nonzero(h + 1 - 2 * i, "h + 1 - 2i")?;
    let first = rat(h * (h + 1) * (2 * h - 1), (h - 1) * (h - i));
    let first = if printed { first } else { -first };
    Ok(first
        + rat(2 * (h + 1) * (h + 1) * (2 * h + 1), h * (2 * h + 1 - 2 * i))
        + rat(2 * (h + 1), h * (h - 1) * (h + 1 - 2 * i)))
}

/// S_n(h) = sum_{i<=2n} binom(h, i)^2 (-1)^i i! (2n-i)!.
pub fn sn_direct(h: i64, n: i64) -> Rat {
    to_rat(&squared_binomial_sum(h, 2 * n))
}

/// S_n(h) as sum binom(h, 2i)^2 (2i)! (T_{h,n}/T_{h,i}) H_{h,i}.
pub fn sn_expansion1(h: i64, n: i64, printed_h: bool) -> Result<Rat> {
    let tn = t_product(h, n)?;
    let mut s = Rat::zero();
    for i in 0..=n {
        let b = binom_r(h, 2 * i);
        let hh = if printed_h { h_partial_fractions(h, i, true)? } else { h_factored(h, i)? };
        s += &b * &b * fact_r(2 * i) * &tn / t_product(h, i)? * hh;
    }
    Ok(s)
}

/// S_n(h) reindexed with i -> n - i and the Pochhammer ratio in place of T.
pub fn sn_expansion2(h: i64, n: i64) -> Result<Rat> {
    let mut s = Rat::zero();
    for i in 0..=n {
        let k = n - i;
        let b = binom_r(h, 2 * k);
        let num = pochhammer(&ri(1 - h + 2 * k), 2 * i)?;
        let den = pochhammer(&ri(1 - 2 * h + 2 * k), 2 * i)?;
        if den.is_zero() {
            return domain("pole: (1 - 2h + 2(n-i))_{2i} = 0");
        }
        s += &b * &b * fact_r(2 * k) * &num * &num / den * h_factored(h, k)?;
    }
    Ok(s)
}

fn need(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        domain(msg.to_string())
    }
}

/// Evaluate one registered identity; see `SIGMA_IDS`.
pub fn sigma_identity(id: &str, p: &SigmaParams) -> Result<CongruenceReport> {
    let SigmaParams { n, d, h, i, form } = *p;
    let base = Inputs::new();
    match id {
        "s1d_sum" | "s1d_alt" | "s1d_mod" | "s1d_closed" | "s1d_closed_printed" | "harmonic_dform" => {
            need(d >= 1 && n >= 0, "S_{1,d}(n) needs d >= 1, n >= 0")?;
            let inputs = base.with("d", d).with("n", n);
            let direct = to_rat(&squared_binomial_sum(n + d, n));
            match id {
                "s1d_sum" => Ok(CongruenceReport::exact(id, inputs, s1d(d, n)?, direct)),
                "s1d_alt" => Ok(CongruenceReport::exact(id, inputs, s1d_alt(d, n)?, direct)),
                "s1d_mod" => CongruenceReport::modular(id, inputs, direct, fact_r(n), &Int::from(n + d)),
                "s1d_closed" | "s1d_closed_printed" => {
                    let f = if form == 0 { 1 } else { form };
                    let v = s1d_closed(d, n, f, id == "s1d_closed_printed")?;
                    Ok(CongruenceReport::exact(id, inputs.with("form", f), v, direct))
                }
                _ => CongruenceReport::modular(
                    id,
                    inputs.with("status", "asserted"),
                    harmonic_dform(d, n)?,
                    fact_r(n),
                    &Int::from(n + d),
                ),
            }
        }
        "expansion_2n1" => {
            need(n >= 0, "expansion_2n1 needs n >= 0")?;
            let f = if form == 0 { 1 } else { form };
            let v = expansion_2n1(f, n)?;
            let inputs = || Inputs::new().with("form", f).with("n", n);
            let forms = vec![
                CongruenceReport::exact(id, inputs().with("against", "sum"), v.clone(), to_rat(&squared_binomial_sum(2 * n + 1, n))),
                CongruenceReport::modular(id, inputs().with("against", "factorial"), v, fact_r(n), &Int::from(2 * n + 1))?,
            ];
            Ok(CongruenceReport::all_of(id, inputs(), forms))
        }
        "t_forms" => {
            need(h >= 1 && n >= 0, "t_forms needs h >= 1, n >= 0")?;
            let t = t_product(h, n)?;
            let inputs = || Inputs::new().with("h", h).with("n", n);
            let forms = vec![
                CongruenceReport::exact(id, inputs().with("form", "pochhammer"), t_pochhammer(h, n)?, t.clone()),
                CongruenceReport::exact(id, inputs().with("form", "ratio"), t_ratio(h, n)?, t),
            ];
            Ok(CongruenceReport::all_of(id, inputs(), forms))
        }
        "h_forms" | "h_printed" => Ok(CongruenceReport::exact(
            id,
            base.with("h", h).with("i", i),
            h_partial_fractions(h, i, id == "h_printed")?,
            h_factored(h, i)?,
        )),
        "sn_expansions" | "sn_expansion_printed" => {
            need(n >= 0 && h >= 2 * n + 1, "S_n(h) expansions need h >= 2n + 1")?;
            let direct = sn_direct(h, n);
            let inputs = || Inputs::new().with("h", h).with("n", n);
            if id == "sn_expansion_printed" {
                return Ok(CongruenceReport::exact(id, inputs(), sn_expansion1(h, n, true)?, direct));
            }
            let forms = vec![
                CongruenceReport::exact(id, inputs().with("form", 1), sn_expansion1(h, n, false)?, direct.clone()),
                CongruenceReport::exact(id, inputs().with("form", 2), sn_expansion2(h, n)?, direct),
            ];
            Ok(CongruenceReport::all_of(id, inputs(), forms))
        }
        "ratio" => {
            need(0 <= i && i <= n, "ratio needs 0 <= i <= n")?;
            let lhs = t_product(h, n)? / t_product(h, i)?;
            let num = pochhammer(&ri(1 - h + 2 * i), 2 * n - 2 * i)?;
            let den = pochhammer(&ri(1 - 2 * h + 2 * i), 2 * n - 2 * i)?;
            if den.is_zero() {
                return domain("pole: (1 - 2h + 2i)_{2n-2i} = 0");
            }
            Ok(CongruenceReport::exact(id, base.with("h", h).with("n", n).with("i", i), lhs, &num * &num / den))
        }
        _ => domain(format!("unknown identity id {id:?}; known: {}", SIGMA_IDS.join(", "))),
    }
}

/// H_n^(r) value used by the CLI; `r` defaults to 1.
pub fn harmonic_value(n: i64, r: Option<i64>) -> Result<HarmonicValue> {
    HarmonicValue::new(1, n, r.unwrap_or(1))
}
