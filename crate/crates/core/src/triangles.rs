//! Stirling triangles and the alpha-factorial coefficient triangle.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::arith::{afact, ipow, rat, ri, sign, to_rat, Int, Rat};
use crate::error::{domain, Result};
use crate::poly::Series;
use crate::report::{CongruenceReport, Inputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    Stirling1,
    Stirling2,
}

/// Lazily grown triangle; rows are appended under a write lock and never change.
#[derive(Debug)]
pub struct TriangleCache {
    kind: TriangleKind,
    rows: RwLock<Vec<Vec<Int>>>,
}

impl TriangleCache {
    pub fn new(kind: TriangleKind) -> Self {
        TriangleCache { kind, rows: RwLock::new(vec![vec![Int::one()]]) }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    fn ensure(&self, n: usize) {
        if self.rows.read().unwrap().len() > n {
            return;
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= n {
            let m = rows.len() - 1;
            let prev = &rows[m];
            let mut next = vec![Int::zero(); m + 2];
            for k in 1..=m + 1 {
                let keep = prev.get(k).cloned().unwrap_or_default();
                let w = match self.kind {
                    TriangleKind::Stirling1 => Int::from(m),
                    TriangleKind::Stirling2 => Int::from(k),
                };
                next[k] = w * keep + &prev[k - 1];
            }
            rows.push(next);
        }
    }

    pub fn get(&self, n: i64, k: i64) -> Int {
        if n < 0 || k < 0 || k > n {
            return Int::zero();
        }
        self.ensure(n as usize);
        self.rows.read().unwrap()[n as usize][k as usize].clone()
    }

    pub fn row(&self, n: usize) -> Vec<Int> {
        self.ensure(n);
        self.rows.read().unwrap()[n].clone()
    }

    /// Row n reduced mod m.
    pub fn row_mod(&self, n: usize, m: u64) -> Vec<u64> {
        let mb = Int::from(m);
        self.row(n).iter().map(|v| crate::modular::int_mod(&(v % &mb), m)).collect()
    }
}

fn s1_cache() -> &'static TriangleCache {
    static C: OnceLock<TriangleCache> = OnceLock::new();
    C.get_or_init(|| TriangleCache::new(TriangleKind::Stirling1))
}

fn s2_cache() -> &'static TriangleCache {
    static C: OnceLock<TriangleCache> = OnceLock::new();
    C.get_or_init(|| TriangleCache::new(TriangleKind::Stirling2))
}

/// Unsigned Stirling number of the first kind [n, k].
pub fn stirling1(n: i64, k: i64) -> Int {
    s1_cache().get(n, k)
}

/// Stirling number of the second kind {n, k}.
pub fn stirling2(n: i64, k: i64) -> Int {
    s2_cache().get(n, k)
}

pub fn stirling1_row(n: usize) -> Vec<Int> {
    s1_cache().row(n)
}

pub fn stirling2_row(n: usize) -> Vec<Int> {
    s2_cache().row(n)
}

pub fn stirling1_row_mod(n: usize, m: u64) -> Vec<u64> {
    s1_cache().row_mod(n, m)
}

pub fn stirling2_row_mod(n: usize, m: u64) -> Vec<u64> {
    s2_cache().row_mod(n, m)
}

/// table[m][n] = n! [z^n] (1 - a z)^{-1/a} L^m / (m! a^m) with L = log(1/(1 - a z)).
fn egf_table(alpha: i64, order: usize) -> Vec<Vec<Rat>> {
    let a = ri(alpha);
    let mut base = vec![Rat::one()];
    for k in 1..=order {
        let prev = base[k - 1].clone();
        base.push(prev * (ri(1) + ri((k as i64 - 1) * alpha)) / ri(k as i64));
    }
    let e = Series::from_coeffs(base, order);
    let mut lc = vec![Rat::zero()];
    for j in 1..=order {
        lc.push(crate::arith::rpow(&a, j as i64 - 1).unwrap() / ri(j as i64));
    }
    let l = Series::from_coeffs(lc, order);
    let mut fact = vec![Rat::one()];
    for n in 1..=order {
        fact.push(&fact[n - 1] * ri(n as i64));
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut term = e;
    for m in 0..=order {
        if m > 0 {
            term = term.mul(&l).scale(&rat(1, m as i64));
        }
        out.push(term.coeffs().iter().zip(&fact).map(|(c, f)| c * f).collect());
    }
    out
}

fn fcf_cache() -> &'static RwLock<HashMap<i64, Vec<Vec<Rat>>>> {
    static C: OnceLock<RwLock<HashMap<i64, Vec<Vec<Rat>>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// n! [z^n] of the alpha-factorial coefficient EGF of index m; equals FcfII(alpha, n+1, m+1).
pub fn alpha_factorial_coeff(alpha: i64, n: i64, m: i64) -> Result<Rat> {
    if alpha < 1 {
        return domain(format!("alpha-factorial coefficients need alpha >= 1, got {alpha}"));
    }
    if n < 0 || m < 0 {
        return domain("alpha-factorial coefficients need n, m >= 0");
    }
    if m > n {
        return Ok(Rat::zero());
    }
    let (n, m) = (n as usize, m as usize);
    if let Some(t) = fcf_cache().read().unwrap().get(&alpha) {
        if t[0].len() > n {
            return Ok(t[m][n].clone());
        }
    }
    let mut w = fcf_cache().write().unwrap();
    let have = w.get(&alpha).map_or(0, |t| t[0].len());
    if have <= n {
        let order = (n + 1).max(2 * have).max(24);
        w.insert(alpha, egf_table(alpha, order));
    }
    Ok(w[&alpha][m][n].clone())
}

/// FcfII(alpha, n, m) with the 1-based indexing used in the expansions; 0 outside n, m >= 1.
pub fn fcf(alpha: i64, n: i64, m: i64) -> Rat {
    if n < 1 || m < 1 || alpha < 1 {
        return Rat::zero();
    }
    alpha_factorial_coeff(alpha, n - 1, m - 1).expect("valid indices")
}

/// All four polynomial expansions of (alpha n - d)!_(alpha), compared with the direct product.
pub fn verify_alpha_expansion(alpha: i64, d: i64, n: i64) -> Result<CongruenceReport> {
    if alpha < 1 || d < 0 || d >= alpha || n < 1 {
        return domain("expansion needs alpha >= 1, 0 <= d < alpha, n >= 1");
    }
    let big_n = alpha * n - d;
    let target = to_rat(&afact(big_n, alpha));
    let mut forms = Vec::new();
    let inputs = || Inputs::new().with("alpha", alpha).with("d", d).with("n", n);

    let c = (big_n + alpha - 1).div_euclid(alpha);
    let e1: Rat = (0..=c)
        .map(|m| {
            to_rat(&(stirling1(c, m) * ipow(-alpha, (c - m) as u32) * ipow(big_n, m as u32)))
        })
        .sum();
    let l = (big_n - 1 + alpha).div_euclid(alpha);
    let e2: Rat = (0..=l)
        .map(|m| fcf(alpha, l + 1, m + 1) * ri(sign(l - m)) * to_rat(&ipow(big_n + 1, m as u32)))
        .sum();
    let x = alpha * n + 1 - d;
    let e3: Rat = ri(alpha - d)
        * (1..=n)
            .map(|m| fcf(alpha, n, m) * ri(sign(n - m)) * to_rat(&ipow(x, (m - 1) as u32)))
            .sum::<Rat>();
    let e4: Rat = (0..=n)
        .map(|m| fcf(alpha, n + 1, m + 1) * ri(sign(n - m)) * to_rat(&ipow(x, m as u32)))
        .sum();
    for (name, v) in [("stirling1", e1), ("fcf_shifted", e2), ("fcf_scaled", e3), ("fcf", e4)] {
        forms.push(
            CongruenceReport::exact("alpha_expansion", inputs().with("form", name), v, target.clone()),
        );
    }
    Ok(CongruenceReport::all_of("alpha_expansion", inputs().with("value", &target), forms))
}
