//! Dense univariate polynomials, truncated power series, and trivariate
//! integer polynomials over the formal variables x_p, x_t, x_k.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_residue, ri, Int, Rat};
use crate::error::{domain, Error, Result};

/// Polynomial with rational coefficients; index = degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly1::new(cs.iter().map(|&c| ri(c)).collect())
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1::new(vec![c])
    }

    /// x^k.
    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly1::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division over the rationals: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &Poly1) -> Result<(Poly1, Poly1)> {
        let dd = match d.degree() {
            Some(k) => k,
            None => return domain("polynomial division by zero"),
        };
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly1::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly1::new(q), Poly1::new(r)))
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly1::new(v)
    }
}

/// Power series known through z^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn from_coeffs(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        Series { coeffs }
    }

    pub fn from_poly(p: &Poly1, order: usize) -> Self {
        Series::from_coeffs(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::from_coeffs(vec![Rat::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Rat> {
        self.coeffs.get(n).ok_or_else(|| {
            Error::Index(format!("coefficient {n} beyond truncation order {}", self.order()))
        })
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        let mut v = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                v[i + j] += a * b;
            }
        }
        Series { coeffs: v }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The series S with Q S = P mod z^{N+1}.
pub fn series_of_rational(p: &Poly1, q: &Poly1, n: usize) -> Result<Series> {
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(Error::NotInvertible {
            denominator: format!("Q(z) = {q}"),
            modulus: "z".into(),
        });
    }
    let qinv = q0.recip();
    let qc = q.coeffs();
    let mut s: Vec<Rat> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = p.coeff(k);
        for j in 1..=k.min(qc.len().saturating_sub(1)) {
            if !qc[j].is_zero() {
                v -= &qc[j] * &s[k - j];
            }
        }
        s.push(v * &qinv);
    }
    Ok(Series { coeffs: s })
}

/// Integer series division modulo m; requires Q(0) a unit mod m.
pub fn series_of_rational_mod(p: &[Int], q: &[Int], n: usize, m: &Int) -> Result<Vec<Int>> {
    let q0 = q.first().cloned().unwrap_or_default().mod_floor(m);
    let inv = crate::arith::mod_inverse(&q0, m).ok_or_else(|| Error::NotInvertible {
        denominator: q0.to_string(),
        modulus: m.to_string(),
    })?;
    let qr: Vec<Int> = q.iter().map(|c| c.mod_floor(m)).collect();
    let mut s: Vec<Int> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = p.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(qr.len().saturating_sub(1)) {
            if !qr[j].is_zero() {
                v -= &qr[j] * &s[k - j];
            }
        }
        s.push((v * &inv).mod_floor(m));
    }
    Ok(s)
}

/// Reduce expr modulo the polynomial f over Q, substitute x = n, and take the residue mod outer.
pub fn poly_mod_reduce_substitute(expr: &Poly1, f: &Poly1, n: &Int, outer: &Int) -> Result<Int> {
    if outer < &Int::from(2) {
        return domain("outer modulus must be at least 2");
    }
    let (_, r) = expr.divrem(f)?;
    let v = r.eval(&Rat::from_integer(n.clone()));
    rat_residue(&v, outer)
}

/// Which formal variable of a trivariate polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Var {
    Xp,
    Xt,
    Xk,
}

/// Trivariate polynomial in x_p, x_t, x_k with integer coefficients; no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<(u32, u32, u32), Int>,
}

impl Poly3 {
    pub fn new() -> Self {
        Poly3::default()
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: Int) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Int {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn eval(&self, xp: &Int, xt: &Int, xk: &Int) -> Int {
        self.terms
            .iter()
            .map(|(&(i, j, k), c)| {
                c * num_traits::pow(xp.clone(), i as usize)
                    * num_traits::pow(xt.clone(), j as usize)
                    * num_traits::pow(xk.clone(), k as usize)
            })
            .sum()
    }

    /// Set the two other variables to 1: coefficients of the remaining one by exponent.
    pub fn collapse(&self, keep: Var) -> BTreeMap<u32, Int> {
        let mut out: BTreeMap<u32, Int> = BTreeMap::new();
        for (&(i, j, k), c) in &self.terms {
            let e = match keep {
                Var::Xp => i,
                Var::Xt => j,
                Var::Xk => k,
            };
            *out.entry(e).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Reduce every coefficient to [0, m) and drop zeros.
pub fn poly3_reduce(p: &Poly3, m: &Int) -> Result<Poly3> {
    if m < &Int::from(2) {
        return domain("modulus must be at least 2");
    }
    let terms = p
        .terms
        .iter()
        .filter_map(|(e, c)| {
            let r = c.mod_floor(m);
            (!r.is_zero()).then_some((*e, r))
        })
        .collect();
    Ok(Poly3 { terms })
}

/// Reduce a collapsed univariate coefficient map mod m and drop zeros.
pub fn reduce_univariate(c: &BTreeMap<u32, Int>, m: &Int) -> BTreeMap<u32, Int> {
    c.iter()
        .filter_map(|(e, v)| {
            let r = v.mod_floor(m);
            (!r.is_zero()).then_some((*e, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn ints(s: &Series) -> Vec<Rat> {
        s.coeffs().to_vec()
    }

    #[test]
    fn geometric_and_hand_division() {
        let one = Poly1::from_ints(&[1]);
        let s = series_of_rational(&one, &Poly1::from_ints(&[1, -1]), 4).unwrap();
        assert_eq!(ints(&s), vec![ri(1); 5]);
        let s = series_of_rational(&Poly1::from_ints(&[1, -3]), &Poly1::from_ints(&[1, -4, 2]), 3)
            .unwrap();
        assert_eq!(ints(&s), vec![ri(1), ri(1), ri(2), ri(6)]);
        let s = series_of_rational(&Poly1::zero(), &Poly1::from_ints(&[3, 1]), 3).unwrap();
        assert!(s.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn zero_constant_term_rejected() {
        let e = series_of_rational(&Poly1::from_ints(&[1]), &Poly1::from_ints(&[0, 1]), 3);
        assert!(matches!(e, Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn reduce_substitute_examples() {
        let x2 = Poly1::from_ints(&[0, 0, 1]);
        assert_eq!(poly_mod_reduce_substitute(&x2, &x2, &int(5), &int(25)).unwrap(), int(0));
        let e = Poly1::from_ints(&[3, 2]);
        let f = Poly1::from_ints(&[1, 2]);
        assert_eq!(poly_mod_reduce_substitute(&e, &f, &int(3), &int(7)).unwrap(), int(2));
        let e = Poly1::from_ints(&[0, 1, 0, 1]);
        assert_eq!(poly_mod_reduce_substitute(&e, &x2, &int(4), &int(16)).unwrap(), int(4));
    }

    #[test]
    fn reduce_substitute_non_invertible() {
        let e = Poly1::new(vec![rat(1, 2)]);
        let f = Poly1::from_ints(&[0, 0, 1]);
        let r = poly_mod_reduce_substitute(&e, &f, &int(3), &int(4));
        assert!(matches!(r, Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn poly3_reduce_examples() {
        let m = int(7);
        let mut p = Poly3::new();
        p.add_term((1, 0, 0), int(7));
        assert!(poly3_reduce(&p, &m).unwrap().is_zero());
        let mut p = Poly3::new();
        p.add_term((0, 2, 0), int(10));
        p.add_term((0, 0, 0), int(3));
        let r = poly3_reduce(&p, &m).unwrap();
        assert_eq!(r.coeff((0, 2, 0)), int(3));
        assert_eq!(r.coeff((0, 0, 0)), int(3));
        let mut p = Poly3::new();
        p.add_term((0, 0, 0), int(-1));
        assert_eq!(poly3_reduce(&p, &int(5)).unwrap().coeff((0, 0, 0)), int(4));
    }

    #[test]
    fn canonical_form_and_display() {
        let p = Poly1::from_ints(&[1, -4, 2, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "1 - 4*z + 2*z^2");
        assert!(Poly1::from_ints(&[0, 0]).is_zero());
    }

    fn poly_strategy(max_len: usize) -> impl Strategy<Value = Poly1> {
        prop::collection::vec(-20i64..20, 0..max_len).prop_map(|v| Poly1::from_ints(&v))
    }

    proptest! {
        #[test]
        fn division_recurrence_inverts_multiplication(
            p in poly_strategy(8),
            q0 in prop_oneof![-5i64..-1, 1i64..5],
            qt in prop::collection::vec(-9i64..9, 0..6),
            n in 0usize..30,
        ) {
            let mut qc = vec![q0];
            qc.extend(qt);
            let q = Poly1::from_ints(&qc);
            let s = series_of_rational(&p, &q, n).unwrap();
            let back = Series::from_poly(&q, n).mul(&s);
            prop_assert_eq!(back, Series::from_poly(&p, n));
        }

        #[test]
        fn reduction_ignores_multiples_of_modulus(
            e in poly_strategy(8),
            g in poly_strategy(5),
            f1 in 1i64..4,
            f0 in prop_oneof![Just(1i64), Just(3), Just(5)],
            n in 1i64..40,
            m in prop_oneof![Just(9i64), Just(25), Just(27), Just(49), Just(121)],
        ) {
            let f = Poly1::from_ints(&[f0, 2 * f1]);
            let bumped = &e + &(&g * &f);
            let m = int(m);
            let a = poly_mod_reduce_substitute(&e, &f, &int(n), &m);
            let b = poly_mod_reduce_substitute(&bumped, &f, &int(n), &m);
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn reduction_commutes_with_evaluation(
            terms in prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -500i64..500), 0..12),
            m in 2i64..60,
        ) {
            let mut p = Poly3::new();
            for (e, c) in terms {
                p.add_term(e, int(c));
            }
            let m = int(m);
            let one = int(1);
            let a = p.eval(&one, &one, &one).mod_floor(&m);
            let b = poly3_reduce(&p, &m).unwrap().eval(&one, &one, &one).mod_floor(&m);
            prop_assert_eq!(a, b);
        }
    }
}
