//! Exact arithmetic in the cyclotomic field `Q(zeta_N)` with `N = 4 p1 p2`.
//!
//! Elements are stored in the power basis `1, z, ..., z^{d-1}` of the field,
//! `d = deg Phi_N`, as a vector of integer numerators over one positive common
//! denominator. The representation is canonical: the numerators and the
//! denominator share no common factor, so two elements are equal exactly when
//! their stored data is equal.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A coprime pair `(p1, p2)` with both entries at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub p1: usize,
    pub p2: usize,
}

impl Params {
    pub fn new(p1: usize, p2: usize) -> Result<Self> {
        if p1 < 2 || p2 < 2 {
            return Err(Error::InvalidParams(format!(
                "p1 and p2 must both be at least 2, got ({p1}, {p2})"
            )));
        }
        if p1.gcd(&p2) != 1 {
            return Err(Error::InvalidParams(format!("p1 and p2 must be coprime, got ({p1}, {p2})")));
        }
        Ok(Params { p1, p2 })
    }

    /// Order of the root of unity `q`, `N = 4 p1 p2`.
    pub fn n(&self) -> usize {
        4 * self.p1 * self.p2
    }

    /// Order of `K`, `2 p1 p2`.
    pub fn k_order(&self) -> usize {
        2 * self.p1 * self.p2
    }

    /// Dimension of the algebra, `2 p1^3 p2^3`.
    pub fn dim(&self) -> usize {
        let pp = self.p1 * self.p2;
        2 * pp * pp * pp
    }

    /// `p_i` for `i` in {1, 2}.
    pub fn p(&self, i: usize) -> usize {
        match i {
            1 => self.p1,
            2 => self.p2,
            _ => panic!("index must be 1 or 2"),
        }
    }

    /// The partner `p_j`, `j != i`.
    pub fn partner(&self, i: usize) -> usize {
        self.p(3 - i)
    }
}

/// An element of `Q(zeta_N)`; see the module documentation for the layout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Rational coefficient of `zeta^i` in the power basis.
    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Degree of the ambient field.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{r}")?,
                1 => write!(f, "({r})z")?,
                _ => write!(f, "({r})z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer polynomial helpers used to build `Phi_N`.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    assert!(lead == 1 || lead == -1);
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] * lead;
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial,
/// computed by dividing `x^n - 1` by all `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut cache: Vec<Option<Vec<i64>>> = vec![None; n + 1];
    fn go(n: usize, cache: &mut Vec<Option<Vec<i64>>>) -> Vec<i64> {
        if let Some(p) = &cache[n] {
            return p.clone();
        }
        let mut p = vec![0i64; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = go(d, cache);
                p = poly_div_exact(&p, &phi_d);
            }
        }
        cache[n] = Some(p.clone());
        p
    }
    go(n, &mut cache)
}

/// The field `Q(zeta_N)` together with the read-only reduction tables.
#[derive(Clone, Debug)]
pub struct CycloField {
    n: usize,
    d: usize,
    phi: Vec<i64>,
    /// `powers[k]` is `x^k mod Phi_N` for `0 <= k < 2N`.
    powers: Vec<Vec<i64>>,
    zeta_powers: Vec<Cyclo>,
}

impl CycloField {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(2 * n);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..2 * n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Phi_N
            let top = cur[d - 1];
            for j in (1..d).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..d {
                    cur[j] -= top * phi[j];
                }
            }
        }
        let mut field = CycloField {
            n,
            d,
            phi,
            powers,
            zeta_powers: Vec::new(),
        };
        field.zeta_powers = (0..n)
            .map(|k| Cyclo {
                num: field.powers[k].iter().map(|&c| BigInt::from(c)).collect(),
                den: BigInt::one(),
            })
            .collect();
        field
    }

    pub fn for_params(p: &Params) -> Self {
        Self::new(p.n())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Coefficients of `Phi_N`, constant term first.
    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// Hex SHA-256 digest of the coefficient list of `Phi_N`.
    pub fn phi_digest(&self) -> String {
        let text = self.phi.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo {
            num: vec![BigInt::zero(); self.d],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> Cyclo {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Cyclo {
        let mut num = vec![BigInt::zero(); self.d];
        num[0] = BigInt::from(v);
        Cyclo { num, den: BigInt::one() }
    }

    pub fn from_rational(&self, r: &BigRational) -> Cyclo {
        let mut num = vec![BigInt::zero(); self.d];
        num[0] = r.numer().clone();
        self.normalize(num, r.denom().clone())
    }

    /// Builds an element from rational coefficients of a polynomial in `zeta`
    /// of any degree, reducing modulo `Phi_N`.
    pub fn canonicalize(&self, poly: &[BigRational]) -> Cyclo {
        let mut acc = self.zero();
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.scale_rational(&self.zeta_pow(k as i64), c);
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Builds an element from rational power-basis coefficients, which must
    /// already have length `d`.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<Cyclo> {
        if coeffs.len() != self.d {
            return Err(Error::Format(format!(
                "expected {} coefficients, got {}",
                self.d,
                coeffs.len()
            )));
        }
        Ok(self.canonicalize(coeffs))
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Cyclo {
        let k = k.rem_euclid(self.n as i64) as usize;
        self.zeta_powers[k].clone()
    }

    fn normalize(&self, mut num: Vec<BigInt>, mut den: BigInt) -> Cyclo {
        if num.iter().all(|c| c.is_zero()) {
            return self.zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        Cyclo { num, den }
    }

    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo {
            num: a.num.iter().map(|c| -c).collect(),
            den: a.den.clone(),
        }
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return self.normalize(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        self.normalize(num, &a.den * &b.den)
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let d = self.d;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut num: Vec<BigInt> = prod.drain(..d).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &t) in self.powers[d + k].iter().enumerate() {
                if t != 0 {
                    num[j] += &c * t;
                }
            }
        }
        self.normalize(num, &a.den * &b.den)
    }

    /// `a * zeta^k`.
    pub fn mul_zeta(&self, a: &Cyclo, k: i64) -> Cyclo {
        let k = k.rem_euclid(self.n as i64) as usize;
        if k == 0 || a.is_zero() {
            return a.clone();
        }
        let mut num = vec![BigInt::zero(); self.d];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &t) in self.powers[i + k].iter().enumerate() {
                if t != 0 {
                    num[j] += x * t;
                }
            }
        }
        Cyclo { num, den: a.den.clone() }
    }

    pub fn scale_int(&self, a: &Cyclo, s: i64) -> Cyclo {
        if s == 0 {
            return self.zero();
        }
        let s = BigInt::from(s);
        let num = a.num.iter().map(|c| c * &s).collect();
        self.normalize(num, a.den.clone())
    }

    pub fn scale_rational(&self, a: &Cyclo, r: &BigRational) -> Cyclo {
        let num = a.num.iter().map(|c| c * r.numer()).collect();
        self.normalize(num, &a.den * r.denom())
    }

    /// Multiplicative inverse through the extended Euclidean algorithm on
    /// `(a(x), Phi_N(x))` over `Q[x]`.
    pub fn inv(&self, a: &Cyclo) -> Result<Cyclo> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        type Poly = Vec<BigRational>;
        fn trim(p: &mut Poly) {
            while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
                p.pop();
            }
        }
        fn deg(p: &Poly) -> usize {
            p.len() - 1
        }
        fn sub_scaled_shift(p: &mut Poly, q: &Poly, c: &BigRational, shift: usize) {
            if p.len() < q.len() + shift {
                p.resize(q.len() + shift, BigRational::zero());
            }
            for (i, qi) in q.iter().enumerate() {
                p[i + shift] -= c * qi;
            }
        }
        let mut r0: Poly = self.phi.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let mut r1: Poly = a.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        trim(&mut r1);
        let mut s0: Poly = vec![BigRational::zero()];
        let mut s1: Poly = vec![BigRational::one()];
        // invariant: r_i = s_i * a (mod Phi_N)
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let mut q: Poly = vec![BigRational::zero(); 1];
            let mut r = r0.clone();
            while !(r.len() == 1 && r[0].is_zero()) && deg(&r) >= deg(&r1) {
                let shift = deg(&r) - deg(&r1);
                let c = r.last().unwrap() / r1.last().unwrap();
                if q.len() <= shift {
                    q.resize(shift + 1, BigRational::zero());
                }
                q[shift] += &c;
                sub_scaled_shift(&mut r, &r1, &c, shift);
                r.pop();
                if r.is_empty() {
                    r.push(BigRational::zero());
                }
                trim(&mut r);
            }
            let mut s = s0.clone();
            for (i, qi) in q.iter().enumerate() {
                if !qi.is_zero() {
                    sub_scaled_shift(&mut s, &s1, qi, i);
                }
            }
            trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the (constant) gcd since Phi_N is irreducible
        assert_eq!(r0.len(), 1, "gcd with an irreducible polynomial must be constant");
        // s0 * num = c (mod Phi_N) and a = num / den, so a^-1 = s0 * den / c
        let scale = BigRational::from_integer(a.den.clone()) / &r0[0];
        let inv_poly: Poly = s0.iter().map(|x| x * &scale).collect();
        Ok(self.canonicalize(&inv_poly))
    }

    pub fn div(&self, a: &Cyclo, b: &Cyclo) -> Result<Cyclo> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Cyclo, e: i64) -> Result<Cyclo> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Returns `k` when `a = zeta^k`, otherwise `None`.
    pub fn root_of_unity_exponent(&self, a: &Cyclo) -> Option<usize> {
        self.zeta_powers.iter().position(|z| z == a)
    }

    /// Value of the representative at `zeta = exp(2 pi i / N)`.
    pub fn evaluate_complex(&self, a: &Cyclo) -> Complex64 {
        let den = a.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (self.n as f64);
            let cf = c.to_f64().unwrap_or(f64::NAN) / den;
            acc += Complex64::from_polar(cf, angle);
        }
        acc
    }

    /// The q-integer `[n]_b = (b^n - b^{-n}) / (b - b^{-1})`.
    pub fn q_int(&self, n: i64, base: &Cyclo) -> Result<Cyclo> {
        let binv = self.inv(base)?;
        let den = self.sub(base, &binv);
        if den.is_zero() {
            return Err(Error::DegenerateBase);
        }
        let top = self.sub(&self.pow(base, n)?, &self.pow(&binv, n)?);
        self.div(&top, &den)
    }

    /// The q-factorial `[n]_b!` for `n >= 0`.
    pub fn q_factorial(&self, n: i64, base: &Cyclo) -> Result<Cyclo> {
        let mut acc = self.one();
        for k in 1..=n {
            acc = self.mul(&acc, &self.q_int(k, base)?);
        }
        Ok(acc)
    }

    /// The q-binomial `[m]_b! / ([n]_b! [m-n]_b!)`.
    pub fn q_binom(&self, m: i64, n: i64, base: &Cyclo) -> Result<Cyclo> {
        if n < 0 || n > m {
            return Err(Error::OutOfRange(format!("q-binomial ({m} choose {n})")));
        }
        let den = self.mul(&self.q_factorial(n, base)?, &self.q_factorial(m - n, base)?);
        if den.is_zero() {
            return Err(Error::OutOfRange(format!("q-factorial vanishes in ({m} choose {n})")));
        }
        self.div(&self.q_factorial(m, base)?, &den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> CycloField {
        CycloField::new(24)
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
    }

    #[test]
    fn root_of_unity_reductions() {
        let f = field();
        assert_eq!(f.zeta_pow(24), f.one());
        assert_eq!(f.zeta_pow(12), f.from_int(-1));
        let z6 = f.evaluate_complex(&f.zeta_pow(6));
        assert!((z6 - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        let f = field();
        let poly: Vec<BigRational> = f
            .minimal_polynomial()
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        assert!(f.canonicalize(&poly).is_zero());
    }

    #[test]
    fn inverse_and_division() {
        let f = field();
        let q = f.zeta_pow(1);
        let d = f.sub(&q, &f.inv(&q).unwrap());
        assert_eq!(f.div(&d, &d).unwrap(), f.one());
        let q1 = f.zeta_pow(6);
        assert_eq!(f.mul(&q1, &f.inv(&q1).unwrap()), f.one());
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_of_non_integral_elements() {
        let f = field();
        let half = f.from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(f.inv(&half).unwrap(), f.from_int(2));
        let x = f.add(
            &f.scale_rational(&f.zeta_pow(5), &BigRational::new(3.into(), 7.into())),
            &half,
        );
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
    }

    #[test]
    fn q_integers_at_two_three() {
        let f = field();
        // [m]_1 uses base q1^{p2} = zeta^{2 p2 * p2} = zeta^18 = -i
        let b1 = f.zeta_pow(18);
        assert_eq!(f.q_int(1, &b1).unwrap(), f.one());
        assert!(f.q_int(2, &b1).unwrap().is_zero());
        let b2 = f.zeta_pow(2 * 2 * 2);
        let two = f.q_int(2, &b2).unwrap();
        assert_eq!(f.q_binom(2, 1, &b2).unwrap(), two);
        assert_eq!(f.q_binom(2, 0, &b2).unwrap(), f.one());
        assert_eq!(f.q_binom(2, 2, &b2).unwrap(), f.one());
    }
}
