//! Exact arithmetic in Q(zeta_N), N = n*p, in the power basis modulo the
//! N-th cyclotomic polynomial.
//!
//! Every character value, Gauss sum and series coefficient in this crate
//! lives here. Values are vectors of `phi(N)` exact rationals; equality is
//! coordinate equality of the canonical (fully reduced) form. The complex
//! embedding fixes `zeta_N -> e^{2 pi i / N}`; any other primitive root
//! differs by a Galois automorphism and is equally valid.
//!
//! [`SqrtQ`] adjoins a formal square root of q for the half-integer powers
//! of q that appear in the Chinta-Mohler normalizations; components are
//! compared separately, which is exact.

use crate::interval::{CBall, RBall};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::BigRational;
use once_cell::sync::Lazy;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("mixed cyclotomic moduli: {0} vs {1}")]
    MixedModulus(u32, u32),
    #[error("division by zero in Q(zeta_N)")]
    DivideByZero,
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u64),
}

/// Coefficients of the N-th cyclotomic polynomial (integer, monic, ascending).
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly_cached(d);
            num = exact_int_div(&num, &phi_d);
        }
    }
    num
}

fn cyclotomic_poly_cached(n: u32) -> Vec<BigInt> {
    static CACHE: Lazy<RwLock<HashMap<u32, Vec<BigInt>>>> =
        Lazy::new(|| RwLock::new(HashMap::new()));
    if let Some(v) = CACHE.read().unwrap().get(&n) {
        return v.clone();
    }
    let v = cyclotomic_poly(n);
    CACHE.write().unwrap().insert(n, v.clone());
    v
}

/// Exact division of integer polynomials (remainder must vanish).
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let dn = rem.len() - 1;
    assert!(dn >= dd);
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone() / &den[dd];
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

#[cfg(test)]
fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

struct CycCtx {
    phi: usize,
    /// Phi_N, monic, rational coefficients, ascending, length phi+1.
    modulus: Vec<BigRational>,
    /// x^k mod Phi_N for k = 0..N, as coefficient vectors of length phi.
    pow_table: Vec<Vec<BigRational>>,
}

impl CycCtx {
    fn new(n: u32) -> Self {
        assert!(n >= 1);
        let ints = cyclotomic_poly_cached(n);
        let modulus: Vec<BigRational> =
            ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let phi = modulus.len() - 1;
        let mut pow_table = Vec::with_capacity(n as usize + 1);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        pow_table.push(cur.clone());
        for _ in 1..=n {
            // multiply by x and reduce
            let mut next = vec![BigRational::zero(); phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let top = next.pop().unwrap();
            if !top.is_zero() {
                for i in 0..phi {
                    next[i] -= &top * &modulus[i];
                }
            }
            cur = next;
            pow_table.push(cur.clone());
        }
        let _ = n;
        CycCtx { phi, modulus, pow_table }
    }
}

fn ctx(n: u32) -> Arc<CycCtx> {
    static CTXS: Lazy<RwLock<HashMap<u32, Arc<CycCtx>>>> =
        Lazy::new(|| RwLock::new(HashMap::new()));
    if let Some(c) = CTXS.read().unwrap().get(&n) {
        return c.clone();
    }
    let c = Arc::new(CycCtx::new(n));
    CTXS.write().unwrap().insert(n, c.clone());
    c
}

/// Exact element of Q(zeta_N) in the power basis modulo Phi_N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let c = ctx(n);
        CycNum { n, coeffs: vec![BigRational::zero(); c.phi] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(n: u32, v: BigInt) -> Self {
        Self::from_rational(n, BigRational::from_integer(v))
    }

    pub fn from_rational(n: u32, v: BigRational) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = v;
        x
    }

    /// zeta_N^k.
    pub fn root_power(n: u32, k: i64) -> Self {
        let c = ctx(n);
        let kk = k.rem_euclid(n as i64) as usize;
        CycNum { n, coeffs: c.pow_table[kk].clone() }
    }

    /// zeta_ord^num embedded in Q(zeta_N); requires ord | N.
    pub fn sub_root(n: u32, ord: u32, num_pow: i64) -> Self {
        assert!(ord >= 1 && n % ord == 0, "order {ord} does not divide N={n}");
        let step = (n / ord) as i64;
        Self::root_power(n, num_pow.rem_euclid(ord as i64) * step)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "mixed cyclotomic moduli: {} vs {}",
            self.n, other.n
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { n: self.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { n: self.n, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let c = ctx(self.n);
        let phi = c.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // reduce mod Phi_N (monic)
        for i in (phi..prod.len()).rev() {
            if prod[i].is_zero() {
                continue;
            }
            let top = std::mem::replace(&mut prod[i], BigRational::zero());
            for j in 0..phi {
                if !c.modulus[j].is_zero() {
                    prod[i - phi + j] -= &top * &c.modulus[j];
                }
            }
        }
        prod.truncate(phi);
        CycNum { n: self.n, coeffs: prod }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> Result<Self, CycError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow((-e) as u64))
        }
    }

    /// Complex conjugation, zeta_N -> zeta_N^{-1}.
    pub fn conj(&self) -> Self {
        let c = ctx(self.n);
        let mut out = Self::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = ((self.n as usize - i) % self.n as usize) as usize;
            for (j, b) in c.pow_table[k].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[j] += a * b;
                }
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivideByZero);
        }
        let c = ctx(self.n);
        // Extended Euclid in Q[x]: u*self + v*Phi_N = 1.
        let mut r0: Vec<BigRational> = c.modulus.clone();
        let mut r1: Vec<BigRational> = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is the gcd, a nonzero constant since Phi_N is irreducible over Q.
        assert_eq!(r0.len(), 1, "Phi_N not coprime to element");
        let inv_lead = BigRational::one() / r0[0].clone();
        let mut coeffs = vec![BigRational::zero(); c.phi];
        for (i, v) in s0.iter().enumerate() {
            // s0 has degree < phi because deg(self) < phi
            coeffs[i] = v * &inv_lead;
        }
        Ok(CycNum { n: self.n, coeffs })
    }

    pub fn div_exact(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other);
        Ok(self.mul(&other.inv()?))
    }

    /// Rigorous enclosure of the image under zeta_N -> e^{2 pi i/N}.
    pub fn embed(&self, precision_bits: u64) -> CBall {
        let roots = crate::interval::roots_of_unity(self.n, precision_bits);
        let mut acc = CBall::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ab = RBall::from_rational(a, precision_bits);
            acc = acc.add(&roots[i].mul(&CBall::from_real(&ab)));
        }
        acc.compress(precision_bits)
    }

    /// |self|^2 as an exact element (self * conj(self)); real and
    /// conjugation-invariant, but not necessarily rational.
    pub fn norm_squared(&self) -> CycNum {
        self.mul(&self.conj())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "coeffs": self.coeffs.iter().map(|c| {
                serde_json::json!([c.numer().to_string(), c.denom().to_string()])
            }).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycNum", 2)?;
        st.serialize_field("N", &self.n)?;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty());
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    let lead = den[dd].clone();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

impl fmt::Display for CycNum {
    /// Polynomial in `z` (= zeta_N) with rational coefficients,
    /// e.g. `1/3*z^2 - z + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(N={}, {})", self.n, self)
    }
}

/// Element of Q(zeta_N)[sqrt(q)], stored as `even + odd*sqrt(q)`.
///
/// sqrt(q) is kept formal; when sqrt(q) happens to lie in Q(zeta_N) the
/// componentwise equality below is a (strictly) stronger test than field
/// equality, and every identity checked in this crate has matching
/// components. The embedding sends sqrt(q) to the positive real root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqrtQ {
    pub q: u64,
    pub even: CycNum,
    pub odd: CycNum,
}

impl SqrtQ {
    pub fn from_cyc(q: u64, x: CycNum) -> Self {
        let n = x.modulus();
        SqrtQ { q, even: x, odd: CycNum::zero(n) }
    }

    pub fn zero(q: u64, n: u32) -> Self {
        Self::from_cyc(q, CycNum::zero(n))
    }

    pub fn one(q: u64, n: u32) -> Self {
        Self::from_cyc(q, CycNum::one(n))
    }

    /// q^{k/2} for any integer k (negative allowed).
    pub fn q_half_pow(q: u64, n: u32, k: i64) -> Self {
        let qq = BigRational::from_integer(BigInt::from(q));
        let int_part = k.div_euclid(2);
        let frac = k.rem_euclid(2);
        let base = if int_part >= 0 {
            num::pow::pow(qq, int_part as usize)
        } else {
            BigRational::one() / num::pow::pow(qq, (-int_part) as usize)
        };
        let c = CycNum::from_rational(n, base);
        if frac == 0 {
            Self::from_cyc(q, c)
        } else {
            SqrtQ { q, even: CycNum::zero(n), odd: c }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed sqrt(q) extensions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        SqrtQ { q: self.q, even: self.even.add(&other.even), odd: self.odd.add(&other.odd) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        SqrtQ { q: self.q, even: self.even.sub(&other.even), odd: self.odd.sub(&other.odd) }
    }

    pub fn neg(&self) -> Self {
        SqrtQ { q: self.q, even: self.even.neg(), odd: self.odd.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let qq = CycNum::from_bigint(self.even.modulus(), BigInt::from(self.q));
        let even = self
            .even
            .mul(&other.even)
            .add(&self.odd.mul(&other.odd).mul(&qq));
        let odd = self.even.mul(&other.odd).add(&self.odd.mul(&other.even));
        SqrtQ { q: self.q, even, odd }
    }

    pub fn mul_cyc(&self, other: &CycNum) -> Self {
        SqrtQ { q: self.q, even: self.even.mul(other), odd: self.odd.mul(other) }
    }
}

impl fmt::Display for SqrtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd.is_zero() {
            write!(f, "{}", self.even)
        } else if self.even.is_zero() {
            write!(f, "({})*sqrt({})", self.odd, self.q)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.even, self.odd, self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys_small() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(10)), vec![1, -1, 1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_poly(20)), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(20).len() - 1, euler_phi(20) as usize);
    }

    #[test]
    fn primitive_cube_roots_sum() {
        // zeta_3 + zeta_3^2 = -1, checked in Q(zeta_6)
        let z3 = CycNum::sub_root(6, 3, 1);
        let z32 = CycNum::sub_root(6, 3, 2);
        assert_eq!(z3.add(&z32), CycNum::from_int(6, -1));
    }

    #[test]
    fn sixth_root_power() {
        let z = CycNum::root_power(6, 1);
        assert!(z.pow(6).is_one());
        assert!(!z.pow(3).is_one());
    }

    #[test]
    fn gauss_square_is_minus_three() {
        // (zeta_3 - zeta_3^2)^2 = -3
        let z3 = CycNum::sub_root(6, 3, 1);
        let z32 = CycNum::sub_root(6, 3, 2);
        let g = z3.sub(&z32);
        assert_eq!(g.mul(&g), CycNum::from_int(6, -3));
    }

    #[test]
    fn conjugation() {
        let z3 = CycNum::sub_root(6, 3, 1);
        let z32 = CycNum::sub_root(6, 3, 2);
        assert_eq!(z3.conj(), z32);
        assert_eq!(z3.conj().conj(), z3);
        let r = CycNum::from_rational(6, BigRational::new(7.into(), 3.into()));
        assert_eq!(r.conj(), r);
        // homomorphism on a product
        let a = z3.add(&CycNum::from_int(6, 2));
        let b = z32.sub(&CycNum::from_int(6, 5));
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn division() {
        let z = CycNum::root_power(10, 3).add(&CycNum::from_int(10, 2));
        assert!(z.div_exact(&z).unwrap().is_one());
        let six = CycNum::from_int(10, 6);
        let two = CycNum::from_int(10, 2);
        assert_eq!(six.div_exact(&two).unwrap(), CycNum::from_int(10, 3));
        assert_eq!(
            CycNum::one(10).div_exact(&CycNum::zero(10)),
            Err(CycError::DivideByZero)
        );
        // multiply back
        let w = CycNum::root_power(10, 7).sub(&CycNum::from_int(10, 4));
        let quot = w.div_exact(&z).unwrap();
        assert_eq!(quot.mul(&z), w);
    }

    #[test]
    fn embedding_basics() {
        let one = CycNum::one(6);
        let e = one.embed(96);
        assert!((e.re.to_f64() - 1.0).abs() < 1e-20);
        assert!(e.im.to_f64().abs() < 1e-20);
        assert!(e.rad.to_f64() < 1e-20);
        let z = CycNum::root_power(20, 1);
        let a2 = z.embed(128).abs2();
        assert!((a2.mid.to_f64() - 1.0).abs() < 1e-20);
    }

    #[test]
    fn embedding_is_ring_hom() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = 20;
            let rand_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = CycNum::zero(n);
                for _ in 0..3 {
                    let k = rng.gen_range(0..n as i64);
                    let c = rng.gen_range(-4i64..5);
                    x = x.add(&CycNum::root_power(n, k).scale(&BigRational::from_integer(c.into())));
                }
                x
            };
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let prec = 128;
            let lhs = a.mul(&b).embed(prec);
            let rhs = a.embed(prec).mul(&b.embed(prec));
            let diff = lhs.sub(&rhs);
            assert!(diff.abs2().upper().to_f64() < 1e-30);
            // conj commutes with embedding
            let ce = a.conj().embed(prec);
            let ec = a.embed(prec).conj();
            assert!(ce.sub(&ec).abs2().upper().to_f64() < 1e-30);
        }
    }

    #[test]
    fn sqrt_q_arithmetic() {
        let n = 6;
        let q = 3u64;
        let r = SqrtQ::q_half_pow(q, n, 1); // sqrt(3)
        let r2 = r.mul(&r);
        assert_eq!(r2, SqrtQ::q_half_pow(q, n, 2));
        assert_eq!(r2.even, CycNum::from_int(n, 3));
        let neg = SqrtQ::q_half_pow(q, n, -1); // 1/sqrt(3)
        assert_eq!(r.mul(&neg), SqrtQ::one(q, n));
        assert_eq!(SqrtQ::q_half_pow(q, n, -2).even.as_rational().unwrap(),
            BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn display_form() {
        let x = CycNum::root_power(6, 1)
            .scale(&BigRational::new((-1).into(), 1.into()))
            .add(&CycNum::from_int(6, 2));
        assert_eq!(x.to_string(), "-z + 2");
        let y = CycNum::root_power(6, 1).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(y.to_string(), "1/3*z");
        assert_eq!(CycNum::zero(6).to_string(), "0");
    }
}
