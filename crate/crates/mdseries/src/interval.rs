//! Certified arbitrary-precision ball arithmetic over dyadic rationals.
//!
//! All numerics that back strict inequalities (Weil-number magnitude tests,
//! root isolation) go through this module. A value is represented as a ball
//! `center ± radius` where both parts are dyadic rationals `mant * 2^exp`
//! with exact `BigInt` mantissas. Ring operations on dyadics are exact;
//! precision is only lost at explicit `compress` points, where the rounding
//! error is folded into the radius. A comparison between balls is reported
//! only when it holds for every pair of points in the two balls.

use num::bigint::{BigInt, Sign};
use num::traits::{Signed, ToPrimitive, Zero};
use num::BigRational;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Exact dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { mant: BigInt::from(v), exp: 0 }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic { mant: v, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    fn normalize(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        let mant = &lo.mant + (&hi.mant << shift);
        Dyadic { mant, exp: lo.exp }.normalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalize()
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Number of bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sub(other).mant.sign().cmp(&Sign::NoSign)
    }

    /// Round to at most `prec` mantissa bits, choosing the directed result:
    /// `up == true` rounds towards `+inf`, otherwise towards `-inf`.
    pub fn round_prec(&self, prec: u64, up: bool) -> Self {
        let b = self.bits();
        if b <= prec {
            return self.clone();
        }
        let drop = b - prec;
        let truncated = &self.mant >> drop;
        // `>>` on BigInt is floor division by 2^drop, i.e. rounds toward -inf.
        let exact = (&truncated << drop) == self.mant;
        let mant = if up && !exact { truncated + 1 } else { truncated };
        Dyadic { mant, exp: self.exp + drop as i64 }.normalize()
    }

    /// Nearest representative with `prec` bits plus a bound on the error.
    fn round_with_err(&self, prec: u64) -> (Self, Self) {
        let b = self.bits();
        if b <= prec {
            return (self.clone(), Self::zero());
        }
        let drop = b - prec;
        let truncated = &self.mant >> drop;
        let exact = (&truncated << drop) == self.mant;
        let center = Dyadic { mant: truncated, exp: self.exp + drop as i64 }.normalize();
        let err = if exact {
            Self::zero()
        } else {
            Dyadic { mant: BigInt::from(1), exp: self.exp + drop as i64 }
        };
        (center, err)
    }

    /// Upper bound on the square root (input must be >= 0).
    pub fn sqrt_upper(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale to an even exponent, take floor integer sqrt, then +1.
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        if exp % 2 != 0 {
            mant <<= 1;
            exp -= 1;
        }
        // Add guard bits so the +1 slack is small relative to the value.
        let guard = 64i64;
        mant <<= 2 * guard as u64;
        exp -= 2 * guard;
        let root = mant.sqrt() + 1;
        Dyadic { mant: root, exp: exp / 2 }.normalize()
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.bits();
        if b == 0 {
            return 0.0;
        }
        if b > 64 {
            let drop = b - 64;
            let m = (&self.mant >> drop).to_f64().unwrap_or(0.0);
            m * 2f64.powi((self.exp + drop as i64).clamp(-2000, 2000) as i32)
        } else {
            let m = self.mant.to_f64().unwrap_or(0.0);
            m * 2f64.powi(self.exp.clamp(-2000, 2000) as i32)
        }
    }

    /// Directed dyadic approximation of a rational, error below `2^-prec_scaled`
    /// relative to the leading magnitude.
    pub fn from_rational(r: &BigRational, prec: u64, up: bool) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let num = r.numer();
        let den = r.denom(); // BigRational keeps den > 0
        // Shift numerator so the quotient carries ~prec significant bits.
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let shift = shift.max(0) as u64;
        let scaled = num << shift;
        let (q, rem) = num::Integer::div_mod_floor(&scaled, den);
        // div_mod_floor rounds toward -inf; bump for the upward direction.
        let q = if up && !rem.is_zero() { q + 1 } else { q };
        Dyadic { mant: q, exp: -(shift as i64) }.normalize()
    }
}

/// Real ball `mid ± rad`.
#[derive(Clone, Debug)]
pub struct RBall {
    pub mid: Dyadic,
    pub rad: Dyadic,
}

impl RBall {
    pub fn exact(d: Dyadic) -> Self {
        RBall { mid: d, rad: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        Self::exact(Dyadic::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Self::exact(Dyadic::from_int(v))
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> Self {
        let mid = Dyadic::from_rational(r, prec, false);
        // |r - mid| <= 2^(exp of last kept bit); bound it crudely but safely.
        let up = Dyadic::from_rational(r, prec, true);
        let rad = up.sub(&mid);
        RBall { mid, rad }
    }

    pub fn add(&self, other: &Self) -> Self {
        RBall { mid: self.mid.add(&other.mid), rad: self.rad.add(&other.rad) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RBall { mid: self.mid.sub(&other.mid), rad: self.rad.add(&other.rad) }
    }

    pub fn neg(&self) -> Self {
        RBall { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mid = self.mid.mul(&other.mid);
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        RBall { mid, rad }
    }

    pub fn compress(&self, prec: u64) -> Self {
        let (mid, err) = self.mid.round_with_err(prec);
        let rad = self.rad.add(&err).round_prec(prec.min(64), true);
        RBall { mid, rad }
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    /// Certified `self < other`.
    pub fn lt_certain(&self, other: &Self) -> bool {
        self.upper().cmp(&other.lower()) == std::cmp::Ordering::Less
    }

    /// Certified `self > other`.
    pub fn gt_certain(&self, other: &Self) -> bool {
        other.lt_certain(self)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lower().cmp(&Dyadic::zero()).eq(&std::cmp::Ordering::Greater)
            && !self.upper().cmp(&Dyadic::zero()).eq(&std::cmp::Ordering::Less)
    }
}

/// Complex disc `(re, im) ± rad`.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

impl CBall {
    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        CBall { re, im, rad: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        Self::exact(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::exact(Dyadic::from_int(1), Dyadic::zero())
    }

    pub fn from_real(r: &RBall) -> Self {
        CBall { re: r.mid.clone(), im: Dyadic::zero(), rad: r.rad.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        CBall {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
            rad: self.rad.add(&other.rad),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CBall {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
            rad: self.rad.add(&other.rad),
        }
    }

    pub fn neg(&self) -> Self {
        CBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn conj(&self) -> Self {
        CBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad.clone() }
    }

    /// Upper bound on |center|.
    fn center_norm_upper(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt_upper()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        let n1 = self.center_norm_upper();
        let n2 = other.center_norm_upper();
        let rad = n1.mul(&other.rad).add(&n2.mul(&self.rad)).add(&self.rad.mul(&other.rad));
        CBall { re, im, rad }
    }

    pub fn scale_dyadic(&self, d: &Dyadic) -> Self {
        CBall { re: self.re.mul(d), im: self.im.mul(d), rad: self.rad.mul(&d.abs()) }
    }

    /// Divide by a positive integer, folding the rounding error into the radius.
    pub fn div_u64(&self, k: u64, prec: u64) -> Self {
        let kd = BigInt::from(k);
        let shift = prec + 4;
        let re = Dyadic { mant: (&self.re.mant << shift) / &kd, exp: self.re.exp - shift as i64 };
        let im = Dyadic { mant: (&self.im.mant << shift) / &kd, exp: self.im.exp - shift as i64 };
        // Each center is off by < 2^(exp-shift); radius shrinks by k but keep it whole.
        let err_re = Dyadic { mant: BigInt::from(2), exp: self.re.exp - shift as i64 };
        let err_im = Dyadic { mant: BigInt::from(2), exp: self.im.exp - shift as i64 };
        let rad = self.rad.add(&err_re).add(&err_im);
        CBall { re: re.normalize(), im: im.normalize(), rad }
    }

    pub fn compress(&self, prec: u64) -> Self {
        let (re, er) = self.re.round_with_err(prec);
        let (im, ei) = self.im.round_with_err(prec);
        let rad = self.rad.add(&er).add(&ei).round_prec(64, true);
        CBall { re, im, rad }
    }

    /// Ball for |z|^2.
    pub fn abs2(&self) -> RBall {
        let mid = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let n = self.center_norm_upper();
        let rad = n.mul(&self.rad).mul_pow2(1).add(&self.rad.mul(&self.rad));
        RBall { mid, rad }
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// pi as a ball with radius below `2^-prec`.
pub fn pi_ball(prec: u64) -> RBall {
    static CACHE: Lazy<Mutex<HashMap<u64, RBall>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = CACHE.lock().unwrap().get(&prec) {
        return v.clone();
    }
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239), alternating series with
    // tail bounded by the first omitted term.
    let w = prec + 32;
    let atan_inv = |x: i64| -> RBall {
        let x2 = BigInt::from(x) * BigInt::from(x);
        // term_k = (-1)^k / ((2k+1) x^(2k+1)), accumulated as dyadic approximations
        let mut sum = RBall::zero();
        let mut power = BigInt::from(x); // x^(2k+1)
        let mut k: u64 = 0;
        loop {
            let den = &power * BigInt::from(2 * k + 1);
            let term = BigRational::new(BigInt::from(1), den);
            let tb = RBall::from_rational(&term, w);
            if k % 2 == 0 {
                sum = sum.add(&tb);
            } else {
                sum = sum.sub(&tb);
            }
            sum = sum.compress(w + 16);
            // Stop once the next term is below 2^-w; add it to the radius.
            let next_den = (&power * &x2) * BigInt::from(2 * k + 3);
            if next_den.bits() as i64 - 1 > w as i64 {
                let tail = Dyadic { mant: BigInt::from(2), exp: -(w as i64) };
                sum.rad = sum.rad.add(&tail);
                break;
            }
            power *= &x2;
            k += 1;
        }
        sum
    };
    let a5 = atan_inv(5);
    let a239 = atan_inv(239);
    let mut pi = a5.mul(&RBall::from_int(16)).sub(&a239.mul(&RBall::from_int(4)));
    pi = pi.compress(w);
    CACHE.lock().unwrap().insert(prec, pi.clone());
    pi
}

/// e^{i t} for a small real ball `t` (|t| <= 4), radius ~ 2^-prec.
fn exp_i(t: &RBall, prec: u64) -> CBall {
    let w = prec + 48;
    // Scale the argument below 1/4 so the Taylor series converges fast,
    // then square back. |e^{iz1} - e^{iz2}| <= |z1 - z2| handles t's radius.
    let mut k = 0i64;
    let mut tm = t.mid.clone();
    while {
        let approx = tm.to_f64().abs();
        approx > 0.25
    } {
        tm = tm.mul_pow2(-1);
        k += 1;
    }
    let mut z = CBall::one();
    let mut term = CBall::one();
    let it = CBall { re: Dyadic::zero(), im: tm.clone(), rad: Dyadic::zero() };
    let mut j: u64 = 1;
    loop {
        term = term.mul(&it).div_u64(j, w).compress(w);
        z = z.add(&term).compress(w);
        // |term_{j+1}| <= |term_j| / 4 at |t| <= 1/4, geometric tail bound.
        let tb = term.center_norm_upper().add(&term.rad);
        if tb.cmp(&Dyadic { mant: BigInt::from(1), exp: -(w as i64) }) == std::cmp::Ordering::Less {
            z.rad = z.rad.add(&tb); // tail sum < tb * (1/4)/(1-1/4) < tb
            break;
        }
        j += 1;
        if j > 4 * w {
            // Should never happen; give up with a fat radius.
            z.rad = z.rad.add(&Dyadic::from_int(4));
            break;
        }
    }
    for _ in 0..k {
        z = z.mul(&z).compress(w);
    }
    // Account for the radius of t itself (Lipschitz constant 1 on |e^{it}|=1,
    // inflated slightly for the scaled center drift).
    z.rad = z.rad.add(&t.rad).add(&Dyadic { mant: BigInt::from(1), exp: -(w as i64 - 4) });
    z.compress(prec + 16)
}

/// Enclosures of the N-th roots of unity `zeta_N^j`, j = 0..N-1, under
/// `zeta_N -> e^{2 pi i / N}`.
pub fn roots_of_unity(n: u32, prec: u64) -> std::sync::Arc<Vec<CBall>> {
    static CACHE: Lazy<Mutex<HashMap<(u32, u64), std::sync::Arc<Vec<CBall>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = CACHE.lock().unwrap().get(&(n, prec)) {
        return v.clone();
    }
    let w = prec + 2 * (64 - (n as u64).leading_zeros() as u64) + 32;
    let pi = pi_ball(w);
    let two_pi_over_n = pi.mul(&RBall::from_int(2)).mul(&RBall::from_rational(
        &BigRational::new(BigInt::from(1), BigInt::from(n)),
        w,
    ));
    let zeta = exp_i(&two_pi_over_n, w);
    let mut v = Vec::with_capacity(n as usize);
    v.push(CBall::one());
    for j in 1..n {
        let prev = &v[(j - 1) as usize];
        v.push(prev.mul(&zeta).compress(w));
    }
    let arc = std::sync::Arc::new(v);
    CACHE.lock().unwrap().insert((n, prec), arc.clone());
    arc
}
