//! Monic-polynomial arithmetic over any field level: gcd, derivative,
//! factorization, resultant, discriminant, residue at infinity, residue
//! symbol, and the Moebius function via Pellet's formula.
//!
//! The resultant follows the convention Res(f, g) = product of the values
//! of f at the roots of g (g monic), computed by the Euclidean recursion
//! so no splitting field is ever constructed. Reciprocity
//! Res(f,g) = (-1)^{deg f deg g} Res(g,f) and the root-product definition
//! are cross-checked in tests over extension levels.

use crate::cyclo::CycNum;
use crate::ffield::{FieldError, FieldSpec, FqElem, Level};
use num::bigint::BigUint;
use num::traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// General polynomial: little-endian coefficients, trimmed, empty = 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    pub level: u32,
    pub coeffs: Vec<FqElem>,
}

/// Monic polynomial in t; the leading 1 is implicit, so `coeffs.len()` is
/// the degree and the constant 1 has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MonicPoly {
    pub level: u32,
    pub coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero(level: u32) -> Self {
        Poly { level, coeffs: vec![] }
    }

    pub fn constant(level: u32, c: FqElem) -> Self {
        if c.is_zero() {
            Self::zero(level)
        } else {
            Poly { level, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(level: u32, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { level, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> FqElem {
        *self.coeffs.last().expect("leading coefficient of zero polynomial")
    }
}

impl MonicPoly {
    pub fn one(level: u32) -> Self {
        MonicPoly { level, coeffs: vec![] }
    }

    /// The variable t.
    pub fn t(lvl: &Level) -> Self {
        MonicPoly { level: lvl.m, coeffs: vec![lvl.zero()] }
    }

    /// t - root.
    pub fn linear(lvl: &Level, root: FqElem) -> Self {
        MonicPoly { level: lvl.m, coeffs: vec![lvl.neg(root)] }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_poly(&self, lvl: &Level) -> Poly {
        let mut c = self.coeffs.clone();
        c.push(lvl.one());
        Poly { level: self.level, coeffs: c }
    }

    /// Normalize a nonzero polynomial to (leading coefficient, monic part).
    pub fn from_poly(lvl: &Level, p: &Poly) -> (FqElem, MonicPoly) {
        assert!(!p.is_zero());
        let lead = p.lc();
        let inv = lvl.inv(lead);
        let coeffs = p.coeffs[..p.coeffs.len() - 1]
            .iter()
            .map(|&c| lvl.mul(c, inv))
            .collect();
        (lead, MonicPoly { level: p.level, coeffs })
    }

    /// Deterministic enumeration of monic polynomials of degree d:
    /// index written base q^m gives the coefficient codes.
    pub fn by_index(lvl: &Level, d: usize, mut idx: u64) -> Self {
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(lvl.by_code(idx % lvl.size));
            idx /= lvl.size;
        }
        MonicPoly { level: lvl.m, coeffs }
    }
}

// ---------------------------------------------------------------------------
// ring operations
// ---------------------------------------------------------------------------

pub fn padd(lvl: &Level, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![lvl.zero(); a.coeffs.len().max(b.coeffs.len())];
    for (i, &c) in a.coeffs.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.coeffs.iter().enumerate() {
        out[i] = lvl.add(out[i], c);
    }
    Poly::from_coeffs(a.level, out)
}

pub fn psub(lvl: &Level, a: &Poly, b: &Poly) -> Poly {
    padd(lvl, a, &pneg(lvl, b))
}

pub fn pneg(lvl: &Level, a: &Poly) -> Poly {
    Poly { level: a.level, coeffs: a.coeffs.iter().map(|&c| lvl.neg(c)).collect() }
}

pub fn pmul(lvl: &Level, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.level);
    }
    let mut out = vec![lvl.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            out[i + j] = lvl.add(out[i + j], lvl.mul(x, y));
        }
    }
    Poly::from_coeffs(a.level, out)
}

pub fn monic_mul(lvl: &Level, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
    let p = pmul(lvl, &a.to_poly(lvl), &b.to_poly(lvl));
    MonicPoly::from_poly(lvl, &p).1
}

/// Quotient and remainder; the divisor may have any nonzero leading coefficient.
pub fn pdivrem(lvl: &Level, num: &Poly, den: &Poly) -> (Poly, Poly) {
    assert!(!den.is_zero(), "division by zero polynomial");
    let dd = den.coeffs.len() - 1;
    if num.coeffs.len() <= dd {
        return (Poly::zero(num.level), num.clone());
    }
    let lead_inv = lvl.inv(den.lc());
    let mut rem = num.coeffs.clone();
    let mut quot = vec![lvl.zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = lvl.mul(rem[i + dd], lead_inv);
        if !c.is_zero() {
            quot[i] = c;
            for j in 0..=dd {
                let t = lvl.mul(c, den.coeffs[j]);
                rem[i + j] = lvl.sub(rem[i + j], t);
            }
        }
    }
    (Poly::from_coeffs(num.level, quot), Poly::from_coeffs(num.level, rem))
}

pub fn pmod(lvl: &Level, num: &Poly, den: &Poly) -> Poly {
    pdivrem(lvl, num, den).1
}

pub fn derivative(lvl: &Level, f: &Poly) -> Poly {
    if f.coeffs.len() <= 1 {
        return Poly::zero(f.level);
    }
    let mut out = Vec::with_capacity(f.coeffs.len() - 1);
    for i in 1..f.coeffs.len() {
        // i*c by repeated addition; degrees are tiny
        let c = f.coeffs[i];
        let mut acc = lvl.zero();
        for _ in 0..i {
            acc = lvl.add(acc, c);
        }
        out.push(acc);
    }
    Poly::from_coeffs(f.level, out)
}

pub fn monic_derivative(lvl: &Level, f: &MonicPoly) -> Poly {
    derivative(lvl, &f.to_poly(lvl))
}

pub fn eval(lvl: &Level, f: &Poly, x: FqElem) -> FqElem {
    let mut acc = lvl.zero();
    for &c in f.coeffs.iter().rev() {
        acc = lvl.add(lvl.mul(acc, x), c);
    }
    acc
}

/// Monic gcd (the zero polynomial acts as the absorbing element).
pub fn gcd_monic(lvl: &Level, a: &Poly, b: &Poly) -> MonicPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = pmod(lvl, &x, &y);
        x = y;
        y = r;
    }
    assert!(!x.is_zero(), "gcd(0,0) is undefined");
    MonicPoly::from_poly(lvl, &x).1
}

pub fn gcd_mm(lvl: &Level, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
    gcd_monic(lvl, &a.to_poly(lvl), &b.to_poly(lvl))
}

/// f(T + alpha).
pub fn translate(lvl: &Level, f: &MonicPoly, alpha: FqElem) -> MonicPoly {
    let fp = f.to_poly(lvl);
    // Horner in (T + alpha)
    let mut acc = Poly::zero(f.level);
    let shift = Poly { level: f.level, coeffs: vec![alpha, lvl.one()] };
    for &c in fp.coeffs.iter().rev() {
        acc = padd(lvl, &pmul(lvl, &acc, &shift), &Poly::constant(f.level, c));
    }
    MonicPoly::from_poly(lvl, &acc).1
}

// ---------------------------------------------------------------------------
// resultant, discriminant, residue symbol, Moebius, residue at infinity
// ---------------------------------------------------------------------------

/// Res(f, g) = product of the values of f at the roots of g; g monic.
pub fn resultant(lvl: &Level, f: &Poly, g: &MonicPoly) -> FqElem {
    if g.is_one() {
        return lvl.one(); // empty product
    }
    if f.is_zero() {
        return lvl.zero();
    }
    if f.deg() == Some(0) {
        return lvl.pow(f.coeffs[0], g.deg() as u64);
    }
    let gp = g.to_poly(lvl);
    let r = pmod(lvl, f, &gp);
    if r.is_zero() {
        return lvl.zero();
    }
    if r.deg() == Some(0) {
        return lvl.pow(r.coeffs[0], g.deg() as u64);
    }
    let (lead, rm) = MonicPoly::from_poly(lvl, &r);
    let sign_flips = rm.deg() * g.deg();
    let swapped = resultant(lvl, &gp, &rm);
    let mut out = lvl.mul(lvl.pow(lead, g.deg() as u64), swapped);
    if sign_flips % 2 == 1 {
        out = lvl.neg(out);
    }
    out
}

pub fn resultant_mm(lvl: &Level, f: &MonicPoly, g: &MonicPoly) -> FqElem {
    resultant(lvl, &f.to_poly(lvl), g)
}

/// Delta(f) = (-1)^{d(d-1)/2} Res(f', f).
pub fn discriminant(lvl: &Level, f: &MonicPoly) -> FqElem {
    let d = f.deg();
    let fp = monic_derivative(lvl, f);
    let r = resultant(lvl, &fp, f);
    if (d * d.saturating_sub(1) / 2) % 2 == 1 {
        lvl.neg(r)
    } else {
        r
    }
}

/// (f/g)_{chi^r} = chi_m^r(Res(f,g)); 0 on non-coprime inputs via chi(0) = 0.
pub fn residue_symbol(fs: &FieldSpec, f: &MonicPoly, g: &MonicPoly, r: i64) -> CycNum {
    let lvl = fs.level(f.level).expect("level");
    fs.chi_pow(resultant_mm(&lvl, f, g), r)
}

/// dlog (mod n) of (f/g)_chi, or None when the symbol vanishes.
pub fn residue_symbol_dlog(fs: &FieldSpec, f: &MonicPoly, g: &MonicPoly) -> Option<u64> {
    let lvl = fs.level(f.level).expect("level");
    fs.chi_dlog(resultant_mm(&lvl, f, g))
}

/// Moebius function by Pellet's formula mu(f) = (-1)^{deg f} xi(Delta(f)).
pub fn mobius(fs: &FieldSpec, f: &MonicPoly) -> Result<i32, FieldError> {
    let lvl = fs.level(f.level).expect("level");
    let x = fs.xi_sign(discriminant(&lvl, f))?;
    Ok(if f.deg() % 2 == 0 { x } else { -x })
}

/// Coefficient of t^{-1} in the Laurent expansion of f1/f2 at infinity,
/// normalized so res(1/t) = 1; f2 monic.
pub fn res_infty(lvl: &Level, f1: &Poly, f2: &MonicPoly) -> FqElem {
    if f2.is_one() {
        return lvl.zero(); // polynomials have no principal part
    }
    let r = pmod(lvl, f1, &f2.to_poly(lvl));
    *r.coeffs.get(f2.deg() - 1).unwrap_or(&lvl.zero())
}

/// Lift a polynomial from level 1 to level m through the constant embedding.
pub fn lift_to_level(fs: &FieldSpec, f: &MonicPoly, m: u32) -> MonicPoly {
    assert_eq!(f.level, 1);
    if m == 1 {
        return f.clone();
    }
    let l1 = fs.level(1).expect("level");
    let lm = fs.level(m).expect("level");
    let width = (fs.k() * m) as usize;
    let coeffs = f
        .coeffs
        .iter()
        .map(|&c| {
            let mut row = vec![0u64; width];
            let sub = l1.coords_fp(c);
            row[..sub.len()].copy_from_slice(&sub);
            lm.from_coords_fp(&row).expect("constant embedding")
        })
        .collect();
    MonicPoly { level: m, coeffs }
}

// ---------------------------------------------------------------------------
// factorization (squarefree + distinct-degree + equal-degree splitting)
// ---------------------------------------------------------------------------

/// Factorization into pairwise distinct irreducible monic polynomials with
/// multiplicities; sorted by (degree, coefficient codes) for determinism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    pub fn product(&self, lvl: &Level) -> MonicPoly {
        let mut acc = MonicPoly::one(lvl.m);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = monic_mul(lvl, &acc, p);
            }
        }
        acc
    }

    pub fn v_pi(&self, pi: &MonicPoly) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == pi)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Canonical ordering key: degree, then coefficient enumeration codes
/// (zero sorts first).
pub fn sort_key(p: &MonicPoly) -> (usize, Vec<u64>) {
    let codes = p
        .coeffs
        .iter()
        .map(|c| if c.is_zero() { 0 } else { c.dlog_id() as u64 + 1 })
        .collect();
    (p.deg(), codes)
}

fn poly_seed(fs: &FieldSpec, f: &MonicPoly) -> u64 {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let mut h = DefaultHasher::new();
    fs.seed().hash(&mut h);
    f.level.hash(&mut h);
    f.coeffs.hash(&mut h);
    h.finish()
}

pub fn factor(fs: &FieldSpec, f: &MonicPoly) -> Factorization {
    let lvl = fs.level(f.level).expect("level");
    let mut rng = ChaCha8Rng::seed_from_u64(poly_seed(fs, f));
    let mut out: Vec<(MonicPoly, u32)> = vec![];
    for (g, mult) in squarefree_parts(fs, &lvl, f) {
        for h in distinct_degree(fs, &lvl, &g, &mut rng) {
            out.push((h, mult));
        }
    }
    out.sort_by_key(|(p, _)| sort_key(p));
    Factorization { factors: out }
}

pub fn is_irreducible(fs: &FieldSpec, f: &MonicPoly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    if f.deg() == 1 {
        return true;
    }
    let lvl = fs.level(f.level).expect("level");
    let fp = f.to_poly(&lvl);
    let d = f.deg() as u32;
    // gcd(x^{Q^i} - x, f) = 1 for i <= d/2, and x^{Q^d} = x mod f
    let x = Poly { level: f.level, coeffs: vec![lvl.zero(), lvl.one()] };
    let mut frob = powmod_big(&lvl, &x, &BigUint::from(lvl.size), &fp);
    for i in 1..=d / 2 {
        let diff = psub(&lvl, &frob, &x);
        if diff.is_zero() {
            return false;
        }
        if gcd_monic(&lvl, &fp, &diff).deg() > 0 {
            return false;
        }
        if i < d / 2 {
            frob = powmod_big(&lvl, &frob, &BigUint::from(lvl.size), &fp);
        }
    }
    true
}

/// Squarefree decomposition in characteristic p, handling p-th powers.
fn squarefree_parts(fs: &FieldSpec, lvl: &Level, f: &MonicPoly) -> Vec<(MonicPoly, u32)> {
    if f.deg() == 0 {
        return vec![];
    }
    let fp = f.to_poly(lvl);
    let deriv = derivative(lvl, &fp);
    if deriv.is_zero() {
        // f = g(x^p)
        let root = pth_root(fs, lvl, f);
        return squarefree_parts(fs, lvl, &root)
            .into_iter()
            .map(|(g, e)| (g, e * fs.p() as u32))
            .collect();
    }
    let mut out = vec![];
    let mut c = gcd_monic(lvl, &fp, &deriv);
    let mut w = MonicPoly::from_poly(lvl, &pdivrem(lvl, &fp, &c.to_poly(lvl)).0).1;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd_mm(lvl, &w, &c);
        let z = MonicPoly::from_poly(lvl, &pdivrem(lvl, &w.to_poly(lvl), &y.to_poly(lvl)).0).1;
        if z.deg() > 0 {
            out.push((z, i));
        }
        c = MonicPoly::from_poly(lvl, &pdivrem(lvl, &c.to_poly(lvl), &y.to_poly(lvl)).0).1;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // remaining p-th power part
        let root = pth_root(fs, lvl, &c);
        for (g, e) in squarefree_parts(fs, lvl, &root) {
            out.push((g, e * fs.p() as u32));
        }
    }
    out
}

/// For f with vanishing derivative, f(x) = g(x^p); returns g.
fn pth_root(fs: &FieldSpec, lvl: &Level, f: &MonicPoly) -> MonicPoly {
    let p = fs.p() as usize;
    let fp = f.to_poly(lvl);
    let d = f.deg();
    assert!(d % p == 0);
    // coefficient roots: a^{1/p} = a^{q^m / p}
    let e = lvl.size / fs.p();
    let mut coeffs = Vec::with_capacity(d / p);
    for j in 0..d / p {
        coeffs.push(lvl.pow(fp.coeffs[j * p], e));
    }
    MonicPoly { level: f.level, coeffs }
}

fn powmod_big(lvl: &Level, x: &Poly, e: &BigUint, md: &Poly) -> Poly {
    let mut base = pmod(lvl, x, md);
    let mut acc = Poly { level: x.level, coeffs: vec![lvl.one()] };
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = pmod(lvl, &pmul(lvl, &acc, &base), md);
        }
        if i + 1 < bits {
            base = pmod(lvl, &pmul(lvl, &base, &base), md);
        }
    }
    acc
}

/// Distinct-degree split of a squarefree monic polynomial, then equal-degree
/// splitting of each part.
fn distinct_degree(
    fs: &FieldSpec,
    lvl: &Level,
    f: &MonicPoly,
    rng: &mut ChaCha8Rng,
) -> Vec<MonicPoly> {
    let mut out = vec![];
    let mut rest = f.clone();
    let x = Poly { level: f.level, coeffs: vec![lvl.zero(), lvl.one()] };
    let mut frob = x.clone();
    let mut d = 0usize;
    while rest.deg() > 0 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.clone());
            break;
        }
        let rp = rest.to_poly(lvl);
        frob = powmod_big(lvl, &frob, &BigUint::from(lvl.size), &rp);
        let diff = psub(lvl, &frob, &x);
        if diff.is_zero() {
            // every remaining factor has degree dividing d; all equal d here
            equal_degree(fs, lvl, &rest, d, rng, &mut out);
            break;
        }
        let g = gcd_monic(lvl, &rp, &diff);
        if g.deg() > 0 {
            equal_degree(fs, lvl, &g, d, rng, &mut out);
            rest = MonicPoly::from_poly(lvl, &pdivrem(lvl, &rp, &g.to_poly(lvl)).0).1;
            frob = pmod(lvl, &frob, &rest.to_poly(lvl));
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f is a squarefree product of
/// irreducibles all of degree d.
fn equal_degree(
    fs: &FieldSpec,
    lvl: &Level,
    f: &MonicPoly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<MonicPoly>,
) {
    if f.deg() == d {
        out.push(f.clone());
        return;
    }
    let fp = f.to_poly(lvl);
    loop {
        let t = Poly::from_coeffs(
            f.level,
            (0..f.deg()).map(|_| lvl.by_code(rng.gen_range(0..lvl.size))).collect(),
        );
        if t.is_zero() || t.deg() == Some(0) {
            continue;
        }
        let split = if lvl.size % 2 == 1 {
            // odd characteristic: t^((Q^d - 1)/2) - 1
            let e = (BigUint::from(lvl.size).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let h = powmod_big(lvl, &t, &e, &fp);
            psub(lvl, &h, &Poly { level: f.level, coeffs: vec![lvl.one()] })
        } else {
            // characteristic 2: trace map sum t^(2^i)
            let km_d = {
                // total F_2-degree of the residue fields: log2(Q) * d
                let mut s = lvl.size;
                let mut bits = 0;
                while s > 1 {
                    s /= 2;
                    bits += 1;
                }
                bits * d
            };
            let mut acc = pmod(lvl, &t, &fp);
            let mut cur = acc.clone();
            for _ in 1..km_d {
                cur = pmod(lvl, &pmul(lvl, &cur, &cur), &fp);
                acc = padd(lvl, &acc, &cur);
            }
            acc
        };
        if split.is_zero() {
            continue;
        }
        let g = gcd_monic(lvl, &fp, &split);
        if g.deg() == 0 || g.deg() == f.deg() {
            continue;
        }
        let co = MonicPoly::from_poly(lvl, &pdivrem(lvl, &fp, &g.to_poly(lvl)).0).1;
        equal_degree(fs, lvl, &g, d, rng, out);
        equal_degree(fs, lvl, &co, d, rng, out);
        return;
    }
}

/// Number of monic irreducibles of degree d over a field with Q elements
/// (Gauss necklace formula).
pub fn prime_count(q: u64, d: u32) -> u64 {
    let mut sum: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            let mu = moebius_int(d / e);
            if mu != 0 {
                sum += mu as i128 * (q as i128).pow(e);
            }
        }
    }
    (sum / d as i128) as u64
}

fn moebius_int(mut v: u32) -> i32 {
    let mut out = 1;
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            v /= d;
            if v % d == 0 {
                return 0;
            }
            out = -out;
        }
        d += 1;
    }
    if v > 1 {
        out = -out;
    }
    out
}

// ---------------------------------------------------------------------------
// text syntax: "t^2+2*t+1" at level 1, bracketed coordinate vectors above
// ---------------------------------------------------------------------------

pub fn poly_to_string(fs: &FieldSpec, f: &MonicPoly) -> String {
    let lvl = fs.level(f.level).expect("level");
    let fp = f.to_poly(&lvl);
    let mut s = String::new();
    for i in (0..fp.coeffs.len()).rev() {
        let c = fp.coeffs[i];
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        let coords = lvl.coords_fp(c);
        let is_one = coords[0] == 1 && coords[1..].iter().all(|&x| x == 0);
        let coeff_str = if f.level == 1 && fs.k() == 1 {
            format!("{}", coords[0])
        } else {
            let mut t = String::from("[");
            for (j, v) in coords.iter().enumerate() {
                if j > 0 {
                    t.push(',');
                }
                let _ = write!(t, "{v}");
            }
            t.push(']');
            t
        };
        match i {
            0 => s.push_str(&coeff_str),
            1 => {
                if is_one {
                    s.push('t');
                } else {
                    let _ = write!(s, "{coeff_str}*t");
                }
            }
            _ => {
                if is_one {
                    let _ = write!(s, "t^{i}");
                } else {
                    let _ = write!(s, "{coeff_str}*t^{i}");
                }
            }
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Parse "t^2+2*t+1" (integer coefficients at level 1, bracketed F_p
/// coordinate vectors at higher levels). The polynomial must be monic.
pub fn parse_poly(fs: &FieldSpec, m: u32, input: &str) -> Result<MonicPoly, String> {
    let lvl = fs.level(m).map_err(|e| e.to_string())?;
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(usize, FqElem)> = vec![];
    let mut rest = s.as_str();
    let mut sign = 1i64;
    if rest.starts_with('-') {
        sign = -1;
        rest = &rest[1..];
    }
    while !rest.is_empty() {
        // split at the next top-level + or - (not inside brackets)
        let mut depth = 0;
        let mut cut = rest.len();
        for (i, ch) in rest.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' | '-' if depth == 0 && i > 0 => {
                    cut = i;
                    break;
                }
                _ => {}
            }
        }
        let term = &rest[..cut];
        let next_sign = if rest[cut..].starts_with('-') { -1 } else { 1 };
        rest = if cut < rest.len() { &rest[cut + 1..] } else { "" };
        let (coeff_str, power) = if let Some(pos) = term.find('t') {
            let c = term[..pos].trim_end_matches('*');
            let after = &term[pos + 1..];
            let pw = if after.is_empty() {
                1
            } else if let Some(e) = after.strip_prefix('^') {
                e.parse::<usize>().map_err(|e| e.to_string())?
            } else {
                return Err(format!("malformed term {term:?}"));
            };
            (c, pw)
        } else {
            (term, 0)
        };
        let coeff = if coeff_str.is_empty() {
            fs.from_int(m, sign)
        } else if coeff_str.starts_with('[') {
            let inner = coeff_str
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| format!("malformed coordinates {coeff_str:?}"))?;
            let coords: Result<Vec<u64>, _> =
                inner.split(',').map(|v| v.parse::<u64>()).collect();
            let coords = coords.map_err(|e| e.to_string())?;
            let mut row = vec![0u64; (fs.k() * m) as usize];
            if coords.len() > row.len() {
                return Err("too many coordinates".into());
            }
            row[..coords.len()].copy_from_slice(&coords);
            let e = lvl.from_coords_fp(&row).ok_or("coordinates out of range")?;
            if sign < 0 {
                lvl.neg(e)
            } else {
                e
            }
        } else {
            let v = coeff_str.parse::<i64>().map_err(|e| e.to_string())?;
            fs.from_int(m, sign * v)
        };
        terms.push((power, coeff));
        sign = next_sign;
    }
    let deg = terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut coeffs = vec![lvl.zero(); deg + 1];
    for (p, c) in terms {
        coeffs[p] = lvl.add(coeffs[p], c);
    }
    let poly = Poly::from_coeffs(m, coeffs);
    if poly.is_zero() {
        return Err("zero polynomial".into());
    }
    if poly.lc() != lvl.one() {
        return Err(format!("polynomial {input:?} is not monic"));
    }
    Ok(MonicPoly::from_poly(&lvl, &poly).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::make(3, 1, 2, 0).unwrap()
    }

    fn mk(fs: &FieldSpec, s: &str) -> MonicPoly {
        parse_poly(fs, 1, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let fs = f3();
        let f = mk(&fs, "t^2+2*t+1");
        assert_eq!(f.deg(), 2);
        assert_eq!(poly_to_string(&fs, &f), "t^2+2*t+1");
        assert_eq!(poly_to_string(&fs, &mk(&fs, "1")), "1");
        assert_eq!(mk(&fs, "t^2 + 2*t + 1"), mk(&fs, "t^2+2*t+1"));
    }

    #[test]
    fn resultant_examples() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        // Res(T, T+1) = value of T at -1 = 2
        let t = mk(&fs, "t");
        let t1 = mk(&fs, "t+1");
        assert_eq!(resultant_mm(&lvl, &t, &t1), fs.from_int(1, 2));
        // Res(f, 1) = 1
        assert_eq!(resultant_mm(&lvl, &mk(&fs, "t^2+t+2"), &MonicPoly::one(1)), fs.from_int(1, 1));
        // Res(T+1, T) = 1 = (-1)^{1*1} * Res(T, T+1)
        assert_eq!(resultant_mm(&lvl, &t1, &t), fs.from_int(1, 1));
    }

    #[test]
    fn reciprocity_exhaustive_small() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        for df in 0..=3usize {
            for dg in 0..=3usize {
                for i in 0..lvl.size.pow(df as u32) {
                    let f = MonicPoly::by_index(&lvl, df, i);
                    for j in 0..lvl.size.pow(dg as u32) {
                        let g = MonicPoly::by_index(&lvl, dg, j);
                        let lhs = resultant_mm(&lvl, &f, &g);
                        let mut rhs = resultant_mm(&lvl, &g, &f);
                        if (df * dg) % 2 == 1 {
                            rhs = lvl.neg(rhs);
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn resultant_matches_root_product_in_extension() {
        // Res(f,g) = prod f(beta) over roots beta of g in F_9, for quadratic g
        let fs = f3();
        let l1 = fs.level(1).unwrap();
        let l2 = fs.level(2).unwrap();
        for j in 0..l1.size.pow(2) {
            let g = MonicPoly::by_index(&l1, 2, j);
            for i in 0..l1.size.pow(2) {
                let f = MonicPoly::by_index(&l1, 2, i);
                let f2 = lift_to_level(&fs, &f, 2).to_poly(&l2);
                let g2 = lift_to_level(&fs, &g, 2).to_poly(&l2);
                let mut prod = l2.one();
                let mut count = 0;
                for c in 0..l2.size {
                    let x = l2.by_code(c);
                    if eval(&l2, &g2, x).is_zero() {
                        // multiplicity from repeated division
                        let mut h = g2.clone();
                        let lin = Poly { level: 2, coeffs: vec![l2.neg(x), l2.one()] };
                        loop {
                            let (q, r) = pdivrem(&l2, &h, &lin);
                            if !r.is_zero() {
                                break;
                            }
                            prod = l2.mul(prod, eval(&l2, &f2, x));
                            count += 1;
                            h = q;
                        }
                    }
                }
                assert_eq!(count, 2, "quadratic splits over F_9");
                let res1 = resultant_mm(&l1, &f, &g);
                let want = l1.coords_fp(res1);
                let got = l2.coords_fp(prod);
                assert_eq!(want[0], got[0]);
                assert!(got[1..].iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        // Delta(T^2+1) = -4 = 2 mod 3
        assert_eq!(discriminant(&lvl, &mk(&fs, "t^2+1")), fs.from_int(1, 2));
        // Delta(T - a) = 1
        assert_eq!(discriminant(&lvl, &mk(&fs, "t+2")), fs.from_int(1, 1));
        // Delta(T^2) = 0
        assert_eq!(discriminant(&lvl, &mk(&fs, "t^2")), fs.from_int(1, 0));
    }

    #[test]
    fn residue_symbol_examples() {
        let fs = f3();
        let nn = fs.cyc_modulus();
        let t = mk(&fs, "t");
        let t1 = mk(&fs, "t+1");
        assert_eq!(residue_symbol(&fs, &t, &t1, 1), CycNum::from_int(nn, -1));
        assert!(residue_symbol(&fs, &t, &MonicPoly::one(1), 1).is_one());
        assert!(residue_symbol(&fs, &t, &t, 1).is_zero());
    }

    #[test]
    fn residue_symbol_multiplicative() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        for i in 0..lvl.size.pow(2) {
            let f = MonicPoly::by_index(&lvl, 2, i);
            for j in 0..lvl.size {
                let g = MonicPoly::by_index(&lvl, 1, j);
                for k in 0..lvl.size.pow(2) {
                    let h = MonicPoly::by_index(&lvl, 2, k);
                    let fg = monic_mul(&lvl, &f, &g);
                    let lhs = residue_symbol(&fs, &fg, &h, 1);
                    let rhs = residue_symbol(&fs, &f, &h, 1).mul(&residue_symbol(&fs, &g, &h, 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn mobius_examples_and_pellet() {
        let fs = f3();
        assert_eq!(mobius(&fs, &mk(&fs, "t^2+1")).unwrap(), -1);
        assert_eq!(mobius(&fs, &mk(&fs, "t^2")).unwrap(), 0);
        assert_eq!(mobius(&fs, &mk(&fs, "t")).unwrap(), -1);
        assert_eq!(mobius(&fs, &MonicPoly::one(1)).unwrap(), 1);
    }

    #[test]
    fn pellet_equals_factorization_mu() {
        for (p, n) in [(3u64, 2u32), (5, 2)] {
            let fs = FieldSpec::make(p, 1, n, 0).unwrap();
            let lvl = fs.level(1).unwrap();
            for d in 0..=4usize {
                for i in 0..lvl.size.pow(d as u32) {
                    let f = MonicPoly::by_index(&lvl, d, i);
                    let fac = factor(&fs, &f);
                    let mu_fac = if fac.factors.iter().any(|(_, e)| *e > 1) {
                        0
                    } else if fac.factors.len() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    assert_eq!(mobius(&fs, &f).unwrap(), mu_fac, "f = {}", poly_to_string(&fs, &f));
                }
            }
        }
    }

    #[test]
    fn res_infty_examples() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let one = Poly { level: 1, coeffs: vec![lvl.one()] };
        // res(1/t) = 1
        assert_eq!(res_infty(&lvl, &one, &mk(&fs, "t")), fs.from_int(1, 1));
        // res(T/(T^2+1)) = 1
        let t = mk(&fs, "t").to_poly(&lvl);
        assert_eq!(res_infty(&lvl, &t, &mk(&fs, "t^2+1")), fs.from_int(1, 1));
        // no principal part for polynomials
        assert_eq!(res_infty(&lvl, &t, &MonicPoly::one(1)), fs.from_int(1, 0));
    }

    #[test]
    fn factor_examples() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let f = mk(&fs, "t^2+t");
        let fac = factor(&fs, &f);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0, mk(&fs, "t"));
        assert_eq!(fac.factors[1].0, mk(&fs, "t+1"));
        assert!(fac.factors.iter().all(|(_, e)| *e == 1));
        assert_eq!(fac.product(&lvl), f);
        // gcd(T^2, T^3) = T^2
        assert_eq!(gcd_mm(&lvl, &mk(&fs, "t^2"), &mk(&fs, "t^3")), mk(&fs, "t^2"));
        // translate(T^2, 1) = (T+1)^2
        let tr = translate(&lvl, &mk(&fs, "t^2"), fs.from_int(1, 1));
        assert_eq!(tr, mk(&fs, "t^2+2*t+1"));
    }

    #[test]
    fn factor_roundtrip_exhaustive() {
        for (p, k, n) in [(3u64, 1u32, 2u32), (5, 1, 2), (3, 2, 2)] {
            let fs = FieldSpec::make(p, k, n, 0).unwrap();
            let lvl = fs.level(1).unwrap();
            let dmax = if lvl.size > 5 { 3 } else { 4 };
            for d in 1..=dmax {
                for i in 0..lvl.size.pow(d as u32) {
                    let f = MonicPoly::by_index(&lvl, d, i);
                    let fac = factor(&fs, &f);
                    assert_eq!(fac.product(&lvl), f);
                    for (pi, _) in &fac.factors {
                        assert!(is_irreducible(&fs, pi));
                    }
                }
            }
        }
    }

    #[test]
    fn factor_pth_powers() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        // (t+1)^3 has zero derivative
        let t1 = mk(&fs, "t+1");
        let cube = monic_mul(&lvl, &monic_mul(&lvl, &t1, &t1), &t1);
        let fac = factor(&fs, &cube);
        assert_eq!(fac.factors, vec![(t1, 3)]);
    }

    #[test]
    fn prime_counting() {
        assert_eq!(prime_count(3, 1), 3);
        assert_eq!(prime_count(3, 2), 3);
        assert_eq!(prime_count(3, 3), 8);
        assert_eq!(prime_count(9, 1), 9);
        assert_eq!(prime_count(9, 2), 36);
    }

    #[test]
    fn me3_identity_squarefree() {
        // mu(f) = (-1)^{deg f} (-1)^{deg f (deg f - 1)(q-1)/4} (f'/f)_xi
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let q = fs.q();
        for d in 1..=4usize {
            for i in 0..lvl.size.pow(d as u32) {
                let f = MonicPoly::by_index(&lvl, d, i);
                let fac = factor(&fs, &f);
                if fac.factors.iter().any(|(_, e)| *e > 1) {
                    continue;
                }
                let mu = mobius(&fs, &f).unwrap();
                let fd = monic_derivative(&lvl, &f);
                let sym = fs.xi_sign(resultant(&lvl, &fd, &f)).unwrap();
                let ex = (d * (d - 1) / 2) * ((q as usize - 1) / 2);
                let mut rhs = sym;
                if d % 2 == 1 {
                    rhs = -rhs;
                }
                if ex % 2 == 1 {
                    rhs = -rhs;
                }
                assert_eq!(mu, rhs);
            }
        }
    }

    #[test]
    fn discriminant_multiplicativity_randomized() {
        use rand::Rng;
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let df = rng.gen_range(1..=3);
            let dg = rng.gen_range(1..=3);
            let f = MonicPoly::by_index(&lvl, df, rng.gen_range(0..lvl.size.pow(df as u32)));
            let g = MonicPoly::by_index(&lvl, dg, rng.gen_range(0..lvl.size.pow(dg as u32)));
            let fg = monic_mul(&lvl, &f, &g);
            let lhs = resultant(&lvl, &monic_derivative(&lvl, &fg), &fg);
            let rhs = lvl.mul(
                lvl.mul(
                    resultant(&lvl, &monic_derivative(&lvl, &f), &f),
                    resultant(&lvl, &monic_derivative(&lvl, &g), &g),
                ),
                lvl.mul(resultant_mm(&lvl, &f, &g), resultant_mm(&lvl, &g, &f)),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_basics() {
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        // d/dt (t^3 + t + 1) = 1 over F_3
        let f = mk(&fs, "t^3+t+1").to_poly(&lvl);
        let d = derivative(&lvl, &f);
        assert_eq!(d.coeffs.len(), 1);
        assert_eq!(d.coeffs[0], fs.from_int(1, 1));
    }
}
