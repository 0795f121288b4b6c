//! Exact factorization of monic squarefree polynomials over Q and over
//! Q(zeta_N).
//!
//! Over Q: Zassenhaus. Factor modulo a good odd prime by distinct-degree
//! plus Cantor-Zassenhaus splitting, Hensel-lift the modular factorization
//! past the Landau-Mignotte coefficient bound, then recombine subsets.
//!
//! Over K = Q(zeta_N): Trager's reduction. Shift x -> x - s*zeta until the
//! norm N(f(x - s*zeta)) = Res_z(Phi_N(z), f(x - s z)) is squarefree,
//! factor the norm over Q, and pull each rational factor back through a
//! gcd over K.

use super::kpoly::KPoly;
use crate::cyclo::{cyclotomic_poly, CycNum};
use num::bigint::{BigInt, BigUint};
use num::traits::{One, Signed, Zero};
use num::BigRational;
use num::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// polynomials over Z/p for u64 primes
// ---------------------------------------------------------------------------

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pmul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    ptrim(out)
}

fn psub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = (out[i] + p - y) % p;
    }
    ptrim(out)
}

fn pinv(p: u64, a: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn pmod(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return ptrim(rem);
    }
    let lead_inv = pinv(p, den[dd]);
    for i in (0..rem.len() - dd).rev() {
        let c = (rem[i + dd] as u128 * lead_inv as u128 % p as u128) as u64;
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            let t = (c as u128 * den[j] as u128 % p as u128) as u64;
            rem[i + j] = (rem[i + j] + p - t) % p;
        }
    }
    rem.truncate(dd);
    ptrim(rem)
}

fn pgcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = pmod(p, &x, &y);
        x = y;
        y = r;
    }
    // monic
    let inv = pinv(p, *x.last().unwrap());
    x.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect()
}

fn ppowmod(p: u64, x: &[u64], e: &BigUint, md: &[u64]) -> Vec<u64> {
    let mut base = pmod(p, x, md);
    let mut acc = vec![1u64];
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = pmod(p, &pmul(p, &acc, &base), md);
        }
        if i + 1 < e.bits() {
            base = pmod(p, &pmul(p, &base, &base), md);
        }
    }
    acc
}

/// Factor a monic squarefree polynomial over Z/p (p odd) into monic
/// irreducibles, deterministic given the seed.
fn factor_mod_p(p: u64, f: &[u64], seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    let mut d = 0usize;
    while rest.len() - 1 > 0 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push(rest.clone());
            break;
        }
        frob = ppowmod(p, &frob, &BigUint::from(p), &rest);
        let diff = psub(p, &frob, &pmod(p, &x, &rest));
        if diff.is_empty() {
            equal_degree_mod_p(p, &rest, d, &mut rng, &mut out);
            break;
        }
        let g = pgcd(p, &rest, &diff);
        if g.len() > 1 {
            equal_degree_mod_p(p, &g, d, &mut rng, &mut out);
            rest = exact_div_mod_p(p, &rest, &g);
            frob = pmod(p, &frob, &rest);
        }
        if rest.len() - 1 == 0 {
            break;
        }
    }
    out.sort();
    out
}

fn exact_div_mod_p(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    // monic den; standard long division, remainder must vanish
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0u64; rem.len() - dd];
    let lead_inv = pinv(p, den[dd]);
    for i in (0..quot.len()).rev() {
        let c = (rem[i + dd] as u128 * lead_inv as u128 % p as u128) as u64;
        quot[i] = c;
        if c != 0 {
            for j in 0..=dd {
                let t = (c as u128 * den[j] as u128 % p as u128) as u64;
                rem[i + j] = (rem[i + j] + p - t) % p;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    ptrim(quot)
}

fn equal_degree_mod_p(p: u64, f: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    if f.len() - 1 == d {
        out.push(f.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let t: Vec<u64> = (0..f.len() - 1).map(|_| rng.gen_range(0..p)).collect();
        let t = ptrim(t);
        if t.len() <= 1 {
            continue;
        }
        let h = ppowmod(p, &t, &e, f);
        let split = psub(p, &h, &[1]);
        if split.is_empty() {
            continue;
        }
        let g = pgcd(p, f, &split);
        if g.len() == 1 || g.len() == f.len() {
            continue;
        }
        let co = exact_div_mod_p(p, f, &g);
        equal_degree_mod_p(p, &g, d, rng, out);
        equal_degree_mod_p(p, &co, d, rng, out);
        return;
    }
}

// ---------------------------------------------------------------------------
// polynomials over Z / m for a BigInt modulus (Hensel lifting)
// ---------------------------------------------------------------------------

fn norm_mod(v: &mut [BigInt], m: &BigInt) {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
}

fn btrim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn bmul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    norm_mod(&mut out, m);
    btrim(out)
}

fn badd_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    norm_mod(&mut out, m);
    btrim(out)
}

fn bsub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    norm_mod(&mut out, m);
    btrim(out)
}

/// divrem by a monic divisor over Z/m.
fn bdivrem_monic(num: &[BigInt], den: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![], btrim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].mod_floor(m);
        quot[i] = c.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                rem[i + j] -= &c * &den[j];
            }
        }
    }
    norm_mod(&mut rem, m);
    norm_mod(&mut quot, m);
    (btrim(quot), btrim(rem))
}

/// One quadratic Hensel step: from f = g h (mod m), sigma g + tau h = 1
/// (mod m), to the same data mod m^2. All polynomials monic except sigma, tau.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    sigma: &[BigInt],
    tau: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    // e = f - g h  (mod m^2)
    let e = bsub_mod(f, &bmul_mod(g, h, &m2), &m2);
    // dg = tau e rem g; dh = (e - dg h) / g  (exact mod m^2)
    let (_, dg) = bdivrem_monic(&bmul_mod(tau, &e, &m2), g, &m2);
    let num = bsub_mod(&e, &bmul_mod(&dg, h, &m2), &m2);
    let (dh, r0) = bdivrem_monic(&num, g, &m2);
    debug_assert!(r0.is_empty(), "hensel dg/dh solve failed");
    let g2 = badd_mod(g, &dg, &m2);
    let h2 = badd_mod(h, &dh, &m2);
    // lift Bezout: b = sigma g2 + tau h2 - 1 (mod m^2)
    let b = bsub_mod(
        &badd_mod(&bmul_mod(sigma, &g2, &m2), &bmul_mod(tau, &h2, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    // dtau = (b tau) rem g2 ; dsigma = (b - dtau h2)/g2
    let (_, dtau) = bdivrem_monic(&bmul_mod(tau, &b, &m2), &g2, &m2);
    let num2 = bsub_mod(&b, &bmul_mod(&dtau, &h2, &m2), &m2);
    let (dsigma, r1) = bdivrem_monic(&num2, &g2, &m2);
    debug_assert!(r1.is_empty(), "hensel bezout solve failed");
    let sigma2 = bsub_mod(sigma, &dsigma, &m2);
    let tau2 = bsub_mod(tau, &dtau, &m2);
    (g2, h2, sigma2, tau2)
}

/// Extended Euclid over Z/p for monic-ish polynomials: sigma a + tau b = 1.
fn bezout_mod_p(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    // work over Z/p with u64 polys
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![1], vec![]);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        // q = r0 / r1
        let (q, r) = {
            let dd = r1.len() - 1;
            let mut rem = r0.clone();
            if rem.len() <= dd {
                (vec![], rem)
            } else {
                let lead_inv = pinv(p, r1[dd]);
                let mut quot = vec![0u64; rem.len() - dd];
                for i in (0..quot.len()).rev() {
                    let c = (rem[i + dd] as u128 * lead_inv as u128 % p as u128) as u64;
                    quot[i] = c;
                    if c != 0 {
                        for j in 0..=dd {
                            let t = (c as u128 * r1[j] as u128 % p as u128) as u64;
                            rem[i + j] = (rem[i + j] + p - t) % p;
                        }
                    }
                }
                (ptrim(quot), ptrim(rem))
            }
        };
        let s = psub(p, &s0, &pmul(p, &q, &s1));
        let t = psub(p, &t0, &pmul(p, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    // r0 is a nonzero constant; normalize
    let inv = pinv(p, r0[0]);
    let scale = |v: &[u64]| -> Vec<u64> {
        v.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect()
    };
    (scale(&s0), scale(&t0))
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift the factorization f = prod factors (mod p) to mod p^(2^steps) by a
/// binary tree of two-factor Hensel lifts.
fn hensel_tree(
    f: &[BigInt],
    factors: &[Vec<u64>],
    p: u64,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        // single factor: f itself reduced mod target
        let mut v = f.to_vec();
        norm_mod(&mut v, target);
        return vec![btrim(v)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0: Vec<u64> = left.iter().fold(vec![1u64], |acc, x| pmul(p, &acc, x));
    let h0: Vec<u64> = right.iter().fold(vec![1u64], |acc, x| pmul(p, &acc, x));
    let (s0, t0) = bezout_mod_p(p, &g0, &h0);
    let (mut g, mut h, mut sigma, mut tau) =
        (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = BigInt::from(p);
    while &m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &sigma, &tau, &m);
        g = g2;
        h = h2;
        sigma = s2;
        tau = t2;
        m = &m * &m;
    }
    norm_mod(&mut g, &m);
    norm_mod(&mut h, &m);
    let mut out = hensel_tree(&btrim(g), left, p, target);
    out.extend(hensel_tree(&btrim(h), right, p, target));
    out
}

/// Centered representative in (-m/2, m/2].
fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Exact division test over Z for monic divisor; returns the quotient.
fn try_divide_z(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = den.len() - 1;
    if num.len() - 1 < dd {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        quot[i] = c.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                rem[i + j] -= &c * &den[j];
            }
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

const FACTOR_PRIMES: &[u64] = &[
    1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099, 1_000_117, 1_000_121,
    1_000_133, 1_000_151, 1_000_159, 1_000_171, 1_000_183, 1_000_187, 1_000_193, 1_000_199,
];

/// Factor a monic squarefree polynomial with integer coefficients into
/// monic irreducible integer polynomials (Zassenhaus).
pub fn factor_monic_z(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = f.len() - 1;
    if d == 0 {
        return vec![];
    }
    if d == 1 {
        return vec![f.to_vec()];
    }
    // pick a prime where f stays squarefree
    let mut chosen = None;
    for &p in FACTOR_PRIMES {
        let fp: Vec<u64> = f
            .iter()
            .map(|c| {
                let r = c.mod_floor(&BigInt::from(p));
                u64::try_from(&r).unwrap()
            })
            .collect();
        let fp = ptrim(fp);
        if fp.len() != d + 1 {
            continue; // leading coefficient vanished (cannot happen, monic)
        }
        // squarefree mod p?
        let deriv: Vec<u64> = {
            let mut v = vec![0u64; d];
            for i in 1..=d {
                v[i - 1] = (fp[i] as u128 * (i as u128 % p as u128) % p as u128) as u64;
            }
            ptrim(v)
        };
        if deriv.is_empty() {
            continue;
        }
        if pgcd(p, &fp, &deriv).len() == 1 {
            chosen = Some((p, fp));
            break;
        }
    }
    let (p, fp) = chosen.expect("no good prime for squarefree input");
    let modular = factor_mod_p(p, &fp, 0x5eed ^ d as u64);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Landau-Mignotte: |coeff of any monic factor| <= 2^d * ||f||_2
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = (BigInt::one() << d) * norm2 * 2 + 1;
    let mut target = BigInt::from(p);
    while target < bound {
        target = &target * &target;
    }
    let lifted = hensel_tree(f, &modular, p, &target);
    let modulus = {
        // actual modulus reached by the lifting chain
        let mut m = BigInt::from(p);
        while &m < &target {
            m = &m * &m;
        }
        m
    };

    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.to_vec();
    let mut out = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        let mut combo = vec![0usize; size];
        let mut init = true;
        loop {
            if init {
                for (i, c) in combo.iter_mut().enumerate() {
                    *c = i;
                }
                init = false;
            } else {
                // next combination
                let mut i = size;
                loop {
                    if i == 0 {
                        size += 1;
                        continue 'outer;
                    }
                    i -= 1;
                    if combo[i] + (size - i) < idxs.len() {
                        combo[i] += 1;
                        for j in i + 1..size {
                            combo[j] = combo[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
            // candidate = product of chosen lifted factors, centered
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = bmul_mod(&prod, &remaining[i], &modulus);
            }
            let cand = symmetric(&prod, &modulus);
            if let Some(quot) = try_divide_z(&current, &cand) {
                out.push(cand);
                current = quot;
                let mut keep = vec![];
                for (i, fac) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fac);
                    }
                }
                remaining = keep;
                size = 1;
                continue 'outer;
            }
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out.sort_by_key(|v| (v.len(), format!("{v:?}")));
    out
}

/// Factor a monic squarefree polynomial over Q.
pub fn factor_monic_q(f: &[BigRational]) -> Vec<Vec<BigRational>> {
    let d = f.len() - 1;
    if d == 0 {
        return vec![];
    }
    // scale y = c x so the polynomial becomes monic integral
    let mut c = BigInt::one();
    for a in f.iter() {
        c = c.lcm(a.denom());
    }
    let fz: Vec<BigInt> = f
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let scaled = a * BigRational::from_integer(c.pow((d - i) as u32));
            assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect();
    let factors = factor_monic_z(&fz);
    factors
        .into_iter()
        .map(|g| {
            let dg = g.len() - 1;
            g.iter()
                .enumerate()
                .map(|(i, b)| {
                    BigRational::new(b.clone(), c.pow((dg - i) as u32))
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Trager over Q(zeta_N)
// ---------------------------------------------------------------------------

fn qtrim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qdivrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![], qtrim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &den[dd];
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[i + j] -= t;
            }
        }
        quot[i] = c;
    }
    (qtrim(quot), qtrim(rem))
}

fn qgcd_monic(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = qdivrem(&x, &y);
        x = y;
        y = r;
    }
    let inv = BigRational::one() / x.last().unwrap().clone();
    x.iter().map(|c| c * &inv).collect()
}

/// Product of g over the roots of the monic modulus (a rational resultant).
fn res_roots_q(modulus: &[BigRational], g: &[BigRational]) -> BigRational {
    if modulus.len() == 1 {
        return BigRational::one();
    }
    if g.is_empty() {
        return BigRational::zero();
    }
    if g.len() == 1 {
        return num::pow::pow(g[0].clone(), modulus.len() - 1);
    }
    let (_, r) = qdivrem(g, modulus);
    if r.is_empty() {
        return BigRational::zero();
    }
    if r.len() == 1 {
        return num::pow::pow(r[0].clone(), modulus.len() - 1);
    }
    let lead = r.last().unwrap().clone();
    let rm: Vec<BigRational> = r.iter().map(|c| c / &lead).collect();
    let sign = ((rm.len() - 1) * (modulus.len() - 1)) % 2 == 1;
    let sub = res_roots_q(&rm, modulus);
    let mut out = num::pow::pow(lead, modulus.len() - 1) * sub;
    if sign {
        out = -out;
    }
    out
}

/// Factor a monic squarefree polynomial over K = Q(zeta_N) into monic
/// irreducible factors (Trager's algorithm).
pub fn factor_over_k(f: &KPoly) -> Vec<KPoly> {
    let n = f.n;
    assert!(f.is_monic());
    let d = f.deg();
    if d <= 1 {
        return vec![f.clone()];
    }
    let phi: Vec<BigRational> = cyclotomic_poly(n)
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let phi_deg = phi.len() - 1;
    let zeta = CycNum::root_power(n, 1);
    for s in 0..40i64 {
        // g_s(x) = f(x - s zeta)
        let shift = zeta.scale(&BigRational::from_integer((-s).into()));
        let gs = f.compose_shift(&shift);
        // norm via evaluation / interpolation
        let nd = d * phi_deg;
        let xs: Vec<BigRational> =
            (0..=nd as i64).map(|v| BigRational::from_integer(v.into())).collect();
        let mut ys = Vec::with_capacity(xs.len());
        for x0 in &xs {
            // A(z) = gs(x0) as a polynomial in z
            let val = gs.eval(&CycNum::from_rational(n, x0.clone()));
            let a: Vec<BigRational> = qtrim(val.coeffs().to_vec());
            ys.push(res_roots_q(&phi, &a));
        }
        let norm = lagrange_interpolate(&xs, &ys);
        debug_assert_eq!(norm.len() - 1, nd);
        // squarefree?
        let deriv: Vec<BigRational> = norm[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer((i as i64 + 1).into()))
            .collect();
        let deriv = qtrim(deriv);
        if qgcd_monic(&norm, &deriv).len() != 1 {
            continue;
        }
        let factors_q = factor_monic_q(&norm);
        if factors_q.len() == 1 {
            return vec![f.clone()];
        }
        let mut out = vec![];
        for fq in factors_q {
            let fk = KPoly::new(
                n,
                fq.iter().map(|c| CycNum::from_rational(n, c.clone())).collect(),
            );
            let g = gs.gcd_monic(&fk);
            if g.deg() == 0 {
                continue;
            }
            // shift back: factor of f is g(x + s zeta)
            let back = g.compose_shift(&shift.neg());
            out.push(back);
        }
        out.sort_by_key(|p| p.deg());
        debug_assert_eq!(out.iter().map(|p| p.deg()).sum::<usize>(), d);
        return out;
    }
    panic!("no squarefree shift found for Trager norm");
}

fn lagrange_interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j)/(x_i - x_j)
        let mut num = vec![BigRational::one()];
        let mut den = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // num *= (x - x_j)
            let mut next = vec![BigRational::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[j];
            }
            num = next;
            den *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / den;
        for (k, c) in num.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    qtrim(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zpoly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn zassenhaus_basics() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let f = zpoly(&[-6, 11, -6, 1]);
        let fac = factor_monic_z(&f);
        assert_eq!(fac.len(), 3);
        for g in &fac {
            assert_eq!(g.len(), 2);
        }
        // x^2 + 1 irreducible over Z
        assert_eq!(factor_monic_z(&zpoly(&[1, 0, 1])).len(), 1);
        // x^4 + 1 irreducible over Z (but splits mod every prime)
        assert_eq!(factor_monic_z(&zpoly(&[1, 0, 0, 0, 1])).len(), 1);
        // (x^2+1)(x^2-2)
        let f = zpoly(&[-2, 0, -1, 0, 1]);
        let fac = factor_monic_z(&f);
        assert_eq!(fac.len(), 2);
        assert!(fac.contains(&zpoly(&[1, 0, 1])));
        assert!(fac.contains(&zpoly(&[-2, 0, 1])));
        // big roots: (x - 243)(x - 81)
        let f = zpoly(&[243 * 81, -(243 + 81), 1]);
        let fac = factor_monic_z(&f);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn rational_scaling() {
        // (x - 1/2)(x - 3) = x^2 - 7/2 x + 3/2
        let f: Vec<BigRational> = vec![
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-7).into(), 2.into()),
            BigRational::one(),
        ];
        let fac = factor_monic_q(&f);
        assert_eq!(fac.len(), 2);
        let half = BigRational::new(1.into(), 2.into());
        assert!(fac.iter().any(|g| g.len() == 2 && g[0] == -half.clone()));
    }

    #[test]
    fn trager_over_q_zeta6() {
        let n = 6u32;
        let z3 = CycNum::sub_root(n, 3, 1);
        let z32 = CycNum::sub_root(n, 3, 2);
        let g = z3.sub(&z32); // sqrt(-3)
        // x^2 + 3 = (x - g)(x + g) splits over Q(zeta_6)
        let f = KPoly::new(n, vec![CycNum::from_int(n, 3), CycNum::zero(n), CycNum::one(n)]);
        let fac = factor_over_k(&f);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|p| p.deg() == 1));
        let roots: Vec<CycNum> = fac.iter().map(|p| p.coeffs[0].neg()).collect();
        assert!(roots.contains(&g));
        assert!(roots.contains(&g.neg()));
        // x^2 - 3 stays irreducible over Q(zeta_6)
        let f2 = KPoly::new(n, vec![CycNum::from_int(n, -3), CycNum::zero(n), CycNum::one(n)]);
        let fac2 = factor_over_k(&f2);
        assert_eq!(fac2.len(), 1);
        assert_eq!(fac2[0].deg(), 2);
    }

    #[test]
    fn trager_over_q_zeta10() {
        // x^2 - 5 splits over Q(zeta_10) (Gauss sum for q = 5)
        let n = 10u32;
        let f = KPoly::new(n, vec![CycNum::from_int(n, -5), CycNum::zero(n), CycNum::one(n)]);
        let fac = factor_over_k(&f);
        assert_eq!(fac.len(), 2, "sqrt(5) lies in Q(zeta_5)");
        // and a rational split with cyclotomic roots: (x - zeta)(x - 2)
        let z = CycNum::root_power(n, 1);
        let f2 = KPoly::linear(n, &z).mul(&KPoly::linear(n, &CycNum::from_int(n, 2)));
        let fac2 = factor_over_k(&f2);
        assert_eq!(fac2.len(), 2);
        let roots: Vec<CycNum> = fac2.iter().map(|p| p.coeffs[0].neg()).collect();
        assert!(roots.contains(&z));
    }
}
