//! Certified isolation of the complex roots of a squarefree polynomial over
//! Q(zeta_N).
//!
//! Approximate roots come from a float Aberth-Ehrlich pass, are polished by
//! Newton in dyadic arithmetic, and are then certified: around each
//! approximation z the disc of radius d*|f(z)|/|f'(z)| contains at least one
//! root, so d pairwise disjoint discs for a degree-d polynomial isolate
//! exactly one root each.

use super::kpoly::KPoly;
use crate::interval::{CBall, Dyadic};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn add(self, o: Self) -> Self {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: Self) -> Self {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: Self) -> Self {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn eval_f64(coeffs: &[C64], z: C64) -> (C64, C64) {
    // returns (f(z), f'(z))
    let mut f = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = d.mul(z).add(f);
        f = f.mul(z).add(*c);
    }
    (f, d)
}

fn aberth(coeffs: &[C64]) -> Vec<C64> {
    let d = coeffs.len() - 1;
    let scale = coeffs
        .iter()
        .take(d)
        .map(|c| c.abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let r = 1.0 + scale.powf(1.0 / d as f64).max(1.0);
    let mut z: Vec<C64> = (0..d)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.3) / d as f64 + 0.41;
            C64::new(r * th.cos(), r * th.sin())
        })
        .collect();
    for _ in 0..800 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (f, df) = eval_f64(coeffs, z[i]);
            if f.abs() == 0.0 {
                continue;
            }
            let newton = if df.abs() > 0.0 { f.div(df) } else { C64::new(1e-3, 1e-3) };
            let mut sum = C64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i].sub(z[j]);
                    if diff.abs() > 0.0 {
                        sum = sum.add(C64::new(1.0, 0.0).div(diff));
                    }
                }
            }
            let denom = C64::new(1.0, 0.0).sub(newton.mul(sum));
            let step = if denom.abs() > 0.0 { newton.div(denom) } else { newton };
            z[i] = z[i].sub(step);
            moved = moved.max(step.abs() / z[i].abs().max(1.0));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// All roots with certified pairwise-disjoint discs, in a deterministic
/// order, or None if certification fails at this precision.
pub fn isolate_roots(poly: &KPoly, prec: u64) -> Option<Vec<CBall>> {
    let d = poly.deg();
    assert!(d >= 1);
    let cb: Vec<CBall> = poly.coeffs.iter().map(|c| c.embed(prec)).collect();
    let cf: Vec<C64> = cb.iter().map(|b| {
        let (re, im) = b.to_c64();
        C64::new(re, im)
    }).collect();
    let mut approx = aberth(&cf);

    // polish in dyadic arithmetic: Newton with exact centers
    let newton_iters = 4 + (prec as f64 / 45.0).log2().max(0.0).ceil() as usize;
    let mut centers: Vec<(Dyadic, Dyadic)> = approx
        .iter()
        .map(|z| {
            (
                Dyadic::from_rational(&rat_of(z.re), 60, false),
                Dyadic::from_rational(&rat_of(z.im), 60, false),
            )
        })
        .collect();
    for _ in 0..newton_iters {
        for c in centers.iter_mut() {
            let z = CBall::exact(c.0.clone(), c.1.clone());
            let (f, df) = eval_ball(&cb, &z, prec);
            let Some(inv) = ball_inv(&df) else { continue };
            let step = f.mul(&inv);
            let z2 = z.sub(&step).compress(prec + 16);
            *c = (z2.re, z2.im);
        }
    }

    // certification radii r_i = d * |f(z_i)| / |f'(z_i)| (upper bound)
    let mut discs: Vec<CBall> = Vec::with_capacity(d);
    for c in &centers {
        let z = CBall::exact(c.0.clone(), c.1.clone());
        let (f, df) = eval_ball(&cb, &z, prec);
        let num_up = f.abs2().upper().sqrt_upper();
        let den_lo = abs_lower(&df)?;
        if !den_lo.is_zero() && den_lo.cmp(&Dyadic::zero()) == std::cmp::Ordering::Greater {
            // r = d * num / den, rounded up
            let r = div_upper(&num_up.mul(&Dyadic::from_int(d as i64)), &den_lo);
            discs.push(CBall { re: c.0.clone(), im: c.1.clone(), rad: r });
        } else {
            return None;
        }
    }
    // pairwise disjoint?
    for i in 0..d {
        for j in i + 1..d {
            let dx = discs[i].re.sub(&discs[j].re);
            let dy = discs[i].im.sub(&discs[j].im);
            let dist2 = dx.mul(&dx).add(&dy.mul(&dy));
            let rsum = discs[i].rad.add(&discs[j].rad);
            let rsum2 = rsum.mul(&rsum);
            if dist2.cmp(&rsum2) != std::cmp::Ordering::Greater {
                return None;
            }
        }
    }
    discs.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    Some(discs)
}

fn rat_of(v: f64) -> num::BigRational {
    num::BigRational::from_float(v).unwrap_or_else(|| num::BigRational::from_integer(0.into()))
}

fn eval_ball(coeffs: &[CBall], z: &CBall, prec: u64) -> (CBall, CBall) {
    let mut f = CBall::zero();
    let mut d = CBall::zero();
    for c in coeffs.iter().rev() {
        d = d.mul(z).add(&f).compress(prec + 16);
        f = f.mul(z).add(c).compress(prec + 16);
    }
    (f, d)
}

fn ball_inv(w: &CBall) -> Option<CBall> {
    // 1/w on a disc not containing zero
    let lo = abs_lower(w)?;
    if lo.is_zero() || lo.is_negative() {
        return None;
    }
    let n2 = w.re.mul(&w.re).add(&w.im.mul(&w.im));
    // center of the inverse: conj(center)/|center|^2, radius bounded by
    // rad / lo^2 since |1/w1 - 1/w2| <= |w1 - w2| / (|w1||w2|); the
    // rounding of 1/|center|^2 shifts the center by at most (|re|+|im|)*ulp
    let inv_n2 = div_lower(&Dyadic::from_int(1), &n2);
    let ulp = div_upper(&Dyadic::from_int(1), &n2).sub(&inv_n2);
    let re = w.re.mul(&inv_n2);
    let im = w.im.neg().mul(&inv_n2);
    let center_err = w.re.abs().add(&w.im.abs()).mul(&ulp);
    let rad = div_upper(&w.rad, &lo.mul(&lo)).add(&center_err);
    Some(CBall { re, im, rad })
}

/// Lower bound for |center| - rad.
fn abs_lower(w: &CBall) -> Option<Dyadic> {
    let n2 = w.re.mul(&w.re).add(&w.im.mul(&w.im));
    let up = n2.sqrt_upper();
    // |center| >= n2 / sqrt_upper(n2)
    if up.is_zero() {
        return None;
    }
    let lo_center = div_lower(&n2, &up);
    let lo = lo_center.sub(&w.rad);
    Some(lo)
}

fn div_upper(a: &Dyadic, b: &Dyadic) -> Dyadic {
    // a/b rounded up, for positive b; the shift tracks the denominator size
    // so the quotient always carries ~128 significant bits
    let shift = 128 + b.mant.bits();
    let num = &a.mant << shift;
    let (q, r) = num::Integer::div_mod_floor(&num, &b.mant);
    let q = if r != num::BigInt::from(0) { q + 1 } else { q };
    Dyadic { mant: q, exp: a.exp - b.exp - shift as i64 }
}

fn div_lower(a: &Dyadic, b: &Dyadic) -> Dyadic {
    let shift = 128 + b.mant.bits();
    let num = &a.mant << shift;
    let (q, _r) = num::Integer::div_mod_floor(&num, &b.mant);
    Dyadic { mant: q, exp: a.exp - b.exp - shift as i64 }
}

/// Canonical isolated roots of an irreducible polynomial, cached. The
/// ordering is the one computed at the first (coarsest successful)
/// precision; refinements elsewhere match into these discs.
pub fn canonical_roots(poly: &KPoly) -> Option<Arc<Vec<CBall>>> {
    static CACHE: Lazy<Mutex<HashMap<KPoly, Arc<Vec<CBall>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = CACHE.lock().unwrap().get(poly) {
        return Some(v.clone());
    }
    let mut prec = 128u64;
    while prec <= 4096 {
        if let Some(d) = isolate_roots(poly, prec) {
            let arc = Arc::new(d);
            CACHE.lock().unwrap().insert(poly.clone(), arc.clone());
            return Some(arc);
        }
        prec *= 2;
    }
    None
}

/// Index of the canonical root whose disc contains the given point
/// (matched by nearest center, checked for containment).
pub fn match_root(roots: &[CBall], target: &CBall) -> Option<usize> {
    let mut best: Option<(usize, Dyadic)> = None;
    for (i, r) in roots.iter().enumerate() {
        let dx = r.re.sub(&target.re);
        let dy = r.im.sub(&target.im);
        let d2 = dx.mul(&dx).add(&dy.mul(&dy));
        if best.as_ref().map_or(true, |(_, b)| d2.cmp(b) == std::cmp::Ordering::Less) {
            best = Some((i, d2));
        }
    }
    let (idx, d2) = best?;
    // containment check: dist <= canon.rad + target.rad
    let rsum = roots[idx].rad.add(&target.rad);
    if d2.cmp(&rsum.mul(&rsum)) == std::cmp::Ordering::Greater {
        return None;
    }
    Some(idx)
}
