//! Sets of ordered pairs of Weil numbers and integers, and their recovery
//! from power-sum sequences.
//!
//! A `WeilSet` J = {(alpha_j, c_j)} carries the Frobenius-eigenvalue data of
//! a coefficient system: no alpha appears twice, no c is zero, and the set
//! is characterized by its power sums sum_j c_j alpha_j^e. Union adds
//! multiplicities, beta*J scales every alpha, and J(q^e) raises every alpha
//! to the e-th power.
//!
//! `recover` inverts the power-sum map: Berlekamp-Massey finds the minimal
//! recurrence, the characteristic polynomial factors over Q(zeta_N), linear
//! factors become `Exact` entries, higher factors become full orbits of
//! `Implicit` entries (minimal polynomial plus an isolating disc), and the
//! integer multiplicities come from solving the generalized Vandermonde
//! system. Everything is re-verified against the input sequence.

pub mod kpoly;
pub mod roots;
pub mod zfactor;

use crate::cyclo::CycNum;
use crate::interval::{CBall, Dyadic, RBall};
use kpoly::{berlekamp_massey, charpoly_of_connection, KPoly};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::BigRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("recurrence of order {order} not confirmed by {terms} terms; extend the sequence")]
    RecurrenceUnstable { order: usize, terms: usize },
    #[error("recovered multiplicity {0} is not a rational integer")]
    NonIntegerMultiplicity(String),
    #[error("recovered set does not reproduce the input sequence")]
    VerificationFailed,
    #[error("magnitude straddles the threshold after precision escalation")]
    ThresholdAmbiguous,
    #[error("root isolation failed within the precision cap")]
    PrecisionExhausted,
}

/// A Weil number: exact in Q(zeta_N), or one root of an irreducible
/// polynomial over Q(zeta_N), identified by its canonical root index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WeilNumber {
    Exact(CycNum),
    Implicit { minpoly: KPoly, root_idx: usize },
}

impl WeilNumber {
    /// Rigorous enclosure at the requested precision.
    pub fn enclosure(&self, prec: u64) -> Result<CBall, WeilError> {
        match self {
            WeilNumber::Exact(x) => Ok(x.embed(prec)),
            WeilNumber::Implicit { minpoly, root_idx } => {
                let canon = roots::canonical_roots(minpoly).ok_or(WeilError::PrecisionExhausted)?;
                if prec <= 128 {
                    return Ok(canon[*root_idx].clone());
                }
                let fine =
                    roots::isolate_roots(minpoly, prec).ok_or(WeilError::PrecisionExhausted)?;
                for f in &fine {
                    if roots::match_root(&canon, f) == Some(*root_idx) {
                        return Ok(f.clone());
                    }
                }
                Err(WeilError::PrecisionExhausted)
            }
        }
    }

    pub fn conj(&self) -> Result<WeilNumber, WeilError> {
        match self {
            WeilNumber::Exact(x) => Ok(WeilNumber::Exact(x.conj())),
            WeilNumber::Implicit { minpoly, root_idx } => {
                let mp = minpoly.conj();
                let canon_old = roots::canonical_roots(minpoly).ok_or(WeilError::PrecisionExhausted)?;
                let canon = roots::canonical_roots(&mp).ok_or(WeilError::PrecisionExhausted)?;
                let here = canon_old[*root_idx].conj();
                let idx = roots::match_root(&canon, &here).ok_or(WeilError::PrecisionExhausted)?;
                Ok(WeilNumber::Implicit { minpoly: mp, root_idx: idx })
            }
        }
    }
}

/// A set of ordered pairs (alpha_j, c_j); canonical order, no repeated
/// alpha, c nonzero. Implicit entries always occur in full conjugate orbits
/// sharing one multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeilSet {
    n: u32,
    pairs: Vec<(WeilNumber, i64)>,
}

impl WeilSet {
    pub fn empty(n: u32) -> Self {
        WeilSet { n, pairs: vec![] }
    }

    pub fn cyc_modulus(&self) -> u32 {
        self.n
    }

    pub fn from_exact(n: u32, entries: Vec<(CycNum, i64)>) -> Self {
        Self::from_pairs(n, entries.into_iter().map(|(a, c)| (WeilNumber::Exact(a), c)).collect())
    }

    pub fn from_pairs(n: u32, entries: Vec<(WeilNumber, i64)>) -> Self {
        let mut s = Self::empty(n);
        for (a, c) in entries {
            if c != 0 {
                s = s.union(&WeilSet { n, pairs: vec![(a, c)] });
            }
        }
        s
    }

    pub fn pairs(&self) -> &[(WeilNumber, i64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    fn canonical_sort(&mut self) {
        let prec = 96;
        let mut keys: Vec<(usize, Dyadic, Dyadic, String)> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, (a, _))| {
                let b = a.enclosure(prec).unwrap_or_else(|_| CBall::zero());
                (i, b.re, b.im, format!("{a:?}"))
            })
            .collect();
        keys.sort_by(|x, y| {
            x.1.cmp(&y.1)
                .then_with(|| x.2.cmp(&y.2))
                .then_with(|| x.3.cmp(&y.3))
        });
        let order: Vec<usize> = keys.into_iter().map(|k| k.0).collect();
        let mut out = Vec::with_capacity(self.pairs.len());
        for i in order {
            out.push(self.pairs[i].clone());
        }
        self.pairs = out;
    }

    /// Union with multiplicity addition; zero sums drop out.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut pairs: Vec<(WeilNumber, i64)> = self.pairs.clone();
        for (a, c) in &other.pairs {
            if let Some(slot) = pairs.iter_mut().find(|(b, _)| b == a) {
                slot.1 += c;
            } else {
                pairs.push((a.clone(), *c));
            }
        }
        pairs.retain(|(_, c)| *c != 0);
        let mut out = WeilSet { n: self.n, pairs };
        out.canonical_sort();
        out
    }

    /// beta * J = {(beta alpha_j, c_j)} for exact nonzero beta.
    pub fn scale(&self, beta: &CycNum) -> Result<Self, WeilError> {
        assert!(!beta.is_zero());
        let mut out = Self::empty(self.n);
        for (a, c) in &self.pairs {
            let scaled = match a {
                WeilNumber::Exact(x) => WeilNumber::Exact(x.mul(beta)),
                WeilNumber::Implicit { minpoly, root_idx } => {
                    let mp = minpoly.scale_roots(beta);
                    let canon_old =
                        roots::canonical_roots(minpoly).ok_or(WeilError::PrecisionExhausted)?;
                    let canon =
                        roots::canonical_roots(&mp).ok_or(WeilError::PrecisionExhausted)?;
                    let moved = canon_old[*root_idx].mul(&beta.embed(128));
                    let idx = roots::match_root(&canon, &moved)
                        .ok_or(WeilError::PrecisionExhausted)?;
                    WeilNumber::Implicit { minpoly: mp, root_idx: idx }
                }
            };
            out = out.union(&WeilSet { n: self.n, pairs: vec![(scaled, *c)] });
        }
        Ok(out)
    }

    /// Group the Implicit entries by minimal polynomial, checking the
    /// full-orbit invariant; returns (minpoly, c) per orbit.
    fn implicit_orbits(&self) -> Vec<(KPoly, i64)> {
        let mut groups: BTreeMap<String, (KPoly, i64, usize)> = BTreeMap::new();
        for (a, c) in &self.pairs {
            if let WeilNumber::Implicit { minpoly, .. } = a {
                let key = format!("{minpoly:?}");
                let e = groups.entry(key).or_insert_with(|| (minpoly.clone(), *c, 0));
                assert_eq!(e.1, *c, "implicit orbit with mixed multiplicities");
                e.2 += 1;
            }
        }
        groups
            .into_values()
            .map(|(mp, c, count)| {
                assert_eq!(count, mp.deg(), "partial implicit orbit");
                (mp, c)
            })
            .collect()
    }

    /// J(q^e) = {(alpha_j^e, c_j)}.
    pub fn pow_system(&self, e: u32) -> Result<Self, WeilError> {
        assert!(e >= 1);
        let mut out = Self::empty(self.n);
        for (a, c) in &self.pairs {
            if let WeilNumber::Exact(x) = a {
                out = out.union(&WeilSet {
                    n: self.n,
                    pairs: vec![(WeilNumber::Exact(x.pow(e as u64)), *c)],
                });
            }
        }
        for (mp, c) in self.implicit_orbits() {
            // the polynomial with roots alpha^e, via Newton sums
            let d = mp.deg();
            let sums = mp.newton_sums(d * e as usize);
            let pe: Vec<CycNum> = (1..=d).map(|j| sums[j * e as usize - 1].clone()).collect();
            let powered = KPoly::from_power_sums(self.n, d, &pe);
            // factor, with multiplicities, and distribute
            let mut rest = powered;
            let squarefree = {
                let g = rest.gcd_monic(&rest.derivative());
                rest.divrem(&g).0
            };
            for factor in zfactor::factor_over_k(&squarefree.make_monic()) {
                // multiplicity of this factor in `powered`
                let mut mult = 0i64;
                loop {
                    let (q, r) = rest.divrem(&factor);
                    if r.is_zero() {
                        mult += 1;
                        rest = q;
                    } else {
                        break;
                    }
                }
                let add = if factor.deg() == 1 {
                    let root = factor.coeffs[0].neg();
                    WeilSet {
                        n: self.n,
                        pairs: vec![(WeilNumber::Exact(root), c * mult)],
                    }
                } else {
                    let mut pairs = vec![];
                    for idx in 0..factor.deg() {
                        pairs.push((
                            WeilNumber::Implicit { minpoly: factor.clone(), root_idx: idx },
                            c * mult,
                        ));
                    }
                    WeilSet { n: self.n, pairs }
                };
                out = out.union(&add);
            }
        }
        Ok(out)
    }

    /// sum_j c_j alpha_j^e (negative e through inverse roots).
    pub fn power_sum(&self, e: i64) -> CycNum {
        let mut acc = CycNum::zero(self.n);
        for (a, c) in &self.pairs {
            if let WeilNumber::Exact(x) = a {
                let v = x.pow_i(e).expect("nonzero Weil number");
                acc = acc.add(&v.scale(&BigRational::from_integer((*c).into())));
            }
        }
        for (mp, c) in self.implicit_orbits() {
            let v = if e >= 0 {
                if e == 0 {
                    CycNum::from_int(self.n, mp.deg() as i64)
                } else {
                    mp.newton_sums(e as usize)[e as usize - 1].clone()
                }
            } else {
                let rec = mp.reciprocal_roots_scaled(&CycNum::one(self.n));
                rec.newton_sums((-e) as usize)[(-e) as usize - 1].clone()
            };
            acc = acc.add(&v.scale(&BigRational::from_integer(c.into())));
        }
        acc
    }

    /// sum_j c_j (x_num / conj(alpha_j))^e.
    pub fn power_sum_conj_recip(&self, x_num: &CycNum, e: u32) -> CycNum {
        let mut acc = CycNum::zero(self.n);
        for (a, c) in &self.pairs {
            if let WeilNumber::Exact(x) = a {
                let v = x_num
                    .div_exact(&x.conj())
                    .expect("nonzero Weil number")
                    .pow(e as u64);
                acc = acc.add(&v.scale(&BigRational::from_integer((*c).into())));
            }
        }
        for (mp, c) in self.implicit_orbits() {
            let conj = mp.conj();
            let transformed = conj.reciprocal_roots_scaled(x_num);
            let v = transformed.newton_sums(e as usize)[e as usize - 1].clone();
            acc = acc.add(&v.scale(&BigRational::from_integer(c.into())));
        }
        acc
    }

    pub fn conj(&self) -> Result<Self, WeilError> {
        let mut out = Self::empty(self.n);
        for (a, c) in &self.pairs {
            out = out.union(&WeilSet { n: self.n, pairs: vec![(a.conj()?, *c)] });
        }
        Ok(out)
    }

    /// Partition by certified comparison of |alpha| against q^{(d+1)/2}
    /// (compared as |alpha|^2 vs q^{d+1}).
    pub fn split_threshold(&self, d_total: u32, q: u64) -> Result<(Self, Self), WeilError> {
        let thresh = BigInt::from(q).pow(d_total + 1);
        let thresh_rat = BigRational::from_integer(thresh.clone());
        let mut small = Self::empty(self.n);
        let mut large = Self::empty(self.n);
        'pairs: for (a, c) in &self.pairs {
            // exact route when |alpha|^2 is rational
            if let WeilNumber::Exact(x) = a {
                if let Some(r) = x.norm_squared().as_rational() {
                    let one = WeilSet { n: self.n, pairs: vec![(a.clone(), *c)] };
                    if r < thresh_rat {
                        small = small.union(&one);
                    } else if r > thresh_rat {
                        large = large.union(&one);
                    } else {
                        return Err(WeilError::ThresholdAmbiguous);
                    }
                    continue 'pairs;
                }
            }
            let mut prec = 128u64;
            while prec <= 4096 {
                let b = a.enclosure(prec)?;
                let a2 = b.abs2();
                let t = RBall::exact(Dyadic::from_bigint(thresh.clone()));
                if a2.lt_certain(&t) {
                    small = small.union(&WeilSet { n: self.n, pairs: vec![(a.clone(), *c)] });
                    continue 'pairs;
                }
                if a2.gt_certain(&t) {
                    large = large.union(&WeilSet { n: self.n, pairs: vec![(a.clone(), *c)] });
                    continue 'pairs;
                }
                prec *= 2;
            }
            return Err(WeilError::ThresholdAmbiguous);
        }
        Ok((small, large))
    }

    /// Certified strict bound |alpha_j| < q^{(d_total - 1)/2} for every entry.
    pub fn certify_axiom5_bound(&self, d_total: u32, q: u64) -> Result<bool, WeilError> {
        if d_total < 2 {
            return Ok(true);
        }
        let thresh = BigInt::from(q).pow(d_total - 1);
        let thresh_rat = BigRational::from_integer(thresh.clone());
        'pairs: for (a, _) in &self.pairs {
            if let WeilNumber::Exact(x) = a {
                if let Some(r) = x.norm_squared().as_rational() {
                    if r < thresh_rat {
                        continue 'pairs;
                    }
                    return Ok(false);
                }
            }
            let mut prec = 128u64;
            loop {
                let b = a.enclosure(prec)?;
                let a2 = b.abs2();
                let t = RBall::exact(Dyadic::from_bigint(thresh.clone()));
                if a2.lt_certain(&t) {
                    continue 'pairs;
                }
                if a2.gt_certain(&t) {
                    return Ok(false);
                }
                prec *= 2;
                if prec > 4096 {
                    return Err(WeilError::ThresholdAmbiguous);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .pairs
            .iter()
            .map(|(a, c)| {
                let alpha = match a {
                    WeilNumber::Exact(x) => serde_json::json!({ "exact": x.to_json() }),
                    WeilNumber::Implicit { minpoly, root_idx } => {
                        let disc = a.enclosure(128).ok();
                        serde_json::json!({
                            "minpoly": minpoly
                                .coeffs
                                .iter()
                                .map(|c| c.to_json())
                                .collect::<Vec<_>>(),
                            "root_index": root_idx,
                            "root": disc.map(|d| serde_json::json!({
                                "re": d.re.to_f64(),
                                "im": d.im.to_f64(),
                                "rad": d.rad.to_f64(),
                            })),
                        })
                    }
                };
                serde_json::json!({ "alpha": alpha, "c": c })
            })
            .collect();
        serde_json::Value::Array(entries)
    }

    /// Compact display: {(alpha, c), ...} with exact values printed inline.
    pub fn display(&self) -> String {
        if self.pairs.is_empty() {
            return "{}".into();
        }
        let mut s = String::from("{");
        for (i, (a, c)) in self.pairs.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            match a {
                WeilNumber::Exact(x) => s.push_str(&format!("({x}, {c})")),
                WeilNumber::Implicit { minpoly, root_idx } => {
                    s.push_str(&format!("(root#{root_idx} of deg-{} minpoly, {c})", minpoly.deg()))
                }
            }
        }
        s.push('}');
        s
    }
}

/// How much confirmation `recover` demands beyond the information-theoretic
/// minimum of 2L terms for a recurrence of order L.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Headroom {
    /// Standalone use: require at least 2L+1 terms.
    Strict,
    /// Solver use: accept 2L terms; the caller supplies structural checks.
    Relaxed,
}

/// Recover the minimal WeilSet whose power sums reproduce s[0..], where
/// s[i] is the sum at exponent i+1.
pub fn recover(n: u32, seq: &[CycNum], headroom: Headroom) -> Result<WeilSet, WeilError> {
    if seq.iter().all(|x| x.is_zero()) {
        return Ok(WeilSet::empty(n));
    }
    let (l, conn) = berlekamp_massey(n, seq);
    let needed = match headroom {
        Headroom::Strict => 2 * l + 1,
        Headroom::Relaxed => 2 * l,
    };
    if seq.len() < needed {
        return Err(WeilError::RecurrenceUnstable { order: l, terms: seq.len() });
    }
    let charpoly = charpoly_of_connection(n, l, &conn);
    // zero roots or repeated roots mean the input is not a finite signed
    // power sum of nonzero Weil numbers
    if charpoly.coeffs[0].is_zero() {
        return Err(WeilError::VerificationFailed);
    }
    if !charpoly.is_squarefree() {
        return Err(WeilError::VerificationFailed);
    }
    let factors = zfactor::factor_over_k(&charpoly);
    // solve sum_F c_F p_m(F) = s_m over K, m = 1..len
    let k = factors.len();
    let m_rows = seq.len();
    let mut cols: Vec<Vec<CycNum>> = Vec::with_capacity(k);
    for f in &factors {
        cols.push(f.newton_sums(m_rows));
    }
    let mut aug: Vec<Vec<CycNum>> = (0..m_rows)
        .map(|i| {
            let mut row: Vec<CycNum> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(seq[i].clone());
            row
        })
        .collect();
    // Gaussian elimination
    let mut piv_rows = vec![];
    let mut row0 = 0usize;
    for col in 0..k {
        let Some(pr) = (row0..m_rows).find(|&r| !aug[r][col].is_zero()) else {
            return Err(WeilError::VerificationFailed);
        };
        aug.swap(row0, pr);
        let inv = aug[row0][col].inv().expect("pivot");
        for j in col..=k {
            aug[row0][j] = aug[row0][j].mul(&inv);
        }
        for r in 0..m_rows {
            if r != row0 && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in col..=k {
                    let t = f.mul(&aug[row0][j]);
                    aug[r][j] = aug[r][j].sub(&t);
                }
            }
        }
        piv_rows.push(row0);
        row0 += 1;
    }
    // consistency of the remaining rows
    for r in row0..m_rows {
        if !aug[r][k].is_zero() {
            return Err(WeilError::VerificationFailed);
        }
    }
    let mut coeffs: Vec<i64> = Vec::with_capacity(k);
    for (i, _) in factors.iter().enumerate() {
        let v = &aug[piv_rows[i]][k];
        let Some(r) = v.as_rational() else {
            return Err(WeilError::NonIntegerMultiplicity(v.to_string()));
        };
        if !r.denom().is_one() {
            return Err(WeilError::NonIntegerMultiplicity(v.to_string()));
        }
        let c = i64::try_from(r.numer()).map_err(|_| {
            WeilError::NonIntegerMultiplicity(v.to_string())
        })?;
        if c == 0 {
            return Err(WeilError::VerificationFailed);
        }
        coeffs.push(c);
    }
    let mut out = WeilSet::empty(n);
    for (f, c) in factors.iter().zip(&coeffs) {
        let add = if f.deg() == 1 {
            WeilSet { n, pairs: vec![(WeilNumber::Exact(f.coeffs[0].neg()), *c)] }
        } else {
            if roots::canonical_roots(f).is_none() {
                return Err(WeilError::PrecisionExhausted);
            }
            let pairs = (0..f.deg())
                .map(|idx| (WeilNumber::Implicit { minpoly: f.clone(), root_idx: idx }, *c))
                .collect();
            WeilSet { n, pairs }
        };
        out = out.union(&add);
    }
    // reproduce every input term
    for (i, s) in seq.iter().enumerate() {
        if &out.power_sum(i as i64 + 1) != s {
            return Err(WeilError::VerificationFailed);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6(v: i64) -> CycNum {
        CycNum::from_int(6, v)
    }

    fn exact_set(entries: &[(i64, i64)]) -> WeilSet {
        WeilSet::from_exact(6, entries.iter().map(|&(a, c)| (c6(a), c)).collect())
    }

    #[test]
    fn union_rules() {
        let a = exact_set(&[(3, 1)]);
        let b = exact_set(&[(3, -1)]);
        assert!(a.union(&b).is_empty());
        let c = exact_set(&[(2, 1)]);
        let u = a.union(&c);
        assert_eq!(u.len(), 2);
        assert_eq!(a.union(&WeilSet::empty(6)), a);
        // associative + commutative via power sums
        let x = exact_set(&[(2, 3), (5, -1)]);
        let y = exact_set(&[(5, 1), (7, 2)]);
        for e in 1..=4 {
            assert_eq!(
                x.union(&y).power_sum(e),
                x.power_sum(e).add(&y.power_sum(e))
            );
        }
    }

    #[test]
    fn scale_rules() {
        let j = exact_set(&[(2, 1), (5, -2)]);
        assert_eq!(j.scale(&c6(1)).unwrap(), j);
        assert_eq!(
            exact_set(&[(1, 1)]).scale(&c6(3)).unwrap(),
            exact_set(&[(3, 1)])
        );
        let b = c6(4);
        let s = j.scale(&b).unwrap();
        for e in 1..=5i64 {
            assert_eq!(s.power_sum(e), j.power_sum(e).mul(&b.pow(e as u64)));
        }
    }

    #[test]
    fn pow_system_rules() {
        let j = exact_set(&[(3, 2), (1, -1)]);
        assert_eq!(j.pow_system(1).unwrap(), j);
        assert_eq!(j.pow_system(2).unwrap(), exact_set(&[(9, 2), (1, -1)]));
        // merge case: {(1,1), (-1,1)} squares to {(1,2)}
        let pm = exact_set(&[(1, 1), (-1, 1)]);
        assert_eq!(pm.pow_system(2).unwrap(), exact_set(&[(1, 2)]));
        // composition law
        let k = exact_set(&[(2, 1), (-3, 2)]);
        assert_eq!(
            k.pow_system(6).unwrap(),
            k.pow_system(2).unwrap().pow_system(3).unwrap()
        );
    }

    #[test]
    fn power_sums() {
        assert!(WeilSet::empty(6).power_sum(3).is_zero());
        let j = exact_set(&[(3, 2), (1, -1)]);
        assert_eq!(j.power_sum(1), c6(5));
        // conj-reciprocal with X = q^d for real alpha = q
        let q = exact_set(&[(3, 1)]);
        for m in 1..=3u32 {
            // (q^d / q)^m with d = 2: q^{(d-1)m} = 9^m... wait d=2: X = 9
            let x = c6(9);
            assert_eq!(q.power_sum_conj_recip(&x, m), c6(3i64.pow(m)));
        }
    }

    #[test]
    fn recover_hand_checkable() {
        // S_m = 2*3^m - 1
        let seq: Vec<CycNum> = (1..=5).map(|m| c6(2 * 3i64.pow(m) - 1)).collect();
        let j = recover(6, &seq, Headroom::Strict).unwrap();
        assert_eq!(j, exact_set(&[(3, 2), (1, -1)]));
        // all-zero
        let z = vec![CycNum::zero(6); 4];
        assert!(recover(6, &z, Headroom::Strict).unwrap().is_empty());
        // too short for strict headroom
        let short: Vec<CycNum> = (1..=4).map(|m| c6(2 * 3i64.pow(m) - 1)).collect();
        assert!(matches!(
            recover(6, &short, Headroom::Strict),
            Err(WeilError::RecurrenceUnstable { order: 2, .. })
        ));
        // but relaxed mode accepts 2L terms
        assert_eq!(
            recover(6, &short, Headroom::Relaxed).unwrap(),
            exact_set(&[(3, 2), (1, -1)])
        );
    }

    #[test]
    fn recover_nonreal_exact() {
        // alpha = 3 zeta_6, c = 2 and alpha = -2, c = 1
        let z = CycNum::root_power(6, 1);
        let a = z.scale(&BigRational::from_integer(3.into()));
        let j = WeilSet::from_exact(6, vec![(a.clone(), 2), (c6(-2), 1)]);
        let seq: Vec<CycNum> = (1..=5).map(|m| j.power_sum(m)).collect();
        let r = recover(6, &seq, Headroom::Strict).unwrap();
        assert_eq!(r, j);
    }

    #[test]
    fn recover_implicit_orbit() {
        // power sums of {(sqrt(3), 1), (-sqrt(3), 1)}: 0, 6, 0, 18, 0
        let seq = vec![c6(0), c6(6), c6(0), c6(18), c6(0)];
        let j = recover(6, &seq, Headroom::Strict).unwrap();
        assert_eq!(j.len(), 2);
        assert!(j
            .pairs()
            .iter()
            .all(|(a, c)| *c == 1 && matches!(a, WeilNumber::Implicit { .. })));
        for (i, s) in seq.iter().enumerate() {
            assert_eq!(&j.power_sum(i as i64 + 1), s);
        }
        // squaring the orbit gives the exact pair {(3, 2)}
        assert_eq!(j.pow_system(2).unwrap(), exact_set(&[(3, 2)]));
    }

    #[test]
    fn recover_roundtrip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for iter in 0..60 {
            let support = rng.gen_range(1..=4usize);
            let mut j = WeilSet::empty(6);
            for _ in 0..support {
                let a = rng.gen_range(0..5u32);
                let b = rng.gen_range(0..6i64);
                let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let alpha = CycNum::root_power(6, b)
                    .scale(&BigRational::from_integer(BigInt::from(3).pow(a)));
                j = j.union(&WeilSet::from_exact(6, vec![(alpha, c)]));
            }
            let m = 2 * j.len() + 1;
            let seq: Vec<CycNum> = (1..=m as i64).map(|e| j.power_sum(e)).collect();
            let r = recover(6, &seq, Headroom::Strict).unwrap();
            assert_eq!(r, j, "iteration {iter}");
        }
    }

    #[test]
    fn split_threshold_example() {
        // d = 2, q = 3: 3 = q*alpha goes small, 9 = q^d/conj(alpha) large
        let j = exact_set(&[(3, -1), (9, 1)]);
        let (small, large) = j.split_threshold(2, 3).unwrap();
        assert_eq!(small, exact_set(&[(3, -1)]));
        assert_eq!(large, exact_set(&[(9, 1)]));
    }

    #[test]
    fn axiom5_certification() {
        // |alpha| = 3 < 3^{(4-1)/2} = 5.19... holds; |alpha| = 9 does not
        let ok = exact_set(&[(3, 1)]);
        assert!(ok.certify_axiom5_bound(4, 3).unwrap());
        let bad = exact_set(&[(9, 1)]);
        assert!(!bad.certify_axiom5_bound(4, 3).unwrap());
        // an exactly-at-threshold value is rejected as ambiguous:
        // |9|^2 = 81 = q^{d+1} for q = 9, d = 1
        let edge = exact_set(&[(9, 1)]);
        assert!(matches!(
            edge.split_threshold(1, 9),
            Err(WeilError::ThresholdAmbiguous)
        ));
    }

    #[test]
    fn conjugation_of_sets() {
        let z = CycNum::root_power(6, 1);
        let j = WeilSet::from_exact(6, vec![(z.clone(), 1), (c6(2), 3)]);
        let jc = j.conj().unwrap();
        for e in 1..=4i64 {
            assert_eq!(jc.power_sum(e), j.power_sum(e).conj());
        }
    }
}
