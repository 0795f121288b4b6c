//! The coefficient calculus a(f_1,...,f_r; q, chi, M): closed-form
//! evaluators for three special matrices, prime-power evaluation through
//! Weil-number data, the twisted-multiplicativity composer, the generic
//! inductive solver, and the normalization twist a*.
//!
//! The five axioms tie everything together: (1) twisted multiplicativity
//! with residue-symbol cross factors governed by the symmetric matrix M,
//! (2) normalization at 1 and at linear polynomials, (3) prime-power values
//! as signed power sums over J(d_1,...,d_r), (4) degree-graded sums as the
//! dual power sums q^{sum d_i}/conj(alpha), and (5) the strict Weil bound.
//! Presets carry closed forms for J; the solver reconstructs J for any
//! symmetric integer matrix from the induction identity.

pub mod solver;

use crate::cyclo::CycNum;
use crate::ffield::{FieldError, FieldSpec};
use crate::gauss::{self, GaussError};
use crate::polyarith::{
    factor, gcd_mm, monic_mul, pdivrem, resultant, resultant_mm, MonicPoly,
};
use crate::weil::{WeilError, WeilNumber, WeilSet};
use num::bigint::BigInt;
use num::traits::One;
use num::BigRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error("preset precondition violated: {0}")]
    PresetPrecondition(String),
    #[error("no J entry for degree tuple {0:?}")]
    MissingJ(Vec<u32>),
    #[error("enumeration of {needed} tuples exceeds the budget {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("large/small Weil groups inconsistent at tuple {tuple:?} (implementation bug)")]
    CrossCheckFailed { tuple: Vec<u32> },
    #[error("solver gave up on tuple {tuple:?}: {reason}")]
    SolverStuck { tuple: Vec<u32>, reason: String },
}

/// Symmetric r x r integer matrix governing the cross factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffMatrix {
    r: usize,
    entries: Vec<i64>,
}

impl CoeffMatrix {
    pub fn new(r: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), r * r);
        for i in 0..r {
            for j in 0..r {
                assert_eq!(entries[i * r + j], entries[j * r + i], "matrix must be symmetric");
            }
        }
        CoeffMatrix { r, entries }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.r + j]
    }

    pub fn preset_a() -> Self {
        Self::new(2, vec![0, 1, 1, 0])
    }

    pub fn preset_b(n: u32) -> Self {
        assert!(n % 2 == 0);
        Self::new(2, vec![0, -1, -1, n as i64 / 2 + 1])
    }

    pub fn preset_c(n: u32) -> Self {
        assert!(n % 2 == 0);
        let d = n as i64 / 2 + 1;
        Self::new(2, vec![d, -1, -1, d])
    }

    /// Exponent of chi(Res(pi, rho)) contributed by exponent vectors v (at
    /// pi) and w (at rho): sum_i v_i w_i M_ii + sum_{i<j} v_i w_j M_ij.
    pub fn cross_exponent(&self, v: &[u32], w: &[u32]) -> i64 {
        let mut e = 0i64;
        for i in 0..self.r {
            e += v[i] as i64 * w[i] as i64 * self.get(i, i);
            for j in i + 1..self.r {
                e += v[i] as i64 * w[j] as i64 * self.get(i, j);
            }
        }
        e
    }

    /// sum_i d_i M_ii, the exponent of (pi'/pi)_chi in axiom (3).
    pub fn diag_exponent(&self, d: &[u32]) -> i64 {
        (0..self.r).map(|i| d[i] as i64 * self.get(i, i)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<i64>> = (0..self.r)
            .map(|i| (0..self.r).map(|j| self.get(i, j)).collect())
            .collect();
        serde_json::json!(rows)
    }
}

/// Closed-form coefficient presets from the worked examples, or a solved
/// J-table for an arbitrary symmetric matrix.
#[derive(Clone, Debug)]
pub enum CoeffSource {
    PresetA,
    PresetB,
    PresetC,
    Solver(JTable),
}

impl CoeffSource {
    pub fn matrix(&self, fs: &FieldSpec) -> CoeffMatrix {
        match self {
            CoeffSource::PresetA => CoeffMatrix::preset_a(),
            CoeffSource::PresetB => CoeffMatrix::preset_b(fs.n()),
            CoeffSource::PresetC => CoeffMatrix::preset_c(fs.n()),
            CoeffSource::Solver(t) => t.matrix.clone(),
        }
    }

    /// Base-field J(d_1,...,d_r) for this source.
    pub fn j_at(&self, fs: &FieldSpec, dvec: &[u32]) -> Result<WeilSet, CoeffError> {
        match self {
            CoeffSource::PresetA => Ok(j_closed_form_a(fs, dvec[0], dvec[1])),
            CoeffSource::PresetB => j_closed_form_b(fs, dvec[0], dvec[1]),
            CoeffSource::PresetC => j_closed_form_c(fs, dvec[0], dvec[1]),
            CoeffSource::Solver(t) => t
                .entries
                .get(dvec)
                .cloned()
                .ok_or_else(|| CoeffError::MissingJ(dvec.to_vec())),
        }
    }

    /// Validate the preset preconditions against the field.
    pub fn check_preconditions(&self, fs: &FieldSpec) -> Result<(), CoeffError> {
        match self {
            CoeffSource::PresetA | CoeffSource::Solver(_) => Ok(()),
            CoeffSource::PresetB => {
                if fs.n() % 2 != 0 {
                    return Err(CoeffError::PresetPrecondition(format!(
                        "preset B needs even character order, got n = {}",
                        fs.n()
                    )));
                }
                Ok(())
            }
            CoeffSource::PresetC => {
                if fs.n() % 2 != 0 {
                    return Err(CoeffError::PresetPrecondition(format!(
                        "preset C needs even character order, got n = {}",
                        fs.n()
                    )));
                }
                if fs.q() % 4 != 1 {
                    return Err(CoeffError::PresetPrecondition(format!(
                        "preset C needs q = 1 mod 4, got q = {}",
                        fs.q()
                    )));
                }
                Ok(())
            }
        }
    }

    /// Evaluate a(f_1,...,f_r) at any level: closed forms for the presets,
    /// twisted-multiplicative composition for solved tables.
    pub fn eval(&self, fs: &FieldSpec, fs_tuple: &[MonicPoly]) -> Result<CycNum, CoeffError> {
        match self {
            CoeffSource::PresetA => Ok(a_preset_a(fs, &fs_tuple[0], &fs_tuple[1])),
            CoeffSource::PresetB => a_preset_b(fs, &fs_tuple[0], &fs_tuple[1]),
            CoeffSource::PresetC => a_preset_c(fs, &fs_tuple[0], &fs_tuple[1]),
            CoeffSource::Solver(_) => a_compose(self, fs, fs_tuple),
        }
    }
}

/// Solved Weil-number data for one matrix over one base field.
#[derive(Clone, Debug)]
pub struct JTable {
    pub matrix: CoeffMatrix,
    pub entries: BTreeMap<Vec<u32>, WeilSet>,
}

impl JTable {
    pub fn to_json(&self, fs: &FieldSpec) -> serde_json::Value {
        let entries: BTreeMap<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(k, v)| {
                let key = k.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
                (key, v.to_json())
            })
            .collect();
        serde_json::json!({
            "matrix": self.matrix.to_json(),
            "field": fs.to_json(),
            "entries": entries,
        })
    }
}

// ---------------------------------------------------------------------------
// preset closed forms
// ---------------------------------------------------------------------------

/// a for M = [[0,1],[1,0]]: the residue symbol of the cofactors when
/// gcd(f1,f2) is an n-th power g^n, weighted by q^{(n-1) deg g}; else 0.
pub fn a_preset_a(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly) -> CycNum {
    let lvl = fs.level(f1.level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let g = gcd_mm(&lvl, f1, f2);
    let mut g_root = MonicPoly::one(f1.level);
    if g.deg() > 0 {
        for (pi, e) in factor(fs, &g).factors {
            if e % n != 0 {
                return CycNum::zero(nn);
            }
            for _ in 0..e / n {
                g_root = monic_mul(&lvl, &g_root, &pi);
            }
        }
    }
    let f1r = MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f1.to_poly(&lvl), &g.to_poly(&lvl)).0).1;
    let f2r = MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f2.to_poly(&lvl), &g.to_poly(&lvl)).0).1;
    let sym = fs.chi(resultant_mm(&lvl, &f1r, &f2r));
    let qpow = BigInt::from(lvl.size).pow((n - 1) * g_root.deg() as u32);
    sym.mul(&CycNum::from_bigint(nn, qpow))
}

/// a for M = [[0,-1],[-1,n/2+1]] (n even): the Gauss-sum average
/// sum_{u^n | f2} q^{(n-1) deg u} g_chi(f1, f2/u^n), normalized by the
/// sign (-1)^{deg f2 (deg f2 - 1)(q-1)/4} over G(chi,psi)^{deg f2}.
pub fn a_preset_b(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly) -> Result<CycNum, CoeffError> {
    CoeffSource::PresetB.check_preconditions(fs)?;
    let lvl = fs.level(f1.level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let d2 = f2.deg();
    let mut total = CycNum::zero(nn);
    for u in nth_power_divisors(fs, f2, n) {
        let un = pow_monic(fs, &u, n);
        let quot = MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f2.to_poly(&lvl), &un.to_poly(&lvl)).0).1;
        let term = gauss::gauss_fast(fs, f1, &quot, 1);
        let w = BigInt::from(lvl.size).pow((n - 1) * u.deg() as u32);
        total = total.add(&term.mul(&CycNum::from_bigint(nn, w)));
    }
    let g = gauss::base_gauss(fs, 1, f1.level);
    let mut out = total.div_exact(&g.pow(d2 as u64)).expect("Gauss sum is nonzero");
    if sign_quarter(d2 as u64, lvl.size) {
        out = out.neg();
    }
    Ok(out)
}

/// (-1)^{d (d-1)(q-1)/4} as a boolean flip (true = negative).
fn sign_quarter(d: u64, q: u64) -> bool {
    ((d * d.saturating_sub(1) / 2) % 2) * (((q - 1) / 2) % 2) % 2 == 1
}

/// a for M = [[n/2+1,-1],[-1,n/2+1]] (n even, q = 1 mod 4): the H-function
/// average over a^n b^n | f1, b^n c^n | f2, normalized by G^{deg f1 + deg f2}.
pub fn a_preset_c(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly) -> Result<CycNum, CoeffError> {
    CoeffSource::PresetC.check_preconditions(fs)?;
    let lvl = fs.level(f1.level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let mut total = CycNum::zero(nn);
    for a in nth_power_divisors(fs, f1, n) {
        let an = pow_monic(fs, &a, n);
        let f1a = MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f1.to_poly(&lvl), &an.to_poly(&lvl)).0).1;
        for b in nth_power_divisors(fs, &f1a, n) {
            let bn = pow_monic(fs, &b, n);
            if !divides(fs, &bn, f2) {
                continue;
            }
            let f1r =
                MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f1a.to_poly(&lvl), &bn.to_poly(&lvl)).0).1;
            let f2b =
                MonicPoly::from_poly(&lvl, &pdivrem(&lvl, &f2.to_poly(&lvl), &bn.to_poly(&lvl)).0).1;
            for c in nth_power_divisors(fs, &f2b, n) {
                let cn = pow_monic(fs, &c, n);
                let f2r = MonicPoly::from_poly(
                    &lvl,
                    &pdivrem(&lvl, &f2b.to_poly(&lvl), &cn.to_poly(&lvl)).0,
                )
                .1;
                let h = gauss::h_chinta(fs, &f1r, &f2r);
                if h.is_zero() {
                    continue;
                }
                let e = (n - 1) * (a.deg() as u32 + c.deg() as u32)
                    + (2 * n - 1) * b.deg() as u32;
                let w = BigInt::from(lvl.size).pow(e);
                total = total.add(&h.mul(&CycNum::from_bigint(nn, w)));
            }
        }
    }
    let g = gauss::base_gauss(fs, 1, f1.level);
    let d = (f1.deg() + f2.deg()) as u64;
    Ok(total.div_exact(&g.pow(d)).expect("Gauss sum is nonzero"))
}

/// Monic u with u^n | f, enumerated from the factorization.
fn nth_power_divisors(fs: &FieldSpec, f: &MonicPoly, n: u32) -> Vec<MonicPoly> {
    let lvl = fs.level(f.level).expect("level");
    let fac = factor(fs, f);
    let mut out = vec![MonicPoly::one(f.level)];
    for (pi, e) in &fac.factors {
        let max_c = e / n;
        if max_c == 0 {
            continue;
        }
        let mut next = vec![];
        for u in &out {
            let mut cur = u.clone();
            next.push(cur.clone());
            for _ in 0..max_c {
                cur = monic_mul(&lvl, &cur, pi);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out
}

fn pow_monic(fs: &FieldSpec, f: &MonicPoly, e: u32) -> MonicPoly {
    let lvl = fs.level(f.level).expect("level");
    let mut acc = MonicPoly::one(f.level);
    for _ in 0..e {
        acc = monic_mul(&lvl, &acc, f);
    }
    acc
}

fn divides(fs: &FieldSpec, d: &MonicPoly, f: &MonicPoly) -> bool {
    let lvl = fs.level(f.level).expect("level");
    if d.deg() > f.deg() {
        return false;
    }
    pdivrem(&lvl, &f.to_poly(&lvl), &d.to_poly(&lvl)).1.is_zero()
}

// ---------------------------------------------------------------------------
// closed-form J sets (theorem normalization: the data paired with plain a)
// ---------------------------------------------------------------------------

/// Preset A: empty unless n | min(d1,d2), else {(q^{(n-1)min/n}, 1)}.
pub fn j_closed_form_a(fs: &FieldSpec, d1: u32, d2: u32) -> WeilSet {
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let mn = d1.min(d2);
    if mn % n != 0 {
        return WeilSet::empty(nn);
    }
    let alpha = CycNum::from_bigint(nn, BigInt::from(fs.q()).pow((n - 1) * mn / n));
    WeilSet::from_exact(nn, vec![(alpha, 1)])
}

/// The five-case local table J_1 for preset B, at the base field.
fn j1_preset_b(fs: &FieldSpec, d1: u32, d2: u32) -> Vec<(CycNum, i64)> {
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let q = fs.q();
    if d2 == 0 {
        return vec![(CycNum::one(nn), 1)];
    }
    if d1 >= d2 {
        if d2 % n == 0 {
            return vec![
                (CycNum::from_bigint(nn, BigInt::from(q).pow(d2)), 1),
                (CycNum::from_bigint(nn, BigInt::from(q).pow(d2 - 1)), -1),
            ];
        }
        return vec![];
    }
    if d1 + 1 == d2 {
        let g = gauss::base_gauss(fs, d2 as i64, 1);
        let alpha = CycNum::from_bigint(nn, BigInt::from(q).pow(d2 - 1))
            .mul(&g)
            .neg();
        return vec![(alpha, -1)];
    }
    vec![]
}

/// Preset B: the sign-scaled union of q^{(n-1)c} J_1(d1, d2 - nc),
/// converted to the untwisted normalization by dividing each alpha by
/// (-G)^{d2} and flipping each c by (-1)^{d2}.
pub fn j_closed_form_b(fs: &FieldSpec, d1: u32, d2: u32) -> Result<WeilSet, CoeffError> {
    CoeffSource::PresetB.check_preconditions(fs)?;
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let q = fs.q();
    let mut pairs: Vec<(CycNum, i64)> = vec![];
    let star_sign = sign_quarter(d2 as u64, q);
    for c in 0..=d2 / n {
        for (alpha, mult) in j1_preset_b(fs, d1, d2 - n * c) {
            let mut a = alpha.mul(&CycNum::from_bigint(nn, BigInt::from(q).pow((n - 1) * c)));
            if star_sign {
                a = a.neg();
            }
            pairs.push((a, mult));
        }
    }
    // corollary scaling back to the plain system
    let g = gauss::base_gauss(fs, 1, 1);
    let minus_g_inv = g.neg().inv().expect("Gauss sum nonzero").pow(d2 as u64);
    let flip = d2 % 2 == 1;
    let pairs = pairs
        .into_iter()
        .map(|(a, c)| (a.mul(&minus_g_inv), if flip { -c } else { c }))
        .collect();
    Ok(WeilSet::from_exact(nn, pairs))
}

/// Preset C: the five-tuple index set with its alpha and c tables,
/// converted to the untwisted normalization.
pub fn j_closed_form_c(fs: &FieldSpec, d1: u32, d2: u32) -> Result<WeilSet, CoeffError> {
    CoeffSource::PresetC.check_preconditions(fs)?;
    let nn = fs.cyc_modulus();
    let n = fs.n();
    let q = fs.q();
    let g1 = gauss::base_gauss(fs, 1, 1);
    let g2 = gauss::base_gauss(fs, 2, 1);
    let qc = CycNum::from_bigint(nn, BigInt::from(q));
    let r_cases: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2)];
    let mut pairs: Vec<(CycNum, i64)> = vec![];
    for (r1, r2) in r_cases {
        if r1 > d1 || r2 > d2 || (d1 - r1) % n != 0 || (d2 - r2) % n != 0 {
            continue;
        }
        let s1 = (d1 - r1) / n; // j1 + j12
        let s2 = (d2 - r2) / n; // j12 + j2
        for j12 in 0..=s1.min(s2) {
            let j1 = s1 - j12;
            let j2 = s2 - j12;
            let (base, c): (CycNum, i64) = match (r1, r2) {
                (0, 0) => (CycNum::one(nn), 1),
                (1, 0) | (0, 1) => (g1.neg(), -1),
                (2, 1) | (1, 2) => (qc.mul(&g2).mul(&g1), 1),
                (2, 2) => (qc.mul(&g2).mul(&g1).mul(&g1).neg(), -1),
                _ => unreachable!(),
            };
            let e = (n - 1) * (j1 + j2) + (2 * n - 1) * j12;
            let alpha = base.mul(&CycNum::from_bigint(nn, BigInt::from(q).pow(e)));
            pairs.push((alpha, c));
        }
    }
    // corollary scaling: divide alpha by (-G)^{d1+d2}, flip c by (-1)^{d1+d2}
    let minus_g_inv = g1.neg().inv().expect("Gauss sum nonzero").pow((d1 + d2) as u64);
    let flip = (d1 + d2) % 2 == 1;
    let pairs = pairs
        .into_iter()
        .map(|(a, c)| (a.mul(&minus_g_inv), if flip { -c } else { c }))
        .collect();
    Ok(WeilSet::from_exact(nn, pairs))
}

// ---------------------------------------------------------------------------
// axiom (3) evaluation and twisted-multiplicative composition
// ---------------------------------------------------------------------------

/// a(pi^{d_1},...,pi^{d_r}) at level m from the base-field J:
/// (pi'/pi)_{chi}^{sum d_i M_ii} * sum_j c_j alpha_j^{m deg pi}.
pub fn a_prime_power(
    source: &CoeffSource,
    fs: &FieldSpec,
    pi: &MonicPoly,
    dvec: &[u32],
) -> Result<CycNum, CoeffError> {
    let lvl = fs.level(pi.level).expect("level");
    let j = source.j_at(fs, dvec)?;
    let matrix = source.matrix(fs);
    let e = matrix.diag_exponent(dvec);
    let fd = crate::polyarith::monic_derivative(&lvl, pi);
    let sym = fs.chi_pow(resultant(&lvl, &fd, pi), e);
    let psum = j.power_sum((pi.level as i64) * (pi.deg() as i64));
    Ok(sym.mul(&psum))
}

/// a(f_1,...,f_r) by twisted multiplicativity over the joint prime support.
pub fn a_compose(
    source: &CoeffSource,
    fs: &FieldSpec,
    ftuple: &[MonicPoly],
) -> Result<CycNum, CoeffError> {
    let matrix = source.matrix(fs);
    let r = matrix.r();
    assert_eq!(ftuple.len(), r);
    let level = ftuple[0].level;
    let lvl = fs.level(level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n() as i64;
    // joint support with exponent vectors
    let mut support: Vec<(MonicPoly, Vec<u32>)> = vec![];
    for (i, f) in ftuple.iter().enumerate() {
        for (pi, e) in factor(fs, f).factors {
            if let Some(slot) = support.iter_mut().find(|(p, _)| *p == pi) {
                slot.1[i] = e;
            } else {
                let mut v = vec![0u32; r];
                v[i] = e;
                support.push((pi, v));
            }
        }
    }
    support.sort_by_key(|(p, _)| crate::polyarith::sort_key(p));
    let mut acc = CycNum::one(nn);
    for (pi, v) in &support {
        let local = a_prime_power(source, fs, pi, v)?;
        if local.is_zero() {
            return Ok(CycNum::zero(nn));
        }
        acc = acc.mul(&local);
    }
    let mut sym_dlog = 0i64;
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            let (pi, v) = &support[i];
            let (pj, w) = &support[j];
            let rij = fs.chi_dlog(resultant_mm(&lvl, pi, pj)).expect("distinct primes") as i64;
            let rji = fs.chi_dlog(resultant_mm(&lvl, pj, pi)).expect("distinct primes") as i64;
            sym_dlog += rij * matrix.cross_exponent(v, w) + rji * matrix.cross_exponent(w, v);
        }
    }
    Ok(acc.mul(&CycNum::sub_root(nn, fs.n(), sym_dlog.rem_euclid(n))))
}

// ---------------------------------------------------------------------------
// the Corollary normalization twist a*
// ---------------------------------------------------------------------------

/// A (sign-)compatible system of Weil numbers gamma_i(q, chi).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GammaRule {
    One,
    /// G(chi^r, psi) at the working level; sign-compatible by
    /// Hasse-Davenport.
    BaseGauss { r: i64 },
}

impl GammaRule {
    pub fn value(&self, fs: &FieldSpec, m: u32) -> CycNum {
        match self {
            GammaRule::One => CycNum::one(fs.cyc_modulus()),
            GammaRule::BaseGauss { r } => gauss::base_gauss(fs, *r, m),
        }
    }
}

/// Per-index twist data (w_i, eps_i, gamma_i) with |gamma_i| = q^{w_i/2}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistSpec {
    pub w: Vec<i64>,
    pub eps: Vec<u8>,
    pub gamma: Vec<GammaRule>,
}

impl TwistSpec {
    pub fn trivial(r: usize) -> Self {
        TwistSpec { w: vec![0; r], eps: vec![0; r], gamma: vec![GammaRule::One; r] }
    }

    /// The natural Gauss-sum twist of preset B: gamma = (1, G(chi,psi)).
    pub fn preset_b() -> Self {
        TwistSpec {
            w: vec![0, 1],
            eps: vec![0, 1],
            gamma: vec![GammaRule::One, GammaRule::BaseGauss { r: 1 }],
        }
    }

    /// The natural twist of preset C: gamma = (G, G).
    pub fn preset_c() -> Self {
        TwistSpec {
            w: vec![1, 1],
            eps: vec![1, 1],
            gamma: vec![GammaRule::BaseGauss { r: 1 }, GammaRule::BaseGauss { r: 1 }],
        }
    }
}

/// a*(f_1,...,f_r) = a(f_1,...,f_r) prod_i gamma_i^{deg f_i}.
pub fn a_star(
    source: &CoeffSource,
    twist: &TwistSpec,
    fs: &FieldSpec,
    ftuple: &[MonicPoly],
) -> Result<CycNum, CoeffError> {
    let m = ftuple[0].level;
    let mut out = source.eval(fs, ftuple)?;
    for (i, f) in ftuple.iter().enumerate() {
        if f.deg() > 0 {
            out = out.mul(&twist.gamma[i].value(fs, m).pow(f.deg() as u64));
        }
    }
    Ok(out)
}

/// J* from J: multiply each alpha by prod ((-1)^{eps_i} gamma_i)^{d_i} and
/// each c by (-1)^{sum eps_i d_i}.
pub fn j_star(
    j: &WeilSet,
    twist: &TwistSpec,
    fs: &FieldSpec,
    dvec: &[u32],
) -> Result<WeilSet, CoeffError> {
    let nn = fs.cyc_modulus();
    let mut factor = CycNum::one(nn);
    let mut eps_sum = 0u32;
    for (i, &d) in dvec.iter().enumerate() {
        let mut g = twist.gamma[i].value(fs, 1);
        if twist.eps[i] == 1 {
            g = g.neg();
            eps_sum += d;
        }
        factor = factor.mul(&g.pow(d as u64));
    }
    let mut out = j.scale(&factor)?;
    if eps_sum % 2 == 1 {
        out = negate_multiplicities(&out);
    }
    Ok(out)
}

fn negate_multiplicities(j: &WeilSet) -> WeilSet {
    WeilSet::from_pairs(
        j.cyc_modulus(),
        j.pairs().iter().map(|(a, c)| (a.clone(), -c)).collect(),
    )
}

/// Brute-force lambda(d_1,...,d_r) at a level: the sum of a over all monic
/// tuples with the given degrees.
pub fn lambda_brute(
    source: &CoeffSource,
    fs: &FieldSpec,
    dvec: &[u32],
    m: u32,
    budget: u64,
) -> Result<CycNum, CoeffError> {
    let lvl = fs.level(m)?;
    let nn = fs.cyc_modulus();
    let total: u128 = dvec.iter().map(|&d| (lvl.size as u128).pow(d)).product();
    if total > budget as u128 {
        return Err(CoeffError::BudgetExceeded { needed: total, cap: budget });
    }
    let mut acc = CycNum::zero(nn);
    let mut idx = vec![0u64; dvec.len()];
    loop {
        let ftuple: Vec<MonicPoly> = dvec
            .iter()
            .zip(&idx)
            .map(|(&d, &i)| MonicPoly::by_index(&lvl, d as usize, i))
            .collect();
        acc = acc.add(&source.eval(fs, &ftuple)?);
        // increment the mixed-radix counter
        let mut carry = true;
        for (pos, &d) in dvec.iter().enumerate() {
            if !carry {
                break;
            }
            idx[pos] += 1;
            if idx[pos] < (lvl.size).pow(d) {
                carry = false;
            } else {
                idx[pos] = 0;
            }
        }
        if carry {
            break;
        }
    }
    Ok(acc)
}
