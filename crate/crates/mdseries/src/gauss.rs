//! Function-field Gauss sums g_chi(f1, f2), base Gauss sums G(chi^r, psi),
//! and the auxiliary b and H functions.
//!
//! `gauss_direct` is the literal character sum over residues mod f2 and
//! serves as the oracle. `gauss_fast` evaluates the same quantity through
//! the multiplicativity relations and the prime-power table
//!
//! ```text
//!   g(pi^d1, pi^d2) = 1                                   d2 = 0
//!                   = (Q^e - 1) Q^{(d2-1)e}               n' | d2, d1 >= d2
//!                   = 0                                   n' ∤ d2, d1 >= d2
//!                   = -Q^{(d2-1)e} (pi'/pi)^{d2} (-G)^e   d1 = d2 - 1
//!                   = 0                                   d1 < d2 - 1
//! ```
//!
//! with Q the field size at the working level, e = deg pi, n' the order of
//! the character, and G the base Gauss sum of chi^{r d2} at that level
//! (G = -1 when the character power is trivial, which is also what the
//! direct sum gives).

use crate::cyclo::{CycNum, SqrtQ};
use crate::ffield::{FieldSpec, Level};
use crate::polyarith::{
    self, factor, monic_derivative, monic_mul, pdivrem, pmul, resultant, resultant_mm, MonicPoly,
    Poly,
};
use num::bigint::BigInt;
use num::traits::One;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("enumeration of {needed} residues exceeds the budget {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
}

pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// G(chi_m^r, psi_m) = sum over F_{q^m}^x of chi_m^r(x) psi_m(x).
pub fn base_gauss(fs: &FieldSpec, r: i64, m: u32) -> CycNum {
    let lvl = fs.level(m).expect("level");
    let n = fs.n() as i64;
    let p = fs.p();
    let nn = fs.cyc_modulus();
    // count occurrences of each zeta_N power, then assemble once
    let mut counts = vec![0i64; nn as usize];
    for c in 1..lvl.size {
        let x = lvl.by_code(c);
        let a = fs.chi_dlog(x).unwrap() as i64 * r;
        let b = fs.psi_exp(x) as i64;
        let idx = (a.rem_euclid(n) * p as i64 + b * n as i64).rem_euclid(nn as i64);
        counts[idx as usize] += 1;
    }
    assemble(nn, &counts)
}

fn assemble(nn: u32, counts: &[i64]) -> CycNum {
    let mut acc = CycNum::zero(nn);
    for (idx, &cnt) in counts.iter().enumerate() {
        if cnt != 0 {
            acc = acc.add(
                &CycNum::root_power(nn, idx as i64)
                    .scale(&num::BigRational::from_integer(cnt.into())),
            );
        }
    }
    acc
}

/// The literal sum over residues h mod f2 of (h/f2)_{chi^r} psi(res(h f1/f2)).
pub fn gauss_direct(
    fs: &FieldSpec,
    f1: &MonicPoly,
    f2: &MonicPoly,
    r: i64,
    budget: u64,
) -> Result<CycNum, GaussError> {
    let lvl = fs.level(f2.level).expect("level");
    let terms = (lvl.size as u128).pow(f2.deg() as u32);
    if terms > budget as u128 {
        return Err(GaussError::BudgetExceeded { needed: terms, cap: budget });
    }
    let n = fs.n() as i64;
    let p = fs.p();
    let nn = fs.cyc_modulus();
    let f1p = f1.to_poly(&lvl);
    let mut counts = vec![0i64; nn as usize];
    for code in 0..terms as u64 {
        // residue h from base-Q digits
        let mut idx = code;
        let mut coeffs = Vec::with_capacity(f2.deg());
        for _ in 0..f2.deg() {
            coeffs.push(lvl.by_code(idx % lvl.size));
            idx /= lvl.size;
        }
        let h = Poly::from_coeffs(f2.level, coeffs);
        let sym = resultant(&lvl, &h, f2);
        let Some(a) = fs.chi_dlog(sym) else { continue };
        let hp = pmul(&lvl, &h, &f1p);
        let res = polyarith::res_infty(&lvl, &hp, f2);
        let b = fs.psi_exp(res) as i64;
        let e = ((a as i64 * r).rem_euclid(n) * p as i64 + b * n as i64).rem_euclid(nn as i64);
        counts[e as usize] += 1;
    }
    Ok(assemble(nn, &counts))
}

/// Q^e as an exact integer in Q(zeta_N).
fn q_power(fs: &FieldSpec, lvl: &Level, e: u64) -> CycNum {
    CycNum::from_bigint(fs.cyc_modulus(), BigInt::from(lvl.size).pow(e as u32))
}

/// g_{chi^r}(pi^{d1}, pi^{d2}) for an irreducible pi at the given level.
pub fn gauss_prime_power(
    fs: &FieldSpec,
    lvl: &Arc<Level>,
    pi: &MonicPoly,
    d1: u32,
    d2: u32,
    r: i64,
) -> CycNum {
    let nn = fs.cyc_modulus();
    let n = fs.n() as i64;
    // order of chi^r
    let g = num::integer::gcd(r.rem_euclid(n), n);
    let n_prime = (n / if g == 0 { n } else { g }) as u32;
    let e = pi.deg() as u64;
    if d2 == 0 {
        return CycNum::one(nn);
    }
    if d1 >= d2 {
        if d2 % n_prime == 0 {
            let qe = BigInt::from(lvl.size).pow(e as u32);
            let lead = CycNum::from_bigint(nn, qe - BigInt::one());
            return lead.mul(&q_power(fs, lvl, (d2 as u64 - 1) * e));
        }
        return CycNum::zero(nn);
    }
    if d1 + 1 == d2 {
        let sym = fs.chi_pow(resultant(lvl, &monic_derivative(lvl, pi), pi), r * d2 as i64);
        let gsum = base_gauss(fs, r * d2 as i64, lvl.m);
        let minus_g_pow = gsum.neg().pow(e);
        return q_power(fs, lvl, (d2 as u64 - 1) * e)
            .mul(&sym)
            .mul(&minus_g_pow)
            .neg();
    }
    CycNum::zero(nn)
}

/// g_{chi^r}(f1, f2) assembled from the multiplicativity lemmas and the
/// prime-power table; equals `gauss_direct` on every input.
pub fn gauss_fast(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly, r: i64) -> CycNum {
    let lvl = fs.level(f2.level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n() as i64;
    if f2.is_one() {
        return CycNum::one(nn);
    }
    let fac2 = factor(fs, f2);
    // split f1 = u * prod pi^{v_i} with u coprime to f2
    let mut rest = f1.clone();
    let mut blocks: Vec<(&MonicPoly, u32, u32)> = Vec::new(); // (pi, v_pi(f1), v_pi(f2))
    for (pi, e2) in &fac2.factors {
        let mut v = 0u32;
        loop {
            let (q, rem) = pdivrem(&lvl, &rest.to_poly(&lvl), &pi.to_poly(&lvl));
            if rem.is_zero() {
                v += 1;
                rest = MonicPoly::from_poly(&lvl, &q).1;
            } else {
                break;
            }
        }
        blocks.push((pi, v, *e2));
    }
    let u = rest;

    // dlog (mod n) accumulator for all residue-symbol cross factors
    let mut sym_dlog: i64 = 0;
    // (u / f2)^{-1} via gauss-multiplicative-easy
    if !u.is_one() {
        let d = fs
            .chi_dlog(resultant_mm(&lvl, &u, f2))
            .expect("u coprime to f2");
        sym_dlog -= r * d as i64;
    }
    // pairwise cross factors from gauss-multiplicative, peeling one prime
    // block at a time:
    //   (pi_i^{e_i}/pi_j^{e_j}) (pi_j^{e_j}/pi_i^{e_i})
    //   (pi_i^{v_i}/pi_j^{e_j})^{-1} (pi_j^{v_j}/pi_i^{e_i})^{-1}
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let (pi, vi, ei) = blocks[i];
            let (pj, vj, ej) = blocks[j];
            let rij = fs.chi_dlog(resultant_mm(&lvl, pi, pj)).expect("distinct primes") as i64;
            let rji = fs.chi_dlog(resultant_mm(&lvl, pj, pi)).expect("distinct primes") as i64;
            let expo = rij * (ei as i64 * ej as i64 - vi as i64 * ej as i64)
                + rji * (ej as i64 * ei as i64 - vj as i64 * ei as i64);
            sym_dlog += r * expo;
        }
    }
    let mut acc = CycNum::sub_root(nn, fs.n(), sym_dlog.rem_euclid(n));
    for (pi, v, e2) in blocks {
        let block = gauss_prime_power(fs, &lvl, pi, v, e2, r);
        if block.is_zero() {
            return CycNum::zero(nn);
        }
        acc = acc.mul(&block);
    }
    acc
}

// ---------------------------------------------------------------------------
// Chinta-Mohler helpers
// ---------------------------------------------------------------------------

/// f2 divided by the greatest n-th power dividing it.
pub fn f_two_zero(fs: &FieldSpec, f2: &MonicPoly) -> MonicPoly {
    let lvl = fs.level(f2.level).expect("level");
    let n = fs.n();
    let mut out = MonicPoly::one(f2.level);
    for (pi, e) in factor(fs, f2).factors {
        for _ in 0..(e % n) {
            out = monic_mul(&lvl, &out, &pi);
        }
    }
    out
}

/// Largest squarefree divisor of f_{2,0}.
pub fn f_two_flat(fs: &FieldSpec, f2: &MonicPoly) -> MonicPoly {
    let lvl = fs.level(f2.level).expect("level");
    let n = fs.n();
    let mut out = MonicPoly::one(f2.level);
    for (pi, e) in factor(fs, f2).factors {
        if e % n != 0 {
            out = monic_mul(&lvl, &out, &pi);
        }
    }
    out
}

/// Largest divisor of f1 prime to f_{2,0}.
pub fn f_one_hat(fs: &FieldSpec, f1: &MonicPoly, f2_zero: &MonicPoly) -> MonicPoly {
    let lvl = fs.level(f1.level).expect("level");
    let mut out = MonicPoly::one(f1.level);
    for (pi, e) in factor(fs, f1).factors {
        if resultant_mm(&lvl, &pi, f2_zero).is_zero() {
            continue;
        }
        for _ in 0..e {
            out = monic_mul(&lvl, &out, &pi);
        }
    }
    out
}

/// The Gauss sum of the character (./f2)_chi on its squarefree support:
/// sum over h mod f_{2,flat} of (h/f_{2,0})_chi psi(res(h/f_{2,flat})).
pub fn g_of_symbol(fs: &FieldSpec, f2: &MonicPoly) -> CycNum {
    let lvl = fs.level(f2.level).expect("level");
    let nn = fs.cyc_modulus();
    let f20 = f_two_zero(fs, f2);
    let f2f = f_two_flat(fs, f2);
    if f2f.is_one() {
        return CycNum::one(nn);
    }
    let terms = (lvl.size as u64).pow(f2f.deg() as u32);
    let mut acc = CycNum::zero(nn);
    for code in 0..terms {
        let mut idx = code;
        let mut coeffs = Vec::with_capacity(f2f.deg());
        for _ in 0..f2f.deg() {
            coeffs.push(lvl.by_code(idx % lvl.size));
            idx /= lvl.size;
        }
        let h = Poly::from_coeffs(f2.level, coeffs);
        let sym = fs.chi(resultant(&lvl, &h, &f20));
        if sym.is_zero() {
            continue;
        }
        let res = polyarith::res_infty(&lvl, &h, &f2f);
        acc = acc.add(&sym.mul(&fs.psi(res)));
    }
    acc
}

/// The Chinta-Mohler multiplicative function b, valued in Z[sqrt(Q)].
pub fn b_cm(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly) -> SqrtQ {
    let lvl = fs.level(f2.level).expect("level");
    let nn = fs.cyc_modulus();
    let q = lvl.size;
    let n = fs.n();
    let fac2 = factor(fs, f2);
    let mut acc = SqrtQ::one(q, nn);
    for (pi, mult2) in &fac2.factors {
        let d2 = *mult2;
        let e = pi.deg() as i64;
        // multiplicity of pi in f1
        let mut d1 = 0u32;
        let mut restp = f1.to_poly(&lvl);
        loop {
            let (quo, rem) = pdivrem(&lvl, &restp, &pi.to_poly(&lvl));
            if rem.is_zero() && !quo.is_zero() {
                d1 += 1;
                restp = quo;
            } else {
                break;
            }
        }
        let local = if d1 >= d2 {
            if d2 % n == 0 {
                // (Q^e - 1) Q^{(d2/2 - 1) e}
                let lead = CycNum::from_bigint(nn, BigInt::from(q).pow(e as u32) - BigInt::one());
                SqrtQ::q_half_pow(q, nn, (d2 as i64 - 2) * e).mul_cyc(&lead)
            } else {
                return SqrtQ::zero(q, nn);
            }
        } else if d1 + 1 == d2 {
            if d2 % n == 0 {
                SqrtQ::q_half_pow(q, nn, (d2 as i64 - 2) * e).neg()
            } else {
                SqrtQ::q_half_pow(q, nn, (d2 as i64 - 1) * e)
            }
        } else {
            return SqrtQ::zero(q, nn);
        };
        acc = acc.mul(&local);
    }
    acc
}

/// Chinta's H function: the twisted-multiplicative extension of the
/// six-entry prime-power table.
pub fn h_chinta(fs: &FieldSpec, f1: &MonicPoly, f2: &MonicPoly) -> CycNum {
    let lvl = fs.level(f1.level).expect("level");
    let nn = fs.cyc_modulus();
    let n = fs.n() as i64;
    let fac1 = factor(fs, f1);
    let fac2 = factor(fs, f2);
    // joint support with exponent pairs (a, b)
    let mut support: Vec<(MonicPoly, i64, i64)> = Vec::new();
    for (pi, e) in &fac1.factors {
        support.push((pi.clone(), *e as i64, fac2.v_pi(pi) as i64));
    }
    for (pi, e) in &fac2.factors {
        if fac1.v_pi(pi) == 0 {
            support.push((pi.clone(), 0, *e as i64));
        }
    }
    support.sort_by_key(|(p, _, _)| polyarith::sort_key(p));

    let mut acc = CycNum::one(nn);
    for (pi, a, b) in &support {
        let local = match (*a, *b) {
            (0, 0) => CycNum::one(nn),
            (1, 0) | (0, 1) => gauss_fast(fs, &MonicPoly::one(f1.level), pi, 1),
            (2, 1) | (1, 2) => {
                let pi2 = monic_mul(&lvl, pi, pi);
                gauss_fast(fs, pi, &pi2, 1)
                    .mul(&gauss_fast(fs, &MonicPoly::one(f1.level), pi, 1))
            }
            (2, 2) => {
                let pi2 = monic_mul(&lvl, pi, pi);
                let g1 = gauss_fast(fs, &MonicPoly::one(f1.level), pi, 1);
                gauss_fast(fs, pi, &pi2, 1).mul(&g1).mul(&g1)
            }
            _ => return CycNum::zero(nn),
        };
        acc = acc.mul(&local);
    }
    // cross factors from the twisted multiplicativity rule:
    // (A_i/A_j)(A_j/A_i)(B_i/B_j)(B_j/B_i)(A_i/B_j)^{-1}(A_j/B_i)^{-1}
    let mut sym_dlog: i64 = 0;
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            let (pi, a1, b1) = &support[i];
            let (pj, a2, b2) = &support[j];
            let rij = fs.chi_dlog(resultant_mm(&lvl, pi, pj)).expect("distinct primes") as i64;
            let rji = fs.chi_dlog(resultant_mm(&lvl, pj, pi)).expect("distinct primes") as i64;
            sym_dlog += rij * (a1 * a2 + b1 * b2 - a1 * b2);
            sym_dlog += rji * (a2 * a1 + b2 * b1 - a2 * b1);
        }
    }
    acc.mul(&CycNum::sub_root(nn, fs.n(), sym_dlog.rem_euclid(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::parse_poly;

    fn f3() -> FieldSpec {
        FieldSpec::make(3, 1, 2, 0).unwrap()
    }

    fn mk(fs: &FieldSpec, s: &str) -> MonicPoly {
        parse_poly(fs, 1, s).unwrap()
    }

    #[test]
    fn base_gauss_f3() {
        let fs = f3();
        let nn = fs.cyc_modulus();
        // G(chi, psi) = zeta_3 - zeta_3^2 for the quadratic character on F_3
        let g = base_gauss(&fs, 1, 1);
        let want = CycNum::sub_root(nn, 3, 1).sub(&CycNum::sub_root(nn, 3, 2));
        assert_eq!(g, want);
        // r = 0: sum of psi over units = -1
        assert_eq!(base_gauss(&fs, 0, 1), CycNum::from_int(nn, -1));
        // |G|^2 = q
        assert_eq!(g.norm_squared(), CycNum::from_int(nn, 3));
    }

    #[test]
    fn hasse_davenport_sign_compatibility() {
        for (p, k, n) in [(3u64, 1u32, 2u32), (5, 1, 4)] {
            let fs = FieldSpec::make(p, k, n, 0).unwrap();
            for r in 0..n as i64 {
                let g1 = base_gauss(&fs, r, 1).neg();
                for m in 2..=3u32 {
                    let gm = base_gauss(&fs, r, m).neg();
                    assert_eq!(gm, g1.pow(m as u64), "r={r} m={m} q={p}^{k}");
                }
            }
        }
    }

    #[test]
    fn gauss_direct_examples() {
        let fs = f3();
        let nn = fs.cyc_modulus();
        let one = MonicPoly::one(1);
        let t = mk(&fs, "t");
        // g(f1, 1) = 1
        assert!(gauss_direct(&fs, &mk(&fs, "t^2+1"), &one, 1, 1000).unwrap().is_one());
        // g(1, T) = G(chi, psi)
        assert_eq!(gauss_direct(&fs, &one, &t, 1, 1000).unwrap(), base_gauss(&fs, 1, 1));
        // g(T, T^2) = -3
        let t2 = mk(&fs, "t^2");
        assert_eq!(gauss_direct(&fs, &t, &t2, 1, 1000).unwrap(), CycNum::from_int(nn, -3));
        // budget guard
        assert!(matches!(
            gauss_direct(&fs, &one, &t2, 1, 8),
            Err(GaussError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn gauss_prime_power_cases() {
        let fs = f3();
        let nn = fs.cyc_modulus();
        let lvl = fs.level(1).unwrap();
        let t = mk(&fs, "t");
        // n = 2: g(1, T^3) = 0 (d1 < d2 - 1)
        assert!(gauss_prime_power(&fs, &lvl, &t, 0, 3, 1).is_zero());
        // n | d: g(pi^d, pi^d) = (q^e - 1) q^{(d-1)e}
        assert_eq!(
            gauss_prime_power(&fs, &lvl, &t, 2, 2, 1),
            CycNum::from_int(nn, (3 - 1) * 3)
        );
        let pi2 = mk(&fs, "t^2+1");
        assert_eq!(
            gauss_prime_power(&fs, &lvl, &pi2, 2, 2, 1),
            CycNum::from_int(nn, (9 - 1) * 9)
        );
    }

    #[test]
    fn fast_equals_direct_small() {
        for (p, n) in [(3u64, 2u32), (5, 2), (5, 4)] {
            let fs = FieldSpec::make(p, 1, n, 0).unwrap();
            let lvl = fs.level(1).unwrap();
            for r in 0..n as i64 {
                for d1 in 0..=2usize {
                    for i in 0..lvl.size.pow(d1 as u32) {
                        let f1 = MonicPoly::by_index(&lvl, d1, i);
                        for d2 in 0..=2usize {
                            for j in 0..lvl.size.pow(d2 as u32) {
                                let f2 = MonicPoly::by_index(&lvl, d2, j);
                                let fast = gauss_fast(&fs, &f1, &f2, r);
                                let direct = gauss_direct(&fs, &f1, &f2, r, 1 << 20).unwrap();
                                assert_eq!(fast, direct, "q={p} n={n} r={r}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fast_equals_direct_level2() {
        let fs = f3();
        let l2 = fs.level(2).unwrap();
        for d1 in 0..=1usize {
            for i in 0..l2.size.pow(d1 as u32) {
                let f1 = MonicPoly::by_index(&l2, d1, i);
                for d2 in 0..=2usize {
                    for j in 0..l2.size.pow(d2 as u32) {
                        let f2 = MonicPoly::by_index(&l2, d2, j);
                        let fast = gauss_fast(&fs, &f1, &f2, 1);
                        let direct = gauss_direct(&fs, &f1, &f2, 1, 1 << 20).unwrap();
                        assert_eq!(fast, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_evaluation_closed_form() {
        // for squarefree f2 coprime to f1:
        // g(f1,f2) = (-1)^{...} (f2'/f2)_chi (f2'/f2)_xi (f1/f2)^{-1} G^{deg f2}
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let g1 = base_gauss(&fs, 1, 1);
        for j in 0..lvl.size.pow(2) {
            let f2 = MonicPoly::by_index(&lvl, 2, j);
            let fd = monic_derivative(&lvl, &f2);
            if resultant(&lvl, &fd, &f2).is_zero() {
                continue; // not squarefree
            }
            for i in 0..lvl.size.pow(2) {
                let f1 = MonicPoly::by_index(&lvl, 2, i);
                if resultant_mm(&lvl, &f1, &f2).is_zero() {
                    continue;
                }
                let d2 = f2.deg();
                let rsym = resultant(&lvl, &fd, &f2);
                let chi_sym = fs.chi(rsym);
                let xi_sym = fs.xi_sign(rsym).unwrap();
                let inv_sym = fs.chi_pow(resultant_mm(&lvl, &f1, &f2), -1);
                let sign = (d2 * (d2 - 1) / 2) * ((fs.q() as usize - 1) / 2);
                let mut want = chi_sym.mul(&inv_sym).mul(&g1.pow(d2 as u64));
                if xi_sym < 0 {
                    want = want.neg();
                }
                if sign % 2 == 1 {
                    want = want.neg();
                }
                assert_eq!(gauss_fast(&fs, &f1, &f2, 1), want);
            }
        }
    }

    #[test]
    fn b_function_examples() {
        let fs = f3();
        let nn = fs.cyc_modulus();
        let q = fs.q();
        let one = MonicPoly::one(1);
        let t = mk(&fs, "t");
        let t2 = mk(&fs, "t^2");
        // b(f, 1) = 1
        assert_eq!(b_cm(&fs, &mk(&fs, "t^2+1"), &one), SqrtQ::one(q, nn));
        // b(1, pi^2) = 0 (d1 < d2 - 1)
        assert!(b_cm(&fs, &one, &t2).is_zero());
        // b(pi^{d-1}, pi^d) with n not dividing d: q^{(d-1) deg pi / 2}
        let t3 = mk(&fs, "t^3");
        assert_eq!(b_cm(&fs, &t2, &t3), SqrtQ::q_half_pow(q, nn, 2));
        // n | d case: b(pi, pi^2) = -q^{(2/2-1) deg pi} = -1
        assert_eq!(b_cm(&fs, &t, &t2), SqrtQ::one(q, nn).neg());
    }

    #[test]
    fn h_function_examples() {
        let fs = FieldSpec::make(5, 1, 2, 0).unwrap();
        let one = MonicPoly::one(1);
        let t = parse_poly(&fs, 1, "t").unwrap();
        assert!(h_chinta(&fs, &one, &one).is_one());
        // H(pi, 1) = g(1, pi)
        assert_eq!(h_chinta(&fs, &t, &one), gauss_fast(&fs, &one, &t, 1));
        // H(pi^3, 1) = 0
        let t3 = parse_poly(&fs, 1, "t^3").unwrap();
        assert!(h_chinta(&fs, &t3, &one).is_zero());
        // table symmetry: H(pi, pi^2) = H(pi^2, pi)
        let t2 = parse_poly(&fs, 1, "t^2").unwrap();
        assert_eq!(h_chinta(&fs, &t, &t2), h_chinta(&fs, &t2, &t));
    }

    #[test]
    fn chinta_mohler_identity_small() {
        // g(f1,f2) / q^{deg f2/2}
        //   = b(f1,f2) g((./f2)_chi) (f1hat/f20)^{-1} / q^{deg f2flat/2}
        let fs = f3();
        let lvl = fs.level(1).unwrap();
        let q = fs.q();
        let nn = fs.cyc_modulus();
        for d2 in 0..=3usize {
            for j in 0..lvl.size.pow(d2 as u32) {
                let f2 = MonicPoly::by_index(&lvl, d2, j);
                let f20 = f_two_zero(&fs, &f2);
                let f2f = f_two_flat(&fs, &f2);
                let gsym = g_of_symbol(&fs, &f2);
                for d1 in 0..=2usize {
                    for i in 0..lvl.size.pow(d1 as u32) {
                        let f1 = MonicPoly::by_index(&lvl, d1, i);
                        let lhs = SqrtQ::from_cyc(q, gauss_fast(&fs, &f1, &f2, 1))
                            .mul(&SqrtQ::q_half_pow(q, nn, -(d2 as i64)));
                        let f1h = f_one_hat(&fs, &f1, &f20);
                        let inv_sym = fs.chi_pow(resultant_mm(&lvl, &f1h, &f20), -1);
                        let rhs = b_cm(&fs, &f1, &f2)
                            .mul_cyc(&gsym)
                            .mul_cyc(&inv_sym)
                            .mul(&SqrtQ::q_half_pow(q, nn, -(f2f.deg() as i64)));
                        assert_eq!(lhs, rhs, "f1 idx {i} deg {d1}, f2 idx {j} deg {d2}");
                    }
                }
            }
        }
    }
}
