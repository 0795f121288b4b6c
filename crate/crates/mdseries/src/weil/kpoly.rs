//! Dense univariate polynomials over K = Q(zeta_N).
//!
//! Little-endian coefficients, trimmed; the empty vector is 0. These back
//! the Berlekamp-Massey recurrence, Newton power sums, and the Trager
//! factorization used by Weil-number recovery.

use crate::cyclo::CycNum;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KPoly {
    pub n: u32,
    pub coeffs: Vec<CycNum>,
}

impl KPoly {
    pub fn new(n: u32, mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { n, coeffs }
    }

    pub fn zero(n: u32) -> Self {
        KPoly { n, coeffs: vec![] }
    }

    pub fn one(n: u32) -> Self {
        KPoly { n, coeffs: vec![CycNum::one(n)] }
    }

    pub fn constant(n: u32, c: CycNum) -> Self {
        Self::new(n, vec![c])
    }

    /// x - root.
    pub fn linear(n: u32, root: &CycNum) -> Self {
        KPoly { n, coeffs: vec![root.neg(), CycNum::one(n)] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &CycNum {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = vec![CycNum::zero(self.n); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Self::new(self.n, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        KPoly { n: self.n, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = vec![CycNum::zero(self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.n, out)
    }

    pub fn divrem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let dd = den.deg();
        if self.is_zero() || self.coeffs.len() <= dd {
            return (Self::zero(self.n), self.clone());
        }
        let lead_inv = den.lc().inv().expect("unit leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycNum::zero(self.n); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = c.mul(&den.coeffs[j]);
                rem[i + j] = rem[i + j].sub(&t);
            }
            quot[i] = c;
        }
        (Self::new(self.n, quot), Self::new(self.n, rem))
    }

    pub fn rem(&self, den: &Self) -> Self {
        self.divrem(den).1
    }

    pub fn make_monic(&self) -> Self {
        assert!(!self.is_zero());
        let inv = self.lc().inv().expect("unit leading coefficient");
        KPoly { n: self.n, coeffs: self.coeffs.iter().map(|c| c.mul(&inv)).collect() }
    }

    pub fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        assert!(!a.is_zero(), "gcd(0, 0)");
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.n);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&num::BigRational::from_integer((i as i64 + 1).into())))
            .collect();
        Self::new(self.n, coeffs)
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(self.n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// f(x + a).
    pub fn compose_shift(&self, a: &CycNum) -> Self {
        let mut acc = Self::zero(self.n);
        let shift = KPoly { n: self.n, coeffs: vec![a.clone(), CycNum::one(self.n)] };
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(self.n, c.clone()));
        }
        acc
    }

    /// For monic f with roots a_i, the monic polynomial with roots b*a_i.
    pub fn scale_roots(&self, b: &CycNum) -> Self {
        assert!(self.is_monic());
        let d = self.deg();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&b.pow((d - i) as u64)))
            .collect();
        Self::new(self.n, coeffs)
    }

    /// Coefficientwise complex conjugation; the roots are the conjugates.
    pub fn conj(&self) -> Self {
        KPoly { n: self.n, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// For monic f with nonzero roots w_i, the monic polynomial with roots
    /// x_num / w_i.
    pub fn reciprocal_roots_scaled(&self, x_num: &CycNum) -> Self {
        assert!(self.is_monic());
        let d = self.deg();
        let mut coeffs = vec![CycNum::zero(self.n); d + 1];
        for (i, g) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = g.mul(&x_num.pow(i as u64));
        }
        let p = Self::new(self.n, coeffs);
        assert_eq!(p.deg(), d, "zero constant term: zero root");
        p.make_monic()
    }

    /// Newton power sums p_1..p_m of the roots of a monic polynomial.
    pub fn newton_sums(&self, m: usize) -> Vec<CycNum> {
        assert!(self.is_monic());
        let d = self.deg();
        // a[i] is the coefficient of x^i
        let a = &self.coeffs;
        let mut p: Vec<CycNum> = Vec::with_capacity(m + 1);
        p.push(CycNum::from_int(self.n, d as i64)); // p_0 = d
        for j in 1..=m {
            // p_j = -j*a_{d-j} - sum_{i=1}^{j-1} a_{d-i} p_{j-i}   (j <= d)
            // p_j = -sum_{i=1}^{d} a_{d-i} p_{j-i}                 (j > d)
            let mut s = CycNum::zero(self.n);
            let top = j.min(d);
            for i in 1..=top {
                if j == i {
                    continue;
                }
                s = s.add(&a[d - i].mul(&p[j - i]));
            }
            if j <= d {
                s = s.add(&a[d - j].scale(&num::BigRational::from_integer((j as i64).into())));
            }
            p.push(s.neg());
        }
        p.remove(0);
        p
    }

    /// Monic polynomial of degree d whose roots have the given power sums
    /// p_1..p_d (characteristic zero inverse Newton identities).
    pub fn from_power_sums(n: u32, d: usize, p: &[CycNum]) -> Self {
        assert!(p.len() >= d);
        // e_0 = 1; k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
        let mut e: Vec<CycNum> = vec![CycNum::one(n)];
        for k in 1..=d {
            let mut s = CycNum::zero(n);
            for i in 1..=k {
                let term = e[k - i].mul(&p[i - 1]);
                if i % 2 == 1 {
                    s = s.add(&term);
                } else {
                    s = s.sub(&term);
                }
            }
            e.push(s.scale(&num::BigRational::new(1.into(), (k as i64).into())));
        }
        let mut coeffs = vec![CycNum::zero(n); d + 1];
        for k in 0..=d {
            // coefficient of x^{d-k} is (-1)^k e_k
            coeffs[d - k] = if k % 2 == 0 { e[k].clone() } else { e[k].neg() };
        }
        Self::new(n, coeffs)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        let g = self.gcd_monic(&self.derivative());
        g.deg() == 0
    }
}

/// Minimal linear recurrence of a sequence over K by Berlekamp-Massey.
/// Returns (L, connection) with connection = [1, c_1, ..., c_L] such that
/// s_i = -sum_{j=1}^{L} c_j s_{i-j} for all L <= i < len.
pub fn berlekamp_massey(n: u32, seq: &[CycNum]) -> (usize, Vec<CycNum>) {
    let mut c = vec![CycNum::one(n)];
    let mut b = vec![CycNum::one(n)];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = CycNum::one(n); // last nonzero discrepancy
    for i in 0..seq.len() {
        // discrepancy
        let mut d = seq[i].clone();
        for j in 1..=l {
            if j < c.len() {
                d = d.add(&c[j].mul(&seq[i - j]));
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = d.div_exact(&bd).expect("nonzero discrepancy");
        if 2 * l <= i {
            let t = c.clone();
            // c -= coef * x^m * b
            if c.len() < b.len() + m {
                c.resize(b.len() + m, CycNum::zero(n));
            }
            for (j, bc) in b.iter().enumerate() {
                c[j + m] = c[j + m].sub(&coef.mul(bc));
            }
            l = i + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, CycNum::zero(n));
            }
            for (j, bc) in b.iter().enumerate() {
                c[j + m] = c[j + m].sub(&coef.mul(bc));
            }
            m += 1;
        }
    }
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    (l, c)
}

/// Characteristic polynomial of the recurrence found by Berlekamp-Massey:
/// x^L + c_1 x^{L-1} + ... + c_L, monic of degree L.
pub fn charpoly_of_connection(n: u32, l: usize, connection: &[CycNum]) -> KPoly {
    let mut coeffs = vec![CycNum::zero(n); l + 1];
    coeffs[l] = CycNum::one(n);
    for j in 1..=l {
        coeffs[l - j] = connection.get(j).cloned().unwrap_or_else(|| CycNum::zero(n));
    }
    KPoly::new(n, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> CycNum {
        CycNum::from_int(6, v)
    }

    #[test]
    fn divrem_and_gcd() {
        // (x - 1)(x - 2) over Q(zeta_6)
        let f = KPoly::linear(6, &c(1)).mul(&KPoly::linear(6, &c(2)));
        let (q, r) = f.divrem(&KPoly::linear(6, &c(1)));
        assert!(r.is_zero());
        assert_eq!(q, KPoly::linear(6, &c(2)));
        let g = KPoly::linear(6, &c(2)).mul(&KPoly::linear(6, &c(5)));
        assert_eq!(f.gcd_monic(&g), KPoly::linear(6, &c(2)));
    }

    #[test]
    fn newton_roundtrip() {
        // roots 3, 1, -2
        let f = KPoly::linear(6, &c(3))
            .mul(&KPoly::linear(6, &c(1)))
            .mul(&KPoly::linear(6, &c(-2)));
        let p = f.newton_sums(3);
        assert_eq!(p[0], c(2)); // 3 + 1 - 2
        assert_eq!(p[1], c(14)); // 9 + 1 + 4
        assert_eq!(p[2], c(20)); // 27 + 1 - 8
        let back = KPoly::from_power_sums(6, 3, &p);
        assert_eq!(back, f);
    }

    #[test]
    fn bm_finds_recurrence() {
        // s_m = 2*3^m - 1, m = 1..5
        let seq: Vec<CycNum> = (1..=5).map(|m| c(2 * 3i64.pow(m) - 1)).collect();
        let (l, conn) = berlekamp_massey(6, &seq);
        assert_eq!(l, 2);
        let cp = charpoly_of_connection(6, l, &conn);
        // (x-3)(x-1) = x^2 - 4x + 3
        let want = KPoly::linear(6, &c(3)).mul(&KPoly::linear(6, &c(1)));
        assert_eq!(cp, want);
    }

    #[test]
    fn bm_zero_sequence() {
        let seq = vec![CycNum::zero(6); 4];
        let (l, _) = berlekamp_massey(6, &seq);
        assert_eq!(l, 0);
    }

    #[test]
    fn scale_and_reciprocal_roots() {
        let f = KPoly::linear(6, &c(2)).mul(&KPoly::linear(6, &c(5)));
        let g = f.scale_roots(&c(3)); // roots 6, 15
        assert!(g.eval(&c(6)).is_zero());
        assert!(g.eval(&c(15)).is_zero());
        let h = f.reciprocal_roots_scaled(&c(10)); // roots 5, 2
        assert!(h.eval(&c(5)).is_zero());
        assert!(h.eval(&c(2)).is_zero());
    }

    #[test]
    fn compose_shift() {
        let f = KPoly::linear(6, &c(4)); // x - 4
        let g = f.compose_shift(&c(1)); // (x+1) - 4 = x - 3
        assert_eq!(g, KPoly::linear(6, &c(3)));
    }
}
