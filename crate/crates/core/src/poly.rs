//! Polynomials over `R_k`: plain ones in `R_k[x]` and residues modulo
//! `x^m - λ`, plus the `λ`-shift and `λ`-twistulant matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::RingElement;

/// The `λ`-shift `(a_0..a_{n-1}) ↦ (λ a_{n-1}, a_0, .., a_{n-2})`.
pub fn shift(v: &[RingElement], lambda: &RingElement) -> Result<Vec<RingElement>> {
    lambda.require_unit()?;
    if v.is_empty() {
        return Ok(Vec::new());
    }
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    out.push(*lambda * v[n - 1]);
    out.extend_from_slice(&v[..n - 1]);
    Ok(out)
}

/// `T_λ^s`, applying the shift `s` times.
pub fn shift_by(v: &[RingElement], lambda: &RingElement, s: usize) -> Result<Vec<RingElement>> {
    let mut out = v.to_vec();
    for _ in 0..s {
        out = shift(&out, lambda)?;
    }
    Ok(out)
}

/// A polynomial in `R_k[x]`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RawPoly {
    k: u32,
    coeffs: Vec<RingElement>,
}

impl RawPoly {
    pub fn new(k: u32, coeffs: Vec<RingElement>) -> Result<Self> {
        crate::ring::check_k(k)?;
        if coeffs.iter().any(|c| c.k() != k) {
            return Err(Error::param("coefficients from a different ring"));
        }
        let mut p = RawPoly { k, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(k: u32) -> Self {
        RawPoly { k, coeffs: vec![] }
    }

    /// `x^m - λ` (which is `x^m + λ` in characteristic 2).
    pub fn x_pow_minus(m: usize, lambda: RingElement) -> Self {
        let k = lambda.k();
        let mut coeffs = vec![RingElement::zero(k); m + 1];
        coeffs[0] = lambda;
        coeffs[m] += RingElement::one(k);
        let mut p = RawPoly { k, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == RingElement::one(self.k))
    }

    pub fn add(&self, other: &RawPoly) -> RawPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = RingElement::zero(self.k);
        let coeffs = (0..n)
            .map(|i| *self.coeffs.get(i).unwrap_or(&zero) + *other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        let mut p = RawPoly { k: self.k, coeffs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &RawPoly) -> RawPoly {
        if self.is_zero() || other.is_zero() {
            return RawPoly::zero(self.k);
        }
        let mut coeffs =
            vec![RingElement::zero(self.k); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += *a * *b;
            }
        }
        let mut p = RawPoly { k: self.k, coeffs };
        p.trim();
        p
    }

    /// `self = q·g + r` with `deg r < deg g`; `g` must be monic.
    pub fn divmod(&self, g: &RawPoly) -> Result<(RawPoly, RawPoly)> {
        if g.k != self.k {
            return Err(Error::param("polynomials over different rings"));
        }
        if !g.is_monic() {
            return Err(Error::UnsupportedDivisor(format!("{g} is not monic")));
        }
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((RawPoly::zero(self.k), self.clone()));
        }
        let mut quot = vec![RingElement::zero(self.k); rem.len() - dg];
        for top in (dg..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            quot[top - dg] = c;
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[top - dg + j] += c * *gj;
            }
        }
        rem.truncate(dg);
        let q = RawPoly::new(self.k, quot)?;
        let r = RawPoly::new(self.k, rem)?;
        Ok((q, r))
    }
}

impl fmt::Debug for RawPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RawPoly({self})")
    }
}

impl fmt::Display for RawPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// A residue in `R_k[x] / (x^m - λ)`, stored as its `m` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<RingElement>,
    lambda: RingElement,
}

impl Polynomial {
    pub fn new(coeffs: Vec<RingElement>, lambda: RingElement) -> Result<Self> {
        lambda.require_unit()?;
        if coeffs.is_empty() {
            return Err(Error::param("coindex must be at least 1"));
        }
        if coeffs.iter().any(|c| c.k() != lambda.k()) {
            return Err(Error::param("coefficients from a different ring"));
        }
        Ok(Polynomial { coeffs, lambda })
    }

    /// Reduces an arbitrary polynomial modulo `x^m - λ`.
    pub fn reduce(raw: &RawPoly, m: usize, lambda: RingElement) -> Result<Self> {
        let mut coeffs = vec![RingElement::zero(lambda.k()); m];
        for (i, c) in raw.coeffs().iter().enumerate() {
            // x^(qm + r) = λ^q x^r
            coeffs[i % m] += lambda.unit_pow(i / m) * *c;
        }
        Polynomial::new(coeffs, lambda)
    }

    pub fn k(&self) -> u32 {
        self.lambda.k()
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lambda(&self) -> RingElement {
        self.lambda
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn to_raw(&self) -> RawPoly {
        RawPoly::new(self.k(), self.coeffs.clone()).expect("valid ring")
    }

    fn same_modulus(&self, other: &Polynomial) -> Result<()> {
        if self.m() == other.m() && self.lambda == other.lambda {
            Ok(())
        } else {
            Err(Error::param(format!(
                "modulus mismatch: x^{}-({}) vs x^{}-({})",
                self.m(),
                self.lambda,
                other.m(),
                other.lambda
            )))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Polynomial {
            coeffs,
            lambda: self.lambda,
        })
    }

    /// Product with the wrap-around rule `x^m = λ`.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_modulus(other)?;
        let m = self.m();
        let mut coeffs = vec![RingElement::zero(self.k()); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = *a * *b;
                if i + j < m {
                    coeffs[i + j] += p;
                } else {
                    coeffs[i + j - m] += self.lambda * p;
                }
            }
        }
        Ok(Polynomial {
            coeffs,
            lambda: self.lambda,
        })
    }

    /// Multiplication by `x`, i.e. the `λ`-shift of the coefficient vector.
    pub fn times_x(&self) -> Polynomial {
        Polynomial {
            coeffs: shift(&self.coeffs, &self.lambda).expect("λ is a unit"),
            lambda: self.lambda,
        }
    }

    /// `f(x) ↦ f(λx)`: coefficient `a_i` becomes `λ^i a_i`.
    ///
    /// For odd `m` this is a ring isomorphism from `R[x]/(x^m - c)` onto
    /// `R[x]/(x^m - cλ)`; in particular it carries cyclic residues to
    /// `λ`-constacyclic ones and back.
    pub fn lambda_substitute(&self, lambda: &RingElement) -> Result<Polynomial> {
        lambda.require_unit()?;
        if self.m() % 2 == 0 {
            return Err(Error::param(format!(
                "substitution x -> λx is only an isomorphism for odd coindex, got {}",
                self.m()
            )));
        }
        Ok(Polynomial {
            coeffs: substitute_coeffs(&self.coeffs, lambda),
            lambda: self.lambda * *lambda,
        })
    }
}

/// `a_i ↦ λ^i a_i` on a coefficient vector, with no parity check.
pub fn substitute_coeffs(coeffs: &[RingElement], lambda: &RingElement) -> Vec<RingElement> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| lambda.unit_pow(i) * *c)
        .collect()
}

/// An `m×m` matrix whose rows are successive `λ`-shifts of the first row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistulantMatrix {
    rows: Vec<Vec<RingElement>>,
    lambda: RingElement,
}

impl TwistulantMatrix {
    pub fn new(first_row: &[RingElement], lambda: &RingElement) -> Result<Self> {
        lambda.require_unit()?;
        let mut rows = Vec::with_capacity(first_row.len());
        let mut row = first_row.to_vec();
        for _ in 0..first_row.len() {
            let next = shift(&row, lambda)?;
            rows.push(row);
            row = next;
        }
        Ok(TwistulantMatrix {
            rows,
            lambda: *lambda,
        })
    }

    pub fn rows(&self) -> &[Vec<RingElement>] {
        &self.rows
    }

    pub fn lambda(&self) -> RingElement {
        self.lambda
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> RingElement {
        self.rows[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_block, Notation};

    fn r1(s: &str) -> Vec<RingElement> {
        parse_block(s, 1, Notation::R1).unwrap()
    }

    fn r2(s: &str) -> Vec<RingElement> {
        parse_block(s, 2, Notation::Hex).unwrap()
    }

    fn raw(v: Vec<RingElement>) -> RawPoly {
        let k = v[0].k();
        RawPoly::new(k, v).unwrap()
    }

    /// Schoolbook product in R[x], then fold x^(qm+r) into λ^q x^r.
    fn oracle_mul_mod(
        f: &[RingElement],
        g: &[RingElement],
        lambda: RingElement,
    ) -> Vec<RingElement> {
        let m = f.len();
        let k = lambda.k();
        let mut full = vec![RingElement::zero(k); 2 * m];
        for i in 0..m {
            for j in 0..m {
                full[i + j] += f[i] * g[j];
            }
        }
        let mut out = vec![RingElement::zero(k); m];
        for (e, c) in full.into_iter().enumerate() {
            let mut c = c;
            for _ in 0..e / m {
                c = lambda * c;
            }
            out[e % m] += c;
        }
        out
    }

    #[test]
    fn shift_examples() {
        let one = RingElement::one(2);
        let v = r2("120");
        assert_eq!(shift(&v, &one).unwrap(), r2("012"));
        let three = RingElement::new(1, 3).unwrap();
        assert_eq!(shift(&r1("0u"), &three).unwrap(), r1("u0"));
        assert!(shift(&v, &RingElement::new(2, 2).unwrap()).is_err());
        let lambda = RingElement::new(2, 0b0101).unwrap();
        let w = r2("7b3e");
        let scaled: Vec<_> = w.iter().map(|&a| lambda * a).collect();
        assert_eq!(shift_by(&w, &lambda, 4).unwrap(), scaled);
        assert_eq!(shift_by(&w, &lambda, 8).unwrap(), w);
    }

    #[test]
    fn mul_examples() {
        let lambda = RingElement::new(2, 0b0011).unwrap();
        let x = Polynomial::new(r2("01"), lambda).unwrap();
        let g = Polynomial::new(r2("5a"), lambda).unwrap();
        let prod = x.mul(&g).unwrap();
        assert_eq!(prod.coeffs(), &[lambda * r2("a")[0], r2("5")[0]]);

        let one = RingElement::one(1);
        let f = Polynomial::new(r1("110"), one).unwrap();
        let h = Polynomial::new(r1("111"), one).unwrap();
        let expected = oracle_mul_mod(&r1("110"), &r1("111"), one);
        assert_eq!(expected, r1("000"));
        assert_eq!(f.mul(&h).unwrap().coeffs(), &expected[..]);

        let unit = Polynomial::new(r1("100"), one).unwrap();
        assert_eq!(f.mul(&unit).unwrap(), f);
        let other = Polynomial::new(r1("10"), one).unwrap();
        assert!(f.mul(&other).is_err());
    }

    #[test]
    fn times_x_is_the_shift() {
        for lambda in RingElement::units(2) {
            for m in 1..=8 {
                let coeffs: Vec<_> = (0..m)
                    .map(|i| RingElement::new(2, (i * 7 + 3) as u64 % 16).unwrap())
                    .collect();
                let f = Polynomial::new(coeffs.clone(), lambda).unwrap();
                let mut xc = vec![RingElement::zero(2); m];
                if m > 1 {
                    xc[1] = RingElement::one(2);
                } else {
                    xc[0] = lambda;
                }
                let x = Polynomial::new(xc, lambda).unwrap();
                assert_eq!(x.mul(&f).unwrap(), f.times_x());
                assert_eq!(f.times_x().coeffs(), &shift(&coeffs, &lambda).unwrap()[..]);
            }
        }
    }

    #[test]
    fn divmod_examples() {
        let one = RingElement::one(1);
        let g = raw(r1("11"));
        let (q, r) = g.divmod(&g).unwrap();
        assert_eq!(q, raw(r1("1")));
        assert!(r.is_zero());

        let x3 = RawPoly::x_pow_minus(3, one);
        assert_eq!(x3, raw(r1("1001")));
        let (q, r) = x3.divmod(&g).unwrap();
        assert_eq!(q, raw(r1("111")));
        assert!(r.is_zero());

        let f = raw(r1("3u1"));
        let (q, r) = f.divmod(&raw(r1("1"))).unwrap();
        assert_eq!(q, f);
        assert!(r.is_zero());

        assert!(matches!(
            f.divmod(&raw(r1("1u"))),
            Err(Error::UnsupportedDivisor(_))
        ));
        let x2 = RawPoly::x_pow_minus(2, one);
        let (_, r) = x2.divmod(&raw(r1("u1"))).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn divmod_reconstructs() {
        let f = raw(r2("3a07e51"));
        for g in [r2("1"), r2("51"), r2("c21"), r2("9e01")] {
            let g = raw(g);
            let (q, r) = f.divmod(&g).unwrap();
            assert_eq!(q.mul(&g).add(&r), f);
            assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
        }
    }

    #[test]
    fn lambda_substitution() {
        let one = RingElement::one(1);
        let three = RingElement::new(1, 3).unwrap();
        let f = Polynomial::new(r1("110"), one).unwrap();
        assert_eq!(f.lambda_substitute(&one).unwrap(), f);
        let g = f.lambda_substitute(&three).unwrap();
        assert_eq!(g.coeffs(), &r1("130")[..]);
        assert_eq!(g.lambda(), three);
        assert_eq!(g.lambda_substitute(&three).unwrap(), f);
        let even = Polynomial::new(r1("11"), one).unwrap();
        assert!(even.lambda_substitute(&three).is_err());
    }

    #[test]
    fn substitution_is_a_ring_isomorphism_for_r1_n3() {
        let one = RingElement::one(1);
        let three = RingElement::new(1, 3).unwrap();
        let all: Vec<Polynomial> = (0..64u64)
            .map(|c| {
                let coeffs = (0..3)
                    .map(|i| RingElement::new(1, (c >> (2 * i)) & 3).unwrap())
                    .collect();
                Polynomial::new(coeffs, one).unwrap()
            })
            .collect();
        let mut images: Vec<_> = all
            .iter()
            .map(|f| f.lambda_substitute(&three).unwrap())
            .collect();
        for f in &all {
            for g in &all {
                let (mf, mg) = (
                    f.lambda_substitute(&three).unwrap(),
                    g.lambda_substitute(&three).unwrap(),
                );
                assert_eq!(
                    f.mul(g).unwrap().lambda_substitute(&three).unwrap(),
                    mf.mul(&mg).unwrap()
                );
                assert_eq!(
                    f.add(g).unwrap().lambda_substitute(&three).unwrap(),
                    mf.add(&mg).unwrap()
                );
            }
        }
        images.sort_by_key(|p| p.coeffs().iter().map(|c| c.coeffs()).collect::<Vec<_>>());
        images.dedup();
        assert_eq!(images.len(), 64);
    }

    #[test]
    fn naive_substitution_fails_for_even_coindex() {
        // x·x = 1 in R[x]/(x^2-1), but (λx)(λx) = x^2 = λ in R[x]/(x^2-λ).
        let one = RingElement::one(1);
        let three = RingElement::new(1, 3).unwrap();
        let x = Polynomial::new(r1("01"), one).unwrap();
        let sub =
            |p: &Polynomial| Polynomial::new(substitute_coeffs(p.coeffs(), &three), three).unwrap();
        let lhs = sub(&x.mul(&x).unwrap());
        let rhs = sub(&x).mul(&sub(&x)).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn reduce_folds_high_powers() {
        let lambda = RingElement::new(1, 3).unwrap();
        let p = Polynomial::reduce(&RawPoly::x_pow_minus(3, lambda), 3, lambda).unwrap();
        assert!(p.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn twistulant_examples() {
        let lambda = RingElement::new(2, 0b0111).unwrap();
        let g = r2("3c5");
        let t = TwistulantMatrix::new(&g, &lambda).unwrap();
        assert_eq!(t.rows()[1], vec![lambda * g[2], g[0], g[1]]);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if j >= i {
                    g[j - i]
                } else {
                    lambda * g[3 + j - i]
                };
                assert_eq!(t.entry(i, j), expected);
            }
        }
        let single = TwistulantMatrix::new(&r2("9"), &lambda).unwrap();
        assert_eq!(single.rows(), &[r2("9")]);
        let ones = TwistulantMatrix::new(&r2("11"), &RingElement::one(2)).unwrap();
        assert_eq!(ones.rows(), &[r2("11"), r2("11")]);
        assert!(TwistulantMatrix::new(&g, &RingElement::zero(2)).is_err());
    }
}
