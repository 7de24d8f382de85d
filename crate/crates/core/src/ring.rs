//! Arithmetic in the local rings `R_k = F2[u_1..u_k] / (u_i^2)`.
//!
//! An element is stored as its coefficient vector in the monomial basis
//! `{u_A : A ⊆ {1..k}}`. The coefficient of `u_A` lives at bit
//! `idx(A) = Σ_{i∈A} 2^(i-1)`, so `1` is bit 0 and the top monomial
//! `u_1⋯u_k` is bit `2^k - 1`. Multiplication is the F2 subset convolution
//! `u_A · u_B = u_{A∪B}` when `A ∩ B = ∅` and 0 otherwise.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use crate::error::{Error, Result};

/// Largest ring parameter with a word-sized coefficient vector.
pub const RING_K_LIMIT: u32 = 6;

/// Default cap on `k` for Gray images (one symbol of `R_3` is already 128 bits).
pub const K_MAX: u32 = 3;

/// Number of basis monomials, `2^k`.
#[inline]
pub const fn basis_len(k: u32) -> usize {
    1usize << k
}

/// `γ = 2^(2^k - 2)`, the average homogeneous weight.
#[inline]
pub const fn gamma(k: u32) -> u64 {
    1u64 << ((1u32 << k) - 2)
}

/// `|U(R_k)| = |D(R_k)| = 2^(2^k - 1)`.
#[inline]
pub const fn unit_count(k: u32) -> u64 {
    1u64 << ((1u32 << k) - 1)
}

pub(crate) fn check_k(k: u32) -> Result<()> {
    if (1..=RING_K_LIMIT).contains(&k) {
        Ok(())
    } else {
        Err(Error::param(format!(
            "ring parameter k={k} outside 1..={RING_K_LIMIT}"
        )))
    }
}

#[inline]
fn coeff_mask(k: u32) -> u64 {
    let n = basis_len(k);
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Homogeneous weight of an element or vector, with `γ = 2^(2^k-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomWeight(pub u64);

impl Add for HomWeight {
    type Output = HomWeight;
    fn add(self, rhs: HomWeight) -> HomWeight {
        HomWeight(self.0 + rhs.0)
    }
}

impl std::iter::Sum for HomWeight {
    fn sum<I: Iterator<Item = HomWeight>>(iter: I) -> HomWeight {
        HomWeight(iter.map(|w| w.0).sum())
    }
}

impl fmt::Display for HomWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    k: u32,
    coeffs: u64,
}

impl RingElement {
    pub fn new(k: u32, coeffs: u64) -> Result<Self> {
        check_k(k)?;
        if coeffs & !coeff_mask(k) != 0 {
            return Err(Error::param(format!(
                "coefficient word {coeffs:#x} has bits beyond 2^{k}"
            )));
        }
        Ok(RingElement { k, coeffs })
    }

    #[inline]
    pub(crate) fn from_raw(k: u32, coeffs: u64) -> Self {
        debug_assert!(coeffs & !coeff_mask(k) == 0);
        RingElement { k, coeffs }
    }

    pub fn zero(k: u32) -> Self {
        RingElement { k, coeffs: 0 }
    }

    pub fn one(k: u32) -> Self {
        RingElement { k, coeffs: 1 }
    }

    /// The monomial `u_A` with `idx(A) = index`.
    pub fn monomial(k: u32, index: usize) -> Self {
        assert!(index < basis_len(k), "monomial index out of range");
        RingElement {
            k,
            coeffs: 1 << index,
        }
    }

    /// `u_1 u_2 ⋯ u_k`.
    pub fn top(k: u32) -> Self {
        Self::monomial(k, basis_len(k) - 1)
    }

    /// Every element of `R_k`, in increasing coefficient-word order.
    pub fn all(k: u32) -> impl Iterator<Item = RingElement> {
        let count = 1u64 << basis_len(k).min(63);
        (0..count).map(move |c| RingElement { k, coeffs: c })
    }

    pub fn units(k: u32) -> impl Iterator<Item = RingElement> {
        Self::all(k).filter(|a| a.is_unit())
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn coeffs(&self) -> u64 {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, index: usize) -> bool {
        (self.coeffs >> index) & 1 == 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs == 0
    }

    pub fn is_top(&self) -> bool {
        self.coeffs == 1 << (basis_len(self.k) - 1)
    }

    /// Units are exactly the elements with coefficient 1 at `u_∅`.
    #[inline]
    pub fn is_unit(&self) -> bool {
        self.coeffs & 1 == 1
    }

    pub fn checked_add(self, rhs: RingElement) -> Result<RingElement> {
        self.same_ring(&rhs)?;
        Ok(RingElement {
            k: self.k,
            coeffs: self.coeffs ^ rhs.coeffs,
        })
    }

    pub fn checked_mul(self, rhs: RingElement) -> Result<RingElement> {
        self.same_ring(&rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::param(format!(
                "elements of R_{} and R_{} cannot be combined",
                self.k, other.k
            )))
        }
    }

    fn mul_unchecked(self, rhs: RingElement) -> RingElement {
        let mut out = 0u64;
        let mut a = self.coeffs;
        while a != 0 {
            let i = a.trailing_zeros();
            a &= a - 1;
            let mut b = rhs.coeffs;
            while b != 0 {
                let j = b.trailing_zeros();
                b &= b - 1;
                if i & j == 0 {
                    out ^= 1 << (i | j);
                }
            }
        }
        RingElement {
            k: self.k,
            coeffs: out,
        }
    }

    /// `a · u_1⋯u_k`: the top monomial for units, zero otherwise.
    pub fn mul_by_top(&self) -> RingElement {
        if self.is_unit() {
            Self::top(self.k)
        } else {
            Self::zero(self.k)
        }
    }

    /// The generating character `χ(a) = (-1)^wt(a)`.
    #[inline]
    pub fn character(&self) -> i32 {
        if self.coeffs.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn hom_weight(&self) -> HomWeight {
        if self.is_zero() {
            HomWeight(0)
        } else if self.is_top() {
            HomWeight(2 * gamma(self.k))
        } else {
            HomWeight(gamma(self.k))
        }
    }

    /// `Σ_{α ∈ U(R_k)} χ(α · self)`, by direct summation over the units.
    pub fn character_unit_sum(&self) -> i64 {
        Self::units(self.k)
            .map(|alpha| (alpha * *self).character() as i64)
            .sum()
    }

    /// Reduction modulo the maximal ideal: the coefficient of `u_∅`.
    #[inline]
    pub fn residue(&self) -> bool {
        self.is_unit()
    }

    /// `λ^i`, using `λ^2 = 1` for units.
    pub fn unit_pow(&self, i: usize) -> RingElement {
        debug_assert!(self.is_unit());
        if i % 2 == 0 {
            Self::one(self.k)
        } else {
            *self
        }
    }

    pub(crate) fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotAUnit(crate::notation::format_generic(self)))
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}({})", self.k, crate::notation::format_generic(self))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_generic(self))
    }
}

impl Add for RingElement {
    type Output = RingElement;

    /// Panics if the operands live in different rings; see [`RingElement::checked_add`].
    fn add(self, rhs: RingElement) -> RingElement {
        assert_eq!(self.k, rhs.k, "ring parameter mismatch");
        RingElement {
            k: self.k,
            coeffs: self.coeffs ^ rhs.coeffs,
        }
    }
}

impl AddAssign for RingElement {
    fn add_assign(&mut self, rhs: RingElement) {
        *self = *self + rhs;
    }
}

impl Mul for RingElement {
    type Output = RingElement;

    /// Panics if the operands live in different rings; see [`RingElement::checked_mul`].
    fn mul(self, rhs: RingElement) -> RingElement {
        assert_eq!(self.k, rhs.k, "ring parameter mismatch");
        self.mul_unchecked(rhs)
    }
}

impl MulAssign for RingElement {
    fn mul_assign(&mut self, rhs: RingElement) {
        *self = *self * rhs;
    }
}

/// Homogeneous weight of a vector: the coordinate-wise sum.
pub fn hom_weight_vec(v: &[RingElement]) -> HomWeight {
    v.iter().map(RingElement::hom_weight).sum()
}

pub fn hom_distance(a: &[RingElement], b: &[RingElement]) -> HomWeight {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| (x + y).hom_weight()).sum()
}

/// Coordinate-wise residue projection onto F2.
pub fn residue_vec(v: &[RingElement]) -> Vec<bool> {
    v.iter().map(RingElement::residue).collect()
}
