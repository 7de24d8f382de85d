//! The homogeneous-weight Gray map `ψ_k : R_k → RM(1, 2^k - 1)`.
//!
//! `ψ_k` is F2-linear and is fixed by the images of the basis monomials.
//! Coordinates of an image block are indexed by points `p ∈ {0..2^m-1}`,
//! `m = 2^k - 1`, leftmost first. The top monomial maps to the all-ones word;
//! every other monomial `u_A` maps to the evaluation of the coordinate
//! function `p ↦ bit idx(A) of p`. For `k = 1` this is the classical Gray
//! map (`ψ_1(1) = 01`, `ψ_1(u) = 11`). For `k = 2` the table is pinned to
//!
//! ```text
//! ψ_2(uv) = 11111111   ψ_2(u) = 11110000
//! ψ_2(v)  = 11001100   ψ_2(1) = 10101010
//! ```
//!
//! which differs from the coordinate-function rule by an affine relabelling
//! of the points. Any such choice is an isometry; this one is frozen.

use crate::bits::{BitVec, EchelonBasis};
use crate::error::{Error, Result};
use crate::ring::{basis_len, check_k, RingElement, K_MAX};

/// Hard ceiling for Gray images even with an override: `ψ_4` is 32768 bits per symbol.
pub const K_OVERRIDE_LIMIT: u32 = 4;

const R2_IMAGES: [&str; 4] = ["10101010", "11110000", "11001100", "11111111"];

#[derive(Clone, Debug)]
pub struct GrayTable {
    k: u32,
    image_len: usize,
    basis_images: Vec<BitVec>,
    // pivot column and the monomial combination producing each echelon row
    decoder: Vec<(usize, u64)>,
}

impl GrayTable {
    /// Builds `ψ_k` for `1 <= k <= K_MAX`.
    pub fn new(k: u32) -> Result<Self> {
        Self::with_limit(k, K_MAX)
    }

    /// Builds `ψ_k` allowing `k` up to `limit` (itself capped at [`K_OVERRIDE_LIMIT`]).
    pub fn with_limit(k: u32, limit: u32) -> Result<Self> {
        check_k(k)?;
        let limit = limit.min(K_OVERRIDE_LIMIT);
        if k > limit {
            return Err(Error::param(format!(
                "Gray image for k={k} exceeds the limit k<={limit}"
            )));
        }
        let m = basis_len(k) - 1;
        let image_len = 1usize << m;
        let basis_images: Vec<BitVec> = if k == 2 {
            R2_IMAGES.iter().map(|s| s.parse().unwrap()).collect()
        } else {
            (0..=m)
                .map(|idx| {
                    if idx == m {
                        BitVec::ones(image_len)
                    } else {
                        BitVec::from_bits((0..image_len).map(|p| (p >> idx) & 1 == 1))
                    }
                })
                .collect()
        };
        let decoder = build_decoder(&basis_images, image_len)?;
        Ok(GrayTable {
            k,
            image_len,
            basis_images,
            decoder,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `2^(2^k - 1)`, the number of bits per ring symbol.
    pub fn image_len(&self) -> usize {
        self.image_len
    }

    pub fn basis_images(&self) -> &[BitVec] {
        &self.basis_images
    }

    pub fn basis_image(&self, index: usize) -> &BitVec {
        &self.basis_images[index]
    }

    pub fn image(&self, a: &RingElement) -> BitVec {
        let mut out = BitVec::zeros(self.image_len);
        self.xor_image_into(&mut out, 0, a.coeffs());
        out
    }

    /// XORs `ψ` of the element with coefficient word `coeffs` into `out` at `offset`.
    pub(crate) fn xor_image_into(&self, out: &mut BitVec, offset: usize, coeffs: u64) {
        let mut c = coeffs;
        while c != 0 {
            let i = c.trailing_zeros() as usize;
            c &= c - 1;
            let img = &self.basis_images[i];
            if self.image_len <= 64 {
                out.xor_word(offset, self.image_len, img.read_word(0, self.image_len));
            } else {
                let mut start = 0;
                while start < self.image_len {
                    let w = (self.image_len - start).min(64);
                    out.xor_word(offset + start, w, img.read_word(start, w));
                    start += w;
                }
            }
        }
    }

    /// Component-wise image of a vector over `R_k`.
    pub fn psi(&self, v: &[RingElement]) -> Result<BitVec> {
        let mut out = BitVec::zeros(v.len() * self.image_len);
        for (i, a) in v.iter().enumerate() {
            if a.k() != self.k {
                return Err(Error::param(format!(
                    "coordinate {i} is in R_{}, table is for R_{}",
                    a.k(),
                    self.k
                )));
            }
            self.xor_image_into(&mut out, i * self.image_len, a.coeffs());
        }
        Ok(out)
    }

    /// Image of a vector given in coefficient form: `2^k` bits per coordinate.
    pub fn psi_coeff_vector(&self, coeffs: &BitVec) -> BitVec {
        let width = basis_len(self.k);
        debug_assert_eq!(coeffs.len() % width, 0);
        let n = coeffs.len() / width;
        let mut out = BitVec::zeros(n * self.image_len);
        for i in 0..n {
            let c = coeffs.read_word(i * width, width);
            if c != 0 {
                self.xor_image_into(&mut out, i * self.image_len, c);
            }
        }
        out
    }

    /// Unique preimage of a binary word whose blocks all lie in `RM(1, 2^k-1)`.
    pub fn psi_inverse(&self, b: &BitVec) -> Result<Vec<RingElement>> {
        if b.len() % self.image_len != 0 {
            return Err(Error::param(format!(
                "length {} is not a multiple of {}",
                b.len(),
                self.image_len
            )));
        }
        (0..b.len() / self.image_len)
            .map(|block| {
                let chunk = b.slice(block * self.image_len, self.image_len);
                let coeffs = self
                    .decoder
                    .iter()
                    .filter(|(p, _)| chunk.get(*p))
                    .fold(0u64, |acc, (_, combo)| acc ^ combo);
                let a = RingElement::from_raw(self.k, coeffs);
                if self.image(&a) == chunk {
                    Ok(a)
                } else {
                    Err(Error::NotInImage { block })
                }
            })
            .collect()
    }

    /// A coordinate permutation `P_λ` with `ψ(λ·a) = P_λ(ψ(a))` for every `a`.
    ///
    /// Searches the affine maps `p ↦ Mp + t` of the point set, identity first,
    /// and returns the first one that works on all of `R_k`. Only `k <= 2`.
    pub fn unit_mul_permutation(&self, lambda: &RingElement) -> Result<CoordPermutation> {
        if lambda.k() != self.k {
            return Err(Error::param("unit from a different ring"));
        }
        lambda.require_unit()?;
        if self.k > 2 {
            return Err(Error::param(
                "affine permutation search is limited to k <= 2",
            ));
        }
        let m = basis_len(self.k) - 1;
        let targets: Vec<(BitVec, BitVec)> = RingElement::all(self.k)
            .map(|a| (self.image(&a), self.image(&(*lambda * a))))
            .collect();
        let identity: Vec<u32> = (0..m).map(|r| 1 << r).collect();
        let matrices = std::iter::once(identity.clone()).chain(
            (0u64..1 << (m * m))
                .map(|code| {
                    (0..m)
                        .map(|r| ((code >> (r * m)) & ((1 << m) - 1)) as u32)
                        .collect::<Vec<u32>>()
                })
                .filter(|rows| *rows != identity && invertible(rows)),
        );
        for rows in matrices {
            for t in 0..self.image_len {
                let images: Vec<usize> = (0..self.image_len)
                    .map(|p| apply_affine(&rows, t, p))
                    .collect();
                if targets
                    .iter()
                    .all(|(src, dst)| src.permuted(&images) == *dst)
                {
                    return Ok(CoordPermutation { images });
                }
            }
        }
        Err(Error::Integrity(format!(
            "no affine permutation realises multiplication by {lambda}"
        )))
    }
}

fn apply_affine(rows: &[u32], t: usize, p: usize) -> usize {
    let mut out = 0usize;
    for (r, row) in rows.iter().enumerate() {
        if (row & p as u32).count_ones() % 2 == 1 {
            out |= 1 << r;
        }
    }
    out ^ t
}

fn invertible(rows: &[u32]) -> bool {
    let mut rows = rows.to_vec();
    let n = rows.len();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| rows[r] >> col & 1 == 1) else {
            return false;
        };
        rows.swap(col, pivot);
        for r in 0..n {
            if r != col && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    true
}

fn build_decoder(images: &[BitVec], image_len: usize) -> Result<Vec<(usize, u64)>> {
    // Eliminate on [image | monomial-id] so every echelon row remembers its preimage.
    let n = images.len();
    let width = image_len + n;
    let augmented: Vec<BitVec> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut row = BitVec::zeros(width);
            row.write_slice(0, img);
            row.set(image_len + i, true);
            row
        })
        .collect();
    let ech = EchelonBasis::from_rows(width, augmented.iter());
    let mut decoder = Vec::with_capacity(n);
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        if p >= image_len {
            return Err(Error::Integrity("Gray basis images are dependent".into()));
        }
        decoder.push((p, row.read_word(image_len, n)));
    }
    Ok(decoder)
}

/// A permutation of coordinate positions: bit `i` moves to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordPermutation {
    images: Vec<usize>,
}

impl CoordPermutation {
    pub fn identity(len: usize) -> Self {
        CoordPermutation {
            images: (0..len).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::param("not a permutation"));
            }
        }
        Ok(CoordPermutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, b: &BitVec) -> BitVec {
        b.permuted(&self.images)
    }
}
