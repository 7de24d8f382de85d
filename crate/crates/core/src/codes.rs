//! Linear codes over `R_k`, quasi-twisted constructions and binary images.
//!
//! A code over `R_k` is stored by its generator rows. Everything that needs
//! the actual code goes through an F2 basis of the module span: the vectors
//! `u_A · row` for every monomial `u_A` and every generator row, written in
//! coefficient form (`2^k` bits per coordinate) and row reduced. This gives
//! exact sizes and enumeration whether or not the module is free.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{BitVec, EchelonBasis};
use crate::error::{Error, Result};
use crate::gray::{CoordPermutation, GrayTable};
use crate::notation::{format_element, format_generator, parse_element, parse_generator, Notation};
use crate::poly::{shift, substitute_coeffs, Polynomial, RawPoly, TwistulantMatrix};
use crate::ring::{basis_len, gamma, RingElement};

/// Default enumeration budget: at most `2^24` codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

fn check_budget(rank: usize, budget: u64) -> Result<()> {
    if rank >= 64 || (1u64 << rank) > budget {
        Err(Error::Budget(format!(
            "span of dimension {rank} exceeds the budget of {budget} codewords"
        )))
    } else {
        Ok(())
    }
}

/// Sparse weight distribution `weight → count`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator(BTreeMap<u64, u64>);

impl WeightEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut e = Self::new();
        for (w, c) in pairs {
            e.add(w, c);
        }
        e
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        if count > 0 {
            *self.0.entry(weight).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &WeightEnumerator) {
        for (&w, &c) in &other.0 {
            self.add(w, c);
        }
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.0.keys().copied().find(|&w| w > 0)
    }

    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.0.iter().map(|(&w, &c)| (w, c)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&w, &c)| (w, c))
    }
}

impl fmt::Display for WeightEnumerator {
    /// `1 + 3z^8` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(&w, &c)| match (w, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}z"),
                (w, 1) => format!("z^{w}"),
                (w, c) => format!("{c}z^{w}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Runs `f` on a rayon pool with `jobs` threads, or inline for `jobs <= 1`.
pub(crate) fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Visits every vector of `start + span(rows)` in Gray-code order.
fn gray_walk(rows: &[BitVec], start: BitVec, mut visit: impl FnMut(&BitVec)) {
    let mut cur = start;
    visit(&cur);
    let count = 1u64 << rows.len();
    for i in 1..count {
        cur.xor_assign(&rows[i.trailing_zeros() as usize]);
        visit(&cur);
    }
}

/// Enumerates the span of `rows`, tallying `weight(word)`; shards on the
/// high basis vectors when `jobs > 1`. The tally is independent of `jobs`.
fn span_enumerator<W>(rows: &[BitVec], len: usize, jobs: usize, weight: W) -> WeightEnumerator
where
    W: Fn(&BitVec) -> u64 + Sync,
{
    let shard_bits = if jobs > 1 { rows.len().min(6) } else { 0 };
    let (low, high) = rows.split_at(rows.len() - shard_bits);
    let tally = |shard: u64| {
        let mut start = BitVec::zeros(len);
        for (i, r) in high.iter().enumerate() {
            if shard >> i & 1 == 1 {
                start.xor_assign(r);
            }
        }
        let mut e = WeightEnumerator::new();
        gray_walk(low, start, |w| e.add(weight(w), 1));
        e
    };
    if shard_bits == 0 {
        return tally(0);
    }
    with_jobs(jobs, || {
        (0..1u64 << shard_bits).into_par_iter().map(tally).reduce(
            WeightEnumerator::new,
            |mut a, b| {
                a.merge(&b);
                a
            },
        )
    })
}

/// A binary linear code kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    basis: EchelonBasis,
    enumerator: OnceLock<WeightEnumerator>,
}

impl PartialEq for BinaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for BinaryCode {}

impl BinaryCode {
    pub fn from_rows<'a, I: IntoIterator<Item = &'a BitVec>>(length: usize, rows: I) -> Self {
        Self::from_basis(EchelonBasis::from_rows(length, rows))
    }

    pub fn from_basis(basis: EchelonBasis) -> Self {
        BinaryCode {
            basis,
            enumerator: OnceLock::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    pub fn rows(&self) -> &[BitVec] {
        self.basis.rows()
    }

    pub fn basis(&self) -> &EchelonBasis {
        &self.basis
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.basis.contains(v)
    }

    pub fn weight_enumerator(&self, budget: u64) -> Result<WeightEnumerator> {
        self.weight_enumerator_jobs(budget, 1)
    }

    pub fn weight_enumerator_jobs(&self, budget: u64, jobs: usize) -> Result<WeightEnumerator> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e.clone());
        }
        check_budget(self.dimension(), budget)?;
        let e = span_enumerator(self.rows(), self.length(), jobs, |w| w.count_ones() as u64);
        Ok(self.enumerator.get_or_init(|| e).clone())
    }

    /// Smallest nonzero Hamming weight, by enumerating the whole span.
    pub fn min_distance(&self, budget: u64) -> Result<u64> {
        self.weight_enumerator(budget)?
            .min_nonzero_weight()
            .ok_or_else(|| Error::Undefined("the zero code has no minimum distance".into()))
    }

    /// Every pair of basis rows, including each row with itself, is orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length() && self.is_self_orthogonal()
    }

    /// Whether the cyclic shift by `s` positions maps the code to itself.
    pub fn qc_index_check(&self, s: usize) -> Result<bool> {
        if s == 0 || self.length() % s != 0 {
            return Err(Error::param(format!(
                "shift {s} does not divide length {}",
                self.length()
            )));
        }
        Ok(self
            .rows()
            .iter()
            .all(|r| self.contains(&r.rotate_right(s))))
    }

    pub fn permuted(&self, perm: &CoordPermutation) -> BinaryCode {
        let rows: Vec<BitVec> = self.rows().iter().map(|r| perm.apply(r)).collect();
        BinaryCode::from_rows(self.length(), rows.iter())
    }

    /// `[n,k,d]`.
    pub fn parameters(&self, budget: u64) -> Result<CodeParameters> {
        Ok(CodeParameters {
            length: self.length(),
            dimension: self.dimension(),
            min_distance: self.min_distance(budget)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CodeParameters {
    pub length: usize,
    pub dimension: usize,
    pub min_distance: u64,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{}]",
            self.length, self.dimension, self.min_distance
        )
    }
}

/// A linear code over `R_k`: the `R_k`-span of its generator rows.
#[derive(Clone, Debug)]
pub struct RkCode {
    k: u32,
    length: usize,
    rows: Vec<Vec<RingElement>>,
    basis: OnceLock<EchelonBasis>,
}

impl PartialEq for RkCode {
    /// Same set of codewords.
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.f2_basis() == other.f2_basis()
    }
}

impl RkCode {
    pub fn new(k: u32, length: usize, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        crate::ring::check_k(k)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != length {
                return Err(Error::param(format!(
                    "row {i} has length {}, expected {length}",
                    r.len()
                )));
            }
            if r.iter().any(|a| a.k() != k) {
                return Err(Error::param(format!("row {i} has entries outside R_{k}")));
            }
        }
        Ok(RkCode {
            k,
            length,
            rows,
            basis: OnceLock::new(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generator_rows(&self) -> &[Vec<RingElement>] {
        &self.rows
    }

    fn width(&self) -> usize {
        basis_len(self.k)
    }

    pub(crate) fn to_coeff_bits(&self, v: &[RingElement]) -> BitVec {
        let w = self.width();
        let mut out = BitVec::zeros(self.length * w);
        for (i, a) in v.iter().enumerate() {
            out.xor_word(i * w, w, a.coeffs());
        }
        out
    }

    fn coeffs_from_bits(&self, bits: &BitVec) -> Vec<RingElement> {
        let w = self.width();
        (0..self.length)
            .map(|i| RingElement::from_raw(self.k, bits.read_word(i * w, w)))
            .collect()
    }

    /// Row-reduced F2 basis of the code in coefficient form.
    pub fn f2_basis(&self) -> &EchelonBasis {
        self.basis.get_or_init(|| {
            let mut basis = EchelonBasis::new(self.length * self.width());
            for row in &self.rows {
                for a in 0..self.width() {
                    let mono = RingElement::monomial(self.k, a);
                    let scaled: Vec<RingElement> = row.iter().map(|&x| mono * x).collect();
                    basis.insert(self.to_coeff_bits(&scaled));
                }
            }
            basis
        })
    }

    /// `log2 |C|`.
    pub fn f2_dimension(&self) -> usize {
        self.f2_basis().rank()
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        v.len() == self.length && self.f2_basis().contains(&self.to_coeff_bits(v))
    }

    /// Every codeword exactly once, zero first, then in Gray-code order over the F2 basis.
    pub fn codewords(&self, budget: u64) -> Result<Codewords<'_>> {
        check_budget(self.f2_dimension(), budget)?;
        Ok(Codewords {
            code: self,
            current: BitVec::zeros(self.length * self.width()),
            next: 0,
            total: 1u64 << self.f2_dimension(),
        })
    }

    /// Homogeneous weight distribution, computed on the ring side.
    pub fn hom_weight_enumerator(&self, budget: u64, jobs: usize) -> Result<WeightEnumerator> {
        check_budget(self.f2_dimension(), budget)?;
        let (k, w, n) = (self.k, self.width(), self.length);
        let top = 1u64 << (w - 1);
        let g = gamma(k);
        Ok(span_enumerator(
            self.f2_basis().rows(),
            n * w,
            jobs,
            |bits| {
                (0..n)
                    .map(|i| match bits.read_word(i * w, w) {
                        0 => 0,
                        c if c == top => 2 * g,
                        _ => g,
                    })
                    .sum()
            },
        ))
    }

    /// Whether `T_λ^ℓ` of every generator stays in the code.
    pub fn is_qt_invariant(&self, lambda: &RingElement, ell: usize) -> Result<bool> {
        lambda.require_unit()?;
        if ell == 0 || self.length % ell != 0 {
            return Err(Error::param(format!(
                "index {ell} does not divide length {}",
                self.length
            )));
        }
        for row in &self.rows {
            let mut shifted = row.clone();
            for _ in 0..ell {
                shifted = shift(&shifted, lambda)?;
            }
            if !self.contains(&shifted) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn binary_image(&self, table: &GrayTable) -> Result<BinaryCode> {
        if table.k() != self.k {
            return Err(Error::param("Gray table for a different ring"));
        }
        let len = self.length * table.image_len();
        let images: Vec<BitVec> = self
            .f2_basis()
            .rows()
            .iter()
            .map(|r| table.psi_coeff_vector(r))
            .collect();
        Ok(BinaryCode::from_rows(len, images.iter()))
    }

    /// The binary code `μ_k(C)` of residues.
    pub fn residue_code(&self) -> BinaryCode {
        let rows: Vec<BitVec> = self
            .rows
            .iter()
            .map(|r| BitVec::from_bits(r.iter().map(RingElement::residue)))
            .collect();
        BinaryCode::from_rows(self.length, rows.iter())
    }

    /// Reorders coordinates: coordinate `i` moves to `images[i]`.
    pub fn permute_coordinates(&self, images: &[usize]) -> Result<RkCode> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![RingElement::zero(self.k); self.length];
                for (i, &j) in images.iter().enumerate() {
                    out[j] = r[i];
                }
                out
            })
            .collect();
        RkCode::new(self.k, self.length, rows)
    }
}

pub struct Codewords<'a> {
    code: &'a RkCode,
    current: BitVec,
    next: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Vec<RingElement>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        if self.next > 0 {
            let i = self.next.trailing_zeros() as usize;
            self.current.xor_assign(&self.code.f2_basis().rows()[i]);
        }
        self.next += 1;
        Some(self.code.coeffs_from_bits(&self.current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.total - self.next) as usize;
        (rest, Some(rest))
    }
}

/// A `(λ, ℓ)`-quasi-twisted code given by generator tuples of `ℓ`
/// polynomials of length `m`. Its generator matrix stacks, for each tuple,
/// the block row `[G_1 | … | G_ℓ]` of `λ`-twistulant matrices.
///
/// Coordinates are in block layout: coordinate `j·m + i` is coefficient
/// `i` of block `j`. The shift `T_λ^ℓ` of the interleaved layout acts here
/// as a simultaneous `λ`-shift of every block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtCode {
    k: u32,
    lambda: RingElement,
    ell: usize,
    m: usize,
    generators: Vec<Vec<Vec<RingElement>>>,
}

impl QtCode {
    pub fn new(
        k: u32,
        lambda: RingElement,
        ell: usize,
        m: usize,
        generators: Vec<Vec<Vec<RingElement>>>,
    ) -> Result<Self> {
        crate::ring::check_k(k)?;
        if lambda.k() != k {
            return Err(Error::param("λ is not in R_k"));
        }
        lambda.require_unit()?;
        if ell == 0 || m == 0 {
            return Err(Error::param("index and coindex must be positive"));
        }
        if generators.is_empty() {
            return Err(Error::param("at least one generator tuple is required"));
        }
        for (t, tuple) in generators.iter().enumerate() {
            if tuple.len() != ell {
                return Err(Error::param(format!(
                    "generator {t} has {} blocks, index is {ell}",
                    tuple.len()
                )));
            }
            for block in tuple {
                if block.len() != m {
                    return Err(Error::param(format!(
                        "generator {t} has a block of length {}, coindex is {m}",
                        block.len()
                    )));
                }
                if block.iter().any(|a| a.k() != k) {
                    return Err(Error::param(format!("generator {t} leaves R_{k}")));
                }
            }
        }
        Ok(QtCode {
            k,
            lambda,
            ell,
            m,
            generators,
        })
    }

    /// One-generator code from the block-string form, e.g. `(0u|0u|uu)`.
    /// `ℓ` and `m` are taken from the string.
    pub fn parse(k: u32, lambda: &str, generator: &str, notation: Notation) -> Result<Self> {
        Self::parse_many(k, lambda, &[generator], notation)
    }

    pub fn parse_many(
        k: u32,
        lambda: &str,
        generators: &[&str],
        notation: Notation,
    ) -> Result<Self> {
        let lambda = parse_element(lambda, k, notation)?;
        let tuples = generators
            .iter()
            .map(|g| parse_generator(g, k, notation))
            .collect::<Result<Vec<_>>>()?;
        let Some(first) = tuples.first() else {
            return Err(Error::param("at least one generator tuple is required"));
        };
        let (ell, m) = (first.len(), first[0].len());
        Self::new(k, lambda, ell, m, tuples)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> RingElement {
        self.lambda
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn length(&self) -> usize {
        self.ell * self.m
    }

    pub fn generators(&self) -> &[Vec<Vec<RingElement>>] {
        &self.generators
    }

    pub fn generator_strings(&self, notation: Notation) -> Result<Vec<String>> {
        self.generators
            .iter()
            .map(|t| format_generator(t, notation))
            .collect()
    }

    /// `[G_1 | … | G_ℓ]` per tuple, stacked.
    pub fn generator_matrix(&self) -> Result<Vec<Vec<RingElement>>> {
        let mut rows = Vec::with_capacity(self.generators.len() * self.m);
        for tuple in &self.generators {
            let blocks = tuple
                .iter()
                .map(|b| TwistulantMatrix::new(b, &self.lambda))
                .collect::<Result<Vec<_>>>()?;
            for i in 0..self.m {
                rows.push(
                    blocks
                        .iter()
                        .flat_map(|b| b.rows()[i].iter().copied())
                        .collect(),
                );
            }
        }
        Ok(rows)
    }

    pub fn to_rk_code(&self) -> Result<RkCode> {
        RkCode::new(self.k, self.length(), self.generator_matrix()?)
    }

    /// Block position `j·m + i` ↦ interleaved position `i·ℓ + j`.
    pub fn interleave_map(&self) -> Vec<usize> {
        (0..self.length())
            .map(|p| {
                let (j, i) = (p / self.m, p % self.m);
                i * self.ell + j
            })
            .collect()
    }

    /// The same code with coordinates interleaved, so that it is invariant
    /// under `T_λ^ℓ` on the whole vector.
    pub fn to_interleaved_code(&self) -> Result<RkCode> {
        self.to_rk_code()?
            .permute_coordinates(&self.interleave_map())
    }

    pub fn is_qt_invariant(&self) -> Result<bool> {
        self.to_interleaved_code()?
            .is_qt_invariant(&self.lambda, self.ell)
    }

    pub fn binary_image(&self, table: &GrayTable) -> Result<BinaryCode> {
        self.to_rk_code()?.binary_image(table)
    }

    /// Binary image relabelled so that the twisted shift becomes a plain
    /// cyclic shift, together with the resulting QC index.
    ///
    /// On one block of `m` symbols the shift acts on the image bits as
    /// `σ: (i, t) ↦ (i+1, t)` with `(m-1, t) ↦ (0, P_λ(t))`. Each orbit of `σ`
    /// is laid out along a stride so that `σ` on all blocks at once is the
    /// cyclic shift by `r·ℓ`, where `r` is the number of orbits per block.
    /// For `λ = 1` this is the interleaved layout and the index is
    /// `2^(2^k-1)·ℓ`. Fails when the orbits do not all have the same length.
    pub fn qc_form_image(&self, table: &GrayTable) -> Result<(BinaryCode, usize)> {
        let big_l = table.image_len();
        let p_lambda = if self.lambda == RingElement::one(self.k) {
            CoordPermutation::identity(big_l)
        } else {
            table.unit_mul_permutation(&self.lambda)?
        };
        let block_bits = big_l * self.m;
        let sigma = |pos: usize| {
            let (i, t) = (pos / big_l, pos % big_l);
            if i + 1 < self.m {
                pos + big_l
            } else {
                p_lambda.images()[t]
            }
        };
        // (orbit number, step along orbit) for every bit of one block
        let mut place = vec![(usize::MAX, 0usize); block_bits];
        let mut orbits = 0;
        let mut orbit_len = None;
        for startpos in 0..block_bits {
            if place[startpos].0 != usize::MAX {
                continue;
            }
            let mut pos = startpos;
            let mut step = 0;
            while place[pos].0 == usize::MAX {
                place[pos] = (orbits, step);
                step += 1;
                pos = sigma(pos);
            }
            match orbit_len {
                None => orbit_len = Some(step),
                Some(c) if c != step => {
                    return Err(Error::Undefined(format!(
                        "shift orbits have unequal lengths ({c} and {step})"
                    )))
                }
                _ => {}
            }
            orbits += 1;
        }
        let stride = orbits * self.ell;
        let images: Vec<usize> = (0..block_bits * self.ell)
            .map(|pos| {
                let (j, local) = (pos / block_bits, pos % block_bits);
                let (q, s) = place[local];
                s * stride + j * orbits + q
            })
            .collect();
        let perm = CoordPermutation::from_images(images)?;
        Ok((self.binary_image(table)?.permuted(&perm), stride))
    }

    /// Unit-coefficient counts `d_i` of each block of a one-generator code.
    pub fn unit_coefficient_counts(&self) -> Option<Vec<usize>> {
        if self.generators.len() != 1 {
            return None;
        }
        Some(
            self.generators[0]
                .iter()
                .map(|b| b.iter().filter(|a| a.is_unit()).count())
                .collect(),
        )
    }

    /// For odd `m`: the `ℓ`-QC code obtained by `g(x) ↦ g(λx)` on every block.
    pub fn substituted_qc_code(&self) -> Result<QtCode> {
        if self.m % 2 == 0 {
            return Err(Error::param("substitution requires odd coindex"));
        }
        let gens = self
            .generators
            .iter()
            .map(|t| {
                t.iter()
                    .map(|b| substitute_coeffs(b, &self.lambda))
                    .collect()
            })
            .collect();
        QtCode::new(self.k, RingElement::one(self.k), self.ell, self.m, gens)
    }

    /// Applies `a_i ↦ λ^i a_i` inside every block of the code itself.
    pub fn substituted_code(&self) -> Result<RkCode> {
        let code = self.to_rk_code()?;
        let rows = code
            .generator_rows()
            .iter()
            .map(|r| {
                r.chunks(self.m)
                    .flat_map(|b| substitute_coeffs(b, &self.lambda))
                    .collect()
            })
            .collect();
        RkCode::new(self.k, self.length(), rows)
    }

    /// Computes the full JSON record for this code.
    pub fn record(
        &self,
        table: &GrayTable,
        notation: Notation,
        budget: u64,
        jobs: usize,
    ) -> Result<CodeRecord> {
        let image = self.binary_image(table)?;
        let enumerator = image.weight_enumerator_jobs(budget, jobs)?;
        let min_distance = enumerator.min_nonzero_weight();
        let qc_index = match self.qc_form_image(table) {
            Ok((qc, _)) => {
                let s = table.image_len() * self.ell;
                qc.qc_index_check(s)?.then_some(s)
            }
            Err(Error::Undefined(_)) | Err(Error::Parameter(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(CodeRecord {
            k: self.k,
            lambda: format_element(&self.lambda, notation)?,
            ell: self.ell,
            m: self.m,
            generators: self.generator_strings(notation)?,
            image: ImageRecord {
                length: image.length(),
                dimension: image.dimension(),
                min_distance,
                weight_enumerator: enumerator.pairs(),
            },
            flags: FlagRecord {
                self_orthogonal: image.is_self_orthogonal(),
                qc_index,
            },
            provenance: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub length: usize,
    pub dimension: usize,
    pub min_distance: Option<u64>,
    pub weight_enumerator: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRecord {
    pub self_orthogonal: bool,
    pub qc_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: String,
}

/// Serialized form of a code and its binary image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub k: u32,
    pub lambda: String,
    pub ell: usize,
    pub m: usize,
    pub generators: Vec<String>,
    pub image: ImageRecord,
    pub flags: FlagRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeRankReport {
    pub is_free: bool,
    /// `m - deg g` when `g | x^m - λ`.
    pub rank: Option<usize>,
    /// F2-dimension of the binary image of `⟨g⟩`, computed independently.
    pub image_dimension: usize,
}

/// Divisibility test `g | x^m - λ` for the constacyclic code `⟨g⟩`.
pub fn free_rank_check(g: &RawPoly, lambda: &RingElement, m: usize) -> Result<FreeRankReport> {
    lambda.require_unit()?;
    let deg = g
        .degree()
        .ok_or_else(|| Error::UnsupportedDivisor("zero polynomial".into()))?;
    if deg > m {
        return Err(Error::param(format!("deg g = {deg} exceeds m = {m}")));
    }
    let (_, r) = RawPoly::x_pow_minus(m, *lambda).divmod(g)?;
    let is_free = r.is_zero();
    let block = Polynomial::reduce(g, m, *lambda)?.coeffs().to_vec();
    let code = QtCode::new(g.k(), *lambda, 1, m, vec![vec![block]])?;
    let image_dimension = code.to_rk_code()?.f2_dimension();
    Ok(FreeRankReport {
        is_free,
        rank: is_free.then_some(m - deg),
        image_dimension,
    })
}
