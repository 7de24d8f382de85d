//! Code families, table fixtures, bound checks and the generator search.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::codes::{with_jobs, CodeParameters, CodeRecord, Provenance, QtCode};
use crate::error::{Error, Result};
use crate::gray::GrayTable;
use crate::notation::{format_generator, parse_element, Notation};
use crate::poly::shift;
use crate::ring::{basis_len, gamma, hom_weight_vec, RingElement, K_MAX};

/// The shipped table fixtures.
pub const TABLES_CSV: &str = include_str!("../fixtures/tables.csv");

/// One published code: how to rebuild it and what its image should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub k: u32,
    pub lambda: String,
    pub ell: usize,
    pub m: usize,
    pub generator: String,
    pub n: usize,
    pub dim: usize,
    pub d: u64,
    pub notes: String,
}

impl TableRow {
    pub fn expected(&self) -> CodeParameters {
        CodeParameters {
            length: self.n,
            dimension: self.dim,
            min_distance: self.d,
        }
    }

    pub fn code(&self) -> Result<QtCode> {
        let code = QtCode::parse(
            self.k,
            &self.lambda,
            &self.generator,
            Notation::default_for(self.k),
        )?;
        if code.ell() != self.ell || code.m() != self.m {
            return Err(Error::parse(format!(
                "generator {} does not have index {} and coindex {}",
                self.generator, self.ell, self.m
            )));
        }
        Ok(code)
    }
}

pub fn parse_tables(csv_text: &str) -> Result<Vec<TableRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());
    reader
        .deserialize()
        .map(|r| r.map_err(|e| Error::parse(format!("fixture: {e}"))))
        .collect()
}

pub fn load_tables(path: &Path) -> Result<Vec<TableRow>> {
    parse_tables(&std::fs::read_to_string(path)?)
}

pub fn builtin_tables() -> Vec<TableRow> {
    parse_tables(TABLES_CSV).expect("shipped fixtures parse")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    Match,
    Mismatch,
    Error,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Match => "MATCH",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub table: u8,
    pub generator: String,
    pub expected: CodeParameters,
    pub computed: Option<CodeParameters>,
    /// Only reported for `k >= 2`, where every image is self-orthogonal.
    pub self_orthogonal: Option<bool>,
    /// `2^(2^k-1)·ℓ` if the (relabelled) image passes the shift check at that index.
    pub qc_index: Option<usize>,
    pub status: RowStatus,
    pub notes: String,
    pub error: Option<String>,
}

fn verify_row(row: &TableRow, budget: u64) -> RowReport {
    let mut report = RowReport {
        table: row.table,
        generator: row.generator.clone(),
        expected: row.expected(),
        computed: None,
        self_orthogonal: None,
        qc_index: None,
        status: RowStatus::Error,
        notes: row.notes.clone(),
        error: None,
    };
    let outcome = (|| -> Result<()> {
        let code = row.code()?;
        let table = GrayTable::new(row.k)?;
        let image = code.binary_image(&table)?;
        let params = image.parameters(budget)?;
        report.computed = Some(params);
        if row.k >= 2 {
            report.self_orthogonal = Some(image.is_self_orthogonal());
        }
        let s = table.image_len() * row.ell;
        if let Ok((qc, _)) = code.qc_form_image(&table) {
            if qc.qc_index_check(s)? {
                report.qc_index = Some(s);
            }
        }
        report.status = if params == row.expected() {
            RowStatus::Match
        } else {
            RowStatus::Mismatch
        };
        Ok(())
    })();
    if let Err(e) = outcome {
        report.error = Some(e.to_string());
    }
    report
}

/// Rebuilds every row of the selected tables; never stops at a mismatch.
pub fn verify_tables(rows: &[TableRow], tables: &[u8], budget: u64, jobs: usize) -> Vec<RowReport> {
    let selected: Vec<&TableRow> = rows
        .iter()
        .filter(|r| tables.is_empty() || tables.contains(&r.table))
        .collect();
    with_jobs(jobs, || {
        selected.par_iter().map(|r| verify_row(r, budget)).collect()
    })
}

/// The repetition code `⟨(1 1 … 1)⟩` of length `n` and its predicted image
/// `[n·2^(2^k-1), 2^k, n·2^(2^k-2)]`.
pub fn repetition_code_family(k: u32, n: usize) -> Result<(QtCode, CodeParameters)> {
    if k > K_MAX {
        return Err(Error::param(format!("k={k} exceeds K_MAX={K_MAX}")));
    }
    let one = RingElement::one(k);
    let code = QtCode::new(k, one, 1, n, vec![vec![vec![one; n]]])?;
    let expected = CodeParameters {
        length: n * (2 * gamma(k)) as usize,
        dimension: basis_len(k),
        min_distance: n as u64 * gamma(k),
    };
    Ok((code, expected))
}

/// The `(1+u, 3)`-QT code over `R_1` with image `[6m, 2, 4m]`:
/// `(0u0u…|0u0u…|uu…u)` for even `m`, `(1313…|1313…|uu…u)` for odd `m`.
pub fn six_m_family(m: usize) -> Result<(QtCode, CodeParameters)> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    let sym = |c: u64| RingElement::new(1, c).expect("valid R_1 element");
    let (u, one, three) = (sym(2), sym(1), sym(3));
    let alternating: Vec<RingElement> = (0..m)
        .map(|i| match (m % 2, i % 2) {
            (0, 0) => RingElement::zero(1),
            (0, _) => u,
            (_, 0) => one,
            _ => three,
        })
        .collect();
    let gens = vec![vec![alternating.clone(), alternating, vec![u; m]]];
    let code = QtCode::new(1, three, 3, m, gens)?;
    Ok((
        code,
        CodeParameters {
            length: 6 * m,
            dimension: 2,
            min_distance: 4 * m as u64,
        },
    ))
}

/// `Σ_{i<dim} ceil(d / 2^i)`, the Griesmer lower bound on the length.
pub fn griesmer_length(dimension: usize, d: u64) -> u64 {
    (0..dimension).map(|i| d.div_ceil(1 << i)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Minimum distance of the residue code; `None` when it is the zero code.
    pub residue_distance: Option<u64>,
    pub hom_distance: u64,
    /// Least homogeneous weight among codewords with a unit coordinate.
    pub unit_residue_distance: Option<u64>,
    /// `d_i`, the number of unit coefficients per block (one-generator codes).
    pub unit_counts: Option<Vec<usize>>,
    /// `2^(2^k-2)·d`
    pub lower: Option<u64>,
    /// `2^(2^k-1)·d`
    pub upper: Option<u64>,
    /// `2^(2^k-1)·Σ d_i`
    pub generator_upper: Option<u64>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn lower_holds(&self) -> bool {
        self.lower.is_none_or(|l| l <= self.hom_distance)
    }

    pub fn upper_holds(&self) -> bool {
        self.upper.is_none_or(|u| self.hom_distance <= u)
    }

    pub fn generator_upper_holds(&self) -> bool {
        self.generator_upper.is_none_or(|u| self.hom_distance <= u)
    }

    /// The lower bound restricted to codewords whose residue is nonzero.
    pub fn unit_residue_lower_holds(&self) -> bool {
        match (self.lower, self.unit_residue_distance) {
            (Some(l), Some(w)) => l <= w,
            _ => true,
        }
    }

    pub fn holds(&self) -> bool {
        self.lower_holds() && self.upper_holds() && self.generator_upper_holds()
    }
}

/// Checks `2^(2^k-2)·d <= d_hom <= 2^(2^k-1)·d` with `d` the residue-code
/// distance, and `d_hom <= 2^(2^k-1)·Σ d_i` for one-generator codes.
///
/// The lower bound can fail when the code has nonzero codewords inside the
/// maximal ideal; `unit_residue_distance` is reported so the bound can also be
/// checked on the codewords it actually constrains.
pub fn bound_check(code: &QtCode, budget: u64) -> Result<BoundReport> {
    let rk = code.to_rk_code()?;
    let mut hom_distance = None::<u64>;
    let mut unit_residue_distance = None::<u64>;
    for word in rk.codewords(budget)? {
        let w = hom_weight_vec(&word).0;
        if w == 0 {
            continue;
        }
        hom_distance = Some(hom_distance.map_or(w, |d| d.min(w)));
        if word.iter().any(|a| a.is_unit()) {
            unit_residue_distance = Some(unit_residue_distance.map_or(w, |d| d.min(w)));
        }
    }
    let hom_distance = hom_distance.ok_or_else(|| Error::Undefined("zero code".into()))?;
    let residue = rk.residue_code();
    let g = gamma(code.k());
    let mut notes = Vec::new();
    let residue_distance = if residue.dimension() == 0 {
        notes.push("residue code is zero; residue bounds are vacuous".to_string());
        None
    } else {
        Some(residue.min_distance(budget)?)
    };
    let unit_counts = code.unit_coefficient_counts();
    let generator_upper = match &unit_counts {
        Some(d) if d.iter().sum::<usize>() > 0 => Some(2 * g * d.iter().sum::<usize>() as u64),
        Some(_) => {
            notes
                .push("generator has no unit coefficients; generator bound is vacuous".to_string());
            None
        }
        None => None,
    };
    let mut report = BoundReport {
        residue_distance,
        hom_distance,
        unit_residue_distance,
        unit_counts,
        lower: residue_distance.map(|d| g * d),
        upper: residue_distance.map(|d| 2 * g * d),
        generator_upper,
        notes,
    };
    if !report.lower_holds() {
        report.notes.push(format!(
            "lower bound fails: a codeword with zero residue has weight {}",
            report.hom_distance
        ));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            other => Err(Error::parse(format!("unknown search mode '{other}'"))),
        }
    }
}

/// Default cap on candidate tuples in exhaustive mode.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: u32,
    pub lambdas: Vec<String>,
    pub ells: Vec<usize>,
    pub ms: Vec<usize>,
    pub mode: SearchMode,
    /// Candidates drawn per `(λ, ℓ, m)` in random mode.
    pub samples: u64,
    pub seed: u64,
    pub exhaustive_cap: u64,
    pub budget: u64,
}

impl SearchConfig {
    pub fn exhaustive(k: u32, lambda: &str, ell: usize, m: usize) -> Self {
        SearchConfig {
            k,
            lambdas: vec![lambda.to_string()],
            ells: vec![ell],
            ms: vec![m],
            mode: SearchMode::Exhaustive,
            samples: 0,
            seed: 0,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            budget: crate::codes::DEFAULT_BUDGET,
        }
    }

    pub fn random(k: u32, lambda: &str, ell: usize, m: usize, samples: u64, seed: u64) -> Self {
        SearchConfig {
            mode: SearchMode::Random,
            samples,
            seed,
            ..Self::exhaustive(k, lambda, ell, m)
        }
    }

    /// First 16 hex digits of the SHA-256 of the config's JSON form.
    pub fn config_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// The lexicographically smallest of the `m` `λ`-shifts of a block.
pub fn canonical_block(block: &[RingElement], lambda: &RingElement) -> Vec<RingElement> {
    let mut best = block.to_vec();
    let mut cur = block.to_vec();
    for _ in 1..block.len() {
        cur = shift(&cur, lambda).expect("λ is a unit");
        if cur < best {
            best = cur.clone();
        }
    }
    best
}

#[derive(Clone, Debug)]
struct Candidate {
    params: CodeParameters,
    generator: String,
    code: QtCode,
}

impl Candidate {
    /// Larger distance wins, then the smaller generator string.
    fn beats(&self, other: &Candidate) -> bool {
        (self.params.min_distance, &other.generator) > (other.params.min_distance, &self.generator)
    }
}

type Cells = BTreeMap<(usize, usize), Candidate>;

fn offer(cells: &mut Cells, c: Candidate) {
    let key = (c.params.length, c.params.dimension);
    match cells.get(&key) {
        Some(cur) if !c.beats(cur) => {}
        _ => {
            cells.insert(key, c);
        }
    }
}

fn merge_cells(mut a: Cells, b: Cells) -> Cells {
    for c in b.into_values() {
        offer(&mut a, c);
    }
    a
}

fn decode_candidate(k: u32, mut index: u64, ell: usize, m: usize) -> Vec<Vec<RingElement>> {
    let width = basis_len(k);
    let mask = (1u64 << width) - 1;
    (0..ell)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let e = RingElement::new(k, index & mask).expect("masked word");
                    index >>= width;
                    e
                })
                .collect()
        })
        .collect()
}

fn evaluate(
    k: u32,
    lambda: RingElement,
    blocks: Vec<Vec<RingElement>>,
    table: &GrayTable,
    notation: Notation,
    budget: u64,
) -> Result<Option<Candidate>> {
    let (ell, m) = (blocks.len(), blocks[0].len());
    let code = QtCode::new(k, lambda, ell, m, vec![blocks])?;
    let image = code.binary_image(table)?;
    if image.dimension() == 0 {
        return Ok(None);
    }
    let params = image.parameters(budget)?;
    let generator = format_generator(&code.generators()[0], notation)?;
    Ok(Some(Candidate {
        params,
        generator,
        code,
    }))
}

/// Searches one-generator QT codes and keeps the best minimum distance for
/// each `(length, dimension)`. The result depends only on the config.
pub fn search(config: &SearchConfig, jobs: usize) -> Result<Vec<CodeRecord>> {
    let k = config.k;
    let notation = Notation::default_for(k);
    let table = GrayTable::new(k)?;
    let width = basis_len(k) as u32;
    let mut cells = Cells::new();
    for lambda_text in &config.lambdas {
        let lambda = parse_element(lambda_text, k, notation)?;
        lambda.require_unit()?;
        for &ell in &config.ells {
            for &m in &config.ms {
                if ell == 0 || m == 0 {
                    return Err(Error::param("index and coindex must be positive"));
                }
                let symbols = (ell * m) as u32;
                let found = match config.mode {
                    SearchMode::Exhaustive => {
                        let bits = width * symbols;
                        if bits >= 64 || (1u64 << bits) > config.exhaustive_cap {
                            return Err(Error::Budget(format!(
                                "exhaustive search over 2^{bits} tuples exceeds the cap of {}",
                                config.exhaustive_cap
                            )));
                        }
                        let total = 1u64 << bits;
                        with_jobs(jobs, || {
                            (1..total)
                                .into_par_iter()
                                .filter_map(|idx| {
                                    let blocks = decode_candidate(k, idx, ell, m);
                                    let canonical =
                                        blocks.iter().all(|b| canonical_block(b, &lambda) == *b);
                                    canonical.then_some(blocks)
                                })
                                .map(|b| evaluate(k, lambda, b, &table, notation, config.budget))
                                .try_fold(Cells::new, |mut acc, c| {
                                    if let Some(c) = c? {
                                        offer(&mut acc, c);
                                    }
                                    Ok::<_, Error>(acc)
                                })
                                .try_reduce(Cells::new, |a, b| Ok(merge_cells(a, b)))
                        })?
                    }
                    SearchMode::Random => {
                        // Draw sequentially so the candidate list never depends on `jobs`.
                        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                        let draws: Vec<Vec<Vec<RingElement>>> = (0..config.samples)
                            .map(|_| {
                                (0..ell)
                                    .map(|_| {
                                        let block: Vec<RingElement> = (0..m)
                                            .map(|_| {
                                                let c = rng.gen_range(0..1u64 << width);
                                                RingElement::new(k, c).expect("in range")
                                            })
                                            .collect();
                                        canonical_block(&block, &lambda)
                                    })
                                    .collect()
                            })
                            .collect();
                        with_jobs(jobs, || {
                            draws
                                .into_par_iter()
                                .map(|b| evaluate(k, lambda, b, &table, notation, config.budget))
                                .try_fold(Cells::new, |mut acc, c| {
                                    if let Some(c) = c? {
                                        offer(&mut acc, c);
                                    }
                                    Ok::<_, Error>(acc)
                                })
                                .try_reduce(Cells::new, |a, b| Ok(merge_cells(a, b)))
                        })?
                    }
                };
                cells = merge_cells(cells, found);
            }
        }
    }
    let provenance = Provenance {
        seed: config.seed,
        config_hash: config.config_hash(),
    };
    // BTreeMap order is (length, dimension); one entry per cell.
    cells
        .into_values()
        .map(|c| {
            let mut record = c.code.record(&table, notation, config.budget, 1)?;
            record.provenance = Some(provenance.clone());
            Ok(record)
        })
        .collect()
}

/// `search` rendered as JSON lines.
pub fn search_json_lines(config: &SearchConfig, jobs: usize) -> Result<String> {
    let mut out = String::new();
    for r in search(config, jobs)? {
        out.push_str(&serde_json::to_string(&r).map_err(|e| Error::Io(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::DEFAULT_BUDGET;

    #[test]
    fn fixtures_load() {
        let rows = builtin_tables();
        assert_eq!(rows.len(), 45);
        for t in 1..=3u8 {
            let count = rows.iter().filter(|r| r.table == t).count();
            assert_eq!(count, [21, 14, 10][t as usize - 1]);
        }
        for r in &rows {
            let code = r.code().unwrap();
            assert_eq!(r.n, (2 * gamma(r.k)) as usize * r.ell * r.m);
            assert_eq!(code.length(), r.ell * r.m);
        }
        assert!(rows.iter().any(|r| r.notes.starts_with("best-known")));
        assert_eq!(rows.iter().filter(|r| r.notes == "---").count(), 3);
    }

    #[test]
    fn malformed_fixture_is_a_parse_error() {
        let bad = "table,k,lambda,ell,m,generator,n,dim,d,notes\n1,1,3,x,2,(0u),12,2,8,\n";
        assert!(matches!(parse_tables(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn verify_table_examples() {
        let rows = builtin_tables();
        let pick = |g: &str| rows.iter().find(|r| r.generator == g).unwrap().clone();
        for (g, params) in [
            ("(088)", "[24,2,16]"),
            ("(001|113|1u1)", "[18,6,8]"),
            ("(f539|b579)", "[64,7,32]"),
        ] {
            let rep = verify_tables(&[pick(g)], &[], DEFAULT_BUDGET, 1);
            assert_eq!(rep[0].status, RowStatus::Match, "{g}: {:?}", rep[0]);
            assert_eq!(rep[0].computed.unwrap().to_string(), params);
        }
        let rep = verify_tables(&[pick("(f539|b579)")], &[], DEFAULT_BUDGET, 1);
        assert_eq!(rep[0].qc_index, Some(16));
    }

    #[test]
    fn aaa2_row_computes_differently() {
        // Listed as [64,5,32]; the image actually generated is [64,6,16].
        let row = builtin_tables()
            .into_iter()
            .find(|r| r.generator == "(aaa2|4e4e)")
            .unwrap();
        let rep = verify_tables(&[row], &[], DEFAULT_BUDGET, 1);
        assert_eq!(rep[0].status, RowStatus::Mismatch);
        assert_eq!(rep[0].computed.unwrap().to_string(), "[64,6,16]");
        assert_eq!(rep[0].self_orthogonal, Some(true));
    }

    #[test]
    fn mismatches_are_reported_not_fatal() {
        let mut row = builtin_tables()[0].clone();
        row.d = 9;
        let mut broken = row.clone();
        broken.generator = "(0q|0u|uu)".into();
        let rep = verify_tables(&[row, broken], &[], DEFAULT_BUDGET, 1);
        assert_eq!(rep[0].status, RowStatus::Mismatch);
        assert_eq!(rep[1].status, RowStatus::Error);
    }

    #[test]
    fn repetition_examples() {
        for (k, n, params) in [
            (2, 3, "[24,4,12]"),
            (3, 1, "[128,8,64]"),
            (2, 7, "[56,4,28]"),
        ] {
            let (code, expected) = repetition_code_family(k, n).unwrap();
            assert_eq!(expected.to_string(), params);
            let img = code.binary_image(&GrayTable::new(k).unwrap()).unwrap();
            assert_eq!(img.parameters(DEFAULT_BUDGET).unwrap(), expected);
            if k >= 2 {
                assert!(img.is_self_orthogonal());
            }
        }
    }

    #[test]
    fn six_m_examples() {
        let t = GrayTable::new(1).unwrap();
        for (m, params) in [(2, "[12,2,8]"), (5, "[30,2,20]"), (1, "[6,2,4]")] {
            let (code, expected) = six_m_family(m).unwrap();
            assert_eq!(expected.to_string(), params);
            let img = code.binary_image(&t).unwrap();
            assert_eq!(img.parameters(DEFAULT_BUDGET).unwrap(), expected);
            assert_eq!(
                griesmer_length(2, expected.min_distance),
                expected.length as u64
            );
        }
        let (code, _) = six_m_family(5).unwrap();
        assert_eq!(
            code.generator_strings(Notation::R1).unwrap(),
            vec!["(13131|13131|uuuuu)"]
        );
    }

    #[test]
    fn griesmer_values() {
        assert_eq!(griesmer_length(4, 8), 15);
        assert_eq!(griesmer_length(2, 20), 30);
        assert_eq!(griesmer_length(1, 5), 5);
    }

    #[test]
    fn bound_examples() {
        let (rep, _) = repetition_code_family(2, 1).unwrap();
        let b = bound_check(&rep, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (b.residue_distance, b.hom_distance, b.lower, b.upper),
            (Some(1), 4, Some(4), Some(8))
        );
        assert!(b.holds());

        let zero_res = QtCode::parse(1, "3", "(0u|0u|uu)", Notation::R1).unwrap();
        let b = bound_check(&zero_res, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.residue_distance, None);
        assert_eq!(b.generator_upper, None);
        assert!(b.holds());
        assert_eq!(b.notes.len(), 2);

        let cyc = QtCode::parse(2, "1", "(135)", Notation::Hex).unwrap();
        let b = bound_check(&cyc, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (b.residue_distance, b.hom_distance, b.lower),
            (Some(3), 8, Some(12))
        );
        assert!(!b.lower_holds() && !b.holds());
        assert!(b.unit_residue_lower_holds() && b.upper_holds() && b.generator_upper_holds());

        let t3 = QtCode::parse(2, "1", "(231|f87|bc7)", Notation::Hex).unwrap();
        let b = bound_check(&t3, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.hom_distance, 32);
        assert!(b.holds());
    }

    #[test]
    fn residue_lower_bound_needs_unit_support() {
        // span{(1,1,0), (u,0,0)} over R_2: residue distance 2, but (u,0,0) has weight 4 < 2γ.
        let one = RingElement::one(2);
        let zero = RingElement::zero(2);
        let u = RingElement::monomial(2, 1);
        let code = crate::codes::RkCode::new(2, 3, vec![vec![one, one, zero], vec![u, zero, zero]])
            .unwrap();
        let d = code.residue_code().min_distance(DEFAULT_BUDGET).unwrap();
        let dhom = code
            .hom_weight_enumerator(DEFAULT_BUDGET, 1)
            .unwrap()
            .min_nonzero_weight()
            .unwrap();
        assert_eq!((d, dhom), (2, 4));
        assert!(dhom < gamma(2) * d);
    }

    #[test]
    fn canonical_blocks() {
        let lambda = RingElement::new(1, 3).unwrap();
        let b = crate::notation::parse_block("u0", 1, Notation::R1).unwrap();
        assert_eq!(
            canonical_block(&b, &lambda),
            crate::notation::parse_block("0u", 1, Notation::R1).unwrap()
        );
    }

    #[test]
    fn exhaustive_search_recovers_small_rows() {
        let out = search(&SearchConfig::exhaustive(1, "3", 3, 2), 2).unwrap();
        let params: Vec<String> = out
            .iter()
            .map(|r| {
                format!(
                    "[{},{},{}]",
                    r.image.length,
                    r.image.dimension,
                    r.image.min_distance.unwrap()
                )
            })
            .collect();
        assert!(params.contains(&"[12,2,8]".to_string()), "{params:?}");
        assert!(params.contains(&"[12,4,6]".to_string()), "{params:?}");

        let out = search(&SearchConfig::exhaustive(2, "1", 1, 2), 1).unwrap();
        assert!(out
            .iter()
            .any(|r| r.image.dimension == 4 && r.image.min_distance == Some(8)));
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        let mut cfg = SearchConfig::exhaustive(2, "1", 2, 4);
        cfg.exhaustive_cap = 1 << 20;
        assert!(matches!(search(&cfg, 1), Err(Error::Budget(_))));
    }

    #[test]
    fn random_search_is_deterministic() {
        let cfg = SearchConfig::random(2, "1", 2, 3, 200, 7);
        let a = search_json_lines(&cfg, 1).unwrap();
        let b = search_json_lines(&cfg, 4).unwrap();
        assert_eq!(a, b);
        let c = search_json_lines(
            &SearchConfig {
                seed: 8,
                ..cfg.clone()
            },
            1,
        )
        .unwrap();
        assert!(!c.is_empty());
        assert_ne!(
            cfg.config_hash(),
            SearchConfig { seed: 8, ..cfg }.config_hash()
        );
    }
}
