//! Code-table ingestion and validation: parse `n,k,d_lower,d_upper`
//! records, compute the approximation error against entries whose optimal
//! distance is known exactly, and confirm fixture ground truth with a
//! brute-force minimum-distance search over small generator matrices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::approx;

/// Largest generator-matrix dimension the brute-force search will accept
/// (2^k codeword enumerations).
pub const MAX_BRUTE_FORCE_K: usize = 24;

/// Errors produced by table parsing, validation and the distance oracle.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: invalid entry: {msg}")]
    InvalidEntry { line: usize, msg: String },
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("no exact entries to validate")]
    NoExactEntries,
    #[error("matrix has k={k} rows; enumeration supports k <= {MAX_BRUTE_FORCE_K}")]
    EnumerationBudget { k: usize },
    #[error("generator rows are linearly dependent over GF(2)")]
    RankDeficient,
    #[error("matrix line {line}: {msg}")]
    MatrixFormat { line: usize, msg: String },
}

/// One code-table record: block length, dimension, and the best known
/// lower/upper bounds on the optimal minimum distance. The entry is exact
/// when the two bounds coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeTableEntry {
    pub n: u64,
    pub k: u64,
    pub d_lower: u64,
    pub d_upper: u64,
}

impl CodeTableEntry {
    pub fn new(n: u64, k: u64, d_lower: u64, d_upper: u64) -> Result<Self, TableError> {
        let entry = Self {
            n,
            k,
            d_lower,
            d_upper,
        };
        if k < 1 || k > n {
            return Err(TableError::InvalidParams(format!(
                "k={k} outside [1, n={n}]"
            )));
        }
        if d_lower < 1 || d_lower > d_upper || d_upper > n {
            return Err(TableError::InvalidParams(format!(
                "need 1 <= d_lower <= d_upper <= n, got {d_lower}..{d_upper} with n={n}"
            )));
        }
        Ok(entry)
    }

    /// True when the optimal distance is pinned down (d_lower = d_upper).
    pub fn is_exact(&self) -> bool {
        self.d_lower == self.d_upper
    }
}

/// Parse a code table: one `n,k,d_lower,d_upper` record per line, base-10
/// integers, with a 3-field shorthand `n,k,d` meaning d_lower = d_upper.
/// Blank lines and `#` comments are skipped.
pub fn parse_table(input: &str) -> Result<Vec<CodeTableEntry>, TableError> {
    let mut entries = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if fields.len() != 3 && fields.len() != 4 {
            return Err(TableError::Parse {
                line,
                msg: format!("expected 3 or 4 comma-separated fields, got {}", fields.len()),
            });
        }
        let mut nums = [0u64; 4];
        for (slot, field) in nums.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| TableError::Parse {
                line,
                msg: format!("`{field}` is not a base-10 integer"),
            })?;
        }
        let (n, k, d_lower) = (nums[0], nums[1], nums[2]);
        let d_upper = if fields.len() == 4 { nums[3] } else { d_lower };
        let entry = CodeTableEntry::new(n, k, d_lower, d_upper).map_err(|e| {
            TableError::InvalidEntry {
                line,
                msg: e.to_string(),
            }
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

/// Signed approximation error e = dmin(n, k) - d_lower, in codeword
/// symbols. For exact entries d_lower is the true optimum. Returns None
/// when `exact_required` is set and the entry is only a bound range.
pub fn approximation_error(entry: &CodeTableEntry, exact_required: bool) -> Option<f64> {
    if exact_required && !entry.is_exact() {
        return None;
    }
    let predicted =
        approx::dmin(entry.n, entry.k as f64).expect("entry invariants give 0 < k <= n");
    Some(predicted - entry.d_lower as f64)
}

/// Per-entry signed error within a [`ValidationReport`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryError {
    pub n: u64,
    pub k: u64,
    pub error: f64,
}

/// Accuracy report over the exact entries of a table: the signed errors,
/// a unit-wide histogram binned by floor(e), and the fractions with
/// |e| < 1 and |e| < 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub entries_evaluated: usize,
    pub errors: Vec<EntryError>,
    pub histogram: BTreeMap<i64, usize>,
    pub frac_within_1: f64,
    pub frac_within_2: f64,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "entries={}", self.entries_evaluated)?;
        writeln!(f, "frac_within_1={:.3}", self.frac_within_1)?;
        writeln!(f, "frac_within_2={:.3}", self.frac_within_2)?;
        writeln!(f, "bin,count")?;
        for (bin, count) in &self.histogram {
            writeln!(f, "{bin},{count}")?;
        }
        Ok(())
    }
}

/// Evaluate the approximation error on every exact entry and assemble the
/// accuracy report. Entries that are only bound ranges are skipped; a
/// table with no exact entries is an error.
pub fn validate(entries: &[CodeTableEntry]) -> Result<ValidationReport, TableError> {
    let mut errors = Vec::new();
    for entry in entries {
        if let Some(error) = approximation_error(entry, true) {
            errors.push(EntryError {
                n: entry.n,
                k: entry.k,
                error,
            });
        }
    }
    if errors.is_empty() {
        return Err(TableError::NoExactEntries);
    }
    let mut histogram: BTreeMap<i64, usize> = BTreeMap::new();
    for e in &errors {
        *histogram.entry(e.error.floor() as i64).or_insert(0) += 1;
    }
    let total = errors.len();
    let within = |limit: f64| {
        errors.iter().filter(|e| e.error.abs() < limit).count() as f64 / total as f64
    };
    Ok(ValidationReport {
        entries_evaluated: total,
        frac_within_1: within(1.0),
        frac_within_2: within(2.0),
        histogram,
        errors,
    })
}

/// A k x n generator matrix over GF(2), bit-packed one row per `Vec<u64>`.
/// Construction enforces full row rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    n: usize,
    k: usize,
    rows: Vec<Vec<u64>>,
}

const WORD_BITS: usize = 64;

impl GeneratorMatrix {
    /// Build from rows of 0/1 entries, all of length n.
    pub fn from_bit_rows(n: usize, bit_rows: &[Vec<u8>]) -> Result<Self, TableError> {
        if n == 0 || bit_rows.is_empty() {
            return Err(TableError::InvalidParams(
                "matrix needs n >= 1 and k >= 1".into(),
            ));
        }
        let k = bit_rows.len();
        if k > n {
            return Err(TableError::InvalidParams(format!(
                "k={k} rows exceed n={n} columns"
            )));
        }
        let words = n.div_ceil(WORD_BITS);
        let mut rows = Vec::with_capacity(k);
        for bits in bit_rows {
            if bits.len() != n {
                return Err(TableError::InvalidParams(format!(
                    "row has {} entries, expected {n}",
                    bits.len()
                )));
            }
            let mut row = vec![0u64; words];
            for (j, &bit) in bits.iter().enumerate() {
                match bit {
                    0 => {}
                    1 => row[j / WORD_BITS] |= 1u64 << (j % WORD_BITS),
                    _ => {
                        return Err(TableError::InvalidParams(format!(
                            "matrix entries must be 0 or 1, got {bit}"
                        )))
                    }
                }
            }
            rows.push(row);
        }
        if gf2_rank(&rows, n) != k {
            return Err(TableError::RankDeficient);
        }
        Ok(Self { n, k, rows })
    }

    /// Parse the fixture text format: a header line `n k`, then k rows of
    /// n characters from {0, 1} with no separators.
    pub fn parse(input: &str) -> Result<Self, TableError> {
        let mut lines = input.lines();
        let header = lines.next().ok_or(TableError::MatrixFormat {
            line: 1,
            msg: "missing `n k` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_dim = |field: Option<&str>| -> Result<usize, TableError> {
            field
                .and_then(|s| s.parse().ok())
                .ok_or(TableError::MatrixFormat {
                    line: 1,
                    msg: format!("header must be two integers `n k`, got `{header}`"),
                })
        };
        let n = parse_dim(parts.next())?;
        let k = parse_dim(parts.next())?;
        if parts.next().is_some() {
            return Err(TableError::MatrixFormat {
                line: 1,
                msg: format!("header must be two integers `n k`, got `{header}`"),
            });
        }

        let mut bit_rows = Vec::with_capacity(k);
        for (idx, raw) in lines.enumerate() {
            let line = idx + 2;
            let text = raw.trim_end();
            if text.is_empty() {
                continue;
            }
            if bit_rows.len() == k {
                return Err(TableError::MatrixFormat {
                    line,
                    msg: format!("more than k={k} rows"),
                });
            }
            let mut bits = Vec::with_capacity(n);
            for ch in text.chars() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    _ => {
                        return Err(TableError::MatrixFormat {
                            line,
                            msg: format!("unexpected character `{ch}`"),
                        })
                    }
                }
            }
            if bits.len() != n {
                return Err(TableError::MatrixFormat {
                    line,
                    msg: format!("row has {} columns, expected {n}", bits.len()),
                });
            }
            bit_rows.push(bits);
        }
        if bit_rows.len() != k {
            return Err(TableError::MatrixFormat {
                line: input.lines().count() + 1,
                msg: format!("expected k={k} rows, got {}", bit_rows.len()),
            });
        }
        Self::from_bit_rows(n, &bit_rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

fn gf2_rank(rows: &[Vec<u64>], n: usize) -> usize {
    let mut work = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let (word, bit) = (col / WORD_BITS, col % WORD_BITS);
        let Some(pivot) = (rank..work.len()).find(|&i| work[i][word] >> bit & 1 == 1) else {
            continue;
        };
        work.swap(rank, pivot);
        let pivot_row = work[rank].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != rank && row[word] >> bit & 1 == 1 {
                for (w, p) in row.iter_mut().zip(&pivot_row) {
                    *w ^= p;
                }
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Minimum distance by exhausting all 2^k - 1 nonzero information words in
/// Gray-code order (one row XOR per step). For a full-rank generator this
/// equals the minimum nonzero codeword weight, which for a linear code is
/// the minimum pairwise distance.
pub fn brute_force_min_distance(g: &GeneratorMatrix) -> Result<u64, TableError> {
    if g.k > MAX_BRUTE_FORCE_K {
        return Err(TableError::EnumerationBudget { k: g.k });
    }
    let mut acc = vec![0u64; g.rows[0].len()];
    let mut best = u64::MAX;
    for m in 1u64..1u64 << g.k {
        let row = &g.rows[m.trailing_zeros() as usize];
        let mut weight = 0u64;
        for (a, r) in acc.iter_mut().zip(row) {
            *a ^= r;
            weight += a.count_ones() as u64;
        }
        best = best.min(weight);
    }
    Ok(best)
}
