//! Exact nonnegative rational matrices and the semiring operations on them.
//!
//! `⊕` is the block-diagonal direct sum and `⊗` the Kronecker product. Every
//! entry is a reduced [`Rational`]; nothing in this module rounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Default cap on the number of cells `kron_power` may materialize.
pub const DEFAULT_CELL_BUDGET: usize = 5_000_000;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses a cell of the form `p`, or `p/q` with `q > 0`.
pub fn parse_rational(cell: &str) -> Result<Rational> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Err(Error::Parse("empty cell".into()));
    }
    let (numer, denom) = match cell.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (cell, None),
    };
    let numer = BigInt::from_str(numer)
        .map_err(|_| Error::Parse(format!("invalid numerator in {cell:?}")))?;
    let denom = match denom {
        Some(q) => {
            if q.starts_with('-') || q.starts_with('+') {
                return Err(Error::Parse(format!("signed denominator in {cell:?}")));
            }
            BigInt::from_str(q)
                .map_err(|_| Error::Parse(format!("invalid denominator in {cell:?}")))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {cell:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats a rational as `p` when integral and `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Serde adapter emitting rationals as `"p/q"` strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            other => Err(Error::Parse(format!("unknown matrix format {other:?}"))),
        }
    }
}

/// Dense matrix over the nonnegative rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NonnegativeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl NonnegativeMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| x.is_negative()) {
            return Err(Error::Domain(format!(
                "negative entry {} at ({}, {})",
                format_rational(&data[pos]),
                pos / cols,
                pos % cols
            )));
        }
        Ok(NonnegativeMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "ragged rows: row {bad} has {} cells, expected {n}",
                rows[bad].len()
            )));
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        NonnegativeMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// The 0x0 matrix, canonical representative of the zero class.
    pub fn empty() -> Self {
        Self::zeros(0, 0)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Diagonal matrix with the given (nonnegative) diagonal.
    pub fn diagonal(diag: &[Rational]) -> Result<Self> {
        let n = diag.len();
        let mut data = vec![Rational::zero(); n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = d.clone();
        }
        Self::new(n, n, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn checked_get(&self, i: usize, j: usize) -> Result<&Rational> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.get(i, j))
    }

    pub fn is_positive(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_positive()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| x.is_positive()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        NonnegativeMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Ordinary matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![Rational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(NonnegativeMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `X · self · Yᵀ`.
    pub fn sandwich(&self, left: &Self, right: &Self) -> Result<Self> {
        left.mul(self)?.mul(&right.transpose())
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self> {
        Self::new(self.rows, self.cols, self.data.iter().map(|x| x * factor).collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        NonnegativeMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Block-diagonal `self ⊕ other`, of size `(m_A+m_B) x (n_A+n_B)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] · other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `self^{⊗n}`, refusing results with more than `cell_budget` cells.
    pub fn kron_power(&self, n: usize, cell_budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("Kronecker power must be at least 1".into()));
        }
        let cells = (self.rows as u128)
            .checked_pow(n as u32)
            .zip((self.cols as u128).checked_pow(n as u32))
            .and_then(|(r, c)| r.checked_mul(c));
        match cells {
            Some(c) if c <= cell_budget as u128 => {}
            _ => {
                return Err(Error::Budget(format!(
                    "{}x{} matrix to the Kronecker power {n} exceeds the cell budget of {cell_budget}",
                    self.rows, self.cols
                )))
            }
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.kronecker(self);
        }
        Ok(acc)
    }

    /// Rows and columns permuted so that `out[row_perm[i]][col_perm[j]] = self[i][j]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[row_perm[i] * self.cols + col_perm[j]] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn support(&self) -> SupportPattern {
        SupportPattern {
            rows: self.rows,
            cols: self.cols,
            cells: self.data.iter().map(Signed::is_positive).collect(),
        }
    }

    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row(i).iter().any(Signed::is_positive))
            .collect()
    }

    pub fn nonzero_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| self.is_positive(i, j)))
            .collect()
    }

    /// Restriction to the rows and columns that carry a positive entry.
    pub fn strip_zero_lines(&self) -> Stripped {
        let kept_rows = self.nonzero_rows();
        let kept_cols = self.nonzero_cols();
        let core = if kept_rows.is_empty() {
            Self::empty()
        } else {
            self.submatrix(&kept_rows, &kept_cols)
        };
        Stripped {
            core,
            kept_rows,
            kept_cols,
        }
    }

    pub fn parse(text: &str, format: MatrixFormat) -> Result<Self> {
        match format {
            MatrixFormat::Csv => Self::parse_csv(text),
            MatrixFormat::Json => Self::parse_json(text),
        }
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| line.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("no rows in CSV input".into()));
        }
        Self::from_rows(rows)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid matrix JSON: {e}")))?;
        doc.into_matrix()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serialization is infallible")
    }
}

impl fmt::Debug for NonnegativeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NonnegativeMatrix({}x{}) [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "[{}]", line.join(", "))?;
            if i + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Cell>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Int(i64),
    Text(String),
}

impl MatrixDoc {
    fn into_matrix(self) -> Result<NonnegativeMatrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Parse(format!(
                "declared {} rows but found {}",
                self.rows,
                self.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.into_iter().enumerate() {
            if row.len() != self.cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} cells, expected {}",
                    row.len(),
                    self.cols
                )));
            }
            for cell in row {
                data.push(match cell {
                    Cell::Int(v) => int(v),
                    Cell::Text(s) => parse_rational(&s)?,
                });
            }
        }
        NonnegativeMatrix::new(self.rows, self.cols, data)
    }
}

impl Serialize for NonnegativeMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| Cell::Text(format_rational(x))).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NonnegativeMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixDoc::deserialize(d)?
            .into_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// Result of [`NonnegativeMatrix::strip_zero_lines`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub core: NonnegativeMatrix,
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
}

/// The positivity pattern of a matrix. Also read as a bipartite graph
/// between row vertices and column vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportPattern {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl SupportPattern {
    pub fn new(rows: usize, cols: usize) -> Self {
        SupportPattern {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut s = Self::new(rows, cols);
        for (i, j) in cells {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            s.cells[i * cols + j] = true;
        }
        Ok(s)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.rows && j < self.cols && self.cells[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.cells[i * self.cols + j] = value;
    }

    /// Support cells in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.cells[i * self.cols + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn row_cells(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cols).filter(move |&j| self.cells[i * self.cols + j])
    }

    pub fn col_cells(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows).filter(move |&i| self.cells[i * self.cols + j])
    }

    /// Connected components of the bipartite support graph as `(rows, cols)`
    /// index lists, ordered by their smallest row. Zero rows and columns
    /// belong to no component.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut row_seen = vec![false; self.rows];
        let mut col_seen = vec![false; self.cols];
        let mut out = Vec::new();
        for start in 0..self.rows {
            if row_seen[start] || self.row_cells(start).next().is_none() {
                continue;
            }
            let (mut rows, mut cols) = (vec![start], Vec::new());
            row_seen[start] = true;
            let mut stack = vec![(true, start)];
            while let Some((is_row, v)) = stack.pop() {
                if is_row {
                    for j in self.row_cells(v) {
                        if !col_seen[j] {
                            col_seen[j] = true;
                            cols.push(j);
                            stack.push((false, j));
                        }
                    }
                } else {
                    for i in self.col_cells(v) {
                        if !row_seen[i] {
                            row_seen[i] = true;
                            rows.push(i);
                            stack.push((true, i));
                        }
                    }
                }
            }
            rows.sort_unstable();
            cols.sort_unstable();
            out.push((rows, cols));
        }
        out
    }

    /// The 0/1 matrix of this pattern.
    pub fn to_binary_matrix(&self) -> NonnegativeMatrix {
        NonnegativeMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .cells
                .iter()
                .map(|&c| if c { Rational::one() } else { Rational::zero() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn csv_parses_rationals() {
        let a = NonnegativeMatrix::parse("1,1/2\n0,3", MatrixFormat::Csv).unwrap();
        assert_eq!(a.get(0, 1), &rational(1, 2));
        assert_eq!(a.get(1, 1), &int(3));
        assert_eq!(a.get(1, 0), &int(0));
        let b = NonnegativeMatrix::parse("2/4", MatrixFormat::Csv).unwrap();
        assert_eq!(b.get(0, 0).denom(), &BigInt::from(2));
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(matches!(
            NonnegativeMatrix::parse("1,-1", MatrixFormat::Csv),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            NonnegativeMatrix::parse("1/0", MatrixFormat::Csv),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            NonnegativeMatrix::parse("1,2\n3", MatrixFormat::Csv),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            NonnegativeMatrix::parse("1,x", MatrixFormat::Csv),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn json_parses_zero_matrix() {
        let a = NonnegativeMatrix::parse(r#"{"rows":1,"cols":1,"entries":[["0"]]}"#, MatrixFormat::Json).unwrap();
        assert_eq!(a, NonnegativeMatrix::zeros(1, 1));
        let b = NonnegativeMatrix::parse(r#"{"rows":1,"cols":2,"entries":[[3,"1/3"]]}"#, MatrixFormat::Json).unwrap();
        assert_eq!(b.get(0, 0), &int(3));
        assert!(NonnegativeMatrix::parse(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#, MatrixFormat::Json).is_err());
        assert!(matches!(
            NonnegativeMatrix::parse(r#"{"rows":1,"cols":1,"entries":[["-2/3"]]}"#, MatrixFormat::Json),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(NonnegativeMatrix::identity(1).direct_sum(&NonnegativeMatrix::identity(1)), NonnegativeMatrix::identity(2));
        assert_eq!(m(&[&[1]]).direct_sum(&m(&[&[2, 3]])), m(&[&[1, 0, 0], &[0, 2, 3]]));
        let a = m(&[&[1, 2], &[3, 4]]);
        let padded = a.direct_sum(&NonnegativeMatrix::zeros(2, 3));
        assert_eq!(padded.shape(), (4, 5));
        assert_eq!(padded.submatrix(&[0, 1], &[0, 1]), a);
        assert_eq!(padded.nnz(), 4);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(
            NonnegativeMatrix::identity(2).kronecker(&NonnegativeMatrix::identity(3)),
            NonnegativeMatrix::identity(6)
        );
        let a = m(&[&[1, 2], &[0, 1]]);
        assert_eq!(a.kronecker(&m(&[&[0]])), NonnegativeMatrix::zeros(2, 2));
        assert_eq!(
            a.kronecker(&m(&[&[1], &[1]])),
            m(&[&[1, 2], &[1, 2], &[0, 1], &[0, 1]])
        );
    }

    #[test]
    fn kron_power_examples() {
        let i2 = NonnegativeMatrix::identity(2);
        assert_eq!(i2.kron_power(3, DEFAULT_CELL_BUDGET).unwrap(), NonnegativeMatrix::identity(8));
        assert_eq!(m(&[&[2]]).kron_power(4, DEFAULT_CELL_BUDGET).unwrap(), m(&[&[16]]));
        let a = m(&[&[1, 3], &[2, 0]]);
        assert_eq!(a.kron_power(1, 10).unwrap(), a);
        assert_eq!(a.kron_power(2, 100).unwrap(), a.kronecker(&a));
        assert!(a.kron_power(0, 100).is_err());
        assert!(a.kron_power(3, 63).unwrap_err().is_budget());
        assert!(a.kron_power(64, DEFAULT_CELL_BUDGET).unwrap_err().is_budget());
    }

    #[test]
    fn support_examples() {
        assert_eq!(NonnegativeMatrix::identity(2).support().cells(), vec![(0, 0), (1, 1)]);
        assert!(NonnegativeMatrix::zeros(2, 2).support().is_empty());
        let ex = m(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 1]]);
        assert_eq!(ex.support().len(), 9);
    }

    #[test]
    fn strip_zero_lines_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let s = a.direct_sum(&NonnegativeMatrix::zeros(2, 3)).strip_zero_lines();
        assert_eq!(s.core, a);
        assert_eq!(s.kept_rows, vec![0, 1]);
        assert_eq!(s.kept_cols, vec![0, 1]);
        let s = NonnegativeMatrix::identity(3).strip_zero_lines();
        assert_eq!(s.core, NonnegativeMatrix::identity(3));
        let s = m(&[&[0, 1], &[0, 0]]).strip_zero_lines();
        assert_eq!((s.core, s.kept_rows, s.kept_cols), (m(&[&[1]]), vec![0], vec![1]));
        assert_eq!(NonnegativeMatrix::zeros(3, 2).strip_zero_lines().core, NonnegativeMatrix::empty());
    }

    #[test]
    fn components_of_direct_sums() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[2]]);
        let s = a.direct_sum(&NonnegativeMatrix::zeros(1, 1)).direct_sum(&b).support();
        assert_eq!(s.components(), vec![(vec![0, 1], vec![0, 1]), (vec![3], vec![3])]);
        assert_eq!(NonnegativeMatrix::identity(3).support().components().len(), 3);
    }

    #[test]
    fn serialization_emits_reduced_strings() {
        let a = NonnegativeMatrix::parse("2/4,3\n0,7/1", MatrixFormat::Csv).unwrap();
        assert_eq!(a.to_csv(), "1/2,3\n0,7\n");
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"rows":2,"cols":2,"entries":[["1/2","3"],["0","7"]]}"#
        );
    }
}
