//! Sign sequences, the skew and symmetric defining rows built from them,
//! 3-compression, and the `+`/`-` text format used for row files.
//!
//! Indices are always reduced modulo the sequence length into `0..n`.
//!
//! Every sequence type here orders its entries *descending* by value when
//! compared: `+1 < -1` for sign sequences and `+3 < +1 < -1 < -3` for
//! compressed rows. That is the byte order of the text encoding (`'+' < '-'`),
//! so sorting rows in memory and sorting the lines of a row file agree.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Lexicographic comparison with entries ordered by descending value.
fn cmp_descending(lhs: &[i8], rhs: &[i8]) -> Ordering {
    lhs.iter().map(|&x| Reverse(x)).cmp(rhs.iter().map(|&x| Reverse(x)))
}

/// Sum of the entries of any integer row.
pub fn rowsum(x: &impl AsRef<[i8]>) -> i32 {
    x.as_ref().iter().map(|&v| i32::from(v)).sum()
}

/// A nonempty sequence of `+1`/`-1` entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PmSequence(Vec<i8>);

impl PmSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("sequence must have at least one entry");
        }
        if let Some(pos) = entries.iter().position(|&v| v != 1 && v != -1) {
            return invalid(format!("entry {pos} is {}, expected +1 or -1", entries[pos]));
        }
        Ok(PmSequence(entries))
    }

    /// All-ones sequence of length `n`.
    pub fn ones(n: usize) -> Self {
        assert!(n > 0);
        PmSequence(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    /// Entry at `i mod n`.
    pub fn at(&self, i: usize) -> i8 {
        self.0[i % self.0.len()]
    }

    pub fn negated(&self) -> Self {
        PmSequence(self.0.iter().map(|&v| -v).collect())
    }

    pub fn rowsum(&self) -> i32 {
        rowsum(self)
    }

    pub fn is_skew(&self) -> bool {
        let n = self.len();
        self.0[0] == 1 && (1..n).all(|i| self.0[i] == -self.0[n - i])
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (1..n).all(|i| self.0[i] == self.0[n - i])
    }

    pub fn into_entries(self) -> Vec<i8> {
        self.0
    }
}

impl AsRef<[i8]> for PmSequence {
    fn as_ref(&self) -> &[i8] {
        &self.0
    }
}

impl Ord for PmSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_descending(&self.0, &other.0)
    }
}

impl PartialOrd for PmSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PmSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_row(self))
    }
}

/// Parses a row written with `+` for 1 and `-` (or the typographic minus `−`) for -1.
pub fn parse_row(text: &str) -> Result<PmSequence> {
    let entries = text
        .chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            '+' => Ok(1),
            '-' | '−' => Ok(-1),
            found => Err(Error::Parse { position, found }),
        })
        .collect::<Result<Vec<i8>>>()?;
    PmSequence::new(entries)
}

/// Formats a row as ASCII `+`/`-`.
pub fn format_row(x: &PmSequence) -> String {
    x.0.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect()
}

/// Defining row of a circulant skew matrix: `x_0 = 1` and `x_i = -x_{n-i}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SkewRow(PmSequence);

/// Defining row of a circulant symmetric matrix with `x_0 = 1` and `x_i = x_{n-i}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymRow(PmSequence);

macro_rules! row_common {
    ($ty:ident) => {
        impl $ty {
            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn seq(&self) -> &PmSequence {
                &self.0
            }

            pub fn entries(&self) -> &[i8] {
                self.0.entries()
            }

            pub fn at(&self, i: usize) -> i8 {
                self.0.at(i)
            }

            /// The `⌊n/2⌋` entries after the leading `+1` that determine the row.
            pub fn half(&self) -> &[i8] {
                &self.0.entries()[1..=self.len() / 2]
            }

            pub fn into_seq(self) -> PmSequence {
                self.0
            }
        }

        impl AsRef<[i8]> for $ty {
            fn as_ref(&self) -> &[i8] {
                self.0.entries()
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

row_common!(SkewRow);
row_common!(SymRow);

impl SkewRow {
    pub fn from_seq(seq: PmSequence) -> Result<Self> {
        if seq.len().is_multiple_of(2) {
            return invalid(format!("skew row must have odd length, got {}", seq.len()));
        }
        if !seq.is_skew() {
            return invalid(format!("row {seq} is not skew"));
        }
        Ok(SkewRow(seq))
    }
}

impl SymRow {
    pub fn from_seq(seq: PmSequence) -> Result<Self> {
        if seq.len().is_multiple_of(2) {
            return invalid(format!("symmetric row must have odd length, got {}", seq.len()));
        }
        if seq.entries()[0] != 1 {
            return invalid(format!("symmetric row {seq} must start with +"));
        }
        if !seq.is_symmetric() {
            return invalid(format!("row {seq} is not symmetric"));
        }
        Ok(SymRow(seq))
    }
}

fn check_half(half: &[i8], n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        return invalid(format!("order must be odd, got {n}"));
    }
    if half.len() != n / 2 {
        return invalid(format!(
            "order {n} needs {} free entries, got {}",
            n / 2,
            half.len()
        ));
    }
    if half.iter().any(|&v| v != 1 && v != -1) {
        return invalid("free entries must be +1 or -1");
    }
    Ok(())
}

/// `(1, x_0, ..., x_{d-1}, -x_{d-1}, ..., -x_0)`
pub fn make_skew(half: &[i8], n: usize) -> Result<SkewRow> {
    check_half(half, n)?;
    let mut entries = Vec::with_capacity(n);
    entries.push(1);
    entries.extend_from_slice(half);
    entries.extend(half.iter().rev().map(|&v| -v));
    Ok(SkewRow(PmSequence(entries)))
}

/// `(1, x_0, ..., x_{d-1}, x_{d-1}, ..., x_0)`
pub fn make_symmetric(half: &[i8], n: usize) -> Result<SymRow> {
    check_half(half, n)?;
    let mut entries = Vec::with_capacity(n);
    entries.push(1);
    entries.extend_from_slice(half);
    entries.extend(half.iter().rev());
    Ok(SymRow(PmSequence(entries)))
}

/// Sequence of length `m` over `{±1, ±3}`, the 3-compression of a sign row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CompressedRow(Vec<i8>);

impl CompressedRow {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("compressed row must have at least one entry");
        }
        if let Some(pos) = entries.iter().position(|v| ![-3, -1, 1, 3].contains(v)) {
            return invalid(format!(
                "compressed entry {pos} is {}, expected one of ±1, ±3",
                entries[pos]
            ));
        }
        Ok(CompressedRow(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn at(&self, j: usize) -> i8 {
        self.0[j % self.0.len()]
    }

    pub fn rowsum(&self) -> i32 {
        rowsum(self)
    }

    /// `x_0 = 1` and `x_j = -x_{m-j}`, the shape of a compressed skew row.
    pub fn is_skew_like(&self) -> bool {
        let m = self.len();
        self.0[0] == 1 && (1..m).all(|j| self.0[j] == -self.0[m - j])
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.len();
        (1..m).all(|j| self.0[j] == self.0[m - j])
    }

    /// Row with entries `y_j = x_{u j mod m}`.
    pub fn permuted(&self, u: usize) -> Self {
        let m = self.len();
        CompressedRow((0..m).map(|j| self.0[(u * j) % m]).collect())
    }

    /// Parses comma-separated integers such as `1,3,-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i8>()
                    .map_err(|e| Error::InvalidInput(format!("bad compressed entry {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl AsRef<[i8]> for CompressedRow {
    fn as_ref(&self) -> &[i8] {
        &self.0
    }
}

impl Ord for CompressedRow {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_descending(&self.0, &other.0)
    }
}

impl PartialOrd for CompressedRow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CompressedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// 3-compression: entry `k` is `x_k + x_{k+m} + x_{k+2m}` with `m = n/3`.
pub fn compress3(x: &impl AsRef<[i8]>) -> Result<CompressedRow> {
    let x = x.as_ref();
    let n = x.len();
    if n == 0 || n % 3 != 0 {
        return invalid(format!("length {n} is not a positive multiple of 3"));
    }
    let m = n / 3;
    let entries = (0..m).map(|k| x[k] + x[k + m] + x[k + 2 * m]).collect();
    CompressedRow::new(entries)
}

/// Defining rows `A, B, C, D` of four circulant matrices of the same odd order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DefiningQuad {
    pub a: SkewRow,
    pub b: SymRow,
    pub c: SymRow,
    pub d: SymRow,
}

impl DefiningQuad {
    pub fn new(a: SkewRow, b: SymRow, c: SymRow, d: SymRow) -> Result<Self> {
        let n = a.len();
        if [b.len(), c.len(), d.len()].iter().any(|&l| l != n) {
            return invalid("all four rows must have the same length");
        }
        Ok(DefiningQuad { a, b, c, d })
    }

    /// Builds the quad from the free half-entries of each row.
    pub fn from_halves(n: usize, halves: [&[i8]; 4]) -> Result<Self> {
        Ok(DefiningQuad {
            a: make_skew(halves[0], n)?,
            b: make_symmetric(halves[1], n)?,
            c: make_symmetric(halves[2], n)?,
            d: make_symmetric(halves[3], n)?,
        })
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn sym_rows(&self) -> [&SymRow; 3] {
        [&self.b, &self.c, &self.d]
    }

    pub fn rows(&self) -> [&[i8]; 4] {
        [
            self.a.entries(),
            self.b.entries(),
            self.c.entries(),
            self.d.entries(),
        ]
    }

    pub fn to_row_quad(&self) -> RowQuad {
        RowQuad {
            a: self.a.seq().clone(),
            b: self.b.seq().clone(),
            c: self.c.seq().clone(),
            d: self.d.seq().clone(),
        }
    }

    pub fn compress(&self) -> Result<CompressedQuad> {
        CompressedQuad::new(
            compress3(&self.a)?,
            compress3(&self.b)?,
            compress3(&self.c)?,
            compress3(&self.d)?,
        )
    }
}

impl fmt::Display for DefiningQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.a)?;
        writeln!(f, "{}", self.b)?;
        writeln!(f, "{}", self.c)?;
        writeln!(f, "{}", self.d)
    }
}

/// Four unvalidated sign rows, as read from a row file.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RowQuad {
    pub a: PmSequence,
    pub b: PmSequence,
    pub c: PmSequence,
    pub d: PmSequence,
}

impl RowQuad {
    pub fn rows(&self) -> [&PmSequence; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// Compressions `A', B', C', D'` of the defining rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompressedQuad {
    pub a: CompressedRow,
    pub b: CompressedRow,
    pub c: CompressedRow,
    pub d: CompressedRow,
}

impl CompressedQuad {
    pub fn new(a: CompressedRow, b: CompressedRow, c: CompressedRow, d: CompressedRow) -> Result<Self> {
        let m = a.len();
        if [b.len(), c.len(), d.len()].iter().any(|&l| l != m) {
            return invalid("compressed rows must have the same length");
        }
        if !a.is_skew_like() {
            return invalid(format!("compressed row {a} is not the compression of a skew row"));
        }
        for row in [&b, &c, &d] {
            if !row.is_symmetric() {
                return invalid(format!("compressed row {row} is not symmetric"));
            }
        }
        Ok(CompressedQuad { a, b, c, d })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> [&CompressedRow; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl fmt::Display for CompressedQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {} | {}", self.a, self.b, self.c, self.d)
    }
}

/// Serializes quads as four `+`/`-` lines followed by a blank line each.
pub fn write_quads<'a>(quads: impl IntoIterator<Item = &'a RowQuad>) -> String {
    let mut out = String::new();
    for q in quads {
        for row in q.rows() {
            out.push_str(&format_row(row));
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Reads a row file. Blank lines separate quads; lines starting with `#` are ignored.
pub fn read_quads(text: &str) -> Result<Vec<RowQuad>> {
    let mut quads = Vec::new();
    let mut pending: Vec<PmSequence> = Vec::with_capacity(4);
    let mut flush = |pending: &mut Vec<PmSequence>, line: usize| -> Result<()> {
        match pending.len() {
            0 => Ok(()),
            4 => {
                let mut it = pending.drain(..);
                quads.push(RowQuad {
                    a: it.next().unwrap(),
                    b: it.next().unwrap(),
                    c: it.next().unwrap(),
                    d: it.next().unwrap(),
                });
                Ok(())
            }
            k => Err(Error::Format {
                line,
                message: format!("a quad needs 4 rows, found {k}"),
            }),
        }
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut pending, idx + 1)?;
            continue;
        }
        let row = parse_row(line).map_err(|e| Error::Format {
            line: idx + 1,
            message: e.to_string(),
        })?;
        pending.push(row);
        if pending.len() > 4 {
            return Err(Error::Format {
                line: idx + 1,
                message: "more than 4 rows without a blank separator".into(),
            });
        }
    }
    flush(&mut pending, text.lines().count())?;
    Ok(quads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    fn seq(s: &str) -> PmSequence {
        parse_row(s).unwrap()
    }

    #[test]
    fn skew_from_half() {
        assert_eq!(make_skew(&[1], 3).unwrap().seq(), &seq("++-"));
        assert_eq!(
            make_skew(&[1, -1, 1], 7).unwrap().entries(),
            &[1, 1, -1, 1, -1, 1, -1]
        );
        assert!(make_skew(&[1, 1], 3).is_err());
        assert!(make_skew(&[1], 4).is_err());
    }

    #[test]
    fn symmetric_from_half() {
        assert_eq!(make_symmetric(&[1], 3).unwrap().seq(), &seq("+++"));
        assert_eq!(make_symmetric(&[-1], 3).unwrap().seq(), &seq("+--"));
        let b = make_symmetric(&[1, -1, -1, 1], 9).unwrap();
        assert_eq!(b.seq().rowsum(), 1);
    }

    #[test]
    fn published_rows_rebuild_from_halves() {
        let q = known::order_27();
        assert_eq!(make_skew(q.a.half(), 27).unwrap(), q.a);
        assert_eq!(make_symmetric(q.b.half(), 27).unwrap(), q.b);
        let q = known::order_57();
        assert_eq!(make_skew(q.a.half(), 57).unwrap(), q.a);
        assert_eq!(make_symmetric(q.d.half(), 57).unwrap(), q.d);
    }

    #[test]
    fn compression() {
        assert_eq!(compress3(&PmSequence::ones(9)).unwrap().entries(), &[3, 3, 3]);
        let a = known::order_27().a;
        let ca = compress3(&a).unwrap();
        assert_eq!(ca.entries(), &[1, 3, 3, -1, 1, -1, 1, -3, -3]);
        assert_eq!(ca.rowsum(), a.seq().rowsum());
        assert_eq!(ca.rowsum(), 1);
        assert!(compress3(&seq("++-+")).is_err());
        let s = make_skew(&[1, -1, -1, 1], 9).unwrap();
        let cs = compress3(&s).unwrap();
        assert_eq!(cs.at(0), 1);
        assert_eq!(cs.at(2), -cs.at(1));
    }

    #[test]
    fn rowsums() {
        assert_eq!(seq("++-").rowsum(), 1);
        let b = known::order_27().b;
        let r = b.seq().rowsum();
        assert_eq!(r, -1);
        assert_eq!(r.rem_euclid(4), 3);
    }

    #[test]
    fn text_format() {
        assert_eq!(seq("++-").entries(), &[1, 1, -1]);
        assert_eq!(format_row(&PmSequence::new(vec![1, -1]).unwrap()), "+-");
        assert_eq!(seq("+−-").entries(), &[1, -1, -1]);
        match parse_row("++x-") {
            Err(Error::Parse { position, found }) => {
                assert_eq!(position, 2);
                assert_eq!(found, 'x');
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_row("").is_err());
    }

    #[test]
    fn published_57_row_is_skew() {
        let a = seq(known::ORDER_57[0]);
        assert_eq!(a.len(), 57);
        assert!(SkewRow::from_seq(a).is_ok());
    }

    #[test]
    fn published_rows_satisfy_structure() {
        for rows in [&known::ORDER_27, &known::ORDER_57] {
            assert!(seq(rows[0]).is_skew());
            for r in &rows[1..] {
                assert!(SymRow::from_seq(seq(r)).is_ok());
            }
        }
    }

    #[test]
    fn sign_order_puts_plus_first() {
        assert!(seq("++-") < seq("+-+"));
        assert!(seq("+--") > seq("+-+"));
        let three = CompressedRow::new(vec![3]).unwrap();
        let one = CompressedRow::new(vec![1]).unwrap();
        let m1 = CompressedRow::new(vec![-1]).unwrap();
        let m3 = CompressedRow::new(vec![-3]).unwrap();
        assert!(three < one && one < m1 && m1 < m3);
    }

    #[test]
    fn row_file_round_trip() {
        let quads = vec![known::order_27().to_row_quad(), known::order_57().to_row_quad()];
        let text = write_quads(&quads);
        assert_eq!(read_quads(&text).unwrap(), quads);
        assert!(read_quads("++-\n+++\n\n").is_err());
        assert!(read_quads("# comment only\n").unwrap().is_empty());
    }

    #[test]
    fn compressed_quad_shape() {
        let q = known::order_27();
        let cq = q.compress().unwrap();
        assert!(cq.a.is_skew_like());
        assert!(cq.rows()[1..].iter().all(|r| r.is_symmetric()));
        assert!(CompressedRow::new(vec![1, 2]).is_err());
        assert_eq!(CompressedRow::parse("1, 3,-1").unwrap().entries(), &[1, 3, -1]);
    }
}
