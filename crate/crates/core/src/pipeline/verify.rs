//! Exact checks of a quad as matrices, independent of the spectral code.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::diophantine::{signed_rowsums, RowsumTriple};
use crate::error::{invalid, Error, Result};
use crate::seqcore::RowQuad;

/// Dense square integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    order: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(order: usize) -> Self {
        Matrix {
            order,
            data: vec![0; order * order],
        }
    }

    pub fn scaled_identity(order: usize, scale: i64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = scale;
        }
        m
    }

    /// Circulant matrix whose first row is `row`; row `i` is `row` shifted right `i` times.
    pub fn circulant(row: &[i8]) -> Self {
        let n = row.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = i64::from(row[(j + n - i) % n]);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    /// Rows in reverse order.
    pub fn reversed_rows(&self) -> Self {
        let n = self.order;
        let mut r = Self::zeros(n);
        for i in 0..n {
            r.data[i * n..(i + 1) * n].copy_from_slice(self.row(n - 1 - i));
        }
        r
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Diagonal all `1`, off-diagonal antisymmetric.
    pub fn is_skew(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| {
            self.get(i, i) == 1 && (0..n).all(|j| i == j || self.get(i, j) == -self.get(j, i))
        })
    }

    /// Assembles a matrix from a square grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<Matrix>]) -> Self {
        let k = blocks.len();
        let b = blocks[0][0].order;
        let n = k * b;
        let mut m = Self::zeros(n);
        for (bi, block_row) in blocks.iter().enumerate() {
            for (bj, block) in block_row.iter().enumerate() {
                for i in 0..b {
                    for j in 0..b {
                        m.data[(bi * b + i) * n + bj * b + j] = block.get(i, j);
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order);
        Matrix {
            order: self.order,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for (o, &r) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * r;
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            order: self.order,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let line: String = self
                .row(i)
                .iter()
                .map(|&v| match v {
                    1 => '+',
                    -1 => '-',
                    _ => '?',
                })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn same_order(quad: &RowQuad) -> Option<usize> {
    let n = quad.a.len();
    quad.rows().iter().all(|r| r.len() == n).then_some(n)
}

/// Circulant `A` skew, `B, C, D` symmetric, and `AAᵀ + B² + C² + D² = 4n·I`,
/// all with exact integer matrices.
pub fn verify_definition(quad: &RowQuad) -> bool {
    let Some(n) = same_order(quad) else {
        return false;
    };
    let [a, b, c, d] = quad.rows().map(|r| Matrix::circulant(r.entries()));
    if !a.is_skew() || !b.is_symmetric() || !c.is_symmetric() || !d.is_symmetric() {
        return false;
    }
    let sum = &(&(&a * &a.transpose()) + &(&b * &b)) + &(&(&c * &c) + &(&d * &d));
    sum == Matrix::scaled_identity(n, 4 * n as i64)
}

/// Four matrices satisfying the amicable form of the definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodMatrices {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

impl GoodMatrices {
    pub fn all(&self) -> [&Matrix; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `XYᵀ` symmetric for every pair.
    pub fn pairwise_amicable(&self) -> bool {
        let all = self.all();
        all.iter()
            .all(|x| all.iter().all(|y| (*x * &y.transpose()).is_symmetric()))
    }

    /// Amicable, `A` skew, `B, C, D` symmetric, `AAᵀ + B² + C² + D² = 4n·I`.
    pub fn is_good(&self) -> bool {
        let n = self.a.order();
        let sum = &(&(&self.a * &self.a.transpose()) + &(&self.b * &self.b))
            + &(&(&self.c * &self.c) + &(&self.d * &self.d));
        self.pairwise_amicable()
            && self.a.is_skew()
            && self.b.is_symmetric()
            && self.c.is_symmetric()
            && self.d.is_symmetric()
            && sum == Matrix::scaled_identity(n, 4 * n as i64)
    }
}

/// Reverses the row order of `B, C, D`, giving pairwise amicable good matrices.
pub fn recover_amicable(quad: &RowQuad) -> Result<GoodMatrices> {
    if !verify_definition(quad) {
        return invalid("rows do not define circulant good matrices");
    }
    let [a, b, c, d] = quad.rows().map(|r| Matrix::circulant(r.entries()));
    let good = GoodMatrices {
        a,
        b: b.reversed_rows(),
        c: c.reversed_rows(),
        d: d.reversed_rows(),
    };
    if !good.is_good() {
        return Err(Error::Construction(
            "row-reversed matrices are not good matrices".into(),
        ));
    }
    Ok(good)
}

/// Block matrix
/// ```text
///  A  B  C  D
/// -B  A  D -C
/// -C -D  A  B
/// -D  C -B  A
/// ```
/// of order `4n`, checked to satisfy `HHᵀ = 4n·I` and `H + Hᵀ = 2I`.
pub fn build_skew_hadamard(quad: &RowQuad) -> Result<Matrix> {
    let g = recover_amicable(quad)?;
    let (a, b, c, d) = (&g.a, &g.b, &g.c, &g.d);
    let h = Matrix::from_blocks(&[
        vec![a.clone(), b.clone(), c.clone(), d.clone()],
        vec![-b, a.clone(), d.clone(), -c],
        vec![-c, -d, a.clone(), b.clone()],
        vec![-d, c.clone(), -b, a.clone()],
    ]);
    let order = h.order();
    if &h * &h.transpose() != Matrix::scaled_identity(order, order as i64) {
        return Err(Error::Construction("rows are not orthogonal".into()));
    }
    if &h + &h.transpose() != Matrix::scaled_identity(order, 2) {
        return Err(Error::Construction("H + Hᵀ is not 2I".into()));
    }
    Ok(h)
}

/// `a_k b_k c_k d_k = -a_{2k mod n} b_0 c_0 d_0` for every `1 <= k < n`.
pub fn satisfies_product_theorem(quad: &RowQuad) -> bool {
    let Some(n) = same_order(quad) else {
        return false;
    };
    let [a, b, c, d] = quad.rows().map(|r| r.entries());
    let base = b[0] * c[0] * d[0];
    (1..n).all(|k| a[k] * b[k] * c[k] * d[k] == -a[(2 * k) % n] * base)
}

/// Rowsums of `B, C, D` (after making their first entries positive) form one
/// of the admissible triples for the order.
pub fn has_admissible_rowsums(quad: &RowQuad) -> bool {
    let Some(n) = same_order(quad) else {
        return false;
    };
    if n % 2 == 0 {
        return false;
    }
    let sign_fixed = |r: &crate::seqcore::PmSequence| r.rowsum() * i32::from(r.entries()[0]);
    let triple = RowsumTriple::new([sign_fixed(&quad.b), sign_fixed(&quad.c), sign_fixed(&quad.d)]);
    signed_rowsums(n as u64)
        .map(|set| set.contains(&triple))
        .unwrap_or(false)
}

/// Outcome of every independent check on one quad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Certificates {
    pub definition: bool,
    pub paf: bool,
    pub product_theorem: bool,
    pub rowsums: bool,
    pub amicable: bool,
    pub skew_hadamard: bool,
}

impl Certificates {
    pub fn all_pass(&self) -> bool {
        self.definition
            && self.paf
            && self.product_theorem
            && self.rowsums
            && self.amicable
            && self.skew_hadamard
    }
}

pub fn certify(quad: &RowQuad) -> Certificates {
    let paf = same_order(quad).is_some_and(|_| {
        crate::spectral::paf_sums_vanish(&quad.rows().map(|r| r.entries()))
    });
    Certificates {
        definition: verify_definition(quad),
        paf,
        product_theorem: satisfies_product_theorem(quad),
        rowsums: has_admissible_rowsums(quad),
        amicable: recover_amicable(quad).is_ok(),
        skew_hadamard: build_skew_hadamard(quad).is_ok(),
    }
}
