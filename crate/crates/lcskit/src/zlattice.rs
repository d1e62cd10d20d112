//! Exact integer matrices, Smith normal form, and quotients of free abelian
//! groups by sublattices.
//!
//! All arithmetic is over arbitrary-precision integers; intermediate entries
//! can exceed machine words even on small inputs. Two independent elimination
//! strategies are exposed so the diagonal can be cross-checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += c · row_j
    fn row_axpy(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for col in 0..self.cols {
            let v = self.at(i, col) + c * self.at(j, col);
            self.set(i, col, v);
        }
    }

    /// col_j += c · col_k
    fn col_axpy(&mut self, j: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in 0..self.rows {
            let v = self.at(row, j) + c * self.at(row, k);
            self.set(row, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    /// Applies the unimodular 2x2 transform [[x, y], [z, w]] to rows (a, b):
    /// row_a ← x·row_a + y·row_b ; row_b ← z·row_a + w·row_b (old rows).
    fn two_row_transform(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for j in 0..self.cols {
            let ra = self.at(a, j).clone();
            let rb = self.at(b, j).clone();
            self.set(a, j, x * &ra + y * &rb);
            self.set(b, j, z * &ra + w * &rb);
        }
    }

    fn two_col_transform(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for i in 0..self.rows {
            let ca = self.at(i, a).clone();
            let cb = self.at(i, b).clone();
            self.set(i, a, x * &ca + y * &cb);
            self.set(i, b, z * &ca + w * &cb);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// U·A·V = D with U, V unimodular and D diagonal, d₁ | d₂ | …, zeros trailing.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Nearest-integer quotient; |a − q·b| ≤ |b|/2.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let q0 = a.div_floor(b);
    let q1: BigInt = &q0 + 1;
    let r0 = (a - &q0 * b).abs();
    let r1 = (a - &q1 * b).abs();
    if r1 < r0 {
        q1
    } else {
        q0
    }
}

fn find_smallest_nonzero(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let v = m.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn find_first_nonzero(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    for i in k..m.rows() {
        for j in k..m.cols() {
            if !m.at(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Smith normal form, smallest-|pivot| strategy: the pivot is the remaining
/// entry of least absolute value, which keeps intermediate growth down.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    snf_impl(a, false)
}

/// Smith normal form by first-nonzero pivoting with explicit extended-gcd
/// row/column transforms. Independent of [`smith_normal_form`]; the two must
/// produce the same diagonal.
pub fn smith_normal_form_gcd_pivot(a: &IntMatrix) -> SnfResult {
    snf_impl(a, true)
}

fn snf_impl(a: &IntMatrix, gcd_pivot: bool) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    let mut k = 0;
    while k < steps {
        let found = if gcd_pivot { find_first_nonzero(&d, k) } else { find_smallest_nonzero(&d, k) };
        let Some((pi, pj)) = found else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        'clean: loop {
            if gcd_pivot {
                for i in k + 1..rows {
                    if d.at(i, k).is_zero() {
                        continue;
                    }
                    let p = d.at(k, k).clone();
                    let b = d.at(i, k).clone();
                    let e = p.extended_gcd(&b);
                    // [x y; -b/g p/g] is unimodular and sends (p, b) to (g, 0)
                    let (nb, np) = (-&b / &e.gcd, &p / &e.gcd);
                    d.two_row_transform(k, i, &e.x, &e.y, &nb, &np);
                    u.two_row_transform(k, i, &e.x, &e.y, &nb, &np);
                }
                for j in k + 1..cols {
                    if d.at(k, j).is_zero() {
                        continue;
                    }
                    let p = d.at(k, k).clone();
                    let b = d.at(k, j).clone();
                    let e = p.extended_gcd(&b);
                    let (nb, np) = (-&b / &e.gcd, &p / &e.gcd);
                    d.two_col_transform(k, j, &e.x, &e.y, &nb, &np);
                    v.two_col_transform(k, j, &e.x, &e.y, &nb, &np);
                }
            } else {
                for i in k + 1..rows {
                    if d.at(i, k).is_zero() {
                        continue;
                    }
                    let q = -rounded_div(d.at(i, k), d.at(k, k));
                    d.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                    if !d.at(i, k).is_zero() {
                        // remainder is strictly smaller: make it the pivot
                        d.swap_rows(k, i);
                        u.swap_rows(k, i);
                    }
                }
                for j in k + 1..cols {
                    if d.at(k, j).is_zero() {
                        continue;
                    }
                    let q = -rounded_div(d.at(k, j), d.at(k, k));
                    d.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                    if !d.at(k, j).is_zero() {
                        d.swap_cols(k, j);
                        v.swap_cols(k, j);
                    }
                }
            }
            let col_clear = (k + 1..rows).all(|i| d.at(i, k).is_zero());
            let row_clear = (k + 1..cols).all(|j| d.at(k, j).is_zero());
            if !(col_clear && row_clear) {
                continue 'clean;
            }
            // divisibility: the pivot must divide the remaining submatrix
            let p = d.at(k, k).clone();
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.at(i, j) % &p).is_zero() {
                        d.row_axpy(k, i, &BigInt::one());
                        u.row_axpy(k, i, &BigInt::one());
                        continue 'clean;
                    }
                }
            }
            break;
        }
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    SnfResult { u, d, v }
}

/// Inverse of a unimodular matrix, via U·M·V = I ⇒ M⁻¹ = V·U.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), m.cols(), "unimodular matrices are square");
    let snf = smith_normal_form(m);
    assert!(
        snf.diagonal().iter().all(|x| x.is_one()),
        "matrix is not unimodular"
    );
    snf.v.mul(&snf.u)
}

/// Isomorphism type of a finitely generated abelian group: torsion
/// coefficients d₁ | d₂ | … (each ≥ 2) plus the free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { torsion: Vec::new(), free_rank: rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Canonical form from any list of cyclic orders (0 = infinite): entries
    /// equal to 1 are dropped, torsion is rebuilt as a divisibility chain.
    pub fn from_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free_rank = 0;
        let mut torsion: Vec<BigInt> = Vec::new();
        for d in orders {
            assert!(!d.is_negative(), "cyclic orders are nonnegative");
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        // rebuild the divisibility chain via pairwise gcd/lcm sweeps
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..torsion.len() {
                for j in i + 1..torsion.len() {
                    if !(&torsion[j] % &torsion[i]).is_zero() {
                        let g = torsion[i].gcd(&torsion[j]);
                        let l = torsion[i].lcm(&torsion[j]);
                        torsion[i] = g;
                        torsion[j] = l;
                        changed = true;
                    }
                }
            }
        }
        torsion.retain(|d| !d.is_one());
        torsion.sort();
        AbelianInvariants { torsion, free_rank }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: sublattice rows have {got} columns, ambient rank is {want}")]
    DimensionMismatch { got: usize, want: usize },
}

/// Invariants of Zⁿ / (row span of `sublattice_rows`).
pub fn abelian_quotient(
    ambient_rank: usize,
    sublattice_rows: &IntMatrix,
) -> Result<AbelianInvariants, LatticeError> {
    if sublattice_rows.rows() > 0 && sublattice_rows.cols() != ambient_rank {
        return Err(LatticeError::DimensionMismatch {
            got: sublattice_rows.cols(),
            want: ambient_rank,
        });
    }
    // zero rows never change the span
    let live: Vec<Vec<BigInt>> = (0..sublattice_rows.rows())
        .filter(|&i| sublattice_rows.row(i).iter().any(|x| !x.is_zero()))
        .map(|i| sublattice_rows.row(i).to_vec())
        .collect();
    if live.is_empty() {
        return Ok(AbelianInvariants::free(ambient_rank));
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(live));
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|x| !x.is_zero()).count();
    let orders = diag
        .into_iter()
        .filter(|x| !x.is_zero())
        .chain(std::iter::repeat_with(BigInt::zero).take(ambient_rank - nonzero));
    Ok(AbelianInvariants::from_orders(orders))
}
