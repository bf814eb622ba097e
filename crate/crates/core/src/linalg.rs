//! Exact linear algebra: Gaussian elimination, rank and kernel bases over
//! any exact field, plus a fraction-free fast path over Z[√d].
//!
//! Elimination is generic over a [`FieldContext`] so the same routine serves
//! rationals, Q(√d) with big-integer coefficients ([`Scalar`]) and the
//! machine-word quadratic fields used by the torus sweep.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::exact::Scalar;

/// Field operations threaded through the elimination routines.
///
/// The context owns whatever ambient data the element type needs (for
/// quadratic fields, the discriminant), keeping elements lean.
pub trait FieldContext {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
}

/// The field of [`Scalar`] values (rationals and their quadratic extensions).
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarField;

impl FieldContext for ScalarField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }
    fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x - y
    }
    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }
    fn div(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x / y
    }
    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }
}

/// Dense row-major matrix over an exact element type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<E>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn reduced_row_echelon<F: FieldContext>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.at(r, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = f.div(&f.one(), m.at(row, col));
        for c in col..m.cols {
            let v = f.mul(m.at(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r != row && !f.is_zero(m.at(r, col)) {
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.at(r, c), &f.mul(&factor, m.at(row, c)));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: FieldContext>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    reduced_row_echelon(f, &mut work).len()
}

/// Exact basis of the (right) kernel of `m`. rank + nullity = cols.
pub fn kernel_basis<F: FieldContext>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = reduced_row_echelon(f, &mut work);
    let mut basis = Vec::new();
    let mut pivot_of_col = vec![None; m.cols];
    for (r, c) in pivots.iter().copied().enumerate() {
        pivot_of_col[c] = Some(r);
    }
    for free in 0..m.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for c in 0..m.cols {
            if let Some(r) = pivot_of_col[c] {
                v[c] = f.neg(work.at(r, free));
            }
        }
        basis.push(v);
    }
    basis
}

/// Applies `m` to `v` (matrix-vector product).
pub fn apply<F: FieldContext>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols, v.len(), "dimension mismatch in apply");
    (0..m.rows)
        .map(|r| {
            let mut acc = f.zero();
            for c in 0..m.cols {
                acc = f.add(&acc, &f.mul(m.at(r, c), &v[c]));
            }
            acc
        })
        .collect()
}

/// Matrix product over the field context.
pub fn mat_mul<F: FieldContext>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in mat_mul");
    Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = f.zero();
        for k in 0..a.cols {
            acc = f.add(&acc, &f.mul(a.at(i, k), b.at(k, j)));
        }
        acc
    })
}

pub mod zsqrt {
    //! Fraction-free exact elimination over Z[√d] with machine integers.
    //!
    //! Entries are pairs x + y√d held in `i128`. Single-step Bareiss
    //! elimination keeps every intermediate entry equal to a minor of the
    //! original matrix, so sizes stay within the Hadamard bound of the
    //! input; the divisions are exact in the ring and are checked.

    use alloc::vec;
    use alloc::vec::Vec;

    /// x + y√d with integer coordinates.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub struct Z2 {
        pub x: i128,
        pub y: i128,
    }

    // mul and exact_div need the discriminant, so all four stay inherent
    // methods rather than a half-implemented set of std ops
    #[allow(clippy::should_implement_trait)]
    impl Z2 {
        pub const ZERO: Z2 = Z2 { x: 0, y: 0 };

        pub fn int(x: i128) -> Z2 {
            Z2 { x, y: 0 }
        }

        pub fn sqrt_term(y: i128) -> Z2 {
            Z2 { x: 0, y }
        }

        pub fn is_zero(self) -> bool {
            self.x == 0 && self.y == 0
        }

        pub fn neg(self) -> Z2 {
            Z2 {
                x: -self.x,
                y: -self.y,
            }
        }

        pub fn add(self, r: Z2) -> Z2 {
            Z2 {
                x: self.x + r.x,
                y: self.y + r.y,
            }
        }

        pub fn sub(self, r: Z2) -> Z2 {
            Z2 {
                x: self.x - r.x,
                y: self.y - r.y,
            }
        }

        pub fn mul(self, r: Z2, d: i128) -> Z2 {
            Z2 {
                x: self.x * r.x + self.y * r.y * d,
                y: self.x * r.y + self.y * r.x,
            }
        }

        /// Exact division; panics if `self` is not divisible by `r` in Z[√d].
        pub fn exact_div(self, r: Z2, d: i128) -> Z2 {
            assert!(!r.is_zero(), "exact_div by zero in Z[sqrt(d)]");
            // w/z = w·conj(z) / N(z) with N(z) = x² − d·y² ≠ 0 (d square-free).
            let n = r.x * r.x - d * r.y * r.y;
            let w = self.mul(Z2 { x: r.x, y: -r.y }, d);
            assert!(
                w.x % n == 0 && w.y % n == 0,
                "non-exact division in Z[sqrt(d)]: {self:?} / {r:?}"
            );
            Z2 {
                x: w.x / n,
                y: w.y / n,
            }
        }
    }

    /// Row-major matrix of Z[√d] entries with its discriminant.
    #[derive(Clone, Debug)]
    pub struct ZMat {
        pub d: i128,
        pub rows: usize,
        pub cols: usize,
        pub data: Vec<Z2>,
    }

    impl ZMat {
        pub fn zero(d: i128, rows: usize, cols: usize) -> Self {
            ZMat {
                d,
                rows,
                cols,
                data: vec![Z2::ZERO; rows * cols],
            }
        }

        pub fn at(&self, r: usize, c: usize) -> Z2 {
            self.data[r * self.cols + c]
        }

        pub fn set(&mut self, r: usize, c: usize, v: Z2) {
            self.data[r * self.cols + c] = v;
        }

        fn swap_rows(&mut self, i: usize, j: usize) {
            if i == j {
                return;
            }
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }

        /// Fraction-free (Bareiss) echelon reduction in place.
        /// Returns the pivot columns; the rank is their count.
        pub fn bareiss_echelon(&mut self) -> Vec<usize> {
            let d = self.d;
            let mut pivots = Vec::new();
            let mut row = 0;
            let mut prev = Z2::int(1);
            for col in 0..self.cols {
                if row == self.rows {
                    break;
                }
                let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                    continue;
                };
                self.swap_rows(row, p);
                let pivot = self.at(row, col);
                for r in row + 1..self.rows {
                    let lead = self.at(r, col);
                    for c in col..self.cols {
                        let v = pivot
                            .mul(self.at(r, c), d)
                            .sub(lead.mul(self.at(row, c), d))
                            .exact_div(prev, d);
                        self.set(r, c, v);
                    }
                }
                prev = pivot;
                pivots.push(col);
                row += 1;
            }
            pivots
        }

        pub fn rank(&self) -> usize {
            self.clone().bareiss_echelon().len()
        }

        /// Kernel basis over Q(√d), scaled entrywise to lie in Z[√d] is not
        /// required by callers; back-substitution runs in the fraction field.
        pub fn kernel_basis(&self) -> Vec<Vec<super::qword::Q2>> {
            use super::qword::{QCtx, Q2};
            use super::FieldContext;
            let ctx = QCtx { d: self.d };
            let mut work = self.clone();
            let pivots = work.bareiss_echelon();
            let mut pivot_of_col = vec![None; self.cols];
            for (r, c) in pivots.iter().copied().enumerate() {
                pivot_of_col[c] = Some(r);
            }
            let mut basis = Vec::new();
            for free in 0..self.cols {
                if pivot_of_col[free].is_some() {
                    continue;
                }
                let mut v = vec![Q2::ZERO; self.cols];
                v[free] = Q2::one();
                // Echelon rows are solved bottom-up for the pivot entries.
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = Q2::ZERO;
                    for c in pc + 1..self.cols {
                        if !v[c].is_zero() {
                            acc = ctx.add(&acc, &ctx.mul(&Q2::from_z2(work.at(r, c)), &v[c]));
                        }
                    }
                    v[pc] = ctx.div(&ctx.neg(&acc), &Q2::from_z2(work.at(r, pc)));
                }
                basis.push(v);
            }
            basis
        }
    }
}

pub mod qword {
    //! Q(√d) with `Ratio<i128>` coordinates: the machine-word companion of
    //! [`Scalar`] used on the torus hot path. All arithmetic is checked;
    //! overflow aborts rather than wrapping.

    use super::FieldContext;
    use num_rational::Ratio;
    use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

    pub type R128 = Ratio<i128>;

    /// x + y√d with rational machine-word coordinates.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub struct Q2 {
        pub x: R128,
        pub y: R128,
    }

    impl Q2 {
        pub const ZERO: Q2 = Q2 {
            x: R128::new_raw(0, 1),
            y: R128::new_raw(0, 1),
        };

        pub fn one() -> Q2 {
            Q2 {
                x: R128::one(),
                y: R128::zero(),
            }
        }

        pub fn from_z2(z: super::zsqrt::Z2) -> Q2 {
            Q2 {
                x: R128::from_integer(z.x),
                y: R128::from_integer(z.y),
            }
        }

        pub fn from_int(x: i128) -> Q2 {
            Q2 {
                x: R128::from_integer(x),
                y: R128::zero(),
            }
        }

        pub fn sqrt_term(y: R128) -> Q2 {
            Q2 { x: R128::zero(), y }
        }

        pub fn is_zero(&self) -> bool {
            self.x.is_zero() && self.y.is_zero()
        }
    }

    fn cadd(a: &R128, b: &R128) -> R128 {
        a.checked_add(b).expect("overflow in Q(sqrt d) add")
    }

    fn csub(a: &R128, b: &R128) -> R128 {
        a.checked_sub(b).expect("overflow in Q(sqrt d) sub")
    }

    fn cmul(a: &R128, b: &R128) -> R128 {
        a.checked_mul(b).expect("overflow in Q(sqrt d) mul")
    }

    /// Field context for Q(√d) over machine words.
    #[derive(Clone, Copy, Debug)]
    pub struct QCtx {
        pub d: i128,
    }

    impl FieldContext for QCtx {
        type Elem = Q2;

        fn zero(&self) -> Q2 {
            Q2::ZERO
        }
        fn one(&self) -> Q2 {
            Q2::one()
        }
        fn is_zero(&self, v: &Q2) -> bool {
            v.is_zero()
        }
        fn add(&self, a: &Q2, b: &Q2) -> Q2 {
            Q2 {
                x: cadd(&a.x, &b.x),
                y: cadd(&a.y, &b.y),
            }
        }
        fn sub(&self, a: &Q2, b: &Q2) -> Q2 {
            Q2 {
                x: csub(&a.x, &b.x),
                y: csub(&a.y, &b.y),
            }
        }
        fn mul(&self, a: &Q2, b: &Q2) -> Q2 {
            let d = R128::from_integer(self.d);
            Q2 {
                x: cadd(&cmul(&a.x, &b.x), &cmul(&cmul(&a.y, &b.y), &d)),
                y: cadd(&cmul(&a.x, &b.y), &cmul(&a.y, &b.x)),
            }
        }
        fn div(&self, a: &Q2, b: &Q2) -> Q2 {
            assert!(!b.is_zero(), "division by zero in Q(sqrt d)");
            let d = R128::from_integer(self.d);
            let n = csub(&cmul(&b.x, &b.x), &cmul(&cmul(&b.y, &b.y), &d));
            let conj = Q2 { x: b.x, y: -b.y };
            let w = self.mul(a, &conj);
            Q2 {
                x: w.x / n,
                y: w.y / n,
            }
        }
        fn neg(&self, a: &Q2) -> Q2 {
            Q2 { x: -a.x, y: -a.y }
        }
    }
}
