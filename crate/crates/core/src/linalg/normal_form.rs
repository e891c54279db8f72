//! Hermite and Smith normal forms over Z.
//!
//! Both routines work by elementary unimodular operations and record them,
//! so every result comes with transforms that reconstruct the input exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form `form = transform · input`.
///
/// The first `rank` rows of `form` are nonzero with strictly increasing pivot
/// columns, positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. The remaining rows are zero, and the matching rows of
/// `transform` form a basis of the integer left kernel of the input.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    /// Basis of `{ λ : λ · input = 0 }`.
    pub fn left_kernel(&self) -> IntMatrix {
        let rows: Vec<usize> = (self.rank..self.transform.nrows()).collect();
        self.transform.select_rows(&rows)
    }

    /// The nonzero rows of the form.
    pub fn basis(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rank).collect();
        self.form.select_rows(&rows)
    }
}

pub fn hermite(input: &IntMatrix) -> HermiteDecomposition {
    let rows = input.nrows();
    let cols = input.ncols();
    let mut a = input.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut p = 0;

    for col in 0..cols {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if a.get(i, col).is_zero() {
                continue;
            }
            if a.get(p, col).is_zero() {
                a.swap_rows(p, i);
                u.swap_rows(p, i);
                continue;
            }
            let (ap, ai) = (a.get(p, col).clone(), a.get(i, col).clone());
            if ai.is_multiple_of(&ap) {
                let q = -(&ai / &ap);
                a.add_row_multiple(i, p, &q);
                u.add_row_multiple(i, p, &q);
                continue;
            }
            let eg = ap.extended_gcd(&ai);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let s = &ap / &g;
            let t = &ai / &g;
            // [[x, y], [-t, s]] has determinant x·s + y·t = 1.
            let mt = -t;
            a.combine_rows(p, i, &x, &y, &mt, &s);
            u.combine_rows(p, i, &x, &y, &mt, &s);
        }
        if a.get(p, col).is_zero() {
            continue;
        }
        if a.get(p, col).is_negative() {
            a.negate_row(p);
            u.negate_row(p);
        }
        let pivot = a.get(p, col).clone();
        for i in 0..p {
            let q = a.get(i, col).div_floor(&pivot);
            if !q.is_zero() {
                let mq = -q;
                a.add_row_multiple(i, p, &mq);
                u.add_row_multiple(i, p, &mq);
            }
        }
        pivots.push(col);
        p += 1;
    }

    HermiteDecomposition { form: a, transform: u, rank: p, pivots }
}

/// Smith normal form `left · input · right = diag(diagonal)`.
///
/// `diagonal` has `min(rows, cols)` entries, nonnegative, with each entry
/// dividing the next (zeros last). `right_inverse` is the inverse of `right`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The `rows × cols` diagonal matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.nrows(), self.right.nrows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

pub fn smith(input: &IntMatrix) -> SmithDecomposition {
    let rows = input.nrows();
    let cols = input.ncols();
    let mut a = input.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);
    let n = rows.min(cols);

    'outer: for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);
            right_inv.swap_rows(t, bj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t) / &pivot;
                if !q.is_zero() {
                    let mq = -q;
                    a.add_row_multiple(i, t, &mq);
                    left.add_row_multiple(i, t, &mq);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j) / &pivot;
                if !q.is_zero() {
                    let mq = -&q;
                    a.add_col_multiple(j, t, &mq);
                    right.add_col_multiple(j, t, &mq);
                    right_inv.add_row_multiple(t, j, &q);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition { left, right, right_inverse: right_inv, diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows)
    }

    fn check_smith(input: &IntMatrix) -> SmithDecomposition {
        let s = smith(input);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        assert_eq!(s.right.mul(&s.right_inverse), IntMatrix::identity(input.ncols()));
        assert_eq!(s.left.mul(input).mul(&s.right), s.diagonal_matrix());
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    #[test]
    fn hermite_examples() {
        let h = hermite(&m(2, &[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h.basis(), m(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(h.left_kernel().nrows(), 1);
        let h = hermite(&m(4, &[&[1, 3, -4, 0], &[3, 1, 0, -4]]));
        assert_eq!(h.basis(), m(4, &[&[1, 3, -4, 0], &[0, 8, -12, 4]]));
    }

    #[test]
    fn hermite_transform_reconstructs() {
        let input = m(3, &[&[4, -6, 2], &[6, 9, -3], &[2, 15, -5], &[0, 0, 7]]);
        let h = hermite(&input);
        assert!(h.transform.is_unimodular());
        assert_eq!(h.transform.mul(&input), h.form);
        for k in h.left_kernel().row_iter() {
            assert!(input.left_mul_vec(k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&IntMatrix::identity(3));
        assert!(s.diagonal.iter().all(|d| d.is_one()));
        let s = check_smith(&m(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check_smith(&m(1, &[&[0]]));
        assert_eq!(s.diagonal, vec![BigInt::zero()]);
        let s = check_smith(&m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check_smith(&IntMatrix::empty(3));
        check_smith(&m(4, &[&[0, 0, 0, 0], &[0, 6, 0, 4]]));
    }
}
