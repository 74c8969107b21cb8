use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal with
/// `S[0,0] | S[1,1] | ...`; zero diagonal entries come last.
///
/// `v_inv` is kept alongside `V` so that coordinates can be moved back from
/// the diagonal basis to the original generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries of `S`, all non-negative.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.diagonal().into_iter().filter(|d| d > &Int::one()).collect()
    }

    /// Free rank of `Z^cols / rowspace(A)`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.s.cols() - self.rank()
    }
}

struct Reducer {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        self.s.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        self.s.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        // (V E)^-1 = E^-1 V^-1 with E = I + k e_src e_dst^T
        let neg = -k;
        self.v_inv.add_row_multiple(src, dst, &neg);
    }

    /// Smallest non-zero |entry| in the block `[t.., t..]`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), Int)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let a = self.s[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| &a < b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Smallest non-zero |entry| in row t or column t, restricted to `t..`.
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.s[(t, t)].abs();
        let mut consider = |pos: (usize, usize), v: &Int| {
            let a = v.abs();
            if !a.is_zero() && (best_abs.is_zero() || a < best_abs) {
                best = pos;
                best_abs = a;
            }
        };
        for i in t..self.s.rows() {
            consider((i, t), &self.s[(i, t)]);
        }
        for j in t..self.s.cols() {
            consider((t, j), &self.s[(t, j)]);
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row t and column t outside the pivot; returns false when a
    /// non-zero remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.s[(t, t)].clone();
        for i in t + 1..self.s.rows() {
            if self.s[(i, t)].is_zero() {
                continue;
            }
            let q = self.s[(i, t)].div_floor(&pivot);
            self.add_row(i, t, &-q);
            clean &= self.s[(i, t)].is_zero();
        }
        for j in t + 1..self.s.cols() {
            if self.s[(t, j)].is_zero() {
                continue;
            }
            let q = self.s[(t, j)].div_floor(&pivot);
            self.add_col(j, t, &-q);
            clean &= self.s[(t, j)].is_zero();
        }
        clean
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let pivot = &self.s[(t, t)];
        (t + 1..self.s.rows())
            .find(|&i| (t + 1..self.s.cols()).any(|j| !self.s[(i, j)].is_multiple_of(pivot)))
    }

    fn run(&mut self) {
        let n = self.s.rows().min(self.s.cols());
        for t in 0..n {
            let Some(p) = self.smallest_in_block(t) else { break };
            self.move_to_pivot(t, p);
            loop {
                if !self.clear_cross(t) {
                    let p = self.smallest_in_cross(t);
                    self.move_to_pivot(t, p);
                    continue;
                }
                match self.first_non_multiple(t) {
                    Some(i) => self.add_row(t, i, &Int::one()),
                    None => break,
                }
            }
            if self.s[(t, t)].is_negative() {
                self.s.negate_row(t);
                self.u.negate_row(t);
            }
        }
    }
}

/// Smith normal form by unimodular row and column operations, pivoting on
/// the smallest non-zero absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut r = Reducer {
        s: a.clone(),
        u: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
        v_inv: IntMatrix::identity(a.cols()),
    };
    r.run();
    SmithDecomposition {
        u: r.u,
        s: r.s,
        v: r.v,
        v_inv: r.v_inv,
    }
}
