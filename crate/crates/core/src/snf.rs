//! Smith normal form of small integer matrices.

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntMatrix::new(rows.len(), cols, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n, n, vec![0; n * n]);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::new(self.rows, other.cols, vec![0; self.rows * other.cols]);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = (0..self.cols).map(|l| self[(i, l)] * other[(l, j)]).sum();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += f * v;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += f * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `left · input · right = diagonal`, with `left`, `right` unimodular and the
/// nonzero diagonal entries positive and successively dividing.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<i64> {
        let r = self.diagonal.rows.min(self.diagonal.cols);
        (0..r)
            .map(|i| self.diagonal[(i, i)])
            .filter(|&d| d != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let mut a = input.clone();
    let mut left = IntMatrix::identity(a.rows);
    let mut right = IntMatrix::identity(a.cols);
    let steps = a.rows.min(a.cols);

    let mut t = 0;
    while t < steps {
        // smallest nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = a[(i, j)].abs();
                if v != 0 && pivot.is_none_or(|(pi, pj)| v < a[(pi, pj)].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..a.rows {
            let q = a[(i, t)] / a[(t, t)];
            if q != 0 {
                a.add_row(i, t, -q);
                left.add_row(i, t, -q);
            }
            if a[(i, t)] != 0 {
                clean = false;
            }
        }
        for j in t + 1..a.cols {
            let q = a[(t, j)] / a[(t, t)];
            if q != 0 {
                a.add_col(j, t, -q);
                right.add_col(j, t, -q);
            }
            if a[(t, j)] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // divisibility: fold any offending row into row t and redo this step
        let d = a[(t, t)];
        let offending = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| a[(i, j)] % d != 0));
        if let Some(i) = offending {
            a.add_row(t, i, 1);
            left.add_row(t, i, 1);
            continue;
        }
        if d < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    SmithForm {
        diagonal: a,
        left,
        right,
    }
}
