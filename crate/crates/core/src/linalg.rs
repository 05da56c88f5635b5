//! Dense linear algebra over the prime field F_p.

/// `b^e mod m` by square-and-multiply. `m` must be nonzero.
pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse mod a prime `p`. `a` must not be divisible by `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Row-major matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of solving a square or overdetermined linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<u64>),
    Inconsistent,
    Underdetermined,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds an n x k matrix whose columns are the given coefficient vectors.
    pub fn from_columns(p: u64, n: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = (acc + self.at(r, c) * (v[c] % self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to row echelon form; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(src) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, src * self.cols + c);
            }
            let inv = inv_mod(self.at(row, col), p);
            for c in col..self.cols {
                let v = self.at(row, c) * inv % p;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let f = self.at(r, col);
                    for c in col..self.cols {
                        let v = (self.at(r, c) + (p - f) * self.at(row, c)) % p;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.at(r, n + c));
            }
        }
        Some(inv)
    }
}

/// Solves `A x = b` where `rows` holds augmented rows `[a_0 .. a_{k-1} | b]`.
pub fn solve_augmented(p: u64, rows: Vec<Vec<u64>>, unknowns: usize) -> SolveOutcome {
    let mut m = FpMatrix::zeros(p, rows.len(), unknowns + 1);
    for (r, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), unknowns + 1);
        for (c, &v) in row.iter().enumerate() {
            m.set(r, c, v);
        }
    }
    let pivots = m.echelon();
    if pivots.last() == Some(&unknowns) {
        return SolveOutcome::Inconsistent;
    }
    if pivots.len() < unknowns {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![0; unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m.at(r, unknowns);
    }
    SolveOutcome::Unique(x)
}
