//! Dense matrices over `L(E)`.

use super::element::{Element, Leavitt};
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl ElementMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Element> {
        self.data.iter()
    }

    /// Rows as nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<Element>> {
        self.data.chunks(self.cols.max(1)).map(<[Element]>::to_vec).collect()
    }
}

impl Leavitt {
    pub fn matrix(&self, rows: Vec<Vec<Element>>) -> Result<ElementMatrix, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(KernelError::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<Element> = rows.into_iter().flatten().collect();
        for x in &data {
            self.check(x)?;
        }
        Ok(ElementMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn zero_matrix(&self, rows: usize, cols: usize) -> ElementMatrix {
        ElementMatrix {
            rows,
            cols,
            data: vec![self.zero(); rows * cols],
        }
    }

    /// The `1×1` matrix `(x)`.
    pub fn scalar_matrix(&self, x: &Element) -> ElementMatrix {
        ElementMatrix {
            rows: 1,
            cols: 1,
            data: vec![x.clone()],
        }
    }

    pub fn identity(&self, n: usize) -> ElementMatrix {
        self.diag(&vec![self.one(); n])
    }

    pub fn diag(&self, xs: &[Element]) -> ElementMatrix {
        let n = xs.len();
        let mut m = self.zero_matrix(n, n);
        for (i, x) in xs.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn row(&self, xs: &[Element]) -> ElementMatrix {
        ElementMatrix {
            rows: 1,
            cols: xs.len(),
            data: xs.to_vec(),
        }
    }

    pub fn col(&self, xs: &[Element]) -> ElementMatrix {
        ElementMatrix {
            rows: xs.len(),
            cols: 1,
            data: xs.to_vec(),
        }
    }

    /// The matrix with a unit at `(perm[j], j)`: it sends coordinate `j` to `perm[j]`.
    pub fn permutation(&self, perm: &[usize]) -> ElementMatrix {
        let n = perm.len();
        let mut m = self.zero_matrix(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = self.one();
        }
        m
    }

    pub fn mat_mul(&self, a: &ElementMatrix, b: &ElementMatrix) -> Result<ElementMatrix, KernelError> {
        if a.cols != b.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut out = self.zero_matrix(a.rows, b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = self.zero();
                for k in 0..a.cols {
                    let (x, y) = (a.get(i, k), b.get(k, j));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = self.add(&acc, &self.mul(x, y)?)?;
                }
                out.data[i * b.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mat_product(&self, factors: &[&ElementMatrix]) -> Result<ElementMatrix, KernelError> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| KernelError::DimensionMismatch("empty product".into()))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, m| self.mat_mul(&acc, m))
    }

    /// `a ⊕ b`, block diagonal.
    pub fn block_sum(&self, a: &ElementMatrix, b: &ElementMatrix) -> ElementMatrix {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        let mut m = self.zero_matrix(r, c);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.data[i * c + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.data[(a.rows + i) * c + a.cols + j] = b.get(i, j).clone();
            }
        }
        m
    }

    pub fn block_sum_all(&self, blocks: &[ElementMatrix]) -> ElementMatrix {
        let mut it = blocks.iter();
        let first = it.next().expect("at least one block").clone();
        it.fold(first, |acc, b| self.block_sum(&acc, b))
    }
}
