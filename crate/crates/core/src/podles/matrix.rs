//! Matrices over `C(S²_qs)`.

use super::PodlesElem;
use crate::error::{Error, Result};
use crate::params::Params;

/// Row-major grid of sphere elements.
#[derive(Clone, Debug)]
pub struct MatPodles {
    rows: usize,
    cols: usize,
    entries: Vec<PodlesElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
    /// Star-transpose of the first operand; the second is ignored.
    StarTransposeFirst,
}

pub fn mat_arith(x: &MatPodles, y: &MatPodles, op: MatOp) -> Result<MatPodles> {
    match op {
        MatOp::Add => x.add(y),
        MatOp::Mul => x.mul(y),
        MatOp::StarTransposeFirst => Ok(x.star_transpose()),
    }
}

impl MatPodles {
    pub fn from_rows(rows: Vec<Vec<PodlesElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty matrix".into()));
        }
        let entries: Vec<PodlesElem> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.params() != entries[0].params()) {
            return Err(Error::Incompatible(
                "matrix entries with different parameters".into(),
            ));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn scalar(x: PodlesElem) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![x],
        }
    }

    pub fn identity(n: usize, params: &Params) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    PodlesElem::one(params)
                } else {
                    PodlesElem::zero(params)
                }
            })
            .collect();
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize, params: &Params) -> Self {
        Self {
            rows,
            cols,
            entries: vec![PodlesElem::zero(params); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> &Params {
        self.entries[0].params()
    }

    pub fn get(&self, i: usize, j: usize) -> &PodlesElem {
        &self.entries[i * self.cols + j]
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params() != other.params() {
            return Err(Error::Incompatible(
                "matrices with different parameters".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} + {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_params(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_params(other)?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.get(i, 0) * other.get(0, j);
                for k in 1..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn star_transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).star());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<PodlesElem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}×{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((1..self.rows).fold(self.get(0, 0).clone(), |acc, i| &acc + self.get(i, i)))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let p = self.params().clone();
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(match (i < self.rows, j < self.cols) {
                    (true, true) => self.get(i, j).clone(),
                    (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                    _ => PodlesElem::zero(&p),
                });
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Largest entrywise pointwise difference on `n ≤ n_max`.
    pub fn residual(&self, other: &Self, n_max: u64) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(
                "residual between matrices of different shapes".into(),
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.residual(b, n_max))
            .fold(0.0, f64::max))
    }

    pub fn entries(&self) -> &[PodlesElem] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::podles::make_generators;
    use crate::shiftcalc::CHECK_N;

    #[test]
    fn identity_and_star_transpose() {
        let p = Params::from_fracs((1, 2), (1, 1)).unwrap();
        let g = make_generators(&p);
        let x = MatPodles::from_rows(vec![
            vec![g.zeta.clone(), g.eta.clone()],
            vec![g.frak_s.clone(), g.zeta.clone()],
        ])
        .unwrap();
        let id = MatPodles::identity(2, &p);
        assert_eq!(id.mul(&x).unwrap().residual(&x, CHECK_N).unwrap(), 0.0);
        assert_eq!(
            x.star_transpose()
                .star_transpose()
                .residual(&x, CHECK_N)
                .unwrap(),
            0.0
        );
        let row = MatPodles::from_rows(vec![vec![g.zeta.clone(), g.eta.clone()]]).unwrap();
        assert!(matches!(row.mul(&row), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            mat_arith(&row, &x, MatOp::Add),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(row.star_transpose().rows(), 2);
    }
}
