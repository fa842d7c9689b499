//! JSON state files: `{"dims": [2, 3], "entries": [[[re, im], ...], ...]}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quantum::DensityMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    /// Subsystem dimensions; a single entry for an unpartitioned state.
    pub dims: Vec<usize>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_density<T: Real>(rho: &DensityMatrix<T>, dims: &[usize]) -> Result<Self> {
        check_dims(dims, rho.dim())?;
        let entries = rho
            .matrix()
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|z| [z.re.approx_f64(), z.im.approx_f64()]).collect())
            .collect();
        Ok(Self {
            dims: dims.to_vec(),
            entries,
        })
    }

    pub fn to_density<T: Real>(&self) -> Result<DensityMatrix<T>> {
        check_dims(&self.dims, self.entries.len())?;
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex::new(T::of(re), T::of(im))).collect())
            .collect();
        DensityMatrix::new(CMatrix::from_rows(rows)?)
    }

    /// `(d_A, d_B)` for a bipartite file.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(Error::InvalidInput(format!(
                "expected two subsystem dimensions, found {other:?}"
            ))),
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn check_dims(dims: &[usize], total: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidInput(format!("invalid dims {dims:?}")));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(Error::DimensionMismatch {
            expected: product,
            found: total,
        });
    }
    Ok(())
}
