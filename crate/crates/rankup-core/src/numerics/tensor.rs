//! Dense row-major f64 tensor with the handful of operations the model and
//! diagnostics need, plus the binary dump format shared with the CLI.
//!
//! All public constructors reject non-finite values, so NaN/Inf cannot leak
//! out of any operation built on top.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::Dim(format!("zero-sized dimension in {dims:?}")));
        }
        let n: usize = dims.iter().product();
        if n != data.len() {
            return Err(Error::Dim(format!(
                "dims {dims:?} imply {n} elements, got {}",
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Arg(format!("non-finite element {x}")));
        }
        Ok(Tensor { dims, data })
    }

    pub fn zeros(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        Tensor { dims, data: vec![0.0; n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dim("ragged rows".into()));
            }
            data.extend_from_slice(row);
        }
        Tensor::new(vec![r, c], data)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn rank2(&self) -> Result<(usize, usize)> {
        match *self.dims {
            [r, c] => Ok((r, c)),
            _ => Err(Error::Dim(format!("expected rank-2 tensor, got {:?}", self.dims))),
        }
    }

    pub fn get2(&self, i: usize, j: usize) -> f64 {
        let (_, c) = (self.dims[0], self.dims[1]);
        self.data[i * c + j]
    }

    /// Slice out index `i` along the first axis; a B×T×D tensor yields the
    /// T×D matrix of sample `i`.
    pub fn index_axis0(&self, i: usize) -> Result<Tensor> {
        if self.dims.len() < 2 || i >= self.dims[0] {
            return Err(Error::Dim(format!(
                "index {i} invalid for first axis of {:?}",
                self.dims
            )));
        }
        let inner: usize = self.dims[1..].iter().product();
        let data = self.data[i * inner..(i + 1) * inner].to_vec();
        Tensor::new(self.dims[1..].to_vec(), data)
    }

    pub fn matmul(&self, other: &Tensor) -> Result<Tensor> {
        let (m, k) = self.rank2()?;
        let (k2, n) = other.rank2()?;
        if k != k2 {
            return Err(Error::Dim(format!("matmul {m}x{k} by {k2}x{n}")));
        }
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for p in 0..k {
                let a = self.data[i * k + p];
                let row = &other.data[p * n..(p + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += a * row[j];
                }
            }
        }
        Tensor::new(vec![m, n], out)
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.dims != other.dims {
            return Err(Error::Dim(format!("add {:?} to {:?}", self.dims, other.dims)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Tensor::new(self.dims.clone(), data)
    }

    pub fn elementwise_mul(&self, other: &Tensor) -> Result<Tensor> {
        if self.dims != other.dims {
            return Err(Error::Dim(format!("mul {:?} by {:?}", self.dims, other.dims)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        Tensor::new(self.dims.clone(), data)
    }

    pub fn transpose(&self) -> Result<Tensor> {
        let (r, c) = self.rank2()?;
        let mut out = vec![0.0; r * c];
        for i in 0..r {
            for j in 0..c {
                out[j * r + i] = self.data[i * c + j];
            }
        }
        Tensor::new(vec![c, r], out)
    }

    /// Arithmetic mean along `axis`, removing that axis.
    pub fn mean_axis(&self, axis: usize) -> Result<Tensor> {
        if axis >= self.dims.len() {
            return Err(Error::Dim(format!("axis {axis} out of range for {:?}", self.dims)));
        }
        if self.dims.len() == 1 {
            let mean = self.data.iter().sum::<f64>() / self.data.len() as f64;
            return Tensor::new(vec![1], vec![mean]);
        }
        let outer: usize = self.dims[..axis].iter().product();
        let mid = self.dims[axis];
        let inner: usize = self.dims[axis + 1..].iter().product();
        let mut out = vec![0.0; outer * inner];
        for o in 0..outer {
            for m in 0..mid {
                let base = (o * mid + m) * inner;
                for i in 0..inner {
                    out[o * inner + i] += self.data[base + i];
                }
            }
        }
        for x in &mut out {
            *x /= mid as f64;
        }
        let mut dims = self.dims.clone();
        dims.remove(axis);
        Tensor::new(dims, out)
    }

    /// Write in the RKUP dump format: magic "RKUP", u32 LE version (=1),
    /// u32 ndims, the dims as u32, then the data as f32 LE, row-major.
    pub fn write_rkup(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + 4 * self.data.len());
        buf.extend_from_slice(b"RKUP");
        buf.extend_from_slice(&1u32.to_le_bytes());
        buf.extend_from_slice(&(self.dims.len() as u32).to_le_bytes());
        for &d in &self.dims {
            buf.extend_from_slice(&(d as u32).to_le_bytes());
        }
        for &x in &self.data {
            buf.extend_from_slice(&(x as f32).to_le_bytes());
        }
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        f.write_all(&buf).map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(())
    }

    pub fn read_rkup(path: &Path) -> Result<Tensor> {
        let mut f = std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut buf = Vec::new();
        f.read_to_end(&mut buf).map_err(|e| Error::io(path.display().to_string(), e))?;
        Tensor::from_rkup_bytes(&buf)
    }

    pub fn from_rkup_bytes(buf: &[u8]) -> Result<Tensor> {
        let take_u32 = |at: usize| -> Result<u32> {
            buf.get(at..at + 4)
                .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
                .ok_or_else(|| Error::Format("truncated header".into()))
        };
        if buf.get(..4) != Some(b"RKUP") {
            return Err(Error::Format("bad magic".into()));
        }
        let version = take_u32(4)?;
        if version != 1 {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let ndims = take_u32(8)? as usize;
        if ndims == 0 || ndims > 8 {
            return Err(Error::Format(format!("implausible ndims {ndims}")));
        }
        let mut dims = Vec::with_capacity(ndims);
        for i in 0..ndims {
            dims.push(take_u32(12 + 4 * i)? as usize);
        }
        let n: usize = dims.iter().product();
        let data_at = 12 + 4 * ndims;
        let bytes = buf
            .get(data_at..)
            .ok_or_else(|| Error::Format("truncated data".into()))?;
        if bytes.len() != 4 * n {
            return Err(Error::Format(format!(
                "expected {} data bytes, got {}",
                4 * n,
                bytes.len()
            )));
        }
        let data = bytes
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().unwrap()) as f64)
            .collect();
        Tensor::new(dims, data)
    }
}
