//! Named, ordered bases for the chain spaces.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite-dimensional space with a named, ordered basis.
///
/// Large tensor-product spaces keep their basis labels implicit (generated on
/// demand from the index) to avoid materializing millions of strings.
#[derive(Debug, Clone)]
pub struct IndexedSpace {
    pub name: String,
    labels: Labels,
    dim: usize,
}

#[derive(Debug, Clone)]
enum Labels {
    Explicit(Arc<Vec<String>>),
    Numbered,
}

impl IndexedSpace {
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Result<IndexedSpace> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b) {
                return Err(Error::structure(format!("duplicate basis label `{b}`")));
            }
        }
        Ok(IndexedSpace {
            name: name.into(),
            dim: basis.len(),
            labels: Labels::Explicit(Arc::new(basis)),
        })
    }

    pub fn numbered(name: impl Into<String>, dim: usize) -> IndexedSpace {
        IndexedSpace {
            name: name.into(),
            labels: Labels::Numbered,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Labels::Explicit(v) => v[i].clone(),
            Labels::Numbered => format!("e{i}"),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Labels::Explicit(v) => v.iter().position(|l| l == label),
            Labels::Numbered => label
                .strip_prefix('e')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i < self.dim),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.label(i)).collect()
    }

    /// Tensor product; labels are kept only while the result stays small.
    pub fn tensor(&self, other: &IndexedSpace) -> IndexedSpace {
        let dim = self.dim * other.dim;
        let name = format!("{}⊗{}", self.name, other.name);
        if dim <= 4096 {
            let mut basis = Vec::with_capacity(dim);
            for i in 0..self.dim {
                for j in 0..other.dim {
                    basis.push(format!("{}⊗{}", self.label(i), other.label(j)));
                }
            }
            IndexedSpace {
                name,
                dim,
                labels: Labels::Explicit(Arc::new(basis)),
            }
        } else {
            IndexedSpace::numbered(name, dim)
        }
    }
}

/// Mixed-radix encoding of tuple indices into a flat tensor index,
/// leftmost factor most significant.
pub fn encode_index(dims: &[usize], tuple: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), tuple.len());
    let mut idx = 0;
    for (d, t) in dims.iter().zip(tuple) {
        debug_assert!(t < d);
        idx = idx * d + t;
    }
    idx
}

/// Inverse of [`encode_index`].
pub fn decode_index(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut tuple = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        tuple[k] = idx % dims[k];
        idx /= dims[k];
    }
    debug_assert_eq!(idx, 0);
    tuple
}

pub fn total_dim(dims: &[usize]) -> usize {
    dims.iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_roundtrip() {
        let dims = [3, 4, 2];
        for i in 0..24 {
            assert_eq!(encode_index(&dims, &decode_index(&dims, i)), i);
        }
        assert_eq!(encode_index(&dims, &[1, 2, 1]), 8 + 2 * 2 + 1);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(IndexedSpace::new("V", vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn tensor_labels() {
        let a = IndexedSpace::new("A", vec!["x".into(), "y".into()]).unwrap();
        let b = IndexedSpace::new("B", vec!["u".into()]).unwrap();
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.label(1), "y⊗u");
    }
}
