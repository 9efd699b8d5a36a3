use std::fmt;

/// A multiset of positive leg indices `(n_1, ..., n_j)`, stored in
/// non-decreasing order so that the largest index is last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex {
    indices: Vec<u32>,
}

impl MultiIndex {
    pub fn new(mut indices: Vec<u32>) -> crate::Result<Self> {
        if indices.contains(&0) {
            return Err(crate::Error::InvalidArgument(
                "multi-index entries must be >= 1".into(),
            ));
        }
        indices.sort_unstable();
        Ok(MultiIndex { indices })
    }

    pub fn empty() -> Self {
        MultiIndex::default()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// Splits off the largest index: `(n_1..n_{j-1}, n_j)`.
    pub fn split_last(&self) -> Option<(MultiIndex, u32)> {
        let (&last, rest) = self.indices.split_last()?;
        Some((
            MultiIndex {
                indices: rest.to_vec(),
            },
            last,
        ))
    }

    /// Every non-decreasing multi-index with `1..=max_len` entries whose sum
    /// is at most `max_total`.
    pub fn all_up_to(max_len: usize, max_total: u32) -> Vec<MultiIndex> {
        fn rec(prefix: &mut Vec<u32>, min: u32, left: u32, max_len: usize, out: &mut Vec<MultiIndex>) {
            if !prefix.is_empty() {
                out.push(MultiIndex {
                    indices: prefix.clone(),
                });
            }
            if prefix.len() == max_len {
                return;
            }
            for v in min..=left {
                prefix.push(v);
                rec(prefix, v, left - v, max_len, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), 1, max_total, max_len, &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let a = MultiIndex::new(vec![2, 1]).unwrap();
        let b = MultiIndex::new(vec![1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.split_last(), Some((MultiIndex::new(vec![1]).unwrap(), 2)));
        assert!(MultiIndex::new(vec![0]).is_err());
    }

    #[test]
    fn enumeration() {
        // j <= 4, sum <= 5: partitions of 1..=5 with at most 4 parts
        let all = MultiIndex::all_up_to(4, 5);
        assert_eq!(all.len(), 1 + 2 + 3 + 5 + 6);
        assert!(all.iter().all(|m| m.total() <= 5 && m.len() <= 4));
    }
}
