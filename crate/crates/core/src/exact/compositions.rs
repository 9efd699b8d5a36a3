use std::fmt;

/// An ordered sequence of positive integers with a fixed sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Builds a composition from its parts; rejects empty input and zero parts.
    pub fn new(parts: Vec<u32>) -> crate::Result<Self> {
        if parts.is_empty() {
            return Err(crate::Error::InvalidArgument(
                "a composition needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(crate::Error::InvalidArgument(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Streams compositions of `total`, ordered by number of parts and, within a
/// fixed number of parts, in decreasing lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    total: u32,
    current: Option<Vec<u32>>,
    max_parts: u32,
}

impl Compositions {
    fn first_with(total: u32, parts: u32) -> Option<Vec<u32>> {
        if parts == 0 || parts > total {
            return None;
        }
        let mut v = vec![1; parts as usize];
        v[0] = total - parts + 1;
        Some(v)
    }

    // next composition with the same number of parts, decreasing lex order
    fn advance(parts: &mut [u32]) -> bool {
        let n = parts.len();
        if n < 2 {
            return false;
        }
        let Some(j) = (0..n - 1).rev().find(|&j| parts[j] > 1) else {
            return false;
        };
        parts[j] -= 1;
        let suffix: u32 = parts[j + 1..].iter().sum::<u32>() + 1;
        let tail = (n - j - 1) as u32;
        parts[j + 1] = suffix - (tail - 1);
        for p in &mut parts[j + 2..] {
            *p = 1;
        }
        true
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.as_mut()?;
        let out = Composition { parts: cur.clone() };
        if !Self::advance(cur) {
            let len = cur.len() as u32;
            self.current = if len < self.max_parts {
                Self::first_with(self.total, len + 1)
            } else {
                None
            };
        }
        Some(out)
    }
}

/// All `2^(m-1)` compositions of `m >= 1`; empty for `m = 0`.
pub fn compositions(m: u32) -> Compositions {
    Compositions {
        total: m,
        current: Compositions::first_with(m, 1),
        max_parts: m,
    }
}

/// The `binomial(m-1, i-1)` compositions of `m` with exactly `i` parts.
pub fn compositions_with_parts(m: u32, i: u32) -> Compositions {
    Compositions {
        total: m,
        current: Compositions::first_with(m, i),
        max_parts: i,
    }
}
