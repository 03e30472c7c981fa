use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`PartialOrder`](super::PartialOrder) can represent.
pub const MAX_ALTERNATIVES: usize = 32;

/// An alternative, identified by its index in the universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative(pub u8);

impl Alternative {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of alternatives stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AltSet(pub u32);

impl AltSet {
    pub const EMPTY: AltSet = AltSet(0);

    /// The full set `{0, .., m-1}`.
    pub fn full(m: usize) -> AltSet {
        if m >= 32 {
            AltSet(u32::MAX)
        } else {
            AltSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(a: Alternative) -> AltSet {
        AltSet(1 << a.0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> AltSet {
        AltSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, a: Alternative) -> bool {
        self.0 & (1 << a.0) != 0
    }

    pub fn insert(&mut self, a: Alternative) {
        self.0 |= 1 << a.0;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: AltSet) -> AltSet {
        AltSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AltSet) -> AltSet {
        AltSet(self.0 & other.0)
    }

    pub fn difference(self, other: AltSet) -> AltSet {
        AltSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AltSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: AltSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to a universe of `m` alternatives.
    pub fn complement(self, m: usize) -> AltSet {
        AltSet::full(m).difference(self)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = Alternative> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Alternative(i as u8))
            }
        })
    }
}

impl fmt::Debug for AltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Alternative> for AltSet {
    fn from_iter<I: IntoIterator<Item = Alternative>>(iter: I) -> Self {
        let mut set = AltSet::EMPTY;
        for a in iter {
            set.insert(a);
        }
        set
    }
}

/// Display labels for the alternatives of a universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    /// Labels must be distinct and nonempty.
    pub fn new(labels: Vec<String>) -> Result<Universe> {
        if labels.len() > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m: labels.len(),
                max: MAX_ALTERNATIVES,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || labels[..i].contains(label) {
                return Err(Error::Config(format!(
                    "invalid or repeated label {label:?}"
                )));
            }
        }
        Ok(Universe { labels })
    }

    /// `a, b, c, ...` for the first 26 alternatives, `x26, x27, ...` after that.
    pub fn standard(m: usize) -> Universe {
        let labels = (0..m)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{i}")
                }
            })
            .collect();
        Universe { labels }
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Alternative) -> &str {
        &self.labels[a.index()]
    }

    pub fn find(&self, label: &str) -> Option<Alternative> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Alternative(i as u8))
    }

    pub fn set_labels(&self, set: AltSet) -> Vec<String> {
        set.iter().map(|a| self.label(a).to_string()).collect()
    }
}
