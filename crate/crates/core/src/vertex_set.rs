use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A set of vertex ids, iterated in ascending order.
///
/// This is the representation of every dominating set, independent set and
/// bag. Serialization writes ascending 1-based ids separated by spaces.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        Self(BTreeSet::from([v]))
    }

    /// Builds a set from 1-based ids.
    pub fn from_one_based(ids: impl IntoIterator<Item = usize>) -> Self {
        ids.into_iter().map(|v| v - 1).collect()
    }

    /// Decodes a bit pattern (bit `i` set means vertex `i`).
    pub fn from_mask(mask: u64) -> Self {
        let mut out = BTreeSet::new();
        let mut m = mask;
        while m != 0 {
            out.insert(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        Self(out)
    }

    /// Encodes the set as a bit pattern. Every member must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| {
            debug_assert!(v < 64);
            m | (1u64 << v)
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        self.0.symmetric_difference(&other.0).count()
    }

    /// Fails if any member is `>= n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.last() {
            Some(v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Parses 1-based ids separated by whitespace and/or commas.
    ///
    /// Duplicates and id 0 are rejected; `n` bounds the ids when given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut out = VertexSet::new();
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let id: usize = tok
                .parse()
                .map_err(|_| Error::parse(1, format!("bad vertex id `{tok}`")))?;
            if id == 0 {
                return Err(Error::parse(1, "vertex ids are 1-based"));
            }
            if let Some(n) = n {
                if id > n {
                    return Err(Error::VertexOutOfRange { vertex: id - 1, n });
                }
            }
            if !out.insert(id - 1) {
                return Err(Error::parse(1, format!("duplicate vertex {id}")));
            }
        }
        Ok(out)
    }

    /// Compact `{1,3}` rendering for messages and reports.
    pub fn braced(&self) -> String {
        let ids: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
        format!("{{{}}}", ids.join(","))
    }
}

/// Space-separated ascending 1-based ids.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.braced())
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<T: IntoIterator<Item = Vertex>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

/// Lexicographic order on sorted member lists, for sets of equal size
/// encoded as masks: the set holding the lowest differing bit comes first.
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b) & (a ^ b).wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Size-then-lexicographic order on masks.
pub(crate) fn canonical_cmp_masks(a: u64, b: u64) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| lex_cmp_masks(a, b))
}
