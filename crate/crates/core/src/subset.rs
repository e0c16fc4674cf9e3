//! Fixed-width bit-vector subsets of a ground set `{0, .., n-1}`.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// A subset of the ground set `{0, .., n-1}`.
///
/// Equality and hashing are extensional: two subsets are equal iff they have
/// the same universe size and the same members. Bits beyond `n` are always
/// zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    words: Words,
}

impl Subset {
    /// The empty subset of a ground set of size `n`.
    pub fn empty(n: usize) -> Self {
        let mut words = Words::new();
        words.resize(n.div_ceil(WORD), 0);
        Subset { n, words }
    }

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(n);
            *w = if hi - lo == WORD {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        s
    }

    /// Builds a subset from element ids, rejecting ids `>= n`. Duplicates are
    /// collapsed.
    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for id in ids {
            s.try_insert(id)?;
        }
        Ok(s)
    }

    /// Builds a subset from the low `n` bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(
            n <= WORD,
            "from_mask supports ground sets of at most 64 elements"
        );
        let mut s = Self::empty(n);
        if n > 0 {
            let keep = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// The members as a bit mask (`n <= 64`).
    pub fn to_mask(&self) -> u64 {
        assert!(
            self.n <= WORD,
            "to_mask supports ground sets of at most 64 elements"
        );
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.n && self.words[id / WORD] >> (id % WORD) & 1 == 1
    }

    /// Inserts `id`, returning whether it was newly added.
    ///
    /// Panics if `id` is out of range; see [`Subset::try_insert`].
    pub fn insert(&mut self, id: usize) -> bool {
        self.try_insert(id).expect("element out of range")
    }

    pub fn try_insert(&mut self, id: usize) -> Result<bool> {
        if id >= self.n {
            return Err(Error::ElementOutOfRange {
                element: id,
                universe: self.n,
            });
        }
        let (w, b) = (id / WORD, id % WORD);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        Ok(fresh)
    }

    /// Removes `id`, returning whether it was present.
    pub fn remove(&mut self, id: usize) -> bool {
        if id >= self.n {
            return false;
        }
        let (w, b) = (id / WORD, id % WORD);
        let present = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        present
    }

    /// Copy of `self` with `id` added.
    pub fn with(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    /// Copy of `self` with `id` removed.
    pub fn without(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.remove(id);
        s
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_words(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        Subset { n: self.n, words }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.n).difference(self)
    }

    pub fn symmetric_difference_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn difference_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| a & b == 0)
    }

    /// Checks that `self` lives in a ground set of size `n`.
    pub fn check_universe(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: n,
                found: self.n,
            })
        }
    }

    /// Re-embeds into a ground set of size `n`, dropping members `>= n`.
    pub fn resized(&self, n: usize) -> Self {
        let mut s = Self::empty(n);
        for id in self.iter().take_while(|&id| id < n) {
            s.insert(id);
        }
        s
    }

    /// Textual form with ids shifted by `offset` (1 for one-indexed output).
    pub fn display_with_offset(&self, offset: usize) -> String {
        let ids: Vec<String> = self.iter().map(|i| (i + offset).to_string()).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// Parses `{i1,i2,...}` (or a bare comma/space separated list) with ids
    /// shifted down by `offset`.
    pub fn parse_with_offset(n: usize, text: &str, offset: usize) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let mut s = Self::empty(n);
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let id: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("bad element id `{tok}`")))?;
            if id < offset {
                return Err(Error::invalid(format!(
                    "element id {id} below index base {offset}"
                )));
            }
            s.try_insert(id - offset)?;
        }
        Ok(s)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with_offset(0))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self, self.n)
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
