use crate::space::{Alt, ProductSpace};

/// A set of alternatives as a bitset over alternative ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltSet {
    m2: usize,
    len: usize,
    words: Vec<u64>,
}

impl AltSet {
    pub fn empty(space: &ProductSpace) -> Self {
        let len = space.len();
        AltSet {
            m2: space.m2(),
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(space: &ProductSpace) -> Self {
        let mut s = AltSet::empty(space);
        for id in 0..s.len {
            s.words[id / 64] |= 1 << (id % 64);
        }
        s
    }

    pub fn from_alts(space: &ProductSpace, alts: impl IntoIterator<Item = Alt>) -> Self {
        let mut s = AltSet::empty(space);
        for x in alts {
            s.insert(x);
        }
        s
    }

    fn id(&self, x: Alt) -> usize {
        x.0 * self.m2 + x.1
    }

    pub fn contains(&self, x: Alt) -> bool {
        let id = self.id(x);
        self.words[id / 64] >> (id % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: Alt) {
        let id = self.id(x);
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, x: Alt) {
        let id = self.id(x);
        self.words[id / 64] &= !(1 << (id % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &AltSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &AltSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &AltSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Members in id order (row-major).
    pub fn iter(&self) -> impl Iterator<Item = Alt> + '_ {
        (0..self.len)
            .filter(move |&id| self.words[id / 64] >> (id % 64) & 1 == 1)
            .map(move |id| Alt(id / self.m2, id % self.m2))
    }
}
