use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense bit-indexed subset of `0..capacity` with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
    len: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
            len: 0,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    /// Builds a set from indices; out-of-range indices panic.
    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, indices: I) -> Self {
        let mut s = Self::new(capacity);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Set from the low `capacity` bits of a mask (`capacity <= 64`).
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        assert!(capacity <= 64, "mask sets hold at most 64 vertices");
        let mut s = Self::new(capacity);
        let mask = if capacity == 64 {
            mask
        } else {
            mask & ((1u64 << capacity) - 1)
        };
        if capacity > 0 {
            s.words[0] = mask;
        }
        s.len = mask.count_ones() as usize;
        s
    }

    /// Low word of the set, valid when `capacity <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.capacity <= 64, "mask sets hold at most 64 vertices");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true when `v` was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.capacity,
            "vertex {v} out of range {}",
            self.capacity
        );
        let w = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        self.len += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let w = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        let present = *w & bit != 0;
        *w &= !bit;
        self.len -= present as usize;
        present
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.len = 0;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.capacity);
        for (i, w) in out.words.iter_mut().enumerate() {
            *w = self.words[i] & other.words.get(i).copied().unwrap_or(0);
        }
        out.recount();
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.recount();
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SetRepr {
    capacity: usize,
    members: Vec<usize>,
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SetRepr {
            capacity: self.capacity,
            members: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SetRepr::deserialize(d)?;
        let mut s = VertexSet::new(repr.capacity);
        for v in repr.members {
            if v >= repr.capacity {
                return Err(serde::de::Error::custom(format!(
                    "member {v} out of range {}",
                    repr.capacity
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_tracks_cardinality() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.to_vec(), vec![129]);
    }

    #[test]
    fn mask_conversion() {
        let s = VertexSet::from_mask(8, 0b1010_0101);
        assert_eq!(s.to_vec(), vec![0, 2, 5, 7]);
        assert_eq!(s.to_mask(), 0b1010_0101);
        assert_eq!(VertexSet::from_mask(3, 0xff).len(), 3);
    }

    proptest! {
        #[test]
        fn cardinality_is_popcount(cap in 1usize..200, picks in proptest::collection::vec(0usize..200, 0..50)) {
            let s = VertexSet::from_indices(cap, picks.iter().copied().filter(|&v| v < cap));
            let pop: usize = s.words.iter().map(|w| w.count_ones() as usize).sum();
            prop_assert_eq!(s.len(), pop);
            prop_assert!(s.iter().all(|v| v < cap));
            let back: VertexSet = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
