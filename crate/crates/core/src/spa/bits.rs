/// Fixed-length bit set used for extents (`κ(a)`) and intents (`ξ(p)`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn empty(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    pub fn from_bools(v: impl IntoIterator<Item = bool>) -> Self {
        let v: Vec<bool> = v.into_iter().collect();
        let mut b = Self::empty(v.len());
        for (i, &x) in v.iter().enumerate() {
            if x {
                b.set(i);
            }
        }
        b
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Bits::from_bools([true, false, true, true]);
        let b = Bits::from_bools([true, true, false, true]);
        assert_eq!(a.and(&b).ones().collect::<Vec<_>>(), vec![0, 3]);
        assert!(a.and(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(Bits::empty(70).is_empty());
        assert_eq!(Bits::full(70).ones().count(), 70);
    }
}
