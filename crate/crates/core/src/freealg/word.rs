use smallvec::SmallVec;
use std::cmp::Ordering;

/// Index of a generator in its presentation's alphabet.
pub type Letter = u8;

/// A monomial in the free monoid on an alphabet. The empty word is the unit.
///
/// `Ord` is degree-lexicographic with the alphabet order; presentations may
/// use a different monomial order for orienting rules, but this one fixes the
/// storage order of terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 12]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_slice(ls: &[Letter]) -> Self {
        Word(SmallVec::from_slice(ls))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Exponent vector (letter multiplicities) over an alphabet of size `n`.
    pub fn exponents(&self, n: usize) -> SmallVec<[u16; 16]> {
        let mut e = SmallVec::from_elem(0u16, n);
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        e
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
