use crate::freealg::Word;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Length, then lexicographic in alphabet order.
    Deglex,
    /// Weighted length, then length, then lexicographic.
    Weighted,
    /// Exponent vectors compared lexicographically, an earlier letter being
    /// more significant and a higher exponent counting as larger; ties are
    /// broken by deglex. Normal words of a PBW system are sorted words, so
    /// relations with longer leading words can act by divisibility.
    Pbw,
}

impl OrderKind {
    pub fn keyword(self) -> &'static str {
        match self {
            OrderKind::Deglex => "deglex",
            OrderKind::Weighted => "weighted",
            OrderKind::Pbw => "pbw",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "deglex" => Some(OrderKind::Deglex),
            "weighted" => Some(OrderKind::Weighted),
            "pbw" => Some(OrderKind::Pbw),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, weights: Vec<u32>) -> Self {
        MonomialOrder { kind, weights }
    }

    fn weight(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&l| self.weights.get(l as usize).copied().unwrap_or(1) as u64).sum()
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        match self.kind {
            OrderKind::Deglex => a.cmp(b),
            OrderKind::Weighted => self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b)),
            OrderKind::Pbw => {
                let n = self.weights.len().max(
                    a.letters().iter().chain(b.letters()).map(|&l| l as usize + 1).max().unwrap_or(0),
                );
                let (ea, eb) = (a.exponents(n), b.exponents(n));
                for i in 0..n {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                a.cmp(b)
            }
        }
    }

    /// The largest word of a non-empty set of words.
    pub fn max<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Option<&'a Word> {
        words.into_iter().max_by(|a, b| self.cmp(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pbw_orders_det_leading_term() {
        let o = MonomialOrder::new(OrderKind::Pbw, vec![1; 9]);
        // u11 u22 u33 beats u11 u23 u32 and u12 u21 u33
        let a = Word::from_slice(&[0, 4, 8]);
        let b = Word::from_slice(&[0, 5, 7]);
        let c = Word::from_slice(&[1, 3, 8]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert_eq!(o.cmp(&a, &c), Ordering::Greater);
        assert_eq!(o.cmp(&a, &Word::unit()), Ordering::Greater);
        // qmatrix4 correction term is smaller than the sorted pair
        let ijkm = Word::from_slice(&[0, 4]);
        let imkj = Word::from_slice(&[1, 3]);
        assert_eq!(o.cmp(&ijkm, &imkj), Ordering::Greater);
    }

    #[test]
    fn weighted_orients_alpha_alphastar() {
        // u<u*<alpha<alpha*<gamma<gamma*
        let o = MonomialOrder::new(OrderKind::Weighted, vec![1, 1, 2, 2, 1, 1]);
        let aa = Word::from_slice(&[2, 3]);
        let gg = Word::from_slice(&[4, 5]);
        assert_eq!(o.cmp(&aa, &gg), Ordering::Greater);
    }
}
