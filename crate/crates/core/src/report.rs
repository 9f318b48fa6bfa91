//! Verdicts and per-check reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Undecided,
    Fail,
}

impl Verdict {
    /// The worse of two verdicts.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Undecided => "undecided",
            Verdict::Fail => "fail",
        }
    }
}

/// One elementary claim inside a check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
}

impl Item {
    pub fn pass(label: impl Into<String>) -> Self {
        Item { label: label.into(), verdict: Verdict::Pass, residue: None }
    }

    pub fn fail(label: impl Into<String>, residue: impl Into<String>) -> Self {
        Item { label: label.into(), verdict: Verdict::Fail, residue: Some(residue.into()) }
    }

    pub fn undecided(label: impl Into<String>, why: impl Into<String>) -> Self {
        Item { label: label.into(), verdict: Verdict::Undecided, residue: Some(why.into()) }
    }

    pub fn from_bool(label: impl Into<String>, ok: bool, residue: impl FnOnce() -> String) -> Self {
        if ok {
            Item::pass(label)
        } else {
            Item::fail(label, residue())
        }
    }
}

/// The items of one check at one coefficient point.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Findings {
    pub items: Vec<Item>,
}

impl Findings {
    pub fn new() -> Self {
        Findings::default()
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: Findings) {
        self.items.extend(other.items);
    }

    pub fn verdict(&self) -> Verdict {
        self.items.iter().fold(Verdict::Pass, |v, i| v.and(i.verdict))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.verdict != Verdict::Pass)
    }

    pub fn first_failure(&self) -> Option<&Item> {
        self.items.iter().find(|i| i.verdict == Verdict::Fail).or_else(|| self.failures().next())
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.items.iter().filter(|i| i.verdict == v).count()
    }
}

impl FromIterator<Item> for Findings {
    fn from_iter<T: IntoIterator<Item = Item>>(iter: T) -> Self {
        Findings { items: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_verdict_wins() {
        let f: Findings = [Item::pass("a"), Item::undecided("b", "cap"), Item::fail("c", "r")].into_iter().collect();
        assert_eq!(f.verdict(), Verdict::Fail);
        assert_eq!(f.first_failure().unwrap().label, "c");
        assert_eq!(Verdict::Pass.and(Verdict::Undecided), Verdict::Undecided);
        assert_eq!(Findings::new().verdict(), Verdict::Pass);
    }
}
