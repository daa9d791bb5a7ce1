//! Maya diagrams and partitions.
//!
//! A Maya diagram is a set of integers containing a full upper tail. Its
//! charge `#(N \ S) - #(S \ N)` is zero for the diagrams of virtual
//! cardinal zero; charged diagrams index charts on the other components.
//! Partitions correspond to diagrams of a fixed charge `c` through the
//! complement `c_1 > c_2 > ...` of `S`, with `lambda_k = c_k + k - c`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts.into_iter().filter(|&p| p > 0).collect()))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_i` with one-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with `|lambda| <= n`, by size then reverse lex.
    pub fn up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::of_size).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A set of integers containing `{s, s+1, ...}` for some `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MayaDiagram {
    /// Smallest `s` with `{s, s+1, ...}` contained in the diagram.
    tail_start: i64,
    /// Members below `tail_start - 1`.
    below: BTreeSet<i64>,
}

impl MayaDiagram {
    /// The diagram `{members} u {tail_start, tail_start+1, ...}`.
    pub fn new(tail_start: i64, members_below: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut below = BTreeSet::new();
        for m in members_below {
            if m >= tail_start {
                return Err(Error::Parse(format!(
                    "member {m} is not below the tail start {tail_start}"
                )));
            }
            below.insert(m);
        }
        let mut s = tail_start;
        while below.remove(&(s - 1)) {
            s -= 1;
        }
        Ok(MayaDiagram {
            tail_start: s,
            below,
        })
    }

    /// `{0, 1, 2, ...}`.
    pub fn vacuum() -> Self {
        Self::shifted(0)
    }

    /// `{c, c+1, ...}`, the vacuum of charge `c`.
    pub fn shifted(c: i64) -> Self {
        MayaDiagram {
            tail_start: c,
            below: BTreeSet::new(),
        }
    }

    pub fn tail_start(&self) -> i64 {
        self.tail_start
    }

    pub fn members_below_tail(&self) -> impl Iterator<Item = i64> + '_ {
        self.below.iter().copied()
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= self.tail_start || self.below.contains(&i)
    }

    pub fn min(&self) -> i64 {
        self.below.iter().next().copied().unwrap_or(self.tail_start)
    }

    /// `#({0,1,...} \ S) - #(S \ {0,1,...})`.
    pub fn charge(&self) -> i64 {
        let missing = (0..self.tail_start.max(0)).filter(|i| !self.contains(*i)).count() as i64;
        let extra = (self.min().min(0)..0).filter(|i| self.contains(*i)).count() as i64;
        missing - extra
    }

    pub fn is_virtual_cardinal_zero(&self) -> bool {
        self.charge() == 0
    }

    /// The complement of the diagram inside `[lo, infinity)`, increasing.
    pub fn complement_from(&self, lo: i64) -> Vec<i64> {
        (lo..self.tail_start).filter(|i| !self.contains(*i)).collect()
    }

    pub fn from_partition(lambda: &Partition) -> Self {
        Self::from_charged_partition(lambda, 0)
    }

    /// The diagram of charge `c` whose complement is
    /// `{lambda_k - k + c : k >= 1}`.
    pub fn from_charged_partition(lambda: &Partition, c: i64) -> Self {
        let l = lambda.len() as i64;
        let holes: BTreeSet<i64> = (1..=l)
            .map(|k| lambda.part(k as usize) as i64 - k + c)
            .collect();
        let tail = lambda.part(1) as i64 + c;
        let members: Vec<i64> = (c - l..tail).filter(|i| !holes.contains(i)).collect();
        MayaDiagram::new(tail, members).expect("members lie below the tail")
    }

    /// Partition and charge of the diagram.
    pub fn to_charged_partition(&self) -> (Partition, i64) {
        let c = self.charge();
        let mut holes = self.complement_from(self.min() - 1);
        holes.reverse();
        let parts = holes
            .iter()
            .enumerate()
            .map(|(k, h)| (h + k as i64 + 1 - c) as u32)
            .filter(|&p| p > 0)
            .collect();
        (Partition(parts), c)
    }

    /// The partition of a diagram of virtual cardinal zero.
    pub fn to_partition(&self) -> Result<Partition> {
        let (p, c) = self.to_charged_partition();
        if c != 0 {
            return Err(Error::precondition(format!(
                "Maya diagram {self} has charge {c}, not virtual cardinal zero"
            )));
        }
        Ok(p)
    }
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let below: Vec<String> = self.below.iter().map(i64::to_string).collect();
        if below.is_empty() {
            write!(f, "{{{},...}}", self.tail_start)
        } else {
            write!(f, "{{{},{},...}}", below.join(","), self.tail_start)
        }
    }
}

pub fn maya_to_partition(s: &MayaDiagram) -> Result<Partition> {
    s.to_partition()
}

pub fn partition_to_maya(lambda: &Partition) -> MayaDiagram {
    MayaDiagram::from_partition(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(maya_to_partition(&MayaDiagram::vacuum()).unwrap(), Partition::empty());
        let s = MayaDiagram::new(1, [-1]).unwrap();
        assert_eq!(maya_to_partition(&s).unwrap(), p(&[1]));
        let s = MayaDiagram::new(2, [-1, 0]).unwrap();
        assert_eq!(maya_to_partition(&s).unwrap(), p(&[2]));
        let s = MayaDiagram::new(1, [-2]).unwrap();
        assert_eq!(maya_to_partition(&s).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn canonical_form_absorbs_the_tail() {
        let s = MayaDiagram::new(5, [3, 4, 1]).unwrap();
        assert_eq!(s.tail_start(), 3);
        assert_eq!(s.members_below_tail().collect::<Vec<_>>(), vec![1]);
        assert!(MayaDiagram::new(0, [0]).is_err());
    }

    /// Every diagram of charge zero with `|lambda| <= 2` is found by brute
    /// force over subsets of a small interval.
    #[test]
    fn exhaustive_enumeration_matches() {
        let mut found = Vec::new();
        for mask in 0u32..(1 << 6) {
            let members: Vec<i64> = (0..6).filter(|b| mask >> b & 1 == 1).map(|b| b - 3).collect();
            let s = MayaDiagram::new(3, members).unwrap();
            if s.charge() != 0 {
                continue;
            }
            let lambda = s.to_partition().unwrap();
            if lambda.size() <= 2 {
                found.push(lambda);
            }
        }
        found.sort();
        let mut expected = Partition::up_to(2);
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn round_trips() {
        for lambda in Partition::up_to(6) {
            let s = partition_to_maya(&lambda);
            assert!(s.is_virtual_cardinal_zero());
            assert_eq!(maya_to_partition(&s).unwrap(), lambda);
            for c in -3..=3 {
                let s = MayaDiagram::from_charged_partition(&lambda, c);
                assert_eq!(s.to_charged_partition(), (lambda.clone(), c));
            }
        }
    }

    #[test]
    fn charge_counts_the_defect() {
        assert_eq!(MayaDiagram::shifted(2).charge(), 2);
        assert_eq!(MayaDiagram::shifted(-3).charge(), -3);
        assert!(MayaDiagram::new(1, [-1]).unwrap().is_virtual_cardinal_zero());
        assert!(MayaDiagram::shifted(1).to_partition().is_err());
    }

    #[test]
    fn partition_enumeration_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
