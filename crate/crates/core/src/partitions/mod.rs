//! Integer partitions / Young diagrams.

mod geometry;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use geometry::{AnisotropicDiagram, Coord, Profile};

/// A weakly decreasing list of positive parts. Ordering is lexicographic on
/// the part list, which refines dominance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts not decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the input and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-row partition `(k)`; empty for `k = 0`.
    pub fn row(k: u32) -> Self {
        Partition::from_unsorted(vec![k])
    }

    /// `1^n`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// |λ|
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// ℓ(λ)
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// ‖π‖ = |π| − ℓ(π).
    pub fn length_stat(&self) -> usize {
        self.size() - self.len()
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// z_π = ∏_i m_i! · i^{m_i}.
    pub fn z_factor(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, m) in self.multiplicities() {
            for k in 1..=m {
                z *= BigInt::from(k) * BigInt::from(i);
            }
        }
        z
    }

    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// π ∪ 1^{n−|π|}; `None` when |π| > n.
    pub fn pad_ones(&self, n: usize) -> Option<Partition> {
        let s = self.size();
        if s > n {
            return None;
        }
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - s));
        Some(Partition { parts })
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Cells `(row, col)`, 0-indexed, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Arm length of the cell `(i, j)`.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(i) as usize - j - 1
    }

    /// Leg length of the cell `(i, j)`; `conj` must be the conjugate.
    pub fn leg_with(conj: &Partition, i: usize, j: usize) -> usize {
        conj.part(j) as usize - i - 1
    }

    pub fn leg(&self, i: usize, j: usize) -> usize {
        Self::leg_with(&self.conjugate(), i, j)
    }

    /// (arm, leg) of every cell.
    pub fn arm_legs(&self) -> Vec<(usize, usize)> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| (self.arm(i, j), Self::leg_with(&conj, i, j)))
            .collect()
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        self.arm_legs().into_iter().map(|(a, l)| a + l + 1).collect()
    }

    /// Dominance order: `self ⊵ other` for partitions of the same size.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let k = self.len().max(other.len());
        let (mut s, mut t) = (0u64, 0u64);
        for i in 0..k {
            s += self.part(i) as u64;
            t += other.part(i) as u64;
            if s < t {
                return false;
            }
        }
        true
    }

    /// Cells that can be added, as `(row, col)` 0-indexed, top row first.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            let p = self.part(i);
            if i == 0 || self.part(i - 1) > p {
                out.push((i, p as usize));
            }
        }
        out
    }

    /// Corner cells that can be removed, `(row, col)` 0-indexed.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.part(i + 1) < self.part(i))
            .map(|i| (i, self.part(i) as usize - 1))
            .collect()
    }

    /// Adds a box at the end of row `i`, which must be addable.
    pub fn add_box(&self, i: usize) -> Partition {
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(1);
        } else {
            parts[i] += 1;
        }
        debug_assert!(i == 0 || parts[i - 1] >= parts[i]);
        Partition { parts }
    }

    /// Removes the last box of row `i`, which must be removable.
    pub fn remove_box(&self, i: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        if parts[i] == 0 {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn is_rectangle(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.parts).expect("serializable")
    }

    /// Compact key used in maps and file names, e.g. `4,3,1`.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[4,3,1]`, `(4,3,1)`, `4,3,1`, `4 3 1`, `[]` and `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse lexicographic order: `(n)` first,
/// `1^n` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut cur: Vec<u32> = vec![n as u32];
    loop {
        out.push(Partition { parts: cur.clone() });
        // rightmost part larger than 1
        let Some(k) = cur.iter().rposition(|&p| p > 1) else {
            break;
        };
        let v = cur[k] - 1;
        let mut rem: u32 = cur[k + 1..].iter().sum::<u32>() + 1;
        cur.truncate(k);
        cur.push(v);
        while rem > 0 {
            let take = rem.min(v);
            cur.push(take);
            rem -= take;
        }
    }
    out
}

/// Positions of the partitions of `n` in [`enumerate_partitions`] order.
pub fn partition_index(parts: &[Partition]) -> BTreeMap<Partition, usize> {
    parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate_partitions(4).iter().map(|x| x.key()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(enumerate_partitions(10).len(), 42);
    }

    #[test]
    fn statistics() {
        assert_eq!(p(&[5, 4, 3, 3, 1]).z_factor(), BigInt::from(360));
        assert_eq!(p(&[2]).z_factor(), BigInt::from(2));
        assert_eq!(Partition::empty().z_factor(), BigInt::from(1));
        assert_eq!(p(&[5, 3, 1]).length_stat(), 6);
        assert_eq!(p(&[4, 3]).concat(&p(&[5, 3, 1])), p(&[5, 4, 3, 3, 1]));
        assert_eq!(p(&[4, 3, 1]).conjugate(), p(&[3, 2, 2, 1]));
        assert_eq!(p(&[3, 1]).hook_lengths(), vec![4, 2, 1, 1]);
    }

    #[test]
    fn corners() {
        let l = p(&[3, 1, 1]);
        assert_eq!(l.addable_cells(), vec![(0, 3), (1, 1), (3, 0)]);
        assert_eq!(l.removable_cells(), vec![(0, 2), (2, 0)]);
        assert_eq!(l.remove_box(2), p(&[3, 1]));
        assert_eq!(l.add_box(1), p(&[3, 2, 1]));
    }

    #[test]
    fn parsing() {
        assert_eq!("[4,3,1]".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("(2, 1)".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        let j: Partition = serde_json::from_str("[4,3,1]").unwrap();
        assert_eq!(j.to_json(), "[4,3,1]");
    }

    #[test]
    fn dominance() {
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[3, 1, 1, 1]).dominates(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominates(&p(&[3, 1, 1, 1])));
    }
}
