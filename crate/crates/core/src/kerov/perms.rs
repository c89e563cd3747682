//! Pairs of permutations, their conjugation classes and expanders.

use std::collections::{BTreeMap, VecDeque};

use num_traits::One;

use super::graded::{GradedPolynomial, KerovMonomial};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const PAIR_CLASS_CAP: usize = 7;

/// A permutation of {0, …, l−1} as its image list.
pub type Perm = Vec<usize>;

pub fn identity(l: usize) -> Perm {
    (0..l).collect()
}

/// All permutations of {0, …, l−1} in lexicographic order.
pub fn all_permutations(l: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(l);
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (0..l.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..l).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Cycles listed by their smallest element, each starting there.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        out.push(c);
    }
    out
}

pub fn cycle_count(p: &[usize]) -> usize {
    cycles(p).len()
}

/// ‖π‖ = l − number of cycles.
pub fn perm_length(p: &[usize]) -> usize {
    p.len() - cycle_count(p)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationPair {
    pub sigma1: Perm,
    pub sigma2: Perm,
}

impl PermutationPair {
    pub fn new(sigma1: Perm, sigma2: Perm) -> Result<Self> {
        let l = sigma1.len();
        let ok = |p: &Perm| {
            let mut seen = vec![false; l];
            p.len() == l && p.iter().all(|&x| x < l && !std::mem::replace(&mut seen[x], true))
        };
        if !ok(&sigma1) || !ok(&sigma2) {
            return Err(Error::InvalidArgument("not a pair of permutations of one set".into()));
        }
        Ok(PermutationPair { sigma1, sigma2 })
    }

    pub fn size(&self) -> usize {
        self.sigma1.len()
    }

    pub fn is_transitive(&self) -> bool {
        let l = self.size();
        if l == 0 {
            return true;
        }
        let mut seen = vec![false; l];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [self.sigma1[x], self.sigma2[x]] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == l
    }

    /// (πσ1π⁻¹, πσ2π⁻¹).
    pub fn conjugate_by(&self, pi: &[usize]) -> PermutationPair {
        let conj = |s: &Perm| {
            let mut out = vec![0; s.len()];
            for x in 0..s.len() {
                out[pi[x]] = pi[s[x]];
            }
            out
        };
        PermutationPair { sigma1: conj(&self.sigma1), sigma2: conj(&self.sigma2) }
    }

    /// Relabels points in breadth-first order from the last point, which
    /// stays fixed. Equal for two transitive pairs exactly when they are
    /// conjugate by a permutation fixing the last point.
    pub fn canonical_form(&self) -> Option<PermutationPair> {
        let l = self.size();
        if l == 0 {
            return Some(self.clone());
        }
        let root = l - 1;
        let mut label = vec![usize::MAX; l];
        label[root] = root;
        let mut next = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in [self.sigma1[x], self.sigma2[x]] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    next += 1;
                    queue.push_back(y);
                }
            }
        }
        if next != root {
            return None;
        }
        Some(self.conjugate_by(&label))
    }
}

/// One orbit of transitive pairs under conjugation by the permutations
/// fixing the last point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub representative: PermutationPair,
    pub size: usize,
}

impl PairClass {
    pub fn c1(&self) -> usize {
        cycle_count(&self.representative.sigma1)
    }

    pub fn c2(&self) -> usize {
        cycle_count(&self.representative.sigma2)
    }
}

/// σ2 = (1 … i_1)(i_1+1 … i_2) ⋯ for each composition of l.
fn sorted_cycle_forms(l: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for mask in 0..(1usize << l.saturating_sub(1)) {
        let mut p = vec![0; l];
        let mut start = 0;
        for end in 0..l {
            let cut = end == l - 1 || mask & (1 << end) != 0;
            if cut {
                for x in start..end {
                    p[x] = x + 1;
                }
                p[end] = start;
                start = end + 1;
            }
        }
        out.push(p);
    }
    out
}

pub fn transitive_pair_classes(l: usize) -> Result<Vec<PairClass>> {
    if l > PAIR_CLASS_CAP {
        return Err(Error::CapExceeded { what: "pair classes", requested: l, cap: PAIR_CLASS_CAP });
    }
    if l == 0 {
        return Err(Error::InvalidArgument("pair classes need l ≥ 1".into()));
    }
    let orbit: usize = (1..l).product();
    let perms = all_permutations(l);
    let mut found: BTreeMap<PermutationPair, PermutationPair> = BTreeMap::new();
    for s2 in sorted_cycle_forms(l) {
        for s1 in &perms {
            let pair = PermutationPair { sigma1: s1.clone(), sigma2: s2.clone() };
            if let Some(key) = pair.canonical_form() {
                found.entry(key).or_insert(pair);
            }
        }
    }
    Ok(found
        .into_values()
        .map(|representative| PairClass { representative, size: orbit })
        .collect())
}

/// Expander test; `q[j]` weights the j-th cycle of σ2 as listed by [`cycles`].
pub fn is_expander(sigma1: &[usize], sigma2: &[usize], q: &[u32]) -> bool {
    let c2 = cycles(sigma2);
    if q.len() != c2.len() || q.iter().any(|&x| x < 2) {
        return false;
    }
    let c1 = cycles(sigma1);
    let total: usize = q.iter().map(|&x| x as usize).sum();
    if total != c1.len() + c2.len() {
        return false;
    }
    let mut owner = vec![0; sigma1.len()];
    for (idx, c) in c1.iter().enumerate() {
        for &x in c {
            owner[x] = idx;
        }
    }
    let full = (1usize << c2.len()) - 1;
    for subset in 1..full {
        let mut met = vec![false; c1.len()];
        let mut budget = 0usize;
        for (j, c) in c2.iter().enumerate() {
            if subset & (1 << j) != 0 {
                budget += q[j] as usize - 1;
                for &x in c {
                    met[owner[x]] = true;
                }
            }
        }
        if met.iter().filter(|&&b| b).count() <= budget {
            return false;
        }
    }
    true
}

/// All weightings of `parts` cycles by integers ≥ 2 summing to `total`.
pub(crate) fn weightings(parts: usize, total: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, total: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for q in 2..=total.saturating_sub(2 * (left - 1)) {
            cur.push(q as u32);
            rec(left - 1, total - q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}

/// γ-exponent l + 1 − |C(σ1)| − |C(σ2)| of a class, with its expander
/// weightings.
pub(crate) fn class_expanders(class: &PairClass, l: usize) -> (usize, Vec<Vec<u32>>) {
    let (c1, c2) = (class.c1(), class.c2());
    let v = l + 1 - c1 - c2;
    let rep = &class.representative;
    let qs = weightings(c2, c1 + c2)
        .into_iter()
        .filter(|q| is_expander(&rep.sigma1, &rep.sigma2, q))
        .collect();
    (v, qs)
}

/// Top-degree part of Ch_l as a sum over classes and expanders.
pub fn top_degree_formula(l: usize) -> Result<GradedPolynomial> {
    let mut out = GradedPolynomial::new();
    for class in transitive_pair_classes(l)? {
        let (v, qs) = class_expanders(&class, l);
        for q in qs {
            let m = KerovMonomial::new(v as u32, Partition::from_unsorted(q))?;
            out.add_term(m, Rational::one());
        }
    }
    Ok(out)
}

/// γ · Σ_i Σ_{k_1+⋯+k_i = l} (l/i)(k_1−1)⋯(k_i−1) R_{k_1}⋯R_{k_i},
/// a displayed candidate for the γ-linear top-degree part of Ch_l. It is
/// kept for comparison with the oracle; the two disagree (see tests).
pub fn gamma_linear_candidate(l: usize) -> Result<GradedPolynomial> {
    let mut out = GradedPolynomial::new();
    for i in 1..=l / 2 {
        for ks in weightings(i, l) {
            let mut c = Rational::new((l as i64).into(), (i as i64).into());
            for &k in &ks {
                c *= Rational::from_integer((k as i64 - 1).into());
            }
            out.add_term(KerovMonomial::new(1, Partition::from_unsorted(ks))?, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_basics() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(cycles(&[1, 0, 2]), vec![vec![0, 1], vec![2]]);
        assert_eq!(perm_length(&[1, 2, 3, 4, 0]), 4);
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(transitive_pair_classes(1).unwrap().len(), 1);
        let c2 = transitive_pair_classes(2).unwrap();
        assert_eq!(c2.len(), 3);
        assert!(transitive_pair_classes(8).is_err());
    }

    #[test]
    fn expander_examples() {
        let (id, t) = (vec![0, 1], vec![1, 0]);
        assert!(is_expander(&id, &t, &[3]));
        assert!(!is_expander(&t, &id, &[2, 2]));
        assert!(is_expander(&t, &t, &[2]));
    }
}
