use crate::algebra::{factorial, Rational, Ring};
use crate::error::Result;

/// All set partitions of {0, …, l−1}, blocks in order of their minima.
pub fn set_partitions(l: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(x: usize, l: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == l {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(x);
            rec(x + 1, l, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![x]);
        rec(x + 1, l, blocks, out);
        blocks.pop();
    }
    rec(0, l, &mut blocks, &mut out);
    out
}

/// Σ_σ (−1)^{|σ|−1} (|σ|−1)! ∏_{B ∈ σ} moment(B) over set partitions σ of
/// {0, …, l−1}. `moment` receives blocks as sorted index lists.
pub fn mobius_cumulant<W, F>(l: usize, mut moment: F) -> Result<W>
where
    W: Ring,
    F: FnMut(&[usize]) -> Result<W>,
{
    let mut memo: std::collections::HashMap<Vec<usize>, W> = Default::default();
    let mut acc = W::zero();
    for sigma in set_partitions(l) {
        let k = sigma.len();
        let mut term = W::one();
        for b in &sigma {
            let m = match memo.get(b) {
                Some(m) => m.clone(),
                None => {
                    let m = moment(b)?;
                    memo.insert(b.clone(), m.clone());
                    m
                }
            };
            term = term * m;
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        let mut c = Rational::from_integer(factorial(k - 1));
        if k % 2 == 0 {
            c = -c;
        }
        acc = acc + term.scale(&c);
    }
    Ok(acc)
}
