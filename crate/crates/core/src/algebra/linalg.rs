//! Exact Gaussian elimination over a field.

use super::scalar::Field;
use crate::error::{Error, Result};

/// Row-reduces `[a | b]` where `b` holds several right-hand sides.
/// Returns the pivot columns. Pivots are the first nonzero entries, which
/// is only appropriate for exact fields.
fn reduce<F: Field>(a: &mut [Vec<F>], b: &mut [Vec<F>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in r..rows {
            let w = a[i][c].pivot_weight();
            if w > 0.0 && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((i, w));
            }
        }
        let Some((p, _)) = best else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for x in b[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                if !a[r][j].is_zero() {
                    let t = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - t;
                }
            }
            for j in 0..b[i].len() {
                if !b[r][j].is_zero() {
                    let t = b[r][j].clone() * f.clone();
                    b[i][j] = b[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves the square system `a x = b`.
pub fn solve<F: Field>(a: Vec<Vec<F>>, b: Vec<F>) -> Result<Vec<F>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::SizeMismatch("solve expects a square system".into()));
    }
    let mut a = a;
    let mut rhs: Vec<Vec<F>> = b.into_iter().map(|x| vec![x]).collect();
    let piv = reduce(&mut a, &mut rhs);
    if piv.len() < n {
        return Err(Error::SingularSystem(format!("rank {} of {}", piv.len(), n)));
    }
    Ok(rhs.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Least-structure solve of a possibly overdetermined consistent system.
/// Fails with `RankDeficient` if the solution is not unique and with
/// `Inconsistent` if no solution exists.
pub fn solve_overdetermined<F: Field>(a: Vec<Vec<F>>, b: Vec<F>) -> Result<Vec<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if b.len() != rows {
        return Err(Error::SizeMismatch("rhs length".into()));
    }
    let mut a = a;
    let mut rhs: Vec<Vec<F>> = b.into_iter().map(|x| vec![x]).collect();
    let piv = reduce(&mut a, &mut rhs);
    if rhs[piv.len()..].iter().any(|r| !r[0].is_zero()) {
        return Err(Error::Inconsistent("overdetermined system".into()));
    }
    if piv.len() < cols {
        return Err(Error::RankDeficient {
            rank: piv.len(),
            unknowns: cols,
            context: "overdetermined system".into(),
        });
    }
    Ok(rhs.into_iter().take(cols).map(|mut r| r.pop().unwrap()).collect())
}

pub fn rank<F: Field>(a: Vec<Vec<F>>) -> usize {
    let mut a = a;
    let mut b: Vec<Vec<F>> = vec![Vec::new(); a.len()];
    reduce(&mut a, &mut b).len()
}

pub fn determinant<F: Field>(a: Vec<Vec<F>>) -> F {
    let n = a.len();
    let mut a = a;
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det = det * a[c][c].clone();
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                let t = a[c][j].clone() * f.clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
    }
    det
}

pub fn inverse<F: Field>(a: Vec<Vec<F>>) -> Result<Vec<Vec<F>>> {
    let n = a.len();
    let mut a = a;
    let mut id: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    let piv = reduce(&mut a, &mut id);
    if piv.len() < n {
        return Err(Error::SingularSystem(format!("rank {} of {}", piv.len(), n)));
    }
    Ok(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solves_and_inverts() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(a.clone(), vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert_eq!(determinant(a.clone()), int(5));
        let inv = inverse(a).unwrap();
        assert_eq!(inv[0][0], rat(3, 5));
    }

    #[test]
    fn detects_singular_and_inconsistent() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(solve(a.clone(), vec![int(1), int(2)]), Err(Error::SingularSystem(_))));
        assert_eq!(rank(a.clone()), 1);
        let tall = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(solve_overdetermined(tall.clone(), vec![int(1), int(1), int(2)]).is_ok());
        assert!(matches!(
            solve_overdetermined(tall, vec![int(1), int(1), int(3)]),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            solve_overdetermined(a, vec![int(1), int(2)]),
            Err(Error::RankDeficient { .. })
        ));
    }
}
