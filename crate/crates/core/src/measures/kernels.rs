//! Up (box-adding) and down (box-removing) Markov kernels coherent with the
//! Jack–Plancherel measures.

use std::collections::BTreeMap;

use crate::algebra::Rational;
use crate::error::Result;
use crate::jack::{pieri_p1_at, pieri_p1_f64};
use crate::partitions::Partition;

use super::measure::{jack_plancherel_weight, validate_alpha, validate_alpha_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Exact kernel at a rational α.
#[derive(Clone, Debug)]
pub struct GrowthKernel {
    direction: Direction,
    alpha: Rational,
}

impl GrowthKernel {
    pub fn up(alpha: &Rational) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(GrowthKernel { direction: Direction::Up, alpha: alpha.clone() })
    }

    pub fn down(alpha: &Rational) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(GrowthKernel { direction: Direction::Down, alpha: alpha.clone() })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// Transition probabilities out of λ.
    pub fn transitions(&self, lambda: &Partition) -> BTreeMap<Partition, Rational> {
        match self.direction {
            Direction::Up => pieri_p1_at(lambda, &self.alpha),
            Direction::Down => down_transitions_at(lambda, &self.alpha),
        }
    }
}

/// q(Λ, λ) = ℙ_n(λ) c^Λ_λ / ℙ_{n+1}(Λ) at a rational α.
pub fn down_transitions_at(big: &Partition, alpha: &Rational) -> BTreeMap<Partition, Rational> {
    let p_big = jack_plancherel_weight(big, alpha).expect("α validated");
    big.removable_cells()
        .into_iter()
        .map(|(i, _)| {
            let small = big.remove_box(i);
            let c = pieri_p1_at(&small, alpha).remove(big).expect("big covers small");
            let p_small = jack_plancherel_weight(&small, alpha).expect("α validated");
            (small, p_small * c / &p_big)
        })
        .collect()
}

/// Kernel at a real α > 0, for sampling.
#[derive(Clone, Copy, Debug)]
pub struct NumericKernel {
    direction: Direction,
    alpha: f64,
}

impl NumericKernel {
    pub fn up(alpha: f64) -> Result<Self> {
        validate_alpha_f64(alpha)?;
        Ok(NumericKernel { direction: Direction::Up, alpha })
    }

    pub fn down(alpha: f64) -> Result<Self> {
        validate_alpha_f64(alpha)?;
        Ok(NumericKernel { direction: Direction::Down, alpha })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `(row, probability)` of the box added or removed.
    pub fn row_probabilities(&self, lambda: &Partition) -> Vec<(usize, f64)> {
        match self.direction {
            Direction::Up => pieri_p1_f64(lambda, self.alpha),
            Direction::Down => down_row_probabilities(lambda, self.alpha),
        }
    }

    pub fn transitions(&self, lambda: &Partition) -> Vec<(Partition, f64)> {
        self.row_probabilities(lambda)
            .into_iter()
            .map(|(row, p)| {
                let next = match self.direction {
                    Direction::Up => lambda.add_box(row),
                    Direction::Down => lambda.remove_box(row),
                };
                (next, p)
            })
            .collect()
    }
}

/// Down kernel in floating point. With λ = Λ − (i, j), the ratio
/// ℙ_n(λ)/ℙ_{n+1}(Λ) only involves the hooks in row i and column j.
pub fn down_row_probabilities(big: &Partition, alpha: f64) -> Vec<(usize, f64)> {
    let conj = big.conjugate();
    let n1 = big.size() as f64;
    big.removable_cells()
        .into_iter()
        .map(|(i, j)| {
            let small = big.remove_box(i);
            let c = pieri_p1_f64(&small, alpha)
                .into_iter()
                .find(|(row, _)| *row == i)
                .map(|(_, c)| c)
                .expect("big covers small");
            let mut ratio = 1.0;
            // row i of λ: arm j−k−1, leg Λ'_k − i − 1
            for k in 0..j {
                let a = (j - k - 1) as f64;
                let l = (conj.part(k) as usize - i - 1) as f64;
                ratio *= (alpha * (a + 1.0) + l + 1.0) / (alpha * a + l + 1.0);
                ratio *= (alpha * (a + 2.0) + l) / (alpha * (a + 1.0) + l);
            }
            // column j of λ: arm Λ_k − j − 1, leg i − k − 1
            for k in 0..i {
                let a = (big.part(k) as usize - j - 1) as f64;
                let l = (i - k - 1) as f64;
                ratio *= (alpha * a + l + 2.0) / (alpha * a + l + 1.0);
                ratio *= (alpha * (a + 1.0) + l + 1.0) / (alpha * (a + 1.0) + l);
            }
            (i, c * ratio / n1)
        })
        .collect()
}
