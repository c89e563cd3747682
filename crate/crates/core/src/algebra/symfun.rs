//! Homogeneous symmetric functions in the monomial and power-sum bases.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::laurent::LaurentA;
use super::linalg;
use super::scalar::Rational;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, partition_index, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    Monomial,
    PowerSum,
}

/// A homogeneous symmetric function with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFun {
    basis: Basis,
    degree: usize,
    coeffs: BTreeMap<Partition, LaurentA>,
}

impl SymFun {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymFun {
            basis,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element indexed by `lambda`.
    pub fn basis_element(basis: Basis, lambda: &Partition) -> Self {
        let mut f = SymFun::zero(basis, lambda.size());
        f.coeffs.insert(lambda.clone(), LaurentA::from_int(1));
        f
    }

    pub fn from_terms<I>(basis: Basis, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, LaurentA)>,
    {
        let mut f = SymFun::zero(basis, degree);
        for (p, c) in terms {
            f.add_term(p, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, p: Partition, c: LaurentA) -> Result<()> {
        if p.size() != self.degree {
            return Err(Error::SizeMismatch(format!(
                "term {p} in a symmetric function of degree {}",
                self.degree
            )));
        }
        let e = self.coeffs.entry(p.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
        Ok(())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, p: &Partition) -> LaurentA {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentA)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn convert(&self, table: &[Vec<Rational>], target: Basis) -> SymFun {
        let bc = basis_change(self.degree);
        let mut out = SymFun::zero(target, self.degree);
        for (p, c) in &self.coeffs {
            let row = &table[bc.index[p]];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let e = out.coeffs.entry(bc.parts[j].clone()).or_default();
                    *e += &c.scale(x);
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn to_power_sum(&self) -> SymFun {
        match self.basis {
            Basis::PowerSum => self.clone(),
            Basis::Monomial => self.convert(&basis_change(self.degree).m_to_p, Basis::PowerSum),
        }
    }

    pub fn to_monomial(&self) -> SymFun {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::PowerSum => self.convert(&basis_change(self.degree).p_to_m, Basis::Monomial),
        }
    }
}

/// Change of basis `m ↔ p` in a fixed degree. Rows and columns follow
/// [`enumerate_partitions`].
#[derive(Debug)]
pub struct BasisChange {
    pub parts: Vec<Partition>,
    pub index: BTreeMap<Partition, usize>,
    /// `p_ρ = Σ_μ p_to_m[ρ][μ] m_μ`
    pub p_to_m: Vec<Vec<Rational>>,
    /// `m_μ = Σ_ρ m_to_p[μ][ρ] p_ρ`
    pub m_to_p: Vec<Vec<Rational>>,
}

/// Number of maps `f` from the parts of `rho` to the parts of `mu` with
/// `Σ_{f(i)=j} ρ_i = μ_j` for every `j`: the coefficient of `m_μ` in `p_ρ`.
pub fn power_sum_monomial_coeff(rho: &Partition, mu: &Partition) -> BigInt {
    fn go(
        rho: &[u32],
        i: usize,
        rem: &mut Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), BigInt>,
    ) -> BigInt {
        if i == rho.len() {
            return if rem.iter().all(|&r| r == 0) {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
        }
        let key = (i, rem.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for j in 0..rem.len() {
            if rem[j] >= rho[i] {
                rem[j] -= rho[i];
                total += go(rho, i + 1, rem, memo);
                rem[j] += rho[i];
            }
        }
        memo.insert(key, total.clone());
        total
    }
    if rho.size() != mu.size() {
        return BigInt::zero();
    }
    go(rho.parts(), 0, &mut mu.parts().to_vec(), &mut HashMap::new())
}

fn build_basis_change(n: usize) -> BasisChange {
    let parts = enumerate_partitions(n);
    let index = partition_index(&parts);
    let p_to_m: Vec<Vec<Rational>> = parts
        .iter()
        .map(|rho| {
            parts
                .iter()
                .map(|mu| Rational::from_integer(power_sum_monomial_coeff(rho, mu)))
                .collect()
        })
        .collect();
    // p_to_m is invertible (triangular with positive diagonal in dominance)
    let inv = linalg::inverse(p_to_m.clone()).expect("p→m change of basis is invertible");
    // inv is (P^{-1}) with m = P^{-1}-rows applied to p: m_μ = Σ_ρ inv[μ][ρ] p_ρ
    BasisChange {
        parts,
        index,
        p_to_m,
        m_to_p: inv,
    }
}

/// Cached change of basis for degree `n`.
pub fn basis_change(n: usize) -> Arc<BasisChange> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<BasisChange>>>>>> =
        OnceLock::new();
    let cell = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(n).or_default().clone()
    };
    cell.get_or_init(|| Arc::new(build_basis_change(n))).clone()
}

/// `m_λ` expressed in power sums.
pub fn m_to_p(f: &SymFun) -> SymFun {
    f.to_power_sum()
}

pub fn p_to_m(f: &SymFun) -> SymFun {
    f.to_monomial()
}

/// `⟨p_λ, p_λ⟩ = z_λ α^{ℓ(λ)}` as a Laurent polynomial in `A`.
pub fn power_sum_norm(lambda: &Partition) -> LaurentA {
    LaurentA::monomial(2 * lambda.len() as i32, Rational::from_integer(lambda.z_factor()))
}

/// The α-deformed Hall inner product.
pub fn inner_product(f: &SymFun, g: &SymFun) -> Result<LaurentA> {
    if f.degree != g.degree {
        return Err(Error::SizeMismatch(format!(
            "inner product of degrees {} and {}",
            f.degree, g.degree
        )));
    }
    let fp = f.to_power_sum();
    let gp = g.to_power_sum();
    let mut acc = LaurentA::new();
    for (p, c) in fp.terms() {
        let d = gp.coeff(p);
        if !d.is_zero() {
            acc += &(&(c * &d) * &power_sum_norm(p));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_conversions() {
        let m1 = SymFun::basis_element(Basis::Monomial, &p(&[1]));
        assert_eq!(m1.to_power_sum(), SymFun::basis_element(Basis::PowerSum, &p(&[1])));
        let m11 = SymFun::basis_element(Basis::Monomial, &p(&[1, 1])).to_power_sum();
        assert_eq!(m11.coeff(&p(&[1, 1])), LaurentA::constant(rat(1, 2)));
        assert_eq!(m11.coeff(&p(&[2])), LaurentA::constant(rat(-1, 2)));
        let p11 = SymFun::basis_element(Basis::PowerSum, &p(&[1, 1])).to_monomial();
        assert_eq!(p11.coeff(&p(&[2])), LaurentA::from_int(1));
        assert_eq!(p11.coeff(&p(&[1, 1])), LaurentA::from_int(2));
    }

    #[test]
    fn inner_products() {
        let e = |v: &[u32]| SymFun::basis_element(Basis::PowerSum, &p(v));
        assert_eq!(inner_product(&e(&[1]), &e(&[1])).unwrap(), LaurentA::alpha());
        assert!(inner_product(&e(&[2]), &e(&[1, 1])).unwrap().is_zero());
        assert_eq!(
            inner_product(&e(&[1, 1]), &e(&[1, 1])).unwrap(),
            LaurentA::monomial(4, int(2))
        );
        assert!(inner_product(&e(&[1]), &e(&[1, 1])).is_err());
    }

    #[test]
    fn round_trip_degree_six() {
        for lam in enumerate_partitions(6) {
            let m = SymFun::basis_element(Basis::Monomial, &lam);
            assert_eq!(m.to_power_sum().to_monomial(), m);
        }
    }
}
