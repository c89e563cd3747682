//! Jack polynomials by Gram–Schmidt in the monomial basis, and the table of
//! their power-sum coefficients θ_π(λ).

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::symfun::{basis_change, BasisChange};
use crate::algebra::{factorial, int, poly, Basis, LaurentA, Rational, SymFun};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest degree for which symbolic tables are built by default.
pub const DEFAULT_SYMBOLIC_CAP: usize = 12;

pub const CACHE_ENV: &str = "JACKLAB_CACHE";
const CACHE_FORMAT: &str = "jacklab-theta-v1";

/// Gram matrix `⟨m_ν, m_μ⟩` as polynomials in α (coefficient of α^k at
/// index k).
struct GramPoly {
    g: Vec<Vec<Vec<Rational>>>,
}

fn gram_poly(n: usize) -> Arc<GramPoly> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<GramPoly>>>>>> = OnceLock::new();
    let cell = {
        let mut m = CACHE.get_or_init(Default::default).lock().unwrap();
        m.entry(n).or_default().clone()
    };
    cell.get_or_init(|| {
        let bc = basis_change(n);
        let size = bc.parts.len();
        let norms: Vec<(usize, Rational)> = bc
            .parts
            .iter()
            .map(|rho| (rho.len(), Rational::from_integer(rho.z_factor())))
            .collect();
        let g = (0..size)
            .into_par_iter()
            .map(|nu| {
                (0..size)
                    .map(|mu| {
                        let mut c = vec![Rational::zero(); n + 1];
                        for (rho, (len, z)) in norms.iter().enumerate() {
                            let a = &bc.m_to_p[nu][rho];
                            let b = &bc.m_to_p[mu][rho];
                            if !a.is_zero() && !b.is_zero() {
                                c[*len] += a * b * z;
                            }
                        }
                        c
                    })
                    .collect()
            })
            .collect();
        Arc::new(GramPoly { g })
    })
    .clone()
}

/// Jack polynomials `J_λ` for all λ ⊢ n at a rational α, as rows of
/// monomial coefficients (both indices in enumeration order).
fn jack_monomial_rows(n: usize, alpha: &Rational) -> Vec<Vec<Rational>> {
    let bc = basis_change(n);
    let size = bc.parts.len();
    let gp = gram_poly(n);
    let g: Vec<Vec<Rational>> = gp
        .g
        .iter()
        .map(|row| row.iter().map(|c| poly::eval(c, alpha)).collect())
        .collect();
    // Enumeration order is reverse lexicographic, so increasing lexicographic
    // order (a linear extension of dominance) runs from the last index down.
    let mut p: Vec<Vec<Rational>> = vec![Vec::new(); size];
    let mut norm: Vec<Rational> = vec![Rational::zero(); size];
    // ip[j][k] = ⟨m_k, P_j⟩ for k < j
    let mut ip: Vec<Vec<Rational>> = vec![Vec::new(); size];
    for k in (0..size).rev() {
        let mut v = vec![Rational::zero(); size];
        v[k] = Rational::one();
        for j in k + 1..size {
            let c = &ip[j][k] / &norm[j];
            if c.is_zero() {
                continue;
            }
            for t in j..size {
                if !p[j][t].is_zero() {
                    v[t] -= &c * &p[j][t];
                }
            }
        }
        let mut w = vec![Rational::zero(); k + 1];
        for (r, wr) in w.iter_mut().enumerate() {
            let mut s = Rational::zero();
            for t in k..size {
                if !v[t].is_zero() && !g[r][t].is_zero() {
                    s += &v[t] * &g[r][t];
                }
            }
            *wr = s;
        }
        norm[k] = w[k].clone();
        ip[k] = w;
        p[k] = v;
    }
    let nf = Rational::from_integer(factorial(n));
    p.into_iter()
        .map(|row| {
            let scale = &nf / &row[size - 1];
            row.into_iter().map(|x| x * &scale).collect()
        })
        .collect()
}

fn to_power_sum_rows(bc: &BasisChange, rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let size = bc.parts.len();
    rows.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); size];
            for (mu, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (pi, o) in out.iter_mut().enumerate() {
                    let x = &bc.m_to_p[mu][pi];
                    if !x.is_zero() {
                        *o += c * x;
                    }
                }
            }
            out
        })
        .collect()
}

/// θ_π(λ) at a fixed rational α.
#[derive(Debug)]
pub struct ThetaAt {
    pub n: usize,
    pub alpha: Rational,
    pub parts: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    /// `theta[λ][π]`
    theta: Vec<Vec<Rational>>,
}

impl ThetaAt {
    pub fn compute(n: usize, alpha: &Rational) -> Result<Self> {
        if *alpha <= Rational::zero() {
            return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
        }
        let bc = basis_change(n);
        let rows = jack_monomial_rows(n, alpha);
        let theta = to_power_sum_rows(&bc, &rows);
        Ok(ThetaAt {
            n,
            alpha: alpha.clone(),
            parts: bc.parts.clone(),
            index: bc.index.clone(),
            theta,
        })
    }

    /// Cached table for `(n, α)`.
    pub fn cached(n: usize, alpha: &Rational) -> Result<Arc<ThetaAt>> {
        type Cell = Arc<OnceLock<Arc<ThetaAt>>>;
        static CACHE: OnceLock<Mutex<HashMap<(usize, Rational), Cell>>> = OnceLock::new();
        if *alpha <= Rational::zero() {
            return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
        }
        let cell = {
            let mut m = CACHE.get_or_init(Default::default).lock().unwrap();
            m.entry((n, alpha.clone())).or_default().clone()
        };
        Ok(cell
            .get_or_init(|| Arc::new(ThetaAt::compute(n, alpha).expect("α checked")))
            .clone())
    }

    pub fn index_of(&self, p: &Partition) -> Result<usize> {
        self.index.get(p).copied().ok_or_else(|| {
            Error::SizeMismatch(format!("{p} is not a partition of {}", self.n))
        })
    }

    pub fn theta(&self, lambda: &Partition, pi: &Partition) -> Result<&Rational> {
        Ok(&self.theta[self.index_of(lambda)?][self.index_of(pi)?])
    }

    pub fn theta_by_index(&self, lambda: usize, pi: usize) -> &Rational {
        &self.theta[lambda][pi]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.theta
    }
}

/// Symbolic table: θ_π(λ) as polynomials in α = A², stored as LaurentA.
#[derive(Debug, Clone)]
pub struct ThetaTable {
    pub n: usize,
    pub parts: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    entries: Vec<Vec<LaurentA>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    n: usize,
    entries: BTreeMap<String, LaurentA>,
}

impl ThetaTable {
    /// Builds the table by evaluating at `n + 1` rational points and
    /// interpolating, then checks the result at two further points.
    pub fn compute(n: usize) -> Result<Self> {
        let bc = basis_change(n);
        let size = bc.parts.len();
        let xs: Vec<Rational> = (1..=n as i64 + 1).map(int).collect();
        let samples: Vec<Arc<ThetaAt>> = xs
            .par_iter()
            .map(|x| ThetaAt::cached(n, x))
            .collect::<Result<_>>()?;
        let entries: Vec<Vec<LaurentA>> = (0..size)
            .into_par_iter()
            .map(|l| {
                (0..size)
                    .map(|p| {
                        let ys: Vec<Rational> =
                            samples.iter().map(|s| s.theta[l][p].clone()).collect();
                        LaurentA::from_alpha_poly(&poly::interpolate(&xs, &ys))
                    })
                    .collect()
            })
            .collect();
        let table = ThetaTable {
            n,
            parts: bc.parts.clone(),
            index: bc.index.clone(),
            entries,
        };
        for check in [int(n as i64 + 2), Rational::new(1.into(), 3.into())] {
            table.verify_against(&ThetaAt::compute(n, &check)?)?;
        }
        Ok(table)
    }

    fn verify_against(&self, at: &ThetaAt) -> Result<()> {
        for (l, row) in self.entries.iter().enumerate() {
            for (p, e) in row.iter().enumerate() {
                if e.even_at_alpha(&at.alpha).as_ref() != Some(&at.theta[l][p]) {
                    return Err(Error::SingularSystem(format!(
                        "interpolated θ disagrees at α = {} for n = {}",
                        at.alpha, self.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cached symbolic table (memory, then `$JACKLAB_CACHE` on disk).
    pub fn symbolic(n: usize) -> Result<Arc<ThetaTable>> {
        Self::symbolic_with_cap(n, DEFAULT_SYMBOLIC_CAP)
    }

    pub fn symbolic_with_cap(n: usize, cap: usize) -> Result<Arc<ThetaTable>> {
        type Cell = Arc<OnceLock<std::result::Result<Arc<ThetaTable>, String>>>;
        static CACHE: OnceLock<Mutex<HashMap<usize, Cell>>> = OnceLock::new();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "symbolic Jack table degree",
                requested: n,
                cap,
            });
        }
        let cell = {
            let mut m = CACHE.get_or_init(Default::default).lock().unwrap();
            m.entry(n).or_default().clone()
        };
        cell.get_or_init(|| Self::load_or_compute(n).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::SingularSystem)
    }

    fn cache_path(n: usize) -> Option<PathBuf> {
        let dir = std::env::var_os(CACHE_ENV)?;
        Some(PathBuf::from(dir).join(format!("theta-{n}.json")))
    }

    fn load_or_compute(n: usize) -> Result<ThetaTable> {
        let path = Self::cache_path(n);
        if let Some(p) = &path {
            if let Ok(text) = std::fs::read_to_string(p) {
                if let Ok(t) = Self::from_json(&text) {
                    if t.n == n {
                        return Ok(t);
                    }
                }
            }
        }
        let t = Self::compute(n)?;
        if let Some(p) = &path {
            // a missing or read-only cache directory is not an error
            if let Some(dir) = p.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            let tmp = p.with_extension("json.tmp");
            if std::fs::write(&tmp, t.to_json()).is_ok() {
                let _ = std::fs::rename(&tmp, p);
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let mut entries = BTreeMap::new();
        for (l, lam) in self.parts.iter().enumerate() {
            for (p, pi) in self.parts.iter().enumerate() {
                entries.insert(
                    format!("{}|{}", lam.to_json(), pi.to_json()),
                    self.entries[l][p].clone(),
                );
            }
        }
        serde_json::to_string(&CacheFile {
            format: CACHE_FORMAT.into(),
            n: self.n,
            entries,
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<ThetaTable> {
        let f: CacheFile = serde_json::from_str(text)?;
        if f.format != CACHE_FORMAT {
            return Err(Error::Parse(format!("unknown θ cache format {:?}", f.format)));
        }
        let bc = basis_change(f.n);
        let size = bc.parts.len();
        let mut entries = vec![vec![LaurentA::new(); size]; size];
        let mut seen = 0usize;
        for (k, v) in f.entries {
            let (a, b) = k
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("bad θ cache key {k:?}")))?;
            let lam: Partition = serde_json::from_str(a)?;
            let pi: Partition = serde_json::from_str(b)?;
            let (Some(&l), Some(&p)) = (bc.index.get(&lam), bc.index.get(&pi)) else {
                return Err(Error::Parse(format!("θ cache key {k:?} not of degree {}", f.n)));
            };
            entries[l][p] = v;
            seen += 1;
        }
        if seen != size * size {
            return Err(Error::Parse("θ cache file is incomplete".into()));
        }
        Ok(ThetaTable {
            n: f.n,
            parts: bc.parts.clone(),
            index: bc.index.clone(),
            entries,
        })
    }

    pub fn index_of(&self, p: &Partition) -> Result<usize> {
        self.index.get(p).copied().ok_or_else(|| {
            Error::SizeMismatch(format!("{p} is not a partition of {}", self.n))
        })
    }

    pub fn theta(&self, lambda: &Partition, pi: &Partition) -> Result<&LaurentA> {
        Ok(&self.entries[self.index_of(lambda)?][self.index_of(pi)?])
    }

    pub fn theta_by_index(&self, lambda: usize, pi: usize) -> &LaurentA {
        &self.entries[lambda][pi]
    }

    /// `J_λ` in the power-sum basis.
    pub fn jack_in_p(&self, lambda: &Partition) -> Result<SymFun> {
        let l = self.index_of(lambda)?;
        SymFun::from_terms(
            Basis::PowerSum,
            self.n,
            self.parts
                .iter()
                .zip(&self.entries[l])
                .map(|(p, c)| (p.clone(), c.clone())),
        )
    }
}

/// `J_λ` in the power-sum basis (symbolic in `A`).
pub fn jack_in_p(lambda: &Partition) -> Result<SymFun> {
    ThetaTable::symbolic(lambda.size())?.jack_in_p(lambda)
}

/// θ_π(λ) (symbolic in `A`).
pub fn theta(lambda: &Partition, pi: &Partition) -> Result<LaurentA> {
    if lambda.size() != pi.size() {
        return Err(Error::SizeMismatch(format!(
            "θ needs |λ| = |π|, got {lambda} and {pi}"
        )));
    }
    Ok(ThetaTable::symbolic(lambda.size())?.theta(lambda, pi)?.clone())
}
