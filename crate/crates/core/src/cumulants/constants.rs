//! Relations between the constants in the refined asymptotics of
//! characters (a, b), of mean free cumulants (a′, b′) and of mean shape
//! functionals (a″, b″).

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{factorial, falling_factorial, Rational};
use crate::error::{Error, Result};
use crate::kerov::{class_expanders, transitive_pair_classes, weightings, PAIR_CLASS_CAP};
use crate::shape::r_to_s;

/// Sequences indexed by l ≥ 2.
pub type ConstantSeq = BTreeMap<usize, Rational>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantTransforms {
    pub a_prime: BTreeMap<usize, String>,
    pub a_dprime: BTreeMap<usize, String>,
    pub b_prime: BTreeMap<usize, String>,
    pub b_dprime: BTreeMap<usize, String>,
    #[serde(skip)]
    pub exact: ExactTransforms,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExactTransforms {
    pub a_prime: ConstantSeq,
    pub a_dprime: ConstantSeq,
    pub b_prime: ConstantSeq,
    pub b_dprime: ConstantSeq,
}

/// Top-degree terms of Ch_l: (γ-exponent v, weights q) per class and
/// expander.
fn expander_terms(l: usize) -> Result<Vec<(usize, Vec<u32>)>> {
    let mut out = Vec::new();
    for class in transitive_pair_classes(l)? {
        let (v, qs) = class_expanders(&class, l);
        out.extend(qs.into_iter().map(|q| (v, q)));
    }
    Ok(out)
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn check_seq(name: &str, s: &ConstantSeq, kmax: usize) -> Result<()> {
    for k in 2..=kmax {
        if !s.contains_key(&k) {
            return Err(Error::InvalidArgument(format!("{name}_{k} missing")));
        }
    }
    Ok(())
}

/// With γ/√n = g + g′/√n,
///   a_{l+1} = Σ g^v Σ_q ∏ a′_{q(c)},
///   b_{l+1} = Σ v g′ g^{v−1} Σ_q ∏ a′_{q(c)} + Σ g^v Σ_q Σ_c b′_{q(c)} ∏_{c′≠c} a′_{q(c′)},
/// summed over classes of transitive pairs and their expanders q; v is the
/// γ-exponent of the class. Both relations are triangular in l and are
/// inverted for (a′, b′). Then a″ and b″ follow from the S–R transform.
pub fn constant_transforms(
    a: &ConstantSeq,
    b: &ConstantSeq,
    g: &Rational,
    gp: &Rational,
) -> Result<ConstantTransforms> {
    let kmax = a.keys().chain(b.keys()).max().copied().unwrap_or(1);
    if kmax < 2 {
        return Err(Error::InvalidArgument("sequences must start at index 2".into()));
    }
    if kmax - 1 > PAIR_CLASS_CAP {
        return Err(Error::CapExceeded {
            what: "expander enumeration",
            requested: kmax - 1,
            cap: PAIR_CLASS_CAP,
        });
    }
    check_seq("a", a, kmax)?;
    check_seq("b", b, kmax)?;
    let mut ap = ConstantSeq::new();
    let mut bp = ConstantSeq::new();
    for k in 2..=kmax {
        let l = k - 1;
        let terms = expander_terms(l)?;
        // known part of each relation, and the coefficient of the unknown
        // a′_k (resp. b′_k)
        let (mut a_rest, mut a_lead) = (Rational::zero(), Rational::zero());
        let (mut b_rest, mut b_lead) = (Rational::zero(), Rational::zero());
        for (v, q) in &terms {
            let gv = pow(g, *v);
            if q.len() == 1 && q[0] as usize == k {
                a_lead += &gv;
                b_lead += &gv;
                continue;
            }
            let prod: Rational = q.iter().map(|&x| ap[&(x as usize)].clone()).product();
            a_rest += &gv * &prod;
            if *v > 0 {
                b_rest += Rational::from_integer((*v as i64).into()) * gp * pow(g, v - 1) * &prod;
            }
            for c in 0..q.len() {
                let mut t = bp[&(q[c] as usize)].clone();
                for (c2, &x) in q.iter().enumerate() {
                    if c2 != c {
                        t *= &ap[&(x as usize)];
                    }
                }
                b_rest += &gv * t;
            }
        }
        if a_lead.is_zero() || b_lead.is_zero() {
            return Err(Error::SingularSystem(format!("no leading term at l = {l}")));
        }
        ap.insert(k, (&a[&k] - a_rest) / &a_lead);
        // the v > 0 part of the b-relation also involves a′_k
        let lead_a_in_b: Rational = terms
            .iter()
            .filter(|(v, q)| *v > 0 && q.len() == 1 && q[0] as usize == k)
            .map(|(v, _)| Rational::from_integer((*v as i64).into()) * gp * pow(g, v - 1))
            .sum();
        bp.insert(k, (&b[&k] - b_rest - lead_a_in_b * &ap[&k]) / &b_lead);
    }
    let app = r_to_s(&ap)?;
    let mut bpp = ConstantSeq::new();
    for l in 2..=kmax {
        let mut acc = Rational::zero();
        for i in 1..=l / 2 {
            let coef = Rational::new(falling_factorial(l - 1, i - 1), factorial(i - 1));
            let mut s = Rational::zero();
            for ks in weightings(i, l) {
                let mut t = bp[&(ks[0] as usize)].clone();
                for &k in &ks[1..] {
                    t *= &ap[&(k as usize)];
                }
                s += t;
            }
            acc += coef * s;
        }
        bpp.insert(l, acc);
    }
    let strs = |s: &ConstantSeq| s.iter().map(|(k, v)| (*k, v.to_string())).collect();
    Ok(ConstantTransforms {
        a_prime: strs(&ap),
        a_dprime: strs(&app),
        b_prime: strs(&bp),
        b_dprime: strs(&bpp),
        exact: ExactTransforms { a_prime: ap, a_dprime: app, b_prime: bp, b_dprime: bpp },
    })
}
