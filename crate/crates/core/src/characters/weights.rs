//! Weight multiplicities by Freudenthal's formula, the Weyl dimension formula
//! and the Weyl character formula, for a root system that need not span.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};
use crate::root_datum::{PositiveSystem, RootSystem, WeightVec, WeylGroup};
use crate::scalar::Scalar;

use super::element::{TorusElement, REGULARITY_EPS};

/// Weights of an irreducible representation with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable<S> {
    pub highest: WeightVec<S>,
    pub weights: BTreeMap<WeightVec<S>, u64>,
}

impl<S: Scalar> WeightTable<S> {
    pub fn dimension(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn multiplicity(&self, nu: &WeightVec<S>) -> u64 {
        self.weights.get(nu).copied().unwrap_or(0)
    }

    pub fn trace<F: Float + FloatConst>(&self, gamma: &TorusElement<F>) -> Complex<F> {
        self.weights
            .iter()
            .fold(Complex::new(F::zero(), F::zero()), |acc, (nu, &m)| {
                acc + gamma.eval(nu) * F::from(m).unwrap()
            })
    }
}

fn form<S: Scalar>(sys: &RootSystem<S>, a: &WeightVec<S>, b: &WeightVec<S>) -> S {
    sys.coroots()
        .iter()
        .fold(S::zero(), |acc, c| acc + a.pair(c) * b.pair(c))
}

pub fn check_dominant<S: Scalar>(
    sys: &RootSystem<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
) -> Result<()> {
    for i in pos.positive_indices() {
        let p = mu.pair(sys.coroot(i));
        if !p.is_integral() {
            return Err(Error::NotIntegral(format!(
                "<mu, coroot {i}> = {p} for mu = [{}]",
                mu.to_strings().join(", ")
            )));
        }
        if p.is_negative() {
            return Err(Error::NotDominant(format!(
                "<mu, coroot {i}> = {p} for mu = [{}]",
                mu.to_strings().join(", ")
            )));
        }
    }
    Ok(())
}

/// `prod_{alpha > 0} <mu + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension<S: Scalar>(
    sys: &RootSystem<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
) -> S {
    let rho = sys.rho(pos);
    let shifted = mu + &rho;
    pos.positive_indices().into_iter().fold(S::one(), |acc, i| {
        acc * shifted.pair(sys.coroot(i)) / rho.pair(sys.coroot(i))
    })
}

fn is_weight<S: Scalar>(
    sys: &RootSystem<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
    nu: &WeightVec<S>,
) -> bool {
    let dom = sys.dominant_conjugate(&pos.simple, nu);
    match sys.simple_coordinates(&pos.simple, &(mu - &dom)) {
        Some(c) => c.iter().all(|x| x.is_integral() && !x.is_negative()),
        None => false,
    }
}

/// Freudenthal's recursion over the weights of `V_mu`, level by level.
pub fn weight_multiplicities<S: Scalar>(
    sys: &RootSystem<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
) -> Result<WeightTable<S>> {
    check_dominant(sys, pos, mu)?;
    let rho = sys.rho(pos);
    let top = &(mu + &rho);
    let top_norm = form(sys, top, top);
    let positives: Vec<&WeightVec<S>> = pos
        .positive_indices()
        .into_iter()
        .map(|i| sys.root(i))
        .collect();
    let mut mult: BTreeMap<WeightVec<S>, u64> = BTreeMap::from([(mu.clone(), 1)]);
    let mut level = vec![mu.clone()];
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for nu in &level {
            for &s in &pos.simple {
                let c = nu - sys.root(s);
                if !mult.contains_key(&c) && is_weight(sys, pos, mu, &c) {
                    next.insert(c);
                }
            }
        }
        let mut found = Vec::new();
        for nu in next {
            let mut num = S::zero();
            for alpha in &positives {
                let mut v = &nu + *alpha;
                while let Some(&m) = mult.get(&v) {
                    num = num + S::from_int(m as i64) * form(sys, &v, alpha);
                    v = &v + *alpha;
                }
            }
            let shifted = &nu + &rho;
            let den = top_norm.clone() - form(sys, &shifted, &shifted);
            let m = (num * S::from_int(2)) / den;
            match m.as_integer() {
                Some(k) if k > 0 => {
                    mult.insert(nu.clone(), k as u64);
                    found.push(nu);
                }
                _ => {
                    return Err(Error::violated(
                        format!(
                            "Freudenthal multiplicity of [{}]",
                            nu.to_strings().join(", ")
                        ),
                        m,
                        "a positive integer",
                    ))
                }
            }
        }
        level = found;
    }
    let table = WeightTable {
        highest: mu.clone(),
        weights: mult,
    };
    let dim = weyl_dimension(sys, pos, mu);
    if S::from_int(table.dimension() as i64) != dim {
        return Err(Error::violated(
            "sum of multiplicities equals the Weyl dimension",
            table.dimension(),
            dim,
        ));
    }
    Ok(table)
}

/// `sum_w sign(w) gamma(w(mu + rho)) / sum_w sign(w) gamma(w rho)`.
pub fn wcf_trace<F: Float + FloatConst, S: Scalar>(
    sys: &RootSystem<S>,
    weyl: &WeylGroup<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
    gamma: &TorusElement<F>,
) -> Result<Complex<F>> {
    let rho = sys.rho(pos);
    let shifted = mu + &rho;
    let mut num = Complex::new(F::zero(), F::zero());
    let mut den = num;
    for w in 0..weyl.order() {
        let s = F::from(weyl.sign(w)).unwrap();
        num = num + gamma.eval(&weyl.act_weight(w, &shifted)) * s;
        den = den + gamma.eval(&weyl.act_weight(w, &rho)) * s;
    }
    let scale = (0..weyl.order())
        .map(|w| gamma.eval(&weyl.act_weight(w, &rho)).norm())
        .fold(F::zero(), F::max);
    if den.norm() <= F::from(REGULARITY_EPS).unwrap() * scale {
        return Err(Error::IrregularElement("Weyl denominator vanishes".into()));
    }
    Ok(num / den)
}

/// Highest weight of the dual representation, `-w_0 mu`.
pub fn dual_highest_weight<S: Scalar>(
    sys: &RootSystem<S>,
    pos: &PositiveSystem,
    mu: &WeightVec<S>,
) -> WeightVec<S> {
    sys.dominant_conjugate(&pos.simple, &-mu)
}
