//! Arthur's Phi-function on elliptic elements, together with the chain of
//! expressions it is derived from, evaluated independently so that each step
//! can be checked against the next.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::characters::{
    eval_delta, eval_delta_p, kostant_reps, modulus_delta_p, weight_multiplicities, wlm_reps,
    TorusElement, WeightTable,
};
use crate::constants::{Axioms, CbarSolver, ConstantTable};
use crate::error::{Error, Result};
use crate::root_datum::{CoweightVec, PositiveSystem, WeightVec};
use crate::scalar::Scalar;
use crate::torus::{BorelChoice, RealTorus};

/// Everything attached to a choice of Borel and highest weight.
#[derive(Clone, Debug)]
pub struct PhiSetup<S> {
    pub borel: BorelChoice<S>,
    pub lambda_b: WeightVec<S>,
    pub lambda0: WeightVec<S>,
    pub kostant: Vec<usize>,
    m_positive: PositiveSystem,
    /// `V^M` with highest weight `w(lambda_B + rho_B) - rho_B`, per `w` in `W^M`.
    tables: HashMap<usize, WeightTable<S>>,
    l_solver: CbarSolver<S>,
}

impl<S: Scalar> PhiSetup<S> {
    pub fn new(
        torus: &RealTorus<S>,
        borel: BorelChoice<S>,
        lambda_b: WeightVec<S>,
    ) -> Result<Self> {
        Self::with_axioms(torus, borel, lambda_b, Axioms::default())
    }

    /// As [`PhiSetup::new`], with the constants on `V` built from `axioms`.
    pub fn with_axioms(
        torus: &RealTorus<S>,
        borel: BorelChoice<S>,
        lambda_b: WeightVec<S>,
        axioms: Axioms,
    ) -> Result<Self> {
        torus.check_highest_weight(&borel, &lambda_b)?;
        let imaginary = &torus.classes().imaginary;
        let m_positive = torus.m_system().with_positive(
            imaginary
                .iter()
                .map(|i| borel.m_positive.binary_search(i).is_ok())
                .collect(),
        );
        let kostant = kostant_reps(torus, &borel);
        let lambda0 = torus.lambda0(&lambda_b);
        let mut setup = PhiSetup {
            l_solver: CbarSolver::with_axioms(torus.l_system(), axioms, torus.caps().hyperplanes)?,
            borel,
            lambda_b,
            lambda0,
            kostant,
            m_positive,
            tables: HashMap::new(),
        };
        for &w in &setup.kostant.clone() {
            let mu = setup.highest_weight(torus, w);
            let table = weight_multiplicities(torus.m_system(), &setup.m_positive, &mu)?;
            setup.tables.insert(w, table);
        }
        Ok(setup)
    }

    /// `w(lambda_B + rho_B)`.
    pub fn shifted(&self, torus: &RealTorus<S>, w: usize) -> WeightVec<S> {
        torus
            .weyl()
            .act_weight(w, &(&self.lambda_b + &self.borel.rho))
    }

    /// `w(lambda_B + rho_B) - rho_B`.
    pub fn highest_weight(&self, torus: &RealTorus<S>, w: usize) -> WeightVec<S> {
        &self.shifted(torus, w) - &self.borel.rho
    }

    pub fn m_positive(&self) -> &PositiveSystem {
        &self.m_positive
    }

    /// The multiplicity table of `V^M` for `w` in `W^M`.
    pub fn table(&self, w: usize) -> &WeightTable<S> {
        &self.tables[&w]
    }

    pub fn wlm(&self, torus: &RealTorus<S>) -> Result<Vec<usize>> {
        wlm_reps(torus, &self.borel, &self.lambda_b)
    }

    pub fn l_solver(&self) -> &CbarSolver<S> {
        &self.l_solver
    }
}

/// `prod_{alpha not in R_M} (1 - gamma(alpha))`.
pub fn d_m_g<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    gamma: &TorusElement<F>,
) -> Complex<F> {
    let sys = torus.system();
    (0..sys.len())
        .filter(|&i| !torus.is_imaginary(i))
        .fold(Complex::new(F::one(), F::zero()), |acc, i| {
            acc * (Complex::new(F::one(), F::zero()) - gamma.eval(sys.root(i)))
        })
}

/// `sum_w m(wB) Delta_P(gamma) (w lambda_B)(gamma) / Delta_{wB}(gamma)`.
pub fn eval_expression_raw<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    m: &[i64],
    gamma: &TorusElement<F>,
) -> Result<Complex<F>> {
    let sys = torus.system();
    let weyl = torus.weyl();
    let delta_p = eval_delta_p(gamma, sys, &setup.borel.n_roots)?;
    let positive = setup.borel.positive.positive_indices();
    let mut acc = Complex::new(F::zero(), F::zero());
    for w in 0..weyl.order() {
        let delta_wb = eval_delta(
            gamma,
            positive.iter().map(|&i| sys.root(weyl.act_root(w, i))),
        )?;
        let top = gamma.eval(&weyl.act_weight(w, &setup.lambda_b));
        acc = acc + delta_p * top / delta_wb * F::from(m[w]).unwrap();
    }
    Ok(acc)
}

/// Fails unless `m(w_M w) = m(w)` for all `w_M` in `W_M`.
pub fn check_invariant<S: Scalar>(torus: &RealTorus<S>, m: &[i64]) -> Result<()> {
    let weyl = torus.weyl();
    for w in 0..weyl.order() {
        for &v in torus.w_m() {
            let u = weyl.compose(v, w);
            if m[u] != m[w] {
                return Err(Error::CoefficientsNotInvariant(format!(
                    "m({u}) = {} but m({w}) = {}",
                    m[u], m[w]
                )));
            }
        }
    }
    Ok(())
}

/// `sum_{omega in W^M} m(omega B) sign(omega) tr(gamma; V^M_{omega(lambda_B + rho_B) - rho_B})`.
pub fn eval_expression_wcf<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    m: &[i64],
    gamma: &TorusElement<F>,
) -> Result<Complex<F>> {
    check_invariant(torus, m)?;
    Ok(setup
        .kostant
        .iter()
        .fold(Complex::new(F::zero(), F::zero()), |acc, &w| {
            acc + setup.tables[&w].trace(gamma) * F::from(m[w] * torus.weyl().sign(w)).unwrap()
        }))
}

/// `n(gamma, wB) = cbar_{R_L}(x, p_M(w(lambda_B + rho_B)) - lambda_0)` for
/// every `w`, with `x` the split part of `gamma` (only its L-chamber matters).
pub fn n_coefficients<S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    x: &CoweightVec<S>,
) -> Result<Vec<i64>> {
    let solver = &setup.l_solver;
    let xv = torus.to_v(x);
    let chamber = solver.arrangement().complex().locate(&xv).ok_or_else(|| {
        Error::IrregularElement(format!(
            "x = [{}] is not interior to an L-chamber",
            x.to_strings().join(", ")
        ))
    })?;
    let weyl = torus.weyl();
    let mut cache: HashMap<WeightVec<S>, ConstantTable<S>> = HashMap::new();
    let mut out = Vec::with_capacity(weyl.order());
    for w in 0..weyl.order() {
        let big = &torus.datum().project_pm(&setup.shifted(torus, w)) - &setup.lambda0;
        let lv = torus.restrict_to_v(&big);
        if !cache.contains_key(&lv) {
            let t = solver.table(&lv).map_err(|e| match e {
                Error::IrregularCharacter(m) => Error::DegenerateProjection(m),
                e => e,
            })?;
            cache.insert(lv.clone(), t);
        }
        out.push(cache[&lv].values[chamber]);
    }
    Ok(out)
}

/// `delta_P^{1/2}(gamma) * eval_expression_wcf(n, gamma)` at `gamma = gamma_c exp(t x0)`.
pub fn eval_expression_scaled<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    gamma_c: &TorusElement<F>,
    t: F,
    x0: &CoweightVec<S>,
) -> Result<Complex<F>> {
    let gamma = gamma_c.with_probe(t, x0);
    let n = n_coefficients(torus, setup, x0)?;
    let half = modulus_delta_p(&gamma, torus.system(), &setup.borel.n_roots).sqrt();
    Ok(eval_expression_wcf(torus, setup, &n, &gamma)? * half)
}

/// The same quantity regrouped over `W^{LM}` and `W_L`.
pub fn eval_expression_factored<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    gamma_c: &TorusElement<F>,
    t: F,
    x0: &CoweightVec<S>,
) -> Result<Complex<F>> {
    let gamma = gamma_c.with_probe(t, x0);
    let n = n_coefficients(torus, setup, x0)?;
    let weyl = torus.weyl();
    let zero = Complex::new(F::zero(), F::zero());
    let mut acc = zero;
    for omega in setup.wlm(torus)? {
        let base = setup.shifted(torus, omega);
        let mut inner = zero;
        for &wl in torus.w_l() {
            let u = weyl.compose(wl, omega);
            let chi = gamma.eval(&(&weyl.act_weight(wl, &base) - &base));
            inner = inner + chi * F::from(weyl.sign(wl) * n[u]).unwrap();
        }
        acc = acc + setup.tables[&omega].trace(&gamma) * inner * F::from(weyl.sign(omega)).unwrap();
    }
    let half = modulus_delta_p(&gamma, torus.system(), &setup.borel.n_roots).sqrt();
    Ok(acc * half)
}

/// Checks that `(w_L, omega) -> w_L omega` is a bijection `W_L x W^{LM} -> W^M`.
pub fn check_wlm_decomposition<S: Scalar>(torus: &RealTorus<S>, setup: &PhiSetup<S>) -> Result<()> {
    let weyl = torus.weyl();
    let mut products: Vec<usize> = Vec::new();
    for omega in setup.wlm(torus)? {
        for &wl in torus.w_l() {
            products.push(weyl.compose(wl, omega));
        }
    }
    products.sort_unstable();
    if products != setup.kostant {
        return Err(Error::violated(
            "W_L . W^{LM} = W^M",
            format!("{products:?}"),
            format!("{:?}", setup.kostant),
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue<F> {
    pub re: F,
    pub im: F,
}

impl<F: Float> From<Complex<F>> for ComplexValue<F> {
    fn from(z: Complex<F>) -> Self {
        // Adding zero turns -0 into +0.
        ComplexValue {
            re: z.re + F::zero(),
            im: z.im + F::zero(),
        }
    }
}

impl<F: Float> ComplexValue<F> {
    pub fn complex(&self) -> Complex<F> {
        Complex::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Contribution<F> {
    pub omega: usize,
    pub sign: i64,
    pub highest_weight: Vec<String>,
    pub dimension: u64,
    pub trace: ComplexValue<F>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiResult<F> {
    pub value: ComplexValue<F>,
    pub contributions: Vec<Contribution<F>>,
    pub q_l: i64,
    pub w_l_order: usize,
    pub wlm_count: usize,
}

impl<F: Float> PhiResult<F> {
    pub fn complex(&self) -> Complex<F> {
        self.value.complex()
    }
}

/// `(-1)^{q(L)} |W_L| sum_{omega in W^{LM}} sign(omega) tr(gamma; V^M_{omega(lambda_B + rho_B) - rho_B})`
/// at `gamma` with compact parameter `u` and central parameter `s`.
pub fn phi_theorem1<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    u: &CoweightVec<S>,
    s: &CoweightVec<S>,
) -> Result<PhiResult<F>> {
    torus.require_minus_one_in_wl()?;
    torus.check_elliptic(u, s)?;
    let q = torus.q_l()?;
    let gamma = TorusElement::<F>::from_parameters(u, s);
    let wlm = setup.wlm(torus)?;
    let mut sum = Complex::new(F::zero(), F::zero());
    let mut contributions = Vec::with_capacity(wlm.len());
    for &omega in &wlm {
        let sign = torus.weyl().sign(omega);
        let table = &setup.tables[&omega];
        let tr = table.trace(&gamma);
        sum = sum + tr * F::from(sign).unwrap();
        contributions.push(Contribution {
            omega,
            sign,
            highest_weight: table.highest.to_strings(),
            dimension: table.dimension(),
            trace: tr.into(),
        });
    }
    let factor = F::from(if q % 2 == 0 { 1 } else { -1 } * torus.w_l().len() as i64).unwrap();
    let value = sum * factor;
    Ok(PhiResult {
        value: value.into(),
        contributions,
        q_l: q,
        w_l_order: torus.w_l().len(),
        wlm_count: wlm.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbePoint<F> {
    pub t: F,
    pub value: ComplexValue<F>,
    pub factored: ComplexValue<F>,
    pub error: F,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport<F> {
    pub target: ComplexValue<F>,
    pub points: Vec<ProbePoint<F>>,
    /// `C` in `error(t) <= C t`, fitted from the first two points.
    pub rate: F,
    pub converges: bool,
}

/// Slack added to the fitted bound to absorb rounding.
pub const PROBE_SLACK: f64 = 1e-12;

/// Evaluates the expression at `gamma_c exp(t x0)` along `ts` and compares
/// with the closed-form value at `gamma_c`.
pub fn limit_probe<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    setup: &PhiSetup<S>,
    u: &CoweightVec<S>,
    s: &CoweightVec<S>,
    x0: &CoweightVec<S>,
    ts: &[F],
) -> Result<ProbeReport<F>> {
    if ts.len() < 3 || ts.windows(2).any(|w| !(w[0] > w[1])) || ts[ts.len() - 1] <= F::zero() {
        return Err(Error::Config(
            "t sequence must be positive, strictly decreasing, with at least 3 entries".into(),
        ));
    }
    let target = phi_theorem1::<F, S>(torus, setup, u, s)?.complex();
    let gamma_c = TorusElement::<F>::from_parameters(u, s);
    let mut points = Vec::with_capacity(ts.len());
    for &t in ts {
        let v = eval_expression_scaled(torus, setup, &gamma_c, t, x0)?;
        let f = eval_expression_factored(torus, setup, &gamma_c, t, x0)?;
        points.push(ProbePoint {
            t,
            value: v.into(),
            factored: f.into(),
            error: (v - target).norm(),
        });
    }
    let (t1, e1) = (points[0].t, points[0].error);
    let (t2, e2) = (points[1].t, points[1].error);
    let det = t1 * t2 * (t2 - t1);
    let a = (e1 * t2 * t2 - e2 * t1 * t1) / det;
    let b = (t1 * e2 - t2 * e1) / det;
    let rate = a.abs() + b.abs() * t1;
    let slack = F::from(PROBE_SLACK).unwrap();
    let converges = points[2..].iter().all(|p| p.error <= rate * p.t + slack);
    Ok(ProbeReport {
        target: target.into(),
        points,
        rate,
        converges,
    })
}

/// `(|D_M^G(gamma)|^{1/2}, delta_P^{1/2}(gamma) |Delta_P(gamma)|)`.
pub fn dmg_factor_check<F: Float + FloatConst, S: Scalar>(
    torus: &RealTorus<S>,
    borel: &BorelChoice<S>,
    gamma: &TorusElement<F>,
) -> Result<(F, F)> {
    let delta_p = eval_delta_p(gamma, torus.system(), &borel.n_roots)?;
    let lhs = d_m_g(torus, gamma).norm().sqrt();
    let rhs = modulus_delta_p(gamma, torus.system(), &borel.n_roots).sqrt() * delta_p.norm();
    Ok((lhs, rhs))
}
