//! Points of the complex torus and the products of root values built on them.

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};
use crate::root_datum::{CoweightVec, RootSystem, WeightVec, WeylGroup};
use crate::scalar::{to_float, Scalar};

/// Below this modulus a factor `1 - gamma(alpha)^{-1}` counts as zero.
pub const REGULARITY_EPS: f64 = 1e-12;

/// `gamma(lambda) = exp(<lambda, real>) * exp(2 pi i <lambda, angle>)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<F> {
    pub real: Vec<F>,
    pub angle: Vec<F>,
}

fn floats<S: Scalar, F: Float>(v: &[S]) -> Vec<F> {
    v.iter().map(to_float).collect()
}

impl<F: Float + FloatConst> TorusElement<F> {
    pub fn identity(dim: usize) -> Self {
        TorusElement {
            real: vec![F::zero(); dim],
            angle: vec![F::zero(); dim],
        }
    }

    pub fn new(real: Vec<F>, angle: Vec<F>) -> Self {
        assert_eq!(real.len(), angle.len());
        TorusElement { real, angle }
    }

    /// The element with compact parameter `u` and split parameter `s`.
    pub fn from_parameters<S: Scalar>(u: &CoweightVec<S>, s: &CoweightVec<S>) -> Self {
        TorusElement::new(floats(s.coords()), floats(u.coords()))
    }

    pub fn dim(&self) -> usize {
        self.real.len()
    }

    /// `self * exp(t x)`.
    pub fn with_probe<S: Scalar>(&self, t: F, x: &CoweightVec<S>) -> Self {
        let real = self
            .real
            .iter()
            .zip(x.coords())
            .map(|(&r, c)| r + t * to_float::<S, F>(c))
            .collect();
        TorusElement::new(real, self.angle.clone())
    }

    pub fn inverse(&self) -> Self {
        TorusElement::new(
            self.real.iter().map(|&r| -r).collect(),
            self.angle.iter().map(|&a| -a).collect(),
        )
    }

    pub fn eval_f(&self, lambda: &[F]) -> Complex<F> {
        let mut re = F::zero();
        let mut im = F::zero();
        for ((&l, &r), &a) in lambda.iter().zip(&self.real).zip(&self.angle) {
            re = re + l * r;
            im = im + l * a;
        }
        Complex::from_polar(re.exp(), F::TAU() * im)
    }

    pub fn eval<S: Scalar>(&self, lambda: &WeightVec<S>) -> Complex<F> {
        self.eval_f(&floats(lambda.coords()))
    }
}

fn eps<F: Float>() -> F {
    F::from(REGULARITY_EPS).unwrap()
}

/// `prod (1 - gamma(alpha)^{-1})` over the given roots.
pub fn eval_delta<'a, F, S>(
    gamma: &TorusElement<F>,
    roots: impl IntoIterator<Item = &'a WeightVec<S>>,
) -> Result<Complex<F>>
where
    F: Float + FloatConst,
    S: Scalar,
{
    let one = Complex::new(F::one(), F::zero());
    let mut acc = one;
    for r in roots {
        let f = one - gamma.eval(r).inv();
        if f.norm() < eps() {
            return Err(Error::IrregularElement(format!(
                "gamma(alpha) = 1 for alpha = [{}]",
                r.to_strings().join(", ")
            )));
        }
        acc = acc * f;
    }
    Ok(acc)
}

/// `Delta_B` for the positive roots `positive`.
pub fn eval_delta_b<F: Float + FloatConst, S: Scalar>(
    gamma: &TorusElement<F>,
    system: &RootSystem<S>,
    positive: &[usize],
) -> Result<Complex<F>> {
    eval_delta(gamma, positive.iter().map(|&i| system.root(i)))
}

/// `Delta_P` for the unipotent roots `n_roots`.
pub fn eval_delta_p<F: Float + FloatConst, S: Scalar>(
    gamma: &TorusElement<F>,
    system: &RootSystem<S>,
    n_roots: &[usize],
) -> Result<Complex<F>> {
    eval_delta(gamma, n_roots.iter().map(|&i| system.root(i)))
}

/// `delta_P(gamma) = prod |gamma(alpha)|` over `R_N`.
pub fn modulus_delta_p<F: Float + FloatConst, S: Scalar>(
    gamma: &TorusElement<F>,
    system: &RootSystem<S>,
    n_roots: &[usize],
) -> F {
    n_roots
        .iter()
        .fold(F::one(), |acc, &i| acc * gamma.eval(system.root(i)).norm())
}

/// `(Delta_{wB}(gamma) / Delta_B(gamma), sign(w) gamma(rho - w rho))`.
pub fn delta_quotient_identity_check<F: Float + FloatConst, S: Scalar>(
    gamma: &TorusElement<F>,
    system: &RootSystem<S>,
    weyl: &WeylGroup<S>,
    w: usize,
    positive: &[usize],
) -> Result<(Complex<F>, Complex<F>)> {
    let moved: Vec<usize> = positive.iter().map(|&i| weyl.act_root(w, i)).collect();
    let lhs = eval_delta_b(gamma, system, &moved)? / eval_delta_b(gamma, system, positive)?;
    let mut rho = WeightVec::zeros(system.dim());
    for &i in positive {
        rho = &rho + system.root(i);
    }
    let rho = rho.scale(&S::half());
    let sign = F::from(weyl.sign(w)).unwrap();
    let rhs = gamma.eval(&(&rho - &weyl.act_weight(w, &rho))) * sign;
    Ok((lhs, rhs))
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close<F: Float>(a: Complex<F>, b: Complex<F>, tol: F) -> bool {
    (a - b).norm() <= tol * F::one().max(a.norm()).max(b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::types;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn rank_one_delta() {
        let sys = types::a_n::<Q>(1);
        let pos: Vec<usize> = (0..2)
            .filter(|&i| sys.root(i).0[0] > Q::from_int(0))
            .collect();
        // alpha = 2 in these coordinates, so gamma(alpha) = e^{2t} for real = t.
        let t = 0.3f64;
        let g = TorusElement::new(vec![t], vec![0.0]);
        let d = eval_delta_b(&g, &sys, &pos).unwrap();
        assert!((d.re - (1.0 - (-2.0 * t).exp())).abs() < 1e-15);
        assert!(matches!(
            eval_delta_b(&TorusElement::<f64>::identity(1), &sys, &pos),
            Err(Error::IrregularElement(_))
        ));
        let w = WeylGroup::generate(&sys, 10).unwrap();
        let (l, r) = delta_quotient_identity_check(&g, &sys, &w, 1, &pos).unwrap();
        assert!(close(l, r, 1e-12));
        assert!(close(l, -g.eval(sys.root(pos[0])), 1e-12));
    }

    #[test]
    fn modulus_is_one_on_compact_parameters() {
        let sys = types::c_n::<Q>(2);
        let g = TorusElement::new(vec![0.0, 0.0], vec![0.17, 0.31]);
        assert!((modulus_delta_p(&g, &sys, &[0, 1, 2, 3]) - 1.0).abs() < 1e-15);
    }
}
