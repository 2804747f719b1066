//! L-chambers and P-chambers in the split component `a_M` of a real torus.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::root_datum::{CoweightVec, RealRootDatum, RootClassification, WeightVec, WeylGroup};
use crate::scalar::{sign_of, Scalar};

use super::complex::{Arrangement, ChamberComplex, HyperplaneRef};

/// Both chamber structures on `a_M`, in the coordinates of a fixed chart.
#[derive(Clone, Debug)]
pub struct SplitChambers<S> {
    chart: Subspace<S>,
    /// Roots outside `R_M`, in increasing index order.
    p_roots: Vec<usize>,
    p_refs: Vec<HyperplaneRef<S>>,
    p_complex: ChamberComplex<S>,
    l_roots: Vec<usize>,
    l_complex: ChamberComplex<S>,
    p_to_l: Vec<usize>,
}

fn restricted<S: Scalar>(
    datum: &RealRootDatum<S>,
    chart: &Subspace<S>,
    roots: &[usize],
) -> Vec<WeightVec<S>> {
    roots
        .iter()
        .map(|&i| WeightVec(chart.restrict(datum.system().root(i).coords())))
        .collect()
}

impl<S: Scalar> SplitChambers<S> {
    pub fn new(
        datum: &RealRootDatum<S>,
        classes: &RootClassification,
        weyl: &WeylGroup<S>,
        w_l: &[usize],
        cap: usize,
    ) -> Result<Self> {
        let chart = datum.a_m();
        let m = chart.dim();
        let n = datum.system().len();
        let p_roots: Vec<usize> = (0..n).filter(|i| !classes.imaginary.contains(i)).collect();
        let p_funcs = restricted(datum, &chart, &p_roots);
        if let Some(k) = p_funcs.iter().position(|f| f.is_zero()) {
            return Err(Error::violated(
                format!("root {} outside R_M restricts to zero on a_M", p_roots[k]),
                "0",
                "nonzero",
            ));
        }
        let (p_arr, p_refs) = Arrangement::from_functionals(m, &p_funcs)?;
        let p_complex = ChamberComplex::build(p_arr, cap)?;

        let l_roots = classes.real.clone();
        let (l_arr, _) = Arrangement::from_functionals(m, &restricted(datum, &chart, &l_roots))?;
        let l_complex = ChamberComplex::build(l_arr, cap)?;

        let p_to_l = p_complex
            .chambers()
            .iter()
            .map(|c| {
                l_complex.locate(&c.interior).ok_or_else(|| {
                    Error::violated(
                        "P-chamber not inside an L-chamber",
                        format!("{:?}", c.sign),
                        "an L-chamber",
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let out = SplitChambers {
            chart,
            p_roots,
            p_refs,
            p_complex,
            l_roots,
            l_complex,
            p_to_l,
        };
        out.check_simple_transitivity(weyl, w_l)?;
        Ok(out)
    }

    fn check_simple_transitivity(&self, weyl: &WeylGroup<S>, w_l: &[usize]) -> Result<()> {
        let count = self.l_complex.chambers().len();
        if count != w_l.len() {
            return Err(Error::SimpleTransitivityFailure(format!(
                "{count} L-chambers but |W_L| = {}",
                w_l.len()
            )));
        }
        let x = self.embed(&self.l_complex.chamber(0).interior);
        let mut hit = vec![false; count];
        for &w in w_l {
            let y = weyl.act_coweight(w, &x);
            let c = self
                .to_chart(&y)
                .and_then(|yc| self.l_complex.locate(&yc))
                .ok_or_else(|| {
                    Error::SimpleTransitivityFailure(format!(
                        "W_L element {w} leaves the L-chambers"
                    ))
                })?;
            if std::mem::replace(&mut hit[c], true) {
                return Err(Error::SimpleTransitivityFailure(format!(
                    "L-chamber {c} reached twice"
                )));
            }
        }
        Ok(())
    }

    pub fn chart(&self) -> &Subspace<S> {
        &self.chart
    }

    pub fn embed(&self, y: &CoweightVec<S>) -> CoweightVec<S> {
        CoweightVec(self.chart.embed(y.coords()))
    }

    pub fn to_chart(&self, x: &CoweightVec<S>) -> Option<CoweightVec<S>> {
        self.chart.coords(x.coords()).map(CoweightVec)
    }

    pub fn p_complex(&self) -> &ChamberComplex<S> {
        &self.p_complex
    }

    pub fn l_complex(&self) -> &ChamberComplex<S> {
        &self.l_complex
    }

    /// Interior point of a P-chamber, in coweight coordinates.
    pub fn p_point(&self, p: usize) -> CoweightVec<S> {
        self.embed(&self.p_complex.chamber(p).interior)
    }

    pub fn l_point(&self, l: usize) -> CoweightVec<S> {
        self.embed(&self.l_complex.chamber(l).interior)
    }

    pub fn pchamber_to_lchamber(&self, p: usize) -> usize {
        self.p_to_l[p]
    }

    /// `R_N = {alpha not in R_M : <alpha, x> > 0}` for `x` in the P-chamber.
    pub fn parabolic_from_pchamber(&self, p: usize) -> Vec<usize> {
        let sign = &self.p_complex.chamber(p).sign;
        self.p_roots
            .iter()
            .zip(&self.p_refs)
            .filter(|(_, r)| r.sign() * sign[r.hyperplane] > 0)
            .map(|(&i, _)| i)
            .collect()
    }

    /// Positive system of `R_L` cut out by an L-chamber.
    pub fn l_positive(&self, datum: &RealRootDatum<S>, l: usize) -> Vec<usize> {
        let x = self.l_point(l);
        self.l_roots
            .iter()
            .copied()
            .filter(|&i| sign_of(&datum.system().root(i).pair(&x)) > 0)
            .collect()
    }

    /// P-chamber containing a regular point of `a_M`.
    pub fn locate_p(&self, x: &CoweightVec<S>) -> Option<usize> {
        self.to_chart(x).and_then(|y| self.p_complex.locate(&y))
    }
}
