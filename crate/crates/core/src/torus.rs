//! A maximal torus with its real structure: the subgroups, spaces and chamber
//! structures that the character formulas are assembled from.

use crate::chamber::{SplitChambers, DEFAULT_HYPERPLANE_CAP};
use crate::constants::CbarSolver;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace};
use crate::root_datum::{
    CoweightVec, PositiveSystem, RealRootDatum, RootClassification, RootSystem, WeightVec,
    WeylGroup, DEFAULT_WEYL_CAP,
};
use crate::scalar::{sign_of, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Capabilities {
    /// `-1` lies in the Weyl group of `R_L` acting on `a_M / a_G`.
    pub has_minus_one_in_wl: bool,
    /// `-1` lies in `W`, i.e. some real form of the group has discrete series.
    pub has_discrete_series_torus: bool,
    /// The constants of the full system are defined and `-1` lies in `W`.
    pub prop1_eligible: bool,
}

#[derive(Clone, Debug)]
pub struct Caps {
    pub weyl: usize,
    pub hyperplanes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: DEFAULT_WEYL_CAP,
            hyperplanes: DEFAULT_HYPERPLANE_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealTorus<S> {
    datum: RealRootDatum<S>,
    weyl: WeylGroup<S>,
    classes: RootClassification,
    w_l: Vec<usize>,
    w_m: Vec<usize>,
    a_m: Subspace<S>,
    a_g: Subspace<S>,
    /// Span of the real coroots.
    v: Subspace<S>,
    /// `R_L` on `v`, in its coordinates, in the order of `classes.real`.
    l_system: RootSystem<S>,
    l_weyl: WeylGroup<S>,
    /// `R_M` on the whole space, in the order of `classes.imaginary`.
    m_system: RootSystem<S>,
    m_weyl: WeylGroup<S>,
    chambers: SplitChambers<S>,
    /// Rows: independent real roots restricted to `v`, and their indices.
    v_solve: (Matrix<S>, Vec<usize>),
    caps: Caps,
    capabilities: Capabilities,
}

/// A Borel subgroup containing the torus and contained in a parabolic with
/// Levi `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelChoice<S> {
    pub positive: PositiveSystem,
    /// `R_M+`.
    pub m_positive: Vec<usize>,
    /// `R_N`: the positive roots outside `R_M`.
    pub n_roots: Vec<usize>,
    pub p_chamber: usize,
    pub l_chamber: usize,
    /// `R_L+ = R_N` intersected with `R_L`.
    pub l_positive: Vec<usize>,
    pub rho: WeightVec<S>,
}

impl<S: Scalar> RealTorus<S> {
    pub fn new(datum: RealRootDatum<S>, caps: Caps) -> Result<Self> {
        let sys = datum.system();
        let weyl = WeylGroup::generate(sys, caps.weyl)?;
        let classes = datum.classify_roots();
        let (w_l, w_m) = datum.weyl_subgroups(&weyl, &classes);
        let a_m = datum.a_m();
        let a_g = datum.a_g();
        let real_coroots: Vec<Vec<S>> = classes
            .real
            .iter()
            .map(|&i| sys.coroot(i).0.clone())
            .collect();
        let v = Subspace::span(sys.dim(), &real_coroots);
        let l_system = RootSystem::new(
            v.dim(),
            classes
                .real
                .iter()
                .map(|&i| WeightVec(v.restrict(sys.root(i).coords())))
                .collect(),
            classes
                .real
                .iter()
                .map(|&i| CoweightVec(v.coords(sys.coroot(i).coords()).expect("coroot in span")))
                .collect(),
        )
        .map_err(|e| Error::RecursionInconsistent(format!("real roots on a_M/a_G: {e}")))?;
        let l_weyl = WeylGroup::generate(&l_system, caps.weyl)?;
        let m_system = sys.subsystem(&classes.imaginary);
        let m_weyl = WeylGroup::generate(&m_system, caps.weyl)?;
        let chambers = SplitChambers::new(&datum, &classes, &weyl, &w_l, caps.hyperplanes)?;

        let restricted: Vec<Vec<S>> = l_system.roots().iter().map(|r| r.0.clone()).collect();
        let keep = linalg::independent_subset(&restricted);
        let v_solve = (
            Matrix::from_rows(keep.iter().map(|&k| restricted[k].clone()).collect()),
            keep.iter().map(|&k| classes.real[k]).collect(),
        );

        let quotient_dim = a_m.dim() - a_g.dim();
        let has_minus_one_in_wl = v.dim() == quotient_dim && l_weyl.minus_one(&l_system).is_some();
        let has_discrete_series_torus = weyl.minus_one(sys).is_some();
        let prop1_eligible = has_discrete_series_torus
            && sys.spans()
            && CbarSolver::new(sys, caps.hyperplanes)
                .and_then(|s| s.table(&sys.rho(weyl.positive_system())))
                .is_ok();
        Ok(RealTorus {
            datum,
            weyl,
            classes,
            w_l,
            w_m,
            a_m,
            a_g,
            v,
            l_system,
            l_weyl,
            m_system,
            m_weyl,
            chambers,
            v_solve,
            caps,
            capabilities: Capabilities {
                has_minus_one_in_wl,
                has_discrete_series_torus,
                prop1_eligible,
            },
        })
    }

    pub fn datum(&self) -> &RealRootDatum<S> {
        &self.datum
    }

    pub fn system(&self) -> &RootSystem<S> {
        self.datum.system()
    }

    pub fn weyl(&self) -> &WeylGroup<S> {
        &self.weyl
    }

    pub fn classes(&self) -> &RootClassification {
        &self.classes
    }

    pub fn w_l(&self) -> &[usize] {
        &self.w_l
    }

    pub fn w_m(&self) -> &[usize] {
        &self.w_m
    }

    pub fn a_m(&self) -> &Subspace<S> {
        &self.a_m
    }

    pub fn a_g(&self) -> &Subspace<S> {
        &self.a_g
    }

    /// `a_M / a_G`, realized as the span of the real coroots.
    pub fn v(&self) -> &Subspace<S> {
        &self.v
    }

    pub fn l_system(&self) -> &RootSystem<S> {
        &self.l_system
    }

    pub fn l_weyl(&self) -> &WeylGroup<S> {
        &self.l_weyl
    }

    pub fn m_system(&self) -> &RootSystem<S> {
        &self.m_system
    }

    pub fn m_weyl(&self) -> &WeylGroup<S> {
        &self.m_weyl
    }

    pub fn chambers(&self) -> &SplitChambers<S> {
        &self.chambers
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn capabilities(&self) -> Capabilities {
        self.capabilities
    }

    pub fn is_imaginary(&self, i: usize) -> bool {
        self.classes.imaginary.binary_search(&i).is_ok()
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.classes.real.binary_search(&i).is_ok()
    }

    /// `q(L) = (|R_L+| + dim a_M/a_G) / 2`.
    pub fn q_l(&self) -> Result<i64> {
        let twice = self.classes.real.len() / 2 + (self.a_m.dim() - self.a_g.dim());
        if !twice.is_multiple_of(2) {
            return Err(Error::NonIntegralQ(format!(
                "|R_L+| + dim a_M/a_G = {twice} is odd"
            )));
        }
        Ok(twice as i64 / 2)
    }

    /// `q(G)`, with the dimension taken modulo the central directions.
    pub fn q_g(&self) -> Result<i64> {
        let sys = self.system();
        let twice = sys.len() / 2 + sys.rank();
        if !twice.is_multiple_of(2) {
            return Err(Error::NonIntegralQ(format!("|R+| + rank = {twice} is odd")));
        }
        Ok(twice as i64 / 2)
    }

    pub fn require_minus_one_in_wl(&self) -> Result<()> {
        if self.capabilities.has_minus_one_in_wl {
            Ok(())
        } else {
            Err(Error::MinusOneNotInWeylGroup(format!(
                "W(R_L) with {} roots does not contain -1 on a_M/a_G (dim {})",
                self.classes.real.len(),
                self.a_m.dim() - self.a_g.dim()
            )))
        }
    }

    /// Coordinates in `v` of the component of `x` in `a_M` along `a_G`.
    pub fn to_v(&self, x: &CoweightVec<S>) -> CoweightVec<S> {
        let (m, roots) = &self.v_solve;
        if roots.is_empty() {
            return CoweightVec(Vec::new());
        }
        let rhs: Vec<S> = roots
            .iter()
            .map(|&i| self.system().root(i).pair(x))
            .collect();
        CoweightVec(m.solve(&rhs).expect("independent rows"))
    }

    pub fn restrict_to_v(&self, lambda: &WeightVec<S>) -> WeightVec<S> {
        WeightVec(self.v.restrict(lambda.coords()))
    }

    /// `lambda_0 = p_G(lambda_B)`.
    pub fn lambda0(&self, lambda_b: &WeightVec<S>) -> WeightVec<S> {
        self.datum.project_pg(lambda_b)
    }

    /// Checks that `u` lies in the compact part and `s` in `a_G`.
    pub fn check_elliptic(&self, u: &CoweightVec<S>, s: &CoweightVec<S>) -> Result<()> {
        if !self.datum.compact_part().contains(u.coords()) {
            return Err(Error::NotElliptic(format!(
                "u = [{}] is not in the sigma = -1 eigenspace",
                u.to_strings().join(", ")
            )));
        }
        if !self.a_g.contains(s.coords()) {
            return Err(Error::NotElliptic(format!(
                "s = [{}] is not in a_G",
                s.to_strings().join(", ")
            )));
        }
        Ok(())
    }

    pub fn borel_from_positive(&self, positive: Vec<bool>) -> Result<BorelChoice<S>> {
        let sys = self.system();
        if positive.len() != sys.len() {
            return Err(Error::InvalidBorel("wrong number of roots".into()));
        }
        let ps = sys.with_positive(positive);
        match sys.positive_from_simple(&ps.simple) {
            Some(check) if check.positive == ps.positive => {}
            _ => return Err(Error::InvalidBorel("not a positive system".into())),
        }
        let n_roots: Vec<usize> = ps
            .positive_indices()
            .into_iter()
            .filter(|&i| !self.is_imaginary(i))
            .collect();
        let p_chamber = (0..self.chambers.p_complex().chambers().len())
            .find(|&p| self.chambers.parabolic_from_pchamber(p) == n_roots)
            .ok_or_else(|| {
                Error::InvalidBorel(
                    "positive roots outside R_M do not come from a P-chamber".into(),
                )
            })?;
        let m_positive = ps
            .positive_indices()
            .into_iter()
            .filter(|&i| self.is_imaginary(i))
            .collect();
        let l_positive = n_roots
            .iter()
            .copied()
            .filter(|&i| self.is_real(i))
            .collect();
        Ok(BorelChoice {
            rho: sys.rho(&ps),
            positive: ps,
            m_positive,
            n_roots,
            p_chamber,
            l_chamber: self.chambers.pchamber_to_lchamber(p_chamber),
            l_positive,
        })
    }

    /// Interprets `indices` as simple roots, or as the full positive set when
    /// it has `|R|/2` elements and is not a base.
    pub fn borel_from_indices(&self, indices: &[usize]) -> Result<BorelChoice<S>> {
        let sys = self.system();
        if indices.iter().any(|&i| i >= sys.len()) {
            return Err(Error::InvalidBorel("root index out of range".into()));
        }
        if let Some(ps) = sys.positive_from_simple(indices) {
            return self.borel_from_positive(ps.positive);
        }
        if indices.len() == sys.len() / 2 {
            let mut positive = vec![false; sys.len()];
            for &i in indices {
                positive[i] = true;
            }
            return self.borel_from_positive(positive);
        }
        Err(Error::InvalidBorel(format!(
            "{indices:?} is neither a base nor a positive system"
        )))
    }

    /// The Borel attached to a P-chamber, with `R_M+` from the generic coweight.
    pub fn borel_for_pchamber(&self, p: usize) -> BorelChoice<S> {
        let sys = self.system();
        let x = self.chambers.p_point(p);
        let y = sys.generic_coweight();
        let positive = (0..sys.len())
            .map(|i| match sign_of(&sys.root(i).pair(&x)) {
                0 => sign_of(&sys.root(i).pair(&y)) > 0,
                s => s > 0,
            })
            .collect();
        self.borel_from_positive(positive)
            .expect("P-chamber perturbation gives a valid Borel")
    }

    pub fn default_borel(&self) -> BorelChoice<S> {
        self.borel_for_pchamber(0)
    }

    /// All `w B` that are again adapted to the L-chamber of `borel`, with `w`.
    pub fn valid_borels(&self, borel: &BorelChoice<S>) -> Vec<(usize, BorelChoice<S>)> {
        let sys = self.system();
        let pos = borel.positive.positive_indices();
        let mut out = Vec::new();
        for w in 0..self.weyl.order() {
            let mut positive = vec![false; sys.len()];
            for &i in &pos {
                positive[self.weyl.act_root(w, i)] = true;
            }
            if let Ok(b) = self.borel_from_positive(positive) {
                if b.l_chamber == borel.l_chamber {
                    out.push((w, b));
                }
            }
        }
        out
    }

    /// Checks that `lambda` is integral and dominant for `borel`.
    pub fn check_highest_weight(
        &self,
        borel: &BorelChoice<S>,
        lambda: &WeightVec<S>,
    ) -> Result<()> {
        if !lambda.is_integral() {
            return Err(Error::NotIntegral(format!(
                "[{}] has non-integral coordinates",
                lambda.to_strings().join(", ")
            )));
        }
        let sys = self.system();
        if let Some(i) = borel
            .positive
            .positive_indices()
            .into_iter()
            .find(|&i| lambda.pair(sys.coroot(i)).is_negative())
        {
            return Err(Error::NotDominant(format!(
                "<lambda_B, coroot {i}> < 0 for a positive root"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{validate_datum, RawDatum};
    use num_rational::BigRational;

    type Q = BigRational;

    fn c2(sigma: Vec<Vec<i64>>) -> RealTorus<Q> {
        let roots = vec![
            vec![1, -1],
            vec![-1, 1],
            vec![1, 1],
            vec![-1, -1],
            vec![2, 0],
            vec![-2, 0],
            vec![0, 2],
            vec![0, -2],
        ];
        let coroots = vec![
            vec![1, -1],
            vec![-1, 1],
            vec![1, 1],
            vec![-1, -1],
            vec![1, 0],
            vec![-1, 0],
            vec![0, 1],
            vec![0, -1],
        ];
        let d = validate_datum(&RawDatum {
            rank: 2,
            roots,
            coroots,
            sigma,
        })
        .unwrap();
        RealTorus::new(d, Caps::default()).unwrap()
    }

    #[test]
    fn swap_torus() {
        let t = c2(vec![vec![0, 1], vec![1, 0]]);
        assert!(t.capabilities().has_minus_one_in_wl);
        assert!(t.capabilities().prop1_eligible);
        assert_eq!(t.q_l().unwrap(), 1);
        assert_eq!(t.v().dim(), 1);
        assert_eq!(t.a_g().dim(), 0);
        let b = t.borel_from_indices(&[0, 6]).unwrap();
        assert_eq!(b.n_roots, vec![2, 4, 6]);
        assert_eq!(b.m_positive, vec![0]);
        assert_eq!(b.rho, WeightVec::from_ints(&[2, 1]));
        assert_eq!(t.valid_borels(&b).len(), 2);
        assert!(t
            .check_highest_weight(&b, &WeightVec::from_ints(&[1, 1]))
            .is_ok());
        assert!(matches!(
            t.check_highest_weight(&b, &WeightVec::from_ints(&[0, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn extremes() {
        let split = c2(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(split.q_l().unwrap(), 3);
        assert_eq!(split.valid_borels(&split.default_borel()).len(), 1);
        let ell = c2(vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(ell.q_l().unwrap(), 0);
        assert!(ell.capabilities().has_minus_one_in_wl);
        assert_eq!(ell.valid_borels(&ell.default_borel()).len(), 8);
    }
}
