//! Abstract reduced root systems with explicit roots and coroots.

use std::collections::HashMap;

use crate::error::{DatumRejection, DatumViolation};
use crate::linalg::{self, Matrix};
use crate::root_datum::{CoweightVec, WeightVec};
use crate::scalar::{sign_of, Scalar};

/// Roots in `X*` and coroots in `X`, paired index by index.
///
/// The root list contains both `alpha` and `-alpha`. The system need not span
/// `X*`; wall systems and Levi subsystems routinely do not.
#[derive(Clone, Debug)]
pub struct RootSystem<S> {
    dim: usize,
    roots: Vec<WeightVec<S>>,
    coroots: Vec<CoweightVec<S>>,
    lookup: HashMap<WeightVec<S>, usize>,
}

/// A choice of positive roots, with its simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    pub positive: Vec<bool>,
    pub simple: Vec<usize>,
}

impl PositiveSystem {
    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&i| self.positive[i])
            .collect()
    }

    pub fn count(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }
}

impl<S: Scalar> RootSystem<S> {
    /// Validates and builds a root system; every violated invariant is reported.
    pub fn new(
        dim: usize,
        roots: Vec<WeightVec<S>>,
        coroots: Vec<CoweightVec<S>>,
    ) -> Result<Self, DatumRejection> {
        let mut violations = Vec::new();
        if roots.len() != coroots.len() {
            violations.push(DatumViolation::Malformed(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
            return Err(DatumRejection(violations));
        }
        for (i, (r, c)) in roots.iter().zip(&coroots).enumerate() {
            if r.dim() != dim || c.dim() != dim {
                violations.push(DatumViolation::Malformed(format!(
                    "root {i} does not have {dim} coordinates"
                )));
            } else if r.is_zero() {
                violations.push(DatumViolation::Malformed(format!("root {i} is zero")));
            }
        }
        if !violations.is_empty() {
            return Err(DatumRejection(violations));
        }
        let mut lookup = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if lookup.insert(r.clone(), i).is_some() {
                violations.push(DatumViolation::Malformed(format!("root {i} is repeated")));
            }
        }
        let sys = RootSystem {
            dim,
            roots,
            coroots,
            lookup,
        };
        let two = S::from_int(2);
        for i in 0..sys.len() {
            if sys.pairing(i, i) != two {
                violations.push(DatumViolation::PairingNotTwo { root: i });
            }
        }
        if violations.is_empty() {
            for a in 0..sys.len() {
                for b in 0..sys.len() {
                    let image = sys.reflect_weight(a, &sys.roots[b]);
                    let ok = match sys.index_of(&image) {
                        Some(k) => sys.coroots[k] == sys.reflect_coweight(a, &sys.coroots[b]),
                        None => false,
                    };
                    if !ok {
                        violations.push(DatumViolation::ReflectionEscapesRootSet {
                            reflection: a,
                            root: b,
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(sys)
        } else {
            Err(DatumRejection(violations))
        }
    }

    /// Rank-0 system on a `dim`-dimensional space.
    pub fn empty(dim: usize) -> Self {
        RootSystem {
            dim,
            roots: Vec::new(),
            coroots: Vec::new(),
            lookup: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[WeightVec<S>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[CoweightVec<S>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &WeightVec<S> {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &CoweightVec<S> {
        &self.coroots[i]
    }

    pub fn index_of(&self, root: &WeightVec<S>) -> Option<usize> {
        self.lookup.get(root).copied()
    }

    pub fn negative(&self, i: usize) -> usize {
        self.index_of(&-&self.roots[i])
            .expect("root system is closed under negation")
    }

    /// `<alpha_i, alpha_j^vee>`.
    pub fn pairing(&self, i: usize, j: usize) -> S {
        self.roots[i].pair(&self.coroots[j])
    }

    pub fn reflect_weight(&self, j: usize, lambda: &WeightVec<S>) -> WeightVec<S> {
        let c = lambda.pair(&self.coroots[j]);
        lambda - &self.roots[j].scale(&c)
    }

    pub fn reflect_coweight(&self, j: usize, x: &CoweightVec<S>) -> CoweightVec<S> {
        let c = self.roots[j].pair(x);
        x - &self.coroots[j].scale(&c)
    }

    /// Matrix of `s_j` on `X*` (column-vector convention).
    pub fn reflection_matrix(&self, j: usize) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::identity(self.dim);
        let a = &self.roots[j].0;
        let c = &self.coroots[j].0;
        for r in 0..self.dim {
            for k in 0..self.dim {
                let v = m.get(r, k).clone() - a[r].clone() * c[k].clone();
                m.set(r, k, v);
            }
        }
        m
    }

    /// Dimension of the span of the roots.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<S>> = self.roots.iter().map(|r| r.0.clone()).collect();
        linalg::rank_of(&rows)
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn is_regular_coweight(&self, x: &CoweightVec<S>) -> bool {
        self.roots.iter().all(|r| !r.pair(x).is_zero())
    }

    pub fn is_regular_weight(&self, lambda: &WeightVec<S>) -> bool {
        self.coroots.iter().all(|c| !lambda.pair(c).is_zero())
    }

    /// A deterministic regular coweight `(1, m, m^2, ...)` for the smallest working `m`.
    pub fn generic_coweight(&self) -> CoweightVec<S> {
        let mut m = 2i64;
        loop {
            let mut p = S::one();
            let mut coords = Vec::with_capacity(self.dim);
            for _ in 0..self.dim {
                coords.push(p.clone());
                p = p * S::from_int(m);
            }
            let x = CoweightVec(coords);
            if self.is_regular_coweight(&x) {
                return x;
            }
            m += 1;
        }
    }

    /// Positive system `{alpha : <alpha, x> > 0}`; `None` if `x` is singular.
    pub fn positive_system(&self, x: &CoweightVec<S>) -> Option<PositiveSystem> {
        let mut positive = Vec::with_capacity(self.len());
        for r in &self.roots {
            match sign_of(&r.pair(x)) {
                0 => return None,
                s => positive.push(s > 0),
            }
        }
        Some(self.with_positive(positive))
    }

    /// Completes a positive-root indicator with its simple roots.
    pub fn with_positive(&self, positive: Vec<bool>) -> PositiveSystem {
        let pos: Vec<usize> = (0..self.len()).filter(|&i| positive[i]).collect();
        let mut decomposable = vec![false; self.len()];
        for (a, &i) in pos.iter().enumerate() {
            for &j in &pos[a + 1..] {
                if let Some(k) = self.index_of(&(&self.roots[i] + &self.roots[j])) {
                    decomposable[k] = true;
                }
            }
        }
        let simple = pos.into_iter().filter(|&i| !decomposable[i]).collect();
        PositiveSystem { positive, simple }
    }

    /// The positive system whose simple roots are `simple`, if they form a base.
    pub fn positive_from_simple(&self, simple: &[usize]) -> Option<PositiveSystem> {
        if simple.iter().any(|&i| i >= self.len()) {
            return None;
        }
        let cols: Vec<Vec<S>> = simple.iter().map(|&i| self.roots[i].0.clone()).collect();
        if linalg::rank_of(&cols) != simple.len() || simple.len() != self.rank() {
            return None;
        }
        let basis = Matrix::from_columns(self.dim, &cols);
        let mut positive = Vec::with_capacity(self.len());
        for r in &self.roots {
            let c = basis.solve(&r.0)?;
            if !c.iter().all(Scalar::is_integral) {
                return None;
            }
            if c.iter().all(|v| !v.is_negative()) {
                positive.push(true);
            } else if c.iter().all(|v| !v.is_positive()) {
                positive.push(false);
            } else {
                return None;
            }
        }
        let ps = self.with_positive(positive);
        let mut want = simple.to_vec();
        want.sort_unstable();
        if ps.simple != want {
            return None;
        }
        Some(ps)
    }

    /// The roots with the given indices, as a root system on the same space.
    pub fn subsystem(&self, indices: &[usize]) -> RootSystem<S> {
        let roots: Vec<WeightVec<S>> = indices.iter().map(|&i| self.roots[i].clone()).collect();
        let lookup = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, r)| (r, k))
            .collect();
        RootSystem {
            dim: self.dim,
            roots,
            coroots: indices.iter().map(|&i| self.coroots[i].clone()).collect(),
            lookup,
        }
    }

    /// Cartan matrix `A[i][j] = <alpha_j, alpha_i^vee>` on the given simple roots.
    pub fn cartan_matrix(&self, simple: &[usize]) -> Matrix<S> {
        Matrix::from_rows(
            simple
                .iter()
                .map(|&i| simple.iter().map(|&j| self.pairing(j, i)).collect())
                .collect(),
        )
    }

    /// Coefficients of `lambda` in the simple roots, if it lies in their span.
    pub fn simple_coordinates(&self, simple: &[usize], lambda: &WeightVec<S>) -> Option<Vec<S>> {
        let cols: Vec<Vec<S>> = simple.iter().map(|&i| self.roots[i].0.clone()).collect();
        if cols.is_empty() {
            return if lambda.is_zero() {
                Some(Vec::new())
            } else {
                None
            };
        }
        Matrix::from_columns(self.dim, &cols).solve(&lambda.0)
    }

    /// Dominant conjugate of `lambda` under the simple reflections.
    pub fn dominant_conjugate(&self, simple: &[usize], lambda: &WeightVec<S>) -> WeightVec<S> {
        let mut v = lambda.clone();
        loop {
            let Some(&j) = simple
                .iter()
                .find(|&&j| v.pair(&self.coroots[j]).is_negative())
            else {
                return v;
            };
            v = self.reflect_weight(j, &v);
        }
    }

    /// The half sum of the positive roots.
    pub fn rho(&self, pos: &PositiveSystem) -> WeightVec<S> {
        let mut acc = WeightVec::zeros(self.dim);
        for i in pos.positive_indices() {
            acc = &acc + &self.roots[i];
        }
        acc.scale(&S::half())
    }
}
