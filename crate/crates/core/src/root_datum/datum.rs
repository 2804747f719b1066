//! Real root data: a root datum together with the Galois involution of a real
//! torus, and the root classification it induces.

use crate::error::{DatumRejection, DatumViolation};
use crate::linalg::{Matrix, Subspace};
use crate::root_datum::{CoweightVec, RootSystem, WeightVec, WeylGroup};
use crate::scalar::Scalar;

/// Integer input for [`validate_datum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub sigma: Vec<Vec<i64>>,
}

/// The involution `sigma` on `X*`; on `X` it acts by the inverse transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution<S> {
    matrix: Matrix<S>,
    coweight_matrix: Matrix<S>,
}

impl<S: Scalar> Involution<S> {
    fn new(matrix: Matrix<S>) -> Self {
        // sigma^2 = 1, so (sigma^{-1})^T = sigma^T.
        let coweight_matrix = matrix.transpose();
        Involution {
            matrix,
            coweight_matrix,
        }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn weight(&self, lambda: &WeightVec<S>) -> WeightVec<S> {
        WeightVec(self.matrix.apply(&lambda.0))
    }

    pub fn coweight(&self, x: &CoweightVec<S>) -> CoweightVec<S> {
        CoweightVec(self.coweight_matrix.apply(&x.0))
    }
}

/// Partition of the roots by the action of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClassification {
    /// `sigma alpha = alpha`: the roots of `L`.
    pub real: Vec<usize>,
    /// `sigma alpha = -alpha`: the roots of `M`.
    pub imaginary: Vec<usize>,
    pub complex: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RealRootDatum<S> {
    system: RootSystem<S>,
    sigma: Involution<S>,
    sigma_perm: Vec<usize>,
}

/// Checks every invariant of a real root datum and reports all violations.
pub fn validate_datum<S: Scalar>(raw: &RawDatum) -> Result<RealRootDatum<S>, DatumRejection> {
    let n = raw.rank;
    let mut violations = Vec::new();
    if raw.sigma.len() != n || raw.sigma.iter().any(|r| r.len() != n) {
        violations.push(DatumViolation::Malformed(format!(
            "sigma must be a {n}x{n} matrix"
        )));
    }
    let system = match RootSystem::new(
        n,
        raw.roots.iter().map(|r| WeightVec::from_ints(r)).collect(),
        raw.coroots
            .iter()
            .map(|c| CoweightVec::from_ints(c))
            .collect(),
    ) {
        Ok(s) => Some(s),
        Err(DatumRejection(v)) => {
            violations.extend(v);
            None
        }
    };
    if !violations
        .iter()
        .all(|v| !matches!(v, DatumViolation::Malformed(_)))
    {
        return Err(DatumRejection(violations));
    }
    let sigma = Involution::new(Matrix::<S>::from_ints(&raw.sigma));
    if !sigma.matrix.mul(&sigma.matrix).is_identity() {
        violations.push(DatumViolation::NotAnInvolution);
    }
    let mut sigma_perm = Vec::new();
    if let Some(sys) = &system {
        for i in 0..sys.len() {
            match sys.index_of(&sigma.weight(sys.root(i))) {
                Some(k) => {
                    if &sigma.coweight(sys.coroot(i)) != sys.coroot(k) {
                        violations.push(DatumViolation::SigmaNotCorootCompatible { root: i });
                    }
                    sigma_perm.push(k);
                }
                None => violations.push(DatumViolation::SigmaNotRootPermutation { root: i }),
            }
        }
    }
    match system {
        Some(system) if violations.is_empty() => Ok(RealRootDatum {
            system,
            sigma,
            sigma_perm,
        }),
        _ => Err(DatumRejection(violations)),
    }
}

impl<S: Scalar> RealRootDatum<S> {
    pub fn rank(&self) -> usize {
        self.system.dim()
    }

    pub fn system(&self) -> &RootSystem<S> {
        &self.system
    }

    pub fn sigma(&self) -> &Involution<S> {
        &self.sigma
    }

    /// Index of `sigma alpha_i`.
    pub fn sigma_root(&self, i: usize) -> usize {
        self.sigma_perm[i]
    }

    pub fn classify_roots(&self) -> RootClassification {
        let mut c = RootClassification {
            real: Vec::new(),
            imaginary: Vec::new(),
            complex: Vec::new(),
        };
        for i in 0..self.system.len() {
            let s = self.sigma_perm[i];
            if s == i {
                c.real.push(i);
            } else if s == self.system.negative(i) {
                c.imaginary.push(i);
            } else {
                c.complex.push(i);
            }
        }
        c
    }

    /// `(W_L, W_M)`: the subgroups generated by real, resp. imaginary, reflections.
    pub fn weyl_subgroups(
        &self,
        weyl: &WeylGroup<S>,
        classes: &RootClassification,
    ) -> (Vec<usize>, Vec<usize>) {
        (
            weyl.subgroup(&self.system, &classes.real),
            weyl.subgroup(&self.system, &classes.imaginary),
        )
    }

    /// `p_M(v) = (v + sigma v) / 2`, the projection onto `X*(A)_R`.
    pub fn project_pm(&self, v: &WeightVec<S>) -> WeightVec<S> {
        (v + &self.sigma.weight(v)).scale(&S::half())
    }

    pub fn project_pm_coweight(&self, x: &CoweightVec<S>) -> CoweightVec<S> {
        (x + &self.sigma.coweight(x)).scale(&S::half())
    }

    /// Projection onto the subspace fixed by `sigma` and by all of `W`,
    /// identified with `X*(A_G)_R`.
    pub fn project_pg(&self, v: &WeightVec<S>) -> WeightVec<S> {
        let sys = &self.system;
        let pos = sys
            .positive_system(&sys.generic_coweight())
            .expect("generic coweight is regular");
        let simple = &pos.simple;
        let mut w = v.clone();
        if !simple.is_empty() {
            // Remove the root-span component: solve A c = (<v, alpha_i^vee>)_i.
            let cartan = sys.cartan_matrix(simple);
            let rhs: Vec<S> = simple.iter().map(|&i| v.pair(sys.coroot(i))).collect();
            let c = cartan.solve(&rhs).expect("Cartan matrix is invertible");
            for (k, &j) in simple.iter().enumerate() {
                w = &w - &sys.root(j).scale(&c[k]);
            }
        }
        self.project_pm(&w)
    }

    /// `a_M = X^{sigma = +1}`, in coweight coordinates.
    pub fn a_m(&self) -> Subspace<S> {
        let n = self.rank();
        let m = self.sigma.coweight_matrix.add(&Matrix::identity(n).neg());
        let rows: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        Subspace::kernel(n, &rows)
    }

    /// `a_G`: the `sigma`-fixed coweights killed by every root.
    pub fn a_g(&self) -> Subspace<S> {
        let n = self.rank();
        let m = self.sigma.coweight_matrix.add(&Matrix::identity(n).neg());
        let mut rows: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        rows.extend(self.system.roots().iter().map(|r| r.0.clone()));
        Subspace::kernel(n, &rows)
    }

    /// The `sigma = -1` eigenspace of `X`, home of the compact parameter.
    pub fn compact_part(&self) -> Subspace<S> {
        let n = self.rank();
        let m = self.sigma.coweight_matrix.add(&Matrix::identity(n));
        let rows: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        Subspace::kernel(n, &rows)
    }
}

/// `q(R) = (|R+| + dim) / 2`; integrality is the caller's concern.
pub fn q_value<S: Scalar>(positive_root_count: usize, dim: usize) -> S {
    S::ratio((positive_root_count + dim) as i64, 2)
}
