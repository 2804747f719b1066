//! The arrangement of root hyperplanes in the coweight space, with the Weyl
//! group acting on chambers and facets through its permutation of the roots.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::root_datum::{CoweightVec, RootSystem, WeightVec, WeylGroup};
use crate::scalar::Scalar;

use super::complex::{Arrangement, ChamberComplex, HyperplaneRef};

#[derive(Clone, Debug)]
pub struct RootArrangement<S> {
    complex: ChamberComplex<S>,
    root_hyperplane: Vec<(usize, i8)>,
    hyperplane_roots: Vec<Vec<usize>>,
    /// For each hyperplane, the root that is a positive multiple of its normal.
    hyperplane_root: Vec<usize>,
}

impl<S: Scalar> RootArrangement<S> {
    pub fn new(system: &RootSystem<S>, cap: usize) -> Result<Self> {
        let (arr, refs) = Arrangement::from_functionals(system.dim(), system.roots())?;
        Self::from_parts(arr, &refs, cap)
    }

    pub(crate) fn from_parts(
        arr: Arrangement<S>,
        refs: &[HyperplaneRef<S>],
        cap: usize,
    ) -> Result<Self> {
        let k = arr.len();
        let complex = ChamberComplex::build(arr, cap)?;
        let mut hyperplane_roots = vec![Vec::new(); k];
        let mut hyperplane_root = vec![usize::MAX; k];
        let mut root_hyperplane = Vec::with_capacity(refs.len());
        for (i, r) in refs.iter().enumerate() {
            hyperplane_roots[r.hyperplane].push(i);
            if r.sign() > 0 && hyperplane_root[r.hyperplane] == usize::MAX {
                hyperplane_root[r.hyperplane] = i;
            }
            root_hyperplane.push((r.hyperplane, r.sign()));
        }
        Ok(RootArrangement {
            complex,
            root_hyperplane,
            hyperplane_roots,
            hyperplane_root,
        })
    }

    pub fn complex(&self) -> &ChamberComplex<S> {
        &self.complex
    }

    pub fn hyperplane_of_root(&self, i: usize) -> usize {
        self.root_hyperplane[i].0
    }

    /// Sign of `<alpha_i, x>` relative to the sign of the hyperplane normal.
    pub fn root_orientation(&self, i: usize) -> i8 {
        self.root_hyperplane[i].1
    }

    pub fn roots_on(&self, h: usize) -> &[usize] {
        &self.hyperplane_roots[h]
    }

    /// The root that is a positive multiple of the normal of `h`.
    pub fn root_of_hyperplane(&self, h: usize) -> usize {
        self.hyperplane_root[h]
    }

    /// Sign of root `i` on a face with sign vector `sign`.
    pub fn root_sign(&self, i: usize, sign: &[i8]) -> i8 {
        let (h, o) = self.root_hyperplane[i];
        o * sign[h]
    }

    /// Sign vector of `w F` for a face `F` with sign vector `sign`.
    pub fn act_sign(&self, weyl: &WeylGroup<S>, w: usize, sign: &[i8]) -> Vec<i8> {
        let winv = weyl.inverse(w);
        self.hyperplane_root
            .iter()
            .map(|&a| self.root_sign(weyl.act_root(winv, a), sign))
            .collect()
    }

    pub fn act_on_chamber(&self, weyl: &WeylGroup<S>, w: usize, c: usize) -> usize {
        let s = self.act_sign(weyl, w, &self.complex.chamber(c).sign);
        self.complex
            .chamber_index(&s)
            .expect("Weyl group preserves the chamber set")
    }

    pub fn act_on_facet(&self, weyl: &WeylGroup<S>, w: usize, f: usize) -> usize {
        let s = self.act_sign(weyl, w, &self.complex.facet(f).sign);
        self.complex
            .facet_index(&s)
            .expect("Weyl group preserves the facet set")
    }

    /// Facets lying on the hyperplane of root `i`.
    pub fn facets_on_root(&self, i: usize) -> Vec<usize> {
        self.complex.facets_on(self.hyperplane_of_root(i))
    }

    /// The positive system of a chamber.
    pub fn positive_roots_of(&self, c: usize) -> Vec<bool> {
        let s = &self.complex.chamber(c).sign;
        (0..self.root_hyperplane.len())
            .map(|i| self.root_sign(i, s) > 0)
            .collect()
    }
}

/// The root system induced on the hyperplane `ker alpha` of the coweight
/// space, in a fixed rational chart of that hyperplane.
#[derive(Clone, Debug)]
pub struct WallSystem<S> {
    pub root: usize,
    pub chart: Subspace<S>,
    pub system: RootSystem<S>,
    /// Indices in the parent system of the roots of `system`, in order.
    pub parent_roots: Vec<usize>,
}

impl<S: Scalar> WallSystem<S> {
    /// Chart coordinates of a coweight lying on the wall.
    pub fn to_wall(&self, x: &CoweightVec<S>) -> Option<CoweightVec<S>> {
        self.chart.coords(x.coords()).map(CoweightVec)
    }

    pub fn from_wall(&self, y: &CoweightVec<S>) -> CoweightVec<S> {
        CoweightVec(self.chart.embed(y.coords()))
    }

    pub fn restrict(&self, lambda: &WeightVec<S>) -> WeightVec<S> {
        WeightVec(self.chart.restrict(lambda.coords()))
    }
}

/// Roots whose coroots are orthogonal to `alpha`, restricted to `ker alpha`.
pub fn wall_subsystem<S: Scalar>(system: &RootSystem<S>, alpha: usize) -> Result<WallSystem<S>> {
    let a = system.root(alpha);
    let chart = Subspace::kernel(system.dim(), &[a.coords().to_vec()]);
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut parent_roots = Vec::new();
    for j in 0..system.len() {
        if !a.pair(system.coroot(j)).is_zero() {
            continue;
        }
        let cv = chart.coords(system.coroot(j).coords()).ok_or_else(|| {
            Error::RecursionInconsistent(format!("coroot {j} does not lie on the wall"))
        })?;
        roots.push(WeightVec(chart.restrict(system.root(j).coords())));
        coroots.push(CoweightVec(cv));
        parent_roots.push(j);
    }
    let sub = RootSystem::new(chart.dim(), roots, coroots)
        .map_err(|e| Error::RecursionInconsistent(format!("wall system invalid: {e}")))?;
    Ok(WallSystem {
        root: alpha,
        chart,
        system: sub,
        parent_roots,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCount {
    /// A positive root representing the hyperplane.
    pub root: usize,
    pub facets: usize,
    pub wall_weyl_order: usize,
    /// `facets / wall_weyl_order`; `None` if not integral.
    pub n_alpha: Option<usize>,
}

/// Counting data for facets of the root arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCensus {
    pub rank: usize,
    pub weyl_order: usize,
    pub chambers: usize,
    pub facets: usize,
    pub facets_per_chamber: Vec<usize>,
    pub walls: Vec<WallCount>,
    /// W-orbits of facets, each sorted, ordered by least element.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer order of each facet by orbit-stabilizer.
    pub stabilizer_orders: Vec<usize>,
    /// Stabilizer orders of orbit representatives computed element by element.
    pub explicit_stabilizers: Vec<usize>,
}

impl FacetCensus {
    /// `|facets| = rank * |W| / 2`.
    pub fn total_ok(&self) -> bool {
        2 * self.facets == self.rank * self.weyl_order
    }

    pub fn per_chamber_ok(&self) -> bool {
        self.facets_per_chamber.iter().all(|&n| n == self.rank)
    }

    pub fn stabilizers_ok(&self) -> bool {
        self.stabilizer_orders.iter().all(|&s| s == 2)
            && self.explicit_stabilizers.iter().all(|&s| s == 2)
    }

    pub fn orbits_ok(&self) -> bool {
        self.orbits.len() == self.rank
    }
}

fn wall_order<S: Scalar>(system: &RootSystem<S>, alpha: usize, cap: usize) -> Result<usize> {
    let wall = wall_subsystem(system, alpha)?;
    Ok(WeylGroup::generate(&wall.system, cap)?.order())
}

pub fn facet_census<S: Scalar>(
    system: &RootSystem<S>,
    arrangement: &RootArrangement<S>,
    weyl: &WeylGroup<S>,
    cap: usize,
) -> Result<FacetCensus> {
    let complex = arrangement.complex();
    let nf = complex.facets().len();
    let simple_reflections: Vec<usize> = weyl
        .positive_system()
        .simple
        .iter()
        .map(|&i| weyl.reflection(system, i))
        .collect();

    let mut orbit_of = vec![usize::MAX; nf];
    let mut orbits = Vec::new();
    for f in 0..nf {
        if orbit_of[f] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![f];
        orbit_of[f] = id;
        let mut queue = VecDeque::from([f]);
        while let Some(g) = queue.pop_front() {
            for &s in &simple_reflections {
                let h = arrangement.act_on_facet(weyl, s, g);
                if orbit_of[h] == usize::MAX {
                    orbit_of[h] = id;
                    members.push(h);
                    queue.push_back(h);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let stabilizer_orders = (0..nf)
        .map(|f| weyl.order() / orbits[orbit_of[f]].len())
        .collect();
    let explicit_stabilizers = orbits
        .iter()
        .map(|o| {
            let sign = &complex.facet(o[0]).sign;
            (0..weyl.order())
                .filter(|&w| &arrangement.act_sign(weyl, w, sign) == sign)
                .count()
        })
        .collect();

    let mut walls = Vec::new();
    for h in 0..complex.arrangement().len() {
        let root = arrangement.root_of_hyperplane(h);
        let facets = complex.facets_on(h).len();
        let wo = wall_order(system, root, cap)?;
        walls.push(WallCount {
            root,
            facets,
            wall_weyl_order: wo,
            n_alpha: facets.is_multiple_of(wo).then(|| facets / wo),
        });
    }

    Ok(FacetCensus {
        rank: complex.essential_dim(),
        weyl_order: weyl.order(),
        chambers: complex.chambers().len(),
        facets: nf,
        facets_per_chamber: (0..complex.chambers().len())
            .map(|c| complex.chamber_facets(c).len())
            .collect(),
        walls,
        orbits,
        stabilizer_orders,
        explicit_stabilizers,
    })
}
