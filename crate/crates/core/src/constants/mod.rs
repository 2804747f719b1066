//! Stable discrete series constants by wall recursion.
//!
//! The constants are pinned down by: dependence only on chambers, the rank-0
//! value, vanishing on chambers whose closed dual cone contains the character,
//! and the wall relation `c(C) + c(C') = 2 c(F)` where `c(F)` is the constant of
//! the root system induced on the wall. Values are propagated across walls from
//! the vanishing chambers and every wall relation is then re-checked.

use std::collections::VecDeque;

use crate::chamber::{wall_subsystem, RootArrangement, WallSystem};
use crate::error::{Error, Result};
use crate::root_datum::{CoweightVec, RootSystem, WeightVec, WeylGroup};
use crate::scalar::{sign_of, Scalar};

/// Which side of the rays decides vanishing chambers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingSide {
    /// `c = 0` when `<lambda, r> >= 0` for every ray `r` of the chamber.
    NonNegative,
    NonPositive,
}

/// The normalizations fixing the constants; the default is the standard one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axioms {
    pub base_value: i64,
    pub vanishing: VanishingSide,
}

impl Default for Axioms {
    fn default() -> Self {
        Axioms {
            base_value: 1,
            vanishing: VanishingSide::NonNegative,
        }
    }
}

#[derive(Clone, Debug)]
struct Wall<S> {
    system: WallSystem<S>,
    solver: CbarSolver<S>,
    /// `(facet, chamber of the wall system containing it)`.
    facets: Vec<(usize, usize)>,
}

/// Chamber geometry of a root system together with the wall systems of all
/// its hyperplanes, reusable across characters.
#[derive(Clone, Debug)]
pub struct CbarSolver<S> {
    system: RootSystem<S>,
    arrangement: RootArrangement<S>,
    walls: Vec<Wall<S>>,
    axioms: Axioms,
}

/// Constants of every chamber and facet for one character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTable<S> {
    pub lambda: WeightVec<S>,
    pub values: Vec<i64>,
    pub facet_values: Vec<i64>,
}

impl<S: Scalar> ConstantTable<S> {
    pub fn chamber_sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn facet_sum(&self) -> i64 {
        self.facet_values.iter().sum()
    }
}

impl<S: Scalar> CbarSolver<S> {
    pub fn new(system: &RootSystem<S>, cap: usize) -> Result<Self> {
        Self::with_axioms(system, Axioms::default(), cap)
    }

    pub fn with_axioms(system: &RootSystem<S>, axioms: Axioms, cap: usize) -> Result<Self> {
        let arrangement = RootArrangement::new(system, cap)?;
        let complex = arrangement.complex();
        let mut walls = Vec::with_capacity(complex.arrangement().len());
        for h in 0..complex.arrangement().len() {
            let ws = wall_subsystem(system, arrangement.root_of_hyperplane(h))?;
            let solver = CbarSolver::with_axioms(&ws.system, axioms, cap)?;
            let facets = complex
                .facets_on(h)
                .into_iter()
                .map(|f| {
                    ws.to_wall(&complex.facet(f).interior)
                        .and_then(|y| solver.arrangement.complex().locate(&y))
                        .map(|c| (f, c))
                        .ok_or_else(|| {
                            Error::RecursionInconsistent(format!(
                                "facet {f} is not regular in its wall system"
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            walls.push(Wall {
                system: ws,
                solver,
                facets,
            });
        }
        Ok(CbarSolver {
            system: system.clone(),
            arrangement,
            walls,
            axioms,
        })
    }

    pub fn system(&self) -> &RootSystem<S> {
        &self.system
    }

    pub fn arrangement(&self) -> &RootArrangement<S> {
        &self.arrangement
    }

    pub fn axioms(&self) -> Axioms {
        self.axioms
    }

    pub fn wall_system(&self, h: usize) -> &WallSystem<S> {
        &self.walls[h].system
    }

    /// `n(alpha)`: facets in the hyperplane `h` per chamber of its wall system.
    pub fn n_alpha(&self, h: usize) -> usize {
        self.walls[h].facets.len() / self.walls[h].solver.arrangement.complex().chambers().len()
    }

    pub fn check_regular(&self, lambda: &WeightVec<S>) -> Result<()> {
        if let Some(j) =
            (0..self.system.len()).find(|&j| lambda.pair(self.system.coroot(j)).is_zero())
        {
            return Err(Error::IrregularCharacter(format!(
                "lambda = [{}] is orthogonal to coroot {j}",
                lambda.to_strings().join(", ")
            )));
        }
        Ok(())
    }

    pub fn table(&self, lambda: &WeightVec<S>) -> Result<ConstantTable<S>> {
        self.check_regular(lambda)?;
        let dim = self.system.dim();
        if dim == 0 {
            return Ok(ConstantTable {
                lambda: lambda.clone(),
                values: vec![self.axioms.base_value],
                facet_values: Vec::new(),
            });
        }
        let rank = self.system.rank();
        if rank < dim {
            return Err(Error::NonSpanningSystem { rank, dim });
        }
        let complex = self.arrangement.complex();

        let mut facet_values = vec![0i64; complex.facets().len()];
        for wall in &self.walls {
            let t = wall.solver.table(&wall.system.restrict(lambda))?;
            for &(f, c) in &wall.facets {
                facet_values[f] = t.values[c];
            }
        }

        let side = match self.axioms.vanishing {
            VanishingSide::NonNegative => 1,
            VanishingSide::NonPositive => -1,
        };
        let ray_signs: Vec<i8> = complex
            .rays()
            .iter()
            .map(|r| side * sign_of(&lambda.pair(r)))
            .collect();
        let n = complex.chambers().len();
        let mut values: Vec<Option<i64>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (c, ch) in complex.chambers().iter().enumerate() {
            if ch.rays.iter().all(|&r| ray_signs[r] >= 0) {
                values[c] = Some(0);
                queue.push_back(c);
            }
        }
        if queue.is_empty() {
            return Err(Error::RecursionInconsistent(
                "no chamber has lambda in its dual cone".into(),
            ));
        }
        while let Some(c) = queue.pop_front() {
            let v = values[c].unwrap();
            for &f in complex.chamber_facets(c) {
                let d = complex.across(c, f);
                if values[d].is_none() {
                    values[d] = Some(2 * facet_values[f] - v);
                    queue.push_back(d);
                }
            }
        }
        let values: Vec<i64> = values
            .into_iter()
            .map(|v| {
                v.ok_or_else(|| {
                    Error::RecursionInconsistent("chamber graph is disconnected".into())
                })
            })
            .collect::<Result<_>>()?;
        for (f, facet) in complex.facets().iter().enumerate() {
            let [a, b] = facet.chambers;
            if values[a] + values[b] != 2 * facet_values[f] {
                return Err(Error::RecursionInconsistent(format!(
                    "wall relation fails at facet {f}: {} + {} != 2 * {}",
                    values[a], values[b], facet_values[f]
                )));
            }
        }
        Ok(ConstantTable {
            lambda: lambda.clone(),
            values,
            facet_values,
        })
    }

    /// The constant at a regular coweight `x`.
    pub fn cbar(&self, x: &CoweightVec<S>, lambda: &WeightVec<S>) -> Result<i64> {
        let c = self.arrangement.complex().locate(x).ok_or_else(|| {
            Error::IrregularElement(format!(
                "x = [{}] lies on a root hyperplane",
                x.to_strings().join(", ")
            ))
        })?;
        Ok(self.table(lambda)?.values[c])
    }

    /// The chamber `C` with `lambda` in the interior of its dual cone, i.e.
    /// where `<beta, x> > 0` exactly when `<lambda, beta^vee> > 0`.
    pub fn dual_chamber(&self, lambda: &WeightVec<S>) -> Result<usize> {
        self.check_regular(lambda)?;
        let arr = &self.arrangement;
        let sign: Vec<i8> = (0..arr.complex().arrangement().len())
            .map(|h| sign_of(&lambda.pair(self.system.coroot(arr.root_of_hyperplane(h)))))
            .collect();
        arr.complex()
            .chamber_index(&sign)
            .ok_or_else(|| Error::RecursionInconsistent("dual chamber not found".into()))
    }

    fn in_dual_cone(&self, x0: usize, lambda0: &WeightVec<S>) -> Result<()> {
        let pos = self.arrangement.positive_roots_of(x0);
        let bad = (0..self.system.len())
            .find(|&j| pos[j] && sign_of(&lambda0.pair(self.system.coroot(j))) <= 0);
        match bad {
            Some(j) => Err(Error::Lambda0NotInDualCone(format!(
                "<lambda0, coroot {j}> <= 0 for a root positive on chamber {x0}"
            ))),
            None => Ok(()),
        }
    }

    fn require_minus_one(&self, weyl: &WeylGroup<S>) -> Result<()> {
        weyl.minus_one(&self.system).map(|_| ()).ok_or_else(|| {
            Error::MinusOneNotInWeylGroup(format!(
                "no element of the Weyl group (order {}) acts by -1",
                weyl.order()
            ))
        })
    }

    /// `(-1)^q |W|` with `q = (|R+| + dim) / 2`.
    pub fn expected_alt_sum(&self, weyl: &WeylGroup<S>) -> Result<i64> {
        let q2 = self.system.len() / 2 + self.system.dim();
        if !q2.is_multiple_of(2) {
            return Err(Error::NonIntegralQ(format!("|R+| + dim = {q2} is odd")));
        }
        Ok(if (q2 / 2).is_multiple_of(2) { 1 } else { -1 } * weyl.order() as i64)
    }

    fn orbit_sums(&self, weyl: &WeylGroup<S>, x0: usize, table: &ConstantTable<S>) -> (i64, i64) {
        let mut sum = 0;
        let mut alt = 0;
        for w in 0..weyl.order() {
            let v = table.values[self.arrangement.act_on_chamber(weyl, w, x0)];
            sum += v;
            alt += weyl.sign(w) * v;
        }
        (sum, alt)
    }

    /// `sum_w c(w x0, lambda)`, checked against `|W|`.
    pub fn prop1_sum(&self, weyl: &WeylGroup<S>, x0: usize, lambda: &WeightVec<S>) -> Result<i64> {
        self.require_minus_one(weyl)?;
        let (sum, _) = self.orbit_sums(weyl, x0, &self.table(lambda)?);
        expect("sum over the orbit of x0", sum, weyl.order() as i64)
    }

    /// `sum_w sign(w) c(w x0, lambda0)`, checked against `(-1)^q |W|`.
    pub fn prop1_alt_sum(
        &self,
        weyl: &WeylGroup<S>,
        x0: usize,
        lambda0: &WeightVec<S>,
    ) -> Result<i64> {
        self.require_minus_one(weyl)?;
        self.in_dual_cone(x0, lambda0)?;
        let (_, alt) = self.orbit_sums(weyl, x0, &self.table(lambda0)?);
        expect(
            "alternating sum over the orbit of x0",
            alt,
            self.expected_alt_sum(weyl)?,
        )
    }

    /// Both sums taken over the orbit of `lambda` with `x0` fixed.
    pub fn prop1_lambda_orbit_variant(
        &self,
        weyl: &WeylGroup<S>,
        x0: usize,
        lambda: &WeightVec<S>,
    ) -> Result<(i64, i64)> {
        self.require_minus_one(weyl)?;
        self.in_dual_cone(x0, lambda)?;
        let mut sum = 0;
        let mut alt = 0;
        for w in 0..weyl.order() {
            let v = self.table(&weyl.act_weight(w, lambda))?.values[x0];
            sum += v;
            alt += weyl.sign(w) * v;
        }
        Ok((
            expect("sum over the orbit of lambda", sum, weyl.order() as i64)?,
            expect(
                "alternating sum over the orbit of lambda",
                alt,
                self.expected_alt_sum(weyl)?,
            )?,
        ))
    }

    /// `(r * sum_C c(C), 2 * sum_F c(F))`.
    pub fn facet_identity_check(&self, table: &ConstantTable<S>) -> Result<(i64, i64)> {
        let lhs = self.system.dim() as i64 * table.chamber_sum();
        let rhs = 2 * table.facet_sum();
        expect("r * sum c(C) = 2 * sum c(F)", lhs, rhs)?;
        Ok((lhs, rhs))
    }
}

fn expect(what: &str, got: i64, want: i64) -> Result<i64> {
    if got == want {
        Ok(got)
    } else {
        Err(Error::violated(what, got, want))
    }
}
