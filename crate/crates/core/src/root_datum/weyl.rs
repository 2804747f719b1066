//! Weyl group enumeration by breadth-first closure under simple reflections.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::root_datum::{CoweightVec, PositiveSystem, RootSystem, WeightVec};
use crate::scalar::{sign_of, Scalar};

pub const DEFAULT_WEYL_CAP: usize = 60_000;

/// A Weyl group element, stored as its matrix on `X*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement<S> {
    pub matrix: Matrix<S>,
    pub length: usize,
    pub sign: i8,
}

/// The full Weyl group of a root system, in deterministic order: by length,
/// then lexicographically by matrix entries. The identity is element 0.
#[derive(Clone, Debug)]
pub struct WeylGroup<S> {
    elements: Vec<WeylElement<S>>,
    index: HashMap<Matrix<S>, usize>,
    /// `root_action[w][i]` is the index of `w . alpha_i`.
    root_action: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    positive: PositiveSystem,
}

impl<S: Scalar> WeylGroup<S> {
    pub fn generate(system: &RootSystem<S>, cap: usize) -> Result<Self> {
        let positive = system
            .positive_system(&system.generic_coweight())
            .expect("generic coweight is regular");
        let gens: Vec<Matrix<S>> = positive
            .simple
            .iter()
            .map(|&j| system.reflection_matrix(j))
            .collect();
        let id = Matrix::identity(system.dim());
        let mut found: HashMap<Matrix<S>, usize> = HashMap::new();
        let mut order: Vec<(Matrix<S>, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        found.insert(id.clone(), 0);
        queue.push_back(id);
        while let Some(m) = queue.pop_front() {
            let len = found[&m];
            order.push((m.clone(), len));
            for g in &gens {
                let next = g.mul(&m);
                if !found.contains_key(&next) {
                    if found.len() >= cap {
                        return Err(Error::WeylCapExceeded { cap });
                    }
                    found.insert(next.clone(), len + 1);
                    queue.push_back(next);
                }
            }
        }
        order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let elements: Vec<WeylElement<S>> = order
            .into_iter()
            .map(|(matrix, length)| {
                let sign = sign_of(&matrix.determinant());
                WeylElement {
                    matrix,
                    length,
                    sign,
                }
            })
            .collect();
        let index: HashMap<Matrix<S>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i))
            .collect();
        let root_action = elements
            .iter()
            .map(|e| {
                (0..system.len())
                    .map(|i| {
                        let image = WeightVec(e.matrix.apply(&system.root(i).0));
                        system.index_of(&image).expect("Weyl group preserves roots")
                    })
                    .collect()
            })
            .collect();
        let inverse = elements
            .iter()
            .map(|e| {
                let inv = e.matrix.inverse().expect("Weyl elements are invertible");
                index[&inv]
            })
            .collect();
        Ok(WeylGroup {
            elements,
            index,
            root_action,
            inverse,
            positive,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement<S>] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement<S> {
        &self.elements[w]
    }

    pub fn sign(&self, w: usize) -> i64 {
        i64::from(self.elements[w].sign)
    }

    pub fn index_of(&self, m: &Matrix<S>) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// Index of `a * b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].matrix.mul(&self.elements[b].matrix);
        self.index[&m]
    }

    /// Index of the root `w . alpha_i`.
    pub fn act_root(&self, w: usize, i: usize) -> usize {
        self.root_action[w][i]
    }

    pub fn act_weight(&self, w: usize, lambda: &WeightVec<S>) -> WeightVec<S> {
        WeightVec(self.elements[w].matrix.apply(&lambda.0))
    }

    /// Contragredient action on `X`: `x -> (M^{-1})^T x`.
    pub fn act_coweight(&self, w: usize, x: &CoweightVec<S>) -> CoweightVec<S> {
        let inv = &self.elements[self.inverse[w]].matrix;
        CoweightVec(inv.apply_row(&x.0))
    }

    /// The positive system used for lengths.
    pub fn positive_system(&self) -> &PositiveSystem {
        &self.positive
    }

    /// Index of the reflection in root `i`.
    pub fn reflection(&self, system: &RootSystem<S>, i: usize) -> usize {
        self.index[&system.reflection_matrix(i)]
    }

    /// Sorted indices of the subgroup generated by reflections in `roots`.
    pub fn subgroup(&self, system: &RootSystem<S>, roots: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = roots.iter().map(|&i| self.reflection(system, i)).collect();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &g in &gens {
                let n = self.compose(g, w);
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        (0..self.order()).filter(|&w| seen[w]).collect()
    }

    /// An element acting as `-1` on every root, if there is one.
    pub fn minus_one(&self, system: &RootSystem<S>) -> Option<usize> {
        (0..self.order())
            .find(|&w| (0..system.len()).all(|i| self.root_action[w][i] == system.negative(i)))
    }
}
