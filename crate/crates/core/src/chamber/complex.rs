//! Central hyperplane arrangements and their chamber/facet complexes.
//!
//! Every chamber of a central arrangement is the cone over the rays (one
//! dimensional flats) in its closure, modulo the lineality space. Chambers are
//! found by walking across walls from a generic starting point; a hyperplane is
//! a wall of a chamber exactly when the chamber's rays lying on it span a
//! codimension-one subspace. All arithmetic is exact.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace};
use crate::root_datum::{CoweightVec, WeightVec};
use crate::scalar::{sign_of, Scalar};

pub const DEFAULT_HYPERPLANE_CAP: usize = 40;

/// Linear hyperplanes through the origin, given by pairwise non-proportional
/// nonzero functionals.
#[derive(Clone, Debug)]
pub struct Arrangement<S> {
    dim: usize,
    normals: Vec<WeightVec<S>>,
}

/// Where an input functional ended up after deduplication: `f = scale * normal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneRef<S> {
    pub hyperplane: usize,
    pub scale: S,
}

impl<S: Scalar> HyperplaneRef<S> {
    pub fn sign(&self) -> i8 {
        sign_of(&self.scale)
    }
}

fn normalize<S: Scalar>(f: &WeightVec<S>) -> Option<(WeightVec<S>, S)> {
    let lead = f.0.iter().find(|c| !c.is_zero())?.clone();
    Some((f.scale(&(S::one() / lead.clone())), lead))
}

impl<S: Scalar> Arrangement<S> {
    pub fn new(dim: usize, normals: Vec<WeightVec<S>>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, n) in normals.iter().enumerate() {
            assert_eq!(n.dim(), dim, "functional of the wrong dimension");
            let (canon, _) = normalize(n).ok_or(Error::ZeroFunctional(i))?;
            if seen.insert(canon, i).is_some() {
                return Err(Error::Config(format!(
                    "hyperplane {i} is proportional to an earlier one"
                )));
            }
        }
        Ok(Arrangement { dim, normals })
    }

    /// Deduplicates functionals up to nonzero scaling, keeping first occurrences.
    pub fn from_functionals(
        dim: usize,
        functionals: &[WeightVec<S>],
    ) -> Result<(Self, Vec<HyperplaneRef<S>>)> {
        let mut index: HashMap<WeightVec<S>, usize> = HashMap::new();
        let mut normals = Vec::new();
        let mut refs = Vec::with_capacity(functionals.len());
        for (i, f) in functionals.iter().enumerate() {
            let (canon, lead) = normalize(f).ok_or(Error::ZeroFunctional(i))?;
            let h = *index.entry(canon.clone()).or_insert_with(|| {
                normals.push(canon);
                normals.len() - 1
            });
            refs.push(HyperplaneRef {
                hyperplane: h,
                scale: lead,
            });
        }
        Ok((Arrangement { dim, normals }, refs))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[WeightVec<S>] {
        &self.normals
    }

    pub fn sign_vector(&self, x: &CoweightVec<S>) -> Vec<i8> {
        self.normals.iter().map(|n| sign_of(&n.pair(x))).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Chamber<S> {
    pub sign: Vec<i8>,
    pub interior: CoweightVec<S>,
    /// Indices into [`ChamberComplex::rays`] of the rays in the closure.
    pub rays: Vec<usize>,
}

/// A codimension-one face: the common face of two adjacent chambers.
#[derive(Clone, Debug)]
pub struct Facet<S> {
    /// The hyperplane the facet spans.
    pub wall: usize,
    /// Sign vector, zero exactly at `wall`.
    pub sign: Vec<i8>,
    pub interior: CoweightVec<S>,
    pub chambers: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct ChamberComplex<S> {
    arrangement: Arrangement<S>,
    rays: Vec<CoweightVec<S>>,
    ray_signs: Vec<Vec<i8>>,
    chambers: Vec<Chamber<S>>,
    facets: Vec<Facet<S>>,
    chamber_facets: Vec<Vec<usize>>,
    facet_lookup: HashMap<Vec<i8>, usize>,
    essential_dim: usize,
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl<S: Scalar> ChamberComplex<S> {
    pub fn build(arrangement: Arrangement<S>, cap: usize) -> Result<Self> {
        let k = arrangement.len();
        if k > cap {
            return Err(Error::ArrangementCapExceeded { count: k, cap });
        }
        let dim = arrangement.dim();
        let normal_rows: Vec<Vec<S>> = arrangement.normals.iter().map(|n| n.0.clone()).collect();
        // Points are taken in the span of the normals, a complement of the
        // lineality space.
        let chart = Subspace::span(dim, &normal_rows);
        let r = chart.dim();
        let reduced: Vec<Vec<S>> = normal_rows.iter().map(|n| chart.restrict(n)).collect();
        let sign_in_chart = |y: &[S]| -> Vec<i8> {
            reduced
                .iter()
                .map(|h| sign_of(&linalg::dot(h, y)))
                .collect()
        };

        if r == 0 {
            let chamber = Chamber {
                sign: vec![0; 0],
                interior: CoweightVec::zeros(dim),
                rays: Vec::new(),
            };
            return Ok(ChamberComplex {
                arrangement,
                rays: Vec::new(),
                ray_signs: Vec::new(),
                chambers: vec![chamber],
                facets: Vec::new(),
                chamber_facets: vec![Vec::new()],
                facet_lookup: HashMap::new(),
                essential_dim: 0,
            });
        }

        // Rays: one-dimensional intersections of r-1 independent hyperplanes.
        let mut ray_index: HashMap<Vec<i8>, usize> = HashMap::new();
        let mut rays_chart: Vec<Vec<S>> = Vec::new();
        let mut ray_signs: Vec<Vec<i8>> = Vec::new();
        combinations(k, r - 1, |subset| {
            let v = if subset.is_empty() {
                vec![S::one()]
            } else {
                let m = Matrix::from_rows(subset.iter().map(|&i| reduced[i].clone()).collect());
                let ns = m.nullspace();
                if ns.len() != 1 {
                    return;
                }
                ns.into_iter().next().unwrap()
            };
            let s = sign_in_chart(&v);
            if ray_index.contains_key(&s) {
                return;
            }
            let neg: Vec<S> = v.iter().map(|c| -c.clone()).collect();
            let ns: Vec<i8> = s.iter().map(|x| -x).collect();
            for (vec, sg) in [(v, s), (neg, ns)] {
                ray_index.insert(sg.clone(), rays_chart.len());
                rays_chart.push(vec);
                ray_signs.push(sg);
            }
        });

        let compatible =
            |chamber: &[i8], ray: &[i8]| chamber.iter().zip(ray).all(|(&c, &r)| r == 0 || r == c);

        // Deterministic generic starting point (1, m, m^2, ...).
        let mut m = 2i64;
        let start = loop {
            let mut p = S::one();
            let mut y = Vec::with_capacity(r);
            for _ in 0..r {
                y.push(p.clone());
                p = p * S::from_int(m);
            }
            let s = sign_in_chart(&y);
            if s.iter().all(|&x| x != 0) {
                break s;
            }
            m += 1;
        };

        struct Raw<S> {
            rays: Vec<usize>,
            interior: Vec<S>,
            walls: Vec<(usize, Vec<S>)>,
        }
        let mut found: HashMap<Vec<i8>, Raw<S>> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        while let Some(sign) = queue.pop_front() {
            if found.contains_key(&sign) {
                continue;
            }
            let rays: Vec<usize> = (0..rays_chart.len())
                .filter(|&i| compatible(&sign, &ray_signs[i]))
                .collect();
            let mut interior = vec![S::zero(); r];
            for &i in &rays {
                for (a, b) in interior.iter_mut().zip(&rays_chart[i]) {
                    *a = a.clone() + b.clone();
                }
            }
            if sign_in_chart(&interior) != sign {
                return Err(Error::RecursionInconsistent(
                    "chamber witness fails its own sign vector".into(),
                ));
            }
            let mut walls = Vec::new();
            for h in 0..k {
                let on: Vec<usize> = rays
                    .iter()
                    .copied()
                    .filter(|&i| ray_signs[i][h] == 0)
                    .collect();
                if on.len() + 1 < r {
                    continue;
                }
                let vs: Vec<Vec<S>> = on.iter().map(|&i| rays_chart[i].clone()).collect();
                if linalg::rank_of(&vs) + 1 != r {
                    continue;
                }
                let mut point = vec![S::zero(); r];
                for v in &vs {
                    for (a, b) in point.iter_mut().zip(v) {
                        *a = a.clone() + b.clone();
                    }
                }
                let mut next = sign.clone();
                next[h] = -next[h];
                if !found.contains_key(&next) {
                    queue.push_back(next);
                }
                walls.push((h, point));
            }
            found.insert(
                sign,
                Raw {
                    rays,
                    interior,
                    walls,
                },
            );
        }

        let embed = |y: &[S]| CoweightVec(chart.embed(y));
        let mut signs: Vec<Vec<i8>> = found.keys().cloned().collect();
        signs.sort();
        let chamber_index: HashMap<Vec<i8>, usize> = signs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();

        let mut facet_map: HashMap<Vec<i8>, (usize, Vec<S>, Vec<usize>)> = HashMap::new();
        let mut chambers = Vec::with_capacity(signs.len());
        for (ci, s) in signs.iter().enumerate() {
            let raw = &found[s];
            for (h, point) in &raw.walls {
                let mut fs = s.clone();
                fs[*h] = 0;
                facet_map
                    .entry(fs)
                    .or_insert_with(|| (*h, point.clone(), Vec::new()))
                    .2
                    .push(ci);
            }
            chambers.push(Chamber {
                sign: s.clone(),
                interior: embed(&raw.interior),
                rays: raw.rays.clone(),
            });
        }
        let mut facet_signs: Vec<Vec<i8>> = facet_map.keys().cloned().collect();
        facet_signs.sort();
        let mut facets = Vec::with_capacity(facet_signs.len());
        let mut chamber_facets = vec![Vec::new(); chambers.len()];
        let mut facet_lookup = HashMap::new();
        for (fi, fs) in facet_signs.into_iter().enumerate() {
            let (wall, point, mut adj) = facet_map.remove(&fs).unwrap();
            adj.sort_unstable();
            if adj.len() != 2 {
                return Err(Error::RecursionInconsistent(format!(
                    "facet {fi} has {} incident chambers",
                    adj.len()
                )));
            }
            for &c in &adj {
                chamber_facets[c].push(fi);
            }
            debug_assert_eq!(chamber_index[&chambers[adj[0]].sign], adj[0]);
            facet_lookup.insert(fs.clone(), fi);
            facets.push(Facet {
                wall,
                sign: fs,
                interior: embed(&point),
                chambers: [adj[0], adj[1]],
            });
        }
        Ok(ChamberComplex {
            arrangement,
            rays: rays_chart.iter().map(|y| embed(y)).collect(),
            ray_signs,
            chambers,
            facets,
            chamber_facets,
            facet_lookup,
            essential_dim: r,
        })
    }

    pub fn arrangement(&self) -> &Arrangement<S> {
        &self.arrangement
    }

    /// Dimension of the span of the normals.
    pub fn essential_dim(&self) -> usize {
        self.essential_dim
    }

    pub fn rays(&self) -> &[CoweightVec<S>] {
        &self.rays
    }

    pub fn ray_sign(&self, i: usize) -> &[i8] {
        &self.ray_signs[i]
    }

    pub fn chambers(&self) -> &[Chamber<S>] {
        &self.chambers
    }

    pub fn chamber(&self, i: usize) -> &Chamber<S> {
        &self.chambers[i]
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &Facet<S> {
        &self.facets[i]
    }

    /// Facets of chamber `c`.
    pub fn chamber_facets(&self, c: usize) -> &[usize] {
        &self.chamber_facets[c]
    }

    pub fn chamber_index(&self, sign: &[i8]) -> Option<usize> {
        self.chambers
            .binary_search_by(|c| c.sign.as_slice().cmp(sign))
            .ok()
    }

    pub fn facet_index(&self, sign: &[i8]) -> Option<usize> {
        self.facet_lookup.get(sign).copied()
    }

    /// The chamber containing `x`, or `None` if `x` lies on a hyperplane.
    pub fn locate(&self, x: &CoweightVec<S>) -> Option<usize> {
        let s = self.arrangement.sign_vector(x);
        if s.contains(&0) {
            return None;
        }
        self.chamber_index(&s)
    }

    /// The facets spanning hyperplane `h`.
    pub fn facets_on(&self, h: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.facets[f].wall == h)
            .collect()
    }

    /// The chamber across facet `f` from chamber `c`.
    pub fn across(&self, c: usize, f: usize) -> usize {
        let [a, b] = self.facets[f].chambers;
        if a == c {
            b
        } else {
            a
        }
    }
}

/// All chambers of an arrangement, in lexicographic sign-vector order.
pub fn enumerate_chambers<S: Scalar>(arr: &Arrangement<S>, cap: usize) -> Result<Vec<Chamber<S>>> {
    Ok(ChamberComplex::build(arr.clone(), cap)?.chambers)
}
