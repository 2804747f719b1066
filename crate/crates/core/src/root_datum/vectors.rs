//! Weight and coweight vectors.
//!
//! `WeightVec` lives in X*(T) (x) R and `CoweightVec` in X_*(T) (x) R. The only
//! pairing offered is the canonical one between the two.

use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

macro_rules! lattice_vector {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name<S>(pub Vec<S>);

        impl<S: Scalar> $name<S> {
            pub fn zeros(dim: usize) -> Self {
                $name(vec![S::zero(); dim])
            }

            pub fn from_ints(coords: &[i64]) -> Self {
                $name(coords.iter().map(|&c| S::from_int(c)).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[S] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|c| c.is_zero())
            }

            pub fn is_integral(&self) -> bool {
                self.0.iter().all(Scalar::is_integral)
            }

            pub fn scale(&self, s: &S) -> Self {
                $name(self.0.iter().map(|c| c.clone() * s.clone()).collect())
            }

            pub fn to_f64(&self) -> Vec<f64> {
                self.0
                    .iter()
                    .map(|c| c.to_f64().unwrap_or(f64::NAN))
                    .collect()
            }

            /// Coordinates as strings, integers bare and fractions as `p/q`.
            pub fn to_strings(&self) -> Vec<String> {
                self.0.iter().map(ToString::to_string).collect()
            }
        }

        impl<S: Scalar> Add for &$name<S> {
            type Output = $name<S>;
            fn add(self, rhs: Self) -> $name<S> {
                assert_eq!(self.dim(), rhs.dim());
                $name(
                    self.0
                        .iter()
                        .zip(&rhs.0)
                        .map(|(a, b)| a.clone() + b.clone())
                        .collect(),
                )
            }
        }

        impl<S: Scalar> Sub for &$name<S> {
            type Output = $name<S>;
            fn sub(self, rhs: Self) -> $name<S> {
                assert_eq!(self.dim(), rhs.dim());
                $name(
                    self.0
                        .iter()
                        .zip(&rhs.0)
                        .map(|(a, b)| a.clone() - b.clone())
                        .collect(),
                )
            }
        }

        impl<S: Scalar> Add for $name<S> {
            type Output = $name<S>;
            fn add(self, rhs: Self) -> $name<S> {
                &self + &rhs
            }
        }

        impl<S: Scalar> Sub for $name<S> {
            type Output = $name<S>;
            fn sub(self, rhs: Self) -> $name<S> {
                &self - &rhs
            }
        }

        impl<S: Scalar> Neg for &$name<S> {
            type Output = $name<S>;
            fn neg(self) -> $name<S> {
                $name(self.0.iter().map(|a| -a.clone()).collect())
            }
        }

        impl<S: Scalar> Neg for $name<S> {
            type Output = $name<S>;
            fn neg(self) -> $name<S> {
                -&self
            }
        }
    };
}

lattice_vector!(WeightVec);
lattice_vector!(CoweightVec);

impl<S: Scalar> WeightVec<S> {
    /// The canonical pairing `<lambda, x>`.
    pub fn pair(&self, x: &CoweightVec<S>) -> S {
        crate::linalg::dot(&self.0, &x.0)
    }
}

impl<S: Scalar> CoweightVec<S> {
    pub fn pair(&self, lambda: &WeightVec<S>) -> S {
        lambda.pair(self)
    }
}
