pub mod catalog;
pub mod chamber;
pub mod characters;
pub mod constants;
pub mod error;
pub mod linalg;
pub mod phi;
pub mod root_datum;
pub mod scalar;
pub mod torus;
pub mod verify;

use num_rational::{BigRational, Rational64};

pub use error::{Error, ErrorClass, Result};

/// Exact scalar used by the catalog and the command line.
pub type Rat = BigRational;
pub type SmallRat = Rational64;
pub type Datum = root_datum::RealRootDatum<Rat>;
pub type Torus = torus::RealTorus<Rat>;
pub type Borel = torus::BorelChoice<Rat>;
pub type Setup = phi::PhiSetup<Rat>;
pub type Solver = constants::CbarSolver<Rat>;
pub type Element = characters::TorusElement<f64>;
