use std::fmt;

use thiserror::Error;

/// One violated invariant found while validating a raw root datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumViolation {
    /// Shape problems: ragged matrices, mismatched list lengths, zero roots.
    Malformed(String),
    NotAnInvolution,
    SigmaNotRootPermutation {
        root: usize,
    },
    SigmaNotCorootCompatible {
        root: usize,
    },
    PairingNotTwo {
        root: usize,
    },
    ReflectionEscapesRootSet {
        reflection: usize,
        root: usize,
    },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::Malformed(m) => write!(f, "Malformed: {m}"),
            DatumViolation::NotAnInvolution => write!(f, "NotAnInvolution: sigma^2 != identity"),
            DatumViolation::SigmaNotRootPermutation { root } => {
                write!(f, "SigmaNotRootPermutation: sigma(root {root}) is not a root")
            }
            DatumViolation::SigmaNotCorootCompatible { root } => write!(
                f,
                "SigmaNotRootPermutation: sigma does not carry the coroot of root {root} to a coroot"
            ),
            DatumViolation::PairingNotTwo { root } => {
                write!(f, "PairingNotTwo: <alpha, alpha^vee> != 2 for root {root}")
            }
            DatumViolation::ReflectionEscapesRootSet { reflection, root } => write!(
                f,
                "ReflectionEscapesRootSet: s_{reflection}(root {root}) is not a root"
            ),
        }
    }
}

/// Every violation found, not just the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumRejection(pub Vec<DatumViolation>);

impl fmt::Display for DatumRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// How an error should be reported by a driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A proven identity failed to hold: a bug or a wrong convention.
    Identity,
    /// Malformed or invalid input.
    Input,
    /// The input is valid but the requested computation does not apply to it.
    Capability,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Identity => 1,
            ErrorClass::Input => 2,
            ErrorClass::Capability => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("ValidationError: {0}")]
    InvalidDatum(DatumRejection),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("ValidationError: {0}")]
    Config(String),
    #[error("WeylCapExceeded: Weyl group has more than {cap} elements")]
    WeylCapExceeded { cap: usize },
    #[error("ArrangementCapExceeded: {count} hyperplanes exceeds the cap of {cap}")]
    ArrangementCapExceeded { count: usize, cap: usize },
    #[error("ZeroFunctional: hyperplane {0} has a zero normal")]
    ZeroFunctional(usize),
    #[error("SimpleTransitivityFailure: {0}")]
    SimpleTransitivityFailure(String),
    #[error("IrregularCharacter: {0}")]
    IrregularCharacter(String),
    #[error("RecursionInconsistent: {0}")]
    RecursionInconsistent(String),
    #[error("NonSpanningSystem: roots span {rank} of {dim} dimensions")]
    NonSpanningSystem { rank: usize, dim: usize },
    #[error("MinusOneNotInWeylGroup: {0}")]
    MinusOneNotInWeylGroup(String),
    #[error("Lambda0NotInDualCone: {0}")]
    Lambda0NotInDualCone(String),
    #[error("IdentityViolated: {what}: {lhs} != {rhs}")]
    IdentityViolated {
        what: String,
        lhs: String,
        rhs: String,
    },
    #[error("IrregularElement: {0}")]
    IrregularElement(String),
    #[error("DegenerateProjection: {0}")]
    DegenerateProjection(String),
    #[error("NonIntegralQ: {0}")]
    NonIntegralQ(String),
    #[error("NotDominant: {0}")]
    NotDominant(String),
    #[error("NotIntegral: {0}")]
    NotIntegral(String),
    #[error("CoefficientsNotInvariant: {0}")]
    CoefficientsNotInvariant(String),
    #[error("InvalidBorel: {0}")]
    InvalidBorel(String),
    #[error("NotElliptic: {0}")]
    NotElliptic(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            RecursionInconsistent(_) | IdentityViolated { .. } | SimpleTransitivityFailure(_) => {
                ErrorClass::Identity
            }
            InvalidDatum(_)
            | Parse(_)
            | Config(_)
            | ZeroFunctional(_)
            | IrregularCharacter(_)
            | Lambda0NotInDualCone(_)
            | IrregularElement(_)
            | NotDominant(_)
            | NotIntegral(_)
            | CoefficientsNotInvariant(_)
            | InvalidBorel(_)
            | NotElliptic(_) => ErrorClass::Input,
            WeylCapExceeded { .. }
            | ArrangementCapExceeded { .. }
            | NonSpanningSystem { .. }
            | MinusOneNotInWeylGroup(_)
            | DegenerateProjection(_)
            | NonIntegralQ(_) => ErrorClass::Capability,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.class().exit_code()
    }

    pub(crate) fn violated(
        what: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Self {
        Error::IdentityViolated {
            what: what.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
