//! Torus characters, Weyl-group representatives and representation traces.

mod element;
mod reps;
mod weights;

pub use element::{
    close, delta_quotient_identity_check, eval_delta, eval_delta_b, eval_delta_p, modulus_delta_p,
    TorusElement, REGULARITY_EPS,
};
pub use reps::{kostant_reps, wlm_reps};
pub use weights::{
    check_dominant, dual_highest_weight, wcf_trace, weight_multiplicities, weyl_dimension,
    WeightTable,
};
