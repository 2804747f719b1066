//! Kostant representatives and their W_L-orbit representatives.

use crate::error::{Error, Result};
use crate::root_datum::WeightVec;
use crate::scalar::Scalar;
use crate::torus::{BorelChoice, RealTorus};

/// `W^M = {w : w^{-1} R_M+ in R+}`, in Weyl group order.
pub fn kostant_reps<S: Scalar>(torus: &RealTorus<S>, borel: &BorelChoice<S>) -> Vec<usize> {
    let weyl = torus.weyl();
    (0..weyl.order())
        .filter(|&w| {
            let winv = weyl.inverse(w);
            borel
                .m_positive
                .iter()
                .all(|&a| borel.positive.is_positive(weyl.act_root(winv, a)))
        })
        .collect()
}

/// One element of each `W_L`-orbit on `W^M`: the one with
/// `omega(lambda_B + rho_B) - lambda_0` strictly dominant for `R_L+`.
pub fn wlm_reps<S: Scalar>(
    torus: &RealTorus<S>,
    borel: &BorelChoice<S>,
    lambda_b: &WeightVec<S>,
) -> Result<Vec<usize>> {
    let weyl = torus.weyl();
    let sys = torus.system();
    let kostant = kostant_reps(torus, borel);
    let shifted = lambda_b + &borel.rho;
    let lambda0 = torus.lambda0(lambda_b);
    let mut orbit_of = vec![usize::MAX; weyl.order()];
    let mut reps = Vec::new();
    for &w in &kostant {
        if orbit_of[w] != usize::MAX {
            continue;
        }
        let orbit: Vec<usize> = torus.w_l().iter().map(|&l| weyl.compose(l, w)).collect();
        let mut dominant = Vec::new();
        for &o in &orbit {
            if orbit_of[o] != usize::MAX && orbit_of[o] != w {
                return Err(Error::violated("W_L-orbits on W^M are not disjoint", o, w));
            }
            orbit_of[o] = w;
            let v = &weyl.act_weight(o, &shifted) - &lambda0;
            if borel
                .l_positive
                .iter()
                .all(|&a| v.pair(sys.coroot(a)).is_positive())
            {
                dominant.push(o);
            }
        }
        if !kostant.len().is_multiple_of(orbit.len())
            || orbit.iter().any(|o| kostant.binary_search(o).is_err())
        {
            return Err(Error::violated(
                "W_L does not preserve W^M",
                format!("{orbit:?}"),
                format!("{kostant:?}"),
            ));
        }
        match dominant.as_slice() {
            [o] => reps.push(*o),
            _ => {
                return Err(Error::DegenerateProjection(format!(
                    "{} strictly dominant members in the W_L-orbit of {w}",
                    dominant.len()
                )))
            }
        }
    }
    reps.sort_unstable();
    Ok(reps)
}
