//! The full invariant suite, run per datum according to its capabilities.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::DatumConfig;
use crate::chamber::{facet_census, RootArrangement};
use crate::characters::{
    close, delta_quotient_identity_check, dual_highest_weight, eval_delta, eval_delta_b,
    eval_delta_p, wcf_trace, weight_multiplicities, weyl_dimension, TorusElement,
};
use crate::constants::{Axioms, CbarSolver, VanishingSide};
use crate::error::{Error, Result};
use crate::phi::{
    check_invariant, check_wlm_decomposition, dmg_factor_check, eval_expression_factored,
    eval_expression_raw, eval_expression_scaled, eval_expression_wcf, limit_probe, phi_theorem1,
    PhiSetup,
};
use crate::root_datum::{CoweightVec, WeightVec};
use crate::scalar::Scalar;
use crate::torus::{BorelChoice, RealTorus};

type Q = num_rational::BigRational;

/// A deliberate error injected to confirm that the suite notices it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    CbarBaseValue,
    CbarVanishingSide,
    QParity,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub t_seq: Vec<f64>,
    pub mutation: Option<Mutation>,
    /// Weyl groups above this order skip the limit probe and the orbit-of-lambda sums.
    pub heavy_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: 1e-9,
            samples: 5,
            seed: 0x5eed,
            t_seq: vec![1e-1, 1e-2, 1e-3, 1e-4],
            mutation: None,
            heavy_limit: 400,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub system: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

struct Suite<'a> {
    system: &'a str,
    out: Vec<Check>,
}

impl Suite<'_> {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        let (status, detail) = match f() {
            Ok(d) => (Status::Pass, d),
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.push(name, status, detail);
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.push(name, Status::Skip, why.into());
    }

    fn push(&mut self, name: &str, status: Status, detail: String) {
        self.out.push(Check {
            system: self.system.into(),
            check: name.into(),
            status,
            detail,
        });
    }
}

fn ensure(ok: bool, what: &str, lhs: impl ToString, rhs: impl ToString) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::violated(what, lhs.to_string(), rhs.to_string()))
    }
}

fn ensure_close(a: Complex<f64>, b: Complex<f64>, tol: f64, what: &str) -> Result<()> {
    ensure(close(a, b, tol), what, a, b)
}

/// Random element with both parameters uniform in `[-1/2, 1/2]`.
pub fn random_element(rng: &mut impl Rng, dim: usize) -> TorusElement<f64> {
    TorusElement::new(
        (0..dim).map(|_| rng.gen_range(-0.5..0.5)).collect(),
        (0..dim).map(|_| rng.gen_range(-0.5..0.5)).collect(),
    )
}

/// A random element at which no root takes a value within `margin` of 1.
pub fn random_regular(
    rng: &mut impl Rng,
    roots: &[WeightVec<Q>],
    dim: usize,
    margin: f64,
) -> TorusElement<f64> {
    loop {
        let g = random_element(rng, dim);
        if roots
            .iter()
            .all(|r| (g.eval(r) - Complex::new(1.0, 0.0)).norm() > margin)
        {
            return g;
        }
    }
}

fn random_rational_in(rng: &mut impl Rng, basis: &[Vec<Q>], dim: usize) -> CoweightVec<Q> {
    let mut v = vec![Q::from_int(0); dim];
    for b in basis {
        let c = Q::ratio(rng.gen_range(-40..=40), 97);
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    CoweightVec(v)
}

/// Random `(u, s)` with `u` compact and `s` central.
pub fn random_elliptic(
    rng: &mut impl Rng,
    torus: &RealTorus<Q>,
) -> (CoweightVec<Q>, CoweightVec<Q>) {
    let n = torus.system().dim();
    let u = random_rational_in(rng, &torus.datum().compact_part().basis_vectors(), n);
    let s = random_rational_in(rng, &torus.a_g().basis_vectors(), n);
    (u, s)
}

/// Up to three distinct regular weights built from `rho`.
pub fn sample_characters(torus: &RealTorus<Q>) -> Vec<WeightVec<Q>> {
    let sys = torus.system();
    let pos = torus.weyl().positive_system();
    let rho = sys.rho(pos);
    let mut out = vec![rho.clone()];
    for (k, &s) in pos.simple.iter().enumerate().take(2) {
        let cand = &rho.scale(&Q::from_int(k as i64 + 2)) + sys.root(s);
        if sys.is_regular_weight(&cand) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    let mut k = 2;
    while out.len() < 3 {
        let cand = rho.scale(&Q::from_int(k));
        if !out.contains(&cand) {
            out.push(cand);
        }
        k += 1;
    }
    out
}

fn axioms_for(m: Option<Mutation>) -> Axioms {
    match m {
        Some(Mutation::CbarBaseValue) => Axioms {
            base_value: 2,
            ..Axioms::default()
        },
        Some(Mutation::CbarVanishingSide) => Axioms {
            vanishing: VanishingSide::NonPositive,
            ..Axioms::default()
        },
        _ => Axioms::default(),
    }
}

fn theorem_value(
    torus: &RealTorus<Q>,
    setup: &PhiSetup<Q>,
    u: &CoweightVec<Q>,
    s: &CoweightVec<Q>,
    m: Option<Mutation>,
) -> Result<Complex<f64>> {
    let v = phi_theorem1::<f64, Q>(torus, setup, u, s)?.complex();
    Ok(if m == Some(Mutation::QParity) { -v } else { v })
}

/// Interior points of every P-chamber inside the L-chamber of `borel`, plus their sum.
pub fn probe_points(torus: &RealTorus<Q>, borel: &BorelChoice<Q>) -> Vec<CoweightVec<Q>> {
    let ch = torus.chambers();
    let mut pts: Vec<CoweightVec<Q>> = (0..ch.p_complex().chambers().len())
        .filter(|&p| ch.pchamber_to_lchamber(p) == borel.l_chamber)
        .map(|p| ch.p_point(p))
        .collect();
    if pts.len() > 1 {
        let sum = pts.iter().skip(1).fold(pts[0].clone(), |a, b| &a + b);
        pts.push(sum);
    }
    pts
}

pub fn verify_config(config: &DatumConfig, opts: &VerifyOptions) -> Vec<Check> {
    let mut suite = Suite {
        system: &config.name,
        out: Vec::new(),
    };
    let torus = match config.torus::<Q>() {
        Ok(t) => t,
        Err(e) => {
            suite.push("load", Status::Fail, e.to_string());
            return suite.out;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    structural_checks(&mut suite, &torus);
    let heavy = torus.weyl().order() > opts.heavy_limit;

    if torus.capabilities().prop1_eligible {
        suite.run("prop1", || prop1_checks(&torus, opts, heavy));
    } else {
        suite.skip("prop1", "-1 not in W or constants undefined");
    }

    let borel = match config.borel.as_deref() {
        Some(b) => torus.borel_from_indices(b),
        None => Ok(torus.default_borel()),
    };
    let borel = match borel {
        Ok(b) => b,
        Err(e) => {
            suite.push("borel", Status::Fail, e.to_string());
            return suite.out;
        }
    };
    let mut weights = vec![config
        .lambda_b::<Q>()
        .unwrap_or_else(|| WeightVec::zeros(config.rank))];
    let two_rho = borel.rho.scale(&Q::from_int(2));
    if !weights.contains(&two_rho) {
        weights.push(two_rho);
    }
    let mut setups = Vec::new();
    for lb in &weights {
        match PhiSetup::with_axioms(&torus, borel.clone(), lb.clone(), axioms_for(opts.mutation)) {
            Ok(s) => setups.push(s),
            Err(e) => suite.push("setup", Status::Fail, e.to_string()),
        }
    }
    suite.run("characters", || {
        character_checks(&torus, &setups, opts, &mut rng)
    });
    suite.run("delta-identities", || {
        delta_checks(&torus, &borel, opts, &mut rng)
    });
    suite.run("expression-chain", || {
        chain_checks(&torus, &setups, opts, &mut rng)
    });
    if !torus.capabilities().has_minus_one_in_wl {
        suite.skip("phi", "-1 not in W(R_L) on a_M/a_G");
        return suite.out;
    }
    let (u, s) = config.gamma::<Q>().unwrap_or_else(|_| {
        (
            CoweightVec::zeros(config.rank),
            CoweightVec::zeros(config.rank),
        )
    });
    if heavy {
        suite.skip("phi-limit", "Weyl group above the heavy-check limit");
        suite.skip(
            "choice-independence",
            "Weyl group above the heavy-check limit",
        );
    } else {
        suite.run("phi-limit", || {
            let mut detail = Vec::new();
            for setup in &setups {
                for (u, s) in [
                    (
                        CoweightVec::zeros(config.rank),
                        CoweightVec::zeros(config.rank),
                    ),
                    (u.clone(), s.clone()),
                    random_elliptic(&mut rng, &torus),
                ] {
                    let target = theorem_value(&torus, setup, &u, &s, opts.mutation)?;
                    for x0 in probe_points(&torus, &setup.borel) {
                        let r = limit_probe::<f64, Q>(&torus, setup, &u, &s, &x0, &opts.t_seq)?;
                        ensure(
                            r.converges,
                            "probe converges at rate C t",
                            format!("{:?}", r.points.iter().map(|p| p.error).collect::<Vec<_>>()),
                            format!("C = {}", r.rate),
                        )?;
                        ensure_close(
                            r.target.complex(),
                            target,
                            opts.tol,
                            "probe target equals the closed form",
                        )?;
                        for p in &r.points {
                            ensure_close(
                                p.value.complex(),
                                p.factored.complex(),
                                opts.tol,
                                "regrouped expression",
                            )?;
                        }
                    }
                    detail.push(format!("{:.6}", target.re));
                }
            }
            Ok(format!("limits {}", detail.join(", ")))
        });
        suite.run("choice-independence", || {
            choice_checks(&torus, &setups[0], opts, &mut rng)
        });
    }
    suite.run("wlm-decomposition", || {
        for setup in &setups {
            check_wlm_decomposition(&torus, setup)?;
        }
        Ok(String::new())
    });

    suite.run("normalization", || {
        for _ in 0..opts.samples * 4 {
            let g = random_regular(&mut rng, torus.system().roots(), config.rank, 1e-3);
            let (l, r) = dmg_factor_check(&torus, &borel, &g)?;
            ensure(
                (l - r).abs() <= opts.tol * l.max(r).max(1.0),
                "|D|^1/2 = delta_P^1/2 |Delta_P|",
                l,
                r,
            )?;
        }
        Ok(String::new())
    });
    suite.run("phi-special-cases", || {
        special_cases(&torus, &setups, opts, &mut rng)
    });
    suite.out
}

pub fn verify_all(configs: &[DatumConfig], opts: &VerifyOptions) -> Vec<Check> {
    configs
        .iter()
        .flat_map(|c| verify_config(c, opts))
        .collect()
}

fn structural_checks(suite: &mut Suite, torus: &RealTorus<Q>) {
    let weyl = torus.weyl();
    let sys = torus.system();
    suite.run("weyl-signs", || {
        for e in weyl.elements() {
            let det = e.matrix.determinant();
            let want = if e.length % 2 == 0 { 1 } else { -1 };
            ensure(
                det == Q::from_int(want) && i64::from(e.sign) == want,
                "det = (-1)^length = sign",
                &det,
                want,
            )?;
        }
        Ok(format!("|W| = {}", weyl.order()))
    });
    suite.run("subgroups", || {
        let (wl, wm) = (torus.w_l(), torus.w_m());
        for &a in wl {
            for &b in wm {
                ensure(
                    weyl.compose(a, b) == weyl.compose(b, a),
                    "W_L and W_M commute",
                    a,
                    b,
                )?;
            }
            for &r in &torus.classes().imaginary {
                ensure(weyl.act_root(a, r) == r, "W_L fixes R_M", a, r)?;
            }
        }
        let common = wl.iter().filter(|w| wm.binary_search(w).is_ok()).count();
        ensure(common == 1, "W_L and W_M meet trivially", common, 1)?;
        Ok(format!("|W_L| = {}, |W_M| = {}", wl.len(), wm.len()))
    });
    suite.run("projections", || {
        let d = torus.datum();
        let n = sys.dim();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let v = WeightVec::<Q>::from_ints(&e);
            let pm = d.project_pm(&v);
            ensure(d.project_pm(&pm) == pm, "p_M idempotent", i, "")?;
            let pg = d.project_pg(&v);
            ensure(d.sigma().weight(&pg) == pg, "p_G sigma-fixed", i, "")?;
            for w in 0..weyl.order().min(64) {
                ensure(weyl.act_weight(w, &pg) == pg, "p_G W-fixed", w, "")?;
            }
        }
        for &r in &torus.classes().imaginary {
            ensure(
                d.project_pm(sys.root(r)).is_zero(),
                "p_M kills imaginary roots",
                r,
                "",
            )?;
        }
        Ok(String::new())
    });
    suite.run("facet-census", || {
        let arr = RootArrangement::new(sys, torus.caps().hyperplanes)?;
        let c = facet_census(sys, &arr, weyl, torus.caps().weyl)?;
        ensure(
            c.total_ok(),
            "facets = r |W| / 2",
            c.facets,
            c.rank * c.weyl_order,
        )?;
        ensure(c.per_chamber_ok(), "r facets per chamber", "", c.rank)?;
        ensure(c.orbits_ok(), "r orbits", c.orbits.len(), c.rank)?;
        ensure(c.stabilizers_ok(), "stabilizers of order 2", "", 2)?;
        for w in &c.walls {
            ensure(
                w.n_alpha.is_some(),
                "facets per wall divisible by |W_alpha|",
                w.facets,
                w.wall_weyl_order,
            )?;
        }
        Ok(format!("{} chambers, {} facets", c.chambers, c.facets))
    });
    suite.run("split-chambers", || {
        let ch = torus.chambers();
        let np = ch.p_complex().chambers().len();
        let want = (sys.len() - torus.classes().imaginary.len()) / 2;
        let mut seen = Vec::new();
        for p in 0..np {
            let rn = ch.parabolic_from_pchamber(p);
            ensure(rn.len() == want, "|R_N| = (|R| - |R_M|)/2", rn.len(), want)?;
            let l = ch.pchamber_to_lchamber(p);
            let rl: Vec<usize> = rn.iter().copied().filter(|&i| torus.is_real(i)).collect();
            ensure(
                rl == ch.l_positive(torus.datum(), l),
                "R_N meets R_L in the positive system of C",
                format!("{rl:?}"),
                l,
            )?;
            seen.push(rn);
        }
        seen.sort();
        seen.dedup();
        ensure(
            seen.len() == np,
            "P-chamber to parabolic is injective",
            seen.len(),
            np,
        )?;
        Ok(format!(
            "{np} P-chambers, {} L-chambers",
            ch.l_complex().chambers().len()
        ))
    });
}

fn prop1_checks(torus: &RealTorus<Q>, opts: &VerifyOptions, heavy: bool) -> Result<String> {
    let sys = torus.system();
    let weyl = torus.weyl();
    let solver = CbarSolver::with_axioms(sys, axioms_for(opts.mutation), torus.caps().hyperplanes)?;
    let mut out = Vec::new();
    for lambda in sample_characters(torus) {
        let x0 = solver.dual_chamber(&lambda)?;
        let a = solver.prop1_sum(weyl, x0, &lambda)?;
        let b = solver.prop1_alt_sum(weyl, x0, &lambda)?;
        solver.facet_identity_check(&solver.table(&lambda)?)?;
        if !heavy {
            solver.prop1_lambda_orbit_variant(weyl, x0, &lambda)?;
        }
        out.push(format!("({a}, {b})"));
    }
    Ok(out.join(" "))
}

fn m_roots(torus: &RealTorus<Q>) -> Vec<WeightVec<Q>> {
    torus.m_system().roots().to_vec()
}

fn character_checks(
    torus: &RealTorus<Q>,
    setups: &[PhiSetup<Q>],
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String> {
    let msys = torus.m_system();
    let dim = torus.system().dim();
    for setup in setups {
        let pos = setup.m_positive();
        for &w in &setup.kostant {
            let table = setup.table(w);
            let one = TorusElement::<f64>::identity(dim);
            let d = weyl_dimension(msys, pos, &table.highest);
            ensure(
                Q::from_int(table.dimension() as i64) == d,
                "multiplicities sum to the Weyl dimension",
                table.dimension(),
                &d,
            )?;
            ensure_close(
                table.trace(&one),
                Complex::new(table.dimension() as f64, 0.0),
                opts.tol,
                "trace at 1",
            )?;
            let dual =
                weight_multiplicities(msys, pos, &dual_highest_weight(msys, pos, &table.highest))?;
            for _ in 0..opts.samples {
                let g = random_regular(rng, &m_roots(torus), dim, 1e-3);
                let wcf = wcf_trace(msys, torus.m_weyl(), pos, &table.highest, &g)?;
                ensure_close(wcf, table.trace(&g), opts.tol, "Weyl character formula")?;
                ensure_close(
                    dual.trace(&g.inverse()),
                    table.trace(&g),
                    opts.tol,
                    "dual trace",
                )?;
            }
        }
    }
    Ok(String::new())
}

fn delta_checks(
    torus: &RealTorus<Q>,
    borel: &BorelChoice<Q>,
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String> {
    let sys = torus.system();
    let weyl = torus.weyl();
    let pos = borel.positive.positive_indices();
    for _ in 0..opts.samples {
        let g = random_regular(rng, sys.roots(), sys.dim(), 1e-3);
        let db = eval_delta_b(&g, sys, &pos)?;
        let dp = eval_delta_p(&g, sys, &borel.n_roots)?;
        let dm = eval_delta(&g, borel.m_positive.iter().map(|&i| sys.root(i)))?;
        ensure_close(dp * dm, db, opts.tol, "Delta_P Delta_{B_M} = Delta_B")?;
        let w = rng.gen_range(0..weyl.order());
        let (l, r) = delta_quotient_identity_check(&g, sys, weyl, w, &pos)?;
        ensure_close(
            l,
            r,
            opts.tol,
            "Delta_{wB} / Delta_B = sign(w) (rho - w rho)",
        )?;
    }
    Ok(String::new())
}

/// A random map on `W` constant on the cosets `W_M w`.
pub fn random_invariant_map(torus: &RealTorus<Q>, rng: &mut impl Rng) -> Vec<i64> {
    let weyl = torus.weyl();
    let mut m = vec![i64::MIN; weyl.order()];
    for w in 0..weyl.order() {
        if m[w] != i64::MIN {
            continue;
        }
        let v = rng.gen_range(-5..=5);
        for &x in torus.w_m() {
            m[weyl.compose(x, w)] = v;
        }
    }
    m
}

fn chain_checks(
    torus: &RealTorus<Q>,
    setups: &[PhiSetup<Q>],
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String> {
    let sys = torus.system();
    for setup in setups {
        for _ in 0..opts.samples {
            let m = random_invariant_map(torus, rng);
            check_invariant(torus, &m)?;
            for _ in 0..opts.samples {
                let g = random_regular(rng, sys.roots(), sys.dim(), 1e-3);
                let raw = eval_expression_raw(torus, setup, &m, &g)?;
                let wcf = eval_expression_wcf(torus, setup, &m, &g)?;
                ensure_close(raw, wcf, opts.tol, "raw sum equals character form")?;
            }
        }
    }
    Ok(String::new())
}

fn choice_checks(
    torus: &RealTorus<Q>,
    setup: &PhiSetup<Q>,
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String> {
    let (u, s) = random_elliptic(rng, torus);
    let base = theorem_value(torus, setup, &u, &s, opts.mutation)?;
    let borels = torus.valid_borels(&setup.borel);
    for (w, b) in &borels {
        let lb = torus.weyl().act_weight(*w, &setup.lambda_b);
        let other = PhiSetup::with_axioms(torus, b.clone(), lb, setup.l_solver().axioms())?;
        ensure_close(
            theorem_value(torus, &other, &u, &s, opts.mutation)?,
            base,
            opts.tol,
            "closed form independent of the Borel",
        )?;
    }
    let g = TorusElement::<f64>::from_parameters(&u, &s);
    let t = opts.t_seq[opts.t_seq.len() - 1];
    let pts = probe_points(torus, &setup.borel);
    let first = eval_expression_scaled(torus, setup, &g, t, &pts[0])?;
    for x0 in &pts[1..] {
        let v = eval_expression_factored(torus, setup, &g, t, x0)?;
        ensure(
            (v - first).norm() <= 10.0 * t * first.norm().max(1.0),
            "expression near the limit independent of x0",
            v,
            first,
        )?;
    }
    Ok(format!(
        "{} Borels, {} probe points",
        borels.len(),
        pts.len()
    ))
}

fn special_cases(
    torus: &RealTorus<Q>,
    setups: &[PhiSetup<Q>],
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<String> {
    let mut notes = Vec::new();
    let sys = torus.system();
    for setup in setups {
        for _ in 0..opts.samples {
            let (u, s) = random_elliptic(rng, torus);
            let v = theorem_value(torus, setup, &u, &s, opts.mutation)?;
            ensure(
                v.im.abs() <= opts.tol * v.norm().max(1.0),
                "Phi is real on T_e",
                v.im,
                0,
            )?;
            if torus.a_m().dim() == torus.a_g().dim() {
                let tr = setup
                    .table(setup.kostant[0])
                    .trace(&TorusElement::from_parameters(&u, &s));
                ensure_close(v, tr, opts.tol, "elliptic torus: Phi = tr(gamma; E)")?;
            }
            if torus.classes().real.len() == sys.len() {
                let q = torus.q_g()?;
                let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
                let lambda0 = torus.lambda0(&setup.lambda_b);
                let z = TorusElement::<f64>::from_parameters(&CoweightVec::zeros(sys.dim()), &s);
                let want = z.eval(&lambda0) * (sign * torus.weyl().order() as f64);
                ensure_close(
                    v,
                    want,
                    opts.tol,
                    "split torus: Phi = (-1)^q |W| lambda_0(z)",
                )?;
            }
        }
    }
    if torus.a_m().dim() == torus.a_g().dim() {
        notes.push("elliptic");
    }
    if torus.classes().real.len() == sys.len() {
        notes.push("split");
    }
    Ok(notes.join(" "))
}

/// Runs the suite and summarizes: `(passed, failed, skipped)`.
pub fn tally(checks: &[Check]) -> (usize, usize, usize) {
    let count = |s| checks.iter().filter(|c| c.status == s).count();
    (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip),
    )
}
