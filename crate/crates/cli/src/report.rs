//! JSON reports for each command. Exact numbers are integers or `"p/q"` strings.

use serde_json::{json, Map, Value};

use arthur_phi::catalog::{builtin_catalog, DatumConfig};
use arthur_phi::chamber::{facet_census, ChamberComplex, RootArrangement};
use arthur_phi::phi::{limit_probe, phi_theorem1, PhiSetup};
use arthur_phi::root_datum::{CoweightVec, WeightVec};
use arthur_phi::verify::{self, Status, VerifyOptions};
use arthur_phi::{Borel, Error, Rat, Result, Solver, Torus};

/// Order above which `prop1` skips the sums over the orbit of `lambda`.
const ORBIT_VARIANT_LIMIT: usize = 400;

pub struct Inputs {
    pub lambda: Option<Vec<Rat>>,
    pub lambda_b: Option<Vec<Rat>>,
    pub u: Option<Vec<Rat>>,
    pub s: Option<Vec<Rat>>,
    pub x0: Option<Vec<Rat>>,
    pub borel: Option<Vec<usize>>,
    pub t_seq: Option<Vec<f64>>,
    pub tol: f64,
}

fn sign_string(sign: &[i8]) -> String {
    sign.iter()
        .map(|s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

pub fn catalog() -> Result<Value> {
    let entries: Vec<Value> = builtin_catalog()?
        .into_iter()
        .map(|e| {
            json!({
                "name": e.config.name,
                "rank": e.config.rank,
                "roots": e.config.roots.len(),
                "sigma": e.config.sigma,
                "capabilities": e.capabilities,
            })
        })
        .collect();
    Ok(json!({ "catalog": entries }))
}

pub fn validate(config: &DatumConfig) -> Result<Value> {
    let torus = config.torus::<Rat>()?;
    let c = torus.classes();
    Ok(json!({
        "name": config.name,
        "rank": config.rank,
        "valid": true,
        "roots": torus.system().len(),
        "real": c.real,
        "imaginary": c.imaginary,
        "complex": c.complex,
        "weyl_order": torus.weyl().order(),
        "w_l_order": torus.w_l().len(),
        "w_m_order": torus.w_m().len(),
        "dim_a_m": torus.a_m().dim(),
        "dim_a_g": torus.a_g().dim(),
        "capabilities": torus.capabilities(),
    }))
}

fn complex_json(c: &ChamberComplex<Rat>) -> Value {
    json!({
        "hyperplanes": c.arrangement().len(),
        "chambers": c.chambers().iter().map(|ch| json!({
            "sign": sign_string(&ch.sign),
            "interior": ch.interior.to_strings(),
        })).collect::<Vec<_>>(),
        "facets": c.facets().iter().map(|f| json!({
            "wall": f.wall,
            "sign": sign_string(&f.sign),
            "chambers": f.chambers,
        })).collect::<Vec<_>>(),
    })
}

pub fn chambers(config: &DatumConfig) -> Result<Value> {
    let torus = config.torus::<Rat>()?;
    let sys = torus.system();
    let arr = RootArrangement::new(sys, torus.caps().hyperplanes)?;
    let census = facet_census(sys, &arr, torus.weyl(), torus.caps().weyl)?;
    let split = torus.chambers();
    let p_chambers: Vec<Value> = (0..split.p_complex().chambers().len())
        .map(|p| {
            json!({
                "sign": sign_string(&split.p_complex().chamber(p).sign),
                "point": split.p_point(p).to_strings(),
                "l_chamber": split.pchamber_to_lchamber(p),
                "parabolic": split.parabolic_from_pchamber(p),
            })
        })
        .collect();
    let l_chambers: Vec<Value> = (0..split.l_complex().chambers().len())
        .map(|l| {
            json!({
                "sign": sign_string(&split.l_complex().chamber(l).sign),
                "point": split.l_point(l).to_strings(),
                "positive": split.l_positive(torus.datum(), l),
            })
        })
        .collect();
    Ok(json!({
        "name": config.name,
        "roots": complex_json(arr.complex()),
        "census": {
            "rank": census.rank,
            "weyl_order": census.weyl_order,
            "chambers": census.chambers,
            "facets": census.facets,
            "orbits": census.orbits.len(),
            "stabilizer_orders": census.explicit_stabilizers,
            "walls": census.walls.iter().map(|w| json!({
                "root": w.root,
                "facets": w.facets,
                "wall_weyl_order": w.wall_weyl_order,
                "n_alpha": w.n_alpha,
            })).collect::<Vec<_>>(),
            "pass": census.total_ok() && census.per_chamber_ok() && census.orbits_ok() && census.stabilizers_ok(),
        },
        "p_chambers": p_chambers,
        "l_chambers": l_chambers,
    }))
}

fn character(torus: &Torus, lambda: &Option<Vec<Rat>>) -> WeightVec<Rat> {
    match lambda {
        Some(v) => WeightVec(v.clone()),
        None => torus.system().rho(torus.weyl().positive_system()),
    }
}

pub fn constants(config: &DatumConfig, inputs: &Inputs) -> Result<Value> {
    let torus = config.torus::<Rat>()?;
    let solver = Solver::new(torus.system(), torus.caps().hyperplanes)?;
    let lambda = character(&torus, &inputs.lambda);
    let table = solver.table(&lambda)?;
    let complex = solver.arrangement().complex();
    let (lhs, rhs) = solver.facet_identity_check(&table)?;
    Ok(json!({
        "name": config.name,
        "lambda": lambda.to_strings(),
        "chambers": complex.chambers().iter().zip(&table.values).map(|(c, v)| json!({
            "sign": sign_string(&c.sign),
            "value": v,
        })).collect::<Vec<_>>(),
        "facets": complex.facets().iter().zip(&table.facet_values).map(|(f, v)| json!({
            "sign": sign_string(&f.sign),
            "value": v,
        })).collect::<Vec<_>>(),
        "chamber_sum": table.chamber_sum(),
        "facet_sum": table.facet_sum(),
        "facet_identity": [lhs, rhs],
    }))
}

pub fn prop1(config: &DatumConfig, inputs: &Inputs) -> Result<Value> {
    let torus = config.torus::<Rat>()?;
    let weyl = torus.weyl();
    let solver = Solver::new(torus.system(), torus.caps().hyperplanes)?;
    let lambda = character(&torus, &inputs.lambda);
    let x0 = solver.dual_chamber(&lambda)?;
    let sum = solver.prop1_sum(weyl, x0, &lambda)?;
    let alt = solver.prop1_alt_sum(weyl, x0, &lambda)?;
    let expected = [weyl.order() as i64, solver.expected_alt_sum(weyl)?];
    let orbit = if weyl.order() <= ORBIT_VARIANT_LIMIT {
        let (a, b) = solver.prop1_lambda_orbit_variant(weyl, x0, &lambda)?;
        json!([a, b])
    } else {
        Value::Null
    };
    Ok(json!({
        "name": config.name,
        "lambda": lambda.to_strings(),
        "x0_chamber": sign_string(&solver.arrangement().complex().chamber(x0).sign),
        "sum": sum,
        "alt_sum": alt,
        "expected": expected,
        "lambda_orbit": orbit,
        "pass": ([sum, alt] == expected),
    }))
}

fn borel(torus: &Torus, config: &DatumConfig, inputs: &Inputs) -> Result<Borel> {
    match inputs.borel.as_deref().or(config.borel.as_deref()) {
        Some(ix) => torus.borel_from_indices(ix),
        None => Ok(torus.default_borel()),
    }
}

struct PhiInputs {
    torus: Torus,
    setup: PhiSetup<Rat>,
    u: CoweightVec<Rat>,
    s: CoweightVec<Rat>,
}

fn phi_inputs(config: &DatumConfig, inputs: &Inputs) -> Result<PhiInputs> {
    let torus = config.torus::<Rat>()?;
    let borel = borel(&torus, config, inputs)?;
    let lambda_b = match &inputs.lambda_b {
        Some(v) => WeightVec(v.clone()),
        None => config
            .lambda_b()
            .unwrap_or_else(|| WeightVec::zeros(config.rank)),
    };
    let (u0, s0) = config.gamma::<Rat>()?;
    let u = inputs.u.clone().map(CoweightVec).unwrap_or(u0);
    let s = inputs.s.clone().map(CoweightVec).unwrap_or(s0);
    let setup = PhiSetup::new(&torus, borel, lambda_b)?;
    Ok(PhiInputs { torus, setup, u, s })
}

fn setup_json(p: &PhiInputs, config: &DatumConfig) -> Map<String, Value> {
    let b = &p.setup.borel;
    let mut m = Map::new();
    m.insert("name".into(), json!(config.name));
    m.insert("borel".into(), json!(b.positive.positive_indices()));
    m.insert("n_roots".into(), json!(b.n_roots));
    m.insert("rho".into(), json!(b.rho.to_strings()));
    m.insert("lambda_B".into(), json!(p.setup.lambda_b.to_strings()));
    m.insert("lambda0".into(), json!(p.setup.lambda0.to_strings()));
    m.insert(
        "gamma".into(),
        json!({ "u": p.u.to_strings(), "s": p.s.to_strings() }),
    );
    m
}

pub fn phi(config: &DatumConfig, inputs: &Inputs) -> Result<Value> {
    let p = phi_inputs(config, inputs)?;
    let result = phi_theorem1::<f64, Rat>(&p.torus, &p.setup, &p.u, &p.s)?;
    let mut m = setup_json(&p, config);
    if let Value::Object(r) = serde_json::to_value(&result).expect("serializable") {
        m.extend(r);
    }
    Ok(Value::Object(m))
}

pub fn probe(config: &DatumConfig, inputs: &Inputs) -> Result<(Value, bool)> {
    let p = phi_inputs(config, inputs)?;
    let x0 = match &inputs.x0 {
        Some(v) => CoweightVec(v.clone()),
        None => p.torus.chambers().p_point(p.setup.borel.p_chamber),
    };
    if p.torus.chambers().locate_p(&x0).is_none() {
        return Err(Error::Config(
            "x0 must be an interior point of a P-chamber".into(),
        ));
    }
    let ts = inputs
        .t_seq
        .clone()
        .unwrap_or_else(|| vec![1e-1, 1e-2, 1e-3, 1e-4]);
    let r = limit_probe::<f64, Rat>(&p.torus, &p.setup, &p.u, &p.s, &x0, &ts)?;
    let regrouped = r.points.iter().all(|q| {
        arthur_phi::characters::close(q.value.complex(), q.factored.complex(), inputs.tol)
    });
    let pass = r.converges && regrouped;
    let mut m = setup_json(&p, config);
    m.insert("x0".into(), json!(x0.to_strings()));
    if let Value::Object(r) = serde_json::to_value(&r).expect("serializable") {
        m.extend(r);
    }
    m.insert("regrouped".into(), json!(regrouped));
    m.insert("pass".into(), json!(pass));
    Ok((Value::Object(m), pass))
}

pub fn verify_all(configs: &[DatumConfig], opts: &VerifyOptions) -> Result<(Value, bool)> {
    let checks = verify::verify_all(configs, opts);
    let (passed, failed, skipped) = verify::tally(&checks);
    let value = json!({
        "checks": checks,
        "summary": { "passed": passed, "failed": failed, "skipped": skipped },
        "pass": failed == 0,
    });
    Ok((value, failed == 0))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!(
            "[{}]",
            a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_flat),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}

/// Human-readable rendering; `verify-all` reports become one line per check.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Some(Value::Array(checks)) = v.get("checks") {
        for c in checks {
            let status = match c["status"].as_str() {
                Some("pass") => Status::Pass,
                Some("skip") => Status::Skip,
                _ => Status::Fail,
            };
            let tag = match status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!(
                "{tag} {:<14} {:<20} {}\n",
                scalar_text(&c["system"]),
                scalar_text(&c["check"]),
                scalar_text(&c["detail"])
            ));
        }
        render(&v["summary"], 0, &mut out);
    } else {
        render(v, 0, &mut out);
    }
    out.trim_end().to_string()
}
