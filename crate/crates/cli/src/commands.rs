use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use triplekit::extension::{
    certify_triple_isomorphism, check_orthogonality_preserving, check_ttp_preserving,
    check_welldefined, extend_to_socle, minimal_basis,
};
use triplekit::factors::{audit_axioms, jb_norm, rng_from_seed};
use triplekit::json::{
    ElementJson, FactorJson, FactorizationJson, MapJson, OperatorJson, PeirceJson,
    PreserverSpecJson,
};
use triplekit::linalg::unitarity_defect;
use triplekit::preservers::{
    factor_rank_one_preserver, make_spin_automorphism_with, make_type1_preserver_with,
    random_automorphism,
};
use triplekit::transition::ttp_pair;
use triplekit::tripotents::{
    is_complete, is_minimal, is_unitary_tripotent, minimal_orthogonal_decomposition,
    random_minimal_tripotent_with,
};
use triplekit::{
    Case, Error as CoreError, FactorDescriptor, FactorKind, LinearOperator, MapOnMinimals,
    SpinAutSpec, ToleranceConfig, Tripotent, Type1PreserverSpec,
};

use crate::args::{CaseArg, Cli, Command, Common, FactorArg, What};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub body: Value,
}

fn tolerances(c: &Common) -> Result<ToleranceConfig> {
    let d = ToleranceConfig::default();
    let tol = c.tol.unwrap_or(d.identity_tol);
    Ok(ToleranceConfig::new(
        c.eig_tol.unwrap_or(d.eig_cluster_tol),
        tol,
        c.tol.unwrap_or(d.norm_tol),
    )?)
}

fn read_input(c: &Common) -> Result<String> {
    let mut s = String::new();
    if c.input == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(&c.input)
            .map_err(|e| CliError::Io(format!("{}: {e}", c.input)))?;
    }
    Ok(s)
}

fn parse<T: for<'de> Deserialize<'de>>(c: &Common) -> Result<T> {
    Ok(serde_json::from_str(&read_input(c)?)?)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn complex(z: triplekit::C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Adds `seed`, `samples`, `tolerances` and `version`.
fn with_meta(mut body: Value, c: &Common, tol: &ToleranceConfig) -> Value {
    let map: &mut Map<String, Value> = body.as_object_mut().expect("reports are objects");
    map.insert("seed".into(), json!(c.seed));
    map.insert("samples".into(), json!(c.samples));
    map.insert("tolerances".into(), to_value(tol));
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    body
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let tol = tolerances(c)?;
    let body = match &cli.command {
        Command::Ttp => with_meta(ttp(c, tol)?, c, &tol),
        Command::Peirce { projectors } => with_meta(peirce(c, tol, *projectors)?, c, &tol),
        Command::Audit { factor } => with_meta(audit(c, tol, *factor)?, c, &tol),
        Command::Extend => with_meta(extend(c, tol)?, c, &tol),
        Command::Factorize => with_meta(factorize(c, tol)?, c, &tol),
        Command::Decompose => with_meta(decompose(c, tol)?, c, &tol),
        Command::Generate { what, factor, case } => generate(c, tol, *what, *factor, *case)?,
    };
    Ok(Outcome { body })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    e: ElementJson,
    v: ElementJson,
}

fn ttp(c: &Common, tol: ToleranceConfig) -> Result<Value> {
    let input: PairInput = parse(c)?;
    let e = input.e.to_tripotent(tol)?;
    let v = input.v.to_tripotent(tol)?;
    let p = ttp_pair(&e, &v)?;
    Ok(json!({
        "ttp": complex(p.forward),
        "ttp_reverse": complex(p.backward),
        "orthogonal": p.orthogonal,
        "symmetry_gap": p.symmetry_gap,
        "symmetric_check": p.symmetry_gap < tol.identity_tol,
    }))
}

fn peirce(c: &Common, tol: ToleranceConfig, projectors: bool) -> Result<Value> {
    let e = parse::<ElementJson>(c)?.to_tripotent(tol)?;
    let p = e.peirce()?;
    let mut body = to_value(&PeirceJson::from(p));
    let map = body.as_object_mut().expect("object");
    if !projectors {
        map.remove("projectors");
    }
    let minimal = match is_minimal(&e) {
        Ok(b) => json!(b),
        Err(CoreError::ZeroTripotent) => Value::Null,
        Err(other) => return Err(other.into()),
    };
    map.insert("minimal".into(), minimal);
    map.insert("complete".into(), json!(is_complete(&e)?));
    map.insert("unitary".into(), json!(is_unitary_tripotent(&e)?));
    Ok(body)
}

fn audit(c: &Common, tol: ToleranceConfig, factor: Option<FactorArg>) -> Result<Value> {
    let kind = match factor {
        Some(FactorArg(k)) => k,
        None => parse::<FactorJson>(c)?.to_kind()?,
    };
    let f = FactorDescriptor::new(kind, tol)?;
    if c.samples == 0 {
        return Err(CoreError::InvalidSpec("audit needs at least one sample".into()).into());
    }
    let mut body = to_value(&audit_axioms(&f, c.samples, c.seed));
    body.as_object_mut()
        .expect("object")
        .insert("factor".into(), to_value(&FactorJson::from(kind)));
    Ok(body)
}

fn build_generator(
    spec: &PreserverSpecJson,
    tol: ToleranceConfig,
) -> Result<(MapOnMinimals, LinearOperator)> {
    Ok(match spec {
        PreserverSpecJson::Type1(s) => make_type1_preserver_with(&s.to_spec()?, tol)?,
        PreserverSpecJson::Spin(s) => make_spin_automorphism_with(&s.to_spec()?, tol)?,
    })
}

fn extend(c: &Common, tol: ToleranceConfig) -> Result<Value> {
    let raw: Value = serde_json::from_str(&read_input(c)?)?;
    let (phi, generator) = if raw.get("pairs").is_some() {
        (serde_json::from_value::<MapJson>(raw)?.to_map(tol)?, None)
    } else {
        let spec: PreserverSpecJson = serde_json::from_value(raw)?;
        let (phi, t) = build_generator(&spec, tol)?;
        (phi, Some(t))
    };
    let t0 = extend_to_socle(&phi)?;
    let wd = check_welldefined(&phi, &t0, c.samples, c.seed)?;
    let tr = check_ttp_preserving(&phi, c.samples, c.seed)?;
    let orth = check_orthogonality_preserving(&phi, c.samples, c.seed)?;
    let iso = match certify_triple_isomorphism(&t0, c.samples, c.seed) {
        Ok(r) => json!({ "morphism": r.morphism_residual, "isometry": r.isometry_residual }),
        Err(CoreError::SingularOperator { .. }) => Value::Null,
        Err(other) => return Err(other.into()),
    };
    let generator_distance = match &generator {
        Some(t) => json!(t0.distance(t)?),
        None => Value::Null,
    };
    Ok(json!({
        "src": FactorJson::from(phi.src().kind),
        "dst": FactorJson::from(phi.dst().kind),
        "welldefined_residual": wd.max_residual,
        "ttp_residual": tr.max_deviation,
        "orthogonality_ok": orth.preserved,
        "isomorphism_residuals": iso,
        "generator_distance": generator_distance,
        "welldefined": wd,
        "ttp_check": tr,
        "orthogonality": orth,
    }))
}

fn factorize(c: &Common, tol: ToleranceConfig) -> Result<Value> {
    let t = parse::<OperatorJson>(c)?.to_operator(tol)?;
    let fac = factor_rank_one_preserver(&t)?;
    let distance = fac.reconstruct(t.src(), t.dst())?.distance(&t)?;
    let mut body = to_value(&FactorizationJson::from(&fac));
    let map = body.as_object_mut().expect("object");
    map.insert("reconstruction_distance".into(), json!(distance));
    map.insert("u_unitarity_defect".into(), json!(unitarity_defect(&fac.u)));
    map.insert("v_unitarity_defect".into(), json!(unitarity_defect(&fac.v)));
    Ok(body)
}

fn decompose(c: &Common, tol: ToleranceConfig) -> Result<Value> {
    let x = parse::<ElementJson>(c)?.to_element(tol)?;
    let parts = minimal_orthogonal_decomposition(&x)?;
    let mut rebuilt = x.factor().zero();
    for (coef, e) in &parts {
        rebuilt = rebuilt.checked_add(&e.element().scale_real(*coef))?;
    }
    let residual = jb_norm(&rebuilt.checked_sub(&x)?);
    let parts: Vec<Value> = parts
        .iter()
        .map(|(coef, e)| json!({ "coefficient": coef, "tripotent": ElementJson::from(e) }))
        .collect();
    Ok(json!({
        "norm": jb_norm(&x),
        "rank": parts.len(),
        "residual": residual,
        "parts": parts,
    }))
}

fn generate(
    c: &Common,
    tol: ToleranceConfig,
    what: What,
    factor: FactorArg,
    case: CaseArg,
) -> Result<Value> {
    let f = FactorDescriptor::new(factor.0, tol)?;
    let case = match case {
        CaseArg::A => Case::A,
        CaseArg::B => Case::B,
    };
    let spec = || -> Result<PreserverSpecJson> {
        match f.kind {
            FactorKind::Type1 { m, n } => Ok(PreserverSpecJson::Type1(
                (&Type1PreserverSpec::random(case, m, n, c.seed)).into(),
            )),
            FactorKind::Spin { n } => Ok(PreserverSpecJson::Spin(
                (&SpinAutSpec::random(n, c.seed)).into(),
            )),
            other => Err(CoreError::UnsupportedForFactor {
                op: "generate spec",
                factor: other,
            }
            .into()),
        }
    };
    Ok(match what {
        What::Spec => to_value(&spec()?),
        What::Map => {
            let phi = match f.kind {
                FactorKind::Type1 { .. } | FactorKind::Spin { .. } => {
                    build_generator(&spec()?, tol)?.0
                }
                _ => MapOnMinimals::from_operator(&random_automorphism(&f, c.seed)?),
            };
            let mut points = minimal_basis(phi.src())?;
            let mut rng = rng_from_seed(c.seed.wrapping_add(1));
            points
                .extend((0..c.samples).map(|_| random_minimal_tripotent_with(phi.src(), &mut rng)));
            to_value(&MapJson::from(&phi.tabulate(&points)?))
        }
        What::MinimalPair => {
            let mut rng = rng_from_seed(c.seed);
            let e: Tripotent = random_minimal_tripotent_with(&f, &mut rng);
            let v = random_minimal_tripotent_with(&f, &mut rng);
            json!({ "e": ElementJson::from(&e), "v": ElementJson::from(&v) })
        }
    })
}
