use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Map, Value};

use seifert_core::exactmath::{cokernel, smith_normal_form, GroupElement, IntMatrix};
use seifert_core::localmodel::{
    multiplicity_at_center, quotient_is_smooth, seifert_is_smooth, seifert_is_smooth_by_generation, to_quotient,
    to_seifert, CyclicChart, LocalSeifertData, QuotientPresentation, ReducedChart,
};
use seifert_core::seifert::{
    canonical_class_y, chern_class, class_group_y, contraction_type, edge_class, global_order, multiplicity_at,
    quotient_by_mu, singularity_predicates, validate, ContractionType, SeifertData,
};
use seifert_core::topology::{chern_pairings, h1_of, h1_orb, IntersectionProfile};
use seifert_core::Error;

use crate::input::{self, CoefficientDoc, Loaded, SCHEMA_VERSION};
use crate::json::{group, int, ints, rat, uint, JInt};
use crate::Fault;

/// A report and the exit code it carries.
pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

fn core(e: Error) -> Fault {
    match e {
        Error::ValidationRequired(m) => Fault::Validation(m),
        other => Fault::Input(other.to_string()),
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn element(g: &GroupElement) -> Value {
    ints(g.coords())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_iter().map(ints).collect())
}

/// Caller claims the computations rely on without checking.
fn assumptions(sd: &SeifertData, profile: Option<&IntersectionProfile>) -> Value {
    let mut out = vec![json!(
        "marked points cover the singular points of the base and the points where branch divisors meet"
    )];
    if sd.base().ample_direction().is_some() {
        out.push(json!("the declared ample direction is ample"));
    }
    if let Some(p) = profile {
        out.push(json!(if p.hypotheses_asserted() {
            "topology: caller asserted a smooth base with H_1(X) = 0 and transversal divisors"
        } else {
            "topology: smoothness, H_1(X) = 0 and transversality were NOT asserted; H_1 results are formal"
        }));
    }
    Value::Array(out)
}

fn validation_report(loaded: &Loaded) -> Result<(Map<String, Value>, bool), Fault> {
    let sd = &loaded.sd;
    let report = validate(sd).map_err(core)?;
    let mut m = header("validate");
    m.insert("valid".into(), json!(report.is_valid()));
    m.insert("picard_order".into(), report.picard_order.as_ref().map_or(Value::Null, int));
    m.insert("failures".into(), json!(report.failures(sd)));
    Ok((m, report.is_valid()))
}

pub fn validate_cmd(path: &str) -> Result<Outcome, Fault> {
    let loaded = input::load(path)?;
    let (mut m, valid) = validation_report(&loaded)?;
    m.insert("assumptions".into(), assumptions(&loaded.sd, loaded.profile.as_ref()));
    Ok(Outcome {
        report: Value::Object(m),
        code: if valid { 0 } else { 2 },
    })
}

pub fn analyze(path: &str) -> Result<Outcome, Fault> {
    let loaded = input::load(path)?;
    let (mut v, valid) = validation_report(&loaded)?;
    if !valid {
        v.insert("command".into(), json!("analyze"));
        return Ok(Outcome {
            report: Value::Object(v),
            code: 2,
        });
    }
    let sd = &loaded.sd;
    let base = sd.base();
    let cl = base.class_group();
    let mut m = header("analyze");

    let c1 = chern_class(sd);
    let free = c1.free_part(cl).map_err(core)?;
    m.insert(
        "chern_class".into(),
        json!({
            "numerator": element(c1.numerator()),
            "denominator": int(c1.denominator()),
            "free_part": free.iter().map(rat).collect::<Vec<_>>(),
        }),
    );
    m.insert("global_order".into(), uint(global_order(sd).map_err(core)?));
    m.insert("picard_order".into(), v.remove("picard_order").unwrap_or(Value::Null));

    let divisors: Vec<Value> = sd
        .branch_indices()
        .into_iter()
        .map(|i| json!({"divisor": base.divisors()[i].name, "multiplicity": uint(sd.coefficients()[i].c())}))
        .collect();
    let mut points = Vec::new();
    for (i, p) in base.marked_points().iter().enumerate() {
        points.push(json!({"point": p.name, "multiplicity": uint(multiplicity_at(sd, i).map_err(core)?)}));
    }
    m.insert("multiplicities".into(), json!({"divisors": divisors, "points": points}));

    let cly = class_group_y(sd).map_err(core)?;
    let k = canonical_class_y(sd).map_err(core)?;
    m.insert(
        "class_group_y".into(),
        json!({
            "group": group(cly.group().normal_form()),
            "generators": cly.labels(),
            "canonical_class": ints(&cly.normal_coordinates(&k).map_err(core)?),
        }),
    );

    let ct = contraction_type(sd).map_err(core)?;
    m.insert("contraction_type".into(), json!(ct.to_string()));
    let sing = match ct {
        ContractionType::InfinitySectionContractible | ContractionType::Undecidable => {
            let p = singularity_predicates(sd).map_err(core)?;
            json!({
                "q_cartier": p.q_cartier.to_string(),
                "log_terminal": p.log_terminal.to_string(),
                "ratio": p.ratio.as_ref().map_or(Value::Null, rat),
                "log_canonical_degree": p.log_canonical_degree.as_ref().map_or(Value::Null, rat),
            })
        }
        _ => Value::Null,
    };
    m.insert("singularity".into(), sing);
    m.insert("edge_class".into(), element(&edge_class(sd).map_err(core)?));

    if let Some(p) = &loaded.profile {
        let c: Vec<u64> = sd.coefficients().iter().map(|c| c.c()).collect();
        m.insert(
            "topology".into(),
            json!({
                "h1_y": group(h1_of(sd, p).map_err(core)?.normal_form()),
                "h1_orb": group(h1_orb(p, &c).map_err(core)?.normal_form()),
                "chern_pairings": chern_pairings(sd, p).map_err(core)?.iter().map(rat).collect::<Vec<_>>(),
                "hypotheses_asserted": p.hypotheses_asserted(),
            }),
        );
    }
    m.insert("assumptions".into(), assumptions(sd, loaded.profile.as_ref()));
    Ok(Outcome::ok(Value::Object(m)))
}

fn require_profile(loaded: &Loaded) -> Result<&IntersectionProfile, Fault> {
    loaded
        .profile
        .as_ref()
        .ok_or_else(|| Fault::Input("the document has no base.profile block".into()))
}

pub fn h1(path: &str, orbifold: bool) -> Result<Outcome, Fault> {
    let loaded = input::load(path)?;
    let p = require_profile(&loaded)?;
    let sd = &loaded.sd;
    let (name, g) = if orbifold {
        let c: Vec<u64> = sd.coefficients().iter().map(|c| c.c()).collect();
        ("h1_orb", h1_orb(p, &c).map_err(core)?)
    } else {
        ("h1_y", h1_of(sd, p).map_err(core)?)
    };
    let mut m = header(if orbifold { "h1orb" } else { "h1" });
    m.insert(name.into(), group(g.normal_form()));
    m.insert("hypotheses_asserted".into(), json!(p.hypotheses_asserted()));
    m.insert("assumptions".into(), assumptions(sd, Some(p)));
    Ok(Outcome::ok(Value::Object(m)))
}

/// The document of `Y / mu_M`; the profile's `c_1(L)` pairings follow
/// `L' = M L + sum floor(M b_i / c_i) D_i`.
pub fn quotient(path: &str, m: u64) -> Result<Outcome, Fault> {
    let loaded = input::load(path)?;
    let sd = &loaded.sd;
    let q = quotient_by_mu(sd, m).map_err(core)?;
    let mut doc = loaded.doc.clone();
    doc.seifert.l_class = q.l_class().coords().iter().cloned().map(JInt::from).collect();
    doc.seifert.coefficients = q
        .branch_indices()
        .into_iter()
        .map(|i| CoefficientDoc {
            divisor: sd.base().divisors()[i].name.clone(),
            b: q.coefficients()[i].b().into(),
            c: q.coefficients()[i].c().into(),
        })
        .collect();
    if let (Some(pd), Some(p)) = (doc.base.profile.as_mut(), loaded.profile.as_ref()) {
        let mm = BigInt::from(m);
        pd.l_pairings = (0..p.h2_rank())
            .map(|k| {
                let mut acc = &mm * &p.l_pairings()[k];
                for (i, c) in sd.coefficients().iter().enumerate() {
                    let whole = (&mm * BigInt::from(c.b())).div_floor(&BigInt::from(c.c()));
                    acc += whole * &p.divisor_pairings()[(i, k)];
                }
                JInt(acc)
            })
            .collect();
    }
    let report = serde_json::to_value(&doc).expect("documents serialize");
    // the new document must load on its own
    input::build(doc)?;
    Ok(Outcome::ok(report))
}

fn fraction_list(b: &[u64], c: &[u64]) -> Value {
    json!(b.iter().zip(c).map(|(b, c)| format!("{b}/{c}")).collect::<Vec<_>>())
}

fn seifert_side(lsd: &LocalSeifertData) -> Map<String, Value> {
    let rc = lsd.reduced();
    let mut m = Map::new();
    m.insert("l".into(), uint(lsd.l()));
    m.insert("b".into(), fraction_list(lsd.b(), rc.c()));
    m.insert("base".into(), json!(if rc.is_smooth() { "smooth" } else { "singular" }));
    m.insert("m_red".into(), uint(rc.m_red()));
    m.insert("c".into(), json!(rc.c()));
    m.insert("d".into(), json!(rc.d()));
    m
}

fn quotient_side(qp: &QuotientPresentation) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("m".into(), uint(qp.chart().order()));
    m.insert("weights".into(), json!(qp.chart().weights()));
    m.insert("r".into(), uint(qp.r()));
    m
}

/// Chart flags: either the quotient side `(m, weights, r)` or the Seifert
/// side `(m_red, c, d, l, b)`.
pub enum LocalInput {
    Quotient(QuotientPresentation),
    Seifert(LocalSeifertData),
}

impl LocalInput {
    pub fn quotient(m: u64, weights: Vec<u64>, r: u64) -> Result<Self, Fault> {
        let chart = CyclicChart::new(m, weights).map_err(core)?;
        Ok(LocalInput::Quotient(QuotientPresentation::new(r, chart)))
    }

    pub fn seifert(m_red: u64, c: Vec<u64>, d: Vec<u64>, l: u64, b: Vec<u64>) -> Result<Self, Fault> {
        let rc = ReducedChart::new(m_red, c, d).map_err(core)?;
        Ok(LocalInput::Seifert(LocalSeifertData::new(rc, l, b).map_err(core)?))
    }

    fn both(self) -> Result<(QuotientPresentation, LocalSeifertData), Fault> {
        match self {
            LocalInput::Quotient(qp) => {
                let lsd = to_seifert(&qp);
                Ok((qp, lsd))
            }
            LocalInput::Seifert(lsd) => Ok((to_quotient(&lsd).map_err(core)?, lsd)),
        }
    }
}

pub fn local_dict(input: LocalInput) -> Result<Outcome, Fault> {
    let from_quotient = matches!(input, LocalInput::Quotient(_));
    let (qp, lsd) = input.both()?;
    let mut m = header("local dict");
    let (first, second) = if from_quotient {
        (seifert_side(&lsd), quotient_side(&qp))
    } else {
        (quotient_side(&qp), seifert_side(&lsd))
    };
    m.extend(first);
    m.insert(if from_quotient { "quotient" } else { "seifert" }.into(), Value::Object(second));
    Ok(Outcome::ok(Value::Object(m)))
}

pub fn local_smooth(input: LocalInput) -> Result<Outcome, Fault> {
    let (qp, lsd) = input.both()?;
    let verdict = |r: seifert_core::Result<bool>| match r {
        Ok(b) => json!(b.to_string()),
        Err(Error::HypothesisNotMet(why)) => json!(format!("not applicable: {why}")),
        Err(e) => json!(format!("error: {e}")),
    };
    let mut m = header("local smooth");
    m.insert("smooth".into(), json!(quotient_is_smooth(&qp)));
    m.insert("gcd_r_m".into(), uint(qp.r().gcd(&qp.chart().order())));
    m.insert("seifert_criterion".into(), verdict(seifert_is_smooth(&lsd)));
    m.insert("generator_test".into(), verdict(seifert_is_smooth_by_generation(&lsd)));
    Ok(Outcome::ok(Value::Object(m)))
}

pub fn local_mult(input: LocalInput) -> Result<Outcome, Fault> {
    let (qp, lsd) = input.both()?;
    let mut m = header("local mult");
    m.insert("multiplicity".into(), uint(multiplicity_at_center(&lsd)));
    m.insert("quotient".into(), Value::Object(quotient_side(&qp)));
    Ok(Outcome::ok(Value::Object(m)))
}

/// `"1,2;3,4"`: rows separated by `;`, entries by `,`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, Fault> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Fault::Input(format!("bad matrix entry {x:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, rows).map_err(core)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    schema_version: String,
    #[serde(default)]
    cols: Option<usize>,
    matrix: Vec<Vec<JInt>>,
}

pub fn read_matrix_doc(path: &str) -> Result<IntMatrix, Fault> {
    let text = input::read_source(path)?;
    let doc: MatrixDoc = serde_json::from_str(&text).map_err(|e| Fault::Input(format!("malformed matrix document: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Fault::Input(format!("unsupported schema_version {:?}", doc.schema_version)));
    }
    let cols = doc.cols.or_else(|| doc.matrix.first().map(Vec::len)).unwrap_or(0);
    let rows: Vec<Vec<BigInt>> = doc.matrix.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
    IntMatrix::from_rows(cols, rows).map_err(core)
}

pub fn snf(a: &IntMatrix) -> Result<Outcome, Fault> {
    let d = smith_normal_form(a);
    let mut m = header("snf");
    m.insert("diagonal".into(), ints(&d.diagonal()));
    m.insert("rank".into(), json!(d.rank()));
    m.insert("invariant_factors".into(), ints(&d.invariant_factors()));
    m.insert("cokernel".into(), group(cokernel(a).normal_form()));
    m.insert("u".into(), matrix(&d.u));
    m.insert("v".into(), matrix(&d.v));
    Ok(Outcome::ok(Value::Object(m)))
}
