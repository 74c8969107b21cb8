//! The input document and its translation into library objects.

use std::collections::BTreeSet;
use std::io::Read;
use std::sync::Arc;

use num_integer::Integer;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use seifert_core::exactmath::{FpAbelianGroup, GroupElement, IntMatrix};
use seifert_core::localmodel::ReducedChart;
use seifert_core::seifert::{BaseVariety, Coefficient, Divisor, MarkedPoint, SeifertData};
use seifert_core::topology::IntersectionProfile;

use crate::json::JInt;
use crate::Fault;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub base: BaseDoc,
    pub seifert: SeifertDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub class_group: ClassGroupDoc,
    pub picard: Vec<Vec<JInt>>,
    pub divisors: Vec<DivisorDoc>,
    pub canonical_class: Vec<JInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample_direction: Option<Vec<JInt>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked_points: Vec<MarkedPointDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intersections: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassGroupDoc {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<JInt>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDoc {
    pub name: String,
    pub class: Vec<JInt>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedPointDoc {
    pub name: String,
    pub chart: ChartDoc,
    pub restriction: Vec<JInt>,
    #[serde(default)]
    pub incident: Vec<IncidenceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub order: JInt,
    pub weights: Vec<JInt>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceDoc {
    pub divisor: String,
    pub coordinate: usize,
}

/// Rows of `divisor_pairings` follow the order of `base.divisors`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub divisor_pairings: Vec<Vec<JInt>>,
    pub l_pairings: Vec<JInt>,
    #[serde(default)]
    pub hypotheses_asserted: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertDoc {
    pub l_class: Vec<JInt>,
    #[serde(default)]
    pub coefficients: Vec<CoefficientDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub divisor: String,
    pub b: JInt,
    pub c: JInt,
}

/// Everything a command needs from a parsed document.
pub struct Loaded {
    pub doc: Document,
    pub sd: SeifertData,
    pub profile: Option<IntersectionProfile>,
}

pub fn read_source(path: &str) -> Result<String, Fault> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Fault::Input(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Fault::Input(format!("reading {path}: {e}")))
    }
}

pub fn parse(text: &str) -> Result<Document, Fault> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Fault::Input(format!("malformed document: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Fault::Input(format!(
            "unsupported schema_version {:?}; expected {SCHEMA_VERSION:?}",
            doc.schema_version
        )));
    }
    Ok(doc)
}

pub fn load(path: &str) -> Result<Loaded, Fault> {
    let doc = parse(&read_source(path)?)?;
    build(doc)
}

fn element(v: &[JInt]) -> GroupElement {
    GroupElement::new(v.iter().map(|x| x.0.clone()).collect())
}

fn input<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> Fault + '_ {
    move |e| Fault::Input(format!("{what}: {e}"))
}

pub fn build(doc: Document) -> Result<Loaded, Fault> {
    let b = &doc.base;
    let n = b.class_group.generators;
    let rows: Vec<Vec<BigInt>> = b
        .class_group
        .relations
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    let rel = IntMatrix::from_rows(n, rows).map_err(input("class_group.relations"))?;
    let cl = FpAbelianGroup::new(n, rel).map_err(input("class_group"))?;

    let divisors: Vec<Divisor> = b.divisors.iter().map(|d| Divisor::new(d.name.clone(), element(&d.class))).collect();
    let mut base = BaseVariety::new(
        cl,
        b.picard.iter().map(|g| element(g)).collect(),
        divisors,
        element(&b.canonical_class),
    )
    .map_err(input("base"))?;
    let index = |name: &str, what: &str| -> Result<usize, Fault> {
        b.divisors
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| Fault::Input(format!("{what} names unknown divisor {name:?}")))
    };
    if let Some(h) = &b.ample_direction {
        base = base.with_ample_direction(element(h)).map_err(input("ample_direction"))?;
    }
    for p in &b.marked_points {
        let m = p.chart.order.to_u64("chart order").map_err(Fault::Input)?;
        let weights = p
            .chart
            .weights
            .iter()
            .map(|w| w.to_u64("chart weight"))
            .collect::<Result<Vec<_>, _>>()
            .map_err(Fault::Input)?;
        let chart = ReducedChart::base(m, weights).map_err(input(&p.name))?;
        let modulus = BigInt::from(m.max(1));
        let restriction = p
            .restriction
            .iter()
            .map(|x| u64::try_from(x.0.mod_floor(&modulus)).expect("residue fits"))
            .collect();
        let mut incident = Vec::new();
        for inc in &p.incident {
            incident.push((index(&inc.divisor, &format!("marked point {}", p.name))?, inc.coordinate));
        }
        base = base
            .with_marked_point(MarkedPoint::new(p.name.clone(), chart, restriction, incident))
            .map_err(input("marked_points"))?;
    }
    for [x, y] in &b.intersections {
        let (i, j) = (index(x, "intersections")?, index(y, "intersections")?);
        base = base.with_intersection(i, j).map_err(input("intersections"))?;
    }

    let mut coeffs = vec![Coefficient::NONE; b.divisors.len()];
    let mut seen = BTreeSet::new();
    for c in &doc.seifert.coefficients {
        let i = index(&c.divisor, "coefficient")?;
        if !seen.insert(i) {
            return Err(Fault::Input(format!("two coefficients for divisor {:?}", c.divisor)));
        }
        let (bv, cv) = (
            c.b.to_u64("coefficient numerator").map_err(Fault::Input)?,
            c.c.to_u64("coefficient denominator").map_err(Fault::Input)?,
        );
        coeffs[i] = Coefficient::new(bv, cv).map_err(input(&c.divisor))?;
    }
    let sd = SeifertData::new(Arc::new(base), element(&doc.seifert.l_class), coeffs).map_err(input("seifert"))?;

    let profile = match &b.profile {
        None => None,
        Some(p) => {
            if p.divisor_pairings.len() != b.divisors.len() {
                return Err(Fault::Input(format!(
                    "profile has {} pairing rows for {} divisors",
                    p.divisor_pairings.len(),
                    b.divisors.len()
                )));
            }
            let t = p.l_pairings.len();
            let rows: Vec<Vec<BigInt>> = p
                .divisor_pairings
                .iter()
                .map(|r| r.iter().map(|x| x.0.clone()).collect())
                .collect();
            let m = IntMatrix::from_rows(t, rows).map_err(input("profile.divisor_pairings"))?;
            let prof = IntersectionProfile::new(m, p.l_pairings.iter().map(|x| x.0.clone()).collect())
                .map_err(input("profile"))?
                .with_hypotheses_asserted(p.hypotheses_asserted);
            Some(prof)
        }
    };
    Ok(Loaded { doc, sd, profile })
}
