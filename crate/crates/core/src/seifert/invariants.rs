use num_traits::ToPrimitive;

use super::{Coefficient, QClass, SeifertData};
use crate::error::{Error, Result};
use crate::exactmath::{gcd_u64, lcm_u64, Int};
use crate::localmodel::least_trivializing_multiple;

/// Coprimality of the multiplicities of a pair of meeting divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub first: usize,
    pub second: usize,
    pub c_first: u64,
    pub c_second: u64,
    pub coprime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck {
    pub point: usize,
    pub name: String,
    /// Every Picard generator restricts to the trivial local class.
    pub picard_locally_trivial: bool,
    /// Branch divisors through the point have pairwise coprime multiplicities.
    pub incident_coprime: bool,
}

impl PointCheck {
    pub fn ok(&self) -> bool {
        self.picard_locally_trivial && self.incident_coprime
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Least `M > 0` with every `M b_i / c_i` integral and
    /// `M [L] + sum (M b_i / c_i) [D_i]` Cartier; `None` when there is none
    /// (or none within the requested bound).
    pub picard_order: Option<Int>,
    pub pairs: Vec<PairCheck>,
    pub points: Vec<PointCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.picard_order.is_some() && self.pairs.iter().all(|p| p.coprime) && self.points.iter().all(PointCheck::ok)
    }

    /// Human-readable reasons for failure; empty when valid.
    pub fn failures(&self, sd: &SeifertData) -> Vec<String> {
        let names = |i: usize| sd.base().divisors()[i].name.clone();
        let mut out = Vec::new();
        if self.picard_order.is_none() {
            out.push("no multiple of the data is Cartier".to_string());
        }
        for p in self.pairs.iter().filter(|p| !p.coprime) {
            out.push(format!(
                "{} and {} meet but gcd({}, {}) != 1",
                names(p.first),
                names(p.second),
                p.c_first,
                p.c_second
            ));
        }
        for p in &self.points {
            if !p.picard_locally_trivial {
                out.push(format!("a Picard generator is not locally trivial at {}", p.name));
            }
            if !p.incident_coprime {
                out.push(format!("branch multiplicities through {} are not coprime", p.name));
            }
        }
        out
    }
}

pub fn validate(sd: &SeifertData) -> Result<ValidationReport> {
    validate_with_bound(sd, None)
}

/// [`validate`] with an optional upper bound on the search for `M`.
pub fn validate_with_bound(sd: &SeifertData, bound: Option<&Int>) -> Result<ValidationReport> {
    let base = sd.base();
    let n = sd.denominator_lcm();
    let x = sd.integral_multiple(n);
    let k = base.class_group().order_modulo(&x, base.picard())?;
    let picard_order = k
        .map(|k| k * Int::from(n))
        .filter(|m| bound.is_none_or(|b| m <= b));

    let coeffs = sd.coefficients();
    let pairs = base
        .intersections()
        .iter()
        .map(|&(i, j)| PairCheck {
            first: i,
            second: j,
            c_first: coeffs[i].c(),
            c_second: coeffs[j].c(),
            coprime: gcd_u64(coeffs[i].c(), coeffs[j].c()) == 1,
        })
        .collect();

    let mut points = Vec::new();
    for (idx, p) in base.marked_points().iter().enumerate() {
        let mut picard_locally_trivial = true;
        for g in base.picard() {
            picard_locally_trivial &= p.restrict(g)? == 0;
        }
        let cs: Vec<u64> = p.incident.iter().map(|&(i, _)| coeffs[i].c()).collect();
        let incident_coprime = cs
            .iter()
            .enumerate()
            .all(|(a, &ca)| cs[a + 1..].iter().all(|&cb| gcd_u64(ca, cb) == 1));
        points.push(PointCheck {
            point: idx,
            name: p.name.clone(),
            picard_locally_trivial,
            incident_coprime,
        });
    }
    Ok(ValidationReport {
        picard_order,
        pairs,
        points,
    })
}

fn require_valid(sd: &SeifertData) -> Result<ValidationReport> {
    let report = validate(sd)?;
    if !report.is_valid() {
        return Err(Error::ValidationRequired(report.failures(sd).join("; ")));
    }
    Ok(report)
}

/// `c_1(Y/X) = [L] + sum (b_i / c_i) [D_i]`, stored over the denominator
/// `lcm(c_i)`.
pub fn chern_class(sd: &SeifertData) -> QClass {
    let n = sd.denominator_lcm();
    QClass::new(sd.integral_multiple(n), Int::from(n)).expect("lcm is positive")
}

/// `Y / mu_M`: `L' = M [L] + sum floor(M b_i / c_i) [D_i]` and
/// `s_i' = frac(M s_i)`. Its Chern class is `M c_1(Y/X)`.
pub fn quotient_by_mu(sd: &SeifertData, m: u64) -> Result<SeifertData> {
    if m == 0 {
        return Err(Error::PreconditionFailed("quotient by mu_0".into()));
    }
    let mut l = sd.l_class().scale(&Int::from(m));
    let mut coeffs = Vec::with_capacity(sd.coefficients().len());
    for (c, d) in sd.coefficients().iter().zip(sd.base().divisors()) {
        let num = m
            .checked_mul(c.b())
            .ok_or_else(|| Error::PreconditionFailed(format!("M = {m} overflows")))?;
        let whole = num / c.c();
        if whole > 0 {
            l = &l + &d.class.scale(&Int::from(whole));
        }
        coeffs.push(Coefficient::fractional(num, c.c()));
    }
    SeifertData::new(sd.base_arc().clone(), l, coeffs)
}

/// Fiber multiplicity over the `point`-th marked point.
pub fn multiplicity_at(sd: &SeifertData, point: usize) -> Result<u64> {
    let p = sd
        .base()
        .marked_points()
        .get(point)
        .ok_or_else(|| Error::dims(format!("marked point {point} does not exist")))?;
    let l = p.restrict(sd.l_class())?;
    let terms: Vec<(u64, u64, u64)> = p
        .incident
        .iter()
        .map(|&(i, j)| {
            let c = sd.coefficients()[i];
            (c.b(), c.c(), p.chart.d()[j] % p.chart.m_red())
        })
        .collect();
    Ok(least_trivializing_multiple(p.chart.m_red(), l, &terms))
}

/// `m(X)` relative to the declared data: the lcm of the branch
/// multiplicities, the marked-point multiplicities and the least Cartier
/// multiple. Equals `m(X)` when the marked points cover all singular points.
pub fn global_order(sd: &SeifertData) -> Result<u64> {
    let report = require_valid(sd)?;
    let picard = report.picard_order.expect("valid report has an order");
    let picard = picard
        .to_u64()
        .ok_or_else(|| Error::PreconditionFailed(format!("global order {picard} exceeds u64")))?;
    let mut m = lcm_u64(sd.denominator_lcm(), picard);
    for p in 0..sd.base().marked_points().len() {
        m = lcm_u64(m, multiplicity_at(sd, p)?);
    }
    Ok(m)
}

/// The integral class `m(X) c_1(Y/X)`: the class of the line bundle of the
/// honest `G_m`-bundle `Y / mu_X`.
pub fn edge_class(sd: &SeifertData) -> Result<crate::exactmath::GroupElement> {
    let m = global_order(sd)?;
    let q = quotient_by_mu(sd, m)?;
    debug_assert!(q.coefficients().iter().all(|c| !c.is_branch()));
    debug_assert!(chern_class(sd)
        .integral_multiple(&Int::from(m))
        .map(|g| g == *q.l_class())
        .unwrap_or(false));
    Ok(q.l_class().clone())
}

/// Quotient by `m(X)` is a genuine `G_m`-bundle: no branch divisors and a
/// Cartier line bundle class.
pub fn is_principal(sd: &SeifertData) -> Result<bool> {
    if sd.coefficients().iter().any(Coefficient::is_branch) {
        return Ok(false);
    }
    let base = sd.base();
    if !base.is_cartier(sd.l_class())? {
        return Ok(false);
    }
    for p in base.marked_points() {
        if p.restrict(sd.l_class())? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn require_validated(sd: &SeifertData) -> Result<()> {
    require_valid(sd).map(|_| ())
}

