use std::fmt;

use num_traits::{Signed, Zero};

use super::invariants::chern_class;
use super::SeifertData;
use crate::error::{Error, Result};
use crate::exactmath::{Int, Rat};

/// Which section of the compactification `Ȳ` contracts to a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContractionType {
    /// `c_1(Y/X)` is negative.
    ZeroSectionContractible,
    /// `c_1(Y/X)` is positive.
    InfinitySectionContractible,
    /// `c_1(Y/X)` is zero or torsion.
    Neither,
    /// No declared ample direction, or `Cl(X)` has free rank other than one.
    Undecidable,
}

impl fmt::Display for ContractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractionType::ZeroSectionContractible => "zero-section",
            ContractionType::InfinitySectionContractible => "infinity-section",
            ContractionType::Neither => "neither",
            ContractionType::Undecidable => "undecidable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Undecidable,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::Undecidable => "undecidable",
        })
    }
}

/// Ample direction's free coordinate (±1) and the free coordinate of a
/// class, both over a rank-one base.
fn ample_sign(sd: &SeifertData) -> Result<Option<Int>> {
    let base = sd.base();
    match base.ample_direction() {
        Some(h) if base.rank_one_free() => Ok(Some(base.free_coordinate(h)?)),
        _ => Ok(None),
    }
}

/// Sign of `c_1(Y/X)` against the declared ample generator.
pub fn contraction_type(sd: &SeifertData) -> Result<ContractionType> {
    let Some(h) = ample_sign(sd)? else {
        return Ok(ContractionType::Undecidable);
    };
    let c1 = chern_class(sd);
    let x = sd.base().free_coordinate(c1.numerator())? * h;
    Ok(if x.is_zero() {
        ContractionType::Neither
    } else if x.is_positive() {
        ContractionType::InfinitySectionContractible
    } else {
        ContractionType::ZeroSectionContractible
    })
}

/// Singularity class of the cone `0 ∈ W` obtained by contracting the
/// infinity section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityPredicates {
    /// `K_W` is Q-Cartier: `K_X + Δ` is a rational multiple of `c_1`.
    pub q_cartier: Verdict,
    /// `-(K_X + Δ)` is ample.
    pub log_terminal: Verdict,
    /// `(K_X + Δ) / c_1(Y/X)` when it exists.
    pub ratio: Option<Rat>,
    /// Free coordinate of `K_X + Δ` along the ample generator.
    pub log_canonical_degree: Option<Rat>,
}

impl SingularityPredicates {
    fn undecidable() -> Self {
        SingularityPredicates {
            q_cartier: Verdict::Undecidable,
            log_terminal: Verdict::Undecidable,
            ratio: None,
            log_canonical_degree: None,
        }
    }
}

/// Requires `c_1(Y/X)` positive (the cone exists); `Undecidable` verdicts
/// when the base is not rank one with a declared ample generator.
pub fn singularity_predicates(sd: &SeifertData) -> Result<SingularityPredicates> {
    match contraction_type(sd)? {
        ContractionType::Undecidable => return Ok(SingularityPredicates::undecidable()),
        ContractionType::InfinitySectionContractible => {}
        other => {
            return Err(Error::PreconditionFailed(format!(
                "c_1(Y/X) must be positive for the cone to exist (contraction type {other})"
            )))
        }
    }
    let base = sd.base();
    let h = ample_sign(sd)?.expect("rank one with ample direction");
    let free = |g| -> Result<Rat> { Ok(Rat::from_integer(base.free_coordinate(g)? * &h)) };

    let mut kx_delta = free(base.canonical())?;
    for (i, w) in sd.orbifold_divisor() {
        kx_delta += w * free(&base.divisors()[i].class)?;
    }
    let c1 = chern_class(sd);
    let c1_free = free(c1.numerator())? / Rat::from_integer(c1.denominator().clone());
    // c1 is positive here, so every rank-one class is a multiple of it
    let ratio = &kx_delta / &c1_free;
    Ok(SingularityPredicates {
        q_cartier: Verdict::Holds,
        log_terminal: Verdict::from((-&kx_delta).is_positive()),
        ratio: Some(ratio),
        log_canonical_degree: Some(kx_delta),
    })
}
