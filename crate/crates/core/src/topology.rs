//! Abelian topological invariants of Seifert `C*`-bundles.
//!
//! The `H_1` presentations assume the base is a complex manifold with
//! `H_1(X, Z) = 0` and the divisors are smooth and meet transversally. None
//! of that is checked here: callers assert it (see
//! [`IntersectionProfile::hypotheses_asserted`]) and reports echo the flag.
//! Torsion in `H_2(X, Z)` pairs trivially and is left out of the profile.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{cokernel, lcm_all, FpAbelianGroup, Int, IntMatrix, Rat};
use crate::seifert::{chern_class, BaseVariety, Coefficient, QClass, SeifertData};

pub use crate::seifert::edge_class;

/// Pairings of the divisors and of `c_1(L)` with a basis `η_1, .., η_t` of
/// `H_2(X, Z)` modulo torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    h2_rank: usize,
    /// Row `i`, column `k`: `[D_i] · η_k`.
    divisor_pairings: IntMatrix,
    /// `c_1(L) · η_k`.
    l_pairings: Vec<Int>,
    hypotheses_asserted: bool,
}

impl IntersectionProfile {
    pub fn new(divisor_pairings: IntMatrix, l_pairings: Vec<Int>) -> Result<Self> {
        let h2_rank = l_pairings.len();
        if divisor_pairings.cols() != h2_rank {
            return Err(Error::dims(format!(
                "divisor pairings have {} columns but H_2 has rank {h2_rank}",
                divisor_pairings.cols()
            )));
        }
        Ok(IntersectionProfile {
            h2_rank,
            divisor_pairings,
            l_pairings,
            hypotheses_asserted: false,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64s(divisor_pairings: &[Vec<i64>], l_pairings: &[i64]) -> Result<Self> {
        let m = IntMatrix::from_rows(l_pairings.len(), divisor_pairings.iter().cloned())?;
        IntersectionProfile::new(m, l_pairings.iter().map(|&x| Int::from(x)).collect())
    }

    /// Records that the caller vouches for the smoothness, `H_1(X) = 0` and
    /// transversality hypotheses.
    pub fn with_hypotheses_asserted(mut self, asserted: bool) -> Self {
        self.hypotheses_asserted = asserted;
        self
    }

    pub fn h2_rank(&self) -> usize {
        self.h2_rank
    }

    pub fn num_divisors(&self) -> usize {
        self.divisor_pairings.rows()
    }

    pub fn divisor_pairings(&self) -> &IntMatrix {
        &self.divisor_pairings
    }

    pub fn l_pairings(&self) -> &[Int] {
        &self.l_pairings
    }

    pub fn hypotheses_asserted(&self) -> bool {
        self.hypotheses_asserted
    }

    /// The profile of the same base with `c_1(L)` replaced by `l_pairings`.
    pub fn with_l_pairings(&self, l_pairings: Vec<Int>) -> Result<Self> {
        let mut p = IntersectionProfile::new(self.divisor_pairings.clone(), l_pairings)?;
        p.hypotheses_asserted = self.hypotheses_asserted;
        Ok(p)
    }

    fn check_divisors(&self, n: usize) -> Result<()> {
        if n != self.num_divisors() {
            return Err(Error::dims(format!(
                "{n} multiplicities for a profile with {} divisors",
                self.num_divisors()
            )));
        }
        Ok(())
    }
}

/// Relations of `H_1^orb` on generators `g_1, .., g_n`: `c_i g_i = 0` and
/// `sum_i ([D_i] · η_k) g_i = 0` for each basis class `η_k`.
pub fn h1_orb_relations(profile: &IntersectionProfile, c: &[u64]) -> Result<IntMatrix> {
    profile.check_divisors(c.len())?;
    let n = c.len();
    let mut rel = IntMatrix::zeros(0, n);
    for (i, &ci) in c.iter().enumerate() {
        let mut row = vec![Int::zero(); n];
        row[i] = Int::from(ci);
        rel.push_row(row)?;
    }
    for k in 0..profile.h2_rank {
        let row = (0..n).map(|i| profile.divisor_pairings[(i, k)].clone()).collect();
        rel.push_row(row)?;
    }
    Ok(rel)
}

pub fn h1_orb(profile: &IntersectionProfile, c: &[u64]) -> Result<FpAbelianGroup> {
    Ok(cokernel(&h1_orb_relations(profile, c)?))
}

/// Relations of `H_1(Y)` on generators `k, g_1, .., g_n`:
/// `c_i g_i + b_i k = 0` and `(c_1(L) · η) k - sum_i ([D_i] · η) g_i = 0`.
pub fn h1_y_relations(profile: &IntersectionProfile, coeffs: &[(u64, u64)]) -> Result<IntMatrix> {
    profile.check_divisors(coeffs.len())?;
    let n = coeffs.len();
    let mut rel = IntMatrix::zeros(0, n + 1);
    for (i, &(b, c)) in coeffs.iter().enumerate() {
        let mut row = vec![Int::zero(); n + 1];
        row[0] = Int::from(b);
        row[i + 1] = Int::from(c);
        rel.push_row(row)?;
    }
    for k in 0..profile.h2_rank {
        let mut row = vec![profile.l_pairings[k].clone()];
        row.extend((0..n).map(|i| -&profile.divisor_pairings[(i, k)]));
        rel.push_row(row)?;
    }
    Ok(rel)
}

pub fn h1_y(profile: &IntersectionProfile, coeffs: &[(u64, u64)]) -> Result<FpAbelianGroup> {
    Ok(cokernel(&h1_y_relations(profile, coeffs)?))
}

/// `H_1(Y)` for Seifert data whose divisors match the profile's rows.
pub fn h1_of(sd: &SeifertData, profile: &IntersectionProfile) -> Result<FpAbelianGroup> {
    let coeffs: Vec<(u64, u64)> = sd.coefficients().iter().map(|c| (c.b(), c.c())).collect();
    h1_y(profile, &coeffs)
}

/// Generator `m(U)` of the image of `H^0(U, R^1 f_* Z)` in `H^0(U, Z)`: the
/// lcm of the fiber multiplicities over `U`.
pub fn section_lattice(multiplicities: &[u64]) -> Result<u64> {
    if multiplicities.is_empty() {
        return Err(Error::PreconditionFailed("section lattice of no fibers".into()));
    }
    if multiplicities.contains(&0) {
        return Err(Error::PreconditionFailed("multiplicities are positive".into()));
    }
    Ok(lcm_all(multiplicities.iter().copied()))
}

/// Rational Betti numbers `b_0, .., b_{2n}` of `X` and caller-supplied
/// flags `c_1^k != 0` in `H^{2k}(X, Q)` for `k = 1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiData {
    betti: Vec<u64>,
    c1_power_nonzero: Vec<bool>,
}

impl BettiData {
    pub fn new(betti: Vec<u64>, c1_power_nonzero: Vec<bool>) -> Result<Self> {
        if betti.len().is_multiple_of(2) {
            return Err(Error::PreconditionFailed(format!(
                "{} Betti numbers; expected b_0..b_2n",
                betti.len()
            )));
        }
        if betti[0] != 1 {
            return Err(Error::PreconditionFailed(format!("b_0 = {} for a connected base", betti[0])));
        }
        let n = betti.len() / 2;
        if c1_power_nonzero.len() != n {
            return Err(Error::dims(format!("{} power flags for complex dimension {n}", c1_power_nonzero.len())));
        }
        Ok(BettiData { betti, c1_power_nonzero })
    }

    pub fn complex_dim(&self) -> usize {
        self.betti.len() / 2
    }

    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    pub fn c1_power_nonzero(&self) -> &[bool] {
        &self.c1_power_nonzero
    }
}

/// `Y` is a rational homology sphere iff `H^*(X, Q) = Q[c_1]/(c_1^{n+1})`:
/// even Betti numbers all 1, odd ones 0, and `c_1^k != 0` for `k = 1..n`.
pub fn qhs_check(betti: &BettiData, c1_nonzero: bool) -> bool {
    let shape = betti
        .betti
        .iter()
        .enumerate()
        .all(|(i, &b)| if i % 2 == 0 { b == 1 } else { b == 0 });
    shape && (betti.complex_dim() == 0 || c1_nonzero) && betti.c1_power_nonzero.iter().all(|&f| f)
}

/// Recovers `([L], b_i)` from `c_1(Y/X)` and the multiplicities `c_i`.
///
/// Needs `Cl(X) = Z` and `H_1^orb(X, Δ) = 0`; otherwise the answer need not
/// be unique and the call is refused. Returns `None` when no candidate has
/// the requested Chern class.
pub fn reconstruct_from_chern(
    base: &Arc<BaseVariety>,
    profile: &IntersectionProfile,
    denominators: &[u64],
    target: &QClass,
) -> Result<Option<SeifertData>> {
    let cl = base.class_group();
    if cl.free_rank() != 1 || !cl.torsion().is_empty() {
        return Err(Error::Undecidable(format!("reconstruction needs Cl(X) = ℤ, got {cl}")));
    }
    if denominators.len() != base.divisors().len() {
        return Err(Error::dims(format!(
            "{} denominators for {} divisors",
            denominators.len(),
            base.divisors().len()
        )));
    }
    if denominators.contains(&0) {
        return Err(Error::PreconditionFailed("multiplicities are positive".into()));
    }
    let orb = h1_orb(profile, denominators)?;
    if !orb.is_trivial() {
        return Err(Error::AmbiguityPossible(format!("H_1^orb(X, Δ) = {orb}")));
    }
    cl.check(target.numerator())?;

    let coord = |g| -> Result<Int> { Ok(cl.free_coordinates(g)?.remove(0)) };
    let tau = Rat::new(coord(target.numerator())?, target.denominator().clone());
    let degrees: Vec<Int> = base
        .divisors()
        .iter()
        .map(|d| coord(&d.class))
        .collect::<Result<_>>()?;

    let mut found: Option<(Int, Vec<u64>)> = None;
    let mut b = vec![0u64; denominators.len()];
    loop {
        let mut rest = tau.clone();
        for ((&bi, &ci), deg) in b.iter().zip(denominators).zip(&degrees) {
            rest -= Rat::new(Int::from(bi) * deg, Int::from(ci));
        }
        if rest.is_integer() {
            if found.is_some() {
                return Err(Error::AmbiguityPossible("two candidates share the Chern class".into()));
            }
            found = Some((rest.to_integer(), b.clone()));
        }
        // odometer over 0 <= b_i < c_i
        let mut i = 0;
        while i < b.len() {
            b[i] += 1;
            if b[i] < denominators[i] {
                break;
            }
            b[i] = 0;
            i += 1;
        }
        if i == b.len() {
            break;
        }
    }

    let Some((l, b)) = found else { return Ok(None) };
    let l_class = cl.from_normal_coordinates(&[l])?;
    let coeffs = b
        .iter()
        .zip(denominators)
        .map(|(&bi, &ci)| Coefficient::fractional(bi, ci))
        .collect();
    let sd = SeifertData::new(base.clone(), l_class, coeffs)?;
    debug_assert!(chern_class(&sd).rationally_equal(target, cl).unwrap_or(false));
    Ok(Some(sd))
}

/// `c_1(Y/X) · η_k` for each basis class, as exact rationals.
pub fn chern_pairings(sd: &SeifertData, profile: &IntersectionProfile) -> Result<Vec<Rat>> {
    profile.check_divisors(sd.coefficients().len())?;
    Ok((0..profile.h2_rank)
        .map(|k| {
            let mut acc = Rat::from_integer(profile.l_pairings[k].clone());
            for (i, c) in sd.coefficients().iter().enumerate() {
                acc += c.as_rat() * Rat::from_integer(profile.divisor_pairings[(i, k)].clone());
            }
            acc
        })
        .collect())
}
