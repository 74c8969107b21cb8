#![allow(dead_code)]

use std::sync::Arc;

use seifert_core::exactmath::{FpAbelianGroup, GroupElement};
use seifert_core::localmodel::{ReducedChart};
use seifert_core::seifert::{BaseVariety, Coefficient, Divisor, MarkedPoint, SeifertData};
use seifert_core::topology::IntersectionProfile;

pub fn el(c: &[i64]) -> GroupElement {
    GroupElement::from_i64s(c)
}

/// P^1 with `k` marked points of degree one, Cl = Pic = Z, K = -2H, H ample.
pub fn projective_line(k: usize) -> BaseVariety {
    let divisors = (1..=k).map(|i| Divisor::new(format!("P{i}"), el(&[1]))).collect();
    BaseVariety::new(FpAbelianGroup::free(1), vec![el(&[1])], divisors, el(&[-2]))
        .unwrap()
        .with_ample_direction(el(&[1]))
        .unwrap()
}

/// P^2 with curves of the given degrees, K = -3H.
pub fn projective_plane(degrees: &[i64]) -> BaseVariety {
    let divisors = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Divisor::new(format!("C{}", i + 1), el(&[d])))
        .collect();
    BaseVariety::new(FpAbelianGroup::free(1), vec![el(&[1])], divisors, el(&[-3]))
        .unwrap()
        .with_ample_direction(el(&[1]))
        .unwrap()
}

pub fn p1_profile(k: usize, l_degree: i64) -> IntersectionProfile {
    IntersectionProfile::from_i64s(&vec![vec![1]; k], &[l_degree]).unwrap()
}

/// The worked example: P^1, L = O(-1), branch 1/2 and 2/3.
pub fn p1_fixture() -> SeifertData {
    let base = Arc::new(projective_line(2));
    SeifertData::new(
        base,
        el(&[-1]),
        vec![Coefficient::new(1, 2).unwrap(), Coefficient::new(2, 3).unwrap()],
    )
    .unwrap()
}

/// A^1 with the origin as its only divisor; Cl = 0.
pub fn affine_line() -> BaseVariety {
    BaseVariety::new(FpAbelianGroup::free(0), vec![], vec![Divisor::new("origin", el(&[]))], el(&[])).unwrap()
}

/// P^1 carrying one extra marked point with local class group Z/5; the
/// base has Cl = Z generated by H, restricting to 1 at the point.
pub fn base_with_z5_point() -> BaseVariety {
    let chart = ReducedChart::base(5, vec![1, 1]).unwrap();
    let p = MarkedPoint::new("q", chart, vec![1], vec![]);
    BaseVariety::new(FpAbelianGroup::free(1), vec![el(&[5])], vec![], el(&[-2]))
        .unwrap()
        .with_marked_point(p)
        .unwrap()
}

/// Cl = Z + Z/2 on generators H, T with Pic = <H>; divisors A = H + T and
/// B = H.
pub fn base_with_torsion() -> BaseVariety {
    use seifert_core::exactmath::IntMatrix;
    let cl = FpAbelianGroup::new(2, IntMatrix::from_rows(2, vec![vec![0, 2]]).unwrap()).unwrap();
    BaseVariety::new(
        cl,
        vec![el(&[1, 0])],
        vec![Divisor::new("A", el(&[1, 1])), Divisor::new("B", el(&[1, 0]))],
        el(&[-2, 0]),
    )
    .unwrap()
}

pub mod random {
    use super::*;
    use num_integer::Integer;
    use rand::Rng;

    /// A coefficient with denominator at most `max_c`, branch or not.
    pub fn coefficient(rng: &mut impl Rng, max_c: u64) -> Coefficient {
        let c = rng.gen_range(1..=max_c);
        let b = rng.gen_range(0..c);
        Coefficient::fractional(b, c)
    }

    /// Denominators pairwise coprime, as needed when divisors meet.
    pub fn coprime_coefficients(rng: &mut impl Rng, n: usize, max_c: u64) -> Vec<Coefficient> {
        loop {
            let cs: Vec<Coefficient> = (0..n).map(|_| coefficient(rng, max_c)).collect();
            let ok = (0..n).all(|i| (i + 1..n).all(|j| cs[i].c().gcd(&cs[j].c()) == 1));
            if ok {
                return cs;
            }
        }
    }

    /// Valid data over one of a handful of bases.
    pub fn seifert_data(rng: &mut impl Rng) -> SeifertData {
        let l = rng.gen_range(-6i64..=6);
        match rng.gen_range(0..4) {
            0 => {
                let k = rng.gen_range(0..=3);
                let coeffs = (0..k).map(|_| coefficient(rng, 12)).collect();
                SeifertData::new(Arc::new(projective_line(k)), el(&[l]), coeffs).unwrap()
            }
            1 => {
                let k = rng.gen_range(1..=3);
                let degrees: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
                let mut base = projective_plane(&degrees);
                for i in 0..k {
                    for j in i + 1..k {
                        base = base.with_intersection(i, j).unwrap();
                    }
                }
                let coeffs = coprime_coefficients(rng, k, 9);
                SeifertData::new(Arc::new(base), el(&[l]), coeffs).unwrap()
            }
            2 => {
                let t = rng.gen_range(0..2);
                let coeffs = (0..2).map(|_| coefficient(rng, 10)).collect();
                SeifertData::new(Arc::new(base_with_torsion()), el(&[l, t]), coeffs).unwrap()
            }
            _ => SeifertData::new(Arc::new(base_with_z5_point()), el(&[l]), vec![]).unwrap(),
        }
    }
}
