//! Local theory near a point with a cyclic quotient singularity.
//!
//! A chart `A^n / mu_M(a_1, .., a_n)` is reduced by dividing out the
//! quasi-reflections: with `c_i = gcd(a_1, .., â_i, .., a_n, M)`,
//! `C = prod c_i` and `d_i = a_i c_i / C` the quotient is isomorphic to
//! `A^n / mu_{M/C}(d_1, .., d_n)`.
//!
//! A local Seifert bundle `G_m x A^n / mu_M(r, a_1, .., a_n)` over that chart
//! corresponds to the data `Y(O_X(l), sum (b_i / c_i) D_i)` where
//! `r = l C + sum a_i b_i (mod M)` with `0 <= b_i < c_i`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{ext_gcd, gcd_u64, lcm_all, FpAbelianGroup, GroupElement};

/// `A^n / mu_M(a_1, .., a_n)` with `gcd(a_1, .., a_n, M) = 1`. Weights are
/// stored reduced into `[0, M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicChart {
    order: u64,
    weights: Vec<u64>,
}

impl CyclicChart {
    pub fn new(order: u64, weights: Vec<u64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidChart("group order must be positive".into()));
        }
        if weights.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        let weights: Vec<u64> = weights.into_iter().map(|a| a % order).collect();
        let g = weights.iter().fold(order, |g, &a| gcd_u64(g, a));
        if g != 1 {
            return Err(Error::InvalidChart(format!(
                "gcd of weights {weights:?} and order {order} is {g}, not 1"
            )));
        }
        Ok(CyclicChart { order, weights })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The chart with every weight multiplied by `s`; isomorphic to `self`
    /// when `gcd(s, M) = 1`.
    pub fn rescaled(&self, s: u64) -> Result<CyclicChart> {
        let m = self.order as u128;
        let weights = self
            .weights
            .iter()
            .map(|&a| ((a as u128 * s as u128) % m) as u64)
            .collect();
        CyclicChart::new(self.order, weights)
    }
}

/// The quasi-reflection-free form `A^n / mu_{m_red}(d_1, .., d_n)` of a
/// chart, together with the orders `c_i` of the quasi-reflection subgroups.
///
/// Invariants: the `c_i` are pairwise coprime, `gcd(d_i, c_i) = 1`,
/// `0 <= d_i < m_red * c_i`, and `gcd(d_1, .., d̂_j, .., d_n, m_red) = 1` for
/// every `j`. A chart of the base itself (no quasi-reflections) has all
/// `c_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedChart {
    m_red: u64,
    c: Vec<u64>,
    d: Vec<u64>,
}

impl ReducedChart {
    pub fn new(m_red: u64, c: Vec<u64>, d: Vec<u64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidChart(msg));
        if m_red == 0 {
            return bad("reduced order must be positive".into());
        }
        if c.len() != d.len() {
            return Err(Error::dims(format!("{} values of c against {} of d", c.len(), d.len())));
        }
        for (i, (&ci, &di)) in c.iter().zip(&d).enumerate() {
            if ci == 0 {
                return bad(format!("c_{i} must be positive"));
            }
            if di >= m_red * ci {
                return bad(format!("d_{i} = {di} is not reduced below m_red * c_{i} = {}", m_red * ci));
            }
            if gcd_u64(di, ci) != 1 {
                return bad(format!("gcd(d_{i}, c_{i}) = gcd({di}, {ci}) is not 1"));
            }
            for (j, &cj) in c.iter().enumerate().skip(i + 1) {
                if gcd_u64(ci, cj) != 1 {
                    return bad(format!("c_{i} = {ci} and c_{j} = {cj} are not coprime"));
                }
            }
            let g = d
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(m_red, |g, (_, &dj)| gcd_u64(g, dj));
            if g != 1 {
                return bad(format!("the weights other than d_{i} share the factor {g} with {m_red}"));
            }
        }
        Ok(ReducedChart { m_red, c, d })
    }

    /// `A^n / mu_m(d)` viewed as a chart of the base: every `c_i = 1`.
    pub fn base(m: u64, weights: Vec<u64>) -> Result<Self> {
        let n = weights.len();
        ReducedChart::new(m, vec![1; n], weights.into_iter().map(|w| if m == 0 { w } else { w % m }).collect())
    }

    pub fn m_red(&self) -> u64 {
        self.m_red
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// `C = prod c_i`.
    pub fn c_product(&self) -> u64 {
        self.c.iter().product()
    }

    /// The unreduced chart `A^n / mu_M(a)` with `M = m_red * C` and
    /// `a_i = d_i C / c_i`.
    pub fn source(&self) -> Result<CyclicChart> {
        let big_c = self.c_product();
        let m = self.m_red * big_c;
        let weights = self
            .c
            .iter()
            .zip(&self.d)
            .map(|(&ci, &di)| (di * (big_c / ci)) % m)
            .collect();
        CyclicChart::new(m, weights).map_err(|e| Error::InvalidLocalData(format!("reconstructed chart is invalid: {e}")))
    }

    /// Is the base chart itself smooth (no residual group)?
    pub fn is_smooth(&self) -> bool {
        self.m_red == 1
    }
}

/// Divides out the quasi-reflections of `chart`.
pub fn reduce_chart(chart: &CyclicChart) -> ReducedChart {
    let m = chart.order;
    let a = &chart.weights;
    let c: Vec<u64> = (0..a.len())
        .map(|i| {
            a.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(m, |g, (_, &aj)| gcd_u64(g, aj))
        })
        .collect();
    let big_c: u64 = c.iter().product();
    let d = a
        .iter()
        .zip(&c)
        .map(|(&ai, &ci)| {
            let num = ai as u128 * ci as u128;
            debug_assert_eq!(num % big_c as u128, 0);
            (num / big_c as u128) as u64
        })
        .collect();
    ReducedChart {
        m_red: m / big_c,
        c,
        d,
    }
}

/// The unique `(l, b)` with `r = l C + sum a_i b_i (mod M)` and
/// `0 <= b_i < c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub l: u64,
    pub b: Vec<u64>,
}

pub fn decompose_residue(chart: &CyclicChart, r: u64) -> Decomposition {
    decompose_with(chart, &reduce_chart(chart), r)
}

fn decompose_with(chart: &CyclicChart, rc: &ReducedChart, r: u64) -> Decomposition {
    let m = chart.order as i128;
    let r = (r as i128).mod_floor(&m);
    let b: Vec<u64> = chart
        .weights
        .iter()
        .zip(&rc.c)
        .map(|(&ai, &ci)| {
            if ci == 1 {
                return 0;
            }
            // a_i is a unit mod c_i since gcd(a, M) = 1 and c_i divides every other weight
            let ci = ci as i128;
            let (g, inv, _) = ext_gcd(ai as i128, ci);
            debug_assert_eq!(g, 1);
            (r * inv).mod_floor(&ci) as u64
        })
        .collect();
    let rest: i128 = chart
        .weights
        .iter()
        .zip(&b)
        .fold(r, |acc, (&ai, &bi)| (acc - ai as i128 * bi as i128).mod_floor(&m));
    let big_c = rc.c_product() as i128;
    debug_assert_eq!(rest % big_c, 0, "C must divide r - sum a_i b_i");
    let l = ((rest / big_c) as u64) % rc.m_red;
    Decomposition { l, b }
}

/// `G_m x A^n / mu_M(r, a_1, .., a_n)`. `r = 0` is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientPresentation {
    r: u64,
    chart: CyclicChart,
}

impl QuotientPresentation {
    pub fn new(r: u64, chart: CyclicChart) -> Self {
        QuotientPresentation {
            r: r % chart.order,
            chart,
        }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn chart(&self) -> &CyclicChart {
        &self.chart
    }

    /// Multiplies `r` and every weight by `s`.
    pub fn rescaled(&self, s: u64) -> Result<QuotientPresentation> {
        let m = self.chart.order as u128;
        let r = ((self.r as u128 * s as u128) % m) as u64;
        Ok(QuotientPresentation::new(r, self.chart.rescaled(s)?))
    }
}

/// `Y(O_X(l), sum (b_i / c_i) D_i)` over a reduced chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalSeifertData {
    reduced: ReducedChart,
    l: u64,
    b: Vec<u64>,
}

impl LocalSeifertData {
    pub fn new(reduced: ReducedChart, l: u64, b: Vec<u64>) -> Result<Self> {
        if b.len() != reduced.dim() {
            return Err(Error::dims(format!("{} values of b for a chart of dimension {}", b.len(), reduced.dim())));
        }
        for (i, (&bi, &ci)) in b.iter().zip(&reduced.c).enumerate() {
            if bi >= ci {
                return Err(Error::InvalidLocalData(format!("b_{i} = {bi} is not below c_{i} = {ci}")));
            }
        }
        let l = l % reduced.m_red;
        Ok(LocalSeifertData { reduced, l, b })
    }

    pub fn reduced(&self) -> &ReducedChart {
        &self.reduced
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// `l C + sum_i (prod_{j != i} c_j) b_i d_i` reduced mod `m_red`: the
    /// local Chern class of `O_X(l C)(sum (C / c_i) b_i D_i)`.
    pub fn integral_local_class(&self) -> u64 {
        let rc = &self.reduced;
        let m = rc.m_red as u128;
        let big_c = rc.c_product() as u128;
        let mut acc = (self.l as u128 * big_c) % m;
        for ((&ci, &di), &bi) in rc.c.iter().zip(&rc.d).zip(&self.b) {
            let term = ((big_c / ci as u128) % m) * (bi as u128 % m) % m * (di as u128 % m) % m;
            acc = (acc + term) % m;
        }
        acc as u64
    }
}

pub fn to_seifert(qp: &QuotientPresentation) -> LocalSeifertData {
    let rc = reduce_chart(&qp.chart);
    let Decomposition { l, b } = decompose_with(&qp.chart, &rc, qp.r);
    LocalSeifertData { reduced: rc, l, b }
}

/// Inverse of [`to_seifert`]: `M = m_red C`, `a_i = d_i C / c_i`,
/// `r = l C + sum a_i b_i (mod M)`.
pub fn to_quotient(lsd: &LocalSeifertData) -> Result<QuotientPresentation> {
    let rc = &lsd.reduced;
    let chart = rc.source()?;
    if reduce_chart(&chart) != *rc {
        return Err(Error::InvalidLocalData(format!(
            "A^{} / mu_{}({:?}) does not reduce back to c = {:?}, d = {:?}",
            chart.dim(), chart.order, chart.weights, rc.c, rc.d
        )));
    }
    let m = chart.order as u128;
    let big_c = rc.c_product() as u128;
    let mut r = (lsd.l as u128 * big_c) % m;
    for (&ai, &bi) in chart.weights.iter().zip(&lsd.b) {
        r = (r + ai as u128 * bi as u128) % m;
    }
    Ok(QuotientPresentation::new(r as u64, chart))
}

/// Smooth total space iff `gcd(r, M) = 1`, or `r = 0` and the base chart is
/// smooth.
pub fn quotient_is_smooth(qp: &QuotientPresentation) -> bool {
    gcd_u64(qp.r, qp.chart.order) == 1 || (qp.r == 0 && reduce_chart(&qp.chart).is_smooth())
}

fn require_reduced_fractions(lsd: &LocalSeifertData) -> Result<()> {
    for (i, (&bi, &ci)) in lsd.b.iter().zip(&lsd.reduced.c).enumerate() {
        if gcd_u64(bi, ci) != 1 {
            return Err(Error::HypothesisNotMet(format!(
                "gcd(b_{i}, c_{i}) = gcd({bi}, {ci}) is not 1"
            )));
        }
    }
    Ok(())
}

fn c_pairwise_coprime(c: &[u64]) -> bool {
    c.iter()
        .enumerate()
        .all(|(i, &ci)| c[i + 1..].iter().all(|&cj| gcd_u64(ci, cj) == 1))
}

/// Smoothness of the total space from the Seifert side: the `c_i` are
/// pairwise coprime and the integral local class
/// `l C + sum (C / c_i) b_i d_i` is a unit mod `m_red`.
///
/// Requires `gcd(b_i, c_i) = 1` for every `i`.
pub fn seifert_is_smooth(lsd: &LocalSeifertData) -> Result<bool> {
    require_reduced_fractions(lsd)?;
    let smooth = c_pairwise_coprime(&lsd.reduced.c) && gcd_u64(lsd.integral_local_class(), lsd.reduced.m_red) == 1;
    debug_assert_eq!(Ok(smooth), seifert_is_smooth_by_generation(lsd));
    Ok(smooth)
}

/// Same verdict as [`seifert_is_smooth`], decided by asking whether the
/// integral local class generates `Cl(X) = Z/m_red`.
pub fn seifert_is_smooth_by_generation(lsd: &LocalSeifertData) -> Result<bool> {
    require_reduced_fractions(lsd)?;
    if !c_pairwise_coprime(&lsd.reduced.c) {
        return Ok(false);
    }
    let group = local_class_group(&lsd.reduced);
    let class = GroupElement::from_i64s(&[lsd.integral_local_class() as i64]);
    group.element_generates(&class)
}

/// `Cl(X) = Z/m_red`, generated by `O_X(1)`.
pub fn local_class_group(rc: &ReducedChart) -> FpAbelianGroup {
    FpAbelianGroup::cyclic(rc.m_red)
}

/// Local Chern class of the `j`-th coordinate divisor: `d_j mod m_red`.
pub fn local_divisor_class(rc: &ReducedChart, j: usize) -> Result<u64> {
    rc.d
        .get(j)
        .map(|&dj| dj % rc.m_red)
        .ok_or_else(|| Error::dims(format!("coordinate {j} of a chart of dimension {}", rc.dim())))
}

/// The residue mod `m_red` of an element of [`local_class_group`].
pub fn local_chern(rc: &ReducedChart, class: &GroupElement) -> Result<u64> {
    let group = local_class_group(rc);
    group.check(class)?;
    let m = num_bigint::BigInt::from(rc.m_red);
    let v = class.coords()[0].mod_floor(&m);
    Ok(u64::try_from(v).expect("residue below a u64 modulus"))
}

/// Smallest `N > 0` such that `N b_i / c_i` is integral for every term and
/// `N l + sum (N b_i / c_i) d_i = 0 (mod m)`. Terms are `(b, c, d)`.
///
/// This is the fiber multiplicity over a point whose local class group is
/// `Z/m`, with `l` the local class of `L` and `d` the local classes of the
/// branch divisors through the point.
pub fn least_trivializing_multiple(m: u64, l: u64, terms: &[(u64, u64, u64)]) -> u64 {
    let n = lcm_all(terms.iter().map(|&(b, c, _)| c / gcd_u64(b, c)));
    let m128 = m as u128;
    let mut x = (n as u128 % m128) * (l as u128 % m128) % m128;
    for &(b, c, d) in terms {
        // exact: c / gcd(b, c) divides n
        let k = n as u128 * b as u128 / c as u128;
        x = (x + (k % m128) * (d as u128 % m128)) % m128;
    }
    n * (m / gcd_u64(x as u64, m))
}

/// Multiplicity of the fiber over the chart center.
pub fn multiplicity_at_center(lsd: &LocalSeifertData) -> u64 {
    let rc = &lsd.reduced;
    let terms: Vec<(u64, u64, u64)> = lsd
        .b
        .iter()
        .zip(&rc.c)
        .zip(&rc.d)
        .map(|((&b, &c), &d)| (b, c, d))
        .collect();
    least_trivializing_multiple(rc.m_red, lsd.l, &terms)
}
