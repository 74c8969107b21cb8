use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{FpAbelianGroup, GroupElement, Int};
use crate::localmodel::ReducedChart;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub name: String,
    pub class: GroupElement,
}

impl Divisor {
    pub fn new(name: impl Into<String>, class: GroupElement) -> Self {
        Divisor {
            name: name.into(),
            class,
        }
    }
}

/// A point of the base with a cyclic quotient chart `A^n / mu_m(d)`.
///
/// `restriction` sends each generator of `Cl(X)` to its local class in
/// `Z/m`; `incident` pairs a global divisor index with the coordinate
/// hyperplane it restricts to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint {
    pub name: String,
    pub chart: ReducedChart,
    pub restriction: Vec<u64>,
    pub incident: Vec<(usize, usize)>,
}

impl MarkedPoint {
    pub fn new(
        name: impl Into<String>,
        chart: ReducedChart,
        restriction: Vec<u64>,
        incident: Vec<(usize, usize)>,
    ) -> Self {
        MarkedPoint {
            name: name.into(),
            chart,
            restriction,
            incident,
        }
    }

    /// Local class of `g` in `Z/m`.
    pub fn restrict(&self, g: &GroupElement) -> Result<u64> {
        if g.len() != self.restriction.len() {
            return Err(Error::dims(format!(
                "class with {} coordinates restricted at {} ({} generators)",
                g.len(),
                self.name,
                self.restriction.len()
            )));
        }
        let m = Int::from(self.chart.m_red());
        let v: Int = g
            .coords()
            .iter()
            .zip(&self.restriction)
            .map(|(x, &r)| x * Int::from(r))
            .sum();
        Ok(u64::try_from(v.mod_floor(&m)).expect("residue fits"))
    }

    /// Divisor index -> chart coordinate, if the divisor passes through the point.
    pub fn coordinate_of(&self, divisor: usize) -> Option<usize> {
        self.incident.iter().find(|&&(i, _)| i == divisor).map(|&(_, j)| j)
    }
}

/// The base `X` as far as the invariants need it: `Cl(X)` with its Picard
/// subgroup, the named prime divisors, `K_X`, an optional ample generator
/// (rank one only), marked singular points and the intersecting divisor
/// pairs.
///
/// Results are only faithful when the marked points include every singular
/// point of `X` and every point where branch divisors meet.
#[derive(Debug, Clone)]
pub struct BaseVariety {
    class_group: FpAbelianGroup,
    picard: Vec<GroupElement>,
    divisors: Vec<Divisor>,
    canonical: GroupElement,
    ample: Option<GroupElement>,
    marked_points: Vec<MarkedPoint>,
    intersections: Vec<(usize, usize)>,
}

impl BaseVariety {
    pub fn new(
        class_group: FpAbelianGroup,
        picard: Vec<GroupElement>,
        divisors: Vec<Divisor>,
        canonical: GroupElement,
    ) -> Result<Self> {
        for g in &picard {
            class_group.check(g)?;
        }
        for d in &divisors {
            class_group.check(&d.class)?;
        }
        class_group.check(&canonical)?;
        let mut seen = std::collections::BTreeSet::new();
        for d in &divisors {
            if !seen.insert(d.name.as_str()) {
                return Err(Error::InvalidBase(format!("divisor name {} is used twice", d.name)));
            }
        }
        Ok(BaseVariety {
            class_group,
            picard,
            divisors,
            canonical,
            ample: None,
            marked_points: Vec::new(),
            intersections: Vec::new(),
        })
    }

    /// Declares `g` ample. Requires `Cl(X)` of free rank one with `g`
    /// generating `Cl(X)/torsion`.
    pub fn with_ample_direction(mut self, g: GroupElement) -> Result<Self> {
        self.class_group.check(&g)?;
        if self.class_group.free_rank() != 1 {
            return Err(Error::InvalidBase(format!(
                "an ample direction needs Cl(X)/torsion of rank 1, got {}",
                self.class_group.free_rank()
            )));
        }
        let free = self.class_group.free_coordinates(&g)?;
        if free[0] != Int::from(1) && free[0] != Int::from(-1) {
            return Err(Error::InvalidBase(format!(
                "ample direction {g} is {} times a generator of Cl(X)/torsion",
                free[0]
            )));
        }
        self.ample = Some(g);
        Ok(self)
    }

    pub fn with_marked_point(mut self, p: MarkedPoint) -> Result<Self> {
        self.check_point(&p)?;
        self.marked_points.push(p);
        Ok(self)
    }

    /// Flags `D_i` and `D_j` as meeting.
    pub fn with_intersection(mut self, i: usize, j: usize) -> Result<Self> {
        let n = self.divisors.len();
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidBase(format!("intersection ({i}, {j}) among {n} divisors")));
        }
        let pair = (i.min(j), i.max(j));
        if !self.intersections.contains(&pair) {
            self.intersections.push(pair);
        }
        Ok(self)
    }

    fn check_point(&self, p: &MarkedPoint) -> Result<()> {
        let fault = |msg: String| Err(Error::InvalidBase(format!("marked point {}: {msg}", p.name)));
        if p.chart.c().iter().any(|&c| c != 1) {
            return fault("the chart of a base point must be free of quasi-reflections".into());
        }
        if p.restriction.len() != self.class_group.num_generators() {
            return fault(format!(
                "restriction has {} entries for {} generators",
                p.restriction.len(),
                self.class_group.num_generators()
            ));
        }
        for row in self.class_group.relations().row_iter() {
            let rel = GroupElement::new(row.to_vec());
            if p.restrict(&rel)? != 0 {
                return fault(format!("restriction does not kill the relation {rel}"));
            }
        }
        let mut coords = std::collections::BTreeSet::new();
        for &(i, j) in &p.incident {
            let Some(d) = self.divisors.get(i) else {
                return fault(format!("divisor index {i} out of range"));
            };
            if j >= p.chart.dim() {
                return fault(format!("coordinate {j} out of range"));
            }
            if !coords.insert(j) {
                return fault(format!("coordinate {j} carries two divisors"));
            }
            let local = p.restrict(&d.class)?;
            let expected = p.chart.d()[j] % p.chart.m_red();
            if local != expected {
                return fault(format!(
                    "{} restricts to {local} but coordinate {j} has class {expected}",
                    d.name
                ));
            }
        }
        Ok(())
    }

    pub fn class_group(&self) -> &FpAbelianGroup {
        &self.class_group
    }

    pub fn picard(&self) -> &[GroupElement] {
        &self.picard
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn divisor_index(&self, name: &str) -> Option<usize> {
        self.divisors.iter().position(|d| d.name == name)
    }

    pub fn canonical(&self) -> &GroupElement {
        &self.canonical
    }

    pub fn ample_direction(&self) -> Option<&GroupElement> {
        self.ample.as_ref()
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked_points
    }

    pub fn intersections(&self) -> &[(usize, usize)] {
        &self.intersections
    }

    /// Is `g` in the Picard subgroup?
    pub fn is_cartier(&self, g: &GroupElement) -> Result<bool> {
        self.class_group.subgroup_membership(g, &self.picard)
    }

    pub(crate) fn rank_one_free(&self) -> bool {
        self.class_group.free_rank() == 1
    }

    pub(crate) fn free_coordinate(&self, g: &GroupElement) -> Result<Int> {
        let mut free = self.class_group.free_coordinates(g)?;
        Ok(free.pop().unwrap_or_else(Int::zero))
    }
}
