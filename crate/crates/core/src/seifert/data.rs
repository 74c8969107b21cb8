use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BaseVariety;
use crate::error::{Error, Result};
use crate::exactmath::{gcd_u64, lcm_all, FpAbelianGroup, GroupElement, Int, Rat};

/// The coefficient `b / c` of a divisor, in lowest terms with `0 <= b < c`.
/// `0/1` marks a divisor outside the branch locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coefficient {
    b: u64,
    c: u64,
}

impl Coefficient {
    pub const NONE: Coefficient = Coefficient { b: 0, c: 1 };

    pub fn new(b: u64, c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidSeifertData("coefficient denominator must be positive".into()));
        }
        if b >= c {
            return Err(Error::InvalidSeifertData(format!("coefficient {b}/{c} is not in [0, 1)")));
        }
        if gcd_u64(b, c) != 1 {
            return Err(Error::InvalidSeifertData(format!("coefficient {b}/{c} is not in lowest terms")));
        }
        Ok(Coefficient { b, c })
    }

    /// The fractional part of `num / den` as a coefficient.
    pub fn fractional(num: u64, den: u64) -> Self {
        let b = num % den;
        let g = gcd_u64(b, den);
        Coefficient { b: b / g, c: den / g }
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn is_branch(&self) -> bool {
        self.c > 1
    }

    pub fn as_rat(&self) -> Rat {
        Rat::new(Int::from(self.b), Int::from(self.c))
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.b, self.c)
    }
}

/// `Y(L, sum s_i D_i)`: the class `[L]` and one coefficient per divisor of
/// the base (divisors outside the branch locus carry `0/1`).
#[derive(Debug, Clone)]
pub struct SeifertData {
    base: Arc<BaseVariety>,
    l_class: GroupElement,
    coeffs: Vec<Coefficient>,
}

impl SeifertData {
    pub fn new(base: Arc<BaseVariety>, l_class: GroupElement, coeffs: Vec<Coefficient>) -> Result<Self> {
        base.class_group().check(&l_class)?;
        if coeffs.len() != base.divisors().len() {
            return Err(Error::dims(format!(
                "{} coefficients for {} divisors",
                coeffs.len(),
                base.divisors().len()
            )));
        }
        Ok(SeifertData { base, l_class, coeffs })
    }

    /// The trivial bundle `G_m x X`.
    pub fn trivial(base: Arc<BaseVariety>) -> Self {
        let l_class = base.class_group().zero();
        let coeffs = vec![Coefficient::NONE; base.divisors().len()];
        SeifertData { base, l_class, coeffs }
    }

    pub fn base(&self) -> &BaseVariety {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<BaseVariety> {
        &self.base
    }

    pub fn l_class(&self) -> &GroupElement {
        &self.l_class
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coeffs
    }

    /// Indices of divisors with `c > 1`.
    pub fn branch_indices(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i].is_branch()).collect()
    }

    /// `lcm(c_i)` over all divisors.
    pub fn denominator_lcm(&self) -> u64 {
        lcm_all(self.coeffs.iter().map(Coefficient::c))
    }

    /// The branch divisor `sum (1 - 1/c_i) D_i`, as (divisor index, weight).
    pub fn orbifold_divisor(&self) -> Vec<(usize, Rat)> {
        self.branch_indices()
            .into_iter()
            .map(|i| (i, Rat::one() - Rat::new(Int::one(), Int::from(self.coeffs[i].c()))))
            .collect()
    }

    /// `k [L] + sum (k b_i / c_i) [D_i]` for `k` divisible by every `c_i`.
    pub(crate) fn integral_multiple(&self, k: u64) -> GroupElement {
        let mut acc = self.l_class.scale(&Int::from(k));
        for (c, d) in self.coeffs.iter().zip(self.base.divisors()) {
            debug_assert_eq!(k % c.c(), 0);
            let m = Int::from(k / c.c() * c.b());
            if !m.is_zero() {
                acc = &acc + &d.class.scale(&m);
            }
        }
        acc
    }
}

/// `numerator / denominator` in `Cl(X) ⊗ Q`. The numerator is kept as an
/// honest class of `Cl(X)`, so integral multiples retain torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QClass {
    numerator: GroupElement,
    denominator: Int,
}

impl QClass {
    pub fn new(numerator: GroupElement, denominator: Int) -> Result<Self> {
        if !denominator.is_positive() {
            return Err(Error::InvalidSeifertData(format!("denominator {denominator} is not positive")));
        }
        Ok(QClass { numerator, denominator })
    }

    pub fn integral(g: GroupElement) -> Self {
        QClass {
            numerator: g,
            denominator: Int::one(),
        }
    }

    pub fn numerator(&self) -> &GroupElement {
        &self.numerator
    }

    pub fn denominator(&self) -> &Int {
        &self.denominator
    }

    pub fn scaled(&self, k: &Int) -> QClass {
        QClass {
            numerator: self.numerator.scale(k),
            denominator: self.denominator.clone(),
        }
    }

    /// `k * self` as an integral class, when the denominator divides `k`.
    pub fn integral_multiple(&self, k: &Int) -> Option<GroupElement> {
        k.is_multiple_of(&self.denominator)
            .then(|| self.numerator.scale(&(k / &self.denominator)))
    }

    /// Cross-multiplied equality in `Cl(X)` (torsion included).
    pub fn equals_in(&self, other: &QClass, group: &FpAbelianGroup) -> Result<bool> {
        let lhs = self.numerator.scale(&other.denominator);
        let rhs = other.numerator.scale(&self.denominator);
        group.equal(&lhs, &rhs)
    }

    /// Equality in `Cl(X) ⊗ Q`, where torsion dies.
    pub fn rationally_equal(&self, other: &QClass, group: &FpAbelianGroup) -> Result<bool> {
        let lhs = self.numerator.scale(&other.denominator);
        let rhs = other.numerator.scale(&self.denominator);
        Ok(group.element_order(&(&lhs - &rhs))?.is_some())
    }

    /// Free-part coordinates as exact rationals.
    pub fn free_part(&self, group: &FpAbelianGroup) -> Result<Vec<Rat>> {
        Ok(group
            .free_coordinates(&self.numerator)?
            .into_iter()
            .map(|x| Rat::new(x, self.denominator.clone()))
            .collect())
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}
