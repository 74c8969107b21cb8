use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, Int, IntMatrix, SmithDecomposition};
use crate::error::{Error, Result};

/// Coordinates of a group element with respect to the generators of some
/// [`FpAbelianGroup`]. The element does not carry its group; operations
/// that need one check the length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<Int>,
}

impl GroupElement {
    pub fn new(coords: Vec<Int>) -> Self {
        GroupElement { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        GroupElement::new(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        GroupElement::new(vec![Int::zero(); len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut e = Self::zero(len);
        e.coords[i] = Int::one();
        e
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// True when every coordinate is zero (as a vector, not in a group).
    pub fn is_formal_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Int) -> GroupElement {
        GroupElement::new(self.coords.iter().map(|c| c * k).collect())
    }

    /// Extends the coordinate vector with `extra` trailing zeros.
    pub fn padded(&self, extra: usize) -> GroupElement {
        let mut coords = self.coords.clone();
        coords.extend(std::iter::repeat_n(Int::zero(), extra));
        GroupElement::new(coords)
    }

    fn zip_with(&self, rhs: &GroupElement, f: impl Fn(&Int, &Int) -> Int) -> GroupElement {
        assert_eq!(self.len(), rhs.len(), "group elements of different lengths");
        GroupElement::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", cells.join(", "))
    }
}

/// Isomorphism type `Z^free_rank + Z/d_1 + ... + Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl NormalForm {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `Z^num_generators / rowspace(relations)`, with its Smith decomposition
/// computed once at construction.
///
/// Two groups compare equal when their normal forms agree.
#[derive(Debug, Clone)]
pub struct FpAbelianGroup {
    num_generators: usize,
    relations: IntMatrix,
    snf: SmithDecomposition,
    normal_form: NormalForm,
}

impl PartialEq for FpAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.normal_form == other.normal_form
    }
}

impl Eq for FpAbelianGroup {}

impl fmt::Display for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal_form.fmt(f)
    }
}

/// The group presented by `relations` (one relation per row).
pub fn cokernel(relations: &IntMatrix) -> FpAbelianGroup {
    let snf = smith_normal_form(relations);
    let normal_form = NormalForm {
        free_rank: snf.cokernel_free_rank(),
        torsion: snf.invariant_factors(),
    };
    FpAbelianGroup {
        num_generators: relations.cols(),
        relations: relations.clone(),
        snf,
        normal_form,
    }
}

impl FpAbelianGroup {
    pub fn new(num_generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != num_generators {
            return Err(Error::dims(format!(
                "relations have {} columns for {num_generators} generators",
                relations.cols()
            )));
        }
        Ok(cokernel(&relations))
    }

    /// Free abelian group of rank `n`.
    pub fn free(n: usize) -> Self {
        cokernel(&IntMatrix::zeros(0, n))
    }

    /// `Z/m` on one generator (`m = 0` gives `Z`).
    pub fn cyclic(m: impl Into<Int>) -> Self {
        let rel = IntMatrix::from_vec(1, 1, vec![m.into()]).expect("1x1");
        cokernel(&rel)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.normal_form
    }

    pub fn free_rank(&self) -> usize {
        self.normal_form.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.normal_form.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.normal_form.is_trivial()
    }

    pub fn order(&self) -> Option<Int> {
        self.normal_form.order()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.num_generators)
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::basis(self.num_generators, i)
    }

    pub fn element(&self, coords: Vec<Int>) -> Result<GroupElement> {
        let g = GroupElement::new(coords);
        self.check(&g)?;
        Ok(g)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.len() != self.num_generators {
            return Err(Error::dims(format!(
                "element with {} coordinates in a group on {} generators",
                g.len(),
                self.num_generators
            )));
        }
        Ok(())
    }

    /// Diagonal entry of the Smith form attached to column `t` (0 past the
    /// rank, i.e. a free coordinate).
    fn column_modulus(&self, t: usize) -> Int {
        let s = &self.snf.s;
        if t < s.rows() {
            s[(t, t)].clone()
        } else {
            Int::zero()
        }
    }

    fn diagonal_coords(&self, g: &GroupElement) -> Result<Vec<Int>> {
        self.check(g)?;
        self.snf.v.left_apply(g.coords())
    }

    /// Coordinates in the normal-form basis: one entry per torsion factor
    /// (reduced into `[0, d)`), then one per free summand.
    pub fn normal_coordinates(&self, g: &GroupElement) -> Result<Vec<Int>> {
        let y = self.diagonal_coords(g)?;
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (t, yt) in y.into_iter().enumerate() {
            let d = self.column_modulus(t);
            if d.is_zero() {
                free.push(yt);
            } else if d > Int::one() {
                torsion.push(yt.mod_floor(&d));
            }
        }
        torsion.extend(free);
        Ok(torsion)
    }

    /// Inverse of [`FpAbelianGroup::normal_coordinates`]: the element with the
    /// given normal-form coordinates, expressed in the original generators.
    pub fn from_normal_coordinates(&self, coords: &[Int]) -> Result<GroupElement> {
        let n_torsion = self.torsion().len();
        if coords.len() != n_torsion + self.free_rank() {
            return Err(Error::dims(format!(
                "{} normal coordinates for {}",
                coords.len(),
                self.normal_form
            )));
        }
        let mut y = vec![Int::zero(); self.num_generators];
        let (mut ti, mut fi) = (0, n_torsion);
        for (t, yt) in y.iter_mut().enumerate() {
            let d = self.column_modulus(t);
            if d.is_zero() {
                *yt = coords[fi].clone();
                fi += 1;
            } else if d > Int::one() {
                *yt = coords[ti].clone();
                ti += 1;
            }
        }
        Ok(GroupElement::new(self.snf.v_inv.left_apply(&y)?))
    }

    /// The free-part coordinates only (torsion discarded).
    pub fn free_coordinates(&self, g: &GroupElement) -> Result<Vec<Int>> {
        let n_torsion = self.torsion().len();
        Ok(self.normal_coordinates(g)?.split_off(n_torsion))
    }

    pub fn is_zero(&self, g: &GroupElement) -> Result<bool> {
        Ok(self.normal_coordinates(g)?.iter().all(Zero::is_zero))
    }

    pub fn equal(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        self.check(g)?;
        self.check(h)?;
        self.is_zero(&(g - h))
    }

    /// Order of `g`, `None` if it has infinite order.
    pub fn element_order(&self, g: &GroupElement) -> Result<Option<Int>> {
        let y = self.diagonal_coords(g)?;
        let mut order = Int::one();
        for (t, yt) in y.iter().enumerate() {
            let d = self.column_modulus(t);
            if d.is_zero() {
                if !yt.is_zero() {
                    return Ok(None);
                }
            } else {
                order = order.lcm(&(&d / yt.gcd(&d)));
            }
        }
        Ok(Some(order))
    }

    /// The quotient by the subgroup generated by `h`.
    pub fn quotient(&self, h: &[GroupElement]) -> Result<FpAbelianGroup> {
        let mut rel = self.relations.clone();
        for g in h {
            self.check(g)?;
            rel.push_row(g.coords().to_vec())?;
        }
        Ok(cokernel(&rel))
    }

    /// True iff `g` generates the whole group.
    pub fn element_generates(&self, g: &GroupElement) -> Result<bool> {
        Ok(self.quotient(std::slice::from_ref(g))?.is_trivial())
    }

    /// True iff `g` lies in the subgroup generated by `h`.
    pub fn subgroup_membership(&self, g: &GroupElement, h: &[GroupElement]) -> Result<bool> {
        self.check(g)?;
        self.quotient(h)?.is_zero(g)
    }

    /// Smallest `k > 0` with `k*g` in the subgroup generated by `h`
    /// (the order of `g` in the quotient), `None` if there is none.
    pub fn order_modulo(&self, g: &GroupElement, h: &[GroupElement]) -> Result<Option<Int>> {
        self.check(g)?;
        self.quotient(h)?.element_order(g)
    }
}
