use num_traits::Zero;

use super::invariants::require_validated;
use super::SeifertData;
use crate::error::{Error, Result};
use crate::exactmath::{cokernel, FpAbelianGroup, GroupElement, Int, IntMatrix};

/// `Cl(Y)` presented on the generators of `Cl(X)` followed by one
/// generator `D^Y_i` per branch divisor, with relations
///
/// * the relations of `Cl(X)`,
/// * `[D_i] - c_i D^Y_i` for each branch divisor,
/// * `[L] + sum b_i D^Y_i`.
#[derive(Debug, Clone)]
pub struct ClassGroupY {
    group: FpAbelianGroup,
    labels: Vec<String>,
    base_generators: usize,
    branch: Vec<usize>,
}

impl ClassGroupY {
    pub fn group(&self) -> &FpAbelianGroup {
        &self.group
    }

    /// Generator labels: `e1, e2, ..` for `Cl(X)`, then `<name>^Y`.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Divisor indices of the `D^Y_i` generators, in order.
    pub fn branch_divisors(&self) -> &[usize] {
        &self.branch
    }

    /// `f^* g` for a class `g` of `Cl(X)`.
    pub fn pullback(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.len() != self.base_generators {
            return Err(Error::dims(format!(
                "class with {} coordinates pulled back from {} generators",
                g.len(),
                self.base_generators
            )));
        }
        Ok(g.padded(self.branch.len()))
    }

    /// `D^Y_i = red f^{-1}(D_i)`; for divisors outside the branch locus
    /// this is just `f^*[D_i]`, so `None` is returned there.
    pub fn fiber_divisor(&self, divisor: usize) -> Option<GroupElement> {
        let k = self.branch.iter().position(|&i| i == divisor)?;
        Some(GroupElement::basis(self.base_generators + self.branch.len(), self.base_generators + k))
    }

    /// Coordinates of `g` in the normal form of `Cl(Y)`.
    pub fn normal_coordinates(&self, g: &GroupElement) -> Result<Vec<Int>> {
        self.group.normal_coordinates(g)
    }
}

fn presentation(sd: &SeifertData) -> Result<ClassGroupY> {
    let base = sd.base();
    let cl = base.class_group();
    let n = cl.num_generators();
    let branch = sd.branch_indices();
    let width = n + branch.len();
    let mut rel = IntMatrix::zeros(0, width);
    for row in cl.relations().row_iter() {
        let mut r = row.to_vec();
        r.resize(width, Int::zero());
        rel.push_row(r)?;
    }
    for (k, &i) in branch.iter().enumerate() {
        let mut r = base.divisors()[i].class.padded(branch.len()).coords().to_vec();
        r[n + k] = -Int::from(sd.coefficients()[i].c());
        rel.push_row(r)?;
    }
    let mut r = sd.l_class().padded(branch.len()).coords().to_vec();
    for (k, &i) in branch.iter().enumerate() {
        r[n + k] = Int::from(sd.coefficients()[i].b());
    }
    rel.push_row(r)?;

    let mut labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    labels.extend(branch.iter().map(|&i| format!("{}^Y", base.divisors()[i].name)));
    Ok(ClassGroupY {
        group: cokernel(&rel),
        labels,
        base_generators: n,
        branch,
    })
}

pub fn class_group_y(sd: &SeifertData) -> Result<ClassGroupY> {
    require_validated(sd)?;
    presentation(sd)
}

/// `K_Y = f^* K_X + sum (c_i - 1) D^Y_i`, as an element of the presentation
/// returned by [`class_group_y`].
pub fn canonical_class_y(sd: &SeifertData) -> Result<GroupElement> {
    let cly = class_group_y(sd)?;
    let mut k = cly.pullback(sd.base().canonical())?;
    for &i in cly.branch_divisors() {
        let dy = cly.fiber_divisor(i).expect("branch divisor has a generator");
        k = &k + &dy.scale(&Int::from(sd.coefficients()[i].c() - 1));
    }
    Ok(k)
}
