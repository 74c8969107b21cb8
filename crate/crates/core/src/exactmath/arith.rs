use num_integer::Integer;
use num_traits::Signed;

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(|a|, |b|) >= 0` and
/// `a*x + b*y = g`. `ext_gcd(0, 0) = (0, 0, 0)`.
pub fn ext_gcd<T>(a: T, b: T) -> (T, T, T)
where
    T: Integer + Signed + Clone,
{
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (T::one(), T::zero());
    let (mut old_y, mut y) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_x = old_x - q.clone() * x.clone();
        old_x = std::mem::replace(&mut x, next_x);
        let next_y = old_y - q * y.clone();
        old_y = std::mem::replace(&mut y, next_y);
    }
    if old_r.is_negative() {
        (-old_r, -old_x, -old_y)
    } else if old_r.is_zero() {
        (T::zero(), T::zero(), T::zero())
    } else {
        (old_r, old_x, old_y)
    }
}

/// Inverse of `a` modulo `m` (`m >= 1`), reduced into `[0, m)`.
pub fn mod_inverse<T>(a: T, m: T) -> Option<T>
where
    T: Integer + Signed + Clone,
{
    if m.is_one() {
        return Some(T::zero());
    }
    let (g, x, _) = ext_gcd(a, m.clone());
    if g.is_one() {
        Some(x.mod_floor(&m))
    } else {
        None
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / a.gcd(&b) * b
    }
}

/// lcm of a list; the lcm of the empty list is 1.
pub fn lcm_all<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(1, lcm_u64)
}

/// A residue class `residue mod modulus` with `modulus >= 1` and the residue
/// reduced into `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence<T> {
    pub residue: T,
    pub modulus: T,
}

impl<T: Integer + Signed + Clone> Congruence<T> {
    pub fn new(residue: T, modulus: T) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        let residue = residue.mod_floor(&modulus);
        Congruence { residue, modulus }
    }
}

/// Solves a system of simultaneous congruences with arbitrary (not
/// necessarily coprime) moduli. Returns the combined class modulo the lcm,
/// or `None` when the system is inconsistent. The empty system is `0 mod 1`.
pub fn crt_solve<T>(system: &[Congruence<T>]) -> Option<Congruence<T>>
where
    T: Integer + Signed + Clone,
{
    let mut acc = Congruence::new(T::zero(), T::one());
    for c in system {
        let c = Congruence::new(c.residue.clone(), c.modulus.clone());
        let (g, p, _) = ext_gcd(acc.modulus.clone(), c.modulus.clone());
        let diff = c.residue.clone() - acc.residue.clone();
        if !diff.is_multiple_of(&g) {
            return None;
        }
        let lcm = acc.modulus.clone() / g.clone() * c.modulus.clone();
        let step = (diff / g * p).mod_floor(&lcm);
        let residue = acc.residue.clone() + step * acc.modulus.clone();
        acc = Congruence::new(residue, lcm);
    }
    Some(acc)
}
