//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// A monomial exponent vector of fixed arity.
///
/// The derived `Ord` compares exponent vectors as sequences and is used
/// only as a structural storage order; mathematical comparisons go
/// through [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    /// The constant monomial `1` in `nvars` variables.
    pub fn unit(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// The monomial `s_var` in `nvars` variables.
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// Divisibility `self | other`, i.e. componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `l!` as in the multi-index factorial.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=u64::from(e) {
                acc *= k;
            }
        }
        acc
    }

    /// Is every exponent of this monomial a pure power of `var`?
    pub fn is_pure_power_of(&self, var: usize) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(j, &e)| j == var || e == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{:?}", self.0)
    }
}

/// All monomials with exponents componentwise `<= bound`, in ascending
/// structural order (last variable fastest).
pub fn monomials_in_box(bound: &Monomial) -> Vec<Monomial> {
    let n = bound.arity();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(Monomial::new(cur.clone()));
        // increment as a mixed-radix counter
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < bound.exponent(pos) {
                cur[pos] += 1;
                for e in &mut cur[pos + 1..] {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// A total, multiplicative well-ordering on monomials with variable
/// priority `s_1 > s_2 > ... > s_n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    GrevLex,
    /// Pure lexicographic order.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::GrevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // equal degree: the monomial whose rightmost differing
                // exponent is smaller is the larger one
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    match x.cmp(y) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn sort_ascending(&self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.cmp(a, b));
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn test_grevlex_ordering() {
        let o = MonomialOrder::GrevLex;
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[0, 1])), Ordering::Less);
        // same degree: s1 > s2
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // s1*s2 vs s1^2: rightmost difference in s2 favors s1^2
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[2, 0])), Ordering::Less);
        // three variables, the classic grevlex tie-break: y^2 > xz
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn test_lex_ordering() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 3])), Ordering::Less);
    }

    #[test]
    fn test_standard_basis_sorting() {
        let mut ms = vec![m(&[1, 1]), m(&[1, 0]), m(&[0, 0]), m(&[0, 1])];
        MonomialOrder::GrevLex.sort_ascending(&mut ms);
        assert_eq!(ms, vec![m(&[0, 0]), m(&[0, 1]), m(&[1, 0]), m(&[1, 1])]);
    }

    #[test]
    fn test_divides_lcm() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert!(!m(&[1, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 2]).lcm(&m(&[2, 1])), m(&[2, 2]));
        assert_eq!(m(&[2, 1]).checked_div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[2, 1]).checked_div(&m(&[1, 2])), None);
    }

    #[test]
    fn test_box_enumeration() {
        let all = monomials_in_box(&m(&[1, 2]));
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], m(&[0, 0]));
        assert_eq!(all[5], m(&[1, 2]));
    }

    #[test]
    fn test_factorial() {
        assert_eq!(m(&[3, 2]).factorial(), BigInt::from(12));
        assert_eq!(m(&[0, 0]).factorial(), BigInt::one());
    }
}
