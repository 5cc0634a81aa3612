//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector, so iteration
//! order is deterministic and no zero coefficient is ever kept.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::monomial::{monomials_in_box, Monomial, MonomialOrder};
use crate::algebra::scalar::GaussianRational;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(nvars), c);
        }
        Self { nvars, terms }
    }

    /// The variable `s_var` as a polynomial.
    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::term(Monomial::variable(nvars, var), GaussianRational::one())
    }

    /// A single term `c * s^m`.
    pub fn term(monomial: Monomial, c: GaussianRational) -> Self {
        let nvars = monomial.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Self { nvars, terms }
    }

    /// Canonicalize a raw term list: like terms merged, zeros dropped.
    ///
    /// Fails when the exponent vectors do not all have length `nvars`.
    pub fn from_terms<I>(nvars: usize, raw: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut terms: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m, c) in raw {
            if m.arity() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: m.arity(),
                });
            }
            let entry = terms.entry(m).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in structural (exponent-vector) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::unit(self.nvars))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Is this a constant times a polynomial in the single variable `var`?
    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms.keys().all(|m| m.is_pure_power_of(var))
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by a single term `c * s^m`.
    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        assert_eq!(self.nvars, m.arity(), "arity mismatch");
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    fn add_assign_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Iterated partial derivative, one order per variable.
    pub fn diff(&self, order: &Monomial) -> Self {
        assert_eq!(self.nvars, order.arity(), "arity mismatch");
        let mut out = Self::zero(self.nvars);
        'term: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = Vec::with_capacity(self.nvars);
            for var in 0..self.nvars {
                let e = m.exponent(var);
                let k = order.exponent(var);
                if e < k {
                    continue 'term;
                }
                // falling factorial e * (e-1) * ... * (e-k+1)
                for t in (e - k + 1)..=e {
                    coeff = &coeff * &GaussianRational::from_integer(i64::from(t));
                }
                exps.push(e - k);
            }
            out.add_assign_term(Monomial::new(exps), coeff);
        }
        out
    }

    /// Returns `q` with `q(t) = self(t + shift)`.
    pub fn taylor_shift(&self, shift: &[GaussianRational]) -> Self {
        assert_eq!(self.nvars, shift.len(), "arity mismatch");
        let mut cur = self.clone();
        for (var, w) in shift.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let mut next = Self::zero(self.nvars);
            for (m, c) in &cur.terms {
                let e = m.exponent(var);
                // (s_var + w)^e expanded by the binomial theorem
                let mut w_pow = GaussianRational::one();
                for k in (0..=e).rev() {
                    let bin = binomial(BigInt::from(e), BigInt::from(k));
                    let coeff = c * &GaussianRational::from_bigint(bin) * &w_pow;
                    let mut exps = m.exponents().to_vec();
                    exps[var] = k;
                    next.add_assign_term(Monomial::new(exps), coeff);
                    w_pow = &w_pow * w;
                }
            }
            cur = next;
        }
        cur
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(self.nvars, point.len(), "arity mismatch");
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, x) in point.iter().enumerate() {
                let e = m.exponent(var);
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// The coefficient of `var^exp`, as a polynomial in the remaining
    /// variables (with the `var` slot zeroed).
    pub fn coefficient_in_var(&self, var: usize, exp: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) == exp {
                let mut exps = m.exponents().to_vec();
                exps[var] = 0;
                out.add_assign_term(Monomial::new(exps), c.clone());
            }
        }
        out
    }

    /// Euclidean division by a divisor monic in `var`:
    /// `self = q * divisor + r` with `deg_var(r) < deg_var(divisor)`.
    pub fn univ_divmod(&self, divisor: &Self, var: usize) -> Result<(Self, Self), Error> {
        if divisor.nvars != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: divisor.nvars,
            });
        }
        let d = divisor.degree_in(var).ok_or(Error::NotMonicInVariable { var })?;
        if !divisor.coefficient_in_var(var, d).is_one_poly() {
            return Err(Error::NotMonicInVariable { var });
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            let e = match rem.degree_in(var) {
                Some(e) if e >= d => e,
                _ => break,
            };
            // peel the whole top slice at degree e in one step
            let top = rem.coefficient_in_var(var, e);
            let shift = Monomial::new(
                (0..self.nvars)
                    .map(|j| if j == var { e - d } else { 0 })
                    .collect(),
            );
            let t = top.mul_term(&shift, &GaussianRational::one());
            quot = &quot + &t;
            rem = &rem - &(&t * divisor);
        }
        Ok((quot, rem))
    }

    fn is_one_poly(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_unit() && c.is_one())
    }

    /// Drop every term whose exponent vector is not componentwise `<= bound`.
    pub fn truncate_to_box(&self, bound: &Monomial) -> Self {
        assert_eq!(self.nvars, bound.arity(), "arity mismatch");
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.divides(bound))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to the box of exponents componentwise `<= bound`.
    pub fn mul_truncated(&self, other: &Self, bound: &Monomial) -> Self {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let a = self.truncate_to_box(bound);
        let b = other.truncate_to_box(bound);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                if m.divides(bound) {
                    out.add_assign_term(m, ca * cb);
                }
            }
        }
        out
    }

    /// Truncated Taylor expansion of `1/self` at `center`.
    ///
    /// The result `t` satisfies: every coefficient of `self * t - 1` in the
    /// Taylor expansion at `center` vanishes for exponents componentwise
    /// `<= order`. Fails when `self(center) = 0`.
    pub fn series_inverse_truncated(
        &self,
        center: &[GaussianRational],
        order: &Monomial,
    ) -> Result<Self, Error> {
        assert_eq!(self.nvars, center.len(), "arity mismatch");
        let shifted = self.taylor_shift(center);
        let inv = shifted.series_inverse_at_origin(order)?;
        let neg_center: Vec<_> = center.iter().map(|w| -w).collect();
        Ok(inv.taylor_shift(&neg_center))
    }

    /// Truncated inverse power series at the origin (box truncation).
    pub(crate) fn series_inverse_at_origin(&self, order: &Monomial) -> Result<Self, Error> {
        let c = self.constant_term();
        let c_inv = c.checked_inv().ok_or(Error::NotInvertibleAtNode)?;
        // self = c * (1 - v) with v(0) = 0, so 1/self = (1/c) * sum v^k
        let v = &Self::one(self.nvars) - &self.scale(&c_inv);
        let mut sum = Self::one(self.nvars);
        let mut pow = Self::one(self.nvars);
        for _ in 0..order.total_degree() {
            pow = pow.mul_truncated(&v, order);
            if pow.is_zero() {
                break;
            }
            sum = &sum + &pow;
        }
        Ok(sum.scale(&c_inv))
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, else `None`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "arity mismatch");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let order = MonomialOrder::GrevLex;
        let (dm, dc) = divisor.leading_term(order).expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (m, c) = rem.leading_term(order).expect("nonzero remainder");
            let factor = m.checked_div(&dm)?;
            let coeff = c / &dc;
            let t = Self::term(factor, coeff);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Reinterpret in `new_nvars` variables, sending old variable `j` to
    /// new variable `map[j]`.
    pub fn rename_variables(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(self.nvars, map.len(), "arity mismatch");
        assert!(map.iter().all(|&j| j < new_nvars), "target out of range");
        let mut out = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_nvars];
            for (j, &e) in m.exponents().iter().enumerate() {
                exps[map[j]] += e;
            }
            out.add_assign_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Substitute polynomials for a subset of the variables, keeping
    /// arity: `subs[j] = Some(g)` replaces `s_j` by `g`.
    pub fn substitute(&self, subs: &[Option<MultiPoly>]) -> Self {
        assert_eq!(self.nvars, subs.len(), "arity mismatch");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(self.nvars, c.clone());
            for (var, sub) in subs.iter().enumerate() {
                let e = m.exponent(var);
                if e == 0 {
                    continue;
                }
                match sub {
                    Some(g) => {
                        assert_eq!(g.nvars, self.nvars, "arity mismatch");
                        acc = &acc * &g.pow(e);
                    }
                    None => {
                        acc = acc.mul_term(
                            &Monomial::new(
                                (0..self.nvars)
                                    .map(|j| if j == var { e } else { 0 })
                                    .collect(),
                            ),
                            &GaussianRational::one(),
                        );
                    }
                }
            }
            out = &out + &acc;
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Group terms by the exponents of a variable block.
    ///
    /// `block` selects variable indices; returns pairs of (exponents
    /// restricted to the block, polynomial with the block slots zeroed),
    /// keyed deterministically.
    pub fn split_by_block(&self, block: &[usize]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = block.iter().map(|&j| m.exponent(j)).collect();
            let mut exps = m.exponents().to_vec();
            for &j in block {
                exps[j] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_assign_term(Monomial::new(exps), c.clone());
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_assign_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_poly_binop!(Add, add);
forward_owned_poly_binop!(Sub, sub);
forward_owned_poly_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*s^{:?}", c, m.exponents()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Univariate helper: build `prod (s_var - roots[i])^mult[i]` in `nvars`
/// variables.
pub fn univariate_from_roots(
    nvars: usize,
    var: usize,
    roots: &[(GaussianRational, u32)],
) -> MultiPoly {
    let s = MultiPoly::variable(nvars, var);
    let mut acc = MultiPoly::one(nvars);
    for (root, mult) in roots {
        let lin = &s - &MultiPoly::constant(nvars, root.clone());
        acc = &acc * &lin.pow(*mult);
    }
    acc
}

/// All monomials componentwise `<= bound`, sorted ascending by `order`.
pub fn box_basis(bound: &Monomial, order: MonomialOrder) -> Vec<Monomial> {
    let mut ms = monomials_in_box(bound);
    order.sort_ascending(&mut ms);
    ms
}
