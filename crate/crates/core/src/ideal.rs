//! Groebner machinery for a zero-dimensional ideal presented by exactly
//! `n` generators in `n` variables: reduced basis with cofactor tracking,
//! normal forms, the standard monomial basis of the quotient algebra,
//! multiplication matrices, and the separating data `q = A * p`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::algebra::{monomials_in_box, GaussianRational, Monomial, MonomialOrder, MultiPoly};
use crate::error::Error;
use crate::matrix::{poly_det, ScalarMatrix};

/// A candidate quasi-regular presentation: `n` nonzero generators in `n`
/// variables together with the monomial order used downstream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealPresentation {
    generators: Vec<MultiPoly>,
    nvars: usize,
    order: MonomialOrder,
}

impl IdealPresentation {
    pub fn new(generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Self, Error> {
        let nvars = generators
            .first()
            .map(MultiPoly::nvars)
            .ok_or(Error::GeneratorCount { expected: 1, got: 0 })?;
        if generators.len() != nvars {
            return Err(Error::GeneratorCount {
                expected: nvars,
                got: generators.len(),
            });
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
        }
        Ok(Self {
            generators,
            nvars,
            order,
        })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Does generator `j` involve only the variable `s_j`, with leading
    /// coefficient one?
    pub fn is_separated(&self) -> bool {
        self.generators.iter().enumerate().all(|(j, p)| {
            p.is_univariate_in(j)
                && p.degree_in(j).is_some_and(|d| {
                    d >= 1 && p.coefficient(&pure_power(self.nvars, j, d)).is_one()
                })
        })
    }

    /// Evaluate all generators; true iff the point is a common zero.
    pub fn vanishes_at(&self, point: &[GaussianRational]) -> bool {
        self.generators.iter().all(|p| p.eval(point).is_zero())
    }
}

fn pure_power(nvars: usize, var: usize, exp: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    e[var] = exp;
    Monomial::new(e)
}

/// A working polynomial together with its cofactor row: `poly = sum
/// cof[k] * p_k` holds exactly throughout the computation.
#[derive(Clone, Debug)]
struct Tracked {
    poly: MultiPoly,
    cof: Vec<MultiPoly>,
}

/// A reduced Groebner basis with exact cofactor certificates and the
/// standard monomial basis of the quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerData {
    pres: IdealPresentation,
    basis: Vec<MultiPoly>,
    cofactors: Vec<Vec<MultiPoly>>,
    standard_monomials: Vec<Monomial>,
}

/// Buchberger's algorithm with cofactor tracking back to the original
/// generators. Deterministic for a fixed order and generator sequence.
pub fn buchberger(pres: IdealPresentation) -> Result<GroebnerData, Error> {
    let n = pres.nvars();
    let order = pres.order();
    let mut basis: Vec<Tracked> = pres
        .generators()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut cof = vec![MultiPoly::zero(n); n];
            cof[k] = MultiPoly::one(n);
            make_monic(Tracked {
                poly: p.clone(),
                cof,
            })
        })
        .collect();

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pending.insert((j, i));
        }
    }

    while let Some((i, j)) = select_pair(&pending, &basis, order) {
        pending.remove(&(i, j));
        let lm_i = leading_monomial(&basis[i].poly, order);
        let lm_j = leading_monomial(&basis[j].poly, order);
        let lcm = lm_i.lcm(&lm_j);
        // first criterion: coprime leading monomials
        if lcm == lm_i.mul(&lm_j) {
            continue;
        }
        // chain criterion: an already-handled third element covers the pair
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leading_monomial(&basis[k].poly, order).divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let (nf, acc) = reduce_full(&s.poly, &basis, order);
        if nf.is_zero() {
            continue;
        }
        let cof = sub_rows(&s.cof, &acc);
        let new = make_monic(Tracked { poly: nf, cof });
        let new_idx = basis.len();
        basis.push(new);
        for k in 0..new_idx {
            pending.insert((k, new_idx));
        }
    }

    // minimalize: drop elements whose leading monomial another head divides
    let mut keep: Vec<Tracked> = Vec::new();
    let mut indices: Vec<usize> = (0..basis.len()).collect();
    indices.sort_by(|&a, &b| {
        order.cmp(
            &leading_monomial(&basis[a].poly, order),
            &leading_monomial(&basis[b].poly, order),
        )
        .then(a.cmp(&b))
    });
    for &idx in &indices {
        let lm = leading_monomial(&basis[idx].poly, order);
        if !keep
            .iter()
            .any(|t| leading_monomial(&t.poly, order).divides(&lm))
        {
            keep.push(basis[idx].clone());
        }
    }

    // inter-reduce tails until stable
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Tracked> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, t)| t.clone())
                .collect();
            let (nf, acc) = reduce_full(&keep[i].poly, &others, order);
            if nf != keep[i].poly {
                keep[i] = Tracked {
                    poly: nf,
                    cof: sub_rows(&keep[i].cof, &acc),
                };
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| {
        order.cmp(
            &leading_monomial(&a.poly, order),
            &leading_monomial(&b.poly, order),
        )
    });

    // a unit in the basis means the variety is empty
    if keep.iter().any(|t| leading_monomial(&t.poly, order).is_unit()) {
        return Err(Error::EmptyVariety);
    }

    // zero-dimensionality: every variable needs a pure-power head
    let mut bounds = vec![0u32; n];
    for var in 0..n {
        let bound = keep
            .iter()
            .filter_map(|t| {
                let lm = leading_monomial(&t.poly, order);
                lm.is_pure_power_of(var).then(|| lm.exponent(var))
            })
            .min();
        match bound {
            Some(b) => bounds[var] = b,
            None => return Err(Error::NotZeroDimensional),
        }
    }

    let heads: Vec<Monomial> = keep
        .iter()
        .map(|t| leading_monomial(&t.poly, order))
        .collect();
    let box_bound = Monomial::new(bounds.iter().map(|&b| b.saturating_sub(1)).collect());
    let mut standard: Vec<Monomial> = monomials_in_box(&box_bound)
        .into_iter()
        .filter(|m| !heads.iter().any(|h| h.divides(m)))
        .collect();
    order.sort_ascending(&mut standard);

    let (basis, cofactors) = keep.into_iter().map(|t| (t.poly, t.cof)).unzip();
    Ok(GroebnerData {
        pres,
        basis,
        cofactors,
        standard_monomials: standard,
    })
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn leading_monomial(p: &MultiPoly, order: MonomialOrder) -> Monomial {
    p.leading_term(order)
        .expect("nonzero polynomial")
        .0
        .clone()
}

fn select_pair(
    pending: &BTreeSet<(usize, usize)>,
    basis: &[Tracked],
    order: MonomialOrder,
) -> Option<(usize, usize)> {
    pending
        .iter()
        .min_by(|&&(i1, j1), &&(i2, j2)| {
            let lcm1 = leading_monomial(&basis[i1].poly, order)
                .lcm(&leading_monomial(&basis[j1].poly, order));
            let lcm2 = leading_monomial(&basis[i2].poly, order)
                .lcm(&leading_monomial(&basis[j2].poly, order));
            order.cmp(&lcm1, &lcm2).then((i1, j1).cmp(&(i2, j2)))
        })
        .copied()
}

fn make_monic(t: Tracked) -> Tracked {
    let order = MonomialOrder::GrevLex; // any order: scaling is order-free
    let (_, lc) = t
        .poly
        .leading_term(order)
        .expect("nonzero polynomial");
    if lc.is_one() {
        return t;
    }
    let inv = GaussianRational::one() / lc;
    Tracked {
        poly: t.poly.scale(&inv),
        cof: t.cof.iter().map(|c| c.scale(&inv)).collect(),
    }
}

fn s_polynomial(a: &Tracked, b: &Tracked, order: MonomialOrder) -> Tracked {
    let (lm_a, lc_a) = a.poly.leading_term(order).expect("nonzero");
    let (lm_b, lc_b) = b.poly.leading_term(order).expect("nonzero");
    let lcm = lm_a.lcm(lm_b);
    let ma = lcm.checked_div(lm_a).expect("lcm divisibility");
    let mb = lcm.checked_div(lm_b).expect("lcm divisibility");
    let ca = GaussianRational::one() / lc_a;
    let cb = GaussianRational::one() / lc_b;
    Tracked {
        poly: &a.poly.mul_term(&ma, &ca) - &b.poly.mul_term(&mb, &cb),
        cof: a
            .cof
            .iter()
            .zip(&b.cof)
            .map(|(x, y)| &x.mul_term(&ma, &ca) - &y.mul_term(&mb, &cb))
            .collect(),
    }
}

fn sub_rows(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// One recorded division step: subtract `coeff * s^factor * reducer`.
struct ReductionStep {
    reducer: usize,
    factor: Monomial,
    coeff: GaussianRational,
}

/// Full multivariate division by `reducers`, recording the steps so the
/// caller can assemble cofactors only when it needs them. The first
/// reducer (in slice order) whose head divides is always chosen, so the
/// result is deterministic. Returns the normal form: no term of it is
/// divisible by any reducer head.
fn reduce_with_steps(
    f: &MultiPoly,
    reducers: &[MultiPoly],
    order: MonomialOrder,
) -> (MultiPoly, Vec<ReductionStep>) {
    let nvars = f.nvars();
    let heads: Vec<(Monomial, GaussianRational)> = reducers
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("nonzero reducer");
            (m.clone(), c.clone())
        })
        .collect();
    let mut steps = Vec::new();
    let mut rem = f.clone();
    let mut nf_terms: Vec<(Monomial, GaussianRational)> = Vec::new();
    'outer: while !rem.is_zero() {
        let (m, c) = {
            let (m, c) = rem.leading_term(order).expect("nonzero remainder");
            (m.clone(), c.clone())
        };
        for (idx, (lm, lc)) in heads.iter().enumerate() {
            if let Some(factor) = m.checked_div(lm) {
                let coeff = &c / lc;
                rem = &rem - &reducers[idx].mul_term(&factor, &coeff);
                steps.push(ReductionStep {
                    reducer: idx,
                    factor,
                    coeff,
                });
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the normal form
        nf_terms.push((m.clone(), c.clone()));
        rem = &rem - &MultiPoly::term(m, c);
    }
    let nf = MultiPoly::from_terms(nvars, nf_terms).expect("uniform arity");
    (nf, steps)
}

/// Assemble the cofactor rows (w.r.t. the original generators) for a
/// recorded reduction.
fn steps_to_cofactors(
    steps: &[ReductionStep],
    cof_rows: &[&[MultiPoly]],
    ngens: usize,
    nvars: usize,
) -> Vec<MultiPoly> {
    let mut acc = vec![MultiPoly::zero(nvars); ngens];
    for step in steps {
        for (dst, src) in acc.iter_mut().zip(cof_rows[step.reducer]) {
            *dst = &*dst + &src.mul_term(&step.factor, &step.coeff);
        }
    }
    acc
}

fn reduce_full(
    f: &MultiPoly,
    reducers: &[Tracked],
    order: MonomialOrder,
) -> (MultiPoly, Vec<MultiPoly>) {
    let polys: Vec<MultiPoly> = reducers.iter().map(|t| t.poly.clone()).collect();
    let (nf, steps) = reduce_with_steps(f, &polys, order);
    let ngens = reducers.first().map_or(0, |t| t.cof.len());
    let rows: Vec<&[MultiPoly]> = reducers.iter().map(|t| t.cof.as_slice()).collect();
    let acc = steps_to_cofactors(&steps, &rows, ngens, f.nvars());
    (nf, acc)
}

impl GroebnerData {
    pub fn presentation(&self) -> &IdealPresentation {
        &self.pres
    }

    pub fn nvars(&self) -> usize {
        self.pres.nvars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.pres.order()
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    /// Row `i` reconstructs basis element `i` from the original
    /// generators.
    pub fn cofactors(&self) -> &[Vec<MultiPoly>] {
        &self.cofactors
    }

    /// Monomials outside the leading-term ideal, ascending in the order.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard_monomials
    }

    /// `N(p)`, the dimension of the quotient algebra.
    pub fn dimension(&self) -> usize {
        self.standard_monomials.len()
    }

    fn check_arity(&self, f: &MultiPoly) -> Result<(), Error> {
        if f.nvars() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: f.nvars(),
            });
        }
        Ok(())
    }

    /// Normal form alone, skipping the cofactor bookkeeping.
    pub fn reduce(&self, f: &MultiPoly) -> Result<MultiPoly, Error> {
        self.check_arity(f)?;
        let (nf, _) = reduce_with_steps(f, &self.basis, self.order());
        Ok(nf)
    }

    /// Normal form and a cofactor certificate w.r.t. the original
    /// generators: `f = nf + sum cof[k] * p_k` exactly, with the support
    /// of `nf` inside the standard monomials.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<(MultiPoly, Vec<MultiPoly>), Error> {
        self.check_arity(f)?;
        let (nf, steps) = reduce_with_steps(f, &self.basis, self.order());
        let rows: Vec<&[MultiPoly]> = self.cofactors.iter().map(Vec::as_slice).collect();
        let cof = steps_to_cofactors(&steps, &rows, self.pres.nvars(), self.nvars());
        Ok((nf, cof))
    }

    /// Coordinates of the class of `f` on the standard monomial basis.
    pub fn coordinates(&self, f: &MultiPoly) -> Result<Vec<GaussianRational>, Error> {
        let nf = self.reduce(f)?;
        Ok(self
            .standard_monomials
            .iter()
            .map(|m| nf.coefficient(m))
            .collect())
    }

    /// Matrix of multiplication by `s_var` on the quotient algebra:
    /// column `k` holds the coordinates of `s_var * s^{beta_k}`.
    pub fn multiplication_matrix(&self, var: usize) -> ScalarMatrix {
        let n = self.dimension();
        let cols: Vec<Vec<GaussianRational>> = self
            .standard_monomials
            .iter()
            .map(|m| {
                let shifted = MultiPoly::term(
                    m.mul(&Monomial::variable(self.nvars(), var)),
                    GaussianRational::one(),
                );
                self.coordinates(&shifted).expect("arity is consistent")
            })
            .collect();
        ScalarMatrix::from_fn(n, n, |i, k| cols[k][i].clone())
    }

    /// The monic univariate polynomial `q_var(s_var)` of degree `N`
    /// lying in the ideal: the characteristic polynomial of the
    /// multiplication matrix (Cayley-Hamilton).
    pub fn univariate_in_ideal(&self, var: usize) -> MultiPoly {
        let coeffs = self.multiplication_matrix(var).char_poly();
        let nvars = self.nvars();
        MultiPoly::from_terms(
            nvars,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(e, c)| (pure_power(nvars, var, e as u32), c)),
        )
        .expect("uniform arity")
    }

    /// The separating data `(q, A)` with `q = A * p`: `q_j` univariate
    /// monic in `s_j`, rows of `A` from the normal-form cofactors of the
    /// `q_j`. The identity is verified exactly before returning.
    pub fn transformation_data(&self) -> Result<TransformationData, Error> {
        let mut q = Vec::with_capacity(self.nvars());
        let mut rows = Vec::with_capacity(self.nvars());
        for var in 0..self.nvars() {
            let qj = self.univariate_in_ideal(var);
            let (nf, cof) = self.normal_form(&qj)?;
            if !nf.is_zero() {
                return Err(Error::InvariantViolation(
                    "characteristic polynomial is not in the ideal",
                ));
            }
            q.push(qj);
            rows.push(cof);
        }
        TransformationData::new(q, rows, self.presentation())
    }
}

/// Univariate monic polynomials `q_1(s_1), ..., q_n(s_n)` with matrix
/// certificate `q = A * p` and the exact determinant of `A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransformationData {
    nvars: usize,
    q: Vec<MultiPoly>,
    matrix: Vec<Vec<MultiPoly>>,
    det: MultiPoly,
    det_reduced: MultiPoly,
}

impl TransformationData {
    /// Validates the identity `q_j = sum_k A[j][k] * p_k` and that each
    /// `q_j` is univariate and monic in `s_j`, then computes `det A`.
    pub fn new(
        q: Vec<MultiPoly>,
        matrix: Vec<Vec<MultiPoly>>,
        pres: &IdealPresentation,
    ) -> Result<Self, Error> {
        let n = pres.nvars();
        if q.len() != n || matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::GeneratorCount {
                expected: n,
                got: q.len(),
            });
        }
        for (j, qj) in q.iter().enumerate() {
            let d = qj.degree_in(j).ok_or(Error::NotMonicInVariable { var: j })?;
            if d == 0
                || !qj.is_univariate_in(j)
                || !qj.coefficient(&pure_power(n, j, d)).is_one()
            {
                return Err(Error::NotMonicInVariable { var: j });
            }
            let mut recon = MultiPoly::zero(n);
            for (a, p) in matrix[j].iter().zip(pres.generators()) {
                recon = &recon + &(a * p);
            }
            if &recon != qj {
                return Err(Error::InvariantViolation(
                    "transformation law q = A * p does not hold",
                ));
            }
        }
        let det = poly_det(&matrix);
        let det_reduced = reduce_separated(&det, &q);
        Ok(Self {
            nvars: n,
            q,
            matrix,
            det,
            det_reduced,
        })
    }

    /// The identity pair `(q, A) = (p, I)` for an already separated
    /// presentation.
    pub fn separated(pres: &IdealPresentation) -> Result<Self, Error> {
        if !pres.is_separated() {
            return Err(Error::NotMonicInVariable { var: 0 });
        }
        let n = pres.nvars();
        let matrix: Vec<Vec<MultiPoly>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        if j == k {
                            MultiPoly::one(n)
                        } else {
                            MultiPoly::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(pres.generators().to_vec(), matrix, pres)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn q(&self) -> &[MultiPoly] {
        &self.q
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    pub fn det(&self) -> &MultiPoly {
        &self.det
    }

    /// `det A` reduced modulo `(q_1, ..., q_n)`; congruent to [`det`]
    /// and interchangeable with it under the residue functional, but
    /// box-bounded.
    pub fn det_reduced(&self) -> &MultiPoly {
        &self.det_reduced
    }

    /// Remainder of `g` after successive Euclidean divisions by the
    /// `q_j(s_j)`: degree in `s_j` drops below `deg q_j` for every `j`.
    pub fn reduce_separated(&self, g: &MultiPoly) -> MultiPoly {
        reduce_separated(g, &self.q)
    }

    /// Degrees of the `q_j` in their own variable.
    pub fn degrees(&self) -> Vec<u32> {
        self.q
            .iter()
            .enumerate()
            .map(|(j, qj)| qj.degree_in(j).expect("q_j is nonzero"))
            .collect()
    }
}

fn reduce_separated(g: &MultiPoly, q: &[MultiPoly]) -> MultiPoly {
    let mut rem = g.clone();
    for (var, qj) in q.iter().enumerate() {
        let (_, r) = rem
            .univ_divmod(qj, var)
            .expect("q_j is monic in its variable");
        rem = r;
    }
    rem
}
