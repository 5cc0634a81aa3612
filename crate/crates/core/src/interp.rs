//! The residue quadratic form, Lagrange interpolators of polynomials and
//! of jets, pairing covectors, and the solvers for the two multipoint
//! interpolation problems.
//!
//! A problem prescribes jet data `a_{j,l}` at zeros `w_j` of the system
//! together with a right-hand side `c`. The solver reduces the condition
//! to a single covector `lambda` on the coordinates `alpha[f]` of `f` in
//! the standard basis: either `lambda = 0` (degenerate alternative) or
//! the solutions form the affine hyperplane `lambda . alpha[f] = c`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{box_basis, GaussianRational, Monomial, MonomialOrder, MultiPoly};
use crate::error::Error;
use crate::ideal::{buchberger, GroebnerData, IdealPresentation, TransformationData};
use crate::matrix::ScalarMatrix;
use crate::residue::{global_residue, hefer_matrix, local_residue, HeferMatrix, ZeroPoint};

/// The matrix of the residue quadratic form on a monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QpMatrix {
    matrix: ScalarMatrix,
    basis: Vec<Monomial>,
}

impl QpMatrix {
    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Residue quadratic form on the Groebner standard basis:
/// entry `(k1, k2)` is `Res[s^(beta_k1 + beta_k2) ds / p]`.
///
/// Symmetric by construction; a singular result means the presentation
/// was not quasi-regular and is reported as an invariant violation.
pub fn qp_matrix(gb: &GroebnerData, tf: &TransformationData) -> Result<QpMatrix, Error> {
    let basis = gb.standard_monomials().to_vec();
    let n_dim = basis.len();
    let mut entries = vec![vec![GaussianRational::zero(); n_dim]; n_dim];
    for k1 in 0..n_dim {
        for k2 in k1..n_dim {
            let probe = MultiPoly::term(basis[k1].mul(&basis[k2]), GaussianRational::one());
            let value = global_residue(&probe, tf);
            entries[k1][k2] = value.clone();
            entries[k2][k1] = value;
        }
    }
    let matrix = ScalarMatrix::from_fn(n_dim, n_dim, |i, j| entries[i][j].clone());
    if matrix.det().is_zero() {
        return Err(Error::InvariantViolation(
            "residue quadratic form is singular",
        ));
    }
    Ok(QpMatrix { matrix, basis })
}

/// A separated monic system built from nodes and multiplicity vectors:
/// `p_j(s_j) = prod_l (s_j - xi_{l,j})^{nu_{l,j}}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparatedSystem {
    nodes: Vec<Vec<GaussianRational>>,
    multiplicities: Vec<Vec<u32>>,
    pres: IdealPresentation,
}

impl SeparatedSystem {
    pub fn new(
        nodes: Vec<Vec<GaussianRational>>,
        multiplicities: Vec<Vec<u32>>,
    ) -> Result<Self, Error> {
        let n = nodes
            .first()
            .map(Vec::len)
            .ok_or(Error::GeneratorCount { expected: 1, got: 0 })?;
        if n == 0 {
            return Err(Error::GeneratorCount { expected: 1, got: 0 });
        }
        for node in &nodes {
            if node.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: node.len(),
                });
            }
        }
        for (i, a) in nodes.iter().enumerate() {
            for b in nodes.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::DuplicateNode);
                }
            }
        }
        if multiplicities.len() != nodes.len() {
            return Err(Error::InvalidMultiplicity);
        }
        if multiplicities
            .iter()
            .any(|nu| nu.len() != n || nu.iter().any(|&e| e == 0))
        {
            return Err(Error::InvalidMultiplicity);
        }
        let generators: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let roots: Vec<(GaussianRational, u32)> = nodes
                    .iter()
                    .zip(&multiplicities)
                    .map(|(node, nu)| (node[j].clone(), nu[j]))
                    .collect();
                crate::algebra::univariate_from_roots(n, j, &roots)
            })
            .collect();
        let pres = IdealPresentation::new(generators, MonomialOrder::GrevLex)?;
        Ok(Self {
            nodes,
            multiplicities,
            pres,
        })
    }

    pub fn nvars(&self) -> usize {
        self.pres.nvars()
    }

    pub fn nodes(&self) -> &[Vec<GaussianRational>] {
        &self.nodes
    }

    pub fn multiplicities(&self) -> &[Vec<u32>] {
        &self.multiplicities
    }

    pub fn presentation(&self) -> &IdealPresentation {
        &self.pres
    }

    /// `d_j = deg p_j`.
    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars())
            .map(|j| self.pres.generators()[j].degree_in(j).expect("nonzero"))
            .collect()
    }

    /// The box basis `s^k`, `k <= d - 1`, in ascending lexicographic
    /// order.
    pub fn lex_basis(&self) -> Vec<Monomial> {
        let corner = Monomial::new(self.degrees().iter().map(|&d| d - 1).collect());
        box_basis(&corner, MonomialOrder::Lex)
    }

    /// The identity separating pair `(q, A) = (p, I)`.
    pub fn transformation(&self) -> TransformationData {
        TransformationData::separated(&self.pres).expect("construction is separated monic")
    }

    /// Jet support bound `nu_j - 1` for the declared node `idx`.
    pub fn jet_bound(&self, idx: usize) -> Monomial {
        Monomial::new(self.multiplicities[idx].iter().map(|&e| e - 1).collect())
    }
}

/// Residue quadratic form of a separated system by geometric-series
/// coefficient extraction, on the lexicographic box basis.
///
/// This is an algorithm independent of the Euclidean-division residue
/// route: entries factor per variable as coefficients of the expansion
/// of `s^k / p_j(s_j)` at infinity.
pub fn qp_matrix_euclid(sys: &SeparatedSystem) -> QpMatrix {
    let n = sys.nvars();
    let degrees = sys.degrees();
    let mut tables: Vec<Vec<GaussianRational>> = Vec::with_capacity(n);
    for j in 0..n {
        let d = degrees[j] as usize;
        let p = &sys.presentation().generators()[j];
        // p_j(s)/s^d = 1 + u(1/s) with u(x) = sum_{c<d} a_c x^(d-c)
        let series = MultiPoly::from_terms(
            1,
            (0..d)
                .map(|c| {
                    (
                        Monomial::new(vec![(d - c) as u32]),
                        p.coefficient_in_var(j, c as u32).constant_term(),
                    )
                })
                .chain(std::iter::once((
                    Monomial::new(vec![0]),
                    GaussianRational::one(),
                ))),
        )
        .expect("uniform arity");
        let inv = series
            .series_inverse_at_origin(&Monomial::new(vec![(d - 1) as u32]))
            .expect("constant term is one");
        let table: Vec<GaussianRational> = (0..=(2 * (d - 1)))
            .map(|beta| {
                if beta < d - 1 {
                    GaussianRational::zero()
                } else {
                    inv.coefficient(&Monomial::new(vec![(beta - (d - 1)) as u32]))
                }
            })
            .collect();
        tables.push(table);
    }
    let basis = sys.lex_basis();
    let n_dim = basis.len();
    let matrix = ScalarMatrix::from_fn(n_dim, n_dim, |k1, k2| {
        let mut acc = GaussianRational::one();
        for j in 0..n {
            let beta = (basis[k1].exponent(j) + basis[k2].exponent(j)) as usize;
            acc = &acc * &tables[j][beta];
            if acc.is_zero() {
                break;
            }
        }
        acc
    });
    QpMatrix { matrix, basis }
}

/// Truncated germ data at a node: coefficients `a_l` for multi-orders
/// `l` componentwise bounded by `bound`, prescribing the germ
/// `sum a_l (s - w)^l / l!`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    node: Vec<GaussianRational>,
    coefficients: BTreeMap<Monomial, GaussianRational>,
    bound: Monomial,
}

impl Jet {
    pub fn new(
        node: Vec<GaussianRational>,
        coefficients: Vec<(Monomial, GaussianRational)>,
        bound: Monomial,
    ) -> Result<Self, Error> {
        let n = node.len();
        if bound.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: bound.arity(),
            });
        }
        let mut map = BTreeMap::new();
        for (l, a) in coefficients {
            if l.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: l.arity(),
                });
            }
            if !l.divides(&bound) {
                return Err(Error::InvariantViolation(
                    "jet support exceeds its declared bound",
                ));
            }
            if !a.is_zero() {
                let entry = map.entry(l).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &a;
            }
        }
        map.retain(|_, a: &mut GaussianRational| !a.is_zero());
        Ok(Self {
            node,
            coefficients: map,
            bound,
        })
    }

    /// The zero germ at a node.
    pub fn zero_at(node: Vec<GaussianRational>) -> Self {
        let n = node.len();
        Self {
            node,
            coefficients: BTreeMap::new(),
            bound: Monomial::unit(n),
        }
    }

    pub fn node(&self) -> &[GaussianRational] {
        &self.node
    }

    pub fn bound(&self) -> &Monomial {
        &self.bound
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.coefficients.iter()
    }

    pub fn coefficient(&self, l: &Monomial) -> GaussianRational {
        self.coefficients
            .get(l)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The polynomial `sum a_l (s - w)^l / l!` representing the germ.
    pub fn germ_polynomial(&self) -> MultiPoly {
        let n = self.node.len();
        let base = MultiPoly::from_terms(
            n,
            self.coefficients.iter().map(|(l, a)| {
                let fact = GaussianRational::from_bigint(l.factorial());
                (l.clone(), a / &fact)
            }),
        )
        .expect("uniform arity");
        let minus_w: Vec<GaussianRational> = self.node.iter().map(|w| -w).collect();
        base.taylor_shift(&minus_w)
    }
}

fn validate_jets(jets: &[Jet], pres: &IdealPresentation) -> Result<(), Error> {
    for (i, jet) in jets.iter().enumerate() {
        ZeroPoint::new(jet.node().to_vec(), pres)?;
        for other in jets.iter().skip(i + 1) {
            if jet.node() == other.node() {
                return Err(Error::DuplicateNode);
            }
        }
    }
    Ok(())
}

/// Lagrange interpolator of a polynomial: the unique element of the
/// standard-basis span congruent to `f` modulo the ideal.
pub fn lagrange_poly(f: &MultiPoly, gb: &GroebnerData) -> MultiPoly {
    let (nf, _) = gb
        .normal_form(f)
        .expect("arity checked by the presentation");
    nf
}

/// Lagrange interpolator through the residue route: the residue in `s`
/// of `f(s) det B(s, z)`, returned as a polynomial in the `z` block
/// renamed back to the working variables.
///
/// Congruent to `f` modulo the ideal for every valid Hefer matrix; its
/// normal form equals [`lagrange_poly`].
pub fn lagrange_poly_via_hefer(
    f: &MultiPoly,
    tf: &TransformationData,
    hefer: &HeferMatrix,
) -> MultiPoly {
    let n = tf.nvars();
    assert_eq!(f.nvars(), n, "arity mismatch");
    assert_eq!(hefer.nvars(), n, "arity mismatch");
    let s_embed: Vec<usize> = (0..n).collect();
    let g = &f.rename_variables(2 * n, &s_embed) * hefer.det();
    let z_block: Vec<usize> = (n..2 * n).collect();
    let proj = projection_to_s(n);
    let mut out = MultiPoly::zero(n);
    for (z_exps, s_part) in g.split_by_block(&z_block) {
        let res = global_residue(&s_part.rename_variables(n, &proj), tf);
        out = &out + &MultiPoly::term(Monomial::new(z_exps), res);
    }
    out
}

// maps s_i to i and the (exponent-free) z slots to 0
fn projection_to_s(n: usize) -> Vec<usize> {
    (0..n).chain(std::iter::repeat(0).take(n)).collect()
}

/// The pairing covector of a jet list through local residues:
/// `lambda_k = sum_j Res_{w_j}[s^{beta_k} H_j ds / p]` where `H_j` is
/// the jet's germ polynomial.
pub fn noetherian_covector(
    jets: &[Jet],
    gb: &GroebnerData,
    tf: &TransformationData,
) -> Result<Vec<GaussianRational>, Error> {
    validate_jets(jets, gb.presentation())?;
    let mut lambda = vec![GaussianRational::zero(); gb.dimension()];
    for jet in jets {
        if jet.is_zero() {
            continue;
        }
        let w = ZeroPoint::new(jet.node().to_vec(), gb.presentation())?;
        let germ = jet.germ_polynomial();
        for (k, beta) in gb.standard_monomials().iter().enumerate() {
            let probe = germ.mul_term(beta, &GaussianRational::one());
            lambda[k] = &lambda[k] + &local_residue(&probe, tf, &w)?;
        }
    }
    Ok(lambda)
}

/// The pairing covector with literal partial derivatives:
/// `lambda_k = sum_j sum_l a_{j,l} d^l [s^{beta_k}](w_j)`.
///
/// The functional must annihilate every multiple of the generators so
/// that it factors through the quotient; this is checked exactly and an
/// ill-posed functional (jet order exceeding the multiplicity budget) is
/// rejected.
pub fn derivative_covector(
    jets: &[Jet],
    gb: &GroebnerData,
) -> Result<Vec<GaussianRational>, Error> {
    let apply = |g: &MultiPoly| -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for jet in jets {
            for (l, a) in jet.coefficients() {
                acc = &acc + &(a * &g.diff(l).eval(jet.node()));
            }
        }
        acc
    };
    // well-posedness: the functional kills s^{beta_k} * p_m for all k, m
    for beta in gb.standard_monomials() {
        for p in gb.presentation().generators() {
            let probe = p.mul_term(beta, &GaussianRational::one());
            if !apply(&probe).is_zero() {
                return Err(Error::IllPosedFunctional);
            }
        }
    }
    let lambda = gb
        .standard_monomials()
        .iter()
        .map(|beta| apply(&MultiPoly::term(beta.clone(), GaussianRational::one())))
        .collect();
    Ok(lambda)
}

/// Lagrange interpolator of a jet list: solves `Q_p alpha = lambda` for
/// the coordinates and returns `sum alpha_k s^{beta_k}`. Unspecified
/// zeros implicitly carry the zero germ.
pub fn lagrange_jets(
    jets: &[Jet],
    gb: &GroebnerData,
    tf: &TransformationData,
    qp: &QpMatrix,
) -> Result<MultiPoly, Error> {
    assert_eq!(
        qp.basis(),
        gb.standard_monomials(),
        "quadratic form basis must match the Groebner standard basis"
    );
    let lambda = noetherian_covector(jets, gb, tf)?;
    let alpha = qp
        .matrix()
        .solve(&lambda)
        .ok_or(Error::InvariantViolation("residue quadratic form is singular"))?;
    MultiPoly::from_terms(
        gb.nvars(),
        qp.basis()
            .iter()
            .cloned()
            .zip(alpha),
    )
    .map_err(|_| Error::InvariantViolation("basis arity mismatch"))
}

/// Coefficients `tau_k(a)` of the Lagrange interpolator of a jet list
/// over a separated system, on the lexicographic box basis: the local
/// residues of `H_j(s) det B(s, z)` with the `z` coefficients read off.
pub fn tau_coefficients(
    jets: &[Jet],
    sys: &SeparatedSystem,
) -> Result<Vec<GaussianRational>, Error> {
    let pres = sys.presentation();
    let n = pres.nvars();
    validate_jets(jets, pres)?;
    let tf = sys.transformation();
    let hefer = hefer_matrix(pres)?;
    let basis = sys.lex_basis();
    let z_block: Vec<usize> = (n..2 * n).collect();
    let s_embed: Vec<usize> = (0..n).collect();
    let proj = projection_to_s(n);
    let mut tau = vec![GaussianRational::zero(); basis.len()];
    for jet in jets {
        if jet.is_zero() {
            continue;
        }
        let w = ZeroPoint::new(jet.node().to_vec(), pres)?;
        let germ = jet.germ_polynomial();
        let g = &germ.rename_variables(2 * n, &s_embed) * hefer.det();
        let blocks = g.split_by_block(&z_block);
        for (k, gamma) in basis.iter().enumerate() {
            if let Some(s_part) = blocks.get(gamma.exponents()) {
                let value = local_residue(&s_part.rename_variables(n, &proj), &tf, &w)?;
                tau[k] = &tau[k] + &value;
            }
        }
    }
    Ok(tau)
}

/// Which pairing a problem uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProblemFlavor {
    /// Pair jet data against local residues (Noetherian operators).
    Noetherian,
    /// Pair jet data against literal partial derivatives.
    Derivative,
}

/// A fully validated interpolation problem.
#[derive(Clone, Debug)]
pub struct InterpolationProblem {
    gb: GroebnerData,
    tf: TransformationData,
    jets: Vec<Jet>,
    c: GaussianRational,
    flavor: ProblemFlavor,
    separated: Option<SeparatedSystem>,
}

impl InterpolationProblem {
    /// Problem over an explicit quasi-regular presentation.
    pub fn from_generators(
        pres: IdealPresentation,
        jets: Vec<Jet>,
        c: GaussianRational,
        flavor: ProblemFlavor,
    ) -> Result<Self, Error> {
        validate_jets(&jets, &pres)?;
        let gb = buchberger(pres)?;
        let tf = gb.transformation_data()?;
        Ok(Self {
            gb,
            tf,
            jets,
            c,
            flavor,
            separated: None,
        })
    }

    /// Problem over the separated system built from nodes and
    /// multiplicity vectors.
    pub fn from_nodes(
        nodes: Vec<Vec<GaussianRational>>,
        multiplicities: Vec<Vec<u32>>,
        jets: Vec<Jet>,
        c: GaussianRational,
        flavor: ProblemFlavor,
    ) -> Result<Self, Error> {
        let sys = SeparatedSystem::new(nodes, multiplicities)?;
        validate_jets(&jets, sys.presentation())?;
        let gb = buchberger(sys.presentation().clone())?;
        let tf = sys.transformation();
        Ok(Self {
            gb,
            tf,
            jets,
            c,
            flavor,
            separated: Some(sys),
        })
    }

    pub fn groebner(&self) -> &GroebnerData {
        &self.gb
    }

    pub fn transformation(&self) -> &TransformationData {
        &self.tf
    }

    pub fn jets(&self) -> &[Jet] {
        &self.jets
    }

    pub fn c(&self) -> &GaussianRational {
        &self.c
    }

    pub fn flavor(&self) -> ProblemFlavor {
        self.flavor
    }

    pub fn separated(&self) -> Option<&SeparatedSystem> {
        self.separated.as_ref()
    }
}

/// The solver's alternative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolutionSet {
    /// The functional vanishes identically and `c = 0`.
    AllFunctions,
    /// The functional vanishes identically but `c != 0`.
    Empty,
    /// `f` solves the problem iff `lambda . alpha[f] = c` on the given
    /// basis.
    Hyperplane {
        lambda: Vec<GaussianRational>,
        c: GaussianRational,
        basis: Vec<Monomial>,
    },
}

/// Solve a problem: compute the pairing covector and classify.
pub fn solve_problem(prob: &InterpolationProblem) -> Result<SolutionSet, Error> {
    let lambda = match prob.flavor() {
        ProblemFlavor::Noetherian => noetherian_covector(prob.jets(), &prob.gb, &prob.tf)?,
        ProblemFlavor::Derivative => derivative_covector(prob.jets(), &prob.gb)?,
    };
    if lambda.iter().all(GaussianRational::is_zero) {
        if prob.c().is_zero() {
            Ok(SolutionSet::AllFunctions)
        } else {
            Ok(SolutionSet::Empty)
        }
    } else {
        Ok(SolutionSet::Hyperplane {
            lambda,
            c: prob.c().clone(),
            basis: prob.gb.standard_monomials().to_vec(),
        })
    }
}

/// Exact check of a candidate polynomial against a solution set.
pub fn verify_solution(f: &MultiPoly, sol: &SolutionSet, gb: &GroebnerData) -> bool {
    match sol {
        SolutionSet::AllFunctions => true,
        SolutionSet::Empty => false,
        SolutionSet::Hyperplane { lambda, c, basis } => {
            assert_eq!(
                basis.as_slice(),
                gb.standard_monomials(),
                "solution basis must match the Groebner standard basis"
            );
            let alpha = gb.coordinates(f).expect("arity checked");
            let mut acc = GaussianRational::zero();
            for (l, a) in lambda.iter().zip(&alpha) {
                acc = &acc + &(l * a);
            }
            acc == *c
        }
    }
}
