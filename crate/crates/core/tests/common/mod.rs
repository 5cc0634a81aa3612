//! Shared helpers for the integration suites: deterministic generators
//! for random systems, and independent oracles (partial fractions,
//! divided differences) used to cross-check the residue machinery.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use residua::algebra::{
    monomials_in_box, univariate_from_roots, GaussianRational, Monomial, MonomialOrder, MultiPoly,
};
use residua::ideal::{IdealPresentation, TransformationData};
use residua::interp::SeparatedSystem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

/// Small rational, occasionally with an imaginary part.
pub fn rand_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
    let re = GaussianRational::ratio(num, den);
    if rng.gen_range(0..4) == 0 {
        let im_num = rng.gen_range(-3i64..=3);
        &re + &(&GaussianRational::ratio(im_num, 1) * &GaussianRational::i())
    } else {
        re
    }
}

pub fn rand_nonzero_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = rand_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial with total degree at most `max_deg`.
pub fn rand_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, nterms: usize) -> MultiPoly {
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u32; nvars];
        let mut budget = max_deg;
        for e in exps.iter_mut() {
            let step = rng.gen_range(0..=budget);
            *e = step;
            budget -= step;
        }
        terms.push((Monomial::new(exps), rand_scalar(rng)));
    }
    MultiPoly::from_terms(nvars, terms).unwrap()
}

/// Degrees `d_1..d_n` with product at most `max_dim`, each at least 1.
pub fn rand_degrees(rng: &mut ChaCha8Rng, n: usize, max_dim: u64) -> Vec<u32> {
    loop {
        let d: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let prod: u64 = d.iter().map(|&x| u64::from(x)).product();
        if prod <= max_dim && prod >= 1 {
            return d;
        }
    }
}

/// A guaranteed quasi-regular system: `p_j = s_j^{d_j} +` terms of lower
/// total degree, so the heads are coprime pure powers.
pub fn rand_box_system(rng: &mut ChaCha8Rng, n: usize, max_dim: u64) -> IdealPresentation {
    let degrees = rand_degrees(rng, n, max_dim);
    let gens: Vec<MultiPoly> = degrees
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let head = MultiPoly::term(Monomial::variable(n, j), GaussianRational::one()).pow(d);
            let nterms = rng.gen_range(0..=3);
            let tail = rand_poly(rng, n, d - 1, nterms);
            &head + &tail
        })
        .collect();
    IdealPresentation::new(gens, MonomialOrder::GrevLex).unwrap()
}

/// Mix generators by a unimodular integer matrix: same ideal, but the
/// Buchberger run has real work to do.
pub fn mix_generators(rng: &mut ChaCha8Rng, pres: &IdealPresentation) -> IdealPresentation {
    let n = pres.nvars();
    let mut gens = pres.generators().to_vec();
    for _ in 0..rng.gen_range(1..=2) {
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        if j == k {
            continue;
        }
        let c = GaussianRational::from_integer(rng.gen_range(-2i64..=2));
        gens[j] = &gens[j] + &gens[k].scale(&c);
    }
    IdealPresentation::new(gens, pres.order()).unwrap()
}

/// An invertible triangular change of variables, kept as elementary
/// steps `s_j <- s_j + c * s_k`.
#[derive(Clone, Debug)]
pub struct Substitution {
    nvars: usize,
    steps: Vec<(usize, usize, i64)>,
}

impl Substitution {
    pub fn random(rng: &mut ChaCha8Rng, nvars: usize, nsteps: usize) -> Self {
        let mut steps = Vec::new();
        if nvars >= 2 {
            for _ in 0..nsteps {
                let j = rng.gen_range(0..nvars);
                let mut k = rng.gen_range(0..nvars);
                if k == j {
                    k = (k + 1) % nvars;
                }
                let c = rng.gen_range(-2i64..=2);
                if c != 0 {
                    steps.push((j, k, c));
                }
            }
        }
        Self { nvars, steps }
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        let mut cur = p.clone();
        for &(j, k, c) in &self.steps {
            let mut subs: Vec<Option<MultiPoly>> = vec![None; self.nvars];
            let replacement = &MultiPoly::variable(self.nvars, j)
                + &MultiPoly::variable(self.nvars, k).scale(&q(c));
            subs[j] = Some(replacement);
            cur = cur.substitute(&subs);
        }
        cur
    }

    pub fn apply_presentation(&self, pres: &IdealPresentation) -> IdealPresentation {
        IdealPresentation::new(
            pres.generators().iter().map(|p| self.apply_poly(p)).collect(),
            pres.order(),
        )
        .unwrap()
    }

    /// Pull a zero of the original system back to a zero of the
    /// substituted one.
    pub fn inverse_point(&self, w: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = w.to_vec();
        for &(j, k, c) in &self.steps {
            out[j] = &out[j] - &(&q(c) * &out[k]);
        }
        out
    }
}

/// Distinct small rational nodes.
pub fn rand_nodes(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<GaussianRational>> {
    let mut nodes: Vec<Vec<GaussianRational>> = Vec::new();
    while nodes.len() < count {
        let cand: Vec<GaussianRational> = (0..n)
            .map(|_| {
                let num = rng.gen_range(-3i64..=3);
                let den = *[1i64, 1, 2].get(rng.gen_range(0..3)).unwrap();
                GaussianRational::ratio(num, den)
            })
            .collect();
        if !nodes.contains(&cand) {
            nodes.push(cand);
        }
    }
    nodes
}

/// Random separated system with its full list of (zero, multiplicity)
/// pairs: the zeros of a separated system form the grid of per-variable
/// roots, with product multiplicities.
pub fn rand_separated_with_zeros(
    rng: &mut ChaCha8Rng,
    n: usize,
    node_count: usize,
    max_mult: u32,
) -> (SeparatedSystem, Vec<(Vec<GaussianRational>, u64)>) {
    let nodes = rand_nodes(rng, n, node_count);
    let mults: Vec<Vec<u32>> = nodes
        .iter()
        .map(|_| (0..n).map(|_| rng.gen_range(1..=max_mult)).collect())
        .collect();
    let sys = SeparatedSystem::new(nodes, mults).unwrap();
    let zeros = grid_zeros(&sys);
    (sys, zeros)
}

/// Enumerate the common zeros of a separated system (the grid of
/// per-variable roots) with their multiplicities.
pub fn grid_zeros(sys: &SeparatedSystem) -> Vec<(Vec<GaussianRational>, u64)> {
    let n = sys.nvars();
    // aggregate per-variable roots: distinct values with total multiplicity
    let mut per_var: Vec<Vec<(GaussianRational, u64)>> = vec![Vec::new(); n];
    for (node, nu) in sys.nodes().iter().zip(sys.multiplicities()) {
        for j in 0..n {
            match per_var[j].iter_mut().find(|(v, _)| v == &node[j]) {
                Some((_, m)) => *m += u64::from(nu[j]),
                None => per_var[j].push((node[j].clone(), u64::from(nu[j]))),
            }
        }
    }
    let mut zeros: Vec<(Vec<GaussianRational>, u64)> = vec![(Vec::new(), 1)];
    for roots in &per_var {
        let mut next = Vec::new();
        for (prefix, mult) in &zeros {
            for (value, m) in roots {
                let mut p = prefix.clone();
                p.push(value.clone());
                next.push((p, mult * m));
            }
        }
        zeros = next;
    }
    zeros
}

/// Per-variable root lists of a separated system, for the product
/// oracle.
pub fn separated_roots(sys: &SeparatedSystem) -> Vec<Vec<(GaussianRational, u32)>> {
    let n = sys.nvars();
    let mut per_var: Vec<Vec<(GaussianRational, u32)>> = vec![Vec::new(); n];
    for (node, nu) in sys.nodes().iter().zip(sys.multiplicities()) {
        for j in 0..n {
            match per_var[j].iter_mut().find(|(v, _)| v == &node[j]) {
                Some((_, m)) => *m += nu[j],
                None => per_var[j].push((node[j].clone(), nu[j])),
            }
        }
    }
    per_var
}

/// Scale a separating pair: `q_j -> q_j * (s_j - c_j)` with the matrix
/// row scaled accordingly. Produces a second valid pair for the
/// transformation-law invariance checks.
pub fn scaled_transformation(
    tf: &TransformationData,
    pres: &IdealPresentation,
    shifts: &[i64],
) -> TransformationData {
    let n = pres.nvars();
    let factors: Vec<MultiPoly> = (0..n)
        .map(|j| {
            &MultiPoly::variable(n, j) - &MultiPoly::constant(n, q(shifts[j]))
        })
        .collect();
    let q2: Vec<MultiPoly> = tf
        .q()
        .iter()
        .zip(&factors)
        .map(|(qj, f)| qj * f)
        .collect();
    let a2: Vec<Vec<MultiPoly>> = tf
        .matrix()
        .iter()
        .zip(&factors)
        .map(|(row, f)| row.iter().map(|a| a * f).collect())
        .collect();
    TransformationData::new(q2, a2, pres).unwrap()
}

// ---------------------------------------------------------------------
// independent oracles
// ---------------------------------------------------------------------

/// Univariate rational function `num / prod (s - xi)^nu` kept in
/// factored-denominator form for exact differentiation.
#[derive(Clone)]
struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

/// Classical sum-of-partial-fraction residues of `h / p` for a monic
/// univariate `p` with the given roots: at each root `xi` of
/// multiplicity `nu`, the residue is the `(nu-1)`-th derivative of
/// `h(s) / (p(s)/(s - xi)^nu)` at `xi`, divided by `(nu-1)!`.
///
/// Uses only differentiation and evaluation, so it is independent of the
/// Euclidean-division residue path.
pub fn univariate_residue_oracle(
    h: &MultiPoly,
    roots: &[(GaussianRational, u32)],
) -> GaussianRational {
    assert_eq!(h.nvars(), 1);
    let mut total = GaussianRational::zero();
    for (idx, (root, mult)) in roots.iter().enumerate() {
        let others: Vec<(GaussianRational, u32)> = roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, r)| r.clone())
            .collect();
        let mut f = RationalFn {
            num: h.clone(),
            den: univariate_from_roots(1, 0, &others),
        };
        // (nu - 1)-fold derivative by the quotient rule
        let d1 = Monomial::new(vec![1]);
        for _ in 1..*mult {
            let num = &(&f.num.diff(&d1) * &f.den) - &(&f.num * &f.den.diff(&d1));
            let den = &f.den * &f.den;
            f = RationalFn { num, den };
        }
        let point = [root.clone()];
        let value = &f.num.eval(&point) / &f.den.eval(&point);
        let mut fact = GaussianRational::one();
        for k in 2..*mult {
            fact = &fact * &q(i64::from(k));
        }
        if *mult >= 2 {
            // divide by (nu-1)!
            total = &total + &(&value / &fact);
        } else {
            total = &total + &value;
        }
    }
    total
}

/// Residue of `h ds / p` for a separated monic system, as the sum over
/// terms of products of univariate residues.
pub fn separated_residue_oracle(
    h: &MultiPoly,
    per_var_roots: &[Vec<(GaussianRational, u32)>],
) -> GaussianRational {
    let n = per_var_roots.len();
    assert_eq!(h.nvars(), n);
    let mut total = GaussianRational::zero();
    for (m, c) in h.terms() {
        let mut prod = c.clone();
        for j in 0..n {
            let mono = MultiPoly::term(
                Monomial::new(vec![m.exponent(j)]),
                GaussianRational::one(),
            );
            prod = &prod * &univariate_residue_oracle(&mono, &per_var_roots[j]);
            if prod.is_zero() {
                break;
            }
        }
        total = &total + &prod;
    }
    total
}

/// Classical Hermite interpolation by divided differences with repeated
/// nodes: the unique polynomial of degree `< sum nu_i` matching
/// `f^{(k)}(w_i)` for `k < nu_i`.
pub fn hermite_oracle(f: &MultiPoly, nodes: &[(GaussianRational, u32)]) -> MultiPoly {
    assert_eq!(f.nvars(), 1);
    let mut z: Vec<GaussianRational> = Vec::new();
    for (w, nu) in nodes {
        for _ in 0..*nu {
            z.push(w.clone());
        }
    }
    let n = z.len();
    // derivatives of f, scaled by 1/k!
    let max_mult = nodes.iter().map(|(_, nu)| *nu).max().unwrap() as usize;
    let mut scaled_derivs: Vec<MultiPoly> = Vec::with_capacity(max_mult);
    let mut cur = f.clone();
    let mut fact = GaussianRational::one();
    for k in 0..max_mult {
        if k > 0 {
            fact = &fact * &q(k as i64);
            cur = cur.diff(&Monomial::new(vec![1]));
        }
        scaled_derivs.push(cur.scale(&fact.inv()));
    }
    // dd[i][j] = f[z_i .. z_{i+j}]
    let mut dd: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        dd[i][0] = f.eval(&[z[i].clone()]);
    }
    for j in 1..n {
        for i in 0..(n - j) {
            dd[i][j] = if z[i] == z[i + j] {
                scaled_derivs[j].eval(&[z[i].clone()])
            } else {
                &(&dd[i + 1][j - 1] - &dd[i][j - 1]) / &(&z[i + j] - &z[i])
            };
        }
    }
    let mut acc = MultiPoly::zero(1);
    let mut basis = MultiPoly::one(1);
    for j in 0..n {
        acc = &acc + &basis.scale(&dd[0][j]);
        let lin = &MultiPoly::variable(1, 0) - &MultiPoly::constant(1, z[j].clone());
        basis = &basis * &lin;
    }
    acc
}

/// Direct evaluation of the derivative-pairing functional
/// `sum_j sum_l a_{j,l} d^l f (w_j)`.
pub fn derivative_functional(
    jets: &[residua::interp::Jet],
    f: &MultiPoly,
) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for jet in jets {
        for (l, a) in jet.coefficients() {
            acc = &acc + &(a * &f.diff(l).eval(jet.node()));
        }
    }
    acc
}

/// Random jet at a node, supported within `bound`.
pub fn rand_jet(
    rng: &mut ChaCha8Rng,
    node: Vec<GaussianRational>,
    bound: &Monomial,
) -> residua::interp::Jet {
    let mut coeffs: Vec<(Monomial, GaussianRational)> = Vec::new();
    for l in monomials_in_box(bound) {
        if rng.gen_range(0..3) != 0 {
            let c = rand_scalar(rng);
            coeffs.push((l, c));
        }
    }
    residua::interp::Jet::new(node, coeffs, bound.clone()).unwrap()
}

/// Dot product of two coordinate vectors.
pub fn dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    assert_eq!(a.len(), b.len());
    let mut acc = GaussianRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Exact equality helper for BigRational-based scalars built from parts.
pub fn ratio_big(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
