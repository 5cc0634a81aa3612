//! Grothendieck residues for quasi-regular systems.
//!
//! The global residue routes through the separating data `(q, A)`: the
//! residue of `h ds / p` is the coefficient of `s^(d_q - 1)` in the
//! remainder of `h * det A` after successive Euclidean divisions by the
//! univariate `q_j(s_j)`. Local residues at rational zeros use the same
//! data with a truncated power-series expansion at the node; at a simple
//! zero they reduce to `h(w) / Jacobian(w)`.

use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, Monomial, MultiPoly};
use crate::error::Error;
use crate::ideal::{GroebnerData, IdealPresentation, TransformationData};
use crate::matrix::poly_det;

/// A validated common zero of a presentation, with coordinates in Q(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroPoint {
    coords: Vec<GaussianRational>,
}

impl ZeroPoint {
    /// Checks `p(w) = 0` exactly.
    pub fn new(
        coords: Vec<GaussianRational>,
        pres: &IdealPresentation,
    ) -> Result<Self, Error> {
        if coords.len() != pres.nvars() {
            return Err(Error::ArityMismatch {
                expected: pres.nvars(),
                got: coords.len(),
            });
        }
        if !pres.vanishes_at(&coords) {
            return Err(Error::NodeNotAZero);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }
}

/// A Bezoutian certificate in `2n` variables `(s, z)`:
/// `p_j(s) - p_j(z) = sum_l entries[j][l] * (s_l - z_l)` for every `j`.
///
/// Variables `0..n` are the `s` block, `n..2n` the `z` block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeferMatrix {
    nvars: usize,
    entries: Vec<Vec<MultiPoly>>,
    det: MultiPoly,
}

impl HeferMatrix {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Entries in `2n` variables.
    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    /// The interpolation kernel `det B(s, z)` in `2n` variables.
    pub fn det(&self) -> &MultiPoly {
        &self.det
    }
}

/// Telescoping Hefer matrix, substituting variables in the order
/// `s_1, ..., s_n`.
pub fn hefer_matrix(pres: &IdealPresentation) -> Result<HeferMatrix, Error> {
    let elim: Vec<usize> = (0..pres.nvars()).collect();
    hefer_matrix_with_order(pres, &elim)
}

/// Telescoping Hefer matrix with an explicit variable substitution order
/// (a permutation of `0..n`). Different orders give different, equally
/// valid certificates.
pub fn hefer_matrix_with_order(
    pres: &IdealPresentation,
    elim: &[usize],
) -> Result<HeferMatrix, Error> {
    let n = pres.nvars();
    assert_eq!(elim.len(), n, "elimination order must be a permutation");
    let mut seen = vec![false; n];
    for &v in elim {
        assert!(v < n && !seen[v], "elimination order must be a permutation");
        seen[v] = true;
    }

    let s_embed: Vec<usize> = (0..n).collect();
    let mut entries: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    for p in pres.generators() {
        let mut row = vec![MultiPoly::zero(2 * n); n];
        // current generator with the first t eliminated variables moved
        // to their z copies
        let mut cur = p.rename_variables(2 * n, &s_embed);
        for &var in elim {
            let mut subst: Vec<usize> = (0..2 * n).collect();
            subst[var] = n + var;
            let next = cur.rename_variables(2 * n, &subst);
            let diff = &cur - &next;
            let s_minus_z = &MultiPoly::variable(2 * n, var)
                - &MultiPoly::variable(2 * n, n + var);
            row[var] = diff
                .div_exact(&s_minus_z)
                .expect("difference vanishes on the diagonal s_l = z_l");
            cur = next;
        }
        entries.push(row);
    }

    // verify the Bezout identity exactly before returning
    for (j, p) in pres.generators().iter().enumerate() {
        let p_s = p.rename_variables(2 * n, &s_embed);
        let p_z = p.rename_variables(2 * n, &(n..2 * n).collect::<Vec<_>>());
        let mut acc = MultiPoly::zero(2 * n);
        for (var, e) in entries[j].iter().enumerate() {
            let s_minus_z = &MultiPoly::variable(2 * n, var)
                - &MultiPoly::variable(2 * n, n + var);
            acc = &acc + &(e * &s_minus_z);
        }
        if acc != &p_s - &p_z {
            return Err(Error::InvariantViolation("Hefer identity does not hold"));
        }
    }

    let det = poly_det(&entries);
    Ok(HeferMatrix {
        nvars: n,
        entries,
        det,
    })
}

/// Jacobian determinant `det [d p_j / d s_l]`.
pub fn jacobian_det(pres: &IdealPresentation) -> MultiPoly {
    let n = pres.nvars();
    let rows: Vec<Vec<MultiPoly>> = pres
        .generators()
        .iter()
        .map(|p| {
            (0..n)
                .map(|var| p.diff(&Monomial::variable(n, var)))
                .collect()
        })
        .collect();
    poly_det(&rows)
}

/// The global Grothendieck residue `Res[h ds / p]` through the
/// transformation law: reduce `h * det A` successively by the `q_j` and
/// read off the coefficient of `s^(d_q - 1)`.
///
/// Works with `det A` already reduced modulo `(q)`: the corner
/// coefficient of the successive remainders kills the ideal `(q)`, so
/// the result is unchanged.
pub fn global_residue(h: &MultiPoly, tf: &TransformationData) -> GaussianRational {
    assert_eq!(h.nvars(), tf.nvars(), "arity mismatch");
    let rem = tf.reduce_separated(&(h * tf.det_reduced()));
    let corner = Monomial::new(tf.degrees().iter().map(|&d| d - 1).collect());
    rem.coefficient(&corner)
}

/// Root multiplicity of `w` in the univariate (in `var`) polynomial `q`,
/// together with the deflated cofactor `q / (s_var - w)^mult`.
fn deflate(q: &MultiPoly, var: usize, w: &GaussianRational) -> (u32, MultiPoly) {
    let n = q.nvars();
    let d = q.degree_in(var).expect("nonzero polynomial") as usize;
    let mut coeffs: Vec<GaussianRational> = (0..=d)
        .map(|e| q.coefficient_in_var(var, e as u32).constant_term())
        .collect();
    let mut mult = 0u32;
    loop {
        // synthetic division by (s - w)
        let deg = coeffs.len() - 1;
        if deg == 0 {
            break;
        }
        let mut quotient = vec![GaussianRational::zero(); deg];
        let mut carry = coeffs[deg].clone();
        for e in (0..deg).rev() {
            quotient[e] = carry.clone();
            carry = &coeffs[e] + &(&carry * w);
        }
        if !carry.is_zero() {
            break;
        }
        coeffs = quotient;
        mult += 1;
    }
    let poly = MultiPoly::from_terms(
        n,
        coeffs.into_iter().enumerate().map(|(e, c)| {
            let mut exps = vec![0u32; n];
            exps[var] = e as u32;
            (Monomial::new(exps), c)
        }),
    )
    .expect("uniform arity");
    (mult, poly)
}

/// The local residue of `h ds / p` at a rational zero `w`.
///
/// With `q_j = (s_j - w_j)^{m_j} r_j(s_j)` and `H = h * det A`, this is
/// the coefficient of `(s - w)^(m - 1)` in the Taylor expansion at `w`
/// of `H * prod 1/r_j`.
pub fn local_residue(
    h: &MultiPoly,
    tf: &TransformationData,
    w: &ZeroPoint,
) -> Result<GaussianRational, Error> {
    assert_eq!(h.nvars(), tf.nvars(), "arity mismatch");
    let n = tf.nvars();
    let mut mults = Vec::with_capacity(n);
    let mut cofs = Vec::with_capacity(n);
    for (var, qj) in tf.q().iter().enumerate() {
        let (m, r) = deflate(qj, var, &w.coords()[var]);
        if m == 0 {
            return Err(Error::NodeNotAZero);
        }
        mults.push(m - 1);
        cofs.push(r);
    }
    let bound = Monomial::new(mults);
    let h_det = h * tf.det_reduced();
    let mut acc = h_det.taylor_shift(w.coords()).truncate_to_box(&bound);
    for r in &cofs {
        let shifted = r.taylor_shift(w.coords());
        let inv = shifted.series_inverse_at_origin(&bound)?;
        acc = acc.mul_truncated(&inv, &bound);
    }
    Ok(acc.coefficient(&bound))
}

/// Algebraic multiplicity of the zero `w`: the local residue of the
/// Jacobian determinant, always a positive integer.
pub fn local_multiplicity(
    pres: &IdealPresentation,
    tf: &TransformationData,
    w: &ZeroPoint,
) -> Result<u64, Error> {
    let value = local_residue(&jacobian_det(pres), tf, w)?;
    value
        .as_integer()
        .and_then(|v| u64::try_from(v).ok())
        .filter(|&v| v > 0)
        .ok_or(Error::InvariantViolation(
            "local multiplicity is not a positive integer",
        ))
}

/// Outcome of the residue-duality membership test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Membership {
    pub is_member: bool,
    /// A standard monomial `m` with `Res[s^m f ds/p] != 0`, when not a
    /// member.
    pub witness: Option<(Monomial, GaussianRational)>,
}

/// Duality membership test: `f` lies in the ideal iff the residue of
/// `s^{beta_k} * f` vanishes for every standard monomial.
///
/// This decides membership purely through residues; agreement with the
/// normal-form route is a theorem, exercised by the test suite.
pub fn membership_test(f: &MultiPoly, gb: &GroebnerData, tf: &TransformationData) -> Membership {
    for m in gb.standard_monomials() {
        let probe = f.mul_term(m, &GaussianRational::one());
        let res = global_residue(&probe, tf);
        if !res.is_zero() {
            return Membership {
                is_member: false,
                witness: Some((m.clone(), res)),
            };
        }
    }
    Membership {
        is_member: true,
        witness: None,
    }
}
