//! Gassner matrices, Alexander matrices of arrangements and their polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangements::{extend_linking, ArrangementSpec};
use crate::error::{Error, Result};
use crate::freebraid::{BraidWord, FreeAutomorphism, FreeWord, PureBraidWord};
use crate::laurent::{LaurentPoly, MonomialSubstitution, PolyMatrix};

/// Abelianized Fox Jacobian of a pure braid's action on `F_{n-1}`, over
/// `t_1..t_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GassnerMatrix(pub PolyMatrix);

impl GassnerMatrix {
    pub fn matrix(&self) -> &PolyMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn mul(&self, other: &GassnerMatrix) -> Result<GassnerMatrix> {
        Ok(GassnerMatrix(self.0.mul(&other.0)?))
    }
}

/// The `(n-1) × n` presentation matrix `(t_n·id − Θ(ξ²) | d_1)` over `t_1..t_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexMatrix {
    pub matrix: PolyMatrix,
    /// Basis words `y_i` in the `x` letters; `None` for the `x`-basis.
    pub basis: Option<Vec<FreeWord>>,
}

impl AlexMatrix {
    /// Number of planes.
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }
}

impl fmt::Display for AlexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

fn action(xi: &PureBraidWord, basis: Option<&[FreeWord]>) -> Result<FreeAutomorphism> {
    let act = FreeAutomorphism::artin(&xi.to_braid());
    match basis {
        Some(b) => act.change_basis(b),
        None => Ok(act),
    }
}

/// `Θ(ξ)`: entry `(i, j)` is the abelianized Fox derivative `∂ψ(y_i)/∂y_j`.
pub fn gassner(xi: &PureBraidWord, basis: Option<&[FreeWord]>) -> Result<GassnerMatrix> {
    let act = action(xi, basis)?;
    gassner_of_action(&act)
}

fn gassner_of_action(act: &FreeAutomorphism) -> Result<GassnerMatrix> {
    let m = act.rank();
    let ab = act.abelian_matrix();
    for (i, row) in ab.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != i32::from(i == j) {
                return Err(Error::NotPure);
            }
        }
    }
    let rows = act
        .images()
        .iter()
        .map(|w| {
            (1..=m)
                .map(|j| w.fox_derivative_ab(j))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GassnerMatrix(PolyMatrix::from_rows(m, rows)?))
}

/// Gassner matrix of an arbitrary braid word, rejecting non-pure input.
pub fn gassner_of_braid(braid: &BraidWord) -> Result<GassnerMatrix> {
    if !braid.is_pure() {
        return Err(Error::NotPure);
    }
    gassner_of_action(&FreeAutomorphism::artin(braid))
}

/// Alexander matrix of an arrangement from its combed braid, in the
/// `x`-basis or in the supplied basis of `F_{n-1}`.
pub fn alexander_matrix(spec: &ArrangementSpec, basis: Option<&[FreeWord]>) -> Result<AlexMatrix> {
    let r = spec.resolve()?;
    let n = r.n;
    if n == 1 {
        return Ok(AlexMatrix {
            matrix: PolyMatrix::zero(0, 1, 1),
            basis: None,
        });
    }
    let theta = gassner(&r.xi.concat(&r.xi)?, basis)?;
    let tn = LaurentPoly::var(n, n);
    let one = LaurentPoly::one(n);
    let rows = (0..n - 1)
        .map(|i| {
            let mut row: Vec<LaurentPoly> = (0..n - 1)
                .map(|j| {
                    let th = theta.0.get(i, j).embed(n);
                    if i == j {
                        &tn - &th
                    } else {
                        -th
                    }
                })
                .collect();
            row.push(&one - &LaurentPoly::var(n, i + 1));
            row
        })
        .collect();
    Ok(AlexMatrix {
        matrix: PolyMatrix::from_rows(n, rows)?,
        basis: basis.map(|b| b.to_vec()),
    })
}

/// Generators of `E_k`: all `(n-k) × (n-k)` minors; `E_n = (1)`.
pub fn ek_minors(m: &AlexMatrix, k: usize) -> Result<Vec<LaurentPoly>> {
    let n = m.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "ideal index",
            index: k,
            max: n,
        });
    }
    Ok(m.matrix.minors(n - k))
}

/// `Δ_A = det(t_n·id − Θ(ξ²)) / (t_n − 1)`, unit-normalized; `1` for `n ≤ 2`.
pub fn alexander_poly(spec: &ArrangementSpec, basis: Option<&[FreeWord]>) -> Result<LaurentPoly> {
    if let ArrangementSpec::Cable { .. } = spec {
        return Err(Error::Unsupported(
            "cables only have a link polynomial".into(),
        ));
    }
    let m = alexander_matrix(spec, basis)?;
    let n = m.n();
    if n <= 2 {
        return Ok(LaurentPoly::one(n));
    }
    let square = m.matrix.delete(None, Some(n - 1));
    let det = square.det()?;
    let tn1 = &LaurentPoly::var(n, n) - &LaurentPoly::one(n);
    det.exact_div(&tn1)?.normalize_unit()
}

/// The coordinate change `t_n ↦ t_1⋯t_n` from combed-braid to meridian coordinates.
fn fiber_to_meridians(n: usize) -> MonomialSubstitution {
    let rows = (0..n)
        .map(|i| {
            if i + 1 == n {
                vec![1; n]
            } else {
                (0..n).map(|j| i32::from(i == j)).collect()
            }
        })
        .collect();
    MonomialSubstitution::from_matrix(n, rows).unwrap()
}

/// Multivariable Alexander polynomial of the link at infinity, with `t_i`
/// the meridian of component `i`; unit-normalized.
pub fn link_alexander_poly(spec: &ArrangementSpec) -> Result<LaurentPoly> {
    match spec {
        ArrangementSpec::Cable {
            base,
            component,
            sign,
            count,
        } => {
            let mut poly = link_alexander_poly(base)?;
            let mut linking = base.linking_matrix()?;
            let n = linking.len();
            if *component == 0 || *component > n {
                return Err(Error::IndexOutOfRange {
                    what: "component",
                    index: *component,
                    max: n,
                });
            }
            let mut around = *component;
            for _ in 0..*count {
                let row: Vec<i64> = linking[around - 1].iter().map(|&x| i64::from(x)).collect();
                poly = crate::charvar::cable_link_poly(&poly, around, 1, i64::from(*sign), &row)?;
                linking = extend_linking(&linking, around - 1, *sign);
                around = linking.len();
            }
            Ok(poly)
        }
        _ => {
            let r = spec.resolve()?;
            let n = r.n;
            if n <= 2 {
                return Ok(LaurentPoly::one(n));
            }
            let delta = alexander_poly(spec, None)?;
            let flips: Vec<Vec<i32>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i != j {
                                0
                            } else if r.reversed[i] {
                                -1
                            } else {
                                1
                            }
                        })
                        .collect()
                })
                .collect();
            delta
                .substitute(&fiber_to_meridians(n))?
                .substitute(&MonomialSubstitution::from_matrix(n, flips)?)?
                .permute_vars(&r.labels)
                .normalize_unit()
        }
    }
}

/// `Δ_A(t) = (t − 1)·Δ_L(t, …, t)`, unit-normalized; `1` for a single plane.
/// The diagonal specialization can vanish identically (A(2134) is an example).
pub fn single_var_poly(spec: &ArrangementSpec) -> Result<LaurentPoly> {
    let n = spec.n()?;
    if n == 1 {
        return Ok(LaurentPoly::one(1));
    }
    let link = link_alexander_poly(spec)?;
    let diag = MonomialSubstitution::from_matrix(1, vec![vec![1]; n])?;
    let t1 = &LaurentPoly::var(1, 1) - &LaurentPoly::one(1);
    let f = &link.substitute(&diag)? * &t1;
    if f.is_zero() {
        return Ok(f);
    }
    f.normalize_unit()
}

/// `δ(A) = 1` iff `Δ_A(−1) = 0`; `0` for a single plane.
pub fn delta(spec: &ArrangementSpec) -> Result<u8> {
    if spec.n()? == 1 {
        return Ok(0);
    }
    delta_of_single_var(&single_var_poly(spec)?)
}

/// `δ` read off an already computed single-variable polynomial.
pub fn delta_of_single_var(f: &LaurentPoly) -> Result<u8> {
    Ok(u8::from(f.eval_signs(&[-1]) == 0.into()))
}

/// Fox Jacobian of the relators `β(x_i)·x_i^{-1}` of the closed braid `β`.
pub fn artin_alexander_matrix(beta: &BraidWord) -> Result<PolyMatrix> {
    if !beta.is_pure() {
        return Err(Error::NotPure);
    }
    let n = beta.strands();
    let act = FreeAutomorphism::artin(beta);
    let rows = act
        .images()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let rel = w.mul(&FreeWord::generator(n, i + 1).inverse());
            (1..=n)
                .map(|j| rel.fox_derivative_ab(j))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(n, rows)
}

/// Link polynomial of the closure of a pure braid: delete the last row and
/// column `j` (1-based) of the Fox matrix, divide the determinant by `t_j − 1`.
pub fn link_poly_from_braid(beta: &BraidWord, j: usize) -> Result<LaurentPoly> {
    let n = beta.strands();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            what: "column",
            index: j,
            max: n,
        });
    }
    if n == 1 {
        return Ok(LaurentPoly::one(1));
    }
    let m = artin_alexander_matrix(beta)?;
    let det = m.delete(Some(n - 1), Some(j - 1)).det()?;
    let tj1 = &LaurentPoly::var(n, j) - &LaurentPoly::one(n);
    det.exact_div(&tj1)?.normalize_unit()
}
