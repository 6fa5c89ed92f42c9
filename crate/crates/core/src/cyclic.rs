//! Finite Hermitian operators with vector systems: spectral matrix measures,
//! the canonical spectral transformation `U[f] = Σ_j f_j(A) φ_j` and the
//! verification of `A = U T_x U⁻¹`.

use serde::{Deserialize, Serialize};

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::l2::VectorFunction;
use crate::linalg::{self, vdot, vnorm, ComplexMatrix, HermitianEig, Tolerances, C64, ZERO};
use crate::measure::MatrixMeasure;

/// Relative deflation threshold of the block Krylov iteration.
pub const KRYLOV_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    eig: HermitianEig,
    tols: Tolerances,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let tols = Tolerances { hermitian: tol, ..Tolerances::default() };
        Self::with_tolerances(matrix, tols)
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tols: Tolerances) -> Result<Self> {
        let eig = linalg::eig_hermitian_with(&matrix, &tols)?;
        let matrix = matrix.hermitian_part();
        Ok(Self { matrix, eig, tols })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eig(&self) -> &HermitianEig {
        &self.eig
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tols
    }

    /// `E_A(ω) = Σ_{λ_k ∈ ω} P_k`
    pub fn spectral_projection(&self, omega: &BorelSet) -> ComplexMatrix {
        let n = self.dim();
        self.eig
            .eigenvalues
            .iter()
            .zip(&self.eig.projections)
            .filter(|(l, _)| omega.contains(**l))
            .fold(ComplexMatrix::zeros(n, n), |acc, (_, p)| &acc + p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorSystem {
    vectors: Vec<Vec<C64>>,
}

impl VectorSystem {
    pub fn new(n: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidFunction("vector system must contain at least one vector".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        Ok(Self { vectors })
    }

    pub fn d(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    fn check(&self, a: &HermitianOperator) -> Result<()> {
        match self.vectors.first() {
            Some(v) if v.len() != a.dim() => Err(Error::DimensionMismatch { expected: a.dim(), found: v.len() }),
            _ => Ok(()),
        }
    }
}

/// `f(A) = Σ f(λ_k) P_k`
pub fn func_calc(a: &HermitianOperator, f: impl FnMut(f64) -> C64) -> ComplexMatrix {
    a.eig.apply_fn(f)
}

/// `Σ_j f_j(A) φ_j` through the functional calculus.
pub fn w_tilde(a: &HermitianOperator, phi: &VectorSystem, f: &VectorFunction) -> Result<Vec<C64>> {
    phi.check(a)?;
    if f.dim() != phi.d() {
        return Err(Error::DimensionMismatch { expected: phi.d(), found: f.dim() });
    }
    let mut out = vec![ZERO; a.dim()];
    for (j, v) in phi.vectors.iter().enumerate() {
        let fj = func_calc(a, |t| f.eval(t)[j]);
        out = linalg::vadd(&out, &fj.mul_vec(v));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cyclicity {
    pub rank: usize,
    /// Smallest relative residual among accepted Krylov directions; close to
    /// the deflation threshold means the rank is fragile.
    pub margin: f64,
}

/// Gram–Schmidt twice against an orthonormal basis.
fn orthogonalize(mut w: Vec<C64>, basis: &[Vec<C64>]) -> Vec<C64> {
    for _ in 0..2 {
        for q in basis {
            let c = vdot(&w, q);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= c * qi;
            }
        }
    }
    w
}

/// Dimension of `lin{A^n φ_j}` by block Arnoldi with deflation.
pub fn cyclicity(a: &HermitianOperator, phi: &VectorSystem) -> Result<Cyclicity> {
    phi.check(a)?;
    let n = a.dim();
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let mut frontier: Vec<Vec<C64>> = Vec::new();
    let mut margin = f64::INFINITY;
    let mut accept = |w: Vec<C64>, reference: f64, basis: &mut Vec<Vec<C64>>, frontier: &mut Vec<Vec<C64>>| {
        if basis.len() >= n || reference == 0.0 {
            return;
        }
        let w = orthogonalize(w, basis);
        let r = vnorm(&w) / reference;
        if r > KRYLOV_TOL {
            margin = margin.min(r);
            let q = linalg::vscale(&w, C64::new(1.0 / vnorm(&w), 0.0));
            basis.push(q.clone());
            frontier.push(q);
        }
    };
    for v in &phi.vectors {
        accept(v.clone(), vnorm(v), &mut basis, &mut frontier);
    }
    while !frontier.is_empty() && basis.len() < n {
        let current = std::mem::take(&mut frontier);
        for q in current {
            let w = a.matrix.mul_vec(&q);
            let reference = vnorm(&w);
            accept(w, reference, &mut basis, &mut frontier);
        }
    }
    Ok(Cyclicity { rank: basis.len(), margin: if basis.is_empty() { 0.0 } else { margin } })
}

pub fn cyclicity_rank(a: &HermitianOperator, phi: &VectorSystem) -> Result<usize> {
    Ok(cyclicity(a, phi)?.rank)
}

/// Weight `(⟨P φ_j, φ_i⟩)_{ij}`.
fn projected_gram(p: &ComplexMatrix, phi: &VectorSystem) -> ComplexMatrix {
    let projected: Vec<Vec<C64>> = phi.vectors.iter().map(|v| p.mul_vec(v)).collect();
    ComplexMatrix::from_fn(phi.d(), phi.d(), |i, j| vdot(&projected[j], &phi.vectors[i]))
}

/// `E_{A,φ⃗}`: atoms at the clustered eigenvalues with weights
/// `(⟨P_k φ_j, φ_i⟩)_{ij}`.
pub fn spectral_matrix_measure(a: &HermitianOperator, phi: &VectorSystem) -> Result<MatrixMeasure> {
    phi.check(a)?;
    let atoms = a
        .eig
        .eigenvalues
        .iter()
        .zip(&a.eig.projections)
        .map(|(&t, p)| (t, projected_gram(p, phi)))
        .collect();
    MatrixMeasure::atomic(phi.d(), atoms)
}

/// Per-atom data of the canonical spectral transformation.
#[derive(Debug, Clone)]
pub struct CstAtom {
    pub t: f64,
    pub weight: ComplexMatrix,
    /// `b` with `⟨W b, b′⟩ = δ`, spanning ℂ^d modulo `Ker W`.
    pub basis: Vec<Vec<C64>>,
}

/// Matrix form of `U` in the orthonormal basis `{b_{k,m} χ_{{t_k}}}` of
/// `L²(E_{A,φ⃗})`.
#[derive(Debug, Clone)]
pub struct Cst {
    pub matrix: ComplexMatrix,
    pub atoms: Vec<CstAtom>,
    /// Atom index of each column.
    pub column_atom: Vec<usize>,
    pub measure: MatrixMeasure,
}

impl Cst {
    /// `dim L²(M)`
    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// `T_x` in the CST basis.
    pub fn multiplication_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&self.column_atom.iter().map(|&k| self.atoms[k].t).collect::<Vec<_>>())
    }

    /// `E_{T_x}(ω)` in the CST basis.
    pub fn multiplication_projection(&self, omega: &BorelSet) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(
            &self
                .column_atom
                .iter()
                .map(|&k| if omega.contains(self.atoms[k].t) { 1.0 } else { 0.0 })
                .collect::<Vec<_>>(),
        )
    }

    /// Coordinates of `[f]` in the CST basis: `⟨W_k f(t_k), b_{k,m}⟩`.
    pub fn coordinates(&self, f: &VectorFunction) -> Result<Vec<C64>> {
        if f.dim() != self.measure.dim() {
            return Err(Error::DimensionMismatch { expected: self.measure.dim(), found: f.dim() });
        }
        Ok(self
            .atoms
            .iter()
            .flat_map(|atom| {
                let wf = atom.weight.mul_vec(&f.eval(atom.t));
                atom.basis.iter().map(move |b| vdot(&wf, b)).collect::<Vec<_>>()
            })
            .collect())
    }
}

pub fn build_cst(a: &HermitianOperator, phi: &VectorSystem) -> Result<Cst> {
    let measure = spectral_matrix_measure(a, phi)?;
    let mut atoms = Vec::new();
    let mut columns = Vec::new();
    let mut column_atom = Vec::new();
    for (k, atom) in measure.atoms().iter().enumerate() {
        let cluster = a
            .eig
            .eigenvalues
            .iter()
            .position(|&l| l == atom.t)
            .expect("atoms come from eigenvalues");
        let p = &a.eig.projections[cluster];
        let projected: Vec<Vec<C64>> = phi.vectors.iter().map(|v| p.mul_vec(v)).collect();
        let weig = linalg::eig_hermitian_with(&atom.weight, &a.tols)?;
        let cutoff = a.tols.rank * (1.0 + weig.input_norm);
        let mut basis = Vec::new();
        for (&mu, vecs) in weig.eigenvalues.iter().zip(&weig.bases) {
            if mu <= cutoff {
                continue;
            }
            for v in vecs {
                let b = linalg::vscale(v, C64::new(1.0 / mu.sqrt(), 0.0));
                let mut col = vec![ZERO; a.dim()];
                for (bj, pj) in b.iter().zip(&projected) {
                    for (c, x) in col.iter_mut().zip(pj) {
                        *c += bj * x;
                    }
                }
                columns.push(col);
                column_atom.push(k);
                basis.push(b);
            }
        }
        atoms.push(CstAtom { t: atom.t, weight: atom.weight.clone(), basis });
    }
    Ok(Cst { matrix: ComplexMatrix::from_columns(a.dim(), &columns), atoms, column_atom, measure })
}

/// `U[f]`
pub fn apply_cst(cst: &Cst, f: &VectorFunction) -> Result<Vec<C64>> {
    let c = cst.coordinates(f)?;
    Ok(cst.matrix.mul_vec(&c))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResidual {
    pub omega: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XmueReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub cyclicity: Cyclicity,
    /// `‖U*U − I_K‖`
    pub isometry_residual: f64,
    /// `‖UU* − I_N‖`
    pub coisometry_residual: f64,
    /// `‖U T_x U⁻¹ − A‖`
    pub conjugation_residual: f64,
    /// `‖E_A(ω) U − U E_{T_x}(ω)‖` per ω.
    pub projection_residuals: Vec<ProjectionResidual>,
    pub max_residual: f64,
    /// `tol·(1+‖A‖)`
    pub threshold: f64,
    pub passed: bool,
}

/// Verifies `A = U T_x U⁻¹` and `E_A(ω) = U E_{T_x}(ω) U⁻¹` on `omegas`.
pub fn verify_xmue(a: &HermitianOperator, phi: &VectorSystem, tol: f64, omegas: &[BorelSet]) -> Result<XmueReport> {
    let cyc = cyclicity(a, phi)?;
    if cyc.rank < a.dim() {
        return Err(Error::NotCyclic { rank: cyc.rank, dim: a.dim() });
    }
    let cst = build_cst(a, phi)?;
    let u = &cst.matrix;
    let ustar = u.adjoint();
    let isometry_residual = (&(&ustar * u) - &ComplexMatrix::identity(cst.k())).norm();
    let coisometry_residual = (&(u * &ustar) - &ComplexMatrix::identity(cst.n())).norm();
    let conjugation_residual = (&(&(u * &cst.multiplication_matrix()) * &ustar) - &a.matrix).norm();
    let projection_residuals: Vec<ProjectionResidual> = omegas
        .iter()
        .map(|omega| {
            let lhs = &a.spectral_projection(omega) * u;
            let rhs = u * &cst.multiplication_projection(omega);
            ProjectionResidual { omega: omega.to_string(), residual: (&lhs - &rhs).norm() }
        })
        .collect();
    let max_residual = projection_residuals
        .iter()
        .map(|p| p.residual)
        .chain([isometry_residual, coisometry_residual, conjugation_residual])
        .fold(0.0, f64::max);
    let threshold = tol * (1.0 + a.matrix.norm());
    Ok(XmueReport {
        n: a.dim(),
        d: phi.d(),
        k: cst.k(),
        cyclicity: cyc,
        isometry_residual,
        coisometry_residual,
        conjugation_residual,
        projection_residuals,
        max_residual,
        threshold,
        passed: max_residual <= threshold,
    })
}

/// `max_k |⟨P_k f(A)x, g(A)y⟩ − f(λ_k) conj(g(λ_k)) ⟨P_k x, y⟩|`
pub fn check_spectral_measure_identity(
    a: &HermitianOperator,
    x: &[C64],
    y: &[C64],
    f: impl Fn(f64) -> C64,
    g: impl Fn(f64) -> C64,
) -> Result<f64> {
    for v in [x, y] {
        if v.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: v.len() });
        }
    }
    let fx = func_calc(a, &f).mul_vec(x);
    let gy = func_calc(a, &g).mul_vec(y);
    Ok(a.eig
        .eigenvalues
        .iter()
        .zip(&a.eig.projections)
        .map(|(&l, p)| {
            let lhs = vdot(&p.mul_vec(&fx), &gy);
            let rhs = f(l) * g(l).conj() * vdot(&p.mul_vec(x), y);
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l2::seminorm;
    use crate::linalg::{unit, ONE};
    use crate::poly::Poly;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    fn op(rows: &[&[f64]]) -> HermitianOperator {
        HermitianOperator::new(real(rows), 1e-10).unwrap()
    }

    fn swap() -> HermitianOperator {
        op(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn sys(n: usize, vs: Vec<Vec<C64>>) -> VectorSystem {
        VectorSystem::new(n, vs).unwrap()
    }

    #[test]
    fn func_calc_examples() {
        let a = swap();
        let sq = func_calc(&a, |t| C64::new(t * t, 0.0));
        assert!((&sq - &ComplexMatrix::identity(2)).norm() < 1e-14);
        let one = func_calc(&a, |_| ONE);
        assert!((&one - &ComplexMatrix::identity(2)).norm() < 1e-14);
        let d = op(&[&[0.0, 0.0], &[0.0, 1.0]]);
        let chi = func_calc(&d, |t| if t >= 0.5 { ONE } else { ZERO });
        assert!((&chi - &real(&[&[0.0, 0.0], &[0.0, 1.0]])).norm() < 1e-15);
    }

    #[test]
    fn cyclicity_examples() {
        let a = op(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(cyclicity_rank(&a, &sys(2, vec![vec![ONE, ONE]])).unwrap(), 2);
        let i2 = op(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(cyclicity_rank(&i2, &sys(2, vec![unit(2, 0)])).unwrap(), 1);
        let a3 = op(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        // e₁, e₂ alone span an invariant plane; the e₃ component is needed
        assert_eq!(cyclicity_rank(&a3, &sys(3, vec![unit(3, 0), unit(3, 1)])).unwrap(), 2);
        assert_eq!(cyclicity_rank(&a3, &sys(3, vec![vec![ONE, ZERO, ONE], unit(3, 1)])).unwrap(), 3);
        // no single vector is cyclic for a multiplicity-two eigenvalue
        let v = vec![ONE, ONE, ONE];
        assert_eq!(cyclicity_rank(&a3, &sys(3, vec![v])).unwrap(), 2);
    }

    #[test]
    fn measure_examples() {
        let a = op(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let m = spectral_matrix_measure(&a, &sys(2, vec![unit(2, 0), unit(2, 1)])).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[0].t, 1.0);
        assert!((&m.atoms()[0].weight - &real(&[&[1.0, 0.0], &[0.0, 0.0]])).norm() < 1e-15);
        assert!((&m.atoms()[1].weight - &real(&[&[0.0, 0.0], &[0.0, 1.0]])).norm() < 1e-15);

        let m = spectral_matrix_measure(&swap(), &sys(2, vec![unit(2, 0)])).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!((m.atoms()[0].t + 1.0).abs() < 1e-14 && (m.atoms()[1].t - 1.0).abs() < 1e-14);
        for atom in m.atoms() {
            assert!((atom.weight[(0, 0)].re - 0.5).abs() < 1e-14);
        }

        let m = spectral_matrix_measure(&swap(), &sys(2, vec![vec![ZERO, ZERO], vec![ZERO, ZERO]])).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn cst_examples() {
        let cst = build_cst(&swap(), &sys(2, vec![unit(2, 0)])).unwrap();
        assert_eq!(cst.k(), 2);
        let u = &cst.matrix;
        assert!((&(&u.adjoint() * u) - &ComplexMatrix::identity(2)).norm() < 1e-14);
        assert!((&(u * &u.adjoint()) - &ComplexMatrix::identity(2)).norm() < 1e-14);

        let i2 = op(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let cst = build_cst(&i2, &sys(2, vec![unit(2, 0)])).unwrap();
        assert_eq!(cst.k(), 1);
        let u = &cst.matrix;
        assert!((&(&u.adjoint() * u) - &ComplexMatrix::identity(1)).norm() < 1e-14);
        assert!((&(u * &u.adjoint()) - &ComplexMatrix::identity(2)).norm() > 0.5);

        let cst = build_cst(&swap(), &sys(2, vec![vec![ZERO, ZERO]])).unwrap();
        assert_eq!(cst.k(), 0);
        assert_eq!(cst.matrix.cols(), 0);
    }

    #[test]
    fn apply_cst_monomials() {
        let a = op(&[&[1.0, 0.5, 0.0], &[0.5, -1.0, 0.25], &[0.0, 0.25, 2.0]]);
        let phi = sys(3, vec![vec![ONE, ZERO, C64::new(0.0, 1.0)], vec![ZERO, ONE, ONE]]);
        let cst = build_cst(&a, &phi).unwrap();
        for j in 0..2 {
            let mut an = phi.vectors()[j].clone();
            for n in 0..4 {
                let u = apply_cst(&cst, &VectorFunction::vector_monomial(2, j, n)).unwrap();
                assert!(vnorm(&linalg::vsub(&u, &an)) < 1e-12, "j={j} n={n}");
                an = a.matrix().mul_vec(&an);
            }
        }
        let z = apply_cst(&cst, &VectorFunction::zero(2)).unwrap();
        assert!(vnorm(&z) == 0.0);
    }

    #[test]
    fn apply_cst_is_isometric_and_matches_functional_calculus() {
        let a = op(&[&[1.0, 0.5, 0.0], &[0.5, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let phi = sys(3, vec![vec![ONE, ZERO, ONE], vec![ZERO, ONE, C64::new(0.3, -0.2)]]);
        let cst = build_cst(&a, &phi).unwrap();
        let f = VectorFunction::on_set(
            &BorelSet::real_line(),
            vec![Poly::from_real(&[1.0, -2.0, 0.5]), Poly::new(vec![C64::new(0.0, 1.0), ONE])],
        )
        .unwrap();
        let u = apply_cst(&cst, &f).unwrap();
        let oracle = w_tilde(&a, &phi, &f).unwrap();
        assert!(vnorm(&linalg::vsub(&u, &oracle)) < 1e-12);
        assert!((vnorm(&u) - seminorm(&cst.measure, &f).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn xmue_examples() {
        let omegas = vec![BorelSet::closed(-2.0, 0.0), BorelSet::point(1.0), BorelSet::empty()];
        let r = verify_xmue(&swap(), &sys(2, vec![unit(2, 0)]), 1e-12, &omegas).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_residual < 1e-12);

        let a3 = op(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let r = verify_xmue(&a3, &sys(3, vec![vec![ONE, ZERO, ONE], unit(3, 1)]), 1e-10, &omegas).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_residual < 1e-10);

        let i2 = op(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(
            verify_xmue(&i2, &sys(2, vec![unit(2, 0)]), 1e-10, &omegas),
            Err(Error::NotCyclic { rank: 1, dim: 2 })
        ));
    }

    #[test]
    fn spectral_measure_identity_examples() {
        let a = op(&[&[1.0, 0.5, 0.0], &[0.5, -1.0, 0.25], &[0.0, 0.25, 2.0]]);
        let x = vec![ONE, C64::new(0.0, 1.0), ZERO];
        let y = vec![ZERO, ONE, C64::new(0.5, 0.5)];
        let one = |_: f64| ONE;
        assert!(check_spectral_measure_identity(&a, &x, &y, one, one).unwrap() < 1e-14);
        let r = check_spectral_measure_identity(&a, &x, &y, |t| C64::new(t, 0.0), |t| C64::new(t * t, 0.0)).unwrap();
        assert!(r < 1e-11);
        let zero = vec![ZERO; 3];
        assert_eq!(check_spectral_measure_identity(&a, &zero, &y, one, one).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_hermitian_and_bad_dims() {
        assert!(matches!(
            HermitianOperator::new(real(&[&[0.0, 1.0], &[0.0, 0.0]]), 1e-10),
            Err(Error::NotHermitian { .. })
        ));
        assert!(VectorSystem::new(2, vec![vec![ONE]]).is_err());
        let phi = sys(3, vec![unit(3, 0)]);
        assert!(spectral_matrix_measure(&swap(), &phi).is_err());
    }
}
