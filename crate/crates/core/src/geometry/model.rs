use std::fmt;

use thiserror::Error;

use crate::scalar::{Complex64, Field, Ring};
use crate::tensor::SquareMatrix;

use super::forms::Form;

/// Tolerance for floating consistency checks on input data.
pub const LINALG_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("d-squared: d(dφ) ≠ 0 on the coframe (residual {0:e})")]
    DSquared(f64),
    #[error("jacobi: Jacobi identity fails (residual {0:e})")]
    Jacobi(f64),
    #[error("j-squared: J² ≠ -I (residual {0:e})")]
    JSquared(f64),
    #[error("nijenhuis: Nijenhuis tensor of J is nonzero (max {0:e})")]
    Nijenhuis(f64),
    #[error("metric-compat: g(J·, J·) ≠ g (residual {0:e})")]
    MetricCompat(f64),
    #[error("metric: g is not symmetric positive definite")]
    MetricNotPositive,
    #[error("integrability: [T^(1,0), T^(1,0)] has a (0,1) part (residual {0:e})")]
    NotIntegrable(f64),
    #[error("shape: {0}")]
    Shape(String),
}

impl ModelError {
    /// Short machine-readable name of the failed check.
    pub fn check_name(&self) -> &'static str {
        match self {
            ModelError::DSquared(_) => "d-squared",
            ModelError::Jacobi(_) => "jacobi",
            ModelError::JSquared(_) => "j-squared",
            ModelError::Nijenhuis(_) => "nijenhuis",
            ModelError::MetricCompat(_) => "metric-compat",
            ModelError::MetricNotPositive => "metric",
            ModelError::NotIntegrable(_) => "integrability",
            ModelError::Shape(_) => "shape",
        }
    }
}

/// Every violated invariant of a model description.
#[derive(Debug, Error, Clone, PartialEq)]
pub struct ValidationFailure(pub Vec<ModelError>);

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `dφ^k = Σ A^k_ij φ^i∧φ^j + Σ B^k_ij φ^i∧φ̄^j` in a unitary coframe.
///
/// There is no slot for `φ̄^i∧φ̄^j` terms: integrability of `J` is built in.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEquations<S> {
    n: usize,
    /// `[k][i][j]`, antisymmetric in `(i, j)`.
    hol: Vec<S>,
    /// `[k][i][j]`, coefficient of `φ^i∧φ̄^j`.
    mixed: Vec<S>,
}

impl<S: Field> StructureEquations<S> {
    pub fn zero(n: usize) -> Self {
        StructureEquations { n, hol: vec![S::zero(); n * n * n], mixed: vec![S::zero(); n * n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `coeff · φ^i∧φ^j` to `dφ^k`, keeping the antisymmetric normalisation.
    pub fn add_hol(&mut self, k: usize, i: usize, j: usize, coeff: S) {
        let n = self.n;
        let half = coeff * S::from_rational(&crate::scalar::rational(1, 2));
        let ij = k * n * n + i * n + j;
        let ji = k * n * n + j * n + i;
        self.hol[ij] = self.hol[ij].clone() + half.clone();
        self.hol[ji] = self.hol[ji].clone() - half;
    }

    /// Adds `coeff · φ^i∧φ̄^j` to `dφ^k`.
    pub fn add_mixed(&mut self, k: usize, i: usize, j: usize, coeff: S) {
        let idx = k * self.n * self.n + i * self.n + j;
        self.mixed[idx] = self.mixed[idx].clone() + coeff;
    }

    pub fn hol(&self, k: usize, i: usize, j: usize) -> &S {
        &self.hol[k * self.n * self.n + i * self.n + j]
    }

    pub fn mixed(&self, k: usize, i: usize, j: usize) -> &S {
        &self.mixed[k * self.n * self.n + i * self.n + j]
    }

    /// `dφ^k` as a 2-form on the complexified coframe.
    pub fn differential(&self, k: usize) -> Form<S> {
        let n = self.n;
        let mut form = Form::zero(2 * n, 2);
        for i in 0..n {
            for j in 0..n {
                form.add_wedge(i, j, self.hol(k, i, j).clone());
                form.add_wedge(i, n + j, self.mixed(k, i, j).clone());
            }
        }
        form
    }

    /// Brackets via `φ^k([X, Y]) = -dφ^k(X, Y)`.
    fn structure_constants(&self) -> Vec<S> {
        let n = self.n;
        let dim = 2 * n;
        let mut f = vec![S::zero(); dim * dim * dim];
        let two = S::from_i64(2);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    // dφ^k(e_i, e_j) = 2 A^k_ij, dφ^k(e_i, ē_j) = B^k_ij
                    let hh = -(two.clone() * self.hol(k, i, j).clone());
                    let hm = -self.mixed(k, i, j).clone();
                    f[idx3(dim, k, i, j)] = hh;
                    f[idx3(dim, k, i, n + j)] = hm.clone();
                    f[idx3(dim, k, n + j, i)] = -hm;
                }
            }
        }
        fill_conjugate_block(n, &mut f);
        f
    }
}

#[inline]
pub(crate) fn idx3(dim: usize, c: usize, a: usize, b: usize) -> usize {
    (c * dim + a) * dim + b
}

/// Index of the conjugate basis vector in the complexified basis `(e_1..e_n, ē_1..ē_n)`.
#[inline]
pub fn bar(n: usize, a: usize) -> usize {
    if a < n {
        a + n
    } else {
        a - n
    }
}

/// Fills `φ̄^k([X, Y]) = conj φ^k([X̄, Ȳ])` from the `(1,0)` rows.
fn fill_conjugate_block<S: Ring>(n: usize, f: &mut [S]) {
    let dim = 2 * n;
    for k in 0..n {
        for a in 0..dim {
            for b in 0..dim {
                let v = f[idx3(dim, k, bar(n, a), bar(n, b))].conj();
                f[idx3(dim, n + k, a, b)] = v;
            }
        }
    }
}

/// Real Lie algebra with complex structure and metric.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLieData {
    pub dim: usize,
    /// `f[k][i][j]`: coefficient of `X_k` in `[X_i, X_j]`.
    pub structure: Vec<f64>,
    /// `j[row][col]`, acting on column vectors.
    pub complex_structure: Vec<Vec<f64>>,
    pub metric: Vec<Vec<f64>>,
}

impl RealLieData {
    pub fn new(dim: usize) -> Self {
        let id: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        RealLieData { dim, structure: vec![0.0; dim * dim * dim], complex_structure: vec![vec![0.0; dim]; dim], metric: id }
    }

    /// Sets `[X_i, X_j] += v X_k` together with the antisymmetric partner.
    pub fn add_bracket(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let d = self.dim;
        self.structure[idx3(d, k, i, j)] += v;
        self.structure[idx3(d, k, j, i)] -= v;
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for k in 0..d {
            for i in 0..d {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[k] += self.structure[idx3(d, k, i, j)] * x[i] * y[j];
                }
            }
        }
        out
    }

    fn apply_j(&self, v: &[f64]) -> Vec<f64> {
        self.complex_structure.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn scale(&self) -> f64 {
        let m = self.structure.iter().chain(self.complex_structure.iter().flatten()).chain(self.metric.iter().flatten());
        1.0 + m.fold(0.0f64, |acc, x| acc.max(x.abs())).powi(2)
    }

    /// Returns every violated invariant.
    pub fn validate(&self) -> Vec<ModelError> {
        let d = self.dim;
        let mut errs = Vec::new();
        if d == 0 || !d.is_multiple_of(2) {
            return vec![ModelError::Shape(format!("dimension {d} is not a positive even number"))];
        }
        if self.structure.len() != d * d * d
            || self.complex_structure.len() != d
            || self.metric.len() != d
            || self.complex_structure.iter().chain(&self.metric).any(|r| r.len() != d)
        {
            return vec![ModelError::Shape(format!("matrices must be {d}×{d}"))];
        }
        let tol = LINALG_TOL * self.scale();
        let basis: Vec<Vec<f64>> = (0..d).map(|i| unit(d, i)).collect();

        let mut jac: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let t1 = self.bracket(&basis[a], &self.bracket(&basis[b], &basis[c]));
                    let t2 = self.bracket(&basis[b], &self.bracket(&basis[c], &basis[a]));
                    let t3 = self.bracket(&basis[c], &self.bracket(&basis[a], &basis[b]));
                    for k in 0..d {
                        jac = jac.max((t1[k] + t2[k] + t3[k]).abs());
                    }
                }
            }
        }
        if jac > tol {
            errs.push(ModelError::Jacobi(jac));
        }

        let mut jj: f64 = 0.0;
        for v in &basis {
            let w = self.apply_j(&self.apply_j(v));
            for k in 0..d {
                jj = jj.max((w[k] + v[k]).abs());
            }
        }
        if jj > tol {
            errs.push(ModelError::JSquared(jj));
        }

        let mut nij: f64 = 0.0;
        for x in &basis {
            for y in &basis {
                let jx = self.apply_j(x);
                let jy = self.apply_j(y);
                let a = self.bracket(&jx, &jy);
                let b = self.apply_j(&self.bracket(&jx, y));
                let c = self.apply_j(&self.bracket(x, &jy));
                let e = self.bracket(x, y);
                for k in 0..d {
                    nij = nij.max((a[k] - b[k] - c[k] - e[k]).abs());
                }
            }
        }
        if nij > tol {
            errs.push(ModelError::Nijenhuis(nij));
        }

        let g = &self.metric;
        let symmetric = (0..d).all(|i| (0..d).all(|j| (g[i][j] - g[j][i]).abs() <= tol));
        if !symmetric || cholesky(g).is_none() {
            errs.push(ModelError::MetricNotPositive);
        }
        let mut compat: f64 = 0.0;
        for x in &basis {
            for y in &basis {
                let lhs = quad(g, &self.apply_j(x), &self.apply_j(y));
                compat = compat.max((lhs - quad(g, x, y)).abs());
            }
        }
        if compat > tol {
            errs.push(ModelError::MetricCompat(compat));
        }
        errs
    }
}

fn unit(d: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = 1.0;
    v
}

fn quad(g: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            acc += x[i] * g[i][j] * y[j];
        }
    }
    acc
}

fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let d = g.len();
    let mut l = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let v = g[i][i] - s;
                if v <= 0.0 {
                    return None;
                }
                l[i][j] = v.sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Input to [`build_model`].
#[derive(Clone, Debug)]
pub enum ModelInput<S> {
    Structure(StructureEquations<S>),
    Real(RealLieData),
}

/// A left-invariant Hermitian structure in a unitary (1,0)-frame.
///
/// Stored as the full complexified structure constants over the basis
/// `(e_1..e_n, ē_1..ē_n)`; index `a < n` is `e_a`, `a >= n` is `ē_{a-n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianModel<S> {
    n: usize,
    structure: Vec<S>,
}

impl<S: Field> HermitianModel<S> {
    /// From `C^k_ij = φ^k([e_i, e_j])` and `D^k_ij = φ^k([e_i, ē_j])`, both `[k][i][j]`.
    pub fn from_brackets(n: usize, hol: &[S], mixed: &[S]) -> Result<Self, ValidationFailure> {
        if hol.len() != n * n * n || mixed.len() != n * n * n {
            return Err(ValidationFailure(vec![ModelError::Shape("bracket arrays must have n³ entries".into())]));
        }
        let dim = 2 * n;
        let mut f = vec![S::zero(); dim * dim * dim];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let c = hol[k * n * n + i * n + j].clone();
                    f[idx3(dim, k, i, j)] = c;
                    let d = mixed[k * n * n + i * n + j].clone();
                    f[idx3(dim, k, i, n + j)] = d.clone();
                    f[idx3(dim, k, n + j, i)] = -d;
                }
            }
        }
        // φ^k([e_i, ē_j]) determines the (0,1) part through reality, and φ^k([ē_i, ē_j]) = 0
        // follows from integrability of the conjugate block.
        fill_conjugate_block(n, &mut f);
        let model = HermitianModel { n, structure: f };
        let errs = model.validate();
        if errs.is_empty() {
            Ok(model)
        } else {
            Err(ValidationFailure(errs))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Coefficient of basis vector `c` in `[f_a, f_b]`.
    pub fn bracket(&self, c: usize, a: usize, b: usize) -> &S {
        &self.structure[idx3(2 * self.n, c, a, b)]
    }

    pub fn structure_constants(&self) -> &[S] {
        &self.structure
    }

    /// Largest residual of the complexified Jacobi identity.
    pub fn jacobi_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for out in 0..dim {
                        let mut acc = S::zero();
                        for m in 0..dim {
                            acc = acc
                                + self.bracket(out, a, m).clone() * self.bracket(m, b, c).clone()
                                + self.bracket(out, b, m).clone() * self.bracket(m, c, a).clone()
                                + self.bracket(out, c, m).clone() * self.bracket(m, a, b).clone();
                        }
                        worst = worst.max(acc.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest `(0,1)` component of `[e_i, e_j]`.
    pub fn integrability_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max(self.bracket(n + k, i, j).magnitude());
                }
            }
        }
        worst
    }

    pub fn validate(&self) -> Vec<ModelError> {
        let tol = if S::EXACT { 0.0 } else { LINALG_TOL * (1.0 + self.max_abs().powi(2)) };
        let mut errs = Vec::new();
        let integ = self.integrability_defect();
        if integ > tol {
            errs.push(ModelError::NotIntegrable(integ));
        }
        let jac = self.jacobi_defect();
        if jac > tol {
            errs.push(ModelError::Jacobi(jac));
        }
        errs
    }

    fn max_abs(&self) -> f64 {
        self.structure.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }

    /// `dφ^c` as a 2-form: `dφ^c(f_a, f_b) = -φ^c([f_a, f_b])`.
    pub fn coframe_differential(&self, c: usize) -> Form<S> {
        let dim = self.dim();
        let mut form = Form::zero(dim, 2);
        for a in 0..dim {
            for b in (a + 1)..dim {
                form.add_wedge(a, b, -self.bracket(c, a, b).clone());
            }
        }
        form
    }

    /// Re-expresses the model in the frame `e'_a = Σ_b u[b][a] e_b`.
    pub fn change_frame(&self, u: &SquareMatrix<S>) -> Self {
        let n = self.n;
        let dim = 2 * n;
        // full change of basis P on the complexified space, and its inverse P^H (unitary)
        let p = SquareMatrix::from_fn(dim, |i, j| match (i < n, j < n) {
            (true, true) => u.get(i, j).clone(),
            (false, false) => u.get(i - n, j - n).conj(),
            _ => S::zero(),
        });
        let pinv = p.adjoint();
        let mut f = vec![S::zero(); dim * dim * dim];
        for c in 0..dim {
            for a in 0..dim {
                for b in 0..dim {
                    let mut acc = S::zero();
                    for a0 in 0..dim {
                        let pa = p.get(a0, a);
                        if pa.is_zero() {
                            continue;
                        }
                        for b0 in 0..dim {
                            let pb = p.get(b0, b);
                            if pb.is_zero() {
                                continue;
                            }
                            for c0 in 0..dim {
                                acc = acc
                                    + pinv.get(c, c0).clone() * self.bracket(c0, a0, b0).clone() * pa.clone() * pb.clone();
                            }
                        }
                    }
                    f[idx3(dim, c, a, b)] = acc;
                }
            }
        }
        HermitianModel { n, structure: f }
    }

    pub fn map_scalar<T: Field>(&self, f: impl Fn(&S) -> T) -> HermitianModel<T> {
        HermitianModel { n: self.n, structure: self.structure.iter().map(f).collect() }
    }
}

/// Builds and validates a model from either description.
pub fn build_model(input: &ModelInput<Complex64>) -> Result<HermitianModel<Complex64>, ValidationFailure> {
    match input {
        ModelInput::Structure(eqs) => from_structure_equations(eqs),
        ModelInput::Real(real) => from_real_lie(real),
    }
}

/// Brackets recovered from `φ^k([X, Y]) = -dφ^k(X, Y)`; fails if `d² ≠ 0`.
pub fn from_structure_equations<S: Field>(eqs: &StructureEquations<S>) -> Result<HermitianModel<S>, ValidationFailure> {
    let n = eqs.n;
    let model = HermitianModel { n, structure: eqs.structure_constants() };
    let mut errs = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let ddphi = model.exterior_derivative(&eqs.differential(k));
        worst = worst.max(ddphi.max_abs());
    }
    let tol = if S::EXACT { 0.0 } else { LINALG_TOL * (1.0 + model.max_abs().powi(2)) };
    if worst > tol {
        errs.push(ModelError::DSquared(worst));
    }
    if errs.is_empty() {
        Ok(model)
    } else {
        Err(ValidationFailure(errs))
    }
}

/// Unitary (1,0)-frame by Gram–Schmidt on `X_a - i J X_a` in basis order.
pub fn from_real_lie(real: &RealLieData) -> Result<HermitianModel<Complex64>, ValidationFailure> {
    let errs = real.validate();
    if !errs.is_empty() {
        return Err(ValidationFailure(errs));
    }
    let d = real.dim;
    let n = d / 2;
    let g = &real.metric;
    let herm = |u: &[Complex64], w: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += u[i] * g[i][j] * w[j].conj();
            }
        }
        acc
    };
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for a in 0..d {
        let x = unit(d, a);
        let jx = real.apply_j(&x);
        let mut v: Vec<Complex64> = (0..d).map(|k| Complex64::new(x[k], -jx[k])).collect();
        for e in &frame {
            let p = herm(&v, e);
            for k in 0..d {
                v[k] -= p * e[k];
            }
        }
        let norm = herm(&v, &v).re.sqrt();
        if norm > 1e-9 {
            frame.push(v.into_iter().map(|z| z / norm).collect());
        }
        if frame.len() == n {
            break;
        }
    }
    if frame.len() != n {
        return Err(ValidationFailure(vec![ModelError::Shape("(1,0)-eigenspace has the wrong dimension".into())]));
    }
    let basis: Vec<Vec<Complex64>> =
        frame.iter().cloned().chain(frame.iter().map(|e| e.iter().map(|z| z.conj()).collect())).collect();
    // coefficient along f_c of a complex vector v is g_C(v, conj f_c)
    let bilinear = |u: &[Complex64], w: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += u[i] * g[i][j] * w[j];
            }
        }
        acc
    };
    let cbracket = |u: &[Complex64], w: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let f = real.structure[idx3(d, k, i, j)];
                    if f != 0.0 {
                        out[k] += u[i] * w[j] * f;
                    }
                }
            }
        }
        out
    };
    let mut f = vec![Complex64::new(0.0, 0.0); d * d * d];
    for a in 0..d {
        for b in 0..d {
            let v = cbracket(&basis[a], &basis[b]);
            for c in 0..d {
                f[idx3(d, c, a, b)] = bilinear(&v, &basis[bar(n, c)]);
            }
        }
    }
    let model = HermitianModel { n, structure: f };
    let errs = model.validate();
    if errs.is_empty() {
        Ok(model)
    } else {
        Err(ValidationFailure(errs))
    }
}
