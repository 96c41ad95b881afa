//! Degree-d maps `P^1 -> P^r` as coefficient tables, random "general" maps,
//! and the constructive genus-0 interpolation solvers (unconstrained and with
//! d of the target points on a hyperplane).

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{annihilating_functionals, Poly};
use crate::rng::SeededRng;
use crate::Error;

/// A point of the parameter `P^1`: one affine chart plus an explicit flag for
/// the point at infinity. Random sampling never needs infinity; the flag keeps
/// the chart choice honest.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamPoint<F: Field> {
    Affine(F::Elem),
    Infinity,
}

/// A point of `P^r`: homogeneous coordinates, not all zero; equality up to
/// global scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self, Error> {
        if coords.iter().all(|c| field.is_zero(c)) {
            return Err(Error::InvalidInput("projective point has all coordinates zero".into()));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len() - 1
    }

    /// Whether `other = c * self` for some nonzero scalar `c`.
    pub fn proportional(&self, field: &F, other: &ProjPoint<F>) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        scale_factor(field, &self.coords, &other.coords).is_some()
    }
}

/// The scalar `c` with `w = c * v`, when `v` is nonzero and `w` is a nonzero
/// multiple of it.
pub fn scale_factor<F: Field>(field: &F, v: &[F::Elem], w: &[F::Elem]) -> Option<F::Elem> {
    let k = v.iter().position(|c| !field.is_zero(c))?;
    let c = field.div(&w[k], &v[k])?;
    if field.is_zero(&c) {
        return None;
    }
    for j in 0..v.len() {
        if field.mul(&c, &v[j]) != w[j] {
            return None;
        }
    }
    Some(c)
}

/// A degree-d map to `P^r` given by an `(r+1) x (d+1)` coefficient table;
/// row i holds the coefficients of the component polynomial f_i, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap<F: Field> {
    r: usize,
    d: usize,
    coeffs: Matrix<F>,
}

impl<F: Field> RationalMap<F> {
    /// Validates: not all zero, exact degree d, base-point-free (component
    /// gcd of degree 0).
    pub fn new(field: F, r: usize, d: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, Error> {
        if r < 1 || d < 1 {
            return Err(Error::InvalidInput(format!("need r >= 1 and d >= 1, got r = {r}, d = {d}")));
        }
        if rows.len() != r + 1 || rows.iter().any(|row| row.len() != d + 1) {
            return Err(Error::InvalidInput(format!(
                "coefficient table must be {} x {}",
                r + 1,
                d + 1
            )));
        }
        let coeffs = Matrix::from_rows(field.clone(), d + 1, rows);
        let map = Self { r, d, coeffs };
        if map.all_zero() {
            return Err(Error::InvalidInput("coefficient table is identically zero".into()));
        }
        if !map.has_exact_degree() {
            return Err(Error::InvalidInput(format!("no component has degree exactly {d}")));
        }
        if !map.is_base_point_free() {
            return Err(Error::InvalidInput("component polynomials have a common root".into()));
        }
        Ok(map)
    }

    pub fn field(&self) -> &F {
        self.coeffs.field()
    }

    pub fn target_dim(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeff_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..=self.r).map(|i| self.coeffs.row(i).to_vec()).collect()
    }

    pub fn component(&self, i: usize) -> Poly<F> {
        Poly::new(self.field().clone(), self.coeffs.row(i).to_vec())
    }

    fn all_zero(&self) -> bool {
        let f = self.field();
        (0..=self.r).all(|i| self.coeffs.row(i).iter().all(|c| f.is_zero(c)))
    }

    fn has_exact_degree(&self) -> bool {
        let f = self.field();
        (0..=self.r).any(|i| !f.is_zero(self.coeffs.get(i, self.d)))
    }

    pub fn is_base_point_free(&self) -> bool {
        let f = self.field().clone();
        let polys: Vec<_> = (0..=self.r).map(|i| self.component(i)).collect();
        Poly::gcd_many(f, &polys).degree() == Some(0)
    }

    /// Span of the image is all of `P^r`.
    pub fn is_nondegenerate(&self) -> bool {
        self.coeffs.rank() == self.r + 1
    }

    /// Projective dimension of the linear span of the image.
    pub fn span_dim(&self) -> usize {
        self.coeffs.rank() - 1
    }

    pub fn evaluate(&self, p: &F::Elem) -> ProjPoint<F> {
        let coords: Vec<_> = (0..=self.r).map(|i| self.component(i).eval(p)).collect();
        debug_assert!(!coords.iter().all(|c| self.field().is_zero(c)), "base-point-free");
        ProjPoint { coords }
    }

    pub fn evaluate_param(&self, p: &ParamPoint<F>) -> ProjPoint<F> {
        match p {
            ParamPoint::Affine(x) => self.evaluate(x),
            ParamPoint::Infinity => {
                // homogenized top coefficients
                let coords: Vec<_> = (0..=self.r).map(|i| self.coeffs.get(i, self.d).clone()).collect();
                ProjPoint { coords }
            }
        }
    }

    /// Apply an invertible `(r+1) x (r+1)` coordinate change of the target.
    pub fn change_coordinates(&self, a: &Matrix<F>) -> Result<Self, Error> {
        let f = self.field().clone();
        assert_eq!(a.rows(), self.r + 1);
        assert_eq!(a.cols(), self.r + 1);
        if a.rank() != self.r + 1 {
            return Err(Error::InvalidInput("coordinate change is singular".into()));
        }
        let mut rows = vec![vec![f.zero(); self.d + 1]; self.r + 1];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = f.zero();
                for k in 0..=self.r {
                    acc = f.add(&acc, &f.mul(a.get(i, k), self.coeffs.get(k, j)));
                }
                *entry = acc;
            }
        }
        RationalMap::new(f, self.r, self.d, rows)
    }
}

const RESAMPLE_BUDGET: usize = 1000;

/// A random map with uniform coefficients, resampled until base-point-free
/// with exact degree d, nondegenerate when `d >= r`, and spanning a `P^d`
/// when `d < r` (degenerate maps are allowed below the target dimension).
pub fn random_map<F: Field>(field: &F, r: usize, d: usize, rng: &mut SeededRng) -> Result<RationalMap<F>, Error> {
    for _ in 0..RESAMPLE_BUDGET {
        let rows: Vec<Vec<F::Elem>> =
            (0..=r).map(|_| (0..=d).map(|_| field.sample(rng)).collect()).collect();
        let Ok(map) = RationalMap::new(field.clone(), r, d, rows) else {
            continue;
        };
        let want_span = d.min(r) + 1;
        if map.coeffs.rank() == want_span {
            return Ok(map);
        }
    }
    Err(Error::ResamplingBudget(format!("no valid random map of degree {d} to P^{r} found")))
}

/// Incidence conditions `f(p_i) = q_i`, with the first `hyperplane_count`
/// targets constrained to the hyperplane `x_{r+1} = 0`.
#[derive(Debug, Clone)]
pub struct IncidenceProblem<F: Field> {
    pub r: usize,
    pub d: usize,
    pub pairs: Vec<(ParamPoint<F>, ProjPoint<F>)>,
    pub hyperplane_count: usize,
}

impl<F: Field> IncidenceProblem<F> {
    pub fn validate(&self, field: &F) -> Result<(), Error> {
        if self.r < 1 || self.d < 1 {
            return Err(Error::InvalidInput("need r >= 1 and d >= 1".into()));
        }
        for (_, q) in &self.pairs {
            if q.coords.len() != self.r + 1 {
                return Err(Error::InvalidInput("target point has the wrong number of coordinates".into()));
            }
        }
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                if self.pairs[i].0 == self.pairs[j].0 {
                    return Err(Error::InvalidInput("parameter points must be pairwise distinct".into()));
                }
            }
        }
        if self.hyperplane_count != 0 {
            if self.hyperplane_count != self.d {
                return Err(Error::InvalidInput(format!(
                    "hyperplane_count must be 0 or d = {}, got {}",
                    self.d, self.hyperplane_count
                )));
            }
            if self.pairs.len() < self.d {
                return Err(Error::InvalidInput("need at least d pairs when d points are constrained to H".into()));
            }
            for (p, q) in self.pairs.iter().take(self.d) {
                if matches!(p, ParamPoint::Infinity) {
                    return Err(Error::InvalidInput("hyperplane-constrained parameter points must be affine".into()));
                }
                if !field.is_zero(&q.coords[self.r]) {
                    return Err(Error::InvalidInput(
                        "a hyperplane-constrained target has nonzero last coordinate".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDefect {
    /// Kernel element evaluates to the zero vector at a constraint point.
    BasePointAtConstraint,
    /// No component reaches degree d.
    WrongDegree,
    /// Span smaller than required.
    Degenerate,
    /// Common root of the components away from the constraints.
    BasePoint,
    /// Affine system `A x = b` has no solution at all.
    InconsistentSystem,
    /// Kernel is zero: nothing to sample.
    EmptyKernel,
}

#[derive(Debug, Clone)]
pub struct IncidenceSolution<F: Field> {
    pub kernel_dim: usize,
    pub basis: Vec<Vec<F::Elem>>,
    pub witness: Option<RationalMap<F>>,
    pub witness_valid: bool,
    pub defects: Vec<WitnessDefect>,
}

const WITNESS_TRIES: usize = 16;

fn pow_table<F: Field>(field: &F, p: &ParamPoint<F>, d: usize) -> Vec<F::Elem> {
    match p {
        ParamPoint::Affine(x) => {
            let mut out = Vec::with_capacity(d + 1);
            let mut acc = field.one();
            for _ in 0..=d {
                out.push(acc.clone());
                acc = field.mul(&acc, x);
            }
            out
        }
        ParamPoint::Infinity => {
            let mut out = vec![field.zero(); d + 1];
            out[d] = field.one();
            out
        }
    }
}

/// Linearized unconstrained solver: for each pair, r rows
/// `lambda(f(p)) = 0` over the `(r+1)(d+1)` unknown coefficients, where the
/// lambdas are the echelon functionals annihilating q. Returns the kernel and
/// a validated witness from random kernel combinations when one exists.
pub fn solve_through_points<F: Field>(
    field: &F,
    prob: &IncidenceProblem<F>,
    rng: &mut SeededRng,
) -> Result<IncidenceSolution<F>, Error> {
    prob.validate(field)?;
    if prob.hyperplane_count != 0 {
        return Err(Error::InvalidInput("use solve_through_points_hyperplane for constrained problems".into()));
    }
    let (r, d) = (prob.r, prob.d);
    let ncols = (r + 1) * (d + 1);
    let mut rows = Vec::new();
    for (p, q) in &prob.pairs {
        let powers = pow_table(field, p, d);
        for lam in annihilating_functionals(field, &q.coords) {
            let mut row = vec![field.zero(); ncols];
            for i in 0..=r {
                for j in 0..=d {
                    row[i * (d + 1) + j] = field.mul(&lam[i], &powers[j]);
                }
            }
            rows.push(row);
        }
    }
    let system = Matrix::from_rows(field.clone(), ncols, rows);
    let basis = system.kernel();
    let kernel_dim = basis.len();

    let mut defects = Vec::new();
    let mut witness = None;
    if kernel_dim == 0 {
        defects.push(WitnessDefect::EmptyKernel);
    } else {
        for _ in 0..WITNESS_TRIES {
            let vec = random_combination(field, &basis, rng);
            match witness_from_vector(field, prob, &vec, None) {
                Ok(map) => {
                    witness = Some(map);
                    break;
                }
                Err(ds) => defects = ds,
            }
        }
    }
    let witness_valid = witness.is_some();
    if witness_valid {
        defects.clear();
    }
    Ok(IncidenceSolution { kernel_dim, basis, witness, witness_valid, defects })
}

/// Hyperplane-constrained solver: the last component is pinned to the monic
/// product over the d constrained parameter points, and the other r
/// components of degree d are solved for linearly. Constrained points impose
/// r-1 conditions each, the remaining points r conditions each (with an
/// affine right-hand side from the pinned component).
pub fn solve_through_points_hyperplane<F: Field>(
    field: &F,
    prob: &IncidenceProblem<F>,
    rng: &mut SeededRng,
) -> Result<IncidenceSolution<F>, Error> {
    prob.validate(field)?;
    let (r, d) = (prob.r, prob.d);
    if prob.hyperplane_count != d {
        return Err(Error::InvalidInput("hyperplane solver requires hyperplane_count = d".into()));
    }
    let constrained_params: Vec<F::Elem> = prob
        .pairs
        .iter()
        .take(d)
        .map(|(p, _)| match p {
            ParamPoint::Affine(x) => x.clone(),
            ParamPoint::Infinity => unreachable!("checked in validate"),
        })
        .collect();
    let pinned = Poly::from_roots(field.clone(), &constrained_params);

    let ncols = r * (d + 1);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (idx, (p, q)) in prob.pairs.iter().enumerate() {
        let powers = pow_table(field, p, d);
        if idx < d {
            // last coordinate of both sides is already zero here
            let truncated = &q.coords[..r];
            for lam in annihilating_functionals(field, truncated) {
                let mut row = vec![field.zero(); ncols];
                for i in 0..r {
                    for j in 0..=d {
                        row[i * (d + 1) + j] = field.mul(&lam[i], &powers[j]);
                    }
                }
                rows.push(row);
                rhs.push(field.zero());
            }
        } else {
            let pinned_value = match p {
                ParamPoint::Affine(x) => pinned.eval(x),
                ParamPoint::Infinity => field.one(), // monic top coefficient
            };
            for lam in annihilating_functionals(field, &q.coords) {
                let mut row = vec![field.zero(); ncols];
                for i in 0..r {
                    for j in 0..=d {
                        row[i * (d + 1) + j] = field.mul(&lam[i], &powers[j]);
                    }
                }
                rows.push(row);
                rhs.push(field.neg(&field.mul(&lam[r], &pinned_value)));
            }
        }
    }
    let system = Matrix::from_rows(field.clone(), ncols, rows);
    let basis = system.kernel();
    let kernel_dim = basis.len();

    let mut defects = Vec::new();
    let mut witness = None;
    match system.solve(&rhs) {
        None => defects.push(WitnessDefect::InconsistentSystem),
        Some(particular) => {
            for _ in 0..WITNESS_TRIES {
                let mut vec = particular.clone();
                if kernel_dim > 0 {
                    let offset = random_combination(field, &basis, rng);
                    for (v, o) in vec.iter_mut().zip(&offset) {
                        *v = field.add(v, o);
                    }
                }
                match witness_from_vector(field, prob, &vec, Some(&pinned)) {
                    Ok(map) => {
                        witness = Some(map);
                        break;
                    }
                    Err(ds) => defects = ds,
                }
            }
        }
    }
    let witness_valid = witness.is_some();
    if witness_valid {
        defects.clear();
    }
    Ok(IncidenceSolution { kernel_dim, basis, witness, witness_valid, defects })
}

fn random_combination<F: Field>(field: &F, basis: &[Vec<F::Elem>], rng: &mut SeededRng) -> Vec<F::Elem> {
    let n = basis[0].len();
    let mut out = vec![field.zero(); n];
    for b in basis {
        let c = field.sample(rng);
        for (o, e) in out.iter_mut().zip(b) {
            *o = field.add(o, &field.mul(&c, e));
        }
    }
    out
}

/// Validate a coefficient vector as a geometric solution, re-checking
/// `f(p_i) ~ q_i` by evaluation, independently of the system assembly.
fn witness_from_vector<F: Field>(
    field: &F,
    prob: &IncidenceProblem<F>,
    vec: &[F::Elem],
    pinned: Option<&Poly<F>>,
) -> Result<RationalMap<F>, Vec<WitnessDefect>> {
    let (r, d) = (prob.r, prob.d);
    let free_rows = if pinned.is_some() { r } else { r + 1 };
    let mut rows: Vec<Vec<F::Elem>> =
        (0..free_rows).map(|i| vec[i * (d + 1)..(i + 1) * (d + 1)].to_vec()).collect();
    if let Some(p) = pinned {
        let mut row: Vec<F::Elem> = p.coeffs().to_vec();
        row.resize(d + 1, field.zero());
        rows.push(row);
    }
    let map = match RationalMap::new(field.clone(), r, d, rows) {
        Ok(m) => m,
        Err(_) => {
            // classify: all-zero / wrong degree / base point
            let mut ds = Vec::new();
            let any_top = (0..free_rows).any(|i| !field.is_zero(&vec[i * (d + 1) + d]));
            if !any_top && pinned.is_none() {
                ds.push(WitnessDefect::WrongDegree);
            } else {
                ds.push(WitnessDefect::BasePoint);
            }
            return Err(ds);
        }
    };
    let mut defects = Vec::new();
    for (p, q) in &prob.pairs {
        let value = map.evaluate_param(p);
        if value.coords.iter().all(|c| field.is_zero(c)) {
            defects.push(WitnessDefect::BasePointAtConstraint);
            return Err(defects);
        }
        if !value.proportional(field, q) {
            // should not happen for kernel vectors; classify as a defect anyway
            defects.push(WitnessDefect::BasePointAtConstraint);
            return Err(defects);
        }
    }
    if d >= r && !map.is_nondegenerate() {
        defects.push(WitnessDefect::Degenerate);
        return Err(defects);
    }
    Ok(map)
}
