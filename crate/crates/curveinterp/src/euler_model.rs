//! Section-space models for the pullback of the tangent bundle along a map
//! `P^1 -> P^r`, via the Euler presentation `0 -> O -> O(d)^{r+1} -> f*T -> 0`.
//!
//! Two independent models are maintained on purpose and cross-checked:
//! a kernel model for the cotangent pullback (dimension counts only) and a
//! coset model for the tangent pullback (supports evaluation rows, divisor
//! vanishing, and gluing). Sections of `f*T` are `(r+1)`-tuples of degree-d
//! coefficient vectors modulo the line spanned by f's own coefficients.

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::annihilating_functionals;
use crate::rational_maps::RationalMap;
use crate::rng::SeededRng;
use crate::Error;

/// `h^0(f^* Omega(m))`: the kernel of the multiplication map
/// `H^0(O(m-d))^{r+1} -> H^0(O(m))`, `(s_i) |-> sum s_i f_i`.
pub fn omega_h0<F: Field>(f: &RationalMap<F>, m: usize) -> usize {
    let (r, d) = (f.target_dim(), f.degree());
    if m < d {
        return 0; // empty domain
    }
    let field = f.field().clone();
    let block = m - d + 1; // dim H^0(O(m - d))
    let ncols = (r + 1) * block;
    let mut mat = Matrix::zeros(field.clone(), m + 1, ncols);
    for i in 0..=r {
        let fi = f.component(i);
        for j in 0..block {
            // column (i, j) holds the coefficients of x^j * f_i
            for (k, c) in fi.coeffs().iter().enumerate() {
                mat.set(j + k, i * block + j, c.clone());
            }
        }
    }
    ncols - mat.rank()
}

/// The multiset of summand degrees of `f^* T = O(a_1) + ... + O(a_r)`,
/// descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub degrees: Vec<i64>,
}

impl SplittingType {
    /// Gap between the largest and smallest summand is at most 1. On `P^1`
    /// this is equivalent to the split bundle satisfying interpolation.
    pub fn is_balanced(&self) -> bool {
        match (self.degrees.first(), self.degrees.last()) {
            (Some(max), Some(min)) => max - min <= 1,
            _ => true,
        }
    }

    pub fn sum(&self) -> i64 {
        self.degrees.iter().sum()
    }
}

/// Recover the splitting type from the scan `h(m) = h^0(f^* Omega(m))` over
/// `m = 0 ... (r+1)d + 1`: the first difference counts `#{i : a_i <= m}`.
pub fn splitting_type<F: Field>(f: &RationalMap<F>) -> Result<SplittingType, Error> {
    let (r, d) = (f.target_dim(), f.degree());
    let scan_max = (r + 1) * d + 1;
    let mut degrees = Vec::with_capacity(r);
    let mut h_prev = 0usize;
    let mut delta_prev = 0usize;
    for m in 0..=scan_max {
        let h = omega_h0(f, m);
        let delta = h.checked_sub(h_prev).ok_or_else(|| {
            Error::Internal(format!("h^0(f^*Omega(m)) decreased at m = {m}"))
        })?;
        if delta < delta_prev {
            return Err(Error::Internal(format!("splitting scan differences decreased at m = {m}")));
        }
        for _ in 0..delta - delta_prev {
            degrees.push(m as i64);
        }
        h_prev = h;
        delta_prev = delta;
    }
    if degrees.len() != r {
        return Err(Error::Internal(format!(
            "splitting scan found {} summands, expected {r}",
            degrees.len()
        )));
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let st = SplittingType { degrees };
    let want = ((r + 1) * d) as i64;
    if st.sum() != want {
        return Err(Error::Internal(format!("splitting degrees sum to {}, expected {want}", st.sum())));
    }
    Ok(st)
}

/// `h^0` of the split bundle twisted by `t` hyperplane pullbacks and a general
/// reduced divisor of degree `e`: on `P^1` this is
/// `sum_i max(0, a_i + t d - e + 1)`.
pub fn h0_general_twist(s: &SplittingType, t: i64, d: usize, e: usize) -> i64 {
    s.degrees.iter().map(|a| 0.max(a + t * d as i64 - e as i64 + 1)).sum()
}

/// Pointwise constraint on a section of `f^* T` at a parameter point.
pub enum EvalConstraint<F: Field> {
    /// The section vanishes in the whole tangent fiber: r rows.
    FullVanishing,
    /// The section lies in a subspace cut out by the given functionals on the
    /// fiber (each annihilating `f(p)` so it descends to the quotient).
    Subspace(Vec<Vec<F::Elem>>),
}

/// Rows over the ambient coefficient space `k^{(r+1)(d+1)}` whose joint kernel
/// (modulo the line of f itself) is the constrained section space.
pub fn tangent_eval_rows<F: Field>(
    f: &RationalMap<F>,
    p: &F::Elem,
    constraint: &EvalConstraint<F>,
) -> Vec<Vec<F::Elem>> {
    let field = f.field().clone();
    let value = f.evaluate(p);
    let functionals = match constraint {
        EvalConstraint::FullVanishing => annihilating_functionals(&field, value.coords()),
        EvalConstraint::Subspace(fns) => fns.clone(),
    };
    functionals.iter().map(|lam| functional_row(f, p, lam)).collect()
}

/// The row `s |-> lambda(s(p))` over the ambient coefficient space.
pub fn functional_row<F: Field>(f: &RationalMap<F>, p: &F::Elem, lam: &[F::Elem]) -> Vec<F::Elem> {
    let field = f.field();
    let (r, d) = (f.target_dim(), f.degree());
    let mut powers = Vec::with_capacity(d + 1);
    let mut acc = field.one();
    for _ in 0..=d {
        powers.push(acc.clone());
        acc = field.mul(&acc, p);
    }
    let mut row = vec![field.zero(); (r + 1) * (d + 1)];
    for i in 0..=r {
        for j in 0..=d {
            row[i * (d + 1) + j] = field.mul(&lam[i], &powers[j]);
        }
    }
    row
}

/// `c` random functionals on the tangent fiber at `p`, cutting out a general
/// subspace of codimension `c`. Each is a random combination of the echelon
/// functionals annihilating `f(p)`.
pub fn random_fiber_functionals<F: Field>(
    f: &RationalMap<F>,
    p: &F::Elem,
    c: usize,
    rng: &mut SeededRng,
) -> Vec<Vec<F::Elem>> {
    let field = f.field().clone();
    let value = f.evaluate(p);
    let base = annihilating_functionals(&field, value.coords());
    assert!(c <= base.len(), "codimension exceeds fiber rank");
    // resample until the chosen combinations are independent
    loop {
        let mut chosen: Vec<Vec<F::Elem>> = Vec::with_capacity(c);
        for _ in 0..c {
            let mut v = vec![field.zero(); value.coords().len()];
            for b in &base {
                let coef = field.sample(rng);
                for (o, e) in v.iter_mut().zip(b) {
                    *o = field.add(o, &field.mul(&coef, e));
                }
            }
            chosen.push(v);
        }
        if c == 0 {
            return chosen;
        }
        let m = Matrix::from_rows(field.clone(), value.coords().len(), chosen.clone());
        if m.rank() == c {
            return chosen;
        }
    }
}

/// Dimension of the section space of `f^* T` cut down by the given ambient
/// rows: kernel dimension minus one for the Euler quotient line.
pub fn constrained_h0<F: Field>(f: &RationalMap<F>, rows: &[Vec<F::Elem>]) -> usize {
    let field = f.field().clone();
    let (r, d) = (f.target_dim(), f.degree());
    let ncols = (r + 1) * (d + 1);
    let m = Matrix::from_rows(field, ncols, rows.to_vec());
    let ker = ncols - m.rank();
    ker.checked_sub(1).expect("f's own coefficient vector always survives the constraints")
}

/// Ambient coefficient vector of f itself (the Euler relation generator).
pub fn euler_line_vector<F: Field>(f: &RationalMap<F>) -> Vec<F::Elem> {
    f.coeff_rows().into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rational_maps::random_map;

    fn fp() -> PrimeField {
        PrimeField::default_prime()
    }

    fn line_in_p2() -> RationalMap<PrimeField> {
        // degenerate degree-1 map spanning a line in P^2
        RationalMap::new(fp(), 2, 1, vec![vec![0, 1], vec![1, 0], vec![0, 0]]).unwrap()
    }

    #[test]
    fn omega_h0_line_examples() {
        let line = line_in_p2();
        // f^* Omega = O(-2) + O(-1): h^0 at m = 1 is 0 + 1, at m = 2 is 1 + 2
        assert_eq!(omega_h0(&line, 0), 0);
        assert_eq!(omega_h0(&line, 1), 1);
        assert_eq!(omega_h0(&line, 2), 3);
    }

    #[test]
    fn splitting_of_lines() {
        for r in 2..=5 {
            let mut rows = vec![vec![0u64; 2]; r + 1];
            rows[0][1] = 1;
            rows[1][0] = 1;
            let line = RationalMap::new(fp(), r, 1, rows).unwrap();
            let st = splitting_type(&line).unwrap();
            let mut expect = vec![1i64; r];
            expect[0] = 2;
            assert_eq!(st.degrees, expect);
            assert!(st.is_balanced());
        }
    }

    #[test]
    fn splitting_of_general_conic_is_balanced() {
        let mut rng = SeededRng::new(101);
        let conic = random_map(&fp(), 2, 2, &mut rng).unwrap();
        let st = splitting_type(&conic).unwrap();
        assert_eq!(st.degrees, vec![3, 3]);
    }

    #[test]
    fn splitting_of_general_quartic_in_p3() {
        let mut rng = SeededRng::new(55);
        let quartic = random_map(&fp(), 3, 4, &mut rng).unwrap();
        let st = splitting_type(&quartic).unwrap();
        assert_eq!(st.degrees, vec![6, 5, 5]);
    }

    #[test]
    fn balancedness_cases() {
        assert!(SplittingType { degrees: vec![2, 1] }.is_balanced());
        assert!(SplittingType { degrees: vec![3, 3] }.is_balanced());
        assert!(!SplittingType { degrees: vec![4, 2] }.is_balanced());
    }

    #[test]
    fn twist_counts_on_line_and_conic() {
        let line = SplittingType { degrees: vec![2, 1] };
        assert_eq!(h0_general_twist(&line, -1, 1, 0), 3); // O(1) + O(0)
        assert_eq!(h0_general_twist(&line, -1, 1, 2), 0);
        let conic = SplittingType { degrees: vec![3, 3] };
        assert_eq!(h0_general_twist(&conic, 0, 2, 3), 2); // O(0) + O(0)
    }

    #[test]
    fn eval_rows_drop_chi_by_rank() {
        let f = fp();
        let line = line_in_p2();
        // chi = (r+1)(d+1) - 1 = 5; one full-vanishing point drops by r = 2
        assert_eq!(constrained_h0(&line, &[]), 5);
        let rows = tangent_eval_rows(&line, &f.from_i64(4), &EvalConstraint::FullVanishing);
        assert_eq!(rows.len(), 2);
        assert_eq!(constrained_h0(&line, &rows), 3);
        // empty subspace constraint leaves the dimension unchanged
        let none = tangent_eval_rows(&line, &f.from_i64(4), &EvalConstraint::Subspace(vec![]));
        assert!(none.is_empty());
    }

    #[test]
    fn conic_full_vanishing_matches_twist_formula() {
        let f = fp();
        let mut rng = SeededRng::new(9);
        let conic = random_map(&f, 2, 2, &mut rng).unwrap();
        let st = splitting_type(&conic).unwrap();
        let pts = [3u64, 14, 159, 2653];
        let mut rows = Vec::new();
        for (e, p) in pts.iter().enumerate() {
            rows.extend(tangent_eval_rows(&conic, p, &EvalConstraint::FullVanishing));
            let got = constrained_h0(&conic, &rows);
            let want = h0_general_twist(&st, 0, 2, e + 1);
            assert_eq!(got as i64, want);
        }
        assert_eq!(constrained_h0(&conic, &rows), 0);
    }
}
