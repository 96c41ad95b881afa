//! Univariate polynomials with coefficients in a [`Field`], ascending degree.
//! Root-finding over prime fields is included for locating hyperplane pullback
//! divisors as explicit point sets.

use crate::field::{Field, PrimeField};
use crate::matrix::Matrix;
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>, // trimmed: leading coefficient nonzero unless empty
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// Monic product of `(x - root)` over the given roots.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        let mut p = Self::constant(field.clone(), field.one());
        for root in roots {
            let linear = Self::new(field.clone(), vec![field.neg(root), field.one()]);
            p = p.mul(&linear);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial ("minus infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone());
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), coeffs)
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(&divisor.coeffs[dd]).expect("leading coefficient nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = f.mul(&rem[k], &lead_inv);
            if !f.is_zero(&c) {
                for i in 0..=dd {
                    let idx = k - dd + i;
                    rem[idx] = f.sub(&rem[idx], &f.mul(&c, &divisor.coeffs[i]));
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Self::new(f.clone(), quot), Self::new(f.clone(), rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs.last().unwrap().clone();
        a.scale(&f.inv(&lead).unwrap())
    }

    pub fn gcd_many(field: F, polys: &[Self]) -> Self {
        let mut g = Self::zero(field);
        for p in polys {
            g = g.gcd(p);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl Poly<PrimeField> {
    /// `x^e mod m`, by square-and-multiply on residues mod `m`.
    fn x_pow_mod(field: PrimeField, e: u64, modulus: &Poly<PrimeField>) -> Poly<PrimeField> {
        let x = Poly::new(field, vec![0, 1]);
        let mut base = x.divmod(modulus).1;
        let mut acc = Poly::constant(field, 1).divmod(modulus).1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divmod(modulus).1;
            }
            base = base.mul(&base).divmod(modulus).1;
            e >>= 1;
        }
        acc
    }

    /// All roots in F_p (with multiplicity stripped), sorted. Cantor-Zassenhaus
    /// split of the product of distinct linear factors.
    pub fn roots(&self, rng: &mut SeededRng) -> Vec<u64> {
        let f = *self.field();
        let p = f.modulus();
        match self.degree() {
            None | Some(0) => return Vec::new(),
            _ => {}
        }
        // product of the distinct linear factors: gcd(x^p - x, self)
        let xp = Self::x_pow_mod(f, p, self);
        let x = Poly::new(f, vec![0, 1]);
        let linear_part = xp.sub(&x).gcd(self);
        let mut out = Vec::new();
        let mut stack = vec![linear_part];
        while let Some(g) = stack.pop() {
            match g.degree() {
                None | Some(0) => continue,
                Some(1) => {
                    // g = c1 x + c0, root -c0/c1
                    let root = f.mul(&f.neg(&g.coeff(0)), &f.inv(&g.coeff(1)).unwrap());
                    out.push(root);
                }
                _ => {
                    // random split: gcd(g, (x+a)^((p-1)/2) - 1)
                    loop {
                        let a = f.sample(rng);
                        let shifted = Poly::new(f, vec![a, 1]);
                        let pow = Self::poly_pow_mod(&shifted, (p - 1) / 2, &g);
                        let h = pow.sub(&Poly::constant(f, 1)).gcd(&g);
                        if let Some(dh) = h.degree() {
                            if dh > 0 && dh < g.degree().unwrap() {
                                let (q, _) = g.divmod(&h);
                                stack.push(h);
                                stack.push(q);
                                break;
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn poly_pow_mod(base: &Poly<PrimeField>, mut e: u64, modulus: &Poly<PrimeField>) -> Poly<PrimeField> {
        let f = *base.field();
        let mut base = base.divmod(modulus).1;
        let mut acc = Poly::constant(f, 1).divmod(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divmod(modulus).1;
            }
            base = base.mul(&base).divmod(modulus).1;
            e >>= 1;
        }
        acc
    }

    /// Distinct F_p-rational roots covering the full degree: the divisor of
    /// this polynomial is reduced and entirely visible over the working field.
    pub fn split_distinct_roots(&self, rng: &mut SeededRng) -> Option<Vec<u64>> {
        let d = self.degree()?;
        if !self.is_squarefree() {
            return None;
        }
        let roots = self.roots(rng);
        (roots.len() == d).then_some(roots)
    }
}

/// The `r` echelon-normalized linear functionals on `k^{n}` annihilating a
/// nonzero vector `v`: kernel of the 1 x n matrix `[v]`, read as row
/// functionals. Deterministic in `v`.
pub fn annihilating_functionals<F: Field>(field: &F, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let m = Matrix::from_rows(field.clone(), v.len(), vec![v.to_vec()]);
    m.kernel()
}
