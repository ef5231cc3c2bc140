use std::collections::BTreeMap;

use num_complex::Complex64;

/// Exponent pair `(degree in q, degree in p)`.
pub type Exponents = (u32, u32);

/// Sparse bivariate polynomial in `(q, p)` with complex coefficients.
///
/// Entries are kept in lexicographic exponent order and exact zeros are
/// never stored, so two polynomials built from the same arithmetic compare
/// equal bit for bit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: BTreeMap<Exponents, Complex64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(dq: u32, dp: u32, c: Complex64) -> Self {
        let mut poly = Self::zero();
        poly.accumulate((dq, dp), c);
        poly
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Complex64)>,
    {
        let mut poly = Self::zero();
        for (key, c) in entries {
            poly.accumulate(key, c);
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient when the polynomial has degree zero.
    pub fn as_constant(&self) -> Option<Complex64> {
        match self.coeffs.len() {
            0 => Some(Complex64::new(0.0, 0.0)),
            1 => self.coeffs.get(&(0, 0)).copied(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, dq: u32, dp: u32) -> Complex64 {
        self.coeffs
            .get(&(dq, dp))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Exponents, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn accumulate(&mut self, key: Exponents, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (key, c) in other.iter() {
            out.accumulate(key, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (key, c) in other.iter() {
            out.accumulate(key, -c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::from_entries(self.iter().map(|(k, c)| (k, c * s)))
    }

    /// Multiplication by `q`.
    pub fn mul_q(&self) -> Poly {
        Poly::from_entries(self.iter().map(|((a, b), c)| ((a + 1, b), c)))
    }

    /// Multiplication by `p`.
    pub fn mul_p(&self) -> Poly {
        Poly::from_entries(self.iter().map(|((a, b), c)| ((a, b + 1), c)))
    }

    pub fn d_dq(&self) -> Poly {
        Poly::from_entries(
            self.iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, b), c * a as f64)),
        )
    }

    pub fn d_dp(&self) -> Poly {
        Poly::from_entries(
            self.iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((a, b - 1), c * b as f64)),
        )
    }

    /// `P(q + dq, p + dp)` by binomial expansion.
    pub fn translate(&self, dq: f64, dp: f64) -> Poly {
        let mut out = Poly::zero();
        for ((a, b), c) in self.iter() {
            let q_row = binomial_row(a);
            let p_row = binomial_row(b);
            for (i, qc) in q_row.iter().enumerate() {
                let q_factor = *qc * dq.powi((a as usize - i) as i32);
                if q_factor == 0.0 {
                    continue;
                }
                for (j, pc) in p_row.iter().enumerate() {
                    let p_factor = *pc * dp.powi((b as usize - j) as i32);
                    if p_factor == 0.0 {
                        continue;
                    }
                    out.accumulate((i as u32, j as u32), c * (q_factor * p_factor));
                }
            }
        }
        out
    }

    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        self.iter()
            .map(|((a, b), c)| c * (q.powi(a as i32) * p.powi(b as i32)))
            .sum()
    }
}

/// Binomial coefficients `C(n, 0..=n)` as floats.
fn binomial_row(n: u32) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for k in 1..=n as u64 {
        let prev = row[(k - 1) as usize];
        row.push(prev * (n as u64 - k + 1) as f64 / k as f64);
    }
    row
}
