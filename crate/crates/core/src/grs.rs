//! Generalized Reed–Solomon codes GRS_k(a, v) and brute-force oracles for
//! their distance and duality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::FieldMatrix;

/// Largest number of messages `min_distance_exhaustive` may enumerate (q^(2k)).
pub const DISTANCE_ENUMERATION_LIMIT: u64 = 10_000_000;
/// Largest number of column subsets `mds_check_by_columns` may test (C(n, k)).
pub const COLUMN_SUBSET_LIMIT: u64 = 1_000_000;
/// Dual codewords checked when the dual is too large to enumerate.
const DUAL_ENUMERATION_LIMIT: u64 = 100_000;
const DUAL_SAMPLES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrsError {
    #[error("evaluation and multiplier vectors differ in length ({eval} vs {mult})")]
    LengthMismatch { eval: usize, mult: usize },
    #[error("evaluation points {first} and {second} coincide")]
    RepeatedEvaluationPoint { first: usize, second: usize },
    #[error("multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("dimension k = {k} outside 1..={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("{what} needs {size} steps, above the limit {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
    },
}

#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Field,
    eval: Vec<FieldElement>,
    mult: Vec<FieldElement>,
    k: usize,
}

impl GrsCode {
    pub fn new(
        field: &Field,
        eval: Vec<FieldElement>,
        mult: Vec<FieldElement>,
        k: usize,
    ) -> Result<Self, GrsError> {
        if eval.len() != mult.len() {
            return Err(GrsError::LengthMismatch {
                eval: eval.len(),
                mult: mult.len(),
            });
        }
        let n = eval.len();
        if k == 0 || k > n {
            return Err(GrsError::DimensionOutOfRange { k, n });
        }
        if let Some(pos) = mult.iter().position(|x| x.is_zero()) {
            return Err(GrsError::ZeroMultiplier(pos));
        }
        let mut seen = vec![usize::MAX; field.order() as usize];
        for (s, x) in eval.iter().enumerate() {
            let slot = &mut seen[x.index() as usize];
            if *slot != usize::MAX {
                return Err(GrsError::RepeatedEvaluationPoint {
                    first: *slot,
                    second: s,
                });
            }
            *slot = s;
        }
        Ok(GrsCode {
            field: field.clone(),
            eval,
            mult,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.eval.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn eval(&self) -> &[FieldElement] {
        &self.eval
    }

    pub fn mult(&self) -> &[FieldElement] {
        &self.mult
    }

    /// k×n matrix with entry (i, s) = v_s · a_s^i.
    pub fn generator_matrix(&self) -> FieldMatrix {
        let f = &self.field;
        let n = self.n();
        let mut g = FieldMatrix::zeros(f, self.k, n);
        for s in 0..n {
            let mut acc = self.mult[s];
            for i in 0..self.k {
                g.set(i, s, acc);
                acc = f.mul(acc, self.eval[s]);
            }
        }
        g
    }

    /// G_k · G_k† computed as a matrix product.
    pub fn hermitian_gram(&self) -> FieldMatrix {
        let g = self.generator_matrix();
        g.multiply(&g.conjugate_transpose())
            .expect("G and G† have compatible shapes")
    }

    /// σ_{i,j} = Σ_s v_s^(q+1) · a_s^(q·i + j).
    pub fn sigma(&self, i: usize, j: usize) -> FieldElement {
        let f = &self.field;
        let q = f.q();
        let exponent = q * i as u64 + j as u64;
        f.sum(
            self.eval
                .iter()
                .zip(&self.mult)
                .map(|(&a, &v)| f.mul(f.pow_u(v, q + 1), f.pow_u(a, exponent))),
        )
    }

    /// The Gram matrix assembled entry by entry from σ: (row j, column i) = σ_{i,j}.
    pub fn hermitian_gram_direct(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(&self.field, self.k, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                m.set(j, i, self.sigma(i, j));
            }
        }
        m
    }

    pub fn min_distance_exhaustive(&self) -> Result<usize, GrsError> {
        self.min_distance_with_limit(DISTANCE_ENUMERATION_LIMIT)
    }

    /// Minimum Hamming weight over all nonzero codewords.
    ///
    /// The guard is on the full message count q^(2k). Only messages whose
    /// first nonzero coordinate is 1 are visited; every other nonzero
    /// message is a scalar multiple of one of those and has the same weight.
    pub fn min_distance_with_limit(&self, limit: u64) -> Result<usize, GrsError> {
        let f = &self.field;
        let order = f.order();
        let size = checked_power(order, self.k as u32);
        if size.is_none_or(|s| s > limit) {
            return Err(GrsError::GuardExceeded {
                what: "distance enumeration",
                size: size.unwrap_or(u64::MAX),
                limit,
            });
        }
        let g = self.generator_matrix();
        let n = self.n();
        // scaled[i][c] = c · row_i
        let scaled: Vec<Vec<Vec<FieldElement>>> = (0..self.k)
            .map(|i| {
                f.elements()
                    .map(|c| g.row(i).iter().map(|&x| f.mul(c, x)).collect())
                    .collect()
            })
            .collect();

        let mut best = n;
        let mut word = vec![FieldElement::ZERO; n];
        for lead in 0..self.k {
            let tail = self.k - lead - 1;
            let mut digits = vec![0u32; tail];
            loop {
                word.copy_from_slice(&scaled[lead][1]);
                for (offset, &d) in digits.iter().enumerate() {
                    if d != 0 {
                        for (w, &x) in word.iter_mut().zip(&scaled[lead + 1 + offset][d as usize]) {
                            *w = f.add(*w, x);
                        }
                    }
                }
                let weight = word.iter().filter(|x| !x.is_zero()).count();
                best = best.min(weight);
                // odometer over the trailing coordinates
                let mut pos = 0;
                while pos < tail {
                    digits[pos] += 1;
                    if (digits[pos] as u64) < order {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == tail {
                    break;
                }
            }
        }
        Ok(best)
    }

    pub fn mds_check_by_columns(&self) -> Result<bool, GrsError> {
        all_column_subsets_independent(&self.generator_matrix(), COLUMN_SUBSET_LIMIT)
    }

    pub fn mds_check_with_limit(&self, limit: u64) -> Result<bool, GrsError> {
        all_column_subsets_independent(&self.generator_matrix(), limit)
    }

    /// Checks that a dual basis obtained by elimination is orthogonal to
    /// every row of G_k and has dimension n − k, then checks every dual
    /// codeword (or a seeded random sample when q^(2(n−k)) > 10^7).
    pub fn dual_orthogonality_check(&self) -> bool {
        let f = &self.field;
        let g = self.generator_matrix();
        let n = self.n();
        let basis = g.null_space();
        if basis.len() != n - self.k {
            return false;
        }
        let orthogonal = |h: &[FieldElement]| {
            g.mul_vec(h)
                .map(|prod| prod.iter().all(|x| x.is_zero()))
                .unwrap_or(false)
        };
        if !basis.iter().all(|h| orthogonal(h)) {
            return false;
        }
        if basis.is_empty() {
            return true;
        }
        let combine = |coeffs: &[u32]| -> Vec<FieldElement> {
            let mut w = vec![FieldElement::ZERO; n];
            for (h, &c) in basis.iter().zip(coeffs) {
                let c = f.element(c as u64).expect("coefficient in range");
                for (x, &y) in w.iter_mut().zip(h) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            w
        };
        let order = f.order();
        let dim = basis.len() as u32;
        match checked_power(order, dim) {
            Some(total) if total <= DUAL_ENUMERATION_LIMIT => {
                let mut digits = vec![0u32; basis.len()];
                for _ in 0..total {
                    if !orthogonal(&combine(&digits)) {
                        return false;
                    }
                    for d in digits.iter_mut() {
                        *d += 1;
                        if (*d as u64) < order {
                            break;
                        }
                        *d = 0;
                    }
                }
                true
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                (0..DUAL_SAMPLES).all(|_| {
                    let coeffs: Vec<u32> = (0..basis.len())
                        .map(|_| rng.gen_range(0..order as u32))
                        .collect();
                    orthogonal(&combine(&coeffs))
                })
            }
        }
    }
}

fn checked_power(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// True iff every `rows`-subset of columns of `m` is linearly independent.
pub fn all_column_subsets_independent(m: &FieldMatrix, limit: u64) -> Result<bool, GrsError> {
    let (k, n) = (m.rows(), m.cols());
    let size = binomial(n as u64, k as u64);
    if size.is_none_or(|s| s > limit) {
        return Err(GrsError::GuardExceeded {
            what: "column subset check",
            size: size.unwrap_or(u64::MAX),
            limit,
        });
    }
    if k > n {
        return Ok(false);
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if m.select_columns(&subset).rank() < k {
            return Ok(false);
        }
        // next combination in lexicographic order
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            return Ok(true);
        };
        subset[pos] += 1;
        for i in pos + 1..k {
            subset[i] = subset[i - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn code(f: &Field, n: usize, k: usize, eval_step: i64) -> GrsCode {
        let eval = (0..n as i64).map(|s| f.xi_pow(eval_step * s)).collect();
        let mult = (0..n as i64).map(|s| f.xi_pow(s * s + 1)).collect();
        GrsCode::new(f, eval, mult, k).unwrap()
    }

    #[test]
    fn constructor_rejects_invalid_codes() {
        let f = make_field(3, 1).unwrap();
        let one = FieldElement::ONE;
        assert_eq!(
            GrsCode::new(&f, vec![one, one], vec![one, one], 1).unwrap_err(),
            GrsError::RepeatedEvaluationPoint {
                first: 0,
                second: 1
            }
        );
        assert_eq!(
            GrsCode::new(&f, vec![one, f.xi()], vec![one, FieldElement::ZERO], 1).unwrap_err(),
            GrsError::ZeroMultiplier(1)
        );
        assert!(matches!(
            GrsCode::new(&f, vec![one], vec![one], 2),
            Err(GrsError::DimensionOutOfRange { k: 2, n: 1 })
        ));
        assert!(matches!(
            GrsCode::new(&f, vec![one], vec![one, one], 1),
            Err(GrsError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn dimension_one_generator_and_gram() {
        let f = make_field(5, 1).unwrap();
        let eval: Vec<_> = (0..6).map(|s| f.xi_pow(s)).collect();
        let c = GrsCode::new(&f, eval, vec![FieldElement::ONE; 6], 1).unwrap();
        let g = c.generator_matrix();
        assert_eq!((g.rows(), g.cols()), (1, 6));
        assert!(g.entries().iter().all(|&x| x == FieldElement::ONE));

        let c = code(&f, 6, 1, 1);
        let expected = f.sum(c.mult().iter().map(|&v| f.pow_u(v, f.q() + 1)));
        assert_eq!(c.hermitian_gram().get(0, 0), expected);
        assert_eq!(c.min_distance_exhaustive().unwrap(), 6);
    }

    #[test]
    fn square_generator_is_nonsingular() {
        let f = make_field(7, 1).unwrap();
        let c = code(&f, 5, 5, 2);
        assert_eq!(c.generator_matrix().rank(), 5);
        assert!(c.mds_check_by_columns().unwrap());
        assert!(c.dual_orthogonality_check());
    }

    #[test]
    fn gram_routes_agree_and_are_hermitian() {
        let f = make_field(2, 2).unwrap();
        let c = code(&f, 9, 4, 1);
        let gram = c.hermitian_gram();
        assert_eq!(gram, c.hermitian_gram_direct());
        assert_eq!(gram.conjugate_transpose(), gram);
    }

    #[test]
    fn distance_over_gf49() {
        let f = make_field(7, 1).unwrap();
        let c = code(&f, 4, 2, 5);
        assert_eq!(c.min_distance_exhaustive().unwrap(), 3);
    }

    #[test]
    fn distance_guard() {
        let f = make_field(7, 1).unwrap();
        let c = code(&f, 18, 5, 1);
        assert!(matches!(
            c.min_distance_exhaustive(),
            Err(GrsError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn repeated_column_breaks_mds() {
        let f = make_field(5, 1).unwrap();
        let g = code(&f, 6, 3, 1).generator_matrix();
        let corrupted = g.select_columns(&[0, 1, 2, 3, 4, 2]);
        assert!(!all_column_subsets_independent(&corrupted, COLUMN_SUBSET_LIMIT).unwrap());
        assert!(all_column_subsets_independent(&g, COLUMN_SUBSET_LIMIT).unwrap());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 3), Some(56));
        assert_eq!(binomial(5, 7), Some(0));
        assert_eq!(binomial(306, 2), Some(46_665));
    }

    #[test]
    fn dual_of_full_code_is_trivial() {
        let f = make_field(3, 1).unwrap();
        let c = code(&f, 4, 4, 1);
        assert!(c.generator_matrix().null_space().is_empty());
        assert!(c.dual_orthogonality_check());
    }
}
