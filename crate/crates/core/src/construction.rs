//! The two GRS-based EAQMDS families of length n = (b+1)(q²−1)/a.
//!
//! Case 1 (a + b odd) and case 2 (a + b even) share the evaluation vector
//! a = (τ, ξτ, …, ξ^b τ) with τ = (1, β, …, β^(t−1)), β = ξ^a. They differ in
//! the multiplier vector and in which exponents make σ_{i,j} nonzero.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{make_field, prime_power, Field, FieldElement, FieldError};
use crate::grs::{GrsCode, GrsError};
use crate::linalg::{vandermonde, LinalgError};

/// Samples drawn by [`Construction::solve_rho`] before giving up.
pub const RHO_ATTEMPT_CAP: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("a = {a} does not divide q + 1 = {}", q + 1)]
    ADoesNotDivide { q: u64, a: u64 },
    #[error("b = {b} exceeds min{{a-{slack}, q-3}} = {bound} required when a + b is {parity}")]
    BOutOfRange {
        b: u64,
        bound: i64,
        slack: u64,
        parity: &'static str,
    },
    #[error("d_max = {d_max} exceeds (n+2)/2 with n = {n}")]
    DistanceBeyondSingletonRange { d_max: u64, n: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("no admissible rho found after {attempts} samples (seed {seed})")]
    RhoAttemptsExhausted { attempts: u64, seed: u64 },
    #[error("distance d = {d} outside 2..={d_max}")]
    DistanceOutOfRange { d: u64, d_max: u64 },
    #[error("dimension k = {k} outside 1..={max}")]
    DimensionOutOfRange { k: usize, max: usize },
    #[error("rho has length {got}, expected {expected}")]
    RhoLength { got: usize, expected: usize },
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    /// a + b odd
    Odd,
    /// a + b even
    Even,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::Odd => 1,
            Case::Even => 2,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Validated (q, a, b) with every derived integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub case: Case,
    /// (q² − 1)/a, the order of β.
    pub t: u64,
    /// First υ of the nonzero-sum window.
    pub m: u64,
    pub n: u64,
    pub d_max: u64,
    pub c_claimed: u64,
}

pub fn validate_params(q: u64, a: u64, b: u64) -> Result<ConstructionParams, ParamError> {
    let (p, e) = prime_power(q).ok_or(ParamError::NotPrimePower(q))?;
    // Surface the table guard before anything else.
    if (q as u128) * (q as u128) > crate::field::MAX_FIELD_ORDER as u128 {
        return Err(ParamError::Field(FieldError::TooLarge { p, m: 2 * e }));
    }
    if a == 0 || !(q + 1).is_multiple_of(a) {
        return Err(ParamError::ADoesNotDivide { q, a });
    }
    let case = if (a + b) % 2 == 1 {
        Case::Odd
    } else {
        Case::Even
    };
    let slack = match case {
        Case::Odd => 3,
        Case::Even => 4,
    };
    let bound = (a as i64 - slack as i64).min(q as i64 - 3);
    if b as i64 > bound {
        return Err(ParamError::BOutOfRange {
            b,
            bound,
            slack,
            parity: match case {
                Case::Odd => "odd",
                Case::Even => "even",
            },
        });
    }
    let t = (q * q - 1) / a;
    let n = (b + 1) * t;
    let r = (q + 1) / a;
    let (m, d_max) = match case {
        Case::Odd => ((a - b).div_ceil(2), (a + b).div_ceil(2) * r),
        Case::Even => ((a - b) / 2, (a + b + 2) / 2 * r - 1),
    };
    if 2 * d_max > n + 2 {
        return Err(ParamError::DistanceBeyondSingletonRange { d_max, n });
    }
    Ok(ConstructionParams {
        q,
        a,
        b,
        case,
        t,
        m,
        n,
        d_max,
        c_claimed: b + 1,
    })
}

/// ρ ∈ (GF(q)*)^(b+1) together with the targets φ it was solved from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoSolution {
    pub rho: Vec<FieldElement>,
    /// Right-hand side of the Vandermonde system, in equation order.
    pub phi: Vec<FieldElement>,
    pub attempts: u64,
    pub seed: u64,
}

/// One nonzero position (i, j) of σ; predicted pairs carry their υ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SupportPair {
    pub i: usize,
    pub j: usize,
    pub upsilon: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub pairs: Vec<SupportPair>,
}

impl SupportSet {
    pub fn from_positions<I: IntoIterator<Item = (usize, usize)>>(positions: I) -> Self {
        let mut pairs: Vec<_> = positions
            .into_iter()
            .map(|(i, j)| SupportPair {
                i,
                j,
                upsilon: None,
            })
            .collect();
        pairs.sort();
        pairs.dedup();
        SupportSet { pairs }
    }

    pub fn positions(&self) -> BTreeSet<(usize, usize)> {
        self.pairs.iter().map(|p| (p.i, p.j)).collect()
    }

    /// Equality of the (i, j) sets, ignoring υ labels.
    pub fn same_positions(&self, other: &SupportSet) -> bool {
        self.positions() == other.positions()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// No two pairs share a row or a column.
    pub fn is_partial_permutation(&self) -> bool {
        let rows: BTreeSet<_> = self.pairs.iter().map(|p| p.i).collect();
        let cols: BTreeSet<_> = self.pairs.iter().map(|p| p.j).collect();
        rows.len() == self.pairs.len() && cols.len() == self.pairs.len()
    }

    /// Pairs falling in the top-left k×k window.
    pub fn count_within(&self, k: usize) -> usize {
        self.pairs.iter().filter(|p| p.i < k && p.j < k).count()
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .pairs
            .iter()
            .map(|p| format!("({},{})", p.i, p.j))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Derived quantum parameters [[n, k_Q, d; c]].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqmdsRecord {
    pub n: u64,
    pub k_q: i64,
    pub d: u64,
    pub c_measured: u64,
    pub c_claimed: u64,
    pub saturates_bound: bool,
    /// n − k of the classical [n, n−k, k+1] code, k = d − 1.
    pub k_classical: u64,
}

impl fmt::Display for EaqmdsRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}, {}; {}]]",
            self.n, self.k_q, self.d, self.c_measured
        )
    }
}

/// A validated parameter set bound to its field GF(q²).
#[derive(Clone, Debug)]
pub struct Construction {
    params: ConstructionParams,
    field: Field,
}

impl Construction {
    pub fn new(params: ConstructionParams) -> Result<Self, ParamError> {
        let (p, e) = prime_power(params.q).ok_or(ParamError::NotPrimePower(params.q))?;
        Ok(Construction {
            params,
            field: make_field(p, e)?,
        })
    }

    pub fn from_triple(q: u64, a: u64, b: u64) -> Result<Self, ParamError> {
        Self::new(validate_params(q, a, b)?)
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// β = ξ^a, of order t.
    pub fn beta(&self) -> FieldElement {
        self.field.xi_pow(self.params.a as i64)
    }

    /// Vandermonde nodes ζ_r; equation r reads Σ_l ζ_r^l ρ_l = φ_r.
    pub fn rho_nodes(&self) -> Vec<FieldElement> {
        let p = &self.params;
        let f = &self.field;
        let (t, q) = (p.t as i64, p.q as i64);
        match p.case {
            Case::Odd => std::iter::once(FieldElement::ONE)
                .chain((p.m..p.m + p.b).map(|u| f.xi_pow(u as i64 * t)))
                .collect(),
            Case::Even => (p.m..=p.m + p.b)
                .map(|u| f.xi_pow(u as i64 * t - q - 1))
                .collect(),
        }
    }

    /// Σ_l ζ^l ρ_l for every node ζ, in equation order.
    pub fn rho_sums(&self, rho: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        self.rho_nodes()
            .into_iter()
            .map(|z| {
                f.sum(
                    rho.iter()
                        .enumerate()
                        .map(|(l, &r)| f.mul(f.pow_u(z, l as u64), r)),
                )
            })
            .collect()
    }

    /// True iff ρ has b+1 nonzero entries of GF(q) and every required sum is
    /// nonzero.
    pub fn rho_is_admissible(&self, rho: &[FieldElement]) -> bool {
        let f = &self.field;
        rho.len() as u64 == self.params.b + 1
            && rho
                .iter()
                .all(|&r| !r.is_zero() && f.is_in_base_subfield(r))
            && self.rho_sums(rho).iter().all(|s| !s.is_zero())
    }

    /// Samples conjugate-symmetric targets φ, solves the Vandermonde system
    /// for ρ, and accepts the first ρ whose entries are nonzero elements of
    /// GF(q).
    pub fn solve_rho(&self, seed: u64) -> Result<RhoSolution, ConstructionError> {
        let f = &self.field;
        let p = &self.params;
        let size = (p.b + 1) as usize;
        let nodes = self.rho_nodes();
        // A[r][l] = nodes[r]^l
        let system = vandermonde(f, &nodes).transpose();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = f.order();

        for attempt in 1..=RHO_ATTEMPT_CAP {
            let mut phi = vec![FieldElement::ZERO; size];
            // Equations whose nodes are Frobenius images of each other get
            // conjugate targets: case 1 pairs r ↔ b+1−r for r ≥ 1, case 2
            // pairs r ↔ b−r (0-based). Self-paired targets lie in GF(q)*.
            // The solution is then fixed by Frobenius, so ρ lies in GF(q).
            let mirror = |r: usize| match p.case {
                Case::Odd if r == 0 => 0,
                Case::Odd => size - r,
                Case::Even => size - 1 - r,
            };
            for r in 0..size {
                let partner = mirror(r);
                phi[r] = if partner < r {
                    f.frobenius(phi[partner])
                } else if partner == r {
                    f.base_subfield_nonzero(rng.gen_range(0..p.q - 1))
                } else {
                    f.xi_pow(rng.gen_range(0..order - 1) as i64)
                };
            }
            let rho = match system.solve(&phi) {
                Ok(rho) => rho,
                Err(LinalgError::Singular) => continue,
                Err(e) => unreachable!("square system of matching size: {e}"),
            };
            if rho
                .iter()
                .all(|&r| !r.is_zero() && f.is_in_base_subfield(r))
            {
                debug_assert!(self.rho_is_admissible(&rho));
                return Ok(RhoSolution {
                    rho,
                    phi,
                    attempts: attempt,
                    seed,
                });
            }
        }
        Err(ConstructionError::RhoAttemptsExhausted {
            attempts: RHO_ATTEMPT_CAP,
            seed,
        })
    }

    /// a = (τ, ξτ, …, ξ^b τ).
    pub fn eval_vector(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let beta = self.beta();
        let mut out = Vec::with_capacity(self.params.n as usize);
        for l in 0..=self.params.b {
            let mut x = f.xi_pow(l as i64);
            for _ in 0..self.params.t {
                out.push(x);
                x = f.mul(x, beta);
            }
        }
        out
    }

    /// Case 1: block l is v_l repeated t times. Case 2: block l is
    /// (v_l, v_l β, …, v_l β^(t−1)). Here v_l^(q+1) = ρ_l.
    pub fn multiplier_vector(
        &self,
        rho: &[FieldElement],
    ) -> Result<Vec<FieldElement>, ConstructionError> {
        let f = &self.field;
        let p = &self.params;
        if rho.len() as u64 != p.b + 1 {
            return Err(ConstructionError::RhoLength {
                got: rho.len(),
                expected: (p.b + 1) as usize,
            });
        }
        let step = match p.case {
            Case::Odd => FieldElement::ONE,
            Case::Even => self.beta(),
        };
        let mut out = Vec::with_capacity(p.n as usize);
        for &r in rho {
            let mut v = f.norm_root(r)?;
            for _ in 0..p.t {
                out.push(v);
                v = f.mul(v, step);
            }
        }
        Ok(out)
    }

    pub fn grs_code(&self, rho: &[FieldElement], k: usize) -> Result<GrsCode, ConstructionError> {
        Ok(GrsCode::new(
            &self.field,
            self.eval_vector(),
            self.multiplier_vector(rho)?,
            k,
        )?)
    }

    /// Largest index of the σ window, d_max − 2.
    pub fn window(&self) -> usize {
        (self.params.d_max - 2) as usize
    }

    /// σ_{i,j} by block decomposition: Σ_l ξ^(e·l) ρ_l · Σ_s β^(s·e'), where
    /// e = qi + j and e' = e (case 1) or e + q + 1 (case 2).
    pub fn sigma(&self, rho: &[FieldElement], i: usize, j: usize) -> FieldElement {
        let f = &self.field;
        let p = &self.params;
        let e = p.q * i as u64 + j as u64;
        let inner_exp = match p.case {
            Case::Odd => e,
            Case::Even => e + p.q + 1,
        };
        // Σ_{s<t} β^(s·e') is t when β^e' = 1 and 0 otherwise.
        if f.pow_u(self.beta(), inner_exp) != FieldElement::ONE {
            return FieldElement::ZERO;
        }
        let outer = f.sum(
            rho.iter()
                .enumerate()
                .map(|(l, &r)| f.mul(f.xi_pow((e * l as u64) as i64), r)),
        );
        f.mul(f.from_int(p.t as i64), outer)
    }

    /// Nonzero positions of the closed-form σ over [0, d_max−2]².
    pub fn closed_form_support(&self, rho: &[FieldElement]) -> SupportSet {
        let w = self.window();
        SupportSet::from_positions(
            (0..=w)
                .flat_map(|i| (0..=w).map(move |j| (i, j)))
                .filter(|&(i, j)| !self.sigma(rho, i, j).is_zero()),
        )
    }

    /// The support predicted from the υ parametrisation.
    pub fn predicted_support(&self) -> SupportSet {
        let p = &self.params;
        let r = (p.q + 1) / p.a;
        let mut pairs = Vec::with_capacity((p.b + 1) as usize);
        match p.case {
            Case::Odd => {
                pairs.push(SupportPair {
                    i: 0,
                    j: 0,
                    upsilon: None,
                });
                for u in (p.a - p.b).div_ceil(2)..=(p.a + p.b - 1) / 2 {
                    pairs.push(SupportPair {
                        i: (u * r - 1) as usize,
                        j: (p.q - u * r) as usize,
                        upsilon: Some(u),
                    });
                }
            }
            Case::Even => {
                for u in (p.a - p.b) / 2..=(p.a + p.b) / 2 {
                    pairs.push(SupportPair {
                        i: (u * r - 2) as usize,
                        j: (p.q - u * r - 1) as usize,
                        upsilon: Some(u),
                    });
                }
            }
        }
        pairs.sort();
        SupportSet { pairs }
    }

    /// rank(G_k G_k†) for the code of dimension k.
    pub fn measure_c(&self, rho: &[FieldElement], k: usize) -> Result<u64, ConstructionError> {
        let max = (self.params.d_max - 1) as usize;
        if k == 0 || k > max {
            return Err(ConstructionError::DimensionOutOfRange { k, max });
        }
        Ok(self.grs_code(rho, k)?.hermitian_gram().rank() as u64)
    }

    /// Quantum parameters at distance d from the classical [n, n−k, k+1]
    /// code with k = d − 1.
    pub fn derive_code(
        &self,
        rho: &[FieldElement],
        d: u64,
    ) -> Result<EaqmdsRecord, ConstructionError> {
        let p = &self.params;
        if d < 2 || d > p.d_max {
            return Err(ConstructionError::DistanceOutOfRange { d, d_max: p.d_max });
        }
        let k = d - 1;
        let c = self.measure_c(rho, k as usize)?;
        Ok(record_from(p.n, d, c, p.c_claimed))
    }
}

pub(crate) fn record_from(n: u64, d: u64, c_measured: u64, c_claimed: u64) -> EaqmdsRecord {
    let k = d - 1;
    let k_q = n as i64 - 2 * k as i64 + c_measured as i64;
    EaqmdsRecord {
        n,
        k_q,
        d,
        c_measured,
        c_claimed,
        saturates_bound: 2 * (d as i64 - 1) == n as i64 - k_q + c_measured as i64,
        k_classical: n - k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_table_rows() {
        let p = validate_params(8, 9, 4).unwrap();
        assert_eq!(
            (p.case, p.t, p.n, p.d_max, p.c_claimed),
            (Case::Odd, 7, 35, 7, 5)
        );
        let p = validate_params(7, 8, 2).unwrap();
        assert_eq!(
            (p.case, p.t, p.n, p.d_max, p.c_claimed),
            (Case::Even, 6, 18, 5, 3)
        );
        let p = validate_params(5, 6, 1).unwrap();
        assert_eq!(
            (p.case, p.t, p.m, p.n, p.d_max, p.c_claimed),
            (Case::Odd, 4, 3, 8, 4, 2)
        );
    }

    #[test]
    fn validate_rejections() {
        assert!(matches!(
            validate_params(7, 8, 5),
            Err(ParamError::BOutOfRange { b: 5, bound: 4, .. })
        ));
        assert_eq!(validate_params(6, 7, 0), Err(ParamError::NotPrimePower(6)));
        assert_eq!(
            validate_params(5, 4, 0),
            Err(ParamError::ADoesNotDivide { q: 5, a: 4 })
        );
        assert!(matches!(
            validate_params(5, 2, 0),
            Err(ParamError::BOutOfRange { .. })
        ));
        assert!(matches!(
            validate_params(5, 2, 1),
            Err(ParamError::BOutOfRange { .. })
        ));
        // a = q + 1, b = 0 with q even: d_max = (q+2)/2 > (n+2)/2.
        assert!(matches!(
            validate_params(4, 5, 0),
            Err(ParamError::DistanceBeyondSingletonRange { d_max: 3, n: 3 })
        ));
        assert!(matches!(
            validate_params(1031, 2, 0),
            Err(ParamError::Field(_))
        ));
    }

    #[test]
    fn predicted_support_examples() {
        let pos = |q, a, b| {
            Construction::from_triple(q, a, b)
                .unwrap()
                .predicted_support()
                .positions()
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(pos(8, 9, 4), vec![(0, 0), (2, 5), (3, 4), (4, 3), (5, 2)]);
        assert_eq!(pos(7, 8, 2), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(pos(5, 6, 0), vec![(1, 1)]);
    }

    #[test]
    fn eval_vector_blocks() {
        let c = Construction::from_triple(5, 6, 1).unwrap();
        let f = c.field();
        let a = c.eval_vector();
        assert_eq!(a.len(), 8);
        let distinct: BTreeSet<_> = a.iter().collect();
        assert_eq!(distinct.len(), 8);
        for l in 0..2 {
            for s in 0..4 {
                let expected = f.mul(f.xi_pow(l), f.pow_u(c.beta(), s as u64));
                assert_eq!(a[l as usize * 4 + s], expected);
            }
        }
        // b = 0: exactly the subgroup generated by β
        let c0 = Construction::from_triple(5, 6, 0).unwrap();
        let sub: BTreeSet<_> = c0.eval_vector().into_iter().collect();
        let group: BTreeSet<_> = (0..4).map(|s| c0.field().pow_u(c0.beta(), s)).collect();
        assert_eq!(sub, group);
    }

    #[test]
    fn multiplier_vector_norms() {
        let c = Construction::from_triple(5, 6, 1).unwrap();
        let f = c.field();
        let rho = c.solve_rho(0).unwrap().rho;
        let v = c.multiplier_vector(&rho).unwrap();
        for (s, &x) in v.iter().enumerate() {
            assert_eq!(f.pow_u(x, 6), rho[s / 4]);
        }

        let c = Construction::from_triple(7, 8, 2).unwrap();
        let f = c.field();
        let rho = c.solve_rho(3).unwrap().rho;
        let v = c.multiplier_vector(&rho).unwrap();
        let t = c.params().t as usize;
        for (idx, &x) in v.iter().enumerate() {
            let (l, s) = (idx / t, idx % t);
            let expected = f.mul(rho[l], f.pow_u(c.beta(), (s as u64) * 8));
            assert_eq!(f.pow_u(x, 8), expected);
        }
        assert!(matches!(
            c.multiplier_vector(&rho[..2]),
            Err(ConstructionError::RhoLength { .. })
        ));
    }

    #[test]
    fn rho_b_zero_is_any_subfield_element() {
        let c = Construction::from_triple(5, 3, 0).unwrap();
        let f = c.field();
        for rho in f
            .elements()
            .filter(|&x| !x.is_zero() && f.is_in_base_subfield(x))
        {
            assert!(c.rho_is_admissible(&[rho]));
        }
        let sol = c.solve_rho(11).unwrap();
        assert_eq!(sol.attempts, 1);
        assert_eq!(sol.rho, sol.phi);
    }

    #[test]
    fn rho_with_one_conjugate_pair() {
        // Case 2, b = 1: the two nodes are Frobenius images of each other,
        // so equal targets in GF(q) would force ρ_1 = 0.
        for (q, a) in [(4, 5), (8, 9), (9, 5), (13, 7)] {
            let c = Construction::from_triple(q, a, 1).unwrap();
            let f = c.field();
            let nodes = c.rho_nodes();
            assert_eq!(f.frobenius(nodes[0]), nodes[1]);
            let sol = c.solve_rho(0).unwrap();
            assert!(c.rho_is_admissible(&sol.rho));
            assert_eq!(f.frobenius(sol.phi[0]), sol.phi[1]);
        }
    }

    #[test]
    fn sigma_origin_by_case() {
        let c = Construction::from_triple(5, 6, 1).unwrap();
        let rho = c.solve_rho(0).unwrap().rho;
        assert!(!c.sigma(&rho, 0, 0).is_zero());
        let c = Construction::from_triple(7, 8, 2).unwrap();
        let rho = c.solve_rho(0).unwrap().rho;
        assert!(c.sigma(&rho, 0, 0).is_zero());
    }

    #[test]
    fn measure_c_small_windows() {
        let c = Construction::from_triple(5, 6, 1).unwrap();
        let rho = c.solve_rho(0).unwrap().rho;
        assert_eq!(c.measure_c(&rho, 1).unwrap(), 1);
        assert_eq!(c.measure_c(&rho, 2).unwrap(), 1);
        assert_eq!(c.measure_c(&rho, 3).unwrap(), 2);
        assert!(c.measure_c(&rho, 4).is_err());
        assert!(c.measure_c(&rho, 0).is_err());
    }

    #[test]
    fn derive_code_examples() {
        let c = Construction::from_triple(5, 6, 1).unwrap();
        let rho = c.solve_rho(0).unwrap().rho;
        let r = c.derive_code(&rho, 3).unwrap();
        assert_eq!(
            (r.n, r.k_q, r.d, r.c_measured, r.c_claimed),
            (8, 5, 3, 1, 2)
        );
        assert!(r.saturates_bound);
        assert!(matches!(
            c.derive_code(&rho, 5),
            Err(ConstructionError::DistanceOutOfRange { d: 5, d_max: 4 })
        ));
        assert!(c.derive_code(&rho, 1).is_err());
    }
}
