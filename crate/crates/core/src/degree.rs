//! Degree sequences `(r, k)` and the quantities derived from them.
//!
//! A [`DegreeSequence`] describes both sides of a bipartite incidence graph:
//! left vertex `v_j` has degree `k_j` and each of the `M / r` right vertices
//! has degree `r`. Falling-factorial moments are exact (arbitrary precision)
//! because their squares and products feed the threshold quantities.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    r: u64,
    k: Vec<u64>,
    total: u64,
    k_max: u64,
}

/// Threshold quantities used by the property battery and the switching
/// analysis. All logarithms are natural.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thresholds {
    pub n2: u64,
    pub q1: u64,
    pub q2: u64,
    /// `r^4 k_max^4 (k_max + r) / M`, reported as a diagnostic only.
    pub sparsity_indicator: f64,
}

/// On-disk form: `{"r": 3, "k": [1, 1, 1]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeSequenceJson {
    pub r: i64,
    pub k: Vec<i64>,
}

impl DegreeSequence {
    pub fn new(k: &[i64], r: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidR(r));
        }
        let mut degrees = Vec::with_capacity(k.len());
        for (index, &value) in k.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeDegree { index, value });
            }
            degrees.push(value as u64);
        }
        Ok(Self::from_unsigned(degrees, r as u64))
    }

    /// Infallible constructor for already-validated data; `r` must be at least 2.
    pub fn from_unsigned(k: Vec<u64>, r: u64) -> Self {
        assert!(r >= 2, "r must be at least 2");
        let total = k.iter().sum();
        let k_max = k.iter().copied().max().unwrap_or(0);
        DegreeSequence { r, k, total, k_max }
    }

    pub fn from_json(json: &DegreeSequenceJson) -> Result<Self> {
        Self::new(&json.k, json.r)
    }

    pub fn to_json(&self) -> DegreeSequenceJson {
        DegreeSequenceJson {
            r: self.r as i64,
            k: self.k.iter().map(|&x| x as i64).collect(),
        }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn degrees(&self) -> &[u64] {
        &self.k
    }

    /// Number of left vertices.
    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// Degree sum `M`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    /// `M_t = sum_i (k_i)_t`, exact.
    pub fn moment(&self, t: u32) -> BigUint {
        assert!(t >= 1, "moment order must be positive");
        let mut acc = BigUint::zero();
        for &kj in &self.k {
            if kj < t as u64 {
                continue;
            }
            acc += falling_factorial_big(kj, t as u64);
        }
        acc
    }

    pub fn moment_f64(&self, t: u32) -> f64 {
        self.moment(t).to_f64().unwrap_or(f64::INFINITY)
    }

    /// Number of right vertices `M / r`, when `r | M`.
    pub fn edge_count(&self) -> Result<u64> {
        if self.total % self.r != 0 {
            return Err(Error::NotDivisible {
                total: self.total,
                r: self.r,
            });
        }
        Ok(self.total / self.r)
    }

    pub fn thresholds(&self) -> Result<Thresholds> {
        let m = self.total;
        if m < 2 {
            return Err(Error::DegenerateM(m));
        }
        let log_ceil = (m as f64).ln().ceil() as u64;
        let rm1 = BigUint::from(self.r - 1);
        let m_big = BigUint::from(m);
        let m2 = self.moment(2);
        let m4 = self.moment(4);

        // ceil(2 (r-1)^2 M_2^2 / M^2)
        let num1 = BigUint::from(2u32) * &rm1 * &rm1 * &m2 * &m2;
        let den1 = &m_big * &m_big;
        let q1 = log_ceil.max(ceil_div(&num1, &den1));

        // ceil((r-1)^4 M_2^2 M_4 / M^4)
        let rm1_sq = &rm1 * &rm1;
        let num2 = &rm1_sq * &rm1_sq * &m2 * &m2 * &m4;
        let den2 = &den1 * &den1;
        let q2 = log_ceil.max(ceil_div(&num2, &den2));

        let r = self.r as f64;
        let km = self.k_max as f64;
        let sparsity_indicator = r.powi(4) * km.powi(4) * (km + r) / m as f64;

        Ok(Thresholds {
            n2: 3 * q1,
            q1,
            q2,
            sparsity_indicator,
        })
    }

    /// `N_2` when defined, otherwise 0 (a graph with `M < 2` has no 4-cycles).
    pub fn n2_cap(&self) -> u64 {
        self.thresholds().map(|t| t.n2).unwrap_or(0)
    }
}

fn ceil_div(num: &BigUint, den: &BigUint) -> u64 {
    let (q, rem) = num.div_rem(den);
    let q = if rem.is_zero() { q } else { q + 1u32 };
    q.to_u64().unwrap_or(u64::MAX)
}

/// `(a)_b = a (a-1) ... (a-b+1)`, with `(a)_0 = 1` and `(a)_b = 0` for `b > a`.
pub fn falling_factorial_big(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..b {
        acc *= a - i;
    }
    acc
}

pub fn factorial_big(n: u64) -> BigUint {
    falling_factorial_big(n, n)
}
