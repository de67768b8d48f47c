//! Root-system data for the cataloged algebras.
//!
//! Normalization: the short simple root has squared length 2 (for
//! `osp(1|2)` the odd root has configurable squared length, 1 by default).
//! `delta` is orthogonal to everything.

use crate::scalar::{rint, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseAlgebra {
    Sl2,
    C2,
    G2,
    Osp12,
}

impl BaseAlgebra {
    pub const ALL: [BaseAlgebra; 4] = [
        BaseAlgebra::Sl2,
        BaseAlgebra::C2,
        BaseAlgebra::G2,
        BaseAlgebra::Osp12,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseAlgebra::Sl2 => "sl2",
            BaseAlgebra::C2 => "c2",
            BaseAlgebra::G2 => "g2",
            BaseAlgebra::Osp12 => "osp12",
        }
    }

    pub fn parse(s: &str) -> Option<BaseAlgebra> {
        BaseAlgebra::ALL.iter().copied().find(|b| b.name() == s)
    }
}

impl fmt::Display for BaseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cartan matrix, bilinear form, parities and highest-root data.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    /// Integer Cartan matrix `a_ij` (even rows only are constrained).
    pub cartan: Vec<Vec<i64>>,
    /// Symmetric bilinear form `(alpha_i, alpha_j)`.
    pub form: Vec<Vec<Rat>>,
    /// Parity of each simple root.
    pub parity: Vec<bool>,
    /// Coefficients `n_i` of the highest root `theta = sum n_i alpha_i`.
    pub theta_coeffs: Vec<i64>,
    /// Names of the simple roots, used in rendering (`a`, `b`).
    pub root_names: Vec<&'static str>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum WeightError {
    #[error("weight rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("simple root {0} is isotropic")]
    IsotropicRoot(usize),
}

/// Weight in simple-root coordinates, plus a `delta` coordinate that is
/// orthogonal to everything.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rat>,
    pub delta: Rat,
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![Rat::zero(); rank],
            delta: Rat::zero(),
        }
    }

    pub fn simple(rank: usize, i: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.coords[i] = Rat::one();
        w
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            delta: &self.delta + &other.delta,
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
            delta: -self.delta.clone(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * k).collect(),
            delta: &self.delta * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero()) && self.delta.is_zero()
    }
}

impl RootDatum {
    pub fn theta(&self) -> Weight {
        let mut w = Weight::zero(self.rank);
        for (i, n) in self.theta_coeffs.iter().enumerate() {
            w.coords[i] = rint(*n);
        }
        w
    }

    /// `delta` as a weight.
    pub fn delta(&self) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.delta = Rat::one();
        w
    }

    /// `delta - theta`, the weight of the affine generator.
    pub fn delta_minus_theta(&self) -> Weight {
        self.delta().add(&self.theta().neg())
    }

    /// Bilinear pairing; the `delta` coordinate pairs to zero.
    pub fn pairing(&self, w1: &Weight, w2: &Weight) -> Result<Rat, WeightError> {
        if w1.coords.len() != self.rank || w2.coords.len() != self.rank {
            return Err(WeightError::RankMismatch(w1.coords.len(), w2.coords.len()));
        }
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if w1.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !w2.coords[j].is_zero() {
                    acc += &w1.coords[i] * &w2.coords[j] * &self.form[i][j];
                }
            }
        }
        Ok(acc)
    }

    /// Parity of a weight written over simple roots (integer coordinates).
    pub fn weight_parity(&self, w: &Weight) -> bool {
        let mut p = false;
        for (i, c) in w.coords.iter().enumerate() {
            // coordinates of actual roots are integers
            if self.parity[i] && num_integer::Integer::is_odd(c.numer()) {
                p = !p;
            }
        }
        p
    }

    /// Serre exponent against the affine generator:
    /// `n_i0 = 1 + 2 (alpha_i, theta) / (alpha_i, alpha_i)`.
    pub fn serre_exponent(&self, i: usize) -> Result<u32, WeightError> {
        let ai = Weight::simple(self.rank, i);
        let len2 = self.pairing(&ai, &ai)?;
        if len2.is_zero() {
            return Err(WeightError::IsotropicRoot(i));
        }
        let theta = self.theta();
        let n = Rat::one() + rint(2) * self.pairing(&ai, &theta)? / len2;
        Ok(n.to_integer().try_into().expect("positive exponent"))
    }

    /// Invariant report: empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.cartan.len() != self.rank || self.form.len() != self.rank {
            issues.push("matrix size does not match rank".to_string());
            return issues;
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.form[i][j] != self.form[j][i] {
                    issues.push(format!("form not symmetric at ({i},{j})"));
                }
            }
        }
        for i in 0..self.rank {
            if self.parity[i] {
                continue; // super rows follow a different convention
            }
            let len2 = &self.form[i][i];
            if len2.is_zero() {
                issues.push(format!("even simple root {i} is isotropic"));
                continue;
            }
            for j in 0..self.rank {
                let a = rint(2) * &self.form[i][j] / len2;
                if a != rint(self.cartan[i][j]) {
                    issues.push(format!(
                        "cartan reconstruction fails at ({i},{j}): expected {}, got {}",
                        self.cartan[i][j], a
                    ));
                }
            }
        }
        if self.theta_coeffs.iter().any(|n| *n <= 0) {
            issues.push("theta coefficients must be positive".to_string());
        }
        issues
    }

    pub fn for_base(base: BaseAlgebra) -> RootDatum {
        RootDatum::for_base_with_osp_len(base, rint(1))
    }

    /// Build a cataloged datum; `osp_len2` sets `(alpha, alpha)` for
    /// `osp(1|2)` and is ignored for the other bases.
    pub fn for_base_with_osp_len(base: BaseAlgebra, osp_len2: Rat) -> RootDatum {
        match base {
            BaseAlgebra::Sl2 => RootDatum {
                name: "sl2".into(),
                rank: 1,
                cartan: vec![vec![2]],
                form: vec![vec![rint(2)]],
                parity: vec![false],
                theta_coeffs: vec![1],
                root_names: vec!["a"],
            },
            BaseAlgebra::C2 => RootDatum {
                // alpha is the long root: theta = alpha + 2 beta
                name: "c2".into(),
                rank: 2,
                cartan: vec![vec![2, -1], vec![-2, 2]],
                form: vec![vec![rint(4), rint(-2)], vec![rint(-2), rint(2)]],
                parity: vec![false, false],
                theta_coeffs: vec![1, 2],
                root_names: vec!["a", "b"],
            },
            BaseAlgebra::G2 => RootDatum {
                // alpha is the long root: theta = 2 alpha + 3 beta
                name: "g2".into(),
                rank: 2,
                cartan: vec![vec![2, -1], vec![-3, 2]],
                form: vec![vec![rint(6), rint(-3)], vec![rint(-3), rint(2)]],
                parity: vec![false, false],
                theta_coeffs: vec![2, 3],
                root_names: vec!["a", "b"],
            },
            BaseAlgebra::Osp12 => RootDatum {
                // alpha odd, theta = 2 alpha
                name: "osp12".into(),
                rank: 1,
                cartan: vec![vec![2]],
                form: vec![vec![osp_len2]],
                parity: vec![true],
                theta_coeffs: vec![2],
                root_names: vec!["a"],
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn pairing_c2() {
        let d = RootDatum::for_base(BaseAlgebra::C2);
        let a = Weight::simple(2, 0);
        let b = Weight::simple(2, 1);
        assert_eq!(d.pairing(&a, &b).unwrap(), rint(-2));
        let theta = d.theta();
        assert_eq!(d.pairing(&theta, &theta).unwrap(), rint(4));
        assert_eq!(d.pairing(&a, &theta).unwrap(), rint(0));
        assert_eq!(d.pairing(&b, &theta).unwrap(), rint(2));
        assert_eq!(d.pairing(&d.delta(), &theta).unwrap(), rint(0));
    }

    #[test]
    fn pairing_rank_mismatch() {
        let d = RootDatum::for_base(BaseAlgebra::C2);
        let w = Weight::zero(1);
        assert!(matches!(
            d.pairing(&w, &w),
            Err(WeightError::RankMismatch(_, _))
        ));
    }

    #[test]
    fn serre_exponents() {
        // cross-checked against bracket depths of the explicit relations
        let c2 = RootDatum::for_base(BaseAlgebra::C2);
        assert_eq!(c2.serre_exponent(1).unwrap(), 3); // triple bracket
        assert_eq!(c2.serre_exponent(0).unwrap(), 1);
        let g2 = RootDatum::for_base(BaseAlgebra::G2);
        assert_eq!(g2.serre_exponent(0).unwrap(), 2); // double bracket
        assert_eq!(g2.serre_exponent(1).unwrap(), 1);
        let osp = RootDatum::for_base(BaseAlgebra::Osp12);
        assert_eq!(osp.serre_exponent(0).unwrap(), 5); // quintuple bracket
        let sl2 = RootDatum::for_base(BaseAlgebra::Sl2);
        assert_eq!(sl2.serre_exponent(0).unwrap(), 3);
    }

    #[test]
    fn validate_catalog() {
        for base in BaseAlgebra::ALL {
            let d = RootDatum::for_base(base);
            assert!(d.validate().is_empty(), "{base}: {:?}", d.validate());
        }
    }

    #[test]
    fn validate_asymmetric_form() {
        let mut d = RootDatum::for_base(BaseAlgebra::C2);
        d.form[0][1] = rint(-1);
        let issues = d.validate();
        assert!(issues.iter().any(|s| s.contains("(0,1)")), "{issues:?}");
    }

    #[test]
    fn osp_parity() {
        let d = RootDatum::for_base(BaseAlgebra::Osp12);
        assert!(d.parity[0]);
        assert!(d.validate().is_empty());
        // theta = 2 alpha is even
        assert!(!d.weight_parity(&d.theta()));
        assert!(d.weight_parity(&Weight::simple(1, 0)));
    }

    #[test]
    fn g2_lattice_exponents() {
        let d = RootDatum::for_base(BaseAlgebra::G2);
        let a = Weight::simple(2, 0);
        let b = Weight::simple(2, 1);
        let ab = d.pairing(&a, &b).unwrap();
        assert_eq!(ab, rint(-3));
        // the (DY29)-style exponent -1/3 (alpha,beta) lands on the lattice
        let r = rat(-1, 3) * ab;
        assert!(crate::scalar::Scalar::q_power(&r).is_ok());
    }
}
