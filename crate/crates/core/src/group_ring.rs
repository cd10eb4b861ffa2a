//! Dense arithmetic in the group algebra `F T_{3m}`.
//!
//! An element is a coefficient vector of length `3m` indexed by `idx(g) = i + m*j`.
//! The regular representation is right multiplication `β ↦ β·a` acting on column
//! vectors, so `R(ab) = R(b) R(a)` and kernels of `R(a)` are left annihilators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::group::{GroupElement, GroupParams};
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupRingError {
    #[error("operands belong to different group algebras")]
    Mismatch,
    #[error("hat of an empty subset")]
    EmptySubset,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

struct Inner {
    params: GroupParams,
    field: Field,
    /// `table[u * n + v] = idx(u v)`.
    table: Vec<u32>,
}

/// The algebra `F G` with a cached multiplication table. Cheap to clone.
#[derive(Clone)]
pub struct GroupAlgebra(Arc<Inner>);

impl GroupAlgebra {
    pub fn new(params: GroupParams, field: Field) -> GroupAlgebra {
        let n = params.order();
        let mut table = Vec::with_capacity(n * n);
        for u in params.elements() {
            for v in params.elements() {
                table.push(params.idx(params.multiply(u, v)) as u32);
            }
        }
        GroupAlgebra(Arc::new(Inner { params, field, table }))
    }

    pub fn params(&self) -> &GroupParams {
        &self.0.params
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    /// `dim_F FG = 3m`.
    pub fn dim(&self) -> usize {
        self.0.params.order()
    }

    #[inline]
    fn product_idx(&self, u: usize, v: usize) -> usize {
        self.0.table[u * self.dim() + v] as usize
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement { algebra: self.clone(), coeffs: vec![self.field().zero(); self.dim()] }
    }

    pub fn one(&self) -> GroupRingElement {
        self.basis(self.params().identity())
    }

    pub fn basis(&self, g: GroupElement) -> GroupRingElement {
        let mut e = self.zero();
        e.coeffs[self.params().idx(g)] = self.field().one();
        e
    }

    pub fn x(&self) -> GroupRingElement {
        self.basis(self.params().x())
    }

    pub fn y(&self) -> GroupRingElement {
        self.basis(self.params().y())
    }

    pub fn from_coeffs(&self, coeffs: Vector) -> Result<GroupRingElement, GroupRingError> {
        if coeffs.len() != self.dim() {
            return Err(GroupRingError::WrongLength { expected: self.dim(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| c.field() != self.field()) {
            return Err(GroupRingError::Mismatch);
        }
        Ok(GroupRingElement { algebra: self.clone(), coeffs })
    }

    /// Sum of the members of `subset` (duplicates count once).
    pub fn hat(&self, subset: &[GroupElement]) -> Result<GroupRingElement, GroupRingError> {
        if subset.is_empty() {
            return Err(GroupRingError::EmptySubset);
        }
        let mut e = self.zero();
        for &g in subset {
            e.coeffs[self.params().idx(g)] = self.field().one();
        }
        Ok(e)
    }

    /// `x̂ y^j`: the sum over the coset `<x> y^j`.
    pub fn x_hat_y(&self, j: u64) -> GroupRingElement {
        let p = self.params();
        let coset: Vec<_> = (0..p.m()).map(|i| p.element(i, j)).collect();
        self.hat(&coset).expect("cosets are nonempty")
    }

    pub fn x_hat(&self) -> GroupRingElement {
        self.x_hat_y(0)
    }

    /// `ŝ`, the sum of the identity and all elements of order 3.
    pub fn s_hat(&self) -> GroupRingElement {
        self.hat(&self.params().three_element_set()).expect("S_3 contains the identity")
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupRingElement {
        let f = self.field();
        GroupRingElement { algebra: self.clone(), coeffs: (0..self.dim()).map(|_| f.random(rng)).collect() }
    }
}

impl PartialEq for GroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.params == other.0.params && self.0.field == other.0.field)
    }
}

impl Eq for GroupAlgebra {}

impl fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[T_{}(t={})]", self.field(), 3 * self.params().m(), self.params().t())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    algebra: GroupAlgebra,
    coeffs: Vector,
}

impl GroupRingElement {
    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn coeff(&self, g: GroupElement) -> FieldElement {
        self.coeffs[self.algebra.params().idx(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn support(&self) -> Vec<GroupElement> {
        let p = self.algebra.params();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| p.from_idx(i))
            .collect()
    }

    fn check(&self, other: &GroupRingElement) -> Result<(), GroupRingError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(GroupRingError::Mismatch)
        }
    }

    pub fn try_add(&self, other: &GroupRingElement) -> Result<GroupRingElement, GroupRingError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect();
        Ok(GroupRingElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &GroupRingElement) -> Result<GroupRingElement, GroupRingError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a - b).collect();
        Ok(GroupRingElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn scale(&self, s: FieldElement) -> Result<GroupRingElement, GroupRingError> {
        if s.field() != self.algebra.field() {
            return Err(GroupRingError::Mismatch);
        }
        Ok(GroupRingElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|&c| c * s).collect() })
    }

    /// Convolution `(ab)_g = Σ_{uv = g} a_u b_v`.
    pub fn try_mul(&self, other: &GroupRingElement) -> Result<GroupRingElement, GroupRingError> {
        self.check(other)?;
        let alg = &self.algebra;
        let mut out = vec![alg.field().zero(); alg.dim()];
        let nonzero_b: Vec<(usize, FieldElement)> =
            other.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (u, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(v, b) in &nonzero_b {
                out[alg.product_idx(u, v)] += a * b;
            }
        }
        Ok(GroupRingElement { algebra: alg.clone(), coeffs: out })
    }

    pub fn pow(&self, e: u32) -> GroupRingElement {
        (0..e).fold(self.algebra.one(), |acc, _| &acc * self)
    }

    /// `Σ_g a_g`.
    pub fn augmentation(&self) -> FieldElement {
        self.coeffs.iter().fold(self.algebra.field().zero(), |acc, &c| acc + c)
    }

    /// Linear extension of `T(g) = [g ∈ S_3]`.
    pub fn t_functional(&self) -> FieldElement {
        let p = self.algebra.params();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| p.in_three_element_set(p.from_idx(i)))
            .fold(self.algebra.field().zero(), |acc, (_, &c)| acc + c)
    }

    /// Whether `T(a g) = 0` for every group element `g`.
    pub fn krn_t_member(&self) -> bool {
        let alg = &self.algebra;
        let p = alg.params();
        let s_mask: Vec<bool> = p.elements().map(|g| p.in_three_element_set(g)).collect();
        (0..alg.dim()).all(|g| {
            // (a g)_w = a_u where u g = w
            self.coeffs
                .iter()
                .enumerate()
                .filter(|&(u, _)| s_mask[alg.product_idx(u, g)])
                .fold(alg.field().zero(), |acc, (_, &c)| acc + c)
                .is_zero()
        })
    }

    /// Matrix of `β ↦ β·a` on column coefficient vectors.
    pub fn regular_representation(&self) -> Matrix {
        let alg = &self.algebra;
        let n = alg.dim();
        let mut m = Matrix::zeros(alg.field(), n, n);
        for h in 0..n {
            for (u, &a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    m[(alg.product_idx(h, u), h)] += a;
                }
            }
        }
        m
    }

    /// Matrix of `β ↦ a·β` on column coefficient vectors.
    pub fn left_representation(&self) -> Matrix {
        let alg = &self.algebra;
        let n = alg.dim();
        let mut m = Matrix::zeros(alg.field(), n, n);
        for h in 0..n {
            for (u, &a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    m[(alg.product_idx(u, h), h)] += a;
                }
            }
        }
        m
    }

    /// Two-sided inverse, found by solving `R(a) v = 1` and confirming `a v = 1`.
    pub fn invert(&self) -> Result<GroupRingElement, GroupRingError> {
        let alg = &self.algebra;
        let one = alg.one();
        let v = self
            .regular_representation()
            .solve(one.coeffs())
            .map_err(|_| GroupRingError::NotAUnit)?;
        let v = GroupRingElement { algebra: alg.clone(), coeffs: v };
        if &v * self != one || self * &v != one {
            return Err(GroupRingError::NotAUnit);
        }
        Ok(v)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.algebra.params();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let g = p.from_idx(i);
                if c.is_one() {
                    g.to_string()
                } else {
                    format!("({c}){g}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! ring_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&GroupRingElement> for &GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: &GroupRingElement) -> GroupRingElement {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $tr<GroupRingElement> for GroupRingElement {
            type Output = GroupRingElement;
            fn $method(self, rhs: GroupRingElement) -> GroupRingElement {
                $tr::$method(&self, &rhs)
            }
        }
    };
}

ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}
