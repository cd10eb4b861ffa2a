//! The Jacobson radical `J(FG) = Anh(ŝ)`.
//!
//! Two independent constructions are provided: the kernel of right multiplication
//! by `ŝ`, and the closed form `{a⁻ x̂y⁻¹ + a x̂ + a⁺ x̂y : a⁻ + a + a⁺ = 0}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::FieldElement;
use crate::group_ring::{GroupAlgebra, GroupRingElement};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RadicalError {
    #[error("radical verification failed: {0}")]
    VerificationFailure(String),
    #[error("spanning set is not nilpotent within index {0}")]
    NotNilpotent(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalBasis {
    pub basis: Vec<GroupRingElement>,
}

impl RadicalBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(&self, algebra: &GroupAlgebra) -> Subspace {
        span_of(algebra, &self.basis)
    }
}

pub fn span_of(algebra: &GroupAlgebra, elements: &[GroupRingElement]) -> Subspace {
    let mut s = Subspace::new(algebra.field(), algebra.dim());
    for e in elements {
        s.insert(e.coeffs());
    }
    s
}

/// Basis of `{β : β ŝ = 0}` read off the echelon form of `R(ŝ)`.
pub fn annihilator_basis(algebra: &GroupAlgebra) -> RadicalBasis {
    let basis = algebra
        .s_hat()
        .regular_representation()
        .kernel_basis()
        .into_iter()
        .map(|v| algebra.from_coeffs(v).expect("kernel vectors have length 3m"))
        .collect();
    RadicalBasis { basis }
}

/// `{x̂y⁻¹ − x̂, x̂y − x̂}`.
pub fn closed_form_basis(algebra: &GroupAlgebra) -> RadicalBasis {
    let xh = algebra.x_hat();
    RadicalBasis { basis: vec![&algebra.x_hat_y(2) - &xh, &algebra.x_hat_y(1) - &xh] }
}

/// The coset values `(a⁻, a, a⁺)` when `v` is constant on `<x>y⁻¹`, `<x>`, `<x>y`.
pub fn coset_values(v: &GroupRingElement) -> Option<[FieldElement; 3]> {
    let p = *v.algebra().params();
    let value = |j: u64| {
        let first = v.coeff(p.element(0, j));
        (1..p.m()).all(|i| v.coeff(p.element(i, j)) == first).then_some(first)
    };
    Some([value(2)?, value(0)?, value(1)?])
}

/// Smallest `e >= 1` such that every product of `e` spanning vectors vanishes.
/// The empty spanning set has index 1.
pub fn nilpotency_index(b: &RadicalBasis) -> Result<usize, RadicalError> {
    if b.basis.is_empty() {
        return Ok(1);
    }
    let limit = b.basis[0].algebra().dim() + 1;
    let mut products = b.basis.clone();
    for e in 1..=limit {
        if products.iter().all(|p| p.is_zero()) {
            return Ok(e);
        }
        let mut next = Vec::with_capacity(products.len() * b.basis.len());
        for p in products.iter().filter(|p| !p.is_zero()) {
            for v in &b.basis {
                let q = p * v;
                if !q.is_zero() && !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        products = next;
    }
    Err(RadicalError::NotNilpotent(limit))
}

/// All `2^3` ordered triple products of the given basis (with repetition).
pub fn triple_products(b: &RadicalBasis) -> Vec<GroupRingElement> {
    let mut out = Vec::new();
    for u in &b.basis {
        for v in &b.basis {
            let uv = u * v;
            for w in &b.basis {
                out.push(&uv * w);
            }
        }
    }
    out
}

/// `Krn(T) = {α : T(αg) = 0 for all g}` as the kernel of the linear system
/// with one row per group element `g`.
pub fn krn_t_subspace(algebra: &GroupAlgebra) -> Subspace {
    let p = *algebra.params();
    let n = algebra.dim();
    let f = algebra.field();
    let mut m = Matrix::zeros(f, n, n);
    for g in p.elements() {
        let row = p.idx(g);
        for u in p.elements() {
            if p.in_three_element_set(p.multiply(u, g)) {
                m[(row, p.idx(u))] = f.one();
            }
        }
    }
    Subspace::spanned_by(f, n, &m.kernel_basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub dim: usize,
    pub matches_closed_form: bool,
    pub two_sided_ideal: bool,
    pub nil_samples: usize,
    pub krn_t_equals_anh: bool,
    pub nilpotency_index: usize,
    /// Whether `Anh(ŝ)^2 = 0`; reported, never asserted.
    pub square_zero: bool,
}

/// Checks that `Anh(ŝ)` is a two-sided ideal, that `1 + v` is a unit for `samples`
/// random members `v`, and that `Krn(T)` coincides with it as a subspace.
pub fn verify_radical_equality(
    algebra: &GroupAlgebra,
    samples: usize,
    seed: u64,
) -> Result<RadicalReport, RadicalError> {
    let fail = |what: &str| Err(RadicalError::VerificationFailure(what.to_string()));
    if samples == 0 {
        return fail("at least one nil sample is required");
    }
    let anh = annihilator_basis(algebra);
    let span = anh.span(algebra);
    let matches_closed_form = span == closed_form_basis(algebra).span(algebra);
    if !matches_closed_form {
        return fail("span of the annihilator differs from the closed form");
    }
    let s = algebra.s_hat();
    for v in &anh.basis {
        if !(v * &s).is_zero() || !(&s * v).is_zero() {
            return fail("a basis vector does not annihilate s-hat on both sides");
        }
    }

    for v in &anh.basis {
        for g in [algebra.x(), algebra.y()] {
            if !span.contains((&g * v).coeffs()) || !span.contains((v * &g).coeffs()) {
                return fail("two-sided ideal");
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = algebra.field();
    for _ in 0..samples {
        let v = anh
            .basis
            .iter()
            .fold(algebra.zero(), |acc, b| &acc + &b.scale(f.random(&mut rng)).expect("same field"));
        let u = &algebra.one() + &v;
        if u.invert().is_err() {
            return fail("1 + v is not a unit for some v in the span (nil)");
        }
    }

    let krn = krn_t_subspace(algebra);
    if krn != span {
        return fail("Krn(T) differs from Anh(s-hat)");
    }
    let nilpotency_index = nilpotency_index(&anh)?;
    Ok(RadicalReport {
        dim: anh.dim(),
        matches_closed_form,
        two_sided_ideal: true,
        nil_samples: samples,
        krn_t_equals_anh: true,
        nilpotency_index,
        square_zero: nilpotency_index <= 2,
    })
}
