//! Augmentation ideals, the decomposition `Δ(G) = J(FG) ⊕ Δ(G,H)` with `H = <x>`,
//! the center of `Δ(G,H)`, and the census of its Wedderburn components.
//!
//! Components are indexed by orbits of `<q, t> ≤ Z_m^*` on `Z_m \ {0}`, where
//! `q = 3^n mod m`. A merged orbit `O` contributes one simple component
//! `M_3(F_{q^d})` with `d = |O| / 3`; the oracle module measures `d` independently.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arith::pow_mod;
use crate::group::GroupParams;
use crate::group_ring::{GroupAlgebra, GroupRingElement};
use crate::linalg::{Matrix, Subspace};
use crate::radical::annihilator_basis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("decomposition check failed: {0}")]
    VerificationFailure(String),
}

fn failure<T>(msg: impl Into<String>) -> Result<T, DecompositionError> {
    Err(DecompositionError::VerificationFailure(msg.into()))
}

/// Sorted residues forming one orbit on `Z_m \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetOrbit {
    pub exponents: Vec<u64>,
}

impl CosetOrbit {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn least(&self) -> u64 {
        self.exponents[0]
    }

    pub fn contains(&self, j: u64) -> bool {
        self.exponents.binary_search(&j).is_ok()
    }
}

/// Orbits of the multiplicative action generated by `multipliers` on `{1, …, m-1}`.
fn orbits(m: u64, multipliers: &[u64]) -> Vec<CosetOrbit> {
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for start in 1..m {
        if seen[start as usize] {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut stack = vec![start];
        seen[start as usize] = true;
        while let Some(j) = stack.pop() {
            members.insert(j);
            for &a in multipliers {
                let next = j * a % m;
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    stack.push(next);
                }
            }
        }
        out.push(CosetOrbit { exponents: members.into_iter().collect() });
    }
    out
}

/// Orbits of `j ↦ jt mod m`; each has size 3.
pub fn t_orbits(p: &GroupParams) -> Vec<CosetOrbit> {
    orbits(p.m(), &[p.t()])
}

/// `q = 3^n mod m`.
pub fn q_mod_m(p: &GroupParams, n: usize) -> u64 {
    pow_mod(3, n as u64, p.m())
}

/// Orbits of `<q, t>` with `q = 3^n`; each is a disjoint union of `t`-orbits.
pub fn merged_orbits(p: &GroupParams, n: usize) -> Vec<CosetOrbit> {
    orbits(p.m(), &[p.t(), q_mod_m(p, n)])
}

/// One simple summand `M_3(F_{q^d})` of `Δ(G,H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnComponent {
    pub matrix_size: usize,
    /// Extension degree `d` over `F_q`.
    pub field_degree: usize,
    pub orbit: CosetOrbit,
}

impl WedderburnComponent {
    /// `dim_{F_q} M_3(F_{q^d}) = 9d`.
    pub fn dim(&self) -> usize {
        self.matrix_size * self.matrix_size * self.field_degree
    }
}

pub fn components(p: &GroupParams, n: usize) -> Vec<WedderburnComponent> {
    merged_orbits(p, n)
        .into_iter()
        .map(|orbit| WedderburnComponent { matrix_size: 3, field_degree: orbit.len() / 3, orbit })
        .collect()
}

/// `Δ(G) = ker(augmentation)`.
pub fn delta_g_subspace(algebra: &GroupAlgebra) -> Subspace {
    let f = algebra.field();
    let n = algebra.dim();
    let row = vec![f.one(); n];
    let m = Matrix::from_rows(f, &[row]).expect("single row");
    Subspace::spanned_by(f, n, &m.kernel_basis())
}

/// `Δ(G,H)`: the span of all `g (x − 1) h`, in reduced echelon form.
pub fn delta_gh_subspace(algebra: &GroupAlgebra) -> Subspace {
    let p = *algebra.params();
    let n = algebra.dim();
    let f = algebra.field();
    let mut s = Subspace::new(f, n);
    let x = p.x();
    let mut v = vec![f.zero(); n];
    for g in p.elements() {
        let gx = p.multiply(g, x);
        for h in p.elements() {
            let (a, b) = (p.idx(p.multiply(gx, h)), p.idx(p.multiply(g, h)));
            v[a] += f.one();
            v[b] -= f.one();
            s.insert(&v);
            v[a] = f.zero();
            v[b] = f.zero();
        }
    }
    s
}

pub fn delta_gh_basis(algebra: &GroupAlgebra) -> Vec<GroupRingElement> {
    delta_gh_subspace(algebra)
        .basis()
        .iter()
        .map(|v| algebra.from_coeffs(v.clone()).expect("ambient dimension is 3m"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSum {
    pub dim_delta_g: usize,
    pub dim_delta_gh: usize,
    pub dim_j: usize,
    pub combined_rank: usize,
    pub intersection_dim: usize,
}

/// Checks `J ∩ Δ(G,H) = 0` and `J + Δ(G,H) = Δ(G)` by rank additivity.
pub fn check_direct_sum(algebra: &GroupAlgebra) -> Result<DirectSum, DecompositionError> {
    let m = algebra.params().m() as usize;
    let j = annihilator_basis(algebra).span(algebra);
    let dgh = delta_gh_subspace(algebra);
    let dg = delta_g_subspace(algebra);
    let report = DirectSum {
        dim_delta_g: dg.dim(),
        dim_delta_gh: dgh.dim(),
        dim_j: j.dim(),
        combined_rank: j.sum_dim(&dgh),
        intersection_dim: j.intersection_dim(&dgh),
    };
    if report.dim_delta_gh != 3 * m - 3 {
        return failure(format!("dim Δ(G,H) = {}, expected {}", report.dim_delta_gh, 3 * m - 3));
    }
    if report.dim_delta_g != 3 * m - 1 {
        return failure(format!("dim Δ(G) = {}, expected {}", report.dim_delta_g, 3 * m - 1));
    }
    if !dg.contains_subspace(&j) || !dg.contains_subspace(&dgh) {
        return failure("J and Δ(G,H) must lie in Δ(G)");
    }
    if report.intersection_dim != 0 {
        return failure(format!("J ∩ Δ(G,H) has dimension {}", report.intersection_dim));
    }
    if report.combined_rank != report.dim_delta_g {
        return failure(format!("rank of J ∪ Δ(G,H) is {}, expected {}", report.combined_rank, report.dim_delta_g));
    }
    Ok(report)
}

/// The class sums `Ĉ_1, …, Ĉ_k` of the 3-element classes inside `<x>`, each checked
/// central and inside `Δ(G,H)` by solving `β (x − 1) = Ĉ_i`.
pub fn center_basis(algebra: &GroupAlgebra) -> Result<Vec<GroupRingElement>, DecompositionError> {
    let p = *algebra.params();
    let class_sums: Vec<GroupRingElement> = p
        .conjugacy_classes()
        .iter()
        .filter(|c| c.len() == 3)
        .map(|c| algebra.hat(&c.members).expect("nonempty"))
        .collect();
    let x_minus_one = &algebra.x() - &algebra.one();
    let r = x_minus_one.regular_representation();
    for c in &class_sums {
        for g in [algebra.x(), algebra.y()] {
            if &g * c != c * &g {
                return failure(format!("class sum {c} does not commute with {g}"));
            }
        }
        let beta = match r.solve(c.coeffs()) {
            Ok(b) => algebra.from_coeffs(b).expect("length 3m"),
            Err(_) => return failure(format!("no β with β(x − 1) = {c}")),
        };
        if &beta * &x_minus_one != *c {
            return failure("β(x − 1) does not reproduce the class sum");
        }
    }
    let dim = crate::radical::span_of(algebra, &class_sums).dim();
    if dim as u64 != p.k() || class_sums.len() as u64 != p.k() {
        return failure(format!("center has dimension {dim}, expected k = {}", p.k()));
    }
    Ok(class_sums)
}

/// Dimension of `{v ∈ Δ(G,H) : v·Δ(G,H) = 0}` from the multiplication pairing on the
/// computed basis. Zero for a semisimple ideal.
pub fn delta_gh_left_annihilator_dim(algebra: &GroupAlgebra) -> usize {
    let basis = delta_gh_basis(algebra);
    let d = basis.len();
    let n = algebra.dim();
    let reps: Vec<_> = basis.iter().map(|b| b.regular_representation()).collect();
    // w_i = (b_i b_1, …, b_i b_d); the annihilator is the kernel of i ↦ w_i
    let mut pairing = Subspace::new(algebra.field(), d * n);
    for b in &basis {
        let mut w = Vec::with_capacity(d * n);
        for r in &reps {
            w.extend(r.mul_vec(b.coeffs()).expect("square"));
        }
        pairing.insert(&w);
    }
    d - pairing.dim()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub dim_delta_g: usize,
    pub dim_delta_gh: usize,
    pub dim_j: usize,
    pub intersection_dim: usize,
    pub center_dim: usize,
    pub components: Vec<WedderburnComponent>,
}

pub fn decompose(algebra: &GroupAlgebra) -> Result<DecompositionReport, DecompositionError> {
    let p = *algebra.params();
    let sum = check_direct_sum(algebra)?;
    let center = center_basis(algebra)?;
    let comps = components(&p, algebra.field().degree());
    let total: usize = comps.iter().map(|c| c.dim()).sum();
    if total != sum.dim_delta_gh {
        return failure(format!("components have total dimension {total}, expected {}", sum.dim_delta_gh));
    }
    if comps.len() > center.len() {
        return failure("more components than central dimensions");
    }
    Ok(DecompositionReport {
        dim_delta_g: sum.dim_delta_g,
        dim_delta_gh: sum.dim_delta_gh,
        dim_j: sum.dim_j,
        intersection_dim: sum.intersection_dim,
        center_dim: center.len(),
        components: comps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::group::validate_params;

    fn algebra(m: u64, t: u64, n: usize) -> GroupAlgebra {
        GroupAlgebra::new(validate_params(m, t).unwrap(), build_field(n).unwrap())
    }

    fn exps(o: &[CosetOrbit]) -> Vec<Vec<u64>> {
        o.iter().map(|c| c.exponents.clone()).collect()
    }

    #[test]
    fn t_orbit_examples() {
        let p = validate_params(13, 3).unwrap();
        assert_eq!(exps(&t_orbits(&p)), vec![vec![1, 3, 9], vec![2, 5, 6], vec![4, 10, 12], vec![7, 8, 11]]);
        let p = validate_params(7, 2).unwrap();
        assert_eq!(exps(&t_orbits(&p)), vec![vec![1, 2, 4], vec![3, 5, 6]]);
    }

    #[test]
    fn merged_orbit_examples() {
        let p = validate_params(13, 3).unwrap();
        assert_eq!(merged_orbits(&p, 1), t_orbits(&p));
        let p = validate_params(7, 2).unwrap();
        assert_eq!(exps(&merged_orbits(&p, 1)), vec![vec![1, 2, 3, 4, 5, 6]]);
        assert_eq!(exps(&merged_orbits(&p, 2)), vec![vec![1, 2, 4], vec![3, 5, 6]]);
        let c = components(&p, 1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].field_degree, 2);
        assert!(components(&p, 2).iter().all(|c| c.field_degree == 1));
        for n in 1..=6 {
            let c = components(&validate_params(13, 3).unwrap(), n);
            assert_eq!(c.len(), 4);
            assert!(c.iter().all(|c| c.field_degree == 1 && c.matrix_size == 3));
        }
    }

    #[test]
    fn orbit_partitions() {
        for m in (7..=100u64).filter(|m| m % 3 == 1) {
            for t in 2..m {
                let Ok(p) = validate_params(m, t) else { continue };
                let to = t_orbits(&p);
                assert_eq!(to.len() as u64, p.k());
                assert!(to.iter().all(|o| o.len() == 3));
                for n in 1..=3 {
                    let mo = merged_orbits(&p, n);
                    let all: BTreeSet<u64> = mo.iter().flat_map(|o| o.exponents.iter().copied()).collect();
                    assert_eq!(all.len() as u64, m - 1);
                    assert_eq!(mo.iter().map(|o| o.len()).sum::<usize>() as u64, m - 1);
                    for o in &mo {
                        assert_eq!(o.len() % 3, 0);
                        // union of t-orbits
                        for t_orb in &to {
                            let inside = t_orb.exponents.iter().filter(|&&j| o.contains(j)).count();
                            assert!(inside == 0 || inside == 3);
                        }
                    }
                    let comps = components(&p, n);
                    assert_eq!(comps.iter().map(|c| c.field_degree as u64).sum::<u64>(), p.k());
                    assert_eq!(comps.iter().map(|c| c.dim() as u64).sum::<u64>(), 3 * m - 3);
                }
            }
        }
    }

    #[test]
    fn delta_dimensions() {
        for (m, t) in [(13u64, 3u64), (7, 2)] {
            let a = algebra(m, t, 1);
            let dgh = delta_gh_subspace(&a);
            assert_eq!(dgh.dim() as u64, 3 * m - 3);
            assert!(dgh.contains((&a.x() - &a.one()).coeffs()));
            let ds = check_direct_sum(&a).unwrap();
            assert_eq!(ds.combined_rank as u64, 3 * m - 1);
            assert_eq!(ds.intersection_dim, 0);
            assert_eq!(ds.dim_j, 2);
        }
    }

    #[test]
    fn center_examples() {
        let a = algebra(13, 3, 1);
        let c = center_basis(&a).unwrap();
        assert_eq!(c.len(), 4);
        let p = *a.params();
        let expected = a.hat(&[p.element(1, 0), p.element(3, 0), p.element(9, 0)]).unwrap();
        assert_eq!(c[0], expected);
        for ci in &c {
            for g in p.elements() {
                let g = a.basis(g);
                assert_eq!(&g * ci, ci * &g);
            }
        }
        assert_eq!(center_basis(&algebra(7, 2, 1)).unwrap().len(), 2);
    }

    #[test]
    fn semisimplicity_proxy() {
        assert_eq!(delta_gh_left_annihilator_dim(&algebra(7, 2, 1)), 0);
        assert_eq!(delta_gh_left_annihilator_dim(&algebra(13, 3, 1)), 0);
    }

    #[test]
    fn full_report() {
        let r = decompose(&algebra(7, 2, 2)).unwrap();
        assert_eq!((r.dim_delta_g, r.dim_delta_gh, r.dim_j, r.intersection_dim, r.center_dim), (20, 18, 2, 0, 2));
        assert_eq!(r.dim_j + r.dim_delta_gh, r.dim_delta_g);
        assert_eq!(r.components.len(), 2);
    }
}
