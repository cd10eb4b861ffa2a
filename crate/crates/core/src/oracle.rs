//! Independent checks of the decomposition through explicit representations.
//!
//! For a `t`-orbit `{j, jt, jt²}` the induced representation sends
//! `x ↦ diag(ζ^j, ζ^{jt}, ζ^{jt²})` and `y ↦ P` (the 3-cycle `e_i ↦ e_{i+1}`), with
//! `ζ` a primitive `m`-th root of unity in `F_{3^s}`, `s = lcm(n, ord_m 3)`.
//!
//! `F_q`-dimensions are measured over `F_3`: every `F_q`-span is expanded by an
//! `F_3`-basis `1, z, …, z^{n−1}` of `F_q` and its `F_3`-dimension divided by `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{lcm, multiplicative_order};
use crate::decomposition::{merged_orbits, t_orbits, CosetOrbit};
use crate::field::{build_field, Field, FieldElement, FieldEmbedding, FieldError};
use crate::group::{GroupElement, GroupParams};
use crate::group_ring::{GroupAlgebra, GroupRingElement};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::radical::annihilator_basis;
use crate::units::{structure, UnitsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("representation construction failed: {0}")]
    ConstructionFailure(String),
    #[error("oracle verification failed: {0}")]
    VerificationFailure(String),
    #[error("density sampling needs at least {MIN_DENSITY_SAMPLES} samples (got {0})")]
    TooFewSamples(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

pub const MIN_DENSITY_SAMPLES: usize = 1000;

/// Sampling is split into this many chunks, chunk `w` seeded with `seed + w`, so
/// reports do not depend on the thread count.
pub const DENSITY_WORKERS: u64 = 8;

/// Degree over `F_3` of the field holding `F_{3^n}` and the `m`-th roots of unity.
pub fn splitting_degree(p: &GroupParams, n: usize) -> usize {
    let ord = multiplicative_order(3, p.m()).expect("gcd(3, m) = 1");
    lcm(n as u64, ord) as usize
}

#[derive(Clone, Debug)]
pub struct InducedRepresentation {
    params: GroupParams,
    base: Field,
    embedding: FieldEmbedding,
    orbit: CosetOrbit,
    zeta: FieldElement,
    diagonal: [FieldElement; 3],
    image_of_y: Matrix,
}

impl InducedRepresentation {
    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn orbit(&self) -> &CosetOrbit {
        &self.orbit
    }

    pub fn base_field(&self) -> Field {
        self.base
    }

    pub fn splitting_field(&self) -> Field {
        self.embedding.target()
    }

    pub fn zeta(&self) -> FieldElement {
        self.zeta
    }

    pub fn image_of_x(&self) -> Matrix {
        self.image(self.params.x())
    }

    pub fn image_of_y(&self) -> &Matrix {
        &self.image_of_y
    }

    /// `ρ(x^i y^j) = ρ(x)^i ρ(y)^j`.
    pub fn image(&self, g: GroupElement) -> Matrix {
        let f = self.splitting_field();
        let mut m = Matrix::zeros(f, 3, 3);
        // D^i P^j has entry d_r^i at (r, c) where P^j e_c = e_{c+j}, i.e. r = c + j.
        for c in 0..3 {
            let r = (c + g.j as usize) % 3;
            m[(r, c)] = self.diagonal[r].pow(g.i as u128);
        }
        m
    }

    /// Linear extension to `F_q G`, coefficients embedded into the splitting field.
    pub fn image_of_element(&self, a: &GroupRingElement) -> Result<Matrix, OracleError> {
        let f = self.splitting_field();
        let mut acc = Matrix::zeros(f, 3, 3);
        let p = self.params;
        for (idx, &c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = self.embedding.apply(c)?;
            let img = self.image(p.from_idx(idx));
            for r in 0..3 {
                for col in 0..3 {
                    let v = img[(r, col)];
                    if !v.is_zero() {
                        acc[(r, col)] += c * v;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Images `ρ(z^b g)` flattened to `F_3` coordinates, for the `F_3`-basis
    /// `{z^b g}` of `F_q G` ordered by `(g, b)`.
    fn f3_images(&self) -> Result<Vec<Vector>, OracleError> {
        let basis = f3_basis_of(self.base, &self.embedding)?;
        let mut out = Vec::with_capacity(self.params.order() * basis.len());
        for g in self.params.elements() {
            let img = self.image(g);
            for &c in &basis {
                out.push(flatten_f3(&img, c));
            }
        }
        Ok(out)
    }
}

/// Embedded images of `1, z, …, z^{n−1}`.
fn f3_basis_of(base: Field, emb: &FieldEmbedding) -> Result<Vec<FieldElement>, FieldError> {
    (0..base.degree())
        .map(|b| {
            let mut c = vec![0u8; base.degree()];
            c[b] = 1;
            emb.apply(base.element(&c)?)
        })
        .collect()
}

/// Entries of `c · M` written out in `F_3` coordinates.
fn flatten_f3(m: &Matrix, c: FieldElement) -> Vector {
    let f3 = Field::prime();
    let mut out = Vec::with_capacity(m.rows() * m.cols() * m.field().degree());
    for r in 0..m.rows() {
        for col in 0..m.cols() {
            let v = m[(r, col)] * c;
            out.extend(v.coeffs().into_iter().map(|d| f3.from_int(d as i64)));
        }
    }
    out
}

fn is_t_orbit(p: &GroupParams, orbit: &CosetOrbit) -> bool {
    t_orbits(p).contains(orbit)
}

fn mat_pow(m: &Matrix, e: u64) -> Matrix {
    (0..e).fold(Matrix::identity(m.field(), m.rows()), |acc, _| acc.mul(m).expect("square"))
}

pub fn build_representation(
    p: &GroupParams,
    n: usize,
    orbit: &CosetOrbit,
) -> Result<InducedRepresentation, OracleError> {
    let fail = |msg: String| Err(OracleError::ConstructionFailure(msg));
    if orbit.len() != 3 || !is_t_orbit(p, orbit) {
        return fail(format!("{:?} is not a t-orbit", orbit.exponents));
    }
    let base = build_field(n)?;
    let split = build_field(splitting_degree(p, n))?;
    let embedding = FieldEmbedding::new(base, split)?;
    let zeta = split.find_root_of_unity(p.m())?;
    let (m, t) = (p.m(), p.t());
    let j = orbit.least();
    let exps = [j, j * t % m, j * t % m * t % m];
    let diagonal = exps.map(|e| zeta.pow(e as u128));
    let mut py = Matrix::zeros(split, 3, 3);
    for c in 0..3 {
        py[((c + 1) % 3, c)] = split.one();
    }
    let rep = InducedRepresentation { params: *p, base, embedding, orbit: orbit.clone(), zeta, diagonal, image_of_y: py };

    let id = Matrix::identity(split, 3);
    let rx = rep.image_of_x();
    let ry = rep.image_of_y.clone();
    let ry_inv = ry.mul(&ry).expect("square");
    if ry_inv.mul(&ry).expect("square") != id {
        return fail("ρ(y)^3 != I".into());
    }
    if mat_pow(&rx, m) != id {
        return fail("ρ(x)^m != I".into());
    }
    let lhs = ry_inv.mul(&rx).and_then(|a| a.mul(&ry)).expect("square");
    if lhs != mat_pow(&rx, t) {
        return fail("ρ(y)^-1 ρ(x) ρ(y) != ρ(x)^t".into());
    }
    Ok(rep)
}

/// All induced representations, one per `t`-orbit.
pub fn all_representations(p: &GroupParams, n: usize) -> Result<Vec<InducedRepresentation>, OracleError> {
    t_orbits(p).iter().map(|o| build_representation(p, n, o)).collect()
}

/// Checks `ρ(gh) = ρ(g)ρ(h)` on every pair from `{1, x, y}` and on `trials` random
/// pairs. Returns the number of pairs checked.
pub fn check_homomorphism(rep: &InducedRepresentation, trials: usize, seed: u64) -> Result<usize, OracleError> {
    let p = rep.params;
    let gens = [p.identity(), p.x(), p.y()];
    let mut pairs: Vec<(GroupElement, GroupElement)> =
        gens.iter().flat_map(|&g| gens.iter().map(move |&h| (g, h))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let g = p.from_idx(rng.random_range(0..p.order()));
        let h = p.from_idx(rng.random_range(0..p.order()));
        pairs.push((g, h));
    }
    for &(g, h) in &pairs {
        let lhs = rep.image(p.multiply(g, h));
        let rhs = rep.image(g).mul(&rep.image(h)).expect("3x3");
        if lhs != rhs {
            return Err(OracleError::VerificationFailure(format!("ρ({g}·{h}) != ρ({g})ρ({h})")));
        }
    }
    Ok(pairs.len())
}

/// `dim_{F_q} span{ρ(g)} / 9`, measured by rank, and compared with the degree the
/// merged orbit containing this representation's `t`-orbit predicts.
pub fn component_field_degree(rep: &InducedRepresentation) -> Result<usize, OracleError> {
    let n = rep.base.degree();
    let ambient = 9 * rep.splitting_field().degree();
    let span = Subspace::spanned_by(Field::prime(), ambient, &rep.f3_images()?);
    let rank = span.dim();
    if !rank.is_multiple_of(9 * n) {
        return Err(OracleError::VerificationFailure(format!(
            "F_3-rank {rank} of the image is not a multiple of 9n = {}",
            9 * n
        )));
    }
    let measured = rank / (9 * n);
    let predicted = merged_orbits(&rep.params, n)
        .into_iter()
        .find(|o| o.contains(rep.orbit.least()))
        .map(|o| o.len() / 3)
        .expect("merged orbits partition Z_m \\ {0}");
    if measured != predicted {
        return Err(OracleError::VerificationFailure(format!(
            "orbit {:?}: measured degree {measured}, predicted {predicted}",
            rep.orbit.exponents
        )));
    }
    Ok(measured)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    /// `F_q`-dimension of the joint kernel.
    pub dim: usize,
    pub equals_annihilator: bool,
}

/// Joint kernel of the augmentation and every induced representation, compared with
/// `Anh(ŝ)`.
pub fn kernel_is_radical(algebra: &GroupAlgebra) -> Result<KernelReport, OracleError> {
    let p = *algebra.params();
    let base = algebra.field();
    let n = base.degree();
    let reps = all_representations(&p, n)?;
    let f3 = Field::prime();
    let cols = p.order() * n;

    // Column (g, b) holds the image of z^b g: augmentation coordinates e_b, then each ρ.
    let mut columns: Vec<Vector> = (0..cols)
        .map(|c| {
            let mut v = vec![f3.zero(); n];
            v[c % n] = f3.one();
            v
        })
        .collect();
    for rep in &reps {
        for (col, img) in columns.iter_mut().zip(rep.f3_images()?) {
            col.extend(img);
        }
    }
    let rows = columns[0].len();
    let system = Matrix::from_columns(f3, rows, &columns).expect("uniform column length");
    let kernel = Subspace::spanned_by(f3, cols, &system.kernel_basis());

    let anh = annihilator_basis(algebra);
    let mut anh_f3 = Subspace::new(f3, cols);
    for v in &anh.basis {
        for b in 0..n {
            let mut zb = vec![0u8; n];
            zb[b] = 1;
            let scaled = v.scale(base.element(&zb)?).expect("same field");
            anh_f3.insert(&expand_f3(&scaled));
        }
    }
    if !kernel.dim().is_multiple_of(n) {
        return Err(OracleError::VerificationFailure("joint kernel is not an F_q-subspace".into()));
    }
    Ok(KernelReport { dim: kernel.dim() / n, equals_annihilator: kernel == anh_f3 })
}

/// `F_3` coordinates of a group-ring element, ordered by `(g, b)`.
fn expand_f3(a: &GroupRingElement) -> Vector {
    let f3 = Field::prime();
    a.coeffs()
        .iter()
        .flat_map(|c| c.coeffs().into_iter().map(move |d| f3.from_int(d as i64)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub samples: usize,
    pub invertible_count: usize,
    pub empirical: BigRational,
    pub predicted: BigRational,
    pub z_score: f64,
}

impl DensityReport {
    pub fn empirical_f64(&self) -> f64 {
        self.empirical.to_f64().unwrap_or(f64::NAN)
    }

    pub fn predicted_f64(&self) -> f64 {
        self.predicted.to_f64().unwrap_or(f64::NAN)
    }
}

/// Predicted fraction of units, `|U(FG)| / q^{3m}`.
pub fn predicted_density(p: &GroupParams, n: usize) -> Result<BigRational, OracleError> {
    let s = structure(p.m(), p.t(), n)?;
    Ok(BigRational::new(BigInt::from(s.total_order.clone()), BigInt::from(s.algebra_size())))
}

/// Draws uniform elements of `FG` and counts how many `invert` succeeds on.
pub fn monte_carlo_density(algebra: &GroupAlgebra, samples: usize, seed: u64) -> Result<DensityReport, OracleError> {
    if samples < MIN_DENSITY_SAMPLES {
        return Err(OracleError::TooFewSamples(samples));
    }
    let predicted = predicted_density(algebra.params(), algebra.field().degree())?;
    let base = samples / DENSITY_WORKERS as usize;
    let extra = samples % DENSITY_WORKERS as usize;
    let invertible_count: usize = (0..DENSITY_WORKERS)
        .into_par_iter()
        .map(|w| {
            let count = base + usize::from((w as usize) < extra);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(w));
            (0..count).filter(|_| algebra.random(&mut rng).invert().is_ok()).count()
        })
        .sum();
    let empirical = BigRational::new(BigInt::from(invertible_count), BigInt::from(samples));
    let p = predicted.to_f64().unwrap_or(f64::NAN);
    let e = empirical.to_f64().unwrap_or(f64::NAN);
    let se = (p * (1.0 - p) / samples as f64).sqrt();
    Ok(DensityReport { samples, invertible_count, empirical, predicted, z_score: (e - p) / se })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::group::validate_params;

    fn params(m: u64, t: u64) -> GroupParams {
        validate_params(m, t).unwrap()
    }

    fn orbit(e: &[u64]) -> CosetOrbit {
        CosetOrbit { exponents: e.to_vec() }
    }

    #[test]
    fn splitting_degrees() {
        assert_eq!(splitting_degree(&params(13, 3), 1), 3);
        assert_eq!(splitting_degree(&params(13, 3), 2), 6);
        assert_eq!(splitting_degree(&params(7, 2), 1), 6);
        assert_eq!(splitting_degree(&params(31, 5), 2), 30);
    }

    #[test]
    fn representation_13_3() {
        let p = params(13, 3);
        let rep = build_representation(&p, 1, &orbit(&[1, 3, 9])).unwrap();
        assert_eq!(rep.splitting_field().degree(), 3);
        let z = rep.zeta();
        let rx = rep.image_of_x();
        assert_eq!(rx[(0, 0)], z);
        assert_eq!(rx[(1, 1)], z.pow(3));
        assert_eq!(rx[(2, 2)], z.pow(9));
        let ry = rep.image_of_y();
        assert_eq!(mat_pow(ry, 3), Matrix::identity(rep.splitting_field(), 3));
        let rep7 = build_representation(&params(7, 2), 1, &orbit(&[1, 2, 4])).unwrap();
        assert_eq!(rep7.splitting_field().degree(), 6);
    }

    #[test]
    fn rejects_non_orbits() {
        let p = params(13, 3);
        assert!(matches!(
            build_representation(&p, 1, &orbit(&[1, 2, 3])),
            Err(OracleError::ConstructionFailure(_))
        ));
    }

    #[test]
    fn homomorphism_checks() {
        let p = params(13, 3);
        for rep in all_representations(&p, 1).unwrap() {
            assert_eq!(check_homomorphism(&rep, 100, 1).unwrap(), 109);
            // yx = x^{t^2} y transported through ρ
            let yx = rep.image(p.multiply(p.y(), p.x()));
            let t2 = p.t() * p.t() % p.m();
            assert_eq!(yx, mat_pow(&rep.image_of_x(), t2).mul(rep.image_of_y()).unwrap());
        }
    }

    #[test]
    fn measured_degrees() {
        let p = params(13, 3);
        for rep in all_representations(&p, 1).unwrap() {
            assert_eq!(component_field_degree(&rep).unwrap(), 1);
        }
        let p = params(7, 2);
        let r1 = build_representation(&p, 1, &orbit(&[1, 2, 4])).unwrap();
        assert_eq!(component_field_degree(&r1).unwrap(), 2);
        let r2 = build_representation(&p, 2, &orbit(&[1, 2, 4])).unwrap();
        assert_eq!(component_field_degree(&r2).unwrap(), 1);
    }

    #[test]
    fn closed_form_radical_maps_to_zero() {
        let p = params(7, 2);
        let a = GroupAlgebra::new(p, build_field(1).unwrap());
        let s = a.s_hat();
        for rep in all_representations(&p, 1).unwrap() {
            for v in crate::radical::closed_form_basis(&a).basis {
                let img = rep.image_of_element(&v).unwrap();
                assert_eq!(img, Matrix::zeros(rep.splitting_field(), 3, 3));
            }
            // ŝ acts as the identity on every 3-dimensional piece
            assert_eq!(rep.image_of_element(&s).unwrap(), Matrix::identity(rep.splitting_field(), 3));
        }
    }

    #[test]
    fn joint_kernel() {
        for (m, t, n) in [(13, 3, 1), (7, 2, 1), (7, 2, 2)] {
            let a = GroupAlgebra::new(params(m, t), build_field(n).unwrap());
            let r = kernel_is_radical(&a).unwrap();
            assert_eq!(r.dim, 2);
            assert!(r.equals_annihilator);
        }
    }

    #[test]
    fn predicted_densities() {
        // (2/3)·(11232/19683)^4 and (2/3)·(339655680/387420489)
        let d = predicted_density(&params(13, 3), 1).unwrap();
        let expected = BigRational::new(2.into(), 3.into())
            * BigRational::new(11232.into(), 19683.into()).pow(4);
        assert_eq!(d, expected);
        assert!((d.to_f64().unwrap() - 0.070692).abs() < 1e-6);
        let d = predicted_density(&params(7, 2), 1).unwrap();
        let expected = BigRational::new(2.into(), 3.into()) * BigRational::new(339655680.into(), 387420489.into());
        assert_eq!(d, expected);
        assert!((d.to_f64().unwrap() - 0.584474).abs() < 1e-6);
    }

    #[test]
    fn density_is_deterministic() {
        let a = GroupAlgebra::new(params(7, 2), build_field(1).unwrap());
        let r1 = monte_carlo_density(&a, 2000, 3).unwrap();
        let r2 = monte_carlo_density(&a, 2000, 3).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.z_score.abs() < 4.0);
        assert_eq!(monte_carlo_density(&a, 10, 0).unwrap_err(), OracleError::TooFewSamples(10));
    }
}
