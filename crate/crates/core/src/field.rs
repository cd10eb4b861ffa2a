//! Arithmetic in `F_3` and its extensions `F_{3^e}`.
//!
//! An element of `F_3[z]/(f)` is stored bit-sliced: bit `i` of `pos` is set when
//! the coefficient of `z^i` is 1, bit `i` of `neg` when it is 2 (= -1). Addition is
//! a handful of word operations and multiplication is shift-and-add followed by
//! reduction against the monic modulus, so degrees up to [`MAX_DEGREE`] fit in a
//! `u64` pair with `u128` intermediates.
//!
//! Every degree has exactly one canonical modulus, so a [`Field`] is a handle to a
//! process-wide descriptor and two fields are equal iff their degrees are.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::arith::{gcd, prime_factors};
use crate::poly::Poly;

pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field degree {0} is outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("operands belong to different fields: F_3^{left} and F_3^{right}")]
    FieldMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("F_3^{degree} has no element of order {order}")]
    NoSuchRoot { order: u64, degree: usize },
    #[error("F_3^{from} is not a subfield of F_3^{to}")]
    NotASubfield { from: usize, to: usize },
    #[error("coefficient {0} is not a residue mod 3")]
    InvalidCoefficient(u8),
    #[error("expected at most {expected} coefficients, got {got}")]
    TooManyCoefficients { expected: usize, got: usize },
}

/// Bit-sliced vector of F_3 coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Trits {
    pos: u128,
    neg: u128,
}

impl Trits {
    const ZERO: Trits = Trits { pos: 0, neg: 0 };

    #[inline]
    fn add(self, o: Trits) -> Trits {
        let (p1, n1, p2, n2) = (self.pos, self.neg, o.pos, o.neg);
        let z1 = !(p1 | n1);
        let z2 = !(p2 | n2);
        Trits {
            pos: (p1 & z2) | (p2 & z1) | (n1 & n2),
            neg: (n1 & z2) | (n2 & z1) | (p1 & p2),
        }
    }

    #[inline]
    fn neg(self) -> Trits {
        Trits { pos: self.neg, neg: self.pos }
    }

    #[inline]
    fn shl(self, s: u32) -> Trits {
        Trits { pos: self.pos << s, neg: self.neg << s }
    }

    #[inline]
    fn support(self) -> u128 {
        self.pos | self.neg
    }

    fn from_coeffs(coeffs: &[u8]) -> Trits {
        let mut t = Trits::ZERO;
        for (i, &c) in coeffs.iter().enumerate() {
            match c % 3 {
                1 => t.pos |= 1 << i,
                2 => t.neg |= 1 << i,
                _ => {}
            }
        }
        t
    }

    fn coeff(self, i: usize) -> u8 {
        if (self.pos >> i) & 1 == 1 {
            1
        } else if (self.neg >> i) & 1 == 1 {
            2
        } else {
            0
        }
    }
}

/// Reduce modulo `z^degree + low`.
#[inline]
fn reduce(mut acc: Trits, degree: usize, low: Trits) -> Trits {
    loop {
        let support = acc.support();
        if support >> degree == 0 {
            return acc;
        }
        let top = 127 - support.leading_zeros();
        let shift = top - degree as u32;
        let bit = 1u128 << top;
        // z^degree = -low
        if acc.pos & bit != 0 {
            acc.pos ^= bit;
            acc = acc.add(low.neg().shl(shift));
        } else {
            acc.neg ^= bit;
            acc = acc.add(low.shl(shift));
        }
    }
}

#[inline]
fn mul_mod(a: Trits, b: Trits, degree: usize, low: Trits) -> Trits {
    let mut acc = Trits::ZERO;
    let mut bits = b.pos;
    while bits != 0 {
        acc = acc.add(a.shl(bits.trailing_zeros()));
        bits &= bits - 1;
    }
    let an = a.neg();
    let mut bits = b.neg;
    while bits != 0 {
        acc = acc.add(an.shl(bits.trailing_zeros()));
        bits &= bits - 1;
    }
    reduce(acc, degree, low)
}

/// Monic irreducible modulus and derived data for `F_{3^e}`.
#[derive(Debug)]
pub struct FieldDescriptor {
    degree: usize,
    modulus: Vec<u8>,
    order: BigUint,
    low: Trits,
}

impl FieldDescriptor {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Modulus coefficients, constant term first, length `degree + 1`, monic.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }
}

static REGISTRY: [OnceLock<FieldDescriptor>; MAX_DEGREE + 1] =
    [const { OnceLock::new() }; MAX_DEGREE + 1];

/// Returns the canonical field of order `3^e`.
///
/// The modulus is the first monic irreducible polynomial of degree `e` when the
/// coefficient tuples `(c_0, c_1, ..., c_{e-1})` are ordered lexicographically
/// with `0 < 1 < 2`.
pub fn build_field(e: usize) -> Result<Field, FieldError> {
    if e == 0 || e > MAX_DEGREE {
        return Err(FieldError::DegreeOutOfRange(e));
    }
    let desc = REGISTRY[e].get_or_init(|| {
        let modulus = first_irreducible(e);
        let low = Trits::from_coeffs(&modulus[..e]);
        FieldDescriptor {
            degree: e,
            order: BigUint::from(3u8).pow(e as u32),
            modulus,
            low,
        }
    });
    Ok(Field(desc))
}

fn first_irreducible(e: usize) -> Vec<u8> {
    if e == 1 {
        return vec![0, 1];
    }
    // A zero constant term means z divides the candidate, so start the scan at c_0 = 1.
    let mut tuple = vec![0u8; e];
    tuple[0] = 1;
    loop {
        let mut candidate = tuple.clone();
        candidate.push(1);
        if is_irreducible(&candidate) {
            return candidate;
        }
        // Odometer with the last coefficient varying fastest.
        let mut i = e - 1;
        loop {
            tuple[i] += 1;
            if tuple[i] < 3 {
                break;
            }
            tuple[i] = 0;
            i -= 1;
        }
    }
}

/// Rabin's test for a monic polynomial over F_3 (coefficients constant term first).
pub fn is_irreducible(poly: &[u8]) -> bool {
    let Some(e) = poly.iter().rposition(|&c| c % 3 != 0) else {
        return false;
    };
    if e == 0 || e > MAX_DEGREE {
        return false;
    }
    if e == 1 {
        return true;
    }
    // Work with the monic associate.
    let lead_inv = poly[e] % 3; // 1 and 2 are their own inverses mod 3
    let monic: Vec<u8> = poly[..=e].iter().map(|&c| (c % 3) * lead_inv % 3).collect();
    let low = Trits::from_coeffs(&monic[..e]);
    let z = reduce(Trits { pos: 2, neg: 0 }, e, low);

    // frob[i] = z^{3^i} mod f
    let mut frob = Vec::with_capacity(e + 1);
    let mut cur = z;
    frob.push(cur);
    for _ in 0..e {
        cur = mul_mod(mul_mod(cur, cur, e, low), cur, e, low);
        frob.push(cur);
    }
    if frob[e] != z {
        return false;
    }
    let f3 = build_field(1).expect("prime field");
    let f = Poly::from_residues(f3, &monic);
    for r in prime_factors(e as u64) {
        let h = frob[e / r as usize].add(z.neg());
        let coeffs: Vec<u8> = (0..e).map(|i| h.coeff(i)).collect();
        let h = Poly::from_residues(f3, &coeffs);
        if Poly::gcd(&f, &h).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Handle to the canonical field of a given degree. Cheap to copy.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldDescriptor);

impl Field {
    pub fn prime() -> Field {
        build_field(1).expect("degree 1 is always in range")
    }

    pub fn descriptor(&self) -> &'static FieldDescriptor {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &'static [u8] {
        &self.0.modulus
    }

    pub fn order(&self) -> &'static BigUint {
        &self.0.order
    }

    /// `3^degree`, which always fits in a `u128` for supported degrees.
    pub fn size(&self) -> u128 {
        3u128.pow(self.0.degree as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: *self, pos: 0, neg: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: *self, pos: 1, neg: 0 }
    }

    /// The residue class of `z`. In `F_3` (modulus `z`) this is zero.
    pub fn generator(&self) -> FieldElement {
        self.wrap_trits(reduce(Trits { pos: 2, neg: 0 }, self.degree(), self.0.low))
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElement {
        match value.rem_euclid(3) {
            0 => self.zero(),
            1 => self.one(),
            _ => -self.one(),
        }
    }

    /// Element with the given coefficients (constant term first); shorter input is zero-padded.
    pub fn element(&self, coeffs: &[u8]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.degree() {
            return Err(FieldError::TooManyCoefficients { expected: self.degree(), got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c > 2) {
            return Err(FieldError::InvalidCoefficient(c));
        }
        Ok(self.wrap_trits(Trits::from_coeffs(coeffs)))
    }

    /// Element whose base-3 digits (least significant first) are its coefficients.
    /// Indices wrap modulo the field size.
    pub fn from_index(&self, index: u128) -> FieldElement {
        let mut idx = index % self.size();
        let mut t = Trits::ZERO;
        let mut i = 0;
        while idx > 0 {
            match idx % 3 {
                1 => t.pos |= 1 << i,
                2 => t.neg |= 1 << i,
                _ => {}
            }
            idx /= 3;
            i += 1;
        }
        self.wrap_trits(t)
    }

    /// Uniformly random element, drawn coefficient by coefficient.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut t = Trits::ZERO;
        for i in 0..self.degree() {
            match rng.random_range(0..3u8) {
                1 => t.pos |= 1 << i,
                2 => t.neg |= 1 << i,
                _ => {}
            }
        }
        self.wrap_trits(t)
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let f = *self;
        (0..self.size()).map(move |i| f.from_index(i))
    }

    fn wrap_trits(&self, t: Trits) -> FieldElement {
        FieldElement { field: *self, pos: t.pos as u64, neg: t.neg as u64 }
    }

    /// Returns an element of multiplicative order exactly `m`, choosing the least one
    /// under the coefficient-tuple order.
    pub fn find_root_of_unity(&self, m: u64) -> Result<FieldElement, FieldError> {
        let group_order = self.size() - 1;
        if m == 0 || !group_order.is_multiple_of(m as u128) {
            return Err(FieldError::NoSuchRoot { order: m, degree: self.degree() });
        }
        if m == 1 {
            return Ok(self.one());
        }
        let cofactor = group_order / m as u128;
        let primes = prime_factors(m);
        let zeta = (1..self.size())
            .map(|i| self.from_index(i).pow(cofactor))
            .find(|h| primes.iter().all(|&r| !h.pow((m / r) as u128).is_one()))
            .expect("cyclic multiplicative group has elements of every dividing order");
        // All primitive m-th roots are zeta^j with gcd(j, m) = 1.
        let mut best = zeta;
        let mut power = zeta;
        for j in 2..m {
            power *= zeta;
            if gcd(j, m) == 1 && power < best {
                best = power;
            }
        }
        Ok(best)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.degree == other.0.degree
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.degree.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_3^{}", self.0.degree)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0.order)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    pos: u64,
    neg: u64,
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    fn trits(&self) -> Trits {
        Trits { pos: self.pos as u128, neg: self.neg as u128 }
    }

    /// Coefficients, constant term first, exactly `degree` entries in `{0, 1, 2}`.
    pub fn coeffs(&self) -> Vec<u8> {
        let t = self.trits();
        (0..self.field.degree()).map(|i| t.coeff(i)).collect()
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.trits().coeff(i)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.pos | self.neg == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.pos == 1 && self.neg == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch { left: self.field.degree(), right: other.field.degree() })
        }
    }

    pub fn try_add(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(&rhs)?;
        Ok(self.field.wrap_trits(self.trits().add(rhs.trits())))
    }

    pub fn try_sub(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(&rhs)?;
        Ok(self.field.wrap_trits(self.trits().add(rhs.trits().neg())))
    }

    pub fn try_mul(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(&rhs)?;
        let d = self.field.0;
        Ok(self.field.wrap_trits(mul_mod(self.trits(), rhs.trits(), d.degree, d.low)))
    }

    pub fn pow(self, mut exp: u128) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.field.size() - 2))
    }

    pub fn try_div(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(&rhs)?;
        Ok(self * rhs.inv()?)
    }

    /// `self^(3^i)`.
    pub fn frobenius(self, i: usize) -> FieldElement {
        let mut a = self;
        for _ in 0..i % self.field.degree() {
            a = a * a * a;
        }
        a
    }
}

impl Ord for FieldElement {
    /// Coefficient tuples compared lexicographically, constant term first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .degree()
            .cmp(&other.field.degree())
            .then_with(|| {
                let (a, b) = (self.trits(), other.trits());
                (0..self.field.degree())
                    .map(|i| a.coeff(i).cmp(&b.coeff(i)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident, $atr:ident, $amethod:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            #[inline]
            fn $method(self, rhs: FieldElement) -> FieldElement {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $atr for FieldElement {
            #[inline]
            fn $amethod(&mut self, rhs: FieldElement) {
                *self = $tr::$method(*self, rhs);
            }
        }
    };
}

binop!(Add, add, try_add, AddAssign, add_assign);
binop!(Sub, sub, try_sub, SubAssign, sub_assign);
binop!(Mul, mul, try_mul, MulAssign, mul_assign);

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field, pos: self.neg, neg: self.pos }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let coeffs = self.coeffs();
        let mut first = true;
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, c) => write!(f, "{c}z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Ring embedding `F_{3^a} -> F_{3^b}` for `a | b`, sending `z` to the least root
/// of the source modulus in the target field.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: Field,
    target: Field,
    powers: Vec<FieldElement>,
}

impl FieldEmbedding {
    pub fn new(source: Field, target: Field) -> Result<FieldEmbedding, FieldError> {
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(FieldError::NotASubfield { from: source.degree(), to: target.degree() });
        }
        let modulus = Poly::from_residues(target, source.modulus());
        let image = *modulus
            .roots()
            .first()
            .expect("an irreducible polynomial of degree a splits over F_{3^b} when a | b");
        let mut powers = Vec::with_capacity(source.degree());
        let mut p = target.one();
        for _ in 0..source.degree() {
            powers.push(p);
            p *= image;
        }
        Ok(FieldEmbedding { source, target, powers })
    }

    pub fn source(&self) -> Field {
        self.source
    }

    pub fn target(&self) -> Field {
        self.target
    }

    /// Image of the source generator `z`.
    pub fn image_of_generator(&self) -> FieldElement {
        if self.source.degree() == 1 {
            // z = 0 in F_3
            return self.target.zero();
        }
        self.powers[1]
    }

    pub fn apply(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.field != self.source {
            return Err(FieldError::FieldMismatch { left: a.field.degree(), right: self.source.degree() });
        }
        let t = a.trits();
        let mut acc = self.target.zero();
        for (i, &p) in self.powers.iter().enumerate() {
            match t.coeff(i) {
                1 => acc += p,
                2 => acc -= p,
                _ => {}
            }
        }
        Ok(acc)
    }
}

/// Embeds `a` into `target`; see [`FieldEmbedding`].
pub fn embed(a: FieldElement, target: Field) -> Result<FieldElement, FieldError> {
    FieldEmbedding::new(a.field(), target)?.apply(a)
}
