//! Dense univariate polynomials over a [`Field`], enough for gcds and root finding.

use crate::field::{Field, FieldElement};

/// Coefficients are stored constant term first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Polynomial with prime-subfield coefficients given as residues mod 3.
    pub fn from_residues(field: Field, residues: &[u8]) -> Poly {
        Poly::new(field, residues.iter().map(|&c| field.from_int(c as i64)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    /// The monomial `X`.
    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| *self.coeffs.get(i).unwrap_or(&z) + *other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-self.field.one()))
    }

    pub fn scale(&self, s: FieldElement) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(self.field, out)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lead_inv;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        rem.truncate(dd);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => self.scale(lead.inv().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::constant(self.field.one()).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Distinct roots in the coefficient field, sorted by the coefficient-tuple order.
    pub fn roots(&self) -> Vec<FieldElement> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let f = self.monic();
        // X^Q mod f by repeated cubing, Q = 3^degree.
        let x = Poly::x(self.field);
        let mut h = x.rem(&f);
        for _ in 0..self.field.degree() {
            h = h.pow_mod(3, &f);
        }
        let split = Poly::gcd(&f, &h.sub(&x));
        let mut out = Vec::new();
        split_linear(&split, &mut out);
        out.sort();
        out
    }
}

/// Cantor–Zassenhaus equal-degree splitting of a product of distinct linear factors.
fn split_linear(g: &Poly, out: &mut Vec<FieldElement>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.coeffs();
            out.push(-c[0] * c[1].inv().expect("nonzero"));
            return;
        }
        _ => {}
    }
    let field = g.field;
    let exp = (field.size() - 1) / 2;
    let one = Poly::constant(field.one());
    for idx in 0..field.size() {
        let shifted = Poly::x(field).add(&Poly::constant(field.from_index(idx)));
        let w = shifted.pow_mod(exp, g).sub(&one);
        let d = Poly::gcd(g, &w);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (q, _) = g.div_rem(&d);
            split_linear(&d, out);
            split_linear(&q.monic(), out);
            return;
        }
    }
    unreachable!("distinct roots are always separated by some shift in odd characteristic");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn division_identity() {
        let f = build_field(2).unwrap();
        let a = Poly::new(f, vec![f.generator(), f.one(), f.from_int(2), f.one()]);
        let b = Poly::new(f, vec![f.one(), f.generator()]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn roots_match_brute_force() {
        let f27 = build_field(3).unwrap();
        // X^13 - 1 splits completely over F_27
        let mut c = vec![f27.zero(); 14];
        c[0] = -f27.one();
        c[13] = f27.one();
        let p = Poly::new(f27, c);
        let roots = p.roots();
        let brute: Vec<_> = f27.elements().filter(|&a| p.eval(a).is_zero()).collect();
        let mut brute = brute;
        brute.sort();
        assert_eq!(roots.len(), 13);
        assert_eq!(roots, brute);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let f3 = build_field(1).unwrap();
        let p = Poly::from_residues(f3, &[1, 0, 1]);
        assert!(p.roots().is_empty());
    }
}
