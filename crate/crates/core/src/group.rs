//! The metacyclic group `T_{3m} = <x, y | x^m = y^3 = 1, y^-1 x y = x^t>`.
//!
//! Elements are kept in the normal form `x^i y^j` and encoded as `idx = i + m*j`,
//! the same index the group-ring layer uses for its coefficient vectors. Moving `y`
//! past `x` uses `y x = x^{t^2} y`, so
//! `(x^a y^b)(x^c y^d) = x^{a + c t^{2b}} y^{b+d}`.
//!
//! `t` and `t^2` present the same group; parameters are kept exactly as given.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::arith::{gcd, pow_mod};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("m must be 3k+1 (got m = {m})")]
    NotThreeKPlusOne { m: u64 },
    #[error("t must satisfy 1 < t < m (got t = {t}, m = {m})")]
    TOutOfRange { m: u64, t: u64 },
    #[error("t must have multiplicative order 3 mod m: t^3 = 1 and t != 1 (got t = {t}, m = {m})")]
    TNotOrderThree { m: u64, t: u64 },
    #[error("gcd(m, t-1) must be 1 (got gcd({m}, {}) = {gcd})", t - 1)]
    GcdViolation { m: u64, t: u64, gcd: u64 },
}

/// Validated parameters `(m, t)` with `k = (m-1)/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    m: u64,
    t: u64,
    k: u64,
    /// `t^{2b} mod m` for `b = 0, 1, 2`.
    twist: [u64; 3],
}

impl GroupParams {
    pub fn new(m: u64, t: u64) -> Result<GroupParams, GroupError> {
        validate_params(m, t)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `|G| = 3m`.
    pub fn order(&self) -> usize {
        3 * self.m as usize
    }

    pub fn element(&self, i: u64, j: u64) -> GroupElement {
        GroupElement { i: i % self.m, j: j % 3 }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { i: 0, j: 0 }
    }

    pub fn x(&self) -> GroupElement {
        self.element(1, 0)
    }

    pub fn y(&self) -> GroupElement {
        self.element(0, 1)
    }

    pub fn idx(&self, g: GroupElement) -> usize {
        (g.i + self.m * g.j) as usize
    }

    pub fn from_idx(&self, idx: usize) -> GroupElement {
        let idx = idx as u64;
        GroupElement { i: idx % self.m, j: idx / self.m }
    }

    /// All elements in `idx` order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.from_idx(i))
    }

    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let twisted = (h.i as u128 * self.twist[g.j as usize] as u128 % self.m as u128) as u64;
        GroupElement { i: (g.i + twisted) % self.m, j: (g.j + h.j) % 3 }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        // (x^i y^j)^{-1} = y^{-j} x^{-i} = x^{-i t^{2(3-j)}} y^{3-j}
        let j = (3 - g.j) % 3;
        let i = (self.m - g.i) % self.m;
        let i = (i as u128 * self.twist[j as usize] as u128 % self.m as u128) as u64;
        GroupElement { i, j }
    }

    pub fn pow(&self, g: GroupElement, mut e: u64) -> GroupElement {
        let mut base = g;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            e >>= 1;
        }
        acc
    }

    /// `h^{-1} g h`.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.multiply(self.multiply(self.inverse(h), g), h)
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        let mut d = 1;
        let mut p = g;
        while !p.is_identity() {
            p = self.multiply(p, g);
            d += 1;
        }
        d
    }

    /// Conjugacy classes by orbit closure under conjugation by `x` and `y`, sorted by
    /// least member index.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut seen = vec![false; n];
        let gens = [self.x(), self.y()];
        let mut classes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(cur) = stack.pop() {
                members.insert(cur);
                let g = self.from_idx(cur);
                for &h in &gens {
                    let c = self.idx(self.conjugate(g, h));
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: self.from_idx(start),
                members: members.into_iter().map(|i| self.from_idx(i)).collect(),
            });
        }
        classes
    }

    /// `S_3 = {1} ∪ <x>y ∪ <x>y^{-1}`: the identity and every element of order 3.
    pub fn three_element_set(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for j in 1..3 {
            out.extend((0..self.m).map(|i| self.element(i, j)));
        }
        out
    }

    pub fn in_three_element_set(&self, g: GroupElement) -> bool {
        g.j != 0 || g.i == 0
    }
}

/// Checks the hypotheses `m = 3k+1`, `t^3 = 1 != t (mod m)`, `gcd(m, t-1) = 1`.
pub fn validate_params(m: u64, t: u64) -> Result<GroupParams, GroupError> {
    if m % 3 != 1 {
        return Err(GroupError::NotThreeKPlusOne { m });
    }
    if t <= 1 || t >= m {
        if m > 2 && (t == 1 || (t > 0 && t % m == 1)) {
            return Err(GroupError::TNotOrderThree { m, t });
        }
        return Err(GroupError::TOutOfRange { m, t });
    }
    if pow_mod(t, 3, m) != 1 {
        return Err(GroupError::TNotOrderThree { m, t });
    }
    let g = gcd(m, t - 1);
    if g != 1 {
        return Err(GroupError::GcdViolation { m, t, gcd: g });
    }
    let t2 = t * t % m;
    Ok(GroupParams { m, t, k: (m - 1) / 3, twist: [1, t2, t2 * t2 % m] })
}

/// Normal form `x^i y^j` with `0 <= i < m`, `0 <= j < 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub i: u64,
    pub j: u64,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (i, 0) => write!(f, "x^{i}"),
            (0, j) => write!(f, "y^{j}"),
            (i, j) => write!(f, "x^{i}y^{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    /// Sorted by index.
    pub members: Vec<GroupElement>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Exponents of `x` when the class lies in `<x>`.
    pub fn x_exponents(&self) -> Option<Vec<u64>> {
        self.members.iter().map(|g| (g.j == 0).then_some(g.i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Permutation representation on Z_m x Z_3 built from x: (a, b) -> ... acting on the
    /// right; used as an oracle for the normal-form product.
    fn perm_of(p: &GroupParams, g: GroupElement) -> Vec<usize> {
        // right regular action computed purely from the relations: apply generators one at a time
        let m = p.m();
        let t2 = p.t() * p.t() % m;
        let act_x = |(a, b): (u64, u64)| -> (u64, u64) {
            // (x^a y^b) x = x^{a + t^{2b}} y^b
            let mut tw = 1;
            for _ in 0..b {
                tw = tw * t2 % m;
            }
            ((a + tw) % m, b)
        };
        let act_y = |(a, b): (u64, u64)| (a, (b + 1) % 3);
        (0..p.order())
            .map(|idx| {
                let mut s = ((idx as u64) % m, (idx as u64) / m);
                for _ in 0..g.i {
                    s = act_x(s);
                }
                for _ in 0..g.j {
                    s = act_y(s);
                }
                (s.0 + m * s.1) as usize
            })
            .collect()
    }

    #[test]
    fn validation() {
        let p = validate_params(13, 3).unwrap();
        assert_eq!(p.k(), 4);
        assert_eq!(validate_params(7, 2).unwrap().k(), 2);
        assert_eq!(validate_params(9, 4), Err(GroupError::NotThreeKPlusOne { m: 9 }));
        assert_eq!(validate_params(7, 1), Err(GroupError::TNotOrderThree { m: 7, t: 1 }));
        assert_eq!(validate_params(7, 3), Err(GroupError::TNotOrderThree { m: 7, t: 3 }));
        assert_eq!(validate_params(7, 9), Err(GroupError::TOutOfRange { m: 7, t: 9 }));
        assert_eq!(validate_params(91, 22), Err(GroupError::GcdViolation { m: 91, t: 22, gcd: 7 }));
        assert!(validate_params(4, 3).is_err());
        assert!(validate_params(13, 9).is_ok());
        assert!(validate_params(19, 7).is_ok());
        assert!(validate_params(31, 5).is_ok());
    }

    #[test]
    fn error_messages_name_hypothesis() {
        assert_eq!(validate_params(9, 4).unwrap_err().to_string(), "m must be 3k+1 (got m = 9)");
    }

    #[test]
    fn products() {
        let p = validate_params(7, 2).unwrap();
        assert_eq!(p.multiply(p.y(), p.x()), p.element(4, 1));
        assert!(p.multiply(p.x(), p.element(6, 0)).is_identity());
        let q = validate_params(13, 3).unwrap();
        assert_eq!(q.multiply(q.element(2, 1), q.element(1, 2)), q.element(11, 0));
    }

    #[test]
    fn product_matches_permutation_oracle() {
        for (m, t) in [(7, 2), (13, 3), (13, 9), (19, 7)] {
            let p = validate_params(m, t).unwrap();
            for g in p.elements() {
                for h in p.elements().step_by(5) {
                    let gh = p.multiply(g, h);
                    let (pg, ph, pgh) = (perm_of(&p, g), perm_of(&p, h), perm_of(&p, gh));
                    // right action: s.(gh) = (s.g).h
                    for s in 0..p.order() {
                        assert_eq!(pgh[s], ph[pg[s]]);
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_orders() {
        let p = validate_params(7, 2).unwrap();
        assert_eq!(p.inverse(p.x()), p.element(6, 0));
        assert_eq!(p.inverse(p.y()), p.element(0, 2));
        let g = p.element(3, 1);
        assert!(p.multiply(g, p.inverse(g)).is_identity());
        assert!(p.multiply(p.inverse(g), g).is_identity());
        assert_eq!(p.element_order(p.y()), 3);
        assert_eq!(p.element_order(p.x()), 7);
        let q = validate_params(13, 3).unwrap();
        assert_eq!(q.element_order(q.element(5, 1)), 3);
        for g in q.elements() {
            let o = q.element_order(g);
            if g.j != 0 {
                assert_eq!(o, 3);
            } else {
                assert_eq!(13 % o, 0);
            }
        }
    }

    fn x_classes(p: &GroupParams) -> Vec<Vec<u64>> {
        p.conjugacy_classes()
            .iter()
            .filter(|c| c.len() == 3)
            .map(|c| c.x_exponents().unwrap())
            .collect()
    }

    #[test]
    fn classes_13_3() {
        let p = validate_params(13, 3).unwrap();
        let classes = p.conjugacy_classes();
        assert_eq!(classes.len(), 4 + 3);
        assert_eq!(
            x_classes(&p),
            vec![vec![1, 3, 9], vec![2, 5, 6], vec![4, 10, 12], vec![7, 8, 11]]
        );
        assert_eq!(classes[0].members, vec![p.identity()]);
        assert_eq!(classes[5].len(), 13);
        assert!(classes[5].members.iter().all(|g| g.j == 1));
        assert!(classes[6].members.iter().all(|g| g.j == 2));
    }

    #[test]
    fn classes_7_2() {
        let p = validate_params(7, 2).unwrap();
        assert_eq!(x_classes(&p), vec![vec![1, 2, 4], vec![3, 5, 6]]);
    }

    #[test]
    fn class_shape_and_closure() {
        for (m, t) in [(7, 2), (13, 3), (13, 9), (19, 7), (31, 5), (37, 10), (43, 6)] {
            let p = validate_params(m, t).unwrap();
            let classes = p.conjugacy_classes();
            assert_eq!(classes.len() as u64, p.k() + 3);
            let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
            assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 1);
            assert_eq!(sizes.iter().filter(|&&s| s == 3).count() as u64, p.k());
            assert_eq!(sizes.iter().filter(|&&s| s == m as usize).count(), 2);
            assert_eq!(sizes.iter().sum::<usize>(), p.order());
            for c in &classes {
                for &g in &c.members {
                    for h in [p.x(), p.y()] {
                        assert!(c.members.contains(&p.conjugate(g, h)));
                    }
                }
            }
            // ordered by least member index
            let firsts: Vec<usize> = classes.iter().map(|c| p.idx(c.members[0])).collect();
            assert!(firsts.windows(2).all(|w| w[0] < w[1]));
            // conjugation identities by x
            let t = p.t();
            for i in 0..m {
                let a = p.conjugate(p.element(i, 1), p.x());
                assert_eq!(a, p.element(i + t * t % m + m - 1, 1));
                let b = p.conjugate(p.element(i, 2), p.x());
                assert_eq!(b, p.element(i + t + m - 1, 2));
            }
        }
    }

    #[test]
    fn three_element_set() {
        let p = validate_params(7, 2).unwrap();
        let s = p.three_element_set();
        assert_eq!(s.len(), 15);
        for &g in &s {
            if !g.is_identity() {
                assert_eq!(p.element_order(g), 3);
            }
            assert!(g.j != 0 || g.i == 0);
        }
        // S_3 is exactly the set of 3-elements
        for g in p.elements() {
            let is_3 = matches!(p.element_order(g), 1 | 3);
            assert_eq!(is_3, s.contains(&g));
            assert_eq!(is_3, p.in_three_element_set(g));
        }
    }

    proptest! {
        #[test]
        fn associativity(a in 0u64..39, b in 0u64..39, c in 0u64..39) {
            let p = validate_params(13, 3).unwrap();
            let (a, b, c) = (p.from_idx(a as usize), p.from_idx(b as usize), p.from_idx(c as usize));
            prop_assert_eq!(p.multiply(p.multiply(a, b), c), p.multiply(a, p.multiply(b, c)));
            prop_assert_eq!(p.multiply(a, p.identity()), a);
            prop_assert!(p.multiply(a, p.inverse(a)).is_identity());
        }

        #[test]
        fn idx_is_bijective(i in 0u64..19, j in 0u64..3) {
            let p = validate_params(19, 7).unwrap();
            let g = p.element(i, j);
            prop_assert_eq!(p.from_idx(p.idx(g)), g);
            prop_assert!(p.idx(g) < p.order());
        }
    }
}
