//! Finite abelian groups written additively as exponent tuples, their linear
//! characters, integral group rings, and the two ways of expanding an arc
//! matrix: under a single character and under the regular representation.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{is_prime, AlgebraError, CycNum, Matrix, RootOrder};
use crate::covers::ArcMatrix;
use crate::graph::Graph;

/// Group element: one residue per cyclic factor.
pub type Element = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor order {0} is smaller than 2")]
    InvalidOrder(u32),
    #[error("element {0:?} does not belong to the group {1}")]
    NotAnElement(Element, AbelianGroup),
    #[error("group mismatch: {0} vs {1}")]
    Mismatch(AbelianGroup, AbelianGroup),
    #[error("characters of {0} are only supported for groups of prime exponent")]
    UnsupportedCharacters(AbelianGroup),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Z/d_1 x ... x Z/d_k`. The empty product is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GroupError> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(GroupError::InvalidOrder(d));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(r: u32) -> Result<Self, GroupError> {
        Self::new(vec![r])
    }

    /// `(Z/p)^s`.
    pub fn elementary(p: u32, s: usize) -> Result<Self, GroupError> {
        Self::new(vec![p; s])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&d| d as usize).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// The common prime `p` when every factor is `Z/p`.
    pub fn prime_exponent(&self) -> Option<u32> {
        let p = *self.orders.first()?;
        (is_prime(p as u64) && self.orders.iter().all(|&d| d == p)).then_some(p)
    }

    pub fn identity(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn is_identity(&self, g: &[u32]) -> bool {
        g.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.orders.len() && g.iter().zip(&self.orders).all(|(x, d)| x < d)
    }

    pub fn check(&self, g: &[u32]) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::NotAnElement(g.to_vec(), self.clone()))
        }
    }

    pub fn add(&self, g: &[u32], h: &[u32]) -> Element {
        g.iter()
            .zip(h)
            .zip(&self.orders)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, g: &[u32]) -> Element {
        g.iter().zip(&self.orders).map(|(x, d)| (d - x) % d).collect()
    }

    pub fn sub(&self, g: &[u32], h: &[u32]) -> Element {
        self.add(g, &self.neg(h))
    }

    /// `k·g`.
    pub fn scale(&self, k: i64, g: &[u32]) -> Element {
        g.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (k.rem_euclid(d as i64) as u64 * x as u64 % d as u64) as u32)
            .collect()
    }

    /// Position of `g` in lexicographic order (first factor most significant).
    pub fn index_of(&self, g: &[u32]) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> Element {
        let mut g = vec![0; self.orders.len()];
        for (slot, &d) in g.iter_mut().zip(&self.orders).rev() {
            *slot = (index % d as usize) as u32;
            index /= d as usize;
        }
        g
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    fn same(&self, other: &AbelianGroup) -> Result<(), GroupError> {
        if self == other {
            Ok(())
        } else {
            Err(GroupError::Mismatch(self.clone(), other.clone()))
        }
    }
}

/// Linear character `χ(g) = Π ζ_{d_i}^{k_i g_i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    group: AbelianGroup,
    exponents: Vec<u32>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{:?}", self.exponents)
    }
}

impl Character {
    pub fn new(group: &AbelianGroup, exponents: Vec<u32>) -> Result<Self, GroupError> {
        group.check(&exponents)?;
        Ok(Character { group: group.clone(), exponents })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_identity(&self.exponents)
    }

    /// The complex conjugate character.
    pub fn conjugate(&self) -> Character {
        Character { group: self.group.clone(), exponents: self.group.neg(&self.exponents) }
    }

    /// Root order of the cyclotomic field holding the values. The trivial
    /// group is assigned the rational field `Q(ζ_2)`.
    pub fn value_order(&self) -> Result<RootOrder, GroupError> {
        if self.group.is_trivial() {
            return Ok(RootOrder::new(2)?);
        }
        let p = self
            .group
            .prime_exponent()
            .ok_or_else(|| GroupError::UnsupportedCharacters(self.group.clone()))?;
        Ok(RootOrder::new(p)?)
    }

    /// Exponent `k` with `χ(g) = ζ_p^k`.
    pub fn exponent_at(&self, g: &[u32]) -> Result<u32, GroupError> {
        self.group.check(g)?;
        let p = self.value_order()?.get() as u64;
        let k = self
            .exponents
            .iter()
            .zip(g)
            .map(|(&a, &x)| a as u64 * x as u64)
            .sum::<u64>()
            % p;
        Ok(k as u32)
    }

    pub fn value(&self, g: &[u32]) -> Result<CycNum, GroupError> {
        let order = self.value_order()?;
        Ok(CycNum::root_power(order, self.exponent_at(g)? as i64))
    }
}

/// All characters of `group`, indexed like the group elements, so the first
/// one is trivial.
pub fn characters_of(group: &AbelianGroup) -> Vec<Character> {
    group
        .elements()
        .into_iter()
        .map(|exponents| Character { group: group.clone(), exponents })
        .collect()
}

/// Element of the integral group ring `Z[G]`, one coefficient per group
/// element in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: AbelianGroup,
    counts: Vec<i64>,
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| format!("{c}*{:?}", self.group.element(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupRingElement {
    pub fn zero(group: &AbelianGroup) -> Self {
        GroupRingElement { group: group.clone(), counts: vec![0; group.order()] }
    }

    pub fn from_element(group: &AbelianGroup, g: &[u32]) -> Result<Self, GroupError> {
        group.check(g)?;
        let mut x = Self::zero(group);
        x.counts[group.index_of(g)] = 1;
        Ok(x)
    }

    /// The sum of all group elements.
    pub fn group_sum(group: &AbelianGroup) -> Self {
        GroupRingElement { group: group.clone(), counts: vec![1; group.order()] }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn coefficient(&self, g: &[u32]) -> i64 {
        self.counts[self.group.index_of(g)]
    }

    pub fn add_element(&mut self, g: &[u32], k: i64) {
        let i = self.group.index_of(g);
        self.counts[i] += k;
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            counts: self.counts.iter().map(|c| c * k).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GroupError> {
        self.group.same(&other.group)?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
        })
    }
}

/// Convolution product in `Z[G]`.
pub fn gring_mul(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement, GroupError> {
    x.group.same(&y.group)?;
    let g = &x.group;
    let mut out = GroupRingElement::zero(g);
    for (i, &a) in x.counts.iter().enumerate().filter(|(_, &a)| a != 0) {
        let gi = g.element(i);
        for (j, &b) in y.counts.iter().enumerate().filter(|(_, &b)| b != 0) {
            let k = g.index_of(&g.add(&gi, &g.element(j)));
            out.counts[k] += a * b;
        }
    }
    Ok(out)
}

/// Replaces every off-diagonal entry `f(u,v)` by `χ(f(u,v))` and the diagonal
/// by zero.
pub fn char_apply(f: &ArcMatrix, chi: &Character) -> Result<Matrix<CycNum>, GroupError> {
    f.group().same(chi.group())?;
    let order = chi.value_order()?;
    let n = f.n();
    let exps: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|v| if u == v { Ok(0) } else { chi.exponent_at(f.entry(u, v)) })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let zero = CycNum::zero(order);
    Ok(Matrix::from_fn(n, n, |u, v| {
        if u == v {
            zero.clone()
        } else {
            CycNum::root_power(order, exps[u][v] as i64)
        }
    }))
}

/// The cover graph: vertex `(u, g)` has index `u·r + index(g)` and is adjacent
/// to `(v, h)` iff `u ≠ v` and `h − g = f(u, v)`.
pub fn regular_expand(f: &ArcMatrix) -> Graph {
    let g = f.group();
    let r = g.order();
    let n = f.n();
    let elements = g.elements();
    let mut edges = Vec::with_capacity(n * (n - 1) * r / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            let shift = f.entry(u, v);
            for (gi, x) in elements.iter().enumerate() {
                let h = g.index_of(&g.add(x, shift));
                edges.push((u * r + gi, v * r + h));
            }
        }
    }
    Graph::from_edges(n * r, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat_poly_check, rat, Conjugate};

    fn z3() -> AbelianGroup {
        AbelianGroup::cyclic(3).unwrap()
    }

    #[test]
    fn cyclic_characters() {
        let g = z3();
        let chars = characters_of(&g);
        assert_eq!(chars.len(), 3);
        let order = RootOrder::new(3).unwrap();
        for (k, chi) in chars.iter().enumerate() {
            assert_eq!(chi.value(&[1]).unwrap(), CycNum::root_power(order, k as i64));
        }
        assert!(chars[0].is_trivial());
    }

    #[test]
    fn klein_characters_are_real() {
        let g = AbelianGroup::elementary(2, 2).unwrap();
        let chars = characters_of(&g);
        assert_eq!(chars.len(), 4);
        for chi in &chars {
            for x in g.elements() {
                assert!(chi.value(&x).unwrap().is_rational());
            }
        }
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        for g in [z3(), AbelianGroup::elementary(2, 3).unwrap(), AbelianGroup::elementary(5, 2).unwrap()] {
            let chars = characters_of(&g);
            let elements = g.elements();
            for chi in &chars {
                assert_eq!(chi.value(&g.identity()).unwrap(), CycNum::one(chi.value_order().unwrap()));
                for x in &elements {
                    for y in &elements {
                        let lhs = chi.value(&g.add(x, y)).unwrap();
                        let rhs = chi.value(x).unwrap() * chi.value(y).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            for (i, chi) in chars.iter().enumerate() {
                for (j, psi) in chars.iter().enumerate() {
                    let order = chi.value_order().unwrap();
                    let sum = elements.iter().fold(CycNum::zero(order), |acc, x| {
                        acc + chi.value(x).unwrap() * psi.value(x).unwrap().conj()
                    });
                    let expected = if i == j { g.order() as i64 } else { 0 };
                    assert_eq!(sum, CycNum::from_rational(order, rat(expected)));
                }
            }
        }
    }

    #[test]
    fn group_ring_products() {
        let g = AbelianGroup::cyclic(2).unwrap();
        let e = GroupRingElement::from_element(&g, &[0]).unwrap();
        let x = GroupRingElement::from_element(&g, &[1]).unwrap();
        assert_eq!(gring_mul(&e, &x).unwrap(), x);
        let s = e.try_add(&x).unwrap();
        assert_eq!(gring_mul(&s, &s).unwrap(), s.scale(2));
        let g5 = AbelianGroup::cyclic(5).unwrap();
        let all = GroupRingElement::group_sum(&g5);
        let y = GroupRingElement::from_element(&g5, &[3]).unwrap();
        assert_eq!(gring_mul(&all, &y).unwrap(), all);
        assert!(gring_mul(&all, &x).is_err());
    }

    #[test]
    fn trivial_character_gives_complete_graph() {
        let g = z3();
        let f = ArcMatrix::from_fn(4, &g, |u, v| vec![((2 * u + v) % 3) as u32]);
        let f = crate::covers::normalize(&f);
        let a = char_apply(&f, &characters_of(&g)[0]).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                let expected = if u == v { 0 } else { 1 };
                assert_eq!(a.get(u, v).as_rational(), Some(&rat(expected)));
            }
        }
        // A(K_4) satisfies x^2 - 2x - 3.
        assert!(mat_poly_check(&a, &[rat(-3), rat(-2), rat(1)]).unwrap());
    }

    #[test]
    fn identity_arc_function_expands_to_disjoint_copies() {
        let g = z3();
        let f = ArcMatrix::from_fn(4, &g, |_, _| vec![0]);
        let x = regular_expand(&f);
        assert_eq!(x.vertex_count(), 12);
        assert_eq!(x.components(), 3);
        assert!((0..12).all(|v| x.degree(v) == 3));
    }
}
