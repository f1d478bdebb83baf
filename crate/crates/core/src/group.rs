//! Finite abelian 2-groups presented as products of cyclic 2-groups.
//!
//! A group is a list of exponents [n_1, ..., n_r] meaning
//! C_{2^n_1} x ... x C_{2^n_r}; an element is its vector of residues. The
//! element/index bijection is mixed-radix with the last factor fastest
//! varying, and that convention fixes the coefficient layout of the algebra
//! module.

use std::fmt;
use thiserror::Error;

/// Hard cap on log2|G| so index tables stay addressable.
pub const MAX_LOG2_ORDER: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor exponents must be >= 1")]
    ZeroExponent,
    #[error("group order 2^{0} exceeds the supported 2^{MAX_LOG2_ORDER}")]
    TooLarge(u32),
    #[error("element does not belong to this group")]
    MixedGroups,
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("cannot parse group description {0:?}: expected x- or comma-separated cyclic orders, each a power of two, e.g. c8xc2")]
    Unparseable(String),
}

/// G = C_{2^n_1} x ... x C_{2^n_r}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    exponents: Vec<u32>,
}

/// An element of a [`GroupSpec`]: one reduced residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<u64>,
}

impl GroupSpec {
    pub fn new(exponents: Vec<u32>) -> Result<Self, GroupError> {
        if exponents.contains(&0) {
            return Err(GroupError::ZeroExponent);
        }
        let log2: u32 = exponents.iter().sum();
        if log2 > MAX_LOG2_ORDER {
            return Err(GroupError::TooLarge(log2));
        }
        Ok(GroupSpec { exponents })
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::new(vec![n])
    }

    /// Parses CLI descriptions like `c8`, `c8xc2`, `8x2`, or `c8,c2`.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let lowered = s.trim().to_ascii_lowercase();
        let mut exponents = Vec::new();
        for part in lowered.split(['x', ',']) {
            let digits = part.trim().trim_start_matches('c');
            let order: u64 = digits
                .parse()
                .map_err(|_| GroupError::Unparseable(s.to_string()))?;
            if !order.is_power_of_two() || order < 2 {
                return Err(GroupError::Unparseable(s.to_string()));
            }
            exponents.push(order.trailing_zeros());
        }
        if exponents.is_empty() {
            return Err(GroupError::Unparseable(s.to_string()));
        }
        Self::new(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn factor_order(&self, i: usize) -> u64 {
        1 << self.exponents[i]
    }

    pub fn order(&self) -> u64 {
        1 << self.exponents.iter().sum::<u32>()
    }

    /// Exponent of the group: the largest cyclic factor order (1 for the
    /// trivial group).
    pub fn exponent(&self) -> u64 {
        1 << self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exps: vec![0; self.rank()],
        }
    }

    /// The standard generator of the i-th cyclic factor.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut exps = vec![0; self.rank()];
        exps[i] = 1;
        GroupElement { exps }
    }

    /// Builds an element from arbitrary exponents, reducing each mod its
    /// factor order.
    pub fn element(&self, exps: &[u64]) -> Result<GroupElement, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::MixedGroups);
        }
        let reduced = exps
            .iter()
            .zip(&self.exponents)
            .map(|(&e, &n)| e & ((1 << n) - 1))
            .collect();
        Ok(GroupElement { exps: reduced })
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.exps.len() != self.rank() {
            return Err(GroupError::MixedGroups);
        }
        for (e, &n) in g.exps.iter().zip(&self.exponents) {
            if *e >> n != 0 {
                return Err(GroupError::MixedGroups);
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .zip(&self.exponents)
            .map(|((&x, &y), &n)| (x + y) & ((1 << n) - 1))
            .collect();
        Ok(GroupElement { exps })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        let exps = a
            .exps
            .iter()
            .zip(&self.exponents)
            .map(|(&x, &n)| ((1u64 << n) - x) & ((1 << n) - 1))
            .collect();
        Ok(GroupElement { exps })
    }

    pub fn pow(&self, a: &GroupElement, m: i64) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        let exps = a
            .exps
            .iter()
            .zip(&self.exponents)
            .map(|(&x, &n)| {
                let modulus = 1i128 << n;
                let v = (i128::from(x) * i128::from(m)).rem_euclid(modulus);
                v as u64
            })
            .collect();
        Ok(GroupElement { exps })
    }

    /// Order of an element: the least m >= 1 with g^m = 1, always a power of
    /// two. Per factor, a residue e mod 2^n has order 2^n / gcd(e, 2^n).
    pub fn order_of(&self, a: &GroupElement) -> Result<u64, GroupError> {
        self.check(a)?;
        let mut ord = 1u64;
        for (&e, &n) in a.exps.iter().zip(&self.exponents) {
            let factor_ord = if e == 0 {
                1
            } else {
                (1 << n) >> e.trailing_zeros().min(n)
            };
            ord = ord.max(factor_ord);
        }
        Ok(ord)
    }

    /// G[2^i]: the elements of order dividing 2^i, i.e. the kernel of the
    /// 2^i-power map. Returned in ascending index order.
    pub fn torsion_subgroup(&self, i: u32) -> Vec<GroupElement> {
        // component j keeps the multiples of 2^(n_j - min(i, n_j))
        let steps: Vec<u64> = self
            .exponents
            .iter()
            .map(|&n| 1u64 << (n - i.min(n)))
            .collect();
        self.stepped_elements(&steps)
    }

    /// G^{2^i}: the subgroup of 2^i-th powers. Returned in ascending index
    /// order.
    pub fn power_subgroup(&self, i: u32) -> Vec<GroupElement> {
        let steps: Vec<u64> = self.exponents.iter().map(|&n| 1u64 << i.min(n)).collect();
        self.stepped_elements(&steps)
    }

    /// All elements whose j-th residue is a multiple of steps[j].
    fn stepped_elements(&self, steps: &[u64]) -> Vec<GroupElement> {
        let mut out = Vec::new();
        let mut current = vec![0u64; self.rank()];
        loop {
            out.push(GroupElement {
                exps: current.clone(),
            });
            // mixed-radix increment, last factor fastest
            let mut j = self.rank();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                current[j] += steps[j];
                if current[j] < self.factor_order(j) {
                    break;
                }
                current[j] = 0;
            }
        }
    }

    /// All |G| elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i).expect("index in range"))
    }

    /// Mixed-radix index of an element; the last factor varies fastest.
    pub fn element_index(&self, g: &GroupElement) -> Result<u64, GroupError> {
        self.check(g)?;
        let mut idx = 0u64;
        for (e, &n) in g.exps.iter().zip(&self.exponents) {
            idx = (idx << n) | e;
        }
        Ok(idx)
    }

    pub fn element_at(&self, index: u64) -> Result<GroupElement, GroupError> {
        if index >= self.order() {
            return Err(GroupError::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        let mut exps = vec![0u64; self.rank()];
        let mut rest = index;
        for j in (0..self.rank()).rev() {
            let n = self.exponents[j];
            exps[j] = rest & ((1 << n) - 1);
            rest >>= n;
        }
        Ok(GroupElement { exps })
    }

    /// Closure of a generating set under multiplication, as a sorted element
    /// list. For abelian groups this is the generated subgroup.
    pub fn subgroup_closure(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
        let mut member = vec![false; self.order() as usize];
        member[0] = true;
        let mut frontier = vec![self.identity()];
        for g in gens {
            self.check(g)?;
        }
        while let Some(h) = frontier.pop() {
            for g in gens {
                let prod = self.mul(&h, g)?;
                let idx = self.element_index(&prod)? as usize;
                if !member[idx] {
                    member[idx] = true;
                    frontier.push(prod);
                }
            }
        }
        let mut out = Vec::new();
        for (idx, &m) in member.iter().enumerate() {
            if m {
                out.push(self.element_at(idx as u64)?);
            }
        }
        Ok(out)
    }

    /// The cyclic subgroup generated by one element, sorted by index.
    pub fn cyclic_subgroup(&self, g: &GroupElement) -> Result<Vec<GroupElement>, GroupError> {
        self.subgroup_closure(std::slice::from_ref(g))
    }

    /// Renders an element as a word in the generators a, b, c, ...
    pub fn format_element(&self, g: &GroupElement) -> String {
        let mut parts = Vec::new();
        for (j, &e) in g.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = (b'a' + j as u8) as char;
            if e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses a generator word like `a^3*b`, `a^3b`, `b`, or `1`.
    pub fn parse_element(&self, word: &str) -> Result<GroupElement, GroupError> {
        let compact: String = word
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if compact == "1" {
            return Ok(self.identity());
        }
        let mut exps = vec![0u64; self.rank()];
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if !c.is_ascii_lowercase() {
                return Err(GroupError::Unparseable(word.to_string()));
            }
            let j = (c as u8 - b'a') as usize;
            if j >= self.rank() {
                return Err(GroupError::Unparseable(word.to_string()));
            }
            pos += 1;
            let mut e: u64 = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                e = compact[start..pos]
                    .parse()
                    .map_err(|_| GroupError::Unparseable(word.to_string()))?;
            }
            exps[j] = (exps[j] + e) & ((1 << self.exponents[j]) - 1);
        }
        Ok(GroupElement { exps })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "c1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&n| format!("c{}", 1u64 << n))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// Intersection of two sorted element lists (e.g. G^2 with G[2]).
pub fn intersect_sorted(a: &[GroupElement], b: &[GroupElement]) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}
