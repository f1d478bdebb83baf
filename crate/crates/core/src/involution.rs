//! Automorphisms of order <= 2 of a finite abelian 2-group, given by their
//! generator images. Each one extends linearly to an involution of the group
//! algebra FG.

use std::fmt;
use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("expected one image per generator ({expected}), got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("generator images do not define a homomorphism: image order does not divide the generator order")]
    NotAHomomorphism,
    #[error("generator images do not define a bijection on the group")]
    NotBijective,
    #[error("the map has order greater than two")]
    NotInvolutive,
    #[error("candidate image tuples ({0}) exceed the enumeration cap")]
    EnumerationTooLarge(u128),
    #[error("unknown involution name {name:?} for group {group}")]
    UnknownName { name: String, group: String },
    #[error("automorphism-group structure is only provided for cyclic groups C_2^n with n > 2")]
    OutOfScope,
}

/// An order-<=2 automorphism of G, stored as one image per standard
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvolutionSpec {
    images: Vec<GroupElement>,
}

impl InvolutionSpec {
    /// Validates that the images define an automorphism squaring to the
    /// identity.
    pub fn new(spec: &GroupSpec, images: Vec<GroupElement>) -> Result<Self, InvolutionError> {
        if images.len() != spec.rank() {
            return Err(InvolutionError::WrongImageCount {
                expected: spec.rank(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if spec.order_of(img)? > spec.factor_order(i) {
                return Err(InvolutionError::NotAHomomorphism);
            }
        }
        let candidate = InvolutionSpec { images };
        // order <= 2 on the generators extends to all of G by linearity
        for i in 0..spec.rank() {
            let once = candidate.apply(spec, &spec.generator(i))?;
            if candidate.apply(spec, &once)? != spec.generator(i) {
                return Err(InvolutionError::NotInvolutive);
            }
        }
        let mut seen = vec![false; spec.order() as usize];
        for g in spec.elements() {
            let idx = spec.element_index(&candidate.apply(spec, &g)?)? as usize;
            if seen[idx] {
                return Err(InvolutionError::NotBijective);
            }
            seen[idx] = true;
        }
        Ok(candidate)
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        InvolutionSpec {
            images: (0..spec.rank()).map(|i| spec.generator(i)).collect(),
        }
    }

    /// The canonical involution g -> g^-1.
    pub fn canonical(spec: &GroupSpec) -> Self {
        InvolutionSpec {
            images: (0..spec.rank())
                .map(|i| spec.inv(&spec.generator(i)).expect("own generator"))
                .collect(),
        }
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// The multiplicative extension of the generator images.
    pub fn apply(
        &self,
        spec: &GroupSpec,
        g: &GroupElement,
    ) -> Result<GroupElement, InvolutionError> {
        if self.images.len() != spec.rank() {
            return Err(InvolutionError::WrongImageCount {
                expected: spec.rank(),
                got: self.images.len(),
            });
        }
        let mut acc = spec.identity();
        for (img, &e) in self.images.iter().zip(g.exps()) {
            acc = spec.mul(&acc, &spec.pow(img, e as i64)?)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, spec: &GroupSpec) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| *img == spec.generator(i))
    }

    /// Renders as an image list, e.g. `a->a^3*b,b->b`.
    pub fn describe(&self, spec: &GroupSpec) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let name = (b'a' + i as u8) as char;
                format!("{name}->{}", spec.format_element(img))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .images
            .iter()
            .map(|g| format!("{:?}", g.exps()))
            .collect();
        write!(f, "[{}]", words.join(", "))
    }
}

/// All automorphisms of G with sigma^2 = id, identity included, in
/// lexicographic order of their image index vectors. Brute force over
/// candidate generator-image tuples.
pub fn enumerate_involutive_automorphisms(
    spec: &GroupSpec,
) -> Result<Vec<InvolutionSpec>, InvolutionError> {
    // candidates for generator i: elements of order dividing the factor order
    let candidates: Vec<Vec<GroupElement>> = (0..spec.rank())
        .map(|i| spec.torsion_subgroup(spec.exponents()[i]))
        .collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > 1 << 24 {
        return Err(InvolutionError::EnumerationTooLarge(total));
    }

    let mut found = Vec::new();
    let mut cursor = vec![0usize; spec.rank()];
    loop {
        let images: Vec<GroupElement> = cursor
            .iter()
            .enumerate()
            .map(|(i, &c)| candidates[i][c].clone())
            .collect();
        if let Ok(sigma) = InvolutionSpec::new(spec, images) {
            found.push(sigma);
        }
        // lexicographic increment over candidate positions
        let mut j = spec.rank();
        let mut done = false;
        loop {
            if j == 0 {
                done = true;
                break;
            }
            j -= 1;
            cursor[j] += 1;
            if cursor[j] < candidates[j].len() {
                break;
            }
            cursor[j] = 0;
        }
        if done {
            break;
        }
    }
    // candidate lists are in ascending index order, so `found` is already
    // lexicographic on image index vectors
    Ok(found)
}

/// G_sigma = {g in G | sigma(g) = g}, the fixed-point subgroup.
pub fn symmetric_group_elements(
    spec: &GroupSpec,
    sigma: &InvolutionSpec,
) -> Result<Vec<GroupElement>, InvolutionError> {
    let mut out = Vec::new();
    for g in spec.elements() {
        if sigma.apply(spec, &g)? == g {
            out.push(g);
        }
    }
    Ok(out)
}

/// Order and cyclic structure of Aut(C_2^n) for n > 2: order 2^(n-1) with
/// invariants (2^(n-2), 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicAutGroup {
    pub order: u64,
    pub invariants: (u64, u64),
}

pub fn cyclic_aut_group(spec: &GroupSpec) -> Result<CyclicAutGroup, InvolutionError> {
    if spec.rank() != 1 || spec.exponents()[0] <= 2 {
        return Err(InvolutionError::OutOfScope);
    }
    let n = spec.exponents()[0];
    Ok(CyclicAutGroup {
        order: 1 << (n - 1),
        invariants: (1 << (n - 2), 2),
    })
}

/// Brute-force |Aut(C_2^n)|: residues coprime to 2^n.
pub fn cyclic_aut_order_brute_force(n: u32) -> u64 {
    let modulus = 1u64 << n;
    (1..modulus).filter(|i| i % 2 == 1).count() as u64
}

/// Named involutions. For cyclic C_2^n: sigma1 = id, sigma2: a -> a^-1,
/// sigma3: a -> a^(2^(n-1)-1), sigma4: a -> a^(2^(n-1)+1) (the last two need
/// n > 2). For c8xc2 the six-entry table below; `canonical` and `id` work for
/// every group.
pub fn named_involution(spec: &GroupSpec, name: &str) -> Result<InvolutionSpec, InvolutionError> {
    let unknown = || InvolutionError::UnknownName {
        name: name.to_string(),
        group: spec.to_string(),
    };
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "id" | "identity" | "sigma1" => return Ok(InvolutionSpec::identity(spec)),
        "canonical" | "star" => return Ok(InvolutionSpec::canonical(spec)),
        _ => {}
    }
    if spec.rank() == 1 {
        let n = spec.exponents()[0];
        let image_exp: u64 = match lower.as_str() {
            "sigma2" => (1 << n) - 1,
            "sigma3" if n > 2 => (1 << (n - 1)) - 1,
            "sigma4" if n > 2 => (1 << (n - 1)) + 1,
            _ => return Err(unknown()),
        };
        let images = vec![spec.element(&[image_exp])?];
        return InvolutionSpec::new(spec, images);
    }
    if spec.exponents() == [3, 1] {
        // b must land on an order-2 element outside <sigma(a)>, so the only
        // nontrivial choice for its image is a^4*b.
        let table: &[(&str, [u64; 2], [u64; 2])] = &[
            ("sigma2", [3, 1], [0, 1]),
            ("sigma3", [1, 1], [0, 1]),
            ("sigma4", [1, 0], [4, 1]),
            ("sigma5", [3, 0], [4, 1]),
            ("sigma6", [3, 0], [0, 1]),
        ];
        for (key, a_img, b_img) in table {
            if lower == *key {
                let images = vec![spec.element(a_img)?, spec.element(b_img)?];
                return InvolutionSpec::new(spec, images);
            }
        }
    }
    Err(unknown())
}

/// Parses an explicit image list like `a->a^3,b->b`, or a named selector.
pub fn parse_involution(spec: &GroupSpec, text: &str) -> Result<InvolutionSpec, InvolutionError> {
    if !text.contains("->") {
        return named_involution(spec, text);
    }
    let mut images: Vec<Option<GroupElement>> = vec![None; spec.rank()];
    for entry in text.split(',') {
        let (gen, word) = entry
            .split_once("->")
            .ok_or_else(|| GroupError::Unparseable(text.to_string()))?;
        let gen = gen.trim();
        if gen.len() != 1 {
            return Err(GroupError::Unparseable(text.to_string()).into());
        }
        let j = (gen.as_bytes()[0].wrapping_sub(b'a')) as usize;
        if j >= spec.rank() {
            return Err(GroupError::Unparseable(text.to_string()).into());
        }
        images[j] = Some(spec.parse_element(word)?);
    }
    let images: Vec<GroupElement> = images
        .into_iter()
        .enumerate()
        .map(|(j, img)| img.unwrap_or_else(|| spec.generator(j)))
        .collect();
    InvolutionSpec::new(spec, images)
}

/// A stable display label: the named-table entry when the involution matches
/// one, `canonical` when it is the inversion map, else the image list.
pub fn involution_label(spec: &GroupSpec, sigma: &InvolutionSpec) -> String {
    let named: &[&str] = if spec.rank() == 1 {
        &["sigma1", "sigma2", "sigma3", "sigma4"]
    } else if spec.exponents() == [3, 1] {
        &["sigma1", "sigma2", "sigma3", "sigma4", "sigma5", "sigma6"]
    } else {
        &[]
    };
    for name in named {
        if let Ok(candidate) = named_involution(spec, name) {
            if candidate == *sigma {
                return (*name).to_string();
            }
        }
    }
    if *sigma == InvolutionSpec::canonical(spec) {
        return "canonical".to_string();
    }
    if sigma.is_identity(spec) {
        return "sigma1".to_string();
    }
    sigma.describe(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c8() -> GroupSpec {
        GroupSpec::cyclic(3).unwrap()
    }

    fn c8xc2() -> GroupSpec {
        GroupSpec::new(vec![3, 1]).unwrap()
    }

    #[test]
    fn cyclic_c8_has_exactly_the_four_table_involutions() {
        let spec = c8();
        let all = enumerate_involutive_automorphisms(&spec).unwrap();
        let exps: Vec<u64> = all.iter().map(|s| s.images()[0].exps()[0]).collect();
        assert_eq!(exps, vec![1, 3, 5, 7]);
        for (name, e) in [("sigma1", 1), ("sigma2", 7), ("sigma3", 3), ("sigma4", 5)] {
            let named = named_involution(&spec, name).unwrap();
            assert_eq!(named.images()[0].exps()[0], e);
            assert!(all.contains(&named));
        }
    }

    #[test]
    fn cyclic_count_is_four_for_n_3_to_5() {
        for n in 3..=5 {
            let spec = GroupSpec::cyclic(n).unwrap();
            let all = enumerate_involutive_automorphisms(&spec).unwrap();
            assert_eq!(all.len(), 4, "n={n}");
        }
    }

    #[test]
    fn c2_has_only_the_identity() {
        let spec = GroupSpec::cyclic(1).unwrap();
        let all = enumerate_involutive_automorphisms(&spec).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_identity(&spec));
    }

    #[test]
    fn enumerated_maps_are_involutive_bijective_homomorphisms() {
        for spec in [c8(), c8xc2(), GroupSpec::new(vec![2, 1]).unwrap()] {
            for sigma in enumerate_involutive_automorphisms(&spec).unwrap() {
                let mut seen = vec![false; spec.order() as usize];
                for g in spec.elements() {
                    let image = sigma.apply(&spec, &g).unwrap();
                    let idx = spec.element_index(&image).unwrap() as usize;
                    assert!(!seen[idx]);
                    seen[idx] = true;
                    assert_eq!(sigma.apply(&spec, &image).unwrap(), g);
                    for h in spec.elements() {
                        let lhs = sigma.apply(&spec, &spec.mul(&g, &h).unwrap()).unwrap();
                        let rhs = spec
                            .mul(
                                &sigma.apply(&spec, &g).unwrap(),
                                &sigma.apply(&spec, &h).unwrap(),
                            )
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn apply_frozen_cases() {
        let spec = c8();
        let sigma4 = named_involution(&spec, "sigma4").unwrap();
        // (a^5)^2 = a^10 = a^2
        let a2 = spec.element(&[2]).unwrap();
        assert_eq!(sigma4.apply(&spec, &a2).unwrap(), a2);
        assert!(sigma4.apply(&spec, &spec.identity()).unwrap().is_identity());

        let spec2 = c8xc2();
        let sigma2 = named_involution(&spec2, "sigma2").unwrap();
        // (a^3 b)^2 = a^6
        let a2 = spec2.element(&[2, 0]).unwrap();
        assert_eq!(
            sigma2.apply(&spec2, &a2).unwrap(),
            spec2.element(&[6, 0]).unwrap()
        );
    }

    #[test]
    fn symmetric_elements_frozen_cases() {
        let spec = c8();
        let sigma3 = named_involution(&spec, "sigma3").unwrap();
        let fixed = symmetric_group_elements(&spec, &sigma3).unwrap();
        assert_eq!(fixed, vec![spec.identity(), spec.element(&[4]).unwrap()]);

        let id_fixed = symmetric_group_elements(&spec, &InvolutionSpec::identity(&spec)).unwrap();
        assert_eq!(id_fixed.len(), 8);

        let sigma2 = named_involution(&spec, "sigma2").unwrap();
        let fixed2 = symmetric_group_elements(&spec, &sigma2).unwrap();
        assert_eq!(fixed2, vec![spec.identity(), spec.element(&[4]).unwrap()]);
    }

    #[test]
    fn fixed_points_form_a_subgroup() {
        for spec in [c8(), c8xc2()] {
            for sigma in enumerate_involutive_automorphisms(&spec).unwrap() {
                let fixed = symmetric_group_elements(&spec, &sigma).unwrap();
                for a in &fixed {
                    assert!(fixed.contains(&spec.inv(a).unwrap()));
                    for b in &fixed {
                        assert!(fixed.contains(&spec.mul(a, b).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn aut_group_structure_for_cyclic_groups() {
        let info = cyclic_aut_group(&c8()).unwrap();
        assert_eq!(info.order, 4);
        assert_eq!(info.invariants, (2, 2));

        let info4 = cyclic_aut_group(&GroupSpec::cyclic(4).unwrap()).unwrap();
        assert_eq!(info4.order, 8);
        assert_eq!(info4.invariants, (4, 2));

        for n in 3..=5 {
            let spec = GroupSpec::cyclic(n).unwrap();
            assert_eq!(
                cyclic_aut_group(&spec).unwrap().order,
                cyclic_aut_order_brute_force(n)
            );
        }
        assert_eq!(cyclic_aut_order_brute_force(5), 16);

        assert_eq!(
            cyclic_aut_group(&GroupSpec::cyclic(2).unwrap()),
            Err(InvolutionError::OutOfScope)
        );
        assert_eq!(cyclic_aut_group(&c8xc2()), Err(InvolutionError::OutOfScope));
    }

    #[test]
    fn c8xc2_named_table_entries_are_involutions() {
        let spec = c8xc2();
        let all = enumerate_involutive_automorphisms(&spec).unwrap();
        for name in ["sigma1", "sigma2", "sigma3", "sigma4", "sigma5", "sigma6"] {
            let sigma = named_involution(&spec, name).unwrap();
            assert!(all.contains(&sigma), "{name}");
        }
        // the canonical involution of c8xc2 is not one of the six table rows
        let canonical = InvolutionSpec::canonical(&spec);
        assert!(all.contains(&canonical));
        assert_eq!(involution_label(&spec, &canonical), "canonical");
    }

    #[test]
    fn invalid_images_rejected() {
        let spec = c8xc2();
        // b -> a^2*b maps an order-2 generator to an order-4 element
        let images = vec![spec.generator(0), spec.element(&[2, 1]).unwrap()];
        assert_eq!(
            InvolutionSpec::new(&spec, images),
            Err(InvolutionError::NotAHomomorphism)
        );
        // a -> a^2 is a homomorphism but not bijective
        let images = vec![spec.element(&[2, 0]).unwrap(), spec.generator(1)];
        assert!(matches!(
            InvolutionSpec::new(&spec, images),
            Err(InvolutionError::NotBijective) | Err(InvolutionError::NotInvolutive)
        ));
        // a -> a*b on c8 is shape-incompatible
        let c8 = c8();
        assert!(InvolutionSpec::new(&c8, vec![spec.element(&[1, 1]).unwrap()]).is_err());
    }

    #[test]
    fn parse_and_label_round_trip() {
        let spec = c8xc2();
        let sigma = parse_involution(&spec, "a->a^3*b,b->b").unwrap();
        assert_eq!(sigma, named_involution(&spec, "sigma2").unwrap());
        assert_eq!(involution_label(&spec, &sigma), "sigma2");

        let twisted = parse_involution(&spec, "a->a^5*b").unwrap();
        assert_eq!(involution_label(&spec, &twisted), "a->a^5*b,b->b");
        assert_eq!(
            parse_involution(&spec, &involution_label(&spec, &twisted)).unwrap(),
            twisted
        );

        assert!(parse_involution(&spec, "sigma9").is_err());
    }
}
