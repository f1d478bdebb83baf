//! Unitary subgroups of V(FG): for an involution arising from a group
//! automorphism sigma of order <= 2, the subgroup of normalized units u with
//! u u^sigma = 1.
//!
//! Two computation routes are provided. Enumeration sweeps all of V(FG) and
//! collects the members; the image-count route sweeps the same units but only
//! accumulates the image of the homomorphism phi(x) = x x^sigma, whose kernel
//! is the unitary subgroup, so |V_sigma| = |V| / |image|. Structure analysis
//! (exponent, abelian invariants) recovers the cyclic decomposition from the
//! order census c_k = #{u : u^(2^k) = 1}.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{permute_into, sort_dedup, AlgebraElement, AlgebraError, GroupAlgebra};
use crate::field::FieldElement;
use crate::involution::{involution_label, named_involution, InvolutionError, InvolutionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitaryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error("element is not a normalized unit (augmentation must be 1)")]
    NotNormalized,
    #[error("enumeration needs 2^{required_log2} units, budget is {budget}")]
    Capacity { required_log2: u32, budget: u64 },
    #[error("this operation is defined for cyclic groups C_2^n with n > 2")]
    NotCyclic,
    #[error("the elements do not form a 2-subgroup of V(FG): {0}")]
    InvalidSubgroup(String),
}

/// How a unitary subgroup's order was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Collect the full member set.
    Enumeration,
    /// Count |V| / |image of x -> x x^sigma|; the member set is not kept.
    ImageCount,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::ImageCount => "image-count",
        }
    }
}

/// A fully collected unitary subgroup, sorted by coefficient bytes.
#[derive(Debug, Clone)]
pub struct UnitarySubgroup {
    pub sigma: InvolutionSpec,
    pub elements: Vec<AlgebraElement>,
}

/// Serializable summary of one computed subgroup. Key names are fixed for
/// downstream tooling.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SubgroupReport {
    pub group: String,
    pub field: u64,
    pub sigma: String,
    pub order: u128,
    pub exponent: Option<u64>,
    pub invariants: Option<Vec<u64>>,
    pub method: String,
    pub elapsed_ms: u64,
}

/// Result of [`compute_unitary_subgroup`]: the report, plus the member set
/// when the enumeration method ran.
#[derive(Debug, Clone)]
pub struct UnitaryComputation {
    pub subgroup: Option<UnitarySubgroup>,
    pub report: SubgroupReport,
}

fn ensure_budget(alg: &GroupAlgebra, budget: u64) -> Result<(), UnitaryError> {
    let log2 = alg.unit_count_log2();
    if log2 >= 64 || (1u64 << log2) > budget {
        return Err(UnitaryError::Capacity {
            required_log2: log2,
            budget,
        });
    }
    Ok(())
}

/// u is sigma-unitary when u u^sigma = 1 (equivalently u^sigma = u^-1).
/// Only normalized units are accepted.
pub fn is_unitary(
    alg: &GroupAlgebra,
    u: &AlgebraElement,
    sigma: &InvolutionSpec,
) -> Result<bool, UnitaryError> {
    if !alg.augmentation(u)?.is_one() {
        return Err(UnitaryError::NotNormalized);
    }
    let image = alg.apply_involution(sigma, u)?;
    Ok(alg.mul(u, &image)? == alg.one())
}

/// Computes V_sigma(FG) by the requested method. Both methods sweep all
/// |V(FG)| = q^(|G|-1) normalized units, so that count must fit the budget.
pub fn compute_unitary_subgroup(
    alg: &GroupAlgebra,
    sigma: &InvolutionSpec,
    method: Method,
    budget: u64,
    workers: usize,
) -> Result<UnitaryComputation, UnitaryError> {
    ensure_budget(alg, budget)?;
    let started = Instant::now();
    let perm = alg.involution_permutation(sigma)?;
    let size = alg.dimension();

    let mut report = SubgroupReport {
        group: alg.group_spec().to_string(),
        field: alg.field_spec().order(),
        sigma: involution_label(alg.group_spec(), sigma),
        order: 0,
        exponent: None,
        invariants: None,
        method: method.as_str().to_string(),
        elapsed_ms: 0,
    };

    match method {
        Method::Enumeration => {
            struct State {
                members: Vec<Vec<u8>>,
                sx: Vec<u8>,
                prod: Vec<u8>,
            }
            let chunks = alg.sweep_units(
                workers,
                || State {
                    members: Vec::new(),
                    sx: vec![0; size],
                    prod: vec![0; size],
                },
                |state, _, coeffs| {
                    permute_into(&perm, coeffs, &mut state.sx);
                    alg.mul_into(coeffs, &state.sx, &mut state.prod);
                    if is_one_bits(&state.prod) {
                        state.members.push(coeffs.to_vec());
                    }
                },
            )?;
            let mut elements = Vec::new();
            for chunk in chunks {
                for bits in chunk.members {
                    elements.push(alg.from_coeff_bits(bits)?);
                }
            }
            let elements = sort_dedup(elements);
            report.order = elements.len() as u128;
            report.exponent = Some(subgroup_exponent(alg, &elements)?);
            report.invariants = Some(abelian_invariants(alg, &elements)?);
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            let subgroup = UnitarySubgroup {
                sigma: sigma.clone(),
                elements,
            };
            Ok(UnitaryComputation {
                subgroup: Some(subgroup),
                report,
            })
        }
        Method::ImageCount => {
            let image = star_image_bytes(alg, &perm, workers)?;
            let total = alg.unit_count().expect("budget-checked");
            report.order = total / image.len() as u128;
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            Ok(UnitaryComputation {
                subgroup: None,
                report,
            })
        }
    }
}

fn is_one_bits(bits: &[u8]) -> bool {
    bits[0] == 1 && bits[1..].iter().all(|&b| b == 0)
}

fn star_image_bytes(
    alg: &GroupAlgebra,
    perm: &[u16],
    workers: usize,
) -> Result<HashSet<Vec<u8>>, UnitaryError> {
    let size = alg.dimension();
    struct State {
        images: HashSet<Vec<u8>>,
        sx: Vec<u8>,
        prod: Vec<u8>,
    }
    let chunks = alg.sweep_units(
        workers,
        || State {
            images: HashSet::new(),
            sx: vec![0; size],
            prod: vec![0; size],
        },
        |state, _, coeffs| {
            permute_into(perm, coeffs, &mut state.sx);
            alg.mul_into(coeffs, &state.sx, &mut state.prod);
            if !state.images.contains(state.prod.as_slice()) {
                state.images.insert(state.prod.clone());
            }
        },
    )?;
    let mut merged = HashSet::new();
    for chunk in chunks {
        merged.extend(chunk.images);
    }
    Ok(merged)
}

/// S_sigma: the image of the homomorphism phi(x) = x x^sigma over V(FG).
/// Satisfies |V(FG)| = |V_sigma(FG)| * |S_sigma|.
pub fn compute_star_image(
    alg: &GroupAlgebra,
    sigma: &InvolutionSpec,
    budget: u64,
    workers: usize,
) -> Result<Vec<AlgebraElement>, UnitaryError> {
    ensure_budget(alg, budget)?;
    let perm = alg.involution_permutation(sigma)?;
    let bytes = star_image_bytes(alg, &perm, workers)?;
    let mut elements = Vec::with_capacity(bytes.len());
    for bits in bytes {
        elements.push(alg.from_coeff_bits(bits)?);
    }
    Ok(sort_dedup(elements))
}

/// Evaluates x x^sigma4 for cyclic C_2^n (n > 2) directly from the
/// coefficient vector via the index formula
///
/// ```text
/// sum_i (a_{2i}+a_{2i+2^(n-1)})^2 A^{4i}
///   + sum_i (a_{2(i+2^(n-3))+1}+a_{2(i+2^(n-3))+1+2^(n-1)})^2 A^{4i+2}
///   + sum_{j,i} (a_{2i}+a_{2i+2^(n-1)})(a_{2j+1-2i+2^(n-1)}+a_{2j+1-2i})
///       (A^{2j+1}+A^{2j+1+2^(n-1)})
/// ```
///
/// with all index arithmetic mod 2^n. Kept independent of the convolution
/// route so agreement between the two is a genuine cross-check.
pub fn sigma4_product_closed_form(
    alg: &GroupAlgebra,
    x: &AlgebraElement,
) -> Result<AlgebraElement, UnitaryError> {
    let spec = alg.group_spec();
    if spec.rank() != 1 || spec.exponents()[0] <= 2 {
        return Err(UnitaryError::NotCyclic);
    }
    // validate that x belongs to this algebra
    alg.augmentation(x)?;
    let m = alg.dimension();
    let h = m / 2;
    let quarter = m / 4;
    let eighth = m / 8;
    let field = alg.field_spec();

    let coeff = |i: usize| -> FieldElement { x.coeff(i % m) };
    let mut out = vec![field.zero(); m];
    let add_at = |idx: usize, v: FieldElement, out: &mut Vec<FieldElement>| {
        out[idx % m] = out[idx % m].add(&v).expect("same field");
    };

    for i in 0..quarter {
        let s = coeff(2 * i).add(&coeff(2 * i + h)).expect("same field");
        add_at(4 * i, s.square(), &mut out);
    }
    for i in 0..quarter {
        let base = 2 * (i + eighth) + 1;
        let s = coeff(base).add(&coeff(base + h)).expect("same field");
        add_at(4 * i + 2, s.square(), &mut out);
    }
    for j in 0..quarter {
        for i in 0..quarter {
            let even = coeff(2 * i).add(&coeff(2 * i + h)).expect("same field");
            let odd_base = 2 * j + 1 + m - 2 * i; // 2j+1-2i, kept nonnegative
            let odd = coeff(odd_base + h)
                .add(&coeff(odd_base))
                .expect("same field");
            let c = even.mul(&odd).expect("same field");
            add_at(2 * j + 1, c, &mut out);
            add_at(2 * j + 1 + h, c, &mut out);
        }
    }
    Ok(alg.from_coeffs(&out)?)
}

/// For y = x x^sigma4 over cyclic C_2^n (n > 2), computed by convolution:
/// the odd-position coefficients sum to zero and satisfy
/// coeff(A^(2j+1)) = coeff(A^(2j+1+2^(n-1))).
pub fn check_corollary1(alg: &GroupAlgebra, x: &AlgebraElement) -> Result<bool, UnitaryError> {
    let spec = alg.group_spec();
    if spec.rank() != 1 || spec.exponents()[0] <= 2 {
        return Err(UnitaryError::NotCyclic);
    }
    let sigma4 = named_involution(spec, "sigma4")?;
    let y = alg.mul(x, &alg.apply_involution(&sigma4, x)?)?;
    let m = alg.dimension();
    let h = m / 2;
    let field = alg.field_spec();
    let mut odd_sum = field.zero();
    for j in 0..h {
        let c = y.coeff(2 * j + 1);
        odd_sum = odd_sum.add(&c).expect("same field");
        if c != y.coeff((2 * j + 1 + h) % m) {
            return Ok(false);
        }
    }
    Ok(odd_sum.is_zero())
}

/// The generators of S_H for H = <A^(2^(n-1))> in F C_2^n, closed under
/// multiplication: A^(2^(n-1)), 1 + beta A^(2^(n-2)) H-hat, and
/// 1 + alpha (A^i + A^(2^(n-1)-i)) H-hat for 0 < i < 2^(n-2).
pub fn s_h_generator_closure(
    alg: &GroupAlgebra,
    budget: u64,
) -> Result<Vec<AlgebraElement>, UnitaryError> {
    let spec = alg.group_spec();
    if spec.rank() != 1 || spec.exponents()[0] <= 2 {
        return Err(UnitaryError::NotCyclic);
    }
    // everything generated lives in {a^(2^(n-1))}^e (1 + w H-hat) with w in
    // an F-space of dimension 2^(n-2), so the closure cannot exceed
    // 2 q^(2^(n-2)); refuse up front when that bound already overruns
    let n = spec.exponents()[0];
    let bound_log2 = 1 + alg.field_spec().degree() * (1 << (n - 2));
    if bound_log2 >= 64 || (1u64 << bound_log2) > budget {
        return Err(UnitaryError::Capacity {
            required_log2: bound_log2,
            budget,
        });
    }
    let m = alg.dimension() as u64;
    let h_gen = spec.element(&[m / 2])?;
    let h = spec.cyclic_subgroup(&h_gen)?;
    let hat = alg.hat_sum(&h)?;

    let mut generators = vec![alg.embed(&h_gen)?];
    for beta in alg.field_spec().enumerate().skip(1) {
        let mid = alg.embed(&spec.element(&[m / 4])?)?;
        let term = alg.scale(beta, &alg.mul(&mid, &hat)?)?;
        generators.push(alg.add(&alg.one(), &term)?);
    }
    for i in 1..(m / 4) {
        let pair = alg.add(
            &alg.embed(&spec.element(&[i])?)?,
            &alg.embed(&spec.element(&[m / 2 - i])?)?,
        )?;
        let pair_hat = alg.mul(&pair, &hat)?;
        for alpha in alg.field_spec().enumerate().skip(1) {
            let term = alg.scale(alpha, &pair_hat)?;
            generators.push(alg.add(&alg.one(), &term)?);
        }
    }

    // breadth-first closure under multiplication
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut frontier = vec![alg.one()];
    seen.insert(alg.one().coeff_bits().to_vec());
    while let Some(current) = frontier.pop() {
        for g in &generators {
            let next = alg.mul(&current, g)?;
            if seen.insert(next.coeff_bits().to_vec()) {
                if seen.len() as u64 > budget {
                    return Err(UnitaryError::Capacity {
                        required_log2: budget.checked_ilog2().unwrap_or(0) + 1,
                        budget,
                    });
                }
                frontier.push(next);
            }
        }
    }
    let mut elements = Vec::with_capacity(seen.len());
    for bits in seen {
        elements.push(alg.from_coeff_bits(bits)?);
    }
    Ok(sort_dedup(elements))
}

/// S_H computed the other way: the set {x x^sigma3 : x in N}, where N is the
/// preimage under Psi of the unitary subgroup of F(G/H) with respect to the
/// induced involution.
pub fn s_h_psi_image(
    alg: &GroupAlgebra,
    budget: u64,
    workers: usize,
) -> Result<Vec<AlgebraElement>, UnitaryError> {
    let spec = alg.group_spec();
    if spec.rank() != 1 || spec.exponents()[0] <= 2 {
        return Err(UnitaryError::NotCyclic);
    }
    ensure_budget(alg, budget)?;
    let m = alg.dimension() as u64;
    let h = spec.cyclic_subgroup(&spec.element(&[m / 2])?)?;
    let psi = alg.quotient(&h)?;
    let sigma3 = named_involution(spec, "sigma3")?;
    let induced = psi.induce_involution(&sigma3)?;

    // unitary subgroup of the quotient algebra, by direct enumeration
    let quotient_alg = psi.target().clone();
    let downstairs = compute_unitary_subgroup(
        &quotient_alg,
        &induced,
        Method::Enumeration,
        budget,
        workers,
    )?;
    let member_bytes: HashSet<Vec<u8>> = downstairs
        .subgroup
        .expect("enumeration keeps members")
        .elements
        .iter()
        .map(|e| e.coeff_bits().to_vec())
        .collect();

    let perm = alg.involution_permutation(&sigma3)?;
    let size = alg.dimension();
    struct State {
        images: HashSet<Vec<u8>>,
        sx: Vec<u8>,
        prod: Vec<u8>,
        projected: Vec<u8>,
    }
    let qdim = quotient_alg.dimension();
    let chunks = alg.sweep_units(
        workers,
        || State {
            images: HashSet::new(),
            sx: vec![0; size],
            prod: vec![0; size],
            projected: vec![0; qdim],
        },
        |state, _, coeffs| {
            state.projected.fill(0);
            for (i, &c) in coeffs.iter().enumerate() {
                state.projected[psi.project_index(i)] ^= c;
            }
            if member_bytes.contains(state.projected.as_slice()) {
                permute_into(&perm, coeffs, &mut state.sx);
                alg.mul_into(coeffs, &state.sx, &mut state.prod);
                state.images.insert(state.prod.clone());
            }
        },
    )?;
    let mut merged: HashSet<Vec<u8>> = HashSet::new();
    for chunk in chunks {
        merged.extend(chunk.images);
    }
    let mut elements = Vec::with_capacity(merged.len());
    for bits in merged {
        elements.push(alg.from_coeff_bits(bits)?);
    }
    Ok(sort_dedup(elements))
}

/// Order of a normalized unit: the least 2^k with u^(2^k) = 1, found by
/// repeated squaring.
pub fn element_order(alg: &GroupAlgebra, u: &AlgebraElement) -> Result<u64, UnitaryError> {
    if !alg.augmentation(u)?.is_one() {
        return Err(UnitaryError::NotNormalized);
    }
    let bound = alg.group_spec().exponent();
    let mut order = 1u64;
    let mut y = u.clone();
    while y != alg.one() {
        y = alg.mul(&y, &y)?;
        order <<= 1;
        if order > bound {
            return Err(UnitaryError::InvalidSubgroup(format!(
                "element order exceeds the group exponent {bound}"
            )));
        }
    }
    Ok(order)
}

/// Exponent of a finite set of normalized units: the maximal element order.
pub fn subgroup_exponent(
    alg: &GroupAlgebra,
    elements: &[AlgebraElement],
) -> Result<u64, UnitaryError> {
    let mut max = 1;
    for u in elements {
        max = max.max(element_order(alg, u)?);
    }
    Ok(max)
}

/// Abelian invariants of a finite abelian 2-group of normalized units,
/// recovered from the order census: log2 #{u : u^(2^k) = 1} = sum_i min(k, e_i).
/// Returned as cyclic orders in non-increasing order.
pub fn abelian_invariants(
    alg: &GroupAlgebra,
    elements: &[AlgebraElement],
) -> Result<Vec<u64>, UnitaryError> {
    if elements.is_empty() {
        return Err(UnitaryError::InvalidSubgroup("empty set".to_string()));
    }
    if !elements.len().is_power_of_two() {
        return Err(UnitaryError::InvalidSubgroup(format!(
            "size {} is not a power of two",
            elements.len()
        )));
    }
    let max_steps = alg.group_spec().exponent().trailing_zeros() as usize;
    let mut census = vec![0u64; max_steps + 1]; // census[k] = #{order <= 2^k}
    for u in elements {
        let ord = element_order(alg, u)?;
        census[ord.trailing_zeros() as usize] += 1;
    }
    for k in 1..=max_steps {
        census[k] += census[k - 1];
    }
    if census[0] != 1 || census[max_steps] != elements.len() as u64 {
        return Err(UnitaryError::InvalidSubgroup(
            "order census does not match a group with exactly one identity".to_string(),
        ));
    }
    let mut rank_at = vec![0u32; max_steps + 2]; // rank_at[k] = #{invariants >= 2^k}
    for k in 1..=max_steps {
        if !census[k].is_power_of_two() || census[k] < census[k - 1] {
            return Err(UnitaryError::InvalidSubgroup(
                "order census is not consistent with an abelian 2-group".to_string(),
            ));
        }
        rank_at[k] = census[k].trailing_zeros() - census[k - 1].trailing_zeros();
    }
    for k in 1..max_steps {
        if rank_at[k + 1] > rank_at[k] {
            return Err(UnitaryError::InvalidSubgroup(
                "order census is not consistent with an abelian 2-group".to_string(),
            ));
        }
    }
    let mut invariants = Vec::new();
    for k in (1..=max_steps).rev() {
        for _ in 0..(rank_at[k] - rank_at[k + 1]) {
            invariants.push(1u64 << k);
        }
    }
    Ok(invariants)
}

/// Closure check: exhaustive over all pairs up to 2^12 elements, seeded
/// random pairs beyond.
pub fn verify_closure(
    alg: &GroupAlgebra,
    elements: &[AlgebraElement],
    seed: u64,
) -> Result<bool, UnitaryError> {
    let members: HashSet<&[u8]> = elements.iter().map(|e| e.coeff_bits()).collect();
    let mut prod = vec![0u8; alg.dimension()];
    if elements.len() <= 1 << 12 {
        for a in elements {
            for b in elements {
                alg.mul_into(a.coeff_bits(), b.coeff_bits(), &mut prod);
                if !members.contains(prod.as_slice()) {
                    return Ok(false);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100_000 {
            let a = &elements[rng.gen_range(0..elements.len())];
            let b = &elements[rng.gen_range(0..elements.len())];
            alg.mul_into(a.coeff_bits(), b.coeff_bits(), &mut prod);
            if !members.contains(prod.as_slice()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
