//! The group algebra FG: dense coefficient vectors over a finite abelian
//! 2-group, convolution, augmentation, units, linear extension of
//! involutions, the ideal I(H), and the natural homomorphism onto F(G/H).
//!
//! Coefficients are indexed by the group module's mixed-radix element index.
//! A [`GroupAlgebra`] precomputes the group and field multiplication tables
//! once; elements are plain coefficient vectors and all operations live on
//! the algebra context.

use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

use crate::field::{poly_string, FieldElement, FieldError, FieldSpec};
use crate::group::{GroupElement, GroupError, GroupSpec};
use crate::involution::{InvolutionError, InvolutionSpec};

/// Cap on log2|G| for algebra contexts: the index multiplication table is
/// |G|^2 entries.
pub const MAX_ALGEBRA_LOG2: u32 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(
        "group of order 2^{0} is too large for dense algebra tables (max 2^{MAX_ALGEBRA_LOG2})"
    )]
    GroupTooLarge(u32),
    #[error("element does not belong to this algebra")]
    MixedAlgebras,
    #[error("element is not a unit (augmentation is zero)")]
    NotAUnit,
    #[error("the given elements do not form a subgroup of G")]
    NotASubgroup,
    #[error("the involution does not stabilize the subgroup")]
    SubgroupNotStable,
    #[error("enumeration needs 2^{required_log2} candidates, budget is {budget}")]
    Capacity { required_log2: u32, budget: u64 },
    #[error("cannot parse algebra element {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A dense element of FG: one coefficient bit pattern per group index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    coeffs: Vec<u8>,
    field: FieldSpec,
}

impl AlgebraElement {
    /// The raw coefficient bit patterns, indexed by group element index.
    pub fn coeff_bits(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeff(&self, index: usize) -> FieldElement {
        self.field
            .element(self.coeffs[index] as u16)
            .expect("stored coefficients are valid")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Context for one algebra FG: field and group specs plus flat lookup
/// tables for index products and field products.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    field: FieldSpec,
    group: GroupSpec,
    size: usize,
    q: usize,
    mul_idx: Vec<u16>,
    fmul: Vec<u8>,
}

impl GroupAlgebra {
    pub fn new(field: FieldSpec, group: GroupSpec) -> Result<Self, AlgebraError> {
        let log2 = group.order().trailing_zeros();
        if log2 > MAX_ALGEBRA_LOG2 {
            return Err(AlgebraError::GroupTooLarge(log2));
        }
        let size = group.order() as usize;
        let q = field.order() as usize;

        let mut mul_idx = vec![0u16; size * size];
        for i in 0..size {
            let gi = group.element_at(i as u64)?;
            for j in 0..size {
                let gj = group.element_at(j as u64)?;
                mul_idx[i * size + j] = group.element_index(&group.mul(&gi, &gj)?)? as u16;
            }
        }

        let mut fmul = vec![0u8; q * q];
        for a in field.enumerate() {
            for b in field.enumerate() {
                fmul[a.bits() as usize * q + b.bits() as usize] = a.mul(&b)?.bits();
            }
        }

        Ok(GroupAlgebra {
            field,
            group,
            size,
            q,
            mul_idx,
            fmul,
        })
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field
    }

    pub fn group_spec(&self) -> &GroupSpec {
        &self.group
    }

    /// Dimension of FG as an F-space, i.e. |G|.
    pub fn dimension(&self) -> usize {
        self.size
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.field != self.field || x.coeffs.len() != self.size {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(())
    }

    pub(crate) fn wrap(&self, coeffs: Vec<u8>) -> AlgebraElement {
        debug_assert_eq!(coeffs.len(), self.size);
        AlgebraElement {
            coeffs,
            field: self.field,
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![0; self.size])
    }

    pub fn one(&self) -> AlgebraElement {
        let mut coeffs = vec![0; self.size];
        coeffs[0] = 1;
        self.wrap(coeffs)
    }

    pub fn scalar(&self, c: FieldElement) -> Result<AlgebraElement, AlgebraError> {
        if c.field() != self.field {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut coeffs = vec![0; self.size];
        coeffs[0] = c.bits();
        Ok(self.wrap(coeffs))
    }

    /// Embeds a group element as a basis vector.
    pub fn embed(&self, g: &GroupElement) -> Result<AlgebraElement, AlgebraError> {
        let idx = self.group.element_index(g)? as usize;
        let mut coeffs = vec![0; self.size];
        coeffs[idx] = 1;
        Ok(self.wrap(coeffs))
    }

    pub fn from_coeffs(&self, coeffs: &[FieldElement]) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.size {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut bits = Vec::with_capacity(self.size);
        for c in coeffs {
            if c.field() != self.field {
                return Err(AlgebraError::MixedAlgebras);
            }
            bits.push(c.bits());
        }
        Ok(self.wrap(bits))
    }

    pub fn from_coeff_bits(&self, bits: Vec<u8>) -> Result<AlgebraElement, AlgebraError> {
        if bits.len() != self.size || bits.iter().any(|&b| b as usize >= self.q) {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(self.wrap(bits))
    }

    pub fn coefficient(
        &self,
        x: &AlgebraElement,
        g: &GroupElement,
    ) -> Result<FieldElement, AlgebraError> {
        self.check(x)?;
        let idx = self.group.element_index(g)? as usize;
        Ok(x.coeff(idx))
    }

    /// Componentwise sum (characteristic two, so also the difference).
    pub fn add(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a ^ b).collect();
        Ok(self.wrap(coeffs))
    }

    /// Convolution product: coeff(g) = sum over h of x(h) y(h^-1 g).
    pub fn mul(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![0u8; self.size];
        self.mul_into(&x.coeffs, &y.coeffs, &mut out);
        Ok(self.wrap(out))
    }

    pub(crate) fn mul_into(&self, x: &[u8], y: &[u8], out: &mut [u8]) {
        out.fill(0);
        for (i, &xc) in x.iter().enumerate() {
            let xi = xc as usize;
            if xi == 0 {
                continue;
            }
            let row = &self.mul_idx[i * self.size..(i + 1) * self.size];
            let frow = &self.fmul[xi * self.q..(xi + 1) * self.q];
            for (j, &yc) in y.iter().enumerate() {
                let yj = yc as usize;
                if yj != 0 {
                    out[row[j] as usize] ^= frow[yj];
                }
            }
        }
    }

    pub fn scale(
        &self,
        c: FieldElement,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        if c.field() != self.field {
            return Err(AlgebraError::MixedAlgebras);
        }
        let frow = &self.fmul[c.bits() as usize * self.q..(c.bits() as usize + 1) * self.q];
        Ok(self.wrap(x.coeffs.iter().map(|&b| frow[b as usize]).collect()))
    }

    /// The augmentation: the sum of all coefficients. A ring homomorphism
    /// onto F.
    pub fn augmentation(&self, x: &AlgebraElement) -> Result<FieldElement, AlgebraError> {
        self.check(x)?;
        Ok(self
            .field
            .element(x.coeffs.iter().fold(0u8, |acc, &b| acc ^ b) as u16)
            .expect("valid bits"))
    }

    /// G a 2-group over characteristic two: x is a unit exactly when its
    /// augmentation is nonzero (the augmentation ideal is nilpotent).
    pub fn is_unit(&self, x: &AlgebraElement) -> Result<bool, AlgebraError> {
        Ok(!self.augmentation(x)?.is_zero())
    }

    /// Inverse of a unit. Writes x = aug(x)(1 + w) with w nilpotent and
    /// inverts the unipotent part as the product of (1 + w^(2^j)).
    pub fn inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let aug = self.augmentation(x)?;
        if aug.is_zero() {
            return Err(AlgebraError::NotAUnit);
        }
        let ainv = aug.inv()?;
        let mut w = self.scale(ainv, x)?;
        w.coeffs[0] ^= 1;
        // w^(2^N) = 0 for 2^N the exponent of G
        let steps = self.group.exponent().trailing_zeros();
        let mut acc = self.one();
        let mut pow = w;
        for _ in 0..steps {
            let mut term = pow.clone();
            term.coeffs[0] ^= 1; // 1 + w^(2^j)
            acc = self.mul(&acc, &term)?;
            pow = self.mul(&pow, &pow)?;
        }
        self.scale(ainv, &acc)
    }

    /// The permutation of coefficient indices induced by a group
    /// automorphism of order <= 2.
    pub fn involution_permutation(&self, sigma: &InvolutionSpec) -> Result<Vec<u16>, AlgebraError> {
        let mut perm = Vec::with_capacity(self.size);
        for i in 0..self.size {
            let g = self.group.element_at(i as u64)?;
            let image = sigma.apply(&self.group, &g)?;
            perm.push(self.group.element_index(&image)? as u16);
        }
        Ok(perm)
    }

    /// The linear extension of sigma to FG: permutes coefficients.
    pub fn apply_involution(
        &self,
        sigma: &InvolutionSpec,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        let perm = self.involution_permutation(sigma)?;
        let mut out = vec![0u8; self.size];
        permute_into(&perm, &x.coeffs, &mut out);
        Ok(self.wrap(out))
    }

    /// Validates that the given elements form a subgroup and returns their
    /// sorted indices.
    pub(crate) fn validated_subgroup(&self, h: &[GroupElement]) -> Result<Vec<u16>, AlgebraError> {
        let mut indices = Vec::with_capacity(h.len());
        for g in h {
            indices.push(self.group.element_index(g)? as u16);
        }
        indices.sort_unstable();
        indices.dedup();
        if indices.len() != h.len() || indices.first() != Some(&0) {
            return Err(AlgebraError::NotASubgroup);
        }
        let member: Vec<bool> = {
            let mut m = vec![false; self.size];
            for &i in &indices {
                m[i as usize] = true;
            }
            m
        };
        for &i in &indices {
            for &j in &indices {
                if !member[self.mul_idx[i as usize * self.size + j as usize] as usize] {
                    return Err(AlgebraError::NotASubgroup);
                }
            }
        }
        Ok(indices)
    }

    /// The sum of all elements of a subgroup H.
    pub fn hat_sum(&self, h: &[GroupElement]) -> Result<AlgebraElement, AlgebraError> {
        let indices = self.validated_subgroup(h)?;
        let mut coeffs = vec![0; self.size];
        for &i in &indices {
            coeffs[i as usize] = 1;
        }
        Ok(self.wrap(coeffs))
    }

    /// The ideal I(H) generated by {1+h : h in H}, with F-basis
    /// {t(1+h) : t a coset representative, h in H, h != 1}.
    pub fn ideal(&self, h: &[GroupElement]) -> Result<Ideal, AlgebraError> {
        let indices = self.validated_subgroup(h)?;
        let cosets = self.coset_partition(&indices);
        let mut basis = Vec::new();
        for &t in &cosets.reps {
            for &hi in &indices[1..] {
                let mut coeffs = vec![0u8; self.size];
                coeffs[t as usize] ^= 1;
                coeffs[self.mul_idx[t as usize * self.size + hi as usize] as usize] ^= 1;
                basis.push(self.wrap(coeffs));
            }
        }
        let (echelon, pivots) =
            self.echelon_form(basis.iter().map(|b| b.coeffs.clone()).collect())?;
        let expected_dim = self.size - self.size / indices.len();
        if pivots.len() != expected_dim {
            return Err(AlgebraError::Internal(format!(
                "ideal basis has rank {}, expected {expected_dim}",
                pivots.len()
            )));
        }
        Ok(Ideal {
            subgroup_indices: indices,
            basis,
            echelon,
            pivots,
            field_degree: self.field.degree(),
        })
    }

    /// Row-reduces a set of coefficient vectors over F; returns the nonzero
    /// echelon rows (pivot-normalized) and their pivot columns.
    fn echelon_form(&self, rows: Vec<Vec<u8>>) -> Result<(Vec<Vec<u8>>, Vec<usize>), AlgebraError> {
        let mut echelon: Vec<Vec<u8>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut row in rows {
            self.reduce_row(&mut row, &echelon, &pivots);
            if let Some(p) = row.iter().position(|&c| c != 0) {
                let lead = self.field.element(row[p] as u16)?;
                let inv = lead.inv()?;
                let frow =
                    &self.fmul[inv.bits() as usize * self.q..(inv.bits() as usize + 1) * self.q];
                for c in row.iter_mut() {
                    *c = frow[*c as usize];
                }
                // reduced form: clear the new pivot column in existing rows
                for existing in echelon.iter_mut() {
                    let factor = existing[p] as usize;
                    if factor != 0 {
                        let frow = &self.fmul[factor * self.q..(factor + 1) * self.q];
                        for (c, &rc) in existing.iter_mut().zip(&row) {
                            *c ^= frow[rc as usize];
                        }
                    }
                }
                let at = pivots.partition_point(|&q| q < p);
                pivots.insert(at, p);
                echelon.insert(at, row);
            }
        }
        Ok((echelon, pivots))
    }

    fn reduce_row(&self, row: &mut [u8], echelon: &[Vec<u8>], pivots: &[usize]) {
        for (r, &p) in echelon.iter().zip(pivots) {
            let factor = row[p] as usize;
            if factor != 0 {
                let frow = &self.fmul[factor * self.q..(factor + 1) * self.q];
                for (c, &rc) in row.iter_mut().zip(r) {
                    *c ^= frow[rc as usize];
                }
            }
        }
    }

    /// Membership test for an ideal, by reduction against its echelon basis.
    pub fn in_ideal(&self, x: &AlgebraElement, ideal: &Ideal) -> Result<bool, AlgebraError> {
        self.check(x)?;
        let mut row = x.coeffs.clone();
        self.reduce_row(&mut row, &ideal.echelon, &ideal.pivots);
        Ok(row.iter().all(|&c| c == 0))
    }

    fn coset_partition(&self, subgroup: &[u16]) -> CosetPartition {
        let mut coset_of = vec![u16::MAX; self.size];
        let mut reps = Vec::new();
        for i in 0..self.size {
            if coset_of[i] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(i as u16);
            for &h in subgroup {
                coset_of[self.mul_idx[i * self.size + h as usize] as usize] = id;
            }
        }
        CosetPartition { coset_of, reps }
    }

    /// The natural homomorphism Psi: FG -> F(G/H). The returned map owns the
    /// quotient algebra; its kernel is I(H).
    pub fn quotient(&self, h: &[GroupElement]) -> Result<QuotientMap, AlgebraError> {
        let indices = self.validated_subgroup(h)?;
        let cosets = self.coset_partition(&indices);
        let count = cosets.reps.len();

        // multiplication of cosets through their representatives
        let cmul = |a: usize, b: usize| -> usize {
            let ra = cosets.reps[a] as usize;
            let rb = cosets.reps[b] as usize;
            cosets.coset_of[self.mul_idx[ra * self.size + rb] as usize] as usize
        };
        let basis = abelian_basis(count, 0, &cmul);

        // quotient group in canonical form, largest factor first
        let exponents: Vec<u32> = basis.iter().map(|b| b.order.trailing_zeros()).collect();
        let quotient_group = GroupSpec::new(exponents)?;
        let target = GroupAlgebra::new(self.field, quotient_group)?;

        // coordinates: enumerate basis-power products in the target's own
        // mixed-radix order and record where each coset lands
        let mut coset_to_target = vec![u16::MAX; count];
        let mut lift = vec![0u16; count];
        #[allow(clippy::needless_range_loop)]
        for t in 0..count {
            let exps = target.group.element_at(t as u64)?;
            let mut acc = 0usize; // identity coset: index 0 maps to coset 0
            for (b, &e) in basis.iter().zip(exps.exps()) {
                for _ in 0..e {
                    acc = cmul(acc, b.element);
                }
            }
            if coset_to_target[acc] != u16::MAX {
                return Err(AlgebraError::Internal(
                    "quotient basis coordinates are not bijective".to_string(),
                ));
            }
            coset_to_target[acc] = t as u16;
            lift[t] = cosets.reps[acc];
        }

        let project: Vec<u16> = (0..self.size)
            .map(|i| coset_to_target[cosets.coset_of[i] as usize])
            .collect();

        Ok(QuotientMap {
            source_field: self.field,
            source_group: self.group.clone(),
            source_size: self.size,
            subgroup_indices: indices,
            target,
            project,
            lift,
        })
    }

    /// log2 of |V(FG)| = q^(|G|-1).
    pub fn unit_count_log2(&self) -> u32 {
        self.field.degree() * (self.size as u32 - 1)
    }

    pub fn unit_count(&self) -> Option<u128> {
        let log2 = self.unit_count_log2();
        (log2 < 128).then(|| 1u128 << log2)
    }

    /// Decodes the idx-th normalized unit. Free coefficients are the
    /// non-identity positions, mixed-radix with the last group index varying
    /// fastest; the identity coefficient is forced by augmentation one.
    pub(crate) fn decode_unit(&self, mut idx: u128, out: &mut [u8]) {
        debug_assert_eq!(out.len(), self.size);
        let q = self.q as u128;
        let mut acc = 0u8;
        for j in (1..self.size).rev() {
            let d = (idx % q) as u8;
            idx /= q;
            out[j] = d;
            acc ^= d;
        }
        out[0] = acc ^ 1;
    }

    /// All normalized units (augmentation one), each exactly once, in the
    /// documented mixed-radix order. Intended for small configurations;
    /// large sweeps should go through [`GroupAlgebra::sweep_units`].
    pub fn normalized_units(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        let count = self.unit_count().expect("unit count fits in u128");
        (0..count).map(move |i| self.unit_at(i).expect("index in range"))
    }

    /// The idx-th normalized unit in enumeration order.
    pub fn unit_at(&self, idx: u128) -> Option<AlgebraElement> {
        if idx >= self.unit_count()? {
            return None;
        }
        let mut coeffs = vec![0u8; self.size];
        self.decode_unit(idx, &mut coeffs);
        Some(self.wrap(coeffs))
    }

    /// Partitions the unit index range over `workers` scoped threads. Each
    /// worker folds its contiguous range into a local state; the states are
    /// returned in partition order, so any merge is deterministic.
    pub fn sweep_units<T, I, S>(
        &self,
        workers: usize,
        init: I,
        step: S,
    ) -> Result<Vec<T>, AlgebraError>
    where
        T: Send,
        I: Fn() -> T + Sync,
        S: Fn(&mut T, u128, &[u8]) + Sync,
    {
        let count = self.unit_count().ok_or(AlgebraError::Capacity {
            required_log2: self.unit_count_log2(),
            budget: u64::MAX,
        })?;
        let workers = workers.clamp(1, 64);
        let chunk = count.div_ceil(workers as u128).max(1);
        let mut results: Vec<Option<T>> = (0..workers).map(|_| None).collect();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                let start = chunk * w as u128;
                let end = (start + chunk).min(count);
                let init = &init;
                let step = &step;
                handles.push(scope.spawn(move || {
                    let mut state = init();
                    let mut buf = vec![0u8; self.size];
                    let mut i = start;
                    while i < end {
                        self.decode_unit(i, &mut buf);
                        step(&mut state, i, &buf);
                        i += 1;
                    }
                    state
                }));
            }
            for (w, handle) in handles.into_iter().enumerate() {
                results[w] = Some(handle.join().expect("sweep worker panicked"));
            }
        });
        Ok(results
            .into_iter()
            .map(|r| r.expect("worker state"))
            .collect())
    }

    /// Renders an element like `1 + a^2 + (x+1)*a^5`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in 0..self.size {
            let bits = x.coeffs[i];
            if bits == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let g = self.group.element_at(i as u64).expect("index in range");
            let word = self.group.format_element(&g);
            let coeff = if bits.count_ones() > 1 {
                format!("({})", poly_string(bits as u16))
            } else {
                poly_string(bits as u16)
            };
            if bits == 1 {
                let _ = write!(out, "{word}");
            } else if word == "1" {
                let _ = write!(out, "{coeff}");
            } else {
                let _ = write!(out, "{coeff}*{word}");
            }
        }
        out
    }

    /// Parses the [`GroupAlgebra::format_element`] syntax.
    pub fn parse_element(&self, input: &str) -> Result<AlgebraElement, AlgebraError> {
        let fail = |reason: &str| AlgebraError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }
        if compact == "0" {
            return Ok(self.zero());
        }
        let mut coeffs = vec![0u8; self.size];
        for term in split_terms(&compact) {
            let (coeff_bits, word) = self.parse_term(&term).map_err(|reason| fail(&reason))?;
            let g = self.group.parse_element(&word)?;
            let idx = self.group.element_index(&g)? as usize;
            coeffs[idx] ^= coeff_bits;
        }
        self.from_coeff_bits(coeffs)
    }

    fn parse_term(&self, term: &str) -> Result<(u8, String), String> {
        let (coeff_text, word_text) = if let Some(rest) = term.strip_prefix('(') {
            let close = rest.find(')').ok_or("unbalanced parenthesis")?;
            let coeff = &rest[..close];
            let tail = rest[close + 1..].trim_start_matches('*');
            (coeff.to_string(), tail.to_string())
        } else if let Some((head, tail)) = term.split_once('*') {
            if Self::is_field_token(head) {
                (head.to_string(), tail.to_string())
            } else {
                ("1".to_string(), term.to_string())
            }
        } else if Self::is_field_token(term) {
            (term.to_string(), "1".to_string())
        } else {
            ("1".to_string(), term.to_string())
        };
        let bits = self.parse_field_poly(&coeff_text)?;
        let word = if word_text.is_empty() {
            "1".to_string()
        } else {
            word_text
        };
        Ok((bits, word))
    }

    /// True for tokens made only of the field indeterminate x (group
    /// generators are a, b, c, ...).
    fn is_field_token(token: &str) -> bool {
        !token.is_empty()
            && token
                .chars()
                .all(|c| c == 'x' || c == '^' || c == '+' || c.is_ascii_digit())
    }

    fn parse_field_poly(&self, text: &str) -> Result<u8, String> {
        let mut bits: u16 = 0;
        for mono in text.split('+') {
            let mono = mono.trim();
            bits ^= match mono {
                "0" => 0,
                "1" => 1,
                "x" => 2,
                _ => {
                    let exp: u32 = mono
                        .strip_prefix("x^")
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| format!("bad field monomial {mono:?}"))?;
                    1u16.checked_shl(exp).ok_or("field exponent too large")?
                }
            };
        }
        if u64::from(bits) >= self.field.order() {
            return Err(format!("coefficient outside GF({})", self.field.order()));
        }
        Ok(bits as u8)
    }
}

fn split_terms(compact: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in compact.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            '+' if depth == 0 => {
                terms.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    terms.push(current);
    terms.retain(|t| !t.is_empty());
    terms
}

pub(crate) fn permute_into(perm: &[u16], x: &[u8], out: &mut [u8]) {
    out.fill(0);
    for (i, &p) in perm.iter().enumerate() {
        out[p as usize] = x[i];
    }
}

struct CosetPartition {
    coset_of: Vec<u16>,
    reps: Vec<u16>,
}

/// One cyclic factor of a concrete abelian 2-group: a generating element
/// index and its order.
struct BasisFactor {
    element: usize,
    order: u64,
}

/// Decomposes a concrete abelian 2-group (elements 0..count, identity, and a
/// multiplication closure) into independent cyclic generators with
/// non-increasing orders. Greedy: repeatedly take a coset of maximal order
/// modulo the span so far, represented by an element of minimal order.
fn abelian_basis(
    count: usize,
    identity: usize,
    cmul: &dyn Fn(usize, usize) -> usize,
) -> Vec<BasisFactor> {
    let mut span = vec![false; count];
    span[identity] = true;
    let mut span_elements = vec![identity];
    let mut basis = Vec::new();
    while span_elements.len() < count {
        // order of x modulo the span: least 2^j with x^(2^j) in the span
        let order_mod_span = |x: usize| -> u32 {
            let mut e = x;
            let mut j = 0;
            while !span[e] {
                e = cmul(e, e);
                j += 1;
            }
            j
        };
        let mut best: Option<(u32, usize)> = None;
        for (x, in_span) in span.iter().enumerate() {
            if *in_span {
                continue;
            }
            let j = order_mod_span(x);
            if best.is_none_or(|(bj, _)| j > bj) {
                best = Some((j, x));
            }
        }
        let (j, cosrep) = best.expect("span is proper");
        // among the representatives x*t, one has full order exactly 2^j
        let mut rep = None;
        for &t in &span_elements {
            let candidate = cmul(cosrep, t);
            let mut e = candidate;
            let mut full = 0u32;
            while e != identity {
                e = cmul(e, e);
                full += 1;
            }
            if full == j {
                rep = Some(candidate);
                break;
            }
        }
        let rep = rep.expect("a minimal-order representative exists");
        basis.push(BasisFactor {
            element: rep,
            order: 1u64 << j,
        });
        // extend the span by all products old * rep^i
        let mut new_span = Vec::new();
        for &t in &span_elements {
            let mut p = t;
            for _ in 0..(1u64 << j) {
                if !span[p] {
                    span[p] = true;
                    new_span.push(p);
                }
                p = cmul(p, rep);
            }
        }
        span_elements.extend(new_span);
    }
    basis
}

/// I(H) with a fixed transversal basis and its echelon form for membership
/// tests.
#[derive(Debug, Clone)]
pub struct Ideal {
    subgroup_indices: Vec<u16>,
    basis: Vec<AlgebraElement>,
    echelon: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    field_degree: u32,
}

impl Ideal {
    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    /// F-dimension of the ideal: |G| - |G/H|.
    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn order_log2(&self) -> u32 {
        self.field_degree * self.dimension() as u32
    }

    pub fn order(&self) -> Option<u128> {
        (self.order_log2() < 128).then(|| 1u128 << self.order_log2())
    }

    pub fn subgroup_size(&self) -> usize {
        self.subgroup_indices.len()
    }
}

/// The natural map Psi: FG -> F(G/H), with the quotient algebra it targets.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source_field: FieldSpec,
    source_group: GroupSpec,
    source_size: usize,
    subgroup_indices: Vec<u16>,
    target: GroupAlgebra,
    project: Vec<u16>,
    lift: Vec<u16>,
}

impl QuotientMap {
    pub fn target(&self) -> &GroupAlgebra {
        &self.target
    }

    /// Pushes coefficients along g -> gH, summing within cosets.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if x.field() != self.source_field || x.coeff_bits().len() != self.source_size {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut out = vec![0u8; self.target.dimension()];
        for (i, &t) in self.project.iter().enumerate() {
            out[t as usize] ^= x.coeff_bits()[i];
        }
        Ok(self.target.wrap(out))
    }

    pub(crate) fn project_index(&self, i: usize) -> usize {
        self.project[i] as usize
    }

    /// The involution gH -> sigma(g)H induced on the quotient. Defined when
    /// sigma stabilizes H.
    pub fn induce_involution(
        &self,
        sigma: &InvolutionSpec,
    ) -> Result<InvolutionSpec, AlgebraError> {
        for &h in &self.subgroup_indices {
            let hg = self.source_group.element_at(h as u64)?;
            let image = sigma.apply(&self.source_group, &hg)?;
            let image_idx = self.source_group.element_index(&image)? as u16;
            if self.subgroup_indices.binary_search(&image_idx).is_err() {
                return Err(AlgebraError::SubgroupNotStable);
            }
        }
        let tgroup = self.target.group_spec().clone();
        let mut images = Vec::with_capacity(tgroup.rank());
        for i in 0..tgroup.rank() {
            let gen_idx = tgroup.element_index(&tgroup.generator(i))? as usize;
            let source_rep = self.source_group.element_at(self.lift[gen_idx] as u64)?;
            let image = sigma.apply(&self.source_group, &source_rep)?;
            let image_idx = self.source_group.element_index(&image)? as usize;
            images.push(tgroup.element_at(self.project[image_idx] as u64)?);
        }
        Ok(InvolutionSpec::new(&tgroup, images)?)
    }
}

/// Deduplicated, sorted collection of algebra elements keyed by their
/// coefficient bytes.
pub fn sort_dedup(mut elements: Vec<AlgebraElement>) -> Vec<AlgebraElement> {
    elements.sort_unstable();
    elements.dedup();
    elements
}

/// Builds a membership set over coefficient byte images, the canonical
/// uniqueness key for algebra elements.
pub fn byte_set(elements: &[AlgebraElement]) -> HashSet<Vec<u8>> {
    elements.iter().map(|e| e.coeff_bits().to_vec()).collect()
}
