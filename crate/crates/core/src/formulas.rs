//! Closed-form order predictors for unitary subgroups, kept apart from the
//! enumeration code so agreement between the two is a genuine cross-check.
//!
//! Every predicted order is a power of two; predictions are carried as exact
//! base-2 logarithms so they stay meaningful beyond the u128 range.

use thiserror::Error;

use crate::field::FieldSpec;
use crate::group::{intersect_sorted, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("this formula applies to cyclic groups C_2^n with n > {min_n}")]
    RequiresCyclic { min_n: u32 },
}

/// Which order formula produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionSource {
    /// |V_*(FG)| = |G^2[2]| * q^((|G|+|G[2]|)/2 - 1) for the canonical
    /// involution on any finite abelian 2-group.
    L1,
    /// |V_sigma3(F C_2^n)| = q^(2^(n-1)), n > 2.
    L3,
    /// |V_sigma4(F C_2^n)| = q^(2^(n-1)), elementary abelian, n > 2.
    L6,
    /// The cyclic specialization |V_*(F C_2^n)| = 2 q^(2^(n-1)), n >= 2.
    Sigma2Cyclic,
}

impl PredictionSource {
    pub fn tag(&self) -> &'static str {
        match self {
            PredictionSource::L1 => "L1",
            PredictionSource::L3 => "L3",
            PredictionSource::L6 => "L6",
            PredictionSource::Sigma2Cyclic => "SIGMA2-CYCLIC",
        }
    }
}

/// A predicted subgroup order 2^log2, with its provenance and any structure
/// the formula pins down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPrediction {
    pub log2: u32,
    pub source: PredictionSource,
    /// Set when the formula also determines the group up to isomorphism
    /// (elementary abelian).
    pub elementary_abelian: bool,
}

impl OrderPrediction {
    pub fn value(&self) -> Option<u128> {
        (self.log2 < 128).then(|| 1u128 << self.log2)
    }

    /// Exponent of the predicted group, when the structure is pinned.
    pub fn exponent(&self) -> Option<u64> {
        self.elementary_abelian.then_some(2)
    }

    /// Invariant list of the predicted group, when the structure is pinned.
    pub fn invariants(&self) -> Option<Vec<u64>> {
        self.elementary_abelian.then(|| vec![2; self.log2 as usize])
    }
}

/// Order of the unitary subgroup for the canonical involution g -> g^-1:
/// |G^2[2]| * q^((|G| + |G[2]|)/2 - 1). The torsion and power subgroups are
/// taken from the group module rather than hard-coded per family.
pub fn order_canonical(group: &GroupSpec, field: &FieldSpec) -> OrderPrediction {
    let torsion = group.torsion_subgroup(1);
    let squares = group.power_subgroup(1);
    let squares_torsion = intersect_sorted(&squares, &torsion);
    let g2_2_log2 = (squares_torsion.len() as u64).trailing_zeros();
    let exponent = (group.order() + torsion.len() as u64) / 2 - 1;
    OrderPrediction {
        log2: g2_2_log2 + field.degree() * exponent as u32,
        source: PredictionSource::L1,
        elementary_abelian: false,
    }
}

/// The cyclic-case specialization of the canonical order: 2 q^(2^(n-1)).
pub fn order_sigma2_cyclic(n: u32, field: &FieldSpec) -> Result<OrderPrediction, FormulaError> {
    if n < 2 {
        return Err(FormulaError::RequiresCyclic { min_n: 1 });
    }
    Ok(OrderPrediction {
        log2: 1 + field.degree() * (1 << (n - 1)),
        source: PredictionSource::Sigma2Cyclic,
        elementary_abelian: false,
    })
}

/// q^(2^(n-1)) for sigma3: a -> a^(2^(n-1)-1) on C_2^n, n > 2.
pub fn order_sigma3(n: u32, field: &FieldSpec) -> Result<OrderPrediction, FormulaError> {
    if n <= 2 {
        return Err(FormulaError::RequiresCyclic { min_n: 2 });
    }
    Ok(OrderPrediction {
        log2: field.degree() * (1 << (n - 1)),
        source: PredictionSource::L3,
        elementary_abelian: false,
    })
}

/// q^(2^(n-1)) for sigma4: a -> a^(2^(n-1)+1) on C_2^n, n > 2; the subgroup
/// is elementary abelian.
pub fn order_sigma4(n: u32, field: &FieldSpec) -> Result<OrderPrediction, FormulaError> {
    if n <= 2 {
        return Err(FormulaError::RequiresCyclic { min_n: 2 });
    }
    Ok(OrderPrediction {
        log2: field.degree() * (1 << (n - 1)),
        source: PredictionSource::L6,
        elementary_abelian: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn cyclic(n: u32) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn canonical_orders_frozen_cases() {
        // C_8 over GF(2): 2 * 2^((8+2)/2 - 1) = 32
        assert_eq!(order_canonical(&cyclic(3), &gf(2)).value(), Some(32));
        // C_8 over GF(4): 2 * 4^4 = 512
        assert_eq!(order_canonical(&cyclic(3), &gf(4)).value(), Some(512));
        // C_16 over GF(2): 2 * 2^8 = 512
        assert_eq!(order_canonical(&cyclic(4), &gf(2)).value(), Some(512));
        // C_8 x C_2 over GF(2): |G^2[2]| = 2, 2 * 2^((16+4)/2 - 1) = 2^10
        let c8xc2 = GroupSpec::new(vec![3, 1]).unwrap();
        assert_eq!(order_canonical(&c8xc2, &gf(2)).value(), Some(1 << 10));
    }

    #[test]
    fn sigma3_orders_frozen_cases() {
        assert_eq!(order_sigma3(3, &gf(2)).unwrap().value(), Some(16));
        assert_eq!(order_sigma3(4, &gf(2)).unwrap().value(), Some(256));
        assert_eq!(order_sigma3(3, &gf(8)).unwrap().value(), Some(4096));
        assert_eq!(
            order_sigma3(2, &gf(2)),
            Err(FormulaError::RequiresCyclic { min_n: 2 })
        );
    }

    #[test]
    fn sigma4_orders_frozen_cases() {
        let p = order_sigma4(3, &gf(2)).unwrap();
        assert_eq!(p.value(), Some(16));
        assert_eq!(p.invariants(), Some(vec![2, 2, 2, 2]));
        assert_eq!(p.exponent(), Some(2));

        let p16 = order_sigma4(4, &gf(2)).unwrap();
        assert_eq!(p16.value(), Some(256));
        assert_eq!(p16.invariants().unwrap().len(), 8);

        assert_eq!(order_sigma4(3, &gf(4)).unwrap().value(), Some(256));
        assert!(order_sigma4(2, &gf(2)).is_err());
    }

    #[test]
    fn canonical_specializes_to_cyclic_closed_form() {
        // 2 q^(2^(n-1)) as an exact log2 identity up to n = 6
        for n in 2..=6 {
            for q in [2, 4, 8] {
                let field = gf(q);
                let general = order_canonical(&cyclic(n), &field);
                let special = order_sigma2_cyclic(n, &field).unwrap();
                assert_eq!(general.log2, special.log2, "n={n}, q={q}");
            }
        }
    }

    #[test]
    fn prediction_values_saturate_beyond_u128() {
        let p = OrderPrediction {
            log2: 200,
            source: PredictionSource::L3,
            elementary_abelian: false,
        };
        assert_eq!(p.value(), None);
    }

    #[test]
    fn source_tags_are_stable() {
        assert_eq!(PredictionSource::L1.tag(), "L1");
        assert_eq!(PredictionSource::L3.tag(), "L3");
        assert_eq!(PredictionSource::L6.tag(), "L6");
        assert_eq!(PredictionSource::Sigma2Cyclic.tag(), "SIGMA2-CYCLIC");
    }
}
