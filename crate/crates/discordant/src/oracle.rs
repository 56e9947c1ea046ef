//! Membership oracles.
//!
//! A [`SetOracle`] is a pure predicate identifying a subset of a semigroup,
//! labelled for reporting and optionally carrying a closed-form density.
//! Predicates must be deterministic and callable from multiple worker
//! threads; window counts are partitioned across workers and merged by
//! ordered integer summation.

use std::sync::Arc;

use crate::context::{Element, GroupContext};

type Predicate = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

/// A pure membership predicate for a subset A ⊆ G.
#[derive(Clone)]
pub struct SetOracle {
    contains: Predicate,
    label: String,
    known_density: Option<f64>,
}

impl SetOracle {
    pub fn new(
        label: impl Into<String>,
        contains: impl Fn(&Element) -> bool + Send + Sync + 'static,
    ) -> Self {
        SetOracle {
            contains: Arc::new(contains),
            label: label.into(),
            known_density: None,
        }
    }

    pub fn with_density(mut self, density: f64) -> Self {
        assert!((0.0..=1.0).contains(&density));
        self.known_density = Some(density);
        self
    }

    pub fn contains(&self, g: &Element) -> bool {
        (self.contains)(g)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn known_density(&self) -> Option<f64> {
        self.known_density
    }

    /// The whole semigroup.
    pub fn full() -> Self {
        SetOracle::new("all", |_| true).with_density(1.0)
    }

    /// The empty set.
    pub fn empty() -> Self {
        SetOracle::new("empty", |_| false).with_density(0.0)
    }

    /// Even integers in ℤ (or ℕ).
    pub fn evens() -> Self {
        SetOracle::new("evens", |g: &Element| g.as_int() % 2 == 0).with_density(0.5)
    }

    /// Multiples of m.
    pub fn multiples_of(m: i64) -> Self {
        assert!(m >= 1);
        SetOracle::new(format!("{m}Z"), move |g: &Element| g.as_int() % m == 0)
            .with_density(1.0 / m as f64)
    }

    /// The congruence class r + mℤ.
    pub fn congruence_class(m: i64, r: i64) -> Self {
        assert!(m >= 1);
        let r = r.rem_euclid(m);
        SetOracle::new(format!("{m}Z+{r}"), move |g: &Element| {
            g.as_int().rem_euclid(m) == r
        })
        .with_density(1.0 / m as f64)
    }

    pub fn complement(&self) -> Self {
        let inner = self.contains.clone();
        SetOracle {
            contains: Arc::new(move |g| !(inner)(g)),
            label: format!("complement({})", self.label),
            known_density: self.known_density.map(|d| 1.0 - d),
        }
    }

    pub fn union(&self, other: &SetOracle) -> Self {
        let a = self.contains.clone();
        let b = other.contains.clone();
        SetOracle {
            contains: Arc::new(move |g| (a)(g) || (b)(g)),
            label: format!("({} ∪ {})", self.label, other.label),
            known_density: None,
        }
    }

    pub fn intersection(&self, other: &SetOracle) -> Self {
        let a = self.contains.clone();
        let b = other.contains.clone();
        SetOracle {
            contains: Arc::new(move |g| (a)(g) && (b)(g)),
            label: format!("({} ∩ {})", self.label, other.label),
            known_density: None,
        }
    }

    /// The preimage shift g⁻¹A = {x : gx ∈ A}. Requires a cancellative
    /// context (all built-ins qualify).
    pub fn shifted(&self, ctx: &GroupContext, g: &Element) -> Self {
        let inner = self.contains.clone();
        let ctx = ctx.clone();
        let g = g.clone();
        let label = format!("{}⁻¹·{}", g, self.label);
        SetOracle {
            contains: Arc::new(move |x| (inner)(&ctx.op(&g, x))),
            label,
            known_density: self.known_density,
        }
    }

    /// H⁻¹A = ⋃_{h∈H} h⁻¹A = {x : Hx ∩ A ≠ ∅}.
    pub fn preimage_union(&self, ctx: &GroupContext, shifts: &[Element]) -> Self {
        let inner = self.contains.clone();
        let ctx = ctx.clone();
        let shifts = shifts.to_vec();
        let label = format!("H⁻¹·{} (|H|={})", self.label, shifts.len());
        SetOracle {
            contains: Arc::new(move |x| shifts.iter().any(|h| (inner)(&ctx.op(h, x)))),
            label,
            known_density: None,
        }
    }
}

impl std::fmt::Debug for SetOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetOracle")
            .field("label", &self.label)
            .field("known_density", &self.known_density)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_of_evens_is_odds() {
        let ctx = GroupContext::IntAdd;
        let odds = SetOracle::evens().shifted(&ctx, &Element::int(1));
        for k in -20..20 {
            assert_eq!(odds.contains(&Element::int(k)), k % 2 != 0);
        }
    }

    #[test]
    fn identity_shift_is_noop() {
        let ctx = GroupContext::Heisenberg;
        let a = SetOracle::new("corner", |g: &Element| g.coords()[2] % 3 == 0);
        let shifted = a.shifted(&ctx, &ctx.identity());
        for x in ctx.scan_iter().take(500) {
            assert_eq!(a.contains(&x), shifted.contains(&x));
        }
    }

    #[test]
    fn complement_density() {
        let a = SetOracle::multiples_of(4);
        assert_eq!(a.complement().known_density(), Some(0.75));
    }
}
