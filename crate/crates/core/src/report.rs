//! Identity reports: the outcome of comparing two independently expanded sides.

use serde::Serialize;

use crate::series::{Coefficient, LaurentSeries};

/// Coefficients of the two sides at the first exponent where they disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exp: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub pass: bool,
    pub checked_order: i64,
    pub first_mismatch: Option<Mismatch>,
    pub runtime_ms: u64,
    pub notes: Vec<String>,
}

/// `num/den` rendering used in every machine-readable output.
pub fn format_coeff(c: &Coefficient) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, checked_order: i64) -> Self {
        IdentityReport {
            id: id.into(),
            pass: true,
            checked_order,
            first_mismatch: None,
            runtime_ms: 0,
            notes: Vec::new(),
        }
    }

    /// Compares `lhs` and `rhs` on `[min exponent, order)`, clipped to what both
    /// sides actually guarantee. A mismatch report carries a five-coefficient
    /// window from each side around the first divergence.
    pub fn compare(id: impl Into<String>, lhs: &LaurentSeries, rhs: &LaurentSeries, order: i64) -> Self {
        let lhs = lhs.truncate(order);
        let rhs = rhs.truncate(order);
        let checked = lhs.order().min(rhs.order());
        let mut report = IdentityReport::new(id, checked);
        if checked < order {
            report.notes.push(format!(
                "precision shortfall: requested order {order}, sides known below {checked}"
            ));
        }
        for (side, s) in [("lhs", &lhs), ("rhs", &rhs)] {
            if !s.denominator_is_power_of_two() {
                report
                    .notes
                    .push(format!("{side} has a non-dyadic denominator {}", s.denominator()));
            }
        }
        if let Some((exp, a, b)) = lhs.first_difference(&rhs) {
            report.fail_at(exp, &a, &b);
            let window = |s: &LaurentSeries| {
                s.coeff_range(exp - 2, exp + 3)
                    .iter()
                    .map(format_coeff)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            report.notes.push(format!(
                "window q^{}..q^{}: lhs [{}] rhs [{}]",
                exp - 2,
                exp + 2,
                window(&lhs),
                window(&rhs)
            ));
        }
        report
    }

    /// Checks that `series` vanishes below `order`.
    pub fn vanishes(id: impl Into<String>, series: &LaurentSeries, order: i64) -> Self {
        Self::compare(id, series, &LaurentSeries::zero(order), order)
    }

    pub fn fail_at(&mut self, exp: i64, lhs: &Coefficient, rhs: &Coefficient) {
        self.pass = false;
        self.first_mismatch = Some(Mismatch {
            exp,
            lhs: format_coeff(lhs),
            rhs: format_coeff(rhs),
        });
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Folds several sub-checks into one report: the first failing sub-check
    /// decides the mismatch, the checked order is the weakest one.
    pub fn merge(id: impl Into<String>, parts: Vec<IdentityReport>) -> Self {
        let checked = parts.iter().map(|r| r.checked_order).min().unwrap_or(0);
        let mut report = IdentityReport::new(id, checked);
        for part in parts {
            if report.pass && !part.pass {
                report.pass = false;
                report.first_mismatch = part.first_mismatch.clone();
                report.notes.push(format!("failing case: {}", part.id));
            }
            report.notes.extend(part.notes);
        }
        report
    }

    pub fn mismatch_exp(&self) -> Option<i64> {
        self.first_mismatch.as_ref().map(|m| m.exp)
    }
}
