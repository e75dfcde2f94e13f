//! The identity catalog and its verification drivers.
//!
//! Every entry builds one or more [`Leg`]s, each a pair of exact series that
//! must agree coefficient-wise below the order both sides are known to.
//! Quotients are always cleared first, so theta constants are never inverted.

mod build;
mod catalog;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat_strict, int, BigRat};
use crate::parallel;
use crate::qseries::cyclo_doc;

pub use build::{Ctx, Leg};
pub use catalog::catalog;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    AsStated,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsStated => "as-stated",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-stated" => Ok(Variant::AsStated),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

/// Which variants `verify_all` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VariantSelection {
    /// The formula as printed, for every entry.
    #[default]
    AsStated,
    /// The corrected form where one exists, the printed form elsewhere.
    Corrected,
    /// Every variant of every entry.
    All,
}

impl FromStr for VariantSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-stated" => Ok(VariantSelection::AsStated),
            "corrected" => Ok(VariantSelection::Corrected),
            "all" => Ok(VariantSelection::All),
            _ => Err(Error::Parse(format!("unknown variant selection `{s}`"))),
        }
    }
}

pub type Builder = Box<dyn Fn(&Ctx, Variant) -> Result<Vec<Leg>> + Send + Sync>;

pub struct IdentityEntry {
    pub id: &'static str,
    pub title: &'static str,
    /// Where the statement lives in the theory, as a short topic label.
    pub location: &'static str,
    pub variants: Vec<Variant>,
    /// Smallest order at which the comparison is considered meaningful.
    pub min_order: BigRat,
    pub builder: Builder,
}

impl IdentityEntry {
    pub fn has_variant(&self, v: Variant) -> bool {
        self.variants.contains(&v)
    }

    /// The variants `sel` picks for this entry.
    pub fn selected(&self, sel: VariantSelection) -> Vec<Variant> {
        match sel {
            VariantSelection::AsStated => vec![Variant::AsStated],
            VariantSelection::Corrected if self.has_variant(Variant::Corrected) => vec![Variant::Corrected],
            VariantSelection::Corrected => vec![Variant::AsStated],
            VariantSelection::All => self.variants.clone(),
        }
    }
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("location", &self.location)
            .field("variants", &self.variants)
            .finish_non_exhaustive()
    }
}

pub fn lookup(id: &str) -> Result<IdentityEntry> {
    catalog().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// First disagreeing coefficient, in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchDoc {
    pub leg: String,
    pub exponent: String,
    pub lhs: [String; 4],
    pub rhs: [String; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub location: String,
    pub variant: Variant,
    pub passed: bool,
    pub order: String,
    /// Smallest absolute q-exponent below which every leg was compared.
    pub order_checked: Option<String>,
    pub legs: usize,
    pub first_mismatch: Option<MismatchDoc>,
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn order_checked_value(&self) -> Option<BigRat> {
        self.order_checked.as_deref().and_then(|s| crate::exact::parse_rat(s).ok())
    }

    /// One line of text: `PASS E1 [as-stated] order 20 checked < 20/1 (1 leg)`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {:<6} [{}] order {} checked < {} ({} leg{})",
            self.id,
            self.variant,
            self.order,
            self.order_checked.as_deref().unwrap_or("-"),
            self.legs,
            if self.legs == 1 { "" } else { "s" }
        );
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(
                "; leg `{}` differs at q^({}): lhs {} vs rhs {}",
                m.leg,
                m.exponent,
                coeff_text(&m.lhs),
                coeff_text(&m.rhs)
            ));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!("; error: {e}"));
        }
        line
    }
}

/// `[c0, c1, c2, c3]` in the power basis of Q(ζ₅).
fn coeff_text(c: &[String; 4]) -> String {
    format!("[{}]", c.join(", "))
}

fn run_entry(entry: &IdentityEntry, order: &BigRat, variant: Variant) -> IdentityReport {
    let start = Instant::now();
    let mut report = IdentityReport {
        id: entry.id.to_string(),
        location: entry.location.to_string(),
        variant,
        passed: false,
        order: fmt_rat_strict(order),
        order_checked: None,
        legs: 0,
        first_mismatch: None,
        error: None,
        elapsed: Duration::ZERO,
    };
    match (entry.builder)(&Ctx::new(order), variant) {
        Err(e) => report.error = Some(e.to_string()),
        Ok(legs) => {
            report.legs = legs.len();
            let mut checked: Option<BigRat> = None;
            let mut passed = !legs.is_empty();
            for leg in &legs {
                let mut out = leg.pair.compare();
                if leg.pair.lhs.is_zero() && leg.pair.rhs.is_zero() {
                    out.passed = false;
                    out.failure = Some("both sides vanish; the comparison is vacuous".into());
                }
                if let Some(o) = &out.order_checked {
                    checked = Some(match checked {
                        Some(c) if c <= *o => c,
                        _ => o.clone(),
                    });
                }
                if !out.passed && passed {
                    passed = false;
                    if let Some(m) = out.mismatch {
                        report.first_mismatch = Some(MismatchDoc {
                            leg: leg.label.to_string(),
                            exponent: fmt_rat_strict(&m.exponent),
                            lhs: cyclo_doc(&m.lhs),
                            rhs: cyclo_doc(&m.rhs),
                        });
                    }
                    if let Some(f) = out.failure {
                        report.error = Some(format!("leg `{}`: {f}", leg.label));
                    }
                }
            }
            report.passed = passed;
            report.order_checked = checked.map(|c| fmt_rat_strict(&c));
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Verifies one entry at `order` (integer q-orders are the usual choice).
pub fn verify(id: &str, order: &BigRat, variant: Variant) -> Result<IdentityReport> {
    let entry = lookup(id)?;
    if !entry.has_variant(variant) {
        return Err(Error::UnknownVariant { id: id.to_string(), variant: variant.to_string() });
    }
    if *order <= BigRat::from_integer(0.into()) {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    Ok(run_entry(&entry, order, variant))
}

/// Verifies one entry under a selection; `Corrected` falls back to the
/// printed form for entries that have no correction.
pub fn verify_selected(id: &str, order: &BigRat, selection: VariantSelection) -> Result<Vec<IdentityReport>> {
    let entry = lookup(id)?;
    if *order <= BigRat::from_integer(0.into()) {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    Ok(entry.selected(selection).into_iter().map(|v| run_entry(&entry, order, v)).collect())
}

/// Verifies the whole catalog; reports come back in catalog order whatever
/// the parallelism.
pub fn verify_all(order: &BigRat, parallel: bool, selection: VariantSelection) -> Vec<IdentityReport> {
    let entries = catalog();
    let jobs: Vec<(&IdentityEntry, Variant)> =
        entries.iter().flat_map(|e| e.selected(selection).into_iter().map(move |v| (e, v))).collect();
    parallel::map_slice(&jobs, parallel, |(e, v)| run_entry(e, order, *v))
}

/// Default order used by the CLI and the acceptance suite.
pub fn default_order() -> BigRat {
    int(20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn catalog_ids_are_unique_and_plentiful() {
        let cat = catalog();
        assert!(cat.len() >= 40, "{} entries", cat.len());
        let mut ids: Vec<_> = cat.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.iter().all(|e| !e.location.is_empty() && e.has_variant(Variant::AsStated)));
    }

    #[test]
    fn w6_ships_both_variants() {
        let w6 = lookup("W6").unwrap();
        assert_eq!(w6.variants, vec![Variant::AsStated, Variant::Corrected]);
        assert_eq!(lookup("E1").unwrap().variants, vec![Variant::AsStated]);
    }

    #[test]
    fn unknown_id_and_variant_are_errors() {
        assert!(matches!(verify("NO_SUCH", &int(5), Variant::AsStated), Err(Error::UnknownIdentity(_))));
        assert!(matches!(verify("E1", &int(5), Variant::Corrected), Err(Error::UnknownVariant { .. })));
    }

    #[test]
    fn e1_passes_with_report_fields() {
        let r = verify("E1", &int(20), Variant::AsStated).unwrap();
        assert!(r.passed, "{}", r.summary_line());
        assert_eq!(r.order, "20/1");
        assert_eq!(r.order_checked.as_deref(), Some("20/1"));
        assert!(r.first_mismatch.is_none());
    }

    #[test]
    fn selection_falls_back_to_printed_form() {
        let r = verify_selected("E1", &int(5), VariantSelection::Corrected).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].variant, Variant::AsStated);
        let both = verify_selected("T1d", &int(3), VariantSelection::All).unwrap();
        assert_eq!(both.iter().map(|r| r.variant).collect::<Vec<_>>(), vec![Variant::AsStated, Variant::Corrected]);
    }

    #[test]
    fn variant_selection_parsing() {
        assert_eq!("all".parse::<VariantSelection>().unwrap(), VariantSelection::All);
        assert!("both".parse::<VariantSelection>().is_err());
        assert_eq!("corrected".parse::<Variant>().unwrap(), Variant::Corrected);
    }
}
