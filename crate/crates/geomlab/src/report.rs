//! Verified-inequality records and their serialized forms.
//!
//! A [`BoundReport`] captures one checked instance of an inequality
//! `lhs <= rhs`: the measured left side (always an exact integer count or a
//! squared form of one), the right side as an exact rational, a pass flag,
//! and the experiment parameters that produced it.
//!
//! Reports carry a [`Tier`]. `Blocking` reports come from bounds with an
//! exact proved constant; a failing one means a bug or a violated hypothesis
//! and fails the run. `Tracked` reports come from bounds stated only up to an
//! unspecified constant; they record ratio data and never fail a run.
//!
//! # Serialization
//!
//! One JSON object per line with exactly these fields:
//! `bound_id`, `anchor`, `lhs`, `rhs_num`, `rhs_den`, `holds`, `params`.
//! The numerator and denominator are decimal strings so values never lose
//! precision, `lhs` is a JSON integer, and `params` is a string-to-string map
//! (serialized in sorted key order). The tier travels inside `params` under
//! the key `"tier"`.
//!
//! # Irrational right sides
//!
//! Some bounds have right sides involving square or cube roots. The pass
//! decision for those is made exactly by the caller (comparing squares or
//! cubes of integers); the stored rational is only a tight enclosure of the
//! true right side. [`BoundReport::with_decided`] keeps the record consistent
//! with the exact decision by storing the upper bracket when the bound holds
//! and the lower bracket when it fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

/// Whether a failing report should fail the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Exact-constant theorem; a violation is release-blocking.
    Blocking,
    /// Constant known only up to an unspecified factor; ratios are recorded.
    Tracked,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Blocking => "blocking",
            Tier::Tracked => "tracked",
        }
    }
}

/// One verified inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Short machine-readable name of the inequality.
    pub bound_id: String,
    /// Human-readable name of the theorem or identity being checked.
    pub anchor: String,
    /// Measured left side.
    pub lhs: u64,
    /// Right side as an exact rational (or a decision-consistent enclosure).
    pub rhs: BigRational,
    pub holds: bool,
    pub tier: Tier,
    /// Experiment parameters, free-form.
    pub params: BTreeMap<String, String>,
}

impl BoundReport {
    /// Build a report whose right side is exactly rational; `holds` is
    /// computed from the comparison itself.
    pub fn exact(
        bound_id: &str,
        anchor: &str,
        lhs: u64,
        rhs: BigRational,
        tier: Tier,
    ) -> BoundReport {
        let holds = BigRational::from(BigInt::from(lhs)) <= rhs;
        BoundReport {
            bound_id: bound_id.to_owned(),
            anchor: anchor.to_owned(),
            lhs,
            rhs,
            holds,
            tier,
            params: BTreeMap::new(),
        }
    }

    /// Build a report whose pass flag was decided exactly by the caller and
    /// whose right side is only known through the enclosure `lo..hi`.
    ///
    /// Stores `hi` when the bound holds and `lo` when it fails, so
    /// `holds == (lhs <= stored rhs)` survives the rounding.
    pub fn with_decided(
        bound_id: &str,
        anchor: &str,
        lhs: u64,
        holds: bool,
        enclosure: (BigRational, BigRational),
        tier: Tier,
    ) -> BoundReport {
        let (lo, hi) = enclosure;
        debug_assert!(lo <= hi);
        let rhs = if holds { hi } else { lo };
        BoundReport {
            bound_id: bound_id.to_owned(),
            anchor: anchor.to_owned(),
            lhs,
            rhs,
            holds,
            tier,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    /// `lhs / rhs` when the right side is positive.
    pub fn ratio(&self) -> Option<BigRational> {
        if self.rhs.is_positive() {
            Some(BigRational::from(BigInt::from(self.lhs)) / &self.rhs)
        } else {
            None
        }
    }

    pub fn is_blocking_violation(&self) -> bool {
        self.tier == Tier::Blocking && !self.holds
    }

    /// The serialized JSON object, without a trailing newline.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            bound_id: &'a str,
            anchor: &'a str,
            lhs: u64,
            rhs_num: String,
            rhs_den: String,
            holds: bool,
            params: BTreeMap<&'a str, &'a str>,
        }
        let mut params: BTreeMap<&str, &str> =
            self.params.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        params.insert("tier", self.tier.as_str());
        let row = Row {
            bound_id: &self.bound_id,
            anchor: &self.anchor,
            lhs: self.lhs,
            rhs_num: self.rhs.numer().to_string(),
            rhs_den: self.rhs.denom().to_string(),
            holds: self.holds,
            params,
        };
        serde_json::to_string(&row).expect("report serialization cannot fail")
    }
}

/// Write reports as JSON lines.
pub fn write_jsonl<W: Write>(mut w: W, reports: &[BoundReport]) -> io::Result<()> {
    for r in reports {
        writeln!(w, "{}", r.to_json())?;
    }
    Ok(())
}

/// Format a nonnegative rational as a decimal with `digits` places after the
/// point, rounding half away from zero. Exact long division, no floats.
pub fn decimal(r: &BigRational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (abs.numer() * &scale * 2u32 + abs.denom()) / (abs.denom() * 2u32);
    let (int_part, frac_part) = (&scaled / &scale, &scaled % &scale);
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let mut out = String::new();
    write!(out, "{sign}{int_part}.{frac_part:0>width$}", width = digits as usize).unwrap();
    out
}

/// Per-bound aggregate over a report stream.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub bound_id: String,
    pub instances: u64,
    pub violations: u64,
    pub max_ratio: Option<BigRational>,
    pub min_ratio: Option<BigRational>,
}

/// Group reports by `bound_id` and aggregate instance, violation, and ratio
/// columns. Rows come out sorted by `bound_id`.
pub fn summarize(reports: &[BoundReport]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<&str, SummaryRow> = BTreeMap::new();
    for r in reports {
        let row = rows.entry(&r.bound_id).or_insert_with(|| SummaryRow {
            bound_id: r.bound_id.clone(),
            instances: 0,
            violations: 0,
            max_ratio: None,
            min_ratio: None,
        });
        row.instances += 1;
        if !r.holds {
            row.violations += 1;
        }
        if let Some(ratio) = r.ratio() {
            match &mut row.max_ratio {
                Some(m) if *m >= ratio => {}
                slot => *slot = Some(ratio.clone()),
            }
            match &mut row.min_ratio {
                Some(m) if *m <= ratio => {}
                slot => *slot = Some(ratio),
            }
        }
    }
    rows.into_values().collect()
}

/// Write the CSV summary (header plus one row per bound id). Ratios use six
/// decimal places; bounds with no positive right side leave them empty.
pub fn write_summary_csv<W: Write>(mut w: W, reports: &[BoundReport]) -> io::Result<()> {
    writeln!(w, "bound_id,instances,violations,max_ratio,min_ratio")?;
    for row in summarize(reports) {
        let fmt = |r: &Option<BigRational>| r.as_ref().map_or(String::new(), |v| decimal(v, 6));
        writeln!(
            w,
            "{},{},{},{},{}",
            row.bound_id,
            row.instances,
            row.violations,
            fmt(&row.max_ratio),
            fmt(&row.min_ratio)
        )?;
    }
    Ok(())
}

/// Convenience for building exact rationals from integer numerator and
/// denominator.
pub fn ratio_u64(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Enclose `root = base^(1/deg)` within `1/10^places`, returning rationals
/// `(lo, hi)` with `lo <= root <= hi`. `base` must be nonnegative.
pub fn nth_root_enclosure(base: &BigInt, deg: u32, places: u32) -> (BigRational, BigRational) {
    assert!(!base.is_negative());
    let scale = BigInt::from(10u32).pow(places);
    let scaled = base * scale.pow(deg);
    let root = scaled.nth_root(deg);
    let lo = BigRational::new(root.clone(), scale.clone());
    let hi = if &root.pow(deg) == &scaled {
        lo.clone()
    } else {
        BigRational::new(root + BigInt::one(), scale)
    };
    (lo, hi)
}
