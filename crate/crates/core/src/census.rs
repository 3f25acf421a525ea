//! Sampling of extension classes at fixed splitting type and the resulting
//! stratum histogram, with hard checks of the structural bounds.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, LaurentZU};
use crate::bundle::{canonical_from_parts, embed_next, CanonicalBundle};
use crate::direct_image::{height, width, Bounds};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramEntry {
    pub width: u64,
    pub height: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub width: u64,
    pub height: u64,
    pub charge: u64,
}

/// Frequencies of (w, h) strata over a coefficient sample, plus the forced
/// probes. `violations` must stay empty for a healthy report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub j: u32,
    pub samples: u64,
    pub range: i64,
    pub seed: Option<u64>,
    pub exhaustive: bool,
    pub histogram: Vec<HistogramEntry>,
    pub violations: Vec<String>,
    pub split_probe: ProbeResult,
    pub phi_probe: Option<ProbeResult>,
    /// True when every maximal-charge occurrence came from the zero class.
    pub max_charge_only_split: bool,
}

impl CensusReport {
    pub fn histogram_map(&self) -> BTreeMap<(u64, u64), u64> {
        self.histogram
            .iter()
            .map(|e| ((e.width, e.height), e.count))
            .collect()
    }
}

/// Deterministic seeded sample of canonical classes: one independent ChaCha
/// substream per sample, coefficients uniform on [-range, range] over the
/// window monomials in lexicographic order.
pub fn sample_polynomials(j: u32, n: u64, seed: u64, range: i64) -> Vec<CanonicalBundle> {
    let window = CanonicalBundle::window(j);
    (0..n)
        .map(|idx| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(idx + 1);
            let mut p = LaurentZU::zero();
            for &(i, l) in &window {
                let c = rng.gen_range(-range..=range);
                p.add_term(i, l, rat(c));
            }
            canonical_from_parts(j, p).expect("window monomials are canonical")
        })
        .collect()
}

fn all_coefficient_vectors(j: u32, range: i64) -> Result<Vec<CanonicalBundle>> {
    let window = CanonicalBundle::window(j);
    let base = (2 * range + 1) as u64;
    let total = base
        .checked_pow(window.len() as u32)
        .filter(|&t| t <= 1_000_000)
        .ok_or_else(|| {
            crate::error::Error::InvariantViolation("exhaustive sweep too large".into())
        })?;
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut p = LaurentZU::zero();
        for &(i, l) in &window {
            let digit = (code % base) as i64 - range;
            code /= base;
            p.add_term(i, l, rat(digit));
        }
        out.push(canonical_from_parts(j, p).expect("window monomials are canonical"));
    }
    Ok(out)
}

fn numbers_for(j: u32, p: &LaurentZU, bounds: &Bounds) -> Result<(u64, u64)> {
    Ok((width(j, p, bounds)?, height(j, p)?))
}

fn run_census(
    j: u32,
    classes: Vec<CanonicalBundle>,
    seed: Option<u64>,
    range: i64,
    exhaustive: bool,
    bounds: &Bounds,
) -> Result<CensusReport> {
    let results: Vec<Result<(u64, u64, bool)>> = classes
        .par_iter()
        .map(|b| {
            let (w, h) = numbers_for(j, b.p(), bounds)?;
            Ok((w, h, b.p().is_zero()))
        })
        .collect();

    let mut histogram: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut max_charge_only_split = true;
    let j64 = j as u64;
    let mut record = |w: u64, h: u64, is_zero: bool, label: String, violations: &mut Vec<String>| {
        *histogram.entry((w, h)).or_insert(0) += 1;
        let k = w + h;
        if w < 1 || h < j64 - 1 || k < j64 || k > j64 * j64 {
            violations.push(format!("{label}: (w, h) = ({w}, {h}) violates the bounds"));
        }
        if k == j64 * j64 && !is_zero {
            max_charge_only_split = false;
        }
    };

    for (idx, r) in results.into_iter().enumerate() {
        let (w, h, is_zero) = r?;
        record(w, h, is_zero, format!("sample {idx}"), &mut violations);
    }

    // forced probes: the split class, and for j >= 2 an image of the
    // lower-type moduli under (j-1, p) -> (j, z u^2 p)
    let (sw, sh) = numbers_for(j, &LaurentZU::zero(), bounds)?;
    record(sw, sh, true, "split probe".into(), &mut violations);
    let split_probe = ProbeResult {
        width: sw,
        height: sh,
        charge: sw + sh,
    };
    if split_probe.charge != j64 * j64 {
        violations.push(format!(
            "split probe charge {} is not j^2 = {}",
            split_probe.charge,
            j64 * j64
        ));
    }

    let phi_probe = if j >= 2 {
        let probe_seed = seed.unwrap_or(0) ^ 0x9E37_79B9_7F4A_7C15;
        let source = sample_polynomials(j - 1, 1, probe_seed, range);
        let image = embed_next(&source[0]);
        let (w, h) = numbers_for(j, image.p(), bounds)?;
        record(
            w,
            h,
            image.p().is_zero(),
            "phi probe".into(),
            &mut violations,
        );
        Some(ProbeResult {
            width: w,
            height: h,
            charge: w + h,
        })
    } else {
        None
    };

    Ok(CensusReport {
        j,
        samples: classes.len() as u64,
        range,
        seed,
        exhaustive,
        histogram: histogram
            .into_iter()
            .map(|((w, h), count)| HistogramEntry {
                width: w,
                height: h,
                count,
            })
            .collect(),
        violations,
        split_probe,
        phi_probe,
        max_charge_only_split,
    })
}

/// Seeded census of `n` samples.
pub fn census(j: u32, n: u64, seed: u64, range: i64, bounds: &Bounds) -> Result<CensusReport> {
    let classes = sample_polynomials(j, n, seed, range);
    run_census(j, classes, Some(seed), range, false, bounds)
}

/// Exhaustive sweep over all coefficient vectors in [-range, range]^J.
pub fn census_exhaustive(j: u32, range: i64, bounds: &Bounds) -> Result<CensusReport> {
    let classes = all_coefficient_vectors(j, range)?;
    run_census(j, classes, None, range, true, bounds)
}

/// True iff the report is violation-free, the split probe attains the
/// maximal charge j^2, and nothing else does.
pub fn verify_stratification_bounds(report: &CensusReport) -> bool {
    report.violations.is_empty()
        && report.split_probe.charge == (report.j as u64).pow(2)
        && report.max_charge_only_split
}
