//! Exhaustive checks of the structural facts about units and zero divisors
//! of `Z_{p^n}` that the construction depends on, plus the five-way
//! classification of coefficient pairs.
//!
//! Every report enumerates its whole quantified domain; nothing is sampled.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::ring::{ElementClass, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// Sums and products of zero divisors are zero or zero divisors.
    ZdClosure,
    /// A unit plus a zero divisor is a unit.
    UnitZdSum,
    /// `{d + d_j}` is every zero divisor except `d`, plus zero, without repeats.
    ZdTranslates,
    /// `{1 + u*u_j}` hits zero and every zero divisor exactly once.
    UnitOrbit,
    /// Each unit `u` has exactly one unit `u'` with `1 + u*u' = 0`.
    UniqueNegPartner,
    /// Each zero divisor has exactly one zero-divisor additive inverse.
    UniqueAdditivePartner,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::ZdClosure,
        LemmaId::UnitZdSum,
        LemmaId::ZdTranslates,
        LemmaId::UnitOrbit,
        LemmaId::UniqueNegPartner,
        LemmaId::UniqueAdditivePartner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::ZdClosure => "zd_closure",
            LemmaId::UnitZdSum => "unit_zd_sum",
            LemmaId::ZdTranslates => "zd_translates",
            LemmaId::UnitOrbit => "unit_orbit",
            LemmaId::UniqueNegPartner => "unique_neg_partner",
            LemmaId::UniqueAdditivePartner => "unique_additive_partner",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one exhaustive sweep. When `holds` is false, `witness` holds
/// the elements that broke it, in the order the sweep quantified them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub holds: bool,
    pub witness: Option<Vec<u64>>,
    pub cases_checked: u64,
}

impl LemmaReport {
    fn new(lemma: LemmaId) -> Self {
        Self {
            lemma,
            holds: true,
            witness: None,
            cases_checked: 0,
        }
    }

    fn fail(&mut self, witness: Vec<u64>) {
        if self.holds {
            self.holds = false;
            self.witness = Some(witness);
        }
    }
}

pub fn verify_zd_closure(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    let mut report = LemmaReport::new(LemmaId::ZdClosure);
    for &a in &zds {
        for &b in &zds {
            report.cases_checked += 1;
            let sum = ring.add(a, b);
            let prod = ring.mul(a, b);
            if ring.is_unit(sum) || ring.is_unit(prod) {
                report.fail(vec![a, b]);
            }
        }
    }
    Ok(report)
}

pub fn verify_unit_zd_sum(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    let mut report = LemmaReport::new(LemmaId::UnitZdSum);
    for u in ring.units() {
        for &d in &zds {
            report.cases_checked += 1;
            if !ring.is_unit(ring.add(u, d)) {
                report.fail(vec![u, d]);
            }
        }
    }
    Ok(report)
}

/// The list `[d + d_j for d_j in zero_divisors]`, in the zero divisors'
/// ascending order.
pub fn zd_translates(ring: &RingSpec, d: u64) -> Result<Vec<u64>> {
    ring.require_prime_power()?;
    ring.expect_class(d, ElementClass::ZeroDivisor)?;
    Ok(ring
        .zero_divisors()
        .into_iter()
        .map(|dj| ring.add(d, dj))
        .collect())
}

/// The list `[1 + u*u_j for u_j in units]`, in the units' ascending order.
pub fn unit_orbit(ring: &RingSpec, u: u64) -> Result<Vec<u64>> {
    ring.require_prime_power()?;
    ring.expect_class(u, ElementClass::Unit)?;
    Ok(ring
        .units()
        .into_iter()
        .map(|uj| ring.add(1, ring.mul(u, uj)))
        .collect())
}

fn multiplicities(ring: &RingSpec, values: &[u64]) -> Vec<u32> {
    let mut counts = vec![0u32; ring.modulus() as usize];
    for &v in values {
        counts[v as usize] += 1;
    }
    counts
}

/// Checks every translate set: it must be exactly `(D \ {d}) ∪ {0}` with no
/// repeated element.
pub fn verify_zd_translates(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    let mut report = LemmaReport::new(LemmaId::ZdTranslates);
    for &d in &zds {
        let translates = zd_translates(ring, d)?;
        report.cases_checked += translates.len() as u64;
        let counts = multiplicities(ring, &translates);
        let ok = counts[0] == 1
            && counts[d as usize] == 0
            && zds
                .iter()
                .filter(|&&x| x != d)
                .all(|&x| counts[x as usize] == 1)
            && translates.iter().all(|&x| !ring.is_unit(x));
        if !ok {
            report.fail(vec![d]);
        }
    }
    Ok(report)
}

/// Checks every orbit set: zero and each zero divisor occur exactly once,
/// and all remaining members are distinct units.
pub fn verify_unit_orbits(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    let mut report = LemmaReport::new(LemmaId::UnitOrbit);
    for u in ring.units() {
        let orbit = unit_orbit(ring, u)?;
        report.cases_checked += orbit.len() as u64;
        let counts = multiplicities(ring, &orbit);
        let ok = counts[0] == 1
            && zds.iter().all(|&d| counts[d as usize] == 1)
            && counts.iter().all(|&c| c <= 1);
        if !ok {
            report.fail(vec![u]);
        }
    }
    Ok(report)
}

pub fn verify_unique_neg_partner(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let units = ring.units();
    let mut report = LemmaReport::new(LemmaId::UniqueNegPartner);
    for &u in &units {
        let partner = ring.neg_unit_partner(u)?;
        let mut solutions = 0;
        for &other in &units {
            report.cases_checked += 1;
            if ring.add(1, ring.mul(u, other)) == 0 {
                solutions += 1;
                if other != partner {
                    report.fail(vec![u, partner, other]);
                }
            }
        }
        if solutions != 1 || !ring.is_unit(partner) {
            report.fail(vec![u, partner]);
        }
    }
    Ok(report)
}

pub fn verify_unique_additive_partner(ring: &RingSpec) -> Result<LemmaReport> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    let mut report = LemmaReport::new(LemmaId::UniqueAdditivePartner);
    for &d in &zds {
        let partner = ring.additive_partner(d)?;
        let mut solutions = 0;
        for &other in &zds {
            report.cases_checked += 1;
            if ring.add(d, other) == 0 {
                solutions += 1;
                if other != partner {
                    report.fail(vec![d, partner, other]);
                }
            }
        }
        if solutions != 1 {
            report.fail(vec![d, partner]);
        }
    }
    Ok(report)
}

/// All six structural reports, in [`LemmaId::ALL`] order.
pub fn verify_all(ring: &RingSpec) -> Result<Vec<LemmaReport>> {
    Ok(vec![
        verify_zd_closure(ring)?,
        verify_unit_zd_sum(ring)?,
        verify_zd_translates(ring)?,
        verify_unit_orbits(ring)?,
        verify_unique_neg_partner(ring)?,
        verify_unique_additive_partner(ring)?,
    ])
}

/// The five shapes every coefficient pair reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairType {
    /// `k (1, 0)`
    E1,
    /// `k (0, 1)`
    E2,
    /// `k (1, u)`
    UnitCol,
    /// `k (1, d)`
    DCol,
    /// `k (d, 1)`
    DStarCol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairDecomposition {
    pub pair_type: PairType,
    pub scalar: u64,
    pub canonical: (u64, u64),
}

impl PairDecomposition {
    pub fn reconstruct(&self, ring: &RingSpec) -> (u64, u64) {
        (
            ring.mul(self.scalar, self.canonical.0),
            ring.mul(self.scalar, self.canonical.1),
        )
    }

    /// Whether `canonical` has the shape its `pair_type` promises.
    pub fn shape_matches(&self, ring: &RingSpec) -> bool {
        let (a, b) = self.canonical;
        match self.pair_type {
            PairType::E1 => (a, b) == (1, 0),
            PairType::E2 => (a, b) == (0, 1),
            PairType::UnitCol => a == 1 && ring.classify(b) == ElementClass::Unit,
            PairType::DCol => a == 1 && ring.classify(b) == ElementClass::ZeroDivisor,
            PairType::DStarCol => b == 1 && ring.classify(a) == ElementClass::ZeroDivisor,
        }
    }
}

/// Writes `(c1, c2)` as `scalar * canonical`.
///
/// Case order: `c1 = 0` first (so `(0, 0)` is `0 * (0, 1)`), then `c2 = 0`,
/// then by the classes of the two entries. When both are zero divisors the
/// smaller valuation is factored out; equal valuations give a unit column.
pub fn classify_pair(ring: &RingSpec, c1: u64, c2: u64) -> Result<PairDecomposition> {
    let (p, _) = ring.require_prime_power()?;
    let (c1, c2) = (ring.reduce(c1), ring.reduce(c2));
    let decomposition = |pair_type, scalar, canonical| PairDecomposition {
        pair_type,
        scalar,
        canonical,
    };
    if c1 == 0 {
        return Ok(decomposition(PairType::E2, c2, (0, 1)));
    }
    if c2 == 0 {
        return Ok(decomposition(PairType::E1, c1, (1, 0)));
    }
    let d = match (ring.is_unit(c1), ring.is_unit(c2)) {
        (true, true) => decomposition(PairType::UnitCol, c1, (1, ring.mul(c2, ring.inv(c1)?))),
        (true, false) => decomposition(PairType::DCol, c1, (1, ring.mul(c2, ring.inv(c1)?))),
        (false, true) => decomposition(PairType::DStarCol, c2, (ring.mul(c1, ring.inv(c2)?), 1)),
        (false, false) => {
            let v1 = ring.valuation(c1)?;
            let v2 = ring.valuation(c2)?;
            if v1.k < v2.k {
                let tail = ring.mul(
                    ring.mul(ring.pow(p, v2.k - v1.k), v2.unit_part),
                    ring.inv(v1.unit_part)?,
                );
                decomposition(PairType::DCol, c1, (1, tail))
            } else if v2.k < v1.k {
                let head = ring.mul(
                    ring.mul(ring.pow(p, v1.k - v2.k), v1.unit_part),
                    ring.inv(v2.unit_part)?,
                );
                decomposition(PairType::DStarCol, c2, (head, 1))
            } else {
                let tail = ring.mul(v2.unit_part, ring.inv(v1.unit_part)?);
                decomposition(PairType::UnitCol, c1, (1, tail))
            }
        }
    };
    Ok(d)
}
