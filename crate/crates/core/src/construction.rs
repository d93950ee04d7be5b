//! Generator-matrix builders over `Z_{p^n}`.
//!
//! The canonical matrix is `G = (I2 | U | D* | D | A)`:
//!
//! * `I2`: the columns `(1,0)` and `(0,1)`
//! * `U`: `(1,u)` for every unit `u`
//! * `D*`: `(d,1)` for every zero divisor `d`
//! * `D`: `(1,d)` for every zero divisor `d`
//! * `A`: arbitrary extra columns supplied by the caller
//!
//! Units and zero divisors appear in ascending order, so the first
//! `p^n + p^{n-1}` columns are fully determined by the ring.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{Block, BlockSpan, GeneratorMatrix};
use crate::ring::{ElementClass, RingSpec};
use crate::structure::classify_pair;

/// One of the five column shapes of the canonical prefix, with its
/// defining parameter where it has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    E1,
    E2,
    UnitCol(u64),
    DStarCol(u64),
    DCol(u64),
}

impl ColumnKind {
    /// The representative column; the kind covers all its unit multiples.
    pub fn canonical(self) -> (u64, u64) {
        match self {
            ColumnKind::E1 => (1, 0),
            ColumnKind::E2 => (0, 1),
            ColumnKind::UnitCol(u) => (1, u),
            ColumnKind::DStarCol(d) => (d, 1),
            ColumnKind::DCol(d) => (1, d),
        }
    }

    fn validate(self, ring: &RingSpec) -> Result<()> {
        match self {
            ColumnKind::E1 | ColumnKind::E2 => Ok(()),
            ColumnKind::UnitCol(u) => {
                ring.element(u)?;
                ring.expect_class(u, ElementClass::Unit)
            }
            ColumnKind::DStarCol(d) | ColumnKind::DCol(d) => {
                ring.element(d)?;
                ring.expect_class(d, ElementClass::ZeroDivisor)
            }
        }
    }

    /// Whether `(a, b) = s * canonical()` for some unit `s`.
    pub fn is_unit_multiple(self, ring: &RingSpec, a: u64, b: u64) -> Result<bool> {
        let decomposition = classify_pair(ring, a, b)?;
        Ok(decomposition.canonical == self.canonical() && ring.is_unit(decomposition.scalar))
    }
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnKind::E1 => f.write_str("e1"),
            ColumnKind::E2 => f.write_str("e2"),
            ColumnKind::UnitCol(u) => write!(f, "unit:{u}"),
            ColumnKind::DStarCol(d) => write!(f, "dstar:{d}"),
            ColumnKind::DCol(d) => write!(f, "d:{d}"),
        }
    }
}

impl FromStr for ColumnKind {
    type Err = String;

    /// Parses `e1`, `e2`, `unit:U`, `dstar:D` or `d:D`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let param = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| format!("`{v}` is not a non-negative integer"))
        };
        match s.split_once(':') {
            None if s == "e1" => Ok(ColumnKind::E1),
            None if s == "e2" => Ok(ColumnKind::E2),
            Some(("unit", v)) => Ok(ColumnKind::UnitCol(param(v)?)),
            Some(("dstar", v)) => Ok(ColumnKind::DStarCol(param(v)?)),
            Some(("d", v)) => Ok(ColumnKind::DCol(param(v)?)),
            _ => Err(format!(
                "unknown column kind `{s}` (expected e1, e2, unit:U, dstar:D or d:D)"
            )),
        }
    }
}

/// One unit per column of the canonical prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingVector(Vec<u64>);

impl ScalingVector {
    pub fn new(ring: &RingSpec, scalars: Vec<u64>) -> Result<Self> {
        for &s in &scalars {
            ring.element(s)?;
            ring.expect_class(s, ElementClass::Unit)?;
        }
        Ok(Self(scalars))
    }

    /// A uniformly random unit for every canonical column.
    pub fn random<R: Rng + ?Sized>(ring: &RingSpec, rng: &mut R) -> Result<Self> {
        let len = canonical_len(ring)?;
        let units = ring.units();
        let scalars = (0..len)
            .map(|_| units[rng.gen_range(0..units.len())])
            .collect();
        Ok(Self(scalars))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Componentwise inverses: the diagonal of the matrix that undoes the
    /// scaling.
    pub fn inverse(&self, ring: &RingSpec) -> Result<Self> {
        let inv = self.0.iter().map(|&s| ring.inv(s)).collect::<Result<_>>()?;
        Ok(Self(inv))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBlocks {
    pub units: Vec<(u64, u64)>,
    pub dstar: Vec<(u64, u64)>,
    pub d: Vec<(u64, u64)>,
}

pub fn canonical_blocks(ring: &RingSpec) -> Result<CanonicalBlocks> {
    ring.require_prime_power()?;
    let zds = ring.zero_divisors();
    Ok(CanonicalBlocks {
        units: ring.units().into_iter().map(|u| (1, u)).collect(),
        dstar: zds.iter().map(|&d| (d, 1)).collect(),
        d: zds.iter().map(|&d| (1, d)).collect(),
    })
}

/// `p^n + p^{n-1}`, the number of canonical columns.
pub fn canonical_len(ring: &RingSpec) -> Result<usize> {
    let (p, n) = ring.require_prime_power()?;
    Ok((p.pow(n) + p.pow(n - 1)) as usize)
}

fn check_extra(ring: &RingSpec, extra: &[(u64, u64)]) -> Result<()> {
    for &(a, b) in extra {
        ring.element(a)?;
        ring.element(b)?;
    }
    Ok(())
}

type Group = (Block, Vec<(u64, u64)>);

/// Canonical prefix as `(block, columns)` groups, in layout order.
fn canonical_groups(ring: &RingSpec) -> Result<Vec<Group>> {
    let blocks = canonical_blocks(ring)?;
    Ok(vec![
        (Block::I2, vec![(1, 0), (0, 1)]),
        (Block::U, blocks.units),
        (Block::DStar, blocks.dstar),
        (Block::D, blocks.d),
    ])
}

fn assemble(ring: &RingSpec, groups: Vec<Group>, extra: &[(u64, u64)]) -> Result<GeneratorMatrix> {
    let mut columns = Vec::new();
    let mut layout = Vec::new();
    let groups = groups
        .into_iter()
        .chain(std::iter::once((Block::A, extra.to_vec())));
    for (block, cols) in groups {
        if cols.is_empty() {
            continue;
        }
        let start = columns.len();
        columns.extend(cols);
        layout.push(BlockSpan {
            block,
            columns: start..columns.len(),
        });
    }
    Ok(GeneratorMatrix::from_columns(ring.clone(), &columns)?.with_layout(layout))
}

/// The canonical matrix `(I2 | U | D* | D | A)` with `A = extra`.
pub fn build_g(ring: &RingSpec, extra: &[(u64, u64)]) -> Result<GeneratorMatrix> {
    check_extra(ring, extra)?;
    assemble(ring, canonical_groups(ring)?, extra)
}

/// The canonical matrix with canonical column `i` multiplied by
/// `scaling[i]`. The `A` block is left unscaled.
pub fn build_g_scaled(
    ring: &RingSpec,
    scaling: &ScalingVector,
    extra: &[(u64, u64)],
) -> Result<GeneratorMatrix> {
    let prefix = canonical_len(ring)?;
    if scaling.as_slice().len() != prefix {
        return Err(Error::Shape(format!(
            "scaling has {} entries but the canonical prefix has {prefix} columns",
            scaling.as_slice().len()
        )));
    }
    let mut scalars = scaling.as_slice().to_vec();
    scalars.resize(prefix + extra.len(), 1);
    build_g(ring, extra)?.scale_columns(&scalars)
}

/// The canonical matrix with every column of kind `omit` removed.
///
/// `extra` may not contain a unit multiple of the omitted column, since
/// that would put the kind straight back in.
pub fn build_g_omitted(
    ring: &RingSpec,
    omit: ColumnKind,
    extra: &[(u64, u64)],
) -> Result<GeneratorMatrix> {
    ring.require_prime_power()?;
    omit.validate(ring)?;
    check_extra(ring, extra)?;
    for (index, &(a, b)) in extra.iter().enumerate() {
        if omit.is_unit_multiple(ring, a, b)? {
            return Err(Error::OmissionViolated {
                index,
                a,
                b,
                omitted: omit.to_string(),
            });
        }
    }
    let target = omit.canonical();
    let groups = canonical_groups(ring)?
        .into_iter()
        .map(|(block, cols)| (block, cols.into_iter().filter(|&c| c != target).collect()))
        .collect();
    assemble(ring, groups, extra)
}

/// Reorders columns so that output column `i` is input column
/// `permutation[i]` (0-based). The block layout is dropped.
pub fn shuffle_columns(g: &GeneratorMatrix, permutation: &[usize]) -> Result<GeneratorMatrix> {
    let m = g.len();
    let mut seen = vec![false; m];
    if permutation.len() != m {
        return Err(Error::Shape(format!(
            "permutation has {} entries for {m} columns",
            permutation.len()
        )));
    }
    for &i in permutation {
        if i >= m || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Shape(format!(
                "permutation is not a bijection on 0..{m}"
            )));
        }
    }
    let columns: Vec<_> = permutation.iter().map(|&i| g.column(i)).collect();
    GeneratorMatrix::from_columns(g.ring().clone(), &columns)
}

/// `count` uniformly random columns over the ring.
pub fn random_columns<R: Rng + ?Sized>(
    ring: &RingSpec,
    count: usize,
    rng: &mut R,
) -> Vec<(u64, u64)> {
    let m = ring.modulus();
    (0..count)
        .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m)))
        .collect()
}

/// The `A` block of the worked `Z_4` example.
pub const Z4_EXAMPLE_EXTRA: [(u64, u64); 3] = [(2, 0), (0, 2), (2, 2)];

/// Fixed matrices used as reference fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    /// The 2x9 minimal code over `Z_4`.
    Z4Example,
    /// The 2x10 non-minimal code over `Z_6`.
    Z6Counterexample,
    /// A 2x6 minimal code over `Z_3` that fails the weight-ratio test.
    Z3Conclusion,
}

impl Demo {
    pub const ALL: [Demo; 3] = [Demo::Z4Example, Demo::Z6Counterexample, Demo::Z3Conclusion];

    pub fn name(self) -> &'static str {
        match self {
            Demo::Z4Example => "z4",
            Demo::Z6Counterexample => "z6",
            Demo::Z3Conclusion => "z3-conclusion",
        }
    }
}

impl FromStr for Demo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Demo::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown demo `{s}` (expected z4, z6 or z3-conclusion)"))
    }
}

pub fn demo_matrix(demo: Demo) -> GeneratorMatrix {
    let (modulus, row1, row2): (u64, &[u64], &[u64]) = match demo {
        Demo::Z4Example => (
            4,
            &[1, 0, 1, 1, 2, 1, 2, 0, 2],
            &[0, 1, 1, 3, 1, 2, 0, 2, 2],
        ),
        Demo::Z6Counterexample => (
            6,
            &[1, 0, 1, 1, 1, 1, 1, 2, 3, 4],
            &[0, 1, 1, 5, 2, 3, 4, 1, 1, 1],
        ),
        Demo::Z3Conclusion => (3, &[1, 0, 1, 1, 1, 1], &[0, 1, 1, 2, 2, 2]),
    };
    let ring = RingSpec::new(modulus).expect("fixture modulus is valid");
    GeneratorMatrix::new(ring, row1.to_vec(), row2.to_vec()).expect("fixture entries are residues")
}
