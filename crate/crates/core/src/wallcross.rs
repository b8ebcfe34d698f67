//! Wall-crossing pipelines for pair moduli `M^alpha(d, chi)`.
//!
//! A pipeline starts at `alpha = inf`, where the moduli is the relative
//! Hilbert scheme `B(d, n)`, and crosses every wall above the target `alpha`
//! in decreasing order. At a wall with the single splitting
//! `(1,(d1,chi1)) + (0,(d2,chi2))` the locus of extensions with the sheaf as
//! subobject, a `P^{ext1(L1,L2)-1}`-bundle, is replaced by the extensions in
//! the other direction, a `P^{ext1(L2,L1)-1}`-bundle, over
//! `M^alpha(d1,chi1) x M(d2,chi2)`:
//!
//! ```text
//! P_after = P_before + (P(P^{fiber_after}) - P(P^{fiber_before})) * P(M^alpha(d1,chi1)) * P(M(d2,chi2))
//! ```
//!
//! Fiber dimensions always come from [`crate::extcalc`]. The pipeline is
//! generic over a [`Weight`]: Poincaré polynomials ([`QPoly`]) or Euler
//! numbers ([`Euler`]), the latter computed through integer-only routes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{self, relhilb_fiber_dim, CatalogError, SpaceLabel};
use crate::euler3::{self, StratumName, StratumTerm};
use crate::exactalg::{AlgError, QPoly, Rational};
use crate::extcalc::{in_bundle_regime, wall_ext_profile, ExtError};
use crate::pairclasses::{find_walls, is_verified_degree, n_points, PairError, Wall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallCrossError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("M^inf({d},{chi}) is outside the projective-bundle regime (n = {n} > d+1)")]
    OutsideBundleRegime { d: i64, chi: i64, n: i64 },
    #[error("M^inf({d},{chi}) is empty (n = {n} < 0)")]
    EmptyModuli { d: i64, chi: i64, n: i64 },
    #[error("alpha = {alpha} lies on a wall of ({d},{chi}); pick a value off the wall")]
    OnWall { d: i64, chi: i64, alpha: Rational },
    #[error(
        "wall alpha = {alpha} of ({d},{chi}) has several splitting types or a length-3 filtration; \
         {mode} mode cannot cross it (the flip is not a projective-bundle replacement; \
         only Euler numbers of the (4,3) wall at alpha = 1 are supported)"
    )]
    RequiresStratification { d: i64, chi: i64, alpha: Rational, mode: Mode },
    #[error("sheaf moduli are only assembled for chi = 1 or chi = -1, got chi = {0}")]
    SheafChi(i64),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Coarse classification used for CLI exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Unsupported,
}

impl WallCrossError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            WallCrossError::Invalid(_) | WallCrossError::Pair(_) | WallCrossError::Alg(_) => {
                ErrorKind::InvalidInput
            }
            WallCrossError::OnWall { .. } => ErrorKind::InvalidInput,
            _ => ErrorKind::Unsupported,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Poincare,
    Euler,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Poincare => "poincare",
            Mode::Euler => "euler",
        })
    }
}

/// Stability parameter: `0+` below every positive rational, `inf` above.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaBound {
    ZeroPlus,
    At(Rational),
    Infinity,
}

impl AlphaBound {
    /// Ordering against a finite wall position.
    pub fn cmp_wall(&self, wall: &Rational) -> Ordering {
        match self {
            AlphaBound::ZeroPlus => Ordering::Less,
            AlphaBound::At(a) => a.cmp(wall),
            AlphaBound::Infinity => Ordering::Greater,
        }
    }
}

impl PartialOrd for AlphaBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlphaBound {
    fn cmp(&self, other: &Self) -> Ordering {
        use AlphaBound::*;
        match (self, other) {
            (At(a), At(b)) => a.cmp(b),
            (ZeroPlus, ZeroPlus) | (Infinity, Infinity) => Ordering::Equal,
            (ZeroPlus, _) | (_, Infinity) => Ordering::Less,
            (_, ZeroPlus) | (Infinity, _) => Ordering::Greater,
        }
    }
}

impl fmt::Display for AlphaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaBound::ZeroPlus => f.write_str("0+"),
            AlphaBound::At(a) => write!(f, "{a}"),
            AlphaBound::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for AlphaBound {
    type Err = WallCrossError;

    /// Accepts `inf`, `0+`, or an exact positive fraction such as `3/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(AlphaBound::Infinity),
            "0+" => Ok(AlphaBound::ZeroPlus),
            other => {
                let r: Rational = other.parse()?;
                if !r.is_positive() {
                    return Err(PairError::Alpha(r).into());
                }
                Ok(AlphaBound::At(r))
            }
        }
    }
}

impl Serialize for AlphaBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphaBound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Euler number, kept apart from `BigInt` so pipelines are typed by mode.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Euler(pub BigInt);

impl fmt::Display for Euler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Euler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Euler({})", self.0)
    }
}

impl Serialize for Euler {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::exactalg::ser_bigint(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Euler {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::exactalg::de_bigint(d).map(Euler)
    }
}

impl Add for Euler {
    type Output = Euler;
    fn add(self, rhs: Euler) -> Euler {
        Euler(self.0 + rhs.0)
    }
}

impl Sub for Euler {
    type Output = Euler;
    fn sub(self, rhs: Euler) -> Euler {
        Euler(self.0 - rhs.0)
    }
}

impl Mul for Euler {
    type Output = Euler;
    fn mul(self, rhs: Euler) -> Euler {
        Euler(self.0 * rhs.0)
    }
}

/// Value a pipeline accumulates: a Poincaré polynomial or an Euler number.
pub trait Weight:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Serialize
    + DeserializeOwned
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    /// The variable `q` (1 for Euler numbers).
    fn q() -> Self;
    fn projective(n: i64) -> Result<Self, WallCrossError>;
    fn relative_hilbert(d: i64, n: i64) -> Result<Self, WallCrossError>;
    fn sheaf_moduli(d: i64, chi: i64) -> Result<Self, WallCrossError>;
    fn euler_number(&self) -> BigInt;
    fn latex(&self) -> String;

    /// Crossing of a wall with several splitting types.
    fn stratified_wall(d: i64, chi: i64, wall: &Wall) -> Result<StrataStep<Self>, WallCrossError>;
}

impl Weight for QPoly {
    const MODE: Mode = Mode::Poincare;

    fn zero() -> Self {
        QPoly::zero()
    }

    fn q() -> Self {
        QPoly::q()
    }

    fn projective(n: i64) -> Result<Self, WallCrossError> {
        Ok(QPoly::projective(n)?)
    }

    fn relative_hilbert(d: i64, n: i64) -> Result<Self, WallCrossError> {
        Ok(catalog::relhilb_poincare(d, n)?)
    }

    fn sheaf_moduli(d: i64, chi: i64) -> Result<Self, WallCrossError> {
        Ok(catalog::sheaf_moduli_poincare(d, chi)?)
    }

    fn euler_number(&self) -> BigInt {
        self.eval_at_one()
    }

    fn latex(&self) -> String {
        self.to_latex()
    }

    fn stratified_wall(d: i64, chi: i64, wall: &Wall) -> Result<StrataStep<Self>, WallCrossError> {
        Err(WallCrossError::RequiresStratification { d, chi, alpha: wall.alpha.clone(), mode: Mode::Poincare })
    }
}

impl Weight for Euler {
    const MODE: Mode = Mode::Euler;

    fn zero() -> Self {
        Euler(BigInt::from(0))
    }

    fn q() -> Self {
        Euler(BigInt::from(1))
    }

    fn projective(n: i64) -> Result<Self, WallCrossError> {
        if n < -1 {
            return Err(AlgError::ProjectiveDimension(n).into());
        }
        Ok(Euler(catalog::euler::projective(n)))
    }

    fn relative_hilbert(d: i64, n: i64) -> Result<Self, WallCrossError> {
        Ok(Euler(catalog::euler::relative_hilbert(d, n)?))
    }

    fn sheaf_moduli(d: i64, chi: i64) -> Result<Self, WallCrossError> {
        Ok(Euler(catalog::euler::sheaf_moduli(d, chi)?))
    }

    fn euler_number(&self) -> BigInt {
        self.0.clone()
    }

    fn latex(&self) -> String {
        self.0.to_string()
    }

    fn stratified_wall(d: i64, chi: i64, wall: &Wall) -> Result<StrataStep<Self>, WallCrossError> {
        euler3::stratified_step(d, chi, wall)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub d: i64,
    pub chi: i64,
    pub mode: Mode,
    pub alpha: AlphaBound,
}

/// Starting space of a pipeline with its weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracedSpace<W> {
    pub label: SpaceLabel,
    pub value: W,
    pub dim: i64,
}

/// Crossing of a wall with a single splitting of length two.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallStep<W> {
    pub wall: Wall,
    pub fiber_before: i64,
    pub fiber_after: i64,
    /// Pair moduli of the section-carrying component at the wall.
    pub factor1: W,
    /// Sheaf moduli of the sectionless component.
    pub factor2: W,
    pub term: W,
}

impl<W: Weight> WallStep<W> {
    /// Recomputes `(P(P^after) - P(P^before)) * factor1 * factor2`.
    pub fn expected_term(&self) -> Result<W, WallCrossError> {
        let diff = W::projective(self.fiber_after)? - W::projective(self.fiber_before)?;
        Ok(diff * self.factor1.clone() * self.factor2.clone())
    }
}

/// Crossing of a multi-type wall through a stratification (Euler numbers only).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrataStep<W> {
    pub wall: Wall,
    pub strata: Vec<StratumTerm>,
    pub term: W,
}

impl<W> StrataStep<W> {
    /// Signed sum of the stratum values.
    pub fn strata_total(&self) -> BigInt {
        self.strata.iter().map(|s| s.name.sign() * &s.value).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStep<W> {
    WallStep(WallStep<W>),
    StrataStep(StrataStep<W>),
}

impl<W> TraceStep<W> {
    pub fn wall(&self) -> &Wall {
        match self {
            TraceStep::WallStep(s) => &s.wall,
            TraceStep::StrataStep(s) => &s.wall,
        }
    }

    pub fn term(&self) -> &W {
        match self {
            TraceStep::WallStep(s) => &s.term,
            TraceStep::StrataStep(s) => &s.term,
        }
    }
}

/// Full record of one pipeline run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComputationTrace<W> {
    pub target: Target,
    pub start: TracedSpace<W>,
    pub steps: Vec<TraceStep<W>>,
    pub result: W,
    /// `false` for degrees beyond the checked range.
    pub verified: bool,
}

impl<W: Weight> ComputationTrace<W> {
    /// `start + sum of step terms`; equals `result` for every produced trace.
    pub fn resum(&self) -> W {
        self.steps
            .iter()
            .fold(self.start.value.clone(), |acc, s| acc + s.term().clone())
    }

    pub fn wall_steps(&self) -> impl Iterator<Item = &WallStep<W>> {
        self.steps.iter().filter_map(|s| match s {
            TraceStep::WallStep(w) => Some(w),
            TraceStep::StrataStep(_) => None,
        })
    }
}

/// Crosses a single-type length-two wall of `(d, chi)`, returning the new
/// weight and the step record.
pub fn cross_wall<W: Weight>(
    before: &W,
    d: i64,
    chi: i64,
    wall: &Wall,
) -> Result<(W, WallStep<W>), WallCrossError> {
    if !wall.is_simple() {
        return Err(WallCrossError::RequiresStratification {
            d,
            chi,
            alpha: wall.alpha.clone(),
            mode: W::MODE,
        });
    }
    let ty = &wall.types[0];
    let (sub, quot) = (ty.section_part(), ty.sheaf_parts()[0]);
    if !in_bundle_regime(sub.d(), sub.chi()) {
        return Err(WallCrossError::OutsideBundleRegime {
            d: sub.d(),
            chi: sub.chi(),
            n: n_points(sub.d(), sub.chi()),
        });
    }
    // before: sheaf part is the subobject; after: the section part is
    let fiber_before = wall_ext_profile(&sub, &quot, &wall.alpha)?.ext1 - 1;
    let fiber_after = wall_ext_profile(&quot, &sub, &wall.alpha)?.ext1 - 1;
    let factor1 = pair_moduli::<W>(sub.d(), sub.chi(), &AlphaBound::At(wall.alpha.clone()))?.result;
    let factor2 = W::sheaf_moduli(quot.d(), quot.chi())?;
    let mut step = WallStep {
        wall: wall.clone(),
        fiber_before,
        fiber_after,
        factor1,
        factor2,
        term: W::zero(),
    };
    step.term = step.expected_term()?;
    Ok((before.clone() + step.term.clone(), step))
}

/// Checks that `M^inf(d, chi) = B(d, n)` is a nonempty projective bundle.
pub fn check_start(d: i64, chi: i64) -> Result<(), WallCrossError> {
    if d < 1 {
        return Err(WallCrossError::Invalid(format!("degree must be at least 1, got {d}")));
    }
    let n = n_points(d, chi);
    if n < 0 {
        return Err(WallCrossError::EmptyModuli { d, chi, n });
    }
    if !in_bundle_regime(d, chi) {
        return Err(WallCrossError::OutsideBundleRegime { d, chi, n });
    }
    Ok(())
}

/// Weight of `M^alpha(d, chi)` with its trace.
pub fn pair_moduli<W: Weight>(
    d: i64,
    chi: i64,
    alpha: &AlphaBound,
) -> Result<ComputationTrace<W>, WallCrossError> {
    check_start(d, chi)?;
    let n = n_points(d, chi);
    let start = TracedSpace {
        label: SpaceLabel::RelativeHilbert { d, n },
        value: W::relative_hilbert(d, n)?,
        dim: relhilb_fiber_dim(d, n) + 2 * n,
    };
    let mut value = start.value.clone();
    let mut steps = Vec::new();
    for wall in find_walls(d, chi)? {
        match alpha.cmp_wall(&wall.alpha) {
            Ordering::Greater => continue,
            Ordering::Equal => {
                return Err(WallCrossError::OnWall { d, chi, alpha: wall.alpha });
            }
            Ordering::Less => {}
        }
        if wall.is_simple() {
            let (next, step) = cross_wall(&value, d, chi, &wall)?;
            value = next;
            steps.push(TraceStep::WallStep(step));
        } else {
            let step = W::stratified_wall(d, chi, &wall)?;
            value = value + step.term.clone();
            steps.push(TraceStep::StrataStep(step));
        }
    }
    Ok(ComputationTrace {
        target: Target { d, chi, mode: W::MODE, alpha: alpha.clone() },
        start,
        steps,
        result: value,
        verified: is_verified_degree(d),
    })
}

pub fn pair_moduli_poincare(
    d: i64,
    chi: i64,
    alpha: &AlphaBound,
) -> Result<(QPoly, ComputationTrace<QPoly>), WallCrossError> {
    let trace = pair_moduli::<QPoly>(d, chi, alpha)?;
    Ok((trace.result.clone(), trace))
}

pub fn pair_moduli_euler(
    d: i64,
    chi: i64,
    alpha: &AlphaBound,
) -> Result<(BigInt, ComputationTrace<Euler>), WallCrossError> {
    let trace = pair_moduli::<Euler>(d, chi, alpha)?;
    Ok((trace.result.0.clone(), trace))
}

/// `M(d, 1)` assembled from the `0+` pair moduli of `(d, 1)` and `(d, -1)`:
/// `P(M(d,1)) = P(M^{0+}(d,1)) - q P(M^{0+}(d,-1))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheafAssembly<W> {
    pub d: i64,
    pub chi: i64,
    pub plus: ComputationTrace<W>,
    /// `None` when `M^{0+}(d,-1)` is empty.
    pub minus: Option<ComputationTrace<W>>,
    pub result: W,
}

impl<W: Weight> SheafAssembly<W> {
    pub fn recompute(&self) -> W {
        let minus = self.minus.as_ref().map_or_else(W::zero, |t| t.result.clone());
        self.plus.result.clone() - W::q() * minus
    }
}

/// Whether `M^{0+}(d, -1)` is empty: `B(d, n)` has no points and no wall
/// can populate it.
fn minus_side_empty(d: i64) -> Result<bool, WallCrossError> {
    Ok(n_points(d, -1) < 0 && find_walls(d, -1)?.is_empty())
}

/// Checks the start points of both pipelines behind [`sheaf_moduli`].
pub fn check_sheaf_start(d: i64) -> Result<(), WallCrossError> {
    check_start(d, 1)?;
    if !minus_side_empty(d)? {
        check_start(d, -1)?;
    }
    Ok(())
}

/// Sheaf moduli `M(d, chi)` for `chi = 1`, or `chi = -1` through the duality
/// `M(d, -1) = M(d, 1)`.
pub fn sheaf_moduli<W: Weight>(d: i64, chi: i64) -> Result<SheafAssembly<W>, WallCrossError> {
    if chi != 1 && chi != -1 {
        return Err(WallCrossError::SheafChi(chi));
    }
    check_sheaf_start(d)?;
    let plus = pair_moduli::<W>(d, 1, &AlphaBound::ZeroPlus)?;
    let minus = if minus_side_empty(d)? {
        None
    } else {
        Some(pair_moduli::<W>(d, -1, &AlphaBound::ZeroPlus)?)
    };
    let mut asm = SheafAssembly { d, chi, plus, minus, result: W::zero() };
    asm.result = asm.recompute();
    Ok(asm)
}

pub fn sheaf_moduli_poincare_chi1(d: i64) -> Result<QPoly, WallCrossError> {
    Ok(sheaf_moduli::<QPoly>(d, 1)?.result)
}

pub fn sheaf_moduli_euler_chi1(d: i64) -> Result<BigInt, WallCrossError> {
    Ok(sheaf_moduli::<Euler>(d, 1)?.result.0)
}

/// A computed Euler number that disagrees with a previously published value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotedDiscrepancy {
    pub quoted: BigInt,
    pub computed: BigInt,
}

impl fmt::Display for QuotedDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "the quoted Euler characteristic {} differs from {} = P(1) of the closed-form \
             Poincaré polynomial; the computed value is reported",
            self.quoted, self.computed
        )
    }
}

/// Quoted Euler characteristics of sheaf moduli `M(d, chi)` that are known not
/// to match the q = 1 evaluation of the corresponding Poincaré polynomial.
const QUOTED_SHEAF_EULER: &[(i64, i64, i64)] = &[(5, 1, 1675), (5, -1, 1675)];

pub fn quoted_discrepancy(d: i64, chi: i64, computed: &BigInt) -> Option<QuotedDiscrepancy> {
    QUOTED_SHEAF_EULER
        .iter()
        .find(|&&(qd, qc, _)| qd == d && qc == chi)
        .map(|&(_, _, quoted)| BigInt::from(quoted))
        .filter(|quoted| quoted != computed)
        .map(|quoted| QuotedDiscrepancy { quoted, computed: computed.clone() })
}

/// Whether a stratum name belongs to the wall-crossing of the given step.
pub fn step_has_stratum<W>(step: &StrataStep<W>, name: StratumName) -> bool {
    step.strata.iter().any(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairclasses::PairClass;

    fn p(n: i64) -> QPoly {
        QPoly::projective(n).unwrap()
    }

    #[test]
    fn alpha_parsing_and_order() {
        let a: AlphaBound = "3/2".parse().unwrap();
        assert_eq!(a, AlphaBound::At(Rational::new(3, 2).unwrap()));
        assert_eq!("inf".parse::<AlphaBound>().unwrap(), AlphaBound::Infinity);
        assert_eq!("0+".parse::<AlphaBound>().unwrap(), AlphaBound::ZeroPlus);
        assert!("0".parse::<AlphaBound>().is_err());
        assert!("-1".parse::<AlphaBound>().is_err());
        assert!("0.5".parse::<AlphaBound>().is_err());
        let tiny = AlphaBound::At(Rational::new(1, 1_000_000).unwrap());
        assert!(AlphaBound::ZeroPlus < tiny);
        assert!(tiny < AlphaBound::Infinity);
        assert_eq!(serde_json::to_string(&AlphaBound::ZeroPlus).unwrap(), "\"0+\"");
    }

    #[test]
    fn cross_wall_4_1() {
        let walls = find_walls(4, 1).unwrap();
        let before = catalog::relhilb_poincare(4, 3).unwrap();
        let (after, step) = cross_wall(&before, 4, 1, &walls[0]).unwrap();
        assert_eq!((step.fiber_before, step.fiber_after), (3, 2));
        assert_eq!(step.term, (p(2) - p(3)) * p(9) * p(2));
        assert_eq!(after, before + step.term.clone());
    }

    #[test]
    fn cross_wall_5_1_top() {
        let walls = find_walls(5, 1).unwrap();
        let before = catalog::relhilb_poincare(5, 6).unwrap();
        let (_, step) = cross_wall(&before, 5, 1, &walls[0]).unwrap();
        assert_eq!((step.fiber_before, step.fiber_after), (6, 3));
        let b40 = catalog::relhilb_poincare(4, 0).unwrap();
        assert_eq!(step.term, (p(3) - p(6)) * b40 * p(2));
    }

    #[test]
    fn cross_wall_5_minus1_vanishes() {
        let walls = find_walls(5, -1).unwrap();
        let (_, step) = cross_wall(&QPoly::zero(), 5, -1, &walls[1]).unwrap();
        assert_eq!((step.fiber_before, step.fiber_after), (3, 3));
        assert!(step.term.is_zero());
        assert_eq!(step.factor1, catalog::relhilb_poincare(4, 1).unwrap());
    }

    #[test]
    fn cross_wall_rejects_multi_type() {
        let walls = find_walls(4, 3).unwrap();
        let err = cross_wall(&QPoly::zero(), 4, 3, &walls[2]).unwrap_err();
        assert!(matches!(err, WallCrossError::RequiresStratification { .. }));
        assert_eq!(err.kind(), ErrorKind::Unsupported);
    }

    #[test]
    fn pipeline_4_1() {
        let (poly, trace) = pair_moduli_poincare(4, 1, &AlphaBound::ZeroPlus).unwrap();
        let expected = p(11) * catalog::hilb_poincare(3) - QPoly::monomial(1, 3) * p(9) * p(2);
        assert_eq!(poly, expected);
        assert_eq!(trace.resum(), poly);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn pipeline_euler_values() {
        let e = |d, chi| pair_moduli_euler(d, chi, &AlphaBound::ZeroPlus).unwrap().0;
        assert_eq!(e(5, -1), BigInt::from(822));
        assert_eq!(e(5, 1), BigInt::from(2517));
        assert_eq!(e(3, 2), BigInt::from(54));
    }

    #[test]
    fn target_alpha_selects_walls() {
        let at = |s: &str| pair_moduli_euler(4, 3, &s.parse().unwrap()).unwrap().0;
        assert_eq!(at("inf"), BigInt::from(1080));
        assert_eq!(at("10"), BigInt::from(1080));
        assert_eq!(at("6"), BigInt::from(990));
        assert_eq!(at("2"), BigInt::from(828));
        let err = pair_moduli_euler(4, 3, &"5".parse().unwrap()).unwrap_err();
        assert!(matches!(err, WallCrossError::OnWall { .. }));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            pair_moduli_poincare(6, 1, &AlphaBound::ZeroPlus),
            Err(WallCrossError::OutsideBundleRegime { d: 6, chi: 1, n: 10 })
        ));
        assert!(matches!(
            pair_moduli_poincare(1, 0, &AlphaBound::ZeroPlus),
            Err(WallCrossError::EmptyModuli { .. })
        ));
        assert!(matches!(
            pair_moduli_poincare(0, 0, &AlphaBound::ZeroPlus),
            Err(WallCrossError::Invalid(_))
        ));
        assert!(matches!(
            pair_moduli_poincare(4, 3, &AlphaBound::ZeroPlus),
            Err(WallCrossError::RequiresStratification { mode: Mode::Poincare, .. })
        ));
        assert!(matches!(sheaf_moduli::<Euler>(4, 3), Err(WallCrossError::SheafChi(3))));
        assert!(matches!(
            sheaf_moduli::<Euler>(6, 1),
            Err(WallCrossError::OutsideBundleRegime { .. })
        ));
    }

    #[test]
    fn sheaf_chi_minus_one_uses_duality() {
        let a = sheaf_moduli::<QPoly>(4, -1).unwrap();
        assert_eq!(a.result, sheaf_moduli_poincare_chi1(4).unwrap());
        assert_eq!(a.result, a.recompute());
    }

    #[test]
    fn sheaf_closed_forms() {
        let m4 = sheaf_moduli_poincare_chi1(4).unwrap();
        assert_eq!(m4, QPoly::from_i64s(&[1, 1, 4, 4, 4, 1, 1]) * p(11));
        let m5 = sheaf_moduli_poincare_chi1(5).unwrap();
        let core = QPoly::from_i64s(&[1, 1, 4, 7, 13, 19, 23, 19, 13, 7, 4, 1, 1]);
        assert_eq!(m5, core.clone() * p(14));
        assert_eq!(m4.factor_projective().map(|(k, _)| k), Some(12));
        assert_eq!(m5.factor_projective(), Some((15, core)));
        assert_eq!(sheaf_moduli_euler_chi1(5).unwrap(), m5.eval_at_one());
    }

    #[test]
    fn long_wall_endpoint() {
        let (chi, trace) = pair_moduli_euler(4, 3, &AlphaBound::ZeroPlus).unwrap();
        assert_eq!(chi, BigInt::from(576));
        assert_eq!(chi, 3 * sheaf_moduli_euler_chi1(4).unwrap());
        assert_eq!(trace.resum().0, chi);
        assert!(matches!(trace.steps.last(), Some(TraceStep::StrataStep(_))));
    }

    #[test]
    fn small_degrees_have_empty_minus_side() {
        for d in 1..=3 {
            let asm = sheaf_moduli::<QPoly>(d, 1).unwrap();
            assert!(asm.minus.is_none());
            assert_eq!(asm.result, asm.plus.result);
        }
        assert_eq!(sheaf_moduli_poincare_chi1(1).unwrap(), p(2));
        assert!(sheaf_moduli::<QPoly>(4, 1).unwrap().minus.is_some());
    }

    #[test]
    fn discrepancy_table() {
        assert!(quoted_discrepancy(5, 1, &BigInt::from(1695)).is_some());
        assert!(quoted_discrepancy(5, 1, &BigInt::from(1675)).is_none());
        assert!(quoted_discrepancy(4, 1, &BigInt::from(192)).is_none());
    }

    #[test]
    fn components_are_checked_against_extcalc() {
        let (_, trace) = pair_moduli_poincare(5, 1, &AlphaBound::ZeroPlus).unwrap();
        for step in trace.wall_steps() {
            let ty = &step.wall.types[0];
            let s: PairClass = ty.section_part();
            let t = ty.sheaf_parts()[0];
            assert_eq!(step.fiber_before, s.d() * t.d() + t.chi() - 1);
            assert_eq!(step.fiber_after, s.d() * t.d() - 1);
        }
    }
}
