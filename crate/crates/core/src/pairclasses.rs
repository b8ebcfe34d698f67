//! Numerical classes of pairs, pair slopes, and wall discovery.
//!
//! A class `(delta, (d, chi))` records whether the pair carries a section
//! (`delta = 1`) and the Hilbert polynomial `d*m + chi` of its sheaf. At a
//! parameter `alpha` its slope is `(chi + delta*alpha) / d`. A wall of the
//! ambient class `(1, (d, chi))` is a positive `alpha` where a proper
//! section-carrying subclass has the same slope as the whole.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Rational;

/// Largest degree for which the wall tables have been checked against
/// published computations.
pub const VERIFIED_MAX_DEGREE: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("degree must be at least 1, got {0}")]
    Degree(i64),
    #[error("section indicator must be 0 or 1, got {0}")]
    Delta(u8),
    #[error("alpha must be positive, got {0}")]
    Alpha(Rational),
    #[error("decomposition {0} is malformed: {1}")]
    Decomposition(String, &'static str),
}

/// Numerical class `(delta, (d, chi))` of a pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPairClass")]
pub struct PairClass {
    delta: u8,
    d: i64,
    chi: i64,
}

#[derive(Deserialize)]
struct RawPairClass {
    delta: u8,
    d: i64,
    chi: i64,
}

impl TryFrom<RawPairClass> for PairClass {
    type Error = PairError;
    fn try_from(raw: RawPairClass) -> Result<Self, PairError> {
        PairClass::new(raw.delta, raw.d, raw.chi)
    }
}

impl PairClass {
    pub fn new(delta: u8, d: i64, chi: i64) -> Result<Self, PairError> {
        if delta > 1 {
            return Err(PairError::Delta(delta));
        }
        if d < 1 {
            return Err(PairError::Degree(d));
        }
        Ok(PairClass { delta, d, chi })
    }

    /// `(1, (d, chi))`
    pub fn with_section(d: i64, chi: i64) -> Result<Self, PairError> {
        Self::new(1, d, chi)
    }

    /// `(0, (d, chi))`
    pub fn sheaf(d: i64, chi: i64) -> Result<Self, PairError> {
        Self::new(0, d, chi)
    }

    pub fn delta(&self) -> i64 {
        i64::from(self.delta)
    }

    pub fn has_section(&self) -> bool {
        self.delta == 1
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn slope(&self, alpha: &Rational) -> Rational {
        pair_slope(self, alpha)
    }

    pub fn to_latex(&self) -> String {
        format!("({},({},{}))", self.delta, self.d, self.chi)
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({},{}))", self.delta, self.d, self.chi)
    }
}

impl fmt::Debug for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of points of the relative Hilbert scheme realizing `M^inf(d, chi)`:
/// `chi - d(3-d)/2`.
pub fn n_points(d: i64, chi: i64) -> i64 {
    let twice = d * (3 - d);
    // d and 3-d have opposite parity
    debug_assert_eq!(twice % 2, 0);
    chi - twice / 2
}

/// `(chi + delta*alpha) / d`
pub fn pair_slope(c: &PairClass, alpha: &Rational) -> Rational {
    let top = Rational::integer(c.chi) + Rational::integer(c.delta()) * alpha.clone();
    top / Rational::integer(c.d)
}

/// The `alpha` at which `(1, (d1, chi1))` and `(1, (d, chi))` have equal
/// slopes, if it is positive.
pub fn wall_alpha(d: i64, chi: i64, d1: i64, chi1: i64) -> Option<Rational> {
    if !(1 <= d1 && d1 < d) {
        return None;
    }
    let alpha = Rational::new(d1 * chi - d * chi1, d - d1).ok()?;
    alpha.is_positive().then_some(alpha)
}

/// Dual class under `F -> F^D`: `(d, chi) -> (d, -chi)`.
pub fn dual_class(d: i64, chi: i64) -> (i64, i64) {
    (d, -chi)
}

/// Whether a section-carrying class passes the existence filter: its
/// relative Hilbert scheme has a nonnegative number of points.
pub fn admits_section_class(d: i64, chi: i64) -> bool {
    n_points(d, chi) >= 0
}

/// Strictly semistable splitting of a pair class.
///
/// The section-carrying component comes first; the sectionless components
/// follow in decreasing `(d, chi)` order, so equal splittings compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition")]
pub struct Decomposition {
    components: Vec<PairClass>,
}

#[derive(Deserialize)]
struct RawDecomposition {
    components: Vec<PairClass>,
}

impl TryFrom<RawDecomposition> for Decomposition {
    type Error = PairError;
    fn try_from(raw: RawDecomposition) -> Result<Self, PairError> {
        Decomposition::new(raw.components)
    }
}

impl Decomposition {
    pub fn new(mut components: Vec<PairClass>) -> Result<Self, PairError> {
        let describe = |cs: &[PairClass]| {
            cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
        };
        if components.len() < 2 {
            return Err(PairError::Decomposition(describe(&components), "needs at least two components"));
        }
        if components.iter().filter(|c| c.has_section()).count() != 1 {
            return Err(PairError::Decomposition(
                describe(&components),
                "needs exactly one section-carrying component",
            ));
        }
        components.sort_by(|a, b| b.delta.cmp(&a.delta).then(b.d.cmp(&a.d)).then(b.chi.cmp(&a.chi)));
        Ok(Decomposition { components })
    }

    pub fn components(&self) -> &[PairClass] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn section_part(&self) -> PairClass {
        self.components[0]
    }

    pub fn sheaf_parts(&self) -> &[PairClass] {
        &self.components[1..]
    }

    /// Sum of the component classes as `(d, chi)`.
    pub fn total(&self) -> (i64, i64) {
        self.components.iter().fold((0, 0), |(d, chi), c| (d + c.d, chi + c.chi))
    }

    pub fn to_latex(&self) -> String {
        self.components
            .iter()
            .map(PairClass::to_latex)
            .collect::<Vec<_>>()
            .join("\\oplus ")
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.components.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A wall: a positive `alpha` and every strictly semistable splitting there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub alpha: Rational,
    pub types: Vec<Decomposition>,
}

impl Wall {
    /// Whether every component of every type has the same slope at `alpha`.
    pub fn is_balanced(&self) -> bool {
        self.types.iter().all(|t| {
            let s = t.section_part().slope(&self.alpha);
            t.components().iter().all(|c| c.slope(&self.alpha) == s)
        })
    }

    /// Single type of length two.
    pub fn is_simple(&self) -> bool {
        self.types.len() == 1 && self.types[0].len() == 2
    }
}

/// Enumerates the walls of `(1, (d, chi))`, largest `alpha` first.
///
/// Length-two types come from proper section-carrying subclasses passing the
/// existence filter. Each type is then refined: any component that is itself
/// strictly semistable at the same `alpha` is split further, and the longer
/// splittings are appended after the length-two ones.
pub fn find_walls(d: i64, chi: i64) -> Result<Vec<Wall>, PairError> {
    if d < 1 {
        return Err(PairError::Degree(d));
    }
    let mut by_alpha: BTreeMap<Rational, Vec<Decomposition>> = BTreeMap::new();
    for d1 in 1..d {
        // n_points(d1, chi1) >= 0  <=>  chi1 >= d1(3-d1)/2; alpha > 0 bounds chi1 above
        let mut chi1 = d1 * (3 - d1) / 2;
        while d1 * chi - d * chi1 > 0 {
            let alpha = wall_alpha(d, chi, d1, chi1).expect("positive by loop condition");
            let ty = Decomposition::new(vec![
                PairClass::with_section(d1, chi1)?,
                PairClass::sheaf(d - d1, chi - chi1)?,
            ])?;
            by_alpha.entry(alpha).or_default().push(ty);
            chi1 += 1;
        }
    }

    let mut walls = Vec::with_capacity(by_alpha.len());
    for (alpha, mut types) in by_alpha.into_iter().rev() {
        types.sort_by(|a, b| b.cmp(a));
        let mut longer = BTreeSet::new();
        for ty in &types {
            refine(ty, &alpha, &mut longer)?;
        }
        let mut longer: Vec<_> = longer.into_iter().filter(|t| !types.contains(t)).collect();
        longer.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
        types.extend(longer);
        walls.push(Wall { alpha, types });
    }
    Ok(walls)
}

/// Two-piece equal-slope splittings of a single class at `alpha`.
pub fn splittings(c: &PairClass, alpha: &Rational) -> Result<Vec<(PairClass, PairClass)>, PairError> {
    let slope = c.slope(alpha);
    let mut out = Vec::new();
    if c.has_section() {
        for d1 in 1..c.d {
            // (chi1 + alpha)/d1 = slope
            let chi1 = Rational::integer(d1) * slope.clone() - alpha.clone();
            let Some(chi1) = chi1.to_integer().and_then(|n| i64::try_from(n).ok()) else {
                continue;
            };
            if admits_section_class(d1, chi1) {
                out.push((
                    PairClass::with_section(d1, chi1)?,
                    PairClass::sheaf(c.d - d1, c.chi - chi1)?,
                ));
            }
        }
    } else {
        for a in 1..=c.d / 2 {
            let x = Rational::integer(a) * slope.clone();
            let Some(x) = x.to_integer().and_then(|n| i64::try_from(n).ok()) else {
                continue;
            };
            out.push((PairClass::sheaf(a, x)?, PairClass::sheaf(c.d - a, c.chi - x)?));
        }
    }
    Ok(out)
}

fn refine(
    ty: &Decomposition,
    alpha: &Rational,
    found: &mut BTreeSet<Decomposition>,
) -> Result<(), PairError> {
    for (i, c) in ty.components().iter().enumerate() {
        for (a, b) in splittings(c, alpha)? {
            let mut comps = ty.components().to_vec();
            comps.splice(i..=i, [a, b]);
            let finer = Decomposition::new(comps)?;
            if found.insert(finer.clone()) {
                refine(&finer, alpha, found)?;
            }
        }
    }
    Ok(())
}

/// Numerical wall candidate, before or after the existence filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub section_part: PairClass,
    pub alpha: Rational,
    pub n_points: i64,
    pub admitted: bool,
}

/// All positive-`alpha` candidates `(1, (d1, chi1))` for `1 <= d1 < d`, with
/// `chi1` reaching `depth` below the existence threshold.
pub fn wall_candidates(d: i64, chi: i64, depth: i64) -> Result<Vec<Candidate>, PairError> {
    if d < 1 {
        return Err(PairError::Degree(d));
    }
    let mut out = Vec::new();
    for d1 in 1..d {
        let mut chi1 = d1 * (3 - d1) / 2 - depth;
        while d1 * chi - d * chi1 > 0 {
            let alpha = wall_alpha(d, chi, d1, chi1).expect("positive by loop condition");
            out.push(Candidate {
                section_part: PairClass::with_section(d1, chi1)?,
                alpha,
                n_points: n_points(d1, chi1),
                admitted: admits_section_class(d1, chi1),
            });
            chi1 += 1;
        }
    }
    Ok(out)
}

/// Whether outputs for degree `d` fall inside the checked range.
pub fn is_verified_degree(d: i64) -> bool {
    d <= VERIFIED_MAX_DEGREE
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn dec(parts: &[(u8, i64, i64)]) -> Decomposition {
        Decomposition::new(parts.iter().map(|&(e, d, c)| PairClass::new(e, d, c).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn n_points_examples() {
        assert_eq!(n_points(4, 1), 3);
        assert_eq!(n_points(5, 1), 6);
        assert_eq!(n_points(3, 0), 0);
        for d in 1..40 {
            assert_eq!((d * (3 - d)) % 2, 0);
        }
    }

    #[test]
    fn slopes() {
        let a3 = Rational::integer(3);
        assert_eq!(PairClass::with_section(3, 0).unwrap().slope(&a3), Rational::integer(1));
        assert_eq!(PairClass::sheaf(1, 1).unwrap().slope(&r(17, 5)), Rational::integer(1));
        assert_eq!(PairClass::with_section(2, 1).unwrap().slope(&Rational::integer(1)), Rational::integer(1));
        assert_eq!(PairClass::sheaf(2, 2).unwrap().slope(&Rational::integer(1)), Rational::integer(1));
    }

    #[test]
    fn wall_alpha_examples() {
        assert_eq!(wall_alpha(4, 1, 3, 0), Some(Rational::integer(3)));
        assert_eq!(wall_alpha(5, 1, 4, -2), Some(Rational::integer(14)));
        assert_eq!(wall_alpha(4, 3, 2, 1), Some(Rational::integer(1)));
        assert_eq!(wall_alpha(5, 1, 3, 1), None);
        assert_eq!(wall_alpha(5, 1, 5, 0), None);
    }

    #[test]
    fn dual() {
        assert_eq!(dual_class(5, -1), (5, 1));
        assert_eq!(dual_class(4, 1), (4, -1));
        assert_eq!(dual_class(7, 0), (7, 0));
    }

    #[test]
    fn walls_4_1() {
        let walls = find_walls(4, 1).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].alpha, Rational::integer(3));
        assert_eq!(walls[0].types, vec![dec(&[(1, 3, 0), (0, 1, 1)])]);
    }

    #[test]
    fn walls_5_1_excludes_unrealized_candidate() {
        let walls = find_walls(5, 1).unwrap();
        let alphas: Vec<_> = walls.iter().map(|w| w.alpha.to_string()).collect();
        assert_eq!(alphas, ["14", "9", "4", "3/2"]);
        assert!(walls.iter().all(|w| w.alpha != r(2, 3)));
        let cands = wall_candidates(5, 1, 2).unwrap();
        let rejected = cands.iter().find(|c| c.alpha == r(2, 3)).unwrap();
        assert_eq!(rejected.section_part, PairClass::with_section(2, 0).unwrap());
        assert!(!rejected.admitted);
    }

    #[test]
    fn walls_4_3_length_three() {
        let walls = find_walls(4, 3).unwrap();
        let last = walls.last().unwrap();
        assert_eq!(last.alpha, Rational::integer(1));
        assert_eq!(
            last.types,
            vec![
                dec(&[(1, 3, 2), (0, 1, 1)]),
                dec(&[(1, 2, 1), (0, 2, 2)]),
                dec(&[(1, 2, 1), (0, 1, 1), (0, 1, 1)]),
            ]
        );
        assert!(walls.iter().all(Wall::is_balanced));
    }

    #[test]
    fn no_walls_in_degree_one() {
        assert!(find_walls(1, 1).unwrap().is_empty());
        assert_eq!(find_walls(0, 1), Err(PairError::Degree(0)));
    }

    #[test]
    fn decomposition_validation() {
        let line = PairClass::sheaf(1, 1).unwrap();
        assert!(Decomposition::new(vec![line, line]).is_err());
        assert!(Decomposition::new(vec![PairClass::with_section(1, 1).unwrap()]).is_err());
        assert!(PairClass::new(2, 1, 1).is_err());
        assert!(serde_json::from_str::<PairClass>(r#"{"delta":1,"d":0,"chi":1}"#).is_err());
        let d = dec(&[(0, 1, 1), (1, 3, 0)]);
        assert_eq!(d.section_part(), PairClass::with_section(3, 0).unwrap());
        assert_eq!(d.total(), (4, 1));
        assert_eq!(d.to_latex(), "(1,(3,0))\\oplus (0,(1,1))");
    }
}
