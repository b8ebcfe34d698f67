//! Euler-number crossing of the wall `alpha = 1` for `(d, chi) = (4, 3)`.
//!
//! Three splitting types meet there:
//!
//! ```text
//! (1,(3,2)) + (0,(1,1))
//! (1,(2,1)) + (0,(2,2))
//! (1,(2,1)) + (0,(1,1)) + (0,(1,1))
//! ```
//!
//! so the flip is not a single projective-bundle replacement. The change of
//! Euler number is split over strata:
//!
//! * `B - A`: the pair part is `(1,(2,1))` and the sheaf part a stable conic
//!   sheaf `(0,(2,2))`;
//! * `C`: the sheaf part is built from two line sheaves, either on distinct
//!   lines (`V - D`) or on one line (`D`, the double lines);
//! * `A - C`: the pair part is a `(1,(3,2))` pair and the sheaf a line,
//!   minus the locus where that pair itself decomposes, computed on both
//!   sides of the wall.
//!
//! Every projective fiber dimension below is an `ext1` from
//! [`crate::extcalc`]; no dimension is hard-coded.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::catalog::euler as cat;
use crate::exactalg::Rational;
use crate::extcalc::{ext_profile, wall_ext_profile};
use crate::pairclasses::{n_points, Decomposition, PairClass, Wall};
use crate::wallcross::{pair_moduli, AlphaBound, Euler, Mode, StrataStep, WallCrossError};

/// The wall this module handles.
pub const LONG_WALL_CLASS: (i64, i64) = (4, 3);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StratumName {
    #[serde(rename = "B_minus_A")]
    BMinusA,
    #[serde(rename = "C_distinct_lines")]
    CDistinctLines,
    #[serde(rename = "C_same_line")]
    CSameLine,
    #[serde(rename = "A_minus_C_plus")]
    AMinusCPlus,
    #[serde(rename = "A_minus_C_minus")]
    AMinusCMinus,
}

impl StratumName {
    /// Sign with which the stratum enters the wall-crossing term. The plus
    /// side of `A - C` is the locus removed when crossing downward.
    pub fn sign(self) -> i32 {
        match self {
            StratumName::AMinusCPlus => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for StratumName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StratumName::BMinusA => "B-A",
            StratumName::CDistinctLines => "C (distinct lines)",
            StratumName::CSameLine => "C (same line)",
            StratumName::AMinusCPlus => "A-C (alpha > 1)",
            StratumName::AMinusCMinus => "A-C (alpha < 1)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    #[serde(with = "crate::exactalg::bigint_json")]
    pub value: BigInt,
}

fn factor(label: impl Into<String>, value: impl Into<BigInt>) -> Factor {
    Factor { label: label.into(), value: value.into() }
}

/// A stratum's Euler number as a sum of products of labelled factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumTerm {
    pub name: StratumName,
    #[serde(with = "crate::exactalg::bigint_json")]
    pub value: BigInt,
    pub monomials: Vec<Vec<Factor>>,
}

impl StratumTerm {
    fn from_monomials(name: StratumName, monomials: Vec<Vec<Factor>>) -> Self {
        let mut term = StratumTerm { name, value: BigInt::from(0), monomials };
        term.value = term.resum();
        term
    }

    /// Sum over monomials of the product of their factors.
    pub fn resum(&self) -> BigInt {
        self.monomials
            .iter()
            .map(|m| m.iter().map(|f| f.value.clone()).product::<BigInt>())
            .sum()
    }
}

/// Side of the wall for the `A - C` stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Euler numbers of the auxiliary spaces the strata are fibered over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumInputs {
    /// `M^{1+}(3,2) = B(3,2)`.
    pub pairs_32_above: BigInt,
    /// `M^{1-}(3,2) = M^{0+}(3,2)`.
    pub pairs_32_below: BigInt,
    /// `M^{1}(2,1) = B(2,0)`.
    pub pairs_21: BigInt,
    /// `M(1,1)`, the dual plane of lines.
    pub lines: BigInt,
    /// All conic sheaves `(0,(2,2))`, a `P^5`.
    pub conics: BigInt,
    /// Stable conic sheaves `M^s(2,2)`, whose Euler number is taken as 0.
    pub stable_conics: BigInt,
}

impl StratumInputs {
    /// Builds the inputs from the catalog and the wall-crossing pipeline.
    pub fn from_pipelines() -> Result<Self, WallCrossError> {
        let below = pair_moduli::<Euler>(3, 2, &AlphaBound::ZeroPlus)?.result.0;
        Ok(StratumInputs {
            pairs_32_above: cat::relative_hilbert(3, n_points(3, 2))?,
            pairs_32_below: below,
            pairs_21: cat::relative_hilbert(2, n_points(2, 1))?,
            lines: cat::sheaf_moduli(1, 1)?,
            conics: cat::projective(5),
            stable_conics: BigInt::from(0),
        })
    }

    /// Strictly semistable conic sheaves: `chi(P^5) - chi(M^s(2,2))`.
    pub fn semistable_conics(&self) -> BigInt {
        &self.conics - &self.stable_conics
    }

    /// Double lines, in bijection with lines.
    pub fn double_lines(&self) -> BigInt {
        self.lines.clone()
    }
}

fn one() -> Rational {
    Rational::integer(1)
}

fn sec(d: i64, chi: i64) -> PairClass {
    PairClass::with_section(d, chi).expect("valid class")
}

fn sh(d: i64, chi: i64) -> PairClass {
    PairClass::sheaf(d, chi).expect("valid class")
}

/// `ext1` between two distinct stable objects on the wall.
fn ext1(a: PairClass, b: PairClass) -> Result<i64, WallCrossError> {
    Ok(wall_ext_profile(&a, &b, &one())?.ext1)
}

/// `ext1` between line sheaves on distinct lines (`same = false`) or the same line.
fn line_ext1(same: bool) -> Result<i64, WallCrossError> {
    let l = sh(1, 1);
    Ok(ext_profile(&l, &l, i64::from(same), None)?.ext1)
}

fn chi_proj(dim: i64) -> BigInt {
    cat::projective(dim)
}

pub fn chi_b_minus_a(inputs: &StratumInputs) -> Result<StratumTerm, WallCrossError> {
    let (pair, conic) = (sec(2, 1), sh(2, 2));
    let before = ext1(pair, conic)? - 1;
    let after = ext1(conic, pair)? - 1;
    let monomial = vec![
        factor(
            format!("chi(P^{after}) - chi(P^{before})"),
            chi_proj(after) - chi_proj(before),
        ),
        factor("chi(M^1(2,1))", inputs.pairs_21.clone()),
        factor("chi(M^s(2,2))", inputs.stable_conics.clone()),
    ];
    Ok(StratumTerm::from_monomials(StratumName::BMinusA, vec![monomial]))
}

/// The two `C` strata: distinct lines and a doubled line.
pub fn chi_c_wallcrossing(inputs: &StratumInputs) -> Result<[StratumTerm; 2], WallCrossError> {
    let (pair, line) = (sec(2, 1), sh(1, 1));
    let (e_before, e_after) = (ext1(pair, line)?, ext1(line, pair)?);
    let (before, after) = (e_before - 1, e_after - 1);
    let sq = |n: i64| chi_proj(n) * chi_proj(n);
    let distinct = vec![
        factor(
            format!("chi(P^{after} x P^{after}) - chi(P^{before} x P^{before})"),
            sq(after) - sq(before),
        ),
        factor("chi(M^1(2,1))", inputs.pairs_21.clone()),
        factor("chi(V - D)", inputs.semistable_conics() - inputs.double_lines()),
    ];
    let same = vec![
        factor(
            format!("chi(Gr(2,{e_after})) - chi(Gr(2,{e_before}))"),
            grassmannian(e_after, 2) - grassmannian(e_before, 2),
        ),
        factor("chi(M^1(2,1))", inputs.pairs_21.clone()),
        factor("chi(D)", inputs.double_lines()),
    ];
    Ok([
        StratumTerm::from_monomials(StratumName::CDistinctLines, vec![distinct]),
        StratumTerm::from_monomials(StratumName::CSameLine, vec![same]),
    ])
}

fn grassmannian(n: i64, k: i64) -> BigInt {
    if n < k {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// `A - C` on one side of the wall: pairs `(1,(3,2))` extended by a line,
/// minus those whose `(3,2)` part is itself an extension of `(1,(2,1))` by a
/// line (distinct from, or equal to, the outer one).
pub fn chi_a_minus_c(side: Side, inputs: &StratumInputs) -> Result<StratumTerm, WallCrossError> {
    let (big, small, line) = (sec(3, 2), sec(2, 1), sh(1, 1));
    // the extension direction that is stable on this side
    let oriented = |a: PairClass, b: PairClass| match side {
        Side::Plus => ext1(a, b),
        Side::Minus => ext1(b, a),
    };
    let (outer, inner) = (oriented(big, line)?, oriented(small, line)?);
    let (name, pairs_32, tag) = match side {
        Side::Plus => (StratumName::AMinusCPlus, &inputs.pairs_32_above, "1+"),
        Side::Minus => (StratumName::AMinusCMinus, &inputs.pairs_32_below, "1-"),
    };
    let lead = vec![
        factor(format!("chi(P^{})", outer - 1), chi_proj(outer - 1)),
        factor("chi(M(1,1))", inputs.lines.clone()),
        factor(format!("chi(M^{tag}(3,2))"), pairs_32.clone()),
    ];
    let mut monomials = vec![lead];
    for same in [false, true] {
        let kernel = outer - line_ext1(same)? - 1;
        let (other_lines, label) = if same {
            (BigInt::from(1), "chi(pt)")
        } else {
            (&inputs.lines - 1, "chi(M(1,1) - pt)")
        };
        monomials.push(vec![
            factor("sign", -1),
            factor(format!("chi(P^{kernel})"), chi_proj(kernel)),
            factor("chi(M(1,1))", inputs.lines.clone()),
            factor(format!("chi(P^{})", inner - 1), chi_proj(inner - 1)),
            factor("chi(M^1(2,1))", inputs.pairs_21.clone()),
            factor(label, other_lines),
        ]);
    }
    Ok(StratumTerm::from_monomials(name, monomials))
}

/// All strata of the wall, in a fixed order.
pub fn long_wall_strata(inputs: &StratumInputs) -> Result<Vec<StratumTerm>, WallCrossError> {
    let [distinct, same] = chi_c_wallcrossing(inputs)?;
    Ok(vec![
        chi_b_minus_a(inputs)?,
        distinct,
        same,
        chi_a_minus_c(Side::Plus, inputs)?,
        chi_a_minus_c(Side::Minus, inputs)?,
    ])
}

/// Change of Euler number across the wall, from above to below.
pub fn chi_long_wall_total(inputs: &StratumInputs) -> Result<BigInt, WallCrossError> {
    Ok(long_wall_strata(inputs)?
        .iter()
        .map(|s| s.name.sign() * &s.value)
        .sum())
}

fn expected_types() -> Vec<Decomposition> {
    let dec = |c: Vec<PairClass>| Decomposition::new(c).expect("valid decomposition");
    vec![
        dec(vec![sec(3, 2), sh(1, 1)]),
        dec(vec![sec(2, 1), sh(2, 2)]),
        dec(vec![sec(2, 1), sh(1, 1), sh(1, 1)]),
    ]
}

/// Whether `wall` of `(d, chi)` is the one handled here.
pub fn is_long_wall(d: i64, chi: i64, wall: &Wall) -> bool {
    (d, chi) == LONG_WALL_CLASS && wall.alpha == one() && {
        let mut found = wall.types.clone();
        found.sort();
        let mut expected = expected_types();
        expected.sort();
        found == expected
    }
}

/// Stratified crossing step used by the Euler pipeline.
pub fn stratified_step(d: i64, chi: i64, wall: &Wall) -> Result<StrataStep<Euler>, WallCrossError> {
    if !is_long_wall(d, chi, wall) {
        return Err(WallCrossError::RequiresStratification {
            d,
            chi,
            alpha: wall.alpha.clone(),
            mode: Mode::Euler,
        });
    }
    let inputs = StratumInputs::from_pipelines()?;
    let strata = long_wall_strata(&inputs)?;
    let mut step = StrataStep { wall: wall.clone(), strata, term: Euler(BigInt::from(0)) };
    step.term = Euler(step.strata_total());
    Ok(step)
}
