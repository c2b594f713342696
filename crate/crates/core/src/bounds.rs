//! Closed-form bounds on `MEC(n)` and cheap necessary conditions on graphs.
//!
//! Everything here is exact integer or rational arithmetic. Results about the
//! spectrum are only reported inside the order ranges where they are proven;
//! outside them the functions say "not covered" instead of extrapolating.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use serde::Serialize;

use crate::bits::Bits;
use crate::graph::Graph;

/// Known results about the spectrum, named by content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundTheorem {
    /// Even `n > 10`: `n²/4 <= m <= C(n,2)` is a member unless `m = C(n,2) - 1`
    /// or (`n ≡ 2 mod 4` and `m = n²/4 + 1`); `m = C(n,2) - 1` is not a member.
    EvenOrderRange,
    /// Odd `n > 10`: `(n² + 2n - 3)/4 <= m <= C(n,2)` is a member.
    OddOrderRange,
    /// Even `n >= 4`: every member satisfies `m >= n²/4`.
    EvenLowerBound,
    /// `n >= 10`, `n ≡ 2 mod 4`: `n²/4 + 1` is not a member.
    QuarterSquarePlusOneGap,
    /// Odd `n >= 9`: every member satisfies `m >= (n² + 2n - 3)/4`.
    OddLowerBound,
}

impl BoundTheorem {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundTheorem::EvenOrderRange => "even-order-range",
            BoundTheorem::OddOrderRange => "odd-order-range",
            BoundTheorem::EvenLowerBound => "even-lower-bound",
            BoundTheorem::QuarterSquarePlusOneGap => "quarter-square-plus-one-gap",
            BoundTheorem::OddLowerBound => "odd-lower-bound",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            BoundTheorem::EvenOrderRange => {
                "n even, n > 10: n^2/4 <= m <= C(n,2) is in MEC(n) except m = C(n,2)-1 \
                 and, for n = 2 mod 4, m = n^2/4+1; m = C(n,2)-1 is not in MEC(n)"
            }
            BoundTheorem::OddOrderRange => {
                "n odd, n > 10: (n^2+2n-3)/4 <= m <= C(n,2) is in MEC(n)"
            }
            BoundTheorem::EvenLowerBound => "n even, n >= 4: m in MEC(n) implies m >= n^2/4",
            BoundTheorem::QuarterSquarePlusOneGap => {
                "n >= 10, n = 2 mod 4: n^2/4+1 is not in MEC(n)"
            }
            BoundTheorem::OddLowerBound => "n odd, n >= 9: m in MEC(n) implies m >= (n^2+2n-3)/4",
        }
    }

    /// Whether `n` lies in the order range where the result is proven.
    pub fn covers(&self, n: usize) -> bool {
        match self {
            BoundTheorem::EvenOrderRange => n.is_multiple_of(2) && n > 10,
            BoundTheorem::OddOrderRange => n % 2 == 1 && n > 10,
            BoundTheorem::EvenLowerBound => n.is_multiple_of(2) && n >= 4,
            BoundTheorem::QuarterSquarePlusOneGap => n >= 10 && n % 4 == 2,
            BoundTheorem::OddLowerBound => n % 2 == 1 && n >= 9,
        }
    }
}

impl fmt::Display for BoundTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: usize,
    /// `None` when no proven result covers this order and `value` is the trivial 0.
    pub theorem: Option<BoundTheorem>,
}

/// Smallest possible member of `MEC(n)` according to the proven lower bounds.
///
/// Even `n >= 4`: `n²/4`. Odd `n >= 9`: `(n² + 2n - 3)/4`. Otherwise `0`, not covered.
pub fn mec_lower_bound(n: usize) -> LowerBound {
    if BoundTheorem::EvenLowerBound.covers(n) {
        LowerBound {
            value: n * n / 4,
            theorem: Some(BoundTheorem::EvenLowerBound),
        }
    } else if BoundTheorem::OddLowerBound.covers(n) {
        LowerBound {
            value: (n * n + 2 * n - 3) / 4,
            theorem: Some(BoundTheorem::OddLowerBound),
        }
    } else {
        LowerBound {
            value: 0,
            theorem: None,
        }
    }
}

/// If a proven result excludes `m` from `MEC(n)`, the result that does so.
pub fn theorem_nonmember(n: usize, m: usize) -> Option<BoundTheorem> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return None;
    }
    let lower = mec_lower_bound(n);
    if let Some(t) = lower.theorem {
        if m < lower.value {
            return Some(t);
        }
    }
    if BoundTheorem::QuarterSquarePlusOneGap.covers(n) && m == n * n / 4 + 1 {
        return Some(BoundTheorem::QuarterSquarePlusOneGap);
    }
    if BoundTheorem::EvenOrderRange.covers(n) && m + 1 == max {
        return Some(BoundTheorem::EvenOrderRange);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `a m² + b m + c` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadratic {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl Quadratic {
    pub fn eval(&self, m: Ratio<i128>) -> Ratio<i128> {
        m * m * self.a + m * self.b + Ratio::from_integer(self.c)
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Smaller real root when it is rational, for `a > 0`.
    pub fn smaller_root(&self) -> Option<Ratio<i128>> {
        let d = self.discriminant();
        if self.a <= 0 || d < 0 {
            return None;
        }
        let s = d.sqrt();
        (s * s == d).then(|| Ratio::new(-self.b - s, 2 * self.a))
    }
}

/// The quadratic in `m` obtained by summing the degree-sum hypothesis over all
/// non-edges and bounding `Σ d(v)²` below by `4m²/n`.
///
/// Even (threshold `n`): `8m² + 2n(2 - 3n)m + n⁴ - n³ <= 0`.
/// Odd (threshold `n + 2`): `8m² - 6n²m + n⁴ + n³ - 2n² <= 0`.
pub fn lemma_quadratic(n: usize, parity: Parity) -> Quadratic {
    let n = n as i128;
    match parity {
        Parity::Even => Quadratic {
            a: 8,
            b: 2 * n * (2 - 3 * n),
            c: n.pow(4) - n.pow(3),
        },
        Parity::Odd => Quadratic {
            a: 8,
            b: -6 * n * n,
            c: n.pow(4) + n.pow(3) - 2 * n * n,
        },
    }
}

/// Exact smaller root of [`lemma_quadratic`]: `n²/4` (even) or `n(n + 2)/4` (odd).
pub fn lemma_quadratic_root(n: usize, parity: Parity) -> Ratio<i128> {
    // discriminants are 4n²(n-2)² and 4n²(n-4)², perfect squares for every n
    lemma_quadratic(n, parity)
        .smaller_root()
        .expect("lemma discriminant is a perfect square")
}

/// The bound as the lemmas state it: `n²/4` (even) or `(n² + 2n - 3)/4` (odd).
///
/// For odd orders this is below the exact root `n(n + 2)/4`; it is the
/// constant the spectrum results use.
pub fn lemma_stated_bound(n: usize, parity: Parity) -> Ratio<i128> {
    let n = n as i128;
    match parity {
        Parity::Even => Ratio::new(n * n, 4),
        Parity::Odd => Ratio::new(n * n + 2 * n - 3, 4),
    }
}

/// Every non-adjacent pair `u, v` has `d(u) + d(v) >= threshold`.
pub fn lemma_hypothesis_holds(g: &Graph, threshold: usize) -> bool {
    g.non_edges()
        .all(|(u, v)| g.degree(u) + g.degree(v) >= threshold)
}

/// Every non-adjacent pair has `d(u) + d(v) >= k`.
///
/// Necessary for a maximal coloring with `k` colors: the pair must jointly see every color.
pub fn degree_sum_filter(g: &Graph, k: usize) -> bool {
    lemma_hypothesis_holds(g, k)
}

/// Every independent triple has degree sum at least `2k`.
///
/// Necessary for maximality with `k` colors: a color missed by two of the
/// three vertices could be added between them, so each color is seen at
/// least twice among the three.
pub fn independent_triple_filter(g: &Graph, k: usize) -> bool {
    let n = g.order();
    for u in 0..n {
        let later = g.non_neighbors(u) & !crate::bits::low_mask(u + 1);
        for v in Bits(later) {
            let third = later & g.non_neighbors(v) & !crate::bits::low_mask(v + 1);
            for w in Bits(third) {
                if g.degree(u) + g.degree(v) + g.degree(w) < 2 * k {
                    return false;
                }
            }
        }
    }
    true
}

/// No vertex has more than `k` incident edges.
pub fn max_degree_filter(g: &Graph, k: usize) -> bool {
    g.max_degree() <= k
}

/// `Σ_v d(v)²`.
pub fn degree_square_sum(g: &Graph) -> u64 {
    (0..g.order()).map(|v| (g.degree(v) as u64).pow(2)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionStatus {
    /// Proven results determine `MEC(n)` exactly.
    Complete,
    /// Only partial information is proven; the rest needs search.
    RequiresSearch,
}

/// A boundary of the predicted spectrum and the result it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub boundary: String,
    pub theorem: BoundTheorem,
}

/// What the proven results say about `MEC(n)`.
///
/// With status `Complete` the spectrum is exactly `member_range` minus
/// `exclusions`. With `RequiresSearch`, `member_range` is the interval still
/// in play and `exclusions` the proven gaps inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumPrediction {
    pub n: usize,
    pub status: PredictionStatus,
    pub member_range: (usize, usize),
    pub exclusions: BTreeSet<usize>,
    pub citations: Vec<Citation>,
}

impl SpectrumPrediction {
    /// Members, when the prediction is complete.
    pub fn members(&self) -> Option<Vec<usize>> {
        (self.status == PredictionStatus::Complete).then(|| {
            (self.member_range.0..=self.member_range.1)
                .filter(|m| !self.exclusions.contains(m))
                .collect()
        })
    }
}

pub fn predicted_spectrum(n: usize) -> SpectrumPrediction {
    let max = n * n.saturating_sub(1) / 2;
    let lower = mec_lower_bound(n);
    let mut citations = Vec::new();
    if let Some(t) = lower.theorem {
        citations.push(Citation {
            boundary: format!("no member below {}", lower.value),
            theorem: t,
        });
    }
    let mut exclusions = BTreeSet::new();
    if BoundTheorem::QuarterSquarePlusOneGap.covers(n) {
        let m = n * n / 4 + 1;
        exclusions.insert(m);
        citations.push(Citation {
            boundary: format!("{m} excluded"),
            theorem: BoundTheorem::QuarterSquarePlusOneGap,
        });
    }
    let range_theorem = [BoundTheorem::EvenOrderRange, BoundTheorem::OddOrderRange]
        .into_iter()
        .find(|t| t.covers(n));
    let status = match range_theorem {
        Some(t) => {
            if t == BoundTheorem::EvenOrderRange {
                exclusions.insert(max - 1);
                citations.push(Citation {
                    boundary: format!("{} excluded", max - 1),
                    theorem: t,
                });
            }
            citations.push(Citation {
                boundary: format!("every other m in [{}, {max}] is a member", lower.value),
                theorem: t,
            });
            PredictionStatus::Complete
        }
        None => PredictionStatus::RequiresSearch,
    };
    SpectrumPrediction {
        n,
        status,
        member_range: (lower.value, max),
        exclusions,
        citations,
    }
}
