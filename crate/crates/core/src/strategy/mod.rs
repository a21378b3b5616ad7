//! Boundary accounting for linear parsing strategies of a single synchronous rule.
//!
//! Positions, steps and permutation values are 1-based throughout the public API.
//! A [`Permutation`] `p` links right position `j` to left position `p.apply(j)`;
//! a [`LinearStrategy`] `s` collects left position `s.order(k)` at step `k`.

mod decoding;
mod optimize;

pub use decoding::{decoding_exponents, DecodingReport, DecodingStep};
pub use optimize::{
    brute_force_optimize, optimize, optimize_space, optimize_time, Objective, Optimum,
    BRUTE_FORCE_LIMIT, DEFAULT_SIZE_LIMIT,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("permutation must be non-empty")]
    Empty,
    #[error("not a bijection on 1..={len}: {detail}")]
    NotBijection { len: usize, detail: String },
    #[error("invalid token {0:?} in permutation text")]
    BadToken(String),
    #[error("size mismatch: permutation has {perm} pairs, strategy has {strategy}")]
    SizeMismatch { perm: usize, strategy: usize },
    #[error("step {k} outside 1..={r}")]
    StepOutOfRange { k: usize, r: usize },
    #[error("size {r} exceeds the solver limit {limit}")]
    SizeLimit { r: usize, limit: usize },
    #[error("language model order must be at least 2, got {0}")]
    LanguageModelOrder(usize),
}

/// A bijection on `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Builds from the one-line image `p(1) .. p(r)`.
    pub fn new(image: Vec<usize>) -> Result<Self, StrategyError> {
        if image.is_empty() {
            return Err(StrategyError::Empty);
        }
        let r = image.len();
        let mut seen = vec![false; r];
        for &v in &image {
            if v == 0 || v > r {
                return Err(StrategyError::NotBijection {
                    len: r,
                    detail: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(StrategyError::NotBijection {
                    len: r,
                    detail: format!("value {v} repeated"),
                });
            }
        }
        Ok(Permutation { map: image })
    }

    pub fn identity(r: usize) -> Self {
        assert!(r >= 1, "identity permutation needs r >= 1");
        Permutation {
            map: (1..=r).collect(),
        }
    }

    /// Builds from a 0-based image of `0..r`.
    pub fn from_zero_based(image: &[usize]) -> Result<Self, StrategyError> {
        Self::new(image.iter().map(|v| v + 1).collect())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `p(j)`.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (j, &v) in self.map.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { map: inv }
    }

    pub fn image(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(j, &v)| v == j + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = StrategyError;

    /// Whitespace-separated one-line image. A single token of digits with no
    /// separators and `r < 10` (such as `614253`) is also accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let values: Result<Vec<usize>, _> = if tokens.len() == 1
            && tokens[0].len() > 1
            && tokens[0].len() < 10
            && tokens[0].bytes().all(|b| b.is_ascii_digit())
        {
            Ok(tokens[0].bytes().map(|b| (b - b'0') as usize).collect())
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| StrategyError::BadToken(t.to_string()))
                })
                .collect()
        };
        Permutation::new(values?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.map.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        Permutation::new(v).map_err(serde::de::Error::custom)
    }
}

/// The order in which a rule's linked pairs are collected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearStrategy {
    order: Permutation,
}

impl LinearStrategy {
    pub fn new(order: Vec<usize>) -> Result<Self, StrategyError> {
        Ok(LinearStrategy {
            order: Permutation::new(order)?,
        })
    }

    /// Left-to-right collection.
    pub fn identity(r: usize) -> Self {
        LinearStrategy {
            order: Permutation::identity(r),
        }
    }

    pub fn from_permutation(order: Permutation) -> Self {
        LinearStrategy { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Left position collected at step `k`.
    pub fn order(&self, k: usize) -> usize {
        self.order.apply(k)
    }

    /// Step at which left position `i` is collected.
    pub fn step_of(&self, i: usize) -> usize {
        // Callers that need many lookups use `steps_of_left` instead.
        self.order
            .image()
            .iter()
            .position(|&v| v == i)
            .expect("position in range")
            + 1
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.order
    }

    pub fn reversed(&self) -> LinearStrategy {
        let mut v = self.order.image().to_vec();
        v.reverse();
        LinearStrategy {
            order: Permutation { map: v },
        }
    }

    fn steps_of_left(&self) -> Vec<usize> {
        self.order.inverse().map
    }
}

impl fmt::Display for LinearStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.order.fmt(f)
    }
}

impl FromStr for LinearStrategy {
    type Err = StrategyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(LinearStrategy { order: s.parse()? })
    }
}

/// Step numbers at which each left and each right position is collected.
struct CollectionSteps {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl CollectionSteps {
    fn new(p: &Permutation, s: &LinearStrategy) -> Result<Self, StrategyError> {
        if p.len() != s.len() {
            return Err(StrategyError::SizeMismatch {
                perm: p.len(),
                strategy: s.len(),
            });
        }
        let left = s.steps_of_left();
        let right = p.map.iter().map(|&i| left[i - 1]).collect();
        Ok(CollectionSteps { left, right })
    }

    fn r(&self) -> usize {
        self.left.len()
    }

    fn check_step(&self, k: usize) -> Result<(), StrategyError> {
        if k == 0 || k > self.r() {
            return Err(StrategyError::StepOutOfRange { k, r: self.r() });
        }
        Ok(())
    }

    fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Neighbouring positions on one side with exactly one of the two collected.
    fn internal_on(&self, side: Side, k: usize) -> usize {
        let st = self.side(side);
        let opens = st.windows(2).filter(|w| w[0] <= k && w[1] > k).count();
        let closes = st.windows(2).filter(|w| w[0] > k && w[1] <= k).count();
        opens + closes
    }

    fn external_on(&self, side: Side, k: usize) -> usize {
        let st = self.side(side);
        usize::from(st[0] <= k) + usize::from(st[st.len() - 1] <= k)
    }

    /// Boundaries of the step-`k` state on one side; 0 for `k = 0`.
    fn boundaries_on(&self, side: Side, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.internal_on(side, k) + self.external_on(side, k)
        }
    }

    /// New boundaries contributed on one side by the pair collected at step `k`.
    fn independent_on(
        &self,
        side: Side,
        s: &LinearStrategy,
        p_inv: &Permutation,
        k: usize,
    ) -> usize {
        let i = s.order(k);
        let pos = match side {
            Side::Left => i,
            Side::Right => p_inv.apply(i),
        };
        let st = self.side(side);
        let mut shared = 0;
        if pos > 1 && st[pos - 2] < k {
            shared += 1;
        }
        if pos < st.len() && st[pos] < k {
            shared += 1;
        }
        2 - shared
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Number of internal boundaries of the state after step `k`.
pub fn internal_boundaries(
    p: &Permutation,
    s: &LinearStrategy,
    k: usize,
) -> Result<usize, StrategyError> {
    let c = CollectionSteps::new(p, s)?;
    c.check_step(k)?;
    Ok(c.internal_on(Side::Left, k) + c.internal_on(Side::Right, k))
}

/// Number of external boundaries of the state after step `k`.
pub fn external_boundaries(
    p: &Permutation,
    s: &LinearStrategy,
    k: usize,
) -> Result<usize, StrategyError> {
    let c = CollectionSteps::new(p, s)?;
    c.check_step(k)?;
    Ok(c.external_on(Side::Left, k) + c.external_on(Side::Right, k))
}

/// Number of substrings spanned by the state after step `k`.
pub fn fan_out(p: &Permutation, s: &LinearStrategy, k: usize) -> Result<usize, StrategyError> {
    let ib = internal_boundaries(p, s, k)?;
    let eb = external_boundaries(p, s, k)?;
    debug_assert_eq!((ib + eb) % 2, 0);
    Ok((ib + eb) / 2)
}

/// Boundaries of the pair collected at step `k` that are not boundaries of the step `k-1` state.
pub fn independent_boundaries(
    p: &Permutation,
    s: &LinearStrategy,
    k: usize,
) -> Result<usize, StrategyError> {
    let c = CollectionSteps::new(p, s)?;
    c.check_step(k)?;
    let inv = p.inverse();
    Ok(c.independent_on(Side::Left, s, &inv, k) + c.independent_on(Side::Right, s, &inv, k))
}

/// Exponent of the input length in the cost of step `k`.
pub fn step_time_exponent(
    p: &Permutation,
    s: &LinearStrategy,
    k: usize,
) -> Result<usize, StrategyError> {
    let prev = if k > 1 { fan_out(p, s, k - 1)? } else { 0 };
    Ok(2 * prev + independent_boundaries(p, s, k)?)
}

/// Per-step boundary profile of a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub ib: Vec<usize>,
    pub eb: Vec<usize>,
    pub fo: Vec<usize>,
    pub delta: Vec<usize>,
    pub t: Vec<usize>,
    pub max_fo: usize,
    pub max_t: usize,
}

impl StrategyReport {
    /// Exponent of the input length in the chart size, `2 * max_fo`.
    pub fn space_exponent(&self) -> usize {
        2 * self.max_fo
    }
}

pub fn evaluate(p: &Permutation, s: &LinearStrategy) -> Result<StrategyReport, StrategyError> {
    let c = CollectionSteps::new(p, s)?;
    let inv = p.inverse();
    let r = c.r();
    let mut rep = StrategyReport {
        ib: Vec::with_capacity(r),
        eb: Vec::with_capacity(r),
        fo: Vec::with_capacity(r),
        delta: Vec::with_capacity(r),
        t: Vec::with_capacity(r),
        max_fo: 0,
        max_t: 0,
    };
    let mut prev_fo = 0;
    for k in 1..=r {
        let ib = c.internal_on(Side::Left, k) + c.internal_on(Side::Right, k);
        let eb = c.external_on(Side::Left, k) + c.external_on(Side::Right, k);
        let delta =
            c.independent_on(Side::Left, s, &inv, k) + c.independent_on(Side::Right, s, &inv, k);
        let fo = (ib + eb) / 2;
        let t = 2 * prev_fo + delta;
        rep.ib.push(ib);
        rep.eb.push(eb);
        rep.fo.push(fo);
        rep.delta.push(delta);
        rep.t.push(t);
        rep.max_fo = rep.max_fo.max(fo);
        rep.max_t = rep.max_t.max(t);
        prev_fo = fo;
    }
    Ok(rep)
}

/// Per-side quantities used by the decoding accounting.
pub(crate) struct SideProfile {
    /// Boundaries on (left, right) after step `k`, index `k` in `0..=r`.
    pub boundaries: Vec<(usize, usize)>,
    /// Independent boundaries on (left, right) at step `k`, index `k - 1`.
    pub independent: Vec<(usize, usize)>,
}

pub(crate) fn side_profile(
    p: &Permutation,
    s: &LinearStrategy,
) -> Result<SideProfile, StrategyError> {
    let c = CollectionSteps::new(p, s)?;
    let inv = p.inverse();
    let r = c.r();
    let boundaries = (0..=r)
        .map(|k| {
            (
                c.boundaries_on(Side::Left, k),
                c.boundaries_on(Side::Right, k),
            )
        })
        .collect();
    let independent = (1..=r)
        .map(|k| {
            (
                c.independent_on(Side::Left, s, &inv, k),
                c.independent_on(Side::Right, s, &inv, k),
            )
        })
        .collect();
    Ok(SideProfile {
        boundaries,
        independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p614253() -> Permutation {
        "6 1 4 2 5 3".parse().unwrap()
    }

    fn sigma_prime() -> LinearStrategy {
        "4 5 2 3 1 6".parse().unwrap()
    }

    #[test]
    fn parses_compact_and_spaced_forms() {
        assert_eq!("614253".parse::<Permutation>().unwrap(), p614253());
        assert_eq!(p614253().to_string(), "6 1 4 2 5 3");
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let p = p614253();
        assert_eq!(p.inverse().inverse(), p);
        for j in 1..=6 {
            assert_eq!(p.inverse().apply(p.apply(j)), j);
        }
    }

    #[test]
    fn worked_example_identity() {
        let p = p614253();
        let id = LinearStrategy::identity(6);
        assert_eq!(internal_boundaries(&p, &id, 3).unwrap(), 6);
        assert_eq!(external_boundaries(&p, &id, 3).unwrap(), 2);
        assert_eq!(fan_out(&p, &id, 3).unwrap(), 4);
        assert_eq!(independent_boundaries(&p, &id, 3).unwrap(), 3);
        assert_eq!(step_time_exponent(&p, &id, 3).unwrap(), 9);
        let rep = evaluate(&p, &id).unwrap();
        assert_eq!(rep.fo, vec![2, 3, 4, 3, 2, 2]);
        assert_eq!(rep.max_fo, 4);
        assert_eq!(rep.space_exponent(), 8);
        assert_eq!(rep.max_t, 9);
    }

    #[test]
    fn worked_example_sigma_prime() {
        let p = p614253();
        let s = sigma_prime();
        assert_eq!(external_boundaries(&p, &s, 2).unwrap(), 0);
        assert_eq!(fan_out(&p, &s, 2).unwrap(), 3);
        assert_eq!(fan_out(&p, &s, 3).unwrap(), 3);
        assert_eq!(independent_boundaries(&p, &s, 3).unwrap(), 2);
        assert_eq!(step_time_exponent(&p, &s, 3).unwrap(), 8);
        let rep = evaluate(&p, &s).unwrap();
        assert_eq!(rep.max_fo, 3);
        assert_eq!(rep.max_t, 8);
    }

    #[test]
    fn small_anchor_values() {
        let p: Permutation = "2 1 4 3".parse().unwrap();
        assert_eq!(
            internal_boundaries(&p, &LinearStrategy::identity(4), 2).unwrap(),
            2
        );
        let one = Permutation::identity(1);
        let s1 = LinearStrategy::identity(1);
        assert_eq!(fan_out(&one, &s1, 1).unwrap(), 2);
        assert_eq!(step_time_exponent(&one, &s1, 1).unwrap(), 4);
    }

    #[test]
    fn final_step_and_first_step() {
        let p = p614253();
        for s in [LinearStrategy::identity(6), sigma_prime()] {
            assert_eq!(internal_boundaries(&p, &s, 6).unwrap(), 0);
            assert_eq!(external_boundaries(&p, &s, 6).unwrap(), 4);
            assert_eq!(fan_out(&p, &s, 6).unwrap(), 2);
            assert_eq!(independent_boundaries(&p, &s, 1).unwrap(), 4);
        }
    }

    #[test]
    fn identity_rule_is_monotone() {
        for r in 1..8 {
            let rep = evaluate(&Permutation::identity(r), &LinearStrategy::identity(r)).unwrap();
            assert!(rep.fo.iter().all(|&f| f == 2));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = p614253();
        let s = LinearStrategy::identity(5);
        assert!(matches!(
            evaluate(&p, &s),
            Err(StrategyError::SizeMismatch { .. })
        ));
        let id = LinearStrategy::identity(6);
        assert!(matches!(
            fan_out(&p, &id, 0),
            Err(StrategyError::StepOutOfRange { .. })
        ));
        assert!(matches!(
            fan_out(&p, &id, 7),
            Err(StrategyError::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn report_serializes_with_expected_keys() {
        let rep = evaluate(&p614253(), &sigma_prime()).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["ib", "eb", "fo", "delta", "t", "max_fo", "max_t"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
