//! Exponents for decoding with an integrated n-gram language model.
//!
//! The left side is the source side (indexed by input positions) and the right
//! side is the target side, whose boundaries each carry `m - 1` words of context.

use super::{side_profile, LinearStrategy, Permutation, StrategyError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingStep {
    /// Source boundaries of the step `k-1` state.
    pub a_c: usize,
    /// Target boundaries of the step `k-1` state.
    pub a_e: usize,
    /// Source boundaries of the collected pair not shared with the old state.
    pub b_c: usize,
    /// Target boundaries of the collected pair not shared with the old state.
    pub b_e: usize,
    /// Source boundaries of the step `k` state.
    pub c_c: usize,
    /// Target boundaries of the step `k` state.
    pub c_e: usize,
    /// `(m-1)(a_e + b_e) + a_c + b_c`.
    pub time_exponent: usize,
    /// `(m-1)(a_e + 2 + c_e) + a_c + 2 + c_c`, counting every boundary of the three items separately.
    pub separate_count_exponent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingReport {
    pub m: usize,
    /// `max_k f1[k] + 2 f2[k] (m-1)`.
    pub space_exponent: usize,
    pub steps: Vec<DecodingStep>,
    pub max_time_exponent: usize,
}

impl DecodingReport {
    pub fn time_exponents(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.time_exponent).collect()
    }
}

pub fn decoding_exponents(
    p: &Permutation,
    s: &LinearStrategy,
    m: usize,
) -> Result<DecodingReport, StrategyError> {
    if m < 2 {
        return Err(StrategyError::LanguageModelOrder(m));
    }
    let prof = side_profile(p, s)?;
    let w = m - 1;
    let space_exponent = prof.boundaries[1..]
        .iter()
        .map(|&(bl, br)| bl / 2 + 2 * (br / 2) * w)
        .max()
        .unwrap_or(0);
    let steps: Vec<DecodingStep> = prof
        .independent
        .iter()
        .enumerate()
        .map(|(idx, &(b_c, b_e))| {
            let (a_c, a_e) = prof.boundaries[idx];
            let (c_c, c_e) = prof.boundaries[idx + 1];
            DecodingStep {
                a_c,
                a_e,
                b_c,
                b_e,
                c_c,
                c_e,
                time_exponent: w * (a_e + b_e) + a_c + b_c,
                separate_count_exponent: w * (a_e + 2 + c_e) + a_c + 2 + c_c,
            }
        })
        .collect();
    let max_time_exponent = steps.iter().map(|s| s.time_exponent).max().unwrap_or(0);
    Ok(DecodingReport {
        m,
        space_exponent,
        steps,
        max_time_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::evaluate;

    #[test]
    fn bigram_matches_step_exponents() {
        let p: Permutation = "6 1 4 2 5 3".parse().unwrap();
        let s: LinearStrategy = "4 5 2 3 1 6".parse().unwrap();
        let d = decoding_exponents(&p, &s, 2).unwrap();
        let rep = evaluate(&p, &s).unwrap();
        assert_eq!(d.time_exponents(), rep.t);
        assert_eq!(d.max_time_exponent, 8);
    }

    #[test]
    fn identity_space_exponent() {
        for m in 2..6 {
            let d = decoding_exponents(&Permutation::identity(4), &LinearStrategy::identity(4), m)
                .unwrap();
            assert_eq!(d.space_exponent, 1 + 2 * (m - 1));
        }
    }

    #[test]
    fn trigram_sigma_prime_by_hand() {
        // Per-side spans after each step of (4,5,2,3,1,6) on 614253:
        // left runs {4},{45},{2,45},{2345},{12345},{123456}; right runs {3},{3,5},{345},{3456},{23456},{123456}.
        let p: Permutation = "6 1 4 2 5 3".parse().unwrap();
        let s: LinearStrategy = "4 5 2 3 1 6".parse().unwrap();
        let d = decoding_exponents(&p, &s, 3).unwrap();
        let f1 = [1, 1, 2, 1, 1, 1];
        let f2 = [1, 2, 1, 1, 1, 1];
        let space = (0..6).map(|k| f1[k] + 2 * f2[k] * 2).max().unwrap();
        assert_eq!(d.space_exponent, space);
        for (k, st) in d.steps.iter().enumerate() {
            assert_eq!(st.c_c, 2 * f1[k]);
            assert_eq!(st.c_e, 2 * f2[k]);
            assert_eq!(st.time_exponent, 2 * (st.a_e + st.b_e) + st.a_c + st.b_c);
        }
    }

    #[test]
    fn rejects_unigram() {
        let p = Permutation::identity(2);
        assert!(decoding_exponents(&p, &LinearStrategy::identity(2), 1).is_err());
    }
}
