//! Exact matching and independent-set counts.
//!
//! The fast path is a dynamic program straight over the code, read right to
//! left. For matchings: an isolated vertex changes nothing; a dominating
//! vertex joining a graph that already has `t` vertices can extend any
//! (k−1)-matching by an edge to one of its `t − 2(k−1)` unmatched vertices,
//! so `m_k += (t − 2(k−1)) · m_{k−1}`. For independent sets: an isolated
//! vertex can join any set (`i_k += i_{k−1}`), a dominating vertex only
//! stands alone (`i_1 += 1`).
//!
//! Counts are arbitrary precision: the empty graph on `n` vertices already
//! has `2^n` independent sets. Brute-force counters over the materialized
//! graph act as independent oracles, guarded by configurable size limits.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::code::{Bit, ThresholdCode};
use crate::graph::Graph;

/// `m_0..m_⌊n/2⌋`: the number of k-edge matchings for each possible size.
/// `m_0 = 1` (the empty matching) and `m_1` is the edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingVector {
    counts: Vec<BigUint>,
}

/// `i_0..i_n`: the number of k-vertex independent sets for each size.
/// `i_0 = 1` and `i_1 = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceVector {
    counts: Vec<BigUint>,
}

macro_rules! count_vector_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn from_counts(counts: Vec<BigUint>) -> Self {
                $ty { counts }
            }

            /// Entries `x_0..x_max`, full fixed length for the vertex count.
            pub fn counts(&self) -> &[BigUint] {
                &self.counts
            }

            /// Entry `k`, reading past the end as zero.
            pub fn get(&self, k: usize) -> BigUint {
                self.counts.get(k).cloned().unwrap_or_else(BigUint::zero)
            }

            /// Sum of all entries.
            pub fn total(&self) -> BigUint {
                self.counts.iter().sum()
            }

            pub fn len(&self) -> usize {
                self.counts.len()
            }

            pub fn is_empty(&self) -> bool {
                self.counts.is_empty()
            }

            /// `self[k] <= other[k]` for every `k` (zero-padded).
            pub fn le_pointwise(&self, other: &Self) -> bool {
                let len = self.counts.len().max(other.counts.len());
                (0..len).all(|k| self.get(k) <= other.get(k))
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (k, c) in self.counts.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }

        // JSON form: an array of decimal strings, exact at any size.
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
                for c in &self.counts {
                    seq.serialize_element(&c.to_string())?;
                }
                seq.end()
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct V;
                impl<'de> Visitor<'de> for V {
                    type Value = Vec<BigUint>;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("an array of decimal integer strings")
                    }
                    fn visit_seq<A: SeqAccess<'de>>(
                        self,
                        mut seq: A,
                    ) -> Result<Self::Value, A::Error> {
                        let mut counts = Vec::new();
                        while let Some(text) = seq.next_element::<String>()? {
                            let v = text.parse::<BigUint>().map_err(|_| {
                                serde::de::Error::custom(format!(
                                    "not a decimal integer: {text:?}"
                                ))
                            })?;
                            counts.push(v);
                        }
                        Ok(counts)
                    }
                }
                Ok($ty { counts: deserializer.deserialize_seq(V)? })
            }
        }
    };
}

count_vector_impl!(MatchingVector);
count_vector_impl!(IndependenceVector);

/// Count matchings of every size by dynamic programming over the code.
pub fn match_vector(code: &ThresholdCode) -> MatchingVector {
    let n = code.n();
    let mut m = vec![BigUint::zero(); n / 2 + 1];
    m[0] = BigUint::one();
    // t counts the vertices already placed; the `*` vertex is there from the start
    for (t, &bit) in (1u64..).zip(code.symbols().iter().rev()) {
        if bit == Bit::One {
            let kmax = m.len() - 1;
            for k in (1..=kmax).rev() {
                let matched = 2 * (k as u64 - 1);
                if t > matched && !m[k - 1].is_zero() {
                    let grown = &m[k - 1] * (t - matched);
                    m[k] += grown;
                }
            }
        }
    }
    MatchingVector { counts: m }
}

/// Count independent sets of every size by dynamic programming over the code.
pub fn ind_vector(code: &ThresholdCode) -> IndependenceVector {
    let n = code.n();
    let mut i = vec![BigUint::zero(); n + 1];
    i[0] = BigUint::one();
    i[1] = BigUint::one();
    for &bit in code.symbols().iter().rev() {
        match bit {
            Bit::One => i[1] += 1u32,
            Bit::Zero => {
                for k in (1..i.len()).rev() {
                    if !i[k - 1].is_zero() {
                        let add = i[k - 1].clone();
                        i[k] += add;
                    }
                }
            }
        }
    }
    IndependenceVector { counts: i }
}

/// Size caps for the brute-force oracles. Matchings backtrack over edge
/// subsets; independent sets sweep all `2^n` vertex subsets, so its cap can
/// sit higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub matchings: usize,
    pub indsets: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { matchings: 12, indsets: 24 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("graph on {n} vertices exceeds the {limit}-vertex oracle limit for {counting}")]
pub struct OracleLimitError {
    pub n: usize,
    pub limit: usize,
    pub counting: &'static str,
}

/// Count matchings by definition: backtrack over the edge list, never
/// touching a matched vertex twice.
pub fn brute_force_match_vector(
    graph: &Graph,
    limits: &OracleLimits,
) -> Result<MatchingVector, OracleLimitError> {
    let n = graph.n();
    let limit = limits.matchings.min(64); // vertex bitmask width
    if n > limit {
        return Err(OracleLimitError { n, limit, counting: "matchings" });
    }
    let edges = graph.edges();
    let mut counts = vec![BigUint::zero(); n / 2 + 1];

    fn rec(edges: &[(usize, usize)], from: usize, used: u64, size: usize, counts: &mut [BigUint]) {
        counts[size] += 1u32;
        for (idx, &(u, v)) in edges.iter().enumerate().skip(from) {
            if used >> u & 1 == 0 && used >> v & 1 == 0 {
                rec(edges, idx + 1, used | 1 << u | 1 << v, size + 1, counts);
            }
        }
    }
    rec(&edges, 0, 0, 0, &mut counts);
    Ok(MatchingVector { counts })
}

/// Count independent sets by definition: a subset sweep where each mask
/// extends a smaller independent set by its lowest vertex.
pub fn brute_force_ind_vector(
    graph: &Graph,
    limits: &OracleLimits,
) -> Result<IndependenceVector, OracleLimitError> {
    let n = graph.n();
    let limit = limits.indsets.min(30); // subset-table memory wall
    if n > limit {
        return Err(OracleLimitError { n, limit, counting: "independent sets" });
    }
    let adjacency: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).ones().fold(0u32, |acc, u| acc | 1 << u))
        .collect();
    let mut counts = vec![BigUint::zero(); n + 1];
    let total = 1u32 << n;
    let mut independent = vec![false; total as usize];
    independent[0] = true;
    counts[0] += 1u32;
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = (mask & (mask - 1)) as usize;
        if independent[rest] && adjacency[low] & mask == 0 {
            independent[mask as usize] = true;
            counts[mask.count_ones() as usize] += 1u32;
        }
    }
    Ok(IndependenceVector { counts })
}
