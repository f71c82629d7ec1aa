//! Markov-correlated dephasing error model.
//!
//! Each channel use either leaves the carried qubit alone (`I`) or applies a
//! phase flip (`Z`). Consecutive uses are correlated by a two-state Markov
//! chain: with probability `mu` the previous label is repeated verbatim, with
//! probability `1 - mu` a fresh label is drawn from the stationary
//! distribution `(p0, 1 - p0)`. `mu = 0` is the memoryless channel, `mu = 1`
//! repeats the first label forever.
//!
//! The chain starts in its stationary distribution, so the marginal of every
//! position is `(p0, pz)` regardless of `mu`.

use rand::Rng;

use crate::{Error, Real, Result};

/// Longest sequence `enumerate_sequences` will expand (2^20 ~ 1e6 entries).
pub const MAX_ENUMERATION_LEN: usize = 20;

/// Label attached to a single channel use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    /// Identity: the qubit passes through untouched.
    I,
    /// Phase flip applied to the carried qubit.
    Z,
}

impl PauliLabel {
    /// Both labels, in enumeration order (`I` before `Z`).
    pub const ALL: [PauliLabel; 2] = [PauliLabel::I, PauliLabel::Z];

    /// True for the phase-flip label.
    pub fn is_flip(self) -> bool {
        matches!(self, PauliLabel::Z)
    }
}

impl std::fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PauliLabel::I => "I",
            PauliLabel::Z => "Z",
        })
    }
}

/// Nonempty run of labels, one per channel use, in transmission order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErrorSequence(Vec<PauliLabel>);

impl ErrorSequence {
    /// Wraps a label run; rejects the empty run.
    pub fn new(labels: Vec<PauliLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self(labels))
    }

    /// Sequence for `index` interpreted as an `n`-bit number, first use in
    /// the most significant bit, `I = 0`, `Z = 1`. Counting `index` upward
    /// therefore walks the sequences in lexicographic order with `I < Z`.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        debug_assert!(index < (1usize << n));
        let labels = (0..n)
            .map(|k| {
                if (index >> (n - 1 - k)) & 1 == 1 {
                    PauliLabel::Z
                } else {
                    PauliLabel::I
                }
            })
            .collect();
        Ok(Self(labels))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Never true; sequences are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[PauliLabel] {
        &self.0
    }

    /// Number of `Z` labels in the run.
    pub fn flip_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_flip()).count()
    }
}

impl std::ops::Index<usize> for ErrorSequence {
    type Output = PauliLabel;

    fn index(&self, k: usize) -> &PauliLabel {
        &self.0[k]
    }
}

impl std::fmt::Display for ErrorSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for label in &self.0 {
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ErrorSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .chars()
            .map(|c| match c {
                'I' => Ok(PauliLabel::I),
                'Z' => Ok(PauliLabel::Z),
                _ => Err(Error::InvalidParameter {
                    name: "sequence",
                    value: f64::NAN,
                    constraint: "labels must be 'I' or 'Z'",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels)
    }
}

/// Stationary single-use distribution plus memory strength.
///
/// `p0` is the stationary probability of `I` (no flip); `mu` in `[0, 1]` is
/// the probability that a use repeats the label of the previous one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams<T> {
    p0: T,
    mu: T,
}

impl<T: Real> ChannelParams<T> {
    /// Validates both parameters into `[0, 1]`; NaN is rejected.
    pub fn new(p0: T, mu: T) -> Result<Self> {
        if !(p0 >= T::zero() && p0 <= T::one()) {
            return Err(Error::InvalidParameter {
                name: "p0",
                value: p0.to_f64().unwrap_or(f64::NAN),
                constraint: "must lie in [0, 1]",
            });
        }
        if !(mu >= T::zero() && mu <= T::one()) {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu.to_f64().unwrap_or(f64::NAN),
                constraint: "must lie in [0, 1]",
            });
        }
        Ok(Self { p0, mu })
    }

    pub fn p0(&self) -> T {
        self.p0
    }

    /// Stationary flip probability `1 - p0`.
    pub fn pz(&self) -> T {
        T::one() - self.p0
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// Stationary probability of `label`.
    pub fn stationary(&self, label: PauliLabel) -> T {
        match label {
            PauliLabel::I => self.p0(),
            PauliLabel::Z => self.pz(),
        }
    }

    /// Transition probability `P(next | prev)`: a fresh stationary draw with
    /// weight `1 - mu` plus exact repetition with weight `mu`.
    pub fn conditional(&self, prev: PauliLabel, next: PauliLabel) -> T {
        let fresh = (T::one() - self.mu) * self.stationary(next);
        if prev == next {
            fresh + self.mu
        } else {
            fresh
        }
    }

    /// The four conditionals written as repeat/switch probabilities.
    pub fn derived_probs(&self) -> DerivedProbs<T> {
        DerivedProbs::new(self)
    }
}

/// Repeat and switch probabilities of the label chain.
///
/// `q0 = P(I | I)`, `qz = P(Z | Z)`, and the complements `r0 = 1 - q0`,
/// `rz = 1 - qz`. Clamped into `[0, 1]` to absorb last-bit rounding of the
/// underlying products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedProbs<T> {
    pub q0: T,
    pub qz: T,
    pub r0: T,
    pub rz: T,
}

impl<T: Real> DerivedProbs<T> {
    pub fn new(params: &ChannelParams<T>) -> Self {
        let clamp01 = |x: T| x.max(T::zero()).min(T::one());
        let q0 = clamp01(params.conditional(PauliLabel::I, PauliLabel::I));
        let qz = clamp01(params.conditional(PauliLabel::Z, PauliLabel::Z));
        Self {
            q0,
            qz,
            r0: T::one() - q0,
            rz: T::one() - qz,
        }
    }
}

/// Probability of drawing `seq` from the chain started in its stationary
/// distribution: the stationary weight of the first label times one
/// transition factor per subsequent use.
pub fn sequence_prob<T: Real>(seq: &ErrorSequence, params: &ChannelParams<T>) -> T {
    let labels = seq.labels();
    let mut p = params.stationary(labels[0]);
    for pair in labels.windows(2) {
        p *= params.conditional(pair[0], pair[1]);
    }
    p
}

/// All `2^n` sequences of length `n` with their probabilities, in
/// lexicographic order with `I` before `Z` (binary counting, first use most
/// significant). Capped at [`MAX_ENUMERATION_LEN`].
pub fn enumerate_sequences<T: Real>(
    n: usize,
    params: &ChannelParams<T>,
) -> Result<Vec<(ErrorSequence, T)>> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n > MAX_ENUMERATION_LEN {
        return Err(Error::SequenceTooLong {
            len: n,
            max: MAX_ENUMERATION_LEN,
        });
    }
    (0..1usize << n)
        .map(|index| {
            let seq = ErrorSequence::from_index(n, index)?;
            let p = sequence_prob(&seq, params);
            Ok((seq, p))
        })
        .collect()
}

/// Draws one sequence of length `n` by ancestral sampling: the first label
/// from the stationary distribution, each later one from the conditional
/// given its predecessor. Consumes exactly one uniform f64 per position, in
/// position order, so a seeded generator reproduces sequences bit for bit.
pub fn sample_sequence<T: Real, R: Rng + ?Sized>(
    n: usize,
    params: &ChannelParams<T>,
    rng: &mut R,
) -> Result<ErrorSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let mut labels = Vec::with_capacity(n);
    let first = draw(params.stationary(PauliLabel::I), rng);
    labels.push(first);
    for _ in 1..n {
        let prev = *labels.last().expect("labels is nonempty");
        let next = draw(params.conditional(prev, PauliLabel::I), rng);
        labels.push(next);
    }
    ErrorSequence::new(labels)
}

/// `I` with probability `p_i`, else `Z`. `u < p_i` keeps the edge cases
/// exact: `p_i = 1` always yields `I`, `p_i = 0` never does.
fn draw<T: Real, R: Rng + ?Sized>(p_i: T, rng: &mut R) -> PauliLabel {
    let u = T::of(rng.random::<f64>());
    if u < p_i {
        PauliLabel::I
    } else {
        PauliLabel::Z
    }
}
