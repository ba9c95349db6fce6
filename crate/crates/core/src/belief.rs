//! Beliefs induced by a causal space.
//!
//! The final level's algebra `𝔉 = σ(E_1, .., E_N)` carries a unique belief
//! consistent with the causal function: the mass of a final atom is the
//! product of causal values along its ancestry, and `belief(a | b) =
//! mass(a ∩ b) / mass(b)` whenever `mass(b) > 0`.
//!
//! Conditioning on a zero-mass event is still determined when the event is a
//! *path atom* — an atom of some level's algebra — because the chain products
//! below it renormalize exactly (each level's pair of branches sums to 1).
//! For any other zero-mass event the conditional is undetermined and reported
//! as an error rather than a made-up number.
//!
//! On top of `belief` sit the update rules: interventional queries
//! ([`CausalSpace::belief_do`]), batch and sequential Bayesian posteriors,
//! and the log-space diagnostics (per-hypothesis log-likelihood / log-prior /
//! log-evidence decomposition and its expectation under a designated true
//! hypothesis). Only the diagnostics use floating point.

use std::fmt;
use std::ops::Index;

use num_traits::Zero;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, Event, algebra_contains};
use crate::rational::{Rational, rational_ln, rational_to_f64};
use crate::space::{CausalSpace, Literal, SpaceError};

/// Below this many final atoms the parallel splitter costs more than the
/// arithmetic it distributes.
#[cfg(feature = "parallel")]
const PARALLEL_ATOM_THRESHOLD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("event {event} is not measurable in the induced belief space")]
    EventNotMeasurable { event: Event },
    #[error("conditioning event is empty")]
    EmptyCondition,
    #[error("conditioning event {event} has zero belief and is not a path atom")]
    UndeterminedConditional { event: Event },
    #[error("observed data has zero belief")]
    ZeroEvidence,
    #[error("running intersection of the data reaches zero belief at step {step}")]
    ZeroEvidenceAtStep { step: usize },
    #[error("invalid hypothesis partition: {reason}")]
    InvalidHypotheses { reason: String },
    #[error("index {index} out of range for {len} hypotheses")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("hypothesis {index} has zero belief")]
    ZeroBeliefHypothesis { index: usize },
}

impl CausalSpace {
    /// Whether `event` belongs to the final algebra `𝔉`.
    pub fn is_measurable(&self, event: &Event) -> Result<bool, AlgebraError> {
        algebra_contains(self.sequence().atoms(self.len()), event)
    }

    fn ensure_measurable(&self, event: &Event) -> Result<(), BeliefError> {
        if self.is_measurable(event)? {
            Ok(())
        } else {
            Err(BeliefError::EventNotMeasurable {
                event: event.clone(),
            })
        }
    }

    /// Sum of relative masses of the final atoms inside `within`, each taken
    /// from its ancestor at `from_level`. Callers guarantee that `within`
    /// lies below a single atom of `from_level`'s algebra.
    fn sum_path_masses_sequential(&self, within: &Event, from_level: usize) -> Rational {
        let last = self.len();
        self.sequence()
            .atoms(last)
            .blocks()
            .iter()
            .filter(|atom| atom.is_subset(within))
            .map(|atom| {
                self.chain_mass(
                    atom.min_outcome().expect("non-empty atom"),
                    from_level,
                    last,
                )
            })
            .sum()
    }

    #[cfg(feature = "parallel")]
    fn sum_path_masses_parallel(&self, within: &Event, from_level: usize) -> Rational {
        let last = self.len();
        self.sequence()
            .atoms(last)
            .blocks()
            .par_iter()
            .filter(|atom| atom.is_subset(within))
            .map(|atom| {
                self.chain_mass(
                    atom.min_outcome().expect("non-empty atom"),
                    from_level,
                    last,
                )
            })
            .sum()
    }

    fn sum_path_masses(&self, within: &Event, from_level: usize) -> Rational {
        #[cfg(feature = "parallel")]
        if self.sequence().atoms(self.len()).len() >= PARALLEL_ATOM_THRESHOLD {
            return self.sum_path_masses_parallel(within, from_level);
        }
        self.sum_path_masses_sequential(within, from_level)
    }

    /// Unconditional belief of a measurable event: the sum of its atoms'
    /// masses. `mass(Ω) = 1` by construction.
    pub fn mass(&self, event: &Event) -> Result<Rational, BeliefError> {
        self.ensure_measurable(event)?;
        Ok(self.sum_path_masses(event, 0))
    }

    /// [`CausalSpace::mass`] forced onto the sequential path.
    pub fn mass_sequential(&self, event: &Event) -> Result<Rational, BeliefError> {
        self.ensure_measurable(event)?;
        Ok(self.sum_path_masses_sequential(event, 0))
    }

    /// [`CausalSpace::mass`] forced onto the rayon path.
    #[cfg(feature = "parallel")]
    pub fn mass_parallel(&self, event: &Event) -> Result<Rational, BeliefError> {
        self.ensure_measurable(event)?;
        Ok(self.sum_path_masses_parallel(event, 0))
    }

    /// `belief(a | b)` for measurable events. With `mass(b) > 0` this is the
    /// ratio `mass(a ∩ b) / mass(b)`; for a zero-mass path atom the chain
    /// products are re-rooted at `b` instead, which is exact. Conditioning on
    /// the empty event or on any other zero-mass event is an error.
    pub fn belief(&self, a: &Event, b: &Event) -> Result<Rational, BeliefError> {
        self.ensure_measurable(a)?;
        self.ensure_measurable(b)?;
        if b.is_empty() {
            return Err(BeliefError::EmptyCondition);
        }
        let joint = a.intersection(b);
        let mass_b = self.sum_path_masses(b, 0);
        if !mass_b.is_zero() {
            return Ok(self.sum_path_masses(&joint, 0) / mass_b);
        }
        match self.sequence().level_of_atom(b) {
            Some(level) => Ok(self.sum_path_masses(&joint, level)),
            None => Err(BeliefError::UndeterminedConditional { event: b.clone() }),
        }
    }

    /// Interventional query `belief(target | do(literals), given)`: evaluates
    /// the ordinary conditional in the intervened space, conditioning on
    /// `given` intersected with each forced literal's event. An empty literal
    /// list degenerates to `belief(target | given)`.
    pub fn belief_do(
        &self,
        interventions: &[Literal],
        target: &Event,
        given: &Event,
    ) -> Result<Rational, BeliefError> {
        self.ensure_measurable(target)?;
        self.ensure_measurable(given)?;
        let intervened = self.intervene_composite(interventions)?;
        let mut condition = given.clone();
        for &literal in interventions {
            condition = condition.intersection(&self.sequence().literal_event(literal)?);
        }
        intervened.belief(target, &condition)
    }

    /// Posterior over `hypotheses` given one observed event, via the update
    /// rule: prior times likelihood, renormalized. Zero-prior hypotheses get
    /// posterior zero without evaluating their (undefined) likelihood.
    pub fn bayes_posterior(
        &self,
        hypotheses: &HypothesisSet,
        data: &Event,
    ) -> Result<PosteriorVector, BeliefError> {
        self.ensure_measurable(data)?;
        let mut numerators = Vec::with_capacity(hypotheses.len());
        for hypothesis in hypotheses.events() {
            self.ensure_measurable(hypothesis)?;
            let prior = self.sum_path_masses(hypothesis, 0);
            if prior.is_zero() {
                numerators.push(Rational::zero());
            } else {
                let likelihood = self.belief(data, hypothesis)?;
                numerators.push(likelihood * prior);
            }
        }
        let evidence: Rational = numerators.iter().sum();
        if evidence.is_zero() {
            return Err(BeliefError::ZeroEvidence);
        }
        Ok(PosteriorVector::new(
            numerators.into_iter().map(|n| n / &evidence).collect(),
        ))
    }

    /// Sequential Bayesian updating: one posterior per observation, each step
    /// conditioning likelihoods on the hypothesis intersected with the data
    /// seen so far. Exact, and equal to the batch posterior on the running
    /// intersection at every step.
    pub fn sequential_posterior(
        &self,
        hypotheses: &HypothesisSet,
        data: &[Event],
    ) -> Result<Vec<PosteriorVector>, BeliefError> {
        for d in data {
            self.ensure_measurable(d)?;
        }
        let mut history = self.omega();
        let mut current: Vec<Rational> = hypotheses
            .events()
            .iter()
            .map(|h| {
                self.ensure_measurable(h)?;
                Ok(self.sum_path_masses(h, 0))
            })
            .collect::<Result<_, BeliefError>>()?;
        let mut steps = Vec::with_capacity(data.len());
        for (t, d) in data.iter().enumerate() {
            let mut numerators = Vec::with_capacity(current.len());
            for (hypothesis, prior) in hypotheses.events().iter().zip(&current) {
                if prior.is_zero() {
                    numerators.push(Rational::zero());
                } else {
                    // prior > 0 implies mass(hypothesis ∩ history) > 0, so the
                    // likelihood below is an ordinary positive-mass conditional.
                    let context = hypothesis.intersection(&history);
                    numerators.push(self.belief(d, &context)? * prior);
                }
            }
            let evidence: Rational = numerators.iter().sum();
            if evidence.is_zero() {
                return Err(BeliefError::ZeroEvidenceAtStep { step: t + 1 });
            }
            current = numerators.into_iter().map(|n| n / &evidence).collect();
            history = history.intersection(d);
            steps.push(PosteriorVector::new(current.clone()));
        }
        Ok(steps)
    }

    /// Log-space decomposition of the posterior given `data`: per hypothesis
    /// the log-likelihood `l_n = ln belief(data | H_n)` and log-prior `p_n =
    /// ln belief(H_n)`, plus the shared log-evidence `c = ln belief(data)`,
    /// with `ln posterior_n = l_n + p_n - c`. Zero beliefs contribute an
    /// explicit `-inf`; a zero-prior hypothesis whose likelihood is
    /// undetermined gets `l_n = -inf` as well (its posterior is zero either
    /// way). Requires `belief(data) > 0`.
    pub fn posterior_log_decomposition(
        &self,
        hypotheses: &HypothesisSet,
        data: &Event,
    ) -> Result<DiagnosticsReport, BeliefError> {
        self.ensure_measurable(data)?;
        let evidence = self.sum_path_masses(data, 0);
        if evidence.is_zero() {
            return Err(BeliefError::ZeroEvidence);
        }
        let mut log_likelihoods = Vec::with_capacity(hypotheses.len());
        let mut log_priors = Vec::with_capacity(hypotheses.len());
        for hypothesis in hypotheses.events() {
            self.ensure_measurable(hypothesis)?;
            log_priors.push(rational_ln(&self.sum_path_masses(hypothesis, 0)));
            let log_likelihood = match self.belief(data, hypothesis) {
                Ok(v) => rational_ln(&v),
                Err(BeliefError::UndeterminedConditional { .. }) => f64::NEG_INFINITY,
                Err(e) => return Err(e),
            };
            log_likelihoods.push(log_likelihood);
        }
        Ok(DiagnosticsReport {
            log_likelihoods,
            log_priors,
            log_evidence: rational_ln(&evidence),
        })
    }

    /// Expectation of the log-posterior decomposition under the predictive
    /// distribution of the true hypothesis `hypotheses[true_index]`, over a
    /// measurable partition of possible observations: `L_n = Σ_k w_k ln
    /// belief(X_k | H_n)` with weights `w_k = belief(X_k | H_star)`, `P_n`
    /// the plain log-priors, and `C = Σ_k w_k ln belief(X_k)`. Terms with
    /// `w_k = 0` are dropped (the `0·ln 0 = 0` convention); any zero
    /// assigned where `w_k > 0` makes `L_n = -inf`. The true hypothesis
    /// maximizes `L_n` (Gibbs' inequality).
    pub fn expected_log_posterior(
        &self,
        hypotheses: &HypothesisSet,
        observations: &HypothesisSet,
        true_index: usize,
    ) -> Result<DiagnosticsReport, BeliefError> {
        if true_index >= hypotheses.len() {
            return Err(BeliefError::IndexOutOfRange {
                index: true_index,
                len: hypotheses.len(),
            });
        }
        let star = &hypotheses.events()[true_index];
        if self.sum_path_masses(star, 0).is_zero() {
            return Err(BeliefError::ZeroBeliefHypothesis { index: true_index });
        }
        let weights: Vec<Rational> = observations
            .events()
            .iter()
            .map(|x| self.belief(x, star))
            .collect::<Result<_, _>>()?;

        let mut log_evidence = 0.0;
        for (x, weight) in observations.events().iter().zip(&weights) {
            if weight.is_zero() {
                continue;
            }
            // weight > 0 forces mass(x) > 0, so the log is finite.
            log_evidence += rational_to_f64(weight) * rational_ln(&self.sum_path_masses(x, 0));
        }

        let mut log_likelihoods = Vec::with_capacity(hypotheses.len());
        let mut log_priors = Vec::with_capacity(hypotheses.len());
        for hypothesis in hypotheses.events() {
            log_priors.push(rational_ln(&self.sum_path_masses(hypothesis, 0)));
            let mut expected = 0.0;
            for (x, weight) in observations.events().iter().zip(&weights) {
                if weight.is_zero() {
                    continue;
                }
                let assigned = match self.belief(x, hypothesis) {
                    Ok(v) => v,
                    Err(BeliefError::UndeterminedConditional { .. }) => Rational::zero(),
                    Err(e) => return Err(e),
                };
                if assigned.is_zero() {
                    expected = f64::NEG_INFINITY;
                    break;
                }
                expected += rational_to_f64(weight) * rational_ln(&assigned);
            }
            log_likelihoods.push(expected);
        }
        Ok(DiagnosticsReport {
            log_likelihoods,
            log_priors,
            log_evidence,
        })
    }
}

/// A measurable partition of the universe, used both for hypothesis sets and
/// for observation partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisSet {
    events: Vec<Event>,
}

impl HypothesisSet {
    /// Validates that `events` are measurable, non-empty, pairwise disjoint,
    /// and jointly exhaustive in `space`.
    pub fn new(space: &CausalSpace, events: Vec<Event>) -> Result<Self, BeliefError> {
        let invalid = |reason: &str| BeliefError::InvalidHypotheses {
            reason: reason.to_owned(),
        };
        if events.is_empty() {
            return Err(invalid("no hypotheses"));
        }
        let mut union = Event::empty(space.universe());
        for event in &events {
            if !space.is_measurable(event)? {
                return Err(BeliefError::EventNotMeasurable {
                    event: event.clone(),
                });
            }
            if event.is_empty() {
                return Err(invalid("empty hypothesis"));
            }
            if !union.is_disjoint(event) {
                return Err(invalid("hypotheses overlap"));
            }
            union = union.union(event);
        }
        if union != space.omega() {
            return Err(invalid("hypotheses do not cover the universe"));
        }
        Ok(HypothesisSet { events })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An exact probability vector over a hypothesis set, summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosteriorVector {
    values: Vec<Rational>,
}

impl PosteriorVector {
    pub(crate) fn new(values: Vec<Rational>) -> Self {
        debug_assert!(values.iter().sum::<Rational>() == num_traits::One::one());
        PosteriorVector { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.values.iter()
    }
}

impl Index<usize> for PosteriorVector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.values[index]
    }
}

impl fmt::Display for PosteriorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Per-hypothesis log-space terms with a shared evidence term. Produced by
/// [`CausalSpace::posterior_log_decomposition`] (pointwise `l_n`, `p_n`, `c`)
/// and [`CausalSpace::expected_log_posterior`] (expected `L_n`, `P_n`, `C`).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    log_likelihoods: Vec<f64>,
    log_priors: Vec<f64>,
    log_evidence: f64,
}

impl DiagnosticsReport {
    pub fn log_likelihoods(&self) -> &[f64] {
        &self.log_likelihoods
    }

    pub fn log_priors(&self) -> &[f64] {
        &self.log_priors
    }

    pub fn log_evidence(&self) -> f64 {
        self.log_evidence
    }

    /// `l_n + p_n - c`, the log-posterior of hypothesis `n`.
    pub fn log_posterior(&self, index: usize) -> f64 {
        self.log_likelihoods[index] + self.log_priors[index] - self.log_evidence
    }

    pub fn len(&self) -> usize {
        self.log_likelihoods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_likelihoods.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Universe;
    use crate::fixtures;
    use crate::rational::rational;

    fn ev(space: &CausalSpace, indices: &[usize]) -> Event {
        Event::from_indices(space.universe(), indices.iter().copied()).unwrap()
    }

    #[test]
    fn masses_and_conditionals() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        assert_eq!(space.mass(&space.omega()).unwrap(), rational(1, 1));
        assert_eq!(space.mass(&e1).unwrap(), rational(1, 2));
        assert_eq!(space.mass(&e2).unwrap(), rational(7, 24));
        assert_eq!(
            space.mass(&Event::empty(space.universe())).unwrap(),
            rational(0, 1)
        );
        assert_eq!(space.belief(&e1, &space.omega()).unwrap(), rational(1, 2));
        assert_eq!(space.belief(&e1, &e2).unwrap(), rational(4, 7));
        assert_eq!(space.belief(&e2, &e1).unwrap(), rational(1, 3));
        assert_eq!(space.belief(&space.omega(), &e2).unwrap(), rational(1, 1));
        assert_eq!(space.mass_sequential(&e2).unwrap(), rational(7, 24));
        #[cfg(feature = "parallel")]
        assert_eq!(space.mass_parallel(&e2).unwrap(), rational(7, 24));
    }

    #[test]
    fn belief_rejects_bad_conditions() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        assert_eq!(
            space.belief(&e1, &Event::empty(space.universe())),
            Err(BeliefError::EmptyCondition)
        );

        // A one-event space has a coarse algebra: {0} is not measurable.
        let space = fixtures::half();
        let single = ev(&space, &[0]);
        assert_eq!(
            space.mass(&single),
            Err(BeliefError::EventNotMeasurable {
                event: single.clone()
            })
        );
        assert_eq!(
            space.belief(&space.omega(), &single),
            Err(BeliefError::EventNotMeasurable { event: single })
        );
    }

    #[test]
    fn zero_mass_path_conditioning_is_exact() {
        let space = fixtures::rz();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        assert_eq!(space.mass(&e1).unwrap(), rational(0, 1));
        assert_eq!(space.belief(&e2, &e1).unwrap(), rational(1, 3));
        assert_eq!(space.belief(&e1, &e1).unwrap(), rational(1, 1));
        // t(E2 | {1}) = False must survive conditioning on zero mass.
        assert_eq!(
            space.belief(&e2, &ev(&space, &[1])).unwrap(),
            rational(0, 1)
        );
    }

    #[test]
    fn non_path_zero_mass_condition_is_undetermined() {
        // Both level-2 branches under E1's complement get probability 0, so
        // E2 = {0, 2} has zero mass without being a path atom.
        let space = fixtures::rz_degenerate();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        assert_eq!(space.mass(&e2).unwrap(), rational(0, 1));
        assert_eq!(
            space.belief(&e1, &e2),
            Err(BeliefError::UndeterminedConditional { event: e2 })
        );
    }

    #[test]
    fn interventional_queries() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let omega = space.omega();

        // Observation and intervention disagree on E1 given E2.
        assert_eq!(space.belief(&e1, &e2).unwrap(), rational(4, 7));
        assert_eq!(
            space
                .belief_do(&[Literal::positive(2)], &e1, &omega)
                .unwrap(),
            rational(1, 2)
        );
        assert_eq!(space.belief_do(&[], &e1, &e2).unwrap(), rational(4, 7));

        // In RZ all observed E2 mass flows through the ~E1 branch (1/4),
        // while forcing E1 reroutes it through the 1/3 entry.
        let space = fixtures::rz();
        let e2 = ev(&space, &[0, 2]);
        assert_eq!(
            space
                .belief_do(&[Literal::positive(1)], &e2, &space.omega())
                .unwrap(),
            rational(1, 3)
        );
        assert_eq!(space.belief(&e2, &space.omega()).unwrap(), rational(1, 4));
    }

    #[test]
    fn hypothesis_set_validation() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let ok = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();
        assert_eq!(ok.len(), 2);

        let invalid = |events: Vec<Event>| HypothesisSet::new(&space, events).unwrap_err();
        assert!(matches!(
            invalid(vec![]),
            BeliefError::InvalidHypotheses { .. }
        ));
        assert!(matches!(
            invalid(vec![e1.clone(), space.omega()]),
            BeliefError::InvalidHypotheses { .. }
        ));
        assert!(matches!(
            invalid(vec![e1.clone()]),
            BeliefError::InvalidHypotheses { .. }
        ));
        assert!(matches!(
            invalid(vec![
                e1.clone(),
                Event::empty(space.universe()),
                e1.complement()
            ]),
            BeliefError::InvalidHypotheses { .. }
        ));

        let coarse = fixtures::half();
        let bad = Event::from_indices(coarse.universe(), [0]).unwrap();
        assert!(matches!(
            HypothesisSet::new(&coarse, vec![bad.clone(), bad.complement()]),
            Err(BeliefError::EventNotMeasurable { .. })
        ));
    }

    #[test]
    fn bayes_posterior_matches_direct_conditionals() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();

        let posterior = space.bayes_posterior(&hyps, &e2).unwrap();
        assert_eq!(posterior.values(), &[rational(4, 7), rational(3, 7)]);
        assert_eq!(posterior[0], space.belief(&e1, &e2).unwrap());
        assert_eq!(posterior[1], space.belief(&e1.complement(), &e2).unwrap());

        // Ω is uninformative; data inside one hypothesis is conclusive.
        assert_eq!(
            space
                .bayes_posterior(&hyps, &space.omega())
                .unwrap()
                .values(),
            &[rational(1, 2), rational(1, 2)]
        );
        assert_eq!(
            space
                .bayes_posterior(&hyps, &ev(&space, &[1]))
                .unwrap()
                .values(),
            &[rational(1, 1), rational(0, 1)]
        );
        assert_eq!(
            space.bayes_posterior(&hyps, &Event::empty(space.universe())),
            Err(BeliefError::ZeroEvidence)
        );
    }

    #[test]
    fn zero_prior_hypothesis_stays_at_zero() {
        let space = fixtures::rz();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();
        let posterior = space.bayes_posterior(&hyps, &e2).unwrap();
        assert_eq!(posterior.values(), &[rational(0, 1), rational(1, 1)]);
    }

    #[test]
    fn sequential_updates_match_batch() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();

        let steps = space
            .sequential_posterior(&hyps, &[e2.clone(), e1.clone()])
            .unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].values(), &[rational(4, 7), rational(3, 7)]);
        assert_eq!(
            steps[1],
            space.bayes_posterior(&hyps, &e1.intersection(&e2)).unwrap()
        );
        assert_eq!(steps[1].values(), &[rational(1, 1), rational(0, 1)]);

        assert_eq!(space.sequential_posterior(&hyps, &[]).unwrap(), vec![]);
        assert_eq!(
            space.sequential_posterior(&hyps, &[e2.clone(), e2.complement()]),
            Err(BeliefError::ZeroEvidenceAtStep { step: 2 })
        );
    }

    #[test]
    fn log_decomposition_identity() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();

        let report = space.posterior_log_decomposition(&hyps, &e2).unwrap();
        let posterior = space.bayes_posterior(&hyps, &e2).unwrap();
        assert!((report.log_likelihoods()[0] - (1f64 / 3.0).ln()).abs() < 1e-12);
        assert!((report.log_likelihoods()[1] - 0.25f64.ln()).abs() < 1e-12);
        assert!((report.log_priors()[0] - 0.5f64.ln()).abs() < 1e-12);
        assert!((report.log_evidence() - (7f64 / 24.0).ln()).abs() < 1e-12);
        for i in 0..2 {
            let direct = rational_to_f64(&posterior[i]).ln();
            assert!((report.log_posterior(i) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn log_decomposition_zero_prior_is_explicit_neg_infinity() {
        let space = fixtures::rz();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();
        let report = space.posterior_log_decomposition(&hyps, &e2).unwrap();
        assert_eq!(report.log_priors()[0], f64::NEG_INFINITY);
        // E1 is a path atom, so its likelihood is still determined.
        assert!((report.log_likelihoods()[0] - (1f64 / 3.0).ln()).abs() < 1e-12);
        assert_eq!(report.log_posterior(0), f64::NEG_INFINITY);
        assert!(report.log_posterior(1).abs() < 1e-12);
    }

    #[test]
    fn expected_log_posterior_obeys_gibbs() {
        let space = fixtures::rx();
        let e1 = ev(&space, &[0, 1]);
        let e2 = ev(&space, &[0, 2]);
        let hyps = HypothesisSet::new(&space, vec![e1.clone(), e1.complement()]).unwrap();
        let obs = HypothesisSet::new(&space, vec![e2.clone(), e2.complement()]).unwrap();

        let report = space.expected_log_posterior(&hyps, &obs, 0).unwrap();
        let expected_star = (1f64 / 3.0) * (1f64 / 3.0).ln() + (2f64 / 3.0) * (2f64 / 3.0).ln();
        assert!((report.log_likelihoods()[0] - expected_star).abs() < 1e-12);
        for n in 0..hyps.len() {
            assert!(report.log_likelihoods()[0] >= report.log_likelihoods()[n] - 1e-12);
        }

        assert_eq!(
            space.expected_log_posterior(&hyps, &obs, 7),
            Err(BeliefError::IndexOutOfRange { index: 7, len: 2 })
        );
        let rz = fixtures::rz();
        let z1 = ev(&rz, &[0, 1]);
        let z_hyps = HypothesisSet::new(&rz, vec![z1.clone(), z1.complement()]).unwrap();
        let z_obs = HypothesisSet::new(&rz, vec![ev(&rz, &[0, 2]), ev(&rz, &[1, 3])]).unwrap();
        assert_eq!(
            rz.expected_log_posterior(&z_hyps, &z_obs, 0),
            Err(BeliefError::ZeroBeliefHypothesis { index: 0 })
        );
    }

    #[test]
    fn universe_mismatch_is_reported() {
        let space = fixtures::rx();
        let alien = Event::full(Universe::new(5).unwrap());
        assert!(matches!(space.mass(&alien), Err(BeliefError::Algebra(_))));
    }

    /// Sanity check that `half()` really has one event and a coarse algebra.
    #[test]
    fn half_fixture_shape() {
        let space = fixtures::half();
        assert_eq!(space.len(), 1);
        assert_eq!(space.sequence().atoms(1).len(), 2);
        assert_eq!(space.mass(&ev(&space, &[0, 1])).unwrap(), rational(2, 3));
    }
}
