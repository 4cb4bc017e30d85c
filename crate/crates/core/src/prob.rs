//! Finite probability distributions with exact weights.
//!
//! A [`FiniteDist`] is a finite set of outcomes with rational weights that sum
//! to exactly one. Everything downstream (conditioning, products, pushforward)
//! stays in exact arithmetic, so posteriors come out as reduced fractions.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite distribution: outcomes paired with exact weights summing to one.
///
/// Outcomes are deduplicated (weights merged) and kept in first-insertion
/// order, so iteration order is deterministic and independent of hashing.
/// Zero-weight outcomes are dropped on construction and after conditioning.
#[derive(Clone, Debug)]
pub struct FiniteDist<T: Clone + Eq + Hash> {
    outcomes: IndexMap<T, Rational>,
}

impl<T: Clone + Eq + Hash + 'static> FiniteDist<T> {
    /// Builds a distribution from weighted outcomes.
    ///
    /// Weights must be non-negative with a positive total; they are
    /// normalized by the exact total, so callers may pass unnormalized
    /// weights. Duplicate outcomes are merged by adding weights.
    pub fn new(outcomes: impl IntoIterator<Item = (T, Rational)>) -> Result<Self> {
        let mut map: IndexMap<T, Rational> = IndexMap::new();
        let mut total = Rational::zero();
        for (outcome, w) in outcomes {
            if w.is_negative() {
                return Err(Error::NegativeWeight);
            }
            total += &w;
            if w.is_zero() {
                continue;
            }
            match map.get_mut(&outcome) {
                Some(acc) => *acc += w,
                None => {
                    map.insert(outcome, w);
                }
            }
        }
        if total.is_zero() {
            return Err(Error::ZeroTotalWeight);
        }
        if !total.is_one() {
            for w in map.values_mut() {
                *w = w.checked_div(&total).expect("total is nonzero");
            }
        }
        Ok(FiniteDist { outcomes: map })
    }

    /// The distribution concentrated on a single outcome.
    pub fn certain(outcome: T) -> Self {
        let mut map = IndexMap::new();
        map.insert(outcome, Rational::one());
        FiniteDist { outcomes: map }
    }

    /// Equal weight on each listed outcome (duplicates merge, so a repeated
    /// outcome counts twice).
    pub fn uniform(outcomes: impl IntoIterator<Item = T>) -> Result<Self> {
        let items: Vec<T> = outcomes.into_iter().collect();
        let n = items.len();
        if n == 0 {
            return Err(Error::ZeroTotalWeight);
        }
        let w = Rational::new(1, n as i64)?;
        FiniteDist::new(items.into_iter().map(|o| (o, w.clone())))
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.outcomes.iter()
    }

    pub fn weight_of(&self, outcome: &T) -> Rational {
        self.outcomes.get(outcome).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of all weights. Always exactly one; exposed for invariant checks.
    pub fn total_weight(&self) -> Rational {
        self.outcomes.values().sum()
    }

    /// P(event): the exact total weight of outcomes satisfying the event.
    pub fn prob(&self, event: &EventPredicate<T>) -> Rational {
        self.outcomes
            .iter()
            .filter(|(o, _)| event.holds(o))
            .map(|(_, w)| w)
            .sum()
    }

    /// Conditions on the event, renormalizing the surviving weights.
    ///
    /// Fails if the event has probability zero, naming the event in the
    /// error: conditioning on a null event has no meaningful answer.
    pub fn condition(&self, event: &EventPredicate<T>) -> Result<Self> {
        let total = self.prob(event);
        if total.is_zero() {
            return Err(Error::ZeroProbabilityCondition(event.label().to_string()));
        }
        let mut map = IndexMap::new();
        for (o, w) in &self.outcomes {
            if event.holds(o) {
                map.insert(o.clone(), w.checked_div(&total)?);
            }
        }
        Ok(FiniteDist { outcomes: map })
    }

    /// P(event | given) without materializing the conditioned distribution.
    pub fn cond_prob(&self, event: &EventPredicate<T>, given: &EventPredicate<T>) -> Result<Rational> {
        let denom = self.prob(given);
        if denom.is_zero() {
            return Err(Error::ZeroProbabilityCondition(given.label().to_string()));
        }
        let joint = self.prob(&event.and(given));
        joint.checked_div(&denom)
    }

    /// Image distribution under `f`; colliding images merge their weights.
    pub fn map<U: Clone + Eq + Hash>(&self, f: impl Fn(&T) -> U) -> FiniteDist<U> {
        let mut map: IndexMap<U, Rational> = IndexMap::new();
        for (o, w) in &self.outcomes {
            let image = f(o);
            match map.get_mut(&image) {
                Some(acc) => *acc += w,
                None => {
                    map.insert(image, w.clone());
                }
            }
        }
        FiniteDist { outcomes: map }
    }

    /// Independent product: weights multiply.
    pub fn product<U: Clone + Eq + Hash>(&self, other: &FiniteDist<U>) -> FiniteDist<(T, U)> {
        let mut map = IndexMap::new();
        for (a, wa) in &self.outcomes {
            for (b, wb) in &other.outcomes {
                map.insert((a.clone(), b.clone()), wa * wb);
            }
        }
        FiniteDist { outcomes: map }
    }

    /// Sequential composition: draw an outcome, then draw from the
    /// distribution it selects. Weights multiply along each path and merge
    /// across paths landing on the same final outcome.
    pub fn and_then<U: Clone + Eq + Hash>(&self, f: impl Fn(&T) -> FiniteDist<U>) -> FiniteDist<U> {
        let mut map: IndexMap<U, Rational> = IndexMap::new();
        for (o, w) in &self.outcomes {
            for (u, wu) in &f(o).outcomes {
                let path = w * wu;
                match map.get_mut(u) {
                    Some(acc) => *acc += path,
                    None => {
                        map.insert(u.clone(), path);
                    }
                }
            }
        }
        FiniteDist { outcomes: map }
    }

    /// Checks a candidate partition against this distribution and evaluates
    /// the law of total probability for `event` over it.
    pub fn partition_report(
        &self,
        event: &EventPredicate<T>,
        parts: &[EventPredicate<T>],
    ) -> Result<PartitionReport> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        // Disjointness and coverage are judged on supported outcomes only:
        // weight-zero points were already dropped and cannot matter.
        let mut disjoint = true;
        let mut covering = true;
        for (o, _) in &self.outcomes {
            let hits = parts.iter().filter(|p| p.holds(o)).count();
            if hits == 0 {
                covering = false;
            }
            if hits > 1 {
                disjoint = false;
            }
        }

        let mut part_probs = Vec::with_capacity(parts.len());
        let mut conditionals = Vec::with_capacity(parts.len());
        let mut total_prob_sum = Rational::zero();
        for p in parts {
            let pp = self.prob(p);
            let cond = if pp.is_zero() {
                None
            } else {
                let c = self.cond_prob(event, p)?;
                total_prob_sum += &c * &pp;
                Some(c)
            };
            part_probs.push((p.label().to_string(), pp));
            conditionals.push((p.label().to_string(), cond));
        }

        let defined: Vec<&Rational> = conditionals.iter().filter_map(|(_, c)| c.as_ref()).collect();
        let constant_conditional = match defined.split_first() {
            None => None,
            Some((first, rest)) => {
                if rest.iter().all(|c| c == first) {
                    Some((*first).clone())
                } else {
                    None
                }
            }
        };

        Ok(PartitionReport {
            disjoint,
            covering,
            part_probs,
            conditionals,
            constant_conditional,
            total_prob_sum,
            event_prob: self.prob(event),
        })
    }
}

/// Equality is support-set equality with equal weights, order-independent.
impl<T: Clone + Eq + Hash> PartialEq for FiniteDist<T> {
    fn eq(&self, other: &Self) -> bool {
        self.outcomes.len() == other.outcomes.len()
            && self
                .outcomes
                .iter()
                .all(|(o, w)| other.outcomes.get(o) == Some(w))
    }
}

impl<T: Clone + Eq + Hash> Eq for FiniteDist<T> {}

/// Result of checking the law of total probability over a family of events.
///
/// When `disjoint && covering`, the law guarantees `total_prob_sum ==
/// event_prob`. When the family overlaps, the two can differ even if every
/// conditional equals the same constant; that gap is exactly what this
/// report is for.
#[derive(Clone, Debug)]
pub struct PartitionReport {
    /// No supported outcome lies in two parts.
    pub disjoint: bool,
    /// Every supported outcome lies in at least one part.
    pub covering: bool,
    /// `(label, P(part))` per part, in input order.
    pub part_probs: Vec<(String, Rational)>,
    /// `(label, P(event | part))` per part; `None` when the part is null.
    pub conditionals: Vec<(String, Option<Rational>)>,
    /// The shared value when all defined conditionals agree exactly.
    pub constant_conditional: Option<Rational>,
    /// `sum over parts of P(event | part) * P(part)` (null parts contribute 0).
    pub total_prob_sum: Rational,
    /// Unconditional `P(event)` for comparison.
    pub event_prob: Rational,
}

/// A labeled predicate over outcomes.
///
/// The label travels with the predicate so conditioning errors and reports
/// can name the event they refer to.
#[derive(Clone)]
pub struct EventPredicate<T> {
    label: String,
    pred: Arc<dyn Fn(&T) -> bool + Send + Sync>,
}

impl<T> EventPredicate<T> {
    pub fn new(label: impl Into<String>, pred: impl Fn(&T) -> bool + Send + Sync + 'static) -> Self {
        EventPredicate {
            label: label.into(),
            pred: Arc::new(pred),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn holds(&self, outcome: &T) -> bool {
        (self.pred)(outcome)
    }

    pub fn and(&self, other: &EventPredicate<T>) -> EventPredicate<T>
    where
        T: 'static,
    {
        let a = Arc::clone(&self.pred);
        let b = Arc::clone(&other.pred);
        EventPredicate {
            label: format!("({} and {})", self.label, other.label),
            pred: Arc::new(move |o| a(o) && b(o)),
        }
    }

    pub fn or(&self, other: &EventPredicate<T>) -> EventPredicate<T>
    where
        T: 'static,
    {
        let a = Arc::clone(&self.pred);
        let b = Arc::clone(&other.pred);
        EventPredicate {
            label: format!("({} or {})", self.label, other.label),
            pred: Arc::new(move |o| a(o) || b(o)),
        }
    }

    pub fn not(&self) -> EventPredicate<T>
    where
        T: 'static,
    {
        let a = Arc::clone(&self.pred);
        EventPredicate {
            label: format!("(not {})", self.label),
            pred: Arc::new(move |o| !a(o)),
        }
    }
}

impl<T> fmt::Debug for EventPredicate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventPredicate({})", self.label)
    }
}
