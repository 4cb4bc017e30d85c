//! Two-child families: fair independent sexes plus a naming model for boys.
//!
//! Four naming models are supported. The Bernoulli models work over a
//! collapsed two-symbol alphabet (the distinguished name and a single
//! stand-in for everything else), which is exact for every query here since
//! all events depend only on whether a boy carries the distinguished name.
//! The uniform and weighted models keep the full alphabet.

use crate::error::{Error, Result};
use crate::prob::{EventPredicate, FiniteDist};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sex {
    Boy,
    Girl,
}

/// Index into a name alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NameId(pub usize);

impl NameId {
    /// The distinguished name in the collapsed two-symbol alphabet.
    pub const TARGET: NameId = NameId(0);
    /// Every non-distinguished name, collapsed into one symbol.
    pub const OTHER: NameId = NameId(1);
}

/// One child. The name is present exactly when the child is a boy; girls go
/// unnamed because no query here ever conditions on a girl's name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Child {
    pub sex: Sex,
    pub name: Option<NameId>,
}

impl Child {
    pub fn boy(name: NameId) -> Self {
        Child { sex: Sex::Boy, name: Some(name) }
    }

    pub fn girl() -> Self {
        Child { sex: Sex::Girl, name: None }
    }

    pub fn is_boy(&self) -> bool {
        self.sex == Sex::Boy
    }

    pub fn is_boy_named(&self, target: NameId) -> bool {
        self.is_boy() && self.name == Some(target)
    }
}

/// Two children in birth order: `first` is the older child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub first: Child,
    pub second: Child,
}

impl Family {
    pub fn new(first: Child, second: Child) -> Self {
        Family { first, second }
    }

    pub fn boy_count(&self) -> usize {
        usize::from(self.first.is_boy()) + usize::from(self.second.is_boy())
    }

    /// The older boy, when the family has one.
    pub fn firstborn_boy(&self) -> Option<&Child> {
        if self.first.is_boy() {
            Some(&self.first)
        } else if self.second.is_boy() {
            Some(&self.second)
        } else {
            None
        }
    }
}

/// An ordered list of distinct name labels with one distinguished entry.
///
/// Only the weighted and without-replacement models care about the labels;
/// the engine itself works with [`NameId`] indices.
#[derive(Clone, Debug)]
pub struct NameAlphabet {
    labels: Vec<String>,
    target: usize,
}

impl NameAlphabet {
    pub fn new(labels: Vec<String>, target: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidModel("name alphabet must be non-empty".into()));
        }
        if target >= labels.len() {
            return Err(Error::InvalidModel(format!(
                "target index {target} out of range for {} names",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidModel(format!("duplicate name label {a:?}")));
            }
        }
        Ok(NameAlphabet { labels, target })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn target(&self) -> NameId {
        NameId(self.target)
    }

    pub fn index_of(&self, label: &str) -> Option<NameId> {
        self.labels.iter().position(|l| l == label).map(NameId)
    }
}

/// How boys receive names.
#[derive(Clone, Debug)]
pub enum NamingModel {
    /// Each boy gets the distinguished name with probability `p`, except
    /// that a boy whose older brother already carries it never does.
    BernoulliNoDup { p: Rational },
    /// Each boy independently gets the distinguished name with probability
    /// `p`; brothers may share it.
    BernoulliDupAllowed { p: Rational },
    /// First boy uniform over `n` names, second boy uniform over the
    /// remaining `n - 1`.
    UniformWithoutReplacement { n: usize },
    /// First boy gets name `k` with probability `weights[k]`; the second
    /// boy's remaining weights are rescaled by `1/(1 - weights[k])`.
    WeightedBoost { weights: Vec<Rational>, target: usize },
}

impl NamingModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            NamingModel::BernoulliNoDup { p } | NamingModel::BernoulliDupAllowed { p } => {
                let one = Rational::one();
                if p.is_zero() || p.is_negative() || *p > one {
                    return Err(Error::InvalidModel(format!(
                        "name probability must satisfy 0 < p <= 1, got {p}"
                    )));
                }
            }
            NamingModel::UniformWithoutReplacement { n } => {
                if *n < 2 {
                    return Err(Error::InvalidModel(format!(
                        "without-replacement needs at least 2 names, got {n}"
                    )));
                }
            }
            NamingModel::WeightedBoost { weights, target } => {
                if weights.is_empty() {
                    return Err(Error::InvalidModel("weights must be non-empty".into()));
                }
                if *target >= weights.len() {
                    return Err(Error::InvalidModel(format!(
                        "target index {target} out of range for {} weights",
                        weights.len()
                    )));
                }
                let one = Rational::one();
                for w in weights {
                    if w.is_zero() || w.is_negative() || *w >= one {
                        return Err(Error::InvalidModel(format!(
                            "each weight must satisfy 0 < w < 1, got {w}"
                        )));
                    }
                }
                let total: Rational = weights.iter().sum();
                if !total.is_one() {
                    return Err(Error::InvalidModel(format!(
                        "weights must sum to exactly 1, got {total}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The distinguished name's id under this model's alphabet convention.
    pub fn target_id(&self) -> NameId {
        match self {
            NamingModel::WeightedBoost { target, .. } => NameId(*target),
            _ => NameId::TARGET,
        }
    }

    /// Name distribution for the older boy (validated model only).
    fn first_boy_name(&self) -> FiniteDist<NameId> {
        match self {
            NamingModel::BernoulliNoDup { p } | NamingModel::BernoulliDupAllowed { p } => {
                bernoulli_name(p)
            }
            NamingModel::UniformWithoutReplacement { n } => {
                FiniteDist::uniform((0..*n).map(NameId)).expect("n >= 2")
            }
            NamingModel::WeightedBoost { weights, .. } => FiniteDist::new(
                weights.iter().enumerate().map(|(k, w)| (NameId(k), w.clone())),
            )
            .expect("validated weights"),
        }
    }

    /// Name distribution for the younger boy given his brother's name.
    fn second_boy_name(&self, first: NameId) -> FiniteDist<NameId> {
        match self {
            NamingModel::BernoulliNoDup { p } => {
                if first == NameId::TARGET {
                    FiniteDist::certain(NameId::OTHER)
                } else {
                    bernoulli_name(p)
                }
            }
            NamingModel::BernoulliDupAllowed { p } => bernoulli_name(p),
            NamingModel::UniformWithoutReplacement { n } => {
                FiniteDist::uniform((0..*n).map(NameId).filter(|k| *k != first))
                    .expect("n >= 2 leaves a nonempty remainder")
            }
            // Unnormalized remaining weights; construction renormalizes by
            // their total 1 - weights[first], which is the boost factor.
            NamingModel::WeightedBoost { weights, .. } => FiniteDist::new(
                weights
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| NameId(*k) != first)
                    .map(|(k, w)| (NameId(k), w.clone())),
            )
            .expect("at least two positive weights"),
        }
    }
}

fn bernoulli_name(p: &Rational) -> FiniteDist<NameId> {
    FiniteDist::new([
        (NameId::TARGET, p.clone()),
        (NameId::OTHER, Rational::one() - p),
    ])
    .expect("0 < p <= 1")
}

/// The full family distribution: independent fair sexes, names per `model`.
pub fn family_dist(model: &NamingModel) -> Result<FiniteDist<Family>> {
    model.validate()?;
    let sexes = FiniteDist::uniform([
        (Sex::Boy, Sex::Boy),
        (Sex::Boy, Sex::Girl),
        (Sex::Girl, Sex::Boy),
        (Sex::Girl, Sex::Girl),
    ])
    .expect("four sex pairs");
    Ok(sexes.and_then(|&(s1, s2)| names_given_sexes(model, s1, s2)))
}

fn names_given_sexes(model: &NamingModel, s1: Sex, s2: Sex) -> FiniteDist<Family> {
    match (s1, s2) {
        (Sex::Girl, Sex::Girl) => FiniteDist::certain(Family::new(Child::girl(), Child::girl())),
        (Sex::Boy, Sex::Girl) => model
            .first_boy_name()
            .map(|&k| Family::new(Child::boy(k), Child::girl())),
        (Sex::Girl, Sex::Boy) => model
            .first_boy_name()
            .map(|&k| Family::new(Child::girl(), Child::boy(k))),
        (Sex::Boy, Sex::Boy) => model.first_boy_name().and_then(|&k| {
            model
                .second_boy_name(k)
                .map(move |&j| Family::new(Child::boy(k), Child::boy(j)))
        }),
    }
}

pub fn at_least_one_boy() -> EventPredicate<Family> {
    EventPredicate::new("at_least_one_boy", |f: &Family| f.boy_count() >= 1)
}

pub fn two_boys() -> EventPredicate<Family> {
    EventPredicate::new("two_boys", |f: &Family| f.boy_count() == 2)
}

/// Some child is a boy carrying `target`.
pub fn has_named_boy(target: NameId) -> EventPredicate<Family> {
    EventPredicate::new("has_named_boy", move |f: &Family| {
        f.first.is_boy_named(target) || f.second.is_boy_named(target)
    })
}

/// The family's oldest boy exists and carries `target`.
pub fn firstborn_boy_named(target: NameId) -> EventPredicate<Family> {
    EventPredicate::new("firstborn_boy_named", move |f: &Family| {
        f.firstborn_boy().is_some_and(|c| c.name == Some(target))
    })
}

/// Collapsed-alphabet rename rule: when both boys carry the distinguished
/// name, the younger one is renamed to the stand-in symbol.
pub fn rename_duplicates(f: Family) -> Family {
    if f.first.is_boy_named(NameId::TARGET) && f.second.is_boy_named(NameId::TARGET) {
        Family::new(f.first, Child::boy(NameId::OTHER))
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn no_dup(n: i64, d: i64) -> NamingModel {
        NamingModel::BernoulliNoDup { p: r(n, d) }
    }

    fn exactly_one_boy() -> EventPredicate<Family> {
        EventPredicate::new("exactly_one_boy", |f: &Family| f.boy_count() == 1)
    }

    #[test]
    fn sexes_are_fair_under_every_model() {
        let models = [
            no_dup(1, 50),
            NamingModel::BernoulliDupAllowed { p: r(1, 5) },
            NamingModel::UniformWithoutReplacement { n: 7 },
            NamingModel::WeightedBoost {
                weights: vec![r(1, 2), r(1, 3), r(1, 6)],
                target: 0,
            },
        ];
        for m in &models {
            let d = family_dist(m).unwrap();
            assert!(d.total_weight().is_one());
            assert_eq!(d.prob(&two_boys()), r(1, 4));
            assert_eq!(d.prob(&at_least_one_boy()), r(3, 4));
        }
    }

    #[test]
    fn two_child_answer() {
        let d = family_dist(&no_dup(1, 2)).unwrap();
        assert_eq!(d.cond_prob(&two_boys(), &at_least_one_boy()).unwrap(), r(1, 3));
    }

    #[test]
    fn target_given_two_boys_no_dup() {
        // P(some boy has the name | two boys) = 2p - p^2.
        for (num, den) in [(1i64, 2i64), (1, 5), (1, 50), (1, 1)] {
            let p = r(num, den);
            let d = family_dist(&NamingModel::BernoulliNoDup { p: p.clone() }).unwrap();
            let got = d
                .cond_prob(&has_named_boy(NameId::TARGET), &two_boys())
                .unwrap();
            let expect = &p + &p - &p * &p;
            assert_eq!(got, expect);
        }
        let d = family_dist(&no_dup(1, 2)).unwrap();
        assert_eq!(
            d.cond_prob(&has_named_boy(NameId::TARGET), &two_boys()).unwrap(),
            r(3, 4)
        );
        assert_eq!(
            d.prob(&has_named_boy(NameId::TARGET).and(&two_boys())),
            r(3, 16)
        );
    }

    #[test]
    fn target_given_one_boy_is_p() {
        for model in [no_dup(2, 7), NamingModel::BernoulliDupAllowed { p: r(2, 7) }] {
            let d = family_dist(&model).unwrap();
            let got = d
                .cond_prob(&has_named_boy(NameId::TARGET), &exactly_one_boy())
                .unwrap();
            assert_eq!(got, r(2, 7));
        }
    }

    #[test]
    fn named_posterior_formula() {
        // P(two boys | some boy has the name) = (1 - p/2) / (2 - p/2).
        for (num, den) in [(1i64, 50i64), (1, 5), (1, 2), (1, 1)] {
            let p = r(num, den);
            let d = family_dist(&NamingModel::BernoulliNoDup { p: p.clone() }).unwrap();
            let got = d
                .cond_prob(&two_boys(), &has_named_boy(NameId::TARGET))
                .unwrap();
            let half_p = &p * &r(1, 2);
            let expect = (Rational::one() - &half_p) / (Rational::from_int(2) - &half_p);
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn without_replacement_facts() {
        for n in [2usize, 5, 10, 100] {
            let d = family_dist(&NamingModel::UniformWithoutReplacement { n }).unwrap();
            let target = has_named_boy(NameId::TARGET);
            assert_eq!(d.cond_prob(&target, &two_boys()).unwrap(), r(2, n as i64));
            assert_eq!(d.cond_prob(&two_boys(), &target).unwrap(), r(1, 2));
        }
    }

    #[test]
    fn uniform_weighted_matches_without_replacement() {
        let n = 10;
        let weights = vec![r(1, n); n as usize];
        let d = family_dist(&NamingModel::WeightedBoost { weights, target: 0 }).unwrap();
        assert_eq!(
            d.cond_prob(&two_boys(), &has_named_boy(NameId(0))).unwrap(),
            r(1, 2)
        );
    }

    #[test]
    fn firstborn_boy_named_posterior() {
        let d = family_dist(&no_dup(1, 5)).unwrap();
        assert_eq!(
            d.cond_prob(&two_boys(), &firstborn_boy_named(NameId::TARGET))
                .unwrap(),
            r(1, 3)
        );
    }

    #[test]
    fn firstborn_event_cases() {
        let t = NameId::TARGET;
        let ev = firstborn_boy_named(t);
        assert!(ev.holds(&Family::new(Child::girl(), Child::boy(t))));
        assert!(!ev.holds(&Family::new(Child::boy(NameId::OTHER), Child::boy(t))));
        assert!(ev.holds(&Family::new(Child::boy(t), Child::boy(NameId::OTHER))));
        assert!(!ev.holds(&Family::new(Child::girl(), Child::girl())));
    }

    #[test]
    fn rename_rule() {
        let t = NameId::TARGET;
        let o = NameId::OTHER;
        let dup = Family::new(Child::boy(t), Child::boy(t));
        assert_eq!(
            rename_duplicates(dup),
            Family::new(Child::boy(t), Child::boy(o))
        );
        let fine = Family::new(Child::boy(t), Child::boy(o));
        assert_eq!(rename_duplicates(fine), fine);
        let girls = Family::new(Child::girl(), Child::girl());
        assert_eq!(rename_duplicates(girls), girls);
    }

    #[test]
    fn rename_equivalence_smoke() {
        // Renaming the younger duplicate turns the independent model into
        // the suppressed one, event for event.
        let p = r(1, 2);
        let dup = family_dist(&NamingModel::BernoulliDupAllowed { p: p.clone() })
            .unwrap()
            .map(|f| rename_duplicates(*f));
        let nodup = family_dist(&NamingModel::BernoulliNoDup { p }).unwrap();
        for ev in [
            has_named_boy(NameId::TARGET),
            two_boys(),
            has_named_boy(NameId::TARGET).and(&two_boys()),
        ] {
            assert_eq!(dup.prob(&ev), nodup.prob(&ev));
        }
    }

    #[test]
    fn no_dup_suppresses_double_target() {
        let d = family_dist(&no_dup(1, 2)).unwrap();
        let t = NameId::TARGET;
        let double = Family::new(Child::boy(t), Child::boy(t));
        assert!(d.weight_of(&double).is_zero());
        assert_eq!(d.len(), 8);
        let dup = family_dist(&NamingModel::BernoulliDupAllowed { p: r(1, 2) }).unwrap();
        assert_eq!(dup.weight_of(&double), r(1, 16));
        assert_eq!(dup.len(), 9);
    }

    #[test]
    fn p_one_degenerates() {
        // With certain naming the puzzle collapses to the plain two-child one.
        let d = family_dist(&no_dup(1, 1)).unwrap();
        assert_eq!(
            d.cond_prob(&two_boys(), &has_named_boy(NameId::TARGET)).unwrap(),
            r(1, 3)
        );
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(family_dist(&no_dup(0, 1)).is_err());
        assert!(family_dist(&no_dup(3, 2)).is_err());
        assert!(family_dist(&no_dup(-1, 2)).is_err());
        assert!(family_dist(&NamingModel::UniformWithoutReplacement { n: 1 }).is_err());
        assert!(family_dist(&NamingModel::WeightedBoost {
            weights: vec![r(1, 2), r(1, 3)],
            target: 0
        })
        .is_err());
        assert!(family_dist(&NamingModel::WeightedBoost {
            weights: vec![r(1, 1)],
            target: 0
        })
        .is_err());
        assert!(family_dist(&NamingModel::WeightedBoost {
            weights: vec![r(1, 2), r(1, 2)],
            target: 2
        })
        .is_err());
    }

    #[test]
    fn alphabet_validation() {
        let ab = NameAlphabet::new(vec!["Adam".into(), "Sam".into()], 0).unwrap();
        assert_eq!(ab.target(), NameId(0));
        assert_eq!(ab.index_of("Sam"), Some(NameId(1)));
        assert_eq!(ab.index_of("Victor"), None);
        assert!(NameAlphabet::new(vec![], 0).is_err());
        assert!(NameAlphabet::new(vec!["A".into()], 1).is_err());
        assert!(NameAlphabet::new(vec!["A".into(), "A".into()], 0).is_err());
    }
}
