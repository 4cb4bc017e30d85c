//! How the observer learns about the family.
//!
//! The same family distribution supports very different posteriors depending
//! on how the information arrived. Each protocol extends the family space
//! with its own auxiliary randomness (which child walks, who registers) and
//! defines the observation event; posteriors are plain conditioning on the
//! extended space.

use crate::error::{Error, Result};
use crate::family::{
    at_least_one_boy, family_dist, firstborn_boy_named, has_named_boy, two_boys, Family, NameId,
    NamingModel,
};
use crate::prob::{EventPredicate, FiniteDist};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChildIndex {
    First,
    Second,
}

/// A family plus the protocol's auxiliary draw: which child was put in front
/// of the observer, if the protocol singles one out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Episode {
    pub family: Family,
    pub selected: Option<ChildIndex>,
}

impl Episode {
    pub fn selected_child(&self) -> Option<&crate::family::Child> {
        self.selected.map(|ix| match ix {
            ChildIndex::First => &self.family.first,
            ChildIndex::Second => &self.family.second,
        })
    }
}

/// The information channel.
#[derive(Clone, Debug)]
pub enum Protocol {
    /// Bare truthful statement: the family has at least one boy.
    OracleAtLeastOneBoy,
    /// Bare truthful statement: some boy carries the distinguished name.
    OracleNamedBoy,
    /// The principal's call truthfully reveals whether a boy is in the
    /// family; the observation is the walk to the boys' meeting room.
    SchoolMeeting,
    /// One child accompanies a walk, chosen with weight 1 per boy and
    /// `girl_weight` per girl; the observation is a boy companion.
    /// `girl_weight = 1` is unbiased selection, `0` means a girl is never
    /// taken along.
    Walk { girl_weight: Rational },
    /// Same selection as `Walk`; the observation is a boy companion
    /// carrying the distinguished name.
    WalkNamed { girl_weight: Rational },
    /// Families with a boy must register one; two-boy families pick by a
    /// fair coin, paying no attention to names. The observation is a
    /// registrant carrying the distinguished name.
    Draft,
    /// Bare truthful statement: the family's oldest boy carries the
    /// distinguished name.
    OracleFirstbornBoyNamed,
}

impl Protocol {
    pub fn validate(&self) -> Result<()> {
        match self {
            Protocol::Walk { girl_weight } | Protocol::WalkNamed { girl_weight }
                if girl_weight.is_negative() || *girl_weight > Rational::one() =>
            {
                Err(Error::InvalidParams(format!(
                    "girl_weight must lie in [0, 1], got {girl_weight}"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// The extended sample space for (model, protocol).
///
/// Oracle protocols attach a trivial auxiliary. Walk protocols split each
/// family into companion choices by the normalized selection weights; a
/// girl-girl family under `girl_weight = 0` keeps a single no-companion
/// episode rather than disappearing. Draft sends the only boy with weight 1,
/// splits two-boy families evenly, and leaves girl-girl families with no
/// registrant. Marginalizing the episode space back onto families always
/// recovers the family distribution.
pub fn episode_dist(model: &NamingModel, protocol: &Protocol) -> Result<FiniteDist<Episode>> {
    protocol.validate()?;
    let families = family_dist(model)?;
    let d = match protocol {
        Protocol::OracleAtLeastOneBoy
        | Protocol::OracleNamedBoy
        | Protocol::SchoolMeeting
        | Protocol::OracleFirstbornBoyNamed => families.map(|&family| Episode {
            family,
            selected: None,
        }),
        Protocol::Walk { girl_weight } | Protocol::WalkNamed { girl_weight } => {
            families.and_then(|&family| walk_selection(family, girl_weight))
        }
        Protocol::Draft => families.and_then(|&family| draft_selection(family)),
    };
    Ok(d)
}

fn walk_selection(family: Family, girl_weight: &Rational) -> FiniteDist<Episode> {
    let weight = |c: &crate::family::Child| {
        if c.is_boy() {
            Rational::one()
        } else {
            girl_weight.clone()
        }
    };
    let w1 = weight(&family.first);
    let w2 = weight(&family.second);
    if (&w1 + &w2).is_zero() {
        return FiniteDist::certain(Episode { family, selected: None });
    }
    FiniteDist::new([
        (Episode { family, selected: Some(ChildIndex::First) }, w1),
        (Episode { family, selected: Some(ChildIndex::Second) }, w2),
    ])
    .expect("positive total selection weight")
}

fn draft_selection(family: Family) -> FiniteDist<Episode> {
    match (family.first.is_boy(), family.second.is_boy()) {
        (false, false) => FiniteDist::certain(Episode { family, selected: None }),
        (true, false) => FiniteDist::certain(Episode {
            family,
            selected: Some(ChildIndex::First),
        }),
        (false, true) => FiniteDist::certain(Episode {
            family,
            selected: Some(ChildIndex::Second),
        }),
        (true, true) => FiniteDist::uniform([
            Episode { family, selected: Some(ChildIndex::First) },
            Episode { family, selected: Some(ChildIndex::Second) },
        ])
        .expect("two episodes"),
    }
}

fn lift(ev: EventPredicate<Family>) -> EventPredicate<Episode> {
    let label = ev.label().to_string();
    EventPredicate::new(label, move |e: &Episode| ev.holds(&e.family))
}

/// The protocol's defining observation event on the episode space.
pub fn observed(protocol: &Protocol, target: NameId) -> EventPredicate<Episode> {
    match protocol {
        Protocol::OracleAtLeastOneBoy | Protocol::SchoolMeeting => lift(at_least_one_boy()),
        Protocol::OracleNamedBoy => lift(has_named_boy(target)),
        Protocol::OracleFirstbornBoyNamed => lift(firstborn_boy_named(target)),
        Protocol::Walk { .. } => EventPredicate::new("companion_is_boy", |e: &Episode| {
            e.selected_child().is_some_and(|c| c.is_boy())
        }),
        Protocol::WalkNamed { .. } => {
            EventPredicate::new("companion_is_named_boy", move |e: &Episode| {
                e.selected_child().is_some_and(|c| c.is_boy_named(target))
            })
        }
        Protocol::Draft => EventPredicate::new("registrant_is_named_boy", move |e: &Episode| {
            e.selected_child().is_some_and(|c| c.is_boy_named(target))
        }),
    }
}

/// P(two boys | the protocol's observation) under the model's family prior.
pub fn posterior_two_boys(model: &NamingModel, protocol: &Protocol) -> Result<Rational> {
    let d = episode_dist(model, protocol)?;
    let query = lift(two_boys());
    d.cond_prob(&query, &observed(protocol, model.target_id()))
}
