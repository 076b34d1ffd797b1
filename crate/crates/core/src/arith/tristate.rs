//! Three-valued verdicts.

use serde::Serialize;

/// What a search or partial decision procedure spent before giving up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconclusive {
    pub candidates: u64,
    pub max_height: u64,
    pub reason: String,
}

impl Inconclusive {
    pub fn new(candidates: u64, max_height: u64, reason: impl Into<String>) -> Self {
        Inconclusive {
            candidates,
            max_height,
            reason: reason.into(),
        }
    }
}

/// `True` carries a certificate, `False` a witness, `Unknown` the budget consumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum TriState<C, W> {
    True(C),
    False(W),
    Unknown(Inconclusive),
}

/// Placeholder for verdicts that can never be `False`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Never {}

impl<C, W> TriState<C, W> {
    pub fn is_true(&self) -> bool {
        matches!(self, TriState::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TriState::False(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            TriState::True(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            TriState::False(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TriState::True(_) => "True",
            TriState::False(_) => "False",
            TriState::Unknown(_) => "Unknown",
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            TriState::True(_) => Some(true),
            TriState::False(_) => Some(false),
            TriState::Unknown(_) => None,
        }
    }

    pub fn map<C2, W2>(self, fc: impl FnOnce(C) -> C2, fw: impl FnOnce(W) -> W2) -> TriState<C2, W2> {
        match self {
            TriState::True(c) => TriState::True(fc(c)),
            TriState::False(w) => TriState::False(fw(w)),
            TriState::Unknown(u) => TriState::Unknown(u),
        }
    }
}
