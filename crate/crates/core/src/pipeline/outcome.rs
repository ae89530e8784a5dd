use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    OutOfRange,
    NoRuleFired,
    VarianceTrip,
    UncertaintyTrip,
    SpeTrip,
    Warmup,
    NonMonotonicTime,
}

impl Flag {
    pub const ALL: [Flag; 7] = [
        Flag::OutOfRange,
        Flag::NoRuleFired,
        Flag::VarianceTrip,
        Flag::UncertaintyTrip,
        Flag::SpeTrip,
        Flag::Warmup,
        Flag::NonMonotonicTime,
    ];

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

/// Small set of [`Flag`]s; serialized as a list in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Flags(u8);

impl Flags {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn insert(&mut self, f: Flag) {
        self.0 |= f.bit();
    }

    pub fn set(&mut self, f: Flag, on: bool) {
        if on {
            self.insert(f);
        }
    }

    pub fn contains(&self, f: Flag) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Flag> + '_ {
        Flag::ALL.into_iter().filter(|f| self.contains(*f))
    }
}

impl FromIterator<Flag> for Flags {
    fn from_iter<I: IntoIterator<Item = Flag>>(iter: I) -> Self {
        let mut flags = Flags::empty();
        iter.into_iter().for_each(|f| flags.insert(f));
        flags
    }
}

impl fmt::Debug for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for Flags {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Flags {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<Flag>::deserialize(d)?.into_iter().collect())
    }
}

/// What the validation loop did with one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub timestamp: f64,
    pub sensor_id: String,
    pub raw: f64,
    pub confidence: f64,
    /// Value forwarded downstream.
    pub accepted: f64,
    pub reconstructed: bool,
    pub flags: Flags,
}
