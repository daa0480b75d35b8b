//! Deliberate defects for checking that the verification suites can fail.
//!
//! A mutant is switched on for the current thread only, for the duration of
//! a closure. Nothing in the library turns one on by itself.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutant {
    /// `covered_primes` drops its smallest member.
    CoveredPrimeUnderreport,
    /// Sublocale joins return the plain union, skipping meet-closure.
    JoinWithoutMeetClosure,
    /// `S ∖ T` is the meet-closure of the set difference instead of the
    /// complemented decomposition.
    DifferenceWithoutDecomposition,
}

impl Mutant {
    pub const ALL: [Mutant; 3] = [
        Mutant::CoveredPrimeUnderreport,
        Mutant::JoinWithoutMeetClosure,
        Mutant::DifferenceWithoutDecomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::CoveredPrimeUnderreport => "covered-prime-underreport",
            Mutant::JoinWithoutMeetClosure => "join-without-meet-closure",
            Mutant::DifferenceWithoutDecomposition => "difference-without-decomposition",
        }
    }
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutant::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutant `{s}`"))
    }
}

thread_local! {
    static ACTIVE: Cell<Option<Mutant>> = const { Cell::new(None) };
}

/// Runs `f` with `mutant` active on this thread.
pub fn with_mutant<R>(mutant: Mutant, f: impl FnOnce() -> R) -> R {
    struct Reset(Option<Mutant>);
    impl Drop for Reset {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let _reset = Reset(ACTIVE.with(|a| a.replace(Some(mutant))));
    f()
}

pub(crate) fn is_active(mutant: Mutant) -> bool {
    ACTIVE.with(|a| a.get() == Some(mutant))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_activation() {
        assert!(!is_active(Mutant::JoinWithoutMeetClosure));
        with_mutant(Mutant::JoinWithoutMeetClosure, || {
            assert!(is_active(Mutant::JoinWithoutMeetClosure));
            assert!(!is_active(Mutant::CoveredPrimeUnderreport));
        });
        assert!(!is_active(Mutant::JoinWithoutMeetClosure));
    }

    #[test]
    fn names_round_trip() {
        for m in Mutant::ALL {
            assert_eq!(m.name().parse::<Mutant>().unwrap(), m);
        }
        assert!("nope".parse::<Mutant>().is_err());
    }
}
