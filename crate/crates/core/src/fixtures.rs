//! Reference automata, machines and architectures shipped with the crate.

use crate::alternating::Alternating;
use crate::arch::Architecture;
use crate::format::{parse_aca, parse_architecture, parse_moore};
use crate::moore::Moore;

pub const MESSAGES_ACA: &str = include_str!("../fixtures/messages.aca");
pub const MESSAGES_NEG_ACA: &str = include_str!("../fixtures/messages_neg.aca");
pub const EAGER_ACA: &str = include_str!("../fixtures/eager.aca");
pub const BAD_PREFIX_ACA: &str = include_str!("../fixtures/bad_prefix.aca");
pub const S1: &str = include_str!("../fixtures/s1.moore");
pub const T1: &str = include_str!("../fixtures/t1.moore");
pub const S2: &str = include_str!("../fixtures/s2.moore");
pub const T2: &str = include_str!("../fixtures/t2.moore");
pub const ALWAYS_O: &str = include_str!("../fixtures/always_o.moore");
pub const SKIP_FIRST_O: &str = include_str!("../fixtures/skip_first_o.moore");
pub const A_THEN_NOTHING: &str = include_str!("../fixtures/a_then_nothing.moore");
pub const NEVER_A: &str = include_str!("../fixtures/never_a.moore");
pub const MESSAGES_ARCH: &str = include_str!("../fixtures/messages.arch");
pub const EAGER_ARCH: &str = include_str!("../fixtures/eager.arch");
pub const BAD_PREFIX_ARCH: &str = include_str!("../fixtures/bad_prefix.arch");

/// Specification of the message-sending system.
pub const MESSAGES_LTL: &str = "F m1 & F m2";
pub const EAGER_LTL: &str = "G F o | X i";

fn aca(text: &str) -> Alternating {
    parse_aca(text).expect("bundled automaton parses")
}

fn moore(text: &str) -> Moore {
    parse_moore(text).expect("bundled machine parses")
}

pub fn messages_aca() -> Alternating {
    aca(MESSAGES_ACA)
}

pub fn messages_neg_aca() -> Alternating {
    aca(MESSAGES_NEG_ACA)
}

pub fn eager_aca() -> Alternating {
    aca(EAGER_ACA)
}

pub fn bad_prefix_aca() -> Alternating {
    aca(BAD_PREFIX_ACA)
}

pub fn s1() -> Moore {
    moore(S1)
}

pub fn t1() -> Moore {
    moore(T1)
}

pub fn s2() -> Moore {
    moore(S2)
}

pub fn t2() -> Moore {
    moore(T2)
}

pub fn always_o() -> Moore {
    moore(ALWAYS_O)
}

pub fn skip_first_o() -> Moore {
    moore(SKIP_FIRST_O)
}

pub fn a_then_nothing() -> Moore {
    moore(A_THEN_NOTHING)
}

pub fn never_a() -> Moore {
    moore(NEVER_A)
}

pub fn messages_arch() -> Architecture {
    parse_architecture(MESSAGES_ARCH).expect("bundled architecture parses")
}

pub fn eager_arch() -> Architecture {
    parse_architecture(EAGER_ARCH).expect("bundled architecture parses")
}

pub fn bad_prefix_arch() -> Architecture {
    parse_architecture(BAD_PREFIX_ARCH).expect("bundled architecture parses")
}
