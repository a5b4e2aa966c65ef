//! Colors and complex colors.
//!
//! A [`Color`] is a 0-based palette index. Human-facing output (reports,
//! traces) prints colors 1-based, so palette `K` reads as `1..=K`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u16);

impl Color {
    pub fn new(index: usize) -> Self {
        Color(u16::try_from(index).expect("palette index fits in u16"))
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// The ordered pair of link colors on one edge, lower endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComplexColor {
    pub first: Color,
    pub second: Color,
}

impl ComplexColor {
    pub fn new(first: Color, second: Color) -> Self {
        ComplexColor { first, second }
    }

    pub fn constant(c: Color) -> Self {
        ComplexColor::new(c, c)
    }

    pub fn is_constant(self) -> bool {
        self.first == self.second
    }

    pub fn is_variable(self) -> bool {
        self.first != self.second
    }

    pub fn contains(self, c: Color) -> bool {
        self.first == c || self.second == c
    }

    /// Reverses the pair; constants are fixed points.
    pub fn negate(self) -> Self {
        ComplexColor::new(self.second, self.first)
    }
}

impl std::ops::Neg for ComplexColor {
    type Output = ComplexColor;

    fn neg(self) -> ComplexColor {
        self.negate()
    }
}

impl fmt::Display for ComplexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}
