//! Exact rational scalars, points, boxes and interval unions.

mod interval;
mod point;
mod rational;

pub use interval::{IntervalUnion, Window};
pub use point::{RBox, RPoint};
pub use rational::{q, Rational};
