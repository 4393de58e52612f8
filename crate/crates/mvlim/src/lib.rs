//! mvlim resolves zero-over-zero limits of multivariable real functions.
//!
//! The crate pairs a symbolic engine with a numeric cross-check. For a
//! quotient f/g whose numerator and denominator both vanish at a point,
//! it distinguishes two regimes:
//!
//! - **nonisolated** singularities (g vanishes along curves or
//!   hypersurfaces through the point): resolved with a directional
//!   L'Hopital rule — per-component transverse directions, a
//!   directional-derivative quotient, and hypothesis checking by
//!   falsification;
//! - **isolated** singular points: resolved with a five-step algorithm —
//!   axis probes, separation, sum-of-squares decomposition of the
//!   denominator, a curve probe `u_i = m_i t` that disproves existence,
//!   and a polar degree bound (an exact-rational LP) that proves a zero
//!   limit.
//!
//! Every verdict carries a replayable [`Certificate`]; the
//! [`oracle`] module estimates limits along sampled paths as an empirical
//! counterweight.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p mvlim --example parse_and_eval
//! cargo run -p mvlim --example differentiate
//! cargo run -p mvlim --example series_and_limits
//! cargo run -p mvlim --example nonisolated_rule
//! cargo run -p mvlim --example isolated_algorithm
//! cargo run -p mvlim --example three_variable_thread
//! cargo run -p mvlim --example numeric_probe
//! ```
//!
//! The thin `mvlim` binary fronts the same engine:
//!
//! ```bash
//! mvlim resolve --num "x*y" --den "x^2+y^2" --vars x,y --point 0,0
//! mvlim probe --num "x^2*y" --den "x^4+y^2" --vars x,y --point 0,0 --paths 20 --seed 7
//! ```

pub mod calculus;
pub mod certificate;
pub mod cli;
pub mod expr;
pub mod interval;
pub mod isolated;
pub mod lp;
pub mod oracle;
pub mod problem;
pub mod rat;
mod sampling;
pub mod transversal;

pub use certificate::{CertStep, Certificate, StepStatus};
pub use expr::{parse, Expr, Func};
pub use problem::{LimitProblem, Point, Verdict, WitnessPath};
pub use rat::Rat;
