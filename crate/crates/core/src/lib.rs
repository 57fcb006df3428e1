//! Exact character theory for small finite classical groups.
pub mod apps;
pub mod bounds;
pub mod cache;
pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod cyclo;
pub mod dualpair;
pub mod field;
pub mod groups;
pub mod level;
pub mod matrix;
pub mod parabolic;
pub mod real;
pub mod report;
pub mod suite;
pub mod weil;

pub use chartab::{build_table, CharacterTable, Profile};
pub use classes::{ClassFunction, Classes};
pub use cyclo::Cyclo;
pub use field::{Field, FieldError};
pub use groups::{enumerate, parse_group_spec, Family, GroupError, GroupSpec, GroupTable, Sign, Subgroup};
pub use matrix::Mat;
pub use parabolic::{parabolic, ParabolicData};
pub use report::{BoundReport, Interval, Verdict};
pub use dualpair::{DualPair, Side};
pub use level::{LevelResult, RankResult};
pub use weil::{Psi, WeilError, WeilModel};

/// Exact rational used for character values, probabilities and bound checks.
pub type Rational = num_rational::Ratio<i128>;
