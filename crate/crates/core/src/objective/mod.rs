//! Spin distributions, autocorrelations and the quadratic objective
//! families evaluated on them.

mod distribution;
mod family;
mod pareto;
mod smooth;

pub use distribution::{autocorrelation_of, Autocorrelation, SpinDistribution, SupportRecord};
pub use family::{approximation_ratio, frobenius_score, Aggregation, Evaluation, QuadraticFamily};
pub use pareto::{alpha_grid, pareto_objective, ParetoSpec};
pub use smooth::{smooth_max, smooth_max_with_weights, smooth_min, TemperatureSchedule};
