//! Convex-payoff mathematics: Jensen gaps under mean-preserving spreads,
//! 1/N distributed-bet portfolios, and the expected-minimum value of being
//! able to switch vendors.

mod payoff;
mod portfolio;
mod spread;
mod vendor;

pub use payoff::PayoffFunction;
pub use portfolio::{portfolio_simulate, OptionPortfolio, PortfolioOutcome};
pub use spread::{jensen_gap, spread_curve, BaseDistribution, CurvePoint, Estimate, SpreadFamily};
pub use vendor::{vendor_option_value, VendorOptionValue};
