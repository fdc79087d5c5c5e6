//! Linear differential operators and first-order systems over `K(x)`.

pub mod operator;
pub mod series;
pub mod solve;
pub mod sympower;
pub mod system;

pub use operator::{annihilator, LinDiffOp};
pub use series::series_solutions;
pub use solve::{rational_solutions, solve_parametric, ParamSolutions, SolutionSpace, SolveTrace};
pub use sympower::symmetric_power;
pub use system::{companion, cyclic_vector, system_rational_solutions, CyclicVector, LinDiffSystem};
