//! Index coding over unicast instances: cycle and partial clique codes,
//! the integer programs bounding them, and an exact rational LP solver.

pub mod coding;
pub mod enumerate;
pub mod generate;
pub mod instance;
pub mod lp;
pub mod pipeline;
pub mod programs;
pub mod verify;

use thiserror::Error;

pub use coding::{CodingAction, CodingError, Gf256, TransmissionSchedule};
pub use enumerate::{Cycle, EnumerationError, PartialClique, SplitCycle};
pub use instance::{Instance, InstanceError, PacketIndex, PacketType, SplitDigraph, UserIndex};
pub use lp::{LinearProgram, LpError, Rational, SolveResult, Status};
pub use pipeline::{Limits, Mode, Strategy};
pub use programs::ProgramError;
pub use verify::{BoundsReport, DecodeReport, SimulationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error("{program} has no optimal solution ({status:?})")]
    Unsolved { program: String, status: Status },
    #[error("precondition failed: {0}")]
    Precondition(String),
}
