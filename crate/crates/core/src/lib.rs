//! Majorana trijunction braiding on qubits.
//!
//! Pauli-string algebra, Majorana monomials and exchange operators, the
//! coupler and continuous Jordan–Wigner layouts, a state-vector simulator for
//! the braiding and adiabatic protocols, and a gate-level resource counter.

pub mod compiler;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod majorana;
pub mod mapping;
pub mod pauli;
pub mod simulator;

pub use compiler::{compile_adiabatic, compile_braiding, compile_rotation, count_resources, Circuit, Gate, Method, ResourceReport};
pub use error::{Error, Result};
pub use hamiltonians::{kitaev_chain, schedule, trijunction_h, Configuration, Transition, TrijunctionParams};
pub use majorana::{protocol_steps, BraidStep, ExchangeOperator, MajoranaHamiltonian, MajoranaIndex, MajoranaMonomial, Orientation};
pub use mapping::{LayoutKind, QubitLayout};
pub use pauli::{PauliAxis, PauliString, PauliSum, Phase};
pub use simulator::{
    braid_unitary, fidelity, ground_space, prepare_initial, project_braid, run_adiabatic, run_braiding, BraidReport,
    GroundSpace, GroundSpaceOptions, Propagation, Sign, StateVector,
};
