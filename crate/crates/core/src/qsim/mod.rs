//! Statevector simulation of the multi-angle QAOA ansatz, adjoint
//! gradients and Adam training.

mod adam;
mod adjoint;
mod ansatz;
mod checkpoint;
mod kernels;
mod operator;
mod statevector;
mod symmetric;
mod train;

pub use adam::{Adam, AdamConfig};
pub use adjoint::{adjoint_gradient, backward, zz_energy};
pub use ansatz::{forward_with_cap, run_ansatz, AnsatzParams, ForwardPass};
pub use checkpoint::{parse_checkpoint, Checkpoint};
pub use operator::ZzOperator;
pub use statevector::{Statevector, MAX_QUBITS};
pub use train::{
    effective_coefficients, objective_gradient, train, train_from, train_seeds, ObjectiveGradient, TrainConfig,
    TrainReport,
};
