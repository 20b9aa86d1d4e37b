//! Fermionic solution of free Hamiltonians: transfer operators, the ancilla
//! extension, ladder modes and the conserved tower.

mod extension;
mod higher;
mod identities;
mod modes;
mod transfer;

pub use extension::{simplicial_extension, Extension};
pub use higher::{higher_hamiltonian, higher_hamiltonian_series};
pub use identities::{
    charge_commutator_residual, clique_transfer_recurrence, fundamental_identity_residual,
    simplicial_transfer_recurrence, transfer_product_residual, RecurrenceResidual,
};
pub use modes::{check_modes, incognito_modes, reconstruct, IncognitoMode, ModeChecks, ModeSet, DENSE_CHECK_QUBITS};
pub use transfer::TransferOperator;
