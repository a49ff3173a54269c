"""Krawtchouk oscillator bindings."""

from ._kosc import (
    OscillatorParams,
    aligned_distance,
    displacement_state,
    eigh_tridiagonal,
    expm_skew_hermitian,
    hamiltonian_eigenvalue,
    h_as,
    intertwiner,
    krawtchouk,
    krawtchouk_functions,
    ladder,
    lattice,
    orthogonality_gram,
    phase_coherent_state,
    psi_roots,
    recurrence_coefficients,
    recurrence_table,
    renormalized_table,
    root_sum_state,
    run_checks,
    run_cli,
    spin_state,
    tilde_hamiltonian,
    weight,
)

__all__ = [name for name in dir() if not name.startswith("_")]
