"""Exact simulator for entanglement-breaking multiple-access channels and the quantum butterfly network."""

from ._ebnet import (
    ChoiMatrix,
    EbVerdict,
    QuantumChannel,
    QuantumState,
    SweepRow,
    apply,
    apply_on_factors,
    bell_measurement_channel,
    butterfly_channel,
    capacity_sweep,
    choi,
    choi_distance,
    choi_partial_transpose_min_eig,
    compose_parallel,
    compose_serial,
    computational_basis_state,
    controlled_weyl_channel,
    dense_coding_mac,
    demo_names,
    depolarizing_channel,
    ea_capacity_depolarizing,
    eb_threshold_exact,
    eb_threshold_scan,
    eb_verdict,
    fidelity_with_pure,
    flagged_bm_identity_channel,
    generalized_bell_state,
    h_d,
    holevo_capacity_depolarizing,
    holevo_quantity,
    identity_channel,
    kraus_rank_one_witness,
    maximally_entangled_state,
    maximally_mixed_state,
    noisy_bm_channel,
    partial_trace,
    random_pure_state,
    run_cli,
    run_demo,
    superadditivity_ratio,
    tensor,
    von_neumann_entropy,
    weyl_operator,
)

__all__ = [name for name in dir() if not name.startswith("_")]
