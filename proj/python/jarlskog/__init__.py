"""Commutator determinants det[H, H'] and rephasing-invariant phases of mixing matrices."""

from ._core import (
    DegenerateSpectrumError,
    DimensionError,
    IndexOutOfRangeError,
    JarlskogError,
    NotHermitianError,
    NotUnitaryError,
    ParseError,
    __version__,
    det4_terms,
    det_closed,
    det_direct,
    det_from_hermitian,
    eigh,
    expand_phases,
    haar_unitary,
    jr_matrices,
    n3_phase_table,
    nonlinear_relation_residuals,
    parse_problem,
    phase_table,
    plaquette,
    reconstruct_J,
    rephase,
    sample_problem,
    t_factors,
    unitary_relation_residuals,
    verify,
    write_problem,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
