"""Spectral data of Schrödinger operators on armchair nanotube graphs.

Thin package wrapper around the native module; see the project README for
the CLI and file formats.
"""

from ._armchair import (  # noqa: F401
    Band,
    Decomposition,
    DegenerateError,
    FlatBand,
    FlatBandEigenfunction,
    FullSpectrum,
    HillData,
    HillEdge,
    IdentityReport,
    KSpectrum,
    LyapunovData,
    NumericalError,
    ParseError,
    PoleError,
    Potential,
    Rect,
    Resonance,
    TubeParams,
    bands_for_k,
    build_monodromy,
    build_monodromy_oracle,
    build_psi,
    complex_resonances,
    decompose,
    delta_asymptotics,
    dirichlet_eigenvalues,
    flat_bands,
    full_spectrum,
    fundamental_solutions,
    branch_samples,
    hill_band_edges,
    kirchhoff_residual,
    lyapunov_eval,
    merge_intervals,
    neumann_eigenvalues,
    phi_l2_norm_sq,
    real_resonances,
    reconstruct,
    run_cli,
    verify_identities,
    vertex_value_residual,
    winding_number,
    xi_rho,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
