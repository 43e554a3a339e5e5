"""Numerical tolerances and size budgets shared across the package."""

import os

SUPPORTED_MODULI = (3, 4, 5)

# Hard ceiling for enumerating the vertex set at all (graph-only queries).
GRAPH_VERTEX_LIMIT = 2_000_000
# Default ceiling for dense spectral work; CYCLESPACE_MAX_VERTICES overrides.
DEFAULT_MAX_VERTICES = 100_000

UNITARY_TOL = 1e-12
DIAGONALIZATION_TOL = 1e-10
PROJECTION_TOL = 1e-10
SPECTRUM_RANGE_TOL = 1e-10
ROUTE_AGREEMENT_TOL = 1e-8
CLUSTER_TOL = 1e-8
ZERO_TOL = 1e-9
R1_RESIDUAL_TOL = 1e-6
LEVEL_CONSTANT_TOL = 1e-8
LINKAGE_TOL = 1e-8


class BudgetExceeded(RuntimeError):
    """Raised when a requested graph is larger than the configured budget."""


def max_vertices() -> int:
    value = os.environ.get("CYCLESPACE_MAX_VERTICES")
    if value is None:
        return DEFAULT_MAX_VERTICES
    try:
        limit = int(value)
    except ValueError as exc:
        raise ValueError(f"CYCLESPACE_MAX_VERTICES must be an integer, got {value!r}") from exc
    if limit < 1:
        raise ValueError("CYCLESPACE_MAX_VERTICES must be positive")
    return limit


def check_modulus(m: int) -> None:
    if m not in SUPPORTED_MODULI:
        raise ValueError(f"unsupported modulus m={m}; expected one of {SUPPORTED_MODULI}")


def check_dense_budget(m: int, N: int) -> None:
    size = m**N
    limit = max_vertices()
    if size > limit:
        raise BudgetExceeded(f"C_{m}^{N} has {size} vertices, above the dense budget of {limit}")
