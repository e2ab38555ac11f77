"""Distributed exact L0-constrained least squares."""

from ._core import (
    Error,
    __version__,
    enumerate_local,
    generate,
    laplacian,
    read_dataset,
    run,
    solve_centralized,
    solve_local,
)

__all__ = [
    "Error",
    "__version__",
    "enumerate_local",
    "generate",
    "laplacian",
    "read_dataset",
    "run",
    "solve_centralized",
    "solve_local",
]
