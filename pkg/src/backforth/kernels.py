"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` fallback.  :func:`use` switches at runtime (tests
and the benchmark run both).
"""

from __future__ import annotations

from backforth import _pykernels

try:
    from backforth import _ckernels
except ImportError:  # extension not built
    _ckernels = None

FOUND = _pykernels.FOUND
NONE_POSSIBLE = _pykernels.NONE_POSSIBLE
BUDGET_EXHAUSTED = _pykernels.BUDGET_EXHAUSTED

_impl = _ckernels if _ckernels is not None else _pykernels


def available() -> list[str]:
    return ["cython", "python"] if _ckernels is not None else ["python"]


def backend() -> str:
    return "cython" if _impl is _ckernels else "python"


def use(name: str) -> str:
    """Select ``"cython"`` or ``"python"``; returns the previous backend."""
    global _impl
    previous = backend()
    if name == "python":
        _impl = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def reach(n, out_start, heads, src, alive):
    return _impl.reach(n, out_start, heads, src, alive)


def reach_reverse(n, in_start, in_edges, tails, src, alive):
    return _impl.reach_reverse(n, in_start, in_edges, tails, src, alive)


def reaches(n, out_start, heads, src, dst, alive):
    return _impl.reaches(n, out_start, heads, src, dst, alive)


def bfs_path(n, out_start, heads, src, dst, alive):
    return _impl.bfs_path(n, out_start, heads, src, dst, alive)


def max_flow(n, out_start, heads, in_start, in_edges, tails, src, dst):
    return _impl.max_flow(n, out_start, heads, in_start, in_edges, tails, src, dst)


def pair_search(n, out_start, heads, src, dst, budget):
    return _impl.pair_search(n, out_start, heads, src, dst, budget)
