"""Kernel backend selection: compiled extension vs pure-numpy fallback.

The compiled module ``decolab._native`` is preferred when importable;
otherwise the pure-Python twin ``decolab._fallback`` is used.  The
environment variable ``DECOLAB_BACKEND`` forces the choice (``native``,
``python``, or ``auto``), and :func:`select` switches at runtime, which
the test suite and the benchmark use to exercise both implementations.
"""

from __future__ import annotations

import os

from . import _fallback

_BACKENDS = {"python": _fallback}
try:
    from . import _native

    _BACKENDS["native"] = _native
except ImportError:
    pass


def available() -> tuple[str, ...]:
    """Names of the importable backends."""
    return tuple(sorted(_BACKENDS))


def select(which: str) -> str:
    """Switch the active backend; returns the name actually selected."""
    global _impl, _name
    if which in ("auto", ""):
        which = "native" if "native" in _BACKENDS else "python"
    if which not in _BACKENDS:
        raise ValueError(
            f"backend {which!r} is not available (have {available()})"
        )
    _impl = _BACKENDS[which]
    _name = which
    return _name


def name() -> str:
    """Name of the active backend."""
    return _name


select(os.environ.get("DECOLAB_BACKEND", "auto").strip().lower())


def eigh_jacobi(a, max_sweeps=60):
    return _impl.eigh_jacobi(a, max_sweeps)


def member_weights(phi):
    return _impl.member_weights(phi)


def ensemble_value(phi):
    return _impl.ensemble_value(phi)


def pair_descend(phi, v, rounds, max_sweeps=160, ftol=1e-9,
                 n_theta=12, n_phi=16, refine=28):
    return _impl.pair_descend(phi, v, rounds, max_sweeps, ftol,
                              n_theta, n_phi, refine)
