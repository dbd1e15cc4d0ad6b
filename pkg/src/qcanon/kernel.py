"""Backend selection for the straightening kernel.

The compiled extension ``qcanon._kernel`` is used when it was built;
otherwise (or when ``QCANON_PURE_PYTHON`` is set to a non-empty value) the
pure-Python twin is loaded.  Both expose the same names.
"""

from __future__ import annotations

import os

if os.environ.get("QCANON_PURE_PYTHON"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND: str = _impl.BACKEND
Straightener = _impl.Straightener
poly_mul = _impl.poly_mul
accumulate = _impl.accumulate
accumulate_product = _impl.accumulate_product

_straighteners: dict[int, object] = {}


def straightener(n: int):
    """Shared per-size straightener (its caches are idempotent)."""
    s = _straighteners.get(n)
    if s is None:
        s = Straightener(n)
        _straighteners[n] = s
    return s


def clear_caches() -> None:
    _straighteners.clear()
