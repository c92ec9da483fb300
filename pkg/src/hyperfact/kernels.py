"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` module. Set ``HYPERFACT_PURE=1`` to force the
fallback.
"""
from __future__ import annotations

import contextlib
import os

from hyperfact import _kernels_py

if os.environ.get("HYPERFACT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from hyperfact import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

scan_radicand = _impl.scan_radicand
gamma_hits = _impl.gamma_hits


def backends() -> dict[str, object]:
    """Every importable backend module by name, for benchmarking."""
    out: dict[str, object] = {"python": _kernels_py}
    try:
        from hyperfact import _kernels

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out


@contextlib.contextmanager
def use(name: str):
    """Temporarily route the module-level kernels to backend ``name``."""
    global scan_radicand, gamma_hits, BACKEND
    impl = backends()[name]
    saved = scan_radicand, gamma_hits, BACKEND
    scan_radicand, gamma_hits, BACKEND = impl.scan_radicand, impl.gamma_hits, name
    try:
        yield
    finally:
        scan_radicand, gamma_hits, BACKEND = saved
