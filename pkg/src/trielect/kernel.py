"""Simulation-kernel selection.

Imports the compiled kernel when it is built and falls back to the pure
Python twin otherwise. Set ``TRIELECT_KERNEL=py`` or ``TRIELECT_KERNEL=c``
to force a backend; forcing ``c`` fails loudly when the extension is
missing instead of silently degrading.
"""

from __future__ import annotations

import os

from . import _kernel_py

_choice = os.environ.get("TRIELECT_KERNEL", "").lower()

if _choice == "py":
    _impl = _kernel_py
elif _choice == "c":
    from . import _kernel_c as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

SimState = _impl.SimState
BACKEND: str = "c" if _impl.__name__.endswith("_kernel_c") else "py"


def available_backends() -> list[str]:
    backends = ["py"]
    try:
        from . import _kernel_c  # noqa: F401
        backends.append("c")
    except ImportError:
        pass
    return backends


def make_state(node_lists, backend: str | None = None):
    """Construct a kernel state, optionally pinning the backend."""
    if backend is None:
        return SimState(node_lists)
    if backend == "py":
        return _kernel_py.SimState(node_lists)
    if backend == "c":
        from . import _kernel_c
        return _kernel_c.SimState(node_lists)
    raise ValueError(f"unknown kernel backend {backend!r}")


def state_from_config(config, backend: str | None = None):
    """Kernel state mirroring a Configuration (pids become list indices)."""
    return make_state([p.nodes for p in config.particles], backend)
