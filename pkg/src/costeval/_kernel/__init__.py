"""Sweep kernel selection: compiled extension when available, numpy fallback otherwise.

Both implementations satisfy one contract and produce bit-identical outputs;
see fallback.outcome_sweep for the semantics.  The COSTEVAL_KERNEL
environment variable ("numpy" or "cython") forces the import-time default.
"""

from __future__ import annotations

import os
import warnings
from typing import Callable

from . import fallback

try:
    from . import _sweep as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None

KernelFn = Callable[..., tuple]


def available_kernels() -> dict[str, KernelFn]:
    kernels: dict[str, KernelFn] = {"numpy": fallback.outcome_sweep}
    if HAVE_COMPILED:
        kernels["cython"] = _compiled.outcome_sweep
    return kernels


def resolve_kernel(name: str = "auto") -> tuple[str, KernelFn]:
    """Map a kernel request to (resolved name, callable).

    "auto" prefers the compiled kernel; asking for "cython" without the
    extension built is an error.
    """
    if name == "auto":
        name = "cython" if HAVE_COMPILED else "numpy"
    kernels = available_kernels()
    if name not in kernels:
        raise ValueError(
            f"kernel {name!r} is not available; choose from "
            f"{sorted(kernels)} or 'auto'"
        )
    return name, kernels[name]


_requested = os.environ.get("COSTEVAL_KERNEL", "auto").strip().lower() or "auto"
if _requested == "cython" and not HAVE_COMPILED:
    warnings.warn(
        "COSTEVAL_KERNEL=cython requested but the compiled kernel is not built; "
        "using the numpy fallback",
        RuntimeWarning,
    )
    _requested = "numpy"

ACTIVE_KERNEL, outcome_sweep = resolve_kernel(_requested)
