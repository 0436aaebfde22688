"""Placement kernel selection and dispatch.

The compiled extension is preferred when it imported cleanly; otherwise
the pure-Python twin takes over. Both implement the same contract and
produce bit-identical results, so selection only affects speed. Set
``RECTCARTO_FORCE_PYTHON=1`` to insist on the fallback.
"""

from __future__ import annotations

import os
from typing import Any

import numpy as np

if os.environ.get("RECTCARTO_FORCE_PYTHON", "") not in ("", "0"):
    from . import _mp2_fallback as _default_impl

    _DEFAULT_NAME = "python"
else:
    try:
        from . import _mp2_kernel as _default_impl  # type: ignore[no-redef]

        _DEFAULT_NAME = "compiled"
    except ImportError:
        from . import _mp2_fallback as _default_impl  # type: ignore[no-redef]

        _DEFAULT_NAME = "python"


def kernel_name() -> str:
    """Name of the kernel selected at import: 'compiled' or 'python'."""
    return _DEFAULT_NAME


def get_kernel(name: str | None = None) -> Any:
    """Resolve a kernel module by name (None selects the default)."""
    if name is None:
        return _default_impl
    if name == "python":
        from . import _mp2_fallback

        return _mp2_fallback
    if name == "compiled":
        from . import _mp2_kernel  # raises ImportError when not built

        return _mp2_kernel
    raise ValueError(f"unknown kernel {name!r}, expected 'compiled' or 'python'")


def run_construction(compiled, order: np.ndarray, use_index: bool, kernel: str | None = None):
    """Run the placement kernel over a compiled map.

    Returns ``(x, y, dfs_num, failed, tests)`` where ``failed`` is a
    boolean mask of regions dropped with overlap and ``tests`` counts the
    exact rectangle-pair overlap checks performed.
    """
    impl = get_kernel(kernel)
    n = compiled.n
    out_x = np.empty(n, dtype=np.float64)
    out_y = np.empty(n, dtype=np.float64)
    dfs_num = np.zeros(n, dtype=np.int32)
    failed = np.zeros(n, dtype=np.uint8)
    tests = impl.run_construction(
        compiled.x, compiled.y, compiled.scaled_dx, compiled.scaled_dy,
        compiled.indptr, compiled.indices, order,
        bool(use_index), out_x, out_y, dfs_num, failed,
    )
    return out_x, out_y, dfs_num, failed.astype(bool), int(tests)
