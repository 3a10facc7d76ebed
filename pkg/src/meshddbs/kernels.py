"""Hot-loop kernels with import-time backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module. Set ``MESHDDBS_PURE_PYTHON=1`` to force the
fallback. Both backends return identical results and node counts.
"""

from __future__ import annotations

import os
from types import ModuleType

from meshddbs import _pykernels

FEASIBLE = _pykernels.FEASIBLE
INFEASIBLE = _pykernels.INFEASIBLE
ABORTED = _pykernels.ABORTED


def _load_compiled() -> ModuleType | None:
    try:
        from meshddbs import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("MESHDDBS_PURE_PYTHON"):
    _impl: ModuleType = _compiled
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

all_pairs_diameter = _impl.all_pairs_diameter
subgraph_search = _impl.subgraph_search


def available_backends() -> dict[str, ModuleType]:
    """All importable kernel modules by name, for benchmarks and cross-checks."""
    backends = {"python": _pykernels}
    if _compiled is not None:
        backends["cython"] = _compiled
    return backends
