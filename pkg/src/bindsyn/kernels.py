"""Backend selection for the traversal kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
(or when ``BINDSYN_PURE=1`` is set) the pure-Python module is used.  Both
expose the same functions with the same semantics.
"""
import os

if os.environ.get("BINDSYN_PURE", "") not in ("", "0"):
    from ._pykernels import BACKEND, free_indices, order_key, remap, scope_bound, substitute
else:
    try:
        from ._ckernels import BACKEND, free_indices, order_key, remap, scope_bound, substitute
    except ImportError:
        from ._pykernels import BACKEND, free_indices, order_key, remap, scope_bound, substitute

__all__ = ["BACKEND", "free_indices", "order_key", "remap", "scope_bound", "substitute"]
