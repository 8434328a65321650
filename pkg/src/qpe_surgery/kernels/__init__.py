"""Hot kernels: compiled Cython core with a numpy fallback chosen at import.

Set ``QPE_SURGERY_KERNELS=python`` to force the fallback.
"""

import os

from . import _pykernels

_compiled = None
if os.environ.get("QPE_SURGERY_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

_active = _compiled if _compiled is not None else _pykernels
BACKEND = _active.NAME

ring_mul = _active.ring_mul
ring_matmul_fixed = _active.ring_matmul_fixed
reduce_batch = _active.reduce_batch
apply_1q = _active.apply_1q
apply_cx = _active.apply_cx


def available_backends():
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def get_backend(name):
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available") from None
