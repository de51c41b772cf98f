"""Hot loops, compiled when the extension is built, pure Python otherwise.

Set ``DISTINCTCOUNT_PURE=1`` to force the Python implementation.
"""
import os
from contextlib import contextmanager

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("DISTINCTCOUNT_PURE"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_NAMES = ("zero_sum_cycle_weight", "injective_count", "partition_profile")


def _install(mod):
    g = globals()
    g["BACKEND"] = mod.BACKEND
    for name in _NAMES:
        g[name] = getattr(mod, name)


_install(compiled_backend or python_backend)


def backends():
    """Available kernel modules, compiled first."""
    return [b for b in (compiled_backend, python_backend) if b is not None]


@contextmanager
def use(mod):
    """Temporarily route every kernel call through ``mod``."""
    prev = globals()["_active"]
    _set(mod)
    try:
        yield mod
    finally:
        _set(prev)


def _set(mod):
    globals()["_active"] = mod
    _install(mod)


_active = compiled_backend or python_backend
