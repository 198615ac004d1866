"""Kernel backend selection.

The compiled ``_core`` extension is used when importable; set
``BERNLAB_PURE=1`` to force the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("BERNLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # noqa: F811

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py

horner_eval = _impl.horner_eval
lacunary_eval = _impl.lacunary_eval
blaschke_eval = _impl.blaschke_eval

__all__ = ["BACKEND", "horner_eval", "lacunary_eval", "blaschke_eval"]
