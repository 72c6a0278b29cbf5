"""Kernel backend selection.

``GFF_BACKEND`` may be ``auto`` (default: compiled if importable), ``compiled``
(fail loudly if the extension is missing) or ``python``.
"""
import os

from gff import _fallback

_requested = os.environ.get("GFF_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "compiled", "python"):
    raise ImportError(f"GFF_BACKEND must be auto, compiled or python, got {_requested!r}")

_impl = _fallback
BACKEND = "python"
if _requested != "python":
    try:
        from gff import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _fallback

mgs = _impl.mgs
kron = _impl.kron
weighted_gram = _impl.weighted_gram


def available_backends():
    """Map backend name to kernel module for every backend importable here."""
    found = {"python": _fallback}
    try:
        from gff import _kernels

        found["compiled"] = _kernels
    except ImportError:
        pass
    return found
