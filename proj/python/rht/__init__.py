"""Exact integer and rational engine: Smith certificates, simplicial pair
homology, minimal-model inspection, quadratic-system reduction, and the
cell-pair encoder. Thin wrappers over the compiled extension; scalars are
Python ints, structured data crosses as JSON strings in the documented file
formats."""

try:  # packaged layout: the extension lives inside this package
    from . import _core as _impl
except ImportError:  # build tree: the extension sits alone on sys.path
    import _core as _impl

__all__ = sorted(n for n in dir(_impl) if not n.startswith("_"))
globals().update({n: getattr(_impl, n) for n in __all__})
