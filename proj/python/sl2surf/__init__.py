"""Orbit classification for projectivized SL(2,R) representations.

The heavy lifting happens in the C++ extension; this package re-exports its
surface.
"""

try:
    from ._sl2surf import (  # noqa: F401
        canonical_element,
        census,
        classify,
        expand,
        fields_summary,
        orbit_rank,
        sample,
        tangency,
    )
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _sl2surf import (  # noqa: F401
        canonical_element,
        census,
        classify,
        expand,
        fields_summary,
        orbit_rank,
        sample,
        tangency,
    )

__all__ = [
    "canonical_element",
    "census",
    "classify",
    "expand",
    "fields_summary",
    "orbit_rank",
    "sample",
    "tangency",
]
