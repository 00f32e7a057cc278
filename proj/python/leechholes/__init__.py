"""Exact computations with the holes of the Leech lattice."""

try:
    from ._leechholes import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _leechholes import *  # noqa: F401,F403
