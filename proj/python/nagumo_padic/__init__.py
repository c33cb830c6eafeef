"""Python interface to the p-adic Nagumo solver core."""

try:
    from ._nagumo import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # pragma: no cover
    from _nagumo import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)
