"""Pricing policies and user equilibria for a wireless-LAN provider."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__
except ImportError:  # in-tree builds put _core next to the sources
    from _core import *  # noqa: F401,F403
    from _core import __version__
