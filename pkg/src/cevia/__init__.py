# version.py is autogenerated by setuptools_scm
try:
    from cevia._version import version as __version__
except ImportError:
    __version__ = "0.0.0+unknown"

from . import cevian_engine, curve_engine, exact_geom, real_roots

VERSION_CLEAN = __version__.split("+")[0]
