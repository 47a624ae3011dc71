"""Thermal fluctuation pressure between coated surfaces.

Four zero-frequency prescriptions of the finite-temperature pressure,
the surface-roughness and patch-potential correction stack, metrological
error budgets with theory-experiment verdicts, and hypothetical-force
coupling limits. The compiled core carries the numerics; this package
only locates the bundled data files and re-exports the bindings.
"""

import os
from pathlib import Path

# a wheel ships the data directory inside the package; an in-tree build
# relies on the path compiled into the core (or an explicit override)
_pkg_data = Path(__file__).resolve().parent / "data"
if _pkg_data.is_dir():
    os.environ.setdefault("CASIMIR_DATA_DIR", str(_pkg_data))

try:
    from casimirlab._core import *  # noqa: F401,F403
    from casimirlab._core import __version__  # noqa: F401
except ImportError:  # in-tree test layout: _core.so sits directly on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401

__all__ = [
    "Approach",
    "PressureResult",
    "Theory",
    "published_grid",
    "zero_frequency_pressure",
    "compose_uniform",
    "total_experimental_error",
    "constrain",
    "ConfigError",
    "InputError",
    "NumericError",
    "__version__",
]
