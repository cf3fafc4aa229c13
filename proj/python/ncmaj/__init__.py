"""Matrix-valued Boolean analysis, moment majorization and noncommutative
Grothendieck optimization.

The compiled core lives in ``ncmaj._ncmaj``; everything it exports is
re-exported here. Matrices cross the boundary as complex numpy arrays.
"""

try:  # installed layout: extension inside the package
    from ._ncmaj import *  # noqa: F401,F403
except ImportError:  # in-tree builds put _ncmaj next to the build directory
    from _ncmaj import *  # noqa: F401,F403

__version__ = "0.1.0"
