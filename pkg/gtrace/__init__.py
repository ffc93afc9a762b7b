"""gtrace package."""

from importlib import metadata

from .burnside import burnside_ring
from .fields import make_field
from .forms.isometry import is_isometric
from .groups import build_group
from .lab import run_suite

try:
    __version__ = metadata.version(__name__)
except metadata.PackageNotFoundError:
    # package is not installed
    __version__ = "0.0.0"  # pragma: no cover

__all__ = ["build_group", "burnside_ring", "make_field", "is_isometric", "run_suite"]
