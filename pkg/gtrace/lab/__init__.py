"""Property-check harness: seeded instance streams, checks and the suite runner."""

from .checks import CHECKS, run_check
from .generator import Instance, InstanceGenerator
from .suite import run_suite, suite_passed

__all__ = ["CHECKS", "run_check", "Instance", "InstanceGenerator", "run_suite", "suite_passed"]
