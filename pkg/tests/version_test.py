"""Version test."""

import unittest

from gtrace import __version__


class TestVersion(unittest.TestCase):
    """Test version."""

    def test_version_type(self):
        """The installed version is a string."""
        self.assertIsInstance(__version__, str)
