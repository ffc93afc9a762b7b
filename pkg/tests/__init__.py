"""Tests for gtrace."""
