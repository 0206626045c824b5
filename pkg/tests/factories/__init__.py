"""Test factories package."""
