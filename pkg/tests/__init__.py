"""Test package for the argument-shift toolkit."""
