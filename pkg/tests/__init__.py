"""Test suite for wordmap-cli."""
