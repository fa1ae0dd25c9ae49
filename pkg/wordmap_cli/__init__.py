"""Wordmap CLI - spectral word maps and suffix coherence from raw text."""

__version__ = "0.1.0"
