"""Tests for cpmm-hunter."""
