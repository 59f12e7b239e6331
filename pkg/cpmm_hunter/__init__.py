"""cpmm-hunter - CPMM simulator and exploit synthesizer for token composability bugs."""

__version__ = "0.1.0"
