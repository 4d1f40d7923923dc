"""Linearity defect and minimal graded resolutions over F_p."""
__version__ = "0.1.0"
