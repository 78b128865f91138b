"""Generic equations and multiplicities for secant varieties of Segre-Veronese varieties."""

__version__ = "0.1.0"
