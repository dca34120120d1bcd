"""Money demand with a digital currency: Baumol-Tobin theory and ARDL bounds-testing econometrics."""

__version__ = "0.1.0"
