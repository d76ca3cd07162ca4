"""Good postulation of general fat points in P^3, checked by rank over F_p."""

__version__ = "0.1.0"
