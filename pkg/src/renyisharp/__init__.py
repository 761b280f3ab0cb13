"""renyi-sharp - sharp bounds between conditional Rényi entropies."""

__version__ = "0.1.0"
__author__ = "renyisharp developers"

__all__ = ["__version__"]
