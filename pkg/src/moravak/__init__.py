"""Machine checks for Morava K-theory ring presentations of small p-groups."""

__version__ = "0.1.0"
