"""Route planning with reach-tube operational volumes for urban air mobility."""

__version__ = "0.1.0"
