"""Chart Q&A dataset synthesis pipeline."""

__version__ = "0.1.0"
