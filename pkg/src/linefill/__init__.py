"""linefill: trainable paint-bucket colorization for line-art animation."""

__version__ = "0.1.0"
