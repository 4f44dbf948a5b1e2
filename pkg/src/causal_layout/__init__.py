"""Time-aware static layouts of dynamic graphs from higher-order models of causal paths."""

__version__ = "0.1.0"
