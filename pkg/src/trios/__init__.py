"""Toffoli-aware qubit routing: keep three-qubit gates whole through routing
and pick their CNOT decomposition afterwards."""

__version__ = "0.1.0"
