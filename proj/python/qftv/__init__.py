"""Formal verification of QFT circuits via rotational abstraction."""

import json

from ._qftv import (
    Circuit,
    CircuitParseError,
    QftvError,
    SolverFailure,
    emit_smt2,
    gate_count,
    generate_qft,
    per_qubit_phase,
    simulate,
)
from ._qftv import cross_check_json as _cross_check_json
from ._qftv import verify_json as _verify_json

__all__ = [
    "Circuit",
    "CircuitParseError",
    "QftvError",
    "SolverFailure",
    "cross_check",
    "emit_smt2",
    "gate_count",
    "generate_qft",
    "per_qubit_phase",
    "simulate",
    "verify",
]


def verify(circuit, backend="auto", exhaustive=False, threads=1, solver=None, timeout=60.0):
    """Check every qubit's output and return the report as a dict."""
    return json.loads(_verify_json(circuit, backend, exhaustive, threads, solver, timeout))


def cross_check(circuit, max_qubits=12):
    """Compare against dense simulation over all basis inputs; returns a dict."""
    return json.loads(_cross_check_json(circuit, max_qubits))
