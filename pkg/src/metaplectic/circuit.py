"""Gate set and circuit intermediate representation.

Gates are the phase-stripped metaplectic generators: the braiding gates
Q_j = diag with one w, s2 (the balanced 1/sqrt(3) mixer), the classical
transpositions/INC/SUM/SWAP, the reflections R_j = diag with one -1, and
P_j = R_j Q_j^2.  A circuit is an ordered gate list applied first-to-last
in time, so its matrix is the reversed product of the gate matrices.

Cost is measured by the R-count: R gates and odd P powers count one, all
braiding-only gates count zero, and runs of P gates collapse per the
sign/omega splitting of diagonal unit products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator


# kind -> (arity, multiplicative order of the generator)
GATE_KINDS = {
    "Q0": (1, 3),
    "Q1": (1, 3),
    "Q2": (1, 3),
    "S2": (1, 12),
    "TAU01": (1, 2),
    "TAU02": (1, 2),
    "TAU12": (1, 2),
    "INC": (1, 3),
    "INC_DAG": (1, 3),
    "R0": (1, 2),
    "R1": (1, 2),
    "R2": (1, 2),
    "P0": (1, 6),
    "P1": (1, 6),
    "P2": (1, 6),
    "SUM": (2, 3),
    "SUM_DAG": (2, 3),
    "SWAP": (2, 2),
}

R_KINDS = ("R0", "R1", "R2")
P_KINDS = ("P0", "P1", "P2")
CLASSICAL_KINDS = ("TAU01", "TAU02", "TAU12", "INC", "INC_DAG", "SUM", "SUM_DAG", "SWAP")


@dataclass(frozen=True)
class Gate:
    """A gate instance: kind, target qutrit indices, and integer power.

    Powers are normalized modulo the generator's order; a zero power is a
    legal no-op that simulators skip."""

    kind: str
    targets: tuple
    power: int = 1

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity, order = GATE_KINDS[self.kind]
        targets = tuple(int(t) for t in self.targets)
        if len(targets) != arity:
            raise ValueError(f"{self.kind} expects {arity} target(s), got {targets}")
        if len(set(targets)) != len(targets):
            raise ValueError(f"{self.kind} targets must be distinct: {targets}")
        if any(t < 0 for t in targets):
            raise ValueError(f"negative qutrit index in {targets}")
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "power", self.power % order)

    def __str__(self) -> str:
        pw = f"^{self.power}" if self.power != 1 else ""
        return f"{self.kind}{pw}({','.join(map(str, self.targets))})"


def G(kind: str, *targets: int, power: int = 1) -> Gate:
    """Shorthand constructor."""
    return Gate(kind, tuple(targets), power)


@dataclass(frozen=True)
class Circuit:
    """An ordered metaplectic gate sequence on `width` qutrits.

    `ancilla_count` qutrits at the high end of the index range are ancillas
    (included in `width`)."""

    width: int
    gates: tuple = field(default_factory=tuple)
    ancilla_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise ValueError("circuit width must be >= 1")
        if not 0 <= self.ancilla_count < self.width + 1:
            raise ValueError("ancilla_count out of range")
        for g in self.gates:
            if any(t >= self.width for t in g.targets):
                raise ValueError(f"gate {g} outside width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)


def r_count(c: Circuit) -> int:
    """Syntactic R-count of the emitted representation.

    Maximal runs of consecutive P gates on one qutrit are first collapsed:
    the product diag((-w^2)^d0, (-w^2)^d1, (-w^2)^d2) splits into an omega
    part (free) and a sign part, which costs one R gate exactly when one or
    two of the d_j are odd (zero or three odd signs give +-identity)."""
    total = 0
    gates = [g for g in c.gates if g.power != 0]
    i = 0
    while i < len(gates):
        g = gates[i]
        if g.kind in P_KINDS:
            target = g.targets[0]
            parity = [0, 0, 0]
            while (
                i < len(gates)
                and gates[i].kind in P_KINDS
                and gates[i].targets[0] == target
            ):
                parity[int(gates[i].kind[1])] += gates[i].power
                i += 1
            odd = sum(p % 2 for p in parity)
            if odd in (1, 2):
                total += 1
        else:
            if g.kind in R_KINDS and g.power % 2 == 1:
                total += 1
            i += 1
    return total


# ---- structural helpers ------------------------------------------------------


def dagger(c: Circuit) -> Circuit:
    """Inverse circuit up to a global phase.

    Every generator has finite order, so inversion is power negation; for s2
    the identity s2^dagger = i * s2^2 is used and the i is dropped (all
    downstream comparisons are phase-quotient)."""
    out = []
    for g in reversed(c.gates):
        if g.power == 0:
            continue
        _, order = GATE_KINDS[g.kind]
        if g.kind == "S2":
            out.append(Gate(g.kind, g.targets, (2 * g.power) % order))
        else:
            out.append(Gate(g.kind, g.targets, (order - g.power) % order))
    return Circuit(c.width, tuple(out), c.ancilla_count)


def remap(c: Circuit, mapping: dict, new_width: int, ancilla_count: int = 0) -> Circuit:
    """Embed a circuit into a wider register via a qutrit index map."""
    gates = tuple(
        Gate(g.kind, tuple(mapping[t] for t in g.targets), g.power) for g in c.gates
    )
    return Circuit(new_width, gates, ancilla_count)


def concat(width: int, parts: Iterable, ancilla_count: int = 0) -> Circuit:
    """Concatenate circuits and/or bare gate iterables at a common width."""
    gates = []
    for part in parts:
        if isinstance(part, Circuit):
            gates.extend(part.gates)
        else:
            gates.extend(part)
    return Circuit(width, tuple(gates), ancilla_count)


# ---- textual circuit format --------------------------------------------------

_HEADER_RE = re.compile(r"^qutrits:\s*(\d+)\s*,\s*ancillas:\s*(\d+)\s*$")
_GATE_RE = re.compile(r"^([A-Z][A-Z0-9_]*)(?:\^(-?\d+))?\((\d+(?:\s*,\s*\d+)*)\)$")


def write_circuit_text(c: Circuit) -> str:
    """One gate per line, `NAME[^power](q_i[,q_j])`, after a width header."""
    lines = [f"qutrits: {c.width}, ancillas: {c.ancilla_count}"]
    for g in c.gates:
        if g.power != 0:
            lines.append(str(g))
    return "\n".join(lines) + "\n"


def parse_circuit_text(text: str) -> Circuit:
    width = None
    ancillas = 0
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if width is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise ValueError(f"line {lineno}: expected `qutrits: n, ancillas: m` header")
            width, ancillas = int(m.group(1)), int(m.group(2))
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse gate {line!r}")
        kind, power, targets = m.group(1), m.group(2), m.group(3)
        gates.append(
            Gate(
                kind,
                tuple(int(t) for t in targets.replace(" ", "").split(",")),
                1 if power is None else int(power),
            )
        )
    if width is None:
        raise ValueError("missing circuit header")
    return Circuit(width, tuple(gates), ancillas)
