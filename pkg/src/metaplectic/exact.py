"""Exact synthesis: short-column reduction and single-qutrit decomposition.

A unitary column (u|0> + v|1> + w|2>)/sqrt(-3)^L with Eisenstein-integer
coordinates reduces to a basis state with R-count at most L+1: at each
denominator level either all three norms are 0 mod 3 (divide through by
sqrt(-3), no gates) or all are 1 mod 3 (align v and w to w^2*u with unit
powers, then one s2 drops the level).  A full single-qutrit unitary over
Z[w]/sqrt(-3)^L follows with R-count at most L+3.
"""

from __future__ import annotations

from typing import List, Tuple

from .circuit import Circuit, Gate, concat, dagger, r_count
from .eisenstein import (
    EisensteinInt,
    Residue3,
    divide_by_sqrt_minus3,
    mul_unit,
    norm,
    residue,
    unit_exponent_matching,
    unit_log,
)
from .simulate import ExactMatrix, apply_circuit_exact

CASE0 = "Case0"
CASE1 = "Case1"

# residue of w^2 = -1 - w
_RES_OMEGA2 = Residue3(2, 2)


class ExactSynthesisError(ValueError):
    """Input violates an exact-synthesis precondition."""


def _check_unitary_column(u: EisensteinInt, v: EisensteinInt, w: EisensteinInt, L: int):
    if L < 0:
        raise ExactSynthesisError("denominator exponent must be >= 0")
    total = norm(u) + norm(v) + norm(w)
    if total != 3**L:
        raise ExactSynthesisError(
            f"column is not unitary: |u|^2+|v|^2+|w|^2 = {total} != 3^{L}"
        )


def case_split(u: EisensteinInt, v: EisensteinInt, w: EisensteinInt, L: int) -> str:
    """Residue case of a unitary column at L > 0: all norms 0 or all 1 mod 3."""
    if L <= 0:
        raise ExactSynthesisError("case split is defined for L > 0")
    residues = (norm(u) % 3, norm(v) % 3, norm(w) % 3)
    if residues == (0, 0, 0):
        return CASE0
    if residues == (1, 1, 1):
        return CASE1
    raise ExactSynthesisError(
        f"mixed norm residues {residues}: column cannot be unitary at L={L}"
    )


def reduce_unit_entry_state(
    u: EisensteinInt, v: EisensteinInt, w: EisensteinInt
) -> Circuit:
    """Reduce a unit-coefficient basis state to |0> (at most one classical
    gate and one P0 power)."""
    nonzero = [(i, z) for i, z in enumerate((u, v, w)) if not z.is_zero()]
    if len(nonzero) != 1:
        raise ExactSynthesisError(
            f"expected exactly one nonzero coefficient, got {len(nonzero)}"
        )
    pos, value = nonzero[0]
    d = unit_log(value)
    if d is None:
        raise ExactSynthesisError(f"coefficient {value} is not a unit")
    gates: List[Gate] = []
    if pos == 1:
        gates.append(Gate("TAU01", (0,)))
    elif pos == 2:
        gates.append(Gate("TAU02", (0,)))
    if d != 0:
        gates.append(Gate("P0", (0,), (6 - d) % 6))
    return Circuit(1, tuple(gates))


def _emit_unit_diag(dv: int, dw: int) -> List[Gate]:
    """Gates for diag(1, (-w^2)^dv, (-w^2)^dw), normalized to omega powers
    plus at most one R gate (the Observation-1 splitting)."""
    gates: List[Gate] = []
    qv, qw = (2 * dv) % 3, (2 * dw) % 3
    if qv:
        gates.append(Gate("Q1", (0,), qv))
    if qw:
        gates.append(Gate("Q2", (0,), qw))
    sv, sw = dv % 2, dw % 2
    if sv and sw:
        gates.append(Gate("R0", (0,)))  # diag(1,-1,-1) = -R0, sign is global
    elif sv:
        gates.append(Gate("R1", (0,)))
    elif sw:
        gates.append(Gate("R2", (0,)))
    return gates


def _apply_unit_diag(
    dv: int, dw: int, u: EisensteinInt, v: EisensteinInt, w: EisensteinInt
) -> Tuple[EisensteinInt, EisensteinInt, EisensteinInt]:
    # action of the emitted gates (not of the raw P product; they differ by a
    # global sign exactly when dv and dw are both odd)
    sv, sw = dv % 2, dw % 2
    both = sv and sw
    u2 = -u if both else u
    v2 = mul_unit(v, (dv + 3) % 6 if both else dv)
    w2 = mul_unit(w, (dw + 3) % 6 if both else dw)
    return u2, v2, w2


def reduce_short_column(
    u: EisensteinInt, v: EisensteinInt, w: EisensteinInt, L: int
) -> Circuit:
    """Circuit c with c * (u,v,w)/sqrt(-3)^L = |0> exactly up to a 24th-root
    global phase; R-count at most L+1, classical cost linear in L."""
    _check_unitary_column(u, v, w, L)
    # canonicalize: strip common sqrt(-3) divisors before the loop
    while L > 0:
        parts = [divide_by_sqrt_minus3(z) for z in (u, v, w)]
        if any(p is None for p in parts):
            break
        u, v, w = parts
        L -= 1
    budget = L + 1
    gates: List[Gate] = []
    while L > 0:
        case = case_split(u, v, w, L)
        if case == CASE0:
            u2 = divide_by_sqrt_minus3(u)
            v2 = divide_by_sqrt_minus3(v)
            w2 = divide_by_sqrt_minus3(w)
            assert u2 is not None and v2 is not None and w2 is not None
            u, v, w = u2, v2, w2
        else:
            target = _RES_OMEGA2 * residue(u)
            dv = unit_exponent_matching(target, residue(v))
            dw = unit_exponent_matching(target, residue(w))
            assert dv is not None and dw is not None, "orbit alignment failed"
            gates.extend(_emit_unit_diag(dv, dw))
            gates.append(Gate("S2", (0,)))
            u, v, w = _apply_unit_diag(dv, dw, u, v, w)
            # s2 action followed by the sqrt(-3)^2 cancellation:
            # (u, v, w) -> -(u + w*v' + w*w', v' + w*w', w*v' + w')
            o2u = mul_unit(u, 4)  # w^2 * u
            vp = _exact_third(v - o2u)
            wp = _exact_third(w - o2u)
            u, v, w = (
                -(u + vp.mul_omega() + wp.mul_omega()),
                -(vp + wp.mul_omega()),
                -(vp.mul_omega() + wp),
            )
        L -= 1
        assert norm(u) + norm(v) + norm(w) == 3**L, "lost unitarity in reduction"
    tail = reduce_unit_entry_state(u, v, w)
    out = Circuit(1, tuple(gates) + tail.gates)
    assert r_count(out) <= budget, f"R-count {r_count(out)} exceeds {budget}"
    return out


def _exact_third(z: EisensteinInt) -> EisensteinInt:
    if z.a % 3 or z.b % 3:
        raise ExactSynthesisError(f"{z} is not divisible by 3")
    return EisensteinInt(z.a // 3, z.b // 3)


def reduce_two_entry_column(v: EisensteinInt, w: EisensteinInt, L: int) -> Circuit:
    """Reduce a unitary column (0, v, w)/sqrt(-3)^L to exactly |1> with at
    most one classical gate and one P gate.

    At every positive level both norms are 0 mod 3, so both coordinates
    divide by sqrt(-3); at level zero a single unit survives."""
    if L < 0 or norm(v) + norm(w) != 3**L:
        raise ExactSynthesisError("column (0, v, w) is not unitary")
    while L > 0:
        v2, w2 = divide_by_sqrt_minus3(v), divide_by_sqrt_minus3(w)
        assert v2 is not None and w2 is not None, "two-entry column must divide"
        v, w, L = v2, w2, L - 1
    gates: List[Gate] = []
    if v.is_zero():
        gates.append(Gate("TAU12", (0,)))
        v, w = w, v
    d = unit_log(v)
    if d is None:
        raise ExactSynthesisError(f"residual coefficient {v} is not a unit")
    if d != 0:
        gates.append(Gate("P1", (0,), (6 - d) % 6))
    out = Circuit(1, tuple(gates))
    assert r_count(out) <= 1
    return out


def exact_synthesize_1q(m: ExactMatrix) -> Circuit:
    """Synthesize a metaplectic circuit exactly equal (up to a 24th-root
    phase) to a 3x3 unitary over Z[w]/sqrt(-3)^L; R-count at most L+3."""
    if (m.rows, m.cols) != (3, 3):
        raise ExactSynthesisError("expected a 3x3 matrix")
    m = m.copy().canonicalize()
    if not m.is_unitary_exact():
        raise ExactSynthesisError("matrix is not unitary")
    L = m.L
    c1 = reduce_short_column(m.entries[0][0], m.entries[1][0], m.entries[2][0], L)
    u1 = apply_circuit_exact(c1, m)
    assert all(u1.entries[i][0].is_zero() for i in (1, 2)), "column 0 not reduced"
    c2 = reduce_two_entry_column(u1.entries[1][1], u1.entries[2][1], u1.L)
    u2 = apply_circuit_exact(c2, u1)
    assert u2.L == 0, "diagonal residual must have denominator exponent 0"
    assert all(
        u2.entries[i][j].is_zero() for i in range(3) for j in range(3) if i != j
    ), "residual is not diagonal"
    units = [unit_log(u2.entries[j][j]) for j in range(3)]
    assert None not in units, "diagonal residual entries must be units"
    # align entries 1 and 2 to entry 0 with one P-product (R-count <= 1)
    dv = (units[0] - units[1]) % 6
    dw = (units[0] - units[2]) % 6
    c3 = Circuit(1, tuple(_emit_unit_diag(dv, dw)))
    reduction = concat(1, [c1, c2, c3])
    out = dagger(reduction)
    assert r_count(out) <= L + 3, f"R-count {r_count(out)} exceeds {L + 3}"
    return out
