"""Exact and high-precision circuit simulators, distance, and group checks.

The exact simulator works over Z[w] with a shared denominator exponent L
(value = entries / sqrt(-3)^L) and a global phase index in Z24: each s2
contributes one sqrt(-3) to the denominator and a factor i (= 6 units of
phase24), everything else is an exact monomial matrix.  Canonical form
strips common sqrt(-3) divisors, using div-by-(1+2w) <=> (a+b) = 0 mod 3.

The float simulator mirrors the same gate actions in mpmath at a caller
chosen precision; a float64/numpy fast path exists for verification at
coarse tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import mpmath
import numpy as np

from .circuit import CLASSICAL_KINDS, Circuit, Gate
from .eisenstein import EisensteinInt, mul_unit, norm, unit_pow

SIMULATION_WIDTH_CAP = 8

_OMEGA_C = complex(-0.5, 0.8660254037844386)
_INV_SQRT3 = 0.5773502691896258


# ---- digit bookkeeping -------------------------------------------------------


@lru_cache(maxsize=None)
def _digit_array(width: int, q: int) -> np.ndarray:
    """digit_array[r] = base-3 digit of row index r at qutrit q (0 = leftmost)."""
    return (np.arange(3**width) // 3 ** (width - 1 - q)) % 3


@lru_cache(maxsize=None)
def _digit_maps(kind: str, power: int) -> tuple:
    base = {
        "TAU01": (1, 0, 2),
        "TAU02": (2, 1, 0),
        "TAU12": (0, 2, 1),
        "INC": (1, 2, 0),
        "INC_DAG": (2, 0, 1),
    }[kind]
    m = (0, 1, 2)
    for _ in range(power):
        m = tuple(base[d] for d in m)
    return m


def _gate_row_perm(gate: Gate, width: int) -> Optional[np.ndarray]:
    """Row-index permutation of a classical gate, or None for non-classical."""
    if gate.kind not in CLASSICAL_KINDS:
        return None
    n = 3**width
    idx = np.arange(n)
    if gate.kind in ("SUM", "SUM_DAG", "SWAP"):
        c, t = gate.targets
        dc, dt = _digit_array(width, c), _digit_array(width, t)
        sc = 3 ** (width - 1 - c)
        st = 3 ** (width - 1 - t)
        out = idx
        if gate.kind == "SWAP" and gate.power % 2 == 1:
            out = idx + (dt - dc) * sc + (dc - dt) * st
        elif gate.kind == "SUM":
            out = idx + ((dt + gate.power * dc) % 3 - dt) * st
        elif gate.kind == "SUM_DAG":
            out = idx + ((dt - gate.power * dc) % 3 - dt) * st
        return out
    m = _digit_maps(gate.kind, gate.power)
    q = gate.targets[0]
    d = _digit_array(width, q)
    s = 3 ** (width - 1 - q)
    moves = np.array([m[0] - 0, m[1] - 1, m[2] - 2])
    return idx + moves[d] * s


def classical_permutation(c: Circuit) -> tuple:
    """Basis-index permutation of a purely classical circuit."""
    perm = list(range(3**c.width))
    for g in c.gates:
        if g.power == 0:
            continue
        gp = _gate_row_perm(g, c.width)
        if gp is None:
            raise ValueError(f"{g.kind} is not a classical gate")
        perm = [int(gp[r]) for r in perm]
    return tuple(perm)


def classical_apply_index(c: Circuit, index: int) -> int:
    """Image of one basis index under a classical circuit."""
    r = index
    for g in c.gates:
        if g.power == 0:
            continue
        gp = _gate_row_perm(g, c.width)
        if gp is None:
            raise ValueError(f"{g.kind} is not a classical gate")
        r = int(gp[r])
    return r


# ---- exact matrices ----------------------------------------------------------


def _div_sqrt_m3_coords(a: int, b: int) -> tuple:
    # (a + b w)/(1 + 2 w); caller guarantees (a + b) % 3 == 0
    return ((2 * b - a) // 3, (b - 2 * a) // 3)


@dataclass
class ExactMatrix:
    """Matrix over Z[w] with value = e^(2 pi i phase24/24) * entries / sqrt(-3)^L."""

    rows: int
    cols: int
    entries: list
    L: int = 0
    phase24: int = 0

    @staticmethod
    def identity(dim: int) -> "ExactMatrix":
        e = [
            [EisensteinInt(1 if i == j else 0, 0) for j in range(dim)]
            for i in range(dim)
        ]
        return ExactMatrix(dim, dim, e)

    @staticmethod
    def basis_column(dim: int, j: int) -> "ExactMatrix":
        e = [[EisensteinInt(1 if i == j else 0, 0)] for i in range(dim)]
        return ExactMatrix(dim, 1, e)

    @staticmethod
    def column(values: Iterable, L: int = 0) -> "ExactMatrix":
        vals = list(values)
        return ExactMatrix(len(vals), 1, [[v] for v in vals], L=L)

    @property
    def dim(self) -> int:
        if self.rows != self.cols:
            raise ValueError("dim is only defined for square matrices")
        return self.rows

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(
            self.rows, self.cols, [row[:] for row in self.entries], self.L, self.phase24
        )

    def canonicalize(self) -> "ExactMatrix":
        """Strip common sqrt(-3) divisors and reduce phase24 mod 24, in place."""
        while self.L > 0:
            if any((z.a + z.b) % 3 for row in self.entries for z in row):
                break
            for row in self.entries:
                for j, z in enumerate(row):
                    a, b = _div_sqrt_m3_coords(z.a, z.b)
                    row[j] = EisensteinInt(a, b)
            self.L -= 1
        self.phase24 %= 24
        return self

    def conj_transpose(self) -> "ExactMatrix":
        e = [[self.entries[i][j].conj() for i in range(self.rows)] for j in range(self.cols)]
        # conj(1/sqrt(-3)^L) = (-1)^L / sqrt(-3)^L
        return ExactMatrix(self.cols, self.rows, e, self.L, (-self.phase24 + 12 * self.L) % 24)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = EisensteinInt(0, 0)
        e = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            e.append(row)
        return ExactMatrix(
            self.rows, other.cols, e, self.L + other.L, self.phase24 + other.phase24
        ).canonicalize()

    def is_unitary_exact(self) -> bool:
        """entries . entries^dagger == 3^L * I as an integer identity."""
        if self.rows != self.cols:
            return False
        target = 3**self.L
        for i in range(self.rows):
            for j in range(self.rows):
                acc = EisensteinInt(0, 0)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * self.entries[j][k].conj()
                want = target if i == j else 0
                if acc.a != want or acc.b != 0:
                    return False
        return True

    # ---- conversions ----------------------------------------------------

    def to_numpy(self) -> np.ndarray:
        if self.L > 400:
            raise ValueError("denominator exponent too large for float64 conversion")
        scale = np.exp(2j * np.pi * self.phase24 / 24) / (1j * np.sqrt(3.0)) ** self.L
        out = np.empty((self.rows, self.cols), dtype=complex)
        for i, row in enumerate(self.entries):
            for j, z in enumerate(row):
                out[i, j] = complex(z.a - z.b / 2, z.b * 0.8660254037844386) * scale
        return out

    def to_mpmath(self, precision_bits: int = 128) -> mpmath.matrix:
        with mpmath.workprec(precision_bits + 16):
            half = mpmath.mpf(1) / 2
            rt3h = mpmath.sqrt(3) / 2
            scale = mpmath.exp(2j * mpmath.pi * self.phase24 / 24)
            scale /= (1j * mpmath.sqrt(3)) ** self.L
            out = mpmath.matrix(self.rows, self.cols)
            for i, row in enumerate(self.entries):
                for j, z in enumerate(row):
                    out[i, j] = (z.a - z.b * half + 1j * (z.b * rt3h)) * scale
            return out

    # ---- equality up to phase -------------------------------------------

    def equals_up_to_phase(self, other: "ExactMatrix") -> bool:
        """Value equality modulo a 24th root of unity (ring comparison)."""
        return self._match_unit(other) is not None

    def equals_exactly(self, other: "ExactMatrix") -> bool:
        d = self._match_unit(other)
        if d is None:
            return False
        a, b = self.copy().canonicalize(), other.copy().canonicalize()
        # unit (-w^2)^d has phase24 index 4d
        return (a.phase24 - b.phase24 - 4 * d) % 24 == 0

    def _match_unit(self, other: "ExactMatrix") -> Optional[int]:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return None
        a = self.copy().canonicalize()
        b = other.copy().canonicalize()
        if a.L != b.L:
            return None
        ref = None
        for row_a, row_b in zip(a.entries, b.entries):
            for za, zb in zip(row_a, row_b):
                if zb.is_zero() != za.is_zero():
                    return None
                if not za.is_zero():
                    ref = (za, zb)
                    break
            if ref:
                break
        if ref is None:
            return 0  # both zero
        for d in range(6):
            if mul_unit(ref[1], d) == ref[0]:
                if all(
                    mul_unit(zb, d) == za
                    for row_a, row_b in zip(a.entries, b.entries)
                    for za, zb in zip(row_a, row_b)
                ):
                    return d
        return None


# ---- exact simulation --------------------------------------------------------


def _gate_unit_scales(gate: Gate) -> Optional[tuple]:
    """Per-digit unit exponents (index into the 6-cycle) for diagonal gates."""
    kind, p = gate.kind, gate.power
    if kind.startswith("Q"):
        j = int(kind[1])
        # w = (-w^2)^2
        return tuple((2 * p) % 6 if d == j else 0 for d in range(3))
    if kind.startswith("R"):
        j = int(kind[1])
        return tuple((3 * p) % 6 if d == j else 0 for d in range(3))
    if kind.startswith("P"):
        j = int(kind[1])
        return tuple(p % 6 if d == j else 0 for d in range(3))
    return None


def _apply_exact(m: ExactMatrix, gate: Gate, width: int) -> None:
    if gate.power == 0:
        return
    perm = _gate_row_perm(gate, width)
    if perm is not None:
        new_rows: list = [None] * m.rows
        for r, row in enumerate(m.entries):
            new_rows[int(perm[r])] = row
        m.entries = new_rows
        return
    scales = _gate_unit_scales(gate)
    if scales is not None:
        q = gate.targets[0]
        digits = _digit_array(width, q)
        for r, row in enumerate(m.entries):
            d = scales[digits[r]]
            if d:
                m.entries[r] = [mul_unit(z, d) for z in row]
        return
    assert gate.kind == "S2"
    q = gate.targets[0]
    s = 3 ** (width - 1 - q)
    for _ in range(gate.power % 12):
        for base in range(0, m.rows, 3 * s):
            for l in range(s):
                r0, r1, r2 = base + l, base + l + s, base + l + 2 * s
                row0, row1, row2 = m.entries[r0], m.entries[r1], m.entries[r2]
                n0, n1, n2 = [], [], []
                for x0, x1, x2 in zip(row0, row1, row2):
                    t = x0 + x1 + x2
                    n0.append((t - x0).mul_omega() + x0)
                    n1.append((t - x1).mul_omega() + x1)
                    n2.append((t - x2).mul_omega() + x2)
                m.entries[r0], m.entries[r1], m.entries[r2] = n0, n1, n2
        m.L += 1
        m.phase24 += 6
        m.canonicalize()


def simulate_exact(c: Circuit, width_cap: int = SIMULATION_WIDTH_CAP) -> ExactMatrix:
    """Exact product of the circuit's gate matrices, canonicalized."""
    if c.width > width_cap:
        raise ValueError(f"width {c.width} over the exact-simulation cap {width_cap}")
    m = ExactMatrix.identity(3**c.width)
    for g in c.gates:
        _apply_exact(m, g, c.width)
    return m.canonicalize()


def apply_circuit_exact(c: Circuit, state: ExactMatrix) -> ExactMatrix:
    """Apply a circuit to an exact column/matrix (left multiplication)."""
    if state.rows != 3**c.width:
        raise ValueError("state dimension does not match circuit width")
    m = state.copy()
    for g in c.gates:
        _apply_exact(m, g, c.width)
    return m.canonicalize()


# ---- float simulation --------------------------------------------------------


def _gate_local_matrix(gate: Gate) -> np.ndarray:
    """3x3 complex matrix of a local gate at power 1..order-1."""
    kind, p = gate.kind, gate.power
    if kind == "S2":
        m = np.array(
            [[1, _OMEGA_C, _OMEGA_C], [_OMEGA_C, 1, _OMEGA_C], [_OMEGA_C, _OMEGA_C, 1]],
            dtype=complex,
        ) * _INV_SQRT3
        return np.linalg.matrix_power(m, p)
    scales = _gate_unit_scales(gate)
    if scales is not None:
        units = [np.exp(1j * np.pi * d / 3) for d in scales]
        return np.diag(units).astype(complex)
    m3 = _digit_maps(kind, p)
    out = np.zeros((3, 3), dtype=complex)
    for d in range(3):
        out[m3[d], d] = 1.0
    return out


def gate_matrix(gate: Gate, width: int = None) -> np.ndarray:
    """Full numeric matrix of one gate (float64), mainly for tests."""
    if width is None:
        width = max(gate.targets) + 1
    m = np.eye(3**width, dtype=complex)
    _apply_float64(m, gate, width)
    return m


def _apply_float64(m: np.ndarray, gate: Gate, width: int) -> None:
    if gate.power == 0:
        return
    n = m.shape[0]
    perm = _gate_row_perm(gate, width)
    if perm is not None:
        m[perm] = m.copy()
        return
    scales = _gate_unit_scales(gate)
    q = gate.targets[0]
    digits = _digit_array(width, q)
    if scales is not None:
        units = np.array([np.exp(1j * np.pi * d / 3) for d in scales])
        m *= units[digits][:, None]
        return
    assert gate.kind == "S2"
    s = 3 ** (width - 1 - q)
    hi = n // (3 * s)
    g3 = _gate_local_matrix(gate)
    view = m.reshape(hi, 3, s, m.shape[1])
    np.einsum("ab,hbsn->hasn", g3, view.copy(), out=view)


def simulate_float64(c: Circuit) -> np.ndarray:
    """Float64 matrix of a circuit; error ~1e-13 for 1e5-gate circuits."""
    if c.width > SIMULATION_WIDTH_CAP:
        raise ValueError(f"width {c.width} over the simulation cap")
    m = np.eye(3**c.width, dtype=complex)
    for g in c.gates:
        _apply_float64(m, g, c.width)
    return m


def simulate_float(c: Circuit, precision_bits: int = 128) -> mpmath.matrix:
    """High-precision matrix of a circuit at the requested precision.

    Internally computed with guard bits scaled to the gate count."""
    if c.width > SIMULATION_WIDTH_CAP:
        raise ValueError(f"width {c.width} over the simulation cap")
    guard = 32 + 2 * max(1, len(c.gates)).bit_length()
    with mpmath.workprec(precision_bits + guard):
        omega = mpmath.exp(2j * mpmath.pi / 3)
        inv_rt3 = 1 / mpmath.sqrt(3)
        units = [mpmath.exp(1j * mpmath.pi * d / 3) for d in range(6)]
        n = 3**c.width
        rows = [[mpmath.mpc(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for g in c.gates:
            if g.power == 0:
                continue
            perm = _gate_row_perm(g, c.width)
            if perm is not None:
                new_rows: list = [None] * n
                for r in range(n):
                    new_rows[int(perm[r])] = rows[r]
                rows = new_rows
                continue
            scales = _gate_unit_scales(g)
            q = g.targets[0]
            digits = _digit_array(c.width, q)
            if scales is not None:
                for r in range(n):
                    d = scales[digits[r]]
                    if d:
                        u = units[d]
                        rows[r] = [u * z for z in rows[r]]
                continue
            assert g.kind == "S2"
            s = 3 ** (c.width - 1 - q)
            for _ in range(g.power % 12):
                for base in range(0, n, 3 * s):
                    for l in range(s):
                        r0, r1, r2 = base + l, base + l + s, base + l + 2 * s
                        row0, row1, row2 = rows[r0], rows[r1], rows[r2]
                        n0, n1, n2 = [], [], []
                        for x0, x1, x2 in zip(row0, row1, row2):
                            t = x0 + x1 + x2
                            n0.append((omega * (t - x0) + x0) * inv_rt3)
                            n1.append((omega * (t - x1) + x1) * inv_rt3)
                            n2.append((omega * (t - x2) + x2) * inv_rt3)
                        rows[r0], rows[r1], rows[r2] = n0, n1, n2
        out = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                out[i, j] = rows[i][j]
        return out


def mp_to_numpy(m: mpmath.matrix) -> np.ndarray:
    out = np.empty((m.rows, m.cols), dtype=complex)
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = complex(m[i, j])
    return out


# ---- distance ----------------------------------------------------------------


def _as_numpy(u) -> np.ndarray:
    if isinstance(u, mpmath.matrix):
        return mp_to_numpy(u)
    if isinstance(u, ExactMatrix):
        return u.to_numpy()
    return np.asarray(u, dtype=complex)


def _aligning_phase(U: np.ndarray, V: np.ndarray) -> float:
    """Phase phi minimizing max_j |lambda_j(V^dag U) - e^{i phi}|."""
    lam = np.linalg.eigvals(V.conj().T @ U)
    ang = np.sort(np.angle(lam))
    if len(ang) == 1:
        return float(ang[0])
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * np.pi]]))
    k = int(np.argmax(gaps))
    # covered arc runs from ang[k+1] (wrapping) over 2 pi - max gap
    start = ang[(k + 1) % len(ang)] if k + 1 < len(ang) else ang[0] + 2 * np.pi
    return float(start + (2 * np.pi - gaps[k]) / 2.0)


def spectral_norm(D: np.ndarray, rel_tol: float = 1e-3, max_iter: int = 400) -> float:
    """Largest singular value by power iteration on D^dag D."""
    if not np.any(D):
        return 0.0
    n = D.shape[1]
    v = np.ones(n, dtype=complex) + 1e-3 * np.arange(n)
    v /= np.linalg.norm(v)
    sigma_prev = 0.0
    sigma = 0.0
    for _ in range(max_iter):
        w = D @ v
        sigma = float(np.linalg.norm(w))
        if sigma == 0.0:
            return 0.0
        v = D.conj().T @ w
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return sigma
        v /= nv
        if abs(sigma - sigma_prev) <= rel_tol * sigma * 0.25:
            break
        sigma_prev = sigma
    return sigma


def distance(U, V) -> float:
    """min over global phase of the spectral norm ||U - e^{i phi} V||.

    Inputs may be numpy arrays, mpmath matrices, or ExactMatrix (converted to
    float64; the power iteration carries a 1e-3 relative tolerance)."""
    Un, Vn = _as_numpy(U), _as_numpy(V)
    if Un.shape != Vn.shape:
        raise ValueError(f"dimension mismatch: {Un.shape} vs {Vn.shape}")
    phi = _aligning_phase(Un, Vn)
    return spectral_norm(Un - np.exp(1j * phi) * Vn)


def register_distance(C, target: np.ndarray, n_anc: int) -> float:
    """Distance of a circuit matrix to target x |0..0> on the ancilla-zero slice.

    Ancillas are the trailing (least-significant) qutrits, prepared in |0>;
    the comparison restricts to input columns with all ancillas at 0 and
    demands the outputs return them to 0."""
    Cn = _as_numpy(C)
    dim_reg = target.shape[0]
    e0 = np.zeros((Cn.shape[0] // dim_reg, 1), dtype=complex)
    e0[0, 0] = 1.0
    T = np.kron(target, e0)
    S = Cn[:, [r * (Cn.shape[0] // dim_reg) for r in range(dim_reg)]]
    phi = _aligning_phase(T.conj().T @ S, np.eye(dim_reg, dtype=complex))
    return spectral_norm(S - np.exp(1j * phi) * T)


# ---- classical subgroup of two-qutrit gates -----------------------------------


def classical_group_order(generators: Optional[Iterable[Gate]] = None) -> int:
    """Order of the subgroup of S9 generated by the given classical gates.

    Default generators: SUM, SWAP, and all 1-qutrit classical gates on either
    qutrit (transpositions and INC)."""
    if generators is None:
        generators = [
            Gate("SUM", (0, 1)),
            Gate("SWAP", (0, 1)),
            Gate("TAU01", (0,)),
            Gate("TAU02", (0,)),
            Gate("TAU12", (0,)),
            Gate("TAU01", (1,)),
            Gate("TAU02", (1,)),
            Gate("TAU12", (1,)),
            Gate("INC", (0,)),
            Gate("INC", (1,)),
        ]
    perms = []
    for g in generators:
        perm = _gate_row_perm(g, 2)
        if perm is None:
            raise ValueError(f"{g.kind} is not a classical gate")
        perms.append(tuple(int(x) for x in perm))
    identity = tuple(range(9))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for elem in frontier:
            for p in perms:
                composed = tuple(p[elem[i]] for i in range(9))
                if composed not in seen:
                    seen.add(composed)
                    nxt.append(composed)
        frontier = nxt
    return len(seen)
