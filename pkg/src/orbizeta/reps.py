"""Finite-dimensional representations of the unit-tangent-bundle fundamental group.

The group has generators a_1, b_1, ..., a_g, b_g, c_1, ..., c_s and a central
element t, subject to

    prod_i [a_i, b_i] * prod_j c_j = t^(2g-2+s),      c_j^(nu_j) = t,

and an irreducible representation sends t to a scalar lam*I with
lam^(N*n*chi) = 1 (N = lcm of the cone orders).  Weights are normalized to
m in (-1, 1] with lam = exp(-i*pi*m).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import (DimensionMismatch, GenusZeroUnsupported, IllConditioned,
                     InfeasibleLambda, NonUnitModulusLambda, NotDiagonalizable,
                     UnknownPreset)
from .orbifold import OrbifoldSignature, new_signature

_COND_LIMIT = 1e8


@dataclass(frozen=True)
class Representation:
    n: int
    A: tuple          # images of a_1..a_g, complex (n, n) arrays
    B: tuple          # images of b_1..b_g
    C: tuple          # images of c_1..c_s
    lam: complex      # rho(t) = lam * I
    preset: str | None = None
    spectrum_gens: tuple | None = field(default=None, repr=False, compare=False)
    # matrices for the generators of the matching Fuchsian preset, if any

    @property
    def g(self) -> int:
        return len(self.A)

    @property
    def s(self) -> int:
        return len(self.C)

    def generators(self) -> list:
        """Images of a_1, b_1, ..., a_g, b_g, c_1, ..., c_s in presentation order."""
        out = []
        for a, b in zip(self.A, self.B):
            out.extend([a, b])
        out.extend(self.C)
        return out

    def to_json(self) -> str:
        def mat(M):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]
        return json.dumps({
            "n": self.n,
            "lambda": [float(self.lam.real), float(self.lam.imag)],
            "A": [mat(M) for M in self.A],
            "B": [mat(M) for M in self.B],
            "C": [mat(M) for M in self.C],
        })

    @staticmethod
    def from_json(text: str) -> "Representation":
        data = json.loads(text)
        n = int(data["n"])

        def mat(rows):
            M = np.array([[complex(re_, im) for re_, im in row] for row in rows])
            if M.shape != (n, n):
                raise DimensionMismatch(f"matrix shape {M.shape}, expected ({n}, {n})")
            return M

        lam = complex(data["lambda"][0], data["lambda"][1])
        return Representation(
            n=n,
            A=tuple(mat(M) for M in data.get("A", [])),
            B=tuple(mat(M) for M in data.get("B", [])),
            C=tuple(mat(M) for M in data.get("C", [])),
            lam=lam,
        )


@dataclass(frozen=True)
class ValidationReport:
    power_residuals: tuple      # max-entry norm of C_j^nu_j - lam*I, per j
    long_relation_residual: float
    lambda_unit_residual: float
    root_of_unity_residual: float
    max_condition: float
    tol: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "power_residuals": list(self.power_residuals),
            "long_relation_residual": self.long_relation_residual,
            "lambda_unit_residual": self.lambda_unit_residual,
            "root_of_unity_residual": self.root_of_unity_residual,
            "max_condition": self.max_condition,
            "tol": self.tol,
            "passed": self.passed,
        }


def _maxnorm(M) -> float:
    return float(np.abs(M).max()) if M.size else 0.0


def _commutator(X, Y):
    return X @ Y @ np.linalg.inv(X) @ np.linalg.inv(Y)


def central_exponent(sig: OrbifoldSignature, n: int) -> int:
    """The integer N*n*chi(X) from the central-character constraint lam^(N n chi) = 1."""
    e = Fraction(sig.lcm_order) * sig.chi * n
    assert e.denominator == 1
    return int(e)


def validate(rep: Representation, sig: OrbifoldSignature, tol: float = 1e-9) -> ValidationReport:
    """Check the presentation relations; residuals are absolute max-entry norms."""
    n = rep.n
    if len(rep.A) != sig.g or len(rep.B) != sig.g or len(rep.C) != sig.s:
        raise DimensionMismatch(
            f"generator counts (g={len(rep.A)}/{len(rep.B)}, s={len(rep.C)}) "
            f"do not match signature ({sig.g}; {list(sig.nu)})")
    for M in rep.generators():
        M = np.asarray(M)
        if M.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {M.shape}, expected ({n}, {n})")

    eye = np.eye(n)
    power_res = []
    for Cj, nu in zip(rep.C, sig.nu):
        power_res.append(_maxnorm(np.linalg.matrix_power(Cj, nu) - rep.lam * eye))

    lhs = eye.astype(complex)
    for a, b in zip(rep.A, rep.B):
        lhs = lhs @ _commutator(a, b)
    for Cj in rep.C:
        lhs = lhs @ Cj
    expo = 2 * sig.g - 2 + sig.s
    long_res = _maxnorm(lhs - rep.lam ** expo * eye)

    unit_res = abs(abs(rep.lam) - 1.0)
    e = central_exponent(sig, n)
    root_res = abs(rep.lam ** e - 1.0)

    conds = [float(np.linalg.cond(M)) for M in rep.generators()] or [1.0]
    max_cond = max(conds)

    passed = (max(power_res, default=0.0) <= tol and long_res <= tol
              and unit_res <= tol and root_res <= tol and max_cond < _COND_LIMIT)
    return ValidationReport(tuple(power_res), long_res, unit_res, root_res,
                            max_cond, tol, passed)


def weight_m(rep: Representation, tol: float = 1e-9) -> float:
    """Weight m in (-1, 1] with rho(t) = exp(-i*pi*m) * I."""
    lam = complex(rep.lam)
    if abs(abs(lam) - 1.0) > tol:
        raise NonUnitModulusLambda(f"|lambda| = {abs(lam)} != 1")
    m = -np.angle(lam) / math.pi
    if m <= -1.0 + 1e-13:
        m += 2.0
    return float(m)


@dataclass(frozen=True)
class FixedPartDecomposition:
    cone_index: int
    n_fixed: int                       # n_j = dim Fix rho(c_j)
    nonfixed_eigenvalues: tuple        # eigenvalues != 1
    det_I_minus_T: complex             # prod over nonfixed (1 - alpha)

    @property
    def det_T(self) -> complex:
        out = 1.0 + 0.0j
        for a in self.nonfixed_eigenvalues:
            out *= a
        return out


def fixed_decomposition(rep: Representation, sig: OrbifoldSignature, j: int,
                        tol: float = 1e-8) -> FixedPartDecomposition:
    """Split rho(c_j) = I_{n_j} (+) T_j by clustering Schur eigenvalues at 1."""
    Cj = np.asarray(rep.C[j - 1])
    nu = sig.nu[j - 1]
    T, _ = scipy.linalg.schur(Cj.astype(complex), output="complex")
    eigs = np.diag(T)
    for a in eigs:
        if abs(a ** nu - rep.lam) > 1e-6 * max(1.0, abs(rep.lam)):
            raise NotDiagonalizable(
                f"eigenvalue {a} of rho(c_{j}) violates alpha^{nu} = lambda; "
                "the representation breaks the relation c_j^nu = t")
    fixed = [a for a in eigs if abs(a - 1.0) <= tol]
    nonfixed = tuple(complex(a) for a in eigs if abs(a - 1.0) > tol)
    det = 1.0 + 0.0j
    for a in nonfixed:
        det *= (1.0 - a)
    return FixedPartDecomposition(j, len(fixed), nonfixed, det)


# --- constructive pieces -------------------------------------------------

def _random_unitary(n: int, rng) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def _random_well_conditioned(n: int, rng) -> np.ndarray:
    U = _random_unitary(n, rng)
    V = _random_unitary(n, rng)
    d = rng.uniform(0.6, 1.6, size=n)
    return U @ np.diag(d.astype(complex)) @ V


def commutator_pair(M: np.ndarray, rng, tol: float = 1e-9) -> tuple:
    """Matrices (A, B) with A B A^-1 B^-1 = M, for det(M) = 1.

    Scalar M = w*I uses a diagonal/cyclic-shift pair (w^n = det = 1 makes this
    possible); otherwise the eigenvalues t_i of M are threaded through their
    partial products p_i, A is diagonal in the Schur basis with entries 1/p_i,
    and B matches A^-1 M back to A^-1 by an eigenvector change of basis.
    """
    n = M.shape[0]
    scale = max(1.0, _maxnorm(M))
    if abs(np.linalg.det(M) - 1.0) > 1e-7 * scale ** n:
        raise IllConditioned(f"commutator_pair requires det = 1, got {np.linalg.det(M)}")

    if _maxnorm(M - M[0, 0] * np.eye(n)) < 1e-11 * scale:
        w = complex(M[0, 0])
        if abs(w - 1.0) < 1e-11:
            U = _random_unitary(n, rng)
            d = rng.uniform(0.5, 2.0, size=n).astype(complex)
            e = rng.uniform(0.5, 2.0, size=n).astype(complex)
            return U @ np.diag(d) @ U.conj().T, U @ np.diag(e) @ U.conj().T
        # w*I with w^n = 1: diagonal of powers of w against a cyclic shift
        D = np.diag(np.array([w ** (-k) for k in range(n)], dtype=complex))
        P = np.zeros((n, n), dtype=complex)
        for k in range(n):
            P[(k + 1) % n, k] = 1.0
        got = _commutator(D, P)
        if _maxnorm(got - M) > 1e-9:
            D = np.diag(np.array([w ** k for k in range(n)], dtype=complex))
            got = _commutator(D, P)
        if _maxnorm(got - M) > 1e-9:
            raise IllConditioned("cyclic commutator construction failed for scalar matrix")
        return D, P

    for attempt in range(8):
        W = _random_unitary(n, rng)
        Mw = W @ M @ W.conj().T
        T, Q = scipy.linalg.schur(Mw.astype(complex), output="complex")
        t = np.diag(T)
        p = np.ones(n, dtype=complex)
        for i in range(1, n):
            p[i] = p[i - 1] * t[i - 1]
        sep = min(abs(p[i] - p[k]) for i in range(n) for k in range(i + 1, n)) if n > 1 else 1.0
        if sep < 1e-6:
            continue
        A_s = np.diag(1.0 / p)
        X = np.linalg.inv(A_s) @ T          # eigenvalues are p shifted by one
        vals, V = np.linalg.eig(X)
        if np.linalg.cond(V) > 1e7:
            continue
        perm = np.zeros((n, n), dtype=complex)
        used = set()
        ok = True
        for k in range(n):
            cands = [j for j in range(n) if j not in used and abs(p[j] - vals[k]) < 1e-6 * max(1.0, abs(vals[k]))]
            if not cands:
                ok = False
                break
            jbest = min(cands, key=lambda j: abs(p[j] - vals[k]))
            used.add(jbest)
            perm[k, jbest] = 1.0
        if not ok:
            continue
        B_s = V @ perm
        A = Q @ A_s @ Q.conj().T
        Bm = Q @ B_s @ Q.conj().T
        A = W.conj().T @ A @ W
        Bm = W.conj().T @ Bm @ W
        if _maxnorm(_commutator(A, Bm) - M) < max(tol, 1e-10 * scale):
            return A, Bm
    raise IllConditioned("no well-conditioned Shoda decomposition found")


def _lambda_phase_fraction(lam: complex, order_bound: int) -> Fraction:
    """Exact phase/2pi of a root of unity lam with lam^order_bound = 1."""
    phi = np.angle(lam) / (2 * math.pi)
    p = round(phi * order_bound)
    frac = Fraction(p, order_bound)
    if abs(np.exp(2j * math.pi * float(frac)) - lam) > 1e-7:
        raise InfeasibleLambda(f"lambda = {lam} is not a root of unity of order dividing {order_bound}")
    return frac


def _eigenvalue_assignment(sig: OrbifoldSignature, n: int, phase: Fraction, rng):
    """Pick per-cone eigenvalue offsets K_j with prod det(C_j) = lam^(n(2g-2+s)).

    Eigenvalues of C_j are exp(2 pi i (phase + k)/nu_j), k = 0..nu_j-1; the
    determinant constraint fixes sum_j K_j/nu_j mod 1 where K_j is the sum of
    the chosen offsets.  Solved exactly in rational arithmetic.
    """
    s = sig.s
    target = (Fraction(n) * phase * (2 * sig.g - 2 + s)
              - Fraction(n) * phase * sum(Fraction(1, v) for v in sig.nu)) % 1
    if s == 0:
        if target != 0:
            raise InfeasibleLambda("determinant constraint unsatisfiable with no cone points")
        return []
    for _ in range(64):
        ks = [list(rng.integers(0, v, size=n)) for v in sig.nu]
        partial = sum((Fraction(sum(k), v) for k, v in zip(ks[:-1], sig.nu[:-1])),
                      start=Fraction(0))
        need = (target - partial) % 1
        v_last = sig.nu[-1]
        base = need * v_last
        if base.denominator != 1:
            continue
        K_last = int(base)
        hits = [K for K in range(K_last % v_last, n * (v_last - 1) + 1, v_last)]
        if not hits:
            continue
        K = int(rng.choice(hits))
        last = []
        rem = K
        for slot in range(n):
            hi = min(v_last - 1, rem)
            lo = max(0, rem - (n - slot - 1) * (v_last - 1))
            if lo > hi:
                break
            pick = int(rng.integers(lo, hi + 1))
            last.append(pick)
            rem -= pick
        if len(last) == n and rem == 0:
            ks[-1] = last
            return ks
    # exhaustive feasibility: dynamic program over residues mod 1
    from itertools import product as iproduct
    denom = sig.lcm_order
    want = target * denom
    if want.denominator != 1:
        raise InfeasibleLambda("determinant constraint lies off the root-of-unity lattice")
    want = int(want) % denom
    reach = {0: []}
    for j, v in enumerate(sig.nu):
        step = denom // v
        new = {}
        for K in range(0, n * (v - 1) + 1):
            for r, wit in reach.items():
                rr = (r + K * step) % denom
                if rr not in new:
                    new[rr] = wit + [K]
        reach = new
    if want not in reach:
        raise InfeasibleLambda("no eigenvalue multiset satisfies the determinant constraint")
    ks = []
    for K, v in zip(reach[want], sig.nu):
        slots = []
        rem = K
        for slot in range(n):
            hi = min(v - 1, rem)
            lo = max(0, rem - (n - slot - 1) * (v - 1))
            pick = hi if slot % 2 == 0 else lo
            slots.append(pick)
            rem -= pick
        assert rem == 0
        ks.append(slots)
    return ks


def random_rep(sig: OrbifoldSignature, n: int, lam: complex, seed: int = 0) -> Representation:
    """Deterministic pseudo-random representation with rho(t) = lam*I.

    The c_j are drawn diagonalizable with eigenvalues among the nu_j-th roots
    of lam, auxiliary handle generators are random well-conditioned matrices,
    and the leftover determinant-one matrix is closed into the first
    commutator.
    """
    if sig.g < 1:
        raise GenusZeroUnsupported("random_rep requires genus >= 1; use catalog_rep")
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-9:
        raise NonUnitModulusLambda(f"|lambda| = {abs(lam)}")
    e = abs(central_exponent(sig, n))
    if abs(lam ** e - 1.0) > 1e-8:
        raise InfeasibleLambda(
            f"lambda^{e} != 1: central character constraint fails for n = {n} on "
            f"({sig.g}; {list(sig.nu)})")
    phase = _lambda_phase_fraction(lam, e)

    rng = np.random.default_rng(seed)
    ks = _eigenvalue_assignment(sig, n, phase, rng)

    last_err: Exception | None = None
    for attempt in range(8):
        C = []
        for slots, v in zip(ks, sig.nu):
            angles = [2 * math.pi * float((phase + k) / v) for k in slots]
            diag = np.diag(np.exp(1j * np.array(angles)))
            U = _random_unitary(n, rng)
            C.append(U @ diag @ U.conj().T)
        A = [None] * sig.g
        B = [None] * sig.g
        for i in range(1, sig.g):
            A[i] = _random_well_conditioned(n, rng)
            B[i] = _random_well_conditioned(n, rng)
        rest = np.eye(n, dtype=complex)
        for i in range(1, sig.g):
            rest = rest @ _commutator(A[i], B[i])
        for Cj in C:
            rest = rest @ Cj
        M1 = lam ** (2 * sig.g - 2 + sig.s) * np.linalg.inv(rest)
        try:
            A[0], B[0] = commutator_pair(M1, rng)
        except IllConditioned as err:
            last_err = err
            continue
        rep = Representation(n=n, A=tuple(A), B=tuple(B), C=tuple(C), lam=lam)
        if validate(rep, sig, tol=1e-9).passed:
            return rep
        last_err = IllConditioned("relation residual above 1e-9 after assembly")
    raise last_err if last_err is not None else IllConditioned("random_rep failed")


# --- catalog -------------------------------------------------------------

_TRIANGLE_RE = re.compile(r"^triangle-\((\d+),(\d+),(\d+)\)(-sl2)?$")
_TRIVIAL_RE = re.compile(r"^trivial-\((\d+);([\d,]*)\)$")


def catalog_rep(preset: str) -> tuple:
    """Named representation together with its signature.

    Presets: "triangle-(p,q,r)-sl2", "genus2-octagon-sl2", "trivial-(g;nu,...)".
    """
    m = _TRIVIAL_RE.match(preset)
    if m:
        g = int(m.group(1))
        nus = [int(v) for v in m.group(2).split(",") if v]
        sig = new_signature(g, nus)
        one = np.eye(1, dtype=complex)
        rep = Representation(n=1, A=(one,) * g, B=(one,) * g, C=(one,) * len(nus),
                             lam=1.0 + 0.0j, preset=preset)
        return rep, sig

    m = _TRIANGLE_RE.match(preset)
    if m and m.group(4):
        p, q, r = int(m.group(1)), int(m.group(2)), int(m.group(3))
        sig = new_signature(0, [p, q, r])
        from .fuchsian import triangle_rotations
        C = tuple(M.astype(complex) for M in triangle_rotations(p, q, r))
        rep = Representation(n=2, A=(), B=(), C=C, lam=-1.0 + 0.0j,
                             preset=preset, spectrum_gens=C)
        return rep, sig

    if preset == "genus2-octagon-sl2":
        sig = new_signature(2, [])
        from .fuchsian import octagon_translations
        G = octagon_translations()
        gm = [M.astype(complex) for M in G]
        inv = np.linalg.inv
        # commutator-form generators inside the octagon group:
        #   a1 = g1, b1 = g2^-1, a2 = g3^-1 g4, b2 = g1 g2^-1 g3
        A1, B1 = gm[0], inv(gm[1])
        A2, B2 = inv(gm[2]) @ gm[3], gm[0] @ inv(gm[1]) @ gm[2]
        rep = Representation(n=2, A=(A1, A2), B=(B1, B2), C=(),
                             lam=-1.0 + 0.0j, preset=preset,
                             spectrum_gens=tuple(gm))
        return rep, sig

    raise UnknownPreset(f"unknown representation preset {preset!r}")
