"""int64 scan kernels behind the exhaustive verifiers.

Two array backends implement the same scans: "numba" (JIT-compiled loops,
nogil so worker threads genuinely overlap) and "numpy" (vectorized).  The
environment variable PLURIGENUS_BACKEND picks the default; "python" selects
the exact bignum reference implemented in plurigenus.search, which is also
what the verifiers silently fall back to whenever the int64 guards below do
not hold.  All backends produce byte-identical reports.

Scaling conventions keep everything in integers:

  * the defining sum for (r, a) at level m is carried as a numerator over
    the fixed denominator 2r;
  * the closed form for (r, 1) is carried as a numerator over 12r, so the
    consistency scan compares 6*defnum against the closed numerator;
  * inequality rows with mixed denominators 2*alpha and 2*beta are compared
    after cross-multiplication.

The guards bound the largest possible intermediate well below 2**62; numba
and numpy both wrap silently on int64 overflow, so out-of-range parameters
must never reach these kernels.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .exactmath import DomainError, mod_inverse

try:
    import numba
except ImportError:
    numba = None

__all__ = [
    "BACKEND_ENV_VAR",
    "BACKENDS",
    "available_backends",
    "default_backend",
    "resolve_backend",
    "prop26_int64_safe",
    "prop27_int64_safe",
    "prop26_scan",
    "prop27_scan",
]

BACKEND_ENV_VAR = "PLURIGENUS_BACKEND"
BACKENDS = ("numba", "numpy", "python")

# Candidate-violation capacity for the numba kernels.  The scans are
# regression oracles for proved statements, so in practice zero rows come
# back; if the cap is ever exceeded the caller reruns the exact path.
VIOLATION_CAP = 4096


def available_backends() -> tuple[str, ...]:
    if numba is not None:
        return BACKENDS
    return ("numpy", "python")


def default_backend() -> str:
    env = os.environ.get(BACKEND_ENV_VAR)
    if env is not None:
        return resolve_backend(env)
    return "numba" if numba is not None else "numpy"


def resolve_backend(name: str | None) -> str:
    if name is None:
        return default_backend()
    if name not in BACKENDS:
        raise DomainError(f"unknown backend {name!r}, expected one of {BACKENDS}")
    if name == "numba" and numba is None:
        raise DomainError("backend 'numba' requested but numba is not installed")
    return name


def prop26_int64_safe(r_max: int, m_max: int) -> bool:
    # Largest compared magnitude: 4*r^3 from the closed cubic plus m*r^2-ish
    # terms from both sides; factor 4 of headroom on each.
    return 4 * r_max**3 + 4 * m_max * r_max**2 < 2**62


def prop27_int64_safe(alpha_max: int) -> bool:
    # Cross-multiplied numerator is at most ~ M * alpha^3 / 4 with
    # M = (alpha+1)//2; keep a factor-2 margin below 2**62.
    m_hi = (alpha_max + 1) // 2
    return alpha_max**3 * m_hi < 2**61


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _defnum_table_np(r: int, b: int, m_max: int) -> np.ndarray:
    # out[m] = defining-sum numerator over 2r at level m.
    out = np.zeros(m_max + 1, dtype=np.int64)
    if m_max >= 2:
        k = np.arange(1, m_max, dtype=np.int64)
        res = (b * k) % r
        out[2:] = np.cumsum(res * (r - res))
    return out


def _prop26_scan_np(r_lo: int, r_hi: int, m_max: int) -> list[tuple[int, int]]:
    hits: list[tuple[int, int]] = []
    m = np.arange(m_max + 1, dtype=np.int64)
    for r in range(r_lo, r_hi + 1):
        defnum = _defnum_table_np(r, 1 % r, m_max)
        mbar = m % r
        closed = mbar * (mbar - 1) * (3 * r + 1 - 2 * mbar) + (r * (r * r - 1)) * (m // r)
        for mm in np.nonzero(6 * defnum != closed)[0]:
            hits.append((r, int(mm)))
    return hits


def _prop27_scan_np(a_lo: int, a_hi: int) -> tuple[int, list[tuple[int, int, int, int]]]:
    cases = 0
    hits: list[tuple[int, int, int, int]] = []
    m_hi = (a_hi + 1) // 2
    ref = np.zeros((a_hi + 1, m_hi + 1), dtype=np.int64)
    for beta in range(2, a_hi + 1):
        ref[beta] = _defnum_table_np(beta, 1, m_hi)
    for alpha in range(max(a_lo, 3), a_hi + 1):
        m_top = (alpha + 1) // 2
        if m_top < 2:
            continue
        betas = np.arange(alpha + 1, dtype=np.int64)
        rhs = ref[: alpha + 1, 2 : m_top + 1] * alpha
        for a in range(1, alpha):
            if math.gcd(a, alpha) != 1:
                continue
            lhs_num = _defnum_table_np(alpha, mod_inverse(a, alpha), m_top)
            lhs = lhs_num[2 : m_top + 1][None, :] * betas[:, None]
            cases += rhs.size
            for beta_idx, m_idx in np.argwhere(lhs < rhs):
                hits.append((alpha, a, int(beta_idx), int(m_idx) + 2))
    return cases, hits


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def _modinv_nb(a: int, r: int) -> int:
        t, new_t = 0, 1
        rr, new_r = r, a % r
        while new_r != 0:
            q = rr // new_r
            t, new_t = new_t, t - q * new_t
            rr, new_r = new_r, rr - q * new_r
        return t % r

    @numba.njit(cache=True, nogil=True)
    def _prop26_scan_nb(r_lo, r_hi, m_max, cap):
        viol = np.empty((cap, 2), dtype=np.int64)
        nv = 0
        for r in range(r_lo, r_hi + 1):
            b = 1 % r
            s = 0
            rr1 = r * (r * r - 1)
            for m in range(m_max + 1):
                if m >= 2:
                    res = (b * (m - 1)) % r
                    s += res * (r - res)
                mbar = m % r
                closed = mbar * (mbar - 1) * (3 * r + 1 - 2 * mbar) + rr1 * (m // r)
                if 6 * s != closed:
                    if nv < cap:
                        viol[nv, 0] = r
                        viol[nv, 1] = m
                    nv += 1
        return nv, viol

    @numba.njit(cache=True, nogil=True)
    def _prop27_scan_nb(a_lo, a_hi, cap):
        viol = np.empty((cap, 4), dtype=np.int64)
        nv = 0
        cases = 0
        for alpha in range(max(a_lo, 3), a_hi + 1):
            m_top = (alpha + 1) // 2
            if m_top < 2:
                continue
            ref = np.zeros((alpha + 1, m_top + 1), dtype=np.int64)
            for beta in range(2, alpha + 1):
                s = 0
                for m in range(2, m_top + 1):
                    res = (m - 1) % beta
                    s += res * (beta - res)
                    ref[beta, m] = s
            lhs = np.zeros(m_top + 1, dtype=np.int64)
            for a in range(1, alpha):
                g, x = alpha, a
                while x != 0:
                    g, x = x, g % x
                if g != 1:
                    continue
                b = _modinv_nb(a, alpha)
                s = 0
                for m in range(2, m_top + 1):
                    res = (b * (m - 1)) % alpha
                    s += res * (alpha - res)
                    lhs[m] = s
                for beta in range(alpha + 1):
                    for m in range(2, m_top + 1):
                        cases += 1
                        if lhs[m] * beta < ref[beta, m] * alpha:
                            if nv < cap:
                                viol[nv, 0] = alpha
                                viol[nv, 1] = a
                                viol[nv, 2] = beta
                                viol[nv, 3] = m
                            nv += 1
        return cases, nv, viol


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def prop26_scan(
    r_lo: int, r_hi: int, m_max: int, backend: str
) -> tuple[list[tuple[int, int]], bool]:
    """Candidate (r, m) mismatches of closed form vs defining sum.

    Returns (hits, complete); complete is False when the numba violation
    buffer overflowed and the caller must rerun an exact path.
    """
    if backend == "numba":
        nv, viol = _prop26_scan_nb(r_lo, r_hi, m_max, VIOLATION_CAP)
        hits = [(int(viol[i, 0]), int(viol[i, 1])) for i in range(min(nv, VIOLATION_CAP))]
        return hits, nv <= VIOLATION_CAP
    if backend == "numpy":
        return _prop26_scan_np(r_lo, r_hi, m_max), True
    raise DomainError(f"not an array backend: {backend!r}")


def prop27_scan(
    a_lo: int, a_hi: int, backend: str
) -> tuple[int, list[tuple[int, int, int, int]], bool]:
    """(cases, candidate violations, complete) for the inequality scan."""
    if backend == "numba":
        cases, nv, viol = _prop27_scan_nb(a_lo, a_hi, VIOLATION_CAP)
        hits = [
            (int(viol[i, 0]), int(viol[i, 1]), int(viol[i, 2]), int(viol[i, 3]))
            for i in range(min(nv, VIOLATION_CAP))
        ]
        return int(cases), hits, nv <= VIOLATION_CAP
    if backend == "numpy":
        cases, hits = _prop27_scan_np(a_lo, a_hi)
        return cases, hits, True
    raise DomainError(f"not an array backend: {backend!r}")
