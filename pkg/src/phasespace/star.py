"""Exact star-product algebra on polynomial phase-space symbols.

Polynomials in (q, p) with complex coefficients are closed under the Moyal
product, and the product series terminates, so everything here is exact up
to floating-point rounding.  Grid-sampled symbols are deliberately excluded:
composing those goes through quantization and matrix products instead.

The bidirectional derivative acts as

    a L b = da/dp * db/dq - da/dq * db/dp

(the negative of the Poisson bracket), and the star product is
``a * exp(hbar*L/(2i)) * b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

import numpy as np

from .grids import Config, PhaseGrid, PhaseSymbol

__all__ = [
    "PolySymbol",
    "DEGREE_CAP",
    "lambda_power_apply",
    "star_product",
    "star_product_bopp",
    "moyal_bracket_rhs",
    "moyal_bracket_sine_series",
    "parse_poly",
    "format_poly",
]

# guard against runaway products; exceeding this is an error, never truncation
DEGREE_CAP = 16

TermMap = Dict[Tuple[int, int], complex]


def _clean(terms: Mapping[Tuple[int, int], complex]) -> TermMap:
    return {k: complex(v) for k, v in terms.items() if v != 0}


@dataclass(frozen=True)
class PolySymbol:
    """Polynomial in (q, p): ``terms[(m, n)]`` is the coefficient of ``q^m p^n``."""

    terms: Mapping[Tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for (m, n), c in self.terms.items():
            if m < 0 or n < 0 or m != int(m) or n != int(n):
                raise ValueError(f"invalid degree pair {(m, n)}")
            c = complex(c)
            if c != 0:
                cleaned[(int(m), int(n))] = c
        object.__setattr__(self, "terms", cleaned)

    # --- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "PolySymbol":
        return cls({(0, 0): c})

    @classmethod
    def q(cls) -> "PolySymbol":
        return cls({(1, 0): 1.0})

    @classmethod
    def p(cls) -> "PolySymbol":
        return cls({(0, 1): 1.0})

    @classmethod
    def monomial(cls, m: int, n: int, c=1.0) -> "PolySymbol":
        return cls({(m, n): c})

    # --- ring operations ----------------------------------------------
    def __add__(self, other: "PolySymbol") -> "PolySymbol":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return PolySymbol(_clean(out))

    def __sub__(self, other: "PolySymbol") -> "PolySymbol":
        return self + (-other)

    def __neg__(self) -> "PolySymbol":
        return PolySymbol({k: -v for k, v in self.terms.items()})

    def __mul__(self, other) -> "PolySymbol":
        if isinstance(other, (int, float, complex)):
            return PolySymbol({k: v * other for k, v in self.terms.items()})
        out: TermMap = {}
        for (m1, n1), c1 in self.terms.items():
            for (m2, n2), c2 in other.terms.items():
                if m1 + m2 + n1 + n2 > DEGREE_CAP:
                    raise ValueError(
                        f"product exceeds total degree cap {DEGREE_CAP}; "
                        "refusing to truncate"
                    )
                k = (m1 + m2, n1 + n2)
                out[k] = out.get(k, 0) + c1 * c2
        return PolySymbol(_clean(out))

    __rmul__ = __mul__

    def conj(self) -> "PolySymbol":
        return PolySymbol({k: v.conjugate() for k, v in self.terms.items()})

    # --- calculus -------------------------------------------------------
    def diff(self, dq: int = 0, dp: int = 0) -> "PolySymbol":
        """Partial derivative d^dq/dq^dq d^dp/dp^dp."""
        out: TermMap = {}
        for (m, n), c in self.terms.items():
            if m < dq or n < dp:
                continue
            fac = math.perm(m, dq) * math.perm(n, dp)
            out[(m - dq, n - dp)] = out.get((m - dq, n - dp), 0) + c * fac
        return PolySymbol(_clean(out))

    def total_degree(self) -> int:
        return max((m + n for m, n in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def allclose(self, other: "PolySymbol", tol: float = 1e-12) -> bool:
        keys = set(self.terms) | set(other.terms)
        scale = max((abs(c) for c in (*self.terms.values(), *other.terms.values())), default=1.0)
        return all(
            abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= tol * max(scale, 1.0)
            for k in keys
        )

    # --- evaluation -----------------------------------------------------
    def __call__(self, q, p):
        q = np.asarray(q)
        total = np.zeros(np.broadcast(q, np.asarray(p)).shape, dtype=complex)
        for (m, n), c in sorted(self.terms.items()):
            total = total + c * np.asarray(q) ** m * np.asarray(p) ** n
        return total

    def sample(self, grid: PhaseGrid) -> PhaseSymbol:
        """Evaluate on a phase grid (position index first)."""
        Q, P = np.meshgrid(grid.q_axis.points, grid.p_axis.points, indexing="ij")
        return PhaseSymbol(grid=grid, values=self(Q, P))


def lambda_power_apply(a: PolySymbol, b: PolySymbol, k: int) -> PolySymbol:
    """Apply the k-th power of the bidirectional derivative: ``a L^k b``.

    Expands by the signed binomial pattern
    ``sum_j (-1)^j C(k,j) (d^k a / dp^(k-j) dq^j) (d^k b / dq^(k-j) dp^j)``;
    ``k = 0`` returns the plain product.
    """
    if k < 0 or k != int(k):
        raise ValueError(f"power must be a nonnegative integer, got {k}")
    if k == 0:
        return a * b
    out = PolySymbol()
    for j in range(k + 1):
        da = a.diff(dq=j, dp=k - j)
        db = b.diff(dq=k - j, dp=j)
        if da.is_zero() or db.is_zero():
            continue
        out = out + ((-1) ** j * math.comb(k, j)) * (da * db)
    return out


def star_product(a: PolySymbol, b: PolySymbol, config: Config) -> PolySymbol:
    """Moyal product ``a * exp(hbar L / 2i) * b``; exact, terminating series."""
    kmax = min(a.total_degree(), b.total_degree())
    out = PolySymbol()
    for k in range(kmax + 1):
        term = lambda_power_apply(a, b, k)
        if term.is_zero():
            continue
        out = out + ((config.hbar / 2j) ** k / math.factorial(k)) * term
    return out


def _bopp_q(f: PolySymbol, config: Config, conjugate: bool) -> PolySymbol:
    sign = +1 if conjugate else -1
    return PolySymbol.q() * f + sign * (config.hbar / 2j) * f.diff(dp=1)


def _bopp_p(f: PolySymbol, config: Config, conjugate: bool) -> PolySymbol:
    sign = -1 if conjugate else +1
    return PolySymbol.p() * f + sign * (config.hbar / 2j) * f.diff(dq=1)


def star_product_bopp(a: PolySymbol, b: PolySymbol, config: Config, conjugate: bool = False) -> PolySymbol:
    """Star product through Bopp operators; must equal :func:`star_product`.

    Evaluates the symmetrically ordered operator polynomial ``A(Q, P)``
    applied to ``b``, with ``Q = q - (hbar/2i) d/dp`` and
    ``P = p + (hbar/2i) d/dq`` (McCoy ordering of each monomial: the
    position factors are split evenly around the momentum power).  With
    ``conjugate=True`` computes ``B(Q*, P*)`` applied to ``a`` instead,
    using the sign-flipped operators; both return the same product.
    """
    outer, inner = (b, a) if conjugate else (a, b)
    out = PolySymbol()
    for (m, n), c in sorted(outer.terms.items()):
        acc = PolySymbol()
        for k in range(m + 1):
            f = inner
            for _ in range(m - k):
                f = _bopp_q(f, config, conjugate)
            for _ in range(n):
                f = _bopp_p(f, config, conjugate)
            for _ in range(k):
                f = _bopp_q(f, config, conjugate)
            acc = acc + math.comb(m, k) * f
        out = out + (c / 2**m) * acc
    return out


def moyal_bracket_rhs(h: PolySymbol, w: PolySymbol, config: Config) -> PolySymbol:
    """Moyal bracket ``(h*w - w*h) / (i hbar)``: the quantum Liouville generator.

    For ``h`` with vanishing third and higher derivatives this reduces to the
    classical Poisson bracket exactly.
    """
    comm = star_product(h, w, config) - star_product(w, h, config)
    return (1.0 / (1j * config.hbar)) * comm


def moyal_bracket_sine_series(h: PolySymbol, w: PolySymbol, config: Config) -> PolySymbol:
    """Same bracket through the odd (sine) series ``-(2/hbar) h sin(hbar L / 2) w``."""
    kmax = min(h.total_degree(), w.total_degree())
    out = PolySymbol()
    hbar = config.hbar
    for k in range(1, kmax + 1, 2):
        term = lambda_power_apply(h, w, k)
        if term.is_zero():
            continue
        j = (k - 1) // 2
        coeff = -(2.0 / hbar) * ((-1) ** j) * (hbar / 2) ** k / math.factorial(k)
        out = out + coeff * term
    return out


# --- text syntax for the command line ---------------------------------------

def parse_poly(text: str, config: Config) -> PolySymbol:
    """Parse a polynomial like ``"q^2*p + 0.5*i*p - 2"``.

    Factors within a term are joined by ``*``; supported factors are numeric
    literals, ``i``/``j``, ``hbar`` (replaced by its configured value) and
    ``q``/``p`` with an optional positive integer power ``^k``.  Raises
    ``ValueError`` naming the offending position.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms; +/- bind a new term only when not part of an
    # exponent or a scientific-notation literal (e.g. q^-1 stays together
    # so the exponent check can reject it, and 1e-3 parses as one number)
    terms = []
    start, sign = 0, +1
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else +1
        start = i = 1
    while i <= len(s):
        if i == len(s):
            at_break = True
        else:
            prev = s[:i].rstrip()[-1:] or ""
            at_break = s[i] in "+-" and prev not in ("*", "^", "e", "E")
        if at_break:
            chunk = s[start:i].strip()
            if not chunk:
                raise ValueError(f"empty term at position {i} in {text!r}")
            terms.append((sign, chunk, start))
            if i < len(s):
                sign = -1 if s[i] == "-" else +1
                start = i + 1
        i += 1
    out = PolySymbol()
    for sign, chunk, pos in terms:
        coeff = complex(sign)
        mdeg = ndeg = 0
        for factor in chunk.split("*"):
            f = factor.strip()
            fpos = pos + chunk.find(f)
            if not f:
                raise ValueError(f"empty factor at position {fpos} in {text!r}")
            if f in ("i", "j"):
                coeff *= 1j
            elif f == "hbar":
                coeff *= config.hbar
            elif f[0] in "qp":
                var, sep, power = f.partition("^")
                if var not in ("q", "p"):
                    raise ValueError(f"unknown variable {var!r} at position {fpos} in {text!r}")
                k = 1
                if sep:
                    if not power.isdigit() or int(power) <= 0:
                        raise ValueError(
                            f"bad exponent {power!r} at position {fpos} in {text!r}"
                        )
                    k = int(power)
                if var == "q":
                    mdeg += k
                else:
                    ndeg += k
            else:
                try:
                    coeff *= float(f)
                except ValueError:
                    raise ValueError(
                        f"cannot parse factor {f!r} at position {fpos} in {text!r}"
                    ) from None
        out = out + PolySymbol.monomial(mdeg, ndeg, coeff)
    return out


def _fmt_complex(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return f"{im:.12g}i"
    op = "+" if im > 0 else "-"
    return f"({re:.12g}{op}{abs(im):.12g}i)"


def format_poly(poly: PolySymbol) -> str:
    """Deterministic text rendering, terms sorted by degree pair."""
    if poly.is_zero():
        return "0"
    parts = []
    for (m, n), c in sorted(poly.terms.items()):
        mono = "*".join(
            ([f"q^{m}" if m > 1 else "q"] if m else []) + ([f"p^{n}" if n > 1 else "p"] if n else [])
        )
        cs = _fmt_complex(c)
        if mono:
            parts.append(f"{cs}*{mono}" if cs not in ("1",) else mono)
        else:
            parts.append(cs)
    return " + ".join(parts)
