"""Exact star products on polynomial symbols.

Shows the canonical commutator emerging from the deformed product, the
equivalence of the series and Bopp-operator routes, and the quantum
correction to the Poisson bracket for an anharmonic Hamiltonian.
"""

import numpy as np

from phasespace import (
    Config,
    format_poly,
    moyal_bracket_rhs,
    moyal_bracket_sine_series,
    parse_poly,
    star_product,
    star_product_bopp,
)
from phasespace.star import PolySymbol

cfg = Config()
q, p = PolySymbol.q(), PolySymbol.p()

print("q * p      =", format_poly(star_product(q, p, cfg)))
print("p * q      =", format_poly(star_product(p, q, cfg)))
print("commutator =", format_poly(star_product(q, p, cfg) - star_product(p, q, cfg)))
print()

a = parse_poly("q^2*p + 0.5*i*p", cfg)
b = parse_poly("p^2 - q", cfg)
series = star_product(a, b, cfg)
bopp = star_product_bopp(a, b, cfg)
print("series route:", format_poly(series))
print("bopp route:  ", format_poly(bopp))
print("identical term maps:", series.allclose(bopp, 1e-15))
print()

# quadratic Hamiltonian: bracket reduces to the classical Poisson bracket
h_quad = parse_poly("0.5*q^2 + 0.5*p^2", cfg)
w = parse_poly("q^3*p", cfg)
print("harmonic bracket:", format_poly(moyal_bracket_rhs(h_quad, w, cfg)))

# quartic Hamiltonian: an hbar^2 correction appears beyond the classical term
h_quartic = parse_poly("0.25*q^4", cfg)
w3 = parse_poly("p^3", cfg)
bracket = moyal_bracket_rhs(h_quartic, w3, cfg)
classical = h_quartic.diff(dq=1) * w3.diff(dp=1) - h_quartic.diff(dp=1) * w3.diff(dq=1)
print("quartic bracket: ", format_poly(bracket))
print("classical part:  ", format_poly(classical))
print("hbar^2 correction:", format_poly(bracket - classical))
print("sine-series form agrees:", bracket.allclose(moyal_bracket_sine_series(h_quartic, w3, cfg), 1e-14))

# the deformation disappears as hbar -> 0
for hbar in (1.0, 0.1, 0.01):
    small = Config(hbar=hbar)
    corr = moyal_bracket_rhs(h_quartic, w3, small) - classical
    scale = max((abs(c) for c in corr.terms.values()), default=0.0)
    print(f"hbar = {hbar:5.2f}: correction magnitude {scale:.2e}")
