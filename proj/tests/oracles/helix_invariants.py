"""High-precision reference values frozen into test_factory.cpp and test_biharmonic.cpp.

    python3 tests/oracles/helix_invariants.py
"""

from mpmath import mp, mpf, sqrt, sin, cos, acos, asin

mp.dps = 30


def invariants(alpha0, sign):
    c, s = cos(alpha0), sin(alpha0)
    A = (c + sign * sqrt(max(5 * c * c - 4, 0))) / 2
    signed_k = s * (c - A)
    k = abs(signed_k)
    tau = -(A * c + mpf(1) / 2 - c * c)
    B3 = -s if signed_k > 0 else s
    return A, k, tau, B3


def show(label, alpha0, sign):
    A, k, tau, B3 = invariants(alpha0, sign)
    print(f"{label:24s} A={mp.nstr(A, 15)} k={mp.nstr(k, 15)} tau={mp.nstr(tau, 15)} B3={mp.nstr(B3, 15)}"
          f" sum={mp.nstr(k * k + tau * tau + B3 * B3, 20)}")


example = asin(1 / sqrt(10))
show("example, plus", example, +1)
show("example, minus", example, -1)
show("boundary", acos(2 / sqrt(5)), +1)

# Off-root control: tangent family with A frozen at the plus root, cos(alpha0) = 0.9.
A = invariants(example, +1)[0]
c = mpf("0.9")
s = sqrt(1 - c * c)
k = s * (c - A)
tau = -(A * c + mpf(1) / 2 - c * c)
B3 = -s
cN = -k ** 3 - k * tau ** 2 + k / 4 - k * B3 ** 2
print(f"off-root |cN|           {mp.nstr(abs(cN), 15)}")

# Example helix position at s = 0 for a = b = c = 1: x(0) = sin(alpha0)/A * sin(a) + b.
print(f"example x(0)            {mp.nstr(sin(example) / A * sin(1) + 1, 15)}")
