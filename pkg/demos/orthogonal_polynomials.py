"""
Orthogonal polynomials in L2 of a Cantor measure
================================================

Polynomial inner products against a measure reduce to its moments, so exact
rational moments give an exact Gram-Schmidt: the resulting monic family is
orthogonal with zero tolerance.  For symmetric measures the family also obeys
a two-term recurrence and alternates parity about x = 1/2.  We build the
first six polynomials for the ternary measure, verify orthogonality, and
export normalized plot data.
"""
from cantor_measures import (
    exact_moments,
    grid_csv,
    inner_product,
    monic_basis_general,
    monic_basis_symmetric,
    normalize,
    parse_weights,
)

ternary = parse_weights("1/2,0,1/2")
degree = 5
moments = exact_moments(ternary, 2 * degree)
basis = monic_basis_symmetric(ternary, degree, moments)

print("monic orthogonal polynomials (ascending coefficients):")
for n, (poly, norm_sq) in enumerate(zip(basis.polys, basis.norms_sq)):
    printed = ", ".join(str(c) for c in poly)
    print(f"  p_{n}(x): ({printed})   |p_{n}|^2 = {norm_sq}")

worst = max(
    abs(inner_product(basis.polys[i], basis.polys[j], moments))
    for i in range(degree + 1)
    for j in range(i)
)
print(f"\nlargest off-diagonal inner product: {worst} (exact zero)")

assert monic_basis_general(ternary, degree, moments) == basis
print("Gram-Schmidt path reproduces the symmetric recurrence exactly")

unit = normalize(basis)
print("\nnormalized leading coefficients:", [round(p[-1], 6) for p in unit])

path = "legendre_ternary_grid.csv"
with open(path, "w", encoding="utf-8") as fh:
    fh.write(grid_csv(basis, n_points=301))
print(f"wrote normalized plot data -> {path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping PNG rendering")
else:
    xs = [i / 300 for i in range(301)]
    fig, ax = plt.subplots(figsize=(8, 5))
    for n, coeffs in enumerate(unit):
        ys = [sum(c * x**k for k, c in enumerate(coeffs)) for x in xs]
        ax.plot(xs, ys, label=f"p{n}", linewidth=0.9)
    ax.legend()
    ax.set_xlabel("x")
    fig.tight_layout()
    fig.savefig("legendre_ternary.png", dpi=150)
    print("wrote legendre_ternary.png")
