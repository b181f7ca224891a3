"""
Exact moments versus the certified fast pipeline
================================================

Moments of a weighted Cantor measure obey an exact rational recurrence, and
independently arise as coefficients of a rapidly converging product of
truncated exponential series.  The fast path carries a per-index certified
error bound e*m*sqrt(m-1)/N**k, so its accuracy needs no reference values;
here we cross-check it against exact arithmetic anyway, then let it loose on
a degree far beyond what exact arithmetic handles comfortably.
"""
import time

from cantor_measures import exact_moments, fast_moments, left_endpoint_estimate, parse_weights

ternary = parse_weights("1/2,0,1/2")

print("exact ternary moments (rational):")
exact = exact_moments(ternary, 8)
for m, value in enumerate(exact.values):
    print(f"  I_{m} = {value}")

print("\nleft-endpoint lower sums converge from below (m = 2):")
for depth in (1, 2, 4, 8):
    lower = left_endpoint_estimate(ternary, depth, 2)
    print(f"  depth {depth}: {float(lower):.10f}  (exact 0.375)")

eps = 1e-10
result = fast_moments(ternary, 8, eps)
print(f"\nfast pipeline at eps = {eps} (depth {result.depth_used}):")
print(f"  {'m':>3} {'fast value':>20} {'|error|':>12} {'bound':>12}")
for m in range(9):
    err = abs(result.moments[m] - float(exact.values[m]))
    print(f"  {m:>3} {result.moments[m]:>20.15f} {err:>12.2e} "
          f"{result.certified_bound[m]:>12.2e}")

start = time.perf_counter()
big = fast_moments(ternary, 4096, 1e-10)
elapsed = time.perf_counter() - start
print(f"\nm = 4096 at eps = 1e-10: depth {big.depth_used}, "
      f"{elapsed:.3f} s wall time")
print(f"  I_100  ~ {big.moments[100]:.12f}")
print(f"  I_1000 ~ {big.moments[1000]:.12f}")
