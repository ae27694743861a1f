"""The registry of certificate polynomials and its mechanical checks.

Walks one parameter pair at q = 2: the combination chain, the derived-vs-
tabulated findings, the distinguished sets, and a scatteredness scan probe
at q = 8.  A few seconds end to end.
"""

from ranksat.constructions import normalized_alphas, normalized_betas
from ranksat.gf import field_create
from ranksat.identities import (
    AppendixContext,
    delta_sets,
    gamma_set,
    registry_eval,
    verify_delta_unsaturated,
    verify_identities,
)

fld = field_create(2, 1, 4)
alpha = normalized_alphas(fld)[1]   # a norm-one element other than 1
beta = normalized_betas(fld)[1]
ctx = AppendixContext(fld, alpha, beta)
print(f"context: q=2, alpha={alpha}, beta={beta}")

# Registry values at a sample point.
for name in ("f", "d", "g", "a00", "a01"):
    print(f"  {name}(C=3) = {registry_eval(ctx, name, C=3)}")
print(f"  H1(C=3, x=2, y=7) = {registry_eval(ctx, 'H1', C=3, x=2, y=7)}")

# The identity chain at one C: hard checks on derived forms, transcription
# comparisons as findings.
rep = verify_identities(ctx, 3, numeric=True)
print("\nchecks:")
for k, v in rep.checks.items():
    print(f"  {k}: {v}")
print("findings (tabulated vs derived):")
for k, v in rep.findings.items():
    print(f"  {k}: {v}")

# The distinguished parameter set is empty at q = 2: the asymptotic
# mechanism has no force at desk scale, and the artifact records that
# instead of asserting the cube-order prediction.
print(f"\n|Gamma| at q=2 for this pair: {len(gamma_set(ctx))} "
      f"(cube-order prediction would be {2 ** 3})")

# The alpha = 1 subcases live in F_q: trace-condition sets and the
# image-dedup scatteredness scan, probed here at q = 8.
fld8 = field_create(2, 3, 4)
beta8 = fld8.subfield_elements("mid")[3]
d0 = delta_sets(fld8, beta8, 0)
print(f"\nq=8 probe: trace-condition set for beta={beta8}: {d0}")
for z in d0[:2]:
    scan = verify_delta_unsaturated(fld8, beta8, 0, z, strict=False)
    print(f"  z={z}: {scan.distinct}/{scan.expected} distinct directions "
          f"-> scattered={scan.scattered}")
