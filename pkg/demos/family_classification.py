"""Isomorphism classes of (C_2^n x C_2^n) semidirect C_2.

The C_2 acts through a matrix M = [[i, j], [k, l]] over Z/2^n with M^2 = 1
and odd determinant.  Conjugate matrices give isomorphic groups, so we first
merge GL_2 orbits, then split what is left with fingerprints and an exact
backtracking isomorphism test.

    python demos/family_classification.py [n]     (n = 3 takes a few minutes)
"""

import sys
import time

from moravak.verifier import classify_family, valid_actions

n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
start = time.perf_counter()
print(f"n = {n}: {len(valid_actions(n))} admissible actions")
result = classify_family(n)
print(f"{result.candidates} GL_2 orbits, {result.count} isomorphism classes "
      f"({time.perf_counter() - start:.1f}s)")
for cls in result.classes:
    fp = cls.fingerprint
    print(f"  M = {cls.representative}  orbit size {len(cls.members):>3}  "
          f"center {fp['center']}  abelianization {fp['abelianization']}")
