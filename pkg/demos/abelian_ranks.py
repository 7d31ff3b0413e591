"""Abelian sanity check: K(s)*(B(C_2^n1 x ... )) is a truncated polynomial ring.

For A = prod C_{2^n_i} the ring is K(s)*[u_1, ...]/(u_i^(2^(n_i s))), whose rank
is |A|^s, which is also the number of commuting s-tuples (no conjugation to
quotient by).
"""

from moravak.verifier import abelian_presentation, verify_rank

for exps in ([1], [1, 1], [2, 2], [1, 2, 3]):
    for s in (2, 3):
        pres = abelian_presentation(exps)
        report = verify_rank(pres, s)
        print(f"{pres.name:<12} s={s}: dimension {report.quotient_dimension:>7}  "
              f"chi {report.chi:>7}  match {report.match}")
