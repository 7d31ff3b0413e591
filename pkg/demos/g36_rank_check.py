"""Rank check of the K(s)* presentation for the order-32 group G36.

The ring is generated by a, b, c, x2, y2, T modulo fifteen relations, two of
which hide the classes x1, y1 behind implicit equations.  We eliminate them,
set v = 1, and compare the dimension of the quotient with the number of
conjugacy classes of commuting s-tuples in the group.

    python demos/g36_rank_check.py [s]
"""

import sys

from moravak.groups import commuting_tuple_class_count, conjugacy_classes
from moravak.verifier import eliminate, g36_presentation, verify_rank

s = int(sys.argv[1]) if len(sys.argv) > 1 else 2
pres = g36_presentation()
group = pres.build_group()

print(f"G36 has order {group.order} and {len(conjugacy_classes(group))} conjugacy classes")
print(f"commuting {s}-tuples up to conjugacy: {commuting_tuple_class_count(group, s)}")

# x1 and y1 are defined by x1 = v(x2 + v x1 x2^(2^(s-1)))^(2^(s-1)) + b and its twin;
# iterating modulo a^(2^s), b^(2^s), c^(2^s) and the v^2 relations settles quickly.
elim = eliminate(pres, s)
for var, sol in elim.solutions.items():
    print(f"{var} = {sol}")

report = verify_rank(pres, s)
print(f"Groebner basis: {report.gb_size} elements, quotient dimension {report.quotient_dimension}")
print("all relations homogeneous:", all(report.homogeneous.values()))
for extra in report.extra_relations:
    print(f"  {extra['relation']:<40} -> {extra['normal_form']}")
print("rank matches:", report.match)

# Dropping one of the v^2 relations leaves x2 free, and the quotient blows up.
crippled = pres.without_relation("v^2*x2^(2^s) + c^2 + b*c")
print("without v^2*x2^(2^s) + c^2 + b*c:", verify_rank(crippled, s, extra=False).quotient_dimension)
