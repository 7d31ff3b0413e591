"""Trace and tensor bookkeeping for modules over F_p[C_p].

A module is the matrix of the generator t.  Free summands contribute only to
H^0; trivial summands contribute in every degree.  Tensoring two permutation
modules multiplies their trivial parts and leaves a free complement.
"""

import numpy as np

from moravak.cp_modules import (
    CpModule,
    cohomology_dims,
    decompose,
    random_permutation_module,
    tensor_diagonal,
)

rng = np.random.default_rng(0)
for p in (2, 3):
    free = CpModule.regular(p)
    triv = CpModule.trivial(p, 2)
    print(f"p = {p}")
    print("  free:    blocks", decompose(free).blocks, " H^0..4", cohomology_dims(free, 4))
    print("  trivial: blocks", decompose(triv).blocks, " H^0..4", cohomology_dims(triv, 4))

    m1 = random_permutation_module(p, free=1, trivial=2, rng=rng)
    m2 = random_permutation_module(p, free=2, trivial=3, rng=rng)
    d = decompose(tensor_diagonal(m1, m2))
    print(f"  (F + 2T) x (2F + 3T): trivial rank {d.trivial_rank}, free rank {d.free_rank}")

# Over F_3 a lone 2x2 Jordan block is neither free nor trivial.
odd = decompose(CpModule.jordan_block(3, 2))
print("p = 3, one block of size 2:", odd.intermediate, cohomology_dims(CpModule.jordan_block(3, 2), 3))
