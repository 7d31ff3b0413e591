import numpy as np
import pytest

from moravak.cp_modules import (
    CpModule,
    cohomology_dims,
    decompose,
    is_permutation_module,
    module_from_json,
    random_permutation_module,
    rank_mod_p,
    tensor_diagonal,
)
from moravak.errors import InputError, NotOrderP

SWAP = np.array([[0, 1], [1, 0]])


def block_sum(p, sizes):
    m = CpModule.jordan_block(p, sizes[0])
    for k in sizes[1:]:
        m = m.direct_sum(CpModule.jordan_block(p, k))
    return m


def test_identity_is_all_trivial():
    d = decompose(CpModule.trivial(3, 4))
    assert d.blocks == (1, 1, 1, 1) and d.trivial_rank == 4 and d.free_rank == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_regular_is_one_free_block(p):
    d = decompose(CpModule.regular(p))
    assert d.blocks == (p,) and d.free_rank == 1


def test_kron_of_swaps():
    m = CpModule(2, np.kron(SWAP, SWAP))
    assert decompose(m).blocks == (2, 2)


def test_not_order_p():
    with pytest.raises(NotOrderP):
        CpModule(3, SWAP)
    with pytest.raises(InputError):
        CpModule(4, SWAP)


def test_free_cohomology():
    for p in (2, 3, 5):
        assert cohomology_dims(CpModule.regular(p), 5) == [1, 0, 0, 0, 0, 0]


def test_trivial_cohomology():
    for p in (2, 3):
        assert cohomology_dims(CpModule.trivial(p, 3), 6) == [3] * 7


def test_size_two_block_at_p3():
    dims = cohomology_dims(CpModule.jordan_block(3, 2), 4)
    assert dims[0] == 1 and dims[1] == 1 and dims[3] == 1


def test_tensor_examples():
    t = tensor_diagonal(CpModule.trivial(2, 2), CpModule.trivial(2, 3))
    assert decompose(t).blocks == (1,) * 6
    t = tensor_diagonal(CpModule.regular(3), CpModule.trivial(3, 1))
    assert decompose(t).blocks == (3,)


def test_permutation_test():
    assert is_permutation_module(CpModule(2, np.kron(SWAP, SWAP)))
    assert not is_permutation_module(CpModule.jordan_block(3, 2))
    assert is_permutation_module(CpModule.regular(3).direct_sum(CpModule.trivial(3, 2)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_bookkeeping(p):
    rng = np.random.default_rng(p)
    for _ in range(30):
        sizes = list(rng.integers(1, p + 1, size=rng.integers(1, 5)))
        m = block_sum(p, sizes)
        basis = rng.integers(0, p, size=(m.dim, m.dim))
        if rank_mod_p(basis, p) < m.dim:
            continue
        m = m.conjugate(basis)
        d = decompose(m)
        assert sorted(d.blocks) == sorted(sizes)
        assert d.dim == m.dim
        # blocks smaller than p lie in ker N
        assert rank_mod_p(m.norm(), p) == d.free_rank


@pytest.mark.parametrize("p", [2, 3])
def test_free_tensor_anything_is_free(p):
    rng = np.random.default_rng(10 + p)
    for _ in range(20):
        other = block_sum(p, list(rng.integers(1, p + 1, size=rng.integers(1, 4))))
        d = decompose(tensor_diagonal(CpModule.regular(p), other))
        assert set(d.blocks) == {p}


@pytest.mark.parametrize("p", [2, 3])
def test_permutation_cohomology_pattern(p):
    rng = np.random.default_rng(20 + p)
    for _ in range(20):
        free, triv = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        if free + triv == 0:
            continue
        m = random_permutation_module(p, free, triv, rng)
        dims = cohomology_dims(m, 5)
        assert dims[0] == triv + free
        assert dims[1:] == [triv] * 5


def test_module_json(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"p": 2, "matrix": [[0, 1], [1, 0]]}')
    assert decompose(module_from_json(path)).blocks == (2,)
    with pytest.raises(InputError):
        module_from_json({"p": 2})
    with pytest.raises(InputError):
        module_from_json(tmp_path / "none.json")
