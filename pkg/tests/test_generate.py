import json
import random

import pytest

from blockcomplete.complete3 import check_conditions
from blockcomplete.errors import UnsatisfiableBounds
from blockcomplete.exact import is_invertible, rank
from blockcomplete.generate import (
    GenSpec, feasible3, generate, infeasible3, random_invertible, random_rank, surely_invertible,
)

from gf2_oracle import rank_gf2


@pytest.mark.parametrize("seed", range(30))
def test_random_rank_same_over_q_and_gf2(seed):
    rng = random.Random(seed)
    r, c = rng.randint(0, 5), rng.randint(0, 5)
    k = rng.randint(0, min(r, c))
    m = random_rank(r, c, k, rng)
    assert m.shape == (r, c)
    assert rank(m) == rank_gf2(m) == k


def test_random_invertible():
    rng = random.Random(1)
    for n in range(6):
        assert is_invertible(random_invertible(n, rng))


def test_surely_invertible_one_sided():
    rng = random.Random(2)
    for _ in range(50):
        m = random_rank(3, 3, rng.randint(0, 3), rng)
        if surely_invertible(m):
            assert is_invertible(m)
        if is_invertible(m):
            assert surely_invertible(m)


@pytest.mark.parametrize("seed", range(40))
def test_feasible_and_infeasible(seed):
    assert check_conditions(feasible3(random.Random(seed))).feasible
    rep = check_conditions(infeasible3(random.Random(seed)))
    assert not rep.feasible and rep.first_failure in ("a", "b1", "b2", "c")


def test_max_dim_respected():
    for seed in range(30):
        inst = feasible3(random.Random(seed), max_dim=2)
        assert max(inst.dims.values()) <= 2


@pytest.mark.parametrize("kind", GenSpec.KINDS)
def test_generate_deterministic(kind):
    a = json.dumps(generate(GenSpec(kind, seed=5)))
    b = json.dumps(generate(GenSpec(kind, seed=5)))
    assert a == b


def test_generate_rejects():
    with pytest.raises(UnsatisfiableBounds):
        generate(GenSpec("feasible3", seed=0, max_dim=-1))
    with pytest.raises(ValueError):
        generate(GenSpec("nope", seed=0))
