import numpy as np
from hypothesis import given

from revpi.generators import (
    random_alloc,
    random_density,
    random_function,
    random_hide,
    random_pinj,
    random_pipeline,
    random_type,
    random_type_of_size,
    random_typed_comb,
)
from revpi.quantum import DiscardStage, IsometryStage, PrepareStage, UnitaryStage, is_density
from revpi.syntax import comb_depth, is_ground, size
from revpi.typecheck import check
from strategies import seeds


@given(seeds)
def test_types_and_terms_respect_bounds(seed):
    rng = np.random.default_rng(seed)
    b = random_type(rng, max_size=20)
    assert is_ground(b) and size(b) <= 20
    n = int(rng.integers(0, 10))
    assert size(random_type_of_size(rng, n)) == n
    c, dom, cod = random_typed_comb(rng, max_size=64, depth=8)
    assert comb_depth(c) <= 8 and size(dom) <= 64
    check(c, dom, cod)


@given(seeds)
def test_layer_terms(seed):
    rng = np.random.default_rng(seed)
    dom = random_type_of_size(rng, 2)
    t = random_alloc(rng, dom, max_size=8)
    assert t.dom == dom and size(t.cod) <= 8
    h = random_hide(rng, dom, max_size=8)
    assert h.dom == dom and size(h.body.cod) <= 8


@given(seeds)
def test_semantic_objects(seed):
    rng = np.random.default_rng(seed)
    f = random_pinj(rng, max_size=8)
    assert f.dom_size <= 8 and f.cod_size <= 8
    g = random_function(rng, max_size=8)
    assert 1 <= g.dom_size <= 8
    assert is_density(random_density(rng, 4))


@given(seeds)
def test_pipelines_stay_small(seed):
    rng = np.random.default_rng(seed)
    dim, stages = random_pipeline(rng, max_dim=16)
    for stage in stages:
        if isinstance(stage, UnitaryStage):
            assert stage.matrix.shape == (dim, dim)
        elif isinstance(stage, PrepareStage):
            dim += stage.extra
        elif isinstance(stage, IsometryStage):
            dim = stage.matrix.shape[0]
        elif isinstance(stage, DiscardStage):
            assert dim % stage.garbage == 0
            dim //= stage.garbage
        assert 1 <= dim <= 16
