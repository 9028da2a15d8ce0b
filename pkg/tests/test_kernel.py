"""Kernel backends: equivalence with the reference rules and each other."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trielect import algorithm, verify
from trielect._tables import COND_OF_CODE
from trielect.configuration import boundaries, is_connected
from trielect.kernel import available_backends, make_state, state_from_config

from .helpers import random_connected_config

BACKENDS = available_backends()

seeds = st.integers(min_value=0, max_value=3000)


@pytest.mark.parametrize("backend", BACKENDS)
@given(seed=seeds)
@settings(max_examples=100, deadline=None)
def test_kernel_decisions_match_reference(backend, seed):
    config = random_connected_config(seed)
    state = state_from_config(config, backend)
    for i, pid in enumerate(config.pids()):
        decision = algorithm.decide(config, pid)
        code = state.move_code(i)
        if decision is None:
            assert code == 0
        else:
            assert COND_OF_CODE[code] is decision.condition
            expected = algorithm.resulting_nodes(config, pid, decision)
            assert state.move_target(i) == tuple(map(tuple, expected))


@pytest.mark.parametrize("backend", BACKENDS)
@given(seed=seeds)
@settings(max_examples=80, deadline=None)
def test_kernel_global_measures_match_reference(backend, seed):
    config = random_connected_config(seed)
    state = state_from_config(config, backend)
    bounds = boundaries(config)
    assert state.is_connected() == is_connected(config)
    assert state.progress(*bounds) == tuple(verify.progress_vector(config, bounds))


@pytest.mark.parametrize("backend", BACKENDS)
def test_canonical_key_translation_invariant(backend):
    for seed in range(60):
        config = random_connected_config(seed)
        a = state_from_config(config, backend).canonical_key()
        b = state_from_config(config.translated(7, -4), backend).canonical_key()
        assert a == b


@pytest.mark.parametrize("backend", BACKENDS)
def test_apply_revert_restores_exact_state(backend):
    rng = random.Random(11)
    for seed in range(40):
        config = random_connected_config(seed)
        state = state_from_config(config, backend)
        snapshot = state.snapshot()
        codes = [state.move_code(i) for i in range(len(config))]
        active = state.count_activable()
        acts = state.activable()
        if not acts:
            continue
        i = rng.choice(acts)[0]
        record = state.apply(i)
        state.revert(record)
        assert state.snapshot() == snapshot
        assert [state.move_code(k) for k in range(len(config))] == codes
        assert state.count_activable() == active


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_backends_agree_on_random_walks():
    rng = random.Random(99)
    for seed in range(150):
        config = random_connected_config(seed)
        nodes = [p.nodes for p in config.particles]
        a = make_state(nodes, "py")
        b = make_state(nodes, "c")
        for _ in range(80):
            assert a.activable() == b.activable()
            assert a.canonical_key() == b.canonical_key()
            assert a.progress(9, 9) == b.progress(9, 9)
            assert a.is_connected() == b.is_connected()
            for i in range(len(config)):
                assert a.view_key(i) == b.view_key(i)
            acts = a.activable()
            if not acts:
                break
            pick = rng.choice(acts)[0]
            ra = a.apply(pick)
            rb = b.apply(pick)
            assert ra == rb
            if rng.random() < 0.25:
                a.revert(ra)
                b.revert(rb)


@pytest.mark.parametrize("backend", BACKENDS)
def test_view_keys_separate_distinct_views(backend):
    # shape tag, occupancy and pairing must all land in the key
    solo = make_state([[(0, 0)]], backend)
    stacked = make_state([[(0, 0)], [(0, 1)]], backend)
    assert solo.view_key(0) != stacked.view_key(0)
    paired = make_state([[(0, 0)], [(1, 0), (0, 1)]], backend)
    unpaired = make_state([[(0, 0)], [(1, 0)], [(0, 1)]], backend)
    assert paired.view_key(0) != unpaired.view_key(0)
    expanded = make_state([[(0, 0), (1, 0)]], backend)
    assert expanded.view_key(0) >> 16 == 0  # horizontal tag
    assert solo.view_key(0) >> 16 == 3  # contracted tag


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernel_rejects_overlap(backend):
    with pytest.raises(ValueError):
        make_state([[(0, 0)], [(0, 0)]], backend)


def test_kernel_matches_reference_on_every_small_instance():
    # exhaustive, not sampled: every connected instance with up to 3
    # particles, every particle's decision and resulting nodes
    from trielect import modelcheck

    for n in (1, 2, 3):
        for config in modelcheck.enumerate_connected(n, allow_expanded=True):
            state = state_from_config(config)
            for i, pid in enumerate(config.pids()):
                decision = algorithm.decide(config, pid)
                code = state.move_code(i)
                if decision is None:
                    assert code == 0
                    continue
                assert COND_OF_CODE[code] is decision.condition
                expected = algorithm.resulting_nodes(config, pid, decision)
                assert state.move_target(i) == tuple(map(tuple, expected))
