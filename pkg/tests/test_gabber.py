import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torsdiam.complexes import corpus
from torsdiam.complexes.gabber import (DEGREES, FAMILIES, gabber_scan, glued_disc,
                                       hadamard_gabber_constant, load_table, moore_space,
                                       random_complex, suspension)
from torsdiam.complexes.homology import homology
from torsdiam.errors import ConfigError
from torsdiam.seeding import stream


@pytest.mark.parametrize("k", [2, 3, 4, 6])
@pytest.mark.parametrize("fill", ["zigzag", "cone"])
def test_moore_space(k, fill):
    h = homology(moore_space(k, 3, fill))
    assert h.betti(1) == 0 and h.torsion(1) == (k,)
    assert h.betti(2) == 0


def test_suspension_shifts_degree():
    h = homology(suspension(moore_space(3)))
    assert h.torsion(1) == () and h.torsion(2) == (3,)
    assert homology(suspension(corpus.circle())).betti(2) == 1


def test_walk_disc_torsion_is_winding_number():
    # 2 forward laps on a 4-cycle then a back step and a forward step
    word = [0, 1, 2, 3, 0, 1, 2, 3, 0, 3]
    h = homology(glued_disc(word, 4))
    assert h.torsion(1) == (2,)


@given(st.integers(0, 2**32), st.integers(3, 12), st.integers(12, 40))
def test_generated_complexes_respect_caps(seed, D, v_max):
    family, c = random_complex(stream(seed), D, v_max)
    assert family in FAMILIES
    assert c.n_vertices <= v_max and c.max_degree <= D
    assert c.is_face_closed()


def test_projective_plane_ratio():
    h = homology(corpus.projective_plane())
    assert h.log_torsion(1) / 6 == pytest.approx(math.log(2) / 6)
    assert math.log(2) / 6 == pytest.approx(0.1155, abs=1e-4)


def test_scan_bounds_every_record_and_is_reproducible():
    a = gabber_scan(12, 40, 300, 5)
    b = gabber_scan(12, 40, 300, 5, threads=2)
    assert a.records == b.records
    for p in DEGREES:
        r = a.ratios(p)
        assert np.all(np.isfinite(r)) and np.all(r >= 0)
        assert np.all(r <= a.constant(p))
        w = a.witness_complex(p)
        assert homology(w).log_torsion(p) / w.n_vertices == pytest.approx(a.constant(p))


def test_scan_is_below_hadamard():
    scan = gabber_scan(12, 40, 300, 1)
    for p, c in scan.constants.items():
        assert c <= hadamard_gabber_constant(12, p)


def test_hadamard_certifies_corpus():
    for build in corpus.CORPUS.values():
        c = build()
        h = homology(c)
        for p in DEGREES:
            assert h.log_torsion(p) <= hadamard_gabber_constant(c.max_degree, p) * c.n_vertices + 1e-12


def test_scan_json_and_table():
    scan = gabber_scan(8, 20, 64, 0)
    js = scan.to_json()
    assert set(js["constants"]) == {"1", "2"}
    assert load_table(js) == {8: {1: scan.constant(1), 2: scan.constant(2)}}
    assert load_table([js, {"table": {"20": {"1": 0.5}}}])[20] == {1: 0.5}


def test_scan_config_errors():
    with pytest.raises(ConfigError):
        gabber_scan(1, 40, 10, 0)
    with pytest.raises(ConfigError):
        gabber_scan(12, 3, 10, 0)
