"""Acceptance gate: the nine criteria at their stated sizes and tolerances.

Each test prints one ``[PASS]``/``[FAIL]`` line (visible in ``pytest -v``
output) before asserting.
"""

import pytest

from graphvn import selftest


def report(capsys, number, result):
    with capsys.disabled():
        print(f"\n  criterion {number}. {result.line()}")
    assert result.passed, result.detail


def test_1_fixture_shape_formulas(capsys):
    res = selftest.shape_formulas(samples=100, per_case_limit=1.0)
    report(capsys, 1, res)


def test_2_atom_structure_and_mass_conservation(capsys):
    report(capsys, 2, selftest.atom_structure(samples=500))


def test_3_h_canonicality(capsys):
    res = selftest.h_canonicality(samples=200, time_limit=30.0)
    report(capsys, 3, res)


def test_4_eigenoperator_identity(capsys):
    report(capsys, 4, selftest.eigen_identity(samples=1000))


def test_5_dual_oracle(capsys):
    res = selftest.dual_oracle(words=500, max_len=8, depth=8, tol=1e-9, time_limit=120.0)
    report(capsys, 5, res)


def test_6_gram_positivity(capsys):
    report(capsys, 6, selftest.gram_positivity(max_len=3, floor=-1e-8))


def test_7_cyclic_rotation(capsys):
    report(capsys, 7, selftest.rotation(samples=1000))


def test_8_free_dimension(capsys):
    report(capsys, 8, selftest.free_dimension(samples=100))


def test_9_temperley_lieb_bridge(capsys):
    res = selftest.tl_bridge(max_n=3)
    assert res.data["exponent"] == pytest.approx(0.5)
    report(capsys, 9, res)
