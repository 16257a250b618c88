"""Substitution matrices, frequencies, vertex stars, reports."""

import math

import numpy as np
import pytest

from deltiling.field import inflation_factor
from deltiling.analysis import (census_report, empirical_convergence,
                                is_primitive, pisot_table,
                                substitution_matrix, tile_frequencies,
                                vertex_configurations)
from deltiling.substitution import Patch, derive_rules


def test_matrix_columns_match_rules():
    rules = derive_rules(14, 3, 1)
    M, order = substitution_matrix(rules)
    j = order.index("P")
    col = {order[i]: M[i, j] for i in range(len(order)) if M[i, j]}
    assert col == {"A": 1, "Bt": 1}
    j = order.index("N")
    col = {order[i]: M[i, j] for i in range(len(order)) if M[i, j]}
    assert col == {"At": 1, "B": 1, "Ct": 1, "D": 1, "Et": 1}
    for j, name in enumerate(order):
        assert M[:, j].sum() == len(rules.rules[name])


def test_matrices_are_primitive():
    for d, p in [(14, 3), (7, 2), (9, 3), (10, 5)]:
        M, _ = substitution_matrix(derive_rules(d, p, 1))
        assert is_primitive(M)


def test_perron_eigenvalue_is_iota_squared():
    for d in (7, 8, 9, 10, 12, 14):
        for p in range(2, d // 2 + 1):
            for sign in (1, -1):
                rules = derive_rules(d, p, sign)
                iota2 = abs(inflation_factor(d, p).cvalue()) ** 2
                M, _ = substitution_matrix(rules)
                lam = max(abs(np.linalg.eigvals(M.astype(float))))
                assert abs(lam - iota2) < 1e-9, (d, p, sign)
                if not is_primitive(M):
                    # happens when the kappa variants cycle (3|d and the
                    # signed class -+p is 1 mod 3)
                    assert d % 3 == 0 and (-sign * p) % 3 == 1
                    with pytest.raises(ValueError):
                        tile_frequencies(rules)
                    continue
                lam, freq = tile_frequencies(rules)
                assert abs(lam - iota2) < 1e-9, (d, p, sign)
                vals = np.array(list(freq.values()))
                assert (vals > 0).all()
                assert abs(vals.sum() - 1) < 1e-12


def test_composed_factor():
    # lambda of a two-stage inflation is the product of the squares
    ra = derive_rules(14, 3, 1)
    rb = derive_rules(14, 5, 1)
    Ma, order = substitution_matrix(ra)
    Mb, order_b = substitution_matrix(rb)
    assert order == order_b
    lam = max(abs(np.linalg.eigvals((Ma @ Mb).astype(float))))
    i3 = abs(inflation_factor(14, 3).cvalue())
    i5 = abs(inflation_factor(14, 5).cvalue())
    assert abs(lam - (i3 * i5) ** 2) < 1e-8


def test_empirical_convergence_reported():
    dists = empirical_convergence(derive_rules(14, 3, 1), "G", depth=4)
    assert len(dists) == 4 and all(x >= 0 for x in dists)
    assert dists[-1] < dists[0]


def test_vertex_configurations():
    rules = derive_rules(14, 3, 1)
    patch = Patch.single(14, "G").inflate(rules).inflate(rules)
    stars = vertex_configurations(patch)
    assert stars
    d = patch.d
    for star in stars:
        assert sum(num for _, num in star.sectors) == 2 * d
        assert len(star.sectors) % star.order == 0


def test_census_report():
    rep = census_report(14)
    assert rep["all_match"]
    assert rep["variants"][0]["geometric"] == 52
    rep = census_report(12)
    assert rep["all_match"]
    assert [v["geometric"] for v in rep["variants"]] == [36, 37, 37]


def test_pisot_table():
    rows = {r["p"]: r for r in pisot_table(14)}
    assert rows[5]["pisot"] is True
    assert rows[3]["pisot"] is False
    assert rows[5]["margin"] > 0
    assert abs(rows[3]["value"] - math.sin(3 * math.pi / 14)
               / math.sin(math.pi / 14)) < 1e-12
    assert {r["p"] for r in pisot_table(5)} == {2}
