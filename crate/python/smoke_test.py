"""Smoke test for the hyperspan Python bindings.

Build first: pip install --no-build-isolation -e crates/py
Run: python python/smoke_test.py  (or pytest python/)
"""

import itertools

import hyperspan


def brute_matching(r, n, edges):
    edges = [tuple(e) for e in edges]
    for combo in itertools.combinations(edges, n // r):
        if len({v for e in combo for v in e}) == n:
            return True
    return False


def test_hypergraph_round_trip():
    h = hyperspan.Hypergraph(3, 5, [[0, 1, 2], [2, 3, 4]])
    assert (h.r, h.n, len(h)) == (3, 5, 2)
    assert hyperspan.Hypergraph.from_hg(h.to_hg()) == h
    assert h.codegree([0, 1]) == 1


def test_profile_of_complete():
    p = hyperspan.degree_profile(hyperspan.complete(3, 7))
    assert p["delta_pos_codeg"] == 5
    assert p["isolated"] == []


def test_huv_has_no_perfect_matching():
    h, sheet = hyperspan.make_huv(3, 9, 4)
    assert hyperspan.has_perfect_matching(h) is None
    assert brute_matching(3, 9, h.edges) is False
    assert hyperspan.solve(h, "pm")["answer"] == "no"
    assert isinstance(sheet, dict)


def test_solvers_agree_with_brute_force():
    for seed in range(10):
        h = hyperspan.sample_with_floor(3, 9, 0, 0.15, seed)
        m = hyperspan.has_perfect_matching(h)
        assert (m is not None) == brute_matching(3, 9, h.edges)
        if m is not None:
            assert sorted(v for e in m for v in e) == list(range(9))


def test_procedures_on_complete():
    h = hyperspan.complete(3, 12)
    assert hyperspan.berge_lift(h)["cycle"] is not None
    ext = hyperspan.perfect_matching_via_extenders(h)
    assert ext["perfect"] is True


def test_threshold_and_report():
    rep = hyperspan.exact_threshold(3, 6, "pm")
    assert rep["exact_threshold"] == 3
    assert rep["method"] == "exhaustive"
    tight = hyperspan.tightness_report("pm3", [6, 9])
    assert all(row["construction_verdict"] == "no" for row in tight["rows"])


def test_bad_input_raises():
    try:
        hyperspan.Hypergraph(3, 4, [[0, 1, 9]])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range vertex accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
