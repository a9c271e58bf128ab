"""Smoke test for the alpharep Python module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/alpharep-*.whl
"""

from fractions import Fraction
from pathlib import Path

import alpharep

DATA = Path(__file__).resolve().parent.parent / "data"

PRISM_EDGES = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 6), (1, 6)]


def main():
    f3 = alpharep.Field(3)
    assert f3.q == 3 and alpharep.Field.parse("3^2").q == 9

    prism = alpharep.Matroid.from_graph(f3, 6, PRISM_EDGES)
    assert prism.rank == 5 and len(prism) == 9
    assert len(prism.bases()) == 75
    assert prism.chi_whitney() == 4

    s = prism.chi_alpha(workers=2)
    assert s.value == Fraction(4)
    assert s.tally == {(4, 1): 186, (4, -1): 162, (2, 1): 6, (2, -1): 10}
    assert s.terms == 512 and s.skipped_odd == 148
    assert prism.chi_alpha(mode="restricted").tally == s.tally

    u24 = alpharep.Matroid.from_json((DATA / "u24.json").read_text())
    assert u24.flow_count() == 8
    assert u24.flows_alpha().value == 8
    assert u24.flows_alpha(method="cross-check").value == 8
    assert not u24.base_dets_are_units()

    g = alpharep.TaitGraph.from_json((DATA / "prism.json").read_text())
    t = g.count_alpha()
    assert t.value == 6 and t.character_sum == 2
    assert g.count_direct() == 6 and g.count_heawood() == 6

    loop = alpharep.Matroid.from_graph(f3, 2, [(1, 2), (2, 2)])
    try:
        loop.chi_alpha()
    except alpharep.InapplicableError:
        pass
    else:
        raise AssertionError("a loop must be rejected")

    try:
        alpharep.Field(4)
    except ValueError:
        pass
    else:
        raise AssertionError("even characteristic must be rejected")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
