"""Smoke test for the pysemicrossed extension.

Build and run from the workspace root:

    cargo build -p semicrossed-py --release --features extension-module
    cp target/release/libpysemicrossed.so crates/python/python/pysemicrossed.so
    python3 crates/python/python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pysemicrossed as sc


def main():
    s1 = sc.Permutation.from_cycles("(0 1 2)(3 4 5)", 6)
    assert s1.images == [1, 2, 0, 4, 5, 3]
    assert str(sc.Permutation.shift(3)) == "(0 2 1)"
    assert s1.compose(s1.inverse()) == sc.Permutation.identity(6)

    a = sc.Action.from_cycles(6, "(0 1 2)(3 4 5)", "(0 3)(1 4)(2 5)")
    assert a.is_transitive() and a.is_perpendicular()
    d = a.decompose()
    assert d["factor_sizes"] == [3, 2]
    assert d["h"][4] == [1, 3]

    g = a.generated_pattern(8)
    assert g == a.closed_form_pattern(8)
    assert g.is_mult_closed()
    inv = g.codim_invariant()
    assert inv["distinct"] == [1, 4, 9, 36], inv

    bk2 = sc.Action.diagonal_shift(4).generated_pattern(8)
    assert bk2.difference(sc.Pattern.bk2(4, 8), 8) is None
    assert (0, 0, 0, 0) in bk2
    assert bk2.rank_at("3/2", "0") == len(set((i, j) for i, j, m, n in bk2.keys() if n == 0))
    assert sc.distinguish(sc.Pattern.bk2(6), sc.Pattern.tensor(3, 2)) == "distinguished"
    assert sc.distinguish(sc.Pattern.tensor(2, 3), sc.Pattern.tensor(3, 2)) == "indistinguishable"

    assert sc.probe_product_generators(3, 2)
    assert not sc.probe_product_generators(3, 2, mixed=True)

    spec = json.dumps({"k": 6, "sigma1": "(0 1 2)(3 4 5)", "sigma2": "(0 3)(1 4)(2 5)"})
    report = json.loads(sc.analyze(spec))
    assert report["classification"]["perpendicular"] is True
    assert sc.analyze(spec) == sc.analyze(spec)

    try:
        sc.Action.from_cycles(3, "(0 1)", "(1 2)")
    except ValueError:
        pass
    else:
        raise AssertionError("non-commuting pair accepted")

    print("pysemicrossed", sc.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
