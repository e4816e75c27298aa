"""Smoke test for the gtbv_py extension.

Build it first:  pip install --no-build-isolation -e crates/py
Then run:        python python/smoke_test.py
"""

import json
import sys

import gtbv_py as g


def check(label, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {label}")
    return ok


def main():
    results = []
    results.append(check("torus [a, b] = (a b)", g.bracket("torus", "a", "b") == "1 · (a b)"))
    results.append(check("pants [a, b] = 0", g.bracket("pants", "a", "b") == "0"))
    results.append(check("commutator has zero cobracket", g.cobracket("torus", "a b a' b'") == "0"))

    delta = g.cobracket("genus2", "a b a' b' c")
    results.append(check("Δ on one generator is the cobracket", g.bv_delta_wedge("genus2", "∧(a b a' b' c)", "1") == delta))

    info = json.loads(g.surface_info(g.surface_json("genus2")))
    results.append(check("genus2 skeleton JSON round trip", info["info"]["genus"] == 2))

    v1 = g.evaluate("torus", "tr(a b) * tr(b)", "gl", 2, seed=7)
    v2 = g.evaluate("torus", "tr(b a) * tr(b)", "gl", 2, seed=7)
    results.append(check("trace is cyclic", v1 == v2))
    results.append(check("quasi-BV kills constants", g.quasi_bv("torus", "3", "q", 1) == "0"))

    try:
        g.bracket("torus", "a c", "b")
        results.append(check("parse errors raise ValueError", False))
    except ValueError:
        results.append(check("parse errors raise ValueError", True))

    passed, report = g.verify("GT_AXIOMS", trials=2, surfaces=["torus"])
    again = g.verify("GT_AXIOMS", trials=2, surfaces=["torus"])[1]
    results.append(check("GT_AXIOMS passes", passed and json.loads(report)["suite"] == "GT_AXIOMS"))
    results.append(check("reports are reproducible", report == again))

    passed, _ = g.verify("BV_INVARIANCE", trials=1, groups=[("aff", 1)])
    results.append(check("BV_INVARIANCE on the aff(1) double passes", passed))

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
