"""Smoke test for the pykstab extension module.

Build and install first:  pip install --no-build-isolation -e crates/kstab-py
"""

import json
import sys

import pykstab


def main() -> int:
    res = pykstab.restrictions("A1", "neg", "s1")
    assert set(res) == {"e", "s1"}, res
    assert res["e"] == "-q^(-1/2) + q^(1/2)", res

    f = pykstab.wall_crossing("A1", "neg", "pos", "s1")
    assert f == "-q^(-1/2) + q^(1/2)", f

    assert pykstab.locate_alcove("A2", "1/3,1/3") == "s1 s2 s1*neg + 0"

    stab = pykstab.stable_class("A2", "neg", "s1 s2")
    json.dumps(stab)
    moved = pykstab.apply("T1'", stab)
    assert moved["type"] == "A2" and len(moved["restrictions"]) == 6

    dual = pykstab.stable_class("A2", "pos", "s1 s2", chamber="s1 s2 s1", pol="TStarB")
    assert pykstab.pair(stab, dual) == "1"

    fixtures = pykstab.golden_fixtures()
    assert fixtures and all(fx["passed"] for fx in fixtures), fixtures

    report = pykstab.verify("golden-sl2", "A1", seed=7)
    assert report["passed"], report
    assert report["suite_name"] == "golden-sl2"

    try:
        pykstab.verify("no-such-suite", "A1")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print(f"pykstab smoke test passed ({len(fixtures)} fixtures)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
