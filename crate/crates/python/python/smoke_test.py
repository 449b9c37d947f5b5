"""Smoke test for the gradedproj extension module.

Build first:
    cargo build --release -p gradedproj-python --features extension-module
then run:
    python3 crates/python/python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[3]


def load():
    try:
        import gradedproj

        return gradedproj
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libgradedproj.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "gradedproj.so")
            spec = importlib.util.spec_from_file_location("gradedproj", tmp / "gradedproj.so")
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("gradedproj extension not found; build it with --features extension-module")


def main():
    gp = load()

    u, d, v = gp.smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4], d

    z = gp.Group(1)
    assert z.quotient_invariants([[2]]) == (0, [2])

    p1 = gp.GradedRing(z, [("x", [1]), ("y", [1])])
    x, y = p1.submonoid(["x"]), p1.submonoid(["y"])
    assert x.is_relevant() and x.is_maximally_relevant()

    chart = x.potion()
    t = chart.fraction("y", [1])
    assert t * chart.one() == t
    assert chart.zero() * chart.one() == chart.zero()
    assert chart.fraction("x*y", [2]) == t
    assert not t.is_zero()
    assert chart.twist([1])[0] == "(x)/(1)"

    crossing = gp.GradedRing(z, [("x", [1]), ("y", [1])], ["x*y"])
    assert crossing.submonoid(["x"]).potion().fraction("y", [1]).is_zero()

    weighted = gp.GradedRing(z, [("x", [2]), ("y", [3])])
    rt = gp.localization_round_trip(weighted.submonoid(["x"]), weighted.submonoid(["y"]))
    assert rt["exponents"] == [2] and rt["verdict"] == "pass", rt

    summary = gp.atlas(p1, [("X", x), ("Y", y)])
    assert summary["charts"] == 2 and summary["verdict"] == "pass"
    assert summary["transitions"][("X", "Y")] == ["(y)/(x)"]

    doc = (ROOT / "crates" / "cli" / "corpus" / "p1.json").read_text()
    code, report = gp.run("negligible", doc)
    assert code == 0 and json.loads(report)["results"]["result"] == "negligible over F"

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
