"""Smoke test for the pfchain_py extension.

Build first with `cargo build -p pfchain-py --features extension-module --release`
(or without the feature for a debug build); the script picks up the freshly
built library from target/ when the module is not installed.
"""

import importlib.util
import os
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path


def load():
    try:
        import pfchain_py

        return pfchain_py
    except ImportError:
        pass
    root = Path(__file__).resolve().parent.parent / "target"
    names = ["libpfchain_py.so", "libpfchain_py.dylib", "pfchain_py.dll"]
    cands = [root / p / n for p in ("release", "debug") for n in names]
    found = [c for c in cands if c.exists()]
    if not found:
        sys.exit("pfchain_py not built; run cargo build -p pfchain-py first")
    lib = max(found, key=os.path.getmtime)
    tmp = Path(tempfile.mkdtemp()) / "pfchain_py.so"
    shutil.copy(lib, tmp)
    spec = importlib.util.spec_from_file_location("pfchain_py", tmp)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    pf = load()

    assert [pf.pf_count(3, n) for n in range(5)] == [1, 3, 15, 87, 543]
    assert pf.pf_count(3, 40) > 2**64
    assert pf.catalan(3) == 5

    w = pf.Word(3, "1221")
    assert w.reduce() == ""
    assert len(w) == 4 and w.pairs() == 1
    assert all(v.reduce() == "" for v in w.neighbors())

    words, total, avg = pf.pf_pairs(3, 4)
    assert (words, total) == (543, 1827)
    assert Fraction(avg) == Fraction(609, 181)

    assert abs(pf.entropy_ratio(3, 8000) - 0.9825) < 1e-3
    dim, gap = pf.subspace_gap(3, 6)
    assert dim == 87 and 0.1 < gap < 0.2

    c = pf.MarkovChain("pd", 3, 2)
    assert len(c) == 15 and c.is_reversible()
    assert sum(Fraction(p) for p in c.stationary()) == 1
    assert 0.16 < c.gap() < 0.17

    try:
        pf.MarkovChain("pf", 3, 40)
    except pf.SizeLimitExceeded:
        pass
    else:
        raise AssertionError("expected SizeLimitExceeded")
    try:
        pf.Word(3, "1241")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pfchain_py smoke test ok")


if __name__ == "__main__":
    main()
