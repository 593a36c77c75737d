#!/usr/bin/env python3
"""Smoke test for the boolcube_py extension module.

Builds the cdylib with cargo, loads it, and checks a handful of known
values. Run from anywhere:

    python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_module(tmp: Path) -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "boolcube-py"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libboolcube_py.so"
    if not built.exists():  # e.g. macOS
        built = REPO / "target" / "release" / "libboolcube_py.dylib"
    shutil.copy(built, tmp / "boolcube_py.so")


def main() -> int:
    with tempfile.TemporaryDirectory() as d:
        tmp = Path(d)
        build_module(tmp)
        sys.path.insert(0, str(tmp))
        from boolcube_py import BooleanFunction

        # n=2 XOR from its truth table
        xor = BooleanFunction("0110", 2)
        assert xor.n == 2
        assert xor.truth_table() == "0110"
        assert xor.spectrum() == [2, 0, 0, -2]
        assert xor.fourier_degree() == 2
        assert xor.anf() == "x1 + x2"
        assert xor.energy() == 8
        assert [xor(i) for i in range(4)] == [False, True, True, False]

        # families and exact rationals
        d3 = BooleanFunction.family("dictator", 3, i=2)
        assert d3.influence(2) == "1"
        assert d3.influence(1) == "0"
        assert d3.total_influence_prob() == "1"
        assert d3.total_influence_spectral() == "1/4"

        parity3 = BooleanFunction.family("parity", 3)
        size, optimal, parts = parity3.min_partition()
        assert (size, optimal) == (8, True)
        assert len(parts) == 8 and all(mask == "111" for mask, _, _ in parts)

        and3 = BooleanFunction.family("and", 3)
        size, optimal, _ = and3.min_partition()
        assert (size, optimal) == (4, True)

        report = json.loads(parity3.analyze())
        ineq = report["inequality"]
        assert ineq["partition_size"] == 8
        assert ineq["energy"] == "64"
        assert all(link["holds"] for link in ineq["links"])

        # hex parsing matches bit-string parsing
        assert BooleanFunction("hex:6", 2).truth_table() == "0110"

        # invalid input raises
        try:
            BooleanFunction("01", 2)
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError for short table")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
