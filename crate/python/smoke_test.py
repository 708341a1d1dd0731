#!/usr/bin/env python3
"""Smoke test for the relgw_py extension module.

Builds the cdylib if needed, loads it from the cargo target directory, and
checks a handful of exact values end to end.

Usage: python3 python/smoke_test.py
"""

import ctypes  # noqa: F401  (keeps the dynamic loader happy on some distros)
import pathlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_extension() -> pathlib.Path:
    subprocess.run(
        ["cargo", "build", "-p", "relgw-py"],
        cwd=ROOT,
        check=True,
    )
    for profile in ("debug", "release"):
        for name in ("librelgw_py.so", "librelgw_py.dylib", "relgw_py.dll"):
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    raise FileNotFoundError("built extension library not found under target/")


def import_module(libpath: pathlib.Path):
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="relgw_py_"))
    suffix = ".pyd" if libpath.suffix == ".dll" else ".so"
    shutil.copy2(libpath, tmp / f"relgw_py{suffix}")
    sys.path.insert(0, str(tmp))
    import relgw_py

    return relgw_py


def main() -> int:
    mod = import_module(build_extension())
    failures = 0

    def check(label, got, want):
        nonlocal failures
        ok = got == want
        print(f"{'ok  ' if ok else 'FAIL'} {label}: {got!r}" + ("" if ok else f" (want {want!r})"))
        if not ok:
            failures += 1

    check("schubert_lines(3,3)", mod.schubert_lines(3, 3), "27")
    check("schubert_lines(4,5)", mod.schubert_lines(4, 5), "2875")
    check("kontsevich_p2(4)", mod.kontsevich_p2(4), ["1", "1", "12", "620"])

    invariants, instantons = mod.quintic_mirror(2)
    check("quintic I_2", invariants[1], "4876875/8")
    check("quintic n_2", instantons[1], "609250")

    eng = mod.Engine()
    check("line through two points", eng.evaluate("A;N=2;d=1;ins=2.0,2.0"), "1")
    check("quintic lines via engine", eng.evaluate("Y;N=4;l=5;d=1;ins=1.0"), "2875")
    check("cubic surface lines", eng.evaluate("Y;N=3;l=3;d=1;ins=1.0"), "27")
    check("contact overflow", eng.evaluate("R;N=2;l=1;d=1;m=2;ins=0.0"), "0")
    check(
        "tangent conics",
        eng.evaluate("R;N=2;l=1;d=2;m=2;ins=0.0,2.0,2.0,2.0,2.0"),
        "2",
    )
    check(
        "canonicalize sorts",
        eng.canonicalize("A;N=3;d=1;ins=1.0,3.0,2.0"),
        "A;N=3;d=1;ins=3.0,2.0,1.0",
    )
    check("vdim of quintic key", eng.vdim("Y;N=4;l=5;d=2;ins=1.0"), 1)

    num, den = eng.evaluate_parts("Y;N=4;l=5;d=2;ins=")
    check("I_2 as a Fraction", Fraction(int(num), int(den)), Fraction(4876875, 8))

    rows = eng.instanton_table(4, 5, 2)
    check("instanton table row 2", rows[1], (2, "4876875/8", "609250"))
    check("cache grew", eng.cache_len() > 0, True)

    bad = False
    try:
        eng.evaluate("R;N=4")
    except ValueError:
        bad = True
    check("malformed key raises ValueError", bad, True)

    print()
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all smoke checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
