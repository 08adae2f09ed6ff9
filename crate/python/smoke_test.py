#!/usr/bin/env python3
"""Smoke test for the hopfcyc_py extension module.

Builds the extension with cargo if needed, loads it, and exercises the main
entry points: built-in Hopf algebras, axiom certification, presentation
parsing and rewriting for SL_q(2), compilation, and the invariant cyclic
(co)homology tables.

Run from the repository root:

    cargo build -p hopfcyc-py --release
    python3 python/smoke_test.py
"""

import pathlib
import shutil
import subprocess
import sys
import sysconfig

ROOT = pathlib.Path(__file__).resolve().parent.parent


def ensure_extension():
    """Copy the built cdylib next to this script under the importable name."""
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    target = ROOT / "python" / f"hopfcyc_py{suffix}"
    candidates = [
        ROOT / "target" / "release" / "libhopfcyc_py.so",
        ROOT / "target" / "debug" / "libhopfcyc_py.so",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        print("building hopfcyc-py (release)...")
        subprocess.run(
            ["cargo", "build", "-p", "hopfcyc-py", "--release"],
            cwd=ROOT,
            check=True,
        )
        built = candidates[0]
    if not target.exists() or built.stat().st_mtime > target.stat().st_mtime:
        shutil.copy2(built, target)
    sys.path.insert(0, str(target.parent))


def main():
    ensure_extension()
    import hopfcyc_py as hc

    # built-in Hopf algebras certify
    ks3 = hc.builtin("kS3")
    assert ks3.dim == 6
    assert ks3.check() == [], ks3.check()
    assert ks3.is_cocommutative() and not ks3.is_commutative()
    print(f"ok  {ks3!r}: all Hopf axioms pass")

    sweedler = hc.builtin("sweedler")
    assert sweedler.check() == []
    dual = hc.builtin("dual:kZ2", field="prime:2")
    assert dual.check() == []
    print(f"ok  {sweedler!r} and {dual!r} certify")

    # structure-constant text roundtrip
    again = hc.from_text(sweedler.to_text())
    assert again.dim == 4 and again.check() == []
    print("ok  structure-constant text roundtrip")

    # invariant cyclic homology of (kZ/2, kZ/2, k_eps): HC = (1, 0, 1)
    kz2 = hc.builtin("kZ2")
    table = hc.invariant_cyclic_homology(kz2, module="trivial", sigma="unit", nmax=3)
    assert table["compatible"]
    assert table["hc"] == [1, 0, 1], table
    assert table["coinvariant_dims"] == [1, 2, 4, 8]
    print(f"ok  invariant HC(kZ2, k_eps) = {table['hc']}")

    # group homology of Z/2 over F2 via the bar oracle: all ones
    kz2_f2 = hc.builtin("kZ2", field="prime:2")
    dims = hc.hopf_homology(kz2_f2, module="trivial", nmax=5)
    assert dims == [1, 1, 1, 1, 1], dims
    print(f"ok  H_n(Z/2, F2) = {dims}")

    # the Connes-Moscovici side: Sweedler modular pair (delta, 1)
    cm = hc.invariant_cyclic_cohomology(sweedler, comodule="trivial", delta="delta", nmax=3)
    assert cm["compatible"]
    assert cm["coinvariant_dims"] == [1, 4, 16, 64], cm
    print(f"ok  Sweedler Connes-Moscovici cochain dims {cm['coinvariant_dims']}, HC = {cm['hc']}")

    # SL_q(2): parse, rewrite, coproduct, bounded involution
    p = hc.parse_presentation(hc.slq2_presentation())
    assert p.generators == ["x", "u", "v", "y"]
    assert p.normal_form("u*x") == "(q)*x*u"
    assert p.normal_form("y*v") == "(q)*v*y"
    # yx = 1 + q*uv reduces to the x-leading basis
    assert p.normal_form("y*x") == p.normal_form("1 + q*u*v")
    delta_x = dict(
        (legs, coeff) for coeff, legs in p.coproduct("x")
    )
    assert delta_x == {"x|x": "1", "u|v": "1"}, delta_x
    assert hc.slq2_involution_check(degree_bound=2)
    print("ok  SL_q(2): ux -> q*xu, coproduct of x, involution check at degree 2")

    # compiling the infinite-dimensional presentation fails cleanly
    try:
        p.compile(basis_bound=32)
    except ValueError as e:
        assert "finite" in str(e)
        print(f"ok  SL_q(2) compile refused: {e}")
    else:
        raise AssertionError("SL_q(2) must not compile to structure constants")

    print("smoke test passed")


if __name__ == "__main__":
    main()
