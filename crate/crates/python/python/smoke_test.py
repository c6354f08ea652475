"""Build the extension if needed, import it, and exercise the main entry points.

Run from anywhere: python3 crates/python/python/smoke_test.py
"""
import json
import os
import shutil
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.abspath(os.path.join(HERE, "..", "..", ".."))


def load_module():
    try:
        import hopfcheck_py  # noqa: F401
        return hopfcheck_py
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "hopfcheck-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    built = os.path.join(target, "release", "libhopfcheck_py.so")
    tmp = tempfile.mkdtemp()
    shutil.copy(built, os.path.join(tmp, "hopfcheck_py.so"))
    sys.path.insert(0, tmp)
    import hopfcheck_py
    return hopfcheck_py


def main():
    hc = load_module()

    z = hc.Cyc.zeta()
    assert z * z * z * z == hc.Cyc(-1)
    assert hc.Cyc.sqrt2() * hc.Cyc.sqrt2() == hc.Cyc(2)
    assert str(hc.Cyc("1/2")) == "1/2"

    kp = hc.HopfAlgebra.model("kp")
    assert kp.dim == 8 and kp.block_sizes == [1, 1, 1, 1, 2]
    report = kp.verify_axioms()
    assert all(c["passed"] for c in report["components"]), report
    flags = kp.commutativity()
    assert not flags["is_commutative"] and not flags["is_cocommutative"]

    again = hc.HopfAlgebra.from_json(kp.to_json())
    assert again.to_json() == kp.to_json()

    assert len(hc.list_checks("modcat")) == 3
    r = hc.run_check("twist.iso-phi")
    assert r["verdict"] == "pass" and r["as_expected"], r
    neg = hc.run_check("ty.pentagon-negative", tau="1")
    assert neg["verdict"] == "fail" and neg["as_expected"]

    assert hc.pentagon_failures("1/2") == []
    assert ["ρ", "ρ", "ρ", "ρ"] in hc.pentagon_failures("1")

    rep = hc.repair_psi_rho()
    assert rep["minimal"]["changes"] == 1

    print(json.dumps({"kp_dim": kp.dim, "repair_solutions": rep["solutions"]}))
    print("smoke test ok")


if __name__ == "__main__":
    main()
