"""Smoke test for the hookdist_py extension.

Build first:  cargo build --release -p hookdist-py --features extension-module
Then run:     python3 python/smoke_test.py
(or `maturin develop -m crates/python/Cargo.toml` and import hookdist_py directly)
"""

import importlib.util
import math
import pathlib
import shutil
import sys
import tempfile


def load():
    try:
        import hookdist_py

        return hookdist_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libhookdist_py.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp()) / "hookdist_py.so"
            shutil.copy(lib, tmp)
            spec = importlib.util.spec_from_file_location("hookdist_py", tmp)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("hookdist_py not built; see the docstring")


def main():
    h = load()

    assert len(h.partitions(19)) == 490
    assert h.hook_lengths([5, 4, 1]) == [7, 5, 5, 4, 3, 3, 2, 1, 1, 1]

    d = h.distribution(19, 2, "multiple")
    assert d["total"] == 490
    assert d["counts"] == {2: 5, 8: 185, 9: 300}

    big = h.distribution(5000, 2, "equal")
    assert big["counts"][98] == 1805943379138
    assert sum(big["counts"].values()) == big["total"]

    probs = dict(h.float_distribution(19, 2, "multiple"))
    assert abs(probs[9] - 300 / 490) < 1e-14

    sign, ln_abs = h.evaluate_p(19, 2, 2.0, "multiple")
    assert sign == 1.0 and abs(math.exp(ln_abs) - (5 * 4 + 185 * 256 + 300 * 512)) < 1e-6

    mean, var, mode = h.moments(19, 2, "multiple")
    assert abs(mean - 4190 / 490) < 1e-12 and mode == 9

    p = h.theorem_params(1000, 11, "multiple")
    assert abs(p["variance"] - 30000 / (121 * math.pi**2)) < 1e-9
    k, dval, limit, ratio = h.table_row(1000, 11, 1.25, "multiple")
    assert abs(dval - 0.8872) < 2e-3 and abs(limit - 0.8880) < 1e-4

    assert h.check_identities(8) == (True, True)
    assert abs(h.normal_cdf(2.0) - 0.9772) < 1e-4
    assert abs(h.dilog(1.0) - math.pi**2 / 6) < 1e-12
    assert abs(h.lower_incomplete_gamma(1.0, 2.0) - (1 - math.exp(-2))) < 1e-12
    assert abs(h.limit_cdf(1000, 11, -1.0) - 0.1467) < 1e-4

    for bad in (lambda: h.distribution(10, 2, "sideways"), lambda: h.hook_lengths([1, 2])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("hookdist_py smoke test: ok")


if __name__ == "__main__":
    main()
