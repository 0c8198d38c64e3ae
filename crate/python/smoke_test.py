"""Smoke test for the superhc_py extension.

Build and install first, e.g. `pip install --no-build-isolation ./crates/python`
(needs maturin), or copy the cdylib next to this script as `superhc_py.so`.
"""

import sys
from fractions import Fraction

import superhc_py as sh


def check(name, cond):
    print(f"{name}: {'ok' if cond else 'FAIL'}")
    return bool(cond)


def main():
    results = []

    hooks = sh.hooks(1, 1, 2)
    results.append(check("hooks(1,1,2)", [1] in hooks and [2] in hooks and [1, 1] in hooks))

    f = sh.interpolation([1], 2, 1)
    results.append(check("interpolation vanishes off mu", sh.vanishing_failures(f, [1], 2, 1) == []))
    at_empty = f.eval(sh.eval_point([], 2, 1))
    results.append(check("interpolation is zero at the empty partition", Fraction(at_empty) == 0))

    fd = sh.verify_fd([3, 1], 2, 1)
    results.append(check("verify_fd (3,1) in (2|1)", fd["passed"]))

    kw = sh.kac_weight([3, 1], 1, 1)
    results.append(check("kac_weight has four coordinates", len(kw["standard"]) == 4))

    mismatches = sh.check_bracket_table()
    results.append(check("bracket table", mismatches == []))

    km = sh.KacModule.for_hook(2, 0)
    results.append(check("Kac module dim is 16 * dim of the even module", km.dim() % 16 == 0))
    results.append(check("Kac module (2,0) has a spherical vector", len(km.spherical_vectors()) >= 1))

    shim = sh.Shimura()
    g = shim.gamma([1])
    i1 = sh.interpolation([1], 1, 1)
    results.append(check("Gamma(D_(1)) is proportional to I_(1)", g.ratio_to(i1) is not None))

    c1 = sh.run_criterion(1)
    results.append(check("criterion 1", c1["passed"]))

    if not all(results):
        sys.exit(1)
    print("smoke test passed")


if __name__ == "__main__":
    main()
