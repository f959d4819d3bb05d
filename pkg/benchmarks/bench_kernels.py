"""Compare the compiled and pure-Python convolution backends.

Run with ``python benchmarks/bench_kernels.py``. The pure-Python timings come
from a child process started with ``SIEGEL_SIGNS_PURE_PYTHON=1``, since the
backend is chosen once at import.
"""

import argparse
import json
import os
import subprocess
import sys
import timeit


def measure(repeat: int) -> dict:
    from siegel_signs import kernels
    from siegel_signs.jacobi import phi10_1, sign_flip_product
    from siegel_signs.lift import fourier_jacobi, lift_of_weight
    from siegel_signs.series import delta, eisenstein

    E4, D = eisenstein(4, 400), delta(400)
    a, b = list(E4.list()), list(D.list())
    phi = phi10_1(60)
    L = lift_of_weight(10, 120)
    phi2 = fourier_jacobi(L, 2, 60)

    cases = {
        "conv1d (400 terms)": lambda: kernels.conv1d(a, b, 400),
        "inv1d (400 terms)": lambda: kernels.inv1d(a, 400),
        "Phi, index 1, nmax 60": lambda: sign_flip_product(phi),
        "Phi, index 2, nmax 60": lambda: sign_flip_product(phi2),
    }
    out = {"backend": kernels.BACKEND}
    for name, fn in cases.items():
        out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        print(json.dumps(measure(args.repeat)))
        return

    def child(pure: bool) -> dict:
        env = dict(os.environ)
        env.pop("SIEGEL_SIGNS_PURE_PYTHON", None)
        if pure:
            env["SIEGEL_SIGNS_PURE_PYTHON"] = "1"
        res = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(args.repeat)],
                             env=env, capture_output=True, text=True, check=True)
        return json.loads(res.stdout)

    fast, slow = child(False), child(True)
    print(f"{'case':<26}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name in fast:
        if name == "backend":
            continue
        print(f"{name:<26}{fast[name]:>11.4f}s{slow[name]:>11.4f}s{slow[name] / fast[name]:>9.2f}x")


if __name__ == "__main__":
    main()
