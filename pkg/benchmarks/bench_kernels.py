"""Compare the compiled and pure-Python kernels.

Runs micro-benchmarks of the reduction and multiplication kernels with each
importable backend, then times a full Groebner computation in a subprocess
per backend (the backend is fixed at import, so it cannot be swapped in-process).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from affinemod.kernels import available_backends

GB_SNIPPET = """
import time
from affinemod import Ring, Ideal, kernels
R = Ring(["x", "y", "z", "t"])
x, y, z, t = R.gens()
I = Ideal(R, [x**3 - y*z*t + 1, y**3 - x*z**2, z**3 - x*y*t, t**2 - x*y + z])
start = time.perf_counter()
gb = I.groebner()
print(kernels.BACKEND, len(gb), time.perf_counter() - start)
"""


def random_terms(rng, nvars, count, degree):
    out = {}
    for _ in range(count):
        e = tuple(rng.randint(0, degree) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
    return out


def micro(repeat):
    rng = random.Random(7)
    nvars = 5
    matrix = [[1] * nvars] + [[0] * i + [-1] + [0] * (nvars - i - 1) for i in range(nvars - 1, 0, -1)]
    a = random_terms(rng, nvars, 40, 4)
    b = random_terms(rng, nvars, 40, 4)
    basis = []
    for _ in range(6):
        g = random_terms(rng, nvars, 8, 3)
        items = sorted(g.items(), key=lambda t: tuple(sum(r * e for r, e in zip(row, t[0])) for row in matrix), reverse=True)
        basis.append((items[0][0], items[0][1], items[1:]))
    rows = []
    for name, mod in sorted(available_backends().items()):
        prod = mod.mul_terms(a, b)
        t_mul = min(timeit.repeat(lambda: mod.mul_terms(a, b), number=20, repeat=repeat)) / 20
        t_red = min(timeit.repeat(lambda: mod.reduce_terms(prod, basis, matrix, 200000), number=3, repeat=repeat)) / 3
        rows.append((name, t_mul, t_red))
    return rows


def full_groebner():
    out = []
    for name in sorted(available_backends()):
        env = dict(os.environ)
        if name == "python":
            env["AFFINEMOD_PURE_PYTHON"] = "1"
        else:
            env.pop("AFFINEMOD_PURE_PYTHON", None)
        res = subprocess.run([sys.executable, "-c", GB_SNIPPET], env=env, capture_output=True, text=True, check=True)
        backend, size, secs = res.stdout.split()
        out.append((backend, int(size), float(secs)))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"{'backend':8} {'mul (ms)':>10} {'reduce (ms)':>12}")
    for name, t_mul, t_red in micro(args.repeat):
        print(f"{name:8} {t_mul * 1e3:10.3f} {t_red * 1e3:12.3f}")
    print()
    print(f"{'backend':8} {'basis':>6} {'groebner (s)':>13}")
    for name, size, secs in full_groebner():
        print(f"{name:8} {size:6d} {secs:13.3f}")


if __name__ == "__main__":
    main()
