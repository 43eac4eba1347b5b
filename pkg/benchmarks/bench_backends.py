"""Compare the compiled (gmpy2) and pure-Python (fractions) rational
backends on the hot verification kernels.

The backend is chosen at import time, so the pure run happens in a
subprocess with EVSLAB_BACKEND=pure.  Usage::

    python benchmarks/bench_backends.py [budget]
"""

import json
import os
import subprocess
import sys
import time


def run_kernels(budget: int) -> dict:
    from evslab import core, make_instance
    from evslab import setlaws
    from evslab._backend import BACKEND

    results = {"backend": BACKEND}
    E = make_instance("halfline")

    t0 = time.perf_counter()
    core.check_axioms(E, budget, 42)
    results["axioms_halfline"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    core.check_axioms(make_instance("cone:2"), budget, 42)
    results["axioms_cone2"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    setlaws.check_absorbing_closure_laws(E, budget, 42)
    setlaws.check_balanced_closure_laws(E, budget, 42)
    results["closure_laws"] = time.perf_counter() - t0

    return results


def main():
    budget = int(sys.argv[1]) if len(sys.argv) > 1 else 5000

    if os.environ.get("_BENCH_CHILD"):
        print(json.dumps(run_kernels(budget)))
        return

    rows = []
    for backend in ("gmpy2", "pure"):
        env = dict(os.environ,
                   EVSLAB_BACKEND=backend, _BENCH_CHILD="1")
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), str(budget)],
            env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(out.stdout.strip().splitlines()[-1]))

    keys = [k for k in rows[0] if k != "backend"]
    print(f"budget = {budget}")
    print(f"{'kernel':<20} " + " ".join(f"{r['backend']:>10}" for r in rows)
          + f" {'speedup':>9}")
    for k in keys:
        times = [r[k] for r in rows]
        speedup = times[1] / times[0] if times[0] else float("inf")
        print(f"{k:<20} " + " ".join(f"{t:>9.3f}s" for t in times)
              + f" {speedup:>8.2f}x")


if __name__ == "__main__":
    main()
