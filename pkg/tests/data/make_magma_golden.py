"""Regenerate magma_golden.json with the brute-force oracle.

Run from the tests directory:  python3 data/make_magma_golden.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from oracles import brute_largest_family, table_from_code  # noqa: E402


def main():
    out = {"description": "largest family of proper sub-magmas pairwise disjoint up to idempotents, "
                          "for every Cayley table of size n; entry k is table_from_code(k, n)",
           "sizes": {}}
    for n in (1, 2, 3):
        digits = "".join(str(brute_largest_family(table_from_code(k, n))) for k in range(n ** (n * n)))
        out["sizes"][str(n)] = digits
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "magma_golden.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
