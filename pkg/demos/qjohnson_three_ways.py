"""Spherical functions of the nonbinary q-Johnson space, three ways.

The closed form (q-Hahn and q-Krawtchouk factors), the structural formula on
the generic engine, and exact diagonalization of the intersection matrices.
"""

import sys

from gelfandpairs import qjohnson
from gelfandpairs.exactnum import to_text
from gelfandpairs.qjohnson import QJParams


def main(q=2, n=4, m=2, r=1, s=1):
    p = QJParams(q, n, m, r, s)
    orbs = qjohnson.orbit_parameters(p)
    gam = [qjohnson.orbit_size_gamma(*t, p) for t in orbs]
    print(f"params {p.as_tuple()}, |X| = {p.X_size}")
    print("orbits  ", "  ".join(f"{qjohnson.orbit_label(t):>8}" for t in orbs))
    print("gamma   ", "  ".join(f"{g:>8}" for g in gam))

    table = qjohnson.spherical_table_qj(p)
    for lab, row, d in zip(table.components, table.values, table.dims):
        print(f"{lab:>8}", "  ".join(f"{to_text(v):>8}" for v in row), f"  dim {d}")

    print("orthogonality:", qjohnson.verify_orthogonality_qj(p)["ok"])
    print("three-way agreement:", qjohnson.three_way(p))


if __name__ == "__main__":
    main(*map(int, sys.argv[1:]))
