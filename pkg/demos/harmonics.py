"""Explicit harmonics on the smallest nonbinary q-Johnson space.

Each vector is assembled from characters chi_Omega and Grassmannian
harmonics, then projected with every primitive idempotent.
"""

from gelfandpairs import qjohnson
from gelfandpairs.exactnum import to_text
from gelfandpairs.qjohnson import QJParams


def main(seed=1):
    p = QJParams(2, 3, 1, 0, 1)
    pts = qjohnson.enumerate_X(p)
    labels = qjohnson.relation_labels(p, pts)
    comps = qjohnson.components(p)
    E = {c: qjohnson.idempotent(*c, p, pts, labels) for c in comps}
    for c in comps:
        F = qjohnson.spherical_harmonic(*c, seed, p, pts)
        f = [F[x] for x in pts]
        print(qjohnson.component_label(c), " ".join(to_text(v) for v in f))
        for c2 in comps:
            img = qjohnson.apply_matrix(E[c2], f)
            status = "F" if img == f else ("0" if all(v.is_zero() for v in img) else "?")
            print(f"    E{qjohnson.component_label(c2)} F = {status}")


if __name__ == "__main__":
    main()
