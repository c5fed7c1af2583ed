"""Sym(3) acting on Z_3^3 with the Young subgroup S_1 x S_2.

Builds the homogeneous space, prints the certificate and checks that the
structural formula and the diagonalization give the same spherical table.
"""

from gelfandpairs import gelfand
from gelfandpairs.exactnum import to_text


def main():
    inst = gelfand.build_wreath_instance([[1], [2, 3]], 3)
    X = gelfand.build_space(inst)
    ot = gelfand.orbit_table(inst)
    print(f"|X| = {len(X)}, {len(ot.reps)} orbits of K x| C, sizes {ot.sizes}")

    cert = gelfand.gelfand_certificate(inst)
    print("certificate:", cert)

    diag = inst.spherical_by_diagonalization()
    form = inst.spherical_formula_table()
    print("formula rows == diagonalization rows:", gelfand.same_rows(form, diag))

    # not symmetric, so some values are genuinely complex
    for lab, row, nm in zip(diag.components, diag.values, diag.norms):
        print(f"{lab:>4}  norm {to_text(nm):>4}  " + "  ".join(f"{to_text(v):>10}" for v in row))

    rep = gelfand.verify_orthogonality(diag)
    print("orthogonal:", rep["ok"], " sum of dims:", rep["sum_dims"])

    bad = gelfand.build_wreath_instance([[1, 2], [3, 4]], 3)
    td = bad.theta_data
    print(f"blocks of equal size: |Theta| = {len(td.theta)}, |Xi| = {len(td.xi)}, "
          f"commutative = {bad.scheme.commutative}")


if __name__ == "__main__":
    main()
