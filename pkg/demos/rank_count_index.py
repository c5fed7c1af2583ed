"""Orbit sizes of K x| C on the q-Johnson space.

Compares brute-force orbit sizes from the generic engine with gamma, whose
rank factor counts maps of rank i - j, and with the variant that counts
rank j instead. Only the first adds up to |X| with the base orbit of size 1.
"""

from gelfandpairs import qjohnson
from gelfandpairs.qjohnson import QJParams


def main():
    for t in [(2, 4, 2, 1, 1), (2, 4, 1, 0, 2), (3, 3, 1, 0, 1)]:
        p = QJParams(*t)
        ad = qjohnson.engine_adapter(p)
        brute = dict(zip(ad.orbit_labels, ad.instance.orbit_table.sizes))
        print(f"params {t}, |X| = {p.X_size}")
        rank_total = kernel_total = 0
        for o in qjohnson.orbit_parameters(p):
            g = qjohnson.orbit_size_gamma(*o, p)
            k = qjohnson.gamma_kernel_index(*o, p)
            rank_total += g
            kernel_total += k
            print(f"  {qjohnson.orbit_label(o)}  brute {brute[o]:>4}  rank-index {g:>4}  kernel-index {k:>4}")
        print(f"  totals: rank-index {rank_total}, kernel-index {kernel_total}")


if __name__ == "__main__":
    main()
