"""Command-line front end.

    gelfandpairs orbits --preset nonbinary-qjohnson --q 2 --n 3 --m 1 --r 0 --s 1
    gelfandpairs gelfand-check --preset wreath --blocks "1|2,3" --D 3
    gelfandpairs spherical --preset qjohnson --n 4 --m 2 --verify full
    gelfandpairs harmonic --preset nonbinary-qjohnson --n 3 --m 1 --r 0 --s 1 --component 0,0,1

Exit codes: 0 success, 2 usage or parameter error, 3 failed invariant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from . import gelfand, qjohnson
from .exactnum import to_text
from .qjohnson import ParameterError, QJParams

EXIT_OK, EXIT_PARAMS, EXIT_INVARIANT = 0, 2, 3

QJ_PRESETS = ("qjohnson", "qhamming", "attenuated", "nonbinary-qjohnson")
PRESETS = QJ_PRESETS + ("wreath",)
FAST_SAMPLE = 16


class InvariantFailure(RuntimeError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    preset: str | None
    instance: str | None
    q: int
    n: int | None
    m: int | None
    r: int | None
    s: int | None
    seed: int
    fmt: str
    verify: str
    component: tuple | None = None
    blocks: str | None = None
    D: str = "3"
    variant: str = "zero-sum"

    def qj_params(self):
        """Map a q-Johnson preset to (q, n, m, r, s)."""
        def need(*names):
            missing = [x for x in names if getattr(self, x) is None]
            if missing:
                raise ParameterError(f"preset {self.preset} needs --{' --'.join(missing)}")

        if self.preset == "qjohnson":
            need("n", "m")
            return QJParams(self.q, self.n, 0, 0, self.m)
        if self.preset == "qhamming":
            need("n", "m")
            return QJParams(self.q, self.n, self.m, 0, self.n - self.m)
        if self.preset == "attenuated":
            need("n", "m", "s")
            return QJParams(self.q, self.n, self.m, 0, self.s)
        need("n", "m", "r", "s")
        return QJParams(self.q, self.n, self.m, self.r, self.s)

    @property
    def is_qj(self):
        return self.preset in QJ_PRESETS

    def generic_instance(self):
        if self.instance:
            with open(self.instance) as fh:
                return gelfand.instance_from_json(json.load(fh))
        if self.preset == "wreath":
            if not self.blocks:
                raise ParameterError("preset wreath needs --blocks, e.g. '1|2,3'")
            blocks = [[int(x) for x in b.split(",") if x] for b in self.blocks.split("|")]
            D = [int(x) for x in self.D.split(",")]
            return gelfand.build_wreath_instance(blocks, D if len(D) > 1 else D[0], self.variant)
        return qjohnson.engine_adapter(self.qj_params()).instance


def _params_json(p):
    return {"q": p.q, "n": p.n, "m": p.m, "r": p.r, "s": p.s}


def _verdict(ok):
    return "OK" if ok else "FAIL"


# ---------------------------------------------------------------- subcommands

def cmd_orbits(cfg):
    if cfg.is_qj and not cfg.instance:
        p = cfg.qj_params()
        orbs = qjohnson.orbit_parameters(p)
        gam = [qjohnson.orbit_size_gamma(*t, p) for t in orbs]
        checks = {"mass": _verdict(sum(gam) == p.X_size),
                  "base": _verdict(qjohnson.orbit_size_gamma(p.r, p.s, p.s, p) == 1)}
        if cfg.verify == "full":
            try:
                ad = qjohnson.engine_adapter(p)
            except ParameterError:
                checks["engine"] = "SKIPPED"
            else:
                ot = ad.instance.orbit_table
                brute = dict(zip(ad.orbit_labels, ot.sizes))
                checks["engine"] = _verdict(brute == dict(zip(orbs, gam)))
        rows = [{"label": qjohnson.orbit_label(t), "gamma": g} for t, g in zip(orbs, gam)]
        doc = {"preset": cfg.preset, "params": _params_json(p), "X_size": p.X_size,
               "mass": sum(gam), "orbits": rows, "checks": checks}
    else:
        inst = cfg.generic_instance()
        ot = inst.orbit_table
        rows = [{"label": lab, "rep": _point_json(inst, inst.X[r]), "size": sz, "formula_size": fs}
                for lab, r, sz, fs in zip(ot.labels, ot.reps, ot.sizes, ot.formula_sizes)]
        checks = {"mass": _verdict(sum(ot.sizes) == len(inst.X)),
                  "formula": _verdict(ot.sizes == ot.formula_sizes)}
        doc = {"instance": inst.name, "X_size": len(inst.X), "mass": sum(ot.sizes),
               "orbits": rows, "checks": checks}
    return doc, all(v != "FAIL" for v in checks.values())


def _point_json(inst, x):
    y = inst.Y[x[0]]
    if isinstance(y, tuple) and y and hasattr(y[0], "to_json"):
        y = [c.to_json() for c in y]
    elif hasattr(inst, "y_labels"):
        y = inst.y_labels[x[0]]
    return {"y": y, "b": list(x[1])}


def cmd_gelfand_check(cfg):
    inst = cfg.generic_instance()
    cert = inst.gelfand_certificate()
    doc = {"instance": inst.name, "certificate": cert, "verdict": _verdict(cert["consistent"])}
    return doc, cert["consistent"]


def _sample_pairs(n, rng):
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    if len(pairs) <= FAST_SAMPLE:
        return pairs
    return sorted(rng.sample(pairs, FAST_SAMPLE))


def _orthogonality_sample(table, rng):
    for a, b in _sample_pairs(len(table.values), rng):
        val = gelfand.inner(table.values[a], table.values[b], table.weights)
        if val != (table.norms[a] if a == b else 0):
            return False
    return sum(table.dims) == sum(table.weights)


def cmd_spherical(cfg):
    rng = random.Random(cfg.seed)
    verdicts = {}
    if cfg.is_qj and not cfg.instance:
        p = cfg.qj_params()
        table = qjohnson.spherical_table_qj(p)
        if cfg.verify == "full":
            verdicts["orthogonality"] = _verdict(qjohnson.verify_orthogonality_qj(p)["ok"])
            try:
                tw = qjohnson.three_way(p, cfg.seed)
            except ParameterError:
                verdicts["three_way"] = "SKIPPED"
            else:
                verdicts["three_way"] = _verdict(all(tw.values()))
        else:
            verdicts["orthogonality"] = _verdict(_orthogonality_sample(table, rng))
        head = {"preset": cfg.preset, "params": _params_json(p)}
    else:
        inst = cfg.generic_instance()
        if not inst.scheme.commutative:
            raise InvariantFailure("relation algebra is not commutative: no spherical table")
        table = inst.spherical_by_diagonalization(cfg.seed)
        if cfg.verify == "full":
            rep = gelfand.verify_orthogonality(table, symmetric=table.flags.get("symmetric"))
            verdicts["orthogonality"] = _verdict(rep["ok"])
            if inst.theta_data.xi_equals_theta:
                verdicts["formula"] = _verdict(gelfand.same_rows(inst.spherical_formula_table(cfg.seed), table))
        else:
            verdicts["orthogonality"] = _verdict(_orthogonality_sample(table, rng))
        head = {"instance": inst.name}
    if cfg.fmt == "csv":
        return table.to_csv(), all(v != "FAIL" for v in verdicts.values())
    doc = head | table.to_dict() | {"verdicts": verdicts}
    return doc, all(v != "FAIL" for v in verdicts.values())


def cmd_harmonic(cfg):
    if not cfg.is_qj:
        raise ParameterError("harmonic needs a q-Johnson preset")
    p = cfg.qj_params()
    if cfg.component is None:
        raise ParameterError("harmonic needs --component u,v,l")
    comp = tuple(cfg.component)
    if comp not in qjohnson.components(p):
        raise ParameterError(f"component {comp} is out of range for {p.as_tuple()}")
    if p.X_size > 10**4:
        raise ParameterError("|X| exceeds the harmonic desk bound")
    pts = qjohnson.enumerate_X(p)
    F = qjohnson.spherical_harmonic(*comp, cfg.seed, p, pts)
    f = [F[x] for x in pts]
    labels = qjohnson.relation_labels(p, pts)
    E = qjohnson.idempotent(*comp, p, pts, labels)
    verdicts = {"projection": _verdict(qjohnson.apply_matrix(E, f) == f),
                "nonzero": _verdict(any(not v.is_zero() for v in f))}
    if cfg.verify == "full":
        others = True
        for c in qjohnson.components(p):
            if c != comp:
                E2 = qjohnson.idempotent(*c, p, pts, labels)
                others &= all(v.is_zero() for v in qjohnson.apply_matrix(E2, f))
        verdicts["other_components"] = _verdict(others)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["point", "value"])
        for x in pts:
            w.writerow([x.label(), to_text(F[x])])
        return buf.getvalue(), all(v == "OK" for v in verdicts.values())
    doc = {"preset": cfg.preset, "params": _params_json(p), "component": qjohnson.component_label(comp),
           "seed": cfg.seed,
           "values": [{"point": x.to_json(), "value": to_text(F[x])} for x in pts],
           "verdicts": verdicts}
    return doc, all(v == "OK" for v in verdicts.values())


COMMANDS = {
    "orbits": cmd_orbits,
    "gelfand-check": cmd_gelfand_check,
    "spherical": cmd_spherical,
    "harmonic": cmd_harmonic,
}


# ---------------------------------------------------------------- parsing

def _component(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("component must be u,v,l") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("component must be u,v,l")
    return parts


def build_parser():
    parser = argparse.ArgumentParser(prog="gelfandpairs",
                                     description="Gelfand pairs (H x| A, K x| C): orbits, certificates, spherical functions.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", choices=PRESETS)
        src.add_argument("--instance", metavar="PATH", help="JSON instance description")
        sp.add_argument("--q", type=int, default=2)
        for k in "nmrs":
            sp.add_argument(f"--{k}", type=int)
        sp.add_argument("--component", type=_component, help="u,v,l (harmonic)")
        sp.add_argument("--blocks", help="wreath blocks, e.g. '1|2,3'")
        sp.add_argument("--D", default="3", help="invariant factors of D, e.g. 3 or 2,2")
        sp.add_argument("--variant", default="zero-sum", choices=("zero-sum", "constant-on-orbits"))
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        sp.add_argument("--verify", choices=("fast", "full"), default="fast")
        sp.add_argument("--out", metavar="PATH")
    return parser


def render(doc, fmt):
    if isinstance(doc, str):
        return doc
    if fmt == "csv" and "orbits" in doc:
        buf = io.StringIO()
        rows = doc["orbits"]
        w = csv.DictWriter(buf, fieldnames=[k for k in rows[0] if k != "rep"], extrasaction="ignore",
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "csv" and "certificate" in doc:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in doc["certificate"].items():
            w.writerow([k, v])
        return buf.getvalue()
    return json.dumps(doc, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.subcommand, args.preset, args.instance, args.q, args.n, args.m, args.r, args.s,
                    args.seed, args.fmt, args.verify, args.component, args.blocks, args.D, args.variant)
    try:
        doc, ok = COMMANDS[cfg.subcommand](cfg)
    except (ParameterError, gelfand.InstanceError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except (InvariantFailure, gelfand.NotMultiplicityFree, gelfand.ReconstructionFailed,
            gelfand.XiNeTheta, gelfand.NoWitness) as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    text = render(doc, cfg.fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
