"""Command-line front end: ``symstars <command> ...``."""
import argparse
import json
import math
import sys

import numpy as np

from . import canonical, entanglement, irreps, isomorphisms, majorana, rotosensor
from .spin import InputError, half
from .stateio import parse_spin, read_state, state_to_dict, wedge_to_dict, write_csv
from .sympower import SymState, basis_convert

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class NotConverged(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _emit(obj, out):
    json.dump(obj, out, indent=1)
    out.write("\n")


def _symstate(path):
    st = read_state(path)
    if not isinstance(st, SymState):
        raise InputError(f"{path}: expected a symmetric state, got a wedge vector")
    return st


def _axis(text):
    try:
        v = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--axis: cannot parse {text!r}")
    if len(v) != 3 or not any(v):
        raise InputError("--axis: expected a nonzero vector x,y,z")
    return np.array(v)


def cmd_decompose(a, out):
    s2 = parse_spin(a.spin)
    tables = {m: irreps.multiplicities(s2 / 2, a.parties, method=m) for m in irreps.METHODS}
    ref = tables["recursion"]
    agree = all(t == ref for t in tables.values())
    if a.json:
        _emit({"spin2": s2, "parties": a.parties,
               "multiplicities": [[j2, m] for j2, m in sorted(ref.entries.items(), reverse=True)],
               "methods_agree": agree}, out)
    else:
        out.write(f"s = {half(s2)}, k = {a.parties}, dimension {ref.dimension()}\n")
        out.write("j\tmultiplicity\n")
        for j2, m in sorted(ref.entries.items(), reverse=True):
            out.write(f"{half(j2)}\t{m}\n")
        note = "agree" if agree else "DISAGREE"
        out.write(f"methods {', '.join(irreps.METHODS)}: {note}\n")
    if not agree:
        raise NotConverged("multiplicity methods disagree")


def cmd_blockdiag(a, out):
    s2 = parse_spin(a.spin)
    B = (irreps.antisym_block_diagonalizer if a.antisym else irreps.block_diagonalizer)(s2 / 2, a.parties)
    _emit({"spin2": s2, "parties": a.parties, "kind": "antisym" if a.antisym else "sym",
           "layout": [[j2, al] for j2, al in B.layout],
           "U": [[[float(z.real), float(z.imag)] for z in row] for row in B.U]}, out)


def cmd_stars(a, out):
    st = _symstate(a.state)
    mc = canonical.multiconstellation(st)
    if not a.canonical:
        # constellations only, no reference orientation or weights
        data = {"s2": mc.s2, "k": mc.k,
                "blocks": [{"j2": b.j2, "alpha": b.alpha, "stars": np.asarray(b.stars).tolist(),
                            "zero": b.zero} for b in mc.blocks]}
    else:
        data = mc.to_json()
    if a.format == "json":
        _emit(data, out)
        return
    rows = []
    for b in data["blocks"]:
        for n in b["stars"]:
            rows.append(["block", b["j2"], b["alpha"], *n])
    if a.canonical:
        for n in data["spectator"]:
            rows.append(["spectator", "", "", *n])
    write_csv(out, ["kind", "j2", "alpha", "x", "y", "z"], rows)


def cmd_hermite(a, out):
    _emit(state_to_dict(isomorphisms.hermite(_symstate(a.state))), out)


def cmd_murnaghan(a, out):
    st = _symstate(a.state)
    w = isomorphisms.murnaghan(st)
    _emit(wedge_to_dict(st.s2 + st.k - 1, st.k, w), out)


def cmd_entangle(a, out):
    st = _symstate(a.state)
    if st.basis != "standard":
        st = basis_convert(st, "standard", irreps.block_diagonalizer(st.s2 / 2, st.k)
                           if st.basis == "block" else None)
    fac = majorana.vee_factorize(st)
    if fac.factorizable:
        res = entanglement.geometric_entanglement(factors=fac.factors, restarts=a.restarts,
                                                  tol=a.tol, seed=a.seed)
    else:
        res = entanglement.geometric_entanglement(state=st, restarts=a.restarts, tol=a.tol, seed=a.seed)
    d = res.to_json()
    d["gram_spectrum"] = (entanglement.gram_spectrum(fac.factors).tolist()
                          if fac.factorizable else None)
    _emit(d, out)
    if not res.converged:
        raise NotConverged("optimizer did not converge; best value reported")


def cmd_scan(a, out):
    s2 = parse_spin(a.spin)
    r = entanglement.scan(s2 / 2, a.parties, a.samples, a.measure, a.seed)
    ncol = r.lambdas.shape[1]
    header = ["sample_index"] + [f"lambda_{i + 1}" for i in range(ncol)] + ["E_tilde", "measure", "seed"]
    rows = ([int(i)] + [float(x) for x in lam] + [float(e), r.measure, r.seed]
            for i, lam, e in zip(r.index, r.lambdas, r.E_tilde))
    if a.out:
        write_csv(a.out, header, rows)
        out.write(f"wrote {a.samples} samples to {a.out}\n")
    else:
        write_csv(out, header, rows)


def cmd_rotosensor(a, out):
    st = _symstate(a.state)
    if a.mode == "axis":
        n = _axis(a.axis or "0,0,1")
        _emit({"variance": rotosensor.variance_about_axis(st, n),
               "variance_block": rotosensor.variance_about_axis(st, n, "block")}, out)
    elif a.mode == "averaged":
        _emit({"I": rotosensor.averaged_infinitesimal(st),
               "I_block": rotosensor.averaged_infinitesimal(st, "block")}, out)
    else:
        etas = [float(x) for x in a.eta.split(",")] if a.eta else list(np.linspace(0, math.pi, a.sweep))
        if a.axis:
            n = _axis(a.axis)
            write_csv(out, ["eta", "F"], [[e, rotosensor.fidelity(st, e, n)] for e in etas])
        else:
            write_csv(out, ["eta", "F_avg_closed", "F_avg_quadrature"],
                      [[e, rotosensor.averaged_fidelity(st, e),
                        rotosensor.averaged_fidelity(st, e, "lebedev")] for e in etas])


def build_parser():
    p = _Parser(prog="symstars", description="Symmetric multi-qudit states: blocks, stars, entanglement.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    q = sub.add_parser("decompose", help="multiplicity table of the symmetric power")
    q.add_argument("--spin", required=True)
    q.add_argument("--parties", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser("blockdiag", help="block-diagonalizing unitary as JSON")
    q.add_argument("--spin", required=True)
    q.add_argument("--parties", type=int, required=True)
    q.add_argument("--antisym", action="store_true")
    q.set_defaults(func=cmd_blockdiag)

    q = sub.add_parser("stars", help="per-block constellations (multiconstellation with --canonical)")
    q.add_argument("--state", required=True)
    q.add_argument("--canonical", action="store_true")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_stars)

    for name, f in (("hermite", cmd_hermite), ("murnaghan", cmd_murnaghan)):
        q = sub.add_parser(name, help=f"image under the {name} isomorphism")
        q.add_argument("--state", required=True)
        q.set_defaults(func=f)

    q = sub.add_parser("entangle", help="geometric entanglement and closest product state")
    q.add_argument("--state", required=True)
    q.add_argument("--restarts", type=int, default=64)
    q.add_argument("--tol", type=float, default=1e-9)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_entangle)

    q = sub.add_parser("scan", help="(Gram eigenvalues, E_tilde) of random factorizable states")
    q.add_argument("--spin", required=True)
    q.add_argument("--parties", type=int, required=True)
    q.add_argument("--samples", type=int, required=True)
    q.add_argument("--measure", choices=entanglement.MEASURES, default="haar")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q.set_defaults(func=cmd_scan)

    q = sub.add_parser("rotosensor", help="rotation-sensitivity figures of merit")
    q.add_argument("--state", required=True)
    q.add_argument("--mode", choices=("axis", "averaged", "fidelity"), required=True)
    q.add_argument("--eta", help="comma-separated angles")
    q.add_argument("--sweep", type=int, default=21, help="number of angles in [0, pi] without --eta")
    q.add_argument("--axis", help="x,y,z")
    q.set_defaults(func=cmd_rotosensor)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
        for name in ("parties", "samples", "restarts"):
            if getattr(a, name, 0) is not None and getattr(a, name, 0) < 0:
                raise InputError(f"--{name} must be nonnegative")
        a.func(a, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NotConverged as e:
        print(f"warning: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
