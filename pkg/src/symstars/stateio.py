"""JSON state files and CSV output."""
import csv
import json
import math

import numpy as np

from .spin import InputError, twice
from .sympower import BASES, SymState, sym_dim

WEDGE = "wedge"


def _pairs(a):
    return [[float(z.real), float(z.imag)] for z in np.asarray(a, dtype=complex)]


def _amplitudes(raw):
    if not isinstance(raw, list):
        raise InputError("field 'amplitudes': expected a list of [re, im] pairs")
    out = np.empty(len(raw), dtype=complex)
    for i, p in enumerate(raw):
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            raise InputError(f"field 'amplitudes'[{i}]: expected [re, im]")
        try:
            re, im = float(p[0]), float(p[1])
        except (TypeError, ValueError):
            raise InputError(f"field 'amplitudes'[{i}]: non-numeric entry")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InputError(f"field 'amplitudes'[{i}]: non-finite entry")
        out[i] = complex(re, im)
    return out


def _int_field(d, name):
    v = d.get(name)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"field {name!r}: expected a nonnegative integer")
    return v


def state_from_dict(d):
    """SymState (or (spin2, parties, amplitudes) for wedge vectors) from a StateFile dict."""
    if not isinstance(d, dict):
        raise InputError("state file must hold a JSON object")
    s2 = _int_field(d, "spin2")
    k = _int_field(d, "parties")
    basis = d.get("basis", "standard")
    a = _amplitudes(d.get("amplitudes"))
    if basis == WEDGE:
        n = math.comb(s2 + 1, k)
        if a.size != n:
            raise InputError(f"field 'amplitudes': {a.size} entries, expected C({s2 + 1},{k}) = {n}")
        return s2, k, a
    if basis not in BASES:
        raise InputError(f"field 'basis': unknown tag {basis!r}")
    n = sym_dim(s2 + 1, k)
    if a.size != n:
        raise InputError(f"field 'amplitudes': {a.size} entries, expected {n} for spin2={s2}, parties={k}")
    return SymState(s2 / 2, k, a, basis)


def state_to_dict(state):
    return {"spin2": state.s2, "parties": state.k, "basis": state.basis,
            "amplitudes": _pairs(state.amplitudes)}


def wedge_to_dict(s2, k, amplitudes):
    return {"spin2": int(s2), "parties": int(k), "basis": WEDGE, "amplitudes": _pairs(amplitudes)}


def read_state(path):
    try:
        with open(path) as f:
            d = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read state file {path!r}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InputError(f"state file {path!r} is not valid JSON: {e.msg} (line {e.lineno})")
    return state_from_dict(d)


def write_state(state, path):
    with open(path, "w") as f:
        json.dump(state_to_dict(state), f, indent=1)


def fmt(x):
    """17 significant digits, enough for a bit-exact round trip."""
    return format(float(x), ".17g")


def write_csv(path_or_file, header, rows):
    own = isinstance(path_or_file, str)
    f = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(f)
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in r])
    finally:
        if own:
            f.close()


def parse_spin(text):
    """'3/2' or '1.5' -> 3 (doubled spin)."""
    return twice(text)
