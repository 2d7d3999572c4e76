"""Canonical JSON and CSV writers and the file formats used by the command line."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .padic import LocalRing, PadicScalar
from .series import PadicPowerSeries, series_from_text, series_to_text

SCHEMAS = ("modsym/1", "congruence-report/1", "branch-pair/1", "ramified-model/1", "l-family/1", "branch-verdict/1")


class SchemaError(ValueError):
    """Input file does not follow the expected schema."""


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, PadicScalar):
        return scalar_to_json(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj):
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True, default=_default) + "\n"


def write_text(text, path=None, stream=None):
    if path is None:
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_json(obj, path=None, stream=None):
    write_text(dumps(obj), path, stream)


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _cell(x):
    if isinstance(x, PadicScalar):
        return ";".join(",".join(str(c) for c in row) for row in x.coeffs)
    return str(x)


def write_csv(header, rows, path=None, stream=None):
    write_text(csv_text(header, rows), path, stream)


def scalar_to_json(x):
    return {"coeffs": [list(r) for r in x.coeffs], "prec": x.prec}


def ring_to_json(ring):
    return {"p": ring.p, "prec": ring.prec, "eisenstein": list(ring.eis) if ring.e > 1 else None,
            "unramified": list(ring.unram) if ring.f > 1 else None}


def ring_from_json(d):
    try:
        return LocalRing(d["p"], d["prec"], eisenstein=d.get("eisenstein"), unramified=d.get("unramified"))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad ring description: {exc}") from exc


def load_json(path, schema=None):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be an object")
    if schema is not None:
        got = data.get("schema")
        allowed = (schema,) if isinstance(schema, str) else tuple(schema)
        if got not in allowed:
            raise SchemaError(f"{path}: expected schema {' or '.join(allowed)}, found {got!r}")
    return data


def require(d, keys, where):
    missing = [k for k in keys if k not in d]
    if missing:
        raise SchemaError(f"{where}: missing keys {missing}")


# power series, branch pairs, models

def series_to_json(s):
    return {"n": s.n, "rescale": s.rescale, "text": series_to_text(s)}


def series_from_json(d, ring):
    require(d, ("text",), "series")
    s = series_from_text(d["text"], ring, d.get("rescale", 0))
    if "n" in d and d["n"] != s.n:
        raise SchemaError("series length does not match its header")
    return s


def branch_pair_to_json(pair):
    return {"schema": "branch-pair/1", "p": pair.p, "N": pair.N, "ring": ring_to_json(pair.ring),
            "g1": series_to_json(pair.g1), "g2": series_to_json(pair.g2)}


def branch_pair_from_json(d):
    from .branches import BranchPair
    require(d, ("p", "N", "ring", "g1", "g2"), "branch pair")
    ring = ring_from_json(d["ring"])
    if ring.p != d["p"]:
        raise SchemaError("branch pair prime does not match its ring")
    return BranchPair(d["p"], d["N"], series_from_json(d["g1"], ring), series_from_json(d["g2"], ring))


def model_to_json(model):
    return {"schema": "ramified-model/1", "p": model.ring.p, "t": model.t, "e": model.e,
            "ring": ring_to_json(model.ring), "u": series_to_json(model.u)}


def model_from_json(d):
    from .branches import RamifiedBranchModel
    require(d, ("t", "e", "ring", "u"), "ramified model")
    ring = ring_from_json(d["ring"])
    return RamifiedBranchModel(d["t"], d["e"], series_from_json(d["u"], ring))


def family_to_json(families, ring):
    """families: {"L1": {label: series}, "L2": {...}} or {"L": {...}}."""
    out = {"schema": "l-family/1", "ring": ring_to_json(ring)}
    for key, fam in families.items():
        out[key] = {str(k): series_to_json(v) for k, v in sorted(fam.items(), key=lambda kv: str(kv[0]))}
    return out


def family_from_json(d):
    require(d, ("ring",), "L-family")
    ring = ring_from_json(d["ring"])
    fams = {}
    for key in ("L", "L1", "L2"):
        if key in d:
            fams[key] = {k: series_from_json(v, ring) for k, v in sorted(d[key].items())}
    if not fams:
        raise SchemaError("L-family file has no L, L1 or L2 block")
    if ("L1" in fams) != ("L2" in fams):
        raise SchemaError("L1 and L2 must be given together")
    if "L1" in fams and set(fams["L1"]) != set(fams["L2"]):
        raise SchemaError("L1 and L2 are indexed by different characters")
    return fams


# eigen-symbols

def _k_to_json(x):
    return [str(c) for c in x]


def eigen_symbol_to_json(e, n_coeffs):
    from .eigen import qexpansion_exact
    K = e.field
    return {"label": e.label, "sign": e.sign, "field": [str(c) for c in K.g],
            "root": scalar_to_json(e.root), "leading_index": e.leading_index,
            "lattice_shift": e.lattice_shift,
            "values": [scalar_to_json(v) for v in e.values],
            "qexp": [_k_to_json(a) for a in qexpansion_exact(e, n_coeffs)]}


def measure_table(mu, r):
    """CSV rows (a, r, value) of the measure on the classes a mod p^r M."""
    D = mu.p ** r * mu.M
    return [(a, r, mu.measure_value(a, r)) for a in range(D)]
