"""JSON documents for quasi-norms and real profiles.

Norm document::

    {"group": [9],
     "norm": {"type": "discrete"}}                       # or "zero", "infty"
    {"group": [2, 3],
     "norm": {"type": "table", "values": {"(0,0)": "0", "(1,0)": "1/2", ...}}}
    {"group": [6],
     "norm": {"type": "random", "seed": 7, "pool": ["1", "2", "inf"]}}

An optional ``"domain"`` key places the table on a subgroup
(``{"subgroup": ["(2)"]}``) or on the characters of a subgroup
(``{"subgroup_characters": ["(2)"]}``), both named by generators.

Real profile document::

    {"family": "power", "alpha": 0.5}
    {"family": "linear", "slope": 2}
    {"family": "log1p", "scale": 1}
    {"family": "table", "points": [[0, 0], [1, 1]], "slope": 0.5}
"""

import hashlib
import json
import re

from . import extended as ev
from .continuous import RealNorm
from .errors import InputError
from .groups import CharacterClasses, FiniteAbelianGroup, Subgroup, subgroup_generate
from .quasinorm import QuasiNorm, discrete_norm, infty_qn, random_quasinorm, validate, zero_qn

__all__ = ["parse_element", "format_element", "load_norm", "norm_document", "load_real_norm",
           "real_norm_document", "digest", "read_json"]

_ELEMENT = re.compile(r"^\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)$")


def parse_element(s):
    if not isinstance(s, str) or not _ELEMENT.match(s.strip()):
        raise InputError(f"malformed element key {s!r}; expected '(x1,...,xk)'")
    return tuple(int(v) for v in s.strip()[1:-1].split(","))


def format_element(x):
    return "(" + ",".join(str(v) for v in x) + ")"


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def digest(obj):
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _group(doc):
    if not isinstance(doc, dict) or "group" not in doc:
        raise InputError("document needs a 'group' moduli list")
    moduli = doc["group"]
    if not isinstance(moduli, list) or not all(isinstance(n, int) for n in moduli):
        raise InputError("'group' must be a list of integers")
    return FiniteAbelianGroup(moduli)


def _domain(doc, G):
    spec = doc.get("domain")
    if spec is None:
        return G
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InputError("'domain' must be {'subgroup': [...]} or {'subgroup_characters': [...]}")
    (kind, gens), = spec.items()
    H = subgroup_generate(G, [parse_element(g) for g in gens])
    if kind == "subgroup":
        return H
    if kind == "subgroup_characters":
        return H.dual
    raise InputError(f"unknown domain kind {kind!r}")


def load_norm(doc, check=True):
    """Parse a norm document into a validated :class:`QuasiNorm`."""
    G = _group(doc)
    D = _domain(doc, G)
    norm = doc.get("norm")
    if not isinstance(norm, dict) or "type" not in norm:
        raise InputError("document needs a 'norm' object with a 'type'")
    kind = norm["type"]
    if kind in ("discrete", "zero", "infty"):
        if D is not G:
            raise InputError(f"'{kind}' norms are only defined on whole groups here")
        q = {"discrete": discrete_norm, "zero": zero_qn, "infty": infty_qn}[kind](G)
    elif kind == "table":
        values = norm.get("values")
        if not isinstance(values, dict):
            raise InputError("table norm needs a 'values' mapping")
        table = {}
        for key, val in values.items():
            if not isinstance(val, str):
                raise InputError(f"value for {key} must be a string like '3/4' or 'inf'")
            x = parse_element(key)
            if len(x) != len(G.moduli):
                raise InputError(f"element {key} does not match group of rank {len(G.moduli)}")
            table[x] = ev.parse(val)
        if isinstance(D, CharacterClasses):
            table = {D.canonical(x): v for x, v in table.items()}
        q = QuasiNorm(D, table)
    elif kind == "random":
        if D is not G:
            raise InputError("random norms are only generated on whole groups")
        if not isinstance(norm.get("seed"), int):
            raise InputError("random norm needs an integer 'seed'")
        q = random_quasinorm(G, norm["seed"], norm.get("pool", ["1"]))
    else:
        raise InputError(f"unknown norm type {kind!r}")
    if check:
        res = validate(q)
        if not res:
            where = ", ".join(format_element(w) for w in res.witness)
            raise InputError(f"not a quasi-norm: axiom {res.axiom} violated at {where}")
    return q


def norm_document(q):
    """Serialise a quasi-norm as a table document (re-parses with :func:`load_norm`)."""
    D = q.domain
    doc = {"group": list(D.moduli)}
    if isinstance(D, Subgroup):
        doc["domain"] = {"subgroup": [format_element(g) for g in (D.generators or D.elements)]}
    elif isinstance(D, CharacterClasses):
        H = D.subgroup
        doc["domain"] = {"subgroup_characters": [format_element(g) for g in (H.generators or H.elements)]}
    doc["norm"] = {"type": "table",
                   "values": {format_element(x): ev.format_value(v) for x, v in q.items()}}
    return doc


def load_real_norm(doc):
    if not isinstance(doc, dict) or "family" not in doc:
        raise InputError("real norm document needs a 'family'")
    fam = doc["family"]
    try:
        if fam == "power":
            w = RealNorm.power(float(doc["alpha"]))
        elif fam == "linear":
            w = RealNorm.linear(float(doc["slope"]))
        elif fam == "log1p":
            w = RealNorm.log1p(float(doc.get("scale", 1.0)))
        elif fam == "table":
            w = RealNorm.table(doc["points"], float(doc["slope"]))
        else:
            raise InputError(f"unknown family {fam!r}")
    except KeyError as exc:
        raise InputError(f"family {fam!r} needs parameter {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad parameters for family {fam!r}: {exc}") from exc
    if "factor" in doc:
        w = w.scaled(float(doc["factor"]))
    return w.validate()


def real_norm_document(w):
    doc = {"family": w.family, **w.params}
    if w.factor != 1:
        doc["factor"] = w.factor
    return doc
