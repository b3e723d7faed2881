"""Configuration loading, the built-in catalog and JSON serialization."""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import CARTAN, classical, from_cartan
from .errors import ParseError, ValidationError
from .rootdatum import DEFAULT_WEYL_CAP, RootSystem, validate_datum


def _sl2():
    return [(2,), (-2,)], [(1,), (-1,)]


def _sp4():
    return classical("C", 2)


def _a1xa1():
    roots = [(2, 0), (-2, 0), (0, 2), (0, -2)]
    return roots, [tuple(x // 2 for x in r) for r in roots]


def _gl2():
    return [(1, -1), (-1, 1)], [(1, -1), (-1, 1)]


def _ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _neg_ident(n):
    return [[-1 if i == j else 0 for j in range(n)] for i in range(n)]


def _entry(name, rank, data, sigma, lambda_B=None, description=""):
    roots, coroots = data
    return {
        "name": name,
        "description": description,
        "rank": rank,
        "roots": [list(r) for r in roots],
        "coroots": [list(c) for c in coroots],
        "sigma": sigma,
        "lambda_B": list(lambda_B) if lambda_B is not None else [0] * rank,
    }


def _builtin_raw():
    return [
        _entry("sl2-split", 1, _sl2(), [[1]], description="SL(2) with its split torus"),
        _entry("sl2-compact", 1, _sl2(), [[-1]], description="SL(2) with a compact torus"),
        _entry("sp4-split", 2, _sp4(), _ident(2), description="Sp(4) with its split torus"),
        _entry("sp4-swap", 2, _sp4(), [[0, 1], [1, 0]],
               description="Sp(4) with the torus whose involution swaps the coordinates"),
        _entry("sp4-mixed", 2, _sp4(), [[1, 0], [0, -1]],
               description="Sp(4) with a torus split in one coordinate and compact in the other"),
        _entry("sp4-compact", 2, _sp4(), _neg_ident(2), description="Sp(4) with a compact torus"),
        _entry("a1xa1-split", 2, _a1xa1(), _ident(2), description="SL(2) x SL(2), split torus"),
        _entry("gl2-split", 2, _gl2(), _ident(2), description="GL(2) with its split torus"),
        _entry("gl2-elliptic", 2, _gl2(), [[0, 1], [1, 0]],
               description="GL(2) with an elliptic torus (non-trivial split centre)"),
        _entry("b3-split", 3, classical("B", 3), _ident(3), description="Spin(7) type B3, split torus"),
        _entry("g2-split", 2, from_cartan(CARTAN["G2"]), _ident(2), description="G2, split torus"),
        _entry("f4-split", 4, from_cartan(CARTAN["F4"]), _ident(4), description="F4, split torus"),
    ]


# -- configs ---------------------------------------------------------------------------------------


@dataclass
class DatumConfig:
    name: str
    rank: int
    roots: list
    coroots: list
    sigma: list
    lambda_B: list = None
    gamma_u: list = None
    gamma_s: list = None
    borel: list = None
    weyl_cap: int = DEFAULT_WEYL_CAP
    tol: float = 1e-9
    description: str = ""
    datum: object = field(default=None, repr=False, compare=False)


@dataclass
class CatalogEntry:
    config: DatumConfig
    flags: dict

    @property
    def name(self):
        return self.config.name

    @property
    def datum(self):
        return self.config.datum


def _int_matrix(label, rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError(f"{label} must be a list of integer rows")
    out = []
    for row in rows:
        new = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError(f"{label} entry {x!r} is not an integer")
            new.append(x)
        out.append(new)
    return out


def _int_vector(label, v):
    if v is None:
        return None
    return _int_matrix(label, [list(v)])[0]


def parse_rational(x):
    if isinstance(x, bool):
        raise ValidationError(f"{x!r} is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{x!r} is not a rational number") from exc
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12)
    raise ValidationError(f"{x!r} is not a rational number")


def config_from_dict(raw):
    if not isinstance(raw, dict):
        raise ValidationError("config must be a JSON object")
    for key in ("rank", "roots", "coroots", "sigma"):
        if key not in raw:
            raise ValidationError(f"config is missing '{key}'")
    rank = raw["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 0:
        raise ValidationError(f"rank {rank!r} is not a non-negative integer")
    gamma = raw.get("gamma") or {}
    cfg = DatumConfig(
        name=str(raw.get("name", "")),
        rank=rank,
        roots=_int_matrix("roots", raw["roots"]),
        coroots=_int_matrix("coroots", raw["coroots"]),
        sigma=_int_matrix("sigma", raw["sigma"]),
        lambda_B=_int_vector("lambda_B", raw.get("lambda_B")),
        gamma_u=[parse_rational(x) for x in gamma.get("u", [])] or None,
        gamma_s=[parse_rational(x) for x in gamma.get("s", [])] or None,
        borel=_int_vector("borel", raw.get("borel")),
        weyl_cap=int(raw.get("weyl_cap", DEFAULT_WEYL_CAP)),
        tol=float(raw.get("tol", 1e-9)),
        description=str(raw.get("description", "")),
    )
    if cfg.lambda_B is not None and len(cfg.lambda_B) != rank:
        raise ValidationError(f"lambda_B has length {len(cfg.lambda_B)}, expected {rank}")
    cfg.datum = validate_datum(rank, cfg.roots, cfg.coroots, cfg.sigma, cfg.name)
    return cfg


def builtin_names():
    return [e["name"] for e in _builtin_raw()]


def builtin_catalog():
    """Every built-in entry, with capability flags recomputed now."""
    return [entry_from_config(config_from_dict(raw)) for raw in _builtin_raw()]


def entry_from_config(cfg):
    return CatalogEntry(cfg, cfg.datum.capability_flags())


def catalog_entry(name):
    for raw in _builtin_raw():
        if raw["name"] == name:
            return entry_from_config(config_from_dict(raw))
    raise ValidationError(f"unknown catalog entry '{name}'")


def load_config(source):
    """Config from a catalog name, an inline JSON object or a JSON file path."""
    if isinstance(source, dict):
        return config_from_dict(source)
    text = source.strip()
    if text in builtin_names():
        return catalog_entry(text).config
    if not text.startswith("{"):
        if not os.path.exists(text):
            raise ValidationError(f"'{text}' is neither a catalog entry nor a readable file")
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return config_from_dict(raw)


# -- named root systems ----------------------------------------------------------------------------


def named_system(name):
    """Root system by type name: ``A1``..``E6`` from Cartan matrices, ``B``/``C``/``D`` in e-coordinates."""
    key = name.strip().upper().replace("×", "X")
    if key == "A1":
        roots, coroots = _sl2()
    elif key == "A1XA1":
        roots, coroots = _a1xa1()
    elif key[:1] in "BCD" and key[1:].isdigit() and int(key[1:]) >= 2 and key != "D2":
        roots, coroots = classical(key[0], int(key[1:]))
    elif key in CARTAN:
        roots, coroots = from_cartan(CARTAN[key])
    else:
        raise ValidationError(f"unknown root system '{name}'")
    rs = RootSystem(roots, coroots, key)
    rs.dim = len(roots[0])
    return rs


# -- serialization ---------------------------------------------------------------------------------


def jsonable(obj):
    """Exact values stay exact: integers as ints, other rationals as ``"p/q"``, complex as ``{re, im}``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report):
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
