"""Shared utility helpers for happylab commands."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, NamedTuple, Union

from happylab import generators
from happylab.errors import BadParameters, FormatError
from happylab.models import Hypergraph, Instance, to_fraction

DECIMAL_DIGITS = 12


def fmt_rational(x: Fraction) -> str:
    """'3/2', or '2' for integers."""
    return str(Fraction(x))


def fmt_decimal(x: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Round to *digits* significant digits and print without an exponent."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return format(value.normalize(), "f")


def parse_key_values(text: str) -> Dict[str, str]:
    """Parse flat ``key=value`` lines; '#' starts a comment."""
    out: Dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise FormatError(f"Expected key=value, got {body!r}", number)
        key, value = body.split("=", 1)
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# Generator specs
# ---------------------------------------------------------------------------


class GenSpec(NamedTuple):
    name: str
    params: Dict[str, str]


# name -> {key: default}; None marks a required key
GENERATORS: Dict[str, Dict[str, Union[str, None]]] = {
    "gap": {"k": None, "wt": "1", "wb": "0"},
    "rand": {
        "n": None, "k": None, "p": "0.5", "per": "1",
        "wlo": "0", "whi": "10", "seed": "0", "connected": "0",
    },
    "pair": {"w": "10", "eps": "1", "contracted": "0"},
    "hyper": {"nv": None, "ne": None, "k": None, "size": "3", "seed": "0"},
}


def parse_gen_spec(spec: str) -> GenSpec:
    """Split 'name:key=val,key=val' and fill in defaults.

    Examples:
        parse_gen_spec("gap:k=3")  -> GenSpec("gap", {"k": "3", "wt": "1", "wb": "0"})
    """
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in GENERATORS:
        raise BadParameters(
            f"Unknown generator {name!r}; expected one of {', '.join(sorted(GENERATORS))}"
        )
    known = GENERATORS[name]
    params: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        if "=" not in item:
            raise BadParameters(f"Expected key=value in generator spec, got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in known:
            raise BadParameters(
                f"Unknown key {key!r} for generator {name!r}; expected {', '.join(known)}"
            )
        params[key] = value
    for key, default in known.items():
        if key not in params:
            if default is None:
                raise BadParameters(f"Generator {name!r} needs {key}=...")
            params[key] = default
    return GenSpec(name, params)


def _int(params: Dict[str, str], key: str) -> int:
    try:
        return int(params[key])
    except ValueError:
        raise BadParameters(f"{key} must be an integer, got {params[key]!r}") from None


def _rational(params: Dict[str, str], key: str) -> Fraction:
    try:
        return to_fraction(params[key])
    except ValueError:
        raise BadParameters(f"{key} must be a rational number, got {params[key]!r}") from None


def generate(spec: str) -> Union[Instance, Hypergraph]:
    """Build the instance (or hypergraph) a generator spec describes."""
    name, params = parse_gen_spec(spec)
    if name == "gap":
        return generators.gen_gap_instance(
            _int(params, "k"), _rational(params, "wt"), _rational(params, "wb")
        )
    if name == "rand":
        return generators.gen_random(
            n=_int(params, "n"),
            k=_int(params, "k"),
            edge_probability=float(_rational(params, "p")),
            weight_range=(_int(params, "wlo"), _int(params, "whi")),
            precolored_per_label=_int(params, "per"),
            seed=_int(params, "seed"),
            connected=_int(params, "connected") != 0,
        )
    if name == "pair":
        pair = generators.gen_contraction_pair(_rational(params, "w"), _rational(params, "eps"))
        return pair.contracted if _int(params, "contracted") else pair.original
    return generators.random_hypergraph(
        num_vertices=_int(params, "nv"),
        num_edges=_int(params, "ne"),
        k=_int(params, "k"),
        max_size=_int(params, "size"),
        seed=_int(params, "seed"),
    )
