"""Plain-text dumps of eigen-symbols so repeated CLI runs skip linear algebra.

Format (version 1), one item per line:

    muforge-eigensymbol 1
    curve a1,a2,a3,a4,a6:N
    sign s
    p p-or-none
    scale num/den
    functional n
    num den              (n lines, one per free Manin generator)

The space itself is rebuilt on load; only the eigen-functional is stored.
"""
from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from pathlib import Path

from ..curves import CurveData, parse_curve
from .symbol import EigenSymbol, space_for

HEADER = "muforge-eigensymbol 1"


def cache_dir(explicit=None):
    d = explicit or os.environ.get("MUFORGE_CACHE")
    return Path(d) if d else None


def _key(E: CurveData, sign: int, p) -> str:
    tag = "_".join(str(a) for a in E.ainvs).replace("-", "m")
    return f"{tag}_N{E.conductor}_s{'p' if sign > 0 else 'm'}_p{p}.msym"


def dumps(sym: EigenSymbol) -> str:
    lines = [HEADER, f"curve {sym.curve.spec_string()}", f"sign {sym.sign}",
             f"p {sym.p}", f"scale {sym.normalization_scale.numerator}/{sym.normalization_scale.denominator}",
             f"functional {len(sym.functional)}"]
    lines += [f"{x.numerator} {x.denominator}" for x in sym.functional]
    return "\n".join(lines) + "\n"


def loads(text: str, curve: CurveData = None) -> EigenSymbol:
    rows = text.splitlines()
    if not rows or rows[0] != HEADER:
        raise ValueError("not a version-1 eigen-symbol dump")
    fields = dict(r.split(" ", 1) for r in rows[1:6] if " " in r)
    missing = {"curve", "sign", "p", "scale", "functional"} - set(fields)
    if missing:
        raise ValueError(f"dump is missing fields {sorted(missing)}")
    E = curve or parse_curve(fields["curve"])
    if E.spec_string() != fields["curve"]:
        raise ValueError("dump belongs to a different curve")
    n = int(fields["functional"])
    func = tuple(Fraction(int(a), int(b)) for a, b in (r.split() for r in rows[6:6 + n]))
    num, den = fields["scale"].split("/")
    p = None if fields["p"] == "None" else int(fields["p"])
    B = space_for(E.conductor)
    if B.dimension != n:
        raise ValueError("dump dimension does not match the rebuilt space")
    return EigenSymbol(E, int(fields["sign"]), func, B, Fraction(int(num), int(den)), p)


def load_or_build(E: CurveData, sign: int, p: int, directory=None, builder=None) -> EigenSymbol:
    """Cached normalized symbol; ``builder`` computes it on a miss."""
    d = cache_dir(directory)
    if d is not None:
        path = d / _key(E, sign, p)
        if path.exists():
            try:
                return loads(path.read_text(), E)
            except (ValueError, KeyError):
                pass
    sym = builder(E, sign, p)
    if d is not None:
        d.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d)
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(sym))
        os.replace(tmp, d / _key(E, sign, p))
    return sym
