"""
Serialization of MUB sets: exponent-form JSON, CSV tables and a pretty text rendering.

JSON is the interchange format and round-trips exactly. Computational bases are written
as one-hot rows. Floats only appear in numeric CSV output.
"""

from __future__ import annotations

import io
import json
from math import isqrt

import numpy as np
import pandas as pd

from .classes import Basis, FormatError, MubError, MubSet
from .verify import VerificationReport

SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
MINUS = "−"


def to_document(S: MubSet) -> dict:
    return {
        "dimension": S.dimension,
        "conductor": S.conductor,
        "method": S.method,
        "field": S.field,
        "ring": S.ring,
        "params": S.params,
        "completeness_claimed": S.completeness_claimed,
        "claimed": list(S.claimed),
        "bases": [
            {
                "label": b.label,
                "kind": b.kind,
                "conductor": b.conductor,
                "vectors": (
                    [list(v.exponents) for v in b]
                    if b.kind == "phase"
                    else np.eye(S.dimension, dtype=int).tolist()
                ),
            }
            for b in S.bases
        ],
        "normalization": "1/sqrt(d)",
    }


def to_json(S: MubSet) -> str:
    return json.dumps(to_document(S), indent=2, ensure_ascii=False) + "\n"


def _require(doc: dict, key: str, kind: type | tuple[type, ...]):
    if key not in doc:
        raise FormatError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise FormatError(f"{key!r} has the wrong type")
    return value


def _is_exponent(e, conductor: int) -> bool:
    return isinstance(e, int) and not isinstance(e, bool) and 0 <= e < conductor


def from_document(doc: dict) -> MubSet:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    d = _require(doc, "dimension", int)
    n = _require(doc, "conductor", int)
    bases = []
    try:
        for entry in _require(doc, "bases", list):
            label = _require(entry, "label", str)
            if any(b.label == label for b in bases):
                raise FormatError(f"duplicate basis label {label!r}")
            kind = _require(entry, "kind", str)
            vectors = _require(entry, "vectors", list)
            if len(vectors) != d or any(not isinstance(v, list) or len(v) != d for v in vectors):
                raise FormatError(f"{label}: expected {d} vectors of length {d}")
            match kind:
                case "phase":
                    conductor = entry.get("conductor", n)
                    if not all(_is_exponent(e, conductor) for v in vectors for e in v):
                        raise FormatError(f"{label}: exponents must be integers in [0, {conductor})")
                    bases.append(Basis.phase(label, vectors, conductor))
                case "computational":
                    if vectors != np.eye(d, dtype=int).tolist():
                        raise FormatError(f"{label}: computational vectors must be the one-hot rows")
                    bases.append(Basis.computational(label, d))
                case _:
                    raise FormatError(f"{label}: unknown kind {kind!r}")
        return MubSet(
            d,
            n,
            _require(doc, "method", str),
            tuple(bases),
            bool(doc.get("completeness_claimed", False)),
            tuple(doc.get("claimed", range(len(bases)))),
            field=doc.get("field"),
            ring=doc.get("ring"),
            params=doc.get("params", {}),
        )
    except FormatError:
        raise
    except (MubError, AssertionError, TypeError) as e:
        raise FormatError(f"inconsistent document: {e}") from e


def from_json(text: str) -> MubSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not JSON: {e}") from e
    return from_document(doc)


def to_frame(S: MubSet, numeric: bool = False) -> pd.DataFrame:
    """Long table, one row per amplitude (exponent mode skips the zeros of computational vectors)."""
    rows = []
    for b in S.bases:
        for k, v in enumerate(b):
            if numeric:
                for position, amp in enumerate(v.amplitudes()):
                    rows.append((b.label, k, position, amp.real, amp.imag))
            elif v.is_computational:
                rows.append((b.label, k, v.index, 0))
            else:
                rows.extend((b.label, k, position, e) for position, e in enumerate(v.exponents))
    columns = ["basis_label", "vector_index", "position"] + (["re", "im"] if numeric else ["exponent"])
    return pd.DataFrame(rows, columns=columns)


def to_csv(S: MubSet, numeric: bool = False) -> str:
    buffer = io.StringIO()
    to_frame(S, numeric).to_csv(buffer, index=False)
    return buffer.getvalue()


def _power(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else symbol + str(k).translate(SUPERSCRIPTS)


def amplitude_renderer(conductor: int):
    """
    Closure turning an exponent over zeta_conductor into text, plus the header line.

    Conductors dividing 4 use i; 2d' with d' odd uses omega = zeta_d' and signs.

    >>> render, header = amplitude_renderer(6)
    >>> header, render(4), render(1)
    ('ω = exp(2πi/3)', 'ω²', '−ω²')
    """
    if 4 % conductor == 0:

        def render(e: int) -> str:
            return ("", "i", MINUS, MINUS + "i")[(e * 4 // conductor) % 4]

        return render, "i = exp(2πi/4)"
    if conductor % 2 == 0 and (conductor // 2) % 2 == 1:
        half = conductor // 2

        def render(e: int) -> str:
            e %= conductor
            if e % 2 == 0:
                return _power("ω", e // 2)
            return MINUS + _power("ω", ((e + half) // 2) % half)

        return render, f"ω = exp(2πi/{half})"

    def render(e: int) -> str:
        return _power("ω", e % conductor)

    return render, f"ω = exp(2πi/{conductor})"


def _norm(d: int) -> str:
    r = isqrt(d)
    return f"/{r}" if r * r == d else f"/√{d}"


def render_vector(exponents, render) -> str:
    """
    >>> render, _ = amplitude_renderer(6)
    >>> render_vector([4, 2, 0], render)
    '(ω²|0⟩+ω|1⟩+|2⟩)/√3'
    """
    terms = []
    for k, e in enumerate(exponents):
        coefficient = render(int(e))
        term = f"{coefficient}|{k}⟩"
        terms.append(term if not terms or term.startswith(MINUS) else "+" + term)
    return "(" + "".join(terms) + ")" + _norm(len(exponents))


def render_pretty(S: MubSet) -> str:
    render, header = amplitude_renderer(S.conductor)
    lines = [f"# {S.method}: d = {S.dimension}, {len(S)} bases, {header}"]
    for b in S.bases:
        if b.kind == "computational":
            vectors = [f"|{v.index}⟩" for v in b]
        else:
            vectors = [render_vector(e, render) for e in b.exponent_matrix(S.conductor)]
        lines.append(f"{b.label}: " + ", ".join(vectors))
    return "\n".join(lines) + "\n"


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def render_report(report: VerificationReport) -> str:
    verdict = "complete" if report.complete else ("claims verified" if report.claims_verified else "VIOLATION")
    lines = [
        f"{report.method} d={report.dimension} [{report.mode}]: "
        f"{report.unbiased_count}/{report.pair_count} pairs unbiased, {verdict}",
        report.to_frame().to_string(),
    ]
    for v in report.violations:
        w = v.witness
        lines.append(f"{v.first} vs {v.second}: vectors {w.alpha}, {w.beta} give |<a|b>| = {w.modulus:.6f}")
    return "\n".join(lines) + "\n"
