import sys
from pathlib import Path

src = str((Path(__file__).parent / "../src").resolve())
sys.path.insert(0, src)

import json
from io import StringIO
from unittest import TestCase

import numpy as np
import pandas as pd
from pytest import fixture, raises

from mubs.classes import FormatError
from mubs.constructions import mub_alternative, mub_gf, mub_gr, mub_master, mub_w4
from mubs.export import (
    amplitude_renderer,
    from_json,
    render_pretty,
    render_report,
    render_vector,
    report_to_json,
    to_csv,
    to_document,
    to_frame,
    to_json,
)
from mubs.verify import check_mub_set

SETS = [
    lambda: mub_master(2),
    lambda: mub_master(3),
    lambda: mub_master(6),
    lambda: mub_alternative(2),
    lambda: mub_alternative(5),
    lambda: mub_gf(3, 2),
    lambda: mub_gf(3, 2, (2, 1, 1)),
    lambda: mub_gr(2),
    lambda: mub_gr(3),
    lambda: mub_w4(),
]


@fixture
def qutrit_json():
    return to_json(mub_master(3))


class Test_Json(TestCase):
    def test_round_trip(self):
        for make in SETS:
            S = make()
            text = to_json(S)
            back = from_json(text)
            assert back.same_bases(S), S
            assert to_json(back) == text
            assert back.labels == S.labels
            assert back.claimed == S.claimed

    def test_document_layout(self):
        doc = to_document(mub_master(2))
        assert doc["dimension"] == 2 and doc["conductor"] == 4
        assert doc["bases"][0]["vectors"] == [[0, 0], [2, 0]]
        assert doc["bases"][2] == {"label": "B_2", "kind": "computational", "conductor": 1, "vectors": [[1, 0], [0, 1]]}
        assert doc["normalization"] == "1/sqrt(d)"

    def test_field_metadata_survives(self):
        back = from_json(to_json(mub_gf(3, 2, (2, 1, 1))))
        assert back.field["modulus"] == [2, 1, 1]
        assert from_json(to_json(mub_gr(2))).ring["teichmuller"] == ["0", "ξ", "3+3ξ", "1"]


def corrupt(text: str, edit) -> str:
    doc = json.loads(text)
    edit(doc)
    return json.dumps(doc)


def test_not_json():
    with raises(FormatError):
        from_json("{not json")
    with raises(FormatError):
        from_json("[1, 2]")


def test_missing_and_mistyped_keys(qutrit_json):
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d.pop("dimension")))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d.update(dimension="3")))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d.update(dimension=True)))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][0].pop("label")))


def test_bad_vectors(qutrit_json):
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][0]["vectors"].pop()))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][1]["vectors"][0].__setitem__(0, 6)))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][1]["vectors"][0].__setitem__(0, 1.5)))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][3]["vectors"].reverse()))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][0].update(kind="fourier")))
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][1]["vectors"][0].__setitem__(0, True)))


def test_duplicate_labels(qutrit_json):
    with raises(FormatError, match="duplicate"):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][1].update(label="B_0")))


def test_inconsistent_conductor(qutrit_json):
    # a basis conductor that does not divide the set conductor
    with raises(FormatError):
        from_json(corrupt(qutrit_json, lambda d: d["bases"][0].update(conductor=7)))


class Test_Tables(TestCase):
    def test_exponent_frame(self):
        frame = to_frame(mub_master(3))
        assert list(frame.columns) == ["basis_label", "vector_index", "position", "exponent"]
        # 3 phase bases of 9 entries, 3 one-hot vectors
        assert len(frame) == 3 * 9 + 3
        row = frame[(frame.basis_label == "B_0") & (frame.vector_index == 1)]
        assert row.exponent.tolist() == [4, 2, 0]

    def test_numeric_csv(self):
        text = to_csv(mub_master(2), numeric=True)
        frame = pd.read_csv(StringIO(text))
        assert list(frame.columns) == ["basis_label", "vector_index", "position", "re", "im"]
        assert len(frame) == 3 * 2 * 2
        z = frame.re.to_numpy() + 1j * frame.im.to_numpy()
        np.testing.assert_allclose(np.abs(z[:8]), 1 / np.sqrt(2), atol=1e-12)

    def test_csv_header(self):
        assert to_csv(mub_gr(1)).splitlines()[0] == "basis_label,vector_index,position,exponent"


class Test_Pretty(TestCase):
    def test_qutrit(self):
        text = render_pretty(mub_master(3))
        lines = text.splitlines()
        assert lines[0] == "# master: d = 3, 4 bases, ω = exp(2πi/3)"
        assert "(ω²|0⟩+ω|1⟩+|2⟩)/√3" in lines[1]
        assert lines[-1] == "B_3: |0⟩, |1⟩, |2⟩"

    def test_ring(self):
        lines = render_pretty(mub_gr(1)).splitlines()
        assert lines[0].endswith("i = exp(2πi/4)")
        assert lines[1] == "B_0: (|0⟩+|1⟩)/√2, (|0⟩−|1⟩)/√2"
        assert lines[2] == "B_1: (|0⟩+i|1⟩)/√2, (|0⟩−i|1⟩)/√2"

    def test_renderers(self):
        render, header = amplitude_renderer(5)
        assert header == "ω = exp(2πi/5)"
        assert [render(e) for e in range(5)] == ["", "ω", "ω²", "ω³", "ω⁴"]
        render, _ = amplitude_renderer(2)
        assert (render(0), render(1)) == ("", "−")
        render, _ = amplitude_renderer(10)
        # zeta_10 = -zeta_5^3
        assert render(1) == "−ω³"
        assert render_vector([0, 0, 0, 0], amplitude_renderer(4)[0]) == "(|0⟩+|1⟩+|2⟩+|3⟩)/2"


class Test_Reports(TestCase):
    def test_json_report(self):
        doc = json.loads(report_to_json(check_mub_set(mub_alternative(2))))
        assert doc["pairs_total"] == 3
        assert doc["violations"][0]["witness"]["beta"] == 1

    def test_text_report(self):
        text = render_report(check_mub_set(mub_alternative(2)))
        assert "2/3 pairs unbiased, VIOLATION" in text.splitlines()[0]
        assert "B_0 vs B_1: vectors 0, 1 give |<a|b>| = 1.000000" in text
        assert "complete" in render_report(check_mub_set(mub_master(3))).splitlines()[0]
