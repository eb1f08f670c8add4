"""Тесты для чтения и записи JSON-документов алгебр."""

import io
import json

import pytest

from app.core.exceptions import MalformedInputError, ValidationError
from app.domain import liealg
from app.infrastructure.algebra_io import (
    build_algebra,
    dump_algebra,
    load_algebra,
    parse_document,
    read_algebra,
)

B2_DOC = {"name": "b2", "dim": 2, "brackets": [{"i": 1, "j": 2, "terms": {"2": 1}}]}

# [e1, e2] = e1, [e1, e3] = e1, [e2, e3] = e2 breaks the Jacobi identity
BROKEN_DOC = {
    "name": "broken",
    "dim": 3,
    "brackets": [
        {"i": 1, "j": 2, "terms": {"1": 1}},
        {"i": 1, "j": 3, "terms": {"1": 1}},
        {"i": 2, "j": 3, "terms": {"2": 1}},
    ],
}


def location_of(text: str) -> str:
    with pytest.raises(MalformedInputError) as info:
        load_algebra(text)
    return info.value.details["location"]


class TestParseDocument:
    """Тесты для разбора документа."""

    def test_b2_document(self):
        """Документ b2 даёт ту же алгебру, что и каталог."""
        alg = load_algebra(json.dumps(B2_DOC))
        assert alg.name == "b2"
        assert dict(alg.structure) == dict(liealg.b2().structure)

    def test_rational_coefficients_and_invariants(self):
        """Коэффициенты-строки и инварианты."""
        doc = {
            "dim": 3,
            "brackets": [{"i": 1, "j": 2, "terms": {"3": "1/2"}}],
            "invariants": ["x3"],
        }
        alg = load_algebra(json.dumps(doc))
        assert alg.name == "custom"
        assert alg.constant(0, 1, 2) == pytest.approx(0.5)
        assert alg.constant(1, 0, 2) == -alg.constant(0, 1, 2)
        assert [f.to_text() for f in alg.invariants] == ["1/1 * x3"]

    def test_invalid_json(self):
        """Синтаксическая ошибка с номером строки."""
        assert location_of('{"dim": 2,').startswith("line 1 column")

    @pytest.mark.parametrize(
        "doc, location",
        [
            ({"dim": 0}, "dim"),
            ({"dim": 2, "brackets": [{"i": 0, "j": 2}]}, "brackets[0].i"),
            ({"dim": 2, "extra": 1}, "extra"),
        ],
    )
    def test_schema_errors(self, doc, location):
        """Ошибки схемы указывают путь к полю."""
        assert location_of(json.dumps(doc)) == location

    @pytest.mark.parametrize(
        "bracket, location",
        [
            ({"i": 1, "j": 3, "terms": {"2": 1}}, "brackets[0]"),
            ({"i": 1, "j": 1, "terms": {"2": 1}}, "brackets[0]"),
            ({"i": 1, "j": 2, "terms": {"5": 1}}, "brackets[0].terms.5"),
            ({"i": 1, "j": 2, "terms": {"2": "1/0"}}, "brackets[0].terms.2"),
        ],
    )
    def test_bracket_errors(self, bracket, location):
        """Неверные скобки указывают место ошибки."""
        doc = {"dim": 2, "brackets": [bracket]}
        assert location_of(json.dumps(doc)) == location

    def test_duplicate_bracket(self):
        """Повторно заданная скобка отклоняется."""
        doc = {
            "dim": 2,
            "brackets": [{"i": 1, "j": 2, "terms": {"2": 1}}, {"i": 2, "j": 1, "terms": {"2": 1}}],
        }
        assert location_of(json.dumps(doc)) == "brackets[1].terms.2"

    def test_bad_invariant_text(self):
        """Ошибка в тексте инварианта."""
        doc = {"dim": 2, "invariants": ["x1 +* x2"]}
        assert location_of(json.dumps(doc)).startswith("invariants[0]")

    def test_unchecked_build(self):
        """Алгебра без тождества Якоби загружается без проверки."""
        alg = build_algebra(parse_document(json.dumps(BROKEN_DOC)))
        report = liealg.validate(alg)
        assert not report.ok
        assert report.violation.error_code == "JACOBI_VIOLATION"


class TestReadAlgebra:
    """Тесты для источников ввода."""

    def test_inline_json(self):
        assert read_algebra(json.dumps(B2_DOC)).dim == 2

    def test_stdin(self):
        """Дефис означает стандартный ввод."""
        assert read_algebra("-", io.StringIO(json.dumps(B2_DOC))).name == "b2"
        with pytest.raises(ValidationError):
            read_algebra("-")

    def test_file(self, tmp_path):
        """Чтение из файла."""
        path = tmp_path / "b2.json"
        path.write_text(json.dumps(B2_DOC), encoding="utf-8")
        assert read_algebra(str(path)).name == "b2"
        assert read_algebra(path).name == "b2"

    def test_missing_file(self, tmp_path):
        """Отсутствующий файл."""
        missing = tmp_path / "missing.json"
        with pytest.raises(MalformedInputError) as info:
            read_algebra(str(missing))
        assert info.value.details["location"] == str(missing)


class TestDumpAlgebra:
    """Тесты для записи документа."""

    def test_dump_sl2(self, sl2):
        """Документ sl2 перечитывается в ту же алгебру."""
        doc = dump_algebra(sl2)
        assert doc["dim"] == 3
        assert [(b["i"], b["j"]) for b in doc["brackets"]] == [(1, 2), (1, 3), (2, 3)]
        assert doc["brackets"][0]["terms"] == {"1": "-2/1"}
        reloaded = load_algebra(json.dumps(doc))
        assert dict(reloaded.structure) == dict(sl2.structure)
        assert reloaded.invariants == sl2.invariants
