"""Deterministic CSV rendering and the numeric table container."""

import math

import numpy as np
import pytest

from cdrecho import CsvWriteError, Table, format_float, render_csv, write_csv


class TestFormatFloat:
    def test_twelve_significant_digits(self):
        assert format_float(math.pi) == "3.14159265359"
        assert format_float(2.0 / 3.0) == "0.666666666667"

    def test_short_forms(self):
        assert format_float(1.0) == "1"
        assert format_float(-0.5) == "-0.5"
        assert format_float(0.0) == "0"
        assert format_float(1e-20) == "1e-20"
        assert format_float(2.5e9) == "2500000000"

    def test_rejects_non_finite(self):
        for bad in (math.nan, math.inf, -math.inf):
            with pytest.raises(CsvWriteError) as exc_info:
                format_float(bad)
            assert exc_info.value.code == "NON_FINITE_VALUE"

    def test_error_is_a_value_error(self):
        assert issubclass(CsvWriteError, ValueError)


class TestTable:
    def test_column_lookup(self):
        t = Table(columns=("x", "y"), rows=np.array([[1.0, 2.0], [3.0, 4.0]]))
        np.testing.assert_array_equal(t.column("y"), [2.0, 4.0])
        with pytest.raises(ValueError):
            t.column("z")

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Table(columns=("x",), rows=np.zeros((2, 2)))
        with pytest.raises(ValueError):
            Table(columns=("x", "y"), rows=np.zeros(4))

    def test_rows_are_read_only_copy(self):
        src = np.array([[1.0, 2.0]])
        t = Table(columns=("x", "y"), rows=src)
        src[0, 0] = 99.0
        assert t.rows[0, 0] == 1.0
        with pytest.raises(ValueError):
            t.rows[0, 0] = 5.0

    def test_meta_stringified(self):
        t = Table(columns=("x",), rows=np.zeros((1, 1)), meta=(("n", 3), ("tag", "a")))
        assert t.meta == (("n", "3"), ("tag", "a"))


class TestRenderCsv:
    def test_exact_layout_with_meta(self):
        t = Table(
            columns=("x", "y"),
            rows=np.array([[0.5, 1.0], [1.5, -2.25]]),
            meta=(("stage", "r1"), ("phi_d_pi", "0.1")),
        )
        assert render_csv(t) == (
            "# stage=r1 phi_d_pi=0.1\n"
            "x,y\n"
            "0.5,1\n"
            "1.5,-2.25\n"
        )

    def test_no_meta_line_when_empty(self):
        t = Table(columns=("x",), rows=np.array([[1.0]]))
        assert render_csv(t) == "x\n1\n"

    def test_lf_only(self):
        t = Table(columns=("x",), rows=np.array([[1.0], [2.0]]))
        assert "\r" not in render_csv(t)

    def test_non_finite_cell_refused(self):
        t = Table(columns=("x",), rows=np.array([[math.inf]]))
        with pytest.raises(CsvWriteError):
            render_csv(t)


class TestWriteCsv:
    def test_bytes_match_render_and_are_stable(self, tmp_path):
        t = Table(
            columns=("a", "b"),
            rows=np.array([[math.pi, 1e-7], [1.0 / 3.0, 12345.678]]),
            meta=(("k", "v"),),
        )
        p1 = tmp_path / "one.csv"
        p2 = tmp_path / "two.csv"
        write_csv(t, p1)
        write_csv(t, p2)
        data = p1.read_bytes()
        assert data == p2.read_bytes()
        assert data == render_csv(t).encode("ascii")
        assert b"\r" not in data

    def test_values_survive_reparse_to_twelve_digits(self, tmp_path):
        rng = np.random.default_rng(77)
        rows = rng.standard_normal((20, 3)) * 10.0 ** rng.integers(-6, 6, (20, 3))
        t = Table(columns=("a", "b", "c"), rows=rows)
        path = tmp_path / "t.csv"
        write_csv(t, path)
        back = np.genfromtxt(path, delimiter=",", skip_header=1)
        np.testing.assert_allclose(back, rows, rtol=1e-11)
