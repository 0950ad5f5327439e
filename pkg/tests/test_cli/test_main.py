"""Tests for the command-line entry point and the command implementations."""

from __future__ import annotations

from pathlib import Path

import pytest

from omega_pushdown.automaton.model import OmegaPda
from omega_pushdown.cli.commands import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    cmd_accept,
    cmd_count,
    cmd_enumerate,
    cmd_verify,
    read_word,
)
from omega_pushdown.config import Settings
from omega_pushdown.main import main

E3_SPEC = """\
states 1
sigma a
initial-stack p
I 1 eps
P 1 eps
trans 1 p a 1 eps
trans 1 p a 1 q
trans 1 q eps 1 eps
"""


@pytest.fixture
def e1_path(tmp_path: Path, e1_spec_text: str) -> Path:
    path = tmp_path / "e1.pda"
    path.write_text(e1_spec_text, encoding="utf-8")
    return path


@pytest.fixture
def e2_path(tmp_path: Path, e1_spec_text: str) -> Path:
    path = tmp_path / "e2.pda"
    path.write_text(e1_spec_text + "repeated 1\n", encoding="utf-8")
    return path


@pytest.fixture
def e3_path(tmp_path: Path) -> Path:
    path = tmp_path / "e3.pda"
    path.write_text(E3_SPEC, encoding="utf-8")
    return path


def test_read_word() -> None:
    """Test the eps token for the empty word."""
    assert read_word("eps") == ""
    assert read_word("ab") == "ab"


@pytest.mark.parametrize(("word", "expected"), [("abb", "1\n"), ("ab", "0\n"), ("eps", "0\n")])
def test_accept(e1_path: Path, capsys: pytest.CaptureFixture[str], word: str, expected: str) -> None:
    """Test finite acceptance for E1."""
    assert main(["accept", str(e1_path), word]) == EXIT_OK
    assert capsys.readouterr().out == expected


def test_count(e3_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that E3 reads "a" in two ways."""
    assert main(["count", str(e3_path), "a"]) == EXIT_OK
    assert capsys.readouterr().out == "2\n"


def test_count_infinite(pda_e4: OmegaPda) -> None:
    """Test that E4 prints inf for "b"."""
    assert cmd_count(pda_e4, "b").text == "inf\n"


@pytest.mark.parametrize(("u", "v", "expected"), [("eps", "a", "1\n"), ("eps", "b", "0\n"), ("a", "ab", "1\n")])
def test_accept_omega(
    e2_path: Path, capsys: pytest.CaptureFixture[str], u: str, v: str, expected: str
) -> None:
    """Test lasso acceptance for E2."""
    assert main(["accept-omega", str(e2_path), u, v]) == EXIT_OK
    assert capsys.readouterr().out == expected


def test_enumerate(e1_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the words of E1 up to length 5, shortest first."""
    assert main(["enumerate", str(e1_path), "5"]) == EXIT_OK
    assert capsys.readouterr().out == "b\t1\nabb\t1\naabbb\t1\nababb\t1\n"


def test_enumerate_rejects_negative_length(pda_e1: OmegaPda) -> None:
    """Test argument checks."""
    with pytest.raises(ValueError, match="non-negative"):
        cmd_enumerate(pda_e1, -1)


def test_grammar(e1_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the grammar command with and without trimming."""
    assert main(["grammar", str(e1_path)]) == EXIT_OK
    full = capsys.readouterr().out
    assert full.splitlines()[:3] == ["#semiring boolean", "#l 0", "#repeated-z"]
    assert "z0 -> [1,p]" in full
    assert main(["grammar", str(e1_path), "--trim"]) == EXIT_OK
    trimmed = capsys.readouterr().out
    assert "z0" not in trimmed
    assert "[1,p,1] -> b" in trimmed


def test_invalid_spec_exits_with_input_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that a broken spec file is reported on stderr."""
    path = tmp_path / "broken.pda"
    path.write_text("states 1\nrepeated 2\ninitial-stack p\n", encoding="utf-8")
    assert main(["accept", str(path), "a"]) == EXIT_INPUT_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "line 2: repeated bound out of range" in captured.err


def test_missing_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that an unreadable path is an input error."""
    assert main(["accept", str(tmp_path / "nope.pda"), "a"]) == EXIT_INPUT_ERROR
    assert "omega-pushdown:" in capsys.readouterr().err


def test_foreign_letter(e1_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that a word outside Σ is an input error."""
    assert main(["accept", str(e1_path), "abc"]) == EXIT_INPUT_ERROR
    assert "not in sigma" in capsys.readouterr().err


def test_empty_period(e2_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that v = eps is refused."""
    assert main(["accept-omega", str(e2_path), "a", "eps"]) == EXIT_INPUT_ERROR
    assert "nonempty" in capsys.readouterr().err


def test_engine_errors_are_not_input_errors(e3_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that a failure past input validation propagates instead of exiting with 2."""

    def broken(pda: OmegaPda, word: str) -> None:
        raise ValueError("engine failure")

    monkeypatch.setattr("omega_pushdown.main.cmd_count", broken)
    with pytest.raises(ValueError, match="engine failure"):
        main(["count", str(e3_path), "a"])


def test_accept_over_nat_inf_uses_support(pda_e3: OmegaPda) -> None:
    """Test that acceptance ignores multiplicities."""
    assert cmd_accept(pda_e3.counting_view(), "a").text == "1\n"


def test_verify_single_suite(settings: Settings) -> None:
    """Test one suite through the command layer."""
    output = cmd_verify(settings, "semiring-laws", seed=3)
    assert output.status == EXIT_OK
    assert output.text.startswith("semiring-laws: ok")


def test_verify_with_spec(settings: Settings, pda_e3: OmegaPda) -> None:
    """Test that a user automaton replaces the generated ones."""
    output = cmd_verify(settings, "counting", pda=pda_e3)
    assert output.status == EXIT_OK
    assert "counting: ok" in output.text
