"""Unit tests for decorators"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import pytest

from pwasvar.cli import COMMANDS
from pwasvar.decorators import short_name, get_short_name
from pwasvar.runners import CertificateAuditRunner, RecoveryRunner


def test_short_name_assignment():
    """Test that the short_name decorator assigns the correct short name to a function."""

    # noinspection PyMissingOrEmptyDocstring
    @short_name("smooth-demo")
    def some_function():
        return True

    assert hasattr(some_function, "__short_name__"), "The function should have a '__short_name__' attribute"
    assert some_function.__short_name__ == "smooth-demo", "The short name should be 'smooth-demo'"


def test_get_short_name_with_assigned_name():
    """Test retrieving the short name when it has been assigned."""

    # noinspection PyMissingOrEmptyDocstring
    @short_name("estimate")
    def some_function():
        return True

    assert get_short_name(some_function) == "estimate", "The short name should be 'estimate'"


def test_get_short_name_without_assigned_name():
    """Test that the default function name is returned when no short name is assigned."""

    # noinspection PyMissingOrEmptyDocstring
    def some_function():
        return False

    assert get_short_name(some_function) == "some_function", "Should return the default function name 'some_function'"


def test_get_short_name_of_instance():
    """Instances resolve their short name through the class."""
    runner = CertificateAuditRunner(experiment_name="audit", seed=1, n_replicates=1)
    assert get_short_name(runner) == "certificate_audit"
    assert RecoveryRunner.runner_name() == "recovery"


def test_get_short_name_falls_back_to_str():
    """Objects without a name fall back to str()."""
    assert get_short_name(42) == "42"


@pytest.mark.parametrize("expr", ["", "two words", None])
def test_invalid_short_name(expr):
    """Empty or whitespace-containing names are rejected."""
    with pytest.raises(ValueError):
        short_name(expr)


def test_cli_commands_keyed_by_short_name():
    """Every CLI handler is registered under its short name."""
    assert set(COMMANDS) == {"validate", "simulate", "estimate", "test", "irf", "identify", "smooth-demo"}
    for name, handler in COMMANDS.items():
        assert get_short_name(handler) == name
