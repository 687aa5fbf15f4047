"""
Decorators that attach a short name to a function or class.

Short names label CLI subcommands (e.g. ``smooth-demo`` for the smoothing demo handler), experiment
runners (used as the prefix of every artifact file they write) and estimation algorithms recorded in
results.
"""

# Authors: pwasvar contributors
# License: BSD 3-clause

from typing import Callable, Any


def short_name(expr: str) -> Callable:
    """
    Decorator to assign a short name to a function or class.

    Parameters
    ----------
    expr : str
        The short name. Must be a non-empty string without whitespace.

    Returns
    -------
    Callable
        A decorator that sets ``__short_name__`` on its argument and returns it unchanged.

    Raises
    ------
    ValueError
        If `expr` is empty or contains whitespace.
    """
    if not isinstance(expr, str) or not expr or any(ch.isspace() for ch in expr):
        raise ValueError(f"short name must be a non-empty string without whitespace. Got {expr!r}")

    def short_name_func_applicator(func: Callable) -> Callable:
        """Assign a short name to the given function."""
        func.__short_name__ = expr
        return func

    return short_name_func_applicator


def get_short_name(v: Any) -> str:
    """
    Retrieve the short name of a function or class, falling back to its ``__name__``.

    Parameters
    ----------
    v : Any
        Function, class or instance. Instances resolve through their class.

    Returns
    -------
    str
        The assigned short name, else ``__name__``, else ``str(v)``.
    """
    if hasattr(v, "__short_name__"):
        return v.__short_name__
    if hasattr(v, "__name__"):
        return v.__name__
    if hasattr(type(v), "__short_name__"):
        return type(v).__short_name__
    return str(v)
