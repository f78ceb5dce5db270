"""Kernel selection: the compiled extension when importable, else numpy."""

from contextlib import contextmanager

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _fallback


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


def backend_name():
    return "compiled" if _active is _compiled else "python"


def set_backend(name):
    global _active
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available; build the extension first")
        _active = _compiled
    elif name == "python":
        _active = _fallback
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name):
    previous = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def divide_sparse_mod(num, exps, coefs, m, reduce_each):
    return _active.divide_sparse_mod(num, exps, coefs, m, reduce_each)
