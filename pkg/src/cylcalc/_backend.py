"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CYLCALC_BACKEND=python`` to force the fallback at import time, or call
:func:`use` at runtime (the Gröbner cache is cleared on every switch).
"""

import importlib
import os

from . import _kernels_py

_listeners = []


def _load(name):
    if name == "python":
        return _kernels_py
    if name == "cython":
        return importlib.import_module("cylcalc._kernels")
    raise ValueError(f"unknown backend {name!r}")


def available():
    names = ["python"]
    try:
        _load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def _initial():
    requested = os.environ.get("CYLCALC_BACKEND", "").strip().lower()
    if requested:
        return _load(requested)
    try:
        return _load("cython")
    except ImportError:
        return _kernels_py


kernels = _initial()


def use(name):
    global kernels
    kernels = _load(name)
    for fn in _listeners:
        fn()
    return kernels.BACKEND


def current():
    return kernels.BACKEND


def on_switch(fn):
    _listeners.append(fn)
    return fn
