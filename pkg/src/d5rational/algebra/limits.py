"""Degree caps. ``SASANO_MAX_DEGREE`` overrides them as ``T`` or ``T,A``."""

import os

DEFAULT_T_DEGREE = 64
DEFAULT_ALPHA_DEGREE = 16


_cache = {}


def caps():
    raw = os.environ.get("SASANO_MAX_DEGREE", "").strip()
    hit = _cache.get(raw)
    if hit is not None:
        return hit
    _cache[raw] = value = _parse(raw)
    return value


def _parse(raw):
    if not raw:
        return DEFAULT_T_DEGREE, DEFAULT_ALPHA_DEGREE
    parts = [p.strip() for p in raw.split(",")]
    t_cap = int(parts[0])
    a_cap = int(parts[1]) if len(parts) > 1 and parts[1] else DEFAULT_ALPHA_DEGREE
    return t_cap, a_cap


def max_t_degree():
    return caps()[0]


def max_alpha_degree():
    return caps()[1]
