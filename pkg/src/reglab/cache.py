"""Content-addressed Groebner basis cache.

Key = stable hash of (ring spec, sorted canonical generator renderings);
value = JSON ``{"basis": [...], "stats": {...}}``.  The directory comes from
``REGLAB_CACHE`` (default ``./.reglab-cache``).
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Optional, Sequence

from .errors import Budget
from .groebner import buchberger
from .poly import Polynomial, parse_polynomial, render
from .rings import RingSpec


def cache_dir(override: Optional[str] = None) -> Path:
    if override:
        return Path(override)
    return Path(os.environ.get("REGLAB_CACHE", ".reglab-cache"))


def cache_key(ring: RingSpec, gens: Sequence[Polynomial]) -> str:
    payload = json.dumps(
        {"ring": ring.to_json(), "gens": sorted(render(g) for g in gens)},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def load(ring: RingSpec, gens: Sequence[Polynomial], directory: Optional[str] = None):
    path = cache_dir(directory) / f"{cache_key(ring, gens)}.json"
    if not path.is_file():
        return None
    data = json.loads(path.read_text())
    return [parse_polynomial(ring, s) for s in data["basis"]]

def store(
    ring: RingSpec,
    gens: Sequence[Polynomial],
    basis: Sequence[Polynomial],
    stats: Optional[dict] = None,
    directory: Optional[str] = None,
):
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"{cache_key(ring, gens)}.json"
    tmp = path.with_suffix(".tmp")
    tmp.write_text(
        json.dumps(
            {"basis": [render(g) for g in basis], "stats": stats or {}}, indent=0
        )
    )
    tmp.replace(path)


def buchberger_cached(
    gens: Sequence[Polynomial],
    budget: Optional[Budget] = None,
    directory: Optional[str] = None,
):
    """Reduced GB through the cache; returns (basis, hit)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return [], False
    ring = gens[0].ring
    cached = load(ring, gens, directory)
    if cached is not None:
        return cached, True
    basis = buchberger(list(gens), budget=budget)
    store(ring, gens, basis, {"size": len(basis)}, directory)
    return basis, False


def entries(directory: Optional[str] = None) -> list:
    d = cache_dir(directory)
    if not d.is_dir():
        return []
    out = []
    for p in sorted(d.glob("*.json")):
        try:
            data = json.loads(p.read_text())
            out.append(
                {"key": p.stem, "size": data.get("stats", {}).get("size"),
                 "bytes": p.stat().st_size}
            )
        except (json.JSONDecodeError, OSError):
            continue
    return out


def clear(directory: Optional[str] = None) -> int:
    d = cache_dir(directory)
    if not d.is_dir():
        return 0
    n = 0
    for p in d.glob("*.json"):
        p.unlink()
        n += 1
    return n
