"""Simplicial fans: JSON parsing, validation and the face complex P."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Any, List, Sequence, Tuple

from .exactlinalg import IntegerMatrix, as_integer_matrix, determinant, rank
from .simplicial import SimplicialComplex, full_mask, mask_of

log = logging.getLogger("toric_cohom")


class FanFormatError(ValueError):
    """The fan document is malformed or describes an inadmissible ray set."""


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Tuple[int, ...], ...]
    name: str = field(default="fan", compare=False)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> IntegerMatrix:
        """The n×d matrix whose row ρ is the ray vector u_ρ."""
        return as_integer_matrix(self.rays, cols=self.dim)

    def cone_masks(self) -> Tuple[int, ...]:
        return tuple(mask_of(c) for c in self.max_cones)


@dataclass
class FanDiagnostics:
    is_simplicial: bool
    spans: bool
    ridge_counts_ok: bool
    messages: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_simplicial and self.spans and self.ridge_counts_ok


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_fan(text: str, name: str = "fan") -> Fan:
    """Parse ``{"dim": d, "rays": [...], "max_cones": [...]}``.

    Rays must already be primitive; normalizing them silently would change
    which divisor the user meant.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanFormatError(f"malformed fan document: {exc}") from exc
    if not isinstance(doc, dict):
        raise FanFormatError("malformed fan document: expected a JSON object")
    missing = [k for k in ("dim", "rays", "max_cones") if k not in doc]
    if missing:
        raise FanFormatError(f"malformed fan document: missing {', '.join(missing)}")

    d = doc["dim"]
    if not _is_int(d) or d <= 0:
        raise FanFormatError(f"malformed fan document: dim must be a positive integer, got {d!r}")
    raw_rays = doc["rays"]
    raw_cones = doc["max_cones"]
    if not isinstance(raw_rays, list) or not isinstance(raw_cones, list):
        raise FanFormatError("malformed fan document: rays and max_cones must be lists")

    rays: List[Tuple[int, ...]] = []
    for k, ray in enumerate(raw_rays):
        if not isinstance(ray, list) or not all(_is_int(x) for x in ray):
            raise FanFormatError(f"ray {k}: expected a list of integers, got {ray!r}")
        if len(ray) != d:
            raise FanFormatError(f"ray {k}: wrong length {len(ray)} (dim is {d})")
        g = 0
        for x in ray:
            g = gcd(g, x)
        if g == 0:
            raise FanFormatError(f"ray {k}: zero vector")
        if g != 1:
            raise FanFormatError(f"ray {k}: non-primitive ray {ray} (gcd {g})")
        rays.append(tuple(ray))
    if len(set(rays)) != len(rays):
        raise FanFormatError("duplicate rays")

    cones: List[Tuple[int, ...]] = []
    for k, cone in enumerate(raw_cones):
        if not isinstance(cone, list) or not all(_is_int(x) for x in cone):
            raise FanFormatError(f"cone {k}: expected a list of ray indices, got {cone!r}")
        for idx in cone:
            if idx < 0 or idx >= len(rays):
                raise FanFormatError(f"cone {k}: ray index {idx} out of range 0..{len(rays) - 1}")
        if len(set(cone)) != len(cone):
            raise FanFormatError(f"cone {k}: repeated ray index")
        cones.append(tuple(sorted(cone)))

    return Fan(dim=d, rays=tuple(rays), max_cones=tuple(cones), name=name)


def serialize_fan(fan: Fan) -> str:
    doc = {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }
    return json.dumps(doc)


def load_fan(path: str | Path) -> Fan:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Fan file not found: {path}")
    with open(p, "r", encoding="utf-8") as f:
        fan = parse_fan(f.read(), name=p.stem)
    log.info(f"{p.name}: d={fan.dim} rays={fan.n_rays} cones={len(fan.max_cones)}")
    return fan


def validate(fan: Fan) -> FanDiagnostics:
    """Check simpliciality, spanning and the ridge-pairing completeness proxy.

    Projectivity is not checked.
    """
    d = fan.dim
    messages: List[str] = []

    spans = rank(fan.ray_matrix()) == d if fan.rays else False
    if not spans:
        messages.append(f"rays span a space of dimension {rank(fan.ray_matrix()) if fan.rays else 0} < {d}")

    is_simplicial = bool(fan.max_cones)
    if not fan.max_cones:
        messages.append("no maximal cones")
    for cone in fan.max_cones:
        if len(cone) != d:
            is_simplicial = False
            messages.append(f"cone {list(cone)} has {len(cone)} rays, expected {d}")
        elif determinant(as_integer_matrix([fan.rays[i] for i in cone])) == 0:
            is_simplicial = False
            messages.append(f"cone {list(cone)}: rays are linearly dependent")
    masks = fan.cone_masks()
    if len(set(masks)) != len(masks):
        is_simplicial = False
        messages.append("duplicate maximal cones")

    ridge_counts_ok = is_simplicial
    if is_simplicial:
        seen = set()
        for cone in fan.max_cones:
            for ridge in combinations(cone, d - 1):
                r = mask_of(ridge)
                if r in seen:
                    continue
                seen.add(r)
                count = sum(1 for m in masks if r & ~m == 0)
                if count != 2:
                    ridge_counts_ok = False
                    messages.append(f"ridge {list(ridge)} lies in {count} maximal cones, expected 2")

    for msg in messages:
        log.debug(f"{fan.name}: {msg}")
    return FanDiagnostics(is_simplicial, spans, ridge_counts_ok, messages)


def fan_complex(fan: Fan) -> SimplicialComplex:
    """P = {σ(1) | σ ∈ Δ} on the vertex set Δ(1)."""
    return SimplicialComplex(full_mask(fan.n_rays), fan.cone_masks())


def canonical_divisor(fan: Fan) -> Tuple[int, ...]:
    return tuple(-1 for _ in fan.rays)


def serre_dual(fan: Fan, divisor: Sequence[int]) -> Tuple[int, ...]:
    """K_X - L as a torus-invariant divisor."""
    if len(divisor) != fan.n_rays:
        raise ValueError(f"divisor has {len(divisor)} coefficients, fan has {fan.n_rays} rays")
    return tuple(k - a for k, a in zip(canonical_divisor(fan), divisor))
