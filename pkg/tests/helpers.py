"""Shared random generators for the test suite (seeded by each caller)."""

from __future__ import annotations

import random

from sixforms.geometry import BlockState, ProjPoint2, ProjLine2, incident, join


def points_on_line(ell: ProjLine2) -> list[ProjPoint2]:
    p = ell.p
    a, b, c = ell.coeffs
    pts = []
    # parametrize by solving a*x + b*y + c*z = 0 for the lead variable
    if a != 0:
        inv = pow(a, -1, p)
        for y in range(p):
            for z in (0, 1):
                if (y, z) == (0, 0):
                    continue
                pts.append(ProjPoint2.of((-b * y - c * z) * inv % p, y, z, p))
    elif b != 0:
        inv = pow(b, -1, p)
        for x in range(p):
            for z in (0, 1):
                if (x, z) == (0, 0):
                    continue
                pts.append(ProjPoint2.of(x, (-c * z) * inv % p, z, p))
    else:
        for x in range(p):
            for y in (0, 1):
                if (x, y) != (0, 0):
                    pts.append(ProjPoint2.of(x, y, 0, p))
    seen, out = set(), []
    for q in pts:
        if q.coords not in seen:
            seen.add(q.coords)
            out.append(q)
    return out


def random_block_state(rng: random.Random, p: int, distinct56: bool = False) -> BlockState:
    while True:
        try:
            pts: list[ProjPoint2] = []
            while len(pts) < 4:
                cand = ProjPoint2.of(rng.randrange(p), rng.randrange(p), rng.randrange(p), p)
                if cand not in pts:
                    pts.append(cand)
            la = ProjPoint2.of(rng.randrange(p), rng.randrange(p), rng.randrange(p), p)
            lb = ProjPoint2.of(rng.randrange(p), rng.randrange(p), rng.randrange(p), p)
            ell = join(la, lb)
            if any(incident(q, ell) for q in pts):
                continue
            on_ell = points_on_line(ell)
            x5 = rng.choice(on_ell)
            x6 = rng.choice(on_ell)
            if distinct56 and x5 == x6:
                continue
            return BlockState(tuple(pts), x5, x6, ell)
        except (ValueError, ZeroDivisionError):
            continue


def random_form_system_rows(rng: random.Random, bound: int = 10) -> list[list[int]]:
    return [
        [rng.randint(-bound, bound) for _ in range(3)]
        for _ in range(6)
    ]
