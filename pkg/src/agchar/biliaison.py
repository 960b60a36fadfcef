"""Descent and ascent of AG curve characters by CI-biliaison.

A generic step replaces ``Y`` by ``Y - H`` on the complete intersection
surface ``F_s ∩ F_{q-s}``; plane curves are instead lowered one degree at a
time inside their plane.  Everything here is formal on characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charcalc import (
    Character,
    CharacterError,
    as_character,
    curve_invariants,
    require_ag,
    validate_ag,
)

LINE = Character((-1, 2, -1))


class DescentError(CharacterError):
    """A descent step produced an invalid character; ``chain`` holds the steps so far."""

    def __init__(self, message, chain=None, failures=()):
        super().__init__(message, failures)
        self.chain = chain


@dataclass(frozen=True)
class DescentStep:
    surface_degrees: tuple[int, int]
    degree_drop: int
    before: Character
    after: Character
    kind: str = "generic"

    def to_dict(self):
        return {
            "before": list(self.before.values),
            "after": list(self.after.values),
            "surface": list(self.surface_degrees),
            "drop": self.degree_drop,
            "kind": self.kind,
        }


@dataclass
class DescentChain:
    steps: list[DescentStep] = field(default_factory=list)
    terminal: Character | None = None

    @property
    def degrees(self) -> list[int]:
        if not self.steps:
            return [curve_invariants(self.terminal).degree] if self.terminal is not None else []
        out = [curve_invariants(self.steps[0].before).degree]
        for st in self.steps:
            out.append(out[-1] - st.degree_drop)
        return out

    def to_dict(self):
        return {
            "schema": 1,
            "steps": [st.to_dict() for st in self.steps],
            "terminal": list(self.terminal.values) if self.terminal is not None else None,
            "degrees": self.degrees,
        }


def plane_curve_character(k: int) -> Character:
    """Character of a plane curve of degree ``k`` in P^4."""
    if k < 1:
        raise ValueError("degree must be positive")
    if k == 1:
        return LINE
    return Character((-1, 1) + (0,) * (k - 2) + (1, -1))


def plane_curve_degree(gamma) -> int | None:
    """Degree ``k >= 2`` if ``gamma`` is a plane-curve character, else None."""
    gamma = as_character(gamma)
    v = gamma.values
    if len(v) >= 4 and v[:2] == (-1, 1) and v[-2:] == (1, -1) and not any(v[2:-2]):
        return len(v) - 2
    return None


def descend(gamma) -> tuple[Character, DescentStep]:
    """One generic descending CI-biliaison ``Y -> Y - H`` on ``X_{s, q-s}``."""
    gamma = as_character(gamma).with_ambient(4)
    rep = require_ag(gamma)
    s, q = rep.s, rep.q
    if gamma == LINE:
        raise DescentError("the line is terminal")
    if plane_curve_degree(gamma) is not None:
        raise DescentError(f"{gamma} is a plane curve; use plane_descend")
    vals = [0] * (q - 1)
    for n in range(0, s - 1):
        vals[n] = -1
    for n in range(s, q - s - 1):
        vals[n] = gamma[n + 1]
    for n in range(q - s, q - 1):
        vals[n] = -1
    # both decrements land on one slot when q = 2s
    vals[s - 1] = gamma[s] - 1
    vals[q - s - 1] = (vals[q - s - 1] if q - s - 1 == s - 1 else gamma[s]) - 1
    after = Character(tuple(vals))
    check = validate_ag(after)
    if not check.ok:
        raise DescentError(f"descent of {gamma} gives non-AG {after}", failures=check.failures)
    step = DescentStep((s, q - s), s * (q - s), gamma, after, "generic")
    return after, step


def plane_descend(gamma) -> tuple[Character, DescentStep]:
    """Lower a plane curve of degree ``k >= 2`` to degree ``k - 1``."""
    gamma = as_character(gamma).with_ambient(4)
    k = plane_curve_degree(gamma)
    if k is None:
        raise DescentError(f"{gamma} is not a plane-curve character of degree >= 2")
    after = plane_curve_character(k - 1)
    return after, DescentStep((1, 1), 1, gamma, after, "plane")


def descent_chain(gamma) -> DescentChain:
    """Descend to the line, recording every step."""
    gamma = as_character(gamma).with_ambient(4)
    require_ag(gamma)
    chain = DescentChain()
    cur = gamma
    while cur != LINE:
        try:
            if plane_curve_degree(cur) is not None:
                cur, step = plane_descend(cur)
            else:
                cur, step = descend(cur)
        except DescentError as exc:
            chain.terminal = cur
            raise DescentError(str(exc), chain, exc.failures) from exc
        chain.steps.append(step)
    chain.terminal = cur
    return chain


def ascend(gamma_prime, s_target: int) -> Character:
    """The character ``gamma`` with least degree ``s_target`` descending to ``gamma_prime``."""
    gp = as_character(gamma_prime).with_ambient(4)
    rep = require_ag(gp)
    if s_target not in (rep.s, rep.s + 1):
        raise DescentError(f"s_target must be {rep.s} or {rep.s + 1}, got {s_target}")
    s, q = s_target, rep.q + 2
    # invert gamma'(n) = gamma(n+1) - [n = s-1] - [n = q-s-1] + [n = q-1]
    vals = [-1] + [0] * q
    for k in range(1, q + 1):
        vals[k] = gp[k - 1] + (k == s) + (k == q - s) - (k == q)
    gamma = Character(tuple(vals))
    check = validate_ag(gamma)
    if not check.ok or check.s != s:
        raise DescentError(f"no AG preimage of {gp} with s = {s}", failures=check.failures)
    try:
        back, _ = descend(gamma)
    except DescentError as exc:
        raise DescentError(f"no AG preimage of {gp} with s = {s}", failures=exc.failures) from exc
    if back != gp:
        raise DescentError(f"candidate {gamma} descends to {back}, not {gp}")
    return gamma
