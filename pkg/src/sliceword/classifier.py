"""The witness menu: six criteria, their witnesses, and the automorphism probe.

Criteria are always all evaluated; the priority order only picks the
headline ``fired_id``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable

from .charvar import InteriorTest, interior_point_test, interior_witness
from .errors import CriterionNotFired, StaleWitness
from .fox import metabelian_poly, p_at_minus_one
from .laurent import LaurentPoly2
from .su2 import (
    J0,
    WITNESS_TOL,
    SU2Matrix,
    Witness,
    binary_dihedral_b,
    diag,
    dihedral_point_pair,
    make_witness,
    rotation,
    word_eval,
)
from .words import (
    GroupWord,
    PositiveWord,
    RowData,
    delta0,
    difference_word,
    kappa,
    row_data,
    signed_a_count,
)

CRITERIA = ("A_dihedral", "B_quaternionic", "C_mixed", "D_single_row", "E_sieve", "F_interior")
_SHORT = {c[0].lower(): c for c in CRITERIA}
SCHEMA_VERSION = "v1"


def criterion_id(name: str) -> str:
    """Accept ``"a"``, ``"A"`` or the full id."""
    if name in CRITERIA:
        return name
    try:
        return _SHORT[name.strip().lower()[:1]]
    except KeyError:
        raise ValueError(f"unknown criterion {name!r}") from None


@dataclass
class CriterionResult:
    id: str
    fired: bool
    value: Any
    witness: Witness | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "fired": self.fired, "value": _jsonable(self.value)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _jsonable(value):
    if isinstance(value, tuple):
        return list(value)
    return value


@dataclass
class Invariants:
    """Everything the six criteria read, computed once per pair."""

    u: PositiveWord
    v: PositiveWord
    w: GroupWord
    rows: RowData
    delta0: int
    mu_u: int
    mu_v: int
    kappa: int
    metabelian: LaurentPoly2
    p_even: int
    p_odd: int
    interior: InteriorTest

    @classmethod
    def compute(cls, u: PositiveWord, v: PositiveWord) -> Invariants:
        w = difference_word(u, v)
        M = metabelian_poly(w)
        return cls(
            u=u,
            v=v,
            w=w,
            rows=row_data(u, v),
            delta0=delta0(u, v),
            mu_u=signed_a_count(u),
            mu_v=signed_a_count(v),
            kappa=kappa(w),
            metabelian=M,
            p_even=p_at_minus_one(M, 0),
            p_odd=p_at_minus_one(M, 1),
            interior=interior_point_test(w),
        )

    def value(self, cid: str):
        return {
            "A_dihedral": self.delta0,
            "B_quaternionic": (self.p_even, self.p_odd),
            "C_mixed": self.mu_v - self.mu_u,
            "D_single_row": len(self.rows.active),
            "E_sieve": self.kappa,
            "F_interior": (self.interior.v1, self.interior.v2),
        }[cid]

    def fires(self, cid: str) -> bool:
        return {
            "A_dihedral": self.delta0 != 0,
            "B_quaternionic": self.p_even != 0 or self.p_odd != 0,
            "C_mixed": self.mu_u != self.mu_v,
            "D_single_row": len(self.rows.active) == 1,
            "E_sieve": self.kappa != 0,
            "F_interior": self.interior.fired,
        }[cid]


def _witness_pair(inv: Invariants, cid: str) -> tuple[SU2Matrix, SU2Matrix]:
    if cid == "A_dihedral":
        return dihedral_point_pair(math.pi / (4 * abs(inv.delta0)))
    if cid == "B_quaternionic":
        r = 0 if inv.p_even else 1
        p = inv.p_even if r == 0 else inv.p_odd
        t = math.pi / (2 * abs(p))
        return diag(math.pi / 2), diag(r * math.pi / 2) * rotation(t)
    if cid == "C_mixed":
        return diag(math.pi / (2 * abs(inv.mu_v - inv.mu_u))), J0
    if cid == "D_single_row":
        (j0,) = inv.rows.active
        d = abs(inv.rows.delta[j0 - 1])
        return diag(math.pi / (4 * d)), J0
    if cid == "E_sieve":
        return J0, binary_dihedral_b(math.pi / (4 * abs(inv.kappa)))
    raise ValueError(cid)


def _build_witness(inv: Invariants, cid: str, tol: float) -> Witness:
    if not inv.fires(cid):
        raise CriterionNotFired(f"{cid} does not fire for ({inv.u}, {inv.v})")
    if cid == "F_interior":
        witness, _ = interior_witness(inv.w, inv.interior)
    else:
        witness = make_witness(inv.w, *_witness_pair(inv, cid), provenance=cid)
    witness = Witness(witness.A, witness.B, witness.trace, witness.provenance, tol)
    _revalidate(inv.w, witness, tol)
    return witness


def _revalidate(w: GroupWord, witness: Witness, tol: float) -> None:
    fresh = word_eval(w, witness.A, witness.B).trace()
    if abs(fresh) > tol or abs(fresh - witness.trace) > 1e-12:
        raise StaleWitness(f"{witness.provenance}: recomputed trace {fresh!r} for {w}")


def witness_for(cid: str, u: PositiveWord, v: PositiveWord, tol: float = WITNESS_TOL) -> Witness:
    return _build_witness(Invariants.compute(u, v), criterion_id(cid), tol)


@dataclass
class ClassificationReport:
    invariants: Invariants
    criteria: list[CriterionResult]
    fired_id: str | None
    super_degenerate: bool
    aut_probe: AutProbeResult | None = None

    @property
    def u(self) -> PositiveWord:
        return self.invariants.u

    @property
    def v(self) -> PositiveWord:
        return self.invariants.v

    @property
    def w(self) -> GroupWord:
        return self.invariants.w

    def result(self, cid: str) -> CriterionResult:
        cid = criterion_id(cid)
        return next(c for c in self.criteria if c.id == cid)

    def fired_ids(self) -> list[str]:
        return [c.id for c in self.criteria if c.fired]

    def to_json(self) -> dict:
        inv = self.invariants
        out = {
            "schema": SCHEMA_VERSION,
            "u": inv.u.letters,
            "v": inv.v.letters,
            "w": inv.w.letters,
            "ab": inv.u.ab().as_list(),
            "rows": {"delta": list(inv.rows.delta), "alpha": list(inv.rows.alpha), "eta": list(inv.rows.eta)},
            "invariants": {
                "delta0": inv.delta0,
                "mu_u": inv.mu_u,
                "mu_v": inv.mu_v,
                "kappa": inv.kappa,
                "active_rows": inv.rows.active_sorted,
            },
            "metabelian": inv.metabelian.render(),
            "criteria": [c.to_json() for c in self.criteria],
            "fired": self.fired_id,
            "super_degenerate": self.super_degenerate,
        }
        if self.aut_probe is not None:
            out["aut_probe"] = self.aut_probe.to_json()
        return out


def classify_pair(
    u: PositiveWord,
    v: PositiveWord,
    *,
    criteria: Iterable[str] = CRITERIA,
    witnesses: bool = True,
    tol: float = WITNESS_TOL,
) -> ClassificationReport:
    """Evaluate all six criteria; ``criteria`` restricts which may set ``fired_id``.

    With ``witnesses=False`` fired results carry no witness (used by bulk
    sampling, where only fire counts are recorded).
    """
    inv = Invariants.compute(u, v)
    selected = {criterion_id(c) for c in criteria}
    results = []
    for cid in CRITERIA:
        fired = inv.fires(cid)
        witness = _build_witness(inv, cid, tol) if fired and witnesses else None
        results.append(CriterionResult(cid, fired, inv.value(cid), witness))
    fired_id = next((r.id for r in results if r.fired and r.id in selected), None)
    degenerate = not any(r.fired for r in results)
    return ClassificationReport(inv, results, fired_id, degenerate)


def super_degenerate_check(u: PositiveWord, v: PositiveWord) -> bool:
    """Every listed invariant is inert: the residual class left by the menu."""
    inv = Invariants.compute(u, v)
    return (
        inv.delta0 == 0
        and inv.mu_u == inv.mu_v
        and inv.p_even == 0
        and inv.p_odd == 0
        and len(inv.rows.active) != 1
        and inv.kappa == 0
        and inv.interior.v1 > 1e-12
        and inv.interior.v2 > 1e-12
    )


# --- automorphism probe -----------------------------------------------------

NIELSEN = (
    ("swap", GroupWord("b"), GroupWord("a")),
    ("invert_a", GroupWord("A"), GroupWord("b")),
    ("a_to_ab", GroupWord("ab"), GroupWord("b")),
)


@dataclass
class AutProbeResult:
    generators: tuple[str, ...]  # applied left to right
    image_a: GroupWord
    image_b: GroupWord
    image_w: GroupWord
    r: int
    value: int
    witness: Witness
    base_pair: tuple[SU2Matrix, SU2Matrix] = field(repr=False)

    @property
    def description(self) -> str:
        return " then ".join(self.generators) if self.generators else "identity"

    def to_json(self) -> dict:
        return {
            "automorphism": list(self.generators),
            "phi_a": self.image_a.letters,
            "phi_b": self.image_b.letters,
            "r": self.r,
            "value": self.value,
            "witness": self.witness.to_json(),
        }


def aut_probe(w: GroupWord, depth: int) -> AutProbeResult | None:
    """Breadth-first search for an automorphic image with nonzero ``P_r(-1)``."""
    start = (GroupWord("a"), GroupWord("b"), w)
    queue = deque([((), *start)])
    seen = {w.letters}
    while queue:
        gens, phi_a, phi_b, image = queue.popleft()
        M = metabelian_poly(image)
        for r in (0, 1):
            value = p_at_minus_one(M, r)
            if value:
                t = math.pi / (2 * abs(value))
                A0, B0 = diag(math.pi / 2), diag(r * math.pi / 2) * rotation(t)
                A, B = word_eval(phi_a, A0, B0), word_eval(phi_b, A0, B0)
                witness = make_witness(w, A, B, "aut_probe:" + ("/".join(gens) or "identity"))
                return AutProbeResult(gens, phi_a, phi_b, image, r, value, witness, (A0, B0))
        if len(gens) >= depth:
            continue
        for name, ga, gb in NIELSEN:
            new_image = image.substitute(ga, gb)
            if new_image.letters in seen:
                continue
            seen.add(new_image.letters)
            queue.append(((*gens, name), phi_a.substitute(ga, gb), phi_b.substitute(ga, gb), new_image))
    return None
