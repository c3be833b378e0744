"""Seeded experiments, obstruction checks, collision search and identity sweeps.

Random streams: sample ``i`` of a run seeded with ``seed`` draws from
``numpy.random.Generator(PCG64(SeedSequence(seed, spawn_key=(i,))))``, so the
result of a sample never depends on how samples are scheduled.
"""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import classifier, fox, su2
from .classifier import CRITERIA, classify_pair, criterion_id
from .errors import BadParameter, NotDivisible, SearchBudgetExceeded
from .su2 import SU2Matrix, word_eval
from .words import GroupWord, PositiveWord, difference_word, kappa

log = logging.getLogger(__name__)

RNG_NAME = "PCG64/SeedSequence(seed, spawn_key=(index,))"
MAX_MISS_EXAMPLES = 100


def sample_stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _shuffled(letters: list[str], rng: np.random.Generator) -> str:
    # Fisher-Yates, drawing j uniformly from [0, i]
    for i in range(len(letters) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        letters[i], letters[j] = letters[j], letters[i]
    return "".join(letters)


def random_word(na: int, nb: int, rng: np.random.Generator) -> PositiveWord:
    return PositiveWord(_shuffled(["a"] * na + ["b"] * nb, rng))


def sample_hard_pair(na: int, nb: int, rng: np.random.Generator) -> tuple[PositiveWord, PositiveWord]:
    """Two independent uniform words with the given counts, redrawing ``v`` while ``u = v``."""
    if na == 0 or nb == 0:
        raise BadParameter("hard pairs need at least one a and one b")
    u = random_word(na, nb, rng)
    v = random_word(na, nb, rng)
    while v == u:
        v = random_word(na, nb, rng)
    return u, v


# --- Monte Carlo ------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    na: int
    nb: int
    samples: int
    seed: int
    criteria_subset: tuple[str, ...] = ("A_dihedral", "B_quaternionic", "C_mixed", "D_single_row", "F_interior")

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise BadParameter("samples must be >= 1")
        if self.na + self.nb < 2:
            raise BadParameter("need na + nb >= 2")
        if not 0 <= self.seed < 2**64:
            raise BadParameter("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "criteria_subset", tuple(criterion_id(c) for c in self.criteria_subset))

    def to_json(self) -> dict:
        return {
            "na": self.na,
            "nb": self.nb,
            "samples": self.samples,
            "seed": self.seed,
            "criteria": list(self.criteria_subset),
            "rng": RNG_NAME,
        }


@dataclass
class ExperimentStats:
    fires: dict[str, int]
    first_fired: dict[str, int]
    misses: int
    miss_examples: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "fires": dict(self.fires),
            "first_fired": dict(self.first_fired),
            "misses": self.misses,
            "miss_examples": self.miss_examples,
        }


def _run_sample(cfg: ExperimentConfig, index: int) -> tuple[int, str, str, tuple[str, ...], bool]:
    u, v = sample_hard_pair(cfg.na, cfg.nb, sample_stream(cfg.seed, index))
    report = classify_pair(u, v, criteria=cfg.criteria_subset, witnesses=False)
    return index, u.letters, v.letters, tuple(report.fired_ids()), report.super_degenerate


def _run_chunk(args: tuple[ExperimentConfig, int, int]) -> list:
    cfg, lo, hi = args
    return [_run_sample(cfg, i) for i in range(lo, hi)]


def monte_carlo(cfg: ExperimentConfig, workers: int = 1, chunk: int = 250) -> ExperimentStats:
    """Classify ``cfg.samples`` random hard pairs and count which criteria fire.

    A miss is a sample on which no criterion of the subset fires.  Each stored
    miss records whether it is super-degenerate (no criterion at all fires) or
    which excluded criteria would have caught it.
    """
    bounds = [(cfg, lo, min(lo + chunk, cfg.samples)) for lo in range(0, cfg.samples, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, bounds))
    else:
        parts = [_run_chunk(b) for b in bounds]
    rows = sorted((r for part in parts for r in part), key=lambda r: r[0])

    selected = set(cfg.criteria_subset)
    fires = Counter({c: 0 for c in cfg.criteria_subset})
    first = Counter({c: 0 for c in cfg.criteria_subset})
    first["none"] = 0
    misses = 0
    examples = []
    for index, u, v, fired, degenerate in rows:
        hits = [c for c in CRITERIA if c in fired and c in selected]
        for c in hits:
            fires[c] += 1
        if hits:
            first[hits[0]] += 1
            continue
        first["none"] += 1
        misses += 1
        if len(examples) < MAX_MISS_EXAMPLES:
            examples.append(
                {
                    "index": index,
                    "u": u,
                    "v": v,
                    "super_degenerate": degenerate,
                    "caught_by_excluded": [c for c in fired if c not in selected],
                }
            )
    return ExperimentStats(dict(fires), dict(first), misses, examples)


def experiment_json(cfg: ExperimentConfig, stats: ExperimentStats) -> str:
    return dumps({"schema": classifier.SCHEMA_VERSION, "config": cfg.to_json(), "stats": stats.to_json()})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# --- finite-image obstruction -----------------------------------------------

W_STAR = (2, 2, 120)
LONG_PRODUCT_TOL = 1e-6
EXHAUSTIVE_PAIR_LIMIT = 40_000
RANDOM_PAIRS = 200
ORDER_LCM = 120


def commutator_power_eval(A: SU2Matrix, B: SU2Matrix, m: int, n: int, k: int) -> SU2Matrix:
    """``[A^m, B^n]^k`` by repeated squaring of the evaluated commutator."""
    Am, Bn = A**m, B**n
    return (Am.inverse() * Bn.inverse() * Am * Bn) ** k


def int_commutator_square(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> np.ndarray:
    """Exact ``[A^2, B^2]`` for ``SL(2, Z)`` matrices."""
    A = np.array(A, dtype=object)
    B = np.array(B, dtype=object)

    def inv(M):
        return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)

    A2, B2 = A.dot(A), B.dot(B)
    return inv(A2).dot(inv(B2)).dot(A2).dot(B2)


def obstruction_groups() -> list[tuple[str, int]]:
    groups = [("cyclic", n) for n in range(1, 13)]
    groups += [("binary_dihedral", n) for n in range(1, 7)]
    groups += [("2T", 1), ("2O", 1), ("2I", 1)]
    return groups


def _group_label(kind: str, n: int) -> str:
    if kind == "cyclic":
        return f"C{n}"
    if kind == "binary_dihedral":
        return f"Q{4 * n}"
    return kind


def _pairs(elements: list[SU2Matrix], seed: int):
    size = len(elements)
    if size * size <= EXHAUSTIVE_PAIR_LIMIT:
        return "exhaustive", [(A, B) for A in elements for B in elements]
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = rng.integers(0, size, size=(RANDOM_PAIRS, 2))
    return "random", [(elements[i], elements[j]) for i, j in idx]


def obstruction_suite(seed: int = 0, tol: float = LONG_PRODUCT_TOL) -> dict:
    """Check that ``[a^2, b^2]^120`` is trivial on finite subgroups yet not in ``F_2``."""
    m, n, k = W_STAR
    groups = []
    all_ok = True
    for kind, param in obstruction_groups():
        elements = su2.group_closure(su2.finite_subgroup(kind, param))
        mode, pairs = _pairs(elements, seed)
        worst = 0.0
        worst_trace = 0.0
        for A, B in pairs:
            C = commutator_power_eval(A, B, m, n, k)
            worst = max(worst, C.distance(su2.IDENTITY))
            worst_trace = max(worst_trace, abs(C.trace() - 2.0))
        ok = worst <= tol and worst_trace <= tol
        all_ok &= ok
        groups.append(
            {
                "group": _group_label(kind, param),
                "order": len(elements),
                "mode": mode,
                "pairs": len(pairs),
                "max_distance_to_identity": worst,
                "max_trace_deviation": worst_trace,
                "pass": ok,
            }
        )

    comm = int_commutator_square([[1, 1], [0, 1]], [[1, 0], [1, 1]])
    comm_list = [[int(x) for x in row] for row in comm]
    trace = comm_list[0][0] + comm_list[1][1]
    integer_ok = comm_list == [[21, 8], [-8, -3]] and trace == 18

    # the 120th power matters: a single commutator of squares is not a law on 2O
    octa = su2.group_closure(su2.finite_subgroup("2O"))
    contrast = next(
        ((i, j) for i, A in enumerate(octa) for j, B in enumerate(octa)
         if commutator_power_eval(A, B, 2, 2, 1).distance(su2.IDENTITY) > 1e-6),
        None,
    )
    all_ok &= integer_ok and contrast is not None
    return {
        "schema": classifier.SCHEMA_VERSION,
        "word": "[a^2,b^2]^120",
        "tolerance": tol,
        "groups": groups,
        "integer_commutator": {"matrix": comm_list, "trace": trace, "pass": integer_ok},
        "order_lcm": {"orders": {"2T": 12, "2O": 24, "2I": 60}, "lcm": math.lcm(12, 24, 60)},
        "contrast_2O_single_commutator": {"found": contrast is not None, "pair_indices": list(contrast or [])},
        "pass": all_ok,
    }


# --- pigeonhole collisions --------------------------------------------------

@dataclass(frozen=True)
class Hom:
    name: str
    a: SU2Matrix
    b: SU2Matrix

    @classmethod
    def from_json(cls, data: dict) -> Hom:
        return cls(data.get("name", ""), SU2Matrix.from_json(data["a"]), SU2Matrix.from_json(data["b"]))

    def to_json(self) -> dict:
        return {"name": self.name, "a": self.a.to_json(), "b": self.b.to_json()}


def load_homs(path) -> list[Hom]:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["homomorphisms"]
    return [Hom.from_json(d) for d in data]


@dataclass
class Collision:
    u: PositiveWord
    v: PositiveWord
    length: int
    words_examined: int
    group_orders: list[int]
    residuals: list[float]

    @property
    def w(self) -> GroupWord:
        return difference_word(self.u, self.v)

    def to_json(self) -> dict:
        return {
            "schema": classifier.SCHEMA_VERSION,
            "u": self.u.letters,
            "v": self.v.letters,
            "w": self.w.letters,
            "length": self.length,
            "words_examined": self.words_examined,
            "group_orders": self.group_orders,
            "residuals": self.residuals,
        }


def collision_budget(orders: Sequence[int]) -> int:
    return 2 * math.ceil(math.log2(math.prod(orders))) + 8


def collision_finder(homs: Sequence[Hom], cap: int = 10_000) -> Collision:
    """First pair of equal-count positive words with equal images, in length-lex order."""
    if not homs:
        raise BadParameter("need at least one homomorphism")
    closures, tables = [], []
    for h in homs:
        elements = su2.group_closure([h.a, h.b], cap=cap)
        closures.append(elements)
        tables.append(su2.multiplication_table(elements, [h.a, h.b]))
    orders = [len(c) for c in closures]
    budget = collision_budget(orders)

    # element index 0 is the identity in every closure
    layer = [("", (0,) * len(homs))]
    examined = 1
    for length in range(1, budget + 1):
        seen: dict[tuple, str] = {}
        nxt = []
        for word, images in layer:
            for g, letter in enumerate("ab"):
                new_word = word + letter
                new_images = tuple(t[g][e] for t, e in zip(tables, images))
                nxt.append((new_word, new_images))
        nxt.sort(key=lambda item: item[0])
        for word, images in nxt:
            examined += 1
            key = (word.count("a"), images)
            if key in seen:
                u, v = PositiveWord(seen[key]), PositiveWord(word)
                w = difference_word(u, v)
                residuals = [word_eval(w, h.a, h.b).distance(su2.IDENTITY) for h in homs]
                return Collision(u, v, length, examined, orders, residuals)
            seen[key] = word
        layer = nxt
    raise SearchBudgetExceeded(f"no collision up to length {budget}")


# --- identity sweeps --------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    passed: bool = True
    worst: float = 0.0
    checked: int = 0

    def record(self, residual: float, tol: float) -> None:
        self.checked += 1
        self.worst = max(self.worst, residual)
        if residual > tol:
            self.passed = False

    def to_json(self) -> dict:
        return {"identity": self.name, "pass": self.passed, "worst_residual": self.worst, "checked": self.checked}


FAULTS = ("rowwise", "fd", "square_sum", "dihedral", "quaternionic", "mixed", "sieve")


def _flip(poly):
    # corrupt the first coefficient; used only by the mutation check
    if not poly.coeffs:
        return type(poly).constant(1)
    k = min(poly.coeffs)
    return type(poly)({**poly.coeffs, k: poly.coeffs[k] + 1})


def identity_suite(word_count: int = 50, max_len: int = 12, seed: int = 0, fault: str | None = None) -> dict:
    """Compare every closed form against direct evaluation on random hard pairs."""
    if fault is not None and fault not in FAULTS:
        raise BadParameter(f"unknown fault {fault!r}")
    pairs = []
    for i in range(word_count):
        rng = sample_stream(seed, i)
        half = max(1, max_len // 2)
        na = int(rng.integers(1, half + 1))
        nb = int(rng.integers(1, half + 1))
        pairs.append(sample_hard_pair(na, nb, rng))

    checks = {name: IdentityCheck(name) for name in (
        "rowwise_formula", "quadratic_fd", "determinant", "square_sum", "divisibility",
        "dihedral_point", "quaternionic_point", "mixed_slice", "sieve_normal_form",
    )}
    thetas = [k * math.pi / 12 for k in range(1, 12)]
    for u, v in pairs:
        w = difference_word(u, v)
        M = fox.metabelian_poly(w)
        rowwise = fox.metabelian_poly_rowwise(u, v)
        if fault == "rowwise":
            rowwise = _flip(rowwise)
        checks["rowwise_formula"].record(0.0 if rowwise == M else 1.0, 0.0)

        for r in range(-2, 3):
            pair = fox.laurent_matrix_eval(w, r)
            alpha = _flip(pair.alpha) if fault == "square_sum" else pair.alpha
            checks["determinant"].record(0.0 if pair.det() == 1 else 1.0, 0.0)
            ok = fox.square_sum_identity_holds(fox.LaurentPair(alpha, pair.beta))
            checks["square_sum"].record(0.0 if ok else 1.0, 0.0)
            try:
                fox.square_sum_decomposition(w, r)
                checks["divisibility"].record(0.0, 0.0)
            except NotDivisible:
                checks["divisibility"].record(1.0, 0.0)

            for theta in thetas[::3]:
                closed = su2.quadratic_coefficient(w, r, theta)
                if fault == "fd":
                    closed += 1.0
                fd = su2.quadratic_coefficient_fd(w, r, theta, 1e-4)
                checks["quadratic_fd"].record(abs(fd - closed), 1e-5)

        for theta in thetas:
            closed = su2.dihedral_point_trace(u, v, theta) + (1.0 if fault == "dihedral" else 0.0)
            for r in (0, 1, 2):
                direct = word_eval(w, *su2.dihedral_point_pair(theta, r)).trace()
                checks["dihedral_point"].record(abs(direct - closed), 1e-10)

            for x in (u, v):
                direct = word_eval(x, su2.diag(theta), su2.J0)
                closed_m = su2.mixed_slice_eval(x, theta)
                if fault == "mixed":
                    closed_m = -closed_m
                checks["mixed_slice"].record(direct.distance(closed_m), 1e-10)

            kap = kappa(w)
            direct = word_eval(w, su2.J0, su2.binary_dihedral_b(theta))
            rot = su2.diag(-2 * kap * theta)
            if fault == "sieve":
                rot = su2.diag(-2 * kap * theta + 0.1)
            checks["sieve_normal_form"].record(min(direct.distance(rot), direct.distance(-rot)), 1e-10)

        for t in (0.1 * k for k in range(0, 16)):
            for r in (0, 1):
                closed = su2.quaternionic_trace(w, r, t) + (1.0 if fault == "quaternionic" else 0.0)
                direct = su2.slice_trace(w, su2.SlicePoint(math.pi / 2, r, t))
                checks["quaternionic_point"].record(abs(direct - closed), 1e-10)

    warnings = [] if pairs else ["empty word set: every identity passes vacuously"]
    for msg in warnings:
        log.warning(msg)
    return {
        "schema": classifier.SCHEMA_VERSION,
        "config": {"words": word_count, "max_len": max_len, "seed": seed, "fault": fault},
        "identities": [c.to_json() for c in checks.values()],
        "warnings": warnings,
        "pass": all(c.passed for c in checks.values()),
    }
