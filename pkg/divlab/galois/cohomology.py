"""
Cocycles G → (Z/n)², local conditions and brute-force H¹ / H¹_loc.

A cocycle is determined by its values on a generating set. Walking a
breadth-first spanning tree of the group writes every Z_h as a fixed linear
map of those generator values, and each non-tree edge g → g·s becomes a
linear constraint Z_{gs} = Z_g + g·Z_s. H¹ is then computed by enumerating
all generator values mod n in numpy chunks, which is exact and small enough
at the configured caps (|G| ≤ 64, n ≤ 32).

Local conditions: Z_σ ∈ (σ − 1)·(Z/n)² for every σ in G.

Example:
    >>> report = h1_and_h1loc(example_group())
    >>> report.h1loc
    []
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from divlab.arith.matmod import Mat2Mod, mat_mul
from divlab.config import DivLabConfig
from divlab.errors import CapExceededError, ConfigError, MathDomainError
from divlab.galois.groups import EXAMPLE_GENERATORS, MatrixGroup, example_group, sigma_coordinates
from divlab.utils.math_helpers import factorize

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]

_CHUNK = 1 << 16


def _vec(v: Sequence[int], n: int) -> Vector:
    return (int(v[0]) % n, int(v[1]) % n)


def _add(u: Vector, v: Vector, n: int) -> Vector:
    return ((u[0] + v[0]) % n, (u[1] + v[1]) % n)


def image_of_sigma_minus_one(sigma: Mat2Mod) -> FrozenSet[Vector]:
    """(σ − 1)·A over all A ∈ (Z/n)²."""
    n = sigma.n
    delta = sigma - Mat2Mod.identity(n)
    return frozenset(delta.apply((a, b)) for a in range(n) for b in range(n))


@dataclass(frozen=True)
class Cocycle:
    """Z: G → (Z/n)² with Z_{στ} = Z_σ + σ·Z_τ, checked on construction."""
    group: MatrixGroup
    values: Mapping[Mat2Mod, Vector]

    def __post_init__(self):
        n = self.group.n
        if set(self.values) != set(self.group.elements):
            raise MathDomainError("not a cocycle: values must cover the whole group")
        if self.values[self.group.identity()] != (0, 0):
            raise MathDomainError("not a cocycle: Z_Id must vanish")
        # the identity on generator edges implies it for all pairs
        gens = self.group.generators or tuple(self.group.elements)
        for g in self.group.elements:
            for s in gens:
                expected = _add(self.values[g], g.apply(self.values[s]), n)
                if self.values[mat_mul(g, s)] != expected:
                    raise MathDomainError(f"not a cocycle: fails at ({g}, {s})")

    def __call__(self, sigma: Mat2Mod) -> Vector:
        return self.values[sigma]

    def is_zero(self) -> bool:
        return all(v == (0, 0) for v in self.values.values())

    def to_dict(self) -> Dict:
        return {"modulus": self.group.n,
                "values": [{"element": g.rows(), "value": list(self.values[g])}
                           for g in self.group]}


def make_cocycle(group: MatrixGroup, generator_values: Mapping[Mat2Mod, Sequence[int]]) -> Cocycle:
    """Extend generator values along closure words; raises "not a cocycle" on any clash."""
    n = group.n
    gens = list(group.generators)
    if set(generator_values) != set(gens):
        raise MathDomainError("not a cocycle: values needed on exactly the group generators")
    seeds = {s: _vec(generator_values[s], n) for s in gens}

    ident = group.identity()
    values: Dict[Mat2Mod, Vector] = {ident: (0, 0)}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(g, s)
            candidate = _add(values[g], g.apply(seeds[s]), n)
            if h not in values:
                values[h] = candidate
                queue.append(h)
            elif values[h] != candidate:
                raise MathDomainError(f"not a cocycle: inconsistent value at {h}")
    return Cocycle(group, values)


def coboundary(group: MatrixGroup, A: Sequence[int]) -> Cocycle:
    """Z_σ = (σ − 1)·A."""
    n = group.n
    a = _vec(A, n)
    values = {g: (g - Mat2Mod.identity(n)).apply(a) for g in group.elements}
    return Cocycle(group, values)


def local_condition_check(z: Cocycle) -> Set[Mat2Mod]:
    """Elements σ for which no A satisfies Z_σ = (σ − 1)·A."""
    failing = {g for g in z.group.elements if z(g) not in image_of_sigma_minus_one(g)}
    logger.debug(f"Local conditions fail on {len(failing)} of {z.group.order} elements")
    return failing


# --- H¹ enumeration -----------------------------------------------------------

@dataclass
class CohomologyReport:
    group_order: int
    modulus: int
    generator_count: int
    cocycle_count: int
    coboundary_count: int
    local_count: int
    h1: List[int] = field(default_factory=list)
    h1loc: List[int] = field(default_factory=list)
    failing: Optional[List[Mat2Mod]] = None

    @property
    def h1_order(self) -> int:
        return self.cocycle_count // self.coboundary_count

    @property
    def h1loc_order(self) -> int:
        return self.local_count // self.coboundary_count

    def to_dict(self) -> Dict:
        out = {
            "group_order": self.group_order,
            "modulus": self.modulus,
            "generator_count": self.generator_count,
            "cocycle_count": self.cocycle_count,
            "coboundary_count": self.coboundary_count,
            "local_cocycle_count": self.local_count,
            "h1": self.h1,
            "h1loc": self.h1loc,
        }
        if self.failing is not None:
            out["failing"] = [{"modulus": g.n, "matrix": g.signed_rows()} for g in self.failing]
        return out


def _linear_model(group: MatrixGroup, gens: List[Mat2Mod]):
    """
    Coefficient matrices L_h (2 × 2r) with Z_h = L_h·v for v the stacked generator
    values, plus the constraint rows from non-tree edges.
    """
    n = group.n
    r = len(gens)
    ident = group.identity()
    coeff: Dict[Mat2Mod, np.ndarray] = {ident: np.zeros((2, 2 * r), dtype=np.int64)}
    blocks = [np.zeros((2, 2 * r), dtype=np.int64) for _ in gens]
    for i, _ in enumerate(gens):
        blocks[i][:, 2 * i:2 * i + 2] = np.eye(2, dtype=np.int64)

    queue = deque([ident])
    constraints: List[np.ndarray] = []
    while queue:
        g = queue.popleft()
        gm = np.array(g.rows(), dtype=np.int64)
        for i, s in enumerate(gens):
            h = mat_mul(g, s)
            candidate = (coeff[g] + gm @ blocks[i]) % n
            if h not in coeff:
                coeff[h] = candidate
                queue.append(h)
            else:
                constraints.append((coeff[h] - candidate) % n)
    rows = np.vstack(constraints) if constraints else np.zeros((0, 2 * r), dtype=np.int64)
    return coeff, rows


def _enumerate_kernel(rows: np.ndarray, width: int, n: int, cap: int) -> np.ndarray:
    """All v ∈ (Z/n)^width with rows·v ≡ 0, by chunked enumeration."""
    total = n ** width
    if total > cap:
        raise CapExceededError("cocycle candidates", cap, needed=total)
    powers = n ** np.arange(width, dtype=np.int64)
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        cand = (idx[:, None] // powers[None, :]) % n
        ok = np.all((cand @ rows.T) % n == 0, axis=1)
        found.append(cand[ok])
    return np.vstack(found) if found else np.zeros((0, width), dtype=np.int64)


def _quotient_invariants(sub: np.ndarray, base: Set[Tuple[int, ...]], n: int) -> List[int]:
    """Elementary divisors of sub/base from the counts |{z : d·z ∈ base}|."""
    if len(sub) == len(base):
        return []
    divisors: List[int] = []
    for p, e in sorted(factorize(n).items()):
        ranks = [0]
        for k in range(1, e + 1):
            scaled = (sub * p ** k) % n
            count = sum(1 for row in map(tuple, scaled.tolist()) if row in base)
            torsion = count // len(base)
            ranks.append(round(np.log(torsion) / np.log(p)))
        # number of cyclic factors of order ≥ p^k
        at_least = [ranks[k] - ranks[k - 1] for k in range(1, e + 1)] + [0]
        for k in range(1, e + 1):
            divisors.extend([p ** k] * (at_least[k - 1] - at_least[k]))
    return sorted(divisors)


def h1_and_h1loc(group: MatrixGroup, config: Optional[DivLabConfig] = None,
                 cocycle: Optional[Cocycle] = None) -> CohomologyReport:
    """Enumerate cocycles, coboundaries and locally trivial cocycles of G acting on (Z/n)²."""
    cfg = config or DivLabConfig()
    n = group.n
    if group.order > cfg.max_group_order:
        raise CapExceededError("group order", cfg.max_group_order, needed=group.order)
    if n > cfg.max_modulus:
        raise CapExceededError("modulus", cfg.max_modulus, needed=n)

    gens = group.minimal_generators()
    width = 2 * len(gens)
    coeff, rows = _linear_model(group, gens)
    cocycles = _enumerate_kernel(rows, width, n, cfg.cocycle_candidate_cap)

    ident = Mat2Mod.identity(n)
    coboundaries: Set[Tuple[int, ...]] = set()
    for a in range(n):
        for b in range(n):
            vec: List[int] = []
            for s in gens:
                vec.extend((s - ident).apply((a, b)))
            coboundaries.add(tuple(vec))

    elements = sorted(coeff)
    stacked = np.stack([coeff[g] for g in elements])            # (|G|, 2, width)
    values = np.einsum("gij,zj->zgi", stacked, cocycles) % n     # (|Z|, |G|, 2)
    image = np.zeros((len(elements), n, n), dtype=bool)
    for i, g in enumerate(elements):
        for u, v in image_of_sigma_minus_one(g):
            image[i, u, v] = True
    g_idx = np.arange(len(elements))[None, :]
    local_mask = np.all(image[g_idx, values[:, :, 0], values[:, :, 1]], axis=1)
    local = cocycles[local_mask]

    report = CohomologyReport(
        group_order=group.order,
        modulus=n,
        generator_count=len(gens),
        cocycle_count=len(cocycles),
        coboundary_count=len(coboundaries),
        local_count=len(local),
        h1=_quotient_invariants(cocycles, coboundaries, n),
        h1loc=_quotient_invariants(local, coboundaries, n),
    )
    if cocycle is not None:
        report.failing = sorted(local_condition_check(cocycle))
    logger.info(f"H1 of group of order {group.order} mod {n}: {report.h1}, H1_loc: {report.h1loc}")
    return report


# --- the worked example and command-line specs --------------------------------

def example_cocycle() -> Cocycle:
    """Z_{σ(x,y,z,w)} = (2w, 0) on the example group."""
    group = example_group()
    seeds = {s: (0, 0) for s in EXAMPLE_GENERATORS}
    seeds[EXAMPLE_GENERATORS[3]] = (2, 0)
    return make_cocycle(group, seeds)


_VARIABLES = "xyzw"


def _linear_form(text: str) -> Dict[str, int]:
    """Parse "2w", "x+y", "-w+3", "0" into coefficients (key "" is the constant)."""
    form: Dict[str, int] = {}
    expr = text.replace(" ", "").replace("-", "+-")
    for term in filter(None, expr.split("+")):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        var = term[-1] if term and term[-1] in _VARIABLES else ""
        digits = term[:-1] if var else term
        try:
            coeff = int(digits) if digits else 1
        except ValueError:
            raise ConfigError(f"bad linear form {text!r}")
        form[var] = form.get(var, 0) + sign * coeff
    return form


def _evaluate(form: Dict[str, int], point: Tuple[int, int, int, int]) -> int:
    env = dict(zip(_VARIABLES, point))
    return sum(c * (env[v] if v else 1) for v, c in form.items())


def parse_cocycle_spec(spec: str, group: MatrixGroup, group_spec: str) -> Cocycle:
    """
    Two forms:
        linear forms in x, y, z, w ("2w,0"), only for the example group,
            evaluated at every element and checked as a cocycle
        explicit generator values "a,b;a,b;..." in generator order
    """
    linear = group_spec == "paper-sec6" and ";" not in spec
    if not linear:
        if any(ch in spec for ch in _VARIABLES):
            raise ConfigError("linear-form cocycles are only defined on the example group")
        pairs = [item for item in spec.split(";") if item.strip()]
        if len(pairs) != len(group.generators):
            raise ConfigError(f"need {len(group.generators)} generator values, got {len(pairs)}")
        try:
            seeds = {s: tuple(int(v) for v in pair.split(",")) for s, pair in zip(group.generators, pairs)}
        except ValueError:
            raise ConfigError(f"bad cocycle spec {spec!r}")
        if any(len(v) != 2 for v in seeds.values()):
            raise ConfigError("each generator value must have two components")
        return make_cocycle(group, seeds)

    components = spec.split(",")
    if len(components) != 2:
        raise ConfigError(f"cocycle must have two components: {spec!r}")
    forms = [_linear_form(c) for c in components]
    values: Dict[Mat2Mod, Vector] = {}
    for g in group.elements:
        point = sigma_coordinates(g)
        values[g] = _vec((_evaluate(forms[0], point), _evaluate(forms[1], point)), group.n)
    return Cocycle(group, values)
