"""Poset generators and the property suite that checks every edge, degree,
volume and facet identity on a corpus of posets.

The corpus is every labeled poset up to ``exhaustive_max_d`` elements
followed by ``random_trials`` seeded random posets. Failures are data: each
property records pass/fail counts and its smallest counterexample in the
poset text format.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterator

from .errors import OrderChainError, SizeError
from .io import format_poset
from .oracle import count_facets, is_geometric_edge, normalized_volume
from .polytopes import (
    KINDS,
    enumerate_omega,
    enumerate_psi,
    degree_sequence,
    h_description,
    omega_to_psi,
    psi_to_omega,
    skeleton,
)
from .poset import (
    Poset,
    bit,
    bits,
    count_linear_extensions,
    cover_pairs,
    enumerate_antichains,
    enumerate_ideals,
    find_X_subposet,
    ideal_generated_by,
    is_connected_subset,
    max_of,
    maximal_chains,
    min_of,
    poset_from_covers,
    popcount,
)

EXHAUSTIVE_LIMIT = 5
ORACLE_LIMIT = 6
X_BRUTEFORCE_MAX_D = 7

PROPERTIES = (
    "poset_core",
    "x_witness_bruteforce",
    "vertex_count_equality",
    "edge_count_equality",
    "bijection",
    "degree_sequence_iff_x_free",
    "degree_bounds",
    "oracle_edge_agreement",
    "volume_identity",
    "facet_count_iff_x_free",
)

MUTATIONS = ("order_edge", "chain_edge")


class ConfigError(OrderChainError, ValueError):
    pass


def enumerate_labeled_posets(d: int) -> Iterator[Poset]:
    """Every partial order on ``range(d)``, each once.

    Each unordered pair {i, j} is unrelated, i < j or j < i; candidates
    are kept when the relation is already transitive.
    """
    if not 1 <= d <= EXHAUSTIVE_LIMIT:
        raise SizeError(f"exhaustive enumeration is guarded at 1 <= d <= {EXHAUSTIVE_LIMIT}")
    pairs = list(combinations(range(d), 2))
    for choice in product((0, 1, 2), repeat=len(pairs)):
        up = [bit(i) for i in range(d)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                up[i] |= bit(j)
            elif c == 2:
                up[j] |= bit(i)
        if all(up[j] & ~up[i] == 0 for i in range(d) for j in bits(up[i])):
            down = [0] * d
            for i in range(d):
                for j in bits(up[i]):
                    down[j] |= bit(i)
            yield Poset(d, tuple(down), tuple(up))


def random_poset(d: int, density, seed: int) -> Poset:
    """Relate each pair of a random linear order with probability
    ``density``, then close transitively."""
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    order = list(range(d))
    rng.shuffle(order)
    covers = [
        (order[s], order[t])
        for s in range(d)
        for t in range(s + 1, d)
        if rng.random() < density
    ]
    return poset_from_covers(d, covers)


@dataclass
class SuiteConfig:
    exhaustive_max_d: int = 4
    random_trials: int = 200
    random_d_range: tuple[int, int] = (5, 8)
    seed: int = 0
    oracle_max_d: int = 5
    # None draws a fresh density per random trial
    edge_density: Fraction | None = None
    workers: int = 1
    mutation: str | None = None

    def validate(self) -> None:
        if not 1 <= self.exhaustive_max_d <= EXHAUSTIVE_LIMIT:
            raise ConfigError(f"exhaustive_max_d must be in 1..{EXHAUSTIVE_LIMIT}")
        if not 0 <= self.oracle_max_d <= ORACLE_LIMIT:
            raise ConfigError(f"oracle_max_d must be in 0..{ORACLE_LIMIT}")
        if self.random_trials < 0:
            raise ConfigError("random_trials must be nonnegative")
        lo, hi = self.random_d_range
        if not 1 <= lo <= hi <= 64:
            raise ConfigError("random_d_range must satisfy 1 <= min <= max <= 64")
        if self.edge_density is not None and not 0 <= self.edge_density <= 1:
            raise ConfigError("edge_density must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ConfigError(f"mutation must be one of {MUTATIONS}")

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        try:
            if "random_d_range" in data:
                lo, hi = data["random_d_range"]
                data["random_d_range"] = (int(lo), int(hi))
            if data.get("edge_density") is not None:
                data["edge_density"] = Fraction(str(data["edge_density"]))
            for key in ("exhaustive_max_d", "random_trials", "seed", "oracle_max_d", "workers"):
                if key in data and (isinstance(data[key], bool) or not isinstance(data[key], int)):
                    raise ConfigError(f"{key} must be an integer")
            if data.get("mutation") is not None and not isinstance(data["mutation"], str):
                raise ConfigError("mutation must be a string")
            cfg = cls(**data)
            cfg.validate()
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        return cfg

    def to_dict(self) -> dict:
        out = asdict(self)
        out["random_d_range"] = list(self.random_d_range)
        out["edge_density"] = None if self.edge_density is None else str(self.edge_density)
        del out["workers"]  # does not affect results
        return out


def corpus(cfg: SuiteConfig) -> Iterator[Poset]:
    for d in range(1, cfg.exhaustive_max_d + 1):
        yield from enumerate_labeled_posets(d)
    rng = random.Random(cfg.seed)
    lo, hi = cfg.random_d_range
    for _ in range(cfg.random_trials):
        d = rng.randint(lo, hi)
        density = cfg.edge_density
        if density is None:
            density = Fraction(rng.randrange(1001), 1000)
        yield random_poset(d, density, rng.getrandbits(64))


# -- per-poset checks -------------------------------------------------------


def _mutated_test(name):
    """Deliberately broken edge predicates for testing the suite itself."""
    if name == "order_edge":
        # forgets the connectivity requirement
        return lambda p, i, j: i & ~j == 0 or j & ~i == 0
    if name == "chain_edge":
        # drops edges whose symmetric difference has three or more elements
        return lambda p, a, b: popcount(a ^ b) <= 2 and is_connected_subset(p, a ^ b)
    return None


def _components(leq, s: int) -> int:
    """Union-find component count of the comparability graph on ``s``,
    read off the full relation matrix."""
    parent = {i: i for i in bits(s)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in combinations(list(bits(s)), 2):
        if leq[i][j] or leq[j][i]:
            parent[find(i)] = find(j)
    return len({find(i) for i in parent})


def _check_poset_core(p: Poset) -> bool:
    if poset_from_covers(p.d, cover_pairs(p)) != p:
        return False
    ideals = enumerate_ideals(p)
    ants = enumerate_antichains(p)
    if len(ideals) != len(ants):
        return False
    if sorted(max_of(p, i) for i in ideals) != ants:
        return False
    if any(ideal_generated_by(p, max_of(p, i)) != i for i in ideals):
        return False
    chains = maximal_chains(p)
    covers = set(cover_pairs(p))
    for ch in chains:
        if not p.is_chain(ch):
            return False
        elems = sorted(bits(ch), key=lambda i: popcount(p.down[i]))
        if any((x, y) not in covers for x, y in zip(elems, elems[1:])):
            return False
    for c1, c2 in permutations(chains, 2):
        if c1 & ~c2 == 0:
            return False
    if p.d <= 5:
        leq = p.leq
        for s in range(1, 1 << p.d):
            if is_connected_subset(p, s) != (_components(leq, s) == 1):
                return False
    return True


_X_RELATIONS = {(0, 2), (1, 2), (2, 3), (2, 4), (0, 3), (0, 4), (1, 3), (1, 4)}


def _has_induced_x_bruteforce(p: Poset) -> bool:
    for five in combinations(range(p.d), 5):
        for lab in permutations(five):
            rel = {(s, t) for s in range(5) for t in range(5) if s != t and p.less(lab[s], lab[t])}
            if rel == _X_RELATIONS:
                return True
    return False


def _check_bijection(p: Poset, n_edges_order: int, n_edges_chain: int) -> bool:
    omega = enumerate_omega(p)
    psi = enumerate_psi(p)
    if not (len(omega) == len(psi) == n_edges_order == n_edges_chain):
        return False
    image = [omega_to_psi(p, pair) for pair in omega]
    if len(set(image)) != len(image) or set(image) != set(psi):
        return False
    for pair, (a, b) in zip(omega, image):
        i, j = pair
        diff = j & ~i
        if min_of(p, diff) & max_of(p, i) & max_of(p, j):
            return False
        if popcount(diff) > 1 and (a & ~b != max_of(p, diff) or b & ~a != min_of(p, diff)):
            return False
    if any(psi_to_omega(p, q) != pair for pair, q in zip(omega, image)):
        return False
    for a, b in psi:
        if omega_to_psi(p, psi_to_omega(p, (a, b))) != (a, b):
            return False
        # no x < y and y' < x' with x, x' in A and y, y' in B
        up_ab = any(p.less(x, y) for x in bits(a) for y in bits(b))
        down_ab = any(p.less(y, x) for x in bits(a) for y in bits(b))
        if up_ab and down_ab:
            return False
    return True


def check_poset(p: Poset, oracle_max_d: int = 5, mutation: str | None = None) -> dict[str, bool]:
    """Run every applicable property on one poset."""
    res = {}
    res["poset_core"] = _check_poset_core(p)
    witness = find_X_subposet(p)
    if p.d <= X_BRUTEFORCE_MAX_D:
        res["x_witness_bruteforce"] = (witness is not None) == _has_induced_x_bruteforce(p)
    test = _mutated_test(mutation)
    g = {
        "order": skeleton(p, "order", test if mutation == "order_edge" else None),
        "chain": skeleton(p, "chain", test if mutation == "chain_edge" else None),
    }
    n_order, n_chain = len(g["order"].edges), len(g["chain"].edges)
    res["vertex_count_equality"] = len(g["order"].vertices) == len(g["chain"].vertices)
    res["edge_count_equality"] = n_order == n_chain
    res["bijection"] = _check_bijection(p, n_order, n_chain)
    x_free = witness is None
    res["degree_sequence_iff_x_free"] = (
        degree_sequence(g["order"]) == degree_sequence(g["chain"])
    ) == x_free
    chain_deg = g["chain"].degree_of(0)
    need = p.d if x_free else p.d + 1
    res["degree_bounds"] = chain_deg == p.d and min(g["order"].degrees()) >= need

    if p.d <= oracle_max_d:
        agree = True
        for kind in KINDS:
            pts = g[kind].points()
            edges = set(g[kind].edges)
            for u in range(len(pts)):
                for v in range(u + 1, len(pts)):
                    if is_geometric_edge(pts, u, v) != ((u, v) in edges):
                        agree = False
                        break
                if not agree:
                    break
        res["oracle_edge_agreement"] = agree

        e = count_linear_extensions(p)
        vol_o = normalized_volume(h_description(p, "order"), p.d)
        vol_c = normalized_volume(h_description(p, "chain"), p.d)
        res["volume_identity"] = vol_o == vol_c == e

        f_order = count_facets(g["order"].points(), h_description(p, "order"), p.d)
        f_full = count_facets(g["order"].points(), h_description(p, "order", all_relations=True), p.d)
        f_chain = count_facets(g["chain"].points(), h_description(p, "chain"), p.d)
        res["facet_count_iff_x_free"] = f_order == f_full and (f_order == f_chain) == x_free
    return res


# -- suite ------------------------------------------------------------------


@dataclass
class PropertyResult:
    checked: int = 0
    passed: int = 0
    failed: int = 0
    counterexample: str | None = None

    def record(self, ok: bool, text: str):
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None or _order_key(text) < _order_key(self.counterexample):
                self.counterexample = text


def _order_key(text):
    return (len(text.splitlines()), text)


@dataclass
class SuiteReport:
    config: dict
    posets: int
    properties: dict[str, PropertyResult] = field(default_factory=dict)
    runtime_seconds: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(r.failed == 0 for r in self.properties.values())

    def failed_properties(self) -> list[str]:
        return [k for k, r in self.properties.items() if r.failed]

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "all_passed": self.all_passed,
            "config": self.config,
            "posets": self.posets,
            "properties": {k: asdict(r) for k, r in self.properties.items()},
        }
        if timing:
            out["runtime_seconds"] = round(self.runtime_seconds, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"


def _check_one(args):
    p, oracle_max_d, mutation = args
    return format_poset(p), check_poset(p, oracle_max_d, mutation)


def run_property_suite(cfg: SuiteConfig) -> SuiteReport:
    cfg.validate()
    start = time.perf_counter()
    report = SuiteReport(config=cfg.to_dict(), posets=0)
    for name in PROPERTIES:
        report.properties[name] = PropertyResult()
    jobs = ((p, cfg.oracle_max_d, cfg.mutation) for p in corpus(cfg))
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_check_one, jobs, chunksize=32))
    else:
        results = map(_check_one, jobs)
    for text, res in results:
        report.posets += 1
        for name, ok in res.items():
            report.properties[name].record(ok, text)
    report.runtime_seconds = time.perf_counter() - start
    return report
