"""Random deformation data with diagonal cyclic group actions."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from .cyclotomic import CycloScalar
from .groups import GroupTable
from .presentation import DeformationSpec, q_from_upper


@dataclass(frozen=True)
class CorpusConfig:
    n: int = 3
    group_orders: tuple[int, ...] = (1, 2, 3)
    cyclo_order: int = 6
    size: int = 120
    seed: int = 20240601
    entry_density: float = 0.35
    # fraction of specs whose kappa is filtered to G-invariant entries
    invariant_fraction: float = 0.7
    # fraction of specs whose q-matrix is all -1 or all 1 (more PBW hits)
    symmetric_q_fraction: float = 0.4


def _const_choices(M: int) -> list[CycloScalar]:
    z = CycloScalar.zeta(M)
    one = CycloScalar.one(M)
    return [one, -one, z, -z]


def random_spec(rng: random.Random, cfg: CorpusConfig) -> DeformationSpec:
    n, M = cfg.n, cfg.cyclo_order
    m = rng.choice(cfg.group_orders)
    if M % m:
        raise ValueError("group order must divide the cyclotomic order")
    zeta = CycloScalar.zeta(M)
    zero, one = CycloScalar.zero(M), CycloScalar.one(M)

    # generator acts by diag(zeta_m^{a_i}); weights[h][i] = exponent of zeta_M
    a = [rng.randrange(m) for _ in range(n)]
    step = M // m
    weights = [[(h * a[i] * step) % M for i in range(n)] for h in range(m)]
    action = [
        tuple(tuple(zeta ** weights[h][r] if r == c else zero for c in range(n)) for r in range(n)) for h in range(m)
    ]

    if rng.random() < cfg.symmetric_q_fraction:
        e = rng.choice([0, M // 2])
        qexp = {(i, j): e for i, j in combinations(range(n), 2)}
    else:
        qexp = {(i, j): rng.randrange(M) for i, j in combinations(range(n), 2)}
    q = {(i, j): zeta ** e for (i, j), e in qexp.items()}

    invariant = rng.random() < cfg.invariant_fraction

    def allowed(h_wt, target):
        return all((weights[h][h_wt[0]] + weights[h][h_wt[1]] - (weights[h][target] if target is not None else 0)) % M == 0 for h in range(m))

    kappa = {}
    consts = _const_choices(M)
    for i, j in combinations(range(n), 2):
        for g in range(m):
            const = zero
            if rng.random() < cfg.entry_density and (not invariant or allowed((i, j), None)):
                const = rng.choice(consts)
            lin = []
            for l in range(n):
                c = zero
                if rng.random() < cfg.entry_density / 2 and (not invariant or allowed((i, j), l)):
                    c = rng.choice([one, -one])
                lin.append(c)
            if not const.is_zero() or any(not x.is_zero() for x in lin):
                kappa[(i, j, g)] = (const, tuple(lin))
    return DeformationSpec.build(
        n=n,
        order=M,
        q=q_from_upper(n, M, q),
        group=GroupTable.cyclic(m),
        action=action,
        kappa=kappa,
    )


def corpus(cfg: CorpusConfig = CorpusConfig()) -> Iterator[DeformationSpec]:
    rng = random.Random(cfg.seed)
    for _ in range(cfg.size):
        yield random_spec(rng, cfg)


def symmetric_group_table() -> tuple[GroupTable, list[tuple[int, ...]]]:
    """S_3 with ids in lexicographic order of the permutations (identity is 0)."""
    perms = sorted(permutations(range(3)))
    idx = {p: k for k, p in enumerate(perms)}
    rows = [[idx[tuple(g[h[x]] for x in range(3))] for h in perms] for g in perms]
    return GroupTable.from_rows(rows), perms


def permutation_spec(rng: random.Random, q_value: int = 1) -> DeformationSpec:
    """S_3 permuting v_1, v_2, v_3, all q_ij = q_value (+-1), kappa averaged over S_3."""
    G, perms = symmetric_group_table()
    one, zero = CycloScalar.one(), CycloScalar.zero()
    qv = CycloScalar.rational(q_value)
    mats = [tuple(tuple(one if p[c] == r else zero for c in range(3)) for r in range(3)) for p in perms]
    acc: dict = {}
    for _ in range(rng.randint(1, 2)):
        i, j = sorted(rng.sample(range(3), 2))
        g = rng.randrange(6)
        c = CycloScalar.rational(rng.choice([0, 1, -1]))
        lin = [CycloScalar.rational(rng.choice([0, 0, 1, -1])) for _ in range(3)]
        for h, p in enumerate(perms):
            # ^h kappa_g(v_i, v_j) = kappa_{hgh^-1}(v_p(i), v_p(j))
            a, b = p[i], p[j]
            moved = [zero] * 3
            for l in range(3):
                moved[p[l]] = lin[l]
            sign = one
            if a > b:
                a, b, sign = b, a, -qv
            key = (a, b, G.conjugate(h, g))
            old = acc.get(key, (zero, (zero,) * 3))
            acc[key] = (old[0] + sign * c, tuple(x + sign * y for x, y in zip(old[1], moved)))
    q = q_from_upper(3, 1, {(0, 1): qv, (0, 2): qv, (1, 2): qv})
    return DeformationSpec.build(3, 1, q, G, mats, acc)


def random_q_spec(rng: random.Random, n: int = 3, cyclo_order: int = 6) -> DeformationSpec:
    """Trivial group, zero kappa, q_ij random powers of zeta_M."""
    z = CycloScalar.zeta(cyclo_order)
    upper = {(i, j): z ** rng.randrange(cyclo_order) for i, j in combinations(range(n), 2)}
    one, zero = CycloScalar.one(cyclo_order), CycloScalar.zero(cyclo_order)
    ident = tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n))
    return DeformationSpec.build(n, cyclo_order, q_from_upper(n, cyclo_order, upper), GroupTable.cyclic(1), [ident], {})
