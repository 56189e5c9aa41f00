"""Finite groups as dense multiplication tables.

Every group is a Latin square over element indices, fully validated at
construction (identity, two-sided inverses, associativity).  Order is
capped at 512: each family needed here fits, and table form turns every
structural question into a finite scan.

Constructors cover cyclic, abelian, dihedral, symmetric/alternating,
the binary polyhedral groups (built from unit-quaternion models and
exactified into tables), metacyclic presentations, direct/semidirect
products, and central products over a shared involution.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np

from .errors import BudgetError, InvalidInputError, InvalidParametersError
from .snf import kernel_mod_p

ORDER_CAP = 512

__all__ = [
    "FiniteGroup",
    "GroupKind",
    "build_standard",
    "cyclic",
    "abelian",
    "dihedral",
    "symmetric",
    "alternating",
    "quaternion_group",
    "binary_dihedral",
    "binary_tetrahedral",
    "binary_octahedral",
    "binary_icosahedral",
    "direct_product",
    "semidirect_product",
    "central_product",
    "klein_by_cyclic3",
    "q8_by_cyclic3",
    "build_metacyclic",
    "pu3_presentation_valid",
    "structural_invariants",
    "minimal_generating_set",
    "find_isomorphism",
    "is_isomorphic",
    "normal_cyclic_subgroups",
    "max_cyclic_normal_index",
    "index_two_subgroups",
    "matches_family",
    "order_gl",
    "log10_universal_constant",
]


@dataclass(eq=False)
class FiniteGroup:
    table: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InvalidInputError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise InvalidInputError("group must be nonempty")
        if n > ORDER_CAP:
            raise BudgetError(f"group order {n} exceeds cap {ORDER_CAP}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidInputError("table entries must be element indices")
        idx = np.arange(n, dtype=np.int32)
        if not (np.array_equal(np.sort(table, axis=1), np.broadcast_to(idx, (n, n)))
                and np.array_equal(np.sort(table, axis=0), np.broadcast_to(idx[:, None], (n, n)))):
            raise InvalidInputError("table is not a Latin square")
        left_ids = np.nonzero((table == idx).all(axis=1))[0]
        ids = [int(e) for e in left_ids if np.array_equal(table[:, e], idx)]
        if len(ids) != 1:
            raise InvalidInputError("table has no two-sided identity")
        self.identity = ids[0]
        inv = np.argmax(table == self.identity, axis=1)
        if not (np.all(table[idx, inv] == self.identity) and np.all(table[inv, idx] == self.identity)):
            raise InvalidInputError("table lacks two-sided inverses")
        # associativity in chunks: table[table[i,j],k] == table[i,table[j,k]]
        step = max(1, (1 << 22) // (n * n))
        for s in range(0, n, step):
            blk = table[s : s + step]
            if not np.array_equal(table[blk], blk[:, table]):
                raise InvalidInputError("table is not associative")
        table.setflags(write=False)
        self.table = table
        if self.labels is not None:
            self.labels = tuple(str(x) for x in self.labels)
            if len(self.labels) != n:
                raise InvalidInputError("labels length must match group order")

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def __repr__(self):
        return f"FiniteGroup(order={self.size})"

    def op(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == self.identity, axis=1)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.size
        idx = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        out[self.identity] = 1
        cur = idx.copy()
        k = 1
        while np.any(out == 0):
            k += 1
            cur = self.table[cur, idx]
            fresh = (out == 0) & (cur == self.identity)
            out[fresh] = k
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    @cached_property
    def center(self) -> np.ndarray:
        return np.nonzero((self.table == self.table.T).all(axis=1))[0]

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        inv = self.inverses
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for r in range(self.size):
            if seen[r]:
                continue
            cls = np.unique(self.table[self.table[:, r], inv])
            seen[cls] = True
            out.append(cls)
        return out

    @cached_property
    def class_sizes_by_element(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        for cls in self.conjugacy_classes:
            out[cls] = len(cls)
        return out

    @cached_property
    def commutator_subgroup(self) -> np.ndarray:
        inv = self.inverses
        gh = self.table
        ghg = self.table[gh, inv[:, None]]
        comms = np.unique(self.table[ghg, inv[None, :]])
        return self.closure(comms)

    def closure(self, gens) -> np.ndarray:
        member = np.zeros(self.size, dtype=bool)
        member[self.identity] = True
        gens = np.unique(np.asarray(list(gens) + [self.identity], dtype=np.int64))
        member[gens] = True
        frontier = gens
        while frontier.size:
            cur = np.nonzero(member)[0]
            prods = np.unique(self.table[np.ix_(cur, frontier)])
            frontier = prods[~member[prods]]
            member[frontier] = True
        return np.nonzero(member)[0]

    def is_subgroup(self, elements) -> bool:
        els = np.unique(np.asarray(elements, dtype=np.int64))
        if els.size == 0 or self.identity not in els:
            return False
        inside = np.zeros(self.size, dtype=bool)
        inside[els] = True
        return bool(inside[self.table[np.ix_(els, els)]].all())

    def is_normal(self, elements) -> bool:
        els = np.unique(np.asarray(elements, dtype=np.int64))
        if not self.is_subgroup(els):
            return False
        inside = np.zeros(self.size, dtype=bool)
        inside[els] = True
        conj = self.table[self.table[:, els], self.inverses[:, None]]
        return bool(inside[conj].all())

    def restrict(self, elements) -> tuple["FiniteGroup", np.ndarray]:
        """Subgroup on the given (closed) element set, reindexed densely."""
        els = np.unique(np.asarray(elements, dtype=np.int64))
        if not self.is_subgroup(els):
            raise InvalidInputError("element set is not a subgroup")
        pos = -np.ones(self.size, dtype=np.int64)
        pos[els] = np.arange(els.size)
        sub = pos[self.table[np.ix_(els, els)]]
        labels = tuple(self.labels[i] for i in els) if self.labels else None
        return FiniteGroup(sub, labels), els

    def quotient(self, normal_elements) -> tuple["FiniteGroup", np.ndarray]:
        """Quotient by a normal subgroup; returns (group, projection)."""
        els = np.unique(np.asarray(normal_elements, dtype=np.int64))
        if not self.is_normal(els):
            raise InvalidInputError("quotient requires a normal subgroup")
        rep = self.table[:, els].min(axis=1)
        reps = np.unique(rep)
        proj = np.searchsorted(reps, rep)
        qtable = proj[self.table[np.ix_(reps, reps)]]
        return FiniteGroup(qtable), proj

    @cached_property
    def abelian_invariants(self) -> tuple[int, ...]:
        """Invariant factors of the abelianization, ascending divisibility."""
        quo, _ = self.quotient(self.commutator_subgroup)
        found = []
        while quo.size > 1:
            g = int(np.argmax(quo.element_orders))
            found.append(int(quo.element_orders[g]))
            quo, _ = quo.quotient(quo.closure([g]))
        return tuple(found[::-1])

    def to_json(self) -> dict:
        return {
            "version": 1,
            "size": self.size,
            "identity": int(self.identity),
            "table": self.table.tolist(),
            "labels": list(self.labels) if self.labels else None,
        }

    @staticmethod
    def from_json(data: dict) -> "FiniteGroup":
        labels = tuple(data["labels"]) if data.get("labels") else None
        return FiniteGroup(np.array(data["table"], dtype=np.int32), labels)


@dataclass(frozen=True)
class GroupKind:
    tag: str
    order_param: int | None = None

    def __post_init__(self):
        if self.order_param is not None and self.order_param < 1:
            raise InvalidParametersError("order parameter must be positive")


def structural_invariants(g: FiniteGroup) -> dict:
    return {
        "order": g.size,
        "element_order_histogram": dict(Counter(g.element_orders.tolist())),
        "center_size": int(g.center.size),
        "abelianization_invariants": g.abelian_invariants,
        "conjugacy_class_sizes": sorted(len(c) for c in g.conjugacy_classes),
    }


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParametersError("cyclic order must be positive")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n)


def abelian(invariants) -> FiniteGroup:
    g = cyclic(1)
    for k in invariants:
        g = direct_product(g, cyclic(int(k)))
    return g


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order 2k."""
    if order < 2 or order % 2:
        raise InvalidParametersError("dihedral order must be even and >= 2")
    k = order // 2
    a, b = np.divmod(np.arange(order), k)  # element index = b + k*a is (rot b, flip a)
    a1, a2 = a[:, None], a[None, :]
    b1, b2 = b[:, None], b[None, :]
    rot = (b1 + np.where(a1 == 1, -b2, b2)) % k
    flip = (a1 + a2) % 2
    return FiniteGroup(flip * k + rot)


def symmetric(n: int) -> FiniteGroup:
    return _permutation_group(itertools.permutations(range(n)))


def alternating(n: int) -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    return _permutation_group(perms)


def _perm_sign(p) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _permutation_group(perms) -> FiniteGroup:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    if n > ORDER_CAP:
        raise BudgetError("permutation group exceeds the order cap")
    table = np.zeros((n, n), dtype=np.int32)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[x] for x in q)]
    return FiniteGroup(table)


# --- unit-quaternion models -------------------------------------------------


def _quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _quat_key(q):
    return tuple((np.round(q, 6) + 0.0).tolist())


def group_from_quaternions(generators) -> tuple[FiniteGroup, np.ndarray]:
    """Close a set of unit quaternions under multiplication and return
    the abstract group together with the quaternion per element.

    Coordinates are deduplicated at 1e-6, far coarser than the float
    error accumulated over these short products."""
    one = (1.0, 0.0, 0.0, 0.0)
    elements = [one]
    index = {_quat_key(one): 0}
    frontier = [one]
    gens = [tuple(float(x) for x in g) for g in generators]
    for g in gens:
        if abs(sum(x * x for x in g) - 1.0) > 1e-9:
            raise InvalidInputError("generators must be unit quaternions")
    while frontier:
        fresh = []
        for q in frontier:
            for g in gens:
                prod = _quat_mul(q, g)
                key = _quat_key(prod)
                if key not in index:
                    if len(elements) >= ORDER_CAP:
                        raise BudgetError("quaternion closure exceeds the order cap")
                    index[key] = len(elements)
                    elements.append(prod)
                    fresh.append(prod)
        frontier = fresh
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int32)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            table[i, j] = index[_quat_key(_quat_mul(p, q))]
    return FiniteGroup(table), np.array(elements, dtype=np.float64)


_HALF = (0.5, 0.5, 0.5, 0.5)
_QI = (0.0, 1.0, 0.0, 0.0)
_QJ = (0.0, 0.0, 1.0, 0.0)


def _binary_icosahedral_generators():
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    axis = np.array([0.0, 1.0, phi]) / math.sqrt(2.0 + phi)
    s = math.sin(math.pi / 5.0)
    rot5 = (math.cos(math.pi / 5.0), s * axis[0], s * axis[1], s * axis[2])
    return [_HALF, rot5]


def quaternion_group() -> FiniteGroup:
    return group_from_quaternions([_QI, _QJ])[0]


def binary_dihedral(order: int) -> FiniteGroup:
    """Binary dihedral (dicyclic) group of the given order 4k."""
    if order < 4 or order % 4:
        raise InvalidParametersError("binary dihedral order must be a multiple of 4")
    k = order // 4
    a = (math.cos(math.pi / k), math.sin(math.pi / k), 0.0, 0.0)
    g, _ = group_from_quaternions([a, _QJ])
    if g.size != order:
        raise InvalidInputError("quaternion closure produced the wrong order")
    return g


def binary_tetrahedral() -> FiniteGroup:
    return _checked_quat_group([_HALF, _QI], 24)


def binary_octahedral() -> FiniteGroup:
    r2 = 1.0 / math.sqrt(2.0)
    return _checked_quat_group([_HALF, _QI, (r2, r2, 0.0, 0.0)], 48)


def binary_icosahedral() -> FiniteGroup:
    return _checked_quat_group(_binary_icosahedral_generators(), 120)


def _checked_quat_group(gens, expected: int) -> FiniteGroup:
    g, _ = group_from_quaternions(gens)
    if g.size != expected:
        raise InvalidInputError(f"quaternion closure has order {g.size}, expected {expected}")
    return g


def build_standard(kind: GroupKind) -> FiniteGroup:
    tag = kind.tag
    if tag == "cyclic":
        if kind.order_param is None:
            raise InvalidParametersError("cyclic kind needs an order")
        return cyclic(kind.order_param)
    if tag == "dihedral":
        if kind.order_param is None:
            raise InvalidParametersError("dihedral kind needs an order")
        return dihedral(kind.order_param)
    if tag == "tetra":
        return alternating(4)
    if tag == "octa":
        return symmetric(4)
    if tag == "icosa":
        return alternating(5)
    if tag == "quaternion8":
        return quaternion_group()
    if tag == "binary-tetra":
        return binary_tetrahedral()
    if tag == "binary-octa":
        return binary_octahedral()
    if tag == "binary-icosa":
        return binary_icosahedral()
    if tag == "binary-dihedral":
        if kind.order_param is None:
            raise InvalidParametersError("binary-dihedral kind needs an order")
        return binary_dihedral(kind.order_param)
    raise InvalidInputError(f"unknown group kind {tag!r}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    ng, nh = g.size, h.size
    if ng * nh > ORDER_CAP:
        raise BudgetError("direct product exceeds the order cap")
    tg = g.table.astype(np.int64)
    th = h.table.astype(np.int64)
    table = (tg[:, None, :, None] * nh + th[None, :, None, :]).reshape(ng * nh, ng * nh)
    return FiniteGroup(table)


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action: np.ndarray) -> FiniteGroup:
    """Semidirect product N x| H for action[b] the automorphism of N
    attached to b in H; element index is a * |H| + b."""
    action = np.asarray(action, dtype=np.int64)
    if action.shape != (h.size, n.size):
        raise InvalidInputError("action must map each H element to an N permutation")
    idx = np.arange(n.size)
    if not np.array_equal(action[h.identity], idx):
        raise InvalidInputError("identity must act trivially")
    for b in range(h.size):
        perm = action[b]
        if not np.array_equal(np.sort(perm), idx):
            raise InvalidInputError("action rows must be permutations")
        if not np.array_equal(n.table[np.ix_(perm, perm)], perm[n.table]):
            raise InvalidInputError("action rows must be automorphisms")
    comp = action[:, action]  # comp[b1, b2] = action[b1] o action[b2]
    if not np.array_equal(action[h.table], comp.reshape(h.size, h.size, n.size)):
        raise InvalidInputError("action must be a homomorphism")
    if n.size * h.size > ORDER_CAP:
        raise BudgetError("semidirect product exceeds the order cap")
    a1 = np.arange(n.size)[:, None, None, None]
    b1 = np.arange(h.size)[None, :, None, None]
    a2 = np.arange(n.size)[None, None, :, None]
    b2 = np.arange(h.size)[None, None, None, :]
    twisted = action[b1, a2]
    prod_a = n.table[a1, twisted]
    prod_b = h.table[b1, b2]
    table = prod_a.astype(np.int64) * h.size + prod_b
    size = n.size * h.size
    return FiniteGroup(np.broadcast_to(table, (n.size, h.size, n.size, h.size)).reshape(size, size))


def central_product(g: FiniteGroup, h: FiniteGroup, zg: int, zh: int) -> FiniteGroup:
    """Quotient of G x H identifying the central involutions zg and zh."""
    for grp, z in ((g, zg), (h, zh)):
        if z not in grp.center or grp.element_orders[z] != 2:
            raise InvalidInputError("identified elements must be central of order 2")
    nh = h.size
    total = g.size * nh
    if total // 2 > ORDER_CAP:
        raise BudgetError("central product exceeds the order cap")
    pair = np.arange(total, dtype=np.int64)
    a, b = np.divmod(pair, nh)
    partner = g.table[a, zg].astype(np.int64) * nh + h.table[b, zh]
    rep = np.minimum(pair, partner)
    reps = np.unique(rep)
    pos = np.searchsorted(reps, rep)
    ra, rb = np.divmod(reps, nh)
    prod = (g.table[np.ix_(ra, ra)].astype(np.int64) * nh + h.table[np.ix_(rb, rb)]).ravel()
    table = pos[rep[prod]].reshape(reps.size, reps.size)
    return FiniteGroup(table)


def build_metacyclic(m: int, n: int, r: int) -> FiniteGroup:
    """Group on pairs (a, b) with (a1,b1)(a2,b2) = (a1 + r^b1 a2, b1 + b2),
    a mod m and b mod n; requires r^n = 1 mod m."""
    if m < 1 or n < 1:
        raise InvalidParametersError("metacyclic orders must be positive")
    if pow(r, n, m) != 1 % m:
        raise InvalidParametersError("metacyclic twist must satisfy r^n = 1 mod m")
    if m * n > ORDER_CAP:
        raise BudgetError("metacyclic group exceeds the order cap")
    rp = np.array([pow(r, b, m) for b in range(n)], dtype=np.int64)
    a1 = np.arange(m)[:, None, None, None]
    b1 = np.arange(n)[None, :, None, None]
    a2 = np.arange(m)[None, None, :, None]
    b2 = np.arange(n)[None, None, None, :]
    prod_a = (a1 + rp[b1] * a2) % m
    prod_b = (b1 + b2) % n
    table = np.broadcast_to(prod_a * n + prod_b, (m, n, m, n))
    return FiniteGroup(table.reshape(m * n, m * n))


def _powers_of_permutation(perm: np.ndarray, count: int) -> list[np.ndarray]:
    out = [np.arange(len(perm))]
    for _ in range(count - 1):
        out.append(perm[out[-1]])
    return out


def klein_by_cyclic3(power: int) -> FiniteGroup:
    """(Z2 + Z2) x| Z_{3^power}, the cyclic factor rotating the three
    involutions; the action factors through Z_3 (trivial for power 0)."""
    if power < 0:
        raise InvalidParametersError("power must be nonnegative")
    v = abelian([2, 2])
    h = cyclic(3**power)
    cyc = np.array([0, 2, 3, 1])
    pows = _powers_of_permutation(cyc, 3)
    action = np.array([pows[b % 3] for b in range(h.size)])
    return semidirect_product(v, h, action)


def q8_by_cyclic3(power: int) -> FiniteGroup:
    """Q8 x| Z_{3^power}, the cyclic factor conjugating by the unit
    quaternion (-1+i+j+k)/2, which cycles the axes i -> j -> k; the
    action factors through Z_3."""
    if power < 0:
        raise InvalidParametersError("power must be nonnegative")
    q8, quats = group_from_quaternions([_QI, _QJ])
    w = (-0.5, 0.5, 0.5, 0.5)
    w_conj = (-0.5, -0.5, -0.5, -0.5)
    index = {_quat_key(q): i for i, q in enumerate(quats)}
    cyc = np.array(
        [index[_quat_key(_quat_mul(_quat_mul(w, tuple(q)), w_conj))] for q in quats]
    )
    h = cyclic(3**power)
    pows = _powers_of_permutation(cyc, 3)
    action = np.array([pows[b % 3] for b in range(h.size)])
    return semidirect_product(q8, h, action)


def pu3_presentation_valid(m: int, n: int, r: int) -> bool:
    """Side conditions of the odd-order metacyclic presentation:
    gcd(n(r-1), m) = 1, r^3 = 1 mod m, r != 1 mod m, and m, n odd."""
    if m < 1 or n < 1 or r < 0:
        return False
    return (
        m % 2 == 1
        and n % 2 == 1
        and math.gcd(n * (r - 1), m) == 1
        and pow(r, 3, m) == 1 % m
        and r % m != 1 % m
    )


def order_gl(n: int, p: int) -> int:
    if n < 1 or n > 64:
        raise InvalidParametersError("dimension out of the exact-mode range")
    if p < 2:
        raise InvalidParametersError("p must be at least 2")
    pn = p**n
    out = 1
    for i in range(n):
        out *= pn - p**i
    return out


def log10_universal_constant() -> mpmath.mpf:
    """log10 of 61^8 * |GL(F_3, N)| with N = 10^2560, using
    log10|GL(F_3, N)| ~ N^2 log10(3).  An order-of-magnitude figure:
    the dominant term is about 0.477 * 10^5120."""
    with mpmath.workdps(5200):
        n_squared = mpmath.mpf(10) ** 5120
        return 8 * mpmath.log10(61) + n_squared * mpmath.log10(3)


# ---------------------------------------------------------------------------
# isomorphism testing


def minimal_generating_set(g: FiniteGroup) -> list[int]:
    order_desc = np.argsort(-g.element_orders, kind="stable")
    gens: list[int] = []
    have = np.zeros(g.size, dtype=bool)
    have[g.identity] = True
    for x in order_desc:
        if have[x]:
            continue
        gens.append(int(x))
        have[g.closure(gens)] = True
        if have.all():
            break
    return gens


def _induced_map(g: FiniteGroup, h: FiniteGroup, gens, imgs):
    """Partial map forced by generator images, or None on conflict."""
    phi = -np.ones(g.size, dtype=np.int64)
    phi[g.identity] = h.identity
    frontier = [g.identity]
    while frontier:
        fresh = []
        for x in frontier:
            fx = phi[x]
            for s, t in zip(gens, imgs):
                xs = g.table[x, s]
                yt = h.table[fx, t]
                if phi[xs] < 0:
                    phi[xs] = yt
                    fresh.append(xs)
                elif phi[xs] != yt:
                    return None
        frontier = fresh
    return phi


def find_isomorphism(g: FiniteGroup, h: FiniteGroup):
    """An explicit isomorphism as an index array, or None.

    Screens on cheap invariants, then backtracks over images of a small
    generating set; a candidate survives only if the induced map closes
    without conflicts, and the winner is verified on the full table."""
    if g.size != h.size:
        return None
    if structural_invariants(g) != structural_invariants(h):
        return None
    if g.size == 1:
        return np.array([h.identity], dtype=np.int64)
    gens = minimal_generating_set(g)
    g_ord, h_ord = g.element_orders, h.element_orders
    g_cs, h_cs = g.class_sizes_by_element, h.class_sizes_by_element
    candidates = []
    for level, s in enumerate(gens):
        pool = np.nonzero((h_ord == g_ord[s]) & (h_cs == g_cs[s]))[0]
        if level == 0:
            # any iso can be post-composed with an inner automorphism,
            # so one candidate per conjugacy class suffices here
            seen = np.zeros(h.size, dtype=bool)
            keep = []
            for c in pool:
                if not seen[c]:
                    keep.append(c)
                    cls = np.unique(h.table[h.table[:, c], h.inverses])
                    seen[cls] = True
            pool = np.array(keep, dtype=np.int64)
        candidates.append(pool)
    sub_sizes = [g.closure(gens[: i + 1]).size for i in range(len(gens))]

    def backtrack(level, imgs):
        if level == len(gens):
            phi = _induced_map(g, h, gens, imgs)
            if phi is None or np.any(phi < 0):
                return None
            if np.unique(phi).size != g.size:
                return None
            if np.array_equal(h.table[phi[:, None], phi[None, :]], phi[g.table]):
                return phi
            return None
        for c in candidates[level]:
            chosen = imgs + [int(c)]
            phi = _induced_map(g, h, gens[: level + 1], chosen)
            if phi is None:
                continue
            assigned = phi >= 0
            if assigned.sum() != sub_sizes[level]:
                continue
            if np.unique(phi[assigned]).size != assigned.sum():
                continue
            out = backtrack(level + 1, chosen)
            if out is not None:
                return out
        return None

    return backtrack(0, [])


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


# ---------------------------------------------------------------------------
# structural queries


def normal_cyclic_subgroups(g: FiniteGroup) -> list[np.ndarray]:
    """All normal cyclic subgroups, one entry per subgroup."""
    seen = set()
    out = []
    for x in range(g.size):
        sub = g.closure([x])
        key = sub.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if g.is_normal(sub):
            out.append(sub)
    return out


def max_cyclic_normal_index(g: FiniteGroup) -> int:
    best = 1
    for sub in normal_cyclic_subgroups(g):
        best = max(best, sub.size)
    return g.size // best


def index_two_subgroups(g: FiniteGroup) -> list[np.ndarray]:
    """Element sets of all index-2 subgroups (kernels of maps onto Z_2,
    found through the abelianization)."""
    ab, proj = g.quotient(g.commutator_subgroup)
    rows = []
    for i in range(ab.size):
        for j in range(ab.size):
            row = np.zeros(ab.size, dtype=np.int64)
            row[i] += 1
            row[j] += 1
            row[ab.table[i, j]] += 1
            rows.append(row % 2)
    hom_basis = kernel_mod_p(np.array(rows, dtype=np.int64), 2)
    out = []
    seen = set()
    for bits in itertools.product((0, 1), repeat=hom_basis.shape[1]):
        if not any(bits):
            continue
        chi = np.zeros(ab.size, dtype=np.int64)
        for b, col in zip(bits, hom_basis.T):
            chi = (chi + b * col) % 2
        if not chi.any():
            continue
        members = np.nonzero(chi[proj] == 0)[0]
        key = members.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(members)
    return out


def _is_cyclic(g: FiniteGroup) -> bool:
    return int(g.element_orders.max()) == g.size


def _match_odd_cyclic_by(g: FiniteGroup, quotient_model: FiniteGroup) -> bool:
    qsize = quotient_model.size
    if g.size % qsize or (g.size // qsize) % 2 == 0:
        return False
    target = g.size // qsize
    for sub in normal_cyclic_subgroups(g):
        if sub.size != target:
            continue
        quo, _ = g.quotient(sub)
        if is_isomorphic(quo, quotient_model):
            return True
    return False


def _match_metacyclic_projective(g: FiniteGroup) -> bool:
    if g.size % 2 == 0:
        return False
    orders = g.element_orders
    for sub in normal_cyclic_subgroups(g):
        m = int(sub.size)
        n = g.size // m
        if n == 1 or m == 1 or math.gcd(m, n) != 1:
            continue
        quo, proj = g.quotient(sub)
        if not _is_cyclic(quo):
            continue
        x = int(sub[np.argmax(orders[sub])])  # a generator of the subgroup
        powers = [g.identity]
        while len(powers) < m:
            powers.append(g.op(powers[-1], x))
        power_index = {p: e for e, p in enumerate(powers)}
        for hcand in np.nonzero(orders == n)[0]:
            if int(quo.element_orders[proj[hcand]]) != n:
                continue
            conj = g.op(g.op(int(hcand), x), int(g.inverses[hcand]))
            r = power_index[conj]
            if pu3_presentation_valid(m, n, r):
                return True
    return False


def _match_binary_dihedral_times_odd(g: FiniteGroup) -> bool:
    orders = g.element_orders
    central_odd = [int(i) for i in g.center if orders[i] % 2 == 1]
    core = g.closure(central_odd)
    csub, _ = g.restrict(core)
    if not _is_cyclic(csub):
        return False
    m_plus = csub.size
    if m_plus % 2 == 0:
        return False
    p_els = np.nonzero([math.gcd(int(o), m_plus) == 1 for o in orders])[0]
    if p_els.size * m_plus != g.size or math.gcd(int(p_els.size), m_plus) != 1:
        return False
    if not g.is_subgroup(p_els):
        return False
    if p_els.size < 8 or p_els.size % 4:
        return False
    psub, _ = g.restrict(p_els)
    return is_isomorphic(psub, binary_dihedral(psub.size))


def _match_odd_metacyclic_2power_by_z2(g: FiniteGroup) -> bool:
    order = g.size
    v2 = 0
    while order % 2 == 0:
        order //= 2
        v2 += 1
    n = v2 - 2
    if n <= 1 or n % 2 == 0:
        return False
    odd_part = order
    for members in index_two_subgroups(g):
        sub, _ = g.restrict(members)
        for nsub in normal_cyclic_subgroups(sub):
            if nsub.size != odd_part:
                continue
            quo, _ = sub.quotient(nsub)
            if quo.size == 2 ** (n + 1) and _is_cyclic(quo):
                return True
    return False


def _match_polyhedral(g: FiniteGroup) -> bool:
    if _is_cyclic(g):
        return True
    n = g.size
    if n % 2 == 0 and is_isomorphic(g, dihedral(n)):
        return True
    if n == 12:
        return is_isomorphic(g, alternating(4))
    if n == 24:
        return is_isomorphic(g, symmetric(4))
    if n == 60:
        return is_isomorphic(g, alternating(5))
    return False


_FAMILY_TESTS = {
    "cyclic": _is_cyclic,
    "abelian-rank-le-2": lambda g: g.is_abelian and len(g.abelian_invariants) <= 2,
    "polyhedral": _match_polyhedral,
    "odd-cyclic": lambda g: g.size % 2 == 1 and _is_cyclic(g),
    "odd-cyclic-by-z2": lambda g: _match_odd_cyclic_by(g, cyclic(2)),
    "odd-cyclic-by-z4": lambda g: _match_odd_cyclic_by(g, cyclic(4)),
    "odd-cyclic-by-klein": lambda g: _match_odd_cyclic_by(g, abelian([2, 2])),
    "metacyclic-odd-projective": _match_metacyclic_projective,
    "binary-dihedral-times-odd-cyclic": _match_binary_dihedral_times_odd,
    "odd-metacyclic-2power-by-z2": _match_odd_metacyclic_2power_by_z2,
}


def matches_family(g: FiniteGroup, family: str) -> bool:
    """Structural membership test for the classification families.

    Each family is recognized through normal-subgroup shape: a normal
    cyclic piece of the demanded order and parity plus the demanded
    quotient, with the stated coprimality side conditions."""
    try:
        test = _FAMILY_TESTS[family]
    except KeyError:
        raise InvalidInputError(f"unknown family tag {family!r}") from None
    return bool(test(g))
