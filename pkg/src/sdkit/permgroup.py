"""Permutation groups on {0, ..., degree-1}: orbits and stabilizer chains.

Permutations are numpy integer arrays ``p`` with ``p[x]`` the image of
``x``.  Products act left to right: ``mul(p, q)`` applies ``p`` first.
"""

import math

import numpy as np

_SEED = 20240607


def identity(degree):
    return np.arange(degree, dtype=np.int32)


def mul(p, q):
    return q[p]


def inverse(p):
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_identity(p):
    return bool(np.all(p == np.arange(len(p))))


def perm_order(p):
    seen = np.zeros(len(p), dtype=bool)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def orbit_labels(gens, degree):
    """Label each point by the smallest point of its orbit."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        moved = np.nonzero(g != np.arange(degree))[0]
        for x in moved:
            a, b = find(int(x)), find(int(g[x]))
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return np.array([find(x) for x in range(degree)], dtype=np.int64)


def orbit_transversal(gens, point, degree):
    """Breadth-first orbit of ``point`` with a coset representative per point."""
    reps = {point: identity(degree)}
    queue = [point]
    for x in queue:
        u = reps[x]
        for g in gens:
            y = int(g[x])
            if y not in reps:
                reps[y] = mul(u, g)
                queue.append(y)
    return reps


class StabChain:
    """Base and strong generating set with explicit transversals."""

    def __init__(self, degree):
        self.degree = degree
        self.base = []
        self.strong = []
        self.levels = []  # per level: (gens, transversal dict)

    def order(self):
        out = 1
        for _, reps in self.levels:
            out *= len(reps)
        return out

    def level_gens(self, i):
        fixed = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in fixed)]

    def rebuild(self, upto):
        for i in range(min(upto + 1, len(self.base))):
            gens = self.level_gens(i)
            reps = orbit_transversal(gens, self.base[i], self.degree)
            self.levels[i] = (gens, reps)

    def sift(self, g):
        """Return ``(residue, level)``; level == len(base) means fully sifted."""
        h = g
        for i, b in enumerate(self.base):
            reps = self.levels[i][1]
            y = int(h[b])
            if y not in reps:
                return h, i
            h = mul(h, inverse(reps[y]))
        return h, len(self.base)

    def contains(self, g):
        h, level = self.sift(g)
        return level == len(self.base) and is_identity(h)

    def add(self, h, level):
        if level == len(self.base):
            moved = np.nonzero(h != np.arange(self.degree))[0]
            self.base.append(int(moved[0]))
            self.levels.append(None)
        self.strong.append(h)
        self.rebuild(len(self.base) - 1)

    def stabilizer_gens(self, depth):
        """Generators of the pointwise stabilizer of ``base[:depth]``."""
        return self.level_gens(depth)


class _RandomElements:
    """Product replacement with an accumulator; seeded for reproducibility."""

    def __init__(self, gens, degree, seed=_SEED):
        self.rng = np.random.default_rng(seed)
        slots = [g.copy() for g in gens]
        while len(slots) < 10:
            slots.append(slots[len(slots) % len(gens)].copy())
        self.slots = slots
        self.acc = identity(degree)
        for _ in range(50):
            self.next()

    def next(self):
        n = len(self.slots)
        i, j = self.rng.choice(n, size=2, replace=False)
        if self.rng.random() < 0.5:
            self.slots[i] = mul(self.slots[i], self.slots[j])
        else:
            self.slots[i] = mul(self.slots[j], self.slots[i])
        self.acc = mul(self.acc, self.slots[i])
        return self.acc


def schreier_sims(gens, degree, base=(), order=None, consecutive=40):
    """Stabilizer chain of ``<gens>`` whose base starts with ``base``.

    With ``order`` given the random phase runs until the chain reaches it,
    which makes the result exact.  Without it the random phase is followed
    by a deterministic Schreier-generator check.
    """
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    gens = [g for g in gens if not is_identity(g)]
    chain = StabChain(degree)
    for b in base:
        chain.base.append(int(b))
        chain.levels.append(None)
    if not gens:
        chain.base = []
        chain.levels = []
        if order not in (None, 1):
            raise ValueError("trivial generators but order %s requested" % order)
        return chain
    chain.strong = list(gens)
    if not chain.base:
        moved = np.nonzero(gens[0] != np.arange(degree))[0]
        chain.base.append(int(moved[0]))
        chain.levels.append(None)
    # every strong generator must move some base point
    for g in chain.strong:
        if all(g[b] == b for b in chain.base):
            moved = np.nonzero(g != np.arange(degree))[0]
            chain.base.append(int(moved[0]))
            chain.levels.append(None)
    chain.rebuild(len(chain.base) - 1)

    rand = _RandomElements(gens, degree)
    successes = 0
    while True:
        if order is not None:
            have = chain.order()
            if have == order:
                break
            if have > order:
                raise ValueError("group order exceeds the stated order %d" % order)
        elif successes >= consecutive:
            break
        g = rand.next()
        h, level = chain.sift(g)
        if level == len(chain.base) and is_identity(h):
            successes += 1
            continue
        successes = 0
        chain.add(h, level)
    if order is None:
        _verify(chain)
    _trim_base(chain)
    return chain


def _verify(chain):
    """Deterministic Schreier-Sims closure check; extends the chain if needed."""
    changed = True
    while changed:
        changed = False
        for i in reversed(range(len(chain.base))):
            gens, reps = chain.levels[i]
            for x, u in list(reps.items()):
                for s in gens:
                    y = int(s[x])
                    g = mul(mul(u, s), inverse(reps[y]))
                    h, level = chain.sift(g)
                    if level == len(chain.base) and is_identity(h):
                        continue
                    chain.add(h, level)
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break


def _trim_base(chain):
    # drop trailing redundant base points (orbit of size 1)
    while chain.base and len(chain.levels[-1][1]) == 1:
        chain.base.pop()
        chain.levels.pop()


class PermGroup:
    """A permutation group given by generators, with lazily computed order."""

    def __init__(self, gens, degree, order=None):
        self.degree = degree
        self.gens = [np.asarray(g, dtype=np.int32) for g in gens
                     if not is_identity(np.asarray(g))]
        self._order = order
        self._chain = None

    @property
    def chain(self):
        if self._chain is None:
            self._chain = schreier_sims(self.gens, self.degree, order=self._order)
            self._order = self._chain.order()
        return self._chain

    def order(self):
        if self._order is None:
            self.chain
        return self._order

    def is_trivial(self):
        return not self.gens

    def orbit_labels(self):
        return orbit_labels(self.gens, self.degree)

    def orbit(self, point):
        return sorted(orbit_transversal(self.gens, point, self.degree))

    def contains(self, g):
        return self.chain.contains(np.asarray(g, dtype=np.int32))

    def stabilizer(self, point):
        """Pointwise stabilizer of ``point`` with exactly known order."""
        if self.is_trivial():
            return self
        orbit = orbit_transversal(self.gens, point, self.degree)
        if len(orbit) == 1:
            return self
        target = self.order() // len(orbit)
        if target == 1:
            return PermGroup([], self.degree, order=1)
        chain = schreier_sims(self.gens, self.degree, base=(point,),
                              order=self.order())
        if not chain.base or chain.base[0] != point:
            raise RuntimeError("base does not start at the requested point")
        return PermGroup(chain.stabilizer_gens(1), self.degree, order=target)
