"""Independent Jones polynomial route for tests.

Converts a signed Gauss code to PD crossings ``X[a, b, c, d]`` (``a`` the
incoming under-strand, then counter-clockwise) and expands
``<X[a,b,c,d]> = A <P[a,b] P[c,d]> + A^-1 <P[a,d] P[b,c]>`` state by state.
Polynomials are plain ``{exponent: coefficient}`` dicts.
"""

import random
from itertools import product

from apexis.spatial.knot import GaussCode, faces, insert_r1, insert_r2


def _mul(p, q):
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _add(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def pd_code(code: GaussCode):
    m = len(code.seq)
    sg = code.sign_map
    pos = code.positions()
    out = []
    for c in sorted(pos):
        p, q = pos[c]
        o_in, o_out = (p - 1) % m, p
        u_in, u_out = (q - 1) % m, q
        if sg[c] > 0:
            out.append((u_in, o_out, u_out, o_in))
        else:
            out.append((u_in, o_in, u_out, o_out))
    return out


def jones_oracle(code: GaussCode) -> dict[int, int]:
    """Jones polynomial as ``{power of t: coefficient}``."""
    if not code.seq:
        return {0: 1}
    m = len(code.seq)
    xs = pd_code(code)
    d = {2: -1, -2: -1}
    bracket = {}
    for state in product((0, 1), repeat=len(xs)):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        loops = m
        for (a, b, c, e), s in zip(xs, state):
            for x, y in (((a, b), (c, e)) if s == 0 else ((a, e), (b, c))):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
                    loops -= 1
        na = state.count(0)
        term = {na - (len(xs) - na): 1}
        for _ in range(loops - 1):
            term = _mul(term, d)
        bracket = _add(bracket, term)
    w = sum(s for _, s in code.signs)
    f = _mul(bracket, {-3 * w: -1 if w % 2 else 1})
    out = {}
    for k, v in f.items():
        assert k % 4 == 0
        out[-k // 4] = v
    return out


def random_inflation(code: GaussCode, rng: random.Random, steps: int, start_id: int = 100) -> GaussCode:
    """Apply ``steps`` random R1/R2 insertions (R2 retried a few times)."""
    nid = start_id
    for _ in range(steps):
        m = len(code.seq)
        if m >= 2 and rng.random() < 0.5:
            fs = faces(code)
            for _ in range(20):
                fi = rng.randrange(len(fs))
                if len(fs[fi]) < 2:
                    continue
                i, k = rng.sample(range(len(fs[fi])), 2)
                new = insert_r2(code, fi, i, k, (nid, nid + 1), rng.random() < 0.5)
                if new is not None:
                    code = new
                    nid += 2
                    break
            else:
                code = insert_r1(code, rng.randrange(max(m, 1)), nid, rng.random() < 0.5, rng.choice((1, -1)))
                nid += 1
        else:
            code = insert_r1(code, rng.randrange(max(m, 1)), nid, rng.random() < 0.5, rng.choice((1, -1)))
            nid += 1
    return code
